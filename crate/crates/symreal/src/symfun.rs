//! Symmetric-function bases, Newton-identity conversions, rewriting of
//! symmetric polynomials in basis variables, block symmetry, group
//! substitution `f^[lambda]`, the distribution matrix, and the symmetric
//! closure gate.
//!
//! The central operation is [`ftsp_rewrite`]: every symmetric polynomial is a
//! unique polynomial expression in the elementary symmetric polynomials
//! `e_1..e_n`, and the rewriting loop recovers that expression by repeatedly
//! cancelling the lexicographically leading monomial.  Power-sum targets go
//! through the elementary basis and the Newton identities; complete
//! homogeneous targets are solved as a linear subring-membership system.
//! All of this extends verbatim to polynomials that are symmetric within
//! disjoint blocks of variables, with one set of basis functions per block.
//!
//! Group substitution `f^[lambda]` replaces each group of coordinates
//! prescribed by a composition or partition with a single fresh variable.
//! Together with the [`distribution_matrix`] it satisfies the chain-rule
//! factorization `Jac^[lambda](f) = Jac(f^[lambda]) * D`, which transfers
//! Jacobian-rank information between the full space and the quotient.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::combi::{Composition, Partition};
use crate::linalg::Mat;
use crate::poly::{rat, ArityMismatch, Monomial, Polynomial, Rational};

/// The four classical bases of the ring of symmetric polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// Elementary symmetric polynomials `e_k`.
    Elementary,
    /// Power sums `p_k`.
    PowerSum,
    /// Complete homogeneous symmetric polynomials `h_k`.
    CompleteHomogeneous,
    /// Monomial symmetric polynomials `m_lambda`, indexed by a partition.
    Monomial,
}

/// Index of a basis polynomial: a degree for `e`, `p`, `h`, or a partition
/// shape for the monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisIndex {
    /// Index `k` for `e_k`, `p_k`, `h_k`.
    Degree(usize),
    /// Shape `lambda` for `m_lambda`.
    Shape(Partition),
}

/// Variable blocks for block-symmetric polynomials: consecutive groups of
/// variables, each closed under permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    sizes: Vec<usize>,
}

impl BlockStructure {
    /// Builds a block structure from consecutive block sizes.
    ///
    /// # Panics
    /// Panics if any block is empty.
    pub fn new(sizes: Vec<usize>) -> Self {
        assert!(sizes.iter().all(|&s| s >= 1), "blocks must be non-empty");
        BlockStructure { sizes }
    }

    /// The single-block structure on `n` variables (full symmetry).
    pub fn single(n: usize) -> Self {
        BlockStructure::new(vec![n])
    }

    /// Block sizes taken from a partition's multiplicities: one block of
    /// `l_i` variables per distinct part value `n_i`, ascending.  This is the
    /// block structure under which `f^[lambda]` of a symmetric `f` is
    /// block-symmetric.
    pub fn from_partition(lambda: &Partition) -> Self {
        BlockStructure::new(lambda.multiplicities().iter().map(|&(_, l)| l).collect())
    }

    /// The block sizes, in order.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// The number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    /// Total number of variables across all blocks.
    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// The variable index range of block `i` (0-based).
    pub fn block_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.sizes[..i].iter().sum();
        start..start + self.sizes[i]
    }

    /// Pairs `(block index, block size)`, in order.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.sizes.iter().copied().enumerate().collect()
    }
}

/// The distribution matrix `D` of a partition: a block-diagonal rational
/// matrix with one row per group `(i, j)` and one column per original
/// coordinate, carrying `1/n_i` on the coordinates of group `(i, j)`.
///
/// Row order matches the variable layout of [`lambda_substitute`]: groups of
/// smaller part value first, then by group index within the part value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionMatrix {
    rows: Vec<Vec<Rational>>,
    labels: Vec<(usize, usize)>,
}

impl DistributionMatrix {
    /// The matrix rows, each of length `n`.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Number of rows (total number of groups).
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (number of original coordinates).
    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// 1-based `(i, j)` labels of the rows: part-value index and group index.
    pub fn row_labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// A single entry.
    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.rows[row][col]
    }
}

/// Errors produced by the symmetric-function operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymFunError {
    /// A basis index outside the meaningful range (`e_k` with `k > nvars`,
    /// `p_0`, or a monomial shape with more parts than variables).
    #[error("basis index {index} is out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    /// A degree index was supplied where a partition shape was required, or
    /// vice versa.
    #[error("basis kind and index kind do not match")]
    WrongIndexKind,
    /// Conversion between the requested pair of bases is not supported.
    #[error("unsupported basis pair for conversion")]
    UnsupportedBasisPair,
    /// The input polynomial is not symmetric (or not block-symmetric for the
    /// requested blocks).
    #[error("polynomial is not symmetric under the requested variable permutations")]
    NotSymmetric,
    /// The rewriting loop failed to decrease its leading monomial.  This
    /// signals an internal bug; it is never expected on valid input.
    #[error("rewriting loop failed to make progress")]
    NonTermination,
    /// The subring-membership system is infeasible within the degree bound.
    /// A too-small bound is indistinguishable from genuine non-membership.
    #[error("polynomial is not expressible in the given generators within the degree bound")]
    NotInSubring,
    /// A grouping pattern does not sum to the number of variables.
    #[error("grouping sums to {found} but the polynomial has {expected} variables")]
    SumMismatch { expected: usize, found: usize },
    /// The closure gate would enumerate more permutations than the cap
    /// allows.
    #[error("closure gate limited to {cap} variables, got {nvars} (n! permutations)")]
    TooManyVariables { nvars: usize, cap: usize },
    /// Mismatched variable counts between input polynomials.
    #[error(transparent)]
    Arity(#[from] ArityMismatch),
}

/// The elementary symmetric polynomial `e_k` in `nvars` variables
/// (`e_0 = 1`).
pub fn elementary(k: usize, nvars: usize) -> Result<Polynomial, SymFunError> {
    if k > nvars {
        return Err(SymFunError::IndexOutOfRange { index: k, nvars });
    }
    let mut out = Polynomial::zero(nvars);
    // All k-subsets of the variables, by backtracking.
    let mut subset = Vec::with_capacity(k);
    fn rec(out: &mut Polynomial, subset: &mut Vec<usize>, next: usize, k: usize, nvars: usize) {
        if subset.len() == k {
            out.add_term(
                Monomial::from_powers(subset.iter().map(|&v| (v, 1))),
                Rational::one(),
            );
            return;
        }
        for v in next..nvars {
            if nvars - v < k - subset.len() {
                break;
            }
            subset.push(v);
            rec(out, subset, v + 1, k, nvars);
            subset.pop();
        }
    }
    rec(&mut out, &mut subset, 0, k, nvars);
    Ok(out)
}

/// The power sum `p_k` in `nvars` variables (`k >= 1`).
pub fn power_sum(k: usize, nvars: usize) -> Result<Polynomial, SymFunError> {
    if k == 0 {
        return Err(SymFunError::IndexOutOfRange { index: 0, nvars });
    }
    let mut out = Polynomial::zero(nvars);
    for v in 0..nvars {
        out.add_term(Monomial::from_powers([(v, k as u32)]), Rational::one());
    }
    Ok(out)
}

/// The complete homogeneous symmetric polynomial `h_k` in `nvars` variables
/// (`h_0 = 1`): the sum of all monomials of total degree `k`.
pub fn complete_homogeneous(k: usize, nvars: usize) -> Result<Polynomial, SymFunError> {
    let mut out = Polynomial::zero(nvars);
    // Enumerate all exponent vectors summing to k.
    fn rec(out: &mut Polynomial, prefix: &mut Vec<u32>, remaining: usize, nvars: usize) {
        if prefix.len() == nvars {
            if remaining == 0 {
                out.add_term(
                    Monomial::from_powers(prefix.iter().enumerate().map(|(v, &e)| (v, e))),
                    Rational::one(),
                );
            }
            return;
        }
        let last = prefix.len() + 1 == nvars;
        let choices = if last {
            remaining..=remaining
        } else {
            0..=remaining
        };
        for e in choices {
            prefix.push(e as u32);
            rec(out, prefix, remaining - e, nvars);
            prefix.pop();
        }
    }
    if nvars == 0 {
        if k == 0 {
            return Ok(Polynomial::one(0));
        }
        return Err(SymFunError::IndexOutOfRange { index: k, nvars });
    }
    let mut prefix = Vec::with_capacity(nvars);
    rec(&mut out, &mut prefix, k, nvars);
    Ok(out)
}

/// The monomial symmetric polynomial `m_lambda` in `nvars` variables: the
/// sum of all distinct monomials whose nonzero exponents form the partition
/// `lambda`.
pub fn monomial_symmetric(lambda: &Partition, nvars: usize) -> Result<Polynomial, SymFunError> {
    if lambda.len() > nvars {
        return Err(SymFunError::IndexOutOfRange {
            index: lambda.len(),
            nvars,
        });
    }
    // Multiset of exponents, padded with zeros.
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in lambda.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    *counts.entry(0).or_insert(0) += nvars - lambda.len();
    let mut out = Polynomial::zero(nvars);
    let mut prefix: Vec<u32> = Vec::with_capacity(nvars);
    fn rec(
        out: &mut Polynomial,
        counts: &mut BTreeMap<usize, usize>,
        prefix: &mut Vec<u32>,
        nvars: usize,
    ) {
        if prefix.len() == nvars {
            out.add_term(
                Monomial::from_powers(prefix.iter().enumerate().map(|(v, &e)| (v, e))),
                Rational::one(),
            );
            return;
        }
        let values: Vec<usize> = counts
            .iter()
            .filter(|&(_, &c)| c > 0)
            .map(|(&v, _)| v)
            .collect();
        for value in values {
            *counts.get_mut(&value).unwrap() -= 1;
            prefix.push(value as u32);
            rec(out, counts, prefix, nvars);
            prefix.pop();
            *counts.get_mut(&value).unwrap() += 1;
        }
    }
    rec(&mut out, &mut counts, &mut prefix, nvars);
    Ok(out)
}

/// Dispatches to the four basis constructors.
pub fn basis_polynomial(
    kind: BasisKind,
    index: &BasisIndex,
    nvars: usize,
) -> Result<Polynomial, SymFunError> {
    match (kind, index) {
        (BasisKind::Elementary, BasisIndex::Degree(k)) => elementary(*k, nvars),
        (BasisKind::PowerSum, BasisIndex::Degree(k)) => power_sum(*k, nvars),
        (BasisKind::CompleteHomogeneous, BasisIndex::Degree(k)) => complete_homogeneous(*k, nvars),
        (BasisKind::Monomial, BasisIndex::Shape(lambda)) => monomial_symmetric(lambda, nvars),
        _ => Err(SymFunError::WrongIndexKind),
    }
}

/// Applies the transposition of variables `a` and `b` to `f`.
fn swap_vars(f: &Polynomial, a: usize, b: usize) -> Polynomial {
    let mut map: Vec<usize> = (0..f.nvars()).collect();
    map.swap(a, b);
    f.remap_variables(&map, f.nvars())
}

/// Whether `f` is fixed by every permutation of its variables.  Checking the
/// adjacent transpositions suffices, as they generate the symmetric group.
pub fn is_symmetric(f: &Polynomial) -> bool {
    is_block_symmetric(f, &BlockStructure::single(f.nvars()))
}

/// Whether `f` is fixed by every permutation of the variables *within each
/// block* of `bs`.
///
/// # Panics
/// Panics if the blocks do not cover exactly the variables of `f`.
pub fn is_block_symmetric(f: &Polynomial, bs: &BlockStructure) -> bool {
    assert_eq!(
        bs.total(),
        f.nvars(),
        "block sizes must cover the variables"
    );
    for i in 0..bs.num_blocks() {
        let range = bs.block_range(i);
        for v in range.start..range.end.saturating_sub(1) {
            if swap_vars(f, v, v + 1) != *f {
                return false;
            }
        }
    }
    true
}

/// Expresses `e_k` (for `k = 1..=deg`) as polynomials in the power-sum
/// variables `p_1..p_k`, via the Newton recursion
/// `p_k = (-1)^(k-1) k e_k + sum_{j=1}^{k-1} (-1)^(j-1) e_j p_{k-j}`.
fn elementary_in_power_sums(deg: usize) -> Vec<Polynomial> {
    // images[k-1] = E_k as a polynomial in variables y_1..y_deg (= p_1..).
    let mut images: Vec<Polynomial> = Vec::with_capacity(deg);
    for k in 1..=deg {
        // e_k = (-1)^(k-1)/k * (p_k - sum_{j=1}^{k-1} (-1)^(j-1) E_j p_{k-j})
        let mut acc = Polynomial::variable(deg, k - 1); // p_k
        for j in 1..k {
            let term = images[j - 1].scale(&rat_sign(j)); // (-1)^(j-1) E_j
            let pkj = Polynomial::variable(deg, k - j - 1); // p_{k-j}
            acc = &acc - &(&term * &pkj);
        }
        let factor = rat_sign(k) / rat(k as i64, 1);
        images.push(acc.scale(&factor));
    }
    images
}

/// Expresses `p_k` (for `k = 1..=deg`) as polynomials in the elementary
/// variables `e_1..e_k`, via the same Newton recursion.
fn power_sums_in_elementary(deg: usize) -> Vec<Polynomial> {
    let mut images: Vec<Polynomial> = Vec::with_capacity(deg);
    for k in 1..=deg {
        // p_k = (-1)^(k-1) k e_k + sum_{j=1}^{k-1} (-1)^(j-1) e_j p_{k-j}
        let ek = Polynomial::variable(deg, k - 1);
        let mut acc = ek.scale(&(rat_sign(k) * rat(k as i64, 1)));
        for j in 1..k {
            let ej = Polynomial::variable(deg, j - 1).scale(&rat_sign(j));
            acc = &acc + &(&ej * &images[k - j - 1]);
        }
        images.push(acc);
    }
    images
}

/// `(-1)^(k-1)` as a rational.
fn rat_sign(k: usize) -> Rational {
    if k % 2 == 1 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Converts an expression between the elementary and power-sum bases using
/// the Newton identities.  `expr` is a polynomial in basis variables
/// `y_1..y_m` with `m <= nvars`; the result uses the same variable layout.
pub fn newton_convert(
    expr: &Polynomial,
    from: BasisKind,
    to: BasisKind,
    nvars: usize,
) -> Result<Polynomial, SymFunError> {
    if expr.nvars() > nvars {
        return Err(SymFunError::IndexOutOfRange {
            index: expr.nvars(),
            nvars,
        });
    }
    match (from, to) {
        (BasisKind::Elementary, BasisKind::Elementary)
        | (BasisKind::PowerSum, BasisKind::PowerSum) => Ok(expr.clone()),
        (BasisKind::Elementary, BasisKind::PowerSum) => {
            let images = elementary_in_power_sums(expr.nvars());
            Ok(expr.substitute(&images).expect("image arity"))
        }
        (BasisKind::PowerSum, BasisKind::Elementary) => {
            let images = power_sums_in_elementary(expr.nvars());
            Ok(expr.substitute(&images).expect("image arity"))
        }
        _ => Err(SymFunError::UnsupportedBasisPair),
    }
}

/// Rewrites a (block-)symmetric polynomial as a polynomial in basis
/// variables, one basis function per variable slot.
///
/// Without `bs`, `f` must be symmetric and the result `F` lives in `n`
/// variables `y_1..y_n` standing for the chosen basis: `F(b_1..b_n)`
/// expands back to `f` exactly.  With `bs`, `f` must be block-symmetric and
/// the result has one group of basis variables per block, in block order.
///
/// Elementary targets use the lexicographic reduction loop; power-sum
/// targets convert the elementary result through the Newton identities;
/// complete homogeneous targets solve a subring-membership system with
/// degree bound `deg f`.
pub fn ftsp_rewrite(
    f: &Polynomial,
    target: BasisKind,
    bs: Option<&BlockStructure>,
) -> Result<Polynomial, SymFunError> {
    let single = BlockStructure::single(f.nvars());
    let bs = bs.unwrap_or(&single);
    if !is_block_symmetric(f, bs) {
        return Err(SymFunError::NotSymmetric);
    }
    match target {
        BasisKind::Elementary => ftsp_elementary(f, bs),
        BasisKind::PowerSum => {
            let in_e = ftsp_elementary(f, bs)?;
            // Convert each block's elementary variables to power sums.
            let total = bs.total();
            let mut images: Vec<Polynomial> = Vec::with_capacity(total);
            for i in 0..bs.num_blocks() {
                let range = bs.block_range(i);
                let local = elementary_in_power_sums(bs.sizes()[i]);
                for img in local {
                    images.push(embed_block(&img, range.start, total));
                }
            }
            Ok(in_e.substitute(&images).expect("image arity"))
        }
        BasisKind::CompleteHomogeneous => {
            let mut gens = Vec::new();
            for i in 0..bs.num_blocks() {
                let range = bs.block_range(i);
                for k in 1..=bs.sizes()[i] {
                    let local = complete_homogeneous(k, bs.sizes()[i])?;
                    gens.push(embed_block(&local, range.start, f.nvars()));
                }
            }
            let bound = f.total_degree().unwrap_or(0);
            subring_membership(f, &gens, bound)
        }
        BasisKind::Monomial => Err(SymFunError::UnsupportedBasisPair),
    }
}

/// Re-embeds a polynomial in `k` local variables as one in `total` variables
/// with the local variables shifted to start at `offset`.
fn embed_block(local: &Polynomial, offset: usize, total: usize) -> Polynomial {
    let map: Vec<usize> = (0..local.nvars()).map(|v| v + offset).collect();
    local.remap_variables(&map, total)
}

/// The elementary-basis rewriting loop.
fn ftsp_elementary(f: &Polynomial, bs: &BlockStructure) -> Result<Polynomial, SymFunError> {
    let n = f.nvars();
    // Basis polynomials: e_{i,k}(X_i) embedded in the full variable space,
    // indexed in block layout order.
    let mut basis: Vec<Polynomial> = Vec::with_capacity(n);
    for i in 0..bs.num_blocks() {
        let range = bs.block_range(i);
        for k in 1..=bs.sizes()[i] {
            let local = elementary(k, bs.sizes()[i])?;
            basis.push(embed_block(&local, range.start, n));
        }
    }
    let mut rest = f.clone();
    let mut out = Polynomial::zero(bs.total());
    let mut last_leading: Option<Monomial> = None;
    while !rest.is_zero() {
        let (lead, coeff) = rest
            .leading_term(crate::poly::TermOrder::Lex)
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("nonzero polynomial has a leading term");
        if let Some(prev) = &last_leading {
            if lead.cmp_lex(prev) != std::cmp::Ordering::Less {
                return Err(SymFunError::NonTermination);
            }
        }
        // Per block, the leading exponents of a block-symmetric polynomial
        // are non-increasing; consecutive differences give the elementary
        // exponents.
        let mut y_powers: Vec<(usize, u32)> = Vec::new();
        let mut slot = 0;
        for i in 0..bs.num_blocks() {
            let range = bs.block_range(i);
            let exps: Vec<u32> = range.clone().map(|v| lead.exponent(v)).collect();
            for w in exps.windows(2) {
                if w[0] < w[1] {
                    return Err(SymFunError::NotSymmetric);
                }
            }
            for (k, &e) in exps.iter().enumerate() {
                let next = exps.get(k + 1).copied().unwrap_or(0);
                if e - next > 0 {
                    y_powers.push((slot + k, e - next));
                }
            }
            slot += range.len();
        }
        // Subtract coeff * prod basis^powers and record the term.
        let mut prod = Polynomial::one(n);
        for &(s, e) in &y_powers {
            prod = &prod * &basis[s].pow(e);
        }
        rest = &rest - &prod.scale(&coeff);
        out.add_term(Monomial::from_powers(y_powers), coeff);
        last_leading = Some(lead);
    }
    Ok(out)
}

/// Finds `F` with `F(gens) = f` exactly and total degree at most `bound`,
/// by solving the linear system that equates coefficients of the expanded
/// identity.  Returns [`SymFunError::NotInSubring`] when no such `F` exists
/// within the bound (a too-small bound is indistinguishable from genuine
/// non-membership).
pub fn subring_membership(
    f: &Polynomial,
    gens: &[Polynomial],
    bound: u32,
) -> Result<Polynomial, SymFunError> {
    let n = f.nvars();
    for g in gens {
        if g.nvars() != n {
            return Err(ArityMismatch {
                left: n,
                right: g.nvars(),
            }
            .into());
        }
    }
    // Memoized powers of each generator.
    let mut powers: Vec<Vec<Polynomial>> = gens.iter().map(|_| vec![Polynomial::one(n)]).collect();
    let gen_power = |i: usize, e: u32, powers: &mut Vec<Vec<Polynomial>>| -> Polynomial {
        while powers[i].len() <= e as usize {
            let next = &powers[i][powers[i].len() - 1] * &gens[i];
            powers[i].push(next);
        }
        powers[i][e as usize].clone()
    };
    // Candidate monomials in the generators: total degree <= bound, with
    // expansions capped at the degree that could still match f plus
    // cancellation room up to `bound * max_gen_degree`.
    let mut candidates: Vec<Monomial> = Vec::new();
    let mut exps: Vec<u32> = vec![0; gens.len()];
    fn enumerate(
        exps: &mut Vec<u32>,
        pos: usize,
        left: u32,
        out: &mut Vec<Monomial>,
        ngens: usize,
    ) {
        if pos == ngens {
            out.push(Monomial::from_powers(
                exps.iter().enumerate().map(|(i, &e)| (i, e)),
            ));
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            enumerate(exps, pos + 1, left - e, out, ngens);
            exps[pos] = 0;
        }
    }
    enumerate(&mut exps, 0, bound, &mut candidates, gens.len());

    // Expand each candidate product.
    let mut expanded: Vec<Polynomial> = Vec::with_capacity(candidates.len());
    for cand in &candidates {
        let mut prod = Polynomial::one(n);
        for &(i, e) in cand.powers() {
            prod = &prod * &gen_power(i, e, &mut powers);
        }
        expanded.push(prod);
    }

    // Assemble the linear system: rows are x-monomials, one column per
    // candidate, right-hand side the coefficients of f.
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for poly in expanded.iter().chain(std::iter::once(f)) {
        for (m, _) in poly.terms() {
            let next = row_index.len();
            row_index.entry(m.clone()).or_insert(next);
        }
    }
    let nrows = row_index.len();
    let ncols = candidates.len();
    let mut mat = Mat::zero(nrows, ncols);
    for (col, poly) in expanded.iter().enumerate() {
        for (m, c) in poly.terms() {
            mat[(row_index[m], col)] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); nrows];
    for (m, c) in f.terms() {
        rhs[row_index[m]] = c.clone();
    }
    let solution = mat.solve(&rhs).ok_or(SymFunError::NotInSubring)?;
    let mut out = Polynomial::zero(gens.len());
    for (cand, coeff) in candidates.into_iter().zip(solution) {
        if !coeff.is_zero() {
            out.add_term(cand, coeff);
        }
    }
    Ok(out)
}

/// A grouping pattern for [`lambda_substitute`]: either a composition
/// (ordered run lengths) or a partition (runs in ascending-part block
/// layout).
#[derive(Debug, Clone, Copy)]
pub enum Grouping<'a> {
    /// Consecutive runs with the composition's part lengths, in order.
    Composition(&'a Composition),
    /// Runs of each part value, ascending, with multiplicity: part value
    /// `n_i` with multiplicity `l_i` contributes `l_i` consecutive runs of
    /// length `n_i`.
    Partition(&'a Partition),
}

/// The run lengths of a grouping, in substitution order.
fn grouping_runs(lambda: Grouping<'_>) -> Vec<usize> {
    match lambda {
        Grouping::Composition(c) => c.parts().to_vec(),
        Grouping::Partition(p) => p.parts().to_vec(), // ascending
    }
}

/// The group substitution `f^[lambda]`: replaces each run of coordinates
/// prescribed by `lambda` with a single fresh variable, producing a
/// polynomial in as many variables as `lambda` has parts.
///
/// For a symmetric `f` and a partition `lambda`, the result is
/// block-symmetric for [`BlockStructure::from_partition`].
pub fn lambda_substitute(f: &Polynomial, lambda: Grouping<'_>) -> Result<Polynomial, SymFunError> {
    let runs = grouping_runs(lambda);
    let total: usize = runs.iter().sum();
    if total != f.nvars() {
        return Err(SymFunError::SumMismatch {
            expected: f.nvars(),
            found: total,
        });
    }
    let mut map = Vec::with_capacity(total);
    for (group, &len) in runs.iter().enumerate() {
        map.extend(std::iter::repeat_n(group, len));
    }
    Ok(f.remap_variables(&map, runs.len()))
}

/// The distribution matrix `D` of a partition (see [`DistributionMatrix`]).
pub fn distribution_matrix(lambda: &Partition) -> DistributionMatrix {
    let n = lambda.n();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut col = 0;
    for (i, (value, count)) in lambda.multiplicities().into_iter().enumerate() {
        for j in 0..count {
            let mut row = vec![Rational::zero(); n];
            for entry in row.iter_mut().skip(col).take(value) {
                *entry = rat(1, value as i64);
            }
            col += value;
            rows.push(row);
            labels.push((i + 1, j + 1));
        }
    }
    DistributionMatrix { rows, labels }
}

/// Default variable cap for [`symmetric_closure_gate`].
pub const CLOSURE_GATE_DEFAULT_CAP: usize = 6;

/// The symmetric closure gate with the default variable cap of
/// [`CLOSURE_GATE_DEFAULT_CAP`].
pub fn symmetric_closure_gate(fs: &[Polynomial]) -> Result<Polynomial, SymFunError> {
    symmetric_closure_gate_with_cap(fs, CLOSURE_GATE_DEFAULT_CAP)
}

/// Builds the symmetric polynomial `g = sum_i sum_{sigma} (sigma f_i)^2`
/// over all `n!` coordinate permutations.  Its real zero set equals the
/// common real zero set of the inputs, so it gates arbitrary systems with
/// permutation-stable real varieties into a single symmetric equation.
///
/// The factorial blow-up restricts this to small `n`; inputs with more than
/// `cap` variables are rejected.
pub fn symmetric_closure_gate_with_cap(
    fs: &[Polynomial],
    cap: usize,
) -> Result<Polynomial, SymFunError> {
    let n = fs.first().map_or(0, Polynomial::nvars);
    for f in fs {
        if f.nvars() != n {
            return Err(ArityMismatch {
                left: n,
                right: f.nvars(),
            }
            .into());
        }
    }
    if n > cap {
        return Err(SymFunError::TooManyVariables { nvars: n, cap });
    }
    let mut out = Polynomial::zero(n);
    for perm in permutations(n) {
        for f in fs {
            let image = f.remap_variables(&perm, n);
            out = &out + &(&image * &image);
        }
    }
    Ok(out)
}

/// All permutations of `0..n`, by Heap's algorithm.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// The weighted power sum `sum_i m_i x_i^j` in `m.len()` variables.  With
/// the weights taken from a composition `lambda`, this equals
/// `p_j^[lambda]`.
pub fn weighted_power_sum(j: u32, m: &[usize]) -> Polynomial {
    assert!(j >= 1, "weighted power sums start at degree 1");
    let mut out = Polynomial::zero(m.len());
    for (v, &weight) in m.iter().enumerate() {
        out.add_term(Monomial::from_powers([(v, j)]), rat(weight as i64, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combi;
    use proptest::prelude::*;

    fn p(text: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(text, nvars).unwrap()
    }

    /// The six-term symmetric cubic used throughout: the monomial symmetric
    /// polynomial of shape (1,2) in three variables.
    fn six_term_cubic() -> Polynomial {
        p(
            "x1^2*x2 + x1*x2^2 + x2^2*x3 + x2*x3^2 + x3^2*x1 + x3*x1^2",
            3,
        )
    }

    #[test]
    fn basis_examples() {
        assert_eq!(elementary(2, 3).unwrap(), p("x1*x2 + x1*x3 + x2*x3", 3));
        assert_eq!(elementary(0, 3).unwrap(), Polynomial::one(3));
        assert_eq!(
            complete_homogeneous(2, 3).unwrap(),
            p("x1^2+x2^2+x3^2+x1*x2+x1*x3+x2*x3", 3)
        );
        assert_eq!(complete_homogeneous(0, 3).unwrap(), Polynomial::one(3));
        assert_eq!(power_sum(2, 3).unwrap(), p("x1^2+x2^2+x3^2", 3));
        assert_eq!(
            monomial_symmetric(&combi::Partition::new(vec![1, 2]), 3).unwrap(),
            six_term_cubic()
        );
        assert!(matches!(
            elementary(4, 3),
            Err(SymFunError::IndexOutOfRange { index: 4, nvars: 3 })
        ));
        assert!(matches!(
            power_sum(0, 3),
            Err(SymFunError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            monomial_symmetric(&combi::Partition::new(vec![1, 1, 1, 1]), 3),
            Err(SymFunError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            basis_polynomial(
                BasisKind::Elementary,
                &BasisIndex::Shape(combi::Partition::new(vec![1])),
                1
            ),
            Err(SymFunError::WrongIndexKind)
        ));
    }

    #[test]
    fn h_k_term_counts() {
        // h_k in n variables has C(n+k-1, k) monomials.
        for n in 1..=4usize {
            for k in 0..=4usize {
                let expect = binomial(n + k - 1, k);
                assert_eq!(
                    complete_homogeneous(k, n).unwrap().num_terms(),
                    expect,
                    "h_{k} in {n} vars"
                );
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        let mut out = 1usize;
        for i in 0..k {
            out = out * (n - i) / (i + 1);
        }
        out
    }

    #[test]
    fn symmetry_detection() {
        assert!(is_symmetric(&power_sum(2, 4).unwrap()));
        assert!(!is_symmetric(&p("x1 - x2", 2)));
        // (x1+x2+x3)^3 + (x4^2+x5^2) is symmetric per block {3,2} but not
        // globally.
        let f = &p("(x1+x2+x3)^3", 5) + &p("x4^2+x5^2", 5);
        let bs = BlockStructure::new(vec![3, 2]);
        assert!(is_block_symmetric(&f, &bs));
        assert!(!is_symmetric(&f));
    }

    #[test]
    fn newton_conversions() {
        // p_2 = e_1^2 - 2 e_2, p_3 = e_1^3 - 3 e_1 e_2 + 3 e_3.
        let p2 = Polynomial::variable(2, 1); // y_2 read as p_2
        assert_eq!(
            newton_convert(&p2, BasisKind::PowerSum, BasisKind::Elementary, 3).unwrap(),
            p("x1^2 - 2*x2", 2)
        );
        let p1 = Polynomial::variable(1, 0);
        assert_eq!(
            newton_convert(&p1, BasisKind::PowerSum, BasisKind::Elementary, 3).unwrap(),
            p("x1", 1)
        );
        let p3 = Polynomial::variable(3, 2);
        assert_eq!(
            newton_convert(&p3, BasisKind::PowerSum, BasisKind::Elementary, 3).unwrap(),
            p("x1^3 - 3*x1*x2 + 3*x3", 3)
        );
        assert!(matches!(
            newton_convert(&p2, BasisKind::PowerSum, BasisKind::CompleteHomogeneous, 3),
            Err(SymFunError::UnsupportedBasisPair)
        ));
    }

    #[test]
    fn newton_images_expand_correctly() {
        // Substituting e_k(x) into the power-sum images reproduces p_k(x).
        let n = 4;
        let e_polys: Vec<Polynomial> = (1..=n).map(|k| elementary(k, n).unwrap()).collect();
        for k in 1..=n {
            let image = &power_sums_in_elementary(n)[k - 1];
            let expanded = image.substitute(&e_polys).unwrap();
            assert_eq!(expanded, power_sum(k, n).unwrap(), "p_{k}");
        }
        // And the reverse images reproduce e_k from p_j(x).
        let p_polys: Vec<Polynomial> = (1..=n).map(|k| power_sum(k, n).unwrap()).collect();
        for k in 1..=n {
            let image = &elementary_in_power_sums(n)[k - 1];
            let expanded = image.substitute(&p_polys).unwrap();
            assert_eq!(expanded, elementary(k, n).unwrap(), "e_{k}");
        }
    }

    #[test]
    fn rewrite_six_term_cubic_in_all_bases() {
        let f = six_term_cubic();
        let in_e = ftsp_rewrite(&f, BasisKind::Elementary, None).unwrap();
        assert_eq!(in_e, p("x1*x2 - 3*x3", 3));
        let in_p = ftsp_rewrite(&f, BasisKind::PowerSum, None).unwrap();
        assert_eq!(in_p, p("x1*x2 - x3", 3));
        let in_h = ftsp_rewrite(&f, BasisKind::CompleteHomogeneous, None).unwrap();
        assert_eq!(in_h, p("-2*x1^3 + 5*x1*x2 - 3*x3", 3));
        // Round trip all three through expansion.
        let e_polys: Vec<Polynomial> = (1..=3).map(|k| elementary(k, 3).unwrap()).collect();
        let p_polys: Vec<Polynomial> = (1..=3).map(|k| power_sum(k, 3).unwrap()).collect();
        let h_polys: Vec<Polynomial> = (1..=3)
            .map(|k| complete_homogeneous(k, 3).unwrap())
            .collect();
        assert_eq!(in_e.substitute(&e_polys).unwrap(), f);
        assert_eq!(in_p.substitute(&p_polys).unwrap(), f);
        assert_eq!(in_h.substitute(&h_polys).unwrap(), f);
    }

    #[test]
    fn rewrite_rejects_asymmetric_input() {
        assert!(matches!(
            ftsp_rewrite(&p("x1 - x2", 2), BasisKind::Elementary, None),
            Err(SymFunError::NotSymmetric)
        ));
    }

    #[test]
    fn degree_restriction_in_power_sums() {
        // A symmetric polynomial of degree d <= n rewrites using only
        // p_1..p_d.
        let f = power_sum(2, 5).unwrap();
        let in_p = ftsp_rewrite(&f, BasisKind::PowerSum, None).unwrap();
        for k in 2..5 {
            assert_eq!(in_p.degree_in(k), Some(0), "p_{} must not appear", k + 1);
        }
        assert_eq!(in_p, Polynomial::variable(5, 1));
    }

    #[test]
    fn block_rewrite() {
        let f = &p("(x1+x2+x3)^3", 5) + &p("x4^2+x5^2", 5);
        let bs = BlockStructure::new(vec![3, 2]);
        let in_e = ftsp_rewrite(&f, BasisKind::Elementary, Some(&bs)).unwrap();
        // Block 1 contributes e_{1,1}^3 (variables y1..y3), block 2
        // contributes e_{2,1}^2 - 2 e_{2,2} (variables y4, y5).
        assert_eq!(in_e, p("x1^3 + x4^2 - 2*x5", 5));
        // Round trip.
        let e11 = embed_block(&elementary(1, 3).unwrap(), 0, 5);
        let e12 = embed_block(&elementary(2, 3).unwrap(), 0, 5);
        let e13 = embed_block(&elementary(3, 3).unwrap(), 0, 5);
        let e21 = embed_block(&elementary(1, 2).unwrap(), 3, 5);
        let e22 = embed_block(&elementary(2, 2).unwrap(), 3, 5);
        assert_eq!(in_e.substitute(&[e11, e12, e13, e21, e22]).unwrap(), f);
    }

    #[test]
    fn subring_membership_examples() {
        // Recover y1 y2 - 3 y3 from its expansion.
        let f = six_term_cubic();
        let gens: Vec<Polynomial> = (1..=3).map(|k| elementary(k, 3).unwrap()).collect();
        let found = subring_membership(&f, &gens, 2).unwrap();
        assert_eq!(found, p("x1*x2 - 3*x3", 3));
        // Odd polynomial in even generators.
        assert!(matches!(
            subring_membership(&p("x1", 1), &[p("x1^2", 1)], 3),
            Err(SymFunError::NotInSubring)
        ));
        // A planted square.
        let g = p("x1^2 + 2*x2", 2);
        let f2 = &g * &g;
        let found = subring_membership(&f2, &[g], 2).unwrap();
        assert_eq!(found, p("x1^2", 1));
    }

    #[test]
    fn lambda_substitution() {
        let p2 = power_sum(2, 3).unwrap();
        let c = combi::Composition::new(vec![2, 1]);
        assert_eq!(
            lambda_substitute(&p2, Grouping::Composition(&c)).unwrap(),
            p("2*x1^2 + x2^2", 2)
        );
        let ones = combi::Composition::new(vec![1, 1, 1]);
        assert_eq!(
            lambda_substitute(&p2, Grouping::Composition(&ones)).unwrap(),
            p2
        );
        let p1 = power_sum(1, 7).unwrap();
        let lam = combi::Partition::new(vec![2, 2, 3]);
        assert_eq!(
            lambda_substitute(&p1, Grouping::Partition(&lam)).unwrap(),
            p("2*x1 + 2*x2 + 3*x3", 3)
        );
        // Symmetric f gives a block-symmetric image.
        let e2 = elementary(2, 7).unwrap();
        let image = lambda_substitute(&e2, Grouping::Partition(&lam)).unwrap();
        assert!(is_block_symmetric(
            &image,
            &BlockStructure::from_partition(&lam)
        ));
        let bad = combi::Composition::new(vec![2, 2]);
        assert!(matches!(
            lambda_substitute(&p2, Grouping::Composition(&bad)),
            Err(SymFunError::SumMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn distribution_matrix_examples() {
        let lam = combi::Partition::new(vec![2, 2, 3]);
        let d = distribution_matrix(&lam);
        assert_eq!(d.nrows(), 3);
        assert_eq!(d.ncols(), 7);
        assert_eq!(d.row_labels(), &[(1, 1), (1, 2), (2, 1)]);
        let half = rat(1, 2);
        let third = rat(1, 3);
        let zero = Rational::zero();
        assert_eq!(
            d.rows()[0],
            vec![
                half.clone(),
                half.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone()
            ]
        );
        assert_eq!(
            d.rows()[1],
            vec![
                zero.clone(),
                zero.clone(),
                half.clone(),
                half.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone()
            ]
        );
        assert_eq!(
            d.rows()[2],
            vec![
                zero.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                third.clone(),
                third.clone(),
                third.clone()
            ]
        );
        // Row sums are 1; (1^n) is the identity; (n^1) is a single 1/n row.
        for row in d.rows() {
            let sum: Rational = row.iter().cloned().sum();
            assert!(sum.is_one());
        }
        let id = distribution_matrix(&combi::Partition::new(vec![1, 1, 1]));
        for (i, row) in id.rows().iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v == Rational::one(), i == j);
            }
        }
        let flat = distribution_matrix(&combi::Partition::new(vec![4]));
        assert_eq!(flat.nrows(), 1);
        assert!(flat.rows()[0].iter().all(|v| *v == rat(1, 4)));
    }

    #[test]
    fn chain_rule_factorization() {
        // Jac^[lambda](f) = Jac(f^[lambda]) * D as polynomial matrices.
        let n = 5;
        let f = {
            let e2 = elementary(2, n).unwrap();
            let p3 = power_sum(3, n).unwrap();
            &(&e2 * &e2) + &p3
        };
        for lam in combi::enumerate_partitions(n, None) {
            let image = lambda_substitute(&f, Grouping::Partition(&lam)).unwrap();
            let d = distribution_matrix(&lam);
            let ell = lam.len();
            for k in 0..n {
                let lhs = lambda_substitute(&f.derivative(k), Grouping::Partition(&lam)).unwrap();
                let mut rhs = Polynomial::zero(ell);
                for j in 0..ell {
                    rhs = &rhs + &image.derivative(j).scale(d.entry(j, k));
                }
                assert_eq!(lhs, rhs, "lambda = {lam}, column {k}");
            }
        }
    }

    #[test]
    fn closure_gate_examples() {
        let g = symmetric_closure_gate(&[p("x1 - x2", 2)]).unwrap();
        assert_eq!(g, p("2*x1^2 - 4*x1*x2 + 2*x2^2", 2));
        let g = symmetric_closure_gate(&[p("x1", 2)]).unwrap();
        assert_eq!(g, p("x1^2 + x2^2", 2));
        assert!(is_symmetric(&g));
        let too_big = Polynomial::variable(7, 0);
        assert!(matches!(
            symmetric_closure_gate(&[too_big]),
            Err(SymFunError::TooManyVariables { nvars: 7, cap: 6 })
        ));
    }

    #[test]
    fn closure_gate_zero_set() {
        // g vanishes at a point iff all inputs do.
        let fs = [p("x1*x2 - 1", 3), p("x3 - x1", 3)];
        let g = symmetric_closure_gate(&fs).unwrap();
        let on = [rat(1, 1), rat(1, 1), rat(1, 1)];
        assert!(g.evaluate(&on).unwrap().is_zero());
        let off = [rat(1, 1), rat(1, 1), rat(2, 1)];
        assert!(!g.evaluate(&off).unwrap().is_zero());
    }

    #[test]
    fn weighted_power_sums() {
        assert_eq!(weighted_power_sum(1, &[1, 1, 1]), power_sum(1, 3).unwrap());
        assert_eq!(weighted_power_sum(2, &[2, 1]), p("2*x1^2 + x2^2", 2));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        let distinct: std::collections::BTreeSet<_> = permutations(4).into_iter().collect();
        assert_eq!(distinct.len(), 24);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Round trip: expanding a random expression in e-variables and
        /// rewriting it back recovers the expression exactly.
        #[test]
        fn ftsp_round_trip(coeffs in proptest::collection::vec(-4i64..5, 6)) {
            let n = 3;
            // F = c0 y1^2 + c1 y1 y2 + c2 y2^2 + c3 y3 + c4 y1 + c5
            let monos = [
                Monomial::from_powers([(0, 2)]),
                Monomial::from_powers([(0, 1), (1, 1)]),
                Monomial::from_powers([(1, 2)]),
                Monomial::from_powers([(2, 1)]),
                Monomial::from_powers([(0, 1)]),
                Monomial::one(),
            ];
            let mut expr = Polynomial::zero(n);
            for (m, &c) in monos.iter().zip(&coeffs) {
                if c != 0 {
                    expr.add_term(m.clone(), rat(c, 1));
                }
            }
            let e_polys: Vec<Polynomial> = (1..=n).map(|k| elementary(k, n).unwrap()).collect();
            let f = expr.substitute(&e_polys).unwrap();
            let back = ftsp_rewrite(&f, BasisKind::Elementary, None).unwrap();
            prop_assert_eq!(back, expr);
        }

        /// Power-sum rewriting agrees with evaluation at random points.
        #[test]
        fn rewrite_agrees_with_evaluation(
            point in proptest::collection::vec(-5i64..6, 4),
        ) {
            let n = 4;
            let f = {
                let e2 = elementary(2, n).unwrap();
                let p1 = power_sum(1, n).unwrap();
                &(&e2 * &p1) + &power_sum(3, n).unwrap()
            };
            let a: Vec<Rational> = point.iter().map(|&v| rat(v, 1)).collect();
            let fx = f.evaluate(&a).unwrap();
            for (target, basis) in [
                (BasisKind::Elementary, (1..=n).map(|k| elementary(k, n).unwrap()).collect::<Vec<_>>()),
                (BasisKind::PowerSum, (1..=n).map(|k| power_sum(k, n).unwrap()).collect::<Vec<_>>()),
                (BasisKind::CompleteHomogeneous, (1..=n).map(|k| complete_homogeneous(k, n).unwrap()).collect::<Vec<_>>()),
            ] {
                let rewritten = ftsp_rewrite(&f, target, None).unwrap();
                let basis_values: Vec<Rational> = basis
                    .iter()
                    .map(|b| b.evaluate(&a).unwrap())
                    .collect();
                prop_assert_eq!(rewritten.evaluate(&basis_values).unwrap(), fx.clone());
            }
        }

        /// Group substitution of a power sum is the weighted power sum.
        #[test]
        fn weighted_power_sum_cross_check(
            cuts in proptest::collection::vec(any::<bool>(), 5),
            j in 1u32..4,
        ) {
            let mut parts = Vec::new();
            let mut run = 1;
            for cut in cuts {
                if cut {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            let c = combi::Composition::new(parts);
            let pj = power_sum(j as usize, c.n()).unwrap();
            let substituted = lambda_substitute(&pj, Grouping::Composition(&c)).unwrap();
            prop_assert_eq!(substituted, weighted_power_sum(j, c.parts()));
        }
    }
}
