//! Real emptiness of symmetric systems by the critical-point method, and
//! the degree-principle nonnegativity check.
//!
//! A symmetric system in `n` variables restricted to points with a given
//! repetition pattern becomes a small block-symmetric system.  Adding a
//! random proper objective and passing to per-block elementary coordinates
//! turns "is the real variety empty?" into finitely many zero-dimensional
//! computations, each finished off by the real-preimage decision of
//! [`crate::decide`].  The same pattern reduction powers a three-valued
//! nonnegativity test for symmetric polynomials: sampling falsifies,
//! and exact univariate analysis, even-coefficient inspection, or critical
//! values of proper reductions certify.

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::combi::{enumerate_partitions, Partition};
use crate::decide::{decide_real_preimage, DecideError, OrbitParam};
use crate::poly::{jacobian, ArityMismatch, Monomial, Polynomial, Rational};
use crate::realroot::{
    count_real_roots, count_roots_in, isolate_real_roots, RealRootError, ThomContext, UniPoly,
};
use crate::symfun::{
    ftsp_rewrite, is_symmetric, lambda_substitute, weighted_power_sum, BasisKind, BlockStructure,
    Grouping, SymFunError,
};
use crate::zerodim::{solve_zero_dim, solve_zero_dim_restricted, ZeroDimError, ZeroDimParam};

/// Errors from the emptiness and nonnegativity drivers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmptinessError {
    /// Critical-point finiteness failed even after resampling the
    /// objective; the instance violates the genericity the method needs.
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    /// A stated assumption of the driver does not hold.
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    /// Symmetric-function machinery failure (non-symmetric input, ...).
    #[error(transparent)]
    SymFun(#[from] SymFunError),
    /// Zero-dimensional solver failure.
    #[error(transparent)]
    ZeroDim(#[from] ZeroDimError),
    /// Real-preimage decision failure.
    #[error(transparent)]
    Decide(#[from] DecideError),
    /// Real-root machinery failure.
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
    /// Variable-count mismatch between inputs.
    #[error(transparent)]
    Arity(#[from] ArityMismatch),
}

// ---------------------------------------------------------------------------
// Objectives
// ---------------------------------------------------------------------------

/// A randomly drawn proper objective for a repetition pattern: the
/// block-symmetric polynomial
/// `phi = sum_i c_i p_{i, l_i + 1} + sum_i sum_j a_{i,j} p_{i,j}`
/// where `p_{i,j}` is the weighted power sum of block `i`'s variables and
/// `c_i = 1` exactly when the block length `l_i` is odd, so every block's
/// top term has even degree and `phi` is proper on the whole space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveSpec {
    lambda: Partition,
    a: Vec<Vec<Rational>>,
    c: Vec<bool>,
}

impl ObjectiveSpec {
    /// The repetition pattern.
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The random coefficients, one row per block, `a[i][j-1]` multiplying
    /// the degree-`j` weighted power sum of block `i`.
    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    /// The parity vector: `c[i]` iff block `i` has odd length.
    pub fn c(&self) -> &[bool] {
        &self.c
    }

    /// Assembles the objective polynomial in block layout (one variable
    /// per part, ascending part order).
    pub fn phi(&self) -> Polynomial {
        let total = self.lambda.len();
        let mut out = Polynomial::zero(total);
        let mut offset = 0;
        for (i, (part, len)) in self.lambda.multiplicities().into_iter().enumerate() {
            let mut weights = vec![0usize; total];
            for w in weights.iter_mut().skip(offset).take(len) {
                *w = part;
            }
            if self.c[i] {
                out = &out + &weighted_power_sum((len + 1) as u32, &weights);
            }
            for (j, coeff) in self.a[i].iter().enumerate() {
                out = &out + &weighted_power_sum((j + 1) as u32, &weights).scale(coeff);
            }
            offset += len;
        }
        out
    }
}

/// Draws an objective for the pattern: coefficients uniform in
/// `{1, ..., 2^20}`, parities from the block lengths.
pub fn build_objective<R: Rng + ?Sized>(lambda: &Partition, rng: &mut R) -> ObjectiveSpec {
    let mut a = Vec::new();
    let mut c = Vec::new();
    for (_, len) in lambda.multiplicities() {
        a.push(
            (0..len)
                .map(|_| Rational::from_integer(rng.gen_range(1..=1_048_576i64).into()))
                .collect(),
        );
        c.push(len % 2 == 1);
    }
    ObjectiveSpec {
        lambda: lambda.clone(),
        a,
        c,
    }
}

// ---------------------------------------------------------------------------
// Lagrange systems
// ---------------------------------------------------------------------------

/// The Lagrange system of an objective on a constraint set: the
/// constraints `g_1..g_s` together with one equation per original variable
/// stating `[L_1 ... L_s 1] . Jac(g, phi) = 0`, over the original
/// variables followed by the multipliers `L_1..L_s`.
#[derive(Debug, Clone)]
pub struct LagrangeSystem {
    equations: Vec<Polynomial>,
    nx: usize,
    nmultipliers: usize,
}

impl LagrangeSystem {
    /// All equations, constraints first, in `nx() + nmultipliers()`
    /// variables.
    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    /// The number of original variables.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// The number of multiplier variables (appended after the originals).
    pub fn nmultipliers(&self) -> usize {
        self.nmultipliers
    }
}

/// Builds the Lagrange system of `phi` on the zero set of `gs`.  With no
/// constraints this is the plain gradient system of `phi`.
pub fn lagrange_system(gs: &[Polynomial], phi: &Polynomial) -> LagrangeSystem {
    let nx = phi.nvars();
    let s = gs.len();
    let total = nx + s;
    let mut equations = Vec::with_capacity(s + nx);
    for g in gs {
        assert_eq!(g.nvars(), nx, "constraints and objective disagree on arity");
        equations.push(g.extend_nvars(total));
    }
    for var in 0..nx {
        let mut eq = phi.derivative(var).extend_nvars(total);
        for (i, g) in gs.iter().enumerate() {
            let li = Polynomial::variable(total, nx + i);
            eq = &eq + &(&li * &g.derivative(var).extend_nvars(total));
        }
        equations.push(eq);
    }
    LagrangeSystem {
        equations,
        nx,
        nmultipliers: s,
    }
}

// ---------------------------------------------------------------------------
// Symmetric critical points
// ---------------------------------------------------------------------------

/// Parametrizes the critical points of `phi` on the zero set of `gs`,
/// everything expressed in per-block elementary coordinates.
///
/// The inputs live in block layout for `lambda` (one variable per part)
/// and must be block-symmetric.  Both are rewritten into elementary
/// coordinates, the Lagrange system of the rewritten pair is solved
/// zero-dimensionally with the separating form restricted to the
/// elementary coordinates, and the result is returned with the multiplier
/// coordinates projected away, as an [`OrbitParam`] ready for
/// [`decide_real_preimage`].
pub fn critical_points_sym<R: Rng + ?Sized>(
    gs: &[Polynomial],
    phi: &Polynomial,
    lambda: &Partition,
    rng: &mut R,
) -> Result<OrbitParam, EmptinessError> {
    let bs = BlockStructure::from_partition(lambda);
    let ell = lambda.len();
    let mut rewritten = Vec::with_capacity(gs.len());
    for g in gs {
        rewritten.push(ftsp_rewrite(g, BasisKind::Elementary, Some(&bs))?);
    }
    let phi_e = ftsp_rewrite(phi, BasisKind::Elementary, Some(&bs))?;
    let ls = lagrange_system(&rewritten, &phi_e);
    let keep: Vec<usize> = (0..ell).collect();
    let param = solve_zero_dim_restricted(ls.equations(), ell + gs.len(), &keep, rng)?;
    let restricted = param.restrict_coordinates(&keep);
    Ok(OrbitParam::new(lambda.clone(), restricted)?)
}

/// `true` iff the common real zero set of the symmetric polynomials `fs`
/// is empty.
///
/// For every repetition pattern (partition of `n` with at least as many
/// parts as there are equations, shortest first), the system is collapsed
/// along the pattern, a random proper objective is added, the critical
/// points are parametrized, and the real-preimage decision runs.  A single
/// positive decision proves a real point exists (returns `false`); if all
/// patterns decide negatively the real variety is empty (returns `true`).
/// A pattern whose critical system stays degenerate after one objective
/// resample aborts with [`EmptinessError::DegenerateInstance`].
pub fn real_emptiness<R: Rng + ?Sized>(
    fs: &[Polynomial],
    rng: &mut R,
) -> Result<bool, EmptinessError> {
    let n = match fs.first() {
        None => return Ok(false), // no equations: all of space
        Some(f) => f.nvars(),
    };
    let s = fs.len();
    if s >= n {
        return Err(EmptinessError::AssumptionViolated(format!(
            "{s} equations in {n} variables; the driver needs fewer equations than variables"
        )));
    }
    for f in fs {
        if f.nvars() != n {
            return Err(ArityMismatch {
                left: n,
                right: f.nvars(),
            }
            .into());
        }
        if !is_symmetric(f) {
            return Err(SymFunError::NotSymmetric.into());
        }
    }
    let mut patterns = enumerate_partitions(n, Some(s));
    patterns.sort_by_key(Partition::len);
    for lambda in &patterns {
        let collapsed: Vec<Polynomial> = fs
            .iter()
            .map(|f| lambda_substitute(f, Grouping::Partition(lambda)))
            .collect::<Result<_, _>>()?;
        let mut attempt = 0;
        let op = loop {
            let objective = build_objective(lambda, rng);
            match critical_points_sym(&collapsed, &objective.phi(), lambda, rng) {
                Ok(op) => break op,
                Err(
                    EmptinessError::ZeroDim(ZeroDimError::PositiveDimensional(_))
                    | EmptinessError::ZeroDim(ZeroDimError::SeparationFailure { .. }),
                ) if attempt == 0 => {
                    attempt += 1;
                }
                Err(EmptinessError::ZeroDim(e)) => {
                    return Err(EmptinessError::DegenerateInstance(format!(
                        "pattern {lambda}: critical points stayed degenerate after a resample ({e})"
                    )));
                }
                Err(e) => return Err(e),
            }
        };
        if decide_real_preimage(&op)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks the regularity assumption of the emptiness driver: the Jacobian
/// of `fs` has full rank `s` at every common complex zero.  Decided
/// exactly by solving `fs` together with all `s x s` minors of the
/// Jacobian: an empty augmented variety certifies regularity and a finite
/// nonempty one refutes it.  An infinite singular locus surfaces as
/// [`ZeroDimError::PositiveDimensional`]; callers should report the check
/// as inconclusive.
pub fn verify_regularity<R: Rng + ?Sized>(
    fs: &[Polynomial],
    rng: &mut R,
) -> Result<bool, EmptinessError> {
    let s = fs.len();
    if s == 0 {
        return Ok(true);
    }
    let n = fs[0].nvars();
    let jac = jacobian(fs)?;
    let mut augmented = fs.to_vec();
    for cols in combinations(n, s) {
        let minor = minor_determinant(&jac, &cols, n);
        augmented.push(minor);
    }
    let param = solve_zero_dim(&augmented, n, rng)?;
    Ok(param.q().degree() == Some(0))
}

/// All `k`-element subsets of `0..n`, each ascending.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (k - i) {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The determinant of the square submatrix of `jac` on the given columns,
/// by Laplace expansion (the matrices here are desk-sized).
fn minor_determinant(jac: &[Vec<Polynomial>], cols: &[usize], nvars: usize) -> Polynomial {
    let k = cols.len();
    if k == 0 {
        return Polynomial::one(nvars);
    }
    if k == 1 {
        return jac[0][cols[0]].clone();
    }
    let mut det = Polynomial::zero(nvars);
    for (pos, &col) in cols.iter().enumerate() {
        let sub_rows: Vec<Vec<Polynomial>> = jac[1..].to_vec();
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &c)| c)
            .collect();
        let cofactor = minor_determinant(&sub_rows, &sub_cols, nvars);
        let signed = if pos % 2 == 0 {
            &jac[0][col] * &cofactor
        } else {
            (&jac[0][col] * &cofactor).scale(&-Rational::one())
        };
        det = &det + &signed;
    }
    det
}

// ---------------------------------------------------------------------------
// Degree-principle nonnegativity
// ---------------------------------------------------------------------------

/// Outcome of the nonnegativity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonnegOutcome {
    /// Certified `f >= 0` everywhere.
    Nonnegative,
    /// A point with `f(point) < 0`, verified by exact evaluation.
    Witness(Vec<Rational>),
    /// Neither falsified nor certified.
    Unknown,
}

/// Three-valued nonnegativity for a symmetric polynomial of degree `d`.
///
/// By the degree principle, `f >= 0` everywhere iff it is nonnegative on
/// all points with at most `r = max(2, d/2)` distinct coordinates, so the
/// check works through the repetition patterns with at most `r` parts.
/// Sampling each collapsed polynomial hunts for a counterexample (returned
/// expanded to `n` coordinates and re-verified exactly).  Certification
/// requires every pattern to succeed by one of three exact routes: all
/// terms even with nonnegative coefficients; a univariate collapse analyzed
/// by squarefree decomposition; or a positive-definite leading form, in
/// which case the collapse is proper and its minimum is the least critical
/// value, each critical value being sign-checked exactly (a negative one
/// yields a witness).  Anything else is reported as [`NonnegOutcome::Unknown`].
pub fn nonneg_degree_principle<R: Rng + ?Sized>(
    f: &Polynomial,
    rng: &mut R,
) -> Result<NonnegOutcome, EmptinessError> {
    if !is_symmetric(f) {
        return Err(SymFunError::NotSymmetric.into());
    }
    let n = f.nvars();
    let d = match f.total_degree() {
        None => return Ok(NonnegOutcome::Nonnegative), // zero polynomial
        Some(d) => d as usize,
    };
    let r = 2.max(d / 2);
    let mut patterns: Vec<Partition> = enumerate_partitions(n, None)
        .into_iter()
        .filter(|p| p.len() <= r)
        .collect();
    patterns.sort_by_key(Partition::len);

    // Falsification pass: sample every collapse.
    for lambda in &patterns {
        let h = lambda_substitute(f, Grouping::Partition(lambda))?;
        for z in sample_points(lambda.len(), rng) {
            if h.evaluate(&z)?.is_negative() {
                return Ok(NonnegOutcome::Witness(checked_witness(f, lambda, &z)?));
            }
        }
    }

    // Certification pass: every pattern must close.
    let mut all_certified = true;
    for lambda in &patterns {
        let h = lambda_substitute(f, Grouping::Partition(lambda))?;
        if all_terms_even_and_nonnegative(&h) {
            continue;
        }
        if lambda.len() == 1 {
            let p = UniPoly::from_polynomial(&h);
            if univariate_nonnegative(&p) {
                continue;
            }
            let z = vec![univariate_negative_point(&p)];
            return Ok(NonnegOutcome::Witness(checked_witness(f, lambda, &z)?));
        }
        if leading_form_positive_definite(&h) {
            match certify_by_critical_values(f, lambda, &h, rng)? {
                CriticalOutcome::AllNonnegative => continue,
                CriticalOutcome::NegativePoint(w) => return Ok(NonnegOutcome::Witness(w)),
                CriticalOutcome::Inconclusive => {}
            }
        }
        all_certified = false;
    }
    Ok(if all_certified {
        NonnegOutcome::Nonnegative
    } else {
        NonnegOutcome::Unknown
    })
}

/// Expands a collapsed point to `n` coordinates along the pattern and
/// verifies exactly that `f` is negative there.
fn checked_witness(
    f: &Polynomial,
    lambda: &Partition,
    z: &[Rational],
) -> Result<Vec<Rational>, EmptinessError> {
    let mut w = Vec::with_capacity(lambda.n());
    for (&part, value) in lambda.parts().iter().zip(z) {
        for _ in 0..part {
            w.push(value.clone());
        }
    }
    let value = f.evaluate(&w)?;
    assert!(
        value.is_negative(),
        "witness expansion must evaluate negative (exact arithmetic)"
    );
    Ok(w)
}

/// Grid plus random rational sample points in `ell` variables.
fn sample_points<R: Rng + ?Sized>(ell: usize, rng: &mut R) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let axis: Vec<Rational> = match ell {
        1 => (-12..=12)
            .map(|k| Rational::new(k.into(), 4.into()))
            .collect(),
        2 => (-6..=6)
            .map(|k| Rational::new(k.into(), 2.into()))
            .collect(),
        3 => (-3..=3).map(|k| Rational::from_integer(k.into())).collect(),
        _ => Vec::new(),
    };
    if !axis.is_empty() {
        let mut idx = vec![0usize; ell];
        'grid: loop {
            out.push(idx.iter().map(|&i| axis[i].clone()).collect());
            let mut k = 0;
            loop {
                if k == ell {
                    break 'grid;
                }
                idx[k] += 1;
                if idx[k] < axis.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    for _ in 0..40 {
        out.push(
            (0..ell)
                .map(|_| {
                    Rational::new(
                        rng.gen_range(-12i64..=12).into(),
                        rng.gen_range(1i64..=4).into(),
                    )
                })
                .collect(),
        );
    }
    out
}

/// `true` iff every term has all-even exponents and a positive
/// coefficient, which makes the polynomial pointwise nonnegative.
fn all_terms_even_and_nonnegative(h: &Polynomial) -> bool {
    h.terms()
        .all(|(m, c)| c.is_positive() && m.powers().iter().all(|&(_, e)| e % 2 == 0))
}

/// A sufficient exact test that the top-degree form of `h` is positive
/// definite: all its terms even with positive coefficients, and every
/// variable contributing its pure top power.
fn leading_form_positive_definite(h: &Polynomial) -> bool {
    let deg = match h.total_degree() {
        None | Some(0) => return false,
        Some(d) => d,
    };
    let leading: Vec<(&Monomial, &Rational)> =
        h.terms().filter(|(m, _)| m.total_degree() == deg).collect();
    if !leading
        .iter()
        .all(|(m, c)| c.is_positive() && m.powers().iter().all(|&(_, e)| e % 2 == 0))
    {
        return false;
    }
    (0..h.nvars()).all(|v| {
        let pure = Monomial::from_powers([(v, deg)]);
        leading.iter().any(|(m, _)| **m == pure)
    })
}

enum CriticalOutcome {
    AllNonnegative,
    NegativePoint(Vec<Rational>),
    Inconclusive,
}

/// For a proper collapse `h`, checks the sign of `h` at every real
/// critical point exactly.  All signs nonnegative certifies `h >= 0`
/// (the global minimum is a critical value); a negative sign is refined
/// into a rational point where `h` is still negative.
fn certify_by_critical_values<R: Rng + ?Sized>(
    f: &Polynomial,
    lambda: &Partition,
    h: &Polynomial,
    rng: &mut R,
) -> Result<CriticalOutcome, EmptinessError> {
    let ell = h.nvars();
    let gradient: Vec<Polynomial> = (0..ell).map(|v| h.derivative(v)).collect();
    let param = match solve_zero_dim(&gradient, ell, rng) {
        Ok(p) => p,
        Err(ZeroDimError::PositiveDimensional(_) | ZeroDimError::SeparationFailure { .. }) => {
            return Ok(CriticalOutcome::Inconclusive)
        }
        Err(e) => return Err(e.into()),
    };
    let q = param.q().clone();
    if q.degree() == Some(0) {
        // No complex critical points at all; a proper polynomial always has
        // a minimum, so this cannot happen for a genuinely proper h.
        return Ok(CriticalOutcome::Inconclusive);
    }
    let ctx = ThomContext::new(&q)?;
    let scaled = param.scaled_composition(h);
    let denom = param.denominator_poly().clone();
    let deg_h = h.total_degree().unwrap_or(0);
    for (index, enc) in ctx.encodings().to_vec().iter().enumerate() {
        let s_num = ctx.sign_at(enc, &scaled)?;
        let s_den = ctx.sign_at(enc, &denom)?;
        debug_assert_ne!(s_den, 0, "denominator is coprime to q");
        let sign = if deg_h % 2 == 0 { s_num } else { s_num * s_den };
        if sign < 0 {
            let z = refine_to_negative(&param, index, h)?;
            return Ok(CriticalOutcome::NegativePoint(checked_witness(
                f, lambda, &z,
            )?));
        }
    }
    Ok(CriticalOutcome::AllNonnegative)
}

/// Starting from the `index`-th real root of the parametrization's `q`
/// (ascending), bisects its isolating interval until the parametrized
/// coordinates evaluated at the rational midpoint give `h < 0`.
/// Terminates because `h` is strictly negative at the exact point and the
/// coordinates are continuous there.
fn refine_to_negative(
    param: &ZeroDimParam,
    index: usize,
    h: &Polynomial,
) -> Result<Vec<Rational>, EmptinessError> {
    let q = param.q();
    let width = Rational::new(1.into(), 64.into());
    let intervals = isolate_real_roots(q, &width);
    let (mut lo, mut hi) = intervals[index].clone();
    for _ in 0..256 {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if !param.denominator_poly().eval(&mid).is_zero() {
            let denom = param.denominator_poly().eval(&mid);
            let z: Vec<Rational> = param.v().iter().map(|vi| vi.eval(&mid) / &denom).collect();
            if h.evaluate(&z)?.is_negative() {
                return Ok(z);
            }
        }
        if count_roots_in(q, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    unreachable!("bisection failed to reach the negative critical point");
}

/// Exact univariate nonnegativity: nonzero `p >= 0` on the whole line iff
/// its degree is even, its leading coefficient positive, and no squarefree
/// factor of odd multiplicity has a real root.
fn univariate_nonnegative(p: &UniPoly) -> bool {
    match p.degree() {
        None => true,
        Some(0) => !p.coeff(0).is_negative(),
        Some(d) => {
            if d % 2 != 0 || !p.leading_coefficient().unwrap().is_positive() {
                return false;
            }
            for (mult, factor) in squarefree_decomposition(p) {
                if mult % 2 == 1 && count_real_roots(&factor).unwrap() > 0 {
                    return false;
                }
            }
            true
        }
    }
}

/// Yun's squarefree decomposition: pairs `(multiplicity, factor)` with the
/// factors squarefree, pairwise coprime, and
/// `p = lc * prod factor^multiplicity`.
fn squarefree_decomposition(p: &UniPoly) -> Vec<(usize, UniPoly)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = p.monic();
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let mut c = p.exact_div(&g);
    let mut d = &dp.exact_div(&g) - &c.derivative();
    let mut mult = 1usize;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((mult, a.clone()));
        }
        c = c.exact_div(&a);
        d = &d.exact_div(&a) - &c.derivative();
        mult += 1;
    }
    out
}

/// A rational point where a univariate polynomial known not to be
/// nonnegative is negative: sample the midpoints of the gaps between its
/// real roots and one point beyond each end.
fn univariate_negative_point(p: &UniPoly) -> Rational {
    let sf = crate::realroot::squarefree_part(p).expect("nonzero");
    let mut width = Rational::new(1.into(), 4.into());
    for _ in 0..64 {
        let intervals = isolate_real_roots(&sf, &width);
        let strict = intervals.windows(2).all(|w| w[0].1 < w[1].0);
        if strict {
            let mut candidates = Vec::new();
            if let Some((first_lo, _)) = intervals.first() {
                candidates.push(first_lo - &Rational::one());
            } else {
                candidates.push(Rational::zero());
            }
            for w in intervals.windows(2) {
                candidates.push((&w[0].1 + &w[1].0) / Rational::from_integer(2.into()));
            }
            if let Some((_, last_hi)) = intervals.last() {
                candidates.push(last_hi + &Rational::one());
            }
            for candidate in candidates {
                if p.eval(&candidate).is_negative() {
                    return candidate;
                }
            }
            panic!("no negative gap found for a polynomial that is not nonnegative");
        }
        width = width / Rational::from_integer(2.into());
    }
    unreachable!("isolating intervals failed to separate");
}
