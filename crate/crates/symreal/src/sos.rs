//! Sums-of-squares certificates through Gram matrices.
//!
//! A polynomial `f` of even degree `2d` is a sum of squares iff `f = vᵀQv`
//! for some positive semidefinite rational matrix `Q`, where `v` collects the
//! candidate basis monomials of degree at most `d`. This module constructs
//! the exact linear system tying the entries of `Q` to the coefficients of
//! `f` ([`gram_system`]), verifies a proposed certificate with exact rational
//! arithmetic ([`verify_gram`]), and emits the feasibility problem in sparse
//! SDPA format for external numeric solvers ([`emit_sdpa`]). No SDP solver is
//! embedded: the value here is exact construction and exact verification;
//! floating-point solving is delegated through the interchange file.
//!
//! For symmetric quartic forms in many variables the sums-of-squares question
//! collapses to a fixed-size feasibility problem independent of the variable
//! count: a pair of 2×2 matrices and one scalar parametrize the whole cone.
//! [`quartic_from_params`] expands that parametrization exactly and
//! [`quartic_check`] decides feasibility of the parameters.

use crate::linalg::{is_positive_semidefinite, Mat};
use crate::poly::{rat, rat_int, rational_sign, Monomial, Polynomial, Rational};
use crate::symfun::weighted_power_sum;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Errors raised by Gram-matrix construction and verification.
#[derive(Debug, thiserror::Error)]
pub enum SosError {
    /// Sums of squares have even degree; the input's total degree is odd.
    #[error("total degree {0} is odd, so the polynomial cannot be a sum of squares")]
    OddDegree(u32),
    /// The candidate matrix shape does not match the basis length.
    #[error("candidate matrix is {rows}x{cols} but the basis has {basis} monomials")]
    DimensionMismatch {
        /// Row count of the candidate matrix.
        rows: usize,
        /// Column count of the candidate matrix.
        cols: usize,
        /// Number of basis monomials.
        basis: usize,
    },
    /// The candidate matrix is not symmetric.
    #[error("candidate matrix is not symmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric {
        /// Row of the offending entry.
        i: usize,
        /// Column of the offending entry.
        j: usize,
    },
    /// The quartic parametrization needs strictly more than four variables.
    #[error("the symmetric-quartic parametrization requires more than 4 variables, got {0}")]
    TooFewVariables(usize),
    /// Writing the SDPA file failed.
    #[error("failed to write SDPA file: {0}")]
    IoError(#[from] std::io::Error),
}

/// One coefficient-matching constraint of a [`GramSystem`].
///
/// For the monomial `μ` the exact matching condition reads
/// `Σ_{i<j, bᵢbⱼ=μ} 2·Q[i,j] + Σ_{i, bᵢ²=μ} Q[i,i] = c_μ(f)`,
/// where `entries` lists the positions `(i, j)` with `i ≤ j` whose basis
/// product equals `μ` and `target` is `c_μ(f)`. A monomial of `f` that is not
/// a product of two basis monomials yields an empty `entries` list with a
/// nonzero target — an unsatisfiable constraint recording that the chosen
/// basis cannot represent `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramConstraint {
    monomial: Monomial,
    entries: Vec<(usize, usize)>,
    target: Rational,
}

impl GramConstraint {
    /// The matched monomial.
    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    /// Upper-triangular positions `(i, j)`, `i ≤ j`, with `bᵢ·bⱼ` equal to
    /// the matched monomial.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// The coefficient of the matched monomial in the target polynomial.
    pub fn target(&self) -> &Rational {
        &self.target
    }
}

/// The exact linear system whose positive semidefinite solutions are the
/// Gram matrices of a polynomial.
///
/// `basis` holds the candidate monomials (degree exactly `d` for homogeneous
/// input of degree `2d`, all degrees `≤ d` otherwise), in descending graded
/// lexicographic order. There is one constraint per monomial appearing in the
/// comparison `f = vᵀQv`, i.e. per element of the union of the pairwise
/// basis products and the support of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSystem {
    nvars: usize,
    basis: Vec<Monomial>,
    constraints: Vec<GramConstraint>,
}

impl GramSystem {
    /// Ambient variable count.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The candidate monomial basis, in descending graded lexicographic
    /// order; `Q` is indexed against this ordering.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// The coefficient-matching constraints, ordered by matched monomial in
    /// descending graded lexicographic order.
    pub fn constraints(&self) -> &[GramConstraint] {
        &self.constraints
    }
}

/// All monomials of total degree exactly `degree` in `nvars` variables.
fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn recurse(
        var: usize,
        nvars: usize,
        remaining: u32,
        stem: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        if var + 1 == nvars {
            if remaining > 0 {
                stem.push((var, remaining));
            }
            out.push(Monomial::from_powers(stem.iter().copied()));
            if remaining > 0 {
                stem.pop();
            }
            return;
        }
        for e in 0..=remaining {
            if e > 0 {
                stem.push((var, e));
            }
            recurse(var + 1, nvars, remaining - e, stem, out);
            if e > 0 {
                stem.pop();
            }
        }
    }
    if nvars == 0 {
        return if degree == 0 {
            vec![Monomial::one()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    recurse(0, nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// Builds the exact coefficient-matching system for `f = vᵀQv`.
///
/// The basis defaults to every monomial of degree at most `deg(f)/2`; for a
/// nonzero homogeneous `f` it is cut down to the monomials of degree exactly
/// `deg(f)/2`, which loses no certificates (squares of mixed-degree
/// polynomials cannot sum to a form). Any positive semidefinite solution of
/// the returned system is a Gram matrix proving `f` a sum of squares.
///
/// Errors with [`SosError::OddDegree`] when `deg(f)` is odd.
pub fn gram_system(f: &Polynomial) -> Result<GramSystem, SosError> {
    let degree = f.total_degree().unwrap_or(0);
    if degree % 2 != 0 {
        return Err(SosError::OddDegree(degree));
    }
    let half = degree / 2;
    let nvars = f.nvars();
    let mut basis = if f.is_homogeneous() && !f.is_zero() {
        monomials_of_degree(nvars, half)
    } else {
        (0..=half)
            .flat_map(|d| monomials_of_degree(nvars, d))
            .collect()
    };
    basis.sort_by(|a, b| b.cmp(a));

    // One bucket per monomial reachable as a product of two basis elements.
    let mut buckets: BTreeMap<Monomial, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            buckets
                .entry(basis[i].mul(&basis[j]))
                .or_default()
                .push((i, j));
        }
    }
    // Monomials of f outside every bucket still constrain the (empty) sum.
    for (m, _) in f.terms() {
        buckets.entry(m.clone()).or_default();
    }

    let mut constraints: Vec<GramConstraint> = buckets
        .into_iter()
        .map(|(monomial, entries)| {
            let target = f.coefficient(&monomial);
            GramConstraint {
                monomial,
                entries,
                target,
            }
        })
        .collect();
    constraints.sort_by(|a, b| b.monomial.cmp(&a.monomial));
    Ok(GramSystem {
        nvars,
        basis,
        constraints,
    })
}

/// Checks a proposed Gram certificate exactly.
///
/// Returns `true` iff `vᵀQv − f = 0` holds identically (exact rational
/// expansion over the given basis `v`) **and** `q` is positive semidefinite,
/// decided by rational `LDLᵀ` elimination with symmetric pivoting: a negative
/// pivot refutes, and a zero pivot is accepted only when its entire remaining
/// row and column vanish.
///
/// Errors with [`SosError::DimensionMismatch`] when the matrix shape differs
/// from the basis length and [`SosError::NotSymmetric`] for an asymmetric
/// candidate.
pub fn verify_gram(f: &Polynomial, basis: &[Monomial], q: &Mat) -> Result<bool, SosError> {
    if q.rows() != basis.len() || q.cols() != basis.len() {
        return Err(SosError::DimensionMismatch {
            rows: q.rows(),
            cols: q.cols(),
            basis: basis.len(),
        });
    }
    for i in 0..q.rows() {
        for j in 0..i {
            if q[(i, j)] != q[(j, i)] {
                return Err(SosError::NotSymmetric { i, j });
            }
        }
    }
    let basis_vars = basis
        .iter()
        .filter_map(Monomial::max_var)
        .map(|v| v + 1)
        .max()
        .unwrap_or(0);
    let nvars = f.nvars().max(basis_vars);
    let mut expansion = Polynomial::zero(nvars);
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if !q[(i, j)].is_zero() {
                expansion.add_term(basis[i].mul(&basis[j]), q[(i, j)].clone());
            }
        }
    }
    let matches = expansion == f.extend_nvars(nvars);
    Ok(matches && is_positive_semidefinite(q))
}

/// Renders a [`GramSystem`] as a sparse SDPA (`.dat-s`) document.
///
/// Layout: line 1 is the constraint count `m`, line 2 the block count (always
/// `1`), line 3 the block size `|basis|`, line 4 the right-hand sides, then
/// one quintuple `k 1 i j value` per stored entry with `i ≤ j`, 1-based.
///
/// SDPA constraints read `⟨A_k, X⟩ = b_k` with the full symmetric inner
/// product (off-diagonal entries counted twice), matching the expansion of
/// `vᵀQv`. Every number is an exact integer: constraint `k` is scaled by the
/// denominator `s_k` of its matched coefficient, so all of its matrix entries
/// share the single value `s_k` and `b_k` is the numerator. Dividing
/// constraint `k` by `s_k` therefore recovers the exact rational
/// coefficient-matching identity; no rounding occurs anywhere.
pub fn sdpa_document(gs: &GramSystem) -> String {
    let mut doc = String::new();
    let _ = writeln!(doc, "{}", gs.constraints.len());
    let _ = writeln!(doc, "1");
    let _ = writeln!(doc, "{}", gs.basis.len());
    let rhs: Vec<String> = gs
        .constraints
        .iter()
        .map(|c| c.target.numer().to_string())
        .collect();
    let _ = writeln!(doc, "{}", rhs.join(" "));
    for (k, c) in gs.constraints.iter().enumerate() {
        let scale = c.target.denom();
        for &(i, j) in &c.entries {
            let _ = writeln!(doc, "{} 1 {} {} {}", k + 1, i + 1, j + 1, scale);
        }
    }
    doc
}

/// Writes [`sdpa_document`] to `path`.
///
/// Errors with [`SosError::IoError`] when the file cannot be written.
pub fn emit_sdpa(gs: &GramSystem, path: impl AsRef<Path>) -> Result<(), SosError> {
    std::fs::write(path, sdpa_document(gs))?;
    Ok(())
}

/// Parameters of the fixed-size representation of symmetric quartic forms.
///
/// A symmetric quartic in `n > 4` variables is a sum of squares exactly when
/// it can be written with parameters `(α, β, γ)` where both symmetric 2×2
/// matrices `α`, `β` are positive semidefinite and `γ ≥ 0`. The matrices are
/// stored as upper triangles `[m₁₁, m₁₂, m₂₂]`, so they are symmetric by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticParams {
    alpha: [Rational; 3],
    beta: [Rational; 3],
    gamma: Rational,
    nvars: usize,
}

impl QuarticParams {
    /// Bundles the parameters; `alpha` and `beta` are upper triangles
    /// `[m₁₁, m₁₂, m₂₂]`.
    pub fn new(alpha: [Rational; 3], beta: [Rational; 3], gamma: Rational, nvars: usize) -> Self {
        QuarticParams {
            alpha,
            beta,
            gamma,
            nvars,
        }
    }

    /// The symmetric 2×2 matrix `α`.
    pub fn alpha(&self) -> Mat {
        symmetric_2x2(&self.alpha)
    }

    /// The symmetric 2×2 matrix `β`.
    pub fn beta(&self) -> Mat {
        symmetric_2x2(&self.beta)
    }

    /// The scalar `γ`.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    /// The variable count `n`.
    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

fn symmetric_2x2(tri: &[Rational; 3]) -> Mat {
    Mat::from_rows(vec![
        vec![tri[0].clone(), tri[1].clone()],
        vec![tri[1].clone(), tri[2].clone()],
    ])
}

/// Exact 2x2 PSD test: nonnegative diagonal and nonnegative determinant.
fn psd_2x2(tri: &[Rational; 3]) -> bool {
    let [a, b, c] = tri;
    rational_sign(a) >= 0 && rational_sign(c) >= 0 && rational_sign(&(&(a * c) - &(b * b))) >= 0
}

/// The normalized power sum `π_j = (1/n)·(x₁ʲ + … + x_nʲ)`.
fn normalized_power_sum(j: u32, n: usize) -> Polynomial {
    weighted_power_sum(j, &vec![1; n]).scale(&rat(1, n as i64))
}

/// Expands the symmetric-quartic representation into an explicit polynomial.
///
/// With `π_j = (1/n)·p_j` the expansion is
///
/// ```text
/// f = α₁₁·π₁⁴ + 2α₁₂·π₁²π₂ + α₂₂·π₂²
///   + β₁₁·(π₁²π₂ − π₁⁴) + 2β₁₂·(π₁π₃ − π₁²π₂) + β₂₂·(π₄ − π₂²)
///   + γ·(½π₁⁴ − π₁²π₂ + (n²−3n+3)/(2n²)·π₂² + (2n−2)/n²·π₁π₃ + (1−n)/(2n²)·π₄)
/// ```
///
/// a homogeneous symmetric quartic in `n` variables. Whenever
/// [`quartic_check`] accepts the parameters, the expansion is a sum of
/// squares (and conversely every symmetric quartic sum of squares in more
/// than four variables arises this way).
///
/// Errors with [`SosError::TooFewVariables`] for `n ≤ 4`, where the
/// representation does not apply.
pub fn quartic_from_params(p: &QuarticParams) -> Result<Polynomial, SosError> {
    let n = p.nvars;
    if n <= 4 {
        return Err(SosError::TooFewVariables(n));
    }
    let ni = n as i64;
    let pi1 = normalized_power_sum(1, n);
    let pi2 = normalized_power_sum(2, n);
    let pi1_sq = pi1.pow(2);
    // The five degree-4 products the formula is written in.
    let t_pi1_4 = pi1_sq.pow(2);
    let t_pi1sq_pi2 = &pi1_sq * &pi2;
    let t_pi2_sq = pi2.pow(2);
    let t_pi1_pi3 = &pi1 * &normalized_power_sum(3, n);
    let t_pi4 = normalized_power_sum(4, n);

    let [a11, a12, a22] = &p.alpha;
    let [b11, b12, b22] = &p.beta;
    let two = rat_int(2);

    let alpha_part =
        &(&t_pi1_4.scale(a11) + &t_pi1sq_pi2.scale(&(&two * a12))) + &t_pi2_sq.scale(a22);
    let beta_part = &(&(&t_pi1sq_pi2 - &t_pi1_4).scale(b11)
        + &(&t_pi1_pi3 - &t_pi1sq_pi2).scale(&(&two * b12)))
        + &(&t_pi4 - &t_pi2_sq).scale(b22);
    let gamma_core = &(&(&t_pi1_4.scale(&rat(1, 2)) - &t_pi1sq_pi2)
        + &t_pi2_sq.scale(&rat(ni * ni - 3 * ni + 3, 2 * ni * ni)))
        + &(&t_pi1_pi3.scale(&rat(2 * ni - 2, ni * ni)) + &t_pi4.scale(&rat(1 - ni, 2 * ni * ni)));
    Ok(&(&alpha_part + &beta_part) + &gamma_core.scale(&p.gamma))
}

/// Decides feasibility of symmetric-quartic parameters exactly.
///
/// Returns `true` iff `γ ≥ 0` and both 2×2 matrices `α` and `β` are positive
/// semidefinite (nonnegative diagonal and nonnegative determinant). A `true`
/// verdict certifies that [`quartic_from_params`] yields a sum of squares.
///
/// Errors with [`SosError::TooFewVariables`] for `n ≤ 4`.
pub fn quartic_check(p: &QuarticParams) -> Result<bool, SosError> {
    if p.nvars <= 4 {
        return Err(SosError::TooFewVariables(p.nvars));
    }
    Ok(rational_sign(&p.gamma) >= 0 && psd_2x2(&p.alpha) && psd_2x2(&p.beta))
}
