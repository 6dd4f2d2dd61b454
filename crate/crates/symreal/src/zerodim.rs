//! Zero-dimensional parametrizations: a finite set of points encoded by one
//! univariate polynomial `q` and coordinate polynomials `v_i`, so that the
//! points are `(v_1(tau)/q0(tau), ..., v_n(tau)/q0(tau))` as `tau` ranges
//! over the roots of `q`.  The linear form `gamma` ties the encoding
//! together through the congruence `gamma(v) = T*q0 mod q`.
//!
//! The module provides the data structure with exact validation, extraction
//! of real and rational points, JSON serialization, and a self-contained
//! desk-scale solver (`solve_zero_dim`) that produces a parametrization
//! from a polynomial system with finitely many complex solutions: Buchberger
//! basis, radical reduction via squarefree per-variable minimal polynomials,
//! a random separating linear form, and Kronecker-style coordinate recovery
//! by linear solves.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};

use crate::linalg::{krylov_minimal_polynomial, Mat};
use crate::poly::{Monomial, Polynomial, Rational, TermOrder};
use crate::realroot::{
    count_roots_in, isolate_real_roots, squarefree_part, RealRootError, ThomEncoding, UniPoly,
};

/// The first invariant a parametrization violates, if any.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvalidReason {
    /// `q` must be nonzero.
    #[error("q is the zero polynomial")]
    ZeroQ,
    /// `q` must be squarefree.
    #[error("q is not squarefree")]
    NotSquarefree,
    /// The denominator polynomial must be coprime to `q`.
    #[error("the denominator polynomial shares a factor with q")]
    DenominatorNotCoprime,
    /// One coordinate polynomial and one gamma coefficient per coordinate.
    #[error("{v_len} coordinate polynomials but {gamma_len} gamma coefficients")]
    ShapeMismatch { v_len: usize, gamma_len: usize },
    /// Coordinate polynomials may not exceed the degree of `q`.
    #[error("coordinate polynomial {index} has degree {found}, exceeding deg q = {limit}")]
    DegreeTooHigh {
        index: usize,
        found: usize,
        limit: usize,
    },
    /// The defining congruence `gamma(v) = T*q0 mod q` must hold.
    #[error("the congruence gamma(v) = T*q0 mod q fails")]
    CongruenceFails,
}

/// Errors from parametrization use and the zero-dimensional solver.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZeroDimError {
    /// The parametrization violates an invariant.
    #[error("invalid parametrization: {0}")]
    InvalidParam(#[from] InvalidReason),
    /// The input system has infinitely many complex solutions.
    #[error("the system is not zero-dimensional: {0}")]
    PositiveDimensional(String),
    /// No separating linear form was found.  A random form with coefficients
    /// from a set S fails to separate only on a vanishing locus with at most
    /// d|S|^(n-1) zeros among the |S|^n draws, so repeated failure is
    /// astronomically unlikely for honest zero-dimensional input.
    #[error(
        "no separating linear form after {retries} random draws; a degree-d \
         variety rules out at most d|S|^(n-1) of the |S|^n candidate forms"
    )]
    SeparationFailure { retries: usize },
    /// Real-root machinery failure (zero polynomial, mismatched encoding).
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
}

// ---------------------------------------------------------------------------
// The parametrization
// ---------------------------------------------------------------------------

/// A zero-dimensional parametrization: squarefree `q`, coordinate
/// polynomials `v_i`, a separating linear form `gamma`, and a denominator
/// polynomial (the derivative `q'` for every parametrization produced here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimParam {
    q: UniPoly,
    v: Vec<UniPoly>,
    gamma: Vec<Rational>,
    denominator_poly: UniPoly,
}

/// One real point of a parametrization: the parametrization plus a Thom
/// encoding selecting one real root of `q`.
#[derive(Debug, Clone)]
pub struct RealAlgebraicPoint<'a> {
    param: &'a ZeroDimParam,
    enc: ThomEncoding,
}

impl<'a> RealAlgebraicPoint<'a> {
    /// The parametrization this point belongs to.
    pub fn param(&self) -> &'a ZeroDimParam {
        self.param
    }

    /// The Thom encoding of the root of `q` picking out this point.
    pub fn encoding(&self) -> &ThomEncoding {
        &self.enc
    }
}

impl ZeroDimParam {
    /// Builds a parametrization with the default denominator `q'`,
    /// reducing every coordinate polynomial modulo `q`.
    pub fn new(q: UniPoly, v: Vec<UniPoly>, gamma: Vec<Rational>) -> Self {
        let denominator = q.derivative();
        ZeroDimParam::with_denominator(q, v, gamma, denominator)
    }

    /// Builds a parametrization with an explicit denominator polynomial,
    /// reducing every coordinate polynomial modulo `q` (when `q` is
    /// nonconstant).
    pub fn with_denominator(
        q: UniPoly,
        v: Vec<UniPoly>,
        gamma: Vec<Rational>,
        denominator_poly: UniPoly,
    ) -> Self {
        let v = if q.is_zero() {
            v
        } else {
            v.into_iter().map(|p| p.rem(&q)).collect()
        };
        ZeroDimParam {
            q,
            v,
            gamma,
            denominator_poly,
        }
    }

    /// Builds from raw parts without any normalization; used by
    /// deserialization so that validation sees the input exactly as given.
    pub fn from_raw_parts(
        q: UniPoly,
        v: Vec<UniPoly>,
        gamma: Vec<Rational>,
        denominator_poly: UniPoly,
    ) -> Self {
        ZeroDimParam {
            q,
            v,
            gamma,
            denominator_poly,
        }
    }

    /// The univariate polynomial whose roots index the points.
    pub fn q(&self) -> &UniPoly {
        &self.q
    }

    /// The coordinate polynomials.
    pub fn v(&self) -> &[UniPoly] {
        &self.v
    }

    /// The separating linear-form coefficients, one per coordinate.
    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    /// The denominator polynomial (`q'` unless constructed otherwise).
    pub fn denominator_poly(&self) -> &UniPoly {
        &self.denominator_poly
    }

    /// The number of coordinates.
    pub fn ncoords(&self) -> usize {
        self.v.len()
    }

    /// Checks all invariants exactly, reporting the first violated clause.
    pub fn validate(&self) -> Result<(), InvalidReason> {
        if self.q.is_zero() {
            return Err(InvalidReason::ZeroQ);
        }
        let sq = squarefree_part(&self.q).expect("nonzero");
        if &self.q.monic() != &sq {
            return Err(InvalidReason::NotSquarefree);
        }
        if self.q.gcd(&self.denominator_poly).degree() != Some(0) {
            return Err(InvalidReason::DenominatorNotCoprime);
        }
        if self.v.len() != self.gamma.len() {
            return Err(InvalidReason::ShapeMismatch {
                v_len: self.v.len(),
                gamma_len: self.gamma.len(),
            });
        }
        let limit = self.q.degree().unwrap();
        for (index, vi) in self.v.iter().enumerate() {
            let found = vi.degree().unwrap_or(0);
            if found > limit {
                return Err(InvalidReason::DegreeTooHigh {
                    index,
                    found,
                    limit,
                });
            }
        }
        // gamma(v) = T * q0 mod q.
        let mut lhs = UniPoly::zero();
        for (c, vi) in self.gamma.iter().zip(&self.v) {
            lhs = &lhs + &vi.scale(c);
        }
        let rhs = &UniPoly::t_power(1) * &self.denominator_poly;
        if !(&lhs - &rhs).rem(&self.q).is_zero() {
            return Err(InvalidReason::CongruenceFails);
        }
        Ok(())
    }

    /// One [`RealAlgebraicPoint`] per real root of `q`, ascending by root.
    pub fn real_points(&self) -> Result<Vec<RealAlgebraicPoint<'_>>, ZeroDimError> {
        self.validate()?;
        let encs = crate::realroot::thom_encodings(&self.q)?;
        Ok(encs
            .into_iter()
            .map(|enc| RealAlgebraicPoint { param: self, enc })
            .collect())
    }

    /// The points of the parametrization with all-rational coordinates:
    /// exactly those at rational roots of `q`, found by exact testing (no
    /// factoring).  Ordered by ascending root.
    pub fn rational_points(&self) -> Result<Vec<Vec<Rational>>, ZeroDimError> {
        self.validate()?;
        let mut out = Vec::new();
        for tau in rational_roots(&self.q) {
            let denom = self.denominator_poly.eval(&tau);
            assert!(
                !denom.is_zero(),
                "coprimality guarantees a nonzero denominator at roots"
            );
            out.push(self.v.iter().map(|vi| vi.eval(&tau) / &denom).collect());
        }
        Ok(out)
    }

    /// The composition `q0^(deg f) * f(v_1/q0, ..., v_n/q0) mod q`: the
    /// numerator of `f` evaluated along the parametrization, with the
    /// denominators cleared.  The result is the zero polynomial exactly
    /// when `f` vanishes at every point of the parametrization.
    pub fn scaled_composition(&self, f: &Polynomial) -> UniPoly {
        assert!(
            f.nvars() <= self.v.len(),
            "polynomial uses more variables than the parametrization has"
        );
        let deg_f = match f.total_degree() {
            None => return UniPoly::zero(),
            Some(d) => d,
        };
        let mut acc = UniPoly::zero();
        for (mono, c) in f.terms() {
            let mut term = UniPoly::constant(c.clone());
            let mut used = 0u32;
            for &(var, e) in mono.powers() {
                term = term.mul_mod(&pow_mod(&self.v[var], e, &self.q), &self.q);
                used += e;
            }
            term = term.mul_mod(
                &pow_mod(&self.denominator_poly, deg_f - used, &self.q),
                &self.q,
            );
            acc = &acc + &term;
        }
        acc.rem(&self.q)
    }

    /// Restricts to a subset of coordinates, keeping `v` and `gamma`
    /// aligned.  Only sound when `gamma` is supported on the kept
    /// coordinates (otherwise the congruence breaks, which `validate`
    /// reports).
    pub fn restrict_coordinates(&self, keep: &[usize]) -> ZeroDimParam {
        ZeroDimParam {
            q: self.q.clone(),
            v: keep.iter().map(|&i| self.v[i].clone()).collect(),
            gamma: keep.iter().map(|&i| self.gamma[i].clone()).collect(),
            denominator_poly: self.denominator_poly.clone(),
        }
    }
}

/// `base^exp mod q` by repeated squaring.
fn pow_mod(base: &UniPoly, exp: u32, q: &UniPoly) -> UniPoly {
    let mut result = UniPoly::one().rem(q);
    if result.is_zero() && exp == 0 {
        // q constant: everything reduces to zero, including 1.
        return UniPoly::zero();
    }
    let mut acc = base.rem(q);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul_mod(&acc, q);
        }
        acc = acc.mul_mod(&acc, q);
        e >>= 1;
    }
    result
}

/// The rational roots of a nonzero polynomial, ascending, by exact testing:
/// rescale to a monic integer polynomial (whose rational roots are
/// integers), isolate to width 1/2, and test the single integer candidate
/// of each interval.
fn rational_roots(q: &UniPoly) -> Vec<Rational> {
    if q.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let prim = q.primitive();
    let d = prim.degree().unwrap();
    let lead = prim.leading_coefficient().unwrap().numer().clone();
    // Monic integer polynomial in y = lead * x: b_k = a_k * lead^(d-1-k)
    // for k < d and b_d = 1, whose rational roots are integers.
    let mut coeffs: Vec<Rational> = Vec::with_capacity(d + 1);
    for (k, c) in prim.coeffs().iter().enumerate() {
        if k == d {
            coeffs.push(Rational::one());
        } else {
            let mut factor = BigInt::one();
            for _ in 0..(d - 1 - k) {
                factor *= &lead;
            }
            coeffs.push(Rational::from(c.numer() * factor));
        }
    }
    let monic = UniPoly::new(coeffs);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut roots = Vec::new();
    for (lo, hi) in isolate_real_roots(&monic, &half) {
        let candidate = hi.floor();
        if candidate > lo && candidate <= hi {
            let value = candidate.to_integer();
            if monic.eval(&Rational::from(value.clone())).is_zero() {
                roots.push(Rational::new(value, lead.clone()));
            }
        }
    }
    roots.sort();
    roots
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ParamRepr {
    q: Vec<String>,
    denominator: Vec<String>,
    v: Vec<Vec<String>>,
    gamma: Vec<String>,
}

fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rational_from_string(s: &str) -> Result<Rational, String> {
    let parse_int =
        |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("invalid integer {t:?}: {e}"));
    match s.split_once('/') {
        None => Ok(Rational::from(parse_int(s)?)),
        Some((n, d)) => {
            let denom = parse_int(d)?;
            if denom.is_zero() {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rational::new(parse_int(n)?, denom))
        }
    }
}

fn unipoly_to_strings(p: &UniPoly) -> Vec<String> {
    p.coeffs().iter().map(rational_to_string).collect()
}

fn unipoly_from_strings(coeffs: &[String]) -> Result<UniPoly, String> {
    Ok(UniPoly::new(
        coeffs
            .iter()
            .map(|s| rational_from_string(s))
            .collect::<Result<_, _>>()?,
    ))
}

impl Serialize for ZeroDimParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ParamRepr {
            q: unipoly_to_strings(&self.q),
            denominator: unipoly_to_strings(&self.denominator_poly),
            v: self.v.iter().map(unipoly_to_strings).collect(),
            gamma: self.gamma.iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZeroDimParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ParamRepr::deserialize(d)?;
        let q = unipoly_from_strings(&repr.q).map_err(D::Error::custom)?;
        let denominator = unipoly_from_strings(&repr.denominator).map_err(D::Error::custom)?;
        let v = repr
            .v
            .iter()
            .map(|c| unipoly_from_strings(c))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        let gamma = repr
            .gamma
            .iter()
            .map(|s| rational_from_string(s))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        Ok(ZeroDimParam::from_raw_parts(q, v, gamma, denominator))
    }
}

// ---------------------------------------------------------------------------
// Buchberger engine (graded reverse lexicographic order)
// ---------------------------------------------------------------------------

const ORDER: TermOrder = TermOrder::GrevLex;

fn leading(f: &Polynomial) -> (Monomial, Rational) {
    let (m, c) = f.leading_term(ORDER).expect("nonzero polynomial");
    (m.clone(), c.clone())
}

/// Rescales by a nonzero rational so the coefficients are integers with
/// unit content and the leading coefficient is positive.
fn primitive_scale(f: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    use num_integer::Integer;
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for (_, c) in f.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    for (_, c) in f.terms() {
        numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
    }
    let mut factor = Rational::new(denom_lcm, numer_gcd);
    factor = factor.abs();
    let scaled = f.scale(&factor);
    let (_, lead) = leading(&scaled);
    if lead.is_negative() {
        scaled.scale(&-Rational::one())
    } else {
        scaled
    }
}

/// Full normal form: reduces every reducible term of `f` by `gb`.
fn normal_form(f: &Polynomial, gb: &[Polynomial]) -> Polynomial {
    let nvars = f.nvars();
    let mut work = f.clone();
    let mut out = Polynomial::zero(nvars);
    'outer: while !work.is_zero() {
        let (wm, wc) = leading(&work);
        for g in gb {
            let (gm, gc) = leading(g);
            if gm.divides(&wm) {
                let quot_mono = gm.divide(&wm).expect("divides");
                let mut t = Polynomial::zero(nvars);
                t.add_term(quot_mono, &wc / &gc);
                work = &work - &(&t * g);
                continue 'outer;
            }
        }
        // Irreducible leading term: move it to the remainder.
        let mut t = Polynomial::zero(nvars);
        t.add_term(wm.clone(), wc.clone());
        out = &out + &t;
        work = &work - &t;
    }
    out
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let nvars = f.nvars();
    let (fm, fc) = leading(f);
    let (gm, gc) = leading(g);
    let lcm = fm.lcm(&gm);
    let mut tf = Polynomial::zero(nvars);
    tf.add_term(fm.divide(&lcm).expect("lcm"), Rational::one() / fc);
    let mut tg = Polynomial::zero(nvars);
    tg.add_term(gm.divide(&lcm).expect("lcm"), Rational::one() / gc);
    &(&tf * f) - &(&tg * g)
}

/// A reduced, monic Groebner basis in graded reverse lexicographic order.
/// Uses plain Buchberger with the coprime-leading-term criterion and
/// content normalization; complete (no chain criterion, soundness first).
pub(crate) fn buchberger(system: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for f in system {
        assert_eq!(f.nvars(), nvars, "arity mismatch in system");
        if !f.is_zero() {
            basis.push(primitive_scale(f));
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // Normal selection: smallest lcm degree first.
        let mut best = 0;
        let mut best_deg = u32::MAX;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let deg = leading(&basis[i])
                .0
                .lcm(&leading(&basis[j]).0)
                .total_degree();
            if deg < best_deg {
                best_deg = deg;
                best = k;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let (mi, _) = leading(&basis[i]);
        let (mj, _) = leading(&basis[j]);
        // Coprime leading terms: the s-polynomial reduces to zero.
        if mi.lcm(&mj) == mi.mul(&mj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let r = primitive_scale(&r);
            let t = basis.len();
            for k in 0..t {
                pairs.push((k, t));
            }
            basis.push(r);
        }
    }
    // Interreduce to the unique reduced basis.
    loop {
        let mut changed = false;
        let mut k = 0;
        while k < basis.len() {
            let g = basis.remove(k);
            let r = normal_form(&g, &basis);
            if r.is_zero() {
                changed = true;
                continue;
            }
            let r = primitive_scale(&r);
            if r != g {
                changed = true;
            }
            basis.insert(k, r);
            k += 1;
        }
        if !changed {
            break;
        }
    }
    for g in &mut basis {
        let (_, c) = leading(g);
        *g = g.scale(&c.recip());
    }
    basis.sort_by(|a, b| leading(a).0.cmp_order(&leading(b).0, ORDER));
    basis
}

/// The monomial quotient basis of a Groebner basis with a finite quotient,
/// or the offending variable if some variable has no pure power among the
/// leading terms.
struct Quotient {
    gb: Vec<Polynomial>,
    nvars: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Quotient {
    fn build(gb: Vec<Polynomial>, nvars: usize) -> Result<Self, ZeroDimError> {
        let leads: Vec<Monomial> = gb.iter().map(|g| leading(g).0).collect();
        for var in 0..nvars {
            let has_pure = leads
                .iter()
                .any(|m| m.powers().len() == 1 && m.powers()[0].0 == var);
            if !has_pure {
                return Err(ZeroDimError::PositiveDimensional(format!(
                    "no pure power of x{} among the leading terms",
                    var + 1
                )));
            }
        }
        let mut set: HashSet<Monomial> = HashSet::new();
        let mut queue = vec![Monomial::one()];
        while let Some(m) = queue.pop() {
            if set.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for var in 0..nvars {
                queue.push(m.mul(&Monomial::var(var)));
            }
            set.insert(m);
        }
        let mut basis: Vec<Monomial> = set.into_iter().collect();
        basis.sort_by(|a, b| a.cmp_order(b, ORDER));
        let index = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Ok(Quotient {
            gb,
            nvars,
            basis,
            index,
        })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the normal form of `f` over the quotient basis.
    fn nf_coords(&self, f: &Polynomial) -> Vec<Rational> {
        let nf = normal_form(f, &self.gb);
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            let i = *self
                .index
                .get(m)
                .expect("normal form lies in the quotient basis");
            out[i] = c.clone();
        }
        out
    }

    /// The polynomial with the given quotient-basis coordinates.
    fn poly_of_coords(&self, w: &[Rational]) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (c, m) in w.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The monic minimal polynomial of the residue class of `p`.
    fn element_minpoly(&self, p: &Polynomial) -> UniPoly {
        let start = self.nf_coords(&Polynomial::constant(self.nvars, Rational::one()));
        let coeffs = krylov_minimal_polynomial(&start, self.dim(), |w| {
            self.nf_coords(&(&self.poly_of_coords(w) * p))
        });
        UniPoly::new(coeffs)
    }
}

/// Solves a polynomial system with finitely many complex solutions into a
/// valid [`ZeroDimParam`], drawing the separating form on all variables.
/// See [`solve_zero_dim_restricted`] for the general entry point.
pub fn solve_zero_dim<R: Rng + ?Sized>(
    system: &[Polynomial],
    nvars: usize,
    rng: &mut R,
) -> Result<ZeroDimParam, ZeroDimError> {
    let all: Vec<usize> = (0..nvars).collect();
    solve_zero_dim_restricted(system, nvars, &all, rng)
}

/// Solves a zero-dimensional system, restricting the random separating
/// linear form to the variables in `gamma_vars` (useful when trailing
/// auxiliary variables must stay out of the form so the parametrization can
/// later be projected onto the leading coordinates).
///
/// Pipeline: reduced Groebner basis (graded reverse lex); finiteness check;
/// radical via squarefree per-variable minimal polynomials; random
/// separating form with up to 3 draws, separation certified by the minimal
/// polynomial of the form reaching the quotient dimension; coordinates
/// recovered by solving against the power basis of the form.
pub fn solve_zero_dim_restricted<R: Rng + ?Sized>(
    system: &[Polynomial],
    nvars: usize,
    gamma_vars: &[usize],
    rng: &mut R,
) -> Result<ZeroDimParam, ZeroDimError> {
    let gb = buchberger(system, nvars);
    if gb.is_empty() {
        return Err(ZeroDimError::PositiveDimensional(
            "the zero system defines all of affine space".into(),
        ));
    }
    // A reduced basis containing a constant generates the unit ideal.
    if gb.iter().any(Polynomial::is_constant) {
        return Ok(empty_variety_param(nvars));
    }
    let mut quotient = Quotient::build(gb, nvars)?;
    // Radical: adjoin the squarefree part of each variable's minimal
    // polynomial (Seidenberg), then recompute.
    let mut extra: Vec<Polynomial> = Vec::new();
    let mut changed = false;
    for var in 0..nvars {
        let m = quotient.element_minpoly(&Polynomial::variable(nvars, var));
        let s = squarefree_part(&m).expect("minimal polynomial is nonzero");
        if s != m.monic() {
            changed = true;
        }
        extra.push(substitute_variable(&s, var, nvars));
    }
    if changed {
        let mut system2 = system.to_vec();
        system2.extend(extra);
        let gb = buchberger(&system2, nvars);
        if gb.iter().any(|g| g.is_constant() && !g.is_zero()) {
            return Ok(empty_variety_param(nvars));
        }
        quotient = Quotient::build(gb, nvars)?;
    }
    let d = quotient.dim();
    assert!(d > 0, "a nonunit ideal has a nonzero quotient");
    const RETRIES: usize = 3;
    for _ in 0..RETRIES {
        let mut gamma = vec![Rational::zero(); nvars];
        for &var in gamma_vars {
            gamma[var] = Rational::from(BigInt::from(rng.gen_range(1..=1_048_576i64)));
        }
        let gpoly = Polynomial::from_terms(
            nvars,
            gamma
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(i), c.clone())),
        );
        let q = quotient.element_minpoly(&gpoly);
        if q.degree() != Some(d) {
            continue; // not separating; redraw
        }
        debug_assert_eq!(
            squarefree_part(&q).expect("nonzero"),
            q.monic(),
            "minimal polynomials over a radical quotient are squarefree"
        );
        return Ok(build_param(&quotient, &gpoly, gamma, q));
    }
    Err(ZeroDimError::SeparationFailure { retries: RETRIES })
}

/// The parametrization of the empty variety: `q = 1`.
fn empty_variety_param(nvars: usize) -> ZeroDimParam {
    ZeroDimParam::from_raw_parts(
        UniPoly::one(),
        vec![UniPoly::zero(); nvars],
        vec![Rational::one(); nvars],
        UniPoly::zero(),
    )
}

/// The univariate polynomial `p(x_var)` embedded into `nvars` variables.
fn substitute_variable(p: &UniPoly, var: usize, nvars: usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.add_term(Monomial::from_powers([(var, k as u32)]), c.clone());
        }
    }
    out
}

/// Kronecker coordinate recovery: with `q` the minimal polynomial of the
/// separating form, solve `sum_k c_k gamma^k = x_i * q'(gamma)` in the
/// quotient for each coordinate.
fn build_param(
    quotient: &Quotient,
    gpoly: &Polynomial,
    gamma: Vec<Rational>,
    q: UniPoly,
) -> ZeroDimParam {
    let d = quotient.dim();
    let nvars = quotient.nvars;
    // Power basis of the form: columns gamma^k for k = 0..d-1.
    let mut phi = Mat::zero(d, d);
    let mut w = quotient.nf_coords(&Polynomial::constant(nvars, Rational::one()));
    for k in 0..d {
        for r in 0..d {
            phi[(r, k)] = w[r].clone();
        }
        if k + 1 < d {
            w = quotient.nf_coords(&(&quotient.poly_of_coords(&w) * gpoly));
        }
    }
    // u = q'(gamma) in the quotient, by Horner.
    let qd = q.derivative();
    let mut u = Polynomial::zero(nvars);
    for c in qd.coeffs().iter().rev() {
        u = normal_form(&(&u * gpoly), &quotient.gb);
        u = &u + &Polynomial::constant(nvars, c.clone());
    }
    let mut v = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let target = quotient.nf_coords(&(&Polynomial::variable(nvars, var) * &u));
        let coeffs = phi
            .solve(&target)
            .expect("power basis of a separating form is invertible");
        v.push(UniPoly::new(coeffs));
    }
    let param = ZeroDimParam::with_denominator(q, v, gamma, qd);
    debug_assert_eq!(param.validate(), Ok(()));
    param
}

/// Counts distinct real roots of `q` lying in `(lo, hi]`; re-exported here
/// for sibling modules working with parametrizations.
#[allow(dead_code)]
pub(crate) fn real_roots_in_interval(q: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    count_roots_in(q, lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn up(text: &str) -> UniPoly {
        UniPoly::parse(text).unwrap()
    }

    /// The two-point parametrization of {(1,2), (3,4)}: q = (T-1)(T-3),
    /// v_i = (coordinate formula) * q', gamma = x1.
    fn two_point_param() -> ZeroDimParam {
        let q = up("T^2 - 4*T + 3");
        let qd = q.derivative(); // 2T - 4
        let v1 = &up("T") * &qd;
        let v2 = &up("T + 1") * &qd;
        ZeroDimParam::new(q, vec![v1, v2], vec![rat(1, 1), rat(0, 1)])
    }

    #[test]
    fn validate_two_point_fixture_and_reduction() {
        let p = two_point_param();
        assert_eq!(p.validate(), Ok(()));
        // Stored coordinates are reduced mod q.
        assert_eq!(p.v()[0], up("4*T - 6"));
        assert_eq!(p.v()[1], up("6*T - 10"));
        // Unreduced coordinates (degree = deg q) are accepted on input.
        let raw = ZeroDimParam::from_raw_parts(
            up("T^2 - 4*T + 3"),
            vec![up("2*T^2 - 4*T"), up("2*T^2 - 2*T - 4")],
            vec![rat(1, 1), rat(0, 1)],
            up("2*T - 4"),
        );
        assert_eq!(raw.validate(), Ok(()));
    }

    #[test]
    fn validate_reports_first_violation() {
        let square = &up("T - 1") * &up("T - 1");
        let p =
            ZeroDimParam::from_raw_parts(square, vec![UniPoly::zero()], vec![rat(1, 1)], up("1"));
        assert_eq!(p.validate(), Err(InvalidReason::NotSquarefree));

        let mut good = two_point_param();
        assert_eq!(good.validate(), Ok(()));
        // Perturb the congruence by +1.
        good.v[0] = &good.v[0] + &UniPoly::one();
        assert_eq!(good.validate(), Err(InvalidReason::CongruenceFails));

        let p = ZeroDimParam::from_raw_parts(
            up("T^2 - 1"),
            vec![UniPoly::zero()],
            vec![rat(1, 1)],
            up("T - 1"), // shares a factor with q
        );
        assert_eq!(p.validate(), Err(InvalidReason::DenominatorNotCoprime));

        let p = ZeroDimParam::from_raw_parts(UniPoly::zero(), vec![], vec![], UniPoly::one());
        assert_eq!(p.validate(), Err(InvalidReason::ZeroQ));

        let p = ZeroDimParam::from_raw_parts(
            up("T"),
            vec![UniPoly::zero()],
            vec![rat(1, 1), rat(2, 1)],
            UniPoly::one(),
        );
        assert!(matches!(
            p.validate(),
            Err(InvalidReason::ShapeMismatch {
                v_len: 1,
                gamma_len: 2
            })
        ));

        let p =
            ZeroDimParam::from_raw_parts(up("T"), vec![up("T^2")], vec![rat(1, 1)], UniPoly::one());
        assert!(matches!(
            p.validate(),
            Err(InvalidReason::DegreeTooHigh {
                index: 0,
                found: 2,
                limit: 1
            })
        ));
    }

    #[test]
    fn rational_point_extraction() {
        let p = two_point_param();
        let pts = p.rational_points().unwrap();
        assert_eq!(
            pts,
            vec![vec![rat(1, 1), rat(2, 1)], vec![rat(3, 1), rat(4, 1)]]
        );
        // No real roots at all: v1 = T*q' with gamma = x1.
        let none = ZeroDimParam::new(up("T^2 + 1"), vec![&up("T") * &up("2*T")], vec![rat(1, 1)]);
        assert_eq!(none.validate(), Ok(()));
        assert!(none.real_points().unwrap().is_empty());
        assert!(none.rational_points().unwrap().is_empty());
        // Single origin point with unit denominator.
        let origin = ZeroDimParam::with_denominator(
            up("T"),
            vec![UniPoly::zero()],
            vec![rat(1, 1)],
            UniPoly::one(),
        );
        // gamma(v) = 0 = T*1 mod T. Valid.
        assert_eq!(origin.validate(), Ok(()));
        assert_eq!(origin.rational_points().unwrap(), vec![vec![rat(0, 1)]]);
    }

    #[test]
    fn irrational_fixture_sqrt2() {
        // Points (1/2, 3/2 - sqrt(2)/4) and (1/2, 3/2 + sqrt(2)/4) over
        // q = T^2 - 2, with gamma = 12 x1 - 4 x2.
        let q = up("T^2 - 2");
        let param = ZeroDimParam::with_denominator(
            q,
            vec![up("T"), up("3*T - 1")],
            vec![rat(12, 1), rat(-4, 1)],
            up("2*T"),
        );
        assert_eq!(param.validate(), Ok(()));
        assert_eq!(param.real_points().unwrap().len(), 2);
        assert!(param.rational_points().unwrap().is_empty());
        // x1 - 1/2 vanishes on the whole variety: the scaled composition of
        // (x1 - 1/2) must be divisible by q.
        let f = Polynomial::parse("x1 - 1/2", 2).unwrap();
        assert!(param.scaled_composition(&f).is_zero());
        // x2 does not vanish anywhere on it.
        let g = Polynomial::parse("x2", 2).unwrap();
        assert!(!param.scaled_composition(&g).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = two_point_param();
        let text = serde_json::to_string(&p).unwrap();
        let back: ZeroDimParam = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
        assert_eq!(back.validate(), Ok(()));
        // Hand-written document with rational strings.
        let doc = r#"{
            "q": ["3", "-4", "1"],
            "denominator": ["-4", "2"],
            "v": [["-6", "4"], ["-10", "6"]],
            "gamma": ["1", "0"]
        }"#;
        let parsed: ZeroDimParam = serde_json::from_str(doc).unwrap();
        assert_eq!(parsed.validate(), Ok(()));
        assert_eq!(parsed.rational_points().unwrap().len(), 2);
        // Fractions parse; zero denominators are rejected without panicking.
        let frac: Result<ZeroDimParam, _> = serde_json::from_str(
            r#"{"q":["1/2","1"],"denominator":["1"],"v":[["0"]],"gamma":["1/3"]}"#,
        );
        assert!(frac.is_ok());
        let bad: Result<ZeroDimParam, _> =
            serde_json::from_str(r#"{"q":["1/0"],"denominator":["1"],"v":[],"gamma":[]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn solver_two_points_on_a_line() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let system = vec![
            Polynomial::parse("x1^2 - 1", 2).unwrap(),
            Polynomial::parse("x2 - x1", 2).unwrap(),
        ];
        let param = solve_zero_dim(&system, 2, &mut rng).unwrap();
        assert_eq!(param.validate(), Ok(()));
        assert_eq!(param.q().degree(), Some(2));
        let mut pts = param.rational_points().unwrap();
        pts.sort();
        assert_eq!(
            pts,
            vec![vec![rat(-1, 1), rat(-1, 1)], vec![rat(1, 1), rat(1, 1)]]
        );
    }

    #[test]
    fn solver_inconsistent_system() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let system = vec![
            Polynomial::parse("x1", 1).unwrap(),
            Polynomial::parse("x1 - 1", 1).unwrap(),
        ];
        let param = solve_zero_dim(&system, 1, &mut rng).unwrap();
        assert_eq!(param.q().degree(), Some(0));
        assert!(param.rational_points().unwrap().is_empty());
        assert!(param.real_points().unwrap().is_empty());
    }

    #[test]
    fn solver_positive_dimensional() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let system = vec![Polynomial::parse("x1*x2", 2).unwrap()];
        assert!(matches!(
            solve_zero_dim(&system, 2, &mut rng),
            Err(ZeroDimError::PositiveDimensional(_))
        ));
    }

    #[test]
    fn solver_collapses_multiplicity() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let system = vec![Polynomial::parse("x1^2 - 2*x1 + 1", 1).unwrap()];
        let param = solve_zero_dim(&system, 1, &mut rng).unwrap();
        assert_eq!(param.q().degree(), Some(1));
        assert_eq!(param.rational_points().unwrap(), vec![vec![rat(1, 1)]]);
    }

    #[test]
    fn groebner_basics() {
        // Reduced basis of a simple complete intersection.
        let system = vec![
            Polynomial::parse("x1^2 + x2^2 - 1", 2).unwrap(),
            Polynomial::parse("x1 - x2", 2).unwrap(),
        ];
        let gb = buchberger(&system, 2);
        assert!(!gb.is_empty());
        // Every s-polynomial reduces to zero.
        for i in 0..gb.len() {
            for j in 0..i {
                assert!(normal_form(&s_polynomial(&gb[i], &gb[j]), &gb).is_zero());
            }
        }
        // The input generators reduce to zero.
        for f in &system {
            assert!(normal_form(f, &gb).is_zero());
        }
    }

    #[test]
    fn rational_root_scan() {
        // 6x^2 - 5x + 1 = (2x-1)(3x-1): roots 1/2, 1/3.
        let q = up("6*T^2 - 5*T + 1");
        assert_eq!(rational_roots(&q), vec![rat(1, 3), rat(1, 2)]);
        assert_eq!(rational_roots(&up("T^2 - 2")), Vec::<Rational>::new());
        assert_eq!(rational_roots(&up("T^3 - 3*T + 1")), Vec::<Rational>::new());
        assert_eq!(
            rational_roots(&(&up("T + 7") * &up("2*T - 9"))),
            vec![rat(-7, 1), rat(9, 2)]
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Planted triangular systems: distinct x1 roots with x2 affine in
        /// x1.  The solver must recover exactly the planted points, the
        /// parametrization must validate, Bezout must hold, and every input
        /// polynomial must vanish along the parametrization.
        #[test]
        fn solver_recovers_planted_points(
            roots in proptest::collection::btree_set(-5i64..6, 1..4),
            a in -3i64..4,
            b in -3i64..4,
            seed in 0u64..1000,
        ) {
            let nvars = 2;
            let mut f1 = Polynomial::constant(nvars, rat(1, 1));
            for &r in &roots {
                f1 = &f1 * &Polynomial::parse(&format!("x1 - {r}"), nvars).unwrap();
            }
            let f2 = Polynomial::parse(&format!("x2 - {a}*x1 - {b}"), nvars).unwrap();
            let system = vec![f1.clone(), f2.clone()];
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let param = solve_zero_dim(&system, nvars, &mut rng).unwrap();
            prop_assert_eq!(param.validate(), Ok(()));
            // Bezout bound.
            prop_assert!(param.q().degree().unwrap() <= roots.len());
            let mut pts = param.rational_points().unwrap();
            pts.sort();
            let expected: Vec<Vec<Rational>> = roots
                .iter()
                .map(|&r| vec![rat(r, 1), rat(a * r + b, 1)])
                .collect();
            prop_assert_eq!(pts, expected);
            // Residue check: inputs vanish along the parametrization.
            prop_assert!(param.scaled_composition(&f1).is_zero());
            prop_assert!(param.scaled_composition(&f2).is_zero());
        }

        /// Systems with irrational solutions still produce valid
        /// parametrizations with the right number of real points.
        #[test]
        fn solver_handles_irrational_points(
            c in 2i64..20,
            seed in 0u64..1000,
        ) {
            // x1^2 = c, x2 = x1 + 1: two real points, rational iff c is a
            // perfect square.
            let nvars = 2;
            let system = vec![
                Polynomial::parse(&format!("x1^2 - {c}"), nvars).unwrap(),
                Polynomial::parse("x2 - x1 - 1", nvars).unwrap(),
            ];
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let param = solve_zero_dim(&system, nvars, &mut rng).unwrap();
            prop_assert_eq!(param.validate(), Ok(()));
            prop_assert_eq!(param.real_points().unwrap().len(), 2);
            let sqrt = (c as f64).sqrt() as i64;
            let perfect = sqrt * sqrt == c;
            prop_assert_eq!(param.rational_points().unwrap().len(), if perfect { 2 } else { 0 });
            for f in &system {
                prop_assert!(param.scaled_composition(f).is_zero());
            }
        }
    }
}
