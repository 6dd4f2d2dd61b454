//! Exact real-root machinery for univariate polynomials: squarefree parts,
//! signed (Sturm–Habicht style) subresultant sequences, real-root counting
//! via the Cauchy index, Thom encodings, sign determination at encoded
//! roots, and parametric root counting for bivariate polynomials specialized
//! at an encoded algebraic number.
//!
//! All computation is exact over the rationals.  Real algebraic numbers are
//! never approximated: a root of `q` is identified by its *Thom encoding*,
//! the vector of signs of the derivatives `q', q'', ...` at the root, and
//! signs of arbitrary polynomials at such a root are obtained by
//! sign-determination queries (Tarski queries) evaluated through
//! subresultant chains.
//!
//! The parametric entry point answers: given `rho(u, T)` and an encoded root
//! `theta` of `q`, how many distinct real roots does `rho(u, theta)` have?
//! It specializes the principal Sturm–Habicht coefficients — polynomials in
//! `T` that commute with specialization as long as the leading coefficient
//! does not vanish — through sign determination, so the algebraic number
//! `theta` is never isolated numerically.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::Mat;
use crate::poly::{rational_sign, ArityMismatch, Polynomial, Rational};

/// Errors produced by the real-root operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealRootError {
    /// The zero polynomial has no meaningful root data.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// The supplied Thom encoding does not belong to the polynomial.
    #[error("Thom encoding does not match any real root of the polynomial")]
    EncodingMismatch,
    /// The leading coefficient of the parametric polynomial vanishes at the
    /// encoded root; the caller must deflate and retry.
    #[error("leading coefficient vanishes at the encoded root")]
    LeadingCoefficientVanishes,
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over the rationals
// ---------------------------------------------------------------------------

/// A dense univariate polynomial over the rationals, coefficients ascending.
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    /// Builds a polynomial from ascending coefficients, trimming leading
    /// zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(value: Rational) -> Self {
        UniPoly::new(vec![value])
    }

    /// The monomial `T^k`.
    pub fn t_power(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    /// Parses a univariate polynomial in the variable `T` (the spelling
    /// `x1` is accepted too).
    pub fn parse(text: &str) -> Result<Self, crate::poly::ParseError> {
        Ok(UniPoly::from_polynomial(&Polynomial::parse_univariate(
            text,
        )?))
    }

    /// Converts a one-variable [`Polynomial`].
    ///
    /// # Panics
    /// Panics if the polynomial has more than one variable.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert!(p.nvars() <= 1, "univariate conversion needs one variable");
        let deg = p.total_degree().map_or(0, |d| d as usize);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            coeffs[m.total_degree() as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// Converts to a one-variable [`Polynomial`].
    pub fn to_polynomial(&self) -> Polynomial {
        let mut out = Polynomial::zero(1);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(
                    crate::poly::Monomial::from_powers([(0, k as u32)]),
                    c.clone(),
                );
            }
        }
        out
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The ascending coefficient list (empty for zero).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The coefficient of `T^k` (zero when out of range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// The leading coefficient, or `None` for the zero polynomial.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Evaluates at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The sign at `+infinity` (`dir = +1`) or `-infinity` (`dir = -1`).
    pub fn sign_at_infinity(&self, dir: i8) -> i8 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let lead = rational_sign(self.leading_coefficient().unwrap());
                if dir >= 0 || d % 2 == 0 {
                    lead
                } else {
                    -lead
                }
            }
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, factor: &Rational) -> UniPoly {
        if factor.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// The derivative.
    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and
    /// `deg remainder < deg divisor`.
    ///
    /// # Panics
    /// Panics if `divisor` is zero.
    pub fn divmod(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < d + 1 {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d];
        while rem.len() >= d + 1 {
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - d;
            let factor = top / &lead;
            for k in 0..=d {
                let delta = &factor * &divisor.coeffs[k];
                rem[shift + k] -= delta;
            }
            debug_assert!(rem.last().unwrap().is_zero());
            rem.pop();
            quot[shift] = factor;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// The remainder of Euclidean division.
    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divmod(divisor).1
    }

    /// Divides exactly, panicking if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &UniPoly) -> UniPoly {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// The monic multiple (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        match self.leading_coefficient() {
            None => UniPoly::zero(),
            Some(lead) => self.scale(&lead.recip()),
        }
    }

    /// Rescales by a positive rational so the coefficients become integers
    /// with unit content; the sign pattern is unchanged.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in &self.coeffs {
            let scaled = c.numer() * &denom_lcm / c.denom();
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let factor = Rational::new(denom_lcm, numer_gcd);
        self.scale(&factor.abs())
    }

    /// The monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self * other mod q`.
    pub fn mul_mod(&self, other: &UniPoly, q: &UniPoly) -> UniPoly {
        (self * other).rem(q)
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::new(coeffs)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        UniPoly::new(coeffs)
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let positive = c.is_positive();
            if first {
                if !positive {
                    write!(f, "-")?;
                }
                first = false;
            } else if positive {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "T")?;
                } else {
                    write!(f, "T^{k}")?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials: main variable u, coefficients in Q[T]
// ---------------------------------------------------------------------------

/// A polynomial in a main variable `u` whose coefficients are univariate
/// polynomials in `T`; stored dense and ascending in `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    /// Builds from ascending `u`-coefficients, trimming leading zeros.
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    /// Converts a two-variable [`Polynomial`], reading `u_var` as the main
    /// variable and `t_var` as the coefficient variable.
    pub fn from_polynomial(p: &Polynomial, u_var: usize, t_var: usize) -> Self {
        let deg_u = p.degree_in(u_var).unwrap_or(0) as usize;
        let mut coeffs = vec![UniPoly::zero(); deg_u + 1];
        for (m, c) in p.terms() {
            for &(v, _) in m.powers() {
                assert!(
                    v == u_var || v == t_var,
                    "polynomial uses a variable outside (u, T)"
                );
            }
            let ue = m.exponent(u_var) as usize;
            let te = m.exponent(t_var) as usize;
            let mut t_coeffs = vec![Rational::zero(); te + 1];
            t_coeffs[te] = c.clone();
            coeffs[ue] = &coeffs[ue] + &UniPoly::new(t_coeffs);
        }
        BiPoly::new(coeffs)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The degree in `u`, or `None` for zero.
    pub fn degree_u(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The ascending `u`-coefficients.
    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    /// The coefficient of `u^k` (zero when out of range).
    pub fn coeff_u(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(UniPoly::zero)
    }

    /// The leading `u`-coefficient, or `None` for zero.
    pub fn leading_coefficient_u(&self) -> Option<&UniPoly> {
        self.coeffs.last()
    }

    /// The partial derivative with respect to `u`.
    pub fn derivative_u(&self) -> BiPoly {
        if self.coeffs.len() <= 1 {
            return BiPoly::zero();
        }
        BiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from(BigInt::from(k))))
                .collect(),
        )
    }

    /// Specializes `T` to a rational value, producing a polynomial in `u`.
    pub fn specialize_t(&self, t: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(t)).collect())
    }

    /// Reduces every coefficient modulo `q`.
    pub fn reduce_coeffs_mod(&self, q: &UniPoly) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.rem(q)).collect())
    }
}

// ---------------------------------------------------------------------------
// Chains and counting
// ---------------------------------------------------------------------------

/// A signed subresultant-style sequence of polynomials, used for
/// Cauchy-index sign-variation counting.  `P` is [`UniPoly`] for ordinary
/// chains and [`BiPoly`] when the coefficients carry a second variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubresultantSeq<P = UniPoly> {
    entries: Vec<P>,
}

impl<P> SubresultantSeq<P> {
    /// The chain entries, starting with the two input polynomials.
    pub fn entries(&self) -> &[P] {
        &self.entries
    }

    /// The number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Whether the chain is empty (never produced by the constructors).
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One pseudo-remainder step with an even power of the leading coefficient,
/// so the result is a positive multiple of the true remainder wherever the
/// leading coefficient does not vanish.
fn even_pseudo_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let da = a.degree().map_or(0, |d| d as i64);
    let db = b.degree().expect("pseudo-division by zero") as i64;
    let mut e = (da - db + 1).max(0) as u32;
    if e % 2 == 1 {
        e += 1;
    }
    let lead = b.leading_coefficient().unwrap();
    let mut factor = Rational::one();
    for _ in 0..e {
        factor *= lead;
    }
    a.scale(&factor).rem(b)
}

/// The signed remainder chain of `(p0, p1)`: each later entry is the negated
/// remainder of the two before it, scaled by an even (hence positive) power
/// of a leading coefficient.  Sign variations of such a chain at interval
/// endpoints count the Cauchy index exactly as for the classical Sturm
/// sequence.  With `normalize`, entries after the first two are rescaled to
/// primitive integer form (a positive rescaling, preserving all signs).
fn signed_remainder_chain(p0: &UniPoly, p1: &UniPoly, normalize: bool) -> Vec<UniPoly> {
    let mut chain = vec![p0.clone(), p1.clone()];
    loop {
        let b = &chain[chain.len() - 1];
        let a = &chain[chain.len() - 2];
        if b.is_zero() {
            chain.pop();
            break;
        }
        if b.degree() == Some(0) {
            break;
        }
        let mut next = -&even_pseudo_rem(a, b);
        if next.is_zero() {
            break;
        }
        if normalize {
            next = next.primitive();
        }
        chain.push(next);
    }
    chain
}

/// The number of sign variations in a sequence of signs, ignoring zeros.
fn sign_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Cauchy-index count from a signed remainder chain over the whole line:
/// sign variations at minus infinity minus those at plus infinity.
fn chain_index_whole_line(chain: &[UniPoly]) -> i64 {
    let at = |dir: i8| sign_variations(chain.iter().map(|p| p.sign_at_infinity(dir)));
    at(-1) as i64 - at(1) as i64
}

/// Sign variations of the chain at a rational point.
fn chain_variations_at(chain: &[UniPoly], x: &Rational) -> usize {
    sign_variations(chain.iter().map(|p| rational_sign(&p.eval(x))))
}

/// The Tarski query `sum over real roots x of q of sign(h(x))`, exact.
/// Roots are counted without multiplicity (each distinct root contributes
/// one term).
pub fn tarski_query(h: &UniPoly, q: &UniPoly) -> Result<i64, RealRootError> {
    if q.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(0);
    }
    // Work on the squarefree part so every root is simple and the index of
    // q'h/q is exactly the query.
    let sq = squarefree_part(q)?;
    Ok(taq_on_squarefree(h, &sq, &sq.derivative()))
}

/// Tarski query for an already-squarefree `sq` with precomputed derivative.
fn taq_on_squarefree(h: &UniPoly, sq: &UniPoly, dsq: &UniPoly) -> i64 {
    if sq.degree() == Some(0) {
        return 0;
    }
    let rhs = (dsq * h).rem(sq);
    let chain = signed_remainder_chain(sq, &rhs, true);
    chain_index_whole_line(&chain)
}

/// The squarefree part `q / gcd(q, q')`, monic; it has the same distinct
/// roots as `q`.
pub fn squarefree_part(q: &UniPoly) -> Result<UniPoly, RealRootError> {
    if q.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(UniPoly::one());
    }
    let g = q.gcd(&q.derivative());
    Ok(q.exact_div(&g).monic())
}

/// The signed remainder chain of `(q, p)`, exact coefficients, suitable for
/// Cauchy-index sign-variation counting.  The first two entries are the
/// inputs; later entries are negated even-power pseudo-remainders (each a
/// positive multiple of the corresponding signed remainder), left unscaled.
/// A constant `q` yields the one-element chain `[q]`.
pub fn sturm_habicht(q: &UniPoly, p: &UniPoly) -> Result<SubresultantSeq, RealRootError> {
    if q.is_zero() {
        return Err(RealRootError::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(SubresultantSeq {
            entries: vec![q.clone()],
        });
    }
    if p.is_zero() {
        return Ok(SubresultantSeq {
            entries: vec![q.clone(), p.clone()],
        });
    }
    Ok(SubresultantSeq {
        entries: signed_remainder_chain(q, p, false),
    })
}

/// The number of distinct real roots of `q`, exact.
pub fn count_real_roots(q: &UniPoly) -> Result<usize, RealRootError> {
    let count = tarski_query(&UniPoly::one(), q)?;
    debug_assert!(count >= 0);
    Ok(count as usize)
}

/// Counts the distinct real roots of `q` in the half-open interval
/// `(lo, hi]` via Sturm sign variations.
pub(crate) fn count_roots_in(q: &UniPoly, lo: &Rational, hi: &Rational) -> usize {
    let sq = squarefree_part(q).expect("nonzero polynomial");
    if sq.degree() == Some(0) {
        return 0;
    }
    let chain = signed_remainder_chain(&sq, &sq.derivative(), true);
    chain_variations_at(&chain, lo) - chain_variations_at(&chain, hi)
}

/// A strict bound on the absolute value of every real root of `q`.
pub(crate) fn root_bound(q: &UniPoly) -> Rational {
    let lead = q.leading_coefficient().expect("nonzero polynomial");
    let mut max = Rational::zero();
    for c in q.coeffs() {
        let ratio = (c / lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    max + Rational::one()
}

/// Isolates the distinct real roots of `q`: returns disjoint half-open
/// intervals `(lo, hi]`, ascending, each containing exactly one real root,
/// each of width at most `width`.
pub(crate) fn isolate_real_roots(q: &UniPoly, width: &Rational) -> Vec<(Rational, Rational)> {
    let total = count_real_roots(q).expect("nonzero polynomial");
    if total == 0 {
        return Vec::new();
    }
    let bound = root_bound(q);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound.clone(), total)];
    while let Some((lo, hi, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 && (&hi - &lo) <= *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / Rational::from(BigInt::from(2));
        let left = count_roots_in(q, &lo, &mid);
        // Push right first so the stack pops in ascending order overall;
        // order is restored by the final sort anyway.
        stack.push((mid.clone(), hi, count - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

// ---------------------------------------------------------------------------
// Thom encodings and sign determination
// ---------------------------------------------------------------------------

/// The Thom encoding of one real root of a squarefree polynomial: the signs
/// of the derivatives `q', ..., q^(deg q)` at that root.  Distinct real
/// roots always have distinct encodings, and the encodings order the roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThomEncoding {
    q: UniPoly,
    signs: Vec<i8>,
}

impl ThomEncoding {
    /// The squarefree polynomial whose root this encodes.
    pub fn poly(&self) -> &UniPoly {
        &self.q
    }

    /// The derivative signs: entry `k` is the sign of the `(k+1)`-st
    /// derivative at the root.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Orders two encodings of roots of the same polynomial by the values of
/// the encoded roots.
fn compare_encodings(a: &[i8], b: &[i8]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    // Largest index where the sign vectors differ.
    let k = match (0..a.len()).rev().find(|&k| a[k] != b[k]) {
        None => return Ordering::Equal,
        Some(k) => k,
    };
    // The common sign of the next derivative decides the direction; it is
    // never zero for distinct roots.
    let s = a[k + 1];
    debug_assert!(s != 0, "tie-breaking derivative sign cannot vanish");
    if s > 0 {
        a[k].cmp(&b[k])
    } else {
        b[k].cmp(&a[k])
    }
}

/// Cached sign-determination state for the real roots of one polynomial.
///
/// Construction computes the Thom encodings of all real roots.  The context
/// can then answer sign queries for arbitrary polynomials at any encoded
/// root, and count real roots of parametric polynomials specialized at an
/// encoded root, without recomputing the underlying adapted query family.
#[derive(Debug, Clone)]
pub struct ThomContext {
    /// The squarefree part of the input polynomial.
    q: UniPoly,
    /// The derivative of `q`, cached for Tarski queries.
    dq: UniPoly,
    /// Realized sign conditions, one per real root, ascending by root.
    conds: Vec<Vec<i8>>,
    /// Adapted exponent vectors (entries 0..=2), one per condition.
    ada: Vec<Vec<u8>>,
    /// Products of derivative powers for the adapted vectors, reduced mod q.
    products: Vec<UniPoly>,
    /// The invertible matrix M[a][c] = prod_k conds[c][k]^ada[a][k].
    matrix: Mat,
    /// Public encodings, ascending.
    encodings: Vec<ThomEncoding>,
}

/// Outcome of one sign-determination extension step: the surviving
/// conditions with counts, and a refreshed adapted family.
struct Extension {
    /// `(old condition index, new sign)` pairs with nonzero count.
    conds: Vec<(usize, i8)>,
    counts: Vec<usize>,
    /// `(old adapted index, exponent)` pairs for the new adapted family.
    ada: Vec<(usize, u8)>,
    matrix: Mat,
}

impl ThomContext {
    /// Builds the context, computing all Thom encodings of the real roots.
    pub fn new(q: &UniPoly) -> Result<Self, RealRootError> {
        if q.is_zero() {
            return Err(RealRootError::ZeroPolynomial);
        }
        let sq = squarefree_part(q)?;
        let dq = sq.derivative();
        let deg = sq.degree().unwrap_or(0);
        let mut ders = Vec::with_capacity(deg);
        let mut d = dq.clone();
        for _ in 0..deg {
            ders.push(d.rem(&sq));
            d = d.derivative();
        }
        let roots = count_real_roots(&sq)?;
        let mut state = ThomContext {
            q: sq,
            dq,
            conds: if roots > 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            },
            ada: if roots > 0 {
                vec![Vec::new()]
            } else {
                Vec::new()
            },
            products: if roots > 0 {
                vec![UniPoly::one()]
            } else {
                Vec::new()
            },
            matrix: Mat::identity(if roots > 0 { 1 } else { 0 }),
            encodings: Vec::new(),
        };
        for g in &ders {
            let ext = state.extend(g);
            state.apply(ext, g);
        }
        // Each root now has its own sign condition.
        debug_assert_eq!(state.conds.len(), roots);
        // Sort conditions by the encoded root value.
        let mut order: Vec<usize> = (0..state.conds.len()).collect();
        order.sort_by(|&i, &j| compare_encodings(&state.conds[i], &state.conds[j]));
        let sorted: Vec<Vec<i8>> = order.iter().map(|&i| state.conds[i].clone()).collect();
        // Reorder matrix columns to match.
        let mut m = Mat::zero(state.matrix.rows(), state.matrix.cols());
        for (new_c, &old_c) in order.iter().enumerate() {
            for r in 0..state.matrix.rows() {
                m[(r, new_c)] = state.matrix[(r, old_c)].clone();
            }
        }
        state.matrix = m;
        state.conds = sorted;
        state.encodings = state
            .conds
            .iter()
            .map(|signs| ThomEncoding {
                q: state.q.clone(),
                signs: signs.clone(),
            })
            .collect();
        Ok(state)
    }

    /// The squarefree polynomial the context works with.
    pub fn poly(&self) -> &UniPoly {
        &self.q
    }

    /// The Thom encodings of all real roots, ascending by root value.
    pub fn encodings(&self) -> &[ThomEncoding] {
        &self.encodings
    }

    /// One sign-determination step for the polynomial `g` (reduced mod q):
    /// computes which extended sign conditions are realized and with what
    /// counts, and selects a new adapted family.
    fn extend(&self, g: &UniPoly) -> Extension {
        let m = self.conds.len();
        if m == 0 {
            return Extension {
                conds: Vec::new(),
                counts: Vec::new(),
                ada: Vec::new(),
                matrix: Mat::identity(0),
            };
        }
        let g2 = g.mul_mod(g, &self.q);
        // Tarski queries t[a][e] = TaQ(w_a * g^e).
        let mut t = vec![[0i64; 3]; m];
        for (a, w) in self.products.iter().enumerate() {
            t[a][0] = taq_on_squarefree(w, &self.q, &self.dq);
            t[a][1] = taq_on_squarefree(&w.mul_mod(g, &self.q), &self.q, &self.dq);
            t[a][2] = taq_on_squarefree(&w.mul_mod(&g2, &self.q), &self.q, &self.dq);
        }
        // Counts per (condition, sign of g): first invert the 3x3 sign
        // structure per adapted row, then the condition matrix per sign.
        // For queries (t0, t1, t2) over one root set: the counts by sign of
        // g are (zero, pos, neg) with pos = (t1+t2)/2, neg = (t2-t1)/2,
        // zero = t0 - t2.
        let mut y = vec![vec![Rational::zero(); m]; 3]; // y[sign slot][a]
        let two = Rational::from(BigInt::from(2));
        for a in 0..m {
            let t0 = Rational::from(BigInt::from(t[a][0]));
            let t1 = Rational::from(BigInt::from(t[a][1]));
            let t2 = Rational::from(BigInt::from(t[a][2]));
            y[0][a] = &t0 - &t2;
            y[1][a] = (&t1 + &t2) / &two;
            y[2][a] = (&t2 - &t1) / &two;
        }
        let signs_for_slot = [0i8, 1, -1];
        let mut counts_by_slot = Vec::with_capacity(3);
        for slot in y.iter() {
            let x = self
                .matrix
                .solve(slot)
                .expect("adapted sign-determination matrix is invertible");
            counts_by_slot.push(x);
        }
        let mut conds = Vec::new();
        let mut counts = Vec::new();
        for c in 0..m {
            for (slot, &s) in signs_for_slot.iter().enumerate() {
                let value = &counts_by_slot[slot][c];
                assert!(
                    value.is_integer() && !value.is_negative(),
                    "sign-determination counts must be nonnegative integers"
                );
                if value.is_zero() {
                    continue;
                }
                conds.push((c, s));
                counts.push(value.numer().try_into().expect("small count"));
            }
        }
        // Select a new adapted family: candidate rows (a, e) in order of
        // ascending exponent, keeping rows that grow the rank over the
        // realized conditions.
        let m_new = conds.len();
        let mut chosen: Vec<(usize, u8)> = Vec::with_capacity(m_new);
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m_new);
        let mut basis: Vec<Vec<Rational>> = Vec::new(); // row-echelon copies
        'candidates: for e in 0..3u8 {
            for a in 0..m {
                if chosen.len() == m_new {
                    break 'candidates;
                }
                let row: Vec<Rational> = conds
                    .iter()
                    .map(|&(c, s)| {
                        let base = self.matrix[(a, c)].clone();
                        let pow = match e {
                            0 => Rational::one(),
                            1 => Rational::from(BigInt::from(s)),
                            _ => Rational::from(BigInt::from((s * s) as i64)),
                        };
                        base * pow
                    })
                    .collect();
                if add_to_basis(&mut basis, row.clone()) {
                    chosen.push((a, e));
                    rows.push(row);
                }
            }
        }
        assert_eq!(chosen.len(), m_new, "adapted family selection incomplete");
        let matrix = Mat::from_rows(rows);
        Extension {
            conds,
            counts,
            ada: chosen,
            matrix,
        }
    }

    /// Installs the outcome of an extension step for `g` as the new state.
    fn apply(&mut self, ext: Extension, g: &UniPoly) {
        let mut new_conds = Vec::with_capacity(ext.conds.len());
        for &(c, s) in &ext.conds {
            let mut cond = self.conds[c].clone();
            cond.push(s);
            new_conds.push(cond);
        }
        let mut new_ada = Vec::with_capacity(ext.ada.len());
        let mut new_products = Vec::with_capacity(ext.ada.len());
        for &(a, e) in &ext.ada {
            let mut vec = self.ada[a].clone();
            vec.push(e);
            let mut w = self.products[a].clone();
            for _ in 0..e {
                w = w.mul_mod(g, &self.q);
            }
            new_ada.push(vec);
            new_products.push(w);
        }
        self.conds = new_conds;
        self.ada = new_ada;
        self.products = new_products;
        self.matrix = ext.matrix;
    }

    /// The sign of `p` at the root selected by `enc`.
    pub fn sign_at(&self, enc: &ThomEncoding, p: &UniPoly) -> Result<i8, RealRootError> {
        if enc.q != self.q {
            return Err(RealRootError::EncodingMismatch);
        }
        let index = self
            .conds
            .iter()
            .position(|c| c == &enc.signs)
            .ok_or(RealRootError::EncodingMismatch)?;
        let reduced = p.rem(&self.q);
        if reduced.is_zero() {
            return Ok(0);
        }
        let ext = self.extend(&reduced);
        for (&(c, s), &count) in ext.conds.iter().zip(&ext.counts) {
            if c == index {
                debug_assert_eq!(count, 1);
                return Ok(s);
            }
        }
        unreachable!("every root extends to exactly one sign condition")
    }

    /// Distinct real and distinct complex root counts of `rho(u, theta)` at
    /// the encoded root `theta`: `(real, complex)`.  Errors if the leading
    /// `u`-coefficient vanishes at `theta`.
    pub fn parametric_root_profile(
        &self,
        rho: &BiPoly,
        enc: &ThomEncoding,
    ) -> Result<(usize, usize), RealRootError> {
        if rho.is_zero() {
            return Err(RealRootError::ZeroPolynomial);
        }
        let p = rho.degree_u().unwrap();
        let lead = rho.leading_coefficient_u().unwrap();
        let lead_sign = self.sign_at(enc, lead)?;
        if lead_sign == 0 {
            return Err(RealRootError::LeadingCoefficientVanishes);
        }
        if p == 0 {
            // A nonzero constant in u: no roots at all.
            return Ok((0, 0));
        }
        if p == 1 {
            return Ok((1, 1));
        }
        let dru = rho.derivative_u();
        // Principal Sturm–Habicht coefficients, top index p down to 0:
        // lc(rho), lc(rho_u'), then the sign-adjusted principal subresultant
        // coefficients of (rho, rho_u').
        let mut principal: Vec<UniPoly> = Vec::with_capacity(p + 1);
        principal.push(lead.clone());
        principal.push(dru.leading_coefficient_u().unwrap().clone());
        for j in (0..=p.saturating_sub(2)).rev() {
            let s = principal_subresultant(rho, &dru, j);
            // Sturm–Habicht sign adjustment (-1)^(k(k+1)/2) with k = p-1-j.
            let k = p - 1 - j;
            let adjusted = if (k * (k + 1) / 2) % 2 == 1 { -&s } else { s };
            principal.push(adjusted);
        }
        let signs: Vec<i8> = principal
            .iter()
            .map(|c| self.sign_at(enc, c))
            .collect::<Result<_, _>>()?;
        let real = pmv(&signs);
        assert!(real >= 0, "root count cannot be negative");
        // Distinct complex roots: degree minus the gcd degree with the
        // derivative; the gcd degree at the specialization is the least
        // index with nonvanishing principal coefficient (counted from the
        // bottom of the chain).
        let d_gcd = (0..=p)
            .find(|&j| signs[p - j] != 0)
            .expect("leading sign is nonzero");
        Ok((real as usize, p - d_gcd))
    }
}

/// Adds `row` to a row-echelon basis if independent, returning whether the
/// rank grew.
fn add_to_basis(basis: &mut Vec<Vec<Rational>>, mut row: Vec<Rational>) -> bool {
    for b in basis.iter() {
        let pivot_col = b.iter().position(|v| !v.is_zero()).unwrap();
        if !row[pivot_col].is_zero() {
            let factor = &row[pivot_col] / &b[pivot_col];
            for (r, bv) in row.iter_mut().zip(b) {
                *r -= &factor * bv;
            }
        }
    }
    if row.iter().all(Rational::is_zero) {
        return false;
    }
    basis.push(row);
    true
}

/// Generalized permanences-minus-variations count over a sign sequence with
/// possible zeros: consecutive nonzero entries at distance 1 contribute the
/// product of their signs; at odd distance `d` they contribute
/// `(-1)^(d(d-1)/2)` times the product; at even distance nothing.
fn pmv(signs: &[i8]) -> i64 {
    let mut total = 0i64;
    let mut last: Option<(usize, i8)> = None;
    for (i, &s) in signs.iter().enumerate() {
        if s == 0 {
            continue;
        }
        if let Some((j, prev)) = last {
            let d = i - j;
            if d % 2 == 1 {
                let eps = if (d * (d - 1) / 2) % 2 == 1 { -1 } else { 1 };
                total += eps * i64::from(prev * s);
            }
        }
        last = Some((i, s));
    }
    total
}

/// The principal coefficient (the `u^j` coefficient) of the `j`-th
/// subresultant of `(a, b)` in `u`, computed from its determinant formula.
fn principal_subresultant(a: &BiPoly, b: &BiPoly, j: usize) -> UniPoly {
    let da = a.degree_u().expect("nonzero");
    let db = b.degree_u().expect("nonzero");
    assert!(j < db && db < da, "subresultant index out of range");
    // Rows: u^(db-j-1) a, ..., a, then u^(da-j-1) b, ..., b; the principal
    // coefficient is the determinant of the leading square block on the
    // columns of degree da+db-j-1 down to j.
    let rows_count = da + db - 2 * j;
    let width = rows_count; // leading square block
    let top_degree = da + db - j - 1;
    let mut rows = Vec::with_capacity(rows_count);
    for shift in (0..db - j).rev() {
        rows.push(shifted_row(a, shift, top_degree, width));
    }
    for shift in (0..da - j).rev() {
        rows.push(shifted_row(b, shift, top_degree, width));
    }
    det_unipoly(rows)
}

/// The coefficient row of `u^shift * p` on descending degrees starting at
/// `top_degree`, truncated to `width` columns.
fn shifted_row(p: &BiPoly, shift: usize, top_degree: usize, width: usize) -> Vec<UniPoly> {
    (0..width)
        .map(|col| {
            let degree = top_degree - col;
            if degree < shift {
                UniPoly::zero()
            } else {
                p.coeff_u(degree - shift)
            }
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix of univariate
/// polynomials.
fn det_unipoly(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut sign = 1i64;
    let mut prev = UniPoly::one();
    for k in 0..n {
        // Pivot: any row at or below k with a nonzero entry in column k.
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let pivot = match pivot {
            None => return UniPoly::zero(),
            Some(p) => p,
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -&det
    } else {
        det
    }
}

/// The Thom encodings of all distinct real roots of `q`, ascending by root
/// value.  For repeated-root inputs the encodings refer to the squarefree
/// part.
pub fn thom_encodings(q: &UniPoly) -> Result<Vec<ThomEncoding>, RealRootError> {
    Ok(ThomContext::new(q)?.encodings().to_vec())
}

/// The sign of `p` at the real root of `q` selected by `enc`.
///
/// Builds a fresh [`ThomContext`]; callers issuing several queries against
/// the same `q` should construct the context once and use its methods.
pub fn sign_at(q: &UniPoly, enc: &ThomEncoding, p: &UniPoly) -> Result<i8, RealRootError> {
    ThomContext::new(q)?.sign_at(enc, p)
}

/// The number of distinct real roots of `rho(u, theta)` where `theta` is
/// the real root of `q` selected by `enc`.
///
/// The principal Sturm–Habicht coefficients of `rho` and its `u`-derivative
/// are computed once as polynomials in `T` and specialized through sign
/// determination, so `theta` is never approximated.  Errors with
/// [`RealRootError::LeadingCoefficientVanishes`] when the leading
/// `u`-coefficient of `rho` vanishes at `theta`.
pub fn parametric_real_root_count(
    rho: &BiPoly,
    q: &UniPoly,
    enc: &ThomEncoding,
) -> Result<usize, RealRootError> {
    Ok(ThomContext::new(q)?.parametric_root_profile(rho, enc)?.0)
}

/// Converts a slice of i64 into a [`UniPoly`] with those ascending integer
/// coefficients; convenient for fixtures.
pub fn unipoly_from_ints(coeffs: &[i64]) -> UniPoly {
    UniPoly::new(
        coeffs
            .iter()
            .map(|&c| Rational::from(BigInt::from(c)))
            .collect(),
    )
}

impl From<ArityMismatch> for RealRootError {
    fn from(_: ArityMismatch) -> Self {
        RealRootError::ZeroPolynomial
    }
}
