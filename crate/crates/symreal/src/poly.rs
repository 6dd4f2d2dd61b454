//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! [`Polynomial`] stores terms in a `BTreeMap` keyed by [`Monomial`] under the
//! graded-lexicographic order, so iteration, equality, and printing are
//! canonical. Coefficients are [`Rational`] (reduced fractions of big
//! integers); no operation ever rounds.
//!
//! The text format accepted by [`Polynomial::parse`] and produced by
//! [`Polynomial::to_string`](std::fmt::Display) round-trips exactly:
//!
//! ```
//! use symreal::poly::Polynomial;
//! let f = Polynomial::parse("x1^2*x2 - 1/2*x3 + 4", 3).unwrap();
//! assert_eq!(f.to_string(), "x1^2*x2 - 1/2*x3 + 4");
//! assert_eq!(Polynomial::parse(&f.to_string(), 3).unwrap(), f);
//! ```

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Exact arbitrary-precision rational number.
///
/// Always kept in reduced form with a positive denominator (the invariant is
/// maintained by the underlying `num_rational` representation).
pub type Rational = num_rational::BigRational;

/// Builds `num / den` as a [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sign of a rational as `-1`, `0`, or `1`.
pub fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `base^exp` by repeated squaring.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut result = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// Errors raised while parsing polynomial text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    /// Unexpected input; `pos` is the byte offset, `expected` what the parser
    /// was looking for.
    #[error("syntax error at byte {pos}: expected {expected}")]
    Syntax { pos: usize, expected: &'static str },
    /// A variable whose index is zero or exceeds the declared variable count.
    #[error("unknown variable `{name}` at byte {pos}: indices run from 1 to {nvars}")]
    UnknownVariable {
        name: String,
        pos: usize,
        nvars: usize,
    },
    /// A rational literal with denominator zero.
    #[error("zero denominator at byte {pos}")]
    ZeroDenominator { pos: usize },
    /// An integer literal too large for the host representation.
    #[error("number at byte {pos} is out of range")]
    NumberOutOfRange { pos: usize },
}

/// Error raised when two polynomials (or a polynomial and a point) disagree on
/// the number of ambient variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("variable-count mismatch: {left} vs {right}")]
pub struct ArityMismatch {
    pub left: usize,
    pub right: usize,
}

/// Term orders available on monomials.
///
/// `GradedLex` is the canonical storage and printing order; `GrevLex` is used
/// by the Gröbner-basis machinery; `Lex` drives the symmetric-function
/// rewriting loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    GradedLex,
    GrevLex,
    Lex,
}

/// A monomial: a finite product of variable powers.
///
/// Stored sparsely as `(variable index, exponent)` pairs, sorted by variable,
/// with all exponents positive. Variable indices are zero-based internally;
/// the text format is one-based (`x1`, `x2`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(usize, u32)>,
}

impl Monomial {
    /// The empty product, `1`.
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    /// The single variable `x_{index}` (zero-based).
    pub fn var(index: usize) -> Self {
        Monomial {
            powers: vec![(index, 1)],
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order;
    /// duplicate variables are merged and zero exponents dropped.
    pub fn from_powers<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, e) in iter {
            if e > 0 {
                let slot = map.entry(v).or_insert(0);
                *slot = slot.checked_add(e).expect("exponent overflow");
            }
        }
        Monomial {
            powers: map.into_iter().collect(),
        }
    }

    /// The sorted `(variable, exponent)` pairs.
    pub fn powers(&self) -> &[(usize, u32)] {
        &self.powers
    }

    /// `true` for the empty product.
    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    /// Exponent of the given variable (zero if absent).
    pub fn exponent(&self, var: usize) -> u32 {
        self.powers
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.powers.last().map(|(v, _)| *v)
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (va, ea) = self.powers[i];
            let (vb, eb) = other.powers[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((va, ea.checked_add(eb).expect("exponent overflow")));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// `true` iff `self` divides `other` exponentwise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.powers.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// Exact quotient `other / self`, or `None` when `self` does not divide.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = Vec::with_capacity(other.powers.len());
        for &(v, e) in &other.powers {
            let q = e - self.exponent(v);
            if q > 0 {
                out.push((v, q));
            }
        }
        Some(Monomial { powers: out })
    }

    /// Least common multiple (exponentwise maximum).
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<usize, u32> = self.powers.iter().copied().collect();
        for &(v, e) in &other.powers {
            let slot = map.entry(v).or_insert(0);
            *slot = (*slot).max(e);
        }
        Monomial {
            powers: map.into_iter().collect(),
        }
    }

    /// Lexicographic comparison (variable `x1` weighs heaviest).
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.powers.get(i), other.powers.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // The side owning the smaller variable index has a
                    // positive exponent where the other has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }

    /// Graded lexicographic comparison: total degree first, then [`cmp_lex`].
    ///
    /// [`cmp_lex`]: Monomial::cmp_lex
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.cmp_lex(other))
    }

    /// Graded reverse-lexicographic comparison: total degree first; ties are
    /// broken by the *last* variable in which the monomials differ, the one
    /// with the smaller exponent there being larger.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (self.powers.len(), other.powers.len());
        loop {
            match (i, j) {
                (0, 0) => return Ordering::Equal,
                (_, 0) => return Ordering::Less,
                (0, _) => return Ordering::Greater,
                _ => {
                    let (va, ea) = self.powers[i - 1];
                    let (vb, eb) = other.powers[j - 1];
                    match va.cmp(&vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            match ea.cmp(&eb) {
                                Ordering::Equal => {}
                                // Larger exponent on the trailing variable
                                // means smaller in grevlex.
                                ord => return ord.reverse(),
                            }
                            i -= 1;
                            j -= 1;
                        }
                    }
                }
            }
        }
    }

    /// Comparison under a chosen [`TermOrder`].
    pub fn cmp_order(&self, other: &Monomial, order: TermOrder) -> Ordering {
        match order {
            TermOrder::GradedLex => self.cmp_grlex(other),
            TermOrder::GrevLex => self.cmp_grevlex(other),
            TermOrder::Lex => self.cmp_lex(other),
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// The canonical order is graded-lexicographic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grlex(other)
    }
}

/// A sparse multivariate polynomial with rational coefficients.
///
/// Carries its ambient variable count `nvars`; binary operations require both
/// sides to agree on it (checked variants return [`ArityMismatch`], operator
/// impls panic). Terms are stored without zero coefficients, keyed in
/// graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    /// The zero polynomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::one(), value);
        }
        Polynomial { nvars, terms }
    }

    /// The variable `x_{index}` (zero-based; panics if out of range).
    pub fn variable(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range {nvars}");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(index), Rational::one());
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs; duplicate
    /// monomials are summed and zero coefficients dropped.
    pub fn from_terms<I>(nvars: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }

    /// Number of ambient variables.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `true` for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `true` when no term involves a variable.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Coefficient of a monomial (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Iterates terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Degree in a single variable (zero polynomial gives `None`).
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// `true` when all terms share the same total degree (zero counts as
    /// homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// The sum of terms of exact total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The top-degree homogeneous part (zero for the zero polynomial).
    pub fn leading_form(&self) -> Polynomial {
        match self.total_degree() {
            None => Polynomial::zero(self.nvars),
            Some(d) => self.homogeneous_part(d),
        }
    }

    /// Leading term under a term order, or `None` for zero.
    pub fn leading_term(&self, order: TermOrder) -> Option<(&Monomial, &Rational)> {
        match order {
            // Storage order is graded-lex, so the maximum is the last key.
            TermOrder::GradedLex => self.terms.iter().next_back(),
            _ => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| a.cmp_order(b, order)),
        }
    }

    /// Adds `coeff * monomial` in place.
    pub fn add_term(&mut self, monomial: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Checked addition; fails when the variable counts differ.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, ArityMismatch> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Checked subtraction; fails when the variable counts differ.
    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, ArityMismatch> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Checked multiplication; fails when the variable counts differ.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, ArityMismatch> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    fn check_arity(&self, other: &Polynomial) -> Result<(), ArityMismatch> {
        if self.nvars != other.nvars {
            Err(ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        } else {
            Ok(())
        }
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&sq).expect("same arity");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.checked_mul(&sq).expect("same arity");
            }
        }
        result
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let reduced = Monomial::from_powers(m.powers().iter().map(|&(v, k)| {
                if v == var {
                    (v, k - 1)
                } else {
                    (v, k)
                }
            }));
            out.add_term(reduced, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Evaluates at a rational point; fails when the point length differs
    /// from the variable count.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ArityMismatch> {
        if point.len() != self.nvars {
            return Err(ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                t *= rational_pow(&point[v], e);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for `x_{i+1}`; all images must share a variable
    /// count, which becomes the result's. Fails when `images.len()` differs
    /// from `self.nvars()` or the images disagree among themselves.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, ArityMismatch> {
        if images.len() != self.nvars {
            return Err(ArityMismatch {
                left: self.nvars,
                right: images.len(),
            });
        }
        let out_nvars = match images.first() {
            Some(p) => p.nvars,
            // A constant polynomial needs no images.
            None => 0,
        };
        for p in images {
            if p.nvars != out_nvars {
                return Err(ArityMismatch {
                    left: out_nvars,
                    right: p.nvars,
                });
            }
        }
        let mut acc = Polynomial::zero(out_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_nvars, c.clone());
            for &(v, e) in m.powers() {
                t = t.checked_mul(&images[v].pow(e)).expect("same arity");
            }
            acc = acc.checked_add(&t).expect("same arity");
        }
        Ok(acc)
    }

    /// Renames variables: occurrences of `x_{i+1}` become `x_{map[i]+1}` in a
    /// polynomial with `out_nvars` variables. Distinct variables may map to
    /// the same target (their exponents add).
    pub fn remap_variables(&self, map: &[usize], out_nvars: usize) -> Polynomial {
        assert_eq!(map.len(), self.nvars, "remap table length");
        assert!(
            map.iter().all(|&t| t < out_nvars),
            "remap target out of range"
        );
        let mut out = Polynomial::zero(out_nvars);
        for (m, c) in &self.terms {
            let remapped = Monomial::from_powers(m.powers().iter().map(|&(v, e)| (map[v], e)));
            out.add_term(remapped, c.clone());
        }
        out
    }

    /// Reinterprets the polynomial in a wider ambient space (same monomials,
    /// `nvars` increased). Panics if the new count is smaller than the
    /// largest variable in use.
    pub fn extend_nvars(&self, nvars: usize) -> Polynomial {
        let used = self
            .terms
            .keys()
            .filter_map(Monomial::max_var)
            .max()
            .map_or(0, |v| v + 1);
        assert!(nvars >= used, "cannot shrink below used variables");
        Polynomial {
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// Parses the textual format (see the module docs). `nvars` bounds the
    /// accepted variable indices.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial, ParseError> {
        Parser::new(text, nvars, false).parse_complete()
    }

    /// Parses a univariate polynomial written in the variable `T` (the
    /// spelling `x1` is accepted too). Returns a one-variable [`Polynomial`].
    pub fn parse_univariate(text: &str) -> Result<Polynomial, ParseError> {
        Parser::new(text, 1, true).parse_complete()
    }

    /// Renders with custom variable names (used for symmetric-function
    /// bases); `names[i]` replaces `x_{i+1}`.
    pub fn display_with_names<'a>(&'a self, names: &'a [String]) -> DisplayWith<'a> {
        assert!(names.len() >= self.nvars, "name table too short");
        DisplayWith { poly: self, names }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                let mut first = true;
                for &(v, e) in m.powers() {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "{}", name(v))?;
                    } else {
                        write!(f, "{}^{}", name(v), e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lexicographic order, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| format!("x{}", v + 1))
    }
}

/// Helper returned by [`Polynomial::display_with_names`].
pub struct DisplayWith<'a> {
    poly: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for DisplayWith<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt_with(f, &|v| self.names[v].clone())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("arity mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("arity mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("arity mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

/// Jacobian matrix of a system: `result[i][j] = ∂ fs[i] / ∂ x_{j+1}`.
///
/// Fails when the polynomials disagree on their variable count.
pub fn jacobian(fs: &[Polynomial]) -> Result<Vec<Vec<Polynomial>>, ArityMismatch> {
    let nvars = match fs.first() {
        Some(p) => p.nvars(),
        None => return Ok(Vec::new()),
    };
    for p in fs {
        if p.nvars() != nvars {
            return Err(ArityMismatch {
                left: nvars,
                right: p.nvars(),
            });
        }
    }
    Ok(fs
        .iter()
        .map(|p| (0..nvars).map(|v| p.derivative(v)).collect())
        .collect())
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    /// Univariate mode additionally accepts the bare name `T` for `x1`.
    univariate: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, univariate: bool) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            nvars,
            univariate,
        }
    }

    fn parse_complete(mut self) -> Result<Polynomial, ParseError> {
        let p = self.parse_expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(ParseError::Syntax {
                pos: self.pos,
                expected: "end of input or operator",
            });
        }
        Ok(p)
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    /// `expr := ['+'|'-'] term (('+'|'-') term)*`
    ///
    /// The optional leading sign is a convenience extension so that printed
    /// polynomials with a negative leading coefficient re-parse.
    fn parse_expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate_first = false;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate_first = true;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        let mut acc = self.parse_term()?;
        if negate_first {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `term := factor ('*' factor)*`
    fn parse_term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let fct = self.parse_factor()?;
            acc = &acc * &fct;
        }
        Ok(acc)
    }

    /// `factor := base ('^' uint)?`
    fn parse_factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.parse_base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let (exp, _) = self.parse_uint()?;
            let exp =
                u32::try_from(exp).map_err(|_| ParseError::NumberOutOfRange { pos: self.pos })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    /// `base := rational | var | '(' expr ')'`
    fn parse_base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Syntax {
                        pos: self.pos,
                        expected: "`)`",
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => self.parse_var(),
            Some(b'T') if self.univariate => {
                self.pos += 1;
                Ok(Polynomial::variable(1, 0))
            }
            Some(b) if b == b'-' || b.is_ascii_digit() => self.parse_rational(),
            _ => Err(ParseError::Syntax {
                pos: self.pos,
                expected: "number, variable, or `(`",
            }),
        }
    }

    /// `var := 'x' uint` with a one-based index bounded by `nvars`.
    fn parse_var(&mut self) -> Result<Polynomial, ParseError> {
        let start = self.pos;
        self.pos += 1; // consume 'x'
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(ParseError::Syntax {
                pos: self.pos,
                expected: "variable index",
            });
        }
        let (index, text_end) = self.parse_uint()?;
        let name = std::str::from_utf8(&self.src[start..text_end])
            .unwrap_or("x?")
            .to_string();
        if index == 0 || index > self.nvars as u128 {
            return Err(ParseError::UnknownVariable {
                name,
                pos: start,
                nvars: self.nvars,
            });
        }
        Ok(Polynomial::variable(self.nvars, index as usize - 1))
    }

    /// `rational := int ('/' uint)?`
    fn parse_rational(&mut self) -> Result<Polynomial, ParseError> {
        self.skip_ws();
        let negative = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        };
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(ParseError::Syntax {
                pos: self.pos,
                expected: "digit",
            });
        }
        let num_start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let num_text = std::str::from_utf8(&self.src[num_start..self.pos]).unwrap();
        let mut numer: BigInt = num_text.parse().unwrap();
        if negative {
            numer = -numer;
        }
        let mut denom = BigInt::one();
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let (d, _) = self.parse_uint_big()?;
            if d.is_zero() {
                return Err(ParseError::ZeroDenominator { pos: den_pos });
            }
            denom = d;
        }
        Ok(Polynomial::constant(
            self.nvars,
            Rational::new(numer, denom),
        ))
    }

    /// Unsigned integer as `u128`; errors on overflow.
    fn parse_uint(&mut self) -> Result<(u128, usize), ParseError> {
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(ParseError::Syntax {
                pos: self.pos,
                expected: "digit",
            });
        }
        let mut value: u128 = 0;
        while let Some(b) = self.src.get(self.pos).copied() {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u128))
                .ok_or(ParseError::NumberOutOfRange { pos: start })?;
            self.pos += 1;
        }
        Ok((value, self.pos))
    }

    /// Unsigned integer of unbounded size (denominators).
    fn parse_uint_big(&mut self) -> Result<(BigInt, usize), ParseError> {
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(ParseError::Syntax {
                pos: self.pos,
                expected: "digit",
            });
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok((text.parse().unwrap(), self.pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, nvars: usize) -> Polynomial {
        Polynomial::parse(text, nvars).unwrap()
    }

    #[test]
    fn monomial_orders_disagree_where_expected() {
        // x1*x3 vs x2^2: same degree; grlex prefers x1*x3 (x1 beats x2),
        // grevlex prefers x2^2 (x3 present on the other side).
        let a = Monomial::from_powers([(0, 1), (2, 1)]);
        let b = Monomial::from_powers([(1, 2)]);
        assert_eq!(a.cmp_grlex(&b), Ordering::Greater);
        assert_eq!(a.cmp_grevlex(&b), Ordering::Less);
        assert_eq!(a.cmp_lex(&b), Ordering::Greater);
    }

    #[test]
    fn parses_spec_grammar() {
        let f = p("x1^2*x2 + 2*x1 - 1/2", 2);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.to_string(), "x1^2*x2 + 2*x1 - 1/2");
        let g = p("(x1 + x2)^2", 2);
        assert_eq!(g.to_string(), "x1^2 + 2*x1*x2 + x2^2");
        assert_eq!(p("3/6", 1), Polynomial::constant(1, rat(1, 2)));
        assert_eq!(p("-x1 + 1", 1).to_string(), "-x1 + 1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match Polynomial::parse("x1 + x5", 3).unwrap_err() {
            ParseError::UnknownVariable { name, pos, nvars } => {
                assert_eq!(name, "x5");
                assert_eq!(pos, 5);
                assert_eq!(nvars, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        match Polynomial::parse("1/0", 1).unwrap_err() {
            ParseError::ZeroDenominator { pos } => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Polynomial::parse("x1 + ", 1).unwrap_err(),
            ParseError::Syntax { .. }
        ));
        assert!(matches!(
            Polynomial::parse("x0", 2).unwrap_err(),
            ParseError::UnknownVariable { .. }
        ));
    }

    #[test]
    fn univariate_accepts_both_spellings() {
        let a = Polynomial::parse_univariate("T^2 - 2").unwrap();
        let b = Polynomial::parse_univariate("x1^2 - 2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        let f = p("x1 + x2", 2);
        let g = p("x1 - x2", 2);
        assert_eq!(&f * &g, p("x1^2 - x2^2", 2));
        assert_eq!(f.pow(3), p("x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3", 2));
        assert_eq!(&f - &f, Polynomial::zero(2));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let f = p("x1", 1);
        let g = p("x1", 2);
        assert!(f.checked_add(&g).is_err());
        assert!(f.evaluate(&[rat_int(1), rat_int(2)]).is_err());
    }

    #[test]
    fn evaluate_and_derivative() {
        let f = p("x1^3*x2 - 2*x2", 2);
        let v = f.evaluate(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(v, rat_int(8 * 3 - 6));
        assert_eq!(f.derivative(0), p("3*x1^2*x2", 2));
        assert_eq!(f.derivative(1), p("x1^3 - 2", 2));
    }

    #[test]
    fn substitution_composes() {
        let f = p("x1^2 + x2", 2);
        let images = [p("x1 + x2", 2), p("x1*x2", 2)];
        let g = f.substitute(&images).unwrap();
        assert_eq!(g, p("(x1 + x2)^2 + x1*x2", 2));
    }

    #[test]
    fn jacobian_shape_and_entries() {
        let fs = [p("x1^2 + x2^2 - 1", 2), p("x1*x2", 2)];
        let jac = jacobian(&fs).unwrap();
        assert_eq!(jac.len(), 2);
        assert_eq!(jac[0][0], p("2*x1", 2));
        assert_eq!(jac[0][1], p("2*x2", 2));
        assert_eq!(jac[1][0], p("x2", 2));
        assert_eq!(jac[1][1], p("x1", 2));
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let f = p("1 + x2 + x1 + x2^2 + x1*x2 + x1^2", 2);
        assert_eq!(f.to_string(), "x1^2 + x1*x2 + x2^2 + x1 + x2 + 1");
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Polynomial::zero(3).to_string(), "0");
    }
}
