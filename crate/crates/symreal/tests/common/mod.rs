//! Shared helpers for the acceptance suite: a timing harness plus
//! independent oracles (naive Sturm chains on raw coefficient vectors,
//! interval sign certification, Lagrange interpolation, grid search,
//! inversion counting) used to cross-check library results through code
//! paths the library itself does not share.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use symreal::poly::{Polynomial, Rational};
use symreal::realroot::UniPoly;

/// Runs one acceptance criterion, printing a single `PASS`/`FAIL` line and
/// enforcing a wall-clock budget.  Panics from the body are re-raised after
/// the verdict line so the test still fails normally.
pub fn run_criterion<F>(number: u32, name: &str, budget: Duration, body: F)
where
    F: FnOnce() + UnwindSafe,
{
    let start = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = start.elapsed();
    let verdict = if outcome.is_ok() && elapsed <= budget {
        "PASS"
    } else {
        "FAIL"
    };
    println!("acceptance {number} ({name}): {verdict} [{elapsed:.2?} of {budget:?}]");
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

/// The rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// The integer rational `num`.
pub fn rat_int(num: i64) -> Rational {
    rat(num, 1)
}

// ---------------------------------------------------------------------------
// Naive univariate arithmetic on ascending coefficient vectors
// ---------------------------------------------------------------------------
//
// The acceptance oracles deliberately avoid the library's univariate stack:
// everything below is plain textbook arithmetic on `Vec<Rational>`.

/// Ascending coefficient vector; index `k` holds the coefficient of `T^k`.
pub type Coeffs = Vec<Rational>;

/// Builds a coefficient vector from ascending integer coefficients.
pub fn cpoly(coeffs: &[i64]) -> Coeffs {
    coeffs.iter().map(|&c| rat_int(c)).collect()
}

fn trim(mut c: Coeffs) -> Coeffs {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    c
}

/// Degree, or `None` for the zero polynomial.
pub fn cpoly_degree(c: &Coeffs) -> Option<usize> {
    c.iter().rposition(|a| !a.is_zero())
}

/// Horner evaluation.
pub fn cpoly_eval(c: &Coeffs, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

/// Product of two coefficient vectors.
pub fn cpoly_mul(a: &[Rational], b: &[Rational]) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim(out)
}

/// Sum of two coefficient vectors.
pub fn cpoly_add(a: &[Rational], b: &[Rational]) -> Coeffs {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    trim(out)
}

/// Scalar multiple of a coefficient vector.
pub fn cpoly_scale(a: &[Rational], k: &Rational) -> Coeffs {
    trim(a.iter().map(|c| c * k).collect())
}

/// Formal derivative.
pub fn cpoly_derivative(a: &[Rational]) -> Coeffs {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect(),
    )
}

/// Euclidean division; panics on a zero divisor.
fn cpoly_divmod(a: &[Rational], b: &[Rational]) -> (Coeffs, Coeffs) {
    let db = cpoly_degree(&b.to_vec()).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let mut quo = vec![Rational::zero(); a.len()];
    while let Some(dr) = cpoly_degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        quo[dr - db] = factor.clone();
        for k in 0..=db {
            let delta = &b[k] * &factor;
            rem[dr - db + k] -= delta;
        }
    }
    (trim(quo), trim(rem))
}

/// Monic greatest common divisor by the Euclidean algorithm.
fn cpoly_gcd(a: &[Rational], b: &[Rational]) -> Coeffs {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = cpoly_divmod(&x, &y);
        x = y;
        y = r;
    }
    match cpoly_degree(&x) {
        None => x,
        Some(d) => {
            let lead = x[d].clone();
            cpoly_scale(&x, &(Rational::one() / lead))
        }
    }
}

/// The squarefree part `c / gcd(c, c')`; panics on the zero polynomial.
pub fn squarefree_part(c: &Coeffs) -> Coeffs {
    let d = cpoly_degree(c).expect("squarefree part of the zero polynomial");
    if d == 0 {
        return c.clone();
    }
    let g = cpoly_gcd(c, &cpoly_derivative(c));
    let (q, r) = cpoly_divmod(c, &g);
    assert!(r.is_empty(), "gcd must divide exactly");
    q
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain `c, c', -rem(...), ...` down to the (nonzero) gcd tail.
fn sturm_chain(c: &Coeffs) -> Vec<Coeffs> {
    let mut chain = vec![trim(c.clone()), cpoly_derivative(c)];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let (_, r) = cpoly_divmod(&chain[k - 2], &chain[k - 1]);
        chain.push(cpoly_scale(&r, &rat_int(-1)));
    }
}

fn variations<I: IntoIterator<Item = i8>>(signs: I) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_inf(c: &Coeffs, dir: i8) -> i8 {
    match cpoly_degree(c) {
        None => 0,
        Some(d) => {
            let lead = sign_of(&c[d]);
            if dir > 0 || d % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
    }
}

/// Number of distinct real roots, by Sturm's theorem over the whole line.
pub fn sturm_distinct_real_roots(c: &Coeffs) -> usize {
    let chain = sturm_chain(c);
    let neg = variations(chain.iter().map(|p| sign_at_inf(p, -1)));
    let pos = variations(chain.iter().map(|p| sign_at_inf(p, 1)));
    neg - pos
}

/// Number of distinct real roots in the open interval `(a, b)`; requires
/// `c(a) != 0` and `c(b) != 0`.
pub fn roots_in_open_interval(c: &Coeffs, a: &Rational, b: &Rational) -> usize {
    assert!(a < b, "interval must be ordered");
    assert!(!cpoly_eval(c, a).is_zero(), "left endpoint is a root");
    assert!(!cpoly_eval(c, b).is_zero(), "right endpoint is a root");
    let chain = sturm_chain(c);
    let va = variations(chain.iter().map(|p| sign_of(&cpoly_eval(p, a))));
    let vb = variations(chain.iter().map(|p| sign_of(&cpoly_eval(p, b))));
    va - vb
}

/// Whether every complex root of `c` is real (multiplicity-blind): the
/// squarefree part must have as many distinct real roots as its degree.
pub fn all_roots_real(c: &Coeffs) -> bool {
    let s = squarefree_part(c);
    match cpoly_degree(&s) {
        None | Some(0) => true,
        Some(d) => sturm_distinct_real_roots(&s) == d,
    }
}

// ---------------------------------------------------------------------------
// Interval isolation and sign certification
// ---------------------------------------------------------------------------

/// Scans a uniform grid of `steps` cells over `[lo, hi]` and returns the
/// cells where `c` changes sign, in ascending order.  Panics if a grid
/// point is itself a root (pick a grid avoiding rational roots).
pub fn sign_change_cells(
    c: &Coeffs,
    lo: Rational,
    hi: Rational,
    steps: usize,
) -> Vec<(Rational, Rational)> {
    let width = (&hi - &lo) / rat_int(steps as i64);
    let mut cells = Vec::new();
    let mut x = lo;
    let mut sx = sign_of(&cpoly_eval(c, &x));
    assert!(sx != 0, "grid point is a root");
    for _ in 0..steps {
        let y = &x + &width;
        let sy = sign_of(&cpoly_eval(c, &y));
        assert!(sy != 0, "grid point is a root");
        if sx != sy {
            cells.push((x.clone(), y.clone()));
        }
        x = y;
        sx = sy;
    }
    cells
}

/// Shrinks a sign-change cell of `q` by bisection until none of the query
/// polynomials has a root inside or at an endpoint, so each query has a
/// provably constant sign across the cell (and hence at the root of `q`
/// the cell isolates).
pub fn refine_cell_against(
    q: &Coeffs,
    cell: (Rational, Rational),
    queries: &[&Coeffs],
) -> (Rational, Rational) {
    let (mut a, mut b) = cell;
    let sa = sign_of(&cpoly_eval(q, &a));
    assert!(
        sa != 0 && sa == -sign_of(&cpoly_eval(q, &b)),
        "not a sign-change cell"
    );
    for _ in 0..64 {
        let clean = queries.iter().all(|d| {
            !cpoly_eval(d, &a).is_zero()
                && !cpoly_eval(d, &b).is_zero()
                && roots_in_open_interval(d, &a, &b) == 0
        });
        if clean {
            return (a, b);
        }
        let mid = (&a + &b) / rat_int(2);
        let sm = sign_of(&cpoly_eval(q, &mid));
        assert!(sm != 0, "bisection midpoint is a root of q");
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    panic!("refinement did not separate the queries in 64 bisections");
}

/// The constant sign of `d` across `(a, b)`, certified by equal nonzero
/// endpoint signs and a zero Sturm root count inside.
pub fn constant_sign_on(d: &Coeffs, cell: &(Rational, Rational)) -> i8 {
    let (a, b) = cell;
    let sa = sign_of(&cpoly_eval(d, a));
    let sb = sign_of(&cpoly_eval(d, b));
    assert!(sa != 0 && sa == sb, "sign not constant at endpoints");
    assert_eq!(
        roots_in_open_interval(d, a, b),
        0,
        "query has a root inside"
    );
    sa
}

// ---------------------------------------------------------------------------
// Instance-building helpers
// ---------------------------------------------------------------------------

/// The unique polynomial of degree `< nodes.len()` through the given
/// rational points, by Lagrange interpolation.
pub fn lagrange_interpolate(nodes: &[Rational], values: &[Rational]) -> UniPoly {
    assert_eq!(nodes.len(), values.len());
    let mut acc: Coeffs = Vec::new();
    for (k, tau) in nodes.iter().enumerate() {
        let mut basis: Coeffs = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, sigma) in nodes.iter().enumerate() {
            if j != k {
                basis = cpoly_mul(&basis, &[-sigma.clone(), Rational::one()]);
                denom *= tau - sigma;
            }
        }
        acc = cpoly_add(&acc, &cpoly_scale(&basis, &(&values[k] / &denom)));
    }
    UniPoly::new(acc)
}

/// Whether some point of the uniform rational grid `{lo + k*step : 0 <= k <
/// count}^n` zeroes every polynomial of the system (exact evaluation).
pub fn grid_has_common_zero(
    fs: &[Polynomial],
    lo: &Rational,
    step: &Rational,
    count: usize,
) -> bool {
    let n = fs[0].nvars();
    let values: Vec<Rational> = (0..count)
        .map(|k| lo + &(step * rat_int(k as i64)))
        .collect();
    let mut index = vec![0usize; n];
    loop {
        let point: Vec<Rational> = index.iter().map(|&k| values[k].clone()).collect();
        if fs
            .iter()
            .all(|f| f.evaluate(&point).expect("arity").is_zero())
        {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            index[pos] += 1;
            if index[pos] < count {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}

/// Number of inversions (pairs out of ascending order).
pub fn inversion_count<T: Ord>(v: &[T]) -> usize {
    let mut count = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                count += 1;
            }
        }
    }
    count
}
