//! Dense exact linear algebra over the rationals.
//!
//! Small support module: row reduction, linear solving, nullspace bases, and
//! Krylov minimal polynomials, all fraction-free in the sense of never
//! rounding (arithmetic is over [`Rational`]). Sizes here are modest (quotient
//! algebras, sign-determination systems), so a dense representation is fine.

use crate::poly::{rational_sign, Rational};
use num_traits::{One, Zero};

/// Dense matrix of rationals in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from nested rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The `i`-th row as a slice.
    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form; returns the pivot
    /// columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Find a pivot row for column c.
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = {
                let piv = self[(r, c)].clone();
                Rational::one() / piv
            };
            for j in c..self.cols {
                let scaled = &self[(r, j)] * &inv;
                self[(r, j)] = scaled;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let sub = &self[(r, j)] * &factor;
                    self[(i, j)] -= sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank via row reduction (on a copy).
    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self * x = b`, returning any solution, or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len(), "dimension mismatch");
        let mut aug = Mat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        // Inconsistent iff some pivot lands in the augmented column.
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// A basis of the right nullspace (one vector per free column).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut red = self.clone();
        let pivots = red.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (c, slot) in pivot_set.iter().enumerate() {
                if let Some(i) = slot {
                    vec[c] = -red[(*i, free)].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Determinant by fraction-free-ish Gaussian elimination (exact because
    /// the entries are rationals anyway).
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det *= &m[(c, c)];
            let inv = Rational::one() / m[(c, c)].clone();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let sub = &m[(c, j)] * &factor;
                    m[(i, j)] -= sub;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Monic minimal polynomial of the vector `v` under repeated application of
/// `step` (the "Krylov" minimal polynomial): the least-degree monic
/// `m(T) = T^d + c_{d-1} T^{d-1} + ... + c_0` with
/// `m(step)(v) = 0`. Returned as coefficients `[c_0, ..., c_{d-1}, 1]`.
///
/// `dim` bounds the ambient dimension, so the loop always terminates.
pub fn krylov_minimal_polynomial<F>(v: &[Rational], dim: usize, mut step: F) -> Vec<Rational>
where
    F: FnMut(&[Rational]) -> Vec<Rational>,
{
    if v.iter().all(Rational::is_zero) {
        // The zero vector is annihilated by the constant polynomial 1.
        return vec![Rational::one()];
    }
    // Maintain the rref of the Krylov vectors gathered so far alongside the
    // original vectors, and stop at the first linear dependency.
    let mut krylov: Vec<Vec<Rational>> = vec![v.to_vec()];
    loop {
        let mut m = Mat::from_rows(krylov.clone());
        let rank = m.rref().len();
        if rank < krylov.len() {
            // The newest vector is dependent on its predecessors: solve for
            // the combination.
            let newest = krylov.pop().expect("nonempty");
            let prev = Mat::from_rows(krylov.clone());
            // Want coeffs a with sum a_k * krylov[k] = newest, i.e. solve
            // prev^T * a = newest.
            let mut tr = Mat::zero(prev.cols(), prev.rows());
            for i in 0..prev.rows() {
                for j in 0..prev.cols() {
                    tr[(j, i)] = prev[(i, j)].clone();
                }
            }
            let a = tr.solve(&newest).expect("dependency must be solvable");
            let mut coeffs: Vec<Rational> = a.into_iter().map(|c| -c).collect();
            coeffs.push(Rational::one());
            return coeffs;
        }
        if krylov.len() > dim {
            unreachable!("no dependency found within the ambient dimension");
        }
        let next = step(krylov.last().expect("nonempty"));
        krylov.push(next);
    }
}

/// `LDL^T` factorization with symmetric pivoting for a symmetric positive
/// semidefinite check.
///
/// Returns `true` iff the matrix is symmetric PSD. The certificate logic:
/// pick the largest remaining diagonal entry as pivot; a negative pivot
/// refutes PSD; a zero pivot forces the whole remaining row/column to vanish
/// (otherwise a 2x2 minor `[[0, b], [b, d]]` with `b != 0` is indefinite).
pub fn is_positive_semidefinite(m: &Mat) -> bool {
    assert_eq!(m.rows(), m.cols(), "PSD check needs a square matrix");
    let n = m.rows();
    for i in 0..n {
        for j in 0..i {
            if m[(i, j)] != m[(j, i)] {
                return false;
            }
        }
    }
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&pivot_choice) = active.iter().max_by(|&&i, &&j| a[(i, i)].cmp(&a[(j, j)])) {
        let piv = a[(pivot_choice, pivot_choice)].clone();
        match rational_sign(&piv) {
            -1 => return false,
            0 => {
                // All remaining diagonal entries are <= 0 here; PSD now
                // requires every remaining off-diagonal entry to vanish.
                return active
                    .iter()
                    .all(|&i| active.iter().all(|&j| a[(i, j)].is_zero()));
            }
            _ => {}
        }
        active.retain(|&i| i != pivot_choice);
        // Schur complement update on the active block.
        for &i in &active {
            let li = &a[(i, pivot_choice)] / &piv;
            for &j in &active {
                let sub = &li * &a[(pivot_choice, j)];
                a[(i, j)] -= sub;
            }
        }
    }
    true
}
