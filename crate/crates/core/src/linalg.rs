//! Small dense linear algebra over `Complex64`.
//!
//! Every matrix in this crate stores complex entries; real data simply carries
//! zero imaginary parts. The supported regime is n ≤ 32, so all routines are
//! plain O(n³) dense methods.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{FrameError, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Relative thresholds shared by every floating-point predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative zero threshold for tightness, hermiticity and residual tests.
    pub zero_rel: f64,
    /// Relative eigen/singular value cutoff for rank decisions.
    pub rank_rel: f64,
    /// Seed for randomized routines.
    pub seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { zero_rel: 1e-9, rank_rel: 1e-9, seed: 0 }
    }
}

impl ToleranceConfig {
    pub fn new(zero_rel: f64, rank_rel: f64, seed: u64) -> Result<Self> {
        let cfg = Self { zero_rel, rank_rel, seed };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_zero_rel(mut self, zero_rel: f64) -> Result<Self> {
        self.zero_rel = zero_rel;
        self.validate()?;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("zero_rel", self.zero_rel), ("rank_rel", self.rank_rel)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(FrameError::InvalidTolerance(format!("{name} = {v} must lie in (0, 1)")));
            }
        }
        Ok(())
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(FrameError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(n, columns.len(), |r, c| columns[c][r])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<C64> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(FrameError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(l, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(FrameError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| (0..self.cols).map(|c| self[(r, c)] * v[c]).sum()).collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(C64, C64) -> C64) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(FrameError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: C64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `max |M - M*|`, entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Distance from the identity in the max norm.
    pub fn identity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

/// `Σ a_i conj(b_i)`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_hermitian(m: &Matrix, tol: &ToleranceConfig) -> Result<()> {
    if !m.is_square() {
        return Err(FrameError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let defect = m.hermitian_defect();
    if defect > tol.zero_rel * m.max_abs() {
        return Err(FrameError::NotHermitian { asymmetry: defect });
    }
    Ok(())
}

/// Eigenvalues of a real symmetric matrix (row-major, n×n) by cyclic Jacobi rotations.
fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    let scale = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return vec![0.0; n];
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-3 * f64::EPSILON * scale {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// Complex input is handled through the real symmetric embedding
/// `[[A, -B], [B, A]]` of `A + iB`, whose spectrum is that of the input with
/// every eigenvalue doubled.
pub fn hermitian_eigenvalues(m: &Matrix, tol: &ToleranceConfig) -> Result<Vec<f64>> {
    check_hermitian(m, tol)?;
    let n = m.rows();
    if m.is_real() {
        let a = (0..n * n).map(|idx| m[(idx / n, idx % n)].re).collect();
        return Ok(symmetric_eigenvalues(a, n));
    }
    let big = 2 * n;
    let mut a = vec![0.0; big * big];
    for i in 0..n {
        for j in 0..n {
            // Symmetrize so the embedding is exactly symmetric.
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[i * big + j] = z.re;
            a[(i + n) * big + (j + n)] = z.re;
            a[i * big + (j + n)] = -z.im;
            a[(i + n) * big + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(a, big);
    Ok(doubled.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn extremal_eigenvalues(m: &Matrix, tol: &ToleranceConfig) -> Result<(f64, f64)> {
    let eig = hermitian_eigenvalues(m, tol)?;
    match (eig.first(), eig.last()) {
        (Some(&lo), Some(&hi)) => Ok((lo, hi)),
        _ => Err(FrameError::DimensionMismatch("empty matrix".into())),
    }
}

/// Inverse of a Hermitian positive-definite matrix via Cholesky, with one
/// step of iterative refinement.
pub fn hermitian_inverse(m: &Matrix, tol: &ToleranceConfig) -> Result<Matrix> {
    let (min, max) = extremal_eigenvalues(m, tol)?;
    if max.is_nan() || max <= 0.0 || min <= tol.rank_rel * max {
        return Err(FrameError::NotPositiveDefinite { min, max });
    }
    let n = m.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 {
            return Err(FrameError::NotPositiveDefinite { min, max });
        }
        let d = d.sqrt();
        l[(j, j)] = C64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / d;
        }
    }
    // Forward solve L Y = I, then back solve L* X = Y.
    let mut x = Matrix::zeros(n, n);
    for col in 0..n {
        let mut y = vec![ZERO; n];
        for i in 0..n {
            let mut s = if i == col { ONE } else { ZERO };
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[(k, i)].conj() * x[(k, col)];
            }
            x[(i, col)] = s / l[(i, i)];
        }
    }
    let residual = Matrix::identity(n).sub(&m.mul(&x)?)?;
    let refined = x.add(&x.mul(&residual)?)?;
    // Restore exact hermiticity of the result.
    Ok(Matrix::from_fn(n, n, |i, j| (refined[(i, j)] + refined[(j, i)].conj()) * 0.5))
}

/// Orthonormal basis of `ker(M)`.
///
/// Householder QR with column pivoting is run on `M*`; the trailing columns of
/// `Q` beyond the numerical rank span `range(M*)^⊥ = ker(M)`. The output order
/// is fixed by the pivot sequence, so repeated calls return the same basis.
pub fn orthonormal_nullspace(m: &Matrix, tol: &ToleranceConfig) -> Vec<Vec<C64>> {
    let mut a = m.adjoint();
    let rows = a.rows();
    let cols = a.cols();
    let mut q = Matrix::identity(rows);
    let mut rank = 0;
    let mut first_pivot = 0.0;
    for step in 0..rows.min(cols) {
        let tail_norm = |a: &Matrix, c: usize| (step..rows).map(|r| a[(r, c)].norm_sqr()).sum::<f64>().sqrt();
        let (pivot, pivot_norm) =
            (step..cols)
                .map(|c| (c, tail_norm(&a, c)))
                .fold((step, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if step == 0 {
            first_pivot = pivot_norm;
        }
        if pivot_norm <= 0.0 || pivot_norm <= tol.rank_rel * first_pivot {
            break;
        }
        if pivot != step {
            for r in 0..rows {
                let tmp = a[(r, step)];
                a[(r, step)] = a[(r, pivot)];
                a[(r, pivot)] = tmp;
            }
        }
        let below: f64 = (step + 1..rows).map(|r| a[(r, step)].norm_sqr()).sum();
        if below > 0.0 {
            let x0 = a[(step, step)];
            let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
            let alpha = -phase * pivot_norm;
            let mut v: Vec<C64> = (step..rows).map(|r| a[(r, step)]).collect();
            v[0] -= alpha;
            let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            // A <- (I - 2 v v*/|v|^2) A on the trailing block.
            for c in step..cols {
                let dot: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * a[(step + i, c)]).sum();
                let f = dot * (2.0 / vnorm2);
                for (i, vi) in v.iter().enumerate() {
                    a[(step + i, c)] -= vi * f;
                }
            }
            // Q <- Q (I - 2 v v*/|v|^2).
            for r in 0..rows {
                let dot: C64 = v.iter().enumerate().map(|(i, vi)| q[(r, step + i)] * vi).sum();
                let f = dot * (2.0 / vnorm2);
                for (i, vi) in v.iter().enumerate() {
                    q[(r, step + i)] -= f * vi.conj();
                }
            }
        }
        rank += 1;
    }
    (rank..rows).map(|c| q.column(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn real(rows: &[&[f64]]) -> Matrix {
        Matrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn inverse_of_identity_and_diagonal() {
        let id = Matrix::identity(2);
        assert!(hermitian_inverse(&id, &tol()).unwrap().sub(&id).unwrap().max_abs() < 1e-15);
        let inv = hermitian_inverse(&Matrix::diag(&[2.0, 1.0]), &tol()).unwrap();
        assert!(inv.sub(&Matrix::diag(&[0.5, 1.0])).unwrap().max_abs() < 1e-15);
    }

    #[test]
    fn inverse_rejects_singular() {
        let m = Matrix::diag(&[1.0, 0.0]);
        assert!(matches!(hermitian_inverse(&m, &tol()), Err(FrameError::NotPositiveDefinite { .. })));
    }

    #[test]
    fn inverse_complex_hermitian() {
        let m = Matrix::from_rows(&[
            vec![C64::new(3.0, 0.0), C64::new(1.0, 1.0)],
            vec![C64::new(1.0, -1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let inv = hermitian_inverse(&m, &tol()).unwrap();
        assert!(m.mul(&inv).unwrap().identity_residual() < 1e-14);
    }

    #[test]
    fn nullspace_examples() {
        let m = real(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0]]);
        let ker = orthonormal_nullspace(&m, &tol());
        assert_eq!(ker.len(), 2);
        assert_eq!(ker[0], vec![ZERO, ZERO, ONE, ZERO]);
        assert_eq!(ker[1], vec![ZERO, ZERO, ZERO, ONE]);

        let m = real(&[&[1.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let ker = orthonormal_nullspace(&m, &tol());
        assert_eq!(ker.len(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [s, -s, 0.0];
        let sign = ker[0][0].re.signum();
        for (z, e) in ker[0].iter().zip(expected) {
            assert!((z * sign - C64::new(e, 0.0)).norm() < 1e-15);
        }

        assert!(orthonormal_nullspace(&Matrix::identity(3), &tol()).is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_everything() {
        let ker = orthonormal_nullspace(&Matrix::zeros(2, 3), &tol());
        assert_eq!(ker.len(), 3);
    }

    #[test]
    fn extremal_eigenvalue_examples() {
        let (lo, hi) = extremal_eigenvalues(&Matrix::diag(&[2.0, 1.0]), &tol()).unwrap();
        assert_eq!((lo, hi), (1.0, 2.0));
        let (lo, hi) = extremal_eigenvalues(&Matrix::identity(4).scale(C64::new(3.5, 0.0)), &tol()).unwrap();
        assert!((lo - 3.5).abs() < 1e-15 && (hi - 3.5).abs() < 1e-15);
        let (lo, hi) = extremal_eigenvalues(&real(&[&[2.0, 1.0], &[1.0, 2.0]]), &tol()).unwrap();
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_eigenvalues_match_hand_computation() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = Matrix::from_rows(&[
            vec![C64::new(2.0, 0.0), C64::new(0.0, 1.0)],
            vec![C64::new(0.0, -1.0), C64::new(2.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigenvalues(&m, &tol()).unwrap();
        assert!((eig[0] - 1.0).abs() < 1e-14 && (eig[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(extremal_eigenvalues(&m, &tol()), Err(FrameError::NotHermitian { .. })));
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::new(0.0, 1e-9, 0).is_err());
        assert!(ToleranceConfig::new(1e-9, 1.0, 0).is_err());
        assert!(ToleranceConfig::new(1e-12, 1e-9, 7).is_ok());
    }
}
