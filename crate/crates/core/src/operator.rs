//! Dense complex vectors and matrices with the Hermitian, spectral, and
//! positivity predicates the rest of the crate relies on.
//!
//! Dimensions here are tiny (d = N+1, a few tens at most), so everything is
//! row-major dense storage and the eigensolver is a cyclic complex Jacobi
//! iteration: unconditionally robust at these sizes and accurate to a few ulp.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance required by [`ComplexMatrix::eigh`].
pub const EIGH_HERMITIAN_TOL: f64 = 1e-10;

/// A complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state |index> in `dim` dimensions.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self {
            amplitudes: values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// True if the Euclidean norm is 1 within `tol`.
    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a / n).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// Inner product <self|other>, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Outer product |self><self|.
    pub fn projector(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        ComplexMatrix {
            rows: d,
            cols: d,
            entries,
        }
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let d = values.len();
        let mut m = Self::zeros(d, d);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * d + i] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn diag_complex(values: &[Complex64]) -> Self {
        let d = values.len();
        let mut m = Self::zeros(d, d);
        for (i, &v) in values.iter().enumerate() {
            m.entries[i * d + i] = v;
        }
        m
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

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.dim(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.get(i, j) * v.amplitudes[j];
            }
            out[i] = acc;
        }
        Ok(StateVector { amplitudes: out })
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// In-place `self += other`, shapes must already agree.
    pub fn add_assign(&mut self, other: &ComplexMatrix) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(())
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> ComplexMatrix {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Tr[self * other] without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += self.get(i, j) * other.get(j, i);
            }
        }
        Ok(acc)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Column `j` as a state vector.
    pub fn column(&self, j: usize) -> StateVector {
        StateVector {
            amplitudes: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    fn check_same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Largest deviation from Hermitian symmetry, max_ij |a_ij - conj(a_ji)|.
    pub fn hermitian_defect(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut defect: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                defect = defect.max(d);
            }
        }
        Ok(defect)
    }

    /// True iff max_ij |a_ij - conj(a_ji)| <= tol. Errors on non-square input.
    pub fn is_hermitian(&self, tol: f64) -> Result<bool> {
        Ok(self.hermitian_defect()? <= tol)
    }

    /// Hermitian eigendecomposition with eigenvalues in ascending order.
    ///
    /// Requires hermiticity within [`EIGH_HERMITIAN_TOL`]. Cyclic complex
    /// Jacobi: each pivot is phased to a real value and annihilated with a
    /// real Givens rotation, accumulating the unitary in `eigenvectors`.
    pub fn eigh(&self) -> Result<EighDecomposition> {
        let defect = self.hermitian_defect()?;
        if defect > EIGH_HERMITIAN_TOL {
            return Err(Error::NonHermitian {
                defect,
                tol: EIGH_HERMITIAN_TOL,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(EighDecomposition {
                eigenvalues: Vec::new(),
                eigenvectors: ComplexMatrix::zeros(0, 0),
            });
        }

        let mut a = self.entries.clone();
        let mut v = ComplexMatrix::identity(n).entries;
        let fro = self.frobenius_norm();
        let target = 1e-15 * fro.max(f64::MIN_POSITIVE);

        const MAX_SWEEPS: usize = 100;
        for _sweep in 0..MAX_SWEEPS {
            let mut off_sq = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off_sq += a[p * n + q].norm_sqr();
                }
            }
            if (2.0 * off_sq).sqrt() <= target {
                break;
            }

            for p in 0..(n - 1) {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    let r = apq.norm();
                    if r == 0.0 {
                        continue;
                    }

                    // Phase column q so the pivot becomes real positive.
                    let phase = apq.conj() / r;
                    for i in 0..n {
                        a[i * n + q] *= phase;
                    }
                    let phase_c = phase.conj();
                    for jj in 0..n {
                        a[q * n + jj] *= phase_c;
                    }
                    for i in 0..n {
                        v[i * n + q] *= phase;
                    }

                    // Real Jacobi rotation on the (p, q) plane.
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip.scale(c) - aiq.scale(s);
                        a[i * n + q] = aip.scale(s) + aiq.scale(c);
                    }
                    for jj in 0..n {
                        let apj = a[p * n + jj];
                        let aqj = a[q * n + jj];
                        a[p * n + jj] = apj.scale(c) - aqj.scale(s);
                        a[q * n + jj] = apj.scale(s) + aqj.scale(c);
                    }
                    for i in 0..n {
                        let vip = v[i * n + p];
                        let viq = v[i * n + q];
                        v[i * n + p] = vip.scale(c) - viq.scale(s);
                        v[i * n + q] = vip.scale(s) + viq.scale(c);
                    }

                    // Restore the structure the rotation establishes exactly.
                    a[p * n + q] = Complex64::new(0.0, 0.0);
                    a[q * n + p] = Complex64::new(0.0, 0.0);
                    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
                    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
        let mut vec_entries = vec![Complex64::new(0.0, 0.0); n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for i in 0..n {
                vec_entries[i * n + new_col] = v[i * n + old_col];
            }
        }

        Ok(EighDecomposition {
            eigenvalues,
            eigenvectors: ComplexMatrix {
                rows: n,
                cols: n,
                entries: vec_entries,
            },
        })
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let decomp = self.eigh()?;
        Ok(decomp.eigenvalues.first().copied().unwrap_or(0.0))
    }
}

/// Result of [`ComplexMatrix::eigh`]: ascending eigenvalues and the unitary
/// whose columns are the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct EighDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EighDecomposition {
    pub fn eigenvector(&self, k: usize) -> StateVector {
        self.eigenvectors.column(k)
    }

    /// V diag(lambda) V^dagger.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::diag_real(&self.eigenvalues);
        self.eigenvectors
            .mul(&lambda)
            .and_then(|m| m.mul(&self.eigenvectors.adjoint()))
            .expect("dimensions agree by construction")
    }
}
