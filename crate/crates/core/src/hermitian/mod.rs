//! Dense linear algebra for small hermitian matrices.
//!
//! The classification path only ever works with 3×3 matrices, but sampling and
//! the ball family use other sizes, so [`HermitianMatrix`] is dimension-generic
//! (up to [`MAX_DIM`]). Storage is row-major `Complex64`.

mod discriminant;
mod eigen;

pub use discriminant::{discriminant3, sos_certificate, sos_minor, sos_total, IndexPair, MinorIndex, SosCertificate};
pub use eigen::{eigendecompose, EigenSystem};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest matrix size accepted by the eigensolver.
pub const MAX_DIM: usize = 16;

/// Eigenvalue accuracy, relative to the matrix scale.
pub const TOL_EIG: f64 = 1e-10;
/// Orthonormality tolerance for eigenvectors and unitaries.
pub const TOL_ORTHO: f64 = 1e-10;
/// Eigen-residual tolerance, relative to the matrix scale.
pub const TOL_RESID: f64 = 1e-9;
/// Relative tolerance of the sum-of-squares identity (times scale⁶).
pub const RELTOL_SOS: f64 = 1e-8;
/// Relative hermiticity tolerance at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A complex hermitian matrix. Hermiticity is enforced at construction:
/// the lower triangle is the exact conjugate of the upper one and the
/// diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl HermitianMatrix {
    /// Builds a matrix from row-major entries. Fails on non-finite entries or
    /// when the entries are not hermitian to [`HERMITIAN_TOL`] (relative).
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::check_shape(dim, &entries)?;
        let scale = entries.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
        for i in 0..dim {
            for j in i..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i].conj();
                if (a - b).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) = {a} is not the conjugate of ({j},{i})"
                    )));
                }
            }
        }
        Ok(Self::symmetrize_raw(dim, entries))
    }

    /// Builds the hermitian part (A + A*)/2 of arbitrary row-major entries.
    pub fn symmetrized(dim: usize, entries: Vec<C64>) -> Result<Self> {
        Self::check_shape(dim, &entries)?;
        let mut out = entries.clone();
        for i in 0..dim {
            for j in 0..dim {
                out[i * dim + j] = (entries[i * dim + j] + entries[j * dim + i].conj()) * 0.5;
            }
        }
        Ok(Self::symmetrize_raw(dim, out))
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix("rows must form a square matrix".into()));
        }
        Self::new(dim, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn diag(values: &[f64]) -> Self {
        let dim = values.len();
        let mut data = vec![ZERO; dim * dim];
        for (i, &v) in values.iter().enumerate() {
            data[i * dim + i] = C64::new(v, 0.0);
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    fn check_shape(dim: usize, entries: &[C64]) -> Result<()> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be positive".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: entries.len() });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(())
    }

    /// Copies the upper triangle onto the lower one and zeroes diagonal imaginary parts.
    fn symmetrize_raw(dim: usize, mut data: Vec<C64>) -> Self {
        for i in 0..dim {
            data[i * dim + i].im = 0.0;
            for j in (i + 1)..dim {
                data[j * dim + i] = data[i * dim + j].conj();
            }
        }
        Self { dim, data }
    }

    /// Skips validation; callers guarantee hermiticity up to rounding.
    pub(crate) fn from_raw(dim: usize, data: Vec<C64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self::symmetrize_raw(dim, data)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    /// Largest entry modulus; the scale used by relative tolerances.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `A - (tr A / dim)·I`.
    pub fn traceless(&self) -> Self {
        let shift = self.trace() / self.dim as f64;
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i].re -= shift;
        }
        out
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * t).collect() }
    }

    /// `self + t·I`.
    pub fn shifted(&self, t: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i].re += t;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    /// `Σ coeffs[i]·mats[i]`; all matrices must share one dimension.
    pub fn linear_combination(coeffs: &[f64], mats: &[HermitianMatrix]) -> Result<Self> {
        if coeffs.len() != mats.len() {
            return Err(Error::DimensionMismatch { expected: mats.len(), found: coeffs.len() });
        }
        let Some(first) = mats.first() else {
            return Err(Error::EmptyRequest("linear combination of zero matrices".into()));
        };
        let dim = first.dim;
        let mut data = vec![ZERO; dim * dim];
        for (&c, m) in coeffs.iter().zip(mats) {
            if m.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim });
            }
            if c == 0.0 {
                continue;
            }
            for (acc, z) in data.iter_mut().zip(&m.data) {
                *acc += z * c;
            }
        }
        Ok(Self { dim, data })
    }

    /// Plain matrix product, returned row-major (not hermitian in general).
    pub fn matmul(&self, other: &Self) -> Vec<C64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| self.data[i * d + j] * x[j]).sum()).collect()
    }

    /// `Re ⟨x, A x⟩` (the imaginary part vanishes for hermitian A).
    pub fn quadratic_form(&self, x: &[C64]) -> f64 {
        let ax = self.apply(x);
        x.iter().zip(&ax).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// `⟨x, A y⟩`.
    pub fn sesquilinear(&self, x: &[C64], y: &[C64]) -> C64 {
        let ay = self.apply(y);
        x.iter().zip(&ay).map(|(a, b)| a.conj() * b).sum()
    }

    /// Compression `B* A B` to the span of the given (orthonormal) vectors.
    pub fn compress(&self, basis: &[Vec<C64>]) -> Self {
        let k = basis.len();
        let images: Vec<Vec<C64>> = basis.iter().map(|b| self.apply(b)).collect();
        let mut data = vec![ZERO; k * k];
        for a in 0..k {
            for b in 0..k {
                data[a * k + b] = basis[a].iter().zip(&images[b]).map(|(x, y)| x.conj() * y).sum();
            }
        }
        Self::from_raw(k, data)
    }

    /// `U* A U` for a square matrix `U` of matching size.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.dim || u.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: u.nrows() });
        }
        let prod = u.adjoint() * self.to_dmatrix() * u;
        Ok(Self::from_dmatrix(&prod))
    }

    pub fn to_dmatrix(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    /// Takes the upper triangle of a square matrix.
    pub(crate) fn from_dmatrix(m: &DMatrix<C64>) -> Self {
        let d = m.nrows();
        let data = (0..d * d).map(|k| m[(k / d, k % d)]).collect();
        Self::from_raw(d, data)
    }

    /// Frobenius inner product `Re tr(A B)`.
    pub fn inner(&self, other: &Self) -> f64 {
        // tr(A* B) with A hermitian; real for hermitian pairs.
        self.data.iter().zip(&other.data).map(|(a, b)| (a.conj() * b).re).sum()
    }

    pub fn eigen(&self) -> Result<EigenSystem> {
        eigendecompose(self)
    }

    pub fn is_scalar(&self, tol: f64) -> bool {
        self.traceless().max_abs() <= tol
    }
}

/// Euclidean norm of a complex vector.
pub(crate) fn cnorm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨x, y⟩`, conjugate-linear in `x`.
pub(crate) fn cdot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let e = vec![ZERO, ONE, ZERO, ZERO];
        assert!(matches!(HermitianMatrix::new(2, e), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn rejects_nan() {
        let e = vec![C64::new(f64::NAN, 0.0), ZERO, ZERO, ONE];
        assert!(matches!(HermitianMatrix::new(2, e), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn symmetrize_averages() {
        let e = vec![C64::new(1.0, 0.5), C64::new(2.0, 0.0), ZERO, ONE];
        let m = HermitianMatrix::symmetrized(2, e).unwrap();
        assert_eq!(m.get(0, 0), C64::new(1.0, 0.0));
        assert_eq!(m.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(m.get(1, 0), C64::new(1.0, 0.0));
    }

    #[test]
    fn diagonal_imaginary_parts_are_zeroed() {
        let e = vec![C64::new(1.0, 1e-14), ZERO, ZERO, ONE];
        let m = HermitianMatrix::new(2, e).unwrap();
        assert_eq!(m.get(0, 0).im, 0.0);
    }

    #[test]
    fn compression_to_coordinate_plane() {
        let m = HermitianMatrix::diag(&[1.0, 2.0, 3.0]);
        let basis = vec![vec![ZERO, ONE, ZERO], vec![ZERO, ZERO, ONE]];
        assert_eq!(m.compress(&basis), HermitianMatrix::diag(&[2.0, 3.0]));
    }
}
