//! Hermitian eigensolvers.
//!
//! 3×3 matrices go through the trigonometric closed form (eigenvalues of the
//! shifted, scaled characteristic polynomial) with eigenvectors from cross
//! products of the rows of `A - λI`, followed by Rayleigh-quotient
//! refinement. When two eigenvalues are closer than [`CLOSED_FORM_SPREAD`]
//! relative to the scale, the closed form loses digits and the cyclic
//! Jacobi method takes over. Every other size uses Jacobi directly.

use std::f64::consts::PI;

use super::{cdot, cnorm, HermitianMatrix, C64, MAX_DIM, ONE, TOL_RESID, ZERO};
use crate::error::{Error, Result};

/// Relative eigenvalue spread below which the 3×3 closed form is abandoned.
pub const CLOSED_FORM_SPREAD: f64 = 1e-6;

const MAX_SWEEPS: usize = 64;

/// Spectral data of a hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors, `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<C64>>,
    /// `values[0] - values[1]`, or 0 for 1×1 matrices.
    pub gap12: f64,
}

impl EigenSystem {
    fn from_pairs(mut pairs: Vec<(f64, Vec<C64>)>) -> Self {
        // Stable sort keeps the input order among exact ties.
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let gap12 = if values.len() > 1 { values[0] - values[1] } else { 0.0 };
        Self { values, vectors: pairs.into_iter().map(|p| p.1).collect(), gap12 }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    /// Number of eigenvalues within `tol` of the largest one.
    pub fn top_multiplicity(&self, tol: f64) -> usize {
        self.values.iter().take_while(|&&v| self.values[0] - v <= tol).count()
    }
}

/// Eigendecomposition of a hermitian matrix of size at most [`MAX_DIM`].
pub fn eigendecompose(a: &HermitianMatrix) -> Result<EigenSystem> {
    if a.dim() > MAX_DIM {
        return Err(Error::InvalidMatrix(format!("dimension {} exceeds the eigensolver limit {MAX_DIM}", a.dim())));
    }
    if a.entries().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    if a.dim() == 3 {
        if let Some(sys) = closed_form3(a) {
            return Ok(sys);
        }
    }
    Ok(jacobi(a))
}

/// Closed-form 3×3 solver. Returns `None` when the spectrum is too clustered
/// for the trigonometric formula or the refined residual is not acceptable.
fn closed_form3(a: &HermitianMatrix) -> Option<EigenSystem> {
    let scale = a.max_abs();
    if scale == 0.0 {
        return None;
    }
    let q = a.trace() / 3.0;
    let b = a.traceless();
    let p2: f64 = b.entries().iter().map(|z| z.norm_sqr()).sum::<f64>() / 6.0;
    let p = p2.sqrt();
    if p <= CLOSED_FORM_SPREAD * scale {
        return None;
    }
    let r = (det3(b.entries()).re / (p * p * p) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let l1 = q + 2.0 * p * phi.cos();
    let l3 = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let l2 = 3.0 * q - l1 - l3;
    let raw = [l1, l2, l3];
    let spread = (l1 - l2).abs().min((l2 - l3).abs());
    if spread < CLOSED_FORM_SPREAD * scale {
        return None;
    }

    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(3);
    for &lambda in &raw {
        let mut v = null_vector3(&a.shifted(-lambda))?;
        // Modified Gram-Schmidt against already accepted vectors.
        for w in &vectors {
            let c = cdot(w, &v);
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi -= c * wi;
            }
        }
        let n = cnorm(&v);
        if n < 0.5 {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= n);
        vectors.push(v);
    }

    let mut pairs = Vec::with_capacity(3);
    for v in vectors {
        let lambda = a.quadratic_form(&v);
        let av = a.apply(&v);
        let resid = av.iter().zip(&v).map(|(x, y)| (x - y * lambda).norm_sqr()).sum::<f64>().sqrt();
        if resid > TOL_RESID * scale {
            return None;
        }
        pairs.push((lambda, v));
    }
    Some(EigenSystem::from_pairs(pairs))
}

/// Kernel vector of a (numerically) rank-2 3×3 matrix via the largest
/// bilinear cross product of two of its rows.
fn null_vector3(m: &HermitianMatrix) -> Option<Vec<C64>> {
    let row = |i: usize| [m.get(i, 0), m.get(i, 1), m.get(i, 2)];
    let rows = [row(0), row(1), row(2)];
    let mut best: Option<(f64, [C64; 3])> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&rows[i], &rows[j]);
        let n: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        if best.is_none_or(|(bn, _)| n > bn) {
            best = Some((n, c));
        }
    }
    let (n, c) = best?;
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    let n = n.sqrt();
    Some(c.iter().map(|z| z / n).collect())
}

fn cross(a: &[C64; 3], b: &[C64; 3]) -> [C64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn det3(m: &[C64]) -> C64 {
    m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6])
}

/// Cyclic complex Jacobi. Each rotation removes the phase of `a[p][q]` and
/// then applies the real symmetric Jacobi rotation.
fn jacobi(a: &HermitianMatrix) -> EigenSystem {
    let n = a.dim();
    let mut m: Vec<C64> = a.entries().to_vec();
    let mut v = vec![ZERO; n * n];
    for i in 0..n {
        v[i * n + i] = ONE;
    }
    let total: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    let threshold = (f64::EPSILON * f64::EPSILON) * total;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j].norm_sqr())
            .sum();
        if off <= threshold || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phase = apq / mag;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Columns p,q of the step unitary: diag(1, conj(phase)) · [[c, s], [-s, c]].
                let upp = C64::new(c, 0.0);
                let upq = C64::new(s, 0.0);
                let uqp = -phase.conj() * s;
                let uqq = phase.conj() * c;

                for k in 0..n {
                    let mp = m[k * n + p];
                    let mq = m[k * n + q];
                    m[k * n + p] = mp * upp + mq * uqp;
                    m[k * n + q] = mp * upq + mq * uqq;
                }
                for k in 0..n {
                    let mp = m[p * n + k];
                    let mq = m[q * n + k];
                    m[p * n + k] = upp.conj() * mp + uqp.conj() * mq;
                    m[q * n + k] = upq.conj() * mp + uqq.conj() * mq;
                }
                m[p * n + q] = ZERO;
                m[q * n + p] = ZERO;
                m[p * n + p].im = 0.0;
                m[q * n + q].im = 0.0;
                for k in 0..n {
                    let vp = v[k * n + p];
                    let vq = v[k * n + q];
                    v[k * n + p] = vp * upp + vq * uqp;
                    v[k * n + q] = vp * upq + vq * uqq;
                }
            }
        }
    }

    let pairs = (0..n).map(|k| (m[k * n + k].re, (0..n).map(|i| v[i * n + k]).collect())).collect();
    EigenSystem::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &HermitianMatrix, sys: &EigenSystem) -> f64 {
        sys.values
            .iter()
            .zip(&sys.vectors)
            .map(|(&l, v)| {
                let av = a.apply(v);
                av.iter().zip(v).map(|(x, y)| (x - y * l).norm_sqr()).sum::<f64>().sqrt()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn diagonal_is_sorted_descending() {
        let a = HermitianMatrix::diag(&[1.0, 2.0, 3.0]);
        let sys = eigendecompose(&a).unwrap();
        assert_eq!(sys.values.len(), 3);
        for (got, want) in sys.values.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!(sys.vectors[0][2].norm() > 1.0 - 1e-12);
        assert!(sys.vectors[2][0].norm() > 1.0 - 1e-12);
    }

    #[test]
    fn degenerate_top_eigenvalue() {
        let a = HermitianMatrix::diag(&[1.0, 1.0, -1.0]);
        let sys = eigendecompose(&a).unwrap();
        assert_eq!(sys.values, vec![1.0, 1.0, -1.0]);
        assert_eq!(sys.gap12, 0.0);
    }

    #[test]
    fn scalar_matrix_returns_standard_basis() {
        let a = HermitianMatrix::identity(3).scaled(2.5);
        let sys = eigendecompose(&a).unwrap();
        assert_eq!(sys.gap12, 0.0);
        for (k, v) in sys.vectors.iter().enumerate() {
            assert_eq!(v[k], ONE);
        }
    }

    #[test]
    fn complex_jacobi_converges_for_larger_sizes() {
        let n = 6;
        let mut e = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let x = ((i * 7 + j * 3) % 5) as f64 - 2.0;
                let y = if i == j { 0.0 } else { ((i + 2 * j) % 3) as f64 - 1.0 };
                e[i * n + j] = C64::new(x, if i < j { y } else { -y });
            }
        }
        let a = HermitianMatrix::symmetrized(n, e).unwrap();
        let sys = eigendecompose(&a).unwrap();
        assert!(residual(&a, &sys) < 1e-12 * a.max_abs().max(1.0));
        let tr: f64 = sys.values.iter().sum();
        assert!((tr - a.trace()).abs() < 1e-12);
    }

    #[test]
    fn near_degenerate_uses_accurate_path() {
        let eps = 1e-9;
        let a = HermitianMatrix::new(
            3,
            vec![
                C64::new(1.0, 0.0),
                C64::new(0.0, eps),
                ZERO,
                C64::new(0.0, -eps),
                C64::new(1.0, 0.0),
                ZERO,
                ZERO,
                ZERO,
                C64::new(-1.0, 0.0),
            ],
        )
        .unwrap();
        let sys = eigendecompose(&a).unwrap();
        assert!((sys.gap12 - 2.0 * eps).abs() < 1e-15);
        assert!(residual(&a, &sys) < 1e-14);
    }

    #[test]
    fn rejects_oversized() {
        let a = HermitianMatrix::identity(MAX_DIM + 1);
        assert!(eigendecompose(&a).is_err());
    }
}
