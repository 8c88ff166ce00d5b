//! Corner points. A corner forces a common eigenvector `x` of all `Fᵢ`; the
//! tuple then splits as a block sum along `x` and its complement, and the
//! point of `x` is a corner exactly when it lies outside the range of the
//! complementary block.

use crate::error::{Error, Result};
use crate::hermitian::{cnorm, C64};
use crate::pencil::{bloch, Ellipsoid, MatrixTuple};
use crate::tolerances::Tolerances;

/// Relative eigenvalue distance below which probe eigenvalues are grouped.
const CLUSTER_TOL: f64 = 1e-7;
/// Relative residual for the joint-eigenspace test.
const JOINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Corner {
    pub point: Vec<f64>,
    /// Orthonormal basis of the joint eigenspace producing the corner.
    pub eigenspace: Vec<Vec<C64>>,
    /// Compression of the tuple to the orthogonal complement, if nonzero.
    pub block: Option<MatrixTuple>,
    /// Range of `block` (a point, segment, ellipse or ellipsoid).
    pub block_range: Option<Ellipsoid>,
    /// Distance from `point` to `block_range`.
    pub distance: f64,
}

/// Fixed, deliberately irregular probe directions.
fn probe(n: usize, k: usize) -> Vec<f64> {
    (0..n).map(|i| ((i as f64 + 1.0) * (0.7548776662 + 0.3 * k as f64) + 0.5698402910 * k as f64).sin() + 0.1).collect()
}

struct JointSpace {
    basis: Vec<Vec<C64>>,
    complement: Vec<Vec<C64>>,
}

/// Joint eigenspaces of all `Fᵢ`, found as eigenspaces of a generic
/// combination that every `Fᵢ` leaves invariant and acts on as a scalar.
fn joint_eigenspaces(f: &MatrixTuple) -> Result<Vec<JointSpace>> {
    let t = f.traceless();
    let scale = f.scale();
    let mut best = Vec::new();
    for k in 0..4 {
        let v = probe(f.n(), k);
        let sys = crate::hermitian::HermitianMatrix::linear_combination(&v, t.matrices())?.eigen()?;
        let d = sys.dim();
        let spread = (sys.values[0] - sys.values[d - 1]).max(scale * 1e-300);
        let mut groups: Vec<Vec<usize>> = vec![vec![0]];
        for i in 1..d {
            if sys.values[i - 1] - sys.values[i] <= CLUSTER_TOL * spread {
                groups.last_mut().unwrap().push(i);
            } else {
                groups.push(vec![i]);
            }
        }
        let mut found = Vec::new();
        let mut clean = true;
        for g in &groups {
            let basis: Vec<Vec<C64>> = g.iter().map(|&i| sys.vectors[i].clone()).collect();
            if is_joint(f, &basis, JOINT_TOL * scale) {
                let complement = (0..d).filter(|i| !g.contains(i)).map(|i| sys.vectors[i].clone()).collect();
                found.push(JointSpace { basis, complement });
            } else if g.len() > 1 {
                clean = false;
            }
        }
        best = found;
        if clean {
            break;
        }
    }
    Ok(best)
}

/// Every `Fᵢ` maps each basis vector `e` to `cᵢe` with the same `cᵢ`.
fn is_joint(f: &MatrixTuple, basis: &[Vec<C64>], tol: f64) -> bool {
    f.matrices().iter().all(|m| {
        let c = m.quadratic_form(&basis[0]);
        basis.iter().all(|e| {
            let r: Vec<C64> = m.apply(e).iter().zip(e).map(|(a, b)| a - b * c).collect();
            cnorm(&r) <= tol
        })
    })
}

/// The range of a tuple of size at most 2 as an ellipsoid.
fn small_range(g: &MatrixTuple, scale: f64) -> Result<Ellipsoid> {
    match g.d() {
        1 => Ok(Ellipsoid { center: g.matrices().iter().map(|m| m.get(0, 0).re).collect(), axes: vec![] }),
        2 => {
            let (center, map): (Vec<f64>, Vec<[f64; 3]>) = g.matrices().iter().map(bloch).unzip();
            Ok(Ellipsoid::from_bloch(center, &map, 1e-9, 1e-12 * scale))
        }
        d => Err(Error::WrongDimension { required: 2, actual: d }),
    }
}

pub fn find_corners(f: &MatrixTuple) -> Result<Vec<Corner>> {
    find_corners_with(f, &Tolerances::default())
}

/// Corner points of `L(F)` for `d ≤ 3`.
pub fn find_corners_with(f: &MatrixTuple, tol: &Tolerances) -> Result<Vec<Corner>> {
    if f.d() > 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.d() });
    }
    let scale = f.scale();
    let mut corners = Vec::new();
    for js in joint_eigenspaces(f)? {
        let point = f.expectation(&js.basis[0]);
        if js.complement.is_empty() {
            corners.push(Corner {
                point,
                eigenspace: js.basis,
                block: None,
                block_range: None,
                distance: f64::INFINITY,
            });
            continue;
        }
        let block = f.compress(&js.complement);
        let range = small_range(&block, scale)?;
        let distance = range.distance(&point);
        if distance > tol.face_tol * scale {
            corners.push(Corner {
                point,
                eigenspace: js.basis,
                block: Some(block),
                block_range: Some(range),
                distance,
            });
        }
    }
    corners.sort_by(|a, b| a.point.partial_cmp(&b.point).unwrap());
    Ok(corners)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianMatrix;

    #[test]
    fn diagonal_triple_has_three_corners() {
        let f = MatrixTuple::new(vec![
            HermitianMatrix::diag(&[0.0, 0.0, -1.0]),
            HermitianMatrix::diag(&[0.0, -1.0, 0.0]),
            HermitianMatrix::diag(&[0.3, 0.1, 0.2]),
        ])
        .unwrap();
        let c = find_corners(&f).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn interior_common_eigenvector_is_not_a_corner() {
        // e₁ maps to the centre of the Bloch ball of the lower block.
        let s = |rows: [[f64; 3]; 3]| HermitianMatrix::from_real(3, &rows.concat()).unwrap();
        let f = MatrixTuple::new(vec![
            s([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]),
            s([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
            HermitianMatrix::new(
                3,
                vec![
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, -1.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 1.0),
                    C64::new(0.0, 0.0),
                ],
            )
            .unwrap(),
        ])
        .unwrap();
        assert!(find_corners(&f).unwrap().is_empty());
    }
}
