//! Cubic discriminant and its sum-of-squares certificate.
//!
//! For a 3×3 matrix `Z` stack the entries of `I`, `Z` and `Z²` as the three
//! columns of a 9×3 matrix, rows ordered row-major:
//! `(1,1), (1,2), (1,3), (2,1), …, (3,3)`. For normal `Z` the squared moduli
//! of its 84 maximal minors sum to `|δ(Z)|`.

use std::collections::BTreeMap;

use super::{HermitianMatrix, C64};
use crate::error::{Error, Result};

/// A matrix position `(row, col)`, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair(pub u8, pub u8);

impl IndexPair {
    fn from_row(r: usize) -> Self {
        IndexPair((r / 3 + 1) as u8, (r % 3 + 1) as u8)
    }

    fn row(self) -> usize {
        (self.0 as usize - 1) * 3 + (self.1 as usize - 1)
    }
}

impl std::fmt::Display for IndexPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Three index pairs in increasing row-major order.
pub type MinorIndex = [IndexPair; 3];

#[derive(Debug, Clone)]
pub struct SosCertificate {
    /// `Σ |M_ν|²`.
    pub total: f64,
    /// `|M_ν|²` for all 84 choices of three rows.
    pub minors: BTreeMap<MinorIndex, f64>,
}

impl SosCertificate {
    /// Looks up a minor by its three positions given in any order.
    pub fn minor(&self, pairs: [(u8, u8); 3]) -> Option<f64> {
        let mut key = pairs.map(|(i, j)| IndexPair(i, j));
        key.sort();
        self.minors.get(&key).copied()
    }
}

fn require3(a: &HermitianMatrix) -> Result<()> {
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: a.dim() });
    }
    Ok(())
}

/// `Π_{i<j} (λ_i − λ_j)²` through the characteristic polynomial.
///
/// With `λ³ + a₁λ² + a₂λ + a₃ = det(λI − A)` this is
/// `−(27a₃² + 18a₁a₂a₃ − 4a₁³a₃ + 4a₂³ − a₁²a₂²)`. The traceless part is
/// used, which leaves the value unchanged and avoids cancellation.
pub fn discriminant3(a: &HermitianMatrix) -> Result<f64> {
    require3(a)?;
    let b = a.traceless();
    let m = b.entries();
    let a1 = -b.trace();
    let sq: f64 = m.iter().map(|z| z.norm_sqr()).sum();
    // tr(B²) = ‖B‖_F² for hermitian B.
    let a2 = (a1 * a1 - sq) / 2.0;
    let a3 = -super::eigen::det3(m).re;
    Ok(-(27.0 * a3 * a3 + 18.0 * a1 * a2 * a3 - 4.0 * a1.powi(3) * a3 + 4.0 * a2.powi(3) - a1 * a1 * a2 * a2))
}

/// The 9×3 matrix rows `[I_r, Z_r, (Z²)_r]`.
fn stacked_rows(z: &HermitianMatrix) -> [[C64; 3]; 9] {
    let z2 = z.matmul(z);
    let mut rows = [[C64::new(0.0, 0.0); 3]; 9];
    for (r, row) in rows.iter_mut().enumerate() {
        let diag = if r / 3 == r % 3 { 1.0 } else { 0.0 };
        *row = [C64::new(diag, 0.0), z.entries()[r], z2[r]];
    }
    rows
}

/// Squared moduli of all 84 minors, in lexicographic row order, by cofactor
/// expansion along the identity column using the 36 precomputed 2×2 minors.
fn minor_moduli(z: &HermitianMatrix) -> impl Iterator<Item = ((usize, usize, usize), f64)> {
    let rows = stacked_rows(z);
    let mut m2 = [[C64::new(0.0, 0.0); 9]; 9];
    for a in 0..9 {
        for b in (a + 1)..9 {
            m2[a][b] = rows[a][1] * rows[b][2] - rows[a][2] * rows[b][1];
        }
    }
    (0..9).flat_map(move |a| {
        ((a + 1)..9).flat_map(move |b| {
            ((b + 1)..9).map(move |c| {
                let det = rows[a][0] * m2[b][c] - rows[b][0] * m2[a][c] + rows[c][0] * m2[a][b];
                ((a, b, c), det.norm_sqr())
            })
        })
    })
}

pub fn sos_certificate(z: &HermitianMatrix) -> Result<SosCertificate> {
    require3(z)?;
    let mut minors = BTreeMap::new();
    let mut total = 0.0;
    for ((a, b, c), v) in minor_moduli(z) {
        total += v;
        minors.insert([IndexPair::from_row(a), IndexPair::from_row(b), IndexPair::from_row(c)], v);
    }
    Ok(SosCertificate { total, minors })
}

/// `Σ |M_ν|²` without building the map; used by dense certification grids.
pub fn sos_total(z: &HermitianMatrix) -> Result<f64> {
    require3(z)?;
    Ok(minor_moduli(z).map(|(_, v)| v).sum())
}

/// Single minor `|M_ν|²`, rows given as 1-based positions.
pub fn sos_minor(z: &HermitianMatrix, pairs: [(u8, u8); 3]) -> Result<f64> {
    require3(z)?;
    let mut rs = pairs.map(|(i, j)| IndexPair(i, j).row());
    rs.sort_unstable();
    if rs.iter().any(|&r| r >= 9) || rs[0] == rs[1] || rs[1] == rs[2] {
        return Err(Error::InvalidMatrix(format!("invalid minor rows {pairs:?}")));
    }
    let rows = stacked_rows(z);
    let m = nalgebra::Matrix3::from_fn(|i, j| rows[rs[i]][j]);
    Ok(m.determinant().norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_examples() {
        assert!((discriminant3(&HermitianMatrix::diag(&[1.0, 2.0, 3.0])).unwrap() - 4.0).abs() < 1e-12);
        assert!(discriminant3(&HermitianMatrix::diag(&[1.0, 1.0, -1.0])).unwrap().abs() < 1e-12);
    }

    #[test]
    fn wrong_dimension() {
        let a = HermitianMatrix::identity(2);
        assert!(matches!(discriminant3(&a), Err(Error::DimensionMismatch { .. })));
        assert!(sos_certificate(&a).is_err());
    }

    #[test]
    fn certificate_has_84_minors() {
        let cert = sos_certificate(&HermitianMatrix::diag(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(cert.minors.len(), 84);
        assert!((cert.total - 4.0).abs() < 1e-12);
        // Only the diagonal rows carry information for a diagonal matrix.
        let v = cert.minor([(3, 3), (1, 1), (2, 2)]).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn single_minor_agrees_with_map() {
        let z = HermitianMatrix::new(
            3,
            vec![
                C64::new(0.3, 0.0),
                C64::new(1.0, -0.2),
                C64::new(0.0, 0.7),
                C64::new(1.0, 0.2),
                C64::new(-1.1, 0.0),
                C64::new(0.4, 0.0),
                C64::new(0.0, -0.7),
                C64::new(0.4, 0.0),
                C64::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let cert = sos_certificate(&z).unwrap();
        for (k, &v) in &cert.minors {
            let direct = sos_minor(&z, k.map(|p| (p.0, p.1))).unwrap();
            assert!((direct - v).abs() <= 1e-12 * v.max(1.0));
        }
        assert!((sos_total(&z).unwrap() - cert.total).abs() < 1e-12);
    }
}
