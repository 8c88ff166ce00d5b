//! Numerical certificate that no large face was missed.
//!
//! The discriminant of `F(u)` vanishes exactly where two eigenvalues meet.
//! On a 3×3 pencil that happens at `u` when the top pair is degenerate and
//! at `-u` when the bottom pair is, so the sum of squared minors is bounded
//! away from zero everywhere outside small caps around `±` the known
//! degenerate normals. Inside the caps around `-n` the discriminant is small
//! for the wrong reason; there the top gap itself is checked instead.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scan::{check_shape, LargeFaceSet};
use crate::error::Result;
use crate::hermitian::{sos_total, HermitianMatrix};
use crate::pencil::{dot, MatrixTuple};
use crate::sphere::{chart, fibonacci_point, lattice_spacing, nelder_mead_2d, tangent_basis};
use crate::tolerances::Tolerances;

/// Relative top gap required inside the antipodal caps.
pub const CAP_GAP_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CertStatus {
    Pass,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub status: CertStatus,
    /// Minimum of `Σ|M_ν|² / scale⁶` outside all caps, over the grid and
    /// local descents from its lowest points.
    pub min_sos: f64,
    /// Direction attaining `min_sos`.
    pub min_direction: Option<Vec<f64>>,
    /// Minimum relative top gap over grid points in antipodal caps.
    pub min_cap_gap: Option<f64>,
    pub grid_size: usize,
    /// Grid points skipped inside caps around known normals.
    pub excluded: usize,
    pub floor: f64,
    pub cap_half_angle: f64,
}

/// Grid minima that seed the local refinement.
const REFINE_SEEDS: usize = 32;

#[derive(Clone)]
struct Acc {
    /// Lowest `(sos, index)` pairs outside the caps, ascending.
    lowest: Vec<(f64, usize)>,
    min_gap: (f64, usize),
    excluded: usize,
}

impl Acc {
    fn empty() -> Acc {
        Acc { lowest: Vec::new(), min_gap: (f64::INFINITY, usize::MAX), excluded: 0 }
    }

    fn push(&mut self, v: (f64, usize)) {
        if self.lowest.len() == REFINE_SEEDS && v >= *self.lowest.last().unwrap() {
            return;
        }
        let at = self.lowest.partition_point(|x| *x < v);
        self.lowest.insert(at, v);
        self.lowest.truncate(REFINE_SEEDS);
    }

    fn merge(mut a: Acc, b: Acc) -> Acc {
        for v in b.lowest {
            a.push(v);
        }
        if b.min_gap < a.min_gap {
            a.min_gap = b.min_gap;
        }
        a.excluded += b.excluded;
        a
    }
}

pub fn certify_no_other_faces(f: &MatrixTuple, known: &LargeFaceSet) -> Result<CertificationReport> {
    certify_no_other_faces_with(f, known, &Tolerances::default())
}

pub fn certify_no_other_faces_with(
    f: &MatrixTuple,
    known: &LargeFaceSet,
    tol: &Tolerances,
) -> Result<CertificationReport> {
    check_shape(f)?;
    let scale = f.scale();
    // Scaling to unit size makes every threshold below absolute.
    let g = MatrixTuple::new(f.traceless().matrices().iter().map(|m| m.scaled(1.0 / scale)).collect())?;
    let normals: Vec<Vec<f64>> = known.normals().map(|n| n.to_vec()).collect();
    let cos_cap = tol.angle_excl.cos();
    let n = tol.n_cert;

    let in_caps = |u: &[f64]| normals.iter().map(|v| dot(v, u)).fold(0.0_f64, |m, c| m.max(c.abs())) > cos_cap;
    let sos_at = |u: &[f64]| {
        sos_total(&HermitianMatrix::linear_combination(u, g.matrices()).expect("matching lengths")).expect("3x3")
    };

    let acc = (0..n)
        .into_par_iter()
        .fold(Acc::empty, |mut acc, k| {
            let u = fibonacci_point(k, n);
            let in_cap = normals.iter().any(|v| dot(v, &u) > cos_cap);
            let in_anti = normals.iter().any(|v| -dot(v, &u) > cos_cap);
            if in_cap {
                acc.excluded += 1;
            } else if in_anti {
                acc.excluded += 1;
                let m = HermitianMatrix::linear_combination(&u, g.matrices()).expect("matching lengths");
                let gap = m.eigen().map(|s| s.gap12).unwrap_or(0.0);
                if (gap, k) < acc.min_gap {
                    acc.min_gap = (gap, k);
                }
            } else {
                acc.push((sos_at(&u), k));
            }
            acc
        })
        .reduce(Acc::empty, Acc::merge);

    // The minimum vanishes only quadratically around a missed degenerate
    // normal, so the grid alone can step over it; descend from the lowest
    // grid points without entering the caps.
    let step = lattice_spacing(n);
    let refined = acc
        .lowest
        .par_iter()
        .map(|&(v, k)| {
            let u = fibonacci_point(k, n);
            let (t1, t2) = tangent_basis(&u);
            let obj = |x: [f64; 2]| {
                let w = chart(&u, &t1, &t2, x);
                if in_caps(&w) {
                    f64::INFINITY
                } else {
                    sos_at(&w)
                }
            };
            let (x, fx) = nelder_mead_2d(obj, [0.0, 0.0], step, 1e-12, 400);
            if fx < v {
                (fx, chart(&u, &t1, &t2, x))
            } else {
                (v, u)
            }
        })
        .min_by(|a, b| a.0.total_cmp(&b.0));

    let min_cap_gap = (acc.min_gap.1 != usize::MAX).then_some(acc.min_gap.0);
    let pass = refined.is_some_and(|(v, _)| v > tol.cert_floor) && min_cap_gap.is_none_or(|g| g > CAP_GAP_FLOOR);
    Ok(CertificationReport {
        status: if pass { CertStatus::Pass } else { CertStatus::Inconclusive },
        min_sos: refined.map_or(0.0, |r| r.0),
        min_direction: refined.map(|r| r.1.to_vec()),
        min_cap_gap,
        grid_size: n,
        excluded: acc.excluded,
        floor: tol.cert_floor,
        cap_half_angle: tol.angle_excl,
    })
}
