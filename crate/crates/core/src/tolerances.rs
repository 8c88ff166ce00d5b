//! Numerical thresholds shared by the geometry, classification and
//! certification code. Everything except the counts and angles is relative
//! to a scale supplied at the call site.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Top eigenvalue counts as degenerate below `gap_tol` times the spectral spread.
    pub gap_tol: f64,
    /// Lattice points whose gap is below `gap_seed · scale` start a local search.
    pub gap_seed: f64,
    /// Singular values below `rank_tol · σ_max` count as zero in `dim_L`.
    pub rank_tol: f64,
    /// Rank threshold for the Bloch map of a face. Looser than `rank_tol`
    /// because segment normals are only located to about `sqrt(eps)`.
    pub face_rank_tol: f64,
    /// Normals closer than this (radians) are merged.
    pub angle_tol: f64,
    /// Lattice size of the normal-sphere scan.
    pub n_scan: usize,
    /// Grid size of the certification sweep.
    pub n_cert: usize,
    /// Certification passes when the minimum exceeds `cert_floor · scale⁶`.
    pub cert_floor: f64,
    /// Half-angle (radians) of the caps excluded around known normals.
    pub angle_excl: f64,
    /// Discriminant bound at face normals, times `scale⁶`.
    pub disc_tol: f64,
    /// Distance tolerance for point/face incidences, times scale.
    pub face_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap_tol: 1e-8,
            gap_seed: 1e-2,
            rank_tol: 1e-8,
            face_rank_tol: 1e-6,
            angle_tol: 1e-4,
            n_scan: 20_000,
            n_cert: 1_000_000,
            cert_floor: 1e-12,
            angle_excl: 0.05,
            disc_tol: 1e-12,
            face_tol: 1e-6,
        }
    }
}
