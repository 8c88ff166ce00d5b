//! Configuration labels for ranges of triples of 3×3 hermitian matrices.
//!
//! A three-dimensional range without corners has `e` ellipse faces and `s`
//! segment faces with `(e, s)` among eight admissible pairs. With a corner
//! the segments come in a continuum and the label is `(0,∞)` or `(1,∞)`.
//! Flat ranges are labelled by their number of boundary segments.

mod certify;
mod corners;
mod scan;
mod structure;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use certify::{
    certify_no_other_faces, certify_no_other_faces_with, CertStatus, CertificationReport, CAP_GAP_FLOOR,
};
pub use corners::{find_corners, find_corners_with, Corner};
pub use scan::{scan_large_faces, scan_large_faces_with, LargeFaceSet};
pub use structure::{
    check_intersection_structure, check_intersection_structure_with, PairIntersection, StructureReport, UNIQUE_CHORD,
};

use crate::error::{Error, Result};
use crate::pencil::{affine_hull, AffineHull, FaceKind, MatrixTuple};
use crate::tolerances::Tolerances;

/// The corner-free `(e, s)` pairs that occur for three-dimensional ranges.
pub const ADMISSIBLE: [(u32, u32); 8] = [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1), (1, 1), (2, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentCount {
    Finite(u32),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigurationLabel {
    /// Number of matrices in the classified tuple.
    pub ambient: usize,
    pub dim: usize,
    pub e: u32,
    pub s: SegmentCount,
    pub corner: bool,
}

impl ConfigurationLabel {
    pub fn class_name(&self) -> String {
        match (self.dim, self.s) {
            (3, SegmentCount::Infinite) => format!("({},∞)", self.e),
            (3, SegmentCount::Finite(0)) if self.e == 0 => "oval(0,0)".to_string(),
            (3, SegmentCount::Finite(s)) => format!("({},{s})", self.e),
            (2, SegmentCount::Finite(s)) => format!("dim2-s{s}"),
            (2, SegmentCount::Infinite) => "dim2-s∞".to_string(),
            (d, _) => format!("dim{d}"),
        }
    }

    /// Full-dimensional in its ambient space with smooth boundary.
    pub fn is_oval(&self) -> bool {
        self.dim == self.ambient && self.e == 0 && self.s == SegmentCount::Finite(0) && !self.corner
    }

    /// One of the eight corner-free classes or the two corner classes.
    pub fn is_canonical_ten(&self) -> bool {
        self.dim == 3
    }
}

impl fmt::Display for ConfigurationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.class_name())
    }
}

/// Classifier output with the evidence behind the label.
#[derive(Debug, Clone)]
pub struct Classification {
    pub label: ConfigurationLabel,
    /// The tuple after padding to three matrices.
    pub tuple: MatrixTuple,
    pub hull: AffineHull,
    pub faces: LargeFaceSet,
    pub corners: Vec<Corner>,
}

pub fn classify(f: &MatrixTuple) -> Result<Classification> {
    classify_with(f, &Tolerances::default())
}

/// Classifies `L(F)` for `d = 3` and `n ≤ 3`; shorter tuples are padded
/// with zero matrices, which changes neither the shape nor the label.
pub fn classify_with(f: &MatrixTuple, tol: &Tolerances) -> Result<Classification> {
    if f.d() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.d() });
    }
    if f.n() > 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.n() });
    }
    let ambient = f.n();
    let g = f.padded(3);
    let hull = affine_hull(&g, tol.rank_tol);
    let dim = hull.dim;
    let label = |e, s, corner| ConfigurationLabel { ambient, dim, e, s, corner };

    if dim <= 1 {
        return Ok(Classification {
            label: label(0, SegmentCount::Finite(0), true),
            tuple: g,
            hull,
            faces: LargeFaceSet::default(),
            corners: Vec::new(),
        });
    }

    let corners = find_corners_with(&g, tol)?;

    if dim == 2 {
        let normals = scan::scan_circle(&g.traceless(), &hull.directions[0], &hull.directions[1], tol);
        let faces = scan::collect_faces(&g, normals, tol, 2)?;
        let s = faces.count(FaceKind::Segment) as u32;
        if s > 3 {
            return Err(Error::InternalInconsistency(format!("flat range with {s} boundary segments")));
        }
        let corner = !corners.is_empty();
        return Ok(Classification { label: label(0, SegmentCount::Finite(s), corner), tuple: g, hull, faces, corners });
    }

    if !corners.is_empty() {
        if corners.len() > 1 {
            return Err(Error::InternalInconsistency(format!(
                "{} corners in a three-dimensional range",
                corners.len()
            )));
        }
        let rank = corners[0].block_range.as_ref().map_or(0, |r| r.rank());
        let e = match rank {
            3 => 0,
            2 => 1,
            r => {
                return Err(Error::InternalInconsistency(format!(
                    "corner over a block of rank {r} in a three-dimensional range"
                )))
            }
        };
        return Ok(Classification {
            label: label(e, SegmentCount::Infinite, true),
            tuple: g,
            hull,
            faces: LargeFaceSet::default(),
            corners,
        });
    }

    let faces = scan_large_faces_with(&g, tol)?;
    let e = faces.count(FaceKind::Ellipse) as u32;
    let s = faces.count(FaceKind::Segment) as u32;
    if !ADMISSIBLE.contains(&(e, s)) {
        return Err(Error::InternalInconsistency(format!(
            "corner-free range with (e,s) = ({e},{s}) is not admissible"
        )));
    }
    Ok(Classification { label: label(e, SegmentCount::Finite(s), false), tuple: g, hull, faces, corners })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_names() {
        let l = |dim, e, s, corner| ConfigurationLabel { ambient: 3, dim, e, s, corner };
        assert_eq!(l(3, 0, SegmentCount::Finite(0), false).class_name(), "oval(0,0)");
        assert_eq!(l(3, 2, SegmentCount::Finite(1), false).class_name(), "(2,1)");
        assert_eq!(l(3, 1, SegmentCount::Infinite, true).class_name(), "(1,∞)");
        assert_eq!(l(2, 0, SegmentCount::Finite(3), true).class_name(), "dim2-s3");
        assert_eq!(l(0, 0, SegmentCount::Finite(0), true).class_name(), "dim0");
        assert!(l(3, 0, SegmentCount::Finite(0), false).is_oval());
        assert!(!l(2, 0, SegmentCount::Finite(0), false).is_oval());
    }
}
