//! Incidence structure of the large faces of a corner-free body: every two
//! faces meet in exactly one point, no point lies on three faces, and there
//! is at most one segment.
//!
//! Each pairwise intersection is computed twice. Algebraically, the top
//! eigenspaces of two faces are planes in ℂ³ that meet in a line spanned by
//! the conjugated cross product of the two bottom eigenvectors; its state
//! maps to the common point. Geometrically, both faces are intersected with
//! the line where their supporting planes meet.

use serde::{Deserialize, Serialize};

use crate::hermitian::C64;
use crate::pencil::{cross3, dist, norm, Ellipsoid, FaceDescriptor, FaceKind, MatrixTuple};
use crate::sphere::golden_section;
use crate::tolerances::Tolerances;

/// Chords shorter than this (relative to scale) count as a single point.
pub const UNIQUE_CHORD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairIntersection {
    pub faces: (usize, usize),
    pub intersects: bool,
    pub unique: bool,
    /// Point from the common pure state of the two top eigenspaces.
    pub algebraic_point: Option<Vec<f64>>,
    /// Point from intersecting the faces along the common line of their planes.
    pub geometric_point: Option<Vec<f64>>,
    pub chord_length: f64,
    /// Largest distance of the algebraic point to either face.
    pub algebraic_residual: f64,
    /// The two routes agree.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub pairs: Vec<PairIntersection>,
    /// Triples `(i, j, k)` where the point of `i ∩ j` also lies on face `k`.
    pub triple_points: Vec<(usize, usize, usize)>,
    pub segment_count: usize,
    pub violations: Vec<String>,
    pub passed: bool,
}

fn conj_cross(a: &[C64], b: &[C64]) -> Vec<C64> {
    let (a, b): (Vec<C64>, Vec<C64>) = (a.iter().map(|z| z.conj()).collect(), b.iter().map(|z| z.conj()).collect());
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Unit vector orthogonal to the top eigenspace of a face of a 3×3 tuple.
fn bottom_vector(face: &FaceDescriptor) -> Option<Vec<C64>> {
    if face.basis.len() != 2 {
        return None;
    }
    let v = conj_cross(&face.basis[0], &face.basis[1]);
    let n = crate::hermitian::cnorm(&v);
    (n > 0.5).then(|| v.iter().map(|z| z / n).collect())
}

fn algebraic_point(f: &MatrixTuple, a: &FaceDescriptor, b: &FaceDescriptor) -> Option<Vec<f64>> {
    let qa = bottom_vector(a)?;
    let qb = bottom_vector(b)?;
    let x = conj_cross(&qa, &qb);
    let n = crate::hermitian::cnorm(&x);
    if n < 1e-8 {
        return None;
    }
    let x: Vec<C64> = x.iter().map(|z| z / n).collect();
    Some(f.expectation(&x))
}

struct Geometric {
    min: f64,
    point: Vec<f64>,
    chord: f64,
}

/// Intersection of two faces along the line where their planes meet.
fn geometric(a: &FaceDescriptor, b: &FaceDescriptor, scale: f64, tol: f64) -> Option<Geometric> {
    let dir = cross3(&a.normal, &b.normal);
    let dn = norm(&dir);
    if dn < 1e-9 {
        return None;
    }
    let dir: Vec<f64> = dir.iter().map(|x| x / dn).collect();
    // Base point: on both planes, orthogonal to the line direction.
    let m = nalgebra::Matrix3::from_row_slice(&[
        a.normal[0],
        a.normal[1],
        a.normal[2],
        b.normal[0],
        b.normal[1],
        b.normal[2],
        dir[0],
        dir[1],
        dir[2],
    ]);
    let base = m.lu().solve(&nalgebra::Vector3::new(a.support_value, b.support_value, 0.0))?;
    let line = |s: f64| -> Vec<f64> { (0..3).map(|i| base[i] + s * dir[i]).collect() };
    let (ea, eb): (Ellipsoid, Ellipsoid) = (a.ellipsoid(), b.ellipsoid());
    let gap = |s: f64| ea.distance(&line(s)).max(eb.distance(&line(s)));
    let reach = |e: &Ellipsoid| dist(&e.center, base.as_slice()) + e.axes.iter().map(|x| norm(x)).sum::<f64>();
    let half = reach(&ea).min(reach(&eb)) + scale;
    let (s0, g0) = golden_section(gap, -half, half, 1e-13 * half);
    let thr = (tol * scale).max(2.0 * g0);
    let edge = |towards: f64| {
        let (mut inside, mut outside) = (s0, s0 + towards * half * 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if gap(mid) <= thr {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let (lo, hi) = if g0 <= thr { (edge(-1.0), edge(1.0)) } else { (s0, s0) };
    Some(Geometric { min: g0, point: line(s0), chord: hi - lo })
}

pub fn check_intersection_structure(f: &MatrixTuple, faces: &[FaceDescriptor]) -> StructureReport {
    check_intersection_structure_with(f, faces, &Tolerances::default())
}

pub fn check_intersection_structure_with(
    f: &MatrixTuple,
    faces: &[FaceDescriptor],
    tol: &Tolerances,
) -> StructureReport {
    let scale = f.scale();
    let incid = tol.face_tol * scale;
    let mut pairs = Vec::new();
    let mut violations = Vec::new();
    for i in 0..faces.len() {
        for j in (i + 1)..faces.len() {
            let (a, b) = (&faces[i], &faces[j]);
            let alg = algebraic_point(f, a, b);
            let alg_res =
                alg.as_ref().map_or(f64::INFINITY, |p| a.ellipsoid().distance(p).max(b.ellipsoid().distance(p)));
            let geo = geometric(a, b, scale, 1e-9);
            let intersects = geo.as_ref().is_some_and(|g| g.min <= incid);
            let chord = geo.as_ref().map_or(0.0, |g| g.chord);
            let unique = intersects && chord <= UNIQUE_CHORD * scale;
            let consistent = match (&alg, &geo) {
                (Some(p), Some(g)) if intersects => alg_res <= incid && dist(p, &g.point) <= 0.5 * chord + incid,
                _ => !intersects && alg_res > incid,
            };
            if !intersects {
                violations.push(format!("faces {i} and {j} do not intersect"));
            } else if !unique {
                violations.push(format!("faces {i} and {j} share a chord of length {chord:.3e}"));
            }
            if !consistent {
                violations.push(format!("faces {i} and {j}: algebraic and geometric intersections disagree"));
            }
            pairs.push(PairIntersection {
                faces: (i, j),
                intersects,
                unique,
                algebraic_point: alg,
                geometric_point: geo.map(|g| g.point),
                chord_length: chord,
                algebraic_residual: if alg_res.is_finite() { alg_res } else { -1.0 },
                consistent,
            });
        }
    }
    let mut triple_points = Vec::new();
    for p in &pairs {
        let Some(x) = &p.algebraic_point else { continue };
        for (k, face) in faces.iter().enumerate() {
            if k != p.faces.0 && k != p.faces.1 && face.ellipsoid().distance(x) <= incid {
                let mut t = [p.faces.0, p.faces.1, k];
                t.sort_unstable();
                let t = (t[0], t[1], t[2]);
                if !triple_points.contains(&t) {
                    violations.push(format!("faces {} {} {} share a point", t.0, t.1, t.2));
                    triple_points.push(t);
                }
            }
        }
    }
    let segment_count = faces.iter().filter(|f| f.kind == FaceKind::Segment).count();
    if segment_count > 1 {
        violations.push(format!("{segment_count} segment faces without a corner"));
    }
    StructureReport { passed: violations.is_empty(), pairs, triple_points, segment_count, violations }
}
