//! Search for large faces: directions where the top eigenvalue of `F(u)` is
//! degenerate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::pencil::{affine_hull, angle_between, exposed_face, ExposedFace, FaceDescriptor, FaceKind, MatrixTuple};
use crate::sphere::{
    chart, fibonacci_sphere, golden_section, lattice_spacing, nelder_mead_2d, tangent_basis, NeighborGrid,
};
use crate::tolerances::Tolerances;

/// Large faces of a three-dimensional range.
#[derive(Debug, Clone, Default)]
pub struct LargeFaceSet {
    /// Segment and ellipse faces, ordered by kind then normal.
    pub faces: Vec<FaceDescriptor>,
    /// Normals with a degenerate top eigenvalue that expose a single point.
    pub point_normals: Vec<Vec<f64>>,
}

impl LargeFaceSet {
    pub fn count(&self, kind: FaceKind) -> usize {
        self.faces.iter().filter(|f| f.kind == kind).count()
    }

    pub fn normals(&self) -> impl Iterator<Item = &[f64]> {
        self.faces.iter().map(|f| f.normal.as_slice()).chain(self.point_normals.iter().map(|v| v.as_slice()))
    }
}

/// Top gap and spectral spread of `F(u)` for a traceless 3-tuple.
pub(crate) fn gap_and_spread(f: &MatrixTuple, u: &[f64]) -> (f64, f64) {
    let m = HermitianMatrix::linear_combination(u, f.matrices()).expect("matching lengths");
    match m.eigen() {
        Ok(sys) => (sys.gap12, sys.values[0] - sys.values[sys.dim() - 1]),
        Err(_) => (f64::INFINITY, 1.0),
    }
}

fn gap(f: &MatrixTuple, u: &[f64]) -> f64 {
    gap_and_spread(f, u).0
}

pub(crate) fn check_shape(f: &MatrixTuple) -> Result<()> {
    if f.d() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.d() });
    }
    if f.n() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: f.n() });
    }
    Ok(())
}

pub fn scan_large_faces(f: &MatrixTuple) -> Result<LargeFaceSet> {
    scan_large_faces_with(f, &Tolerances::default())
}

pub fn scan_large_faces_with(f: &MatrixTuple, tol: &Tolerances) -> Result<LargeFaceSet> {
    check_shape(f)?;
    let dim = affine_hull(f, tol.rank_tol).dim;
    if dim != 3 {
        return Err(Error::WrongDimension { required: 3, actual: dim });
    }
    let t = f.traceless();
    let scale = f.scale();

    let lattice = fibonacci_sphere(tol.n_scan);
    let gaps: Vec<f64> = lattice.par_iter().map(|u| gap(&t, u)).collect();
    let spacing = lattice_spacing(tol.n_scan);
    let radius = 1.8 * spacing;
    let grid = NeighborGrid::new(&lattice, radius);
    let seeds: Vec<usize> = (0..lattice.len())
        .into_par_iter()
        .filter(|&i| {
            gaps[i] < tol.gap_seed * scale
                || grid.within(&lattice, &lattice[i], radius).into_iter().all(|j| j == i || gaps[i] <= gaps[j])
        })
        .collect();

    let refined: Vec<([f64; 3], f64, f64)> = seeds
        .par_iter()
        .map(|&i| {
            let (u, g) = refine(&t, lattice[i], gaps[i], spacing);
            let (_, spread) = gap_and_spread(&t, &u);
            (u, g, spread)
        })
        .collect();

    let mut hits: Vec<([f64; 3], f64)> =
        refined.into_iter().filter(|&(_, g, spread)| g <= tol.gap_tol * spread).map(|(u, g, _)| (u, g)).collect();
    hits.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.partial_cmp(&b.0).unwrap()));
    let normals = cluster(hits.into_iter().map(|h| h.0.to_vec()), tol.angle_tol);
    collect_faces(f, normals, tol, 3)
}

/// Builds faces for the given degenerate normals, splitting off point faces.
pub(crate) fn collect_faces(
    f: &MatrixTuple,
    normals: Vec<Vec<f64>>,
    tol: &Tolerances,
    body_dim: usize,
) -> Result<LargeFaceSet> {
    let mut set = LargeFaceSet::default();
    for u in normals {
        match exposed_face(f, &u, tol)? {
            ExposedFace::Full => {
                return Err(Error::InternalInconsistency(format!(
                    "F(u) is scalar at {u:?}; reduce the tuple affinely first"
                )))
            }
            ExposedFace::Face(face) => match face.kind {
                FaceKind::Point => set.point_normals.push(face.normal),
                k if k.rank() < body_dim => {
                    // Flat gap valleys can leave two slightly different normals
                    // exposing the same face; the first (smaller gap) one wins.
                    if !set.faces.iter().any(|g| same_face(g, &face, f.scale())) {
                        set.faces.push(face);
                    }
                }
                k => {
                    return Err(Error::InternalInconsistency(format!(
                        "face of kind {k:?} in a body of dimension {body_dim}"
                    )))
                }
            },
        }
    }
    set.faces.sort_by(|a, b| a.kind.rank().cmp(&b.kind.rank()).then_with(|| a.normal.partial_cmp(&b.normal).unwrap()));
    set.point_normals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(set)
}

/// Hausdorff distance of the two faces below `1e-3 · scale`, estimated
/// through their support functions.
fn same_face(a: &FaceDescriptor, b: &FaceDescriptor, scale: f64) -> bool {
    if a.kind != b.kind {
        return false;
    }
    let (ea, eb) = (a.ellipsoid(), b.ellipsoid());
    fibonacci_sphere(64).iter().all(|v| (ea.support(v) - eb.support(v)).abs() <= 1e-3 * scale)
}

/// Greedy angular clustering; earlier entries win.
pub(crate) fn cluster(normals: impl Iterator<Item = Vec<f64>>, angle_tol: f64) -> Vec<Vec<f64>> {
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for u in normals {
        if kept.iter().all(|k| angle_between(k, &u) > angle_tol) {
            kept.push(u);
        }
    }
    kept
}

/// Local descent of the top gap from a lattice seed: Nelder–Mead restarts
/// in shrinking tangent charts, then a kernel polish for ellipse faces.
fn refine(t: &MatrixTuple, seed: [f64; 3], seed_gap: f64, spacing: f64) -> ([f64; 3], f64) {
    let mut u = seed;
    let mut g = seed_gap;
    let mut step = spacing;
    for _ in 0..5 {
        let (t1, t2) = tangent_basis(&u);
        let (x, fx) = nelder_mead_2d(|x| gap(t, &chart(&u, &t1, &t2, x)), [0.0, 0.0], step, 1e-15, 600);
        if fx < g {
            u = chart(&u, &t1, &t2, x);
            g = fx;
        }
        step = (step * 1e-3).max(1e-12);
        if g == 0.0 {
            break;
        }
    }
    for _ in 0..4 {
        match polish(t, &u) {
            Some(v) => {
                let gv = gap(t, &v);
                if gv < g {
                    u = v;
                    g = gv;
                } else {
                    break;
                }
            }
            None => break,
        }
    }
    (u, g)
}

/// At a degenerate normal `u` the compression of `F(u)` to the top
/// two-dimensional eigenspace has zero Bloch vector `Σ uᵢ gᵢ`. For ellipse
/// faces the `gᵢ` span a plane and `u` is its unit normal. For segments
/// they span a line and the gap has a narrow curved valley, searched with
/// nested line minimizations across and along it.
fn polish(t: &MatrixTuple, u: &[f64; 3]) -> Option<[f64; 3]> {
    let m = HermitianMatrix::linear_combination(u, t.matrices()).ok()?;
    let sys = m.eigen().ok()?;
    let basis = &sys.vectors[..2];
    let rows: Vec<[f64; 3]> = t.matrices().iter().map(|fi| crate::pencil::bloch(&fi.compress(basis)).1).collect();
    let a = nalgebra::Matrix3::from_fn(|i, j| rows[i][j]);
    let svd = a.svd(true, false);
    let s = svd.singular_values;
    let mut order = [0, 1, 2];
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let uu = svd.u?;
    if !(s[order[0]] > 0.0) {
        return None;
    }
    if s[order[1]] > 1e-3 * s[order[0]] {
        let k = order[2];
        let mut v = [uu[(0, k)], uu[(1, k)], uu[(2, k)]];
        if v[0] * u[0] + v[1] * u[1] + v[2] * u[2] < 0.0 {
            v = v.map(|x| -x);
        }
        return Some(v);
    }
    let k = order[0];
    let dir = [uu[(0, k)], uu[(1, k)], uu[(2, k)]];
    let along = dir.iter().zip(u).map(|(a, b)| a * b).sum::<f64>();
    let across: Vec<f64> = (0..3).map(|i| dir[i] - along * u[i]).collect();
    let n = crate::pencil::norm(&across);
    if n < 0.5 {
        return None;
    }
    let t1 = [across[0] / n, across[1] / n, across[2] / n];
    let t2 = crate::pencil::cross3(u, &t1);
    // The gap grows linearly across the valley but only cubically along it.
    let inner = |y: f64| golden_section(|x| gap(t, &chart(u, &t1, &t2, [x, y])), -1e-2, 1e-2, 1e-16);
    let (y, _) = golden_section(|y| inner(y).1, -1e-2, 1e-2, 1e-15);
    Some(chart(u, &t1, &t2, [inner(y).0, y]))
}

/// Degenerate in-plane normals of a flat range spanned by `e1, e2`.
pub(crate) fn scan_circle(t: &MatrixTuple, e1: &[f64], e2: &[f64], tol: &Tolerances) -> Vec<Vec<f64>> {
    const SAMPLES: usize = 4096;
    let dir = |theta: f64| -> Vec<f64> { e1.iter().zip(e2).map(|(a, b)| a * theta.cos() + b * theta.sin()).collect() };
    let h = 2.0 * std::f64::consts::PI / SAMPLES as f64;
    let gaps: Vec<f64> = (0..SAMPLES).into_par_iter().map(|k| gap(t, &dir(k as f64 * h))).collect();
    let mut hits: Vec<(f64, Vec<f64>)> = (0..SAMPLES)
        .into_par_iter()
        .filter(|&k| {
            let prev = gaps[(k + SAMPLES - 1) % SAMPLES];
            let next = gaps[(k + 1) % SAMPLES];
            gaps[k] <= prev && gaps[k] <= next
        })
        .filter_map(|k| {
            let theta = k as f64 * h;
            let (x, g) = golden_section(|s| gap(t, &dir(s)), theta - h, theta + h, 1e-15);
            let u = dir(x);
            let (_, spread) = gap_and_spread(t, &u);
            (g <= tol.gap_tol * spread).then_some((g, u))
        })
        .collect();
    hits.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.partial_cmp(&b.1).unwrap()));
    cluster(hits.into_iter().map(|h| h.1), tol.angle_tol)
}
