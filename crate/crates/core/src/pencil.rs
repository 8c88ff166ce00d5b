//! Matrix tuples, the pencil `F(u) = Σ uᵢFᵢ`, the support function of the
//! joint numerical range, and exposed faces.
//!
//! The face of `L(F)` exposed by a unit normal `u` is the image of the state
//! space of the top eigenspace of `F(u)`. When that eigenspace is
//! two-dimensional the states form a Bloch ball and the face is a linear
//! image of the unit 3-ball: a point, segment, filled ellipse or ellipsoid.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, C64, TOL_ORTHO};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    d: usize,
    matrices: Vec<HermitianMatrix>,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<HermitianMatrix>) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::EmptyRequest("a tuple needs at least one matrix".into()));
        };
        let d = first.dim();
        if let Some(m) = matrices.iter().find(|m| m.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: m.dim() });
        }
        Ok(Self { d, matrices })
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.matrices
    }

    pub fn get(&self, i: usize) -> &HermitianMatrix {
        &self.matrices[i]
    }

    /// Largest entry of the traceless parts, or 1 when every `Fᵢ` is scalar.
    /// Invariant under shifts `Fᵢ ↦ Fᵢ + bᵢI`.
    pub fn scale(&self) -> f64 {
        let s = self.matrices.iter().map(|m| m.traceless().max_abs()).fold(0.0, f64::max);
        if s > 0.0 {
            s
        } else {
            1.0
        }
    }

    pub fn traceless(&self) -> Self {
        Self { d: self.d, matrices: self.matrices.iter().map(|m| m.traceless()).collect() }
    }

    /// Appends zero matrices up to length `n`.
    pub fn padded(&self, n: usize) -> Self {
        let mut matrices = self.matrices.clone();
        while matrices.len() < n {
            matrices.push(HermitianMatrix::zeros(self.d));
        }
        Self { d: self.d, matrices }
    }

    /// The point `(⟨x,F₁x⟩, …, ⟨x,Fₙx⟩)` of a unit vector `x`.
    pub fn expectation(&self, x: &[C64]) -> Vec<f64> {
        self.matrices.iter().map(|m| m.quadratic_form(x)).collect()
    }

    /// Compression of every matrix to the span of an orthonormal basis.
    pub fn compress(&self, basis: &[Vec<C64>]) -> Self {
        Self { d: basis.len(), matrices: self.matrices.iter().map(|m| m.compress(basis)).collect() }
    }
}

/// A nonzero direction, stored normalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(u: &[f64]) -> Result<Self> {
        let n = check_direction(u)?;
        Ok(Self(u.iter().map(|x| x / n).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Angle in radians, computed stably via `atan2`.
    pub fn angle_to(&self, other: &[f64]) -> f64 {
        angle_between(&self.0, other)
    }
}

fn check_direction(u: &[f64]) -> Result<f64> {
    if u.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidDirection("non-finite component".into()));
    }
    let n = norm(u);
    if n == 0.0 {
        return Err(Error::InvalidDirection("zero vector".into()));
    }
    Ok(n)
}

pub fn pencil_eval(f: &MatrixTuple, u: &[f64]) -> Result<HermitianMatrix> {
    if u.len() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), found: u.len() });
    }
    check_direction(u)?;
    HermitianMatrix::linear_combination(u, &f.matrices)
}

/// `λ_max(F(u))`. For a unit `u` this is the support function of `L(F)`;
/// for other lengths it scales linearly.
pub fn support(f: &MatrixTuple, u: &[f64]) -> Result<f64> {
    Ok(pencil_eval(f, u)?.eigen()?.max())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceKind {
    Point,
    Segment,
    Ellipse,
    Ellipsoid,
}

impl FaceKind {
    pub fn from_rank(rank: usize) -> Self {
        match rank {
            0 => FaceKind::Point,
            1 => FaceKind::Segment,
            2 => FaceKind::Ellipse,
            _ => FaceKind::Ellipsoid,
        }
    }

    pub fn rank(self) -> usize {
        self as usize
    }

    pub fn is_large(self) -> bool {
        matches!(self, FaceKind::Segment | FaceKind::Ellipse)
    }
}

/// A filled ellipsoid `{center + Σ tⱼ axesⱼ : |t| ≤ 1}` with mutually
/// orthogonal axes (possibly fewer than the ambient dimension).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ellipsoid {
    pub center: Vec<f64>,
    pub axes: Vec<Vec<f64>>,
}

impl Ellipsoid {
    /// Image of the Bloch ball under `r ↦ center + map·r`, where `map` has
    /// one row per coordinate. Singular values below `rel_tol · σ_max` (or all
    /// of them when `σ_max ≤ abs_tol`) are dropped.
    pub fn from_bloch(center: Vec<f64>, map: &[[f64; 3]], rel_tol: f64, abs_tol: f64) -> Self {
        let n = map.len();
        let a = DMatrix::from_fn(n, 3, |i, j| map[i][j]);
        let svd = a.svd(true, false);
        let u = svd.u.expect("left singular vectors requested");
        let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
        let mut axes = Vec::new();
        if smax > abs_tol {
            for k in order {
                let s = svd.singular_values[k];
                if s > rel_tol * smax {
                    axes.push(canonical_sign((0..n).map(|i| u[(i, k)] * s).collect()));
                }
            }
        }
        Self { center, axes }
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn support(&self, v: &[f64]) -> f64 {
        dot(&self.center, v) + self.axes.iter().map(|a| dot(a, v).powi(2)).sum::<f64>().sqrt()
    }

    /// Euclidean distance from `p` and the nearest point of the ellipsoid.
    pub fn nearest(&self, p: &[f64]) -> (f64, Vec<f64>) {
        let q: Vec<f64> = p.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        let sig: Vec<f64> = self.axes.iter().map(|a| norm(a)).collect();
        // Coordinates of q along the unit axes.
        let qa: Vec<f64> = self.axes.iter().zip(&sig).map(|(a, s)| dot(a, &q) / s).collect();
        let coef = |mu: f64| -> Vec<f64> { qa.iter().zip(&sig).map(|(q, s)| s * q / (s * s + mu)).collect() };
        let mut t = coef(0.0);
        if norm(&t) > 1.0 {
            let mut lo = 0.0;
            let mut hi = qa.iter().zip(&sig).map(|(q, s)| (q * s).abs()).fold(0.0, f64::max) * (qa.len() as f64).sqrt();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if norm(&coef(mid)) > 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= f64::EPSILON * hi {
                    break;
                }
            }
            t = coef(hi);
        }
        let mut x = self.center.clone();
        for (a, tj) in self.axes.iter().zip(&t) {
            for (xi, ai) in x.iter_mut().zip(a) {
                *xi += tj * ai;
            }
        }
        (dist(&x, p), x)
    }

    pub fn distance(&self, p: &[f64]) -> f64 {
        self.nearest(p).0
    }
}

/// One exposed face of `L(F)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceDescriptor {
    pub normal: Vec<f64>,
    pub kind: FaceKind,
    pub support_value: f64,
    /// Orthonormal basis of the top eigenspace of `F(normal)`.
    pub basis: Vec<Vec<C64>>,
    pub center: Vec<f64>,
    /// Orthogonal semi-axes; their count equals the rank of `kind`.
    pub generators: Vec<Vec<f64>>,
    /// Gap between the top eigenvalue cluster and the next eigenvalue.
    pub gap: f64,
}

impl FaceDescriptor {
    pub fn ellipsoid(&self) -> Ellipsoid {
        Ellipsoid { center: self.center.clone(), axes: self.generators.clone() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExposedFace {
    Face(FaceDescriptor),
    /// `F(u)` is scalar, so the whole range is the face.
    Full,
}

/// Bloch decomposition `G = c·I + g·σ` of a 2×2 hermitian matrix.
pub fn bloch(g: &HermitianMatrix) -> (f64, [f64; 3]) {
    let a = g.get(0, 0).re;
    let d = g.get(1, 1).re;
    let b = g.get(0, 1);
    ((a + d) / 2.0, [b.re, -b.im, (a - d) / 2.0])
}

/// The face of `L(F)` exposed in direction `u` (normalized internally).
pub fn exposed_face(f: &MatrixTuple, u: &[f64], tol: &Tolerances) -> Result<ExposedFace> {
    let unit = Direction::new(u)?;
    let m = pencil_eval(f, unit.as_slice())?;
    let sys = m.eigen()?;
    let d = sys.dim();
    let spread = sys.values[0] - sys.values[d - 1];
    let mult = sys.top_multiplicity(tol.gap_tol * spread);
    if mult == d {
        return Ok(ExposedFace::Full);
    }
    let gap = sys.values[0] - sys.values[mult];
    let basis: Vec<Vec<C64>> = sys.vectors[..mult].to_vec();
    let support_value = sys.values[0];
    let (center, generators) = match mult {
        1 => (f.expectation(&basis[0]), Vec::new()),
        2 => {
            let mut center = Vec::with_capacity(f.n());
            let mut map = Vec::with_capacity(f.n());
            for fi in f.matrices() {
                let (c, g) = bloch(&fi.compress(&basis));
                center.push(c);
                map.push(g);
            }
            let e = Ellipsoid::from_bloch(center, &map, tol.face_rank_tol, tol.face_rank_tol * f.scale());
            (e.center, e.axes)
        }
        _ => return Err(Error::WrongDimension { required: 3, actual: d }),
    };
    Ok(ExposedFace::Face(FaceDescriptor {
        normal: unit.into_vec(),
        kind: FaceKind::from_rank(generators.len()),
        support_value,
        basis,
        center,
        generators,
        gap,
    }))
}

/// Affine hull data of `L(F)`.
#[derive(Debug, Clone)]
pub struct AffineHull {
    pub dim: usize,
    /// Orthonormal directions spanning the hull (as normals they expose the body).
    pub directions: Vec<Vec<f64>>,
    /// Orthonormal complement: `F(u)` is scalar for these `u`.
    pub normals: Vec<Vec<f64>>,
}

/// Numerical rank of the traceless parts of `F`, with the corresponding
/// splitting of `ℝⁿ`. Equals `rank span{I, F₁, …, Fₙ} − 1`.
pub fn affine_hull(f: &MatrixTuple, rank_tol: f64) -> AffineHull {
    let n = f.n();
    let t = f.traceless();
    let d2 = f.d() * f.d();
    let rows = (2 * d2).max(n);
    let mut a = DMatrix::<f64>::zeros(rows, n);
    for (j, m) in t.matrices().iter().enumerate() {
        for (k, z) in m.entries().iter().enumerate() {
            a[(2 * k, j)] = z.re;
            a[(2 * k + 1, j)] = z.im;
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let mut directions = Vec::new();
    let mut normals = Vec::new();
    for k in 0..svd.singular_values.len() {
        let v: Vec<f64> = (0..n).map(|j| vt[(k, j)]).collect();
        if smax > 0.0 && svd.singular_values[k] > rank_tol * smax {
            directions.push(v);
        } else {
            normals.push(v);
        }
    }
    AffineHull { dim: directions.len(), directions, normals }
}

pub fn dim_l(f: &MatrixTuple, rank_tol: f64) -> usize {
    affine_hull(f, rank_tol).dim
}

pub fn apply_unitary(f: &MatrixTuple, u: &DMatrix<C64>) -> Result<MatrixTuple> {
    if u.nrows() != f.d() || u.ncols() != f.d() {
        return Err(Error::DimensionMismatch { expected: f.d(), found: u.nrows() });
    }
    let dev = (u.adjoint() * u - DMatrix::<C64>::identity(f.d(), f.d())).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(dev <= TOL_ORTHO) {
        return Err(Error::InvalidUnitary(dev));
    }
    let matrices = f.matrices().iter().map(|m| m.conjugate_by(u)).collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(matrices)
}

/// `x ↦ A x + b` on the range side, `Fᵢ ↦ Σⱼ aᵢⱼFⱼ + bᵢI` on the tuple side.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    a: DMatrix<f64>,
    b: Vec<f64>,
}

/// Smallest admissible `|det A|`, relative to `max|aᵢⱼ|ⁿ`.
pub const DET_TOL: f64 = 1e-12;

impl AffineMap {
    pub fn new(a: DMatrix<f64>, b: Vec<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() != b.len() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), found: b.len() });
        }
        let scale = a.amax();
        let det = a.determinant();
        if !(det.abs() > DET_TOL * scale.powi(a.nrows() as i32)) {
            return Err(Error::SingularAffine(det.abs()));
        }
        Ok(Self { a, b })
    }

    pub fn from_rows(rows: &[Vec<f64>], b: Vec<f64>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: rows.first().map_or(0, |r| r.len()) });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]), b)
    }

    pub fn identity(n: usize) -> Self {
        Self { a: DMatrix::identity(n, n), b: vec![0.0; n] }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn offset(&self) -> &[f64] {
        &self.b
    }

    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        (0..self.b.len()).map(|i| (0..x.len()).map(|j| self.a[(i, j)] * x[j]).sum::<f64>() + self.b[i]).collect()
    }

    /// `Aᵀ u`, the direction whose support value pulls back `u`.
    pub fn pull_back(&self, u: &[f64]) -> Vec<f64> {
        (0..u.len()).map(|j| (0..u.len()).map(|i| self.a[(i, j)] * u[i]).sum()).collect()
    }
}

pub fn apply_affine(f: &MatrixTuple, t: &AffineMap) -> Result<MatrixTuple> {
    let n = f.n();
    if t.b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.b.len() });
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<f64> = (0..n).map(|j| t.a[(i, j)]).collect();
        out.push(HermitianMatrix::linear_combination(&row, f.matrices())?.shifted(t.b[i]));
    }
    MatrixTuple::new(out)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

pub fn normalize(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

pub fn cross3(a: &[f64], b: &[f64]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let c = dot(a, b);
    let s = if a.len() == 3 { norm(&cross3(a, b)) } else { (dot(a, a) * dot(b, b) - c * c).max(0.0).sqrt() };
    s.atan2(c)
}

/// Flips a vector so its largest-magnitude component is positive.
fn canonical_sign(v: Vec<f64>) -> Vec<f64> {
    let lead = v.iter().copied().fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if lead < 0.0 {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[[f64; 3]; 3]) -> HermitianMatrix {
        HermitianMatrix::from_real(3, &rows.concat()).unwrap()
    }

    fn ex04() -> MatrixTuple {
        MatrixTuple::new(vec![
            real(&[[0.0, 0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            real(&[[0.0, 0.0, 0.5], [0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]),
            real(&[[0.0, 0.0, 0.0], [0.0, 0.0, 0.5], [0.0, 0.5, 0.0]]),
        ])
        .unwrap()
    }

    #[test]
    fn pencil_at_ones() {
        let m = pencil_eval(&ex04(), &[1.0, 1.0, 1.0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 0.0 } else { 0.5 };
                assert_eq!(m.get(i, j), C64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn pencil_rejects_bad_input() {
        assert!(matches!(pencil_eval(&ex04(), &[1.0, 0.0]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(support(&ex04(), &[0.0, 0.0, 0.0]), Err(Error::InvalidDirection(_))));
    }

    #[test]
    fn mixed_sizes_rejected() {
        let r = MatrixTuple::new(vec![HermitianMatrix::identity(2), HermitianMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn scalar_pencil_is_full_face() {
        let f = MatrixTuple::new(vec![HermitianMatrix::identity(3); 3]).unwrap();
        let face = exposed_face(&f, &[1.0, 0.0, 0.0], &Tolerances::default()).unwrap();
        assert_eq!(face, ExposedFace::Full);
        assert_eq!(dim_l(&f, 1e-8), 0);
    }

    #[test]
    fn ellipsoid_distance_outside_and_inside() {
        let e = Ellipsoid { center: vec![0.0; 3], axes: vec![vec![2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]] };
        assert!(e.distance(&[1.0, 0.2, 0.0]) < 1e-15);
        assert!((e.distance(&[0.0, 0.0, 3.0]) - 3.0).abs() < 1e-15);
        assert!((e.distance(&[3.0, 0.0, 0.0]) - 1.0).abs() < 1e-12);
        assert!((e.support(&[0.0, 1.0, 0.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn affine_rejects_singular() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(AffineMap::new(a, vec![0.0, 0.0]), Err(Error::SingularAffine(_))));
    }

    #[test]
    fn bloch_parts() {
        let g = HermitianMatrix::new(
            2,
            vec![C64::new(3.0, 0.0), C64::new(1.0, 2.0), C64::new(1.0, -2.0), C64::new(1.0, 0.0)],
        )
        .unwrap();
        let (c, v) = bloch(&g);
        assert_eq!(c, 2.0);
        assert_eq!(v, [1.0, -2.0, 1.0]);
    }
}
