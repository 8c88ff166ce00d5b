//! Incremental 3D convex hull (quickhull) with exact orientation tests.

use std::collections::HashMap;

use robust::{orient3d, Coord3D};

use crate::error::{Error, Result};

use super::PointCloud;

/// Points closer than `HULL_TOL · bbox diagonal` to a face are treated as
/// lying on it.
pub const HULL_TOL: f64 = 1e-10;

/// A closed triangle mesh with outward (counterclockwise) orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// `V − E + F`; 2 for a closed sphere-like surface.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::HashSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// Every directed edge has exactly one reversed twin.
    pub fn is_closed(&self) -> bool {
        let mut count: HashMap<(usize, usize), i32> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *count.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        count.iter().all(|(&(a, b), &c)| c == 1 && count.get(&(b, a)) == Some(&1))
    }

    pub fn is_watertight(&self) -> bool {
        !self.triangles.is_empty() && self.is_closed() && self.euler_characteristic() == 2
    }

    pub fn volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i]);
                det3(a, b, c) / 6.0
            })
            .sum()
    }

    pub fn area(&self) -> f64 {
        self.triangles.iter().map(|t| norm(self.face_cross(t)) / 2.0).sum()
    }

    /// Unit normal of each triangle, zero for degenerate ones.
    pub fn normals(&self) -> Vec<[f64; 3]> {
        self.triangles
            .iter()
            .map(|t| {
                let n = self.face_cross(t);
                let l = norm(n);
                if l > 0.0 {
                    n.map(|x| x / l)
                } else {
                    [0.0; 3]
                }
            })
            .collect()
    }

    /// `max − min` of `⟨v,u⟩` over the vertices.
    pub fn width(&self, u: &[f64]) -> f64 {
        let (lo, hi) = self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            let x = v[0] * u[0] + v[1] * u[1] + v[2] * u[2];
            (lo.min(x), hi.max(x))
        });
        hi - lo
    }

    fn face_cross(&self, t: &[usize; 3]) -> [f64; 3] {
        let [a, b, c] = t.map(|i| self.vertices[i]);
        cross(sub(b, a), sub(c, a))
    }
}

fn coord(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    dot(a, cross(b, c))
}

struct Face {
    v: [usize; 3],
    normal: [f64; 3],
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl Face {
    fn new(v: [usize; 3], pts: &[[f64; 3]]) -> Self {
        let n = cross(sub(pts[v[1]], pts[v[0]]), sub(pts[v[2]], pts[v[0]]));
        let l = norm(n);
        let normal = if l > 0.0 { n.map(|x| x / l) } else { n };
        Self { v, normal, offset: dot(normal, pts[v[0]]), outside: Vec::new(), alive: true }
    }

    fn distance(&self, p: [f64; 3]) -> f64 {
        dot(self.normal, p) - self.offset
    }

    /// Exact: `p` lies strictly on the outer side of the face plane.
    fn sees(&self, pts: &[[f64; 3]], p: [f64; 3]) -> bool {
        orient3d(coord(pts[self.v[0]]), coord(pts[self.v[1]]), coord(pts[self.v[2]]), coord(p)) < 0.0
    }
}

/// Convex hull of a 3D point set. Fails with `DegenerateHull(rank)` when the
/// points span fewer than three dimensions (up to the hull tolerance).
pub fn convex_hull3(points: &[[f64; 3]]) -> Result<TriangleMesh> {
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite point".into()));
    }
    if points.is_empty() {
        return Err(Error::DegenerateHull(0));
    }
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let eps = HULL_TOL * norm(sub(hi, lo));
    let simplex = initial_simplex(points, eps)?;

    let mut faces: Vec<Face> = Vec::new();
    let mut edges: HashMap<(usize, usize), usize> = HashMap::new();
    let [a, b, c, d] = simplex;
    for v in [[a, b, c], [a, d, b], [b, d, c], [c, d, a]] {
        add_face(&mut faces, &mut edges, v, points);
    }
    let used: std::collections::HashSet<usize> = simplex.into_iter().collect();
    assign(&mut faces, &[0, 1, 2, 3], (0..points.len()).filter(|i| !used.contains(i)), points, eps);

    let mut stack: Vec<usize> = (0..faces.len()).filter(|&f| !faces[f].outside.is_empty()).collect();
    while let Some(start) = stack.pop() {
        if !faces[start].alive || faces[start].outside.is_empty() {
            continue;
        }
        let face = &faces[start];
        let eye = *face
            .outside
            .iter()
            .max_by(|&&i, &&j| face.distance(points[i]).total_cmp(&face.distance(points[j])).then(j.cmp(&i)))
            .expect("nonempty outside set");

        // Flood the faces that see the eye point.
        let mut visible = vec![start];
        let mut seen = std::collections::HashSet::from([start]);
        let mut k = 0;
        while k < visible.len() {
            let f = visible[k];
            k += 1;
            let v = faces[f].v;
            for e in 0..3 {
                let nb = edges[&(v[(e + 1) % 3], v[e])];
                if !seen.contains(&nb) {
                    seen.insert(nb);
                    if faces[nb].sees(points, points[eye]) {
                        visible.push(nb);
                    }
                }
            }
        }
        let visible_set: std::collections::HashSet<usize> = visible.iter().copied().collect();

        let mut horizon = Vec::new();
        let mut orphans = Vec::new();
        for &f in &visible {
            let v = faces[f].v;
            for e in 0..3 {
                let (p, q) = (v[e], v[(e + 1) % 3]);
                if !visible_set.contains(&edges[&(q, p)]) {
                    horizon.push((p, q));
                }
            }
            orphans.append(&mut faces[f].outside);
        }
        for &f in &visible {
            let v = faces[f].v;
            for e in 0..3 {
                edges.remove(&(v[e], v[(e + 1) % 3]));
            }
            faces[f].alive = false;
        }
        let first = faces.len();
        for (p, q) in horizon {
            add_face(&mut faces, &mut edges, [p, q, eye], points);
        }
        let new: Vec<usize> = (first..faces.len()).collect();
        assign(&mut faces, &new, orphans.into_iter().filter(|&i| i != eye), points, eps);
        stack.extend(new.into_iter().filter(|&f| !faces[f].outside.is_empty()));
    }

    let mut remap = HashMap::new();
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for f in faces.iter().filter(|f| f.alive) {
        triangles.push(f.v.map(|i| {
            *remap.entry(i).or_insert_with(|| {
                vertices.push(points[i]);
                vertices.len() - 1
            })
        }));
    }
    Ok(TriangleMesh { vertices, triangles })
}

pub fn convex_hull_points(cloud: &PointCloud) -> Result<TriangleMesh> {
    convex_hull3(&cloud.points3()?)
}

fn add_face(faces: &mut Vec<Face>, edges: &mut HashMap<(usize, usize), usize>, v: [usize; 3], pts: &[[f64; 3]]) {
    let id = faces.len();
    for e in 0..3 {
        edges.insert((v[e], v[(e + 1) % 3]), id);
    }
    faces.push(Face::new(v, pts));
}

/// Hands each point to the first face it lies outside of by more than `eps`.
fn assign(faces: &mut [Face], targets: &[usize], pts: impl Iterator<Item = usize>, points: &[[f64; 3]], eps: f64) {
    for i in pts {
        let p = points[i];
        if let Some(&f) = targets.iter().find(|&&f| faces[f].distance(p) > eps && faces[f].sees(points, p)) {
            faces[f].outside.push(i);
        }
    }
}

/// Four affinely independent points, oriented so `(a,b,c)` faces outward.
fn initial_simplex(points: &[[f64; 3]], eps: f64) -> Result<[usize; 4]> {
    let extreme = |k: usize| -> (usize, usize) {
        let mut lo = 0;
        let mut hi = 0;
        for (i, p) in points.iter().enumerate() {
            if p[k] < points[lo][k] {
                lo = i;
            }
            if p[k] > points[hi][k] {
                hi = i;
            }
        }
        (lo, hi)
    };
    let (a, b) = (0..3)
        .map(extreme)
        .max_by(|x, y| norm(sub(points[x.1], points[x.0])).total_cmp(&norm(sub(points[y.1], points[y.0]))))
        .expect("three axes");
    let ab = sub(points[b], points[a]);
    let lab = norm(ab);
    if lab <= eps {
        return Err(Error::DegenerateHull(0));
    }
    let c = argmax(points, |p| norm(cross(ab, sub(p, points[a]))) / lab);
    let n = cross(ab, sub(points[c], points[a]));
    if norm(n) / lab <= eps {
        return Err(Error::DegenerateHull(1));
    }
    let nn = norm(n);
    let d = argmax(points, |p| (dot(n, sub(p, points[a])) / nn).abs());
    if (dot(n, sub(points[d], points[a])) / nn).abs() <= eps {
        return Err(Error::DegenerateHull(2));
    }
    let o = orient3d(coord(points[a]), coord(points[b]), coord(points[c]), coord(points[d]));
    Ok(if o > 0.0 { [a, b, c, d] } else { [a, c, b, d] })
}

fn argmax(points: &[[f64; 3]], f: impl Fn([f64; 3]) -> f64) -> usize {
    let mut best = 0;
    let mut val = f64::NEG_INFINITY;
    for (i, &p) in points.iter().enumerate() {
        let v = f(p);
        if v > val {
            best = i;
            val = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube() -> Vec<[f64; 3]> {
        let mut p = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    p.push([x, y, z]);
                }
            }
        }
        p.push([0.5, 0.5, 0.5]);
        p.push([0.5, 0.5, 1.0]);
        p
    }

    #[test]
    fn cube_hull() {
        let m = convex_hull3(&cube()).unwrap();
        assert!(m.is_watertight());
        assert_eq!(m.vertices.len(), 8);
        assert!((m.volume() - 1.0).abs() < 1e-12);
        assert!((m.area() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(convex_hull3(&[[1.0, 2.0, 3.0]; 5]), Err(Error::DegenerateHull(0))));
        let line: Vec<[f64; 3]> = (0..5).map(|i| [i as f64, 2.0 * i as f64, 0.0]).collect();
        assert!(matches!(convex_hull3(&line), Err(Error::DegenerateHull(1))));
        let plane: Vec<[f64; 3]> = (0..9).map(|i| [(i % 3) as f64, (i / 3) as f64, 1.0]).collect();
        assert!(matches!(convex_hull3(&plane), Err(Error::DegenerateHull(2))));
    }
}
