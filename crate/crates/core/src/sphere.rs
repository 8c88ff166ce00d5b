//! Direction lattices and small derivative-free minimizers on S² and S¹.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::pencil::{cross3, normalize};

/// Point `k` of the `n`-point Fibonacci lattice on the unit sphere.
pub fn fibonacci_point(k: usize, n: usize) -> [f64; 3] {
    let golden = PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden * k as f64;
    [r * phi.cos(), r * phi.sin(), z]
}

pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    (0..n).map(|k| fibonacci_point(k, n)).collect()
}

/// Typical nearest-neighbour distance of an `n`-point lattice.
pub fn lattice_spacing(n: usize) -> f64 {
    (4.0 * PI / n as f64).sqrt()
}

/// Orthonormal `t1, t2` with `(t1, t2, u)` right-handed.
pub fn tangent_basis(u: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if u[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let t1 = normalize(&cross3(&helper, u));
    let t1 = [t1[0], t1[1], t1[2]];
    let t2 = cross3(u, &t1);
    (t1, t2)
}

/// The normalized point `u + x₀t₁ + x₁t₂`.
pub fn chart(u: &[f64; 3], t1: &[f64; 3], t2: &[f64; 3], x: [f64; 2]) -> [f64; 3] {
    let v: Vec<f64> = (0..3).map(|i| u[i] + x[0] * t1[i] + x[1] * t2[i]).collect();
    let v = normalize(&v);
    [v[0], v[1], v[2]]
}

/// Nelder–Mead in the plane. Stops when the simplex diameter drops below
/// `xtol` or after `max_iter` iterations.
pub fn nelder_mead_2d<F: FnMut([f64; 2]) -> f64>(
    mut f: F,
    x0: [f64; 2],
    step: f64,
    xtol: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let mut s = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut v = [f(s[0]), f(s[1]), f(s[2])];
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        let mut idx = [0, 1, 2];
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        s = [s[idx[0]], s[idx[1]], s[idx[2]]];
        v = [v[idx[0]], v[idx[1]], v[idx[2]]];
        let diam = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (s[i][0] - s[j][0]).hypot(s[i][1] - s[j][1]))
            .fold(0.0, f64::max);
        if diam < xtol {
            break;
        }
        let centroid = lerp(s[0], s[1], 0.5);
        let xr = lerp(centroid, s[2], -1.0);
        let fr = f(xr);
        if fr < v[0] {
            let xe = lerp(centroid, s[2], -2.0);
            let fe = f(xe);
            if fe < fr {
                s[2] = xe;
                v[2] = fe;
            } else {
                s[2] = xr;
                v[2] = fr;
            }
        } else if fr < v[1] {
            s[2] = xr;
            v[2] = fr;
        } else {
            let (xc, fc) = if fr < v[2] {
                let xc = lerp(centroid, xr, 0.5);
                (xc, f(xc))
            } else {
                let xc = lerp(centroid, s[2], 0.5);
                (xc, f(xc))
            };
            if fc < v[2].min(fr) {
                s[2] = xc;
                v[2] = fc;
            } else {
                for k in 1..3 {
                    s[k] = lerp(s[0], s[k], 0.5);
                    v[k] = f(s[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap();
    (s[best], v[best])
}

/// Golden-section search for a minimum of a unimodal function on `[a, b]`.
pub fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bucket grid over `[-1,1]³` for radius queries on a unit-sphere lattice.
pub struct NeighborGrid {
    cell: f64,
    buckets: HashMap<(i32, i32, i32), Vec<usize>>,
}

impl NeighborGrid {
    pub fn new(points: &[[f64; 3]], cell: f64) -> Self {
        let mut buckets: HashMap<(i32, i32, i32), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(Self::key(p, cell)).or_default().push(i);
        }
        Self { cell, buckets }
    }

    fn key(p: &[f64; 3], cell: f64) -> (i32, i32, i32) {
        let k = |x: f64| (x / cell).floor() as i32;
        (k(p[0]), k(p[1]), k(p[2]))
    }

    /// Indices within `radius ≤ cell` of `p` (including `p` itself if present).
    pub fn within(&self, points: &[[f64; 3]], p: &[f64; 3], radius: f64) -> Vec<usize> {
        let (x, y, z) = Self::key(p, self.cell);
        let mut out = Vec::new();
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(b) = self.buckets.get(&(x + dx, y + dy, z + dz)) {
                        for &i in b {
                            let q = &points[i];
                            let d2 = (0..3).map(|k| (q[k] - p[k]).powi(2)).sum::<f64>();
                            if d2 <= radius * radius {
                                out.push(i);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_points_are_unit() {
        for p in fibonacci_sphere(1000) {
            let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let (x, fx) =
            nelder_mead_2d(|x| (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 0.1).powi(2), [0.0, 0.0], 0.1, 1e-12, 1000);
        assert!((x[0] - 0.3).abs() < 1e-9 && (x[1] + 0.1).abs() < 1e-9);
        assert!(fx < 1e-17);
    }

    #[test]
    fn nelder_mead_handles_cone() {
        let (_, fx) = nelder_mead_2d(|x| (x[0] - 0.01).hypot(2.0 * x[1] - 0.02), [0.0, 0.0], 0.05, 1e-14, 2000);
        assert!(fx < 1e-12);
    }

    #[test]
    fn golden_section_on_abs() {
        let (x, _) = golden_section(|t| (t - 0.123).abs(), -1.0, 1.0, 1e-13);
        assert!((x - 0.123).abs() < 1e-12);
    }

    #[test]
    fn tangent_basis_is_orthonormal() {
        let u = fibonacci_point(17, 100);
        let (a, b) = tangent_basis(&u);
        let d = |x: &[f64; 3], y: &[f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
        assert!(d(&a, &u).abs() < 1e-15 && d(&b, &u).abs() < 1e-15 && d(&a, &b).abs() < 1e-15);
        assert!((d(&a, &a) - 1.0).abs() < 1e-15 && (d(&b, &b) - 1.0).abs() < 1e-15);
    }
}
