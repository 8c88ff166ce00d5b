//! Random pure states, random tuples, and the point-cloud side of the
//! meshing pipeline.

mod hull;
mod stl;

pub use hull::{convex_hull3, convex_hull_points, TriangleMesh, HULL_TOL};
pub use stl::{export_stl, write_stl};

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, C64};
use crate::pencil::{dot, MatrixTuple};

/// States drawn per RNG stream; streams are indexed by chunk so the output
/// does not depend on the number of worker threads.
pub const CHUNK: usize = 4096;

/// Default sample count.
pub const DEFAULT_COUNT: usize = 100_000;

/// Points `(⟨x,F₁x⟩, …, ⟨x,Fₙx⟩)`, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub dim: usize,
    pub coords: Vec<f64>,
    pub seed: u64,
}

impl PointCloud {
    pub fn from_points(points: &[Vec<f64>], seed: u64) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        Ok(Self { dim, coords: points.concat(), seed })
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.coords.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim.max(1))
    }

    /// Keeps the listed coordinates, in order.
    pub fn project(&self, axes: &[usize]) -> Result<Self> {
        if let Some(&a) = axes.iter().find(|&&a| a >= self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a + 1 });
        }
        let coords = self.iter().flat_map(|p| axes.iter().map(move |&a| p[a])).collect();
        Ok(Self { dim: axes.len(), coords, seed: self.seed })
    }

    pub fn points3(&self) -> Result<Vec<[f64; 3]>> {
        if self.dim != 3 {
            return Err(Error::DimensionMismatch { expected: 3, found: self.dim });
        }
        Ok(self.coords.chunks_exact(3).map(|p| [p[0], p[1], p[2]]).collect())
    }

    /// Largest `⟨x,u⟩ − h(u)` over all points and the given unit directions.
    pub fn support_violation(&self, f: &MatrixTuple, directions: &[Vec<f64>]) -> Result<f64> {
        let mut worst = f64::NEG_INFINITY;
        for u in directions {
            let h = crate::pencil::support(f, u)?;
            let m = self.iter().map(|p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max);
            worst = worst.max(m - h);
        }
        Ok(worst)
    }

    /// One point per line, coordinates separated by spaces, 17 significant digits.
    pub fn write_text<W: Write>(&self, mut w: W) -> Result<()> {
        for p in self.iter() {
            let line: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut points = Vec::new();
        for (k, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let p = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", k + 1))))
                .collect::<Result<Vec<f64>>>()?;
            points.push(p);
        }
        Self::from_points(&points, 0)
    }
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniform random unit vector of `ℂ^d` (normalized complex Gaussian).
pub fn random_state(d: usize, rng: &mut ChaCha8Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        let n = crate::hermitian::cnorm(&v);
        if n > 0.0 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Images of `count` random pure states. Deterministic in `seed` and
/// independent of the thread count.
pub fn sample_states(f: &MatrixTuple, count: usize, seed: u64) -> Result<PointCloud> {
    if count == 0 {
        return Err(Error::EmptyRequest("sample count must be positive".into()));
    }
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(count - c * CHUNK);
            let mut out = Vec::with_capacity(len * f.n());
            for _ in 0..len {
                let x = random_state(f.d(), &mut rng);
                out.extend(f.expectation(&x));
            }
            out
        })
        .collect();
    Ok(PointCloud { dim: f.n(), coords: parts.concat(), seed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// Complex hermitian Gaussian matrices.
    Gue,
    /// Real symmetric Gaussian matrices.
    #[serde(rename = "goe", alias = "real-symmetric")]
    RealSymmetric,
}

/// A random hermitian matrix: diagonal `N(0,1)`, off-diagonal real and
/// imaginary parts `N(0,1/2)` (real part only, variance `1/2`, for GOE),
/// scaled by `1/√d`.
pub fn random_hermitian(d: usize, ensemble: Ensemble, rng: &mut ChaCha8Rng) -> HermitianMatrix {
    let s = 1.0 / (d as f64).sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut e = vec![C64::new(0.0, 0.0); d * d];
    for i in 0..d {
        let x: f64 = rng.sample(StandardNormal);
        e[i * d + i] = C64::new(x * s, 0.0);
        for j in (i + 1)..d {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = match ensemble {
                Ensemble::Gue => rng.sample(StandardNormal),
                Ensemble::RealSymmetric => 0.0,
            };
            let z = C64::new(re * h * s, im * h * s);
            e[i * d + j] = z;
            e[j * d + i] = z.conj();
        }
    }
    HermitianMatrix::new(d, e).expect("constructed hermitian")
}

pub fn random_tuple(d: usize, n: usize, ensemble: Ensemble, seed: u64) -> Result<MatrixTuple> {
    if d == 0 || n == 0 {
        return Err(Error::EmptyRequest("random tuples need d ≥ 1 and n ≥ 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MatrixTuple::new((0..n).map(|_| random_hermitian(d, ensemble, &mut rng)).collect())
}

/// Haar-random unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let z = DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let rd = r[(j, j)];
        let phase = if rd.norm() > 0.0 { rd / rd.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}
