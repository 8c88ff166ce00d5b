//! The library side of the `jnr` subcommands. Each returns a report; the
//! binary only parses flags, prints, and maps errors to exit codes.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::classify::{
    certify_no_other_faces_with, check_intersection_structure_with, classify_with, CertStatus, Classification,
};
use crate::error::{Error, Result};
use crate::pencil::{normalize, MatrixTuple};
use crate::registry::{self, closed_form_check, RegistryEntry};
use crate::sampling::{convex_hull_points, export_stl, random_tuple, sample_states, Ensemble, PointCloud};
use crate::tolerances::Tolerances;

use super::document::TupleDocument;
use super::report::*;

/// Directions used by the support audit of `sample`.
pub const AUDIT_DIRECTIONS: usize = 500;
/// Audit tolerance relative to the tuple scale.
pub const AUDIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub tol: Tolerances,
    pub seed: u64,
    /// Run the no-other-faces certificate and the structure checks when a
    /// face scan was performed.
    pub certify: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tol: Tolerances::default(), seed: 0, certify: true }
    }
}

#[derive(Debug, Clone)]
pub struct SampleOptions {
    pub count: usize,
    pub seed: u64,
    /// Coordinates to mesh; defaults to all of them when there are at most three.
    pub projection: Option<Vec<usize>>,
    /// Directory receiving `points.txt` and `mesh.stl`.
    pub out: Option<std::path::PathBuf>,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self { count: crate::sampling::DEFAULT_COUNT, seed: 0, projection: None, out: None }
    }
}

fn millis(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn tuple_digest(f: &MatrixTuple) -> String {
    TupleDocument::from_tuple(f, None, None).digest().expect("tuples evaluate")
}

pub fn cmd_classify(doc: &TupleDocument, symmetrize: bool, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let f = doc.to_tuple(symmetrize)?;
    classify_tuple(&f, doc.digest()?, doc.name.clone(), opts)
}

pub fn classify_tuple(
    f: &MatrixTuple,
    digest: String,
    name: Option<String>,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let t = Instant::now();
    let c = classify_with(f, &opts.tol)?;
    let mut report = ClassificationReport::new(&c, digest, name, &opts.tol, opts.seed);
    if opts.certify && scanned(&c) {
        report.certification = Some(certify_no_other_faces_with(&c.tuple, &c.faces, &opts.tol)?);
        report.structure = Some(check_intersection_structure_with(&c.tuple, &c.faces.faces, &opts.tol));
    }
    report.timing_ms = millis(t);
    Ok(report)
}

fn scanned(c: &Classification) -> bool {
    c.label.dim == 3 && !c.label.corner
}

/// Certificate and structure checks for a three-dimensional corner-free range.
pub fn cmd_certify(doc: &TupleDocument, symmetrize: bool, tol: &Tolerances) -> Result<CertifyReport> {
    let t = Instant::now();
    let f = doc.to_tuple(symmetrize)?;
    let c = classify_with(&f, tol)?;
    if c.label.dim != 3 {
        return Err(Error::WrongDimension { required: 3, actual: c.label.dim });
    }
    if c.label.corner {
        return Err(Error::Unsupported("the range has a corner, so its segments are not isolated faces".into()));
    }
    let certification = certify_no_other_faces_with(&c.tuple, &c.faces, tol)?;
    let structure = check_intersection_structure_with(&c.tuple, &c.faces.faces, tol);
    Ok(CertifyReport {
        schema_version: SCHEMA_VERSION.into(),
        kind: "certification".into(),
        tool_version: TOOL_VERSION.into(),
        input_digest: doc.digest()?,
        faces: c.faces.faces.iter().map(FaceRecord::from).collect(),
        certification,
        structure,
        timing_ms: millis(t),
    })
}

pub fn cmd_sample(doc: &TupleDocument, symmetrize: bool, opts: &SampleOptions) -> Result<SampleReport> {
    sample_tuple(&doc.to_tuple(symmetrize)?, doc.digest()?, opts)
}

pub fn sample_tuple(f: &MatrixTuple, digest: String, opts: &SampleOptions) -> Result<SampleReport> {
    let t = Instant::now();
    let axes = projection_axes(f.n(), opts.projection.as_deref())?;
    let cloud = sample_states(f, opts.count, opts.seed)?;
    let projected = padded_projection(&cloud, &axes)?;
    let mesh = convex_hull_points(&projected)?;

    let sub = MatrixTuple::new(axes.iter().map(|&a| f.get(a).clone()).collect())?;
    let audit = support_audit(&sub, &cloud.project(&axes)?, opts.seed)?;

    let (mut points_file, mut stl_file) = (None, None);
    if let Some(dir) = &opts.out {
        std::fs::create_dir_all(dir)?;
        let p = dir.join("points.txt");
        cloud.write_text(std::io::BufWriter::new(std::fs::File::create(&p)?))?;
        let s = dir.join("mesh.stl");
        export_stl(&mesh, &s)?;
        points_file = Some(p.display().to_string());
        stl_file = Some(s.display().to_string());
    }
    Ok(SampleReport {
        schema_version: SCHEMA_VERSION.into(),
        kind: "sample".into(),
        tool_version: TOOL_VERSION.into(),
        input_digest: Some(digest),
        count: cloud.len(),
        seed: Some(opts.seed),
        projection: axes,
        points_file,
        stl_file,
        mesh: (&mesh).into(),
        audit: Some(audit),
        timing_ms: millis(t),
    })
}

/// Hull of an existing point cloud, written as binary STL.
pub fn cmd_mesh(cloud: &PointCloud, projection: Option<&[usize]>, out: Option<&Path>) -> Result<SampleReport> {
    let t = Instant::now();
    let axes = projection_axes(cloud.dim, projection)?;
    let mesh = convex_hull_points(&padded_projection(cloud, &axes)?)?;
    let mut stl_file = None;
    if let Some(path) = out {
        export_stl(&mesh, path)?;
        stl_file = Some(path.display().to_string());
    }
    let mut h = Sha256::new();
    for x in &cloud.coords {
        h.update(x.to_le_bytes());
    }
    Ok(SampleReport {
        schema_version: SCHEMA_VERSION.into(),
        kind: "mesh".into(),
        tool_version: TOOL_VERSION.into(),
        input_digest: Some(hex::encode(h.finalize())),
        count: cloud.len(),
        seed: None,
        projection: axes,
        points_file: None,
        stl_file,
        mesh: (&mesh).into(),
        audit: None,
        timing_ms: millis(t),
    })
}

fn projection_axes(n: usize, requested: Option<&[usize]>) -> Result<Vec<usize>> {
    match requested {
        Some(axes) => {
            if axes.is_empty() || axes.len() > 3 {
                return Err(Error::Parse(format!("a projection keeps 1 to 3 coordinates, got {}", axes.len())));
            }
            if let Some(&a) = axes.iter().find(|&&a| a >= n) {
                return Err(Error::DimensionMismatch { expected: n, found: a + 1 });
            }
            Ok(axes.to_vec())
        }
        None if n <= 3 => Ok((0..n).collect()),
        None => Err(Error::DimensionMismatch { expected: 3, found: n }),
    }
}

/// Projects and pads with zero coordinates up to three.
fn padded_projection(cloud: &PointCloud, axes: &[usize]) -> Result<PointCloud> {
    let p = cloud.project(axes)?;
    if p.dim == 3 {
        return Ok(p);
    }
    let coords = p.iter().flat_map(|x| (0..3).map(move |k| x.get(k).copied().unwrap_or(0.0))).collect();
    Ok(PointCloud { dim: 3, coords, seed: p.seed })
}

fn support_audit(f: &MatrixTuple, cloud: &PointCloud, seed: u64) -> Result<SupportAudit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let dirs: Vec<Vec<f64>> = (0..AUDIT_DIRECTIONS)
        .map(|_| {
            let v: Vec<f64> =
                (0..f.n()).map(|_| rand_distr::Distribution::sample(&rand_distr::StandardNormal, &mut rng)).collect();
            normalize(&v)
        })
        .collect();
    let max_violation = cloud.support_violation(f, &dirs)?;
    let tolerance = AUDIT_TOL * f.scale();
    Ok(SupportAudit { directions: dirs.len(), max_violation, tolerance, passed: max_violation <= tolerance })
}

/// Classifies `count` random tuples of `n` 3×3 matrices. Tuple `i` depends
/// only on `seed` and `i`.
pub fn cmd_census(count: usize, seed: u64, ensemble: Ensemble, n: usize, tol: &Tolerances) -> Result<CensusReport> {
    let t = Instant::now();
    let mut table = BTreeMap::new();
    let mut failures = Vec::new();
    let mut ovals = 0;
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let f = random_tuple(3, n, ensemble, rng.next_u64())?;
        match classify_with(&f, tol) {
            Ok(c) => {
                ovals += usize::from(c.label.is_oval());
                *table.entry(c.label.class_name()).or_insert(0) += 1;
            }
            Err(e) => failures.push(CensusFailure { index: i, error: e.to_string() }),
        }
    }
    Ok(CensusReport {
        schema_version: SCHEMA_VERSION.into(),
        kind: "census".into(),
        tool_version: TOOL_VERSION.into(),
        count,
        seed,
        ensemble,
        d: 3,
        n,
        table,
        ovals,
        oval_fraction: (count > 0).then(|| ovals as f64 / count as f64),
        failures,
        timing_ms: millis(t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleAction {
    Classify,
    Check,
    Sample,
}

/// Looks up a catalogued tuple; `lambda` selects a member of the `ex11` family.
pub fn example_entry(id: &str, lambda: Option<f64>) -> Result<RegistryEntry> {
    match lambda {
        Some(l) if id == "ex11" => Ok(registry::ex11(l)),
        Some(_) => Err(Error::Parse(format!("--lambda applies to ex11 only, not {id}"))),
        None => registry::get(id),
    }
}

pub fn cmd_example(
    entry: &RegistryEntry,
    action: ExampleAction,
    classify_opts: &ClassifyOptions,
    sample_opts: &SampleOptions,
) -> Result<ExampleReport> {
    let mut report = ExampleReport {
        schema_version: SCHEMA_VERSION.into(),
        kind: "example".into(),
        tool_version: TOOL_VERSION.into(),
        id: entry.id.clone(),
        title: entry.title.into(),
        action: format!("{action:?}").to_lowercase(),
        expected_class: entry.expected_class.map(str::to_string),
        passed: false,
        classification: None,
        closed_form: None,
        sample: None,
    };
    let digest = tuple_digest(&entry.tuple);
    match action {
        ExampleAction::Classify => {
            let c = classify_tuple(&entry.tuple, digest, Some(entry.id.clone()), classify_opts)?;
            let cert_ok = c.certification.as_ref().is_none_or(|r| r.status == CertStatus::Pass);
            let structure_ok = c.structure.as_ref().is_none_or(|s| s.passed);
            report.passed = entry.expected_class.is_none_or(|e| e == c.class_name) && cert_ok && structure_ok;
            report.classification = Some(c);
        }
        ExampleAction::Check => {
            let r = closed_form_check(entry, 100, classify_opts.seed)?;
            report.passed = r.passed;
            report.closed_form = Some(r);
        }
        ExampleAction::Sample => {
            let s = sample_tuple(&entry.tuple, digest, sample_opts)?;
            report.passed = s.mesh.watertight && s.audit.as_ref().is_some_and(|a| a.passed);
            report.sample = Some(s);
        }
    }
    Ok(report)
}

/// Exit status for an error: 2 for unreadable input, 4 for a numerical
/// result that contradicts the structure theory, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidMatrix(_) => 2,
        Error::InternalInconsistency(_) => 4,
        _ => 1,
    }
}
