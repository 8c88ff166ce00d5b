//! JSON reports. Every report carries `schema_version` and `kind`; the
//! matching JSON Schema files live in `schema/`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classify::{CertStatus, CertificationReport, Classification, Corner, SegmentCount, StructureReport};
use crate::pencil::{FaceDescriptor, FaceKind};
use crate::registry::ClosedFormReport;
use crate::sampling::{Ensemble, TriangleMesh};
use crate::tolerances::Tolerances;

pub const SCHEMA_VERSION: &str = "1.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub normal: Vec<f64>,
    pub kind: FaceKind,
    pub support_value: f64,
    pub center: Vec<f64>,
    pub generators: Vec<Vec<f64>>,
    pub gap: f64,
}

impl From<&FaceDescriptor> for FaceRecord {
    fn from(f: &FaceDescriptor) -> Self {
        Self {
            normal: f.normal.clone(),
            kind: f.kind,
            support_value: f.support_value,
            center: f.center.clone(),
            generators: f.generators.clone(),
            gap: f.gap,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerRecord {
    pub point: Vec<f64>,
    /// Dimension of the joint eigenspace.
    pub multiplicity: usize,
    /// Rank of the range of the complementary block, if there is one.
    pub block_rank: Option<usize>,
    pub distance: f64,
}

impl From<&Corner> for CornerRecord {
    fn from(c: &Corner) -> Self {
        Self {
            point: c.point.clone(),
            multiplicity: c.eigenspace.len(),
            block_rank: c.block_range.as_ref().map(|r| r.rank()),
            distance: c.distance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema_version: String,
    pub kind: String,
    pub tool_version: String,
    pub input_digest: String,
    pub name: Option<String>,
    pub ambient: usize,
    pub dim: usize,
    pub class_name: String,
    pub e: u32,
    /// `null` for a continuum of segments.
    pub s: Option<u32>,
    pub corner: bool,
    pub is_oval: bool,
    pub faces: Vec<FaceRecord>,
    pub point_face_count: usize,
    pub corners: Vec<CornerRecord>,
    pub certification: Option<CertificationReport>,
    pub structure: Option<StructureReport>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub timing_ms: f64,
}

impl ClassificationReport {
    pub fn new(c: &Classification, input_digest: String, name: Option<String>, tol: &Tolerances, seed: u64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.into(),
            kind: "classification".into(),
            tool_version: TOOL_VERSION.into(),
            input_digest,
            name,
            ambient: c.label.ambient,
            dim: c.label.dim,
            class_name: c.label.class_name(),
            e: c.label.e,
            s: match c.label.s {
                SegmentCount::Finite(s) => Some(s),
                SegmentCount::Infinite => None,
            },
            corner: c.label.corner,
            is_oval: c.label.is_oval(),
            faces: c.faces.faces.iter().map(FaceRecord::from).collect(),
            point_face_count: c.faces.point_normals.len(),
            corners: c.corners.iter().map(CornerRecord::from).collect(),
            certification: None,
            structure: None,
            tolerances: *tol,
            seed,
            timing_ms: 0.0,
        }
    }

    pub fn inconclusive(&self) -> bool {
        self.certification.as_ref().is_some_and(|c| c.status == CertStatus::Inconclusive)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyReport {
    pub schema_version: String,
    pub kind: String,
    pub tool_version: String,
    pub input_digest: String,
    pub faces: Vec<FaceRecord>,
    pub certification: CertificationReport,
    pub structure: StructureReport,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshStats {
    pub vertices: usize,
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub watertight: bool,
    pub volume: f64,
    pub area: f64,
}

impl From<&TriangleMesh> for MeshStats {
    fn from(m: &TriangleMesh) -> Self {
        Self {
            vertices: m.vertices.len(),
            triangles: m.triangles.len(),
            euler_characteristic: m.euler_characteristic(),
            watertight: m.is_watertight(),
            volume: m.volume(),
            area: m.area(),
        }
    }
}

/// Largest excess of `⟨p,u⟩` over `h(u)` across sampled points and audit directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportAudit {
    pub directions: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Output of `sample` (tuple in) and `mesh` (point cloud in).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub schema_version: String,
    pub kind: String,
    pub tool_version: String,
    pub input_digest: Option<String>,
    pub count: usize,
    pub seed: Option<u64>,
    /// Coordinates kept for meshing.
    pub projection: Vec<usize>,
    pub points_file: Option<String>,
    pub stl_file: Option<String>,
    pub mesh: MeshStats,
    pub audit: Option<SupportAudit>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusFailure {
    pub index: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub schema_version: String,
    pub kind: String,
    pub tool_version: String,
    pub count: usize,
    pub seed: u64,
    pub ensemble: Ensemble,
    pub d: usize,
    pub n: usize,
    pub table: BTreeMap<String, usize>,
    pub ovals: usize,
    /// `null` when `count` is zero.
    pub oval_fraction: Option<f64>,
    pub failures: Vec<CensusFailure>,
    pub timing_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub schema_version: String,
    pub kind: String,
    pub tool_version: String,
    pub id: String,
    pub title: String,
    pub action: String,
    pub expected_class: Option<String>,
    /// Whether the result matches the catalogued expectation.
    pub passed: bool,
    pub classification: Option<ClassificationReport>,
    pub closed_form: Option<ClosedFormReport>,
    pub sample: Option<SampleReport>,
}

pub trait Report: Serialize {
    fn to_text(&self) -> String;

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn faces_text(out: &mut String, faces: &[FaceRecord]) {
    for f in faces {
        let _ = writeln!(out, "  {:?} face, normal {}, h = {:.6}", f.kind, fmt_vec(&f.normal), f.support_value);
    }
}

fn cert_text(out: &mut String, c: &CertificationReport) {
    let _ = writeln!(out, "certification: {:?} (min SOS {:.3e} over {} directions)", c.status, c.min_sos, c.grid_size);
}

fn structure_text(out: &mut String, s: &StructureReport) {
    let verdict = if s.passed { "ok".to_string() } else { s.violations.join("; ") };
    let _ = writeln!(out, "structure: {verdict}");
}

impl Report for ClassificationReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            let _ = writeln!(out, "{n}");
        }
        let _ = writeln!(out, "class: {} (dim {}, corner: {})", self.class_name, self.dim, self.corner);
        faces_text(&mut out, &self.faces);
        for c in &self.corners {
            let _ = writeln!(out, "  corner at {}", fmt_vec(&c.point));
        }
        if let Some(c) = &self.certification {
            cert_text(&mut out, c);
        }
        if let Some(s) = &self.structure {
            structure_text(&mut out, s);
        }
        out
    }
}

impl Report for CertifyReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        faces_text(&mut out, &self.faces);
        cert_text(&mut out, &self.certification);
        structure_text(&mut out, &self.structure);
        out
    }
}

impl Report for SampleReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.mesh;
        let _ = writeln!(out, "{} points, hull with {} vertices and {} triangles", self.count, m.vertices, m.triangles);
        let _ = writeln!(out, "watertight: {}, volume {:.6}, area {:.6}", m.watertight, m.volume, m.area);
        if let Some(a) = &self.audit {
            let _ = writeln!(
                out,
                "support audit: max violation {:.3e} ({})",
                a.max_violation,
                if a.passed { "ok" } else { "FAILED" }
            );
        }
        for f in [&self.points_file, &self.stl_file].into_iter().flatten() {
            let _ = writeln!(out, "wrote {f}");
        }
        out
    }
}

impl Report for CensusReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} random {:?} tuples (n = {}, d = {})", self.count, self.ensemble, self.n, self.d);
        for (class, k) in &self.table {
            let _ = writeln!(out, "  {class:>10}  {k}");
        }
        if let Some(f) = self.oval_fraction {
            let _ = writeln!(out, "ovals: {} ({:.1}%)", self.ovals, 100.0 * f);
        }
        for f in &self.failures {
            let _ = writeln!(out, "  tuple {} failed: {}", f.index, f.error);
        }
        out
    }
}

impl Report for ExampleReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.id, self.title);
        if let Some(c) = &self.classification {
            out.push_str(&c.to_text());
        }
        if let Some(cf) = &self.closed_form {
            for c in &cf.checks {
                let _ =
                    writeln!(out, "  {}: max deviation {:.3e} over {} samples", c.label, c.max_deviation, c.samples);
            }
        }
        if let Some(s) = &self.sample {
            out.push_str(&s.to_text());
        }
        let _ = writeln!(out, "{}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}
