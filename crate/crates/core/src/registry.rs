//! Catalogue of reference tuples with their expected classes, face normals,
//! face kinds and closed-form minor identities.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{discriminant3, sos_minor, HermitianMatrix, C64, RELTOL_SOS};
use crate::pencil::{pencil_eval, FaceKind, MatrixTuple};

/// Where the sample directions of a closed-form check live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// Listed coordinates are fixed (each nonzero value gets a random sign
    /// when `signed`); the rest are uniform in `[-2, 2]`.
    Chart {
        fixed: &'static [(usize, f64)],
        signed: bool,
    },
    UnitSphere,
}

/// Which quantity a closed-form check evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    /// `|M_ν|²` for three 1-based matrix positions.
    Minor([(u8, u8); 3]),
    Discriminant,
}

#[derive(Debug, Clone, Copy)]
pub struct ClosedFormCheck {
    pub label: &'static str,
    pub quantity: Quantity,
    pub domain: Domain,
    pub formula: fn(&[f64]) -> f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedFace {
    /// Not necessarily normalized.
    pub normal: Vec<f64>,
    pub kind: FaceKind,
    /// Computed once by this library and frozen, rather than asserted.
    pub derived: bool,
}

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub id: String,
    pub title: &'static str,
    pub tuple: MatrixTuple,
    /// `None` for tuples outside the classifier's scope.
    pub expected_class: Option<&'static str>,
    /// Complete list of large faces, when known.
    pub expected_faces: Vec<ExpectedFace>,
    pub closed_form: Vec<ClosedFormCheck>,
    pub notes: &'static str,
}

pub const IDS: [&str; 16] = [
    "ex01",
    "ex02",
    "ex03",
    "ex03b",
    "ex04",
    "ex10",
    "ex11",
    "ex11-lambda0",
    "ex11-lambda2",
    "ex12",
    "ball-D2",
    "ball-D3",
    "ball-D4",
    "ball-D5",
    "roman",
    "limits4",
];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn mat(rows: [[C64; 3]; 3]) -> HermitianMatrix {
    HermitianMatrix::new(3, rows.concat()).expect("registry matrices are hermitian")
}

fn real(rows: [[f64; 3]; 3]) -> HermitianMatrix {
    mat(rows.map(|row| row.map(r)))
}

fn tuple(ms: Vec<HermitianMatrix>) -> MatrixTuple {
    MatrixTuple::new(ms).expect("registry tuples are consistent")
}

fn face(normal: &[f64], kind: FaceKind) -> ExpectedFace {
    ExpectedFace { normal: normal.to_vec(), kind, derived: false }
}

fn derived(normal: &[f64], kind: FaceKind) -> ExpectedFace {
    ExpectedFace { normal: normal.to_vec(), kind, derived: true }
}

fn sq(x: f64) -> f64 {
    x * x
}

/// `G₁ = diag(1,1,-1)` and `Gᵢ` carrying `vᵢ` in the last column.
pub fn ball_tuple(frame: &[[C64; 2]]) -> MatrixTuple {
    let z = r(0.0);
    let mut ms = vec![real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]])];
    for v in frame {
        ms.push(mat([[z, z, v[0]], [z, z, v[1]], [v[0].conj(), v[1].conj(), z]]));
    }
    tuple(ms)
}

/// The generic orthonormal real frame for `D ≤ 4`, truncated to `D - 1` vectors.
pub fn frame_d4(phi: f64, theta: f64, count: usize) -> Vec<[C64; 2]> {
    let v4 = [c(0.0, -phi.sin() * theta.cos()), c(phi.cos() * theta.cos(), theta.sin())];
    let all = [[r(1.0), r(0.0)], [c(0.0, phi.cos()), r(phi.sin())], v4];
    all[..count].to_vec()
}

pub fn frame_d5() -> Vec<[C64; 2]> {
    vec![[r(1.0), r(0.0)], [c(0.0, 1.0), r(0.0)], [r(0.0), r(1.0)], [r(0.0), c(0.0, 1.0)]]
}

pub fn frame_d3_real() -> Vec<[C64; 2]> {
    vec![[r(1.0), r(0.0)], [r(0.0), r(1.0)]]
}

fn ball_disc(u: &[f64]) -> f64 {
    4.0 * sq(u[1..].iter().map(|x| x * x).sum::<f64>())
}

const BALL_CHECK: ClosedFormCheck = ClosedFormCheck {
    label: "discriminant",
    quantity: Quantity::Discriminant,
    domain: Domain::UnitSphere,
    formula: ball_disc,
};

fn ex01() -> RegistryEntry {
    let s = FRAC_1_SQRT_2;
    let z = r(0.0);
    RegistryEntry {
        id: "ex01".into(),
        title: "one ellipse, no segments",
        tuple: tuple(vec![
            real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]),
            real([[0.0, s, 0.0], [s, 0.0, s], [0.0, s, 0.0]]),
            mat([[z, c(0.0, -s), z], [c(0.0, s), z, c(0.0, -s)], [z, c(0.0, s), z]]),
        ]),
        expected_class: Some("(1,0)"),
        expected_faces: vec![face(&[1.0, 0.0, 0.0], FaceKind::Ellipse)],
        closed_form: vec![ClosedFormCheck {
            label: "nu={(1,1),(1,2),(1,3)}",
            quantity: Quantity::Minor([(1, 1), (1, 2), (1, 3)]),
            domain: Domain::Chart { fixed: &[(0, 0.0)], signed: false },
            formula: |u| (sq(u[1]) + sq(u[2])).powi(3) / 8.0,
        }],
        notes: "",
    }
}

fn ex02() -> RegistryEntry {
    RegistryEntry {
        id: "ex02".into(),
        title: "two ellipses, no segments",
        tuple: tuple(vec![
            real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]),
            real([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
            real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        ]),
        expected_class: Some("(2,0)"),
        expected_faces: vec![
            face(&[-1.0, 2f64.sqrt(), 0.0], FaceKind::Ellipse),
            face(&[-1.0, -(2f64.sqrt()), 0.0], FaceKind::Ellipse),
        ],
        closed_form: vec![
            ClosedFormCheck {
                label: "nu1={(1,1),(1,2),(3,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (3, 3)]),
                domain: Domain::Chart { fixed: &[(2, 1.0)], signed: true },
                formula: |u| sq(1.0 + sq(u[0])),
            },
            ClosedFormCheck {
                label: "nu2={(1,1),(1,3),(2,2)}",
                quantity: Quantity::Minor([(1, 1), (1, 3), (2, 2)]),
                domain: Domain::Chart { fixed: &[(2, 0.0)], signed: false },
                formula: |u| sq(u[1]) * sq(sq(u[1]) - 2.0 * sq(u[0])),
            },
            ClosedFormCheck {
                label: "nu3={(1,1),(2,2),(3,3)}",
                quantity: Quantity::Minor([(1, 1), (2, 2), (3, 3)]),
                domain: Domain::Chart { fixed: &[(2, 0.0)], signed: false },
                formula: |u| sq(u[0]) * sq(sq(u[1]) - 2.0 * sq(u[0])),
            },
        ],
        notes: "",
    }
}

fn ex03() -> RegistryEntry {
    let s = FRAC_1_SQRT_2;
    let z = r(0.0);
    RegistryEntry {
        id: "ex03".into(),
        title: "three ellipses, no segments",
        tuple: tuple(vec![
            real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            mat([[z, c(0.0, s), r(s)], [c(0.0, -s), z, z], [r(s), z, z]]),
            real([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]),
        ]),
        expected_class: Some("(3,0)"),
        expected_faces: vec![
            face(&[0.0, 0.0, 1.0], FaceKind::Ellipse),
            face(&[2.0, 0.0, -1.0], FaceKind::Ellipse),
            face(&[-2.0, 0.0, -1.0], FaceKind::Ellipse),
        ],
        closed_form: vec![
            ClosedFormCheck {
                label: "nu1={(1,1),(1,2),(2,2)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (2, 2)]),
                domain: Domain::Chart { fixed: &[(1, 1.0)], signed: true },
                formula: |u| (1.0 + 2.0 * sq(u[0])) / 8.0,
            },
            ClosedFormCheck {
                label: "nu2={(1,1),(1,2),(3,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (3, 3)]),
                domain: Domain::Chart { fixed: &[(1, 0.0)], signed: false },
                formula: |u| sq(u[0]) * sq(sq(u[0]) - 4.0 * sq(u[2])),
            },
        ],
        notes: "",
    }
}

fn ex03b() -> RegistryEntry {
    let z = r(0.0);
    RegistryEntry {
        id: "ex03b".into(),
        title: "three ellipses, no segments (permutation form)",
        tuple: tuple(vec![
            real([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]]),
            real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            mat([[z, z, c(0.0, 1.0)], [z, r(1.0), z], [c(0.0, -1.0), z, z]]),
        ]),
        expected_class: Some("(3,0)"),
        expected_faces: vec![
            derived(&[1.0, 0.0, 0.0], FaceKind::Ellipse),
            derived(&[0.0, 1.0, 0.0], FaceKind::Ellipse),
            derived(&[0.0, 0.0, 1.0], FaceKind::Ellipse),
        ],
        closed_form: vec![],
        notes: "three mutually orthogonal ellipse normals; computed by the face scan and frozen",
    }
}

/// The cubic (four-ellipse) tuple with off-diagonal entries `a`.
fn four_ellipses(a: f64) -> MatrixTuple {
    tuple(vec![
        real([[0.0, a, 0.0], [a, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        real([[0.0, 0.0, a], [0.0, 0.0, 0.0], [a, 0.0, 0.0]]),
        real([[0.0, 0.0, 0.0], [0.0, 0.0, a], [0.0, a, 0.0]]),
    ])
}

fn tetra_faces() -> Vec<ExpectedFace> {
    [[-1.0, -1.0, -1.0], [-1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, -1.0]]
        .iter()
        .map(|n| face(n, FaceKind::Ellipse))
        .collect()
}

fn ex04() -> RegistryEntry {
    RegistryEntry {
        id: "ex04".into(),
        title: "four ellipses, no segments",
        tuple: four_ellipses(0.5),
        expected_class: Some("(4,0)"),
        expected_faces: tetra_faces(),
        closed_form: vec![ClosedFormCheck {
            label: "discriminant",
            quantity: Quantity::Discriminant,
            domain: Domain::UnitSphere,
            formula: |u| {
                let (a, b, c) = (sq(u[0]), sq(u[1]), sq(u[2]));
                (sq(a - b) + sq(b - c) + sq(c - a) + 6.0 * (c * sq(a - b) + a * sq(b - c) + b * sq(c - a))) / 32.0
            },
        }],
        notes: "",
    }
}

fn roman() -> RegistryEntry {
    RegistryEntry {
        id: "roman".into(),
        title: "four ellipses, no segments (unscaled)",
        tuple: four_ellipses(1.0),
        expected_class: Some("(4,0)"),
        expected_faces: tetra_faces(),
        closed_form: vec![],
        notes: "the ex04 tuple without the factor 1/2",
    }
}

fn ex10() -> RegistryEntry {
    let s = FRAC_1_SQRT_2;
    let z = r(0.0);
    RegistryEntry {
        id: "ex10".into(),
        title: "no ellipses, one segment",
        tuple: tuple(vec![
            real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]),
            mat([[z, z, c(0.0, s)], [z, z, r(s)], [c(0.0, -s), r(s), z]]),
        ]),
        expected_class: Some("(0,1)"),
        expected_faces: vec![face(&[0.0, 1.0, 0.0], FaceKind::Segment)],
        closed_form: vec![
            ClosedFormCheck {
                label: "nu1={(1,1),(1,2),(1,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (1, 3)]),
                domain: Domain::Chart { fixed: &[(2, 1.0)], signed: true },
                formula: |u| (1.0 + 4.0 * u[0].powi(4) + 4.0 * sq(u[0]) * (1.0 + 4.0 * sq(u[1]))) / 8.0,
            },
            ClosedFormCheck {
                label: "nu2={(1,1),(1,2),(3,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (3, 3)]),
                domain: Domain::Chart { fixed: &[(2, 0.0)], signed: false },
                formula: |u| u[0].powi(6),
            },
        ],
        notes: "",
    }
}

/// The one-parameter family; `λ = 0` is a ball, `λ = 1` has one ellipse
/// and one segment.
pub fn ex11(lambda: f64) -> RegistryEntry {
    let f = tuple(vec![
        real([[0.5 * lambda, 0.0, 0.0], [0.0, 0.0, 0.5], [0.0, 0.5, 0.0]]),
        real([[0.0, 0.0, 0.5], [0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]),
        real([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
    ]);
    let (id, class, faces, notes) = if lambda == 0.0 {
        ("ex11-lambda0".to_string(), Some("oval(0,0)"), vec![], "a Euclidean ball of radius 1/2")
    } else if lambda == 1.0 {
        (
            "ex11".to_string(),
            Some("(1,1)"),
            vec![face(&[1.0, 0.0, 0.0], FaceKind::Ellipse), face(&[0.0, 0.0, -1.0], FaceKind::Segment)],
            "face kinds computed from the rank of the Bloch map and frozen",
        )
    } else if lambda == 2.0 {
        (
            "ex11-lambda2".to_string(),
            Some("(1,1)"),
            vec![derived(&[0.8, 0.0, 0.6], FaceKind::Ellipse), derived(&[0.0, 0.0, -1.0], FaceKind::Segment)],
            "ellipse normal (2λ, 0, λ²-1)/(λ²+1), where the lower 2×2 block meets λ·u₁/2",
        )
    } else {
        (format!("ex11-lambda{lambda}"), None, vec![], "")
    };
    let closed_form = if lambda == 1.0 {
        vec![
            ClosedFormCheck {
                label: "nu1={(1,1),(1,2),(1,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (1, 3)]),
                domain: Domain::Chart { fixed: &[(1, 1.0)], signed: true },
                formula: |u| sq(u[0]) / 64.0,
            },
            ClosedFormCheck {
                label: "nu2={(1,1),(1,3),(2,2)}",
                quantity: Quantity::Minor([(1, 1), (1, 3), (2, 2)]),
                domain: Domain::Chart { fixed: &[(1, 1.0), (0, 0.0)], signed: true },
                formula: |_| 1.0 / 64.0,
            },
            ClosedFormCheck {
                label: "nu3={(1,1),(2,2),(2,3)}",
                quantity: Quantity::Minor([(1, 1), (2, 2), (2, 3)]),
                domain: Domain::Chart { fixed: &[(1, 0.0)], signed: false },
                formula: |u| u[0].powi(4) * sq(u[2]) / 16.0,
            },
        ]
    } else {
        vec![]
    };
    RegistryEntry {
        id,
        title: if lambda == 0.0 { "Euclidean ball (family member)" } else { "one ellipse, one segment (family)" },
        tuple: f,
        expected_class: class,
        expected_faces: faces,
        closed_form,
        notes,
    }
}

fn ex12() -> RegistryEntry {
    RegistryEntry {
        id: "ex12".into(),
        title: "two ellipses, one segment",
        tuple: tuple(vec![
            real([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]),
            real([[0.0, 0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]]),
            real([[0.0, 0.0, 0.5], [0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]),
        ]),
        expected_class: Some("(2,1)"),
        expected_faces: vec![
            face(&[-1.0, 0.0, 0.0], FaceKind::Segment),
            face(&[1.0, 2.0, 0.0], FaceKind::Ellipse),
            face(&[1.0, -2.0, 0.0], FaceKind::Ellipse),
        ],
        closed_form: vec![
            ClosedFormCheck {
                label: "nu1={(1,1),(1,3),(2,2)}",
                quantity: Quantity::Minor([(1, 1), (1, 3), (2, 2)]),
                domain: Domain::Chart { fixed: &[(2, 1.0)], signed: true },
                formula: |_| 1.0 / 64.0,
            },
            ClosedFormCheck {
                label: "nu2={(1,1),(1,2),(3,3)}",
                quantity: Quantity::Minor([(1, 1), (1, 2), (3, 3)]),
                domain: Domain::Chart { fixed: &[(2, 0.0)], signed: false },
                formula: |u| sq(u[1]) * sq(sq(u[1]) - 4.0 * sq(u[0])) / 64.0,
            },
        ],
        notes: "face kinds computed from the rank of the Bloch map and frozen",
    }
}

fn ball(id: &str) -> RegistryEntry {
    let (frame, class, title) = match id {
        "ball-D2" => (frame_d3_real()[..1].to_vec(), Some("dim2-s0"), "unit disc"),
        "ball-D3" => (frame_d3_real(), Some("oval(0,0)"), "unit ball, real frame"),
        "ball-D4" => (frame_d4(PI / 3.0, PI / 5.0, 3), None, "unit 4-ball"),
        _ => (frame_d5(), None, "unit 5-ball"),
    };
    RegistryEntry {
        id: id.into(),
        title,
        tuple: ball_tuple(&frame),
        expected_class: class,
        expected_faces: vec![],
        closed_form: vec![BALL_CHECK],
        notes: "the top eigenvalue is degenerate at (1,0,…,0) but the exposed face is a point",
    }
}

fn limits4() -> RegistryEntry {
    let mut f1 = vec![r(0.0); 16];
    let mut f2 = vec![r(0.0); 16];
    let mut f3 = vec![r(0.0); 16];
    for (i, v) in [1.0, -1.0, 1.0, 1.0].iter().enumerate() {
        f1[i * 5] = r(*v);
    }
    f2[1] = r(1.0);
    f2[4] = r(1.0);
    f3[10] = r(-1.0);
    f3[15] = r(1.0);
    let m = |e| HermitianMatrix::new(4, e).expect("hermitian");
    RegistryEntry {
        id: "limits4".into(),
        title: "4×4 tuple, sampling only",
        tuple: tuple(vec![m(f1), m(f2), m(f3)]),
        expected_class: None,
        expected_faces: vec![],
        closed_form: vec![],
        notes: "outside the classifier's scope (d = 4)",
    }
}

pub fn get(id: &str) -> Result<RegistryEntry> {
    Ok(match id {
        "ex01" => ex01(),
        "ex02" => ex02(),
        "ex03" => ex03(),
        "ex03b" => ex03b(),
        "ex04" => ex04(),
        "ex10" => ex10(),
        "ex11" => ex11(1.0),
        "ex11-lambda0" => ex11(0.0),
        "ex11-lambda2" => ex11(2.0),
        "ex12" => ex12(),
        "ball-D2" | "ball-D3" | "ball-D4" | "ball-D5" => ball(id),
        "roman" => roman(),
        "limits4" => limits4(),
        _ => return Err(Error::NotFound(format!("no registry entry '{id}'"))),
    })
}

pub fn all() -> Vec<RegistryEntry> {
    IDS.iter().map(|id| get(id).expect("listed ids resolve")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub label: String,
    pub samples: usize,
    /// Largest `|computed − formula| / scale⁶`.
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormReport {
    pub id: String,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn sample_direction(domain: Domain, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match domain {
        Domain::UnitSphere => loop {
            let u: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-3 && norm <= 1.0 {
                return u.iter().map(|x| x / norm).collect();
            }
        },
        Domain::Chart { fixed, signed } => {
            let mut u: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            let sign = if signed && rng.random_bool(0.5) { -1.0 } else { 1.0 };
            for &(i, v) in fixed {
                u[i] = sign * v;
            }
            if u.iter().all(|&x| x == 0.0) {
                u[0] = 1.0;
            }
            u
        }
    }
}

/// Compares every closed-form identity of `entry` at `samples` random
/// directions. Deviations are relative to `scale⁶`, `scale = max|F(u)ᵢⱼ|`.
pub fn closed_form_check(entry: &RegistryEntry, samples: usize, seed: u64) -> Result<ClosedFormReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for check in &entry.closed_form {
        let mut worst = 0.0_f64;
        for _ in 0..samples {
            let u = sample_direction(check.domain, entry.tuple.n(), &mut rng);
            let m = pencil_eval(&entry.tuple, &u)?;
            let got = match check.quantity {
                Quantity::Minor(pairs) => sos_minor(&m, pairs)?,
                Quantity::Discriminant => discriminant3(&m)?,
            };
            let scale = m.max_abs().max(f64::MIN_POSITIVE);
            worst = worst.max((got - (check.formula)(&u)).abs() / scale.powi(6));
        }
        checks.push(CheckResult {
            label: check.label.into(),
            samples,
            max_deviation: worst,
            passed: worst <= RELTOL_SOS,
        });
    }
    Ok(ClosedFormReport { id: entry.id.clone(), passed: checks.iter().all(|c| c.passed), checks })
}
