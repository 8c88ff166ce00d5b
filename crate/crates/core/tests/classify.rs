use jnr::classify::{
    certify_no_other_faces_with, check_intersection_structure, classify, find_corners, scan_large_faces, CertStatus,
    LargeFaceSet, SegmentCount,
};
use jnr::hermitian::{HermitianMatrix, C64};
use jnr::pencil::{angle_between, pencil_eval, FaceKind, MatrixTuple};
use jnr::registry;
use jnr::sampling::{random_tuple, Ensemble};
use jnr::tolerances::Tolerances;
use jnr::Error;

fn tuple(id: &str) -> MatrixTuple {
    registry::get(id).unwrap().tuple
}

fn real(rows: [[f64; 3]; 3]) -> HermitianMatrix {
    HermitianMatrix::from_real(3, &rows.concat()).unwrap()
}

/// `a ⊕ s` for a scalar `a` and a 2×2 hermitian `s` given by its Bloch vector.
fn direct_sum(a: f64, bloch: [f64; 3]) -> HermitianMatrix {
    let z = C64::new(0.0, 0.0);
    let [x, y, w] = bloch;
    HermitianMatrix::new(
        3,
        vec![C64::new(a, 0.0), z, z, z, C64::new(w, 0.0), C64::new(x, -y), z, C64::new(x, y), C64::new(-w, 0.0)],
    )
    .unwrap()
}

fn cheap_cert() -> Tolerances {
    Tolerances { n_cert: 200_000, ..Tolerances::default() }
}

fn assert_faces_match(id: &str, set: &LargeFaceSet) {
    let entry = registry::get(id).unwrap();
    assert_eq!(set.faces.len(), entry.expected_faces.len(), "{id}");
    for ef in &entry.expected_faces {
        let hit = set.faces.iter().find(|f| angle_between(&f.normal, &ef.normal) <= 1e-4);
        let hit = hit.unwrap_or_else(|| panic!("{id}: no face near {:?}", ef.normal));
        assert_eq!(hit.kind, ef.kind, "{id}: {:?}", ef.normal);
    }
}

#[test]
fn scan_finds_catalogued_faces() {
    for id in ["ex01", "ex02", "ex03", "ex03b", "ex04", "ex10", "ex12", "roman"] {
        assert_faces_match(id, &scan_large_faces(&tuple(id)).unwrap());
    }
}

#[test]
fn scan_finds_no_faces_on_ball() {
    let set = scan_large_faces(&tuple("ball-D3")).unwrap();
    assert!(set.faces.is_empty());
}

#[test]
fn every_face_has_a_vanishing_discriminant() {
    let f = tuple("ex03");
    for face in scan_large_faces(&f).unwrap().faces {
        let m = pencil_eval(&f, &face.normal).unwrap();
        assert!(jnr::hermitian::discriminant3(&m).unwrap() <= 1e-12 * m.max_abs().powi(6));
        assert_eq!(face.kind, FaceKind::Ellipse);
    }
}

#[test]
fn certification_passes_with_the_full_face_list() {
    let tol = cheap_cert();
    for id in ["ex01", "ball-D3", "ex12"] {
        let f = tuple(id);
        let set = scan_large_faces(&f).unwrap();
        let r = certify_no_other_faces_with(&f, &set, &tol).unwrap();
        assert_eq!(r.status, CertStatus::Pass, "{id}: {r:?}");
        assert_eq!(r.grid_size, tol.n_cert);
    }
}

#[test]
fn certification_of_a_generic_oval_needs_no_caps() {
    let f = random_tuple(3, 3, Ensemble::Gue, 11).unwrap();
    let r = certify_no_other_faces_with(&f, &LargeFaceSet::default(), &cheap_cert()).unwrap();
    assert_eq!(r.status, CertStatus::Pass);
    assert_eq!(r.excluded, 0);
}

#[test]
fn certification_flags_a_missing_face() {
    let f = tuple("ex01");
    let r = certify_no_other_faces_with(&f, &LargeFaceSet::default(), &cheap_cert()).unwrap();
    assert_eq!(r.status, CertStatus::Inconclusive);
    assert!(
        angle_between(r.min_direction.as_ref().unwrap(), &[1.0, 0.0, 0.0])
            .min(angle_between(r.min_direction.as_ref().unwrap(), &[-1.0, 0.0, 0.0]))
            <= 1e-3
    );

    let f = tuple("ex12");
    let mut set = scan_large_faces(&f).unwrap();
    set.faces.retain(|face| face.kind != FaceKind::Segment);
    let r = certify_no_other_faces_with(&f, &set, &cheap_cert()).unwrap();
    assert_eq!(r.status, CertStatus::Inconclusive);
}

#[test]
fn corners_of_diagonal_tuples() {
    let f = MatrixTuple::new(vec![
        HermitianMatrix::diag(&[1.0, 0.0, 0.0]),
        HermitianMatrix::diag(&[0.0, 1.0, 0.0]),
        HermitianMatrix::diag(&[0.0, 0.0, 1.0]),
    ])
    .unwrap();
    let corners = find_corners(&f).unwrap();
    assert_eq!(corners.len(), 3);
    for c in &corners {
        assert_eq!(c.eigenspace.len(), 1);
        assert!((c.point.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }
    assert!(find_corners(&tuple("ex04")).unwrap().is_empty());
    assert!(find_corners(&tuple("ex12")).unwrap().is_empty());
}

#[test]
fn cone_over_a_ball_is_zero_infinity() {
    let f = MatrixTuple::new(vec![
        direct_sum(2.0, [1.0, 0.0, 0.0]),
        direct_sum(0.0, [0.0, 1.0, 0.0]),
        direct_sum(0.0, [0.0, 0.0, 1.0]),
    ])
    .unwrap();
    let c = classify(&f).unwrap();
    assert_eq!(c.label.class_name(), "(0,∞)");
    assert!(c.label.corner);
    assert_eq!(c.label.s, SegmentCount::Infinite);
    assert_eq!(c.corners.len(), 1);
    let p = &c.corners[0].point;
    assert!((p[0] - 2.0).abs() <= 1e-12 && p[1].abs() <= 1e-12 && p[2].abs() <= 1e-12);
    assert!((c.corners[0].distance - 1.0).abs() <= 1e-9);
}

#[test]
fn cone_over_a_disc_is_one_infinity() {
    let f = MatrixTuple::new(vec![
        direct_sum(2.0, [1.0, 0.0, 0.0]),
        direct_sum(0.0, [0.0, 1.0, 0.0]),
        direct_sum(1.0, [0.0, 0.0, 0.0]),
    ])
    .unwrap();
    let c = classify(&f).unwrap();
    assert_eq!(c.label.class_name(), "(1,∞)");
    assert_eq!(c.corners[0].block_range.as_ref().unwrap().rank(), 2);
}

#[test]
fn low_dimensional_labels() {
    let i = HermitianMatrix::identity(3);
    let scalar = MatrixTuple::new(vec![i.clone(), i.scaled(2.0), i.scaled(-1.0)]).unwrap();
    assert_eq!(classify(&scalar).unwrap().label.class_name(), "dim0");

    let z = HermitianMatrix::zeros(3);
    let line = MatrixTuple::new(vec![HermitianMatrix::diag(&[1.0, 0.0, 0.0]), z.clone(), z]).unwrap();
    let l = classify(&line).unwrap().label;
    assert_eq!(l.class_name(), "dim1");
    assert!(l.corner);

    assert_eq!(classify(&tuple("ball-D2")).unwrap().label.class_name(), "dim2-s0");

    let triangle = MatrixTuple::new(vec![
        HermitianMatrix::diag(&[1.0, 0.0, 0.0]),
        HermitianMatrix::diag(&[0.0, 1.0, 0.0]),
        HermitianMatrix::diag(&[0.0, 0.0, 1.0]),
    ])
    .unwrap();
    let l = classify(&triangle).unwrap().label;
    assert_eq!(l.class_name(), "dim2-s3");
    assert!(l.corner);
    assert!(!l.is_oval());
}

#[test]
fn short_tuples_are_padded() {
    let f = MatrixTuple::new(tuple("ex04").matrices()[..2].to_vec()).unwrap();
    let c = classify(&f).unwrap();
    assert_eq!(c.label.ambient, 2);
    assert_eq!(c.tuple.n(), 3);
    assert_eq!(c.label.dim, 2);
}

#[test]
fn out_of_scope_inputs() {
    assert!(matches!(classify(&tuple("ball-D4")), Err(Error::DimensionMismatch { expected: 3, .. })));
    let m = HermitianMatrix::diag(&[1.0, 0.0, 0.0]);
    let four = MatrixTuple::new(vec![m.clone(), m.clone(), m.clone(), m]).unwrap();
    assert!(matches!(classify(&four), Err(Error::DimensionMismatch { expected: 3, found: 4 })));
}

#[test]
fn pairwise_structure_of_ex04() {
    let f = tuple("ex04");
    let faces = scan_large_faces(&f).unwrap().faces;
    let r = check_intersection_structure(&f, &faces);
    assert_eq!(r.pairs.len(), 6);
    assert!(r.passed, "{:?}", r.violations);
    assert!(r.pairs.iter().all(|p| p.intersects && p.unique && p.consistent));
    assert_eq!(r.segment_count, 0);
}

#[test]
fn pairwise_structure_of_ex12() {
    let f = tuple("ex12");
    let faces = scan_large_faces(&f).unwrap().faces;
    let r = check_intersection_structure(&f, &faces);
    assert_eq!(r.pairs.len(), 3);
    assert_eq!(r.segment_count, 1);
    assert!(r.passed, "{:?}", r.violations);
}

#[test]
fn single_face_passes_vacuously() {
    let f = tuple("ex01");
    let faces = scan_large_faces(&f).unwrap().faces;
    let r = check_intersection_structure(&f, &faces);
    assert!(r.pairs.is_empty());
    assert!(r.passed);
}

#[test]
fn classification_is_deterministic() {
    let f = tuple("ex12");
    let a = classify(&f).unwrap();
    let b = classify(&f).unwrap();
    assert_eq!(a.label, b.label);
    assert_eq!(a.faces.faces, b.faces.faces);
}

#[test]
fn real_symmetric_pencils_stay_real() {
    let f = MatrixTuple::new(vec![
        real([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]]),
        real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]),
        real([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]),
    ])
    .unwrap();
    let c = classify(&f).unwrap();
    assert_eq!(c.label.dim, 3);
    assert!(!c.label.corner);
}
