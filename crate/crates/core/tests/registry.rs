use jnr::classify::classify;
use jnr::io::TupleDocument;
use jnr::pencil::{pencil_eval, FaceKind};
use jnr::registry::{self, closed_form_check, IDS};
use jnr::Error;

#[test]
fn unknown_id() {
    assert!(matches!(registry::get("nope"), Err(Error::NotFound(_))));
}

#[test]
fn every_listed_id_resolves() {
    let all = registry::all();
    assert_eq!(all.len(), IDS.len());
    for (entry, id) in all.iter().zip(IDS) {
        assert_eq!(entry.id, id);
    }
}

#[test]
fn ex04_is_the_halved_cubic_tuple() {
    let e = registry::get("ex04").unwrap();
    assert_eq!(e.expected_class, Some("(4,0)"));
    let m = pencil_eval(&e.tuple, &[0.0, 0.0, 1.0]).unwrap();
    assert_eq!(m.get(1, 2).re, 0.5);
    assert_eq!(e.expected_faces.len(), 4);
    assert!(e.expected_faces.iter().all(|f| f.kind == FaceKind::Ellipse));
}

#[test]
fn ball_d3_is_an_oval() {
    let e = registry::get("ball-D3").unwrap();
    assert_eq!(e.expected_class, Some("oval(0,0)"));
    assert!(classify(&e.tuple).unwrap().label.is_oval());
}

#[test]
fn all_closed_forms_hold() {
    for entry in registry::all() {
        if entry.closed_form.is_empty() {
            continue;
        }
        let r = closed_form_check(&entry, 200, 1).unwrap();
        assert!(r.passed, "{}: {:?}", entry.id, r.checks);
        assert_eq!(r.checks.len(), entry.closed_form.len());
    }
}

#[test]
fn classes_match_the_catalogue() {
    for entry in registry::all() {
        match entry.expected_class {
            Some(want) => assert_eq!(classify(&entry.tuple).unwrap().label.class_name(), want, "{}", entry.id),
            None => assert!(classify(&entry.tuple).is_err(), "{}", entry.id),
        }
    }
}

#[test]
fn lambda_family() {
    assert_eq!(registry::ex11(0.0).expected_class, Some("oval(0,0)"));
    assert_eq!(registry::ex11(1.0).expected_class, registry::get("ex11").unwrap().expected_class);
    let two = registry::ex11(2.0);
    assert_eq!(two.id, registry::get("ex11-lambda2").unwrap().id);
}

#[test]
fn derived_faces_are_flagged() {
    let e = registry::get("ex03b").unwrap();
    assert!(e.expected_faces.iter().all(|f| f.derived));
    assert!(registry::get("ex02").unwrap().expected_faces.iter().all(|f| !f.derived));
}

#[test]
fn entries_round_trip_through_documents() {
    for entry in registry::all() {
        let doc = TupleDocument::from_tuple(&entry.tuple, Some(entry.id.clone()), None);
        let back = TupleDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.to_tuple(false).unwrap(), entry.tuple, "{}", entry.id);
        assert_eq!(back.digest().unwrap(), doc.digest().unwrap());
    }
}
