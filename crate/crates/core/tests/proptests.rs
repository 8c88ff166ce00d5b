use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jnr::hermitian::{discriminant3, sos_total, HermitianMatrix, C64};
use jnr::io::{expr, TupleDocument};
use jnr::pencil::{apply_unitary, dot, pencil_eval, support, MatrixTuple};
use jnr::sampling::{convex_hull3, random_unitary, sample_states};

fn hermitian3() -> impl Strategy<Value = HermitianMatrix> {
    prop::array::uniform9(-10.0..10.0f64).prop_map(|a| {
        let e = vec![
            C64::new(a[0], 0.0),
            C64::new(a[3], a[4]),
            C64::new(a[5], a[6]),
            C64::new(a[3], -a[4]),
            C64::new(a[1], 0.0),
            C64::new(a[7], a[8]),
            C64::new(a[5], -a[6]),
            C64::new(a[7], -a[8]),
            C64::new(a[2], 0.0),
        ];
        HermitianMatrix::new(3, e).unwrap()
    })
}

fn triple() -> impl Strategy<Value = MatrixTuple> {
    (hermitian3(), hermitian3(), hermitian3()).prop_map(|(a, b, c)| MatrixTuple::new(vec![a, b, c]).unwrap())
}

fn direction() -> impl Strategy<Value = Vec<f64>> {
    prop::array::uniform3(-1.0..1.0f64).prop_filter("nonzero", |v| dot(v, v) > 1e-4).prop_map(|v| {
        let l = dot(&v, &v).sqrt();
        v.iter().map(|x| x / l).collect()
    })
}

fn oracle_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.to_dmatrix()).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn discriminant_is_the_squared_vandermonde(m in hermitian3()) {
        let l = oracle_eigenvalues(&m);
        let want = ((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])).powi(2);
        let scale6 = m.max_abs().max(1e-3).powi(6);
        let d = discriminant3(&m).unwrap();
        prop_assert!(d >= -1e-10 * scale6);
        prop_assert!((d - want).abs() <= 1e-8 * scale6);
    }

    #[test]
    fn certificate_equals_discriminant(m in hermitian3()) {
        let scale6 = m.max_abs().max(1e-3).powi(6);
        let d = discriminant3(&m).unwrap();
        prop_assert!((sos_total(&m).unwrap() - d.abs()).abs() <= 1e-8 * scale6);
    }

    #[test]
    fn discriminant_is_shift_invariant_and_homogeneous(m in hermitian3(), t in -5.0..5.0f64, s in 0.1..3.0f64) {
        let scale6 = m.max_abs().max(1e-3).powi(6);
        let d = discriminant3(&m).unwrap();
        prop_assert!((discriminant3(&m.shifted(t)).unwrap() - d).abs() <= 1e-7 * scale6.max((m.max_abs() + t.abs()).powi(6)));
        prop_assert!((discriminant3(&m.scaled(s)).unwrap() - s.powi(6) * d).abs() <= 1e-8 * s.powi(6) * scale6);
    }

    #[test]
    fn support_function_is_convex_and_bounds_samples(f in triple(), u in direction(), v in direction(), seed in 0u64..1000) {
        let hu = support(&f, &u).unwrap();
        let hv = support(&f, &v).unwrap();
        let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let tol = 1e-10 * f.scale();
        if dot(&w, &w) > 1e-8 {
            prop_assert!(support(&f, &w).unwrap() <= hu + hv + tol);
        }
        let neg: Vec<f64> = u.iter().map(|x| -x).collect();
        prop_assert!(hu + support(&f, &neg).unwrap() >= -tol);
        for p in sample_states(&f, 64, seed).unwrap().iter() {
            prop_assert!(dot(p, &u) <= hu + tol);
        }
    }

    #[test]
    fn support_is_unitarily_invariant(f in triple(), u in direction(), seed in 0u64..1000) {
        let q = random_unitary(3, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = apply_unitary(&f, &q).unwrap();
        prop_assert!((support(&f, &u).unwrap() - support(&g, &u).unwrap()).abs() <= 1e-10 * f.scale());
    }

    #[test]
    fn pencil_is_linear(f in triple(), u in direction(), v in direction(), a in -3.0..3.0f64) {
        let w: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + y).collect();
        prop_assume!(dot(&w, &w) > 1e-8);
        let lhs = pencil_eval(&f, &w).unwrap();
        let rhs = pencil_eval(&f, &u).unwrap().scaled(a).add(&pencil_eval(&f, &v).unwrap()).unwrap();
        let diff = DMatrix::from_iterator(9, 1, lhs.entries().iter().zip(rhs.entries()).map(|(x, y)| (x - y).norm()));
        prop_assert!(diff.max() <= 1e-12 * f.scale());
    }

    #[test]
    fn hull_contains_its_points(pts in prop::collection::vec(prop::array::uniform3(-1.0..1.0f64), 8..200)) {
        match convex_hull3(&pts) {
            Ok(mesh) => {
                prop_assert!(mesh.is_watertight());
                prop_assert_eq!(mesh.euler_characteristic(), 2);
                prop_assert!(mesh.volume() > 0.0);
                for (t, n) in mesh.triangles.iter().zip(mesh.normals()) {
                    let a = mesh.vertices[t[0]];
                    for p in &pts {
                        let d = [p[0] - a[0], p[1] - a[1], p[2] - a[2]];
                        prop_assert!(dot(&d, &n) <= 1e-9);
                    }
                }
            }
            Err(e) => prop_assert!(matches!(e, jnr::Error::DegenerateHull(_))),
        }
    }

    #[test]
    fn expressions_round_trip(x in -1e6..1e6f64, y in 0.5..100.0f64) {
        prop_assert_eq!(expr::eval(&format!("{x:e}")).unwrap(), x);
        let got = expr::eval(&format!("({x:e}) / ({y:e}) + sqrt({y:e})")).unwrap();
        prop_assert!((got - (x / y + y.sqrt())).abs() <= 1e-12 * (1.0 + got.abs()));
    }

    #[test]
    fn documents_round_trip(f in triple()) {
        let doc = TupleDocument::from_tuple(&f, Some("t".into()), None);
        let back = TupleDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(back.to_tuple(false).unwrap(), f);
        prop_assert_eq!(back.digest().unwrap(), doc.digest().unwrap());
    }
}
