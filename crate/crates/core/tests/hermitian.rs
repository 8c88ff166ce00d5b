use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jnr::hermitian::{discriminant3, sos_certificate, sos_minor, sos_total, HermitianMatrix, C64};
use jnr::pencil::pencil_eval;
use jnr::registry;
use jnr::sampling::{random_hermitian, random_unitary, Ensemble};
use jnr::Error;

fn oracle_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m.to_dmatrix()).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Roots of `det(λI − A)` from the eigenvalues of its companion matrix.
fn companion_roots(m: &HermitianMatrix) -> Vec<f64> {
    let a = m.to_dmatrix();
    let tr = a.trace().re;
    let minors = (0..3)
        .map(|k| {
            let (i, j) = [(0, 1), (0, 2), (1, 2)][k];
            (a[(i, i)] * a[(j, j)] - a[(i, j)] * a[(j, i)]).re
        })
        .sum::<f64>();
    let det = a.determinant().re;
    let c = DMatrix::from_row_slice(3, 3, &[tr, -minors, det, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let mut roots: Vec<f64> = c.complex_eigenvalues().iter().map(|z| z.re).collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn diagonal_spectra() {
    let sys = HermitianMatrix::diag(&[1.0, 2.0, 3.0]).eigen().unwrap();
    for (got, want) in sys.values.iter().zip([3.0, 2.0, 1.0]) {
        assert!((got - want).abs() <= 1e-12);
    }
    assert!((sys.gap12 - 1.0).abs() <= 1e-12);

    let sys = HermitianMatrix::diag(&[1.0, 1.0, -1.0]).eigen().unwrap();
    assert!(sys.gap12.abs() <= 1e-12);
    assert_eq!(sys.top_multiplicity(1e-10), 2);
}

#[test]
fn scalar_matrix_has_standard_basis() {
    let sys = HermitianMatrix::identity(3).scaled(2.5).eigen().unwrap();
    assert!(sys.values.iter().all(|v| (v - 2.5).abs() <= 1e-12));
    for (k, v) in sys.vectors.iter().enumerate() {
        for (i, z) in v.iter().enumerate() {
            let want = if i == k { 1.0 } else { 0.0 };
            assert!((z - C64::new(want, 0.0)).norm() <= 1e-12);
        }
    }
}

#[test]
fn three_by_three_matches_companion_roots() {
    let mut r = rng(1);
    for k in 0..200 {
        let ens = if k % 2 == 0 { Ensemble::Gue } else { Ensemble::RealSymmetric };
        let m = random_hermitian(3, ens, &mut r);
        let got = m.eigen().unwrap().values;
        let want = companion_roots(&m);
        let scale = m.frobenius_norm();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-10 * scale, "{got:?} vs {want:?}");
        }
    }
}

#[test]
fn general_dimensions_match_oracle() {
    let mut r = rng(2);
    for d in 1..=6 {
        for _ in 0..20 {
            let m = random_hermitian(d, Ensemble::Gue, &mut r);
            let sys = m.eigen().unwrap();
            let want = oracle_eigenvalues(&m);
            let scale = m.frobenius_norm().max(1.0);
            for (k, (g, w)) in sys.values.iter().zip(&want).enumerate() {
                assert!((g - w).abs() <= 1e-10 * scale);
                let av = m.apply(&sys.vectors[k]);
                let res: f64 = av.iter().zip(&sys.vectors[k]).map(|(a, v)| (a - v * g).norm_sqr()).sum::<f64>().sqrt();
                assert!(res <= 1e-9 * scale, "residual {res} at d = {d}");
            }
            for i in 0..d {
                for j in 0..d {
                    let ip: C64 = sys.vectors[i].iter().zip(&sys.vectors[j]).map(|(a, b)| a.conj() * b).sum();
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - C64::new(want, 0.0)).norm() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn spectrum_is_unitarily_invariant() {
    let mut r = rng(3);
    for _ in 0..50 {
        let m = random_hermitian(3, Ensemble::Gue, &mut r);
        let u = random_unitary(3, &mut r);
        let a = m.eigen().unwrap().values;
        let b = m.conjugate_by(&u).unwrap().eigen().unwrap().values;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-10 * m.frobenius_norm());
        }
    }
}

#[test]
fn rejects_non_hermitian_entries() {
    let e = vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0)];
    assert!(matches!(HermitianMatrix::new(2, e.clone()), Err(Error::InvalidMatrix(_))));
    let s = HermitianMatrix::symmetrized(2, e).unwrap();
    assert_eq!(s.get(1, 0), C64::new(1.5, 0.0));
    let complex_diag = vec![C64::new(1.0, 1.0)];
    assert!(HermitianMatrix::new(1, complex_diag).is_err());
}

#[test]
fn discriminant_examples() {
    assert!((discriminant3(&HermitianMatrix::diag(&[1.0, 2.0, 3.0])).unwrap() - 4.0).abs() <= 1e-12);
    assert!(discriminant3(&HermitianMatrix::diag(&[1.0, 1.0, -1.0])).unwrap().abs() <= 1e-12);
    assert!(matches!(
        discriminant3(&HermitianMatrix::identity(2)),
        Err(Error::DimensionMismatch { expected: 3, found: 2 })
    ));
}

#[test]
fn discriminant_is_homogeneous_of_degree_six() {
    let mut r = rng(4);
    for _ in 0..50 {
        let m = random_hermitian(3, Ensemble::Gue, &mut r);
        let base = discriminant3(&m).unwrap();
        for t in [2.0, -3.0, 0.5_f64] {
            let scaled = discriminant3(&m.scaled(t)).unwrap();
            assert!((scaled - t.powi(6) * base).abs() <= 1e-9 * t.powi(6) * m.frobenius_norm().powi(6));
        }
    }
}

#[test]
fn certificate_sums_to_discriminant() {
    let mut r = rng(5);
    for _ in 0..100 {
        let m = random_hermitian(3, Ensemble::Gue, &mut r);
        let cert = sos_certificate(&m).unwrap();
        assert_eq!(cert.minors.len(), 84);
        let sum: f64 = cert.minors.values().sum();
        let scale6 = m.max_abs().powi(6);
        assert!((sum - cert.total).abs() <= 1e-10 * scale6);
        let l = oracle_eigenvalues(&m);
        let disc = ((l[0] - l[1]) * (l[0] - l[2]) * (l[1] - l[2])).powi(2);
        assert!((cert.total - disc).abs() <= 1e-8 * scale6);
        assert!((sos_total(&m).unwrap() - disc).abs() <= 1e-8 * scale6);
    }
}

#[test]
fn certificate_minor_lookup_ignores_order() {
    let m = random_hermitian(3, Ensemble::Gue, &mut rng(6));
    let cert = sos_certificate(&m).unwrap();
    assert_eq!(cert.minor([(1, 1), (1, 2), (3, 3)]), cert.minor([(3, 3), (1, 1), (1, 2)]));
    assert_eq!(cert.minor([(1, 1), (1, 1), (3, 3)]), None);
}

#[test]
fn known_minors_on_catalogued_tuples() {
    let ex01 = registry::get("ex01").unwrap();
    for (u2, u3) in [(0.3, -1.2), (1.0, 0.0), (-0.7, 0.4)] {
        let m = pencil_eval(&ex01.tuple, &[0.0, u2, u3]).unwrap();
        let got = sos_minor(&m, [(1, 1), (1, 2), (1, 3)]).unwrap();
        let want = (u2 * u2 + u3 * u3).powi(3) / 8.0;
        assert!((got - want).abs() <= 1e-12, "{got} vs {want}");
    }
    let ex12 = registry::get("ex12").unwrap();
    for (u1, u2, u3) in [(0.2, 1.5, 1.0), (-1.0, 0.3, -1.0)] {
        let m = pencil_eval(&ex12.tuple, &[u1, u2, u3]).unwrap();
        let got = sos_minor(&m, [(1, 1), (1, 3), (2, 2)]).unwrap();
        assert!((got - 1.0 / 64.0).abs() <= 1e-12);
    }
}
