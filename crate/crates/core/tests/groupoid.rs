use affine_dirac::group::{models, Mat, MatrixGroupModel, Tag};
use affine_dirac::groupoid::*;
use affine_dirac::poisson::{dressing, richardson};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn all() -> Vec<MatrixGroupModel<f64>> {
    vec![
        models::su2_iwasawa().unwrap(),
        models::su2_torus_nilpotent().unwrap(),
        models::cp1_bruhat().unwrap(),
        models::trivial_sl2().unwrap(),
        models::trivial_sl2_split().unwrap(),
    ]
}

fn diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    (a - b).camax()
}

#[test]
fn constraint_violations_are_rejected() {
    let m = models::su2_iwasawa::<f64>().unwrap();
    let p = random_point(&m, &mut rng(1), 0.7).unwrap();
    let mut bad = p.v.clone();
    bad[(0, 1)] += nalgebra::Complex::new(1e-6, 0.0);
    assert!(make_point(&m, bad, p.g1.clone(), p.g2.clone(), p.l.clone()).is_err());
    // l outside L.
    let g = m.random_element(Tag::G, &mut rng(2), 0.7).unwrap();
    assert!(make_point(&m, Mat::<f64>::identity(2, 2), g.clone(), g.clone(), g).is_err());
}

#[test]
fn groupoid_laws() {
    for m in all() {
        let mut r = rng(3);
        for _ in 0..4 {
            let a = random_point(&m, &mut r, 0.8).unwrap();
            let b = random_composable(&m, &a, &mut r, 0.8).unwrap();
            let c = random_composable(&m, &b, &mut r, 0.8).unwrap();
            let left = multiply(&m, &multiply(&m, &a, &b).unwrap(), &c).unwrap();
            let right = multiply(&m, &a, &multiply(&m, &b, &c).unwrap()).unwrap();
            assert!(distance(&left, &right) < 1e-12, "{}", m.name());

            let ut = unit(&m, target(&a)).unwrap();
            let us = unit(&m, source(&a)).unwrap();
            assert!(distance(&multiply(&m, &ut, &a).unwrap(), &a) < 1e-13);
            assert!(distance(&multiply(&m, &a, &us).unwrap(), &a) < 1e-13);

            let ai = inverse(&m, &a).unwrap();
            assert!(distance(&multiply(&m, &a, &ai).unwrap(), &ut) < 1e-12);
            assert!(distance(&multiply(&m, &ai, &a).unwrap(), &us) < 1e-12);
        }
    }
}

#[test]
fn non_composable_pairs_are_rejected() {
    let m = models::cp1_bruhat::<f64>().unwrap();
    let mut r = rng(4);
    let a = random_point(&m, &mut r, 0.8).unwrap();
    let b = random_point(&m, &mut r, 0.8).unwrap();
    assert!(multiply(&m, &a, &b).is_err());
}

#[test]
fn realized_tangents_satisfy_the_linearized_constraint() {
    for m in all() {
        let mut r = rng(5);
        for _ in 0..4 {
            let p = random_point(&m, &mut r, 0.8).unwrap();
            let t = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            let rt = realize_tangent(&m, &t).unwrap();
            assert!(tangency_residual(&m, &p, &rt) < 1e-12, "{}", m.name());
            assert!(m.maurer(&p.v, &rt.x, affine_dirac::group::Side::Left).is_ok());
            assert!(m.maurer(&p.l, &rt.z, affine_dirac::group::Side::Right).is_ok());
        }
    }
}

/// `(v, g₁)` re-solved along `g₂ → exp(tw)g₂`, `l → exp(tz)l`.
#[test]
fn realized_tangents_match_the_chart_flow() {
    for m in all() {
        let mut r = rng(6);
        let p = random_point(&m, &mut r, 0.8).unwrap();
        let t = random_tangent(&m, &p, &mut r, 1.0).unwrap();
        let rt = realize_tangent(&m, &t).unwrap();
        let d = m.double();
        let at = |s: f64| {
            let g2 = m.exp(&(d.embed_g(&t.w) * s)) * &p.g2;
            let l = m.exp(&(&t.z * s)) * &p.l;
            point_from_chart(&m, &g2, &l).unwrap()
        };
        let dv = richardson::<f64, _>(1e-3, |h| Ok(at(h).v)).unwrap();
        let dg = richardson::<f64, _>(1e-3, |h| Ok(at(h).g1)).unwrap();
        assert!(diff(&dv, &rt.x) < 1e-8, "{}: {}", m.name(), diff(&dv, &rt.x));
        assert!(diff(&dg, &rt.y) < 1e-8, "{}: {}", m.name(), diff(&dg, &rt.y));
    }
}

#[test]
fn vertical_directions_at_units_are_the_dressing_action() {
    for m in all() {
        let mut r = rng(7);
        let g = m.random_element(Tag::G, &mut r, 0.8).unwrap();
        let u = unit(&m, &g).unwrap();
        let z = m.random_algebra_element(Tag::L, &mut r, 1.0).unwrap();
        let t = GroupoidTangent::new(&m, u, DVector::zeros(m.n()), z.clone()).unwrap();
        let rt = realize_tangent(&m, &t).unwrap();
        assert!(rt.ds().camax() < 1e-15);
        assert!(diff(rt.dt(), &dressing(&m, &z, &g).unwrap()) < 1e-12, "{}", m.name());
    }
}

#[test]
fn tangent_of_multiplication() {
    for m in all() {
        let mut r = rng(8);
        for _ in 0..3 {
            let a = random_point(&m, &mut r, 0.8).unwrap();
            let b = random_composable(&m, &a, &mut r, 0.8).unwrap();
            let t2 = random_tangent(&m, &b, &mut r, 1.0).unwrap();
            let z1 = m.random_algebra_element(Tag::L, &mut r, 1.0).unwrap();
            let t1 = GroupoidTangent::new(&m, a.clone(), matching_w(&m, &t2).unwrap(), z1).unwrap();
            assert!(tangent_multiply_residual(&m, &t1, &t2).unwrap() < 1e-11, "{}", m.name());

            let off = random_tangent(&m, &a, &mut r, 1.0).unwrap();
            assert!(tangent_multiply(&m, &off, &t2).is_err());
        }
    }
}

#[test]
fn tangent_rejects_z_outside_l() {
    let m = models::su2_iwasawa::<f64>().unwrap();
    let p = random_point(&m, &mut rng(9), 0.5).unwrap();
    let mut z = DVector::zeros(6);
    z[0] = 1.0;
    assert!(GroupoidTangent::new(&m, p, DVector::zeros(3), z).is_err());
}

#[test]
fn psi_is_a_morphism_from_the_action_groupoid() {
    for m in [models::cp1_bruhat::<f64>().unwrap(), models::trivial_sl2_split().unwrap()] {
        let mut r = rng(10);
        let g = m.random_element(Tag::G, &mut r, 0.8).unwrap();
        let h1 = m.random_element(Tag::H, &mut r, 0.8).unwrap();
        let h2 = m.random_element(Tag::H, &mut r, 0.8).unwrap();
        let p2 = psi(&m, &h2, &g).unwrap();
        assert!(diff(source(&p2), &g) < 1e-15);
        let p1 = psi(&m, &h1, target(&p2)).unwrap();
        let lhs = multiply(&m, &p1, &p2).unwrap();
        let rhs = psi(&m, &(&h1 * &h2), &g).unwrap();
        assert!(distance(&lhs, &rhs) < 1e-12);
    }
    assert!(psi(&models::su2_iwasawa::<f64>().unwrap(), &Mat::<f64>::identity(2, 2), &Mat::<f64>::identity(2, 2)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn inverse_is_an_involution(seed in any::<u64>(), which in 0usize..5) {
        let m = &all()[which];
        let p = random_point(m, &mut rng(seed), 0.9).unwrap();
        let back = inverse(m, &inverse(m, &p).unwrap()).unwrap();
        prop_assert!(distance(&back, &p) < 1e-12);
        prop_assert!(p.residual < 1e-12);
    }
}
