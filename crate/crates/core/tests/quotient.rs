use affine_dirac::group::{models, Mat, MatrixGroupModel, Tag};
use affine_dirac::groupoid::*;
use affine_dirac::quotient::*;
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn homogeneous() -> Vec<MatrixGroupModel<f64>> {
    vec![models::cp1_bruhat().unwrap(), models::trivial_sl2_split().unwrap()]
}

/// A random element of `Ann(𝔥)` in 𝔤* coordinates.
fn annihilator(ctx: &HHActionContext<f64>, r: &mut ChaCha8Rng) -> DVector<f64> {
    let m = ctx.model;
    let n = m.n();
    let mut beta = m.random_algebra_element(Tag::GStar, r, 1.0).unwrap().rows(n, n).into_owned();
    for u in ctx.h_basis() {
        let s = beta.dot(&u) / u.dot(&u);
        beta -= &u * s;
    }
    beta
}

#[test]
fn context_requires_h() {
    let m = models::su2_iwasawa::<f64>().unwrap();
    assert!(HHActionContext::new(&m).is_err());
}

#[test]
fn action_laws() {
    for m in homogeneous() {
        let ctx = HHActionContext::new(&m).unwrap();
        let mut r = rng(1);
        let e = Mat::<f64>::identity(m.size(), m.size());
        for _ in 0..5 {
            let p = random_point(&m, &mut r, 0.8).unwrap();
            assert!(distance(&hh_act(&ctx, &e, &e, &p).unwrap(), &p) < 1e-15);
            let hs: Vec<Mat<f64>> = (0..4).map(|_| m.random_element(Tag::H, &mut r, 1.0).unwrap()).collect();
            let composed = hh_act(&ctx, &(&hs[0] * &hs[1]), &(&hs[2] * &hs[3]), &p).unwrap();
            let nested = hh_act(&ctx, &hs[0], &hs[2], &hh_act(&ctx, &hs[1], &hs[3], &p).unwrap()).unwrap();
            assert!(distance(&composed, &nested) < 1e-10);
            let q = hh_act(&ctx, &hs[0], &hs[2], &p).unwrap();
            assert!((target(&q) - target(&p) * m.inv(&hs[0])).camax() < 1e-14);
            assert!((source(&q) - source(&p) * m.inv(&hs[2])).camax() < 1e-14);
            let t = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            assert!(hh_push_mismatch(&ctx, &hs[0], &hs[2], &t).unwrap() < 1e-12);
        }
    }
}

#[test]
fn action_by_elements_outside_l_fails() {
    let m = models::cp1_bruhat::<f64>().unwrap();
    let ctx = HHActionContext::new(&m).unwrap();
    let mut r = rng(2);
    let p = random_point(&m, &mut r, 0.8).unwrap();
    let g = m.random_element(Tag::G, &mut r, 0.8).unwrap();
    assert!(hh_act(&ctx, &g, &g, &p).is_err());
}

#[test]
fn omega_is_invariant() {
    for m in homogeneous() {
        let ctx = HHActionContext::new(&m).unwrap();
        let mut r = rng(3);
        for _ in 0..20 {
            let p = random_point(&m, &mut r, 0.8).unwrap();
            let t1 = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            let t2 = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            let h1 = m.random_element(Tag::H, &mut r, 1.0).unwrap();
            let h2 = m.random_element(Tag::H, &mut r, 1.0).unwrap();
            assert!(invariance_residual(&ctx, &h1, &h2, &t1, &t2).unwrap() < 1e-9, "{}", m.name());
            assert!(invariance_residual(&ctx, &h1, &h1, &t1, &t2).unwrap() < 1e-9);
        }
    }
}

#[test]
fn orbits_span_the_kernel() {
    for m in homogeneous() {
        let ctx = HHActionContext::new(&m).unwrap();
        let mut r = rng(4);
        for i in 0..6 {
            let p = if i == 0 {
                unit(&m, &m.random_element(Tag::G, &mut r, 0.8).unwrap()).unwrap()
            } else {
                random_point(&m, &mut r, 0.8).unwrap()
            };
            assert_eq!(orbit_directions(&ctx, &p).unwrap().len(), 2 * ctx.h.algebra.dim());
            let k = orbit_kernel_match(&ctx, &p).unwrap();
            assert!(k.pass(1e-8), "{}: {k:?}", m.name());
        }
    }
}

#[test]
fn quotient_form_is_well_defined() {
    for m in homogeneous() {
        let ctx = HHActionContext::new(&m).unwrap();
        let mut r = rng(5);
        for _ in 0..10 {
            let p = random_point(&m, &mut r, 0.8).unwrap();
            let t1 = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            let t2 = random_tangent(&m, &p, &mut r, 1.0).unwrap();
            let k = 2 * ctx.h.algebra.dim();
            let s1 = DVector::from_fn(k, |i, _| 0.3 + i as f64);
            let s2 = DVector::from_fn(k, |i, _| -0.7 * i as f64);
            let h1 = m.random_element(Tag::H, &mut r, 1.0).unwrap();
            let h2 = m.random_element(Tag::H, &mut r, 1.0).unwrap();
            let rep = quotient_form_eval(&ctx, &t1, &t2, (&s1, &s2), (&h1, &h2)).unwrap();
            assert!(rep.lift_discrepancy < 1e-9 && rep.representative_discrepancy < 1e-9, "{rep:?}");
            assert_eq!(rep.rank, 2 * (m.n() - ctx.h.algebra.dim()));
        }
    }
}

#[test]
fn target_map_is_poisson() {
    for m in homogeneous() {
        let ctx = HHActionContext::new(&m).unwrap();
        let mut r = rng(6);
        let e = Mat::<f64>::identity(m.size(), m.size());
        let b1 = annihilator(&ctx, &mut r);
        let b2 = annihilator(&ctx, &mut r);
        let (value, res) = tbar_poisson_residual(&ctx, &unit(&m, &e).unwrap(), &b1, &b2).unwrap();
        assert!(value.abs() < 1e-12 && res < 1e-12);
        for _ in 0..10 {
            let p = random_point(&m, &mut r, 0.8).unwrap();
            let b1 = annihilator(&ctx, &mut r);
            let b2 = annihilator(&ctx, &mut r);
            let (v12, res) = tbar_poisson_residual(&ctx, &p, &b1, &b2).unwrap();
            assert!(res < 1e-7, "{}: {res}", m.name());
            let (v21, _) = tbar_poisson_residual(&ctx, &p, &b2, &b1).unwrap();
            assert!((v12 + v21).abs() < 1e-10);
        }
    }
}

#[test]
fn admissibility() {
    for m in homogeneous() {
        let rep = admissibility_report(&m, &mut rng(7), 20, None).unwrap();
        assert!(rep.pass(), "{rep:?}");
        let rep = admissibility_report(&m, &mut rng(7), 20, Some(1e-3)).unwrap();
        assert!(!rep.pass() && rep.psi_exists, "{rep:?}");
    }
    let rep = admissibility_report(&models::su2_iwasawa::<f64>().unwrap(), &mut rng(7), 5, None).unwrap();
    assert!(!rep.psi_exists && !rep.pass());
}
