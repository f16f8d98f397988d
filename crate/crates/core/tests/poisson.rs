use affine_dirac::algebra::Subspace;
use affine_dirac::group::{models, verify_gond1, Mat, MatrixGroupModel, Side, Tag};
use affine_dirac::linalg::{mat_norm_inf, vec_norm_inf};
use affine_dirac::poisson::*;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn all() -> Vec<MatrixGroupModel<f64>> {
    vec![
        models::su2_iwasawa().unwrap(),
        models::cp1_bruhat().unwrap(),
        models::trivial_sl2().unwrap(),
        models::trivial_sl2_split().unwrap(),
    ]
}

fn id(m: &MatrixGroupModel<f64>) -> Mat<f64> {
    Mat::<f64>::identity(m.size(), m.size())
}

fn diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    (a - b).camax()
}

#[test]
fn bivectors_vanish_at_the_identity() {
    for m in all() {
        let e = id(&m);
        assert!(mat_norm_inf(&pi_g_at(&m, &e).unwrap().coeffs) < 1e-15);
        assert!(mat_norm_inf(&pi_gstar_at(&m, &e).unwrap().coeffs) < 1e-15);
        assert!(mat_norm_inf(&pi_d_at(&m, &e).unwrap().coeffs) < 1e-15);
    }
}

#[test]
fn standard_structure_vanishes_on_the_torus() {
    let m = models::su2_iwasawa::<f64>().unwrap();
    for theta in [0.3f64, 1.1, 2.9] {
        let t = DMatrix::from_row_slice(
            2,
            2,
            &[Complex::new(theta.cos(), theta.sin()), Complex::new(0.0, 0.0), Complex::new(0.0, 0.0), Complex::new(theta.cos(), -theta.sin())],
        );
        let p = pi_g_at(&m, &t).unwrap();
        assert!(mat_norm_inf(&p.coeffs) < 1e-14, "θ = {theta}");
    }
    // Off the torus it does not vanish.
    let g = m.random_element(Tag::G, &mut rng(1), 1.0).unwrap();
    assert!(mat_norm_inf(&pi_g_at(&m, &g).unwrap().coeffs) > 1e-3);
}

#[test]
fn trivial_bialgebra_has_zero_pi_g_and_linear_pi_gstar() {
    let m = models::trivial_sl2::<f64>().unwrap();
    let d = m.double();
    let mut r = rng(2);
    for _ in 0..20 {
        let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
        assert!(mat_norm_inf(&pi_g_at(&m, &g).unwrap().coeffs) < 1e-13);
        // v = exp(η) = I + emb(η); πG*|_v(u₁, u₂) = η([u₁, u₂]).
        let eta = DVector::from_fn(3, |_, _| rand::Rng::random_range(&mut r, -1.0..1.0));
        let v = m.exp(&d.embed_gstar(&eta));
        let p = pi_gstar_at(&m, &v).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let ua = d.g().basis_vector(a);
                let ub = d.g().basis_vector(b);
                let oracle = eta.dot(&d.g().bracket(&ua, &ub));
                assert!((p.coeffs[(a, b)] - oracle).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn sharp_matches_contraction() {
    for m in all() {
        let mut r = rng(3);
        for _ in 0..10 {
            let v = m.random_element(Tag::GStar, &mut r, 1.0).unwrap();
            let w = m.random_algebra_element(Tag::G, &mut r, 1.0).unwrap().rows(0, m.n()).into_owned();
            let sharp = pi_gstar_sharp(&m, &v, &w).unwrap();
            let p = pi_gstar_at(&m, &v).unwrap();
            let contracted = m.emb_gstar(&p.contract(&w)) * &v;
            assert!(diff(&sharp, &contracted) < 1e-10);
        }
    }
}

#[test]
fn frames_round_trip() {
    let m = models::su2_iwasawa::<f64>().unwrap();
    let g = m.random_element(Tag::G, &mut rng(4), 1.0).unwrap();
    let p = pi_g_at(&m, &g).unwrap();
    let back = p.to_right(&m).unwrap().to_left(&m).unwrap();
    assert_eq!(back.frame, Frame::Left);
    assert!(mat_norm_inf(&(back.coeffs - &p.coeffs)) < 1e-14);
    assert!(p.asymmetry < 1e-14);
}

#[test]
fn pi_d_restricts_to_pi_g() {
    for m in all() {
        let n = m.n();
        let mut r = rng(5);
        for _ in 0..10 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let pd = pi_d_at(&m, &g).unwrap();
            let pg = pi_g_at(&m, &g).unwrap().to_right(&m).unwrap();
            let block = pd.coeffs.view((0, 0), (n, n)).into_owned();
            assert!(mat_norm_inf(&(block - pg.coeffs)) < 1e-10, "{}", m.name());
        }
    }
}

#[test]
fn gond1_holds_at_random_points() {
    for m in all() {
        let n = m.n();
        let mut r = rng(6);
        let e = id(&m);
        for _ in 0..20 {
            let g = m.random_element(Tag::G, &mut r, 1.2).unwrap();
            let z = m.random_algebra_element(Tag::D, &mut r, 1.0).unwrap();
            let (u, xi) = (z.rows(0, n).into_owned(), z.rows(n, n).into_owned());
            assert!(verify_gond1(&m, &g, &u, &xi).unwrap() < 1e-10);
            assert!(verify_gond1(&m, &e, &u, &xi).unwrap() < 1e-13);
            assert!(verify_gond1(&m, &g, &u, &DVector::zeros(n)).unwrap() < 1e-12);
        }
    }
}

#[test]
fn dressing_routes_agree_and_reduce() {
    for m in all() {
        let n = m.n();
        let d = m.double();
        let mut r = rng(7);
        for _ in 0..10 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let z = m.random_algebra_element(Tag::D, &mut r, 1.0).unwrap();
            let a = dressing(&m, &z, &g).unwrap();
            let b = dressing_projected(&m, &z, &g).unwrap();
            assert!(diff(&a, &b) < 1e-12);
            let (u, _) = d.split(&z);
            let pure = dressing(&m, &d.embed_g(&u), &g).unwrap();
            assert!(diff(&pure, &(-(&g * m.emb_g(&u)))) < 1e-13);
            let at_e = dressing(&m, &z, &id(&m)).unwrap();
            assert!(diff(&at_e, &(-m.emb_g(&u))) < 1e-14);
            // ρ(Ad_k z)|_g = ρ(z)|_{gk} k⁻¹
            let k = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let lhs = dressing(&m, &m.adjoint(&k, &z).unwrap(), &g).unwrap();
            let rhs = dressing(&m, &z, &(&g * &k)).unwrap() * m.inv(&k);
            assert!(diff(&lhs, &rhs) < 1e-10);
            let _ = n;
        }
    }
}

#[test]
fn dressing_is_a_lie_algebra_action() {
    for m in all() {
        let d = m.double();
        let mut r = rng(8);
        for _ in 0..5 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let z1 = m.random_algebra_element(Tag::D, &mut r, 1.0).unwrap();
            let z2 = m.random_algebra_element(Tag::D, &mut r, 1.0).unwrap();
            let vf = dressing_bracket_fd(&m, &z1, &z2, &g, 1e-3).unwrap();
            let formula = dressing(&m, &d.bracket(&z1, &z2), &g).unwrap();
            assert!(diff(&vf, &(-&formula)) < 1e-6, "{}: {:e}", m.name(), diff(&vf, &(-&formula)));
        }
    }
}

#[test]
fn dirac_structures_are_lagrangian_of_full_rank() {
    for m in all() {
        let l = m.l().algebra.clone();
        let mut r = rng(9);
        for _ in 0..10 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            assert!(dirac_isotropy_residual(&m, &l, &g).unwrap() < 1e-10);
            assert_eq!(dirac_rank(&m, &l, &g).unwrap(), m.n());
            for z in l.basis_vectors() {
                assert!(dirac_e_at(&m, &l, &g, &z).unwrap().consistency < 1e-12);
            }
        }
        let off = m.double().g_part().basis_vectors()[1].clone() * 0.0
            + m.double().gstar_part().basis_vectors()[0].clone();
        if l.projection_residual(&off) > 1e-6 {
            assert!(dirac_e_at(&m, &l, &id(&m), &off).is_err());
        }
    }
}

#[test]
fn kernel_of_e() {
    let cp1 = models::cp1_bruhat::<f64>().unwrap();
    let k = kernel_e_at(&cp1, &cp1.l().algebra, &id(&cp1)).unwrap();
    assert!(k.same_span(&Subspace::coordinate(3, &[0]).unwrap(), 1e-12));
    let g = cp1.random_element(Tag::G, &mut rng(10), 1.0).unwrap();
    assert_eq!(kernel_e_at(&cp1, &cp1.l().algebra, &g).unwrap().dim(), 1);
    let su2 = models::su2_iwasawa::<f64>().unwrap();
    assert_eq!(kernel_e_at(&su2, &su2.l().algebra, &g).unwrap().dim(), 0);
    // z ∈ 𝔩 ∩ 𝔤 has α = 0 and X = −g·u
    let z = cp1.double().g_part().basis_vectors()[0].clone();
    let e = dirac_e_at(&cp1, &cp1.l().algebra, &g, &z).unwrap();
    assert!(vec_norm_inf(&e.alpha) == 0.0);
    assert!(diff(&e.x, &(-(&g * cp1.emb(&z)))) < 1e-13);
    let _ = Side::Left;
}

#[test]
fn quotient_bivector() {
    for m in [models::cp1_bruhat::<f64>().unwrap(), models::trivial_sl2_split().unwrap()] {
        let l = m.l().algebra.clone();
        let h = Subspace::coordinate(3, &[0]).unwrap();
        let b1 = DVector::from_vec(vec![0.0, 1.0, -0.4]);
        let b2 = DVector::from_vec(vec![0.0, 0.3, 0.8]);
        let at_e = pushforward_pi_quotient(&m, &l, &h, &id(&m), &b1, &b2).unwrap();
        assert!(at_e.abs() < 1e-14);
        let mut r = rng(11);
        for _ in 0..10 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let hh = m.random_element(Tag::H, &mut r, 1.0).unwrap();
            let p12 = pushforward_pi_quotient(&m, &l, &h, &g, &b1, &b2).unwrap();
            let p21 = pushforward_pi_quotient(&m, &l, &h, &g, &b2, &b1).unwrap();
            assert!((p12 + p21).abs() < 1e-12);
            assert!(quotient_pi_invariance(&m, &l, &h, &g, &hh, &b1, &b2).unwrap() < 1e-10);
        }
        let bad = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert!(pushforward_pi_quotient(&m, &l, &h, &id(&m), &bad, &b2).is_err());
    }
}

#[test]
fn d_over_gstar_recovers_pi_g() {
    for m in all() {
        let d = m.double();
        let n = m.n();
        let q = d.gstar_part();
        let mut r = rng(12);
        for _ in 0..10 {
            let g = m.random_element(Tag::G, &mut r, 1.0).unwrap();
            let p = pi_g_at(&m, &g).unwrap();
            let x1 = DVector::from_fn(n, |i, _| 0.5 - i as f64);
            let x2 = DVector::from_fn(n, |i, _| (i * i) as f64 * 0.3 - 0.2);
            let (b1, b2) = (d.embed_gstar(&x1), d.embed_gstar(&x2));
            let val = pi_dq_at(&m, &q, &g, &b1, &b2).unwrap();
            assert!((val - p.eval(&x1, &x2)).abs() < 1e-10, "{}", m.name());
            // representative dq with q ∈ G*: b ↦ Ad_{q⁻¹} b
            let qq = m.random_element(Tag::GStar, &mut r, 1.0).unwrap();
            let qi = m.inv(&qq);
            let moved = pi_dq_at(&m, &q, &(&g * &qq), &m.adjoint(&qi, &b1).unwrap(), &m.adjoint(&qi, &b2).unwrap()).unwrap();
            assert!((moved - val).abs() < 1e-10);
        }
        let not_coisotropic = Subspace::coordinate(2 * n, &[0]).unwrap();
        assert!(pi_dq_at(&m, &not_coisotropic, &id(&m), &d.embed_gstar(&DVector::zeros(n)), &d.embed_gstar(&DVector::zeros(n))).is_err());
        assert!(coisotropy_residual(&m, &q) < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplicativity_on_random_pairs(seed in any::<u64>(), which in 0usize..4) {
        let m = &all()[which];
        let mut r = rng(seed);
        let g = m.random_element(Tag::G, &mut r, 1.5).unwrap();
        let h = m.random_element(Tag::G, &mut r, 1.5).unwrap();
        prop_assert!(multiplicativity_residual(m, pi_g_at, &g, &h).unwrap() < 1e-9);
        let v = m.random_element(Tag::GStar, &mut r, 1.5).unwrap();
        let w = m.random_element(Tag::GStar, &mut r, 1.5).unwrap();
        prop_assert!(multiplicativity_residual(m, pi_gstar_at, &v, &w).unwrap() < 1e-9);
        let a = m.random_element(Tag::D, &mut r, 1.0).unwrap();
        let b = m.random_element(Tag::D, &mut r, 1.0).unwrap();
        prop_assert!(multiplicativity_residual(m, pi_d_at, &a, &b).unwrap() < 1e-9);
        let e = id(m);
        prop_assert!(multiplicativity_residual(m, pi_g_at, &g, &e).unwrap() < 1e-12);
    }
}
