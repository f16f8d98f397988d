//! Deterministic verification suites over catalog entries.

use std::hash::Hasher;
use std::time::Instant;

use affine_dirac::algebra::{drinfeld_subalgebra, is_lagrangian_splitting, is_lagrangian_subalgebra, Subspace};
use affine_dirac::group::{verify_gond1, Mat, Tag};
use affine_dirac::groupoid::*;
use affine_dirac::poisson::*;
use affine_dirac::presymp::*;
use affine_dirac::quotient::*;
use affine_dirac::{linalg, tol, Error, Model, Result};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, LoadedEntry, Variant};
use crate::config::Config;
use crate::report::{CheckRow, Environment, VerificationReport};

pub const SUITES: [&str; 6] = ["algebra", "double", "groupoid", "presymp", "quotient", "all"];

/// Size of the structure-constant shift used by fault injection.
pub const FAULT_SIZE: f64 = 1e-3;
/// `ω` evaluated by the coordinate formula against the invariant-form formula.
pub const OMEGA_AGREEMENT: f64 = 1e-10;
/// `t̄` against the pushforward bracket; the comparison inverts ω on a complement of its kernel.
pub const TBAR_POISSON: f64 = 1e-7;
/// Orbit directions against the numerical kernel of ω.
pub const KERNEL_MATCH: f64 = 1e-8;
/// Minimum residual reduction per step halving in the convergence study.
pub const FD_REDUCTION: f64 = 4.0;
/// Largest condition number of ω at units accepted as nondegenerate.
pub const CONDITION_BOUND: f64 = 1e6;

const FD_STEP: f64 = 1e-3;
const CONVERGENCE_H0: f64 = 0.4;
const CONVERGENCE_LEVELS: usize = 5;
const CONVERGENCE_FLOOR: f64 = 1e-10;

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub samples: usize,
    pub fault_inject: bool,
    pub config: Config,
}

impl RunOptions {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, ..Self::default() }
    }
}

/// Sample counts derived from `--samples`: all of it for single points, half
/// for composable pairs, a fifth for units, 30% for finite-difference triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub points: usize,
    pub pairs: usize,
    pub units: usize,
    pub fd: usize,
}

impl Counts {
    pub fn new(samples: usize) -> Self {
        Self {
            points: samples.max(1),
            pairs: (samples / 2).max(1),
            units: (samples / 5).max(1),
            fd: (samples * 3 / 10).max(1),
        }
    }
}

/// Seed of one check: FNV-1a of its name, xor the run seed.
pub fn check_seed(name: &str, seed: u64) -> u64 {
    let mut h = fnv::FnvHasher::default();
    h.write(name.as_bytes());
    h.finish() ^ seed
}

/// First constant `c[i][j][k]` with `i` in 𝔤 and `j` in 𝔤* whose shift by
/// [`FAULT_SIZE`] breaks Jacobi for 𝔡.
pub fn fault_constant(model: &Model) -> Option<(usize, usize, usize)> {
    let n = model.n();
    let alg = model.double().algebra();
    for i in 0..n {
        for j in n..2 * n {
            for k in 0..2 * n {
                if alg.perturbed(i, j, k, FAULT_SIZE).jacobi_residual() > tol::ALGEBRAIC {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

struct Outcome {
    residual: f64,
    detail: Option<String>,
}

impl From<f64> for Outcome {
    fn from(residual: f64) -> Self {
        Self { residual, detail: None }
    }
}

fn with_detail(residual: f64, detail: String) -> Outcome {
    Outcome { residual, detail: Some(detail) }
}

/// Maximum that keeps a NaN once it appears.
fn worse(acc: f64, r: f64) -> f64 {
    if r.is_nan() || r > acc {
        r
    } else {
        acc
    }
}

fn worst<F>(count: usize, rng: &mut ChaCha8Rng, mut f: F) -> Result<f64>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64>,
{
    let mut acc = 0.0f64;
    for _ in 0..count {
        acc = worse(acc, f(rng)?);
    }
    Ok(acc)
}

struct Runner<'a> {
    opts: &'a RunOptions,
    rows: Vec<CheckRow>,
}

impl Runner<'_> {
    fn check<F, O>(&mut self, name: String, default_tol: f64, samples: usize, f: F)
    where
        F: FnOnce(&mut ChaCha8Rng) -> Result<O>,
        O: Into<Outcome>,
    {
        let seed = check_seed(&name, self.opts.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tol = self.opts.config.tolerance(&name, default_tol);
        let (residual, detail) = match f(&mut rng) {
            Ok(o) => {
                let o = o.into();
                (o.residual, o.detail)
            }
            Err(e) => (f64::INFINITY, Some(format!("error: {e}"))),
        };
        debug_assert!(self.rows.iter().all(|r| r.name != name), "duplicate check {name}");
        self.rows.push(CheckRow { name, residual, tol, pass: residual <= tol, samples, seed, detail });
    }
}

fn g_vector(m: &Model, r: &mut ChaCha8Rng) -> Result<DVector<f64>> {
    Ok(m.random_algebra_element(Tag::G, r, 1.0)?.rows(0, m.n()).into_owned())
}

fn identity(m: &Model) -> Mat<f64> {
    Mat::<f64>::identity(m.size(), m.size())
}

fn tangents(m: &Model, p: &Point, r: &mut ChaCha8Rng) -> Result<[GroupoidTangent<f64>; 3]> {
    Ok([random_tangent(m, p, r, 1.0)?, random_tangent(m, p, r, 1.0)?, random_tangent(m, p, r, 1.0)?])
}

type Point = GroupoidPoint<f64>;

/// A random element of `Ann(𝔥)` in 𝔤* coordinates.
fn annihilator(ctx: &HHActionContext<f64>, r: &mut ChaCha8Rng) -> Result<DVector<f64>> {
    let m = ctx.model;
    let n = m.n();
    let beta = m.random_algebra_element(Tag::GStar, r, 1.0)?.rows(n, n).into_owned();
    let q = Subspace::span(n, &ctx.h_basis()).orthonormal().clone();
    Ok(&beta - &q * (q.transpose() * &beta))
}

fn algebra_suite(run: &mut Runner, models: &[(Variant, Model)], c: Counts) {
    let m = &models[0].1;
    let d = m.double();
    run.check("algebra.jacobi_g".into(), tol::EXACT, 0, |_| Ok(d.g().jacobi_residual()));
    run.check("algebra.jacobi_gstar".into(), tol::EXACT, 0, |_| Ok(d.gstar().jacobi_residual()));
    run.check("algebra.reassembly".into(), tol::EXACT, 0, |_| Ok(d.reassembly_residual()));
    run.check("algebra.splitting".into(), tol::EXACT, 0, |_| {
        let rep = is_lagrangian_splitting(d, &d.g_part(), &d.gstar_part(), tol::EXACT)?;
        let dims = rep.first.half_dimension && rep.second.half_dimension && rep.spans;
        Ok(if dims { rep.first.worst_residual().max(rep.second.worst_residual()) } else { f64::INFINITY })
    });
    run.check("algebra.r_basis_independence".into(), tol::ALGEBRAIC, c.units, |r| {
        let n = d.n();
        worst(c.units, r, |r| {
            let b = DMatrix::<f64>::identity(n, n) + DMatrix::from_fn(n, n, |_, _| r.random_range(-0.5..0.5));
            let other = d.r_from_basis(&b).ok_or(Error::RankDeficient { rank: n - 1, expected: n })?;
            Ok(linalg::mat_norm_inf(&(other - d.r())))
        })
    });
    for (v, m) in models {
        let d = m.double();
        let l = &m.l().algebra;
        run.check(format!("algebra[{}].lagrangian", v.label), tol::ALGEBRAIC, 0, |_| {
            let rep = is_lagrangian_subalgebra(d, l, tol::ALGEBRAIC)?;
            Ok(if rep.half_dimension { rep.worst_residual() } else { f64::INFINITY })
        });
        run.check(format!("algebra[{}].meet_dim", v.label), 0.0, 0, |_| {
            let meet = l.intersection(&d.g_part()).dim();
            Ok(with_detail(meet.abs_diff(v.expected_meet) as f64, format!("dim(l ∩ g) = {meet}")))
        });
        if let Some(hom) = LoadedEntry::homogeneous(m) {
            run.check(format!("algebra[{}].drinfeld_subalgebra", v.label), tol::SUBSPACE, 0, |_| {
                let built = drinfeld_subalgebra(d, &hom.h, &hom.lambda)?;
                Ok(if built.dim() == l.dim() { built.distance(l) } else { f64::INFINITY })
            });
        }
    }
}

fn double_suite(run: &mut Runner, models: &[(Variant, Model)], c: Counts) {
    let m = &models[0].1;
    let d = m.double();
    let e = identity(m);
    run.check("double.jacobi".into(), tol::EXACT, 0, |_| Ok(d.algebra().jacobi_residual()));
    run.check("double.pairing_invariance".into(), tol::EXACT, 0, |_| Ok(d.pairing_invariance_residual()));
    run.check("double.rr".into(), tol::EXACT, 0, |_| Ok(d.rr_residual()));
    run.check("double.realization".into(), tol::ALGEBRAIC, 0, |_| {
        Ok(m.homomorphism_residual().max(m.pairing_residual()))
    });
    run.check("double.pi_g_multiplicativity".into(), tol::ALGEBRAIC, c.pairs, |r| {
        worst(c.pairs, r, |r| {
            let g = m.random_element(Tag::G, r, 1.5)?;
            let h = m.random_element(Tag::G, r, 1.5)?;
            multiplicativity_residual(m, pi_g_at, &g, &h)
        })
    });
    run.check("double.pi_gstar_multiplicativity".into(), tol::ALGEBRAIC, c.pairs, |r| {
        worst(c.pairs, r, |r| {
            let v = m.random_element(Tag::GStar, r, 1.5)?;
            let w = m.random_element(Tag::GStar, r, 1.5)?;
            multiplicativity_residual(m, pi_gstar_at, &v, &w)
        })
    });
    run.check("double.pi_d_multiplicativity".into(), tol::ALGEBRAIC, c.pairs, |r| {
        worst(c.pairs, r, |r| {
            let a = m.random_element(Tag::D, r, 1.0)?;
            let b = m.random_element(Tag::D, r, 1.0)?;
            multiplicativity_residual(m, pi_d_at, &a, &b)
        })
    });
    run.check("double.pi_at_identity".into(), tol::EXACT, 0, |_| {
        let g = linalg::mat_norm_inf(&pi_g_at(m, &e)?.coeffs);
        let v = linalg::mat_norm_inf(&pi_gstar_at(m, &e)?.coeffs);
        let dd = linalg::mat_norm_inf(&pi_d_at(m, &e)?.coeffs);
        Ok(g.max(v).max(dd))
    });
    run.check("double.gond1".into(), tol::ALGEBRAIC, c.points, |r| {
        worst(c.points, r, |r| {
            let g = m.random_element(Tag::G, r, 1.2)?;
            let (u, xi) = d.split(&m.random_algebra_element(Tag::D, r, 1.0)?);
            verify_gond1(m, &g, &u, &xi)
        })
    });
    run.check("double.dressing_routes".into(), tol::ALGEBRAIC, c.points, |r| {
        worst(c.points, r, |r| {
            let g = m.random_element(Tag::G, r, 1.0)?;
            let z = m.random_algebra_element(Tag::D, r, 1.0)?;
            let diff = dressing(m, &z, &g)? - dressing_projected(m, &z, &g)?;
            Ok(diff.camax())
        })
    });
    run.check("double.dressing_action".into(), tol::FINITE_DIFFERENCE, c.units, |r| {
        worst(c.units, r, |r| {
            let g = m.random_element(Tag::G, r, 1.0)?;
            let z1 = m.random_algebra_element(Tag::D, r, 1.0)?;
            let z2 = m.random_algebra_element(Tag::D, r, 1.0)?;
            let vf = dressing_bracket_fd(m, &z1, &z2, &g, FD_STEP)?;
            Ok((vf + dressing(m, &d.bracket(&z1, &z2), &g)?).camax())
        })
    });
    if m.oracle().is_some() {
        run.check("double.factorization".into(), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let x = m.random_element(Tag::D, r, 1.0)?;
                let f = m.factorize(&x)?;
                Ok(f.residual.max(m.membership(Tag::GStar, &f.v)).max(m.membership(Tag::G, &f.g)))
            })
        });
    }
    for (v, m) in models {
        let l = &m.l().algebra;
        run.check(format!("double[{}].dirac_isotropy", v.label), tol::ALGEBRAIC, c.units, |r| {
            worst(c.units, r, |r| dirac_isotropy_residual(m, l, &m.random_element(Tag::G, r, 1.0)?))
        });
        run.check(format!("double[{}].dirac_kernel_dim", v.label), 0.0, c.units, |r| {
            worst(c.units, r, |r| {
                let k = kernel_e_at(m, l, &m.random_element(Tag::G, r, 1.0)?)?;
                Ok(k.dim().abs_diff(v.expected_meet) as f64)
            })
        });
    }
}

fn groupoid_suite(run: &mut Runner, models: &[(Variant, Model)], c: Counts) {
    for (v, m) in models {
        let name = |check: &str| format!("groupoid[{}].{check}", v.label);
        run.check(name("constraint"), tol::POINT, c.points, |r| {
            worst(c.points, r, |r| Ok(random_point(m, r, 0.8)?.residual))
        });
        run.check(name("associativity"), tol::POINT, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let a = random_point(m, r, 0.8)?;
                let b = random_composable(m, &a, r, 0.8)?;
                let cc = random_composable(m, &b, r, 0.8)?;
                let left = multiply(m, &multiply(m, &a, &b)?, &cc)?;
                let right = multiply(m, &a, &multiply(m, &b, &cc)?)?;
                Ok(distance(&left, &right))
            })
        });
        run.check(name("units"), tol::POINT, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let left = multiply(m, &unit(m, target(&p))?, &p)?;
                let right = multiply(m, &p, &unit(m, source(&p))?)?;
                Ok(distance(&left, &p).max(distance(&right, &p)))
            })
        });
        run.check(name("inverse"), tol::POINT, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let q = inverse(m, &p)?;
                let a = distance(&multiply(m, &p, &q)?, &unit(m, target(&p))?);
                let b = distance(&multiply(m, &q, &p)?, &unit(m, source(&p))?);
                Ok(a.max(b))
            })
        });
        run.check(name("tangency"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let t = random_tangent(m, &p, r, 1.0)?;
                Ok(tangency_residual(m, &p, &realize_tangent(m, &t)?))
            })
        });
        run.check(name("tangent_multiply"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let a = random_point(m, r, 0.8)?;
                let b = random_composable(m, &a, r, 0.8)?;
                let t2 = random_tangent(m, &b, r, 1.0)?;
                let z = m.random_algebra_element(Tag::L, r, 1.0)?;
                let t1 = GroupoidTangent::new(m, a, matching_w(m, &t2)?, z)?;
                tangent_multiply_residual(m, &t1, &t2)
            })
        });
    }
}

/// Composable pairs with matching tangents `(t₁, t₂)` at `a` and `(t₁′, t₂′)` at `b`.
fn multiplicative_sample(
    m: &Model,
    r: &mut ChaCha8Rng,
) -> Result<(Point, [GroupoidTangent<f64>; 4])> {
    let a = random_point(m, r, 0.8)?;
    let b = random_composable(m, &a, r, 0.8)?;
    let t1p = random_tangent(m, &b, r, 1.0)?;
    let t2p = random_tangent(m, &b, r, 1.0)?;
    let z1 = m.random_algebra_element(Tag::L, r, 1.0)?;
    let z2 = m.random_algebra_element(Tag::L, r, 1.0)?;
    let t1 = GroupoidTangent::new(m, a.clone(), matching_w(m, &t1p)?, z1)?;
    let t2 = GroupoidTangent::new(m, a.clone(), matching_w(m, &t2p)?, z2)?;
    Ok((a, [t1, t2, t1p, t2p]))
}

fn convergence_outcome(m: &Model, r: &mut ChaCha8Rng, studies: usize) -> Result<Outcome> {
    let mut ratio = 0.0f64;
    let mut coarse = f64::INFINITY;
    for _ in 0..studies {
        let p = random_point(m, r, 0.8)?;
        let [a, b, cc] = tangents(m, &p, r)?;
        let study = closedness_fd_convergence(m, [&a, &b, &cc], CONVERGENCE_H0, CONVERGENCE_LEVELS)?;
        coarse = coarse.min(study[0].1);
        for w in study.windows(2) {
            if w[0].1 > CONVERGENCE_FLOOR && w[1].1 > CONVERGENCE_FLOOR {
                ratio = worse(ratio, w[1].1 / w[0].1);
            }
        }
    }
    // Without a visible truncation error at the coarsest step there is nothing to observe.
    if coarse <= FD_REDUCTION * CONVERGENCE_FLOOR {
        return Ok(with_detail(f64::INFINITY, format!("coarsest residual {coarse:.2e} is already at the floor")));
    }
    Ok(with_detail(ratio, format!("worst residual ratio per halving {ratio:.3}, coarsest residual {coarse:.2e}")))
}

fn presymp_suite(run: &mut Runner, models: &[(Variant, Model)], c: Counts, notes: &mut Vec<String>) {
    for (v, m) in models {
        let n = m.n();
        let dual = m.dual_model();
        let name = |check: &str| format!("presymp[{}].{check}", v.label);
        run.check(name("omega_evaluators"), OMEGA_AGREEMENT, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let [a, b, _] = tangents(m, &p, r)?;
                Ok((omega_eval(m, &a, &b)? - omega_severa_eval(m, &a, &b)?).abs())
            })
        });
        run.check(name("omega_antisymmetry"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let [a, b, _] = tangents(m, &p, r)?;
                Ok((omega_eval(m, &a, &b)? + omega_eval(m, &b, &a)?).abs())
            })
        });
        run.check(name("closedness_delta"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let [a, b, cc] = tangents(m, &p, r)?;
                closedness_delta(m, [&a, &b, &cc])
            })
        });
        if m.oracle().is_some() {
            run.check(name("closedness_fd"), tol::FINITE_DIFFERENCE, c.fd, |r| {
                worst(c.fd, r, |r| {
                    let p = random_point(m, r, 0.8)?;
                    let [a, b, cc] = tangents(m, &p, r)?;
                    closedness_fd(m, [&a, &b, &cc], FD_STEP)
                })
            });
            let studies = (c.fd / 10).max(1);
            run.check(name("closedness_fd_convergence"), 1.0 / FD_REDUCTION, studies, |r| {
                convergence_outcome(m, r, studies)
            });
        }
        run.check(name("multiplicativity"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let (_, [t1, t2, t1p, t2p]) = multiplicative_sample(m, r)?;
                multiplicativity_residual_omega(m, &t1, &t2, &t1p, &t2p)
            })
        });
        run.check(name("conds"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let z = m.random_algebra_element(Tag::L, r, 1.0)?;
                let (a, b) = conds_residual(m, &p, &z)?;
                Ok(a.max(b))
            })
        });
        run.check(name("cocycle"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let a = random_point(m, r, 0.8)?;
                let b = random_composable(m, &a, r, 0.8)?;
                Ok(cocycle_checks(m, &a, &b)?.worst())
            })
        });
        run.check(name("cocycle_infinitesimal"), tol::FINITE_DIFFERENCE, c.units, |r| {
            worst(c.units, r, |r| {
                let g = m.random_element(Tag::G, r, 0.8)?;
                let z = m.random_algebra_element(Tag::L, r, 1.0)?;
                cocycle_infinitesimal_residual(m, &g, &z, FD_STEP)
            })
        });
        run.check(name("kernel_condition"), 0.0, c.units, |r| {
            let mut bad = 0.0f64;
            let mut dims = std::collections::BTreeSet::new();
            for i in 0..c.units {
                let g = if i == 0 { identity(m) } else { m.random_element(Tag::G, r, 0.9)? };
                let rep = kernel_condition(m, &g)?;
                dims.insert(rep.kernel_dim);
                bad += (rep.kernel_dim.abs_diff(2 * v.expected_meet)
                    + rep.kernel_dim.abs_diff(rep.expected_kernel_dim)
                    + rep.triple_intersection_dim) as f64;
            }
            Ok(with_detail(bad, format!("dim Ker ω at units: {dims:?}")))
        });
        if v.expected_meet == 0 {
            run.check(name("omega_nondegenerate"), CONDITION_BOUND, c.units, |r| {
                let mut cond = 0.0f64;
                for i in 0..c.units {
                    let g = if i == 0 { identity(m) } else { m.random_element(Tag::G, r, 0.9)? };
                    let rep = kernel_condition(m, &g)?;
                    cond = worse(cond, rep.condition_number.unwrap_or(f64::INFINITY));
                }
                Ok(with_detail(cond, format!("rank {} at every unit, worst condition number {cond:.3e}", 2 * n)))
            });
        }
        run.check(name("dirac_rank"), 0.0, c.units, |r| {
            worst(c.units, r, |r| {
                let g = m.random_element(Tag::G, r, 0.9)?;
                let rank = linalg::rank(&dirac_frame(m, &m.l().algebra, &g)?, tol::RANK);
                Ok(rank.abs_diff(n) as f64)
            })
        });
        run.check(name("target_dirac"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let z = m.random_algebra_element(Tag::L, r, 1.0)?;
                target_dirac_residual(m, &p, &z)
            })
        });
        run.check(name("j_dirac"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let (a, b) = j_dirac_residuals(m, &p, &g_vector(m, r)?)?;
                Ok(a.max(b))
            })
        });
        run.check(name("kappa_axioms"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let g = m.random_element(Tag::G, r, 0.8)?;
                let gamma2 = point_from_chart(&dual, &g, &j_map(m, &p))?;
                let g = m.random_element(Tag::G, r, 0.8)?;
                let gamma1 = point_from_chart(&dual, &g, &gstar_target(&dual, &gamma2))?;
                kappa_axioms_residual(m, &dual, &gamma1, &gamma2, &p)
            })
        });
        run.check(name("omegacond"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let g = m.random_element(Tag::G, r, 0.8)?;
                let gamma = point_from_chart(&dual, &g, &j_map(m, &p))?;
                let t1 = fibered_tangent(m, &dual, &gamma, random_tangent(m, &p, r, 1.0)?, g_vector(m, r)?)?;
                let t2 = fibered_tangent(m, &dual, &gamma, random_tangent(m, &p, r, 1.0)?, g_vector(m, r)?)?;
                omegacond_residual(m, &dual, &t1, &t2)
            })
        });
        run.check(name("f_constraint"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let g = m.random_element(Tag::G, r, 0.8)?;
                let l = m.random_element(Tag::L, r, 0.6)?;
                Ok(f_map(m, &g, &l)?.residual)
            })
        });
        run.check(name("f_morphism"), tol::ALGEBRAIC, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let g = m.random_element(Tag::G, r, 0.8)?;
                let l1 = m.random_element(Tag::L, r, 0.6)?;
                let l2 = m.random_element(Tag::L, r, 0.6)?;
                f_morphism_residual(m, &l1, &l2, &g)
            })
        });
        if m.h().is_some() {
            run.check(name("f_psi"), tol::ALGEBRAIC, c.pairs, |r| {
                worst(c.pairs, r, |r| {
                    let g = m.random_element(Tag::G, r, 0.8)?;
                    let h = m.random_element(Tag::H, r, 0.8)?;
                    f_psi_residual(m, &g, &h)
                })
            });
        }
    }
    notes.push(
        "presymp: the double-groupoid action is sampled with G* elements of the form exp(x) (identity component only)"
            .into(),
    );
}

fn quotient_suite(run: &mut Runner, models: &[(Variant, Model)], c: Counts, notes: &mut Vec<String>) {
    for (v, m) in models {
        let Ok(ctx) = HHActionContext::new(m) else {
            notes.push(format!("quotient: variant {} has no subgroup H, nothing to check", v.label));
            continue;
        };
        let n = m.n();
        let k = ctx.h.algebra.dim();
        let name = |check: &str| format!("quotient[{}].{check}", v.label);
        run.check(name("invariance"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let t1 = random_tangent(m, &p, r, 1.0)?;
                let t2 = random_tangent(m, &p, r, 1.0)?;
                let h1 = m.random_element(Tag::H, r, 1.0)?;
                let h2 = m.random_element(Tag::H, r, 1.0)?;
                invariance_residual(&ctx, &h1, &h2, &t1, &t2)
            })
        });
        run.check(name("action_laws"), tol::POINT, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let a = m.random_element(Tag::H, r, 1.0)?;
                let b = m.random_element(Tag::H, r, 1.0)?;
                let cc = m.random_element(Tag::H, r, 1.0)?;
                let dd = m.random_element(Tag::H, r, 1.0)?;
                let composed = hh_act(&ctx, &(&a * &b), &(&cc * &dd), &p)?;
                let nested = hh_act(&ctx, &a, &cc, &hh_act(&ctx, &b, &dd, &p)?)?;
                Ok(distance(&composed, &nested))
            })
        });
        run.check(name("push"), tol::ALGEBRAIC, c.points, |r| {
            worst(c.points, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let t = random_tangent(m, &p, r, 1.0)?;
                let h1 = m.random_element(Tag::H, r, 1.0)?;
                let h2 = m.random_element(Tag::H, r, 1.0)?;
                hh_push_mismatch(&ctx, &h1, &h2, &t)
            })
        });
        run.check(name("orbit_kernel"), KERNEL_MATCH, c.units, |r| {
            worst(c.units, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let km = orbit_kernel_match(&ctx, &p)?;
                Ok(if km.orbit_dim == km.kernel_dim && km.orbit_dim == 2 * k { km.distance } else { f64::INFINITY })
            })
        });
        run.check(name("quotient_form"), tol::ALGEBRAIC, c.pairs, |r| {
            let (mut lift, mut rep) = (0.0f64, 0.0f64);
            for _ in 0..c.pairs {
                let p = random_point(m, r, 0.8)?;
                let t1 = random_tangent(m, &p, r, 1.0)?;
                let t2 = random_tangent(m, &p, r, 1.0)?;
                let s1 = DVector::from_fn(2 * k, |_, _| r.random_range(-1.0..1.0));
                let s2 = DVector::from_fn(2 * k, |_, _| r.random_range(-1.0..1.0));
                let h1 = m.random_element(Tag::H, r, 1.0)?;
                let h2 = m.random_element(Tag::H, r, 1.0)?;
                let q = quotient_form_eval(&ctx, &t1, &t2, (&s1, &s2), (&h1, &h2))?;
                lift = worse(lift, q.lift_discrepancy);
                rep = worse(rep, q.representative_discrepancy);
            }
            Ok(with_detail(worse(lift, rep), format!("lift {lift:.2e}, representative {rep:.2e}")))
        });
        run.check(name("quotient_rank"), 0.0, c.units, |r| {
            worst(c.units, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let rank = linalg::rank(&TwoFormValue::at(m, &p)?.matrix, tol::RANK);
                Ok(rank.abs_diff(2 * (n - k)) as f64)
            })
        });
        run.check(name("tbar_poisson"), TBAR_POISSON, c.pairs, |r| {
            worst(c.pairs, r, |r| {
                let p = random_point(m, r, 0.8)?;
                let (b1, b2) = (annihilator(&ctx, r)?, annihilator(&ctx, r)?);
                Ok(tbar_poisson_residual(&ctx, &p, &b1, &b2)?.1)
            })
        });
        run.check(name("pi_representative"), tol::ALGEBRAIC, c.pairs, |r| {
            let h_g = Subspace::span(n, &ctx.h_basis());
            worst(c.pairs, r, |r| {
                let g = m.random_element(Tag::G, r, 1.0)?;
                let hh = m.random_element(Tag::H, r, 1.0)?;
                let (b1, b2) = (annihilator(&ctx, r)?, annihilator(&ctx, r)?);
                quotient_pi_invariance(m, &m.l().algebra, &h_g, &g, &hh, &b1, &b2)
            })
        });
        run.check(name("admissibility"), tol::ALGEBRAIC, c.pairs, |r| {
            let rep = admissibility_report(m, r, c.pairs, None)?;
            let residual = if rep.psi_exists { rep.psi_morphism.max(rep.invariance) } else { f64::INFINITY };
            Ok(with_detail(
                residual,
                format!("psi morphism {:.2e}, invariance {:.2e}", rep.psi_morphism, rep.invariance),
            ))
        });
        notes.push(format!(
            "quotient[{}]: uniqueness of the reduced form is certified only at the sampled representatives ({} pairs, {} points)",
            v.label, c.pairs, c.points
        ));
    }
}

/// Runs one suite on an already loaded entry.
pub fn run_loaded(entry: &LoadedEntry, suite: &str, opts: &RunOptions) -> Result<VerificationReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Invalid(format!("unknown suite `{suite}` (expected one of {SUITES:?})")));
    }
    let start = Instant::now();
    let c = Counts::new(opts.samples);
    let mut notes = Vec::new();
    let models: Vec<(Variant, Model)> = if opts.fault_inject {
        let (i, j, k) = fault_constant(entry.first())
            .ok_or_else(|| Error::Invalid("no structure constant breaks Jacobi".into()))?;
        notes.push(format!("fault: c[{i}][{j}][{k}] of the double shifted by {FAULT_SIZE:e}"));
        entry.variants.iter().map(|(v, m)| (*v, m.with_perturbed_double(i, j, k, FAULT_SIZE))).collect()
    } else {
        entry.variants.clone()
    };
    let mut run = Runner { opts, rows: Vec::new() };
    let all = suite == "all";
    if all || suite == "algebra" {
        algebra_suite(&mut run, &models, c);
    }
    if all || suite == "double" {
        double_suite(&mut run, &models, c);
    }
    if all || suite == "groupoid" {
        groupoid_suite(&mut run, &models, c);
    }
    if all || suite == "presymp" {
        presymp_suite(&mut run, &models, c, &mut notes);
    }
    if all || suite == "quotient" {
        quotient_suite(&mut run, &models, c, &mut notes);
    }
    let mut checks = run.rows;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        entry: entry.name.to_string(),
        suite: suite.to_string(),
        seed: opts.seed,
        samples: opts.samples,
        fault_injected: opts.fault_inject,
        pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
        checks,
        timing_ms: start.elapsed().as_millis(),
        environment: Environment::current(),
        notes,
    })
}

/// Loads `entry` from the catalog and runs `suite` on it.
pub fn run_suite(entry: &str, suite: &str, opts: &RunOptions) -> Result<VerificationReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Invalid(format!("unknown suite `{suite}` (expected one of {SUITES:?})")));
    }
    run_loaded(&catalog::find(entry)?.load()?, suite, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_the_defaults() {
        assert_eq!(Counts::new(100), Counts { points: 100, pairs: 50, units: 20, fd: 30 });
        assert_eq!(Counts::new(0), Counts { points: 1, pairs: 1, units: 1, fd: 1 });
    }

    #[test]
    fn seeds_differ_per_check() {
        assert_ne!(check_seed("double.jacobi", 1), check_seed("double.rr", 1));
        assert_eq!(check_seed("double.rr", 1) ^ 1, check_seed("double.rr", 0));
        // FNV-1a of the empty string is the offset basis.
        assert_eq!(check_seed("", 0), 0xcbf29ce484222325);
    }

    #[test]
    fn nan_is_sticky_and_fails() {
        assert!(worse(worse(0.0, f64::NAN), 1.0).is_nan());
        let opts = RunOptions::new(0, 1);
        let mut run = Runner { opts: &opts, rows: Vec::new() };
        run.check("x".into(), 1.0, 1, |_| Ok(f64::NAN));
        run.check("y".into(), 1.0, 1, |_| -> Result<f64> { Err(Error::Invalid("boom".into())) });
        assert!(run.rows.iter().all(|r| !r.pass));
        assert!(run.rows[1].detail.as_deref().unwrap().contains("boom"));
    }

    #[test]
    fn unknown_names_are_errors() {
        let opts = RunOptions::new(0, 5);
        assert!(run_suite("su2_iwasawa", "everything", &opts).is_err());
        assert!(run_suite("so3", "all", &opts).is_err());
    }

    #[test]
    fn fault_breaks_jacobi() {
        let e = catalog::find("su2_iwasawa").unwrap().load().unwrap();
        let (i, j, k) = fault_constant(e.first()).unwrap();
        assert!(i < 3 && j >= 3);
        let bad = e.first().with_perturbed_double(i, j, k, FAULT_SIZE);
        assert!(bad.double().algebra().jacobi_residual() > 1e-6);
    }
}
