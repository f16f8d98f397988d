//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use affine_dirac_harness::{catalog, run_loaded, CheckRow, RunOptions, VerificationReport};

const SEED: u64 = 42;
const SAMPLES: usize = 100;

const DOUBLE_TOL: f64 = 1e-12;
const ALGEBRAIC_TOL: f64 = 1e-9;
const ROUNDOFF_TOL: f64 = 1e-12;
const OMEGA_TOL: f64 = 1e-10;
const FD_TOL: f64 = 1e-6;
const KERNEL_TOL: f64 = 1e-8;
const TBAR_TOL: f64 = 1e-7;
/// Residual ratio per step halving, i.e. at least a 4× reduction.
const FD_RATIO: f64 = 0.25;

const MIN_PAIRS: usize = 50;
const MIN_TRIPLES: usize = 100;
const MIN_UNITS: usize = 20;
const MIN_FD: usize = 30;
const MIN_INVARIANCE: usize = 100;
const MIN_ACTION: usize = 30;

type Reports = BTreeMap<&'static str, VerificationReport>;
type Outcome = Result<String, String>;

fn row<'a>(rep: &'a VerificationReport, name: &str) -> Result<&'a CheckRow, String> {
    rep.get(name).ok_or_else(|| format!("{}: no row {name}", rep.entry))
}

/// Residual of `name` is at most `limit` with at least `min_samples` samples.
fn below(rep: &VerificationReport, name: &str, limit: f64, min_samples: usize) -> Result<f64, String> {
    let r = row(rep, name)?;
    if r.samples < min_samples {
        return Err(format!("{}: {name} used {} samples, need {min_samples}", rep.entry, r.samples));
    }
    if r.residual.is_nan() || r.residual > limit {
        return Err(format!("{}: {name} = {:e} exceeds {limit:e} {}", rep.entry, r.residual, r.detail.clone().unwrap_or_default()));
    }
    Ok(r.residual)
}

fn labels(rep: &VerificationReport, suite: &str) -> Vec<String> {
    let mut out: Vec<String> = rep
        .checks
        .iter()
        .filter_map(|c| c.name.strip_prefix(&format!("{suite}["))?.split(']').next().map(str::to_string))
        .collect();
    out.dedup();
    out
}

fn double_construction(reports: &Reports) -> Outcome {
    let mut worst = 0.0f64;
    for rep in reports.values() {
        for name in ["double.jacobi", "double.pairing_invariance", "double.rr"] {
            worst = worst.max(below(rep, name, DOUBLE_TOL, 0)?);
        }
    }
    Ok(format!("{} entries, worst {worst:.1e}", reports.len()))
}

fn poisson_lie(reports: &Reports) -> Outcome {
    let mut worst = 0.0f64;
    for rep in reports.values() {
        for name in ["double.pi_g_multiplicativity", "double.pi_gstar_multiplicativity", "double.pi_d_multiplicativity"] {
            worst = worst.max(below(rep, name, ALGEBRAIC_TOL, MIN_PAIRS)?);
        }
        below(rep, "double.pi_at_identity", ROUNDOFF_TOL, 0)?;
        worst = worst.max(below(rep, "double.gond1", ALGEBRAIC_TOL, MIN_PAIRS)?);
    }
    Ok(format!("worst {worst:.1e}"))
}

fn presymp_algebraic(reports: &Reports) -> Outcome {
    let rep = &reports["su2_iwasawa"];
    let variants = labels(rep, "presymp");
    for l in ["gstar", "tn"] {
        if !variants.iter().any(|v| v == l) {
            return Err(format!("su2_iwasawa has no variant {l}"));
        }
        below(rep, &format!("presymp[{l}].omega_evaluators"), OMEGA_TOL, MIN_TRIPLES)?;
        below(rep, &format!("presymp[{l}].closedness_delta"), ALGEBRAIC_TOL, MIN_TRIPLES)?;
        below(rep, &format!("presymp[{l}].multiplicativity"), ALGEBRAIC_TOL, MIN_PAIRS)?;
        below(rep, &format!("presymp[{l}].conds"), ALGEBRAIC_TOL, MIN_PAIRS)?;
        below(rep, &format!("presymp[{l}].cocycle"), ALGEBRAIC_TOL, MIN_PAIRS)?;
        below(rep, &format!("presymp[{l}].cocycle_infinitesimal"), FD_TOL, 1)?;
    }
    Ok("su2_iwasawa with l = g* and l = t + n".into())
}

fn presymp_geometric(reports: &Reports) -> Outcome {
    let mut n = 0;
    for rep in reports.values() {
        for l in labels(rep, "presymp") {
            below(rep, &format!("presymp[{l}].kernel_condition"), 0.0, MIN_UNITS)?;
            below(rep, &format!("presymp[{l}].dirac_rank"), 0.0, MIN_UNITS)?;
            below(rep, &format!("presymp[{l}].target_dirac"), ALGEBRAIC_TOL, 1)?;
            n += 1;
        }
    }
    Ok(format!("{n} (entry, l) pairs"))
}

fn closedness_cross_oracle(reports: &Reports) -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for rep in reports.values() {
        for l in labels(rep, "presymp") {
            worst.0 = worst.0.max(below(rep, &format!("presymp[{l}].closedness_fd"), FD_TOL, MIN_FD)?);
            worst.1 = worst.1.max(below(rep, &format!("presymp[{l}].closedness_fd_convergence"), FD_RATIO, 1)?);
        }
    }
    Ok(format!("worst residual {:.1e}, worst ratio per halving {:.3}", worst.0, worst.1))
}

fn quotient(reports: &Reports) -> Outcome {
    let rep = &reports["cp1_bruhat"];
    let l = "tn";
    below(rep, &format!("quotient[{l}].invariance"), ALGEBRAIC_TOL, MIN_INVARIANCE)?;
    below(rep, &format!("quotient[{l}].orbit_kernel"), KERNEL_TOL, 1)?;
    below(rep, &format!("quotient[{l}].quotient_form"), ALGEBRAIC_TOL, 1)?;
    below(rep, &format!("quotient[{l}].quotient_rank"), 0.0, 1)?;
    let t = below(rep, &format!("quotient[{l}].tbar_poisson"), TBAR_TOL, 1)?;
    let a = row(rep, &format!("quotient[{l}].admissibility"))?;
    if !a.pass {
        return Err(format!("admissibility failed: {:?}", a.detail));
    }
    Ok(format!("cp1_bruhat, tbar residual {t:.1e}"))
}

fn symplectic(reports: &Reports) -> Outcome {
    let rep = &reports["affine_poisson"];
    let r = row(rep, "presymp[gstar].omega_nondegenerate")?;
    if !r.pass {
        return Err(format!("omega degenerate: {:?}", r.detail));
    }
    below(rep, "presymp[gstar].kernel_condition", 0.0, MIN_UNITS)?;
    let failed: Vec<&str> =
        rep.checks.iter().filter(|c| c.name.starts_with("presymp") && !c.pass).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(format!("failing: {failed:?}"));
    }
    Ok(format!("condition number {:.3}", r.residual))
}

fn action_and_f(reports: &Reports) -> Outcome {
    let mut psi = 0;
    for rep in reports.values() {
        for l in labels(rep, "presymp") {
            below(rep, &format!("presymp[{l}].omegacond"), ALGEBRAIC_TOL, MIN_ACTION)?;
            below(rep, &format!("presymp[{l}].f_constraint"), ALGEBRAIC_TOL, MIN_ACTION)?;
            below(rep, &format!("presymp[{l}].f_morphism"), ALGEBRAIC_TOL, MIN_ACTION)?;
            if rep.get(&format!("presymp[{l}].f_psi")).is_some() {
                below(rep, &format!("presymp[{l}].f_psi"), ALGEBRAIC_TOL, MIN_ACTION)?;
                psi += 1;
            }
        }
    }
    if psi == 0 {
        return Err("no entry with H exercised F = Ψ".into());
    }
    Ok(format!("F matched against Psi on {psi} variants with H"))
}

fn sensitivity(faulted: &VerificationReport) -> Outcome {
    let failed: Vec<&str> = faulted.failures().map(|c| c.name.as_str()).collect();
    if failed.len() < 2 {
        return Err(format!("only {failed:?} failed"));
    }
    for needed in ["double.jacobi", "closedness_delta"] {
        if !failed.iter().any(|f| f.ends_with(needed)) {
            return Err(format!("{needed} did not fail; failures: {failed:?}"));
        }
    }
    Ok(format!("{} checks fail under the fault", failed.len()))
}

fn main() -> ExitCode {
    let opts = RunOptions::new(SEED, SAMPLES);
    let mut reports = Reports::new();
    for e in catalog() {
        let loaded = e.load().expect("catalog entry loads");
        reports.insert(e.name, run_loaded(&loaded, "all", &opts).expect("suite runs"));
    }
    let faulted = {
        let loaded = catalog::find("su2_iwasawa").unwrap().load().unwrap();
        run_loaded(&loaded, "all", &RunOptions { fault_inject: true, ..opts.clone() }).unwrap()
    };

    let criteria: Vec<(&str, Outcome)> = vec![
        ("double construction", double_construction(&reports)),
        ("Poisson Lie structure", poisson_lie(&reports)),
        ("pre-symplectic, algebraic", presymp_algebraic(&reports)),
        ("pre-symplectic, geometric", presymp_geometric(&reports)),
        ("closedness cross-oracle", closedness_cross_oracle(&reports)),
        ("H-admissible quotient", quotient(&reports)),
        ("symplectic case", symplectic(&reports)),
        ("double-groupoid action and F", action_and_f(&reports)),
        ("fault sensitivity", sensitivity(&faulted)),
    ];
    let mut ok = true;
    for (i, (label, outcome)) in criteria.iter().enumerate() {
        match outcome {
            Ok(d) => println!("criterion {}: PASS  {label}: {d}", i + 1),
            Err(e) => {
                ok = false;
                println!("criterion {}: FAIL  {label}: {e}", i + 1);
            }
        }
    }
    let ms: u128 = reports.values().map(|r| r.timing_ms).sum();
    println!("acceptance: {} entries, seed {SEED}, samples {SAMPLES}, {ms} ms", reports.len());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
