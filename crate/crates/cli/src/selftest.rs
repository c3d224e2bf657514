//! `--selftest`: each subcommand's module invariants, run in f64 at fixed
//! seeds. One line per check; the run passes when every check does.

use std::fmt::Write as _;

use qcalab::dirac::{convergence_study, dirac_scattering_unitary, walk_evolve, walk_vs_engine_crosscheck, DiracParams, WalkField};
use qcalab::pqca::check_quiescence;
use qcalab::random::random_state;
use qcalab::state::RingSpace;
use qcalab::trotter::{splitting_error, trotter_vs_pqca_crosscheck, TwoCellHamiltonian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{CausalityArgs, Command, Common, Corpus, Expectation, LocalizeArgs, Precision, SignalArgs, Target};
use crate::commands::structure;
use crate::error::{CliError, Outcome};
use crate::report::Report;

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn quiet_common() -> Common {
    Common {
        config: None,
        seed: 0,
        output: None,
        precision: Precision::F64,
        selftest: false,
    }
}

fn walk_checks() -> Result<Vec<Check>, CliError> {
    let massless = DiracParams::new(0.0, 0.1)?;
    let moved = walk_evolve(&WalkField::<f64>::delta(64, 32)?, massless, 10);
    let dev = moved.max_deviation(&WalkField::delta(64, 42)?);
    let packet = WalkField::<f64>::gaussian(128, 64.0, 6.0, 0.3)?;
    let params = DiracParams::new(0.5, 0.1)?;
    let drift = (walk_evolve(&packet, params, 1000).norm_sqr() - 1.0).abs();
    let agree = walk_vs_engine_crosscheck(DiracParams::new(0.5, 0.3)?, 40, &WalkField::gaussian(32, 16.0, 3.0, 0.4)?)?;
    Ok(vec![
        check("zero-mass-transport", dev < 1e-15, format!("max deviation {dev:e}")),
        check("norm-1000-steps", drift < 1e-9, format!("drift {drift:e}")),
        check("walk-engine-agreement", agree < 1e-12, format!("max deviation {agree:e}")),
    ])
}

fn converge_checks() -> Result<Vec<Check>, CliError> {
    let eps = [0.1, 0.05, 0.025, 0.0125];
    let study = convergence_study(0.5f64, 1, 1.0, &eps, 256)?;
    let order = study.fitted_order;
    let exact = convergence_study(0.0f64, 1, 1.0, &eps, 256)?;
    let worst = exact.rows.iter().map(|r| r.l2_error).fold(0.0, f64::max);
    Ok(vec![
        check(
            "order-in-range",
            order.is_some_and(|o| (0.7..=1.3).contains(&o)),
            format!("fitted order {}", order.map_or("undefined".to_string(), |o| format!("{o:.6}"))),
        ),
        check("zero-mass-exact", worst < 1e-12 && exact.rows.len() == eps.len(), format!("worst error {worst:e}")),
    ])
}

fn trotter_checks() -> Result<Vec<Check>, CliError> {
    let ring = RingSpace::new(4, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let h = TwoCellHamiltonian::<f64>::random(2, &mut rng)?;
    let errs: Vec<f64> = [0.1, 0.05, 0.025].iter().map(|&dt| splitting_error(&h, &ring, dt)).collect::<Result<_, _>>()?;
    let ratios: Vec<f64> = errs.windows(2).map(|w| w[1] / w[0]).collect();
    let diag = TwoCellHamiltonian::<f64>::random_diagonal(2, &mut rng)?;
    let diag_err = splitting_error(&diag, &ring, 0.1)?;
    let init = random_state(ring.dim(), &mut rng);
    let cross = trotter_vs_pqca_crosscheck(&h, &ring, 0.05, 20, &init)?;
    Ok(vec![
        check(
            "halving-ratio",
            ratios.iter().all(|r| (0.2..=0.35).contains(r)),
            format!("ratios {ratios:?}"),
        ),
        check("diagonal-exact", diag_err < 1e-12, format!("error {diag_err:e}")),
        check("pqca-agreement", cross < 1e-10, format!("max deviation {cross:e}")),
    ])
}

fn localize_checks() -> Result<Vec<Check>, CliError> {
    let cases = [(Corpus::Identity, 3, 2), (Corpus::Product, 3, 3), (Corpus::Product, 4, 2), (Corpus::DiracEven, 4, 2)];
    let mut out = Vec::new();
    for (corpus, cells, local_dim) in cases {
        let args = LocalizeArgs {
            corpus,
            cells,
            local_dim,
            mass: 0.6,
            epsilon: 0.4,
            common: quiet_common(),
        };
        let r = structure::localize::<f64>(&args)?;
        let name = match corpus {
            Corpus::Identity => "identity",
            Corpus::Product => "product",
            Corpus::DiracEven => "dirac-even",
        };
        out.push(check(name, r.outcome == Outcome::Pass, format!("{cells} cells, d = {local_dim}")));
    }
    Ok(out)
}

fn causality_checks() -> Result<Vec<Check>, CliError> {
    let args = |target, cells, supercell, neighbourhood: &str, expect| CausalityArgs {
        target,
        cells,
        neighbourhood: neighbourhood.into(),
        supercell,
        mass: 0.6,
        epsilon: 0.4,
        expect,
        common: quiet_common(),
    };
    let step = structure::causality::<f64>(&args(Target::DiracStep, 8, 2, "-1,0,1", Expectation::Pass))?;
    let xor = structure::causality::<f64>(&args(Target::Xor, 4, 1, "-2,-1,0,1,2", Expectation::Fail))?;
    let bob = xor.body.lines().any(|l| l.starts_with("witness cell 3 "));
    Ok(vec![
        check("dirac-step-radius-1", step.outcome == Outcome::Pass, "8 qubits grouped in pairs"),
        check("xor-not-causal", xor.outcome == Outcome::Pass && bob, "4-cell window, radius 2, witness at cell 3"),
    ])
}

fn signal_checks() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for length in 3..=7 {
        let r = structure::signal::<f64>(&SignalArgs {
            length,
            common: quiet_common(),
        })?;
        out.push(check("protocol", r.outcome == Outcome::Pass, format!("L = {length}")));
    }
    Ok(out)
}

fn quiescence_checks() -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let (m, eps) = (rng.random_range(0.0..5.0), rng.random_range(1e-3..1.0));
        let u = dirac_scattering_unitary(DiracParams::<f64>::new(m, eps)?);
        worst = (worst.0.max(u.unitarity_defect()), worst.1.max(check_quiescence(&u)));
    }
    Ok(vec![
        check("dirac-unitary", worst.0 < 1e-12, format!("worst unitarity defect {:e}", worst.0)),
        check("dirac-quiescent", worst.1 < 1e-12, format!("worst quiescence defect {:e}", worst.1)),
    ])
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    let checks = match command {
        Command::Walk(_) => walk_checks()?,
        Command::Converge(_) => converge_checks()?,
        Command::Trotter(_) => trotter_checks()?,
        Command::Localize(_) => localize_checks()?,
        Command::Causality(_) => causality_checks()?,
        Command::Signal(_) => signal_checks()?,
        Command::Quiescence(_) => quiescence_checks()?,
    };
    let mut out = String::new();
    for c in &checks {
        let label = if c.passed { "pass" } else { "fail" };
        let _ = writeln!(out, "selftest {} {}: {label} ({})", command.name(), c.name, c.detail);
    }
    Ok(Report::new(out, Outcome::from_bool(checks.iter().all(|c| c.passed))))
}
