use std::fmt::Write as _;

use qcalab::dirac::{dirac_pqca, DiracParams};
use qcalab::operator::DenseOperator;
use qcalab::pqca::{pqca_as_ring_operator, Phase};
use qcalab::random::random_quiescent_cell_unitary;
use qcalab::scalar::tol;
use qcalab::state::{Alphabet, RingSpace};
use qcalab::structure::{build_localization, causality_check, lift_classical, product_unitary, signalling_demo, xor_step_window, Neighbourhood};
use qcalab::Real;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{CausalityArgs, Corpus, LocalizeArgs, SignalArgs, Target};
use crate::error::{CliError, Outcome};
use crate::report::{cell_set, flag_value, Report};

fn dirac_phases<T: Real>(cells: usize, mass: f64, epsilon: f64) -> Result<(DenseOperator<T>, DenseOperator<T>), CliError> {
    let params = DiracParams::new(T::lit(mass), T::lit(epsilon))?;
    let p = dirac_pqca(params);
    let ring = RingSpace::new(cells, 2)?;
    Ok((pqca_as_ring_operator(&p, &ring, Phase::Even)?, pqca_as_ring_operator(&p, &ring, Phase::Odd)?))
}

fn check_dirac_ring(cells: usize) -> Result<(), CliError> {
    if cells < 2 || !cells.is_multiple_of(2) {
        return Err(CliError::flag("cells", format!("Dirac blocks need an even ring of at least 2 cells (got {cells})")));
    }
    Ok(())
}

fn localize_target<T: Real>(args: &LocalizeArgs) -> Result<(DenseOperator<T>, Neighbourhood), CliError> {
    if args.cells == 0 {
        return Err(CliError::flag("cells", "must be positive"));
    }
    if args.local_dim < 2 {
        return Err(CliError::flag("local-dim", "must be at least 2"));
    }
    // the doubled space must fit the dense cap
    RingSpace::new(args.cells, args.local_dim * args.local_dim)
        .map_err(|e| CliError::flag("cells", format!("doubled space too large: {e}")))?;
    let space = RingSpace::new(args.cells, args.local_dim)?;
    match args.corpus {
        Corpus::Identity => Ok((DenseOperator::identity(space), Neighbourhood::Offsets(vec![0]))),
        Corpus::Product => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed);
            let u = random_quiescent_cell_unitary::<T, _>(args.local_dim, &mut rng)?;
            Ok((product_unitary(space, &u)?, Neighbourhood::Offsets(vec![0])))
        }
        Corpus::DiracEven => {
            if args.local_dim != 2 {
                return Err(CliError::flag("local-dim", "the Dirac automaton is defined on qubits"));
            }
            check_dirac_ring(args.cells)?;
            let (even, _) = dirac_phases(args.cells, args.mass, args.epsilon)?;
            Ok((even, Neighbourhood::blocks(args.cells, Phase::Even)))
        }
    }
}

pub fn localize<T: Real>(args: &LocalizeArgs) -> Result<Report, CliError> {
    let (g, n) = localize_target::<T>(args)?;
    let r = build_localization(&g, &n)?;
    let limit = tol::<T>(1e-10);
    let mut out = String::new();
    let corpus = flag_value(&args.corpus);
    let _ = writeln!(out, "localize corpus={corpus} cells={} local_dim={}", args.cells, args.local_dim);
    for (x, (s, a)) in r.supports.iter().zip(&r.allowed).enumerate() {
        let mark = if s.is_subset(a) { "ok" } else { "NONLOCAL" };
        let _ = writeln!(out, "K_{x} support {} allowed {} {mark}", cell_set(s), cell_set(a));
    }
    let _ = writeln!(out, "commutation_residual {:e}", r.commutation_residual.to_f64_lossy());
    let _ = writeln!(out, "product_defect {:e}", r.product_defect.to_f64_lossy());
    let _ = writeln!(out, "he_eg_defect {:e}", r.he_eg_defect.to_f64_lossy());
    let ok = r.is_local() && r.commutation_residual < limit && r.product_defect < limit && r.he_eg_defect < limit;
    let outcome = Outcome::from_bool(ok);
    let _ = writeln!(out, "verdict {}", outcome.label());
    Ok(Report::new(out, outcome))
}

fn parse_neighbourhood(text: &str, cells: usize) -> Result<Neighbourhood, CliError> {
    if text == "blocks" {
        if !cells.is_multiple_of(2) {
            return Err(CliError::flag("neighbourhood", format!("blocks need an even number of cells (got {cells})")));
        }
        return Ok(Neighbourhood::blocks(cells, Phase::Even));
    }
    let offsets: Result<Vec<i64>, _> = text.split(',').map(|s| s.trim().parse::<i64>()).collect();
    match offsets {
        Ok(o) if !o.is_empty() => Ok(Neighbourhood::Offsets(o)),
        _ => Err(CliError::flag("neighbourhood", format!("`{text}` is neither `blocks` nor a list of integer offsets"))),
    }
}

fn causality_target<T: Real>(args: &CausalityArgs) -> Result<DenseOperator<T>, CliError> {
    if args.cells == 0 {
        return Err(CliError::flag("cells", "must be positive"));
    }
    if args.supercell == 0 || !args.cells.is_multiple_of(args.supercell) {
        return Err(CliError::flag("supercell", format!("must divide --cells {} (got {})", args.cells, args.supercell)));
    }
    match args.target {
        Target::Identity => Ok(DenseOperator::identity(RingSpace::new(args.cells, 2)?)),
        Target::DiracEven | Target::DiracStep => {
            check_dirac_ring(args.cells)?;
            RingSpace::new(args.cells, 2).map_err(|e| CliError::flag("cells", e))?;
            let (even, odd) = dirac_phases(args.cells, args.mass, args.epsilon)?;
            Ok(if args.target == Target::DiracEven { even } else { odd.matmul(&even) })
        }
        Target::Xor => {
            RingSpace::window(args.cells, 3).map_err(|e| CliError::flag("cells", e))?;
            Ok(lift_classical(xor_step_window, args.cells, Alphabet::new(3)?)?)
        }
    }
}

pub fn causality<T: Real>(args: &CausalityArgs) -> Result<Report, CliError> {
    let g = causality_target::<T>(args)?;
    let space = g.space().grouped(args.supercell)?;
    let g = g.with_space(space)?;
    let n = parse_neighbourhood(&args.neighbourhood, space.cells())?;
    let v = causality_check(&g, &n)?;
    let mut out = String::new();
    let target = flag_value(&args.target);
    let _ = writeln!(
        out,
        "causality target={target} cells={} supercell={} neighbourhood={}",
        args.cells, args.supercell, args.neighbourhood
    );
    for (x, s) in v.supports.iter().enumerate() {
        let _ = writeln!(out, "cell {x} support {} allowed {}", cell_set(s), cell_set(&n.cells_for(x, &space)));
    }
    for w in &v.witnesses {
        let _ = writeln!(
            out,
            "witness cell {} unit |{}><{}| support {} allowed {}",
            w.cell,
            w.a,
            w.b,
            cell_set(&w.support),
            cell_set(&w.allowed)
        );
    }
    let verdict = if v.passed { "pass" } else { "fail" };
    let expected = flag_value(&args.expect);
    let _ = writeln!(out, "verdict {verdict} (expected {expected})");
    Ok(Report::new(out, Outcome::from_bool(verdict == expected.as_str())))
}

pub fn signal<T: Real>(args: &SignalArgs) -> Result<Report, CliError> {
    if args.length < 3 {
        return Err(CliError::flag("length", format!("must be at least 3 (got {})", args.length)));
    }
    RingSpace::window(args.length, 3).map_err(|e| CliError::flag("length", e))?;
    let r = signalling_demo::<T>(args.length)?;
    let limit = tol::<T>(1e-12);
    let ok = r.before <= limit && (r.after - T::one()).abs() <= limit && r.phase_gate_defect <= limit;
    let outcome = Outcome::from_bool(ok);
    let mut out = String::new();
    let _ = writeln!(out, "signal length={}", r.length);
    let _ = writeln!(out, "bob_trace_distance_before {:e}", r.before.to_f64_lossy());
    let _ = writeln!(out, "bob_trace_distance_after {:e}", r.after.to_f64_lossy());
    let _ = writeln!(out, "alice_phase_gate_defect {:e}", r.phase_gate_defect.to_f64_lossy());
    let _ = writeln!(out, "verdict {}", outcome.label());
    Ok(Report::new(out, outcome))
}
