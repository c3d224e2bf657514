use qcalab::state::RingSpace;
use qcalab::trotter::{splitting_error, TwoCellHamiltonian};
use qcalab::Real;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::converge::check_range;
use crate::args::{HamiltonianKind, TrotterArgs};
use crate::error::{CliError, Outcome};
use crate::report::{flag_value, num, opt_num, Csv, Report};

fn validate(args: &TrotterArgs) -> Result<Option<(f64, f64)>, CliError> {
    if args.cells < 2 || !args.cells.is_multiple_of(2) {
        return Err(CliError::flag("cells", format!("must be even and at least 2 (got {})", args.cells)));
    }
    if args.local_dim < 2 {
        return Err(CliError::flag("local-dim", "must be at least 2"));
    }
    if args.hamiltonian == HamiltonianKind::Exchange && args.local_dim != 2 {
        return Err(CliError::flag("local-dim", "the exchange Hamiltonian is defined on qubits only"));
    }
    RingSpace::new(args.cells, args.local_dim).map_err(|e| CliError::flag("cells", e))?;
    if args.dt.is_empty() {
        return Err(CliError::flag("dt", "needs at least one value"));
    }
    if args.dt.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
        return Err(CliError::flag("dt", "every value must be finite and non-negative"));
    }
    if args.dt.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(CliError::flag("dt", "must be strictly decreasing"));
    }
    check_range("expect-order", &args.expect_order)
}

pub fn hamiltonian<T: Real>(kind: HamiltonianKind, local_dim: usize, seed: u64) -> Result<TwoCellHamiltonian<T>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        HamiltonianKind::Random => TwoCellHamiltonian::random(local_dim, &mut rng)?,
        HamiltonianKind::Diagonal => TwoCellHamiltonian::random_diagonal(local_dim, &mut rng)?,
        HamiltonianKind::Exchange => TwoCellHamiltonian::exchange(),
    })
}

/// log(e/e_prev) / log(dt/dt_prev), undefined when either error is at the
/// rounding floor.
fn order_estimate(prev: (f64, f64), cur: (f64, f64), floor: f64) -> Option<f64> {
    let ((dt0, e0), (dt1, e1)) = (prev, cur);
    (e0 > floor && e1 > floor && dt0 > 0.0 && dt1 > 0.0).then(|| (e1 / e0).ln() / (dt1 / dt0).ln())
}

pub fn run<T: Real>(args: &TrotterArgs) -> Result<Report, CliError> {
    let expect = validate(args)?;
    let h = hamiltonian::<T>(args.hamiltonian, args.local_dim, args.common.seed)?;
    let ring = RingSpace::new(args.cells, args.local_dim)?;
    let errors: Vec<f64> = args
        .dt
        .par_iter()
        .map(|&dt| splitting_error(&h, &ring, T::lit(dt)).map(|e| e.to_f64_lossy()))
        .collect::<Result<_, _>>()?;
    let floor = 64.0 * T::epsilon().to_f64_lossy();
    let mut csv = Csv::new(&["dt", "splitting_error", "order_estimate"]);
    let mut orders = Vec::new();
    for (i, (&dt, &err)) in args.dt.iter().zip(&errors).enumerate() {
        let order = (i > 0).then(|| order_estimate((args.dt[i - 1], errors[i - 1]), (dt, err), floor)).flatten();
        if i > 0 {
            orders.push(order);
        }
        csv.row(&[num(dt), num(err), opt_num(order)]);
    }
    let outcome = match expect {
        Some((lo, hi)) => Outcome::from_bool(!orders.is_empty() && orders.iter().all(|o| o.is_some_and(|o| (lo..=hi).contains(&o)))),
        None => Outcome::Pass,
    };
    let kind = flag_value(&args.hamiltonian);
    Ok(Report::new(csv.finish(), outcome).note(format!(
        "hamiltonian {kind} seed {} on {} cells of dimension {}",
        args.common.seed, args.cells, args.local_dim
    )))
}
