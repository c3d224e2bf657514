use qcalab::dirac::convergence_study;
use qcalab::Real;

use crate::args::ConvergeArgs;
use crate::error::{CliError, Outcome};
use crate::report::{num, opt_num, Csv, Report};

pub(crate) fn check_range(flag: &str, range: &Option<Vec<f64>>) -> Result<Option<(f64, f64)>, CliError> {
    match range.as_deref() {
        None => Ok(None),
        Some([lo, hi]) if lo <= hi => Ok(Some((*lo, *hi))),
        Some(_) => Err(CliError::flag(flag, "expected LO,HI with LO <= HI")),
    }
}

fn validate(args: &ConvergeArgs) -> Result<Option<(f64, f64)>, CliError> {
    if args.grid < 2 {
        return Err(CliError::flag("grid", "must be at least 2"));
    }
    if !(args.mass.is_finite() && args.mass >= 0.0) {
        return Err(CliError::flag("mass", "must be finite and non-negative"));
    }
    if !(args.time.is_finite() && args.time >= 0.0) {
        return Err(CliError::flag("time", "must be finite and non-negative"));
    }
    if args.eps.is_empty() {
        return Err(CliError::flag("eps", "needs at least one value"));
    }
    if args.eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(CliError::flag("eps", "every value must be finite and positive"));
    }
    if args.eps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(CliError::flag("eps", "must be strictly decreasing"));
    }
    check_range("expect-order", &args.expect_order)
}

pub fn run<T: Real>(args: &ConvergeArgs) -> Result<Report, CliError> {
    let expect = validate(args)?;
    let eps: Vec<T> = args.eps.iter().map(|&e| T::lit(e)).collect();
    let study = convergence_study(T::lit(args.mass), args.mode, T::lit(args.time), &eps, args.grid)?;
    let mut csv = Csv::new(&["epsilon", "l2_error", "local_order"]);
    for row in &study.rows {
        csv.row(&[
            num(row.epsilon.to_f64_lossy()),
            num(row.l2_error.to_f64_lossy()),
            opt_num(row.local_order.map(|o| o.to_f64_lossy())),
        ]);
    }
    let order = study.fitted_order.map(|o| o.to_f64_lossy());
    let outcome = match expect {
        Some((lo, hi)) => Outcome::from_bool(order.is_some_and(|o| (lo..=hi).contains(&o))),
        None => Outcome::Pass,
    };
    let mut report = Report::new(csv.finish(), outcome).note(match order {
        Some(o) => format!("fitted order {o:.6}"),
        None => "fitted order undefined (fewer than two positive errors)".to_string(),
    });
    for (e, err) in &study.skipped {
        report = report.note(format!("skipped epsilon {}: {err}", e.to_f64_lossy()));
    }
    Ok(report)
}
