use rayon::prelude::*;

use super::{commensurate_momentum, dirac_plane_wave, walk_evolve, DiracParams};
use crate::error::{invalid, QcaError, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow<T: Real> {
    pub epsilon: T,
    pub l2_error: T,
    /// log(e_prev/e)/log(ε_prev/ε) against the previous accepted row.
    pub local_order: Option<T>,
}

#[derive(Clone, Debug)]
pub struct ConvergenceStudy<T: Real> {
    pub rows: Vec<ConvergenceRow<T>>,
    /// Least-squares slope of log error against log ε; `None` with fewer than
    /// two positive errors.
    pub fitted_order: Option<T>,
    /// Entries whose preconditions failed.
    pub skipped: Vec<(T, QcaError)>,
}

fn integer_steps<T: Real>(time: T, epsilon: T) -> Result<usize> {
    let ratio = (time / epsilon).to_f64_lossy();
    let n = ratio.round();
    if !(ratio >= 0.0) || (ratio - n).abs() > 1e-9 * n.max(1.0) {
        return Err(invalid("time", format!("T/ε = {ratio} is not an integer")));
    }
    Ok(n as usize)
}

/// Plane-wave continuum-limit study at fixed grid size: for each ε the mode
/// `mode` has momentum k = 2π·mode/(Mε), the walk runs T/ε steps from the
/// analytic wave at t = 0 and is compared to the analytic wave at t = T.
pub fn convergence_study<T: Real>(mass: T, mode: i64, time: T, eps_list: &[T], grid: usize) -> Result<ConvergenceStudy<T>> {
    if eps_list.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(invalid("eps", "must be strictly decreasing"));
    }
    if grid == 0 {
        return Err(invalid("grid", "must be positive"));
    }
    let outcomes: Vec<(T, Result<T>)> = eps_list
        .par_iter()
        .map(|&eps| {
            let run = || -> Result<T> {
                let params = DiracParams::new(mass, eps)?;
                let steps = integer_steps(time, eps)?;
                let k = commensurate_momentum(mode, grid, eps);
                let start = dirac_plane_wave(k, params, T::zero(), grid)?;
                let exact = dirac_plane_wave(k, params, time, grid)?;
                Ok(walk_evolve(&start, params, steps).l2_distance(&exact))
            };
            (eps, run())
        })
        .collect();
    let mut rows: Vec<ConvergenceRow<T>> = Vec::new();
    let mut skipped = Vec::new();
    for (eps, outcome) in outcomes {
        match outcome {
            Ok(err) => {
                let local_order = rows.last().and_then(|prev| {
                    (prev.l2_error > T::zero() && err > T::zero())
                        .then(|| (prev.l2_error / err).ln() / (prev.epsilon / eps).ln())
                });
                rows.push(ConvergenceRow {
                    epsilon: eps,
                    l2_error: err,
                    local_order,
                });
            }
            Err(e) => skipped.push((eps, e)),
        }
    }
    let eps: Vec<T> = rows.iter().map(|r| r.epsilon).collect();
    let errs: Vec<T> = rows.iter().map(|r| r.l2_error).collect();
    Ok(ConvergenceStudy {
        fitted_order: fit_order(&eps, &errs),
        rows,
        skipped,
    })
}

/// Slope of the least-squares line through (log ε, log error), using the
/// points with positive error.
pub fn fit_order<T: Real>(eps: &[T], errors: &[T]) -> Option<T> {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(errors)
        .filter(|(_, e)| **e > T::zero())
        .map(|(x, e)| (x.to_f64_lossy().ln(), e.to_f64_lossy().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| T::lit(sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let eps = [0.1, 0.05, 0.025];
        let errs: Vec<f64> = eps.iter().map(|e: &f64| 3.0 * e.powi(2)).collect();
        assert!((fit_order(&eps, &errs).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(fit_order(&eps, &[0.0, 0.0, 0.0]), None);
    }

    #[test]
    fn massless_is_exact() {
        let s = convergence_study(0.0, 1, 1.0, &[0.1, 0.05], 64).unwrap();
        assert!(s.rows.iter().all(|r| r.l2_error < 1e-12));
        assert!(s.skipped.is_empty());
    }

    #[test]
    fn bad_entries_skipped() {
        let s = convergence_study(0.5, 1, 1.0, &[0.3, 0.1], 32).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.skipped.len(), 1);
        assert!(convergence_study(0.5, 1, 1.0, &[0.05, 0.1], 32).is_err());
    }
}
