use num_complex::Complex;

use super::{DiracParams, WalkField};
use crate::error::{QcaError, Result};
use crate::scalar::Real;

/// k = 2πj / (Mε).
pub fn commensurate_momentum<T: Real>(mode: i64, grid: usize, epsilon: T) -> T {
    T::TAU() * T::lit(mode as f64) / (T::from_usize_lossy(grid) * epsilon)
}

/// ω = +√(k² + m²).
pub fn dispersion<T: Real>(k: T, mass: T) -> T {
    k.hypot(mass)
}

/// Normalized positive-frequency eigenvector of kσ₃ + mσ₁, first nonzero
/// component positive real.
pub fn spinor<T: Real>(k: T, mass: T) -> (T, T) {
    let omega = dispersion(k, mass);
    // both (ω+k, m) and (m, ω−k) solve the eigen-equation; take the one that
    // does not cancel
    let (a, b) = if k >= T::zero() { (omega + k, mass) } else { (mass, omega - k) };
    let n = a.hypot(b);
    if n == T::zero() {
        return (T::one(), T::zero());
    }
    (a / n, b / n)
}

/// u·e^{i(kx − ωt)}/√M sampled at x = iε, solving ∂ₜψ± = ∓∂ₓψ± − i m ψ∓.
pub fn dirac_plane_wave<T: Real>(k: T, params: DiracParams<T>, t: T, grid: usize) -> Result<WalkField<T>> {
    let mode = (k * T::from_usize_lossy(grid) * params.epsilon / T::TAU()).to_f64_lossy();
    let nearest = mode.round();
    if !mode.is_finite() || (mode - nearest).abs() > 1e-9 * nearest.abs().max(1.0) {
        return Err(QcaError::NotCommensurate {
            k: k.to_f64_lossy(),
            nearest: if mode.is_finite() { nearest as i64 } else { 0 },
        });
    }
    let omega = dispersion(k, params.mass);
    let (u_plus, u_minus) = spinor(k, params.mass);
    let scale = T::one() / T::from_usize_lossy(grid).sqrt();
    let wave: Vec<Complex<T>> = (0..grid)
        .map(|i| {
            let x = T::from_usize_lossy(i) * params.epsilon;
            Complex::from_polar(scale, k * x - omega * t)
        })
        .collect();
    WalkField::new(
        wave.iter().map(|z| z * u_plus).collect(),
        wave.iter().map(|z| z * u_minus).collect(),
    )
}
