//! The Dirac QCA: its 4×4 scattering unitary, the one-particle walk it induces,
//! analytic plane waves of the continuum equation and convergence studies.
//!
//! Conventions: ψ⁺ is the right-mover, ψ⁻ the left-mover; grid point i sits at
//! x = iε on a periodic grid of M points. The walk step is
//!
//! ```text
//! ψ⁺(t+ε, x) = c ψ⁺(t, x−ε) − i s ψ⁻(t, x)
//! ψ⁻(t+ε, x) = c ψ⁻(t, x+ε) − i s ψ⁺(t, x)
//! ```
//!
//! with c = cos(mε), s = sin(mε).

mod convergence;
mod crosscheck;
mod plane;
mod walk;

pub use convergence::{convergence_study, fit_order, ConvergenceRow, ConvergenceStudy};
pub use crosscheck::{embed_sublattice, extract_sublattices, walk_vs_engine_crosscheck, EngineWalk, Sublattice};
pub use plane::{commensurate_momentum, dirac_plane_wave, dispersion, spinor};
pub use walk::{walk_evolve, walk_step, WalkField};

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::pqca::{Pqca, ScatteringUnitary};
use crate::scalar::{zero, Real};
use crate::state::Alphabet;

/// Mass and spacetime step of a Dirac QCA.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracParams<T: Real> {
    pub mass: T,
    pub epsilon: T,
}

impl<T: Real> DiracParams<T> {
    pub fn new(mass: T, epsilon: T) -> Result<Self> {
        if !mass.is_finite() || mass < T::zero() {
            return Err(invalid("mass", "must be finite and non-negative"));
        }
        if !epsilon.is_finite() || epsilon <= T::zero() {
            return Err(invalid("epsilon", "must be finite and positive"));
        }
        Ok(Self { mass, epsilon })
    }

    /// (cos mε, sin mε).
    pub fn coefficients(&self) -> (T, T) {
        let theta = self.mass * self.epsilon;
        (theta.cos(), theta.sin())
    }
}

/// U = 1 ⊕ [[−is, c], [c, −is]] ⊕ 1 in the block basis |ab⟩ ↦ 2a + b.
pub fn dirac_scattering_unitary<T: Real>(params: DiracParams<T>) -> ScatteringUnitary<T> {
    let (c, s) = params.coefficients();
    let mut data = vec![zero(); 16];
    data[0] = Complex::new(T::one(), T::zero());
    data[4 + 1] = Complex::new(T::zero(), -s);
    data[4 + 2] = Complex::new(c, T::zero());
    data[2 * 4 + 1] = Complex::new(c, T::zero());
    data[2 * 4 + 2] = Complex::new(T::zero(), -s);
    data[15] = Complex::new(T::one(), T::zero());
    ScatteringUnitary::new(Alphabet::qubit(), 1, data).expect("Dirac matrix is unitary")
}

pub fn dirac_pqca<T: Real>(params: DiracParams<T>) -> Pqca<T> {
    Pqca::new(dirac_scattering_unitary(params)).expect("Dirac matrix preserves quiescence")
}
