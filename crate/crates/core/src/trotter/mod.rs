//! Nearest-neighbour Hamiltonians H = Σₓ hₓ on a ring and their even/odd
//! Trotter splitting, which is exactly the PQCA with U = e^{−i dt h}.
//!
//! Forward evolution is e^{−iHt} throughout.

mod hamiltonian;
mod splitting;

pub use hamiltonian::{build_global_hamiltonian, GlobalHamiltonian, TwoCellHamiltonian, VACUUM_TOL};
pub use splitting::{
    energy_drift, multi_step_error, splitting_error, trotter_pqca, trotter_vs_pqca_crosscheck, EnergyDrift,
};
