//! Simulation and verification workbench for quantum cellular automata.
//!
//! * [`state`]: finitely supported configurations, sparse superpositions, the
//!   cell-doubling embedding and the dense ring truncation.
//! * [`operator`]: dense operators, partial traces, Heisenberg images,
//!   operator supports, Hermitian exponentials.
//! * [`pqca`]: partitioned QCA stepping, sparse and dense.
//! * [`dirac`]: the Dirac QCA, its one-particle walk and continuum-limit studies.
//! * [`structure`]: localization of causal unitaries and the non-causal
//!   quantized XOR automaton.
//! * [`trotter`]: nearest-neighbour Hamiltonians and their even/odd splitting.
//!
//! Every numeric type is generic over [`Real`]; `f64` aliases are exported here.

pub mod dirac;
pub mod error;
pub mod operator;
pub mod pqca;
pub mod random;
pub mod scalar;
pub mod state;
pub mod structure;
pub mod trotter;

pub use error::{QcaError, Result};
pub use scalar::{Cx, Real};

pub type C64 = Cx<f64>;
pub type SparseState64 = state::SparseState<f64>;
pub type DenseOperator64 = operator::DenseOperator<f64>;
pub type LocalOperator64 = operator::LocalOperator<f64>;
pub type DensityMatrix64 = operator::DensityMatrix<f64>;
pub type ScatteringUnitary64 = pqca::ScatteringUnitary<f64>;
pub type Pqca64 = pqca::Pqca<f64>;
pub type WalkField64 = dirac::WalkField<f64>;
pub type TwoCellHamiltonian64 = trotter::TwoCellHamiltonian<f64>;

pub type SparseState32 = state::SparseState<f32>;
pub type DenseOperator32 = operator::DenseOperator<f32>;
pub type WalkField32 = dirac::WalkField<f32>;
