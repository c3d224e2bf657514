//! Dense operators on a finite ring: application, adjoints, partial trace,
//! Heisenberg images, minimal support extraction, Hermitian exponentials and
//! trace distance.

mod dense;
mod density;
mod eigen;
mod support;

pub use dense::{DenseOperator, LocalOperator};
pub use density::DensityMatrix;
pub use eigen::{eigh, hermitian_exp, spectral_norm, HermitianEigen};
pub use support::{heisenberg_image, heisenberg_image_local, support_of, CellSet};

pub(crate) use support::heisenberg_image_local_unchecked;

/// Largest tolerated ‖G†G − I‖_F before an operator is refused as non-unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Largest tolerated ‖A − A†‖_F before an operator is refused as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
