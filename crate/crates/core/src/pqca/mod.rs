//! Partitioned QCA: a quiescence-preserving scattering unitary applied to the
//! blocks of a partition that alternates between even and odd offsets.

mod engine;
mod ring;
mod scattering;

pub use engine::{pqca_evolve, pqca_step, Phase, Pqca};
pub use ring::{apply_phase_to_vector, evolve_on_ring, pqca_as_ring_operator, ring_translation};
pub use scattering::{check_quiescence, ScatteringUnitary, QUIESCENCE_TOL};
