pub mod converge;
pub mod quiescence;
pub mod structure;
pub mod trotter;
pub mod walk;
