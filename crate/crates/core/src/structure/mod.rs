//! Structural checks: Heisenberg-picture causality, the localization of a
//! causal unitary into commuting local gates, and the quantized XOR automaton
//! that is bijective yet not causal.

mod causality;
mod localization;
mod xor;

pub use causality::{
    causality_check, heisenberg_supports, schrodinger_check, CausalityVerdict, Neighbourhood, UnitSupport, Witness,
    SUPPORT_TOL,
};
pub use localization::{build_localization, conjugated_swaps, doubled_unitary, embedding, subcell_swap, LocalizationResult};
pub use xor::{
    lift_classical, lift_permutation, product_unitary, signalling_demo, xor_add, xor_ca_step, xor_step_window,
    ClassicalLift, SignallingReport, XorWord, SYMBOL_F, SYMBOL_T,
};
