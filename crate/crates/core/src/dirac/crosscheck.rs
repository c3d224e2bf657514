//! The walk as the one-particle sector of the Dirac PQCA.
//!
//! One walk step is one PQCA phase. A particle on the left cell of a block is
//! a right-mover and one on the right cell a left-mover, so at step t cell j
//! carries ψ⁺(j) when j + t is even and ψ⁻(j) otherwise. That covers half of
//! the walk's amplitudes; the other half is the same construction applied to
//! the field translated by one site. The two halves never interact, so each is
//! evolved as its own one-particle state.

use super::{dirac_pqca, walk_step, DiracParams, WalkField};
use crate::error::{invalid, Result};
use crate::pqca::{pqca_step, Phase, Pqca};
use crate::scalar::Real;
use crate::state::{Alphabet, Configuration, SparseState};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sublattice {
    /// Cell j holds site j.
    A,
    /// Cell j holds site j + 1.
    B,
}

impl Sublattice {
    fn site_offset(self) -> usize {
        match self {
            Sublattice::A => 0,
            Sublattice::B => 1,
        }
    }
}

/// One-particle PQCA state holding the given sublattice of `field` at step 0,
/// on cells [0, M).
pub fn embed_sublattice<T: Real>(field: &WalkField<T>, sublattice: Sublattice) -> Result<SparseState<T>> {
    let m = field.grid();
    if !m.is_multiple_of(2) {
        return Err(invalid("grid", "must be even to tile PQCA blocks"));
    }
    let terms = (0..m).map(|j| {
        let site = (j + sublattice.site_offset()) % m;
        let amp = if j % 2 == 0 { field.psi_plus()[site] } else { field.psi_minus()[site] };
        (Configuration::line([(j as i64, 1)]), amp)
    });
    SparseState::from_terms(Alphabet::qubit(), 1, terms)
}

/// Folds the two sublattice states at step `t` back onto a periodic grid.
pub fn extract_sublattices<T: Real>(a: &SparseState<T>, b: &SparseState<T>, t: usize, grid: usize) -> Result<WalkField<T>> {
    let mut field = WalkField::zeros(grid)?;
    let g = grid as i64;
    for (state, sub) in [(a, Sublattice::A), (b, Sublattice::B)] {
        let (plus, minus) = field.components_mut();
        for (config, amp) in state.terms() {
            let cells: Vec<_> = config.iter().collect();
            let [(point, _)] = cells[..] else {
                return Err(invalid("state", format!("configuration {config} leaves the one-particle sector")));
            };
            let j = point[0];
            let site = (j + sub.site_offset() as i64).rem_euclid(g) as usize;
            let slot = if (j + t as i64).rem_euclid(2) == 0 { &mut plus[site] } else { &mut minus[site] };
            *slot = *slot + amp;
        }
    }
    Ok(field)
}

/// The walk evolved through the sparse PQCA engine, one phase per step.
#[derive(Clone, Debug)]
pub struct EngineWalk<T: Real> {
    pqca: Pqca<T>,
    a: SparseState<T>,
    b: SparseState<T>,
    t: usize,
    grid: usize,
}

impl<T: Real> EngineWalk<T> {
    pub fn new(params: DiracParams<T>, init: &WalkField<T>) -> Result<Self> {
        Ok(Self {
            pqca: dirac_pqca(params),
            a: embed_sublattice(init, Sublattice::A)?,
            b: embed_sublattice(init, Sublattice::B)?,
            t: 0,
            grid: init.grid(),
        })
    }

    pub fn steps_taken(&self) -> usize {
        self.t
    }

    pub fn step(&mut self) -> Result<()> {
        let phase = Phase::of_step(self.t);
        self.a = pqca_step(&self.a, &self.pqca, phase)?;
        self.b = pqca_step(&self.b, &self.pqca, phase)?;
        self.t += 1;
        Ok(())
    }

    /// The current amplitudes folded onto the periodic grid.
    pub fn field(&self) -> Result<WalkField<T>> {
        extract_sublattices(&self.a, &self.b, self.t, self.grid)
    }
}

/// Runs the walk and the sparse PQCA side by side; returns the largest
/// amplitude deviation seen over all steps.
pub fn walk_vs_engine_crosscheck<T: Real>(params: DiracParams<T>, steps: usize, init: &WalkField<T>) -> Result<T> {
    let mut engine = EngineWalk::new(params, init)?;
    let mut walk = init.clone();
    let mut worst = engine.field()?.max_deviation(&walk);
    for _ in 0..steps {
        engine.step()?;
        walk = walk_step(&walk, params);
        worst = worst.max(engine.field()?.max_deviation(&walk));
    }
    Ok(worst)
}
