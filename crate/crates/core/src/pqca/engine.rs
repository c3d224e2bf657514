use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{check_quiescence, ScatteringUnitary, QUIESCENCE_TOL};
use crate::error::{QcaError, Result};
use crate::scalar::{tol, CompensatedSum, Cx, Real};
use crate::state::{Configuration, Point, SparseState, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Blocks anchored at 2Zⁿ.
    Even,
    /// Blocks anchored at 2Zⁿ + (1, …, 1).
    Odd,
}

impl Phase {
    /// Step 0 is even.
    pub fn of_step(step: usize) -> Self {
        if step.is_multiple_of(2) {
            Phase::Even
        } else {
            Phase::Odd
        }
    }

    pub fn offset(self) -> i64 {
        match self {
            Phase::Even => 0,
            Phase::Odd => 1,
        }
    }
}

/// A PQCA induced by a quiescence-preserving scattering unitary.
#[derive(Clone, Debug)]
pub struct Pqca<T: Real> {
    scattering: ScatteringUnitary<T>,
    // nonzero entries of each column of U, precomputed for the sparse stepper
    columns: Vec<Vec<(usize, Cx<T>)>>,
}

impl<T: Real> Pqca<T> {
    pub fn new(scattering: ScatteringUnitary<T>) -> Result<Self> {
        let defect = check_quiescence(&scattering);
        if defect > tol::<T>(QUIESCENCE_TOL) {
            return Err(QcaError::NotQuiescent {
                defect: defect.to_f64_lossy(),
            });
        }
        let n = scattering.size();
        let columns = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| (i, scattering.get(i, j)))
                    .filter(|(_, z)| z.norm() != T::zero())
                    .collect()
            })
            .collect();
        Ok(Self {
            scattering,
            columns,
        })
    }

    pub fn scattering(&self) -> &ScatteringUnitary<T> {
        &self.scattering
    }

    fn check_state(&self, state: &SparseState<T>) -> Result<()> {
        if state.alphabet() != self.scattering.alphabet() {
            return Err(QcaError::AlphabetMismatch {
                left: state.alphabet().size(),
                right: self.scattering.alphabet().size(),
            });
        }
        if state.dim() != self.scattering.lattice_dim() {
            return Err(QcaError::LatticeDimensionMismatch {
                left: state.dim(),
                right: self.scattering.lattice_dim(),
            });
        }
        Ok(())
    }

    /// Corner offsets of a block, in block-basis order.
    fn corners(&self) -> Vec<Point> {
        let n = self.scattering.lattice_dim();
        (0..1usize << n)
            .map(|bits| (0..n).map(|k| ((bits >> (n - 1 - k)) & 1) as i64).collect())
            .collect()
    }

    /// Contributions of one basis configuration after a phase.
    fn scatter(&self, config: &Configuration, amp: Cx<T>, phase: Phase, corners: &[Point]) -> Vec<(Configuration, Cx<T>)> {
        let d = self.scattering.alphabet().size();
        let offset = phase.offset();
        let anchors: BTreeSet<Point> = config
            .iter()
            .map(|(p, _)| p.iter().map(|&x| (x - offset).div_euclid(2) * 2 + offset).collect())
            .collect();
        let mut rest = config.clone();
        let mut blocks: Vec<(Vec<Point>, usize)> = Vec::with_capacity(anchors.len());
        for anchor in &anchors {
            let cells: Vec<Point> = corners
                .iter()
                .map(|c| anchor.iter().zip(c).map(|(a, b)| a + b).collect())
                .collect();
            let input = cells.iter().fold(0usize, |acc, p| acc * d + config.get(p) as usize);
            for p in &cells {
                rest.set(p.clone(), 0);
            }
            blocks.push((cells, input));
        }
        // Cartesian product over the blocks' output superpositions.
        let mut partial: Vec<(Configuration, Cx<T>)> = vec![(rest, amp)];
        for (cells, input) in &blocks {
            let column = &self.columns[*input];
            let mut next = Vec::with_capacity(partial.len() * column.len());
            for (base, a) in &partial {
                for &(out, u) in column {
                    let mut c = base.clone();
                    let mut idx = out;
                    for p in cells.iter().rev() {
                        c.set(p.clone(), (idx % d) as Symbol);
                        idx /= d;
                    }
                    next.push((c, *a * u));
                }
            }
            partial = next;
        }
        partial
    }
}

/// One synchronous application of U to every block of the phase's partition.
/// Only blocks meeting the support are materialized; quiescence makes every
/// other block a fixed point.
pub fn pqca_step<T: Real>(state: &SparseState<T>, pqca: &Pqca<T>, phase: Phase) -> Result<SparseState<T>> {
    pqca.check_state(state)?;
    let corners = pqca.corners();
    let terms: Vec<(&Configuration, Cx<T>)> = state.terms().collect();
    let contributions: Vec<Vec<(Configuration, Cx<T>)>> = terms
        .par_iter()
        .map(|(c, a)| pqca.scatter(c, *a, phase, &corners))
        .collect();
    let mut acc: BTreeMap<Configuration, CompensatedSum<T>> = BTreeMap::new();
    for batch in contributions {
        for (c, a) in batch {
            acc.entry(c).or_default().add(a);
        }
    }
    Ok(SparseState::from_accumulated(state.alphabet(), state.dim(), acc))
}

/// `steps` phases alternating even, odd, even, … starting from step 0.
pub fn pqca_evolve<T: Real>(state: &SparseState<T>, pqca: &Pqca<T>, steps: usize) -> Result<SparseState<T>> {
    let mut s = state.clone();
    for t in 0..steps {
        s = pqca_step(&s, pqca, Phase::of_step(t))?;
    }
    Ok(s)
}
