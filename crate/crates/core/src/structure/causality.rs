use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, QcaError, Result};
use crate::operator::{
    heisenberg_image_local_unchecked, support_of, CellSet, DenseOperator, DensityMatrix, LocalOperator, UNITARITY_TOL,
};
use crate::pqca::Phase;
use crate::random::{random_state, random_unitary};
use crate::scalar::{tol, Real};
use crate::state::{Boundary, RingSpace};

/// Commutator norm below which a cell counts as outside an operator's support.
pub const SUPPORT_TOL: f64 = 1e-10;

/// The cells x + N allowed to influence cell x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Neighbourhood {
    /// The same offsets at every cell; off-window cells are dropped on open windows.
    Offsets(Vec<i64>),
    /// An explicit cell set per cell, for unitaries that are not
    /// translation-invariant (such as one PQCA phase).
    PerCell(Vec<CellSet>),
}

impl Neighbourhood {
    /// {−r, …, r}.
    pub fn radius(r: i64) -> Self {
        Neighbourhood::Offsets((-r..=r).collect())
    }

    /// Each cell's own block in one PQCA phase on a ring of even length.
    pub fn blocks(cells: usize, phase: Phase) -> Self {
        let start = phase.offset() as usize;
        let mut sets = vec![CellSet::new(); cells];
        for k in 0..cells / 2 {
            let (l, r) = ((2 * k + start) % cells, (2 * k + start + 1) % cells);
            let block = CellSet::from([l, r]);
            sets[l] = block.clone();
            sets[r] = block;
        }
        Neighbourhood::PerCell(sets)
    }

    pub fn cells_for(&self, x: usize, space: &RingSpace) -> CellSet {
        match self {
            Neighbourhood::Offsets(offsets) => offsets.iter().filter_map(|&o| space.offset(x, o)).collect(),
            Neighbourhood::PerCell(sets) => sets.get(x).cloned().unwrap_or_default(),
        }
    }

    fn check(&self, space: &RingSpace) -> Result<()> {
        if let Neighbourhood::PerCell(sets) = self {
            if sets.len() != space.cells() {
                return Err(invalid("neighbourhood", format!("{} cell sets for {} cells", sets.len(), space.cells())));
            }
        }
        Ok(())
    }
}

/// Support of G†|a⟩⟨b|G for one matrix unit at one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSupport {
    pub a: usize,
    pub b: usize,
    pub support: CellSet,
}

/// A single-cell operator whose Heisenberg image escapes x + N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub cell: usize,
    pub a: usize,
    pub b: usize,
    pub support: CellSet,
    pub allowed: CellSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalityVerdict {
    pub passed: bool,
    /// First offending matrix unit of every failing cell, ascending.
    pub witnesses: Vec<Witness>,
    /// Union of the image supports of every single-cell operator at each cell.
    pub supports: Vec<CellSet>,
}

impl CausalityVerdict {
    /// Judges precomputed image supports against a neighbourhood.
    pub fn judge(supports: &[Vec<UnitSupport>], neighbourhood: &Neighbourhood, space: &RingSpace) -> Result<Self> {
        neighbourhood.check(space)?;
        let mut witnesses = Vec::new();
        let mut unions = Vec::with_capacity(supports.len());
        for (x, units) in supports.iter().enumerate() {
            let allowed = neighbourhood.cells_for(x, space);
            if let Some(u) = units.iter().find(|u| !u.support.is_subset(&allowed)) {
                witnesses.push(Witness {
                    cell: x,
                    a: u.a,
                    b: u.b,
                    support: u.support.clone(),
                    allowed,
                });
            }
            unions.push(units.iter().flat_map(|u| u.support.iter().copied()).collect());
        }
        Ok(Self {
            passed: witnesses.is_empty(),
            witnesses,
            supports: unions,
        })
    }
}

fn check_unitary<T: Real>(g: &DenseOperator<T>) -> Result<()> {
    let defect = g.unitarity_defect();
    if defect > tol::<T>(UNITARITY_TOL) {
        return Err(QcaError::NotUnitary {
            defect: defect.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Supports of G† A_x G for every cell x and every matrix unit A at x.
pub fn heisenberg_supports<T: Real>(g: &DenseOperator<T>) -> Result<Vec<Vec<UnitSupport>>> {
    check_unitary(g)?;
    let space = *g.space();
    let d = space.local_dim();
    let g_adj = g.adjoint();
    let tol = tol::<T>(SUPPORT_TOL);
    let jobs: Vec<(usize, usize, usize)> = (0..space.cells())
        .flat_map(|x| (0..d).flat_map(move |a| (0..d).map(move |b| (x, a, b))))
        .collect();
    let results: Vec<Result<(usize, UnitSupport)>> = jobs
        .par_iter()
        .map(|&(x, a, b)| {
            let unit = LocalOperator::matrix_unit(x, d, a, b);
            let image = heisenberg_image_local_unchecked(&g_adj, g, &unit)?;
            Ok((
                x,
                UnitSupport {
                    a,
                    b,
                    support: support_of(&image, tol),
                },
            ))
        })
        .collect();
    let mut out: Vec<Vec<UnitSupport>> = vec![Vec::with_capacity(d * d); space.cells()];
    for r in results {
        let (x, u) = r?;
        out[x].push(u);
    }
    Ok(out)
}

/// Heisenberg-picture causality: passes when supp(G† A_x G) ⊆ x + N for every
/// cell and every single-cell matrix unit.
pub fn causality_check<T: Real>(g: &DenseOperator<T>, neighbourhood: &Neighbourhood) -> Result<CausalityVerdict> {
    neighbourhood.check(g.space())?;
    CausalityVerdict::judge(&heisenberg_supports(g)?, neighbourhood, g.space())
}

/// Schrödinger-picture causality probe. For each cell x, a random pure state
/// and its image under a random unitary on the complement of x + N have the
/// same marginal on x + N; a causal G must give them the same marginal on x.
/// Returns whether every probe agreed within 1e-9.
pub fn schrodinger_check<T: Real, R: Rng + ?Sized>(
    g: &DenseOperator<T>,
    neighbourhood: &Neighbourhood,
    rng: &mut R,
    trials: usize,
) -> Result<bool> {
    check_unitary(g)?;
    let space = *g.space();
    neighbourhood.check(&space)?;
    let d = space.local_dim();
    for x in 0..space.cells() {
        let allowed = neighbourhood.cells_for(x, &space);
        let complement: Vec<usize> = (0..space.cells()).filter(|c| !allowed.contains(c)).collect();
        if complement.is_empty() {
            continue;
        }
        let local_space = RingSpace::with_boundary(complement.len(), d, Boundary::Open)?;
        for _ in 0..trials {
            let v = random_unitary::<T, R>(local_space, rng);
            let v = LocalOperator::new(complement.clone(), d, v.data().to_vec())?;
            let psi1 = random_state::<T, R>(space.dim(), rng);
            let psi2 = v.apply_to(&space, &psi1)?;
            let rho1 = DensityMatrix::reduced_from_vector(&space, &g.apply(&psi1)?, &[x])?;
            let rho2 = DensityMatrix::reduced_from_vector(&space, &g.apply(&psi2)?, &[x])?;
            if rho1.max_deviation(&rho2) > tol::<T>(1e-9) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn identity_is_causal_with_trivial_neighbourhood() {
        let id = DenseOperator::<f64>::identity(RingSpace::new(3, 2).unwrap());
        let v = causality_check(&id, &Neighbourhood::Offsets(vec![0])).unwrap();
        assert!(v.passed);
        assert_eq!(v.supports[1], CellSet::from([1]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(schrodinger_check(&id, &Neighbourhood::Offsets(vec![0]), &mut rng, 2).unwrap());
    }

    #[test]
    fn translation_needs_its_offset() {
        let ring = RingSpace::new(4, 2).unwrap();
        let tau = crate::pqca::ring_translation::<f64>(&ring);
        // τ|c⟩ has c'_i = c_{i+1}: the image of an operator at x sits at x + 1
        let v = causality_check(&tau, &Neighbourhood::Offsets(vec![0])).unwrap();
        assert!(!v.passed);
        assert_eq!(v.witnesses.len(), 4);
        assert_eq!(v.witnesses[0].support, CellSet::from([1]));
        assert!(causality_check(&tau, &Neighbourhood::Offsets(vec![1])).unwrap().passed);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(!schrodinger_check(&tau, &Neighbourhood::Offsets(vec![0]), &mut rng, 1).unwrap());
        assert!(schrodinger_check(&tau, &Neighbourhood::Offsets(vec![1]), &mut rng, 1).unwrap());
    }

    #[test]
    fn block_neighbourhoods() {
        let ring = RingSpace::new(4, 2).unwrap();
        let even = Neighbourhood::blocks(4, Phase::Even);
        let odd = Neighbourhood::blocks(4, Phase::Odd);
        assert_eq!(even.cells_for(1, &ring), CellSet::from([0, 1]));
        assert_eq!(odd.cells_for(0, &ring), CellSet::from([3, 0]));
        assert!(Neighbourhood::PerCell(vec![]).check(&ring).is_err());
    }

    #[test]
    fn open_window_drops_outside_cells() {
        let w = RingSpace::window(3, 2).unwrap();
        assert_eq!(Neighbourhood::radius(1).cells_for(0, &w), CellSet::from([0, 1]));
    }
}
