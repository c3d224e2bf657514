use super::{Phase, Pqca};
use crate::error::{invalid, QcaError, Result};
use crate::operator::{DenseOperator, LocalOperator};
use crate::scalar::{Cx, Real};
use crate::state::{Boundary, RingSpace};

/// Blocks of a phase on a periodic ring of even length, as (left, right) cells.
fn blocks(ring: &RingSpace, phase: Phase) -> Vec<(usize, usize)> {
    let n = ring.cells();
    let start = phase.offset() as usize;
    (0..n / 2)
        .map(|k| ((2 * k + start) % n, (2 * k + start + 1) % n))
        .collect()
}

fn check_ring<T: Real>(pqca: &Pqca<T>, ring: &RingSpace) -> Result<()> {
    let u = pqca.scattering();
    if u.lattice_dim() != 1 {
        return Err(QcaError::LatticeDimensionMismatch {
            left: 1,
            right: u.lattice_dim(),
        });
    }
    if ring.local_dim() != u.alphabet().size() {
        return Err(QcaError::AlphabetMismatch {
            left: ring.local_dim(),
            right: u.alphabet().size(),
        });
    }
    if !ring.cells().is_multiple_of(2) {
        return Err(QcaError::OddRing { cells: ring.cells() });
    }
    if ring.boundary() != Boundary::Periodic {
        return Err(invalid("ring", "phase operators need a periodic ring"));
    }
    Ok(())
}

fn block_operators<T: Real>(pqca: &Pqca<T>, ring: &RingSpace, phase: Phase) -> Vec<LocalOperator<T>> {
    blocks(ring, phase)
        .into_iter()
        .map(|(l, r)| pqca.scattering().on_cells(l, r))
        .collect()
}

/// Dense matrix of one phase on a periodic ring; the odd phase wraps its last
/// block around as (N−1, 0).
pub fn pqca_as_ring_operator<T: Real>(pqca: &Pqca<T>, ring: &RingSpace, phase: Phase) -> Result<DenseOperator<T>> {
    check_ring(pqca, ring)?;
    let mut op = DenseOperator::identity(*ring);
    for block in block_operators(pqca, ring, phase) {
        op = op.left_mul_local(&block)?;
    }
    Ok(op)
}

/// One phase applied to a ring state vector, block by block.
pub fn apply_phase_to_vector<T: Real>(pqca: &Pqca<T>, ring: &RingSpace, v: &[Cx<T>], phase: Phase) -> Result<Vec<Cx<T>>> {
    check_ring(pqca, ring)?;
    let mut out = v.to_vec();
    for block in block_operators(pqca, ring, phase) {
        out = block.apply_to(ring, &out)?;
    }
    Ok(out)
}

/// `steps` phases on a ring vector, starting with the even phase.
pub fn evolve_on_ring<T: Real>(pqca: &Pqca<T>, ring: &RingSpace, v: &[Cx<T>], steps: usize) -> Result<Vec<Cx<T>>> {
    let mut out = v.to_vec();
    for t in 0..steps {
        out = apply_phase_to_vector(pqca, ring, &out, Phase::of_step(t))?;
    }
    Ok(out)
}

/// τ on a periodic ring: τ|c⟩ = |c′⟩ with c′ᵢ = c_{i+1}.
pub fn ring_translation<T: Real>(ring: &RingSpace) -> DenseOperator<T> {
    let n = ring.cells();
    let mut op = DenseOperator::zeros(*ring);
    for j in 0..ring.dim() {
        let digits = ring.digits(j);
        let image: Vec<usize> = (0..n).map(|i| digits[(i + 1) % n]).collect();
        op.set(ring.index_of(&image), j, Cx::new(T::one(), T::zero()));
    }
    op
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::pqca::ScatteringUnitary;
    use crate::random::random_unitary;
    use crate::scalar::one;
    use crate::state::Alphabet;

    fn random_quiescent(seed: u64) -> Pqca<f64> {
        // 1 ⊕ v on the non-vacuum block states
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_unitary::<f64, _>(RingSpace::window(1, 3).unwrap(), &mut rng);
        let data = (0..16)
            .map(|k| {
                let (i, j) = (k / 4, k % 4);
                match (i, j) {
                    (0, 0) => one(),
                    (0, _) | (_, 0) => Cx::new(0.0, 0.0),
                    _ => v.get(i - 1, j - 1),
                }
            })
            .collect();
        Pqca::new(ScatteringUnitary::new(Alphabet::qubit(), 1, data).unwrap()).unwrap()
    }

    #[test]
    fn two_cell_even_phase_is_u() {
        let p = random_quiescent(1);
        let ring = RingSpace::new(2, 2).unwrap();
        let op = pqca_as_ring_operator(&p, &ring, Phase::Even).unwrap();
        assert_eq!(op.data(), p.scattering().data());
    }

    #[test]
    fn identity_gives_identity() {
        let p = Pqca::new(ScatteringUnitary::<f64>::identity(Alphabet::qubit(), 1)).unwrap();
        let ring = RingSpace::new(4, 2).unwrap();
        for phase in [Phase::Even, Phase::Odd] {
            assert_eq!(pqca_as_ring_operator(&p, &ring, phase).unwrap(), DenseOperator::identity(ring));
        }
    }

    #[test]
    fn odd_ring_rejected() {
        let p = random_quiescent(2);
        let ring = RingSpace::new(3, 2).unwrap();
        assert!(matches!(pqca_as_ring_operator(&p, &ring, Phase::Even), Err(QcaError::OddRing { cells: 3 })));
    }

    #[test]
    fn translation_relations() {
        let p = random_quiescent(3);
        let ring = RingSpace::new(4, 2).unwrap();
        let j = pqca_as_ring_operator(&p, &ring, Phase::Even).unwrap();
        let odd = pqca_as_ring_operator(&p, &ring, Phase::Odd).unwrap();
        let tau = ring_translation::<f64>(&ring);
        assert!(tau.unitarity_defect() < 1e-15);
        let tau2 = tau.matmul(&tau);
        assert!(j.matmul(&tau2).sub(&tau2.matmul(&j)).frobenius_norm() < 1e-10);
        // odd phase = τ† J τ, hence τ (odd) τ† = J
        let conj = tau.adjoint().matmul(&j).matmul(&tau);
        assert!(conj.sub(&odd).frobenius_norm() < 1e-12);
    }

    #[test]
    fn vector_application_matches_matrix() {
        let p = random_quiescent(4);
        let ring = RingSpace::new(6, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v = crate::random::random_state::<f64, _>(ring.dim(), &mut rng);
        for phase in [Phase::Even, Phase::Odd] {
            let m = pqca_as_ring_operator(&p, &ring, phase).unwrap();
            let a = m.apply(&v).unwrap();
            let b = apply_phase_to_vector(&p, &ring, &v, phase).unwrap();
            assert!(crate::scalar::max_deviation(&a, &b) < 1e-13);
        }
    }
}
