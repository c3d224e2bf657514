use num_complex::Complex;
use rand::Rng;

use crate::error::{invalid, QcaError, Result};
use crate::operator::{DenseOperator, LocalOperator, HERMITICITY_TOL};
use crate::random::random_hermitian;
use crate::scalar::{sum_real, tol, Cx, Real};
use crate::state::{Boundary, RingSpace};

/// Bound on ‖h|00⟩‖.
pub const VACUUM_TOL: f64 = 1e-12;

/// A Hermitian d² × d² coupling of two adjacent cells that annihilates |00⟩.
/// Basis index of |ab⟩ is a·d + b with a the left cell.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCellHamiltonian<T: Real> {
    local_dim: usize,
    matrix: DenseOperator<T>,
}

impl<T: Real> TwoCellHamiltonian<T> {
    pub fn new(local_dim: usize, data: Vec<Cx<T>>) -> Result<Self> {
        let space = RingSpace::window(2, local_dim)?;
        let matrix = DenseOperator::from_data(space, data)?;
        let defect = matrix.hermiticity_defect();
        if defect > tol::<T>(HERMITICITY_TOL) {
            return Err(QcaError::NotHermitian {
                defect: defect.to_f64_lossy(),
            });
        }
        let vacuum = sum_real(matrix.column(0).iter().map(|z| z.norm_sqr())).sqrt();
        if vacuum > tol::<T>(VACUUM_TOL) {
            return Err(QcaError::VacuumNotAnnihilated {
                defect: vacuum.to_f64_lossy(),
            });
        }
        Ok(Self { local_dim, matrix })
    }

    pub fn zero(local_dim: usize) -> Result<Self> {
        let n = local_dim * local_dim;
        Self::new(local_dim, vec![Complex::new(T::zero(), T::zero()); n * n])
    }

    /// Complex Gaussian (A + A†)/2 with the |00⟩ row and column zeroed.
    pub fn random<R: Rng + ?Sized>(local_dim: usize, rng: &mut R) -> Result<Self> {
        let space = RingSpace::window(2, local_dim)?;
        let a = random_hermitian::<T, R>(space, rng);
        let n = space.dim();
        let data = (0..n * n)
            .map(|k| if k / n == 0 || k % n == 0 { Complex::new(T::zero(), T::zero()) } else { a.data()[k] })
            .collect();
        Self::new(local_dim, data)
    }

    /// Real diagonal with h₀₀ = 0 and the other entries uniform in [−1, 1).
    pub fn random_diagonal<R: Rng + ?Sized>(local_dim: usize, rng: &mut R) -> Result<Self> {
        let n = local_dim * local_dim;
        let mut data = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 1..n {
            data[i * n + i] = Complex::new(T::lit(rng.random::<f64>() * 2.0 - 1.0), T::zero());
        }
        Self::new(local_dim, data)
    }

    /// |01⟩⟨10| + |10⟩⟨01| + ½|11⟩⟨11| on qubits: hopping plus an on-pair
    /// interaction.
    pub fn exchange() -> Self {
        let mut data = vec![Complex::new(T::zero(), T::zero()); 16];
        data[4 + 2] = Complex::new(T::one(), T::zero());
        data[2 * 4 + 1] = Complex::new(T::one(), T::zero());
        data[15] = Complex::new(T::lit(0.5), T::zero());
        Self::new(2, data).expect("valid by construction")
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// h as an operator on a two-cell window.
    pub fn matrix(&self) -> &DenseOperator<T> {
        &self.matrix
    }

    /// h acting on (left, right).
    pub fn on_cells(&self, left: usize, right: usize) -> LocalOperator<T> {
        LocalOperator::new(vec![left, right], self.local_dim, self.matrix.data().to_vec()).expect("sized")
    }
}

/// H together with its even and odd parts.
#[derive(Clone, Debug)]
pub struct GlobalHamiltonian<T: Real> {
    pub h: DenseOperator<T>,
    /// Σ over even x of hₓ on (x, x+1).
    pub even: DenseOperator<T>,
    /// Σ over odd x, the last one wrapping to (N−1, 0).
    pub odd: DenseOperator<T>,
}

pub fn build_global_hamiltonian<T: Real>(h: &TwoCellHamiltonian<T>, ring: &RingSpace) -> Result<GlobalHamiltonian<T>> {
    if ring.local_dim() != h.local_dim() {
        return Err(QcaError::DimensionMismatch {
            expected: ring.local_dim(),
            found: h.local_dim(),
        });
    }
    let n = ring.cells();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(QcaError::OddRing { cells: n });
    }
    if ring.boundary() != Boundary::Periodic {
        return Err(invalid("ring", "must be periodic"));
    }
    let mut even = DenseOperator::zeros(*ring);
    let mut odd = DenseOperator::zeros(*ring);
    for x in 0..n {
        let term = DenseOperator::embed(*ring, &h.on_cells(x, (x + 1) % n))?;
        if x % 2 == 0 {
            even = even.add(&term);
        } else {
            odd = odd.add(&term);
        }
    }
    Ok(GlobalHamiltonian {
        h: even.add(&odd),
        even,
        odd,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::scalar::c64 as cx;

    #[test]
    fn validation() {
        let mut bad = vec![cx(0.0, 0.0); 16];
        bad[0] = cx(1.0, 0.0);
        assert!(matches!(TwoCellHamiltonian::new(2, bad), Err(QcaError::VacuumNotAnnihilated { .. })));
        let mut bad = vec![cx(0.0, 0.0); 16];
        bad[5] = cx(0.0, 1.0);
        assert!(matches!(TwoCellHamiltonian::new(2, bad), Err(QcaError::NotHermitian { .. })));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(TwoCellHamiltonian::<f64>::random(3, &mut rng).is_ok());
    }

    #[test]
    fn zero_and_two_cell_ring() {
        let ring = RingSpace::new(2, 2).unwrap();
        let z = build_global_hamiltonian(&TwoCellHamiltonian::<f64>::zero(2).unwrap(), &ring).unwrap();
        assert_eq!(z.h, DenseOperator::zeros(ring));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = TwoCellHamiltonian::<f64>::random(2, &mut rng).unwrap();
        let g = build_global_hamiltonian(&h, &ring).unwrap();
        let h01 = DenseOperator::embed(ring, &h.on_cells(0, 1)).unwrap();
        let h10 = DenseOperator::embed(ring, &h.on_cells(1, 0)).unwrap();
        assert!(g.h.sub(&h01.add(&h10)).frobenius_norm() < 1e-14);
        assert!(g.h.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn rejects_odd_ring() {
        let h = TwoCellHamiltonian::<f64>::exchange();
        assert!(build_global_hamiltonian(&h, &RingSpace::new(3, 2).unwrap()).is_err());
        assert!(build_global_hamiltonian(&h, &RingSpace::new(4, 3).unwrap()).is_err());
    }
}
