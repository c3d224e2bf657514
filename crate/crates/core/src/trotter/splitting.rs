use super::{build_global_hamiltonian, TwoCellHamiltonian};
use crate::error::{invalid, QcaError, Result};
use crate::operator::{hermitian_exp, spectral_norm, DenseOperator};
use crate::pqca::{evolve_on_ring, Pqca, ScatteringUnitary};
use crate::scalar::{align_global_phase, max_deviation, sum_real, Cx, Real};
use crate::state::{Alphabet, RingSpace};

/// The PQCA induced by U = e^{−i dt h}.
pub fn trotter_pqca<T: Real>(h: &TwoCellHamiltonian<T>, dt: T) -> Result<Pqca<T>> {
    let u = hermitian_exp(h.matrix(), dt)?;
    let scattering = ScatteringUnitary::new(Alphabet::new(h.local_dim())?, 1, u.data().to_vec())?;
    Pqca::new(scattering)
}

/// ‖e^{−iH dt} − e^{−iH_o dt} e^{−iH_e dt}‖₂. No phase alignment: H = H_e + H_o
/// fixes the phase of both sides.
pub fn splitting_error<T: Real>(h: &TwoCellHamiltonian<T>, ring: &RingSpace, dt: T) -> Result<T> {
    multi_step_error(h, ring, dt, 1)
}

/// ‖e^{−iH n dt} − (e^{−iH_o dt} e^{−iH_e dt})ⁿ‖₂.
pub fn multi_step_error<T: Real>(h: &TwoCellHamiltonian<T>, ring: &RingSpace, dt: T, steps: usize) -> Result<T> {
    let g = build_global_hamiltonian(h, ring)?;
    let exact = hermitian_exp(&g.h, dt * T::from_usize_lossy(steps))?;
    let step = hermitian_exp(&g.odd, dt)?.matmul(&hermitian_exp(&g.even, dt)?);
    let mut split = DenseOperator::identity(*ring);
    for _ in 0..steps {
        split = step.matmul(&split);
    }
    Ok(spectral_norm(&exact.sub(&split)))
}

fn check_init<T: Real>(ring: &RingSpace, init: &[Cx<T>]) -> Result<()> {
    if init.len() != ring.dim() {
        return Err(QcaError::DimensionMismatch {
            expected: ring.dim(),
            found: init.len(),
        });
    }
    Ok(())
}

/// Evolves `init` for `steps` Trotter steps two ways: with the ring phases of
/// [`trotter_pqca`], and with e^{−iH_e dt}, e^{−iH_o dt} built from the global
/// Hamiltonian. Returns the largest deviation over all steps after global
/// phase alignment.
pub fn trotter_vs_pqca_crosscheck<T: Real>(
    h: &TwoCellHamiltonian<T>,
    ring: &RingSpace,
    dt: T,
    steps: usize,
    init: &[Cx<T>],
) -> Result<T> {
    check_init(ring, init)?;
    let pqca = trotter_pqca(h, dt)?;
    let g = build_global_hamiltonian(h, ring)?;
    let ue = hermitian_exp(&g.even, dt)?;
    let uo = hermitian_exp(&g.odd, dt)?;
    let mut a = init.to_vec();
    let mut b = init.to_vec();
    let mut worst = T::zero();
    for _ in 0..steps {
        a = evolve_on_ring(&pqca, ring, &a, 2)?;
        b = uo.apply(&ue.apply(&b)?)?;
        worst = worst.max(max_deviation(&b, &align_global_phase(&b, &a)));
    }
    Ok(worst)
}

/// Energy ⟨ψ|H|ψ⟩ deviations from the initial value.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyDrift<T: Real> {
    /// Largest |E(t) − E(0)| under e^{−iHt}.
    pub exact: T,
    /// Largest |E(t) − E(0)| under the split evolution.
    pub split: T,
    /// split / (steps · dt²).
    pub constant: T,
}

pub fn energy_drift<T: Real>(
    h: &TwoCellHamiltonian<T>,
    ring: &RingSpace,
    dt: T,
    steps: usize,
    init: &[Cx<T>],
) -> Result<EnergyDrift<T>> {
    check_init(ring, init)?;
    if steps == 0 || !(dt > T::zero()) {
        return Err(invalid("steps", "energy drift needs positive dt and steps"));
    }
    let g = build_global_hamiltonian(h, ring)?;
    let energy = |v: &[Cx<T>]| -> Result<T> {
        let hv = g.h.apply(v)?;
        Ok(sum_real(v.iter().zip(&hv).map(|(a, b)| (a.conj() * b).re)))
    };
    let e0 = energy(init)?;
    let u = hermitian_exp(&g.h, dt)?;
    let split = hermitian_exp(&g.odd, dt)?.matmul(&hermitian_exp(&g.even, dt)?);
    let (mut a, mut b) = (init.to_vec(), init.to_vec());
    let (mut exact, mut drift) = (T::zero(), T::zero());
    for _ in 0..steps {
        a = u.apply(&a)?;
        b = split.apply(&b)?;
        exact = exact.max((energy(&a)? - e0).abs());
        drift = drift.max((energy(&b)? - e0).abs());
    }
    Ok(EnergyDrift {
        exact,
        split: drift,
        constant: drift / (T::from_usize_lossy(steps) * dt * dt),
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::pqca::check_quiescence;
    use crate::random::random_state;

    #[test]
    fn zero_step_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = TwoCellHamiltonian::<f64>::random(2, &mut rng).unwrap();
        let p = trotter_pqca(&h, 0.0).unwrap();
        assert_eq!(p.scattering(), &ScatteringUnitary::identity(Alphabet::qubit(), 1));
        let p = trotter_pqca(&h, 0.3).unwrap();
        assert!(check_quiescence(p.scattering()) < 1e-14);
    }

    #[test]
    fn splitting_exact_for_commuting_parts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let h = TwoCellHamiltonian::<f64>::random_diagonal(2, &mut rng).unwrap();
        let ring = RingSpace::new(4, 2).unwrap();
        assert_eq!(splitting_error(&h, &ring, 0.0).unwrap(), 0.0);
        assert!(splitting_error(&h, &ring, 0.7).unwrap() < 1e-12);
    }

    #[test]
    fn crosscheck_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = TwoCellHamiltonian::<f64>::random(2, &mut rng).unwrap();
        let ring = RingSpace::new(4, 2).unwrap();
        let v = random_state::<f64, _>(ring.dim(), &mut rng);
        assert!(trotter_vs_pqca_crosscheck(&h, &ring, 0.1, 5, &v).unwrap() < 1e-12);
    }

    #[test]
    fn exact_evolution_conserves_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = TwoCellHamiltonian::<f64>::exchange();
        let ring = RingSpace::new(4, 2).unwrap();
        let v = random_state::<f64, _>(ring.dim(), &mut rng);
        let d = energy_drift(&h, &ring, 0.05, 40, &v).unwrap();
        assert!(d.exact < 1e-9);
        assert!(d.split > d.exact);
    }
}
