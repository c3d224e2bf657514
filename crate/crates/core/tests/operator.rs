use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use proptest::prelude::*;
use qcalab::dirac::{dirac_scattering_unitary, DiracParams};
use qcalab::operator::{
    heisenberg_image, heisenberg_image_local, hermitian_exp, support_of, CellSet, DenseOperator, DensityMatrix,
    LocalOperator,
};
use qcalab::random::{random_density, random_hermitian, random_state, random_unitary};
use qcalab::scalar::{c64 as cx, distance, max_deviation};
use qcalab::state::RingSpace;
use qcalab::{DenseOperator64, QcaError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sigma_x(cell: usize) -> LocalOperator<f64> {
    LocalOperator::new(vec![cell], 2, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap()
}

fn swap(left: usize, right: usize, d: usize) -> LocalOperator<f64> {
    let n = d * d;
    let mut data = vec![cx(0.0, 0.0); n * n];
    for a in 0..d {
        for b in 0..d {
            data[(b * d + a) * n + a * d + b] = cx(1.0, 0.0);
        }
    }
    LocalOperator::new(vec![left, right], d, data).unwrap()
}

#[test]
fn dirac_block_on_basis_states() {
    let space = RingSpace::window(2, 2).unwrap();
    let u = dirac_scattering_unitary(DiracParams::new(1.0, FRAC_PI_4).unwrap());
    let g = DenseOperator::embed(space, &u.on_cells(0, 1)).unwrap();
    // |00⟩ stays put
    let v00 = g.apply(&[cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)]).unwrap();
    assert_eq!(v00, vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)]);
    // |01⟩ ↦ (−i|01⟩ + |10⟩)/√2
    let v01 = g.apply(&[cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)]).unwrap();
    let expected = [cx(0.0, 0.0), cx(0.0, -FRAC_1_SQRT_2), cx(FRAC_1_SQRT_2, 0.0), cx(0.0, 0.0)];
    assert!(max_deviation(&v01, &expected) < 1e-15);
    assert!(matches!(g.apply(&[cx(1.0, 0.0)]), Err(QcaError::DimensionMismatch { .. })));
}

#[test]
fn partial_trace_examples() {
    let space = RingSpace::window(2, 2).unwrap();
    let h = cx(FRAC_1_SQRT_2, 0.0);
    let bell = [h, cx(0.0, 0.0), cx(0.0, 0.0), h];
    let rho = DensityMatrix::from_pure(&space, &bell).unwrap();
    let left = rho.partial_trace(&[0]).unwrap();
    for (i, j, want) in [(0, 0, 0.5), (0, 1, 0.0), (1, 0, 0.0), (1, 1, 0.5)] {
        assert!((left.get(i, j) - cx(want, 0.0)).norm() < 1e-15);
    }
    let product = [cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
    let right = DensityMatrix::from_pure(&space, &product).unwrap().partial_trace(&[1]).unwrap();
    assert!((right.get(1, 1) - cx(1.0, 0.0)).norm() < 1e-15);
    let scalar = rho.partial_trace(&[]).unwrap();
    assert_eq!(scalar.dim(), 1);
    assert!((scalar.get(0, 0) - cx(1.0, 0.0)).norm() < 1e-15);
    // the direct reduction agrees with tracing |v⟩⟨v|
    let direct = DensityMatrix::reduced_from_vector(&space, &bell, &[0]).unwrap();
    assert!(direct.max_deviation(&left) < 1e-15);
}

#[test]
fn swap_moves_a_left_observable_right() {
    let space = RingSpace::window(2, 2).unwrap();
    let g = DenseOperator::embed(space, &swap(0, 1, 2)).unwrap();
    let image = heisenberg_image_local(&g, &sigma_x(0)).unwrap();
    let expected = DenseOperator::embed(space, &sigma_x(1)).unwrap();
    assert!(max_deviation(image.data(), expected.data()) < 1e-15);
    assert_eq!(support_of(&image, 1e-10), CellSet::from([1]));
}

#[test]
fn dirac_even_block_spreads_support() {
    let space = RingSpace::window(4, 2).unwrap();
    let u = dirac_scattering_unitary(DiracParams::new(1.0, 0.3).unwrap());
    let mut g = DenseOperator64::identity(space);
    g = g.left_mul_local(&u.on_cells(0, 1)).unwrap().left_mul_local(&u.on_cells(2, 3)).unwrap();
    let image = heisenberg_image_local(&g, &sigma_x(1)).unwrap();
    assert_eq!(support_of(&image, 1e-10), CellSet::from([0, 1]));
    let image = heisenberg_image_local(&g, &sigma_x(2)).unwrap();
    assert_eq!(support_of(&image, 1e-10), CellSet::from([2, 3]));
}

#[test]
fn heisenberg_refuses_non_unitary() {
    let space = RingSpace::window(2, 2).unwrap();
    let g = DenseOperator64::identity(space).scale(cx(2.0, 0.0));
    let a = DenseOperator::embed(space, &sigma_x(0)).unwrap();
    assert!(matches!(heisenberg_image(&g, &a), Err(QcaError::NotUnitary { .. })));
}

#[test]
fn unitarity_defect_of_scaled_identity() {
    let space = RingSpace::window(3, 2).unwrap();
    let g = DenseOperator64::identity(space).scale(cx(2.0, 0.0));
    // ‖4I − I‖_F = 3√dim
    assert!((g.unitarity_defect() - 3.0 * (8.0f64).sqrt()).abs() < 1e-12);
}

#[test]
fn hermitian_exp_examples() {
    let space = RingSpace::window(1, 2).unwrap();
    let x = DenseOperator::embed(space, &sigma_x(0)).unwrap();
    let t = 0.37f64;
    // e^{−itσx} = cos t − i sin t σx
    let u = hermitian_exp(&x, t).unwrap();
    let expected = [cx(t.cos(), 0.0), cx(0.0, -t.sin()), cx(0.0, -t.sin()), cx(t.cos(), 0.0)];
    assert!(max_deviation(u.data(), &expected) < 1e-14);
    assert_eq!(hermitian_exp(&x, 0.0).unwrap(), DenseOperator64::identity(space));
    let not_hermitian = DenseOperator::from_fn(space, |i, j| if i < j { cx(1.0, 0.0) } else { cx(0.0, 0.0) });
    assert!(matches!(hermitian_exp(&not_hermitian, 1.0), Err(QcaError::NotHermitian { .. })));
}

#[test]
fn trace_distance_examples() {
    let space = RingSpace::window(1, 2).unwrap();
    let zero = DensityMatrix::from_pure(&space, &[cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap();
    let one = DensityMatrix::from_pure(&space, &[cx(0.0, 0.0), cx(1.0, 0.0)]).unwrap();
    let plus = DensityMatrix::from_pure(&space, &[cx(FRAC_1_SQRT_2, 0.0), cx(FRAC_1_SQRT_2, 0.0)]).unwrap();
    assert!(zero.trace_distance(&zero).unwrap().abs() < 1e-14);
    assert!((zero.trace_distance(&one).unwrap() - 1.0).abs() < 1e-14);
    // pure states: √(1 − |⟨ψ|φ⟩|²)
    assert!((zero.trace_distance(&plus).unwrap() - FRAC_1_SQRT_2).abs() < 1e-12);
}

#[test]
fn density_matrix_validation() {
    let bad_trace = vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)];
    assert!(matches!(DensityMatrix::new(2, vec![0], bad_trace), Err(QcaError::NotDensityMatrix { .. })));
    let negative = vec![cx(1.5, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(-0.5, 0.0)];
    assert!(DensityMatrix::new(2, vec![0], negative).is_err());
}

#[test]
fn unitary_evolution_preserves_trace_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let space = RingSpace::window(3, 2).unwrap();
    let g: DenseOperator64 = random_unitary(space, &mut rng);
    let rho = DensityMatrix::from_operator(&random_density(space, &mut rng)).unwrap();
    let sigma = DensityMatrix::from_operator(&random_density(space, &mut rng)).unwrap();
    let before = rho.trace_distance(&sigma).unwrap();
    let after = rho.evolve(&g).unwrap().trace_distance(&sigma.evolve(&g).unwrap()).unwrap();
    assert!((before - after).abs() < 1e-10);
}

#[test]
fn local_products_match_dense_embedding() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let space = RingSpace::window(3, 3).unwrap();
    let g: DenseOperator64 = random_unitary(space, &mut rng);
    let pair = RingSpace::window(2, 3).unwrap();
    let block: DenseOperator64 = random_unitary(pair, &mut rng);
    let local = LocalOperator::new(vec![2, 0], 3, block.data().to_vec()).unwrap();
    let dense = DenseOperator::embed(space, &local).unwrap();
    assert!(max_deviation(g.left_mul_local(&local).unwrap().data(), dense.matmul(&g).data()) < 1e-12);
    assert!(max_deviation(g.right_mul_local(&local).unwrap().data(), g.matmul(&dense).data()) < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_is_additive_in_time(seed in 0u64..1000, s in -1.0f64..1.0, t in -1.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = RingSpace::window(2, 2).unwrap();
        let h: DenseOperator64 = random_hermitian(space, &mut rng);
        let lhs = hermitian_exp(&h, s + t).unwrap();
        let rhs = hermitian_exp(&h, s).unwrap().matmul(&hermitian_exp(&h, t).unwrap());
        prop_assert!(max_deviation(lhs.data(), rhs.data()) < 1e-10);
        prop_assert!(lhs.unitarity_defect() < 1e-10);
    }

    #[test]
    fn unitaries_preserve_norm(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = RingSpace::window(3, 2).unwrap();
        let g: DenseOperator64 = random_unitary(space, &mut rng);
        let v = random_state(space.dim(), &mut rng);
        let w = g.apply(&v).unwrap();
        let zero = vec![cx(0.0, 0.0); v.len()];
        prop_assert!((distance(&w, &zero) - distance(&v, &zero)).abs() < 1e-12);
    }

    #[test]
    fn partial_traces_compose(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = RingSpace::window(3, 2).unwrap();
        let rho = DensityMatrix::from_operator(&random_density::<f64, _>(space, &mut rng)).unwrap();
        let two_step = rho.partial_trace(&[0, 2]).unwrap().partial_trace(&[2]).unwrap();
        let one_step = rho.partial_trace(&[2]).unwrap();
        prop_assert!(two_step.max_deviation(&one_step) < 1e-14);
        prop_assert!((two_step.trace() - cx(1.0, 0.0)).norm() < 1e-12);
    }
}
