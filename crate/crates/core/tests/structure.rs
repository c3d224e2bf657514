use std::collections::BTreeSet;

use num_complex::Complex;
use proptest::prelude::*;
use qcalab::dirac::{dirac_pqca, DiracParams};
use qcalab::operator::{CellSet, DenseOperator};
use qcalab::pqca::{pqca_as_ring_operator, Phase};
use qcalab::random::random_unitary;
use qcalab::scalar::c64;
use qcalab::state::{Alphabet, RingSpace};
use qcalab::structure::{
    build_localization, causality_check, conjugated_swaps, heisenberg_supports, lift_classical, lift_permutation,
    product_unitary, schrodinger_check, signalling_demo, xor_ca_step, xor_step_window, CausalityVerdict, Neighbourhood,
    XorWord, SYMBOL_F, SYMBOL_T,
};
use qcalab::{DenseOperator64, QcaError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn three() -> Alphabet {
    Alphabet::new(3).unwrap()
}

/// Brute-force oracle for the XOR rule, written from the addition table.
fn oracle_step(c: &[u32]) -> Vec<u32> {
    let add = |a: u32, b: u32| -> u32 {
        if a == 0 {
            0
        } else if b == 0 {
            a
        } else if (a == SYMBOL_T) ^ (b == SYMBOL_T) {
            SYMBOL_T
        } else {
            SYMBOL_F
        }
    };
    (0..c.len()).map(|i| add(c[i], if i + 1 < c.len() { c[i + 1] } else { 0 })).collect()
}

fn dirac_ring_step(cells: usize, m: f64, eps: f64) -> (DenseOperator64, DenseOperator64) {
    let p = dirac_pqca(DiracParams::new(m, eps).unwrap());
    let ring = RingSpace::new(cells, 2).unwrap();
    let even = pqca_as_ring_operator(&p, &ring, Phase::Even).unwrap();
    let odd = pqca_as_ring_operator(&p, &ring, Phase::Odd).unwrap();
    (even.clone(), odd.matmul(&even))
}

/// 1 ⊕ v: a random single-cell unitary fixing the quiescent symbol.
fn quiescent_single_cell(d: usize, seed: u64) -> DenseOperator64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = match d {
        2 => DenseOperator::from_fn(RingSpace::window(1, 2).unwrap(), |i, j| {
            if i == j && i == 0 { Complex::from_polar(1.0, 0.3 + seed as f64) } else { c64(0.0, 0.0) }
        }),
        _ => random_unitary::<f64, _>(RingSpace::window(1, d - 1).unwrap(), &mut rng),
    };
    DenseOperator::from_fn(RingSpace::window(1, d).unwrap(), |i, j| match (i, j) {
        (0, 0) => c64(1.0, 0.0),
        (0, _) | (_, 0) => c64(0.0, 0.0),
        _ => v.get(i - 1, j - 1),
    })
}

#[test]
fn xor_words() {
    let w = |s: &str| XorWord::parse(s).unwrap();
    assert_eq!(xor_ca_step(&w("ffff")).to_string(), "ffff");
    assert_eq!(xor_ca_step(&w("tttt")).to_string(), "ffft");
    assert_eq!(xor_ca_step(&w("t")), w("t"));
    assert!(XorWord::parse("tx").is_err());
}

#[test]
fn xor_matches_oracle_on_all_words() {
    for len in 1..=5 {
        let space = RingSpace::window(len, 3).unwrap();
        for i in 0..space.dim() {
            let word: Vec<u32> = space.digits(i).into_iter().map(|s| s as u32).collect();
            assert_eq!(xor_step_window(&word), oracle_step(&word));
        }
    }
}

#[test]
fn lifts() {
    for len in 1..=5 {
        let lift = lift_permutation(xor_step_window, len, three()).unwrap();
        let distinct: BTreeSet<_> = lift.images().iter().collect();
        assert_eq!(distinct.len(), 3usize.pow(len as u32));
    }
    let f = lift_classical::<f64>(xor_step_window, 4, three()).unwrap();
    assert_eq!(f.unitarity_defect(), 0.0);
    let shift = |c: &[u32]| {
        let mut v = c[1..].to_vec();
        v.push(0);
        v
    };
    match lift_permutation(shift, 4, three()) {
        Err(QcaError::NotInjective { first, second, image }) => {
            assert_eq!(shift(&first), image);
            assert_eq!(shift(&second), image);
            assert_ne!(first, second);
        }
        other => panic!("expected collision, got {other:?}"),
    }
    let grow = |c: &[u32]| vec![0; c.len() + 1];
    assert!(matches!(lift_permutation(grow, 2, three()), Err(QcaError::LeavesWindow { .. })));
}

#[test]
fn signalling_for_all_lengths() {
    for len in 3..=7 {
        let r = signalling_demo::<f64>(len).unwrap();
        assert!(r.before.abs() < 1e-12, "{r:?}");
        assert!((r.after - 1.0).abs() < 1e-12, "{r:?}");
        assert_eq!(r.phase_gate_defect, 0.0);
    }
}

#[test]
fn identity_causal() {
    let id = DenseOperator64::identity(RingSpace::new(4, 2).unwrap());
    assert!(causality_check(&id, &Neighbourhood::Offsets(vec![0])).unwrap().passed);
}

#[test]
fn composed_dirac_step_on_supercells() {
    // the two-phase step spreads a single qubit over four qubits, which are
    // two adjacent pairs: causal with {−1, 0, 1} once pairs are cells
    let (_, step) = dirac_ring_step(8, 0.6, 0.4);
    let grouped = step.clone().with_space(RingSpace::new(8, 2).unwrap().grouped(2).unwrap()).unwrap();
    let v = causality_check(&grouped, &Neighbourhood::radius(1)).unwrap();
    assert!(v.passed, "{:?}", v.witnesses);
    assert!(!causality_check(&grouped, &Neighbourhood::Offsets(vec![0])).unwrap().passed);
    // on single qubits the cone is {−2, …, 2}
    assert!(causality_check(&step, &Neighbourhood::radius(2)).unwrap().passed);
    let v = causality_check(&step, &Neighbourhood::radius(1)).unwrap();
    assert!(!v.passed);
}

#[test]
fn single_phase_within_blocks() {
    let (even, _) = dirac_ring_step(4, 0.6, 0.4);
    assert!(causality_check(&even, &Neighbourhood::blocks(4, Phase::Even)).unwrap().passed);
    assert!(causality_check(&even, &Neighbourhood::radius(1)).unwrap().passed);
}

#[test]
fn xor_lift_minimal_neighbourhood() {
    let f = lift_classical::<f64>(xor_step_window, 4, three()).unwrap();
    let supports = heisenberg_supports(&f).unwrap();
    let space = *f.space();
    let minimal: Vec<i64> = (-3..=1).collect();
    let judge = |n: Vec<i64>| CausalityVerdict::judge(&supports, &Neighbourhood::Offsets(n), &space).unwrap();
    assert!(judge(minimal.clone()).passed);
    // every proper subset of {−3, …, 1} fails
    for mask in 0u32..(1 << minimal.len()) - 1 {
        let subset: Vec<i64> = minimal.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &o)| o).collect();
        assert!(!judge(subset).passed, "mask {mask:05b}");
    }
    // every symmetric neighbourhood of radius below L − 1 fails at Bob's cell
    for r in 0..3 {
        let v = judge((-r..=r).collect());
        assert!(!v.passed);
        let bob = v.witnesses.iter().find(|w| w.cell == 3).expect("witness at Bob's cell");
        assert!(!bob.support.is_subset(&bob.allowed));
    }
    assert!(judge((-3..=3).collect()).passed);
}

#[test]
fn heisenberg_and_schrodinger_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (even, _) = dirac_ring_step(4, 0.8, 0.5);
    let ring = RingSpace::new(4, 2).unwrap();
    let tau = qcalab::pqca::ring_translation::<f64>(&ring);
    let f = lift_classical::<f64>(xor_step_window, 3, three()).unwrap();
    let product = product_unitary(RingSpace::new(3, 3).unwrap(), &quiescent_single_cell(3, 4)).unwrap();
    let corpus: Vec<(DenseOperator64, Neighbourhood)> = vec![
        (DenseOperator::identity(ring), Neighbourhood::Offsets(vec![0])),
        (even.clone(), Neighbourhood::blocks(4, Phase::Even)),
        (even.clone(), Neighbourhood::Offsets(vec![0])),
        (tau.clone(), Neighbourhood::Offsets(vec![0])),
        (tau, Neighbourhood::Offsets(vec![1])),
        (f.clone(), Neighbourhood::radius(1)),
        (f, Neighbourhood::Offsets(vec![-2, -1, 0, 1])),
        (product.clone(), Neighbourhood::Offsets(vec![0])),
    ];
    for (g, n) in &corpus {
        let heisenberg = causality_check(g, n).unwrap().passed;
        let schrodinger = schrodinger_check(g, n, &mut rng, 2).unwrap();
        assert_eq!(heisenberg, schrodinger, "{n:?}");
    }
}

#[test]
fn localization_corpus() {
    let check = |g: &DenseOperator64, n: Neighbourhood| {
        let r = build_localization(g, &n).unwrap();
        assert!(r.is_local(), "{:?} vs {:?}", r.supports, r.allowed);
        assert!(r.commutation_residual < 1e-10);
        assert!(r.product_defect < 1e-10);
        assert!(r.he_eg_defect < 1e-10, "{}", r.he_eg_defect);
        r
    };
    for cells in [3, 4] {
        let id = DenseOperator64::identity(RingSpace::new(cells, 2).unwrap());
        let r = check(&id, Neighbourhood::Offsets(vec![0]));
        assert_eq!(r.he_eg_defect, 0.0);
        for seed in 0..3 {
            let u = quiescent_single_cell(2, seed);
            let g = product_unitary(RingSpace::new(cells, 2).unwrap(), &u).unwrap();
            let r = check(&g, Neighbourhood::Offsets(vec![0]));
            for (x, s) in r.supports.iter().enumerate() {
                assert!(s.is_subset(&CellSet::from([x])));
            }
        }
    }
    let g = product_unitary(RingSpace::new(3, 3).unwrap(), &quiescent_single_cell(3, 9)).unwrap();
    check(&g, Neighbourhood::Offsets(vec![0]));
    let (even, _) = dirac_ring_step(4, 0.6, 0.4);
    let r = check(&even, Neighbourhood::blocks(4, Phase::Even));
    assert!(r.supports.iter().any(|s| s.len() == 2));
}

#[test]
fn localization_refuses_xor_lift() {
    let f = lift_classical::<f64>(xor_step_window, 3, three()).unwrap();
    assert!(matches!(build_localization(&f, &Neighbourhood::radius(1)), Err(QcaError::NotCausal { .. })));
    let swaps = conjugated_swaps(&f).unwrap();
    // some K_x reaches every cell of the window, so no neighbourhood strictly
    // inside the window contains it
    assert!(swaps.iter().any(|(_, s)| s.len() == 3), "{:?}", swaps.iter().map(|p| &p.1).collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn xor_support_never_grows(symbols in proptest::collection::vec(0u32..3, 0..12), start in -20i64..20) {
        let w = XorWord::new(start, symbols).unwrap();
        let next = xor_ca_step(&w);
        if !next.is_empty() {
            let end = |x: &XorWord| x.start() + x.symbols().len() as i64;
            prop_assert!(next.start() >= w.start());
            prop_assert_eq!(end(&next), end(&w));
        }
    }
}
