//! Seeded random corpora: Gaussian vectors, Hermitian matrices, Haar-like
//! unitaries and mixed states.

use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::operator::DenseOperator;
use crate::scalar::{vector_norm, zero, Cx, Real};
use crate::state::RingSpace;

pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Cx<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

/// Normalized complex Gaussian vector.
pub fn random_state<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<Cx<T>> {
    let v: Vec<Cx<T>> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    let n = vector_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}

/// (A + A†)/2 with A complex Gaussian.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(space: RingSpace, rng: &mut R) -> DenseOperator<T> {
    random_hermitian_matrix(space.dim(), rng)
        .with_space(space)
        .expect("same dimension")
}

fn random_hermitian_matrix<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator<T> {
    let space = RingSpace::new(1, n.max(2)).expect("small");
    let a = DenseOperator::from_data(space, (0..n * n).map(|_| complex_gaussian(rng)).collect())
        .expect("sized");
    a.add(&a.adjoint()).scale(Complex::new(T::lit(0.5), T::zero()))
}

/// Unitary from Gram–Schmidt on a complex Gaussian matrix (columns).
pub fn random_unitary<T: Real, R: Rng + ?Sized>(space: RingSpace, rng: &mut R) -> DenseOperator<T> {
    let cols = unitary_columns(space.dim(), rng);
    DenseOperator::from_fn(space, |i, j| cols[j][i])
}

/// 1 ⊕ v on one cell: a random unitary fixing the quiescent symbol.
pub fn random_quiescent_cell_unitary<T: Real, R: Rng + ?Sized>(local_dim: usize, rng: &mut R) -> Result<DenseOperator<T>> {
    let space = RingSpace::window(1, local_dim)?;
    let cols = unitary_columns::<T, R>(local_dim - 1, rng);
    Ok(DenseOperator::from_fn(space, |i, j| match (i, j) {
        (0, 0) => Complex::new(T::one(), T::zero()),
        (0, _) | (_, 0) => zero(),
        _ => cols[j - 1][i - 1],
    }))
}

fn unitary_columns<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Vec<Cx<T>>> {
    let mut cols: Vec<Vec<Cx<T>>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Cx<T>> = (0..n).map(|_| complex_gaussian(rng)).collect();
        // two passes of modified Gram–Schmidt
        for _ in 0..2 {
            for c in &cols {
                let overlap = c.iter().zip(&v).fold(zero::<T>(), |acc, (a, b)| acc + a.conj() * *b);
                for (x, y) in v.iter_mut().zip(c) {
                    *x = *x - overlap * *y;
                }
            }
        }
        let norm = vector_norm(&v);
        if norm > T::lit(1e-6) {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    cols
}

/// Random full-rank density matrix W W† / Tr(W W†).
pub fn random_density<T: Real, R: Rng + ?Sized>(space: RingSpace, rng: &mut R) -> DenseOperator<T> {
    let n = space.dim();
    let w = DenseOperator::from_data(space, (0..n * n).map(|_| complex_gaussian(rng)).collect())
        .expect("sized");
    let rho = w.matmul(&w.adjoint());
    let tr = rho.trace().re;
    rho.scale(Complex::new(T::one() / tr, T::zero()))
}
