use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DenseOperator, HERMITICITY_TOL};
use crate::error::{QcaError, Result};
use crate::scalar::{sum_real, tol, vector_norm, zero, Cx, Real};

/// Eigendecomposition A = V diag(values) V† of a Hermitian matrix.
///
/// Values ascend; each eigenvector's first component with modulus above a
/// small threshold is made real positive, so the result is deterministic.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    /// Eigenvectors as columns.
    pub vectors: DenseOperator<T>,
}

/// Cyclic complex Jacobi rotations.
pub fn eigh<T: Real>(a: &DenseOperator<T>) -> Result<HermitianEigen<T>> {
    let defect = a.hermiticity_defect();
    if defect > tol::<T>(HERMITICITY_TOL) {
        return Err(QcaError::NotHermitian {
            defect: defect.to_f64_lossy(),
        });
    }
    let n = a.dim();
    // symmetrize away the residual anti-Hermitian part
    let half = T::lit(0.5);
    let mut m: Vec<Cx<T>> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            (a.get(i, j) + a.get(j, i).conj()) * half
        })
        .collect();
    let mut v: Vec<Cx<T>> = (0..n * n)
        .map(|k| if k / n == k % n { Complex::new(T::one(), T::zero()) } else { zero() })
        .collect();

    let total = sum_real(m.iter().map(|z| z.norm_sqr()));
    let threshold = T::epsilon() * T::epsilon() * total;
    // entries this small are left alone: their sum stays under `threshold`,
    // and rotating on near-subnormal values would corrupt the phase e^{iφ}
    let negligible = (threshold / T::from_usize_lossy(n * n)).sqrt();
    for _sweep in 0..100 {
        let mut off = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off.push(m[p * n + q].norm_sqr());
                }
            }
        }
        if sum_real(off) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                let modulus = apq.norm();
                if modulus <= negligible {
                    continue;
                }
                let app = m[p * n + p].re;
                let aqq = m[q * n + q].re;
                let phase = apq / modulus; // e^{iφ}
                let theta = (aqq - app) / (T::lit(2.0) * modulus);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                // rotation R = diag(1, e^{-iφ}) · [[c, s], [-s, c]]
                let rpp = Complex::new(c, T::zero());
                let rpq = Complex::new(s, T::zero());
                let rqp = phase.conj() * (-s);
                let rqq = phase.conj() * c;
                // M ← M R
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = mkp * rpp + mkq * rqp;
                    m[k * n + q] = mkp * rpq + mkq * rqq;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * rpp + vkq * rqp;
                    v[k * n + q] = vkp * rpq + vkq * rqq;
                }
                // M ← R† M
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = rpp.conj() * mpk + rqp.conj() * mqk;
                    m[q * n + k] = rpq.conj() * mpk + rqq.conj() * mqk;
                }
                m[p * n + q] = zero();
                m[q * n + p] = zero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.partial_cmp(&m[j * n + j].re).expect("finite eigenvalues"));
    let values: Vec<T> = order.iter().map(|&i| m[i * n + i].re).collect();
    let cutoff = tol::<T>(1e-12);
    let mut vectors = DenseOperator::zeros(*a.space());
    for (col, &src) in order.iter().enumerate() {
        let mut column: Vec<Cx<T>> = (0..n).map(|k| v[k * n + src]).collect();
        let norm = vector_norm(&column);
        if let Some(lead) = column.iter().find(|z| z.norm() > cutoff * norm).copied() {
            let fix = (lead / lead.norm()).conj();
            for z in column.iter_mut() {
                *z = *z * fix;
            }
        }
        for (k, z) in column.into_iter().enumerate() {
            vectors.set(k, col, z);
        }
    }
    Ok(HermitianEigen { values, vectors })
}

impl<T: Real> HermitianEigen<T> {
    /// V f(Λ) V†.
    pub fn map_spectrum(&self, f: impl Fn(T) -> Cx<T>) -> DenseOperator<T> {
        let n = self.values.len();
        let fs: Vec<Cx<T>> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        DenseOperator::from_fn(*v.space(), |i, j| {
            (0..n).fold(zero(), |acc, k| acc + v.get(i, k) * fs[k] * v.get(j, k).conj())
        })
    }
}

/// e^{−i t h} for Hermitian `h`, via eigendecomposition.
pub fn hermitian_exp<T: Real>(h: &DenseOperator<T>, t: T) -> Result<DenseOperator<T>> {
    if t == T::zero() {
        let defect = h.hermiticity_defect();
        if defect > tol::<T>(HERMITICITY_TOL) {
            return Err(QcaError::NotHermitian {
                defect: defect.to_f64_lossy(),
            });
        }
        return Ok(DenseOperator::identity(*h.space()));
    }
    let eig = eigh(h)?;
    Ok(eig.map_spectrum(|lambda| Complex::from_polar(T::one(), -lambda * t)))
}

/// Largest singular value by power iteration on A†A, relative tolerance 1e-8.
pub fn spectral_norm<T: Real>(a: &DenseOperator<T>) -> T {
    let n = a.dim();
    let ah = a.adjoint();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut x: Vec<Cx<T>> = (0..n)
        .map(|_| Complex::new(T::lit(rng.random::<f64>() - 0.5), T::lit(rng.random::<f64>() - 0.5)))
        .collect();
    let mut estimate = T::zero();
    let rel = T::lit(1e-8);
    for _ in 0..20_000 {
        let norm = vector_norm(&x);
        if norm == T::zero() {
            return T::zero();
        }
        for z in x.iter_mut() {
            *z = *z / norm;
        }
        let y = a.apply(&x).expect("square");
        let next = vector_norm(&y);
        x = ah.apply(&y).expect("square");
        if (next - estimate).abs() <= rel * next {
            return next;
        }
        estimate = next;
    }
    estimate
}
