use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{DenseOperator, LocalOperator, UNITARITY_TOL};
use crate::error::{QcaError, Result};
use crate::scalar::{sum_real, tol, Real};

/// A set of cell indices.
pub type CellSet = BTreeSet<usize>;

fn check_unitary<T: Real>(g: &DenseOperator<T>) -> Result<()> {
    let defect = g.unitarity_defect();
    if defect > tol::<T>(UNITARITY_TOL) {
        return Err(QcaError::NotUnitary {
            defect: defect.to_f64_lossy(),
        });
    }
    Ok(())
}

/// G† A G.
pub fn heisenberg_image<T: Real>(g: &DenseOperator<T>, a: &DenseOperator<T>) -> Result<DenseOperator<T>> {
    if g.dim() != a.dim() {
        return Err(QcaError::DimensionMismatch {
            expected: g.dim(),
            found: a.dim(),
        });
    }
    check_unitary(g)?;
    Ok(g.adjoint().matmul(&a.matmul(g)))
}

/// G† (A ⊗ I) G for a local A, using the locality of A for the inner product.
pub fn heisenberg_image_local<T: Real>(
    g: &DenseOperator<T>,
    a: &LocalOperator<T>,
) -> Result<DenseOperator<T>> {
    check_unitary(g)?;
    heisenberg_image_local_unchecked(&g.adjoint(), g, a)
}

pub(crate) fn heisenberg_image_local_unchecked<T: Real>(
    g_adjoint: &DenseOperator<T>,
    g: &DenseOperator<T>,
    a: &LocalOperator<T>,
) -> Result<DenseOperator<T>> {
    Ok(g_adjoint.matmul(&g.left_mul_local(a)?))
}

/// ‖[X, |a⟩⟨b|_cell]‖_F without materializing either product.
pub(crate) fn single_cell_commutator_norm<T: Real>(x: &DenseOperator<T>, cell: usize, a: usize, b: usize) -> T {
    let space = x.space();
    let n = x.dim();
    let stride = space.stride(cell);
    let d = space.local_dim();
    let digit = |i: usize| (i / stride) % d;
    let rows: Vec<T> = (0..n)
        .into_par_iter()
        .map(|i| {
            let di = digit(i);
            let i_b = i - di * stride + b * stride;
            let mut acc = T::zero();
            for j in 0..n {
                let dj = digit(j);
                // (X E)_{ij} = X[i, j|c→a] if j_c = b
                let xe = if dj == b { x.get(i, j - dj * stride + a * stride) } else { num_complex::Complex::new(T::zero(), T::zero()) };
                // (E X)_{ij} = X[i|c→b, j] if i_c = a
                let ex = if di == a { x.get(i_b, j) } else { num_complex::Complex::new(T::zero(), T::zero()) };
                acc = acc + (xe - ex).norm_sqr();
            }
            acc
        })
        .collect();
    sum_real(rows).sqrt()
}

/// Smallest set S of cells with `op = op_S ⊗ I`: a cell is outside S when `op`
/// commutes, within `tol` in Frobenius norm, with all d² matrix units there.
pub fn support_of<T: Real>(op: &DenseOperator<T>, tol: T) -> CellSet {
    let space = op.space();
    let d = space.local_dim();
    (0..space.cells())
        .filter(|&cell| {
            (0..d).any(|a| (0..d).any(|b| single_cell_commutator_norm(op, cell, a, b) > tol))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c64 as cx;
    use crate::state::RingSpace;

    fn sigma_x_at(cell: usize) -> LocalOperator<f64> {
        LocalOperator::new(vec![cell], 2, vec![cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)]).unwrap()
    }

    #[test]
    fn identity_has_empty_support() {
        let id = DenseOperator::<f64>::identity(RingSpace::new(4, 2).unwrap());
        assert!(support_of(&id, 1e-10).is_empty());
    }

    #[test]
    fn single_site_operator_support() {
        let s = RingSpace::new(4, 2).unwrap();
        let x2 = DenseOperator::embed(s, &sigma_x_at(2)).unwrap();
        assert_eq!(support_of(&x2, 1e-10), CellSet::from([2]));
    }

    #[test]
    fn commutator_shortcut_matches_dense_products() {
        let s = RingSpace::new(2, 3).unwrap();
        let x = DenseOperator::from_fn(s, |i, j| cx((i * 5 + j * 3) as f64 % 7.0, (i as f64 - j as f64) / 4.0));
        for cell in 0..2 {
            for a in 0..3 {
                for b in 0..3 {
                    let e = DenseOperator::embed(s, &LocalOperator::matrix_unit(cell, 3, a, b)).unwrap();
                    let dense = x.commutator(&e).frobenius_norm();
                    let fast = single_cell_commutator_norm(&x, cell, a, b);
                    assert!((dense - fast).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn heisenberg_identity_and_swap() {
        let s = RingSpace::new(2, 2).unwrap();
        let id = DenseOperator::<f64>::identity(s);
        let a = DenseOperator::embed(s, &sigma_x_at(0)).unwrap();
        assert_eq!(heisenberg_image(&id, &a).unwrap(), a);
        let perm = [0, 2, 1, 3];
        let swap = DenseOperator::from_fn(s, |i, j| if perm[j] == i { cx(1.0, 0.0) } else { cx(0.0, 0.0) });
        let img = heisenberg_image_local(&swap, &sigma_x_at(0)).unwrap();
        let expected = DenseOperator::embed(s, &sigma_x_at(1)).unwrap();
        assert!(img.sub(&expected).frobenius_norm() < 1e-15);
        assert!(img.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn non_unitary_is_rejected_with_defect() {
        let s = RingSpace::new(1, 2).unwrap();
        let two = DenseOperator::<f64>::identity(s).scale(cx(2.0, 0.0));
        match heisenberg_image(&two, &two) {
            Err(QcaError::NotUnitary { defect }) => assert!((defect - 3.0 * 2f64.sqrt()).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }
}
