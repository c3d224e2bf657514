//! Localization of a causal unitary G on the doubled space: every cell gets a
//! left and a right subcell (pair index l·d + r), G acts on the right subcells
//! as Ĝ, S_x swaps the subcells of x, K_x = Ĝ† S_x Ĝ and H = (∏S_x)(∏K_x).
//! With E|c⟩ = ⊗ₓ|0⟩|c_x⟩ one has HE = EG whenever G fixes the quiescent
//! configuration.

use num_complex::Complex;
use rayon::prelude::*;

use super::causality::{causality_check, Neighbourhood, SUPPORT_TOL};
use crate::error::{QcaError, Result};
use crate::operator::{heisenberg_image_local_unchecked, support_of, CellSet, DenseOperator, LocalOperator, UNITARITY_TOL};
use crate::scalar::{sum_real, tol, Real};
use crate::state::RingSpace;

#[derive(Clone, Debug)]
pub struct LocalizationResult<T: Real> {
    /// K_x for x ascending, on the doubled space.
    pub k: Vec<DenseOperator<T>>,
    /// Minimal support of each K_x.
    pub supports: Vec<CellSet>,
    /// x + N for each x.
    pub allowed: Vec<CellSet>,
    /// max ‖[K_x, K_y]‖_F over x < y.
    pub commutation_residual: T,
    /// ‖∏K_x − Ĝ†(∏S_x)Ĝ‖_F.
    pub product_defect: T,
    pub h: DenseOperator<T>,
    /// ‖HE − EG‖_F.
    pub he_eg_defect: T,
}

impl<T: Real> LocalizationResult<T> {
    pub fn is_local(&self) -> bool {
        self.supports.iter().zip(&self.allowed).all(|(s, a)| s.is_subset(a))
    }
}

/// Index of the doubled-space basis state with left digits `left` and right
/// digits `right` (both given as basis indices of the original space).
fn pair_index(space: &RingSpace, left: usize, right: usize) -> usize {
    let d = space.local_dim();
    let (l, r) = (space.digits(left), space.digits(right));
    l.iter().zip(&r).fold(0, |acc, (&a, &b)| acc * d * d + a * d + b)
}

/// Ĝ = I_left ⊗ G_right on the doubled space.
pub fn doubled_unitary<T: Real>(g: &DenseOperator<T>) -> Result<DenseOperator<T>> {
    let space = *g.space();
    let doubled = space.doubled()?;
    let n = space.dim();
    let mut out = DenseOperator::zeros(doubled);
    let index: Vec<Vec<usize>> = (0..n).map(|l| (0..n).map(|r| pair_index(&space, l, r)).collect()).collect();
    for row in &index {
        for i in 0..n {
            for j in 0..n {
                let z = g.get(i, j);
                if z != Complex::new(T::zero(), T::zero()) {
                    out.set(row[i], row[j], z);
                }
            }
        }
    }
    Ok(out)
}

/// S_x on the doubled space: |l, r⟩ ↦ |r, l⟩ at cell x.
pub fn subcell_swap<T: Real>(cell: usize, local_dim: usize) -> LocalOperator<T> {
    let d = local_dim;
    let size = d * d;
    let mut data = vec![Complex::new(T::zero(), T::zero()); size * size];
    for l in 0..d {
        for r in 0..d {
            data[(r * d + l) * size + (l * d + r)] = Complex::new(T::one(), T::zero());
        }
    }
    LocalOperator::new(vec![cell], size, data).expect("sized")
}

/// Column map of E: basis index of E|c⟩ in the doubled space.
pub fn embedding(space: &RingSpace) -> Vec<usize> {
    (0..space.dim()).map(|j| pair_index(space, 0, j)).collect()
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

/// K_x = Ĝ† S_x Ĝ and its support for every x, with no causality requirement.
/// For a non-causal G the supports need not be local.
pub fn conjugated_swaps<T: Real>(g: &DenseOperator<T>) -> Result<Vec<(DenseOperator<T>, CellSet)>> {
    check_unitary(g)?;
    let ghat = doubled_unitary(g)?;
    let ghat_adj = ghat.adjoint();
    let d = g.space().local_dim();
    let tol = tol::<T>(SUPPORT_TOL);
    (0..g.space().cells())
        .into_par_iter()
        .map(|x| {
            let k = heisenberg_image_local_unchecked(&ghat_adj, &ghat, &subcell_swap(x, d))?;
            let support = support_of(&k, tol);
            Ok((k, support))
        })
        .collect()
}

/// Builds the localization of a unitary that is causal for `neighbourhood`;
/// refuses non-causal input.
pub fn build_localization<T: Real>(g: &DenseOperator<T>, neighbourhood: &Neighbourhood) -> Result<LocalizationResult<T>> {
    let space = *g.space();
    space.doubled()?;
    let verdict = causality_check(g, neighbourhood)?;
    if let Some(w) = verdict.witnesses.first() {
        return Err(QcaError::NotCausal {
            cell: w.cell,
            support: w.support.iter().copied().collect(),
        });
    }
    let (k, supports): (Vec<_>, Vec<_>) = conjugated_swaps(g)?.into_iter().unzip();
    let allowed = (0..space.cells()).map(|x| neighbourhood.cells_for(x, &space)).collect();

    let pairs: Vec<(usize, usize)> = (0..k.len()).flat_map(|x| (x + 1..k.len()).map(move |y| (x, y))).collect();
    let commutation_residual = pairs
        .par_iter()
        .map(|&(x, y)| k[x].commutator(&k[y]).frobenius_norm())
        .collect::<Vec<T>>()
        .into_iter()
        .fold(T::zero(), T::max);

    let ghat = doubled_unitary(g)?;
    let doubled = *ghat.space();
    let d = space.local_dim();
    let mut swaps = DenseOperator::identity(doubled);
    for x in 0..space.cells() {
        swaps = swaps.left_mul_local(&subcell_swap(x, d))?;
    }
    let prod_k = k.iter().skip(1).fold(k[0].clone(), |acc, kx| acc.matmul(kx));
    let product_defect = prod_k.sub(&ghat.adjoint().matmul(&swaps.matmul(&ghat))).frobenius_norm();
    let h = swaps.matmul(&prod_k);

    let e = embedding(&space);
    let mut is_image = vec![None; doubled.dim()];
    for (k_idx, &i) in e.iter().enumerate() {
        is_image[i] = Some(k_idx);
    }
    let he_eg_defect = sum_real((0..doubled.dim()).flat_map(|i| {
        let (h, g, e, is_image) = (&h, g, &e, &is_image);
        (0..space.dim()).map(move |j| {
            let eg = match is_image[i] {
                Some(k_idx) => g.get(k_idx, j),
                None => Complex::new(T::zero(), T::zero()),
            };
            (h.get(i, e[j]) - eg).norm_sqr()
        })
    }))
    .sqrt();

    Ok(LocalizationResult {
        k,
        supports,
        allowed,
        commutation_residual,
        product_defect,
        h,
        he_eg_defect,
    })
}
