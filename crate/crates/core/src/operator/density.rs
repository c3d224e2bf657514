use num_complex::Complex;

use super::{eigh, DenseOperator};
use crate::error::{invalid, QcaError, Result};
use crate::scalar::{tol, zero, CompensatedSum, Cx, Real};
use crate::state::RingSpace;

/// A density matrix over an ordered subset of ring cells.
///
/// `labels` names the cells (ascending); the first label is the most significant
/// digit of the matrix index.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    local_dim: usize,
    labels: Vec<usize>,
    data: Vec<Cx<T>>,
}

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const POSITIVITY_TOL: f64 = 1e-10;

impl<T: Real> DensityMatrix<T> {
    /// Validated constructor: Hermitian, unit trace and positive semidefinite.
    pub fn new(local_dim: usize, labels: Vec<usize>, data: Vec<Cx<T>>) -> Result<Self> {
        let rho = Self::unchecked(local_dim, labels, data)?;
        rho.validate()?;
        Ok(rho)
    }

    fn unchecked(local_dim: usize, labels: Vec<usize>, data: Vec<Cx<T>>) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("labels", "cell labels must be strictly ascending"));
        }
        let dim = local_dim.pow(labels.len() as u32);
        if data.len() != dim * dim {
            return Err(QcaError::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self {
            local_dim,
            labels,
            data,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.labels.is_empty() {
            let tr = self.data[0];
            if (tr - Complex::new(T::one(), T::zero())).norm() > tol::<T>(TRACE_TOL) {
                return Err(QcaError::NotDensityMatrix { reason: format!("trace {tr}") });
            }
            return Ok(());
        }
        let op = self.as_operator()?;
        let herm = op.hermiticity_defect();
        if herm > tol::<T>(HERMITIAN_TOL) {
            return Err(QcaError::NotDensityMatrix {
                reason: format!("hermiticity defect {herm:e}"),
            });
        }
        let tr = self.trace();
        if (tr - Complex::new(T::one(), T::zero())).norm() > tol::<T>(TRACE_TOL) {
            return Err(QcaError::NotDensityMatrix {
                reason: format!("trace {tr}"),
            });
        }
        if self.dim() > 1 {
            let min = eigh(&op)?.values[0];
            if min < -tol::<T>(POSITIVITY_TOL) {
                return Err(QcaError::NotDensityMatrix {
                    reason: format!("negative eigenvalue {min:e}"),
                });
            }
        }
        Ok(())
    }

    /// |v⟩⟨v| over every cell of `space`.
    pub fn from_pure(space: &RingSpace, v: &[Cx<T>]) -> Result<Self> {
        if v.len() != space.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: space.dim(),
                found: v.len(),
            });
        }
        let n = v.len();
        let data = (0..n * n).map(|k| v[k / n] * v[k % n].conj()).collect();
        Self::new(space.local_dim(), (0..space.cells()).collect(), data)
    }

    /// Interprets a full-ring operator as a density matrix (validated).
    pub fn from_operator(op: &DenseOperator<T>) -> Result<Self> {
        let s = op.space();
        Self::new(s.local_dim(), (0..s.cells()).collect(), op.data().to_vec())
    }

    /// Reduced state of a pure vector on `keep` without forming |v⟩⟨v|.
    pub fn reduced_from_vector(space: &RingSpace, v: &[Cx<T>], keep: &[usize]) -> Result<Self> {
        if v.len() != space.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: space.dim(),
                found: v.len(),
            });
        }
        let (kept, traced) = split_offsets(space.local_dim(), space.cells(), &positions(&(0..space.cells()).collect::<Vec<_>>(), keep)?);
        let dk = kept.len();
        let mut data = vec![zero(); dk * dk];
        for a in 0..dk {
            for b in 0..dk {
                let acc: CompensatedSum<T> = traced
                    .iter()
                    .map(|t| v[kept[a] + t] * v[kept[b] + t].conj())
                    .collect();
                data[a * dk + b] = acc.value();
            }
        }
        let mut labels = keep.to_vec();
        labels.sort_unstable();
        Self::new(space.local_dim(), labels, data)
    }

    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.labels.len() as u32)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.dim() + j]
    }

    pub fn trace(&self) -> Cx<T> {
        let n = self.dim();
        (0..n).map(|i| self.data[i * n + i]).collect::<CompensatedSum<T>>().value()
    }

    pub fn as_operator(&self) -> Result<DenseOperator<T>> {
        if self.labels.is_empty() {
            return Err(invalid("labels", "a state on no cells has no operator form"));
        }
        DenseOperator::from_data(RingSpace::new(self.labels.len(), self.local_dim)?, self.data.clone())
    }

    /// Tr over every labelled cell not in `keep`. An empty `keep` yields the
    /// 1×1 matrix [Tr ρ].
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let pos = positions(&self.labels, keep)?;
        let (kept, traced) = split_offsets(self.local_dim, self.labels.len(), &pos);
        let dk = kept.len();
        let n = self.dim();
        let mut data = vec![zero(); dk * dk];
        for a in 0..dk {
            for b in 0..dk {
                let acc: CompensatedSum<T> = traced
                    .iter()
                    .map(|t| self.data[(kept[a] + t) * n + kept[b] + t])
                    .collect();
                data[a * dk + b] = acc.value();
            }
        }
        let mut labels = keep.to_vec();
        labels.sort_unstable();
        Self::unchecked(self.local_dim, labels, data)
    }

    /// G ρ G† for an operator over the same full ring.
    pub fn evolve(&self, g: &DenseOperator<T>) -> Result<Self> {
        if g.dim() != self.dim() || g.space().local_dim() != self.local_dim {
            return Err(QcaError::DimensionMismatch {
                expected: self.dim(),
                found: g.dim(),
            });
        }
        let rho = self.as_operator()?;
        let out = g.matmul(&rho).matmul(&g.adjoint());
        Self::unchecked(self.local_dim, self.labels.clone(), out.data().to_vec())
    }

    /// ½ Σ |eig(ρ − σ)|.
    pub fn trace_distance(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() || self.labels.len() != other.labels.len() {
            return Err(QcaError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.dim() == 1 {
            return Ok((self.data[0] - other.data[0]).norm() * T::lit(0.5));
        }
        let diff = self.as_operator()?.sub(&other.as_operator()?);
        let eig = eigh(&diff)?;
        Ok(crate::scalar::sum_real(eig.values.iter().map(|x| x.abs())) * T::lit(0.5))
    }

    /// Largest entrywise modulus of ρ − σ.
    pub fn max_deviation(&self, other: &Self) -> T {
        crate::scalar::max_deviation(&self.data, &other.data)
    }
}

/// Positions of the `keep` cells within `labels`.
fn positions(labels: &[usize], keep: &[usize]) -> Result<Vec<usize>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    keep.iter()
        .map(|c| {
            labels
                .iter()
                .position(|l| l == c)
                .ok_or_else(|| invalid("keep", format!("cell {c} is not part of the state")))
        })
        .collect()
}

/// Index offsets for the kept subsystem and the traced complement.
fn split_offsets(d: usize, cells: usize, kept_pos: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let stride = |pos: usize| d.pow((cells - 1 - pos) as u32);
    let traced_pos: Vec<usize> = (0..cells).filter(|p| !kept_pos.contains(p)).collect();
    let enumerate = |ps: &[usize]| -> Vec<usize> {
        let k = ps.len();
        (0..d.pow(k as u32))
            .map(|l| {
                (0..k)
                    .map(|j| ((l / d.pow((k - 1 - j) as u32)) % d) * stride(ps[j]))
                    .sum()
            })
            .collect()
    };
    (enumerate(kept_pos), enumerate(&traced_pos))
}
