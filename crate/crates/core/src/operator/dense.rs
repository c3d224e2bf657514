use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{invalid, QcaError, Result};
use crate::scalar::{sum_real, zero, Cx, Real};
use crate::state::RingSpace;

/// A complex d^N × d^N matrix (row-major) over the basis of a [`RingSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T: Real> {
    space: RingSpace,
    data: Vec<Cx<T>>,
}

/// An operator on an ordered list of cells, d^k × d^k, row-major. The first
/// listed cell is the most significant digit of the local index.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator<T: Real> {
    cells: Vec<usize>,
    local_dim: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> LocalOperator<T> {
    pub fn new(cells: Vec<usize>, local_dim: usize, data: Vec<Cx<T>>) -> Result<Self> {
        let size = local_dim.pow(cells.len() as u32);
        if data.len() != size * size {
            return Err(QcaError::DimensionMismatch {
                expected: size * size,
                found: data.len(),
            });
        }
        let mut sorted = cells.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cells.len() {
            return Err(invalid("cells", "repeated cell in local operator"));
        }
        Ok(Self {
            cells,
            local_dim,
            data,
        })
    }

    /// |a⟩⟨b| at `cell`.
    pub fn matrix_unit(cell: usize, local_dim: usize, a: usize, b: usize) -> Self {
        let mut data = vec![zero(); local_dim * local_dim];
        data[a * local_dim + b] = Complex::new(T::one(), T::zero());
        Self {
            cells: vec![cell],
            local_dim,
            data,
        }
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn size(&self) -> usize {
        self.local_dim.pow(self.cells.len() as u32)
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.size() + j]
    }

    fn check(&self, space: &RingSpace) -> Result<()> {
        if self.local_dim != space.local_dim() {
            return Err(QcaError::DimensionMismatch {
                expected: space.local_dim(),
                found: self.local_dim,
            });
        }
        if let Some(&c) = self.cells.iter().find(|&&c| c >= space.cells()) {
            return Err(invalid("cells", format!("cell {c} outside ring of {}", space.cells())));
        }
        Ok(())
    }

    /// Offsets of every local basis state inside the global index, and the list
    /// of global indices whose digits on `cells` are zero.
    fn layout(&self, space: &RingSpace) -> (Vec<usize>, Vec<usize>) {
        let k = self.cells.len();
        let d = self.local_dim;
        let offsets: Vec<usize> = (0..self.size())
            .map(|l| {
                (0..k)
                    .map(|pos| {
                        let digit = (l / d.pow((k - 1 - pos) as u32)) % d;
                        digit * space.stride(self.cells[pos])
                    })
                    .sum()
            })
            .collect();
        let bases = (0..space.dim())
            .filter(|&i| self.cells.iter().all(|&c| space.digit(i, c) == 0))
            .collect();
        (offsets, bases)
    }
}

impl<T: Real> DenseOperator<T> {
    pub fn zeros(space: RingSpace) -> Self {
        Self {
            space,
            data: vec![zero(); space.dim() * space.dim()],
        }
    }

    pub fn identity(space: RingSpace) -> Self {
        let mut out = Self::zeros(space);
        for i in 0..space.dim() {
            out.data[i * space.dim() + i] = Complex::new(T::one(), T::zero());
        }
        out
    }

    pub fn from_fn(space: RingSpace, f: impl Fn(usize, usize) -> Cx<T>) -> Self {
        let n = space.dim();
        Self {
            space,
            data: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn from_data(space: RingSpace, data: Vec<Cx<T>>) -> Result<Self> {
        let n = space.dim();
        if data.len() != n * n {
            return Err(QcaError::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { space, data })
    }

    /// `local` acting on its cells, identity elsewhere.
    pub fn embed(space: RingSpace, local: &LocalOperator<T>) -> Result<Self> {
        Self::identity(space).left_mul_local(local)
    }

    pub fn space(&self) -> &RingSpace {
        &self.space
    }

    /// Same matrix, reinterpreted over another space of equal dimension.
    pub fn with_space(mut self, space: RingSpace) -> Result<Self> {
        if space.dim() != self.space.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: self.space.dim(),
                found: space.dim(),
            });
        }
        self.space = space;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.dim() + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Cx<T>) {
        let n = self.dim();
        self.data[i * n + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<Cx<T>> {
        (0..self.dim()).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.space, |i, j| self.get(j, i).conj())
    }

    /// Matrix product `self · rhs`. Panics on a dimension mismatch.
    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.dim();
        assert_eq!(n, rhs.dim(), "matmul dimension mismatch");
        let mut out = vec![zero(); n * n];
        out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(rhs_row) {
                    *o = *o + a * *b;
                }
            }
        });
        Self {
            space: self.space,
            data: out,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        Self {
            space: self.space,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim(), rhs.dim());
        Self {
            space: self.space,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }

    pub fn scale(&self, factor: Cx<T>) -> Self {
        Self {
            space: self.space,
            data: self.data.iter().map(|a| *a * factor).collect(),
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn frobenius_norm(&self) -> T {
        sum_real(self.data.iter().map(|a| a.norm_sqr())).sqrt()
    }

    pub fn trace(&self) -> Cx<T> {
        (0..self.dim()).fold(zero(), |acc, i| acc + self.get(i, i))
    }

    /// ‖A − A†‖_F.
    pub fn hermiticity_defect(&self) -> T {
        let n = self.dim();
        let mut acc = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                acc.push((self.get(i, j) - self.get(j, i).conj()).norm_sqr());
            }
        }
        sum_real(acc).sqrt()
    }

    /// ‖A†A − I‖_F.
    pub fn unitarity_defect(&self) -> T {
        let g = self.adjoint().matmul(self);
        let n = self.dim();
        sum_real((0..n * n).map(|k| {
            let id = if k / n == k % n { T::one() } else { T::zero() };
            (g.data[k] - Complex::new(id, T::zero())).norm_sqr()
        }))
        .sqrt()
    }

    pub fn apply(&self, v: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        let n = self.dim();
        if v.len() != n {
            return Err(QcaError::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        Ok((0..n)
            .into_par_iter()
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(zero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect())
    }

    /// (L ⊗ I) · self in O(dim² · d^k).
    pub fn left_mul_local(&self, local: &LocalOperator<T>) -> Result<Self> {
        local.check(&self.space)?;
        let n = self.dim();
        let (offsets, bases) = local.layout(&self.space);
        let size = local.size();
        let mut out = vec![zero(); n * n];
        let mut rows: Vec<&mut [Cx<T>]> = out.chunks_mut(n).collect();
        // Rows touched by different bases are disjoint; sequential for determinism.
        for &base in &bases {
            for lp in 0..size {
                let target = base + offsets[lp];
                let row = std::mem::take(&mut rows[target]);
                for l in 0..size {
                    let coeff = local.at(lp, l);
                    if coeff.re == T::zero() && coeff.im == T::zero() {
                        continue;
                    }
                    let src = &self.data[(base + offsets[l]) * n..(base + offsets[l] + 1) * n];
                    for (o, s) in row.iter_mut().zip(src) {
                        *o = *o + coeff * *s;
                    }
                }
                rows[target] = row;
            }
        }
        Ok(Self {
            space: self.space,
            data: out,
        })
    }

    /// self · (L ⊗ I) in O(dim² · d^k).
    pub fn right_mul_local(&self, local: &LocalOperator<T>) -> Result<Self> {
        local.check(&self.space)?;
        let n = self.dim();
        let (offsets, bases) = local.layout(&self.space);
        let size = local.size();
        let mut out = vec![zero(); n * n];
        out.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let src = &self.data[i * n..(i + 1) * n];
            for &base in &bases {
                for lp in 0..size {
                    let mut acc = zero();
                    for l in 0..size {
                        acc = acc + src[base + offsets[l]] * local.at(l, lp);
                    }
                    row[base + offsets[lp]] = acc;
                }
            }
        });
        Ok(Self {
            space: self.space,
            data: out,
        })
    }

    /// Row-major `re+imi` text, one matrix row per line.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Applies a local operator to a state vector in place of a full matrix.
pub(crate) fn apply_local_to_vector<T: Real>(
    space: &RingSpace,
    local: &LocalOperator<T>,
    v: &[Cx<T>],
) -> Result<Vec<Cx<T>>> {
    local.check(space)?;
    if v.len() != space.dim() {
        return Err(QcaError::DimensionMismatch {
            expected: space.dim(),
            found: v.len(),
        });
    }
    let (offsets, bases) = local.layout(space);
    let size = local.size();
    let mut out = vec![zero(); v.len()];
    for &base in &bases {
        for lp in 0..size {
            let mut acc = zero();
            for l in 0..size {
                acc = acc + local.at(lp, l) * v[base + offsets[l]];
            }
            out[base + offsets[lp]] = acc;
        }
    }
    Ok(out)
}

impl<T: Real> LocalOperator<T> {
    pub fn apply_to(&self, space: &RingSpace, v: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        apply_local_to_vector(space, self, v)
    }
}

impl<T: Real> fmt::Display for DenseOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                let z = self.get(i, j);
                let re = z.re.to_f64_lossy();
                let im = z.im.to_f64_lossy();
                write!(f, "{re}{}{}i", if im < 0.0 || (im == 0.0 && im.is_sign_negative()) { "-" } else { "+" }, im.abs())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
