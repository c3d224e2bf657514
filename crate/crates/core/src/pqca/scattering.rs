use num_complex::Complex;

use crate::error::{QcaError, Result};
use crate::operator::{LocalOperator, UNITARITY_TOL};
use crate::scalar::{sum_real, tol, zero, Cx, Real};
use crate::state::{Alphabet, RingSpace};

/// Quiescence defect above which a PQCA is refused.
pub const QUIESCENCE_TOL: f64 = 1e-10;

/// The block unitary U of a PQCA: d^(2^n) × d^(2^n), acting on a hypercube of
/// 2^n cells.
///
/// Block basis: corners are ordered by their offset bits (b₁…bₙ) read as a
/// binary number with b₁ most significant, and the block index is mixed radix
/// over corners in that order. For n = 1 the index of (left a, right b) is a·d + b.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringUnitary<T: Real> {
    alphabet: Alphabet,
    lattice_dim: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> ScatteringUnitary<T> {
    /// Validates shape and unitarity; quiescence is checked by [`super::Pqca::new`].
    pub fn new(alphabet: Alphabet, lattice_dim: usize, data: Vec<Cx<T>>) -> Result<Self> {
        if lattice_dim == 0 {
            return Err(crate::error::invalid("n", "lattice dimension must be positive"));
        }
        let size = block_size(alphabet, lattice_dim);
        if data.len() != size * size {
            return Err(QcaError::DimensionMismatch {
                expected: size * size,
                found: data.len(),
            });
        }
        let u = Self {
            alphabet,
            lattice_dim,
            data,
        };
        let defect = u.unitarity_defect();
        if defect > tol::<T>(UNITARITY_TOL) {
            return Err(QcaError::NotUnitary {
                defect: defect.to_f64_lossy(),
            });
        }
        Ok(u)
    }

    pub fn identity(alphabet: Alphabet, lattice_dim: usize) -> Self {
        let size = block_size(alphabet, lattice_dim);
        let data = (0..size * size)
            .map(|k| if k / size == k % size { Complex::new(T::one(), T::zero()) } else { zero() })
            .collect();
        Self {
            alphabet,
            lattice_dim,
            data,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn lattice_dim(&self) -> usize {
        self.lattice_dim
    }

    /// Cells per block, 2^n.
    pub fn block_cells(&self) -> usize {
        1 << self.lattice_dim
    }

    /// d^(2^n).
    pub fn size(&self) -> usize {
        block_size(self.alphabet, self.lattice_dim)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<T> {
        self.data[i * self.size() + j]
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn unitarity_defect(&self) -> T {
        let n = self.size();
        sum_real((0..n * n).map(|k| {
            let (i, j) = (k / n, k % n);
            let g = (0..n).fold(zero::<T>(), |acc, r| acc + self.get(r, i).conj() * self.get(r, j));
            let id = if i == j { T::one() } else { T::zero() };
            (g - Complex::<T>::new(id, T::zero())).norm_sqr()
        }))
        .sqrt()
    }

    /// U as a local operator on the given ring cells (n = 1 only).
    pub fn on_cells(&self, left: usize, right: usize) -> LocalOperator<T> {
        assert_eq!(self.lattice_dim, 1, "ring operators exist for n = 1 only");
        LocalOperator::new(vec![left, right], self.alphabet.size(), self.data.clone())
            .expect("shape validated at construction")
    }

    /// The block matrix as an operator on a 2-cell space.
    pub fn block_space(&self) -> Result<RingSpace> {
        RingSpace::window(self.block_cells(), self.alphabet.size())
    }

    /// Text format: header `d n`, then one row per line as `re im` pairs.
    pub fn to_text(&self) -> String {
        let n = self.size();
        let mut out = format!("{} {}\n", self.alphabet.size(), self.lattice_dim);
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    let z = self.get(i, j);
                    format!("{:.16e} {:.16e}", z.re.to_f64_lossy(), z.im.to_f64_lossy())
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let parse_err = |line: usize, reason: &str| QcaError::Parse {
            line: line + 1,
            reason: reason.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header `d n`"))?;
        let head: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| parse_err(hl, "header must be two integers `d n`"))?;
        let [d, n] = head[..] else {
            return Err(parse_err(hl, "header must be two integers `d n`"));
        };
        let alphabet = Alphabet::new(d)?;
        if n == 0 || n > 3 {
            return Err(parse_err(hl, "lattice dimension must be 1, 2 or 3"));
        }
        let size = block_size(alphabet, n);
        let mut data = Vec::with_capacity(size * size);
        let mut rows = 0;
        for (ln, line) in lines {
            let nums: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| parse_err(ln, "non-numeric entry"))?;
            if nums.len() != 2 * size {
                return Err(parse_err(ln, &format!("expected {} numbers (re im pairs), found {}", 2 * size, nums.len())));
            }
            data.extend(nums.chunks(2).map(|p| Complex::new(T::lit(p[0]), T::lit(p[1]))));
            rows += 1;
        }
        if rows != size {
            return Err(QcaError::Parse {
                line: 0,
                reason: format!("expected {size} rows, found {rows}"),
            });
        }
        Self::new(alphabet, n, data)
    }
}

fn block_size(alphabet: Alphabet, lattice_dim: usize) -> usize {
    alphabet.size().pow(1 << lattice_dim)
}

/// ‖U|0…0⟩ − |0…0⟩‖.
pub fn check_quiescence<T: Real>(u: &ScatteringUnitary<T>) -> T {
    let n = u.size();
    sum_real((0..n).map(|i| {
        let target = if i == 0 { T::one() } else { T::zero() };
        (u.get(i, 0) - Complex::new(target, T::zero())).norm_sqr()
    }))
    .sqrt()
}
