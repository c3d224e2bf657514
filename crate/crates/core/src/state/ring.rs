use crate::error::{QcaError, Result};

/// Largest Hilbert dimension any dense operator may have.
pub const MAX_DENSE_DIM: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Cells 0 and N−1 are neighbours.
    Periodic,
    /// A finite window padded with quiescent cells on both sides.
    Open,
}

/// A finite row of `cells` cells with local dimension `local_dim`.
///
/// Basis index convention: mixed radix, cell 0 is the most significant digit,
/// i.e. index = Σ_c s_c · d^(N−1−c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpace {
    cells: usize,
    local_dim: usize,
    boundary: Boundary,
}

impl RingSpace {
    /// Periodic ring.
    pub fn new(cells: usize, local_dim: usize) -> Result<Self> {
        Self::with_boundary(cells, local_dim, Boundary::Periodic)
    }

    /// Open window (quiescent padding outside `[0, cells)`).
    pub fn window(cells: usize, local_dim: usize) -> Result<Self> {
        Self::with_boundary(cells, local_dim, Boundary::Open)
    }

    pub fn with_boundary(cells: usize, local_dim: usize, boundary: Boundary) -> Result<Self> {
        if cells == 0 {
            return Err(crate::error::invalid("cells", "must be positive"));
        }
        if local_dim < 2 {
            return Err(crate::error::invalid("local_dim", "must be at least 2"));
        }
        let dim = checked_pow(local_dim, cells).ok_or(QcaError::TooLarge {
            dim: usize::MAX,
            cap: MAX_DENSE_DIM,
        })?;
        if dim > MAX_DENSE_DIM {
            return Err(QcaError::TooLarge {
                dim,
                cap: MAX_DENSE_DIM,
            });
        }
        Ok(Self {
            cells,
            local_dim,
            boundary,
        })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Hilbert dimension d^N.
    pub fn dim(&self) -> usize {
        self.local_dim.pow(self.cells as u32)
    }

    /// Place value of `cell` in the basis index.
    #[inline]
    pub fn stride(&self, cell: usize) -> usize {
        self.local_dim.pow((self.cells - 1 - cell) as u32)
    }

    #[inline]
    pub fn digit(&self, index: usize, cell: usize) -> usize {
        (index / self.stride(cell)) % self.local_dim
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.cells];
        for c in (0..self.cells).rev() {
            out[c] = index % self.local_dim;
            index /= self.local_dim;
        }
        out
    }

    pub fn index_of(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.cells);
        digits.iter().fold(0, |acc, &s| acc * self.local_dim + s)
    }

    /// Cell reached from `cell` by `offset`; `None` when it falls off an open window.
    pub fn offset(&self, cell: usize, offset: i64) -> Option<usize> {
        let n = self.cells as i64;
        let target = cell as i64 + offset;
        match self.boundary {
            Boundary::Periodic => Some(target.rem_euclid(n) as usize),
            Boundary::Open => (0..n).contains(&target).then_some(target as usize),
        }
    }

    /// Regroups consecutive runs of `factor` cells into supercells of local
    /// dimension d^factor. The basis index is unchanged by construction.
    pub fn grouped(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !self.cells.is_multiple_of(factor) {
            return Err(crate::error::invalid(
                "factor",
                format!("{factor} does not divide {} cells", self.cells),
            ));
        }
        Self::with_boundary(
            self.cells / factor,
            self.local_dim.pow(factor as u32),
            self.boundary,
        )
    }

    /// Same cells, each carrying a (left, right) pair of subcells.
    pub fn doubled(&self) -> Result<Self> {
        Self::with_boundary(self.cells, self.local_dim * self.local_dim, self.boundary)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
