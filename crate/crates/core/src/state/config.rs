use std::fmt;

use smallvec::SmallVec;

use crate::error::{QcaError, Result};

/// Symbol index; 0 is the quiescent (empty) symbol.
pub type Symbol = u32;

pub const EMPTY: Symbol = 0;

/// A lattice point in Z^n.
pub type Point = SmallVec<[i64; 2]>;

/// Finite alphabet Σ = {0, …, d−1} with 0 the empty symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(usize);

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(crate::error::invalid("alphabet", format!("size {size} < 2")));
        }
        Ok(Self(size))
    }

    pub const fn qubit() -> Self {
        Self(2)
    }

    pub fn size(self) -> usize {
        self.0
    }

    /// Σ² for the doubled cell, pair (left, right) ↦ left·d + right.
    pub fn doubled(self) -> Self {
        Self(self.0 * self.0)
    }

    pub fn check(self, symbol: Symbol) -> Result<()> {
        if (symbol as usize) < self.0 {
            Ok(())
        } else {
            Err(QcaError::SymbolOutOfRange {
                symbol,
                size: self.0,
            })
        }
    }
}

/// A configuration: finitely many non-empty cells of Z^n.
///
/// Stored as `(point, symbol)` pairs sorted by point; empty cells are never
/// stored, so two equal configurations compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    dim: usize,
    cells: Vec<(Point, Symbol)>,
}

impl Configuration {
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "lattice dimension must be positive");
        Self {
            dim,
            cells: Vec::new(),
        }
    }

    /// Builds a configuration from arbitrary `(point, symbol)` pairs. Empty
    /// symbols are dropped; a later duplicate point overrides an earlier one.
    pub fn from_cells<I>(dim: usize, cells: I) -> Self
    where
        I: IntoIterator<Item = (Point, Symbol)>,
    {
        let mut out = Self::empty(dim);
        for (p, s) in cells {
            out.set(p, s);
        }
        out
    }

    /// One-dimensional shorthand.
    pub fn line<I: IntoIterator<Item = (i64, Symbol)>>(cells: I) -> Self {
        Self::from_cells(1, cells.into_iter().map(|(x, s)| (smallvec::smallvec![x], s)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of non-empty cells.
    pub fn occupied(&self) -> usize {
        self.cells.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, Symbol)> + '_ {
        self.cells.iter().map(|(p, s)| (p, *s))
    }

    pub fn get(&self, point: &[i64]) -> Symbol {
        match self.cells.binary_search_by(|(p, _)| p.as_slice().cmp(point)) {
            Ok(i) => self.cells[i].1,
            Err(_) => EMPTY,
        }
    }

    pub fn set(&mut self, point: Point, symbol: Symbol) {
        assert_eq!(point.len(), self.dim, "point dimension");
        match self.cells.binary_search_by(|(p, _)| p.cmp(&point)) {
            Ok(i) => {
                if symbol == EMPTY {
                    self.cells.remove(i);
                } else {
                    self.cells[i].1 = symbol;
                }
            }
            Err(i) => {
                if symbol != EMPTY {
                    self.cells.insert(i, (point, symbol));
                }
            }
        }
    }

    /// Translates the content by `−amount` along `axis`: the image satisfies
    /// c′(…, i_k, …) = c(…, i_k + amount, …).
    pub fn shifted(&self, axis: usize, amount: i64) -> Self {
        assert!(axis < self.dim, "axis {axis} out of range for dimension {}", self.dim);
        let cells = self
            .cells
            .iter()
            .map(|(p, s)| {
                let mut q = p.clone();
                q[axis] -= amount;
                (q, *s)
            })
            .collect();
        // uniform translation keeps the order
        Self {
            dim: self.dim,
            cells,
        }
    }

    pub fn map_symbols(&self, f: impl Fn(Symbol) -> Symbol) -> Self {
        Self::from_cells(self.dim, self.cells.iter().map(|(p, s)| (p.clone(), f(*s))))
    }

    pub fn max_symbol(&self) -> Symbol {
        self.cells.iter().map(|(_, s)| *s).max().unwrap_or(EMPTY)
    }
}

impl fmt::Display for Configuration {
    /// `(i₁,…,iₙ):symbol;…`, empty string for the all-empty configuration.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (p, s)) in self.cells.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            f.write_str("(")?;
            for (j, c) in p.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "):{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallvec::smallvec;

    #[test]
    fn empty_symbols_are_not_stored() {
        let c = Configuration::line([(0, 1), (3, 0), (2, 2)]);
        assert_eq!(c.occupied(), 2);
        assert_eq!(c.get(&[3]), EMPTY);
        assert_eq!(c.get(&[2]), 2);
    }

    #[test]
    fn shift_follows_translation_index_convention() {
        // c'(i) = c(i + 1): content at 0 ends up at -1
        let c = Configuration::line([(0, 1)]);
        assert_eq!(c.shifted(0, 1), Configuration::line([(-1, 1)]));
    }

    #[test]
    fn display_format() {
        let c = Configuration::from_cells(2, [(smallvec![1, -2], 3), (smallvec![0, 5], 1)]);
        assert_eq!(c.to_string(), "(0,5):1;(1,-2):3");
        assert_eq!(Configuration::empty(1).to_string(), "");
    }

    #[test]
    fn alphabet_rejects_degenerate_size() {
        assert!(Alphabet::new(1).is_err());
        assert_eq!(Alphabet::new(3).unwrap().doubled().size(), 9);
    }
}
