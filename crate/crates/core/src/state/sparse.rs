use std::collections::BTreeMap;

use num_complex::Complex;
use smallvec::smallvec;

use super::{Alphabet, Configuration, RingSpace, Symbol, EMPTY};
use crate::error::{invalid, QcaError, Result};
use crate::scalar::{CompensatedSum, Cx, Real};

/// Amplitudes whose modulus falls below this are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// A finitely-supported superposition Σ α_c |c⟩ of configurations.
///
/// Normalization is never implicit; call [`SparseState::normalized`] when a
/// unit vector is required.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState<T: Real> {
    alphabet: Alphabet,
    dim: usize,
    terms: BTreeMap<Configuration, Cx<T>>,
}

impl<T: Real> SparseState<T> {
    /// The zero vector.
    pub fn zero(alphabet: Alphabet, dim: usize) -> Self {
        Self {
            alphabet,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// |c⟩ for a single configuration.
    pub fn basis(alphabet: Alphabet, config: Configuration) -> Result<Self> {
        Self::from_terms(alphabet, config.dim(), [(config, Complex::new(T::one(), T::zero()))])
    }

    /// The all-quiescent configuration.
    pub fn vacuum(alphabet: Alphabet, dim: usize) -> Self {
        Self::basis(alphabet, Configuration::empty(dim)).expect("vacuum is valid")
    }

    /// Sums duplicate configurations (compensated) and prunes tiny amplitudes.
    pub fn from_terms<I>(alphabet: Alphabet, dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Configuration, Cx<T>)>,
    {
        let mut acc: BTreeMap<Configuration, CompensatedSum<T>> = BTreeMap::new();
        for (c, a) in terms {
            if c.dim() != dim {
                return Err(QcaError::LatticeDimensionMismatch {
                    left: dim,
                    right: c.dim(),
                });
            }
            alphabet.check(c.max_symbol())?;
            acc.entry(c).or_default().add(a);
        }
        Ok(Self::from_accumulated(alphabet, dim, acc))
    }

    pub(crate) fn from_accumulated(
        alphabet: Alphabet,
        dim: usize,
        acc: BTreeMap<Configuration, CompensatedSum<T>>,
    ) -> Self {
        let threshold = T::lit(PRUNE_THRESHOLD);
        let terms = acc
            .into_iter()
            .map(|(c, s)| (c, s.value()))
            .filter(|(_, a)| a.norm() >= threshold)
            .collect();
        Self {
            alphabet,
            dim,
            terms,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Lattice dimension n.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Configuration, Cx<T>)> + '_ {
        self.terms.iter().map(|(c, a)| (c, *a))
    }

    pub fn amplitude(&self, config: &Configuration) -> Cx<T> {
        self.terms
            .get(config)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn norm_sqr(&self) -> T {
        crate::scalar::sum_real(self.terms.values().map(|a| a.norm_sqr()))
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == T::zero() {
            return Err(invalid("state", "cannot normalize the zero vector"));
        }
        Ok(self.scaled(Complex::new(T::one() / n, T::zero())))
    }

    pub fn scaled(&self, factor: Cx<T>) -> Self {
        let threshold = T::lit(PRUNE_THRESHOLD);
        Self {
            alphabet: self.alphabet,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(c, a)| (c.clone(), *a * factor))
                .filter(|(_, a)| a.norm() >= threshold)
                .collect(),
        }
    }

    /// self + other.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Self::from_terms(
            self.alphabet,
            self.dim,
            self.terms().chain(other.terms()).map(|(c, a)| (c.clone(), a)),
        )
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(QcaError::AlphabetMismatch {
                left: self.alphabet.size(),
                right: other.alphabet.size(),
            });
        }
        if self.dim != other.dim {
            return Err(QcaError::LatticeDimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// ⟨self|other⟩.
    pub fn inner_product(&self, other: &Self) -> Result<Cx<T>> {
        self.compatible(other)?;
        let acc: CompensatedSum<T> = self
            .terms
            .iter()
            .filter_map(|(c, a)| other.terms.get(c).map(|b| a.conj() * *b))
            .collect();
        Ok(acc.value())
    }

    /// The translation τ_k applied `amount` times: every support point moves by
    /// `−amount` along `axis`. Negative amounts apply τ_k⁻¹.
    pub fn shift(&self, axis: usize, amount: i64) -> Self {
        assert!(axis < self.dim, "axis {axis} out of range for dimension {}", self.dim);
        Self {
            alphabet: self.alphabet,
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(c, a)| (c.shifted(axis, amount), *a))
                .collect(),
        }
    }

    /// The cell-doubling isometry E: each cell gains an empty left subcell,
    /// s ↦ (0, s) over Σ². The pair (l, r) is encoded as l·d + r.
    pub fn embed_double(&self) -> Self {
        // (0, s) ↦ 0·d + s = s, so only the alphabet changes
        Self {
            alphabet: self.alphabet.doubled(),
            dim: self.dim,
            terms: self.terms.clone(),
        }
    }

    /// Inverse of [`embed_double`](Self::embed_double) on its range: drops the
    /// left subcells, which must all be empty.
    pub fn discard_left_subcells(&self, original: Alphabet) -> Result<Self> {
        let d = original.size();
        if self.alphabet.size() != d * d {
            return Err(QcaError::AlphabetMismatch {
                left: self.alphabet.size(),
                right: d * d,
            });
        }
        for (c, _) in self.terms() {
            if c.iter().any(|(_, s)| s as usize >= d) {
                return Err(invalid("state", "a left subcell is occupied"));
            }
        }
        Ok(Self {
            alphabet: original,
            dim: self.dim,
            terms: self.terms.clone(),
        })
    }

    /// Coordinate vector on a ring window `[0, N)` (1D only), in the
    /// mixed-radix convention of [`RingSpace`].
    pub fn densify(&self, ring: &RingSpace) -> Result<Vec<Cx<T>>> {
        if self.dim != 1 {
            return Err(QcaError::LatticeDimensionMismatch {
                left: 1,
                right: self.dim,
            });
        }
        if ring.local_dim() != self.alphabet.size() {
            return Err(QcaError::AlphabetMismatch {
                left: self.alphabet.size(),
                right: ring.local_dim(),
            });
        }
        let mut v = vec![Complex::new(T::zero(), T::zero()); ring.dim()];
        for (c, a) in self.terms() {
            let mut index = 0;
            for (p, s) in c.iter() {
                let x = p[0];
                if x < 0 || x as usize >= ring.cells() {
                    return Err(QcaError::OutOfWindow {
                        cell: p.to_vec(),
                        cells: ring.cells(),
                    });
                }
                index += s as usize * ring.stride(x as usize);
            }
            v[index] = v[index] + a;
        }
        Ok(v)
    }

    /// Inverse of [`densify`](Self::densify).
    pub fn sparsify(ring: &RingSpace, v: &[Cx<T>]) -> Result<Self> {
        if v.len() != ring.dim() {
            return Err(QcaError::DimensionMismatch {
                expected: ring.dim(),
                found: v.len(),
            });
        }
        let alphabet = Alphabet::new(ring.local_dim())?;
        let terms = v.iter().enumerate().map(|(i, a)| {
            let digits = ring.digits(i);
            let config = Configuration::from_cells(
                1,
                digits
                    .into_iter()
                    .enumerate()
                    .map(|(x, s)| (smallvec![x as i64], s as Symbol)),
            );
            (config, *a)
        });
        Self::from_terms(alphabet, 1, terms)
    }

    /// Applies `f` to every basis configuration (a permutation when `f` is a bijection).
    pub fn map_configurations(&self, f: impl Fn(&Configuration) -> Configuration) -> Result<Self> {
        Self::from_terms(self.alphabet, self.dim, self.terms().map(|(c, a)| (f(c), a)))
    }

    /// Largest number of occupied cells in any term.
    pub fn max_occupation(&self) -> usize {
        self.terms.keys().map(Configuration::occupied).max().unwrap_or(0)
    }

    /// Norm of the component outside the k-particle sector.
    pub fn weight_outside_sector(&self, particles: usize) -> T {
        crate::scalar::sum_real(
            self.terms
                .iter()
                .filter(|(c, _)| c.occupied() != particles)
                .map(|(_, a)| a.norm_sqr()),
        )
        .sqrt()
    }

    /// True when every occupied cell lies in `[0, cells)` (1D).
    pub fn fits_window(&self, cells: usize) -> bool {
        self.terms.keys().all(|c| {
            c.iter()
                .all(|(p, s)| s == EMPTY || (p[0] >= 0 && (p[0] as usize) < cells))
        })
    }
}
