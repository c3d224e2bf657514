use num_complex::Complex;

use super::DiracParams;
use crate::error::{invalid, QcaError, Result};
use crate::scalar::{sum_real, Cx, Real};
use crate::state::{Alphabet, Configuration, SparseState};

/// One-particle amplitudes (ψ⁺, ψ⁻) on a periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkField<T: Real> {
    psi_plus: Vec<Cx<T>>,
    psi_minus: Vec<Cx<T>>,
}

impl<T: Real> WalkField<T> {
    pub fn new(psi_plus: Vec<Cx<T>>, psi_minus: Vec<Cx<T>>) -> Result<Self> {
        if psi_plus.is_empty() {
            return Err(invalid("grid", "must have at least one point"));
        }
        if psi_plus.len() != psi_minus.len() {
            return Err(QcaError::DimensionMismatch {
                expected: psi_plus.len(),
                found: psi_minus.len(),
            });
        }
        Ok(Self {
            psi_plus,
            psi_minus,
        })
    }

    pub fn zeros(grid: usize) -> Result<Self> {
        Self::new(vec![Complex::new(T::zero(), T::zero()); grid], vec![Complex::new(T::zero(), T::zero()); grid])
    }

    /// A unit right-mover at `site`.
    pub fn delta(grid: usize, site: usize) -> Result<Self> {
        if site >= grid {
            return Err(invalid("site", format!("{site} outside grid of {grid}")));
        }
        let mut f = Self::zeros(grid)?;
        f.psi_plus[site] = Complex::new(T::one(), T::zero());
        Ok(f)
    }

    /// Normalized packet exp(−(i−c)²/4σ²)·e^{i k₀ i} in grid units, equal weight
    /// on both components.
    pub fn gaussian(grid: usize, center: T, sigma: T, k0: T) -> Result<Self> {
        if !(sigma > T::zero()) {
            return Err(invalid("sigma", "must be positive"));
        }
        let four = T::lit(4.0);
        let amp: Vec<Cx<T>> = (0..grid)
            .map(|i| {
                let x = T::from_usize_lossy(i);
                let env = (-(x - center).powi(2) / (four * sigma * sigma)).exp();
                Complex::from_polar(env, k0 * x)
            })
            .collect();
        Self::new(amp.clone(), amp)?.normalized()
    }

    pub fn grid(&self) -> usize {
        self.psi_plus.len()
    }

    pub fn psi_plus(&self) -> &[Cx<T>] {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> &[Cx<T>] {
        &self.psi_minus
    }

    pub(crate) fn components_mut(&mut self) -> (&mut [Cx<T>], &mut [Cx<T>]) {
        (&mut self.psi_plus, &mut self.psi_minus)
    }

    /// |ψ⁺(i)|² + |ψ⁻(i)|².
    pub fn probability(&self, site: usize) -> T {
        self.psi_plus[site].norm_sqr() + self.psi_minus[site].norm_sqr()
    }

    pub fn norm_sqr(&self) -> T {
        sum_real((0..self.grid()).map(|i| self.probability(i)))
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if n == T::zero() {
            return Err(invalid("field", "cannot normalize the zero field"));
        }
        Ok(Self {
            psi_plus: self.psi_plus.iter().map(|z| z / n).collect(),
            psi_minus: self.psi_minus.iter().map(|z| z / n).collect(),
        })
    }

    /// Grid ℓ² distance.
    pub fn l2_distance(&self, other: &Self) -> T {
        let d = |a: &[Cx<T>], b: &[Cx<T>]| a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).collect::<Vec<_>>();
        let mut terms = d(&self.psi_plus, &other.psi_plus);
        terms.extend(d(&self.psi_minus, &other.psi_minus));
        sum_real(terms).sqrt()
    }

    /// Largest componentwise modulus difference.
    pub fn max_deviation(&self, other: &Self) -> T {
        self.psi_plus
            .iter()
            .zip(&other.psi_plus)
            .chain(self.psi_minus.iter().zip(&other.psi_minus))
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// One-particle sector as a sparse state over {0, +, −}: symbol 1 marks a
    /// right-mover at the site, symbol 2 a left-mover.
    pub fn to_sparse(&self) -> SparseState<T> {
        let terms = (0..self.grid()).flat_map(|i| {
            [(1, self.psi_plus[i]), (2, self.psi_minus[i])]
                .into_iter()
                .map(move |(s, a)| (Configuration::line([(i as i64, s)]), a))
        });
        SparseState::from_terms(Alphabet::new(3).expect("3 ≥ 2"), 1, terms).expect("symbols < 3")
    }

    /// Inverse of [`Self::to_sparse`]; rejects states with any other configuration.
    pub fn from_sparse(state: &SparseState<T>, grid: usize) -> Result<Self> {
        if state.alphabet().size() != 3 || state.dim() != 1 {
            return Err(invalid("state", "expected a 1D state over a 3-symbol alphabet"));
        }
        let mut f = Self::zeros(grid)?;
        for (config, amp) in state.terms() {
            let cells: Vec<_> = config.iter().collect();
            let [(point, symbol)] = cells[..] else {
                return Err(invalid("state", format!("configuration {config} is not one-particle")));
            };
            let site = point[0];
            if site < 0 || site as usize >= grid {
                return Err(QcaError::OutOfWindow {
                    cell: point.to_vec(),
                    cells: grid,
                });
            }
            match symbol {
                1 => f.psi_plus[site as usize] = amp,
                _ => f.psi_minus[site as usize] = amp,
            }
        }
        Ok(f)
    }
}

/// One step of the Dirac walk with periodic wraparound.
pub fn walk_step<T: Real>(f: &WalkField<T>, params: DiracParams<T>) -> WalkField<T> {
    let (c, s) = params.coefficients();
    let m = f.grid();
    let is = Complex::new(T::zero(), s);
    let plus = (0..m)
        .map(|x| f.psi_plus[(x + m - 1) % m] * c - is * f.psi_minus[x])
        .collect();
    let minus = (0..m)
        .map(|x| f.psi_minus[(x + 1) % m] * c - is * f.psi_plus[x])
        .collect();
    WalkField {
        psi_plus: plus,
        psi_minus: minus,
    }
}

pub fn walk_evolve<T: Real>(f: &WalkField<T>, params: DiracParams<T>, steps: usize) -> WalkField<T> {
    let mut out = f.clone();
    for _ in 0..steps {
        out = walk_step(&out, params);
    }
    out
}
