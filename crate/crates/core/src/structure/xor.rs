//! The XOR automaton over Σ = {0, t, f}: F(c)ᵢ = cᵢ + cᵢ₊₁ where f and t add
//! as the bits 0 and 1, a + 0 = a and 0 + a = 0.
//!
//! The printed rule for "+" has t + t = t, which would make ff…f and tt…t
//! images coincide; XOR is the reading under which the automaton is
//! injective and the signalling images come out as stated.

use std::fmt;

use num_complex::Complex;

use crate::error::{invalid, QcaError, Result};
use crate::operator::{DenseOperator, DensityMatrix};
use crate::scalar::{max_deviation, Cx, Real};
use crate::state::{Alphabet, RingSpace, Symbol};

/// Symbol index of f (the XOR zero).
pub const SYMBOL_F: Symbol = 1;
/// Symbol index of t (the XOR one).
pub const SYMBOL_T: Symbol = 2;

pub fn xor_add(a: Symbol, b: Symbol) -> Symbol {
    match (a, b) {
        (0, _) => 0,
        (a, 0) => a,
        (a, b) if a == b => SYMBOL_F,
        _ => SYMBOL_T,
    }
}

/// One step on a window padded with quiescent cells on both sides. The cell
/// left of the window maps to 0 + c₀ = 0, so the window is closed.
pub fn xor_step_window(cells: &[Symbol]) -> Vec<Symbol> {
    (0..cells.len())
        .map(|i| xor_add(cells[i], cells.get(i + 1).copied().unwrap_or(0)))
        .collect()
}

/// A finite word over {0, t, f} placed at `start`, trimmed of quiescent ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorWord {
    start: i64,
    symbols: Vec<Symbol>,
}

impl XorWord {
    pub fn new(start: i64, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| s > SYMBOL_T) {
            return Err(QcaError::SymbolOutOfRange { symbol: s, size: 3 });
        }
        Ok(Self::trimmed(start, symbols))
    }

    fn trimmed(mut start: i64, mut symbols: Vec<Symbol>) -> Self {
        while symbols.last() == Some(&0) {
            symbols.pop();
        }
        let lead = symbols.iter().take_while(|&&s| s == 0).count();
        symbols.drain(..lead);
        start += lead as i64;
        if symbols.is_empty() {
            start = 0;
        }
        Self { start, symbols }
    }

    /// Parses a word of `0`, `t`, `f` characters starting at cell 0.
    pub fn parse(text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(0),
                'f' => Ok(SYMBOL_F),
                't' => Ok(SYMBOL_T),
                other => Err(invalid("word", format!("unexpected symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(0, symbols)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for XorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            let c = match s {
                0 => '0',
                SYMBOL_F => 'f',
                _ => 't',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// One step of the XOR automaton on the infinite line. The support never grows:
/// the right edge stays put and the left edge may retract.
pub fn xor_ca_step(word: &XorWord) -> XorWord {
    XorWord::trimmed(word.start, xor_step_window(&word.symbols))
}

/// A classical step lifted to a permutation of a window's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalLift {
    space: RingSpace,
    images: Vec<usize>,
}

impl ClassicalLift {
    pub fn space(&self) -> &RingSpace {
        &self.space
    }

    /// Basis index of F(c) for each basis index c.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_operator<S: Real>(&self) -> DenseOperator<S> {
        let mut op = DenseOperator::zeros(self.space);
        for (j, &i) in self.images.iter().enumerate() {
            op.set(i, j, Complex::new(S::one(), S::zero()));
        }
        op
    }

    /// F̂ v without forming the matrix.
    pub fn apply<S: Real>(&self, v: &[Cx<S>]) -> Result<Vec<Cx<S>>> {
        if v.len() != self.images.len() {
            return Err(QcaError::DimensionMismatch {
                expected: self.images.len(),
                found: v.len(),
            });
        }
        let mut out = vec![Complex::new(S::zero(), S::zero()); v.len()];
        for (j, &i) in self.images.iter().enumerate() {
            out[i] = v[j];
        }
        Ok(out)
    }
}

/// Tabulates `step` over every word of a length-`cells` window; fails when a
/// word leaves the window or two words share an image.
pub fn lift_permutation(step: impl Fn(&[Symbol]) -> Vec<Symbol>, cells: usize, alphabet: Alphabet) -> Result<ClassicalLift> {
    let space = RingSpace::window(cells, alphabet.size())?;
    let mut preimage: Vec<Option<usize>> = vec![None; space.dim()];
    let mut images = Vec::with_capacity(space.dim());
    for j in 0..space.dim() {
        let word: Vec<Symbol> = space.digits(j).into_iter().map(|s| s as Symbol).collect();
        let image = step(&word);
        if image.len() != cells || image.iter().any(|&s| s as usize >= alphabet.size()) {
            return Err(QcaError::LeavesWindow { word });
        }
        let i = space.index_of(&image.iter().map(|&s| s as usize).collect::<Vec<_>>());
        if let Some(first) = preimage[i] {
            let to_word = |k: usize| space.digits(k).into_iter().map(|s| s as Symbol).collect();
            return Err(QcaError::NotInjective {
                first: to_word(first),
                second: word,
                image,
            });
        }
        preimage[i] = Some(j);
        images.push(i);
    }
    Ok(ClassicalLift { space, images })
}

/// The 0/1 matrix of `step` on the window's basis; a permutation matrix when
/// the step is injective.
pub fn lift_classical<S: Real>(step: impl Fn(&[Symbol]) -> Vec<Symbol>, cells: usize, alphabet: Alphabet) -> Result<DenseOperator<S>> {
    Ok(lift_permutation(step, cells, alphabet)?.to_operator())
}

/// ⊗ₓ u on a space, for a single-cell matrix u.
pub fn product_unitary<S: Real>(space: RingSpace, u: &DenseOperator<S>) -> Result<DenseOperator<S>> {
    if u.dim() != space.local_dim() {
        return Err(QcaError::DimensionMismatch {
            expected: space.local_dim(),
            found: u.dim(),
        });
    }
    Ok(DenseOperator::from_fn(space, |i, j| {
        let (di, dj) = (space.digits(i), space.digits(j));
        di.iter()
            .zip(&dj)
            .fold(Complex::new(S::one(), S::zero()), |acc, (&a, &b)| acc * u.get(a, b))
    }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignallingReport<S: Real> {
    pub length: usize,
    /// Trace distance of Bob's marginals for |c⁺⟩, |c⁻⟩ before the step.
    pub before: S,
    /// The same after one step of F̂.
    pub after: S,
    /// max |Z_Alice|c⁺⟩ − |c⁻⟩|.
    pub phase_gate_defect: S,
}

/// Alice holds cell 0 and Bob cell L − 1 of |c±⟩ = (|f…f⟩ ± |t…t⟩)/√2.
pub fn signalling_demo<S: Real>(length: usize) -> Result<SignallingReport<S>> {
    if length < 3 {
        return Err(invalid("length", "must be at least 3"));
    }
    let lift = lift_permutation(xor_step_window, length, Alphabet::new(3)?)?;
    let space = *lift.space();
    let fs = space.index_of(&vec![SYMBOL_F as usize; length]);
    let ts = space.index_of(&vec![SYMBOL_T as usize; length]);
    let h = S::FRAC_1_SQRT_2();
    let cat = |sign: S| {
        let mut v = vec![Complex::new(S::zero(), S::zero()); space.dim()];
        v[fs] = Complex::new(h, S::zero());
        v[ts] = Complex::new(sign * h, S::zero());
        v
    };
    let (plus, minus) = (cat(S::one()), cat(-S::one()));
    let bob = [length - 1];
    let distance = |a: &[Cx<S>], b: &[Cx<S>]| -> Result<S> {
        DensityMatrix::reduced_from_vector(&space, a, &bob)?.trace_distance(&DensityMatrix::reduced_from_vector(&space, b, &bob)?)
    };
    let before = distance(&plus, &minus)?;
    let after = distance(&lift.apply(&plus)?, &lift.apply(&minus)?)?;
    // Z on Alice's cell: |t⟩ → −|t⟩, |f⟩ and |0⟩ fixed.
    let mut zd = plus.clone();
    for (i, z) in zd.iter_mut().enumerate() {
        if space.digit(i, 0) == SYMBOL_T as usize {
            *z = -*z;
        }
    }
    Ok(SignallingReport {
        length,
        before,
        after,
        phase_gate_defect: max_deviation(&zd, &minus),
    })
}
