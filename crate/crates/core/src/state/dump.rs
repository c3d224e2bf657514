//! Textual state dump: one line per term,
//! `(i₁,…,iₙ):symbol;…<TAB>re<TAB>im`, sorted by configuration.

use smallvec::SmallVec;

use super::{Alphabet, Configuration, SparseState};
use crate::error::{QcaError, Result};
use crate::scalar::{Cx, Real};

impl<T: Real> SparseState<T> {
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (c, a) in self.terms() {
            out.push_str(&format!(
                "{c}\t{:.16e}\t{:.16e}\n",
                a.re.to_f64_lossy(),
                a.im.to_f64_lossy()
            ));
        }
        out
    }

    pub fn parse_dump(alphabet: Alphabet, dim: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let err = |reason: &str| QcaError::Parse {
                line: n + 1,
                reason: reason.to_string(),
            };
            let mut fields = line.split('\t');
            let config = fields.next().ok_or_else(|| err("missing configuration"))?;
            let re: f64 = fields
                .next()
                .and_then(|f| f.trim().parse().ok())
                .ok_or_else(|| err("bad real part"))?;
            let im: f64 = fields
                .next()
                .and_then(|f| f.trim().parse().ok())
                .ok_or_else(|| err("bad imaginary part"))?;
            let mut cells = Vec::new();
            for entry in config.split(';').filter(|e| !e.is_empty()) {
                let (point, symbol) = entry
                    .strip_prefix('(')
                    .and_then(|e| e.split_once("):"))
                    .ok_or_else(|| err("cell entry must look like (i,…):s"))?;
                let point: SmallVec<[i64; 2]> = point
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| err("bad coordinate"))?;
                if point.len() != dim {
                    return Err(err("coordinate arity does not match lattice dimension"));
                }
                let symbol: u32 = symbol.trim().parse().map_err(|_| err("bad symbol"))?;
                cells.push((point, symbol));
            }
            terms.push((
                Configuration::from_cells(dim, cells),
                Cx::new(T::lit(re), T::lit(im)),
            ));
        }
        Self::from_terms(alphabet, dim, terms)
    }
}
