//! Party shapes, multi-indices and bipartitions.
//!
//! A state on `M` parties of local dimension `N` has `N^M` amplitudes laid out
//! row-major with party 0 varying slowest, so the flat position of the
//! multi-index `(i_0, …, i_{M−1})` is `Σ_k i_k N^{M−1−k}`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartyShape {
    parties: usize,
    local_dim: usize,
    dim: usize,
}

impl PartyShape {
    pub fn new(parties: usize, local_dim: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidShape {
            parties,
            local_dim,
            reason,
        };
        if parties < 2 {
            return Err(invalid("at least two parties are required"));
        }
        if local_dim < 2 {
            return Err(invalid("local dimension must be at least 2"));
        }
        // Bipartitions are enumerated as bit masks over parties 1..M.
        if parties > usize::BITS as usize {
            return Err(invalid("too many parties"));
        }
        let dim = u32::try_from(parties)
            .ok()
            .and_then(|m| local_dim.checked_pow(m))
            .ok_or_else(|| invalid("total dimension N^M overflows"))?;
        Ok(PartyShape {
            parties,
            local_dim,
            dim,
        })
    }

    /// Number of parties `M`.
    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Local dimension `N`.
    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    /// Total Hilbert-space dimension `N^M`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stride of party `k` in the flat layout.
    pub fn stride(&self, party: usize) -> usize {
        self.local_dim.pow((self.parties - 1 - party) as u32)
    }

    pub fn flat_index(&self, index: &MultiIndex) -> usize {
        debug_assert_eq!(index.0.len(), self.parties);
        index
            .0
            .iter()
            .fold(0, |acc, &digit| acc * self.local_dim + digit)
    }

    pub fn multi_index(&self, mut flat: usize) -> MultiIndex {
        let mut digits = vec![0; self.parties];
        for slot in digits.iter_mut().rev() {
            *slot = flat % self.local_dim;
            flat /= self.local_dim;
        }
        MultiIndex(digits)
    }

    /// Number of canonical bipartitions, `d = 2^(M−1) − 1`.
    pub fn num_bipartitions(&self) -> usize {
        (1usize << (self.parties - 1)) - 1
    }

    /// All canonical bipartitions in mask order. Position 0 always sits in `S`.
    pub fn bipartitions(&self) -> Vec<Bipartition> {
        (1..=self.num_bipartitions())
            .map(|mask| {
                let t = (1..self.parties)
                    .filter(|&k| mask & (1 << (k - 1)) != 0)
                    .collect();
                Bipartition::from_t_unchecked(self.parties, t)
            })
            .collect()
    }

    /// The `M` cuts that isolate one party each, in party order.
    pub fn single_party_cuts(&self) -> Vec<Bipartition> {
        (0..self.parties)
            .map(|k| Bipartition::new(self.parties, &[k]).expect("single party is a valid cut"))
            .collect()
    }
}

impl fmt::Display for PartyShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M={} N={}", self.parties, self.local_dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn new(shape: &PartyShape, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != shape.parties() {
            return Err(Error::LengthMismatch {
                expected: shape.parties(),
                found: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= shape.local_dim()) {
            return Err(Error::ShapeMismatch {
                expected: format!("entries below {}", shape.local_dim()),
                found: bad.to_string(),
            });
        }
        Ok(MultiIndex(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A split of the party positions into a nonempty strict subset `T` and its
/// complement `S`.
///
/// `(T, S)` and `(S, T)` produce the same equations and invariants, so the
/// canonical representative always puts position 0 in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    t: Vec<usize>,
    s: Vec<usize>,
}

impl Bipartition {
    /// Canonicalizing constructor.
    pub fn new(parties: usize, t_positions: &[usize]) -> Result<Self> {
        let mut t: Vec<usize> = t_positions.to_vec();
        t.sort_unstable();
        t.dedup();
        if t.iter().any(|&k| k >= parties) {
            return Err(Error::InvalidBipartition(format!(
                "position out of range for {parties} parties: {t_positions:?}"
            )));
        }
        if t.is_empty() || t.len() == parties {
            return Err(Error::InvalidBipartition(format!(
                "T must be a nonempty strict subset, got {t_positions:?}"
            )));
        }
        if t[0] == 0 {
            t = (0..parties).filter(|k| !t.contains(k)).collect();
        }
        Ok(Self::from_t_unchecked(parties, t))
    }

    fn from_t_unchecked(parties: usize, t: Vec<usize>) -> Self {
        let s = (0..parties).filter(|k| !t.contains(k)).collect();
        Bipartition { t, s }
    }

    pub fn t_positions(&self) -> &[usize] {
        &self.t
    }

    pub fn s_positions(&self) -> &[usize] {
        &self.s
    }

    pub fn parties(&self) -> usize {
        self.t.len() + self.s.len()
    }

    /// Index tables for matricizing a state of `shape` along this cut.
    pub fn layout(&self, shape: &PartyShape) -> Result<CutLayout> {
        if self.parties() != shape.parties() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} parties", shape.parties()),
                found: format!("bipartition over {} parties", self.parties()),
            });
        }
        let n = shape.local_dim();
        let rows = n.pow(self.t.len() as u32);
        let cols = n.pow(self.s.len() as u32);
        let mut row_of = vec![0; shape.dim()];
        let mut col_of = vec![0; shape.dim()];
        let mut flat_of = vec![0; shape.dim()];
        for flat in 0..shape.dim() {
            let digits = shape.multi_index(flat);
            let row = self.t.iter().fold(0, |acc, &k| acc * n + digits.0[k]);
            let col = self.s.iter().fold(0, |acc, &k| acc * n + digits.0[k]);
            row_of[flat] = row;
            col_of[flat] = col;
            flat_of[row * cols + col] = flat;
        }
        Ok(CutLayout {
            rows,
            cols,
            row_of,
            col_of,
            flat_of,
        })
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "T={{{}}}|S={{{}}}", join(&self.t), join(&self.s))
    }
}

/// Flat index ↔ (row over `T`, column over `S`) tables for one cut.
#[derive(Debug, Clone)]
pub struct CutLayout {
    pub rows: usize,
    pub cols: usize,
    row_of: Vec<usize>,
    col_of: Vec<usize>,
    flat_of: Vec<usize>,
}

impl CutLayout {
    pub fn split(&self, flat: usize) -> (usize, usize) {
        (self.row_of[flat], self.col_of[flat])
    }

    pub fn merge(&self, row: usize, col: usize) -> usize {
        self.flat_of[row * self.cols + col]
    }
}
