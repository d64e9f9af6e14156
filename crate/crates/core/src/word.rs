//! q-ary words: representation, text format, run decomposition and distances.
//!
//! Words are sequences of symbols in `0..q` with `2 <= q <= 255`. The text
//! format is a digit string for `q <= 10` and comma-separated integers for
//! larger alphabets.

use crate::error::{Error, Result};
use crate::subseq;

pub type Symbol = u8;

/// A word over the alphabet `{0, .., q-1}`. The empty word is valid.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    q: u8,
    syms: Vec<Symbol>,
}

impl Word {
    pub fn new(syms: Vec<Symbol>, q: u8) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidAlphabet(q as u64));
        }
        if let Some(&s) = syms.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidSymbol { symbol: s as u64, q });
        }
        Ok(Word { q, syms })
    }

    pub fn empty(q: u8) -> Self {
        Word { q, syms: Vec::new() }
    }

    /// Word from a binary bit slice (0/1), q = 2.
    pub fn binary(bits: &[Symbol]) -> Result<Self> {
        Word::new(bits.to_vec(), 2)
    }

    pub fn len(&self) -> usize {
        self.syms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.syms
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.syms.get(i).copied()
    }

    /// New word with `sym` inserted so that it occupies position `at`.
    pub fn insert(&self, at: usize, sym: Symbol) -> Result<Word> {
        if at > self.len() {
            return Err(Error::IndexOutOfRange { index: at, len: self.len() });
        }
        if sym >= self.q {
            return Err(Error::InvalidSymbol { symbol: sym as u64, q: self.q });
        }
        let mut syms = Vec::with_capacity(self.len() + 1);
        syms.extend_from_slice(&self.syms[..at]);
        syms.push(sym);
        syms.extend_from_slice(&self.syms[at..]);
        Ok(Word { q: self.q, syms })
    }

    /// New word with position `at` removed.
    pub fn delete(&self, at: usize) -> Result<Word> {
        if at >= self.len() {
            return Err(Error::IndexOutOfRange { index: at, len: self.len() });
        }
        let mut syms = self.syms.clone();
        syms.remove(at);
        Ok(Word { q: self.q, syms })
    }

    /// Parse from text. Digit string for small alphabets, comma-separated
    /// integers otherwise; whitespace is ignored. With `q = None` the
    /// alphabet size is inferred as `max symbol + 1` (at least 2).
    pub fn parse(text: &str, q: Option<u8>) -> Result<Word> {
        let text = text.trim();
        let mut syms: Vec<u64> = Vec::new();
        if text.contains(',') {
            for part in text.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let v: u64 = part
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad symbol {part:?}")))?;
                syms.push(v);
            }
        } else {
            for ch in text.chars() {
                if ch.is_whitespace() {
                    continue;
                }
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::InvalidInput(format!("bad digit {ch:?}")))?;
                syms.push(d as u64);
            }
        }
        let q = match q {
            Some(q) => q,
            None => {
                let max = syms.iter().copied().max().unwrap_or(1);
                if max >= 255 {
                    return Err(Error::InvalidAlphabet(max + 1));
                }
                ((max + 1).max(2)) as u8
            }
        };
        let bytes = syms
            .iter()
            .map(|&v| {
                if v >= q as u64 {
                    Err(Error::InvalidSymbol { symbol: v, q })
                } else {
                    Ok(v as u8)
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Word::new(bytes, q)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q <= 10 {
            for &s in &self.syms {
                write!(f, "{s}")?;
            }
        } else {
            let mut first = true;
            for &s in &self.syms {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self} (q={})", self.q)
    }
}

/// One maximal run of equal symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub symbol: Symbol,
    pub len: usize,
    pub start: usize,
}

/// Maximal-run decomposition of a word. Adjacent runs have distinct symbols
/// and the run lengths sum to the word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunDecomposition {
    pub runs: Vec<Run>,
}

impl RunDecomposition {
    /// Concatenate the runs back into a word.
    pub fn expand(&self, q: u8) -> Result<Word> {
        let mut syms = Vec::new();
        for r in &self.runs {
            syms.extend(std::iter::repeat(r.symbol).take(r.len));
        }
        Word::new(syms, q)
    }
}

pub fn run_decompose(w: &Word) -> RunDecomposition {
    let mut runs = Vec::new();
    let syms = w.symbols();
    let mut i = 0;
    while i < syms.len() {
        let mut j = i + 1;
        while j < syms.len() && syms[j] == syms[i] {
            j += 1;
        }
        runs.push(Run { symbol: syms[i], len: j - i, start: i });
        i = j;
    }
    RunDecomposition { runs }
}

/// Minimum number of insertions and deletions transforming `x` into `y`
/// (substitutions are not allowed moves): `|x| + |y| - 2*LCS(x, y)`.
pub fn indel_distance(x: &Word, y: &Word) -> Result<usize> {
    if x.q() != y.q() {
        return Err(Error::AlphabetMismatch { left: x.q(), right: y.q() });
    }
    let l = subseq::lcs_length(x, y)?;
    Ok(x.len() + y.len() - 2 * l)
}

/// Number of differing positions; requires equal lengths.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    if x.q() != y.q() {
        return Err(Error::AlphabetMismatch { left: x.q(), right: y.q() });
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    Ok(x.symbols()
        .iter()
        .zip(y.symbols())
        .filter(|(a, b)| a != b)
        .count())
}

/// True iff the word has length >= 2, uses exactly two distinct symbols
/// A != B, and reads ABAB... This is the alternation notion behind the
/// two-channel ambiguity analysis.
pub fn is_two_symbol_alternation(w: &Word) -> bool {
    is_two_symbol_alternation_slice(w.symbols())
}

pub(crate) fn is_two_symbol_alternation_slice(seg: &[Symbol]) -> bool {
    if seg.len() < 2 || seg[0] == seg[1] {
        return false;
    }
    seg.windows(2).all(|w| w[0] != w[1]) && (2..seg.len()).all(|i| seg[i] == seg[i - 2])
}

/// Subsequence of `w` at the given strictly increasing index set.
pub fn projection(w: &Word, indices: &[usize]) -> Result<Word> {
    let mut syms = Vec::with_capacity(indices.len());
    let mut prev: Option<usize> = None;
    for &i in indices {
        if i >= w.len() {
            return Err(Error::IndexOutOfRange { index: i, len: w.len() });
        }
        if let Some(p) = prev {
            if i <= p {
                return Err(Error::InvalidInput(format!(
                    "index set not strictly increasing at {i}"
                )));
            }
        }
        syms.push(w.symbols()[i]);
        prev = Some(i);
    }
    Word::new(syms, w.q())
}
