//! Stochastic channels (deletion, insertion, BSC, Z) with ground-truth
//! event positions, and exact single-channel likelihoods.
//!
//! The insertion channel inserts at most one symbol per gap: each of the
//! `|x| + 1` gaps independently receives, with probability `p`, exactly one
//! symbol drawn uniformly from the alphabet.

use crate::error::{Error, Result};
use crate::subseq;
use crate::word::{Symbol, Word};
use num_bigint::BigUint;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChannelFamily {
    Deletion,
    Insertion,
    Bsc,
    Z,
}

/// Channel family plus its parameter and alphabet. For the BSC the usual
/// operating regime is `p <= 1/2`; it is not enforced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelSpec {
    pub family: ChannelFamily,
    pub p: f64,
    pub q: u8,
}

impl ChannelSpec {
    pub fn new(family: ChannelFamily, p: f64, q: u8) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        if q < 2 {
            return Err(Error::InvalidAlphabet(q as u64));
        }
        if matches!(family, ChannelFamily::Bsc | ChannelFamily::Z) && q != 2 {
            return Err(Error::InvalidInput("BSC/Z channels require q = 2".into()));
        }
        Ok(ChannelSpec { family, p, q })
    }
}

/// One channel use with ground truth. `event_positions` are indices into
/// the input word: deleted indices, insertion gap indices in `0..=|x|`, or
/// flipped indices. `inserted_symbols` parallels the positions for the
/// insertion channel and is empty otherwise.
#[derive(Clone, Debug)]
pub struct TransmissionRecord {
    pub output: Word,
    pub event_positions: Vec<usize>,
    pub inserted_symbols: Vec<Symbol>,
}

pub fn transmit<R: Rng + ?Sized>(
    x: &Word,
    spec: &ChannelSpec,
    rng: &mut R,
) -> Result<TransmissionRecord> {
    if x.q() != spec.q {
        return Err(Error::AlphabetMismatch { left: x.q(), right: spec.q });
    }
    let p = spec.p;
    let n = x.len();
    let mut events = Vec::new();
    let mut inserted = Vec::new();
    let output = match spec.family {
        ChannelFamily::Deletion => {
            let mut out = Vec::with_capacity(n);
            for (i, &s) in x.symbols().iter().enumerate() {
                if rng.gen_bool(p) {
                    events.push(i);
                } else {
                    out.push(s);
                }
            }
            Word::new(out, spec.q)?
        }
        ChannelFamily::Insertion => {
            let mut out = Vec::with_capacity(n + 4);
            for gap in 0..=n {
                if rng.gen_bool(p) {
                    let s = rng.gen_range(0..spec.q);
                    events.push(gap);
                    inserted.push(s);
                    out.push(s);
                }
                if gap < n {
                    out.push(x.symbols()[gap]);
                }
            }
            Word::new(out, spec.q)?
        }
        ChannelFamily::Bsc => {
            let mut out = x.symbols().to_vec();
            for (i, s) in out.iter_mut().enumerate() {
                if rng.gen_bool(p) {
                    *s ^= 1;
                    events.push(i);
                }
            }
            Word::new(out, spec.q)?
        }
        ChannelFamily::Z => {
            let mut out = x.symbols().to_vec();
            for (i, s) in out.iter_mut().enumerate() {
                if *s == 0 && rng.gen_bool(p) {
                    *s = 1;
                    events.push(i);
                }
            }
            Word::new(out, spec.q)?
        }
    };
    Ok(TransmissionRecord { output, event_positions: events, inserted_symbols: inserted })
}

/// Exact probability that the deletion channel turns `x` into `y`:
/// `p^(|x|-|y|) (1-p)^|y| Emb(x; y)`.
pub fn likelihood_deletion(x: &Word, y: &Word, p: f64) -> Result<f64> {
    if y.len() > x.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let emb = subseq::embedding_number(x, y)?;
    let d = (x.len() - y.len()) as i32;
    Ok(p.powi(d) * (1.0 - p).powi(y.len() as i32) * biguint_to_f64(&emb))
}

/// The deletion decoding weight `p^(|x|-|y|) Emb(x; y)`. It drops the
/// survival factor `(1-p)^|y|`, which is constant at fixed lengths, so the
/// induced ranking matches the exact likelihood.
pub fn decoding_weight_deletion(x: &Word, y: &Word, p: f64) -> Result<f64> {
    if y.len() > x.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let emb = subseq::embedding_number(x, y)?;
    Ok(p.powi((x.len() - y.len()) as i32) * biguint_to_f64(&emb))
}

/// Exact probability that the one-insertion-per-gap channel turns `x` into
/// `y`: `(p/q)^k (1-p)^(|x|+1-k) R(x, y)` with `k = |y| - |x|`, where
/// `R(x, y)` counts the embeddings of `x` in `y` whose skipped positions
/// are pairwise non-adjacent (two skipped symbols in the same gap of `x`
/// cannot arise from one insertion each).
pub fn likelihood_insertion(x: &Word, y: &Word, p: f64) -> Result<f64> {
    if y.len() < x.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let k = y.len() - x.len();
    if k > x.len() + 1 {
        return Ok(0.0);
    }
    let q = x.q();
    if q != y.q() {
        return Err(Error::AlphabetMismatch { left: q, right: y.q() });
    }
    let r = gap_realization_count(x.symbols(), y.symbols());
    Ok((p / q as f64).powi(k as i32)
        * (1.0 - p).powi((x.len() + 1 - k) as i32)
        * biguint_to_f64(&r))
}

/// The insertion decoding weight `(p/q)^(|y|-|x|) Emb(y; x)`.
pub fn decoding_weight_insertion(x: &Word, y: &Word, p: f64) -> Result<f64> {
    if y.len() < x.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    let emb = subseq::embedding_number(y, x)?;
    Ok((p / x.q() as f64).powi((y.len() - x.len()) as i32) * biguint_to_f64(&emb))
}

/// Number of ways to realize `y` from `x` with at most one insertion per
/// gap: embeddings of `x` into `y` with no two adjacent skipped positions.
pub(crate) fn gap_realization_count(x: &[Symbol], y: &[Symbol]) -> BigUint {
    if x.len() > y.len() {
        return BigUint::from(0u8);
    }
    // ways[j][0]: x[..j] matched, previous y symbol was matched;
    // ways[j][1]: x[..j] matched, previous y symbol was an insertion.
    let big = |v: u64| BigUint::from(v);
    let mut ways = vec![[big(0), big(0)]; x.len() + 1];
    ways[0][0] = big(1);
    for &yc in y {
        let mut next = vec![[big(0), big(0)]; x.len() + 1];
        for (j, w) in ways.iter().enumerate() {
            let total = &w[0] + &w[1];
            if total == big(0) {
                continue;
            }
            if j < x.len() && x[j] == yc {
                next[j + 1][0] += &total;
            }
            // an inserted symbol may not directly follow another insertion
            next[j][1] += &w[0];
        }
        ways = next;
    }
    &ways[x.len()][0] + &ways[x.len()][1]
}

pub(crate) fn biguint_to_f64(v: &BigUint) -> f64 {
    if v.bits() <= 63 {
        v.iter_u64_digits().next().unwrap_or(0) as f64
    } else {
        subseq::ln_biguint(v).exp()
    }
}
