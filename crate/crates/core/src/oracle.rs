//! Brute-force reference implementations. Deliberately naive and guarded
//! by input-size checks; used as ground truth in tests and for fixture
//! generation from the CLI.

use crate::channel::{self, ChannelFamily, ChannelSpec};
use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};
use num_bigint::BigUint;

/// Embedding number by direct enumeration of index subsets.
pub fn embedding_by_enumeration(x: &Word, y: &Word) -> Result<BigUint> {
    if x.q() != y.q() {
        return Err(Error::AlphabetMismatch { left: x.q(), right: y.q() });
    }
    if x.len() > 20 {
        return Err(Error::SizeGuard(format!("2^{} subset walk", x.len())));
    }
    fn count(x: &[Symbol], y: &[Symbol]) -> u64 {
        if y.is_empty() {
            return 1;
        }
        if x.is_empty() {
            return 0;
        }
        // skip x[0], or match it against y[0]
        count(&x[1..], y) + if x[0] == y[0] { count(&x[1..], &y[1..]) } else { 0 }
    }
    Ok(BigUint::from(count(x.symbols(), y.symbols())))
}

fn scan_guard(q: u8, len: usize) -> Result<()> {
    let states = (q as f64).powi(len as i32);
    if states > (1u64 << 22) as f64 {
        return Err(Error::SizeGuard(format!("{q}^{len} word scan")));
    }
    Ok(())
}

fn greedy_is_subsequence(hay: &[Symbol], needle: &[Symbol]) -> bool {
    let mut i = 0;
    for &s in hay {
        if i < needle.len() && needle[i] == s {
            i += 1;
        }
    }
    i == needle.len()
}

fn all_words(q: u8, len: usize) -> impl Iterator<Item = Word> {
    let total = (q as u64).pow(len as u32);
    (0..total).map(move |mut v| {
        let mut syms = vec![0u8; len];
        for s in syms.iter_mut().rev() {
            *s = (v % q as u64) as u8;
            v /= q as u64;
        }
        Word::new(syms, q).expect("generated symbols are in range")
    })
}

/// All common supersequences of the given length by scanning every word.
pub fn supersequences_by_scan(y1: &Word, y2: &Word, len: usize) -> Result<Vec<Word>> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    scan_guard(y1.q(), len)?;
    Ok(all_words(y1.q(), len)
        .filter(|w| {
            greedy_is_subsequence(w.symbols(), y1.symbols())
                && greedy_is_subsequence(w.symbols(), y2.symbols())
        })
        .collect())
}

/// All common subsequences of the given length by scanning every word.
pub fn subsequences_by_scan(y1: &Word, y2: &Word, len: usize) -> Result<Vec<Word>> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    scan_guard(y1.q(), len)?;
    Ok(all_words(y1.q(), len)
        .filter(|w| {
            greedy_is_subsequence(y1.symbols(), w.symbols())
                && greedy_is_subsequence(y2.symbols(), w.symbols())
        })
        .collect())
}

/// Full ranking of every length-n word (optionally code-filtered) by its
/// exact joint likelihood, descending. `top_len` is the size of the
/// leading tie group.
#[derive(Clone, Debug)]
pub struct ScanRanking {
    pub ranked: Vec<(Word, f64)>,
    pub top_len: usize,
}

/// Bayes-optimal ranking by exhaustive scan. Deletion and insertion use
/// their exact channel laws; BSC and Z use the Hamming-based ones.
pub fn bayes_ml_by_scan(
    traces: &[Word],
    n: usize,
    spec: &ChannelSpec,
    code: &CodeSpec,
) -> Result<ScanRanking> {
    if traces.is_empty() {
        return Err(Error::InvalidInput("need at least one trace".into()));
    }
    for y in traces {
        if y.q() != spec.q {
            return Err(Error::AlphabetMismatch { left: spec.q, right: y.q() });
        }
    }
    scan_guard(spec.q, n)?;
    // Integer part of each likelihood (embedding or realization counts);
    // the scalar channel factors are shared by every candidate, so exact
    // tie grouping can use the count products.
    let mut entries: Vec<(Word, f64, Option<BigUint>)> = Vec::new();
    for c in all_words(spec.q, n) {
        if !code.matches(c.symbols()) {
            continue;
        }
        let mut prob = 1.0;
        let mut counts: Option<BigUint> = Some(BigUint::from(1u8));
        for y in traces {
            match spec.family {
                ChannelFamily::Deletion => {
                    if y.len() > n {
                        return Err(Error::LengthMismatch { left: n, right: y.len() });
                    }
                    prob *= channel::likelihood_deletion(&c, y, spec.p)?;
                    counts = counts
                        .map(|acc| acc * crate::subseq::embedding_number(&c, y).unwrap());
                }
                ChannelFamily::Insertion => {
                    if y.len() < n {
                        return Err(Error::LengthMismatch { left: n, right: y.len() });
                    }
                    prob *= channel::likelihood_insertion(&c, y, spec.p)?;
                    counts = counts.map(|acc| {
                        acc * channel::gap_realization_count(c.symbols(), y.symbols())
                    });
                }
                ChannelFamily::Bsc => {
                    if y.len() != n {
                        return Err(Error::LengthMismatch { left: n, right: y.len() });
                    }
                    let d = crate::word::hamming_distance(&c, y)? as i32;
                    prob *= spec.p.powi(d) * (1.0 - spec.p).powi(n as i32 - d);
                    counts = None;
                }
                ChannelFamily::Z => {
                    if y.len() != n {
                        return Err(Error::LengthMismatch { left: n, right: y.len() });
                    }
                    let mut flips = 0i32;
                    let mut kept_zeros = 0i32;
                    let mut feasible = true;
                    for (&a, &b) in c.symbols().iter().zip(y.symbols()) {
                        match (a, b) {
                            (0, 1) => flips += 1,
                            (0, 0) => kept_zeros += 1,
                            (1, 0) => feasible = false,
                            _ => {}
                        }
                    }
                    prob *= if feasible {
                        spec.p.powi(flips) * (1.0 - spec.p).powi(kept_zeros)
                    } else {
                        0.0
                    };
                    counts = None;
                }
            }
        }
        entries.push((c, prob, counts));
    }
    // Sort by probability descending; group ties exactly via the count
    // products where available, falling back to float equality.
    entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(std::cmp::Ordering::Equal));
    let top_len = match entries.first() {
        None => 0,
        Some((_, p0, c0)) => entries
            .iter()
            .take_while(|(_, p, c)| match (c0, c) {
                (Some(c0), Some(c)) => c == c0,
                _ => p == p0,
            })
            .count(),
    };
    Ok(ScanRanking { ranked: entries.into_iter().map(|(w, p, _)| (w, p)).collect(), top_len })
}
