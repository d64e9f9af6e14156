//! Maximum-likelihood reconstruction of a word from t noisy traces.
//!
//! For deletion channels the candidates are common supersequences of the
//! traces and a candidate is scored by the product of its embedding counts
//! against each trace; for insertion channels the candidates are common
//! subsequences scored by the embedding counts of each trace against the
//! candidate. Length powers of the channel parameter are constant across
//! candidates of one length and drop out of the comparison.
//!
//! Two candidate domains are provided: `ml_decode_*` fixes the candidate
//! length to a known transmitted length n (the coded setting, where the
//! code also filters the set), and `ml_decode_deletion_scs` /
//! `ml_decode_insertion_lcs` use the extremal feasible length (SCS length,
//! resp. LCS length), which is where the length-weighted likelihood puts
//! the argmax for small channel parameters; run errors then surface as
//! shortened (lengthened) outputs.

use crate::codes::CodeSpec;
use crate::error::{Error, Result};
use crate::subseq::{
    self, embedding_number_slices, enumerate_subsequences_filtered,
    enumerate_supersequences_filtered, fits_f64_exact, ln_biguint, CandidateSet, EnumLimits,
};
use crate::word::{Symbol, Word};
use num_bigint::BigUint;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieRule {
    /// Pick uniformly among the maximal-score candidates.
    UniformRandom,
    /// Pick the lexicographically smallest maximal candidate.
    LexicographicMin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Ok,
    TieBroken,
    NoCandidate,
    CandidateOverflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Deletion,
    Insertion,
}

/// Enumeration limits for one decode call.
pub type DecodeLimits = EnumLimits;

#[derive(Clone, Debug)]
pub struct DecodeResult {
    pub chosen: Option<Word>,
    pub candidates: CandidateSet,
    /// Log-score per candidate, parallel to `candidates.words`.
    pub scores_log: Vec<f64>,
    /// Indices of the candidates attaining the maximal score.
    pub argmax: Vec<usize>,
    pub top_score_log: f64,
    /// Number of candidates attaining the maximal score; 0 iff there are
    /// no candidates.
    pub tie_size: usize,
    pub status: DecodeStatus,
}

const LOG_TIE_RTOL: f64 = 1e-12;

fn no_candidate(candidates: CandidateSet, status: DecodeStatus) -> DecodeResult {
    DecodeResult {
        chosen: None,
        candidates,
        scores_log: Vec::new(),
        argmax: Vec::new(),
        top_score_log: f64::NEG_INFINITY,
        tie_size: 0,
        status,
    }
}

/// Per-trace embedding factors and the combined score of one candidate.
/// Factors within f64's exact-integer range are compared in log space with
/// relative tolerance 1e-12; once any factor exceeds 2^52 the comparison
/// switches to exact big-integer products.
pub fn score_candidate(c: &Word, traces: &[Word], direction: Direction) -> Result<(f64, BigUint)> {
    for y in traces {
        if y.q() != c.q() {
            return Err(Error::AlphabetMismatch { left: c.q(), right: y.q() });
        }
    }
    let mut log = 0.0;
    let mut exact = BigUint::from(1u8);
    for y in traces {
        let f = match direction {
            Direction::Deletion => embedding_number_slices(c.symbols(), y.symbols()),
            Direction::Insertion => embedding_number_slices(y.symbols(), c.symbols()),
        };
        log += ln_biguint(&f);
        exact *= &f;
    }
    Ok((log, exact))
}

struct Ranked {
    scores_log: Vec<f64>,
    argmax: Vec<usize>,
    top: f64,
}

fn rank(cands: &[Word], traces: &[Word], direction: Direction) -> Result<Ranked> {
    let mut scores_log = Vec::with_capacity(cands.len());
    let mut exacts: Vec<BigUint> = Vec::with_capacity(cands.len());
    let mut all_small = true;
    for c in cands {
        let mut factors = Vec::with_capacity(traces.len());
        for y in traces {
            let f = match direction {
                Direction::Deletion => embedding_number_slices(c.symbols(), y.symbols()),
                Direction::Insertion => embedding_number_slices(y.symbols(), c.symbols()),
            };
            all_small &= fits_f64_exact(&f);
            factors.push(f);
        }
        let mut log = 0.0;
        let mut exact = BigUint::from(1u8);
        for f in &factors {
            log += ln_biguint(f);
            exact *= f;
        }
        scores_log.push(log);
        exacts.push(exact);
    }
    let argmax = if all_small {
        let top = scores_log.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let tol = LOG_TIE_RTOL * top.abs().max(1.0);
        scores_log
            .iter()
            .enumerate()
            .filter(|(_, &s)| top - s <= tol)
            .map(|(i, _)| i)
            .collect()
    } else {
        let top = exacts.iter().max().cloned().expect("nonempty candidates");
        exacts
            .iter()
            .enumerate()
            .filter(|(_, e)| **e == top)
            .map(|(i, _)| i)
            .collect()
    };
    let top = scores_log.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Ranked { scores_log, argmax, top })
}

fn finish<R: Rng + ?Sized>(
    candidates: CandidateSet,
    traces: &[Word],
    direction: Direction,
    tie: TieRule,
    rng: &mut R,
) -> Result<DecodeResult> {
    if candidates.truncated {
        return Ok(no_candidate(candidates, DecodeStatus::CandidateOverflow));
    }
    if candidates.is_empty() {
        return Ok(no_candidate(candidates, DecodeStatus::NoCandidate));
    }
    let ranked = rank(&candidates.words, traces, direction)?;
    let tie_size = ranked.argmax.len();
    let pick = match tie {
        _ if tie_size == 1 => ranked.argmax[0],
        TieRule::UniformRandom => ranked.argmax[rng.gen_range(0..tie_size)],
        TieRule::LexicographicMin => {
            // candidates are produced in lexicographic order already
            ranked.argmax[0]
        }
    };
    let status = if tie_size == 1 { DecodeStatus::Ok } else { DecodeStatus::TieBroken };
    Ok(DecodeResult {
        chosen: Some(candidates.words[pick].clone()),
        scores_log: ranked.scores_log,
        argmax: ranked.argmax,
        top_score_log: ranked.top,
        tie_size,
        status,
        candidates,
    })
}

fn validate_traces(traces: &[Word]) -> Result<()> {
    if traces.is_empty() {
        return Err(Error::InvalidInput("decoder needs at least one trace".into()));
    }
    let q = traces[0].q();
    for y in traces {
        if y.q() != q {
            return Err(Error::AlphabetMismatch { left: q, right: y.q() });
        }
    }
    Ok(())
}

/// Indices of the two shortest traces (ties by position).
fn two_shortest(traces: &[Word]) -> (usize, usize) {
    let mut order: Vec<usize> = (0..traces.len()).collect();
    order.sort_by_key(|&i| (traces[i].len(), i));
    (order[0], order[1.min(order.len() - 1)])
}

fn rest_filter<'a>(
    traces: &'a [Word],
    skip: (usize, usize),
    code: &'a CodeSpec,
    direction: Direction,
) -> impl Fn(&[Symbol]) -> bool + 'a {
    move |w: &[Symbol]| {
        if !code.matches(w) {
            return false;
        }
        traces.iter().enumerate().all(|(i, y)| {
            if i == skip.0 || i == skip.1 {
                return true;
            }
            match direction {
                Direction::Deletion => subseq::is_subsequence_slices(w, y.symbols()),
                Direction::Insertion => subseq::is_subsequence_slices(y.symbols(), w),
            }
        })
    }
}

/// ML decode over t deletion channels with a known transmitted length `n`:
/// candidates are the common supersequences of the traces of length
/// exactly n, optionally restricted to a code, scored by the product of
/// embedding counts.
pub fn ml_decode_deletion<R: Rng + ?Sized>(
    traces: &[Word],
    n: usize,
    code: &CodeSpec,
    tie: TieRule,
    limits: &DecodeLimits,
    rng: &mut R,
) -> Result<DecodeResult> {
    validate_traces(traces)?;
    for y in traces {
        if y.len() > n {
            return Err(Error::LengthMismatch { left: n, right: y.len() });
        }
    }
    if let Some(cn) = code.word_len() {
        if cn != n {
            return Err(Error::InvalidInput(format!("code length {cn} != n = {n}")));
        }
    }
    let (i, j) = two_shortest(traces);
    let filter = rest_filter(traces, (i, j), code, Direction::Deletion);
    let cands = match enumerate_supersequences_filtered(
        &traces[i],
        &traces[j],
        n,
        *limits,
        Some(&filter),
    ) {
        Ok(c) => c,
        Err(Error::LengthBelowScs { .. }) => CandidateSet { words: Vec::new(), truncated: false },
        Err(e) => return Err(e),
    };
    finish(cands, traces, Direction::Deletion, tie, rng)
}

/// ML decode over t insertion channels with a known transmitted length:
/// candidates are the common subsequences of the traces of length exactly
/// n.
pub fn ml_decode_insertion<R: Rng + ?Sized>(
    traces: &[Word],
    n: usize,
    code: &CodeSpec,
    tie: TieRule,
    limits: &DecodeLimits,
    rng: &mut R,
) -> Result<DecodeResult> {
    validate_traces(traces)?;
    for y in traces {
        if y.len() < n {
            return Err(Error::LengthMismatch { left: n, right: y.len() });
        }
    }
    if let Some(cn) = code.word_len() {
        if cn != n {
            return Err(Error::InvalidInput(format!("code length {cn} != n = {n}")));
        }
    }
    let (i, j) = two_shortest(traces);
    let filter = rest_filter(traces, (i, j), code, Direction::Insertion);
    let cands =
        enumerate_subsequences_filtered(&traces[i], &traces[j], n, *limits, Some(&filter))?;
    finish(cands, traces, Direction::Insertion, tie, rng)
}

/// ML decode over deletion channels without a known length: candidates
/// live at the SCS length of the two shortest traces (the argmax of the
/// length-weighted likelihood for small deletion probability). With more
/// than two traces the length grows until the filtered set is nonempty.
pub fn ml_decode_deletion_scs<R: Rng + ?Sized>(
    traces: &[Word],
    tie: TieRule,
    limits: &DecodeLimits,
    rng: &mut R,
) -> Result<DecodeResult> {
    validate_traces(traces)?;
    let (i, j) = two_shortest(traces);
    let code = CodeSpec::None;
    let filter = rest_filter(traces, (i, j), &code, Direction::Deletion);
    let (cands, mut len) = subseq::enumerate_scs_set(&traces[i], &traces[j], *limits, Some(&filter))?;
    if !cands.is_empty() || cands.truncated || traces.len() <= 2 {
        return finish(cands, traces, Direction::Deletion, tie, rng);
    }
    // with three or more traces the pairwise SCS length may be infeasible
    // for the rest; grow until the filtered set is nonempty
    let max_len: usize = traces.iter().map(Word::len).sum::<usize>().max(len);
    loop {
        len += 1;
        let cands = enumerate_supersequences_filtered(
            &traces[i],
            &traces[j],
            len,
            *limits,
            Some(&filter),
        )?;
        if !cands.is_empty() || cands.truncated || len >= max_len {
            return finish(cands, traces, Direction::Deletion, tie, rng);
        }
    }
}

/// ML decode over insertion channels without a known length: candidates
/// live at the LCS length of the two shortest traces.
pub fn ml_decode_insertion_lcs<R: Rng + ?Sized>(
    traces: &[Word],
    tie: TieRule,
    limits: &DecodeLimits,
    rng: &mut R,
) -> Result<DecodeResult> {
    validate_traces(traces)?;
    let (i, j) = two_shortest(traces);
    let code = CodeSpec::None;
    let filter = rest_filter(traces, (i, j), &code, Direction::Insertion);
    let (cands, mut len) = subseq::enumerate_lcs_set(&traces[i], &traces[j], *limits, Some(&filter))?;
    if !cands.is_empty() || cands.truncated || traces.len() <= 2 || len == 0 {
        return finish(cands, traces, Direction::Insertion, tie, rng);
    }
    loop {
        len -= 1;
        let cands = enumerate_subsequences_filtered(
            &traces[i],
            &traces[j],
            len,
            *limits,
            Some(&filter),
        )?;
        if !cands.is_empty() || cands.truncated || len == 0 {
            return finish(cands, traces, Direction::Insertion, tie, rng);
        }
    }
}
