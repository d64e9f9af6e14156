//! Embedding numbers, LCS/SCS lengths, and enumeration of the distinct
//! common supersequences (resp. subsequences) of two words at a fixed
//! target length.
//!
//! The enumerations walk a deterministic automaton whose state is the pair
//! of greedy matching positions in the two input words, so every distinct
//! output word corresponds to exactly one path. Infeasible branches are cut
//! with a suffix-LCS table restricted to a diagonal band of width
//! `d1 + d2`, where `d_i` is the length surplus (deficit) of input `i`
//! against the target length; completable states never leave that band.

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};
use num_bigint::BigUint;

/// Distinct words of one common length, with a flag set when an
/// enumeration cap was hit and the set is incomplete.
#[derive(Clone, Debug)]
pub struct CandidateSet {
    pub words: Vec<Word>,
    pub truncated: bool,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Caps for candidate enumeration: `cap` bounds the distinct-set size,
/// `max_steps` bounds the lattice walk itself. Hitting either marks the
/// result truncated.
#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    pub cap: usize,
    pub max_steps: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { cap: 1_000_000, max_steps: 2_000_000 }
    }
}

/// True iff `y` embeds in `x` as a subsequence (greedy left-to-right match).
pub fn is_subsequence(x: &Word, y: &Word) -> bool {
    is_subsequence_slices(x.symbols(), y.symbols())
}

pub(crate) fn is_subsequence_slices(x: &[Symbol], y: &[Symbol]) -> bool {
    let mut it = x.iter();
    y.iter().all(|s| it.any(|t| t == s))
}

/// Length of the longest common subsequence.
pub fn lcs_length(a: &Word, b: &Word) -> Result<usize> {
    if a.q() != b.q() {
        return Err(Error::AlphabetMismatch { left: a.q(), right: b.q() });
    }
    Ok(lcs_length_slices(a.symbols(), b.symbols()))
}

/// Adaptive banded LCS: a band of half-width `band` is exact whenever the
/// indel distance it implies fits inside the band, so start near the
/// length difference and escalate on demand. Exact for all inputs, fast
/// when the words are close.
pub(crate) fn lcs_length_slices(a: &[Symbol], b: &[Symbol]) -> usize {
    let mut band = a.len().abs_diff(b.len()) + 16;
    loop {
        if band >= a.len() + b.len() {
            return lcs_full(a, b);
        }
        let l = lcs_banded_once(a, b, band);
        if a.len() + b.len() - 2 * l <= band {
            return l;
        }
        band *= 2;
    }
}

pub(crate) fn indel_distance_slices(a: &[Symbol], b: &[Symbol]) -> usize {
    a.len() + b.len() - 2 * lcs_length_slices(a, b)
}

fn lcs_full(a: &[Symbol], b: &[Symbol]) -> usize {
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut row = vec![0usize; short.len() + 1];
    for &cl in long {
        let mut diag = 0;
        for (j, &cs) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if cl == cs { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()]
}

fn lcs_banded_once(a: &[Symbol], b: &[Symbol], band: usize) -> usize {
    // forward LCS over |i - j| <= band, row-compressed with one padding
    // slot per side: slot o holds column j = i + o - band - 1, so both
    // band-edge neighbors read zeros. The leftward in-row neighbor is
    // carried through the ascending loop.
    let width = 2 * band + 3;
    let mut prev = vec![0usize; width];
    let mut cur = vec![0usize; width];
    for i in 1..=a.len() {
        let jlo = (i.saturating_sub(band)).max(1);
        let jhi = (i + band).min(b.len());
        if jlo > jhi {
            cur.fill(0);
            std::mem::swap(&mut prev, &mut cur);
            continue;
        }
        let ai = a[i - 1];
        let o1 = jlo + band + 1 - i;
        let len = jhi - jlo + 1;
        let mut left = 0usize;
        {
            let pdiag = &prev[o1..o1 + len];
            let pup = &prev[o1 + 1..o1 + 1 + len];
            let bseg = &b[jlo - 1..jhi];
            let dst = &mut cur[o1..o1 + len];
            for idx in 0..len {
                // dp(i, j) = max(up, left, diag + eq): valid because a
                // match never loses to the gap moves
                let v = (pdiag[idx] + (ai == bseg[idx]) as usize).max(pup[idx]).max(left);
                dst[idx] = v;
                left = v;
            }
        }
        // zero the padding and any cells outside this row's span
        cur[..o1].fill(0);
        cur[o1 + len..].fill(0);
        std::mem::swap(&mut prev, &mut cur);
    }
    match (b.len() + band + 1).checked_sub(a.len()) {
        Some(o) if o < width => prev[o],
        _ => 0,
    }
}

/// Length of the shortest common supersequence: `|a| + |b| - LCS(a, b)`.
pub fn scs_length(a: &Word, b: &Word) -> Result<usize> {
    Ok(a.len() + b.len() - lcs_length(a, b)?)
}

const F64_EXACT_LIMIT: u64 = 1 << 52;

/// Counts that may overflow machine words. The DP runs in `u128` and is
/// retried with big integers when an addition overflows.
trait Count: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn checked_add(&self, other: &Self) -> Option<Self>;
}

impl Count for u128 {
    #[inline]
    fn zero() -> Self {
        0
    }
    #[inline]
    fn one() -> Self {
        1
    }
    #[inline]
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u128::checked_add(*self, *other)
    }
}

impl Count for BigUint {
    fn zero() -> Self {
        BigUint::from(0u8)
    }
    fn one() -> Self {
        BigUint::from(1u8)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// Number of index sets `I` with `x_I = y`; 0 iff `y` is not a subsequence
/// of `x`. Exact arbitrary-precision count.
pub fn embedding_number(x: &Word, y: &Word) -> Result<BigUint> {
    if x.q() != y.q() {
        return Err(Error::AlphabetMismatch { left: x.q(), right: y.q() });
    }
    Ok(embedding_number_slices(x.symbols(), y.symbols()))
}

pub(crate) fn embedding_number_slices(x: &[Symbol], y: &[Symbol]) -> BigUint {
    if y.len() > x.len() {
        return BigUint::from(0u8);
    }
    // Float DP first: additions of integers are exact while every
    // intermediate stays below 2^53, which a running maximum certifies.
    if let Some(v) = emb_banded_f64(x, y) {
        return BigUint::from(v);
    }
    match emb_banded::<u128>(x, y) {
        Some(v) => BigUint::from(v),
        None => emb_banded::<BigUint>(x, y).expect("biguint addition cannot overflow"),
    }
}

/// Banded count in f64, returning the exact integer when no intermediate
/// exceeded the exact-integer range.
///
/// Iterates in skip-major order: with `G[s][j] = dp[j+s][j]` (prefixes of
/// `x` indexed as `j` matched symbols plus `s` skips) the recurrence is
/// `G[s][j] = G[s-1][j] + (x[j+s-1] == y[j-1]) * G[s][j-1]`, giving `d+1`
/// long contiguous passes instead of `|x|` short banded rows.
fn emb_banded_f64(x: &[Symbol], y: &[Symbol]) -> Option<u64> {
    const EXACT: f64 = (1u64 << 52) as f64;
    let m = x.len();
    let k = y.len();
    let d = m - k;
    let mut prev = vec![0.0f64; k + 1];
    let mut cur = vec![0.0f64; k + 1];
    let mut peak = 1.0f64;
    // s = 0: G[0][j] = prod of matches so far (prefix equality)
    cur[0] = 1.0;
    for j in 1..=k {
        cur[j] = if x[j - 1] == y[j - 1] { cur[j - 1] } else { 0.0 };
    }
    let mut eqf = vec![0.0f64; k];
    for s in 1..=d {
        std::mem::swap(&mut prev, &mut cur);
        cur[0] = 1.0;
        let xs = &x[s..s + k];
        // hoist the symbol comparisons out of the serial carry chain
        for (e, (&xv, &yv)) in eqf.iter_mut().zip(xs.iter().zip(y)) {
            *e = (xv == yv) as u64 as f64;
        }
        let mut carry = 1.0f64;
        for ((dst, &base), &e) in cur[1..].iter_mut().zip(&prev[1..]).zip(&eqf) {
            carry = base + e * carry;
            *dst = carry;
            peak = if carry > peak { carry } else { peak };
        }
    }
    if peak <= EXACT {
        Some(cur[k] as u64)
    } else {
        None
    }
}

/// Banded distinct-subsequence-count DP. Only prefix pairs with
/// `0 <= i - j <= |x| - |y|` can reach the final cell, so each row keeps
/// `d + 1` entries: offset `o` holds `dp[i][j]` with `j = i - d + o`.
fn emb_banded<T: Count>(x: &[Symbol], y: &[Symbol]) -> Option<T> {
    let m = x.len();
    let k = y.len();
    let d = m - k;
    // offset o holds dp[i][j] with j = i + o - d; the extra slot keeps
    // row[o + 1] unconditionally readable (dp[i-1][j] with j > i - 1 is 0).
    let mut row: Vec<T> = vec![T::zero(); d + 2];
    let mut next: Vec<T> = vec![T::zero(); d + 2];
    row[d] = T::one();
    for i in 1..=m {
        let xi = x[i - 1];
        let olo = d.saturating_sub(i);
        let ohi = if i <= k { d } else { d - (i - k) };
        for o in next.iter_mut().take(olo) {
            *o = T::zero();
        }
        for o in olo..=ohi {
            let j = i + o - d;
            let mut v = row[o + 1].clone();
            if j >= 1 && xi == y[j - 1] {
                v = v.checked_add(&row[o])?;
            }
            next[o] = v;
        }
        for o in next.iter_mut().skip(ohi + 1) {
            *o = T::zero();
        }
        std::mem::swap(&mut row, &mut next);
    }
    // dp[m][k] sits at offset k - m + d = 0.
    Some(row[0].clone())
}

/// Natural log of a big integer, stable for values far beyond f64 range.
pub(crate) fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 63 {
        let x = v.iter_u64_digits().next().unwrap_or(0);
        return (x as f64).ln();
    }
    let shift = bits - 53;
    let top = v >> shift;
    let mant = top.iter_u64_digits().next().unwrap_or(0);
    (mant as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

/// True when the count is exactly representable as an f64 integer.
pub(crate) fn fits_f64_exact(v: &BigUint) -> bool {
    v.bits() <= 52 || *v <= BigUint::from(F64_EXACT_LIMIT)
}

// ---------------------------------------------------------------------------
// Suffix-LCS table, banded.

// Out-of-band sentinel. Propagation may add 1 per row to it, which stays
// decisively negative for any practical word length.
const LCS_NEG: i32 = i32::MIN / 4;

struct SuffixLcs {
    rows: usize,
    m2: usize,
    band: usize,
    width: usize,
    cells: Vec<i32>,
}

impl SuffixLcs {
    /// lcs(a[i..], b[j..]) for |i - j| <= band; cells outside the band read
    /// as (drifted) minus infinity. Rows carry one sentinel slot per side:
    /// slot o holds column j = i + o - band - 1.
    fn build(a: &[Symbol], b: &[Symbol], band: usize) -> SuffixLcs {
        let m1 = a.len();
        let m2 = b.len();
        let width = 2 * band + 3;
        let mut cells = vec![LCS_NEG; (m1 + 1) * width];
        // base row i = m1
        {
            let jlo = m1.saturating_sub(band);
            for j in jlo..=(m1 + band).min(m2) {
                cells[m1 * width + (j + band + 1 - m1)] = 0;
            }
        }
        for i in (0..m1).rev() {
            let (head, tail) = cells.split_at_mut((i + 1) * width);
            let cur = &mut head[i * width..];
            let prev = &tail[..width];
            let jlo = i.saturating_sub(band);
            let jhi = (i + band).min(m2);
            let ai = a[i];
            // base column j = m2
            if m2 <= i + band && m2 >= jlo {
                cur[m2 + band + 1 - i] = 0;
            }
            if m2 == 0 || jlo > jhi.min(m2 - 1) {
                continue;
            }
            let jtop = jhi.min(m2 - 1);
            // offsets descend with j; carry the rightward neighbor (i, j+1),
            // which is the previously computed cell. In prev (row i+1),
            // (i+1, j) sits at offset o-1 and (i+1, j+1) at offset o.
            let o1 = jlo + band + 1 - i;
            let len = jtop - jlo + 1;
            let mut right = cur[o1 + len];
            let bseg = &b[jlo..jlo + len];
            let pdiag = &prev[o1..o1 + len];
            let pdown = &prev[o1 - 1..o1 - 1 + len];
            let dst = &mut cur[o1..o1 + len];
            for idx in (0..len).rev() {
                let v = (pdiag[idx] + (ai == bseg[idx]) as i32).max(pdown[idx]).max(right);
                dst[idx] = v;
                right = v;
            }
        }
        SuffixLcs { rows: m1 + 1, m2, band, width, cells }
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.band + 1 - i)
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> i32 {
        if i >= self.rows || j > self.m2 || j + self.band < i || j > i + self.band {
            return LCS_NEG;
        }
        self.cells[self.index(i, j)]
    }

    /// lcs(a, b), valid once the band covers the pair's indel distance.
    fn root(&self) -> i32 {
        self.get(0, 0)
    }
}

/// Build a suffix table whose band provably covers every alignment of the
/// optimal joint paths: the indel distance of the pair, computed first by
/// the cheaper forward DP.
fn build_suffix_adaptive(a: &[Symbol], b: &[Symbol]) -> SuffixLcs {
    let d = indel_distance_slices(a, b);
    SuffixLcs::build(a, b, d.min(a.len() + b.len()))
}

/// Exact SCS length given a caller-guaranteed bound on the indel distance
/// of the pair (a banded LCS with band >= true distance is exact).
pub(crate) fn scs_length_bounded(y1: &Word, y2: &Word, dmax: usize) -> usize {
    let (a, b) = (y1.symbols(), y2.symbols());
    let l = if dmax >= a.len() + b.len() { lcs_full(a, b) } else { lcs_banded_once(a, b, dmax) };
    debug_assert!(a.len() + b.len() - 2 * l <= dmax, "indel-distance bound violated");
    a.len() + b.len() - l
}

/// Exact LCS length under the same caller-guaranteed distance bound.
pub(crate) fn lcs_length_bounded(y1: &Word, y2: &Word, dmax: usize) -> usize {
    let (a, b) = (y1.symbols(), y2.symbols());
    let l = if dmax >= a.len() + b.len() { lcs_full(a, b) } else { lcs_banded_once(a, b, dmax) };
    debug_assert!(a.len() + b.len() - 2 * l <= dmax, "indel-distance bound violated");
    l
}

// ---------------------------------------------------------------------------
// Enumeration of common supersequences of exactly a given length.

struct SuperEnum<'a> {
    y1: &'a [Symbol],
    y2: &'a [Symbol],
    q: u8,
    len: usize,
    suffix: SuffixLcs,
    limits: EnumLimits,
    filter: Option<&'a dyn Fn(&[Symbol]) -> bool>,
    steps: u64,
    path: Vec<Symbol>,
    out: Vec<Word>,
    truncated: bool,
}

impl<'a> SuperEnum<'a> {
    /// Fewest further symbols needed from state (i, j); band-poisoned cells
    /// make this huge, pruning the branch.
    #[inline]
    fn scs_remaining(&self, i: usize, j: usize) -> i32 {
        let l = self.suffix.get(i, j);
        (self.y1.len() - i) as i32 + (self.y2.len() - j) as i32 - l
    }

    fn dfs(&mut self, i: usize, j: usize) -> bool {
        if self.steps >= self.limits.max_steps {
            self.truncated = true;
            return false;
        }
        self.steps += 1;
        let t = self.path.len();
        if t == self.len {
            debug_assert!(i == self.y1.len() && j == self.y2.len());
            if self.filter.map_or(true, |f| f(&self.path)) {
                if self.out.len() == self.limits.cap {
                    self.truncated = true;
                    return false;
                }
                self.out
                    .push(Word::new(self.path.clone(), self.q).expect("symbols already validated"));
            }
            return true;
        }
        let budget = (self.len - t - 1) as i32;
        for s in 0..self.q {
            let ni = if i < self.y1.len() && self.y1[i] == s { i + 1 } else { i };
            let nj = if j < self.y2.len() && self.y2[j] == s { j + 1 } else { j };
            if self.scs_remaining(ni, nj) <= budget {
                self.path.push(s);
                let ok = self.dfs(ni, nj);
                self.path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// All distinct common supersequences of `y1` and `y2` of length exactly
/// `len`, lexicographically ordered. Errors when `len` is below the SCS
/// length or `cap` is zero.
pub fn enumerate_common_supersequences(
    y1: &Word,
    y2: &Word,
    len: usize,
    cap: usize,
) -> Result<CandidateSet> {
    enumerate_supersequences_filtered(y1, y2, len, EnumLimits { cap, ..Default::default() }, None)
}

pub(crate) fn enumerate_supersequences_filtered(
    y1: &Word,
    y2: &Word,
    len: usize,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<CandidateSet> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    if limits.cap == 0 {
        return Err(Error::InvalidCap);
    }
    let band = len.saturating_sub(y1.len()) + len.saturating_sub(y2.len());
    enumerate_super_impl(y1, y2, len, limits, band, filter)
}

fn enumerate_super_impl(
    y1: &Word,
    y2: &Word,
    len: usize,
    limits: EnumLimits,
    band: usize,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<CandidateSet> {
    if len < y1.len().max(y2.len()) {
        return Err(Error::LengthBelowScs { requested: len, scs: y1.len().max(y2.len()) });
    }
    let suffix = SuffixLcs::build(y1.symbols(), y2.symbols(), band);
    let scs = (y1.len() + y2.len()) as i64 - suffix.root() as i64;
    if (len as i64) < scs {
        return Err(Error::LengthBelowScs { requested: len, scs: scs as usize });
    }
    Ok(run_super_dfs(y1, y2, len, scs as usize, suffix, limits, filter))
}

/// All distinct shortest common supersequences together with the SCS
/// length.
pub fn enumerate_scs_extremal(y1: &Word, y2: &Word, cap: usize) -> Result<(CandidateSet, usize)> {
    enumerate_scs_set(y1, y2, EnumLimits { cap, ..Default::default() }, None)
}

/// All distinct longest common subsequences together with the LCS length.
pub fn enumerate_lcs_extremal(y1: &Word, y2: &Word, cap: usize) -> Result<(CandidateSet, usize)> {
    enumerate_lcs_set(y1, y2, EnumLimits { cap, ..Default::default() }, None)
}

/// All distinct common supersequences at the SCS length itself, returned
/// with that length. One suffix-table build serves both the length
/// computation and the walk.
pub(crate) fn enumerate_scs_set(
    y1: &Word,
    y2: &Word,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<(CandidateSet, usize)> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    if limits.cap == 0 {
        return Err(Error::InvalidCap);
    }
    let suffix = build_suffix_adaptive(y1.symbols(), y2.symbols());
    let scs = ((y1.len() + y2.len()) as i64 - suffix.root() as i64) as usize;
    let set = run_super_dfs(y1, y2, scs, scs, suffix, limits, filter);
    Ok((set, scs))
}

fn run_super_dfs(
    y1: &Word,
    y2: &Word,
    len: usize,
    scs: usize,
    suffix: SuffixLcs,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> CandidateSet {
    // The walk grows steeply with the free-insertion budget (symbols beyond
    // the SCS); bail out as truncated when it cannot finish within the step
    // limit anyway.
    let free = (len - scs) as u64;
    if walk_estimate(len as u64, y1.q() as u64, free) > limits.max_steps {
        return CandidateSet { words: Vec::new(), truncated: true };
    }
    let mut e = SuperEnum {
        y1: y1.symbols(),
        y2: y2.symbols(),
        q: y1.q(),
        len,
        suffix,
        limits,
        filter,
        steps: 0,
        path: Vec::with_capacity(len),
        out: Vec::new(),
        truncated: false,
    };
    e.dfs(0, 0);
    CandidateSet { words: e.out, truncated: e.truncated }
}

fn walk_estimate(len: u64, q: u64, free: u64) -> u64 {
    let mut est = len.max(1);
    for _ in 0..free {
        est = est.saturating_mul(len.saturating_mul(q));
    }
    est
}

// ---------------------------------------------------------------------------
// Enumeration of common subsequences of exactly a given length.

struct NextTable {
    q: usize,
    m: usize,
    next: Vec<u32>,
}

impl NextTable {
    /// next[i][s] = smallest index >= i with symbol s, or m when absent.
    fn build(y: &[Symbol], q: u8) -> NextTable {
        let m = y.len();
        let q = q as usize;
        let mut next = vec![m as u32; (m + 1) * q];
        for i in (0..m).rev() {
            let (head, tail) = next.split_at_mut((i + 1) * q);
            head[i * q..(i + 1) * q].copy_from_slice(&tail[..q]);
            head[i * q + y[i] as usize] = i as u32;
        }
        NextTable { q, m, next }
    }

    #[inline]
    fn get(&self, i: usize, s: Symbol) -> usize {
        self.next[i * self.q + s as usize] as usize
    }
}

struct SubEnum<'a> {
    n1: NextTable,
    n2: NextTable,
    q: u8,
    len: usize,
    suffix: SuffixLcs,
    limits: EnumLimits,
    filter: Option<&'a dyn Fn(&[Symbol]) -> bool>,
    steps: u64,
    path: Vec<Symbol>,
    out: Vec<Word>,
    truncated: bool,
}

impl<'a> SubEnum<'a> {
    fn dfs(&mut self, a: usize, b: usize) -> bool {
        if self.steps >= self.limits.max_steps {
            self.truncated = true;
            return false;
        }
        self.steps += 1;
        let t = self.path.len();
        if t == self.len {
            if self.filter.map_or(true, |f| f(&self.path)) {
                if self.out.len() == self.limits.cap {
                    self.truncated = true;
                    return false;
                }
                self.out
                    .push(Word::new(self.path.clone(), self.q).expect("symbols already validated"));
            }
            return true;
        }
        let need = (self.len - t - 1) as i32;
        for s in 0..self.q {
            let pa = self.n1.get(a, s);
            if pa >= self.n1.m {
                continue;
            }
            let pb = self.n2.get(b, s);
            if pb >= self.n2.m {
                continue;
            }
            if self.suffix.get(pa + 1, pb + 1) >= need {
                self.path.push(s);
                let ok = self.dfs(pa + 1, pb + 1);
                self.path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// All distinct common subsequences of `y1` and `y2` of length exactly
/// `len`, lexicographically ordered. The set is empty when no common
/// subsequence of that length exists.
pub fn enumerate_common_subsequences(
    y1: &Word,
    y2: &Word,
    len: usize,
    cap: usize,
) -> Result<CandidateSet> {
    enumerate_subsequences_filtered(y1, y2, len, EnumLimits { cap, ..Default::default() }, None)
}

pub(crate) fn enumerate_subsequences_filtered(
    y1: &Word,
    y2: &Word,
    len: usize,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<CandidateSet> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    if limits.cap == 0 {
        return Err(Error::InvalidCap);
    }
    if len > y1.len().min(y2.len()) {
        return Ok(CandidateSet { words: Vec::new(), truncated: false });
    }
    let band = (y1.len() - len) + (y2.len() - len);
    enumerate_sub_impl(y1, y2, len, limits, band, filter)
}

fn enumerate_sub_impl(
    y1: &Word,
    y2: &Word,
    len: usize,
    limits: EnumLimits,
    band: usize,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<CandidateSet> {
    let suffix = SuffixLcs::build(y1.symbols(), y2.symbols(), band);
    Ok(run_sub_dfs(y1, y2, len, suffix, limits, filter))
}

/// All distinct common subsequences at the LCS length itself, returned
/// with that length.
pub(crate) fn enumerate_lcs_set(
    y1: &Word,
    y2: &Word,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> Result<(CandidateSet, usize)> {
    if y1.q() != y2.q() {
        return Err(Error::AlphabetMismatch { left: y1.q(), right: y2.q() });
    }
    if limits.cap == 0 {
        return Err(Error::InvalidCap);
    }
    let suffix = build_suffix_adaptive(y1.symbols(), y2.symbols());
    let lcs = suffix.root().max(0) as usize;
    let set = run_sub_dfs(y1, y2, lcs, suffix, limits, filter);
    Ok((set, lcs))
}

fn run_sub_dfs(
    y1: &Word,
    y2: &Word,
    len: usize,
    suffix: SuffixLcs,
    limits: EnumLimits,
    filter: Option<&dyn Fn(&[Symbol]) -> bool>,
) -> CandidateSet {
    if len > 0 && suffix.root() < len as i32 {
        return CandidateSet { words: Vec::new(), truncated: false };
    }
    let mut e = SubEnum {
        n1: NextTable::build(y1.symbols(), y1.q()),
        n2: NextTable::build(y2.symbols(), y2.q()),
        q: y1.q(),
        len,
        suffix,
        limits,
        filter,
        steps: 0,
        path: Vec::with_capacity(len),
        out: Vec::new(),
        truncated: false,
    };
    e.dfs(0, 0);
    CandidateSet { words: e.out, truncated: e.truncated }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Some(2)).unwrap()
    }

    fn set(words: &CandidateSet) -> Vec<String> {
        words.words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(embedding_number(&w("111"), &w("11")).unwrap(), BigUint::from(3u8));
        let x = w("01101");
        assert_eq!(embedding_number(&x, &x).unwrap(), BigUint::from(1u8));
        assert_eq!(embedding_number(&w("0101"), &w("01")).unwrap(), BigUint::from(3u8));
        assert_eq!(embedding_number(&w("101"), &w("11")).unwrap(), BigUint::from(1u8));
        assert_eq!(embedding_number(&x, &Word::empty(2)).unwrap(), BigUint::from(1u8));
        assert_eq!(embedding_number(&w("01"), &w("10")).unwrap(), BigUint::from(0u8));
        assert_eq!(embedding_number(&w("0"), &w("00")).unwrap(), BigUint::from(0u8));
    }

    #[test]
    fn embedding_huge_counts_escalate() {
        // C(180, 90) > u128::MAX: forces the big-integer path.
        let x = Word::new(vec![0; 180], 2).unwrap();
        let y = Word::new(vec![0; 90], 2).unwrap();
        let v = embedding_number(&x, &y).unwrap();
        let mut expect = BigUint::from(1u8);
        for i in 0..90u32 {
            expect = expect * BigUint::from(180 - i) / BigUint::from(i + 1);
        }
        assert_eq!(v, expect);
    }

    #[test]
    fn is_subsequence_examples() {
        assert!(is_subsequence(&w("0110"), &w("010")));
        assert!(!is_subsequence(&w("01"), &w("10")));
        assert!(is_subsequence(&w("01"), &Word::empty(2)));
    }

    #[test]
    fn scs_lcs_examples() {
        assert_eq!(scs_length(&w("01"), &w("10")).unwrap(), 3);
        assert_eq!(lcs_length(&w("01"), &w("10")).unwrap(), 1);
        let y = w("0110");
        assert_eq!(scs_length(&y, &y).unwrap(), 4);
        assert_eq!(lcs_length(&y, &y).unwrap(), 4);
        assert_eq!(scs_length(&w("00"), &Word::empty(2)).unwrap(), 2);
        let a = Word::parse("01", Some(4)).unwrap();
        let b = Word::parse("23", Some(4)).unwrap();
        assert_eq!(lcs_length(&a, &b).unwrap(), 0);
    }

    #[test]
    fn supersequence_enumeration_examples() {
        let got = enumerate_common_supersequences(&w("01"), &w("10"), 3, 1000).unwrap();
        assert_eq!(set(&got), vec!["010", "101"]);
        let got = enumerate_common_supersequences(&w("00"), &w("00"), 3, 1000).unwrap();
        assert_eq!(set(&got), vec!["000", "001", "010", "100"]);
        let y = w("0110");
        let got = enumerate_common_supersequences(&y, &y, 4, 1000).unwrap();
        assert_eq!(set(&got), vec!["0110"]);
    }

    #[test]
    fn supersequence_enumeration_errors() {
        assert!(matches!(
            enumerate_common_supersequences(&w("01"), &w("10"), 2, 1000),
            Err(Error::LengthBelowScs { .. })
        ));
        assert!(matches!(
            enumerate_common_supersequences(&w("01"), &w("10"), 3, 0),
            Err(Error::InvalidCap)
        ));
    }

    #[test]
    fn supersequence_cap_truncates() {
        let got = enumerate_common_supersequences(&w("00"), &w("00"), 3, 2).unwrap();
        assert!(got.truncated);
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn subsequence_enumeration_examples() {
        // exhaustive over the four binary pairs: "00" and "01" do not embed
        // in "110", "11" does not embed in "010"
        let got = enumerate_common_subsequences(&w("010"), &w("110"), 2, 1000).unwrap();
        assert_eq!(set(&got), vec!["10"]);
        let y = w("0110");
        let got = enumerate_common_subsequences(&y, &y, 4, 1000).unwrap();
        assert_eq!(set(&got), vec!["0110"]);
        let got = enumerate_common_subsequences(&w("01"), &w("10"), 2, 1000).unwrap();
        assert!(got.words.is_empty());
        // every word has the empty subsequence
        let got = enumerate_common_subsequences(&w("01"), &w("10"), 0, 1000).unwrap();
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn banded_and_full_tables_agree() {
        // Differential test: band d1+d2 versus an effectively unbanded table.
        let words: Vec<Word> = (0u16..64)
            .map(|v| Word::new((0..6).map(|i| ((v >> i) & 1) as u8).collect(), 2).unwrap())
            .collect();
        for y1 in &words {
            for y2 in &words {
                for len in y1.len().max(y2.len())..=8 {
                    let banded =
                        enumerate_supersequences_filtered(y1, y2, len, EnumLimits::default(), None);
                    let full = enumerate_super_impl(
                        y1,
                        y2,
                        len,
                        EnumLimits::default(),
                        y1.len() + y2.len() + len,
                        None,
                    );
                    match (banded, full) {
                        (Ok(b), Ok(f)) => assert_eq!(b.words, f.words),
                        (Err(Error::LengthBelowScs { .. }), Err(Error::LengthBelowScs { .. })) => {}
                        other => panic!("banded/full disagree: {other:?}"),
                    }
                    let lsub = len.min(y1.len()).min(y2.len());
                    let b =
                        enumerate_subsequences_filtered(y1, y2, lsub, EnumLimits::default(), None)
                            .unwrap();
                    let f = enumerate_sub_impl(
                        y1,
                        y2,
                        lsub,
                        EnumLimits::default(),
                        y1.len() + y2.len(),
                        None,
                    )
                    .unwrap();
                    assert_eq!(b.words, f.words);
                }
            }
        }
    }

    #[test]
    fn adaptive_lcs_matches_full_dp() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let la = rng.gen_range(0..40);
            let lb = rng.gen_range(0..40);
            let q = if rng.gen_bool(0.5) { 2u8 } else { 4 };
            let a: Vec<u8> = (0..la).map(|_| rng.gen_range(0..q)).collect();
            let b: Vec<u8> = (0..lb).map(|_| rng.gen_range(0..q)).collect();
            assert_eq!(lcs_length_slices(&a, &b), lcs_full(&a, &b));
        }
    }

    #[test]
    fn ln_biguint_accuracy() {
        let v = BigUint::from(12345u32);
        assert!((ln_biguint(&v) - (12345f64).ln()).abs() < 1e-12);
        let big = BigUint::from(3u8).pow(400);
        let expect = 400.0 * 3f64.ln();
        assert!((ln_biguint(&big) - expect).abs() < 1e-9 * expect);
    }
}
