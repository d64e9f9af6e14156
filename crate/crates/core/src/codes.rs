//! Binary Varshamov-Tenengolts and shifted-VT codes: membership, single
//! deletion decoding, enumeration, and uniform codeword sampling.
//!
//! VT(n, a) is the set of binary words with checksum sum(i * x_i) = a
//! (mod n+1), 1-based weights; it corrects any single deletion. The
//! shifted variant SVT(n, a, b, P) requires the checksum mod P together
//! with a parity bit and corrects a single deletion whose position is
//! known to within a window of fewer than P consecutive positions.

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VtCode {
    pub n: usize,
    pub a: usize,
}

impl VtCode {
    pub fn new(n: usize, a: usize) -> Result<Self> {
        if a > n {
            return Err(Error::InvalidInput(format!("VT residue {a} out of range 0..={n}")));
        }
        Ok(VtCode { n, a })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SvtCode {
    pub n: usize,
    pub a: usize,
    pub b: u8,
    /// Window parameter; the code corrects a deletion located to within
    /// fewer than `p` consecutive positions.
    pub p: usize,
}

impl SvtCode {
    pub fn new(n: usize, a: usize, b: u8, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidInput(format!("SVT window parameter {p} must be >= 2")));
        }
        if a >= p {
            return Err(Error::InvalidInput(format!("SVT residue {a} out of range 0..{p}")));
        }
        if b > 1 {
            return Err(Error::InvalidInput("SVT parity bit must be 0 or 1".into()));
        }
        Ok(SvtCode { n, a, b, p })
    }
}

/// The code filter applied by a decoder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeSpec {
    None,
    Vt(VtCode),
    Svt(SvtCode),
}

impl CodeSpec {
    pub fn word_len(&self) -> Option<usize> {
        match self {
            CodeSpec::None => None,
            CodeSpec::Vt(c) => Some(c.n),
            CodeSpec::Svt(c) => Some(c.n),
        }
    }

    /// Membership test for a symbol slice of the code's length. Used as an
    /// enumeration filter where length and alphabet are known-good.
    pub(crate) fn matches(&self, w: &[Symbol]) -> bool {
        match self {
            CodeSpec::None => true,
            CodeSpec::Vt(c) => checksum(w) % (c.n + 1) == c.a,
            CodeSpec::Svt(c) => {
                checksum(w) % c.p == c.a && weight(w) % 2 == c.b as usize
            }
        }
    }

    pub fn contains(&self, w: &Word) -> Result<bool> {
        match self {
            CodeSpec::None => Ok(true),
            CodeSpec::Vt(c) => vt_contains(c, w),
            CodeSpec::Svt(c) => svt_contains(c, w),
        }
    }
}

fn ensure_binary(w: &Word) -> Result<()> {
    if w.q() != 2 {
        return Err(Error::NonBinary);
    }
    Ok(())
}

fn checksum(w: &[Symbol]) -> usize {
    w.iter().enumerate().map(|(i, &s)| (i + 1) * s as usize).sum()
}

fn weight(w: &[Symbol]) -> usize {
    w.iter().filter(|&&s| s == 1).count()
}

/// VT checksum `sum (i+1) * w_i mod (|w| + 1)` (1-based weights).
pub fn vt_syndrome(w: &Word) -> Result<usize> {
    ensure_binary(w)?;
    Ok(checksum(w.symbols()) % (w.len() + 1))
}

pub fn vt_contains(code: &VtCode, w: &Word) -> Result<bool> {
    ensure_binary(w)?;
    if w.len() != code.n {
        return Err(Error::LengthMismatch { left: code.n, right: w.len() });
    }
    Ok(vt_syndrome(w)? == code.a)
}

/// Reinsert the single deleted bit of a VT codeword. `y` must have length
/// `n - 1`; errors when no codeword of the code is consistent with `y`.
pub fn vt_decode_single_deletion(code: &VtCode, y: &Word) -> Result<Word> {
    ensure_binary(y)?;
    if y.len() + 1 != code.n {
        return Err(Error::LengthMismatch { left: code.n - 1, right: y.len() });
    }
    let m = code.n + 1;
    let s = checksum(y.symbols()) % m;
    let deficit = (code.a + m - s) % m;
    let w = weight(y.symbols());
    let decoded = if deficit <= w {
        // a 0 was deleted: reinsert it directly left of the rightmost
        // `deficit` ones.
        let mut ones_right = 0;
        let mut at = y.len();
        while ones_right < deficit {
            at -= 1;
            if y.symbols()[at] == 1 {
                ones_right += 1;
            }
        }
        y.insert(at, 0)?
    } else {
        // a 1 was deleted with `deficit - w - 1` zeros to its left; insert
        // right after that many zeros (any spot inside the adjacent run of
        // ones yields the same word).
        let zeros_left = deficit - w - 1;
        let mut seen = 0;
        let mut at = 0;
        while seen < zeros_left {
            if y.symbols()[at] == 0 {
                seen += 1;
            }
            at += 1;
        }
        y.insert(at, 1)?
    };
    if !vt_contains(code, &decoded)? {
        return Err(Error::NoConsistentCodeword);
    }
    Ok(decoded)
}

pub fn svt_contains(code: &SvtCode, w: &Word) -> Result<bool> {
    ensure_binary(w)?;
    if w.len() != code.n {
        return Err(Error::LengthMismatch { left: code.n, right: w.len() });
    }
    Ok(checksum(w.symbols()) % code.p == code.a && weight(w.symbols()) % 2 == code.b as usize)
}

/// Reinsert the single deleted bit of an SVT codeword given that the
/// deletion position lies in `[window_start, window_start + window_len)`
/// with `window_len <= P`. Errors when zero or several distinct codewords
/// are consistent.
pub fn svt_decode_single_deletion(
    code: &SvtCode,
    y: &Word,
    window_start: usize,
    window_len: usize,
) -> Result<Word> {
    ensure_binary(y)?;
    if y.len() + 1 != code.n {
        return Err(Error::LengthMismatch { left: code.n - 1, right: y.len() });
    }
    if window_len == 0 || window_len > code.p {
        return Err(Error::InvalidInput(format!(
            "window length {window_len} must be in 1..={}",
            code.p
        )));
    }
    let mut found: Option<Word> = None;
    let end = (window_start + window_len).min(code.n);
    for at in window_start..end {
        for bit in 0..2u8 {
            let cand = y.insert(at, bit)?;
            if svt_contains(code, &cand)? {
                match &found {
                    Some(prev) if *prev != cand => return Err(Error::AmbiguousCodeword(2)),
                    _ => found = Some(cand),
                }
            }
        }
    }
    found.ok_or(Error::NoConsistentCodeword)
}

const ENUM_GUARD_BITS: usize = 28;

/// All codewords in lexicographic order. Guarded brute-force scan.
pub fn enumerate_codewords(code: &CodeSpec) -> Result<Vec<Word>> {
    let n = match code {
        CodeSpec::None => return Err(Error::InvalidInput("no code to enumerate".into())),
        CodeSpec::Vt(c) => c.n,
        CodeSpec::Svt(c) => c.n,
    };
    if n > ENUM_GUARD_BITS {
        return Err(Error::SizeGuard(format!("2^{n} codeword scan (limit 2^{ENUM_GUARD_BITS})")));
    }
    let mut out = Vec::new();
    let mut syms = vec![0u8; n];
    for v in 0..(1u64 << n) {
        for (i, s) in syms.iter_mut().enumerate() {
            // bit 0 is the leftmost symbol so numeric order is lexicographic
            *s = ((v >> (n - 1 - i)) & 1) as u8;
        }
        if code.matches(&syms) {
            out.push(Word::new(syms.clone(), 2)?);
        }
    }
    Ok(out)
}

/// Systematic encoder for small n: the `index`-th codeword in enumeration
/// order.
pub fn nth_codeword(code: &CodeSpec, index: usize) -> Result<Word> {
    let all = enumerate_codewords(code)?;
    all.get(index)
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("index {index} >= |C| = {}", all.len())))
}

/// Near-uniform VT codeword sampler for large n: draw all non-dyadic
/// positions uniformly, then write the checksum deficit in binary onto the
/// zeroed dyadic-weight positions (weights 1, 2, 4, ...). Every draw yields
/// a codeword and distinct draws yield distinct codewords, so this samples
/// uniformly from a `2^(n - ceil(log2(n+1)))`-sized subset of the code.
pub fn sample_vt_codeword<R: Rng + ?Sized>(code: &VtCode, rng: &mut R) -> Result<Word> {
    let n = code.n;
    if n < 1 {
        return Err(Error::InvalidInput("VT sampler needs n >= 1".into()));
    }
    let mut syms = vec![0u8; n];
    let mut dyadic = Vec::new();
    let mut w = 1usize;
    while w <= n {
        dyadic.push(w - 1); // 0-based index of 1-based weight w
        w *= 2;
    }
    for (i, s) in syms.iter_mut().enumerate() {
        if dyadic.binary_search(&i).is_err() {
            *s = rng.gen_range(0..2u8);
        }
    }
    let m = n + 1;
    let deficit = (code.a + m - checksum(&syms) % m) % m;
    let mut rest = deficit;
    for &idx in dyadic.iter().rev() {
        let wgt = idx + 1;
        if rest >= wgt {
            syms[idx] = 1;
            rest -= wgt;
        }
    }
    debug_assert_eq!(rest, 0);
    let word = Word::new(syms, 2)?;
    debug_assert!(vt_contains(code, &word).unwrap());
    Ok(word)
}

/// Near-uniform SVT codeword sampler for large n: the last `2P` positions
/// are zeroed in the draw, then one position with weight congruent to the
/// checksum deficit (mod P) and, if needed, one with weight divisible by P
/// are set to meet the checksum and parity constraints.
pub fn sample_svt_codeword<R: Rng + ?Sized>(code: &SvtCode, rng: &mut R) -> Result<Word> {
    let n = code.n;
    let p = code.p;
    if n < 2 * p {
        return Err(Error::InvalidInput(format!("SVT sampler needs n >= 2P = {}", 2 * p)));
    }
    let mut syms = vec![0u8; n];
    let reserved_start = n - 2 * p;
    for s in syms.iter_mut().take(reserved_start) {
        *s = rng.gen_range(0..2u8);
    }
    let deficit = (code.a + p - checksum(&syms) % p) % p;
    if deficit != 0 {
        let idx = (reserved_start..n)
            .find(|&i| (i + 1) % p == deficit % p)
            .expect("2P consecutive weights cover every residue");
        syms[idx] = 1;
    }
    if weight(&syms) % 2 != code.b as usize {
        let idx = (reserved_start..n)
            .find(|&i| (i + 1) % p == 0 && syms[i] == 0)
            .expect("2P consecutive weights contain two multiples of P");
        syms[idx] = 1;
    }
    let word = Word::new(syms, 2)?;
    debug_assert!(svt_contains(code, &word).unwrap());
    Ok(word)
}
