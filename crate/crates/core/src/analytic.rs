//! Closed-form error-rate approximations for two-channel reconstruction,
//! plus exact BSC/Z baselines and the t-instance BSC capacity sum.
//!
//! The two-channel expressions are second-order approximations: the
//! dominant uncorrectable patterns are a run losing (gaining) a symbol in
//! both traces, rate `(q+1)/(q-1) p^2` per symbol for deletions, and an
//! alternating-segment ambiguity, rate `2 p^2`. The `success_*` functions
//! evaluate no-error probabilities; the corresponding failure value is one
//! minus them.

use crate::error::{Error, Result};

/// Per-symbol rate of a run losing a symbol in both traces:
/// `(q+1)/(q-1) * p^2`.
pub fn p_run_del(q: u32, p: f64) -> f64 {
    assert!(q >= 2);
    (q as f64 + 1.0) / (q as f64 - 1.0) * p * p
}

/// Per-symbol rate of alternating-segment ambiguities: `2 p^2`,
/// independent of the alphabet size.
pub fn p_alt_del(_q: u32, p: f64) -> f64 {
    2.0 * p * p
}

/// Per-symbol Levenshtein error rate over two deletion channels:
/// `(3q-1)/(q-1) * p^2`, the sum of the run and alternation rates.
pub fn p_err_two_del(q: u32, p: f64) -> f64 {
    assert!(q >= 2);
    (3.0 * q as f64 - 1.0) / (q as f64 - 1.0) * p * p
}

/// Probability that a length-n word sees neither run nor alternation
/// events over two deletion channels: `exp(-(3q-1)/(q-1) p^2 n)`.
pub fn success_two_del(q: u32, p: f64, n: u32) -> f64 {
    (-p_err_two_del(q, p) * n as f64).exp()
}

pub fn failure_two_del(q: u32, p: f64, n: u32) -> f64 {
    1.0 - success_two_del(q, p, n)
}

/// No-failure probability of VT-coded two-channel deletion decoding: no
/// events, or exactly one alternation event, or exactly one run event.
pub fn success_vt(q: u32, p: f64, n: u32) -> f64 {
    let pr = p_run_del(q, p);
    let pa = p_alt_del(q, p);
    let n = n as f64;
    (1.0 - pr).powf(n) * (1.0 - pa).powf(n)
        + (1.0 - pr).powf(n) * n * pa * (1.0 - pa).powf(n - 1.0)
        + n * pr * (1.0 - pr).powf(n - 1.0) * (1.0 - pa).powf(n)
}

/// No-failure probability of SVT-coded decoding: no events or exactly one
/// alternation event (the SVT code does not correct run events).
pub fn success_svt(q: u32, p: f64, n: u32) -> f64 {
    let pr = p_run_del(q, p);
    let pa = p_alt_del(q, p);
    let n = n as f64;
    (1.0 - pr).powf(n) * (1.0 - pa).powf(n)
        + (1.0 - pr).powf(n) * n * pa * (1.0 - pa).powf(n - 1.0)
}

/// Per-symbol rate of identical run extensions in both traces of the
/// insertion channel: `(q+1)/(q(q-1)) * p^2`.
pub fn p_run_ins(q: u32, p: f64) -> f64 {
    assert!(q >= 2);
    (q as f64 + 1.0) / (q as f64 * (q as f64 - 1.0)) * p * p
}

/// Per-symbol rate of alternating insertion ambiguities: `(2/q) p^2`.
pub fn p_alt_ins(q: u32, p: f64) -> f64 {
    assert!(q >= 2);
    2.0 / q as f64 * p * p
}

/// Per-symbol Levenshtein error rate over two insertion channels:
/// `(3q-1)/(q(q-1)) * p^2`.
pub fn p_err_two_ins(q: u32, p: f64) -> f64 {
    assert!(q >= 2);
    (3.0 * q as f64 - 1.0) / (q as f64 * (q as f64 - 1.0)) * p * p
}

/// Two-insertion-channel no-failure probability,
/// `exp(-(2/(q-1)) p^2 n)`. Note the exponent is not the sum of
/// [`p_run_ins`] and [`p_alt_ins`]; see [`success_two_ins_from_components`]
/// for that variant. The harness compares simulation against both.
pub fn success_two_ins(q: u32, p: f64, n: u32) -> f64 {
    assert!(q >= 2);
    (-2.0 / (q as f64 - 1.0) * p * p * n as f64).exp()
}

/// The component-sum variant `exp(-(3q-1)/(q(q-1)) p^2 n)`.
pub fn success_two_ins_from_components(q: u32, p: f64, n: u32) -> f64 {
    (-p_err_two_ins(q, p) * n as f64).exp()
}

/// Hamming error rate of ML decoding over t Z-channels: `p^t`.
pub fn z_err(p: f64, t: u32) -> f64 {
    p.powi(t as i32)
}

/// Word failure probability over t Z-channels: `1 - (1 - p^t)^n`.
pub fn z_fail(p: f64, t: u32, n: u32) -> f64 {
    1.0 - (1.0 - z_err(p, t)).powi(n as i32)
}

/// Hamming error rate of ML decoding over an odd number t of BSCs:
/// `sum_{i=0}^{(t-1)/2} C(t,i) p^(t-i) (1-p)^i`.
pub fn bsc_err(p: f64, t: u32) -> Result<f64> {
    if t % 2 == 0 {
        return Err(Error::InvalidInput("BSC error rate needs odd t".into()));
    }
    let mut total = 0.0;
    for i in 0..=(t - 1) / 2 {
        total += binomial(t, i) * p.powi((t - i) as i32) * (1.0 - p).powi(i as i32);
    }
    Ok(total)
}

/// Word failure probability over an odd number t of BSCs.
pub fn bsc_fail(p: f64, t: u32, n: u32) -> Result<f64> {
    Ok(1.0 - (1.0 - bsc_err(p, t)?).powi(n as i32))
}

/// Capacity of t parallel BSC instances (base-2):
/// `1 + sum_i C(t,i) P_i log2(P_i / (P_i + P_{t-i}))` with
/// `P_i = p^i (1-p)^(t-i)`.
pub fn bsc_capacity_t(p: f64, t: u32) -> f64 {
    let mut cap = 1.0;
    for i in 0..=t {
        let pi = p.powi(i as i32) * (1.0 - p).powi((t - i) as i32);
        let pmirror = p.powi((t - i) as i32) * (1.0 - p).powi(i as i32);
        if pi > 0.0 {
            cap += binomial(t, i) * pi * (pi / (pi + pmirror)).log2();
        }
    }
    cap
}

/// Binary entropy, base 2.
pub fn binary_entropy(p: f64) -> f64 {
    let xlog = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    -xlog(p) - xlog(1.0 - p)
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}
