//! Cross-module invariants: distance axioms, counting identities, channel
//! law consistency, and decoder/oracle agreement on randomized instances.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recon_core::channel::{self, ChannelFamily, ChannelSpec};
use recon_core::codes::CodeSpec;
use recon_core::decode::{self, DecodeLimits, TieRule};
use recon_core::{analytic, oracle, subseq, word, Word};

fn all_binary_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(2)];
    for len in 1..=max_len {
        for v in 0..(1u32 << len) {
            let syms = (0..len).map(|i| ((v >> i) & 1) as u8).collect();
            out.push(Word::new(syms, 2).unwrap());
        }
    }
    out
}

#[test]
fn indel_distance_is_a_metric_on_short_binary_words() {
    let words = all_binary_words(6);
    let n = words.len();
    let mut d = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            d[i * n + j] = word::indel_distance(&words[i], &words[j]).unwrap();
        }
    }
    for i in 0..n {
        assert_eq!(d[i * n + i], 0);
        for j in 0..n {
            assert_eq!(d[i * n + j], d[j * n + i]);
            if i != j {
                assert!(d[i * n + j] > 0);
            }
        }
    }
    // triangle inequality over all triples
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                assert!(d[i * n + j] <= d[i * n + k] + d[k * n + j]);
            }
        }
    }
}

#[test]
fn embedding_counts_partition_binomial_coefficients() {
    // sum over distinct y of length k of Emb(x; y) = C(|x|, k)
    let cases = ["0110100101", "0000000000", "0101010101", "11011", "1001100"];
    for xs in cases {
        let x = Word::parse(xs, Some(2)).unwrap();
        for k in 0..=x.len() {
            let mut total = BigUint::from(0u8);
            let ys = subseq::enumerate_common_subsequences(&x, &x, k, 1 << 20).unwrap();
            assert!(!ys.truncated);
            for y in &ys.words {
                total += subseq::embedding_number(&x, y).unwrap();
            }
            let mut binom = BigUint::from(1u8);
            for i in 0..k {
                binom = binom * BigUint::from(x.len() - i) / BigUint::from(i + 1);
            }
            assert_eq!(total, binom, "x={xs} k={k}");
        }
    }
}

#[test]
fn decoding_weight_and_exact_likelihood_rank_deletion_candidates_identically() {
    // at fixed candidate and trace lengths the survival factor is constant
    let words = all_binary_words(6);
    let p = 0.23;
    for y in words.iter().filter(|w| w.len() == 3) {
        let mut by_weight: Vec<(String, f64)> = Vec::new();
        let mut by_exact: Vec<(String, f64)> = Vec::new();
        for c in words.iter().filter(|w| w.len() == 5) {
            by_weight.push((c.to_string(), channel::decoding_weight_deletion(c, y, p).unwrap()));
            by_exact.push((c.to_string(), channel::likelihood_deletion(c, y, p).unwrap()));
        }
        let max_w = by_weight.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
        let max_e = by_exact.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
        let arg_w: Vec<&String> =
            by_weight.iter().filter(|(_, v)| *v == max_w).map(|(w, _)| w).collect();
        let arg_e: Vec<&String> =
            by_exact.iter().filter(|(_, v)| *v == max_e).map(|(w, _)| w).collect();
        assert_eq!(arg_w, arg_e, "y={y}");
    }
}

#[test]
fn success_curves_are_monotone_and_bounded() {
    for q in [2u32, 3, 4, 16, 64] {
        let mut prev_p = [1.0f64; 4];
        for pi in 0..=20 {
            let p = pi as f64 * 0.005;
            let vals = [
                analytic::success_two_del(q, p, 450),
                analytic::success_vt(q, p, 450),
                analytic::success_svt(q, p, 450),
                analytic::success_two_ins(q, p, 450),
            ];
            for (v, pv) in vals.iter().zip(prev_p.iter()) {
                assert!((0.0..=1.0).contains(v));
                assert!(v <= pv, "q={q} p={p}");
            }
            prev_p = vals;
        }
        // decreasing in n
        for nf in [1u32, 10, 100, 1000, 2000] {
            let a = analytic::success_two_del(q, 0.02, nf);
            let b = analytic::success_two_del(q, 0.02, nf * 2);
            assert!(b <= a);
            assert!(analytic::success_vt(q, 0.02, nf * 2) <= analytic::success_vt(q, 0.02, nf));
        }
    }
}

#[test]
fn z_fail_identity_holds() {
    for p in [0.0, 0.05, 0.3, 0.9] {
        for t in [1u32, 2, 5] {
            for n in [1u32, 17, 450] {
                let direct = analytic::z_fail(p, t, n);
                let derived = 1.0 - (1.0 - analytic::z_err(p, t)).powi(n as i32);
                assert!((direct - derived).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn capacity_matches_entropy_complement_for_single_channel() {
    for i in 1..99u32 {
        let p = i as f64 / 100.0;
        let cap = analytic::bsc_capacity_t(p, 1);
        let expect = 1.0 - analytic::binary_entropy(p);
        assert!((cap - expect).abs() < 1e-12, "p={p}");
    }
}

#[test]
fn randomized_decodes_match_bayes_oracle_on_mid_sizes() {
    // one-deletion-per-channel instances at n = 7 and 8, randomized
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    use rand::Rng;
    for _ in 0..5_000 {
        let n = if rng.gen_bool(0.5) { 7 } else { 8 };
        let p = if rng.gen_bool(0.5) { 0.1 } else { 0.3 };
        let x = Word::new((0..n).map(|_| rng.gen_range(0..2u8)).collect(), 2).unwrap();
        let d1 = rng.gen_range(0..n);
        let d2 = rng.gen_range(0..n);
        let traces = vec![x.delete(d1).unwrap(), x.delete(d2).unwrap()];
        let r = decode::ml_decode_deletion(
            &traces,
            n,
            &CodeSpec::None,
            TieRule::UniformRandom,
            &DecodeLimits::default(),
            &mut rng,
        )
        .unwrap();
        let spec = ChannelSpec::new(ChannelFamily::Deletion, p, 2).unwrap();
        let scan = oracle::bayes_ml_by_scan(&traces, n, &spec, &CodeSpec::None).unwrap();
        let mut got: Vec<String> =
            r.argmax.iter().map(|&i| r.candidates.words[i].to_string()).collect();
        let mut expect: Vec<String> =
            scan.ranked[..scan.top_len].iter().map(|(w, _)| w.to_string()).collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect, "x={x} d1={d1} d2={d2}");
    }
}

#[test]
fn insertion_decode_matches_weight_scan() {
    // brute-force argmax of the product of insertion weights over all
    // length-n words equals the decoder's candidate argmax group
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    use rand::Rng;
    for _ in 0..2_000 {
        let n = rng.gen_range(2..=6);
        let x = Word::new((0..n).map(|_| rng.gen_range(0..2u8)).collect(), 2).unwrap();
        let g1 = rng.gen_range(0..=n);
        let g2 = rng.gen_range(0..=n);
        let y1 = x.insert(g1, rng.gen_range(0..2u8)).unwrap();
        let y2 = x.insert(g2, rng.gen_range(0..2u8)).unwrap();
        let traces = vec![y1.clone(), y2.clone()];
        let r = decode::ml_decode_insertion(
            &traces,
            n,
            &CodeSpec::None,
            TieRule::UniformRandom,
            &DecodeLimits::default(),
            &mut rng,
        )
        .unwrap();
        // scan every length-n word by the weight product
        let mut best = BigUint::from(0u8);
        let mut arg: Vec<String> = Vec::new();
        for v in 0..(1u32 << n) {
            let c =
                Word::new((0..n).map(|i| ((v >> i) & 1) as u8).collect(), 2).unwrap();
            let w = subseq::embedding_number(&y1, &c).unwrap()
                * subseq::embedding_number(&y2, &c).unwrap();
            if w > best {
                best = w.clone();
                arg = vec![c.to_string()];
            } else if w == best && w > BigUint::from(0u8) {
                arg.push(c.to_string());
            }
        }
        let mut got: Vec<String> =
            r.argmax.iter().map(|&i| r.candidates.words[i].to_string()).collect();
        got.sort();
        arg.sort();
        assert_eq!(got, arg, "x={x} y1={y1} y2={y2}");
    }
}

proptest! {
    #[test]
    fn run_decomposition_round_trips(len in 0usize..64, seed in any::<u64>(), four in any::<bool>()) {
        let q = if four { 4u8 } else { 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let w = Word::new((0..len).map(|_| rng.gen_range(0..q)).collect(), q).unwrap();
        let d = word::run_decompose(&w);
        prop_assert_eq!(d.expand(q).unwrap(), w.clone());
        for pair in d.runs.windows(2) {
            prop_assert!(pair[0].symbol != pair[1].symbol);
        }
        let total: usize = d.runs.iter().map(|r| r.len).sum();
        prop_assert_eq!(total, w.len());
    }

    #[test]
    fn projection_yields_subsequences(len in 0usize..24, mask in any::<u32>(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let w = Word::new((0..len).map(|_| rng.gen_range(0..2u8)).collect(), 2).unwrap();
        let idx: Vec<usize> = (0..len).filter(|i| mask >> (i % 32) & 1 == 1).collect();
        let proj = word::projection(&w, &idx).unwrap();
        prop_assert!(subseq::is_subsequence(&w, &proj));
    }

    #[test]
    fn scs_and_lcs_lengths_are_complementary(a in 0u32..128, b in 0u32..128, la in 0usize..7, lb in 0usize..7) {
        let wa = Word::new((0..la).map(|i| ((a >> i) & 1) as u8).collect(), 2).unwrap();
        let wb = Word::new((0..lb).map(|i| ((b >> i) & 1) as u8).collect(), 2).unwrap();
        let scs = subseq::scs_length(&wa, &wb).unwrap();
        let lcs = subseq::lcs_length(&wa, &wb).unwrap();
        prop_assert_eq!(scs + lcs, la + lb);
    }

    #[test]
    fn enumerated_supersequences_contain_both_inputs(a in 0u32..64, b in 0u32..64, la in 0usize..6, lb in 0usize..6, extra in 0usize..3) {
        let wa = Word::new((0..la).map(|i| ((a >> i) & 1) as u8).collect(), 2).unwrap();
        let wb = Word::new((0..lb).map(|i| ((b >> i) & 1) as u8).collect(), 2).unwrap();
        let len = subseq::scs_length(&wa, &wb).unwrap() + extra;
        let set = subseq::enumerate_common_supersequences(&wa, &wb, len, 1 << 20).unwrap();
        prop_assert!(!set.truncated);
        for w in &set.words {
            prop_assert_eq!(w.len(), len);
            prop_assert!(subseq::is_subsequence(w, &wa));
            prop_assert!(subseq::is_subsequence(w, &wb));
        }
        // distinctness
        let mut sorted: Vec<String> = set.words.iter().map(|w| w.to_string()).collect();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), set.words.len());
    }
}
