//! Monte Carlo harness: two-channel transmission experiments over a grid
//! of channel parameters, ground-truth event classification, and CSV/JSON
//! emission.
//!
//! Reproducibility: every trial draws from its own ChaCha stream derived
//! from `(master_seed, grid index, trial index)`, and aggregation uses
//! commutative integer counters, so results are byte-identical for any
//! worker count.

use crate::analytic;
use crate::channel::{self, ChannelFamily, ChannelSpec, TransmissionRecord};
use crate::codes::{self, CodeSpec};
use crate::decode::{self, DecodeLimits, DecodeStatus, TieRule};
use crate::error::{Error, Result};
use crate::subseq;
use crate::word::{Symbol, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

/// How transmitted words are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Uniformly from the whole space of length-n words.
    UniformSpace,
    /// Uniformly from the code (enumerated for small n, sampled otherwise).
    UniformCodeword,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One Monte Carlo sweep: a channel family, a p-grid, and a decode setup.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub channel: ChannelFamily,
    pub q: u8,
    pub n: usize,
    pub p_grid: Vec<f64>,
    pub trials: u64,
    pub code: CodeSpec,
    pub tie: TieRule,
    pub master_seed: u64,
    pub source: Source,
    pub limits: DecodeLimits,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.channel, ChannelFamily::Deletion | ChannelFamily::Insertion) {
            return Err(Error::InvalidInput("experiments support deletion/insertion".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidInput("trials must be >= 1".into()));
        }
        if self.q < 2 {
            return Err(Error::InvalidAlphabet(self.q as u64));
        }
        for &p in &self.p_grid {
            if !(0.0..1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        if self.source == Source::UniformCodeword && self.code == CodeSpec::None {
            return Err(Error::InvalidInput("codeword source requires a code".into()));
        }
        if let Some(cn) = self.code.word_len() {
            if cn != self.n {
                return Err(Error::InvalidInput(format!("code length {cn} != n {}", self.n)));
            }
            if self.q != 2 {
                return Err(Error::InvalidInput("VT/SVT codes are binary".into()));
            }
        }
        if self.source == Source::UniformCodeword && self.n > 28 {
            if let CodeSpec::Svt(c) = &self.code {
                if self.n < 2 * c.p {
                    return Err(Error::InvalidInput("SVT sampler needs n >= 2P".into()));
                }
            }
        }
        Ok(())
    }
}

/// One aggregated grid point. Event rates for runs and alternations are
/// per-symbol counts (events per transmitted symbol), matching their
/// closed-form counterparts; `other_event_rate` is the fraction of trials
/// whose per-trial classification is `Other`.
#[derive(Clone, Debug, Serialize)]
pub struct SummaryRow {
    pub p: f64,
    pub trials: u64,
    pub lev_error_rate: f64,
    pub lev_error_stderr: f64,
    pub failure_rate: f64,
    pub failure_stderr: f64,
    pub run_event_rate: f64,
    pub alt_event_rate: f64,
    pub other_event_rate: f64,
    pub overflow_count: u64,
    pub pred_perr: f64,
    pub pred_success: f64,
    pub pred_success_vt: f64,
    pub pred_success_svt: f64,
}

/// Ground-truth classification of a trial's error pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventClass {
    None,
    Run,
    Alternating,
    Other,
}

/// One decoded trial with its ground truth.
#[derive(Clone, Debug)]
pub struct TrialRecord {
    pub transmitted: Word,
    pub traces: Vec<Word>,
    pub status: DecodeStatus,
    pub chosen: Option<Word>,
    pub levenshtein: usize,
    pub event_class: EventClass,
    pub run_events: u64,
    pub alt_events: u64,
}

/// Per-trial classification for deletion trials. Defined for at most one
/// deletion per channel: both positions inside one run of `x` is a run
/// event; a spanned two-symbol alternating segment is an alternation;
/// trials with no deletions are `None`; everything else (including
/// multi-deletion trials) is `Other`.
pub fn classify_event(x: &Word, dels1: &[usize], dels2: &[usize]) -> EventClass {
    match (dels1, dels2) {
        ([], []) => EventClass::None,
        ([i], [j]) => {
            let (lo, hi) = (*i.min(j), *i.max(j));
            if same_run(x, lo, hi) {
                EventClass::Run
            } else if crate::word::is_two_symbol_alternation_slice(&x.symbols()[lo..=hi]) {
                EventClass::Alternating
            } else {
                EventClass::Other
            }
        }
        _ => EventClass::Other,
    }
}

/// Per-trial classification for insertion trials, using the gap positions
/// and inserted symbols of each channel.
pub fn classify_insertion_event(
    x: &Word,
    ins1: &[(usize, Symbol)],
    ins2: &[(usize, Symbol)],
) -> EventClass {
    match (ins1, ins2) {
        ([], []) => EventClass::None,
        ([a], [b]) => {
            if same_insertion_class(x, *a, *b) {
                EventClass::Run
            } else if alternating_insertion_pair(x, *a, *b) {
                EventClass::Alternating
            } else {
                EventClass::Other
            }
        }
        _ => EventClass::Other,
    }
}

fn same_run(x: &Word, lo: usize, hi: usize) -> bool {
    x.symbols()[lo..=hi].windows(2).all(|w| w[0] == w[1])
}

/// Two insertions produce the same word iff they insert the same symbol
/// and the gap span covers only that symbol.
fn same_insertion_class(x: &Word, a: (usize, Symbol), b: (usize, Symbol)) -> bool {
    if a.1 != b.1 {
        return false;
    }
    let (lo, hi) = (a.0.min(b.0), a.0.max(b.0));
    x.symbols()[lo..hi].iter().all(|&s| s == a.1)
}

/// Two insertions at distinct gaps are an alternating ambiguity iff
/// `left_symbol + spanned_segment + right_symbol` alternates between two
/// symbols: the traces are then the two one-sided extensions of the same
/// alternating stretch.
fn alternating_insertion_pair(x: &Word, a: (usize, Symbol), b: (usize, Symbol)) -> bool {
    if a.0 == b.0 {
        return false;
    }
    let (l, r) = if a.0 < b.0 { (a, b) } else { (b, a) };
    let mut probe = Vec::with_capacity(r.0 - l.0 + 2);
    probe.push(l.1);
    probe.extend_from_slice(&x.symbols()[l.0..r.0]);
    probe.push(r.1);
    crate::word::is_two_symbol_alternation_slice(&probe)
}

/// Number of run events (runs of `x` losing at least one symbol in both
/// channels) and alternation events (a deletion paired with its nearest
/// other-channel deletion across a two-symbol alternating span).
pub fn count_deletion_events(x: &Word, dels1: &[usize], dels2: &[usize]) -> (u64, u64) {
    let mut run_events = 0;
    for run in crate::word::run_decompose(x).runs {
        let span = run.start..run.start + run.len;
        let hit = |dels: &[usize]| {
            let k = dels.partition_point(|&d| d < span.start);
            k < dels.len() && dels[k] < span.end
        };
        if hit(dels1) && hit(dels2) {
            run_events += 1;
        }
    }
    let mut alt_events = 0;
    for &d in dels1 {
        if let Some(e) = nearest(dels2, d) {
            if e != d {
                let (lo, hi) = (d.min(e), d.max(e));
                if crate::word::is_two_symbol_alternation_slice(&x.symbols()[lo..=hi]) {
                    alt_events += 1;
                }
            }
        }
    }
    (run_events, alt_events)
}

/// Insertion-channel analogue of [`count_deletion_events`]: identical
/// single-word extensions in both channels are run events; opposite-end
/// extensions of an alternating stretch are alternation events.
pub fn count_insertion_events(
    x: &Word,
    ins1: &[(usize, Symbol)],
    ins2: &[(usize, Symbol)],
) -> (u64, u64) {
    let gaps2: Vec<usize> = ins2.iter().map(|&(g, _)| g).collect();
    let mut run_events = 0;
    let mut alt_events = 0;
    for &(g, s) in ins1 {
        if let Some(idx) = nearest_index(&gaps2, g) {
            let other = ins2[idx];
            if same_insertion_class(x, (g, s), other) {
                run_events += 1;
            } else if alternating_insertion_pair(x, (g, s), other) {
                alt_events += 1;
            }
        }
    }
    (run_events, alt_events)
}

fn nearest(sorted: &[usize], v: usize) -> Option<usize> {
    nearest_index(sorted, v).map(|i| sorted[i])
}

fn nearest_index(sorted: &[usize], v: usize) -> Option<usize> {
    if sorted.is_empty() {
        return None;
    }
    let k = sorted.partition_point(|&d| d < v);
    let mut best = None;
    for cand in [k.checked_sub(1), Some(k)].into_iter().flatten() {
        if cand < sorted.len() {
            let dist = sorted[cand].abs_diff(v);
            match best {
                Some((bd, _)) if bd <= dist => {}
                _ => best = Some((dist, cand)),
            }
        }
    }
    best.map(|(_, i)| i)
}

// ---------------------------------------------------------------------------
// Trial execution.

fn trial_stream(p_index: usize, trial: u64) -> u64 {
    ((p_index as u64) << 44) ^ trial
}

fn draw_word<R: Rng + ?Sized>(cfg: &ExperimentConfig, pool: &[Word], rng: &mut R) -> Result<Word> {
    match cfg.source {
        Source::UniformSpace => {
            let syms = (0..cfg.n).map(|_| rng.gen_range(0..cfg.q)).collect();
            Word::new(syms, cfg.q)
        }
        Source::UniformCodeword => {
            if !pool.is_empty() {
                return Ok(pool[rng.gen_range(0..pool.len())].clone());
            }
            match &cfg.code {
                CodeSpec::Vt(c) => codes::sample_vt_codeword(c, rng),
                CodeSpec::Svt(c) => codes::sample_svt_codeword(c, rng),
                CodeSpec::None => unreachable!("validated"),
            }
        }
    }
}

/// Decode a deletion-channel trial. Without a code this is extremal-length
/// ML decoding. With a code, candidates at length n are code-filtered;
/// when the merge length is n-1 (one unrecoverable deletion), the short ML
/// output is completed through the VT single-deletion decoder. SVT codes
/// cannot locate a free deletion and fail that case.
fn decode_deletion_trial<R: Rng + ?Sized>(
    cfg: &ExperimentConfig,
    traces: &[Word],
    rng: &mut R,
) -> Result<(Option<Word>, DecodeStatus)> {
    if cfg.code == CodeSpec::None {
        let r = decode::ml_decode_deletion_scs(traces, cfg.tie, &cfg.limits, rng)?;
        return Ok((r.chosen, r.status));
    }
    // the traces are subsequences of one length-n word, bounding their
    // mutual indel distance by the total number of deletions
    let dmax = (cfg.n - traces[0].len()) + (cfg.n - traces[1].len());
    let scs = subseq::scs_length_bounded(&traces[0], &traces[1], dmax);
    if scs == cfg.n {
        let r = decode::ml_decode_deletion(traces, cfg.n, &cfg.code, cfg.tie, &cfg.limits, rng)?;
        return Ok((r.chosen, r.status));
    }
    let r = decode::ml_decode_deletion_scs(traces, cfg.tie, &cfg.limits, rng)?;
    if scs + 1 == cfg.n {
        if let (Some(short), CodeSpec::Vt(code)) = (&r.chosen, &cfg.code) {
            return match codes::vt_decode_single_deletion(code, short) {
                Ok(full) => Ok((Some(full), r.status)),
                Err(_) => Ok((None, DecodeStatus::NoCandidate)),
            };
        }
    }
    // two or more merged deletions (or an SVT code): unrecoverable; keep
    // the short output for an honest distance tally
    Ok((r.chosen, r.status))
}

fn decode_insertion_trial<R: Rng + ?Sized>(
    cfg: &ExperimentConfig,
    traces: &[Word],
    rng: &mut R,
) -> Result<(Option<Word>, DecodeStatus)> {
    if cfg.code == CodeSpec::None {
        let r = decode::ml_decode_insertion_lcs(traces, cfg.tie, &cfg.limits, rng)?;
        return Ok((r.chosen, r.status));
    }
    let dmax = (traces[0].len() - cfg.n) + (traces[1].len() - cfg.n);
    let lcs = subseq::lcs_length_bounded(&traces[0], &traces[1], dmax);
    if lcs == cfg.n {
        let r = decode::ml_decode_insertion(traces, cfg.n, &cfg.code, cfg.tie, &cfg.limits, rng)?;
        return Ok((r.chosen, r.status));
    }
    let r = decode::ml_decode_insertion_lcs(traces, cfg.tie, &cfg.limits, rng)?;
    Ok((r.chosen, r.status))
}

/// Run a single trial at channel parameter `p` with the supplied RNG.
pub fn run_trial<R: Rng + ?Sized>(
    cfg: &ExperimentConfig,
    p: f64,
    pool: &[Word],
    rng: &mut R,
) -> Result<TrialRecord> {
    let x = draw_word(cfg, pool, rng)?;
    let spec = ChannelSpec::new(cfg.channel, p, cfg.q)?;
    let r1 = channel::transmit(&x, &spec, rng)?;
    let r2 = channel::transmit(&x, &spec, rng)?;
    let traces = vec![r1.output.clone(), r2.output.clone()];
    let (chosen, status) = match cfg.channel {
        ChannelFamily::Deletion => decode_deletion_trial(cfg, &traces, rng)?,
        ChannelFamily::Insertion => decode_insertion_trial(cfg, &traces, rng)?,
        _ => unreachable!("validated"),
    };
    let levenshtein = match &chosen {
        Some(c) if c == &x => 0,
        Some(c) => subseq::indel_distance_slices(c.symbols(), x.symbols()),
        None => cfg.n,
    };
    let (event_class, run_events, alt_events) = match cfg.channel {
        ChannelFamily::Deletion => {
            let (r, a) = count_deletion_events(&x, &r1.event_positions, &r2.event_positions);
            (classify_event(&x, &r1.event_positions, &r2.event_positions), r, a)
        }
        ChannelFamily::Insertion => {
            let i1 = zip_insertions(&r1);
            let i2 = zip_insertions(&r2);
            let (r, a) = count_insertion_events(&x, &i1, &i2);
            (classify_insertion_event(&x, &i1, &i2), r, a)
        }
        _ => unreachable!("validated"),
    };
    Ok(TrialRecord {
        transmitted: x,
        traces,
        status,
        chosen,
        levenshtein,
        event_class,
        run_events,
        alt_events,
    })
}

fn zip_insertions(r: &TransmissionRecord) -> Vec<(usize, Symbol)> {
    r.event_positions.iter().copied().zip(r.inserted_symbols.iter().copied()).collect()
}

#[derive(Clone, Copy, Default)]
struct Tally {
    dl_sum: u64,
    failures: u64,
    run_events: u64,
    alt_events: u64,
    other_trials: u64,
    overflows: u64,
}

impl Tally {
    fn add(mut self, other: Tally) -> Tally {
        self.dl_sum += other.dl_sum;
        self.failures += other.failures;
        self.run_events += other.run_events;
        self.alt_events += other.alt_events;
        self.other_trials += other.other_trials;
        self.overflows += other.overflows;
        self
    }

    fn from_record(rec: &TrialRecord) -> Tally {
        let failed = rec.chosen.as_ref() != Some(&rec.transmitted);
        Tally {
            dl_sum: rec.levenshtein as u64,
            failures: failed as u64,
            run_events: rec.run_events,
            alt_events: rec.alt_events,
            other_trials: (rec.event_class == EventClass::Other) as u64,
            overflows: (rec.status == DecodeStatus::CandidateOverflow) as u64,
        }
    }
}

/// Run the full sweep. Deterministic for a fixed master seed regardless of
/// the rayon worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<SummaryRow>> {
    cfg.validate()?;
    let pool: Vec<Word> = match (cfg.source, &cfg.code) {
        (Source::UniformCodeword, code) if cfg.n <= 28 => codes::enumerate_codewords(code)?,
        _ => Vec::new(),
    };
    if cfg.source == Source::UniformCodeword && cfg.n <= 28 && pool.is_empty() {
        return Err(Error::InvalidInput("code is empty".into()));
    }
    let mut rows = Vec::with_capacity(cfg.p_grid.len());
    for (pi, &p) in cfg.p_grid.iter().enumerate() {
        let tally = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.master_seed);
                rng.set_stream(trial_stream(pi, t));
                let rec = run_trial(cfg, p, &pool, &mut rng)
                    .expect("trial on validated config cannot fail");
                Tally::from_record(&rec)
            })
            .reduce(Tally::default, Tally::add);
        rows.push(summarize(cfg, p, tally));
    }
    Ok(rows)
}

fn summarize(cfg: &ExperimentConfig, p: f64, t: Tally) -> SummaryRow {
    let trials = cfg.trials as f64;
    let n = cfg.n as f64;
    let symbols = n * trials;
    let lev = t.dl_sum as f64 / symbols;
    let fail = t.failures as f64 / trials;
    let stderr = |r: f64| (r * (1.0 - r) / trials).sqrt();
    let q = cfg.q as u32;
    let nn = cfg.n as u32;
    let (pred_perr, pred_success) = match cfg.channel {
        ChannelFamily::Deletion => (analytic::p_err_two_del(q, p), analytic::success_two_del(q, p, nn)),
        _ => (analytic::p_err_two_ins(q, p), analytic::success_two_ins(q, p, nn)),
    };
    SummaryRow {
        p,
        trials: cfg.trials,
        lev_error_rate: lev,
        lev_error_stderr: stderr(lev),
        failure_rate: fail,
        failure_stderr: stderr(fail),
        run_event_rate: t.run_events as f64 / symbols,
        alt_event_rate: t.alt_events as f64 / symbols,
        other_event_rate: t.other_trials as f64 / trials,
        overflow_count: t.overflows,
        pred_perr,
        pred_success,
        pred_success_vt: analytic::success_vt(q, p, nn),
        pred_success_svt: analytic::success_svt(q, p, nn),
    }
}

pub const CSV_HEADER: &str = "p,trials,lev_error_rate,lev_error_stderr,failure_rate,\
failure_stderr,run_event_rate,alt_event_rate,other_event_rate,overflow_count,pred_perr,\
pred_success,pred_success_vt,pred_success_svt";

/// Write rows in the fixed CSV schema or as pretty JSON.
pub fn emit<W: Write>(rows: &[SummaryRow], format: OutputFormat, out: &mut W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.p,
                    r.trials,
                    r.lev_error_rate,
                    r.lev_error_stderr,
                    r.failure_rate,
                    r.failure_stderr,
                    r.run_event_rate,
                    r.alt_event_rate,
                    r.other_event_rate,
                    r.overflow_count,
                    r.pred_perr,
                    r.pred_success,
                    r.pred_success_vt,
                    r.pred_success_svt
                )?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)
                .map_err(|e| Error::InvalidInput(format!("json: {e}")))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

pub fn emit_to_path(rows: &[SummaryRow], format: OutputFormat, path: &std::path::Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    emit(rows, format, &mut f)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{SvtCode, VtCode};

    fn w(s: &str) -> Word {
        Word::parse(s, Some(2)).unwrap()
    }

    fn base_cfg() -> ExperimentConfig {
        ExperimentConfig {
            channel: ChannelFamily::Deletion,
            q: 2,
            n: 40,
            p_grid: vec![0.0, 0.02],
            trials: 200,
            code: CodeSpec::None,
            tie: TieRule::UniformRandom,
            master_seed: 7,
            source: Source::UniformSpace,
            limits: DecodeLimits::default(),
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_event(&w("0011"), &[0], &[1]), EventClass::Run);
        assert_eq!(classify_event(&w("0101"), &[0], &[3]), EventClass::Alternating);
        assert_eq!(classify_event(&w("0010"), &[0], &[3]), EventClass::Other);
        assert_eq!(classify_event(&w("0010"), &[], &[]), EventClass::None);
        assert_eq!(classify_event(&w("0010"), &[0, 1], &[2]), EventClass::Other);
    }

    #[test]
    fn deletion_event_counts() {
        // both channels hit the leading run, and the trailing positions
        // span an alternation
        let x = w("001010");
        let (runs, alts) = count_deletion_events(&x, &[0, 3], &[1, 4]);
        assert_eq!(runs, 1);
        assert_eq!(alts, 1);
        let (runs, alts) = count_deletion_events(&x, &[], &[2]);
        assert_eq!((runs, alts), (0, 0));
        // same-position deletions are a (degenerate) run event
        let (runs, alts) = count_deletion_events(&x, &[2], &[2]);
        assert_eq!((runs, alts), (1, 0));
    }

    #[test]
    fn insertion_event_rules() {
        let x = w("0011");
        // same symbol, same run: identical traces
        assert!(same_insertion_class(&x, (0, 0), (2, 0)));
        assert!(!same_insertion_class(&x, (0, 0), (3, 0)));
        // opposite-end extensions of the alternating stretch "01"
        assert!(alternating_insertion_pair(&x, (1, 1), (3, 0)));
        assert!(!alternating_insertion_pair(&x, (1, 1), (3, 1)));
        // same gap, different symbols: not an alternation event
        assert!(!alternating_insertion_pair(&x, (2, 0), (2, 1)));
    }

    #[test]
    fn p_zero_row_is_perfect() {
        let cfg = base_cfg();
        let rows = run_experiment(&cfg).unwrap();
        assert_eq!(rows[0].p, 0.0);
        assert_eq!(rows[0].lev_error_rate, 0.0);
        assert_eq!(rows[0].failure_rate, 0.0);
        assert_eq!(rows[0].overflow_count, 0);
    }

    #[test]
    fn reproducible_across_worker_counts() {
        let cfg = base_cfg();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let rows1 = pool1.install(|| run_experiment(&cfg)).unwrap();
        let rows4 = pool4.install(|| run_experiment(&cfg)).unwrap();
        let mut buf1 = Vec::new();
        let mut buf4 = Vec::new();
        emit(&rows1, OutputFormat::Csv, &mut buf1).unwrap();
        emit(&rows4, OutputFormat::Csv, &mut buf4).unwrap();
        assert_eq!(buf1, buf4);
    }

    #[test]
    fn csv_schema_and_json_round_trip() {
        let cfg = ExperimentConfig { trials: 20, p_grid: vec![0.01], ..base_cfg() };
        let rows = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        emit(&rows, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.count(), 1);
        let mut jbuf = Vec::new();
        emit(&rows, OutputFormat::Json, &mut jbuf).unwrap();
        let parsed: serde_json::Value = serde_json::from_slice(&jbuf).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), 1);
        assert!((parsed[0]["p"].as_f64().unwrap() - 0.01).abs() < 1e-15);
        // empty rows: header only
        let mut ebuf = Vec::new();
        emit(&[], OutputFormat::Csv, &mut ebuf).unwrap();
        assert_eq!(String::from_utf8(ebuf).unwrap().lines().count(), 1);
    }

    #[test]
    fn codeword_sources_stay_in_code() {
        let code = CodeSpec::Vt(VtCode::new(12, 0).unwrap());
        let cfg = ExperimentConfig {
            n: 12,
            code,
            source: Source::UniformCodeword,
            p_grid: vec![0.02],
            trials: 100,
            ..base_cfg()
        };
        let rows = run_experiment(&cfg).unwrap();
        assert!(rows[0].failure_rate <= 1.0);

        let svt = CodeSpec::Svt(SvtCode::new(60, 1, 0, 7).unwrap());
        let cfg = ExperimentConfig {
            n: 60,
            code: svt,
            source: Source::UniformCodeword,
            p_grid: vec![0.01],
            trials: 50,
            ..base_cfg()
        };
        run_experiment(&cfg).unwrap();
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let cfg = ExperimentConfig { trials: 0, ..base_cfg() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { p_grid: vec![1.0], ..base_cfg() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { source: Source::UniformCodeword, ..base_cfg() };
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig {
            code: CodeSpec::Vt(VtCode::new(10, 0).unwrap()),
            ..base_cfg()
        };
        assert!(cfg.validate().is_err()); // n mismatch
    }

}
