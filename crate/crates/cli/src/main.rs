//! Command-line front end: combinatorial queries, single decodes, codeword
//! listings, closed-form evaluation, brute-force oracles, and Monte Carlo
//! sweeps.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recon_core::channel::{ChannelFamily, ChannelSpec};
use recon_core::codes::{self, CodeSpec, SvtCode, VtCode};
use recon_core::decode::{self, DecodeLimits, DecodeStatus, TieRule};
use recon_core::sim::{self, ExperimentConfig, OutputFormat, Source};
use recon_core::{analytic, oracle, subseq, Word};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "recon",
    about = "Reconstruction of q-ary words from noisy deletion/insertion traces",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Del,
    Ins,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Random,
    Lex,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> TieRule {
        match t {
            TieArg::Random => TieRule::UniformRandom,
            TieArg::Lex => TieRule::LexicographicMin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeArg {
    None,
    Vt,
    Svt,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaArg {
    PerrDel,
    PrunDel,
    PaltDel,
    SuccessDel,
    SuccessVt,
    SuccessSvt,
    PerrIns,
    PrunIns,
    PaltIns,
    SuccessIns,
    SuccessInsAlt,
    ZErr,
    ZFail,
    BscErr,
    BscFail,
    Capacity,
}

#[derive(Args)]
struct CodeParams {
    /// VT syndrome residue a (mod n+1)
    #[arg(long, default_value_t = 0)]
    vt_a: usize,
    /// SVT syndrome residue a (mod P)
    #[arg(long, default_value_t = 0)]
    svt_a: usize,
    /// SVT parity bit b
    #[arg(long, default_value_t = 0)]
    svt_b: u8,
    /// SVT window parameter P
    #[arg(long, default_value_t = 11)]
    svt_p: usize,
}

impl CodeParams {
    fn build(&self, kind: CodeArg, n: usize) -> Result<CodeSpec, recon_core::Error> {
        Ok(match kind {
            CodeArg::None => CodeSpec::None,
            CodeArg::Vt => CodeSpec::Vt(VtCode::new(n, self.vt_a)?),
            CodeArg::Svt => CodeSpec::Svt(SvtCode::new(n, self.svt_a, self.svt_b, self.svt_p)?),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Embedding number of Y in X (ways Y embeds as a subsequence)
    Emb {
        x: String,
        y: String,
        #[arg(long)]
        q: Option<u8>,
    },
    /// Shortest-common-supersequence length, optionally enumerating a length
    Scs {
        y1: String,
        y2: String,
        /// Enumerate all distinct common supersequences of this length
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long)]
        q: Option<u8>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Longest-common-subsequence length, optionally enumerating a length
    Lcs {
        y1: String,
        y2: String,
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long)]
        q: Option<u8>,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// ML-decode traces read from a file (one trace per line)
    Decode {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        /// Transmitted length
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = CodeArg::None)]
        code: CodeArg,
        #[command(flatten)]
        code_params: CodeParams,
        #[arg(long, value_enum, default_value_t = TieArg::Random)]
        tie: TieArg,
        #[arg(long)]
        traces: PathBuf,
        #[arg(long)]
        q: Option<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Code utilities
    #[command(subcommand)]
    Code(CodeCommand),
    /// Evaluate a closed-form expression, or sweep a p-grid as CSV
    Analyze {
        #[arg(long, value_enum)]
        formula: Option<FormulaArg>,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 450)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Emit a CSV sweep over a p-grid instead of a single value
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 0.005)]
        p_min: f64,
        #[arg(long, default_value_t = 0.05)]
        p_max: f64,
        #[arg(long, default_value_t = 10)]
        p_steps: usize,
    },
    /// Brute-force oracles (reference implementations)
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Monte Carlo sweep over a p-grid
    Simulate {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long, default_value_t = 2)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p_min: f64,
        #[arg(long)]
        p_max: f64,
        #[arg(long)]
        p_steps: usize,
        #[arg(long, default_value_t = 200_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = CodeArg::None)]
        code: CodeArg,
        #[command(flatten)]
        code_params: CodeParams,
        #[arg(long, value_enum, default_value_t = SourceArg::Space)]
        source: SourceArg,
        #[arg(long, value_enum, default_value_t = TieArg::Random)]
        tie: TieArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceArg {
    Space,
    Code,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// List all codewords (small n)
    List {
        #[arg(long = "type", value_enum)]
        kind: CodeArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: u8,
        #[arg(long, default_value_t = 11)]
        p_window: usize,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Embedding number by direct index-subset enumeration
    Emb {
        x: String,
        y: String,
        #[arg(long)]
        q: Option<u8>,
    },
    /// Common supersequences of a given length by full scan
    Scan {
        y1: String,
        y2: String,
        len: usize,
        #[arg(long)]
        q: Option<u8>,
    },
    /// Rank every length-n word by exact joint likelihood
    Bayes {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        traces: PathBuf,
        #[arg(long)]
        q: Option<u8>,
        /// Print only the leading tie group
        #[arg(long)]
        top: bool,
    },
}

fn read_traces(path: &PathBuf, q: Option<u8>) -> Result<Vec<Word>, recon_core::Error> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let q = match q {
        Some(q) => q,
        None => lines
            .iter()
            .map(|l| Word::parse(l, None).map(|w| w.q()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(2),
    };
    lines.iter().map(|l| Word::parse(l, Some(q))).collect()
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run() -> Result<(), recon_core::Error> {
    match Cli::parse().command {
        Command::Emb { x, y, q } => {
            let xw = Word::parse(&x, q)?;
            let yw = Word::parse(&y, Some(xw.q()))?;
            println!("{}", subseq::embedding_number(&xw, &yw)?);
        }
        Command::Scs { y1, y2, enumerate, q, cap } => {
            let a = Word::parse(&y1, q)?;
            let b = Word::parse(&y2, Some(a.q()))?;
            match enumerate {
                None => println!("{}", subseq::scs_length(&a, &b)?),
                Some(len) => {
                    let set = subseq::enumerate_common_supersequences(&a, &b, len, cap)?;
                    for w in &set.words {
                        println!("{w}");
                    }
                    if set.truncated {
                        eprintln!("warning: enumeration truncated at cap {cap}");
                    }
                }
            }
        }
        Command::Lcs { y1, y2, enumerate, q, cap } => {
            let a = Word::parse(&y1, q)?;
            let b = Word::parse(&y2, Some(a.q()))?;
            match enumerate {
                None => println!("{}", subseq::lcs_length(&a, &b)?),
                Some(len) => {
                    let set = subseq::enumerate_common_subsequences(&a, &b, len, cap)?;
                    for w in &set.words {
                        println!("{w}");
                    }
                    if set.truncated {
                        eprintln!("warning: enumeration truncated at cap {cap}");
                    }
                }
            }
        }
        Command::Decode { channel, n, code, code_params, tie, traces, q, seed, cap } => {
            let traces = read_traces(&traces, q)?;
            let code = code_params.build(code, n)?;
            let limits = DecodeLimits { cap, ..Default::default() };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = match channel {
                ChannelArg::Del => {
                    decode::ml_decode_deletion(&traces, n, &code, tie.into(), &limits, &mut rng)?
                }
                ChannelArg::Ins => {
                    decode::ml_decode_insertion(&traces, n, &code, tie.into(), &limits, &mut rng)?
                }
            };
            let status = match r.status {
                DecodeStatus::Ok => "ok",
                DecodeStatus::TieBroken => "tie_broken",
                DecodeStatus::NoCandidate => "no_candidate",
                DecodeStatus::CandidateOverflow => "candidate_overflow",
            };
            match &r.chosen {
                Some(w) => println!("chosen: {w}"),
                None => println!("chosen: -"),
            }
            println!("status: {status}");
            println!("tie_size: {}", r.tie_size);
            println!("candidates: {}", r.candidates.len());
        }
        Command::Code(CodeCommand::List { kind, n, a, b, p_window }) => {
            let params = CodeParams { vt_a: a, svt_a: a, svt_b: b, svt_p: p_window };
            let code = params.build(kind, n)?;
            for w in codes::enumerate_codewords(&code)? {
                println!("{w}");
            }
        }
        Command::Analyze { formula, q, p, n, t, sweep, p_min, p_max, p_steps } => {
            if sweep {
                analyze_sweep(q, n, p_min, p_max, p_steps);
            } else {
                let formula = formula.ok_or_else(|| {
                    recon_core::Error::InvalidInput("--formula or --sweep required".into())
                })?;
                let p = p.ok_or_else(|| {
                    recon_core::Error::InvalidInput("--p required for --formula".into())
                })?;
                println!("{}", evaluate(formula, q, p, n, t)?);
            }
        }
        Command::Oracle(cmd) => run_oracle(cmd)?,
        Command::Simulate {
            channel,
            q,
            n,
            p_min,
            p_max,
            p_steps,
            trials,
            code,
            code_params,
            source,
            tie,
            seed,
            format,
            out,
        } => {
            let code = code_params.build(code, n)?;
            let cfg = ExperimentConfig {
                channel: match channel {
                    ChannelArg::Del => ChannelFamily::Deletion,
                    ChannelArg::Ins => ChannelFamily::Insertion,
                },
                q,
                n,
                p_grid: grid(p_min, p_max, p_steps),
                trials,
                code,
                tie: tie.into(),
                master_seed: seed,
                source: match source {
                    SourceArg::Space => Source::UniformSpace,
                    SourceArg::Code => Source::UniformCodeword,
                },
                limits: DecodeLimits::default(),
            };
            let rows = sim::run_experiment(&cfg)?;
            let format = match format {
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Json => OutputFormat::Json,
            };
            match out {
                Some(path) => sim::emit_to_path(&rows, format, &path)?,
                None => sim::emit(&rows, format, &mut std::io::stdout().lock())?,
            }
        }
    }
    Ok(())
}

fn grid(p_min: f64, p_max: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![p_min];
    }
    (0..steps)
        .map(|i| p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn evaluate(f: FormulaArg, q: u32, p: f64, n: u32, t: u32) -> Result<f64, recon_core::Error> {
    Ok(match f {
        FormulaArg::PerrDel => analytic::p_err_two_del(q, p),
        FormulaArg::PrunDel => analytic::p_run_del(q, p),
        FormulaArg::PaltDel => analytic::p_alt_del(q, p),
        FormulaArg::SuccessDel => analytic::success_two_del(q, p, n),
        FormulaArg::SuccessVt => analytic::success_vt(q, p, n),
        FormulaArg::SuccessSvt => analytic::success_svt(q, p, n),
        FormulaArg::PerrIns => analytic::p_err_two_ins(q, p),
        FormulaArg::PrunIns => analytic::p_run_ins(q, p),
        FormulaArg::PaltIns => analytic::p_alt_ins(q, p),
        FormulaArg::SuccessIns => analytic::success_two_ins(q, p, n),
        FormulaArg::SuccessInsAlt => analytic::success_two_ins_from_components(q, p, n),
        FormulaArg::ZErr => analytic::z_err(p, t),
        FormulaArg::ZFail => analytic::z_fail(p, t, n),
        FormulaArg::BscErr => analytic::bsc_err(p, t)?,
        FormulaArg::BscFail => analytic::bsc_fail(p, t, n)?,
        FormulaArg::Capacity => analytic::bsc_capacity_t(p, t),
    })
}

fn analyze_sweep(q: u32, n: u32, p_min: f64, p_max: f64, p_steps: usize) {
    println!(
        "p,perr_del,prun_del,palt_del,success_del,success_vt,success_svt,\
         perr_ins,prun_ins,palt_ins,success_ins,success_ins_alt"
    );
    for p in grid(p_min, p_max, p_steps) {
        println!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            p,
            analytic::p_err_two_del(q, p),
            analytic::p_run_del(q, p),
            analytic::p_alt_del(q, p),
            analytic::success_two_del(q, p, n),
            analytic::success_vt(q, p, n),
            analytic::success_svt(q, p, n),
            analytic::p_err_two_ins(q, p),
            analytic::p_run_ins(q, p),
            analytic::p_alt_ins(q, p),
            analytic::success_two_ins(q, p, n),
            analytic::success_two_ins_from_components(q, p, n)
        );
    }
}

fn run_oracle(cmd: OracleCommand) -> Result<(), recon_core::Error> {
    match cmd {
        OracleCommand::Emb { x, y, q } => {
            let xw = Word::parse(&x, q)?;
            let yw = Word::parse(&y, Some(xw.q()))?;
            println!("{}", oracle::embedding_by_enumeration(&xw, &yw)?);
        }
        OracleCommand::Scan { y1, y2, len, q } => {
            let a = Word::parse(&y1, q)?;
            let b = Word::parse(&y2, Some(a.q()))?;
            for w in oracle::supersequences_by_scan(&a, &b, len)? {
                println!("{w}");
            }
        }
        OracleCommand::Bayes { channel, n, p, traces, q, top } => {
            let traces = read_traces(&traces, q)?;
            let q = traces.first().map(|w| w.q()).unwrap_or(2);
            let family = match channel {
                ChannelArg::Del => ChannelFamily::Deletion,
                ChannelArg::Ins => ChannelFamily::Insertion,
            };
            let spec = ChannelSpec::new(family, p, q)?;
            let ranking = oracle::bayes_ml_by_scan(&traces, n, &spec, &CodeSpec::None)?;
            let take = if top { ranking.top_len } else { ranking.ranked.len() };
            for (w, prob) in &ranking.ranked[..take] {
                println!("{w}\t{prob}");
            }
        }
    }
    Ok(())
}
