//! Reconstruction of q-ary words transmitted over multiple independent
//! deletion or insertion channels.
//!
//! The decoder enumerates the distinct common supersequences (deletions)
//! or subsequences (insertions) of the received traces and ranks them by
//! the product of embedding counts, which is maximum-likelihood for these
//! channels. Around it sit Varshamov-Tenengolts and shifted-VT codes,
//! closed-form error-rate approximations, brute-force oracles, and a
//! seeded Monte Carlo harness that checks the closed forms by simulation.

pub mod analytic;
pub mod channel;
pub mod codes;
pub mod decode;
pub mod error;
pub mod oracle;
pub mod sim;
pub mod subseq;
pub mod word;

pub use channel::{ChannelFamily, ChannelSpec, TransmissionRecord};
pub use codes::{CodeSpec, SvtCode, VtCode};
pub use decode::{DecodeLimits, DecodeResult, DecodeStatus, TieRule};
pub use error::{Error, Result};
pub use subseq::CandidateSet;
pub use word::{Symbol, Word};
