use std::fmt;

/// Errors reported by the library.
#[derive(Debug)]
pub enum Error {
    /// Two words with different alphabet sizes were combined.
    AlphabetMismatch { left: u8, right: u8 },
    /// Operation requires words of compatible lengths.
    LengthMismatch { left: usize, right: usize },
    /// Projection index set out of range or not strictly increasing.
    IndexOutOfRange { index: usize, len: usize },
    /// Symbol does not fit the alphabet.
    InvalidSymbol { symbol: u64, q: u8 },
    /// Alphabet size must be at least 2 (and at most 255).
    InvalidAlphabet(u64),
    /// Probability outside its valid range.
    InvalidProbability(f64),
    /// Requested supersequence length is shorter than the SCS.
    LengthBelowScs { requested: usize, scs: usize },
    /// Enumeration cap must be positive.
    InvalidCap,
    /// Operation is defined for binary words only.
    NonBinary,
    /// Input too large for a brute-force scan.
    SizeGuard(String),
    /// No codeword is consistent with the received word.
    NoConsistentCodeword,
    /// More than one codeword is consistent with the received word.
    AmbiguousCodeword(usize),
    /// Malformed input or configuration.
    InvalidInput(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::AlphabetMismatch { left, right } => {
                write!(f, "alphabet mismatch: q={left} vs q={right}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for word of length {len}")
            }
            Error::InvalidSymbol { symbol, q } => {
                write!(f, "symbol {symbol} outside alphabet of size {q}")
            }
            Error::InvalidAlphabet(q) => write!(f, "invalid alphabet size {q} (need 2..=255)"),
            Error::InvalidProbability(p) => write!(f, "invalid probability {p}"),
            Error::LengthBelowScs { requested, scs } => {
                write!(f, "requested length {requested} is below the SCS length {scs}")
            }
            Error::InvalidCap => write!(f, "candidate cap must be positive"),
            Error::NonBinary => write!(f, "operation requires a binary word"),
            Error::SizeGuard(what) => write!(f, "input too large: {what}"),
            Error::NoConsistentCodeword => write!(f, "no codeword consistent with received word"),
            Error::AmbiguousCodeword(k) => write!(f, "{k} codewords consistent with received word"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
