//! Laws of succession for multinomial estimation.
//!
//! Given the counts `n_i` of each of `k` symbols in a finite history, a law of
//! succession assigns a probability to the next symbol. This crate implements
//! the classic rules (Laplace, Lidstone, Jeffreys-Perks), the prior-derived
//! uniform-subsets and natural (uniform-cardinality) laws with their sharpened
//! variants, the escape-based methods A-D used in adaptive data compression,
//! Good-Turing, and absolute and linear discounting.
//!
//! Around the laws sit:
//!
//! - [`priors`]: closed-form string probabilities for every law that has one,
//!   the conditional-from-prior construction, possible-set totals and exact
//!   log-ratios between laws.
//! - [`exact`]: arbitrary-precision rational versions of the laws and priors,
//!   used as oracles.
//! - [`codec`]: sequential order-0 codelength evaluation of symbol streams.
//! - [`corpus`]: manifest-driven benchmark runs over a corpus directory.
//! - [`cli`]: the `succession` command-line front end.
//!
//! ```
//! use succession::{FrequencyVector, SuccessionLaw, Symbol};
//!
//! let fv = FrequencyVector::from_counts(3, &[2, 1, 0]).unwrap();
//! let p = SuccessionLaw::Natural.conditional(&fv, Symbol(2)).unwrap();
//! assert!((p.value() - 6.0 / 16.0).abs() < 1e-15);
//! ```

use thiserror::Error;

pub mod cli;
pub mod codec;
pub mod corpus;
pub mod exact;
pub mod freq;
pub mod laws;
pub mod oracle;
pub mod plotdata;
pub mod priors;
pub(crate) mod special;

pub use codec::{
    emit_curve, evaluate_laws, evaluate_stream, synthesize_sunrise, CodelengthReport, CurvePoint,
    SymbolStream,
};
pub use freq::{FrequencyVector, Symbol};
pub use laws::{Discount, Flattening, Probability, SuccessionLaw};
pub use priors::{LogProbability, SubsetScenario};

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,

    #[error("{len} counts supplied for an alphabet of size {k}")]
    CountsTooLong { len: usize, k: usize },

    #[error("negative count {value} at index {index}")]
    NegativeCount { index: usize, value: i64 },

    #[error("symbol {symbol} out of range for alphabet of size {k}")]
    SymbolOutOfRange { symbol: usize, k: usize },

    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("{0} is undefined before any observation")]
    EmptyHistory(String),

    #[error("no symbol has count {count} (f_{count} = 0)")]
    UnrealizedCount { count: u64 },

    #[error("{law} has no closed-form string probability")]
    NoClosedForm { law: String },

    #[error("{law} is not supported by {operation}")]
    UnsupportedLaw {
        law: String,
        operation: &'static str,
    },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("zero-probability event at position {position}")]
    NonFiniteCodelength { position: usize },

    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },

    #[error("duplicate manifest entry `{0}`")]
    DuplicateEntry(String),

    #[error("columns have unequal lengths")]
    UnequalColumns,

    #[error("fetching `{name}` failed: {message}")]
    Fetch { name: String, message: String },

    #[error("`{name}` does not match its manifest entry after download: {detail}")]
    DigestMismatch { name: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
