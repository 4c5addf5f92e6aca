//! Finite subtraction games: outcome and Grundy sequences, periodicity
//! certification, structural ruleset predicates, all-but nim (finite excluded
//! subtraction), ruleset searches, and two-dimensional outcome grids.
//!
//! The core computation is a bit-packed outcome kernel (P-positions as set
//! bits, the recurrence evaluated word-parallel) plus an incremental mex
//! kernel for nim-values. Periodicity certificates use the classical window
//! argument: once two windows of length `max S` coincide at distance `p`,
//! the sequence repeats with period `p` forever.
//!
//! ```
//! use subgames::{Ruleset, OutcomeSequence};
//!
//! let s = Ruleset::new(vec![2, 5, 7]).unwrap();
//! let seq = OutcomeSequence::compute(&s, None, 256).unwrap();
//! let cert = seq.certify();
//! assert!(cert.certified);
//! assert_eq!((cert.preperiod, cert.period), (0, 22));
//! ```

pub mod expand;
pub mod fes;
pub mod grundy;
pub mod laws;
pub mod outcome;
pub mod period;
pub mod ruleset;
pub mod search;
pub mod twod;

pub use expand::{austin_adjoin_check, expansion_set, AdjoinReport, ExpansionReport};
pub use fes::{
    conjecture_harness, detect_arithmetic_periodicity, fes_closed_form, fes_grundy,
    gcd_scaling_check, ArithmeticPeriodicity, ClosedForm, Conjecture, ConjectureReport,
    FesRuleset, FesSequence, GcdScalingReport, Verdict,
};
pub use grundy::GrundySequence;
pub use laws::{
    bipartite_check, ceil_two_phi_pow, fibonacci_bound, predict_two_move_nim, two_move_law,
    AustinForm, BipartiteReport, NimPrediction,
};
pub use outcome::OutcomeSequence;
pub use period::{analyze, default_horizon, Analysis, PeriodicityCertificate, DEFAULT_HORIZON_CAP};
pub use ruleset::{Outcome, Ruleset, Seed};
pub use search::{
    classify_three_move, divergent_period_check, enumerate_rulesets, family_eval, fit_growth,
    record_holders, seeded_family, zhang_scan, ClassGrid, DivergenceReport, FamilyRow, FamilySpec,
    Filter, GrowthFit, PeriodClass, RecordRow, RecordTable, ZhangReport, ZhangRow,
};
pub use twod::{line_periodicity, outcomes2d, Line, OutcomeGrid, Ruleset2D};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ruleset must contain at least one move")]
    EmptyRuleset,
    #[error("moves must be positive, got 0")]
    ZeroMove,
    #[error("duplicate move {0}")]
    DuplicateMove(u64),
    #[error("seed length {actual} does not match max move {expected}")]
    SeedLength { expected: u64, actual: u64 },
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("expected 0 < a < b, got a={a}, b={b}")]
    BadMovePair { a: u64, b: u64 },
    #[error("two-move law mismatch for a={a}, b={b}: predicted (0,{predicted}), computed ({l},{p})")]
    LawMismatch { a: u64, b: u64, predicted: u64, l: u64, p: u64 },
    #[error("precondition of Austin's theorem not met: {0} is not certified purely periodic")]
    NotPurelyPeriodic(String),
    #[error("no closed form for FES sets of size {0} (only |S| <= 2)")]
    NoClosedForm(usize),
    #[error("premise violation for {conjecture}: {premise}")]
    Premise { conjecture: &'static str, premise: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("grid of {cells} cells exceeds the memory cap of {cap} cells")]
    GridTooLarge { cells: u128, cap: u128 },
    #[error("growth fit needs at least 3 points with positive periods and non-constant abscissae")]
    DegenerateFit,
    #[error("degenerate seed family index {0}: need n >= 2")]
    SeedFamilyIndex(u64),
    #[error("modulus {q} is not a multiple of the certified period {p}")]
    BadModulus { q: u64, p: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
