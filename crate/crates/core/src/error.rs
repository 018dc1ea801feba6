use alloc::string::String;
use core::fmt;

use crate::model::ModelId;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Model id string or parameter that no built-in model matches.
    UnsupportedModel(String),
    UnknownSymbol(String),
    UnknownHeart(String),
    ModelMismatch { expected: ModelId, found: ModelId },
    /// A precomputed Hom dimension disagrees with the representation oracle.
    HomTableMismatch { from: String, to: String, shift: i32, table: u32, oracle: u32 },
    /// Charge vector has the wrong length for the model's lattice.
    RankMismatch { expected: usize, found: usize },
    ZeroObject,
    /// A heart simple has zero charge or a charge outside the half-plane of its shift.
    Violation { simple: String, re: f64, im: f64, shift: i32 },
    /// A charge lies on the discriminant (vanishes on some indecomposable class).
    OnDiscriminant,
    DegenerateNorm,
    NotInLattice,
    /// Index requested before the first valid index of a sequence.
    BeforeStart { n: u64, n0: u64 },
    /// An affine charge path never becomes valid for the given heart.
    NeverValid,
    NotAffine,
    NotPiLocal,
    /// Two phase functions cannot be separated at working precision.
    UnresolvedTie { sub: String, quot: String },
    UnsupportedForModel { op: &'static str, model: ModelId },
    SerreViolation(String),
    /// The limiting heart is not in the finite heart catalog of the target model.
    HeartOutOfCatalog(String),
    /// The limit charge does not vanish on the massless subcategory.
    ChargeDoesNotKill(String),
    QuotientInvalid(String),
    EmptySequence,
    /// The limiting support constant is zero.
    NoLimitingSupport,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedModel(s) => write!(f, "unsupported model: {s}"),
            Error::UnknownSymbol(s) => write!(f, "unknown indecomposable symbol {s:?}"),
            Error::UnknownHeart(s) => write!(f, "unknown heart id {s:?}"),
            Error::ModelMismatch { expected, found } => {
                write!(f, "model mismatch: expected {expected}, found {found}")
            }
            Error::HomTableMismatch { from, to, shift, table, oracle } => write!(
                f,
                "hom table entry Hom({from}, {to}[{shift}]) = {table} but the representation oracle gives {oracle}"
            ),
            Error::RankMismatch { expected, found } => {
                write!(f, "charge has {found} entries, lattice rank is {expected}")
            }
            Error::ZeroObject => f.write_str("zero object has no HN filtration"),
            Error::Violation { simple, re, im, shift } => write!(
                f,
                "simple {simple} has charge {re}{im:+}i outside the half-plane for shift {shift}"
            ),
            Error::OnDiscriminant => f.write_str("charge lies on the discriminant"),
            Error::DegenerateNorm => f.write_str("norm matrix is not symmetric positive-definite"),
            Error::NotInLattice => f.write_str("subcategory is not a node of the thick lattice"),
            Error::BeforeStart { n, n0 } => write!(f, "index {n} precedes first valid index {n0}"),
            Error::NeverValid => f.write_str("charge path never enters the heart's half-planes"),
            Error::NotAffine => f.write_str("operation requires an affine sequence"),
            Error::NotPiLocal => f.write_str("sequence is not pi-local"),
            Error::UnresolvedTie { sub, quot } => {
                write!(f, "phases of {sub} and {quot} cannot be separated along the tail")
            }
            Error::UnsupportedForModel { op, model } => {
                write!(f, "{op} is unsupported for model {model}")
            }
            Error::SerreViolation(s) => write!(f, "Serre check failed: {s}"),
            Error::HeartOutOfCatalog(s) => write!(f, "heart outside the catalog: {s}"),
            Error::ChargeDoesNotKill(s) => write!(f, "limit charge does not vanish on {s}"),
            Error::QuotientInvalid(s) => write!(f, "quotient stability condition invalid: {s}"),
            Error::EmptySequence => f.write_str("explicit sequence is empty"),
            Error::NoLimitingSupport => f.write_str("sequence lacks the limiting support property"),
        }
    }
}

impl core::error::Error for Error {}
