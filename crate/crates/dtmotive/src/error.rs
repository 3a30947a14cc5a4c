//! Error type shared by every module of the crate.
//!
//! All failures are surfaced as values; nothing panics on malformed
//! mathematical input. The variants are deliberately fine-grained so that
//! callers (and the test suite) can distinguish a structural misuse
//! (`TwistMismatch`, `NotLinear`) from a genuine arithmetic obstruction
//! (`NonExactDivision`, `NonIntegralExp`).

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the exact pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Product of equivariant generators left the span of {1, Mt, Mt^2}.
    /// Mt^2 is formal and never reduced, so Mt*Mt^2 and Mt^2*Mt^2 have no
    /// representation in the ring shadow used here.
    UnreducedEquivariantPower,
    /// Adams operation psi_k is not defined on the given input: k >= 3 on a
    /// class carrying Mt/Mt^2, or k >= 2 on a class carrying Mt^2.
    UnsupportedAdams { k: u32 },
    /// sigma_2(a) = (a^2 + psi_2(a))/2 did not halve exactly; this would
    /// indicate a lambda-ring inconsistency in the inputs.
    NonIntegralSigma,
    /// Evaluation of a class that still carries a half-integral or negative
    /// power of the Lefschetz class; the doubled exponent is reported.
    FractionalExponent { e2: i64 },
    /// Binary operation on series with different twists (or a twisted
    /// inversion, which is only supported at twist zero).
    TwistMismatch { left: i64, right: i64 },
    /// Binary operation on series truncated at different orders.
    OrderMismatch { left: usize, right: usize },
    /// A plethystic Exp/Log produced a coefficient that is not integral
    /// over the common denominator.
    NonIntegralExp,
    /// plethystic Exp requires a series with zero constant term; Log
    /// requires constant term one.
    BadConstantTerm,
    /// Product-form expansion met a coefficient it cannot expand into an
    /// integral Laurent series (equivariant tags, or a denominator whose
    /// leading coefficient is not a unit).
    UnsupportedCoefficient(String),
    /// Superpotential or bracket text could not be parsed; byte offset of
    /// the offending character.
    ParseError { position: usize, message: String },
    /// The trace polynomial did not split into the expected block shape
    /// (constant + bilinear-times-lower-entry pieces).
    DecompositionFailure(String),
    /// The modulus is not an odd prime admissible for the requested count
    /// (q must be prime and must not divide any coefficient denominator).
    BadPrime { q: u64, reason: String },
    /// A variable declared linear occurs nonlinearly (or two declared
    /// linear variables share a monomial).
    NotLinear { var: String },
    /// Lagrange interpolation of counts did not produce integer
    /// coefficients, or had too few points for the degree bound.
    NonIntegralFit(String),
    /// A motive table is missing the entry needed by an induction step.
    MissingEntry { n: u32, lambda: u8, kind: String },
    /// Exact division of motive classes left a remainder.
    NonExactDivision,
    /// Division by zero (zero denominator class, or evaluation of a ratio
    /// whose denominator vanishes at the chosen point).
    DivisionByZero,
    /// Denominators must live in the untagged part of the ring; allowing
    /// Mt there would make cross-multiplication equality partial.
    NonUnitDenominator,
    /// A closed-form proposition was applied outside its hypotheses.
    AssumptionViolated(String),
    /// Two quantities that must agree do not; carries a printable witness.
    Mismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnreducedEquivariantPower => {
                write!(f, "product leaves the formal span of 1, Mt, Mt^2")
            }
            Error::UnsupportedAdams { k } => {
                write!(f, "Adams operation psi_{k} undefined on equivariant input")
            }
            Error::NonIntegralSigma => write!(f, "sigma_2 numerator is not divisible by 2"),
            Error::FractionalExponent { e2 } => {
                write!(f, "cannot evaluate L^({}/2): need a non-negative integer power", e2)
            }
            Error::TwistMismatch { left, right } => {
                write!(f, "series twists differ: {left} vs {right}")
            }
            Error::OrderMismatch { left, right } => {
                write!(f, "series truncation orders differ: {left} vs {right}")
            }
            Error::NonIntegralExp => {
                write!(f, "plethystic expansion left a non-integral coefficient")
            }
            Error::BadConstantTerm => {
                write!(f, "plethystic Exp needs constant term 0, Log needs constant term 1")
            }
            Error::UnsupportedCoefficient(msg) => {
                write!(f, "cannot expand coefficient into integral Laurent series: {msg}")
            }
            Error::ParseError { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
            Error::DecompositionFailure(msg) => write!(f, "block decomposition failed: {msg}"),
            Error::BadPrime { q, reason } => write!(f, "inadmissible modulus {q}: {reason}"),
            Error::NotLinear { var } => {
                write!(f, "variable {var} declared linear but occurs nonlinearly")
            }
            Error::NonIntegralFit(msg) => write!(f, "count interpolation failed: {msg}"),
            Error::MissingEntry { n, lambda, kind } => {
                write!(f, "motive table has no {kind} entry for n={n}, lambda tag {lambda}")
            }
            Error::NonExactDivision => write!(f, "motive division left a remainder"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NonUnitDenominator => {
                write!(f, "ratio denominators must be free of equivariant tags")
            }
            Error::AssumptionViolated(msg) => write!(f, "hypothesis not satisfied: {msg}"),
            Error::Mismatch(msg) => write!(f, "cross-check mismatch: {msg}"),
        }
    }
}
