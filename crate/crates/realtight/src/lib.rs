//! Exact combinatorics for real tight contact structures on solid tori and
//! lens spaces: slopes, Farey distance, negative continued fractions,
//! dividing-set enumeration, classification bounds, rational
//! Thurston-Bennequin numbers and chain surgery identification.

pub mod dividing;
pub mod farey;
pub mod invariants;
pub mod lens;
pub mod slopes;
pub mod solid_torus;
pub mod surgery;

pub use num_rational::Rational64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate class")]
    DegenerateClass,
    #[error("out of expansion domain")]
    OutOfExpansionDomain,
    #[error("division by zero while evaluating continued fraction")]
    DivisionByZero,
    #[error("not an involution")]
    NotAnInvolution,
    #[error("increase bound")]
    IncreaseBound,
    #[error("not covered: {0}")]
    NotCovered(String),
    #[error("no linear involutive gluing")]
    NoInvolutiveGluing,
    #[error("not a negative-definite chain")]
    NotNegativeDefiniteChain,
    #[error("incompatible endpoint counts: {0}")]
    IncompatibleEndpoints(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Formats an exact rational as `num/den`, or `num` when integral.
pub fn fmt_ratio(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `num/den` or a bare integer.
pub fn parse_ratio(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(n, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter writing a rational as the text `num/den`.
pub mod ratio_text {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&super::fmt_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_ratio(&text).map_err(serde::de::Error::custom)
    }
}
