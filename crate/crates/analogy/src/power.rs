use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The power parameter of a generalized mean, on the extended real line.
///
/// `Zero` is the geometric-mean limit, `NegInf`/`PosInf` the min/max limits.
/// `Finite(v)` always carries a nonzero finite value; zero and the infinities
/// are represented by their dedicated variants only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPower {
    NegInf,
    Finite(f64),
    Zero,
    PosInf,
}

impl ExtendedPower {
    /// Builds a `Finite` power, rejecting zero, NaN and infinities.
    pub fn finite(value: f64) -> Result<Self> {
        if value == 0.0 || !value.is_finite() {
            return Err(Error::InvalidPower(value));
        }
        Ok(ExtendedPower::Finite(value))
    }

    /// The value on the extended real line, with `Zero` at 0 and the
    /// infinities at `f64::{NEG_,}INFINITY`. Used for ordering and display.
    pub fn as_f64(&self) -> f64 {
        match self {
            ExtendedPower::NegInf => f64::NEG_INFINITY,
            ExtendedPower::Finite(v) => *v,
            ExtendedPower::Zero => 0.0,
            ExtendedPower::PosInf => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedPower::Finite(_) | ExtendedPower::Zero)
    }
}

impl PartialOrd for ExtendedPower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for ExtendedPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPower::NegInf => write!(f, "-inf"),
            ExtendedPower::PosInf => write!(f, "inf"),
            ExtendedPower::Zero => write!(f, "0"),
            ExtendedPower::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtendedPower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" | "-infinity" | "-oo" => Ok(ExtendedPower::NegInf),
            "inf" | "+inf" | "infinity" | "+infinity" | "oo" | "+oo" => Ok(ExtendedPower::PosInf),
            other => {
                let v: f64 = other.parse().map_err(|_| Error::InvalidPower(f64::NAN))?;
                if v == 0.0 {
                    Ok(ExtendedPower::Zero)
                } else {
                    ExtendedPower::finite(v)
                }
            }
        }
    }
}
