//! Numerically stable evaluation of generalized (power) means and of the
//! difference function underlying power search.

use crate::error::{Error, Result};
use crate::power::ExtendedPower;
use crate::quadruple::Quadruple;

/// Finite powers with magnitude below this are never evaluated directly;
/// callers route them to the geometric limit or bracket away from zero.
pub const TINY_POWER: f64 = 1e-8;

/// An unordered pair of strictly positive reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    x: f64,
    y: f64,
}

impl PositivePair {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        for t in [x, y] {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::NonPositive(t));
            }
        }
        Ok(PositivePair { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
}

/// Factored evaluation of the binary mean for a finite nonzero power.
///
/// For p > 0 the maximal term is factored out, for p < 0 the minimal one, so
/// the inner ratio power always lies in (0, 1] and cannot overflow.
fn mean_finite(x: f64, y: f64, p: f64) -> f64 {
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    if lo == hi {
        return lo;
    }
    if p > 0.0 {
        hi * (((lo / hi).powf(p) + 1.0) / 2.0).powf(1.0 / p)
    } else {
        lo * ((1.0 + (hi / lo).powf(p)) / 2.0).powf(1.0 / p)
    }
}

/// Generalized mean of a pair for an extended power.
///
/// Zero yields the geometric mean, the infinite powers the min/max limits.
pub fn generalized_mean(pair: PositivePair, p: ExtendedPower) -> Result<f64> {
    let (x, y) = (pair.x(), pair.y());
    if x == y {
        return Ok(x);
    }
    Ok(match p {
        ExtendedPower::NegInf => x.min(y),
        ExtendedPower::PosInf => x.max(y),
        ExtendedPower::Zero => x.sqrt() * y.sqrt(),
        ExtendedPower::Finite(v) => {
            if v.abs() < TINY_POWER {
                return Err(Error::TinyFinitePower);
            }
            mean_finite(x, y, v)
        }
    })
}

/// Generalized (Hölder) mean of a non-empty list of positive values.
pub fn generalized_mean_n(values: &[f64], p: ExtendedPower) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    for &v in values {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::NonPositive(v));
        }
    }
    let n = values.len() as f64;
    Ok(match p {
        ExtendedPower::NegInf => values.iter().cloned().fold(f64::INFINITY, f64::min),
        ExtendedPower::PosInf => values.iter().cloned().fold(0.0, f64::max),
        ExtendedPower::Zero => {
            // ln-domain product, robust to over/underflow of the raw product
            let log_sum: f64 = values.iter().map(|v| v.ln()).sum();
            (log_sum / n).exp()
        }
        ExtendedPower::Finite(v) => {
            if v.abs() < TINY_POWER {
                return Err(Error::TinyFinitePower);
            }
            // factor out the dominant term, as in the binary case
            let pivot = if v > 0.0 {
                values.iter().cloned().fold(0.0, f64::max)
            } else {
                values.iter().cloned().fold(f64::INFINITY, f64::min)
            };
            let sum: f64 = values.iter().map(|x| (x / pivot).powf(v)).sum();
            pivot * (sum / n).powf(1.0 / v)
        }
    })
}

/// The difference m_p(a, d) - m_p(b, c) whose unique zero (for strictly
/// ordered positive terms) is the power of the analogy.
pub fn delta(q: &Quadruple, p: ExtendedPower) -> Result<f64> {
    q.require_all_positive()?;
    let extremes = PositivePair::new(q.a(), q.d())?;
    let means = PositivePair::new(q.b(), q.c())?;
    Ok(generalized_mean(extremes, p)? - generalized_mean(means, p)?)
}
