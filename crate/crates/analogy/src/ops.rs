//! The analogy-in-power-p predicate, its equivalent forms and reorderings,
//! the reduction calculus, degenerate-equality classification, the Boolean
//! special case and the guarded negative-number extension.

use crate::error::{Error, Result};
use crate::means::{generalized_mean, PositivePair};
use crate::power::ExtendedPower;
use crate::quadruple::{Quadruple, SignMode};

/// Default relative tolerance for [`check`].
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Outcome of checking an analogy at a given power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogyVerdict {
    pub holds: bool,
    /// Relative mismatch |m_p(a,d) - m_p(b,c)| / max of the two means.
    pub residual: f64,
    pub p_used: ExtendedPower,
}

/// Structural equality configuration of four terms, after ascending sort.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityClass {
    AllDistinct,
    /// b = c only: a continuous analogy with a unique power.
    MeansEqual,
    /// a = b and c = d: every power validates the analogy.
    PairwiseEqual,
    AllEqual,
}

/// Verdict for the Boolean special case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanVerdict {
    /// Every power, including the infinite ones, validates the analogy.
    ValidAllP,
    /// No power validates the analogy.
    InvalidNoP,
}

/// Relative mismatch of the two generalized means of an all-positive
/// quadruple at power `p`.
pub fn residual(q: &Quadruple, p: ExtendedPower) -> Result<f64> {
    q.require_all_positive()?;
    let m_extremes = generalized_mean(PositivePair::new(q.a(), q.d())?, p)?;
    let m_means = generalized_mean(PositivePair::new(q.b(), q.c())?, p)?;
    Ok((m_extremes - m_means).abs() / m_extremes.max(m_means))
}

/// Tests whether the analogy holds at power `p` within `rel_tol`.
pub fn check(q: &Quadruple, p: ExtendedPower, rel_tol: f64) -> Result<AnalogyVerdict> {
    if !(rel_tol > 0.0) {
        return Err(Error::NonPositive(rel_tol));
    }
    let residual = residual(q, p)?;
    Ok(AnalogyVerdict { holds: residual <= rel_tol, residual, p_used: p })
}

/// The eight equivalent arrangements of an analogy, original first.
///
/// Order is fixed: left display column top to bottom, then right column.
pub fn equivalent_forms(q: &Quadruple) -> [Quadruple; 8] {
    let (a, b, c, d) = (q.a(), q.b(), q.c(), q.d());
    let mk = |a, b, c, d| Quadruple::new(a, b, c, d).expect("terms already validated");
    [
        mk(a, b, c, d),
        mk(a, c, b, d),
        mk(b, a, d, c),
        mk(b, d, a, c),
        mk(c, a, d, b),
        mk(c, d, a, b),
        mk(d, b, c, a),
        mk(d, c, b, a),
    ]
}

/// The three reorderings of four distinct values that are relevant to
/// analogy: with (a,b,c,d) the ascending sort, (a,b,c,d), (a,c,d,b)
/// and (a,d,b,c).
pub fn reorderings(terms: [f64; 4]) -> Result<[Quadruple; 3]> {
    let mut sorted = terms;
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("validated below"));
    for t in sorted {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::NonFiniteOrZero(t));
        }
    }
    if sorted[0] == sorted[1] || sorted[1] == sorted[2] || sorted[2] == sorted[3] {
        return Err(Error::NotDistinct);
    }
    let [a, b, c, d] = sorted;
    Ok([
        Quadruple::new(a, b, c, d)?,
        Quadruple::new(a, c, d, b)?,
        Quadruple::new(a, d, b, c)?,
    ])
}

/// Multiplies every term by a positive factor; the verdict of [`check`]
/// is preserved at every power.
pub fn scale(q: &Quadruple, factor: f64) -> Result<Quadruple> {
    if !(factor > 0.0) || !factor.is_finite() {
        return Err(Error::NonPositiveScale(factor));
    }
    Quadruple::new(q.a() * factor, q.b() * factor, q.c() * factor, q.d() * factor)
}

/// Divides all terms by d, mapping the quadruple into (0, 1].
///
/// Requires d to be the maximal term; use [`equivalent_forms`] to place
/// the largest term last first.
pub fn to_unit_interval(q: &Quadruple) -> Result<Quadruple> {
    q.require_all_positive()?;
    let d = q.d();
    if q.a() > d || q.b() > d || q.c() > d {
        return Err(Error::LastNotMaximal);
    }
    Quadruple::new(q.a() / d, q.b() / d, q.c() / d, 1.0)
}

/// Maps an analogy in power p to the equivalent arithmetic analogy:
/// term-wise p-th powers for a finite p, logarithms for the zero power.
///
/// Returns raw terms rather than a [`Quadruple`] because the logarithm
/// image may contain zero (ln 1 = 0).
pub fn to_arithmetic(q: &Quadruple, p: ExtendedPower) -> Result<[f64; 4]> {
    q.require_all_positive()?;
    match p {
        ExtendedPower::NegInf | ExtendedPower::PosInf => Err(Error::InfinitePower),
        ExtendedPower::Zero => Ok([q.a().ln(), q.b().ln(), q.c().ln(), q.d().ln()]),
        ExtendedPower::Finite(v) => {
            Ok([q.a().powf(v), q.b().powf(v), q.c().powf(v), q.d().powf(v)])
        }
    }
}

/// Residual of the arithmetic analogy a + d = b + c on raw terms.
pub fn arithmetic_residual(terms: [f64; 4]) -> f64 {
    let [a, b, c, d] = terms;
    let lhs = a + d;
    let rhs = b + c;
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Raises every term to the given exponent; the analogy in p*exponent of
/// the input is equivalent to the analogy in p of the result.
///
/// Hard guard: rejected for any quadruple with a negative term, where the
/// equivalence breaks down.
pub fn compose_powers(q: &Quadruple, exponent: f64) -> Result<Quadruple> {
    q.require_all_positive()?;
    if exponent == 0.0 || !exponent.is_finite() {
        return Err(Error::ZeroExponent);
    }
    Quadruple::new(
        q.a().powf(exponent),
        q.b().powf(exponent),
        q.c().powf(exponent),
        q.d().powf(exponent),
    )
}

/// Term-wise reciprocal; the analogy in p of the input is equivalent to
/// the analogy in -p of the result.
pub fn to_reciprocal(q: &Quadruple) -> Result<Quadruple> {
    q.require_all_positive()?;
    Quadruple::new(1.0 / q.a(), 1.0 / q.b(), 1.0 / q.c(), 1.0 / q.d())
}

/// Classifies the equality configuration of four positive terms by exact
/// floating-point comparison after ascending sort.
///
/// Configurations outside the recognized degeneracies (e.g. a = b only)
/// report `AllDistinct` and are left to the power search, which reports
/// them as numerically infinite powers.
pub fn classify_equality(terms: [f64; 4]) -> Result<EqualityClass> {
    let mut sorted = terms;
    for t in sorted {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonPositive(t));
        }
    }
    sorted.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    let [a, b, c, d] = sorted;
    Ok(if a == d {
        EqualityClass::AllEqual
    } else if a == b && c == d {
        EqualityClass::PairwiseEqual
    } else if b == c && a < b && c < d {
        EqualityClass::MeansEqual
    } else {
        EqualityClass::AllDistinct
    })
}

/// The Boolean special case, terms encoded as 0/1.
///
/// Valid are exactly the quadruples reducible through the eight forms to
/// 0:0::0:0, 1:1::1:1 or 0:0::1:1; the cross pattern 0:1::1:0 and the
/// odd-count patterns admit no power.
pub fn boolean_check(terms: [f64; 4]) -> Result<BooleanVerdict> {
    for t in terms {
        if t != 0.0 && t != 1.0 {
            return Err(Error::NotBoolean(t));
        }
    }
    let [a, b, c, d] = terms;
    let ones = terms.iter().filter(|&&t| t == 1.0).count();
    Ok(match ones {
        0 | 4 => BooleanVerdict::ValidAllP,
        2 => {
            // the only invalid two-one patterns are 0:1::1:0 and 1:0::0:1
            if a == d && b == c && a != b {
                BooleanVerdict::InvalidNoP
            } else {
                BooleanVerdict::ValidAllP
            }
        }
        _ => BooleanVerdict::InvalidNoP,
    })
}

/// Normalizes a quadruple with negative terms to an all-positive one via
/// the ratio-exchange rules.
///
/// For a negative (a, b) ratio the terms are exchanged and negated:
/// (-b, -a, c, d). A negative (c, d) ratio is brought to the front by
/// symmetry of conformity first. All-negative quadruples negate in place.
pub fn negative_normalize(q: &Quadruple) -> Result<Quadruple> {
    match q.sign_mode() {
        SignMode::AllNegative => Quadruple::new(-q.a(), -q.b(), -q.c(), -q.d()),
        SignMode::TwoNegativeRatio => {
            if q.a() < 0.0 {
                Quadruple::new(-q.b(), -q.a(), q.c(), q.d())
            } else {
                // symmetry: a:b::c:d <=> c:d::a:b, then the (a,b) rule
                Quadruple::new(-q.d(), -q.c(), q.a(), q.b())
            }
        }
        mode => Err(Error::UnsupportedSignMode(mode.name())),
    }
}
