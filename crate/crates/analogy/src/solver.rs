//! Power search by bracketed dichotomic search on the mean difference, and
//! analogical equation solving over the reals and the complex plane.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::means::{delta, TINY_POWER};
use crate::ops::{classify_equality, residual, EqualityClass};
use crate::power::ExtendedPower;
use crate::quadruple::Quadruple;

/// Beyond this power magnitude the search reports a numerically infinite
/// power instead of an enormous finite one.
pub const DEFAULT_P_MAX: f64 = 512.0;

/// Default bracket-width tolerance for the dichotomic search.
pub const DEFAULT_TOL_P: f64 = 1e-10;

/// Relative tolerance for declaring the zero (geometric) power.
pub const GEOMETRIC_TOL: f64 = 1e-12;

const MAX_BISECT_ITERS: usize = 200;

/// Why no real power validates a quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoPowerReason {
    /// Neither do the extremes frame the means nor conversely.
    ExtremesDoNotFrameMeans,
    /// The Boolean cross pattern 0:1::1:0.
    BooleanCross,
}

/// Side of a numerically infinite power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteSide {
    NegInf,
    PosInf,
}

/// Outcome of searching for the power of a quadruple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerResult {
    Unique { p: ExtendedPower, residual: f64 },
    /// Every power, including the infinite ones, validates the analogy.
    AllPowers,
    NoPower(NoPowerReason),
    /// No sign change up to the search bound; the power is numerically
    /// indistinguishable from the given infinity.
    DegenerateInfinite(InfiniteSide),
}

/// Outcome of solving an analogical equation for one missing term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveResult {
    UniqueReal(f64),
    UniqueComplex(Complex64),
    /// Any value >= bound solves the equation (p = -inf only).
    HalfLineAtLeast(f64),
    /// Any value <= bound solves the equation (p = +inf only).
    HalfLineAtMost(f64),
    NoSolution,
}

/// Position of a term within a quadruple a : b :: c : d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Position {
    A,
    B,
    C,
    D,
}

/// Tuning knobs for [`find_p`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Bracket-width halting tolerance.
    pub tol_p: f64,
    /// Bracket expansion bound; beyond it the power counts as infinite.
    pub p_max: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { tol_p: DEFAULT_TOL_P, p_max: DEFAULT_P_MAX }
    }
}

/// Dichotomic search for the root of `f` on a sign-changing bracket.
///
/// The bracket width is halved exactly once per iteration. Returns the
/// midpoint of the final bracket and the number of iterations taken.
fn bisect<F: Fn(f64) -> f64>(mut lo: f64, mut hi: f64, f_lo_sign: f64, f: F, tol: f64) -> (f64, usize) {
    let mut iters = 0;
    while hi - lo > tol && iters < MAX_BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, iters + 1);
        }
        if fm.signum() == f_lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }
    (0.5 * (lo + hi), iters)
}

#[cfg(test)]
pub(crate) fn bisect_for_tests<F: Fn(f64) -> f64>(
    lo: f64,
    hi: f64,
    f_lo_sign: f64,
    f: F,
    tol: f64,
) -> (f64, usize) {
    bisect(lo, hi, f_lo_sign, f, tol)
}

/// Finds the unique power of an ascending all-positive quadruple.
///
/// The sign of the geometric-limit difference selects a one-sided bracket,
/// so finite evaluation never happens with |p| below the tiny-power floor.
pub fn find_p(q: &Quadruple, config: SearchConfig) -> Result<PowerResult> {
    q.require_all_positive()?;
    if !q.is_sorted_ascending() {
        return Err(Error::Unsorted);
    }
    match classify_equality(q.terms())? {
        EqualityClass::AllEqual | EqualityClass::PairwiseEqual => return Ok(PowerResult::AllPowers),
        EqualityClass::MeansEqual | EqualityClass::AllDistinct => {}
    }
    search_sorted(q, config)
}

/// Finds the power for a caller-fixed arrangement, without reordering.
///
/// This is the landscape semantics: the arrangement is the experiment.
/// Reports `NoPower` when neither the extremes frame the means nor the
/// means frame the extremes.
pub fn find_p_fixed(q: &Quadruple, config: SearchConfig) -> Result<PowerResult> {
    q.require_all_positive()?;
    let (lo_e, hi_e) = (q.a().min(q.d()), q.a().max(q.d()));
    let (lo_m, hi_m) = (q.b().min(q.c()), q.b().max(q.c()));
    if lo_e == lo_m && hi_e == hi_m {
        return Ok(PowerResult::AllPowers);
    }
    // Any framing arrangement has an ascending equivalent form among the
    // eight; the extremes/means pairs are preserved as pairs by all forms.
    let sorted = if lo_e <= lo_m && hi_m <= hi_e {
        Quadruple::new(lo_e, lo_m, hi_m, hi_e)?
    } else if lo_m <= lo_e && hi_e <= hi_m {
        Quadruple::new(lo_m, lo_e, hi_e, hi_m)?
    } else {
        return Ok(PowerResult::NoPower(NoPowerReason::ExtremesDoNotFrameMeans));
    };
    if let EqualityClass::AllEqual | EqualityClass::PairwiseEqual = classify_equality(sorted.terms())? {
        return Ok(PowerResult::AllPowers);
    }
    search_sorted(&sorted, config)
}

fn search_sorted(q: &Quadruple, config: SearchConfig) -> Result<PowerResult> {
    let delta_zero = delta(q, ExtendedPower::Zero)?;
    let geo = q.a().sqrt() * q.d().sqrt();
    if delta_zero.abs() <= GEOMETRIC_TOL * geo {
        return Ok(PowerResult::Unique {
            p: ExtendedPower::Zero,
            residual: residual(q, ExtendedPower::Zero)?,
        });
    }

    // delta is strictly increasing with delta(0) = delta_zero, so the root
    // lies on the positive side iff delta_zero < 0.
    let positive_side = delta_zero < 0.0;
    let sign0 = delta_zero.signum();
    let eval = |p: f64| -> f64 { delta(q, ExtendedPower::Finite(p)).expect("|p| >= TINY_POWER") };

    let mut prev = TINY_POWER;
    let mut mag = 1.0;
    let bracket_hi = loop {
        if mag > config.p_max {
            return Ok(PowerResult::DegenerateInfinite(if positive_side {
                InfiniteSide::PosInf
            } else {
                InfiniteSide::NegInf
            }));
        }
        let p = if positive_side { mag } else { -mag };
        let dp = eval(p);
        // an exact 0.0 here is a resolution plateau, not a located root;
        // keep expanding and let the bound decide
        if dp != 0.0 && dp.signum() != sign0 {
            break mag;
        }
        prev = mag;
        mag *= 2.0;
    };

    let (root_mag, _iters) = if positive_side {
        bisect(prev, bracket_hi, sign0, eval, config.tol_p)
    } else {
        // mirror to keep the bracket ascending in magnitude
        bisect(prev, bracket_hi, sign0, |m| eval(-m), config.tol_p)
    };
    let root = if positive_side { root_mag } else { -root_mag };
    let power = ExtendedPower::finite(root)?;
    Ok(PowerResult::Unique { p: power, residual: residual(q, power)? })
}

/// Reduces a missing position to position d through the eight equivalent
/// forms, returning the kernel knowns (a', b', c') for a'^p + x^p = b'^p + c'^p.
fn kernel_knowns<T: Copy>(known: [T; 3], missing: Position) -> [T; 3] {
    let [u, v, w] = known;
    match missing {
        // known = (a, b, c)
        Position::D => [u, v, w],
        // known = (b, c, d); form d : c :: b : a
        Position::A => [w, v, u],
        // known = (a, c, d); form c : a :: d : b
        Position::B => [v, u, w],
        // known = (a, b, d); form b : d :: a : c
        Position::C => [v, w, u],
    }
}

/// Solves the analogical equation for one missing real term.
///
/// `known` holds the three known terms in position order (the quadruple
/// order with the missing position skipped).
pub fn solve_real(known: [f64; 3], missing: Position, p: ExtendedPower) -> Result<SolveResult> {
    for t in known {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonPositive(t));
        }
    }
    let [a, b, c] = kernel_knowns(known, missing);
    Ok(match p {
        ExtendedPower::Zero => SolveResult::UniqueReal(b * c / a),
        ExtendedPower::Finite(v) => {
            if v.abs() < TINY_POWER {
                return Err(Error::TinyFinitePower);
            }
            // factor out the largest known to keep powers in range
            let m = a.max(b).max(c);
            let t = (b / m).powf(v) + (c / m).powf(v) - (a / m).powf(v);
            if t > 0.0 {
                SolveResult::UniqueReal(m * t.powf(1.0 / v))
            } else {
                SolveResult::NoSolution
            }
        }
        ExtendedPower::NegInf => {
            let m = b.min(c);
            if a < m {
                SolveResult::NoSolution
            } else if a == m {
                SolveResult::HalfLineAtLeast(a)
            } else {
                SolveResult::UniqueReal(m)
            }
        }
        ExtendedPower::PosInf => {
            let m = b.max(c);
            if a > m {
                SolveResult::NoSolution
            } else if a == m {
                SolveResult::HalfLineAtMost(a)
            } else {
                SolveResult::UniqueReal(m)
            }
        }
    })
}

/// Solves the analogical equation over the complex numbers with the
/// principal branch for all powers and logarithms.
pub fn solve_complex(
    known: [Complex64; 3],
    missing: Position,
    p: ExtendedPower,
) -> Result<SolveResult> {
    for t in known {
        if t == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroComplexTerm);
        }
        if !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::NonFiniteOrZero(f64::NAN));
        }
    }
    let [a, b, c] = kernel_knowns(known, missing);
    Ok(match p {
        ExtendedPower::Zero => SolveResult::UniqueComplex(b * c / a),
        ExtendedPower::Finite(v) => {
            if v.abs() < TINY_POWER {
                return Err(Error::TinyFinitePower);
            }
            let t = b.powf(v) + c.powf(v) - a.powf(v);
            if t == Complex64::new(0.0, 0.0) {
                SolveResult::NoSolution
            } else {
                SolveResult::UniqueComplex(branch_consistent_root(t, v))
            }
        }
        ExtendedPower::NegInf | ExtendedPower::PosInf => return Err(Error::InfinitePower),
    })
}

/// Picks the p-th root of `t` whose principal p-th power is closest to
/// `t` itself.
///
/// The candidates are exp((Log t + 2*pi*i*n) / p) over the integer branch
/// indices reachable for |p|. For |p| >= 1 one of them recovers `t`
/// exactly under the principal power; for |p| < 1 with |arg t| >= pi*|p|
/// no exact principal root exists and the nearest branch is returned
/// (the equation is then solvable only in the multivalued sense, see
/// [`complex_equation_residual`]).
fn branch_consistent_root(t: Complex64, p: f64) -> Complex64 {
    let log_t = t.ln();
    // a root branch n can be principal-consistent only when
    // |arg t + 2*pi*n| <= pi*|p|, so |n| <= (|p| + 1) / 2
    let reach = ((p.abs() + 1.0) / 2.0).ceil() as i64;
    let mut best = t.powf(1.0 / p);
    let mut best_err = (best.powf(p) - t).norm();
    for n in -reach..=reach {
        let shifted = log_t + Complex64::new(0.0, 2.0 * std::f64::consts::PI * n as f64);
        let candidate = (shifted / p).exp();
        // candidate's own principal power is what callers will evaluate
        let err = (candidate.powf(p) - t).norm();
        if err < best_err {
            best = candidate;
            best_err = err;
        }
    }
    best
}

/// Relative residual of the analogical equation for a complex solution,
/// with the power of `x` taken as the multivalued complex power: the
/// branch closest to satisfying the equation is used.
pub fn complex_equation_residual(
    known: [Complex64; 3],
    missing: Position,
    x: Complex64,
    p: f64,
) -> f64 {
    let [a, b, c] = kernel_knowns(known, missing);
    let (ap, bp, cp) = (a.powf(p), b.powf(p), c.powf(p));
    let rhs = bp + cp;
    let denom = (ap.norm() + bp.norm() + cp.norm()).max(f64::MIN_POSITIVE);
    let log_x = x.ln();
    // root extraction wraps the argument by up to (1 + |p|) * pi / |p|,
    // so the branch index needed to undo it scales with 1/|p|
    let reach = (((p.abs() + 2.0) / p.abs()).ceil() as i64).clamp(1, 100_000) + 2;
    let mut best = f64::INFINITY;
    for n in -reach..=reach {
        let shifted = log_x + Complex64::new(0.0, 2.0 * std::f64::consts::PI * n as f64);
        let xp = (shifted * p).exp();
        let res = (ap + xp - rhs).norm() / denom;
        if res < best {
            best = res;
        }
    }
    best
}

/// Counts strict sign alternations of the mean difference on an n-point
/// grid over [p_lo, p_hi], with the geometric-limit sample standing in
/// for the excluded neighborhood of zero.
///
/// The brute-force multiplicity oracle: the uniqueness theorem predicts
/// exactly one alternation for strictly ordered quadruples.
pub fn sign_change_scan(q: &Quadruple, p_lo: f64, p_hi: f64, n: usize) -> Result<usize> {
    q.require_all_positive()?;
    if !q.is_sorted_ascending() {
        return Err(Error::Unsorted);
    }
    // equal-pair configurations have an identically zero difference
    if matches!(
        classify_equality(q.terms())?,
        EqualityClass::AllEqual | EqualityClass::PairwiseEqual
    ) {
        return Err(Error::NotDistinct);
    }
    if n < 2 || !(p_lo < p_hi) || !p_lo.is_finite() || !p_hi.is_finite() {
        return Err(Error::InvalidInterval(p_lo, p_hi, n));
    }

    let step = (p_hi - p_lo) / (n - 1) as f64;
    let mut samples: Vec<ExtendedPower> = Vec::with_capacity(n + 1);
    let mut zero_inserted = false;
    for i in 0..n {
        let p = p_lo + i as f64 * step;
        if p.abs() < TINY_POWER {
            if !zero_inserted {
                samples.push(ExtendedPower::Zero);
                zero_inserted = true;
            }
            continue;
        }
        if p > 0.0 && !zero_inserted && p_lo < 0.0 {
            samples.push(ExtendedPower::Zero);
            zero_inserted = true;
        }
        samples.push(ExtendedPower::Finite(p));
    }

    let values: Vec<f64> = samples
        .par_iter()
        .map(|&p| delta(q, p).expect("validated inputs"))
        .collect();

    let mut changes = 0;
    let mut last_sign = 0.0;
    for v in values {
        if v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    Ok(changes)
}
