use crate::error::{Error, Result};

/// Sign configuration of a quadruple, derived from its terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    AllPositive,
    /// Exactly the two terms of one ratio, (a, b) or (c, d), are negative.
    TwoNegativeRatio,
    AllNegative,
    Mixed,
}

impl SignMode {
    pub fn name(&self) -> &'static str {
        match self {
            SignMode::AllPositive => "all-positive",
            SignMode::TwoNegativeRatio => "two-negative-ratio",
            SignMode::AllNegative => "all-negative",
            SignMode::Mixed => "mixed",
        }
    }
}

/// Four nonzero finite terms a : b :: c : d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadruple {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    sign_mode: SignMode,
}

impl Quadruple {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for t in [a, b, c, d] {
            if t == 0.0 || !t.is_finite() {
                return Err(Error::NonFiniteOrZero(t));
            }
        }
        let neg = [a < 0.0, b < 0.0, c < 0.0, d < 0.0];
        let sign_mode = match neg {
            [false, false, false, false] => SignMode::AllPositive,
            [true, true, true, true] => SignMode::AllNegative,
            [true, true, false, false] | [false, false, true, true] => SignMode::TwoNegativeRatio,
            _ => SignMode::Mixed,
        };
        Ok(Quadruple { a, b, c, d, sign_mode })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn terms(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn sign_mode(&self) -> SignMode {
        self.sign_mode
    }

    pub fn is_all_positive(&self) -> bool {
        self.sign_mode == SignMode::AllPositive
    }

    /// Errors unless every term is strictly positive.
    pub fn require_all_positive(&self) -> Result<()> {
        if self.is_all_positive() {
            Ok(())
        } else {
            Err(Error::NotAllPositive(self.sign_mode.name()))
        }
    }

    pub fn is_sorted_ascending(&self) -> bool {
        self.a <= self.b && self.b <= self.c && self.c <= self.d
    }
}
