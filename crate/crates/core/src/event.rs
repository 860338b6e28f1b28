use serde::Serialize;

use crate::error::{Error, Result};

/// A point `(t, c)` of the event plane: a time in years and a capital.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FinancialEvent {
    time: f64,
    capital: f64,
}

impl FinancialEvent {
    pub fn new(time: f64, capital: f64) -> Result<Self> {
        if !time.is_finite() {
            return Err(Error::NonFinite("event time"));
        }
        if !capital.is_finite() {
            return Err(Error::NonFinite("event capital"));
        }
        Ok(Self { time, capital })
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn capital(&self) -> f64 {
        self.capital
    }
}

/// A per-period compound interest rate `i > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Rate(f64);

impl Rate {
    pub fn new(i: f64) -> Result<Self> {
        if !i.is_finite() {
            return Err(Error::NonFinite("interest rate"));
        }
        if i <= -1.0 {
            return Err(Error::InvalidRate(i));
        }
        Ok(Self(i))
    }

    /// The rate of the trivial fibration, where capital does not grow.
    pub const ZERO: Rate = Rate(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    /// Accumulation factor over one period, `u = 1 + i`.
    pub fn accumulation(self) -> f64 {
        1.0 + self.0
    }

    /// `u^t`, failing when the power leaves the floating-point range.
    pub fn factor(self, t: f64) -> Result<f64> {
        let f = self.accumulation().powf(t);
        if f.is_finite() && f > 0.0 {
            Ok(f)
        } else {
            Err(Error::Range)
        }
    }
}

impl std::fmt::Display for Rate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A tangent vector `(k, v)` applied at an event: `k` along time, `v` along capital.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentVector {
    pub base: FinancialEvent,
    pub k: f64,
    pub v: f64,
}

impl TangentVector {
    pub fn new(base: FinancialEvent, k: f64, v: f64) -> Result<Self> {
        if !k.is_finite() || !v.is_finite() {
            return Err(Error::NonFinite("tangent vector component"));
        }
        Ok(Self { base, k, v })
    }
}
