use serde::Serialize;

use crate::error::{Error, Result};

/// Step used for derivatives of laws that carry no analytic derivative.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// How a derivative was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference { step: f64 },
}

/// Central difference with one Richardson extrapolation step.
///
/// ```text
/// f'(x) ≈ [8(f(x+h) - f(x-h)) - (f(x+2h) - f(x-2h))] / 12h
/// ```
///
/// The truncation error is O(h⁴); cubics are differentiated exactly up to
/// rounding.
pub fn fd_derivative<F>(f: F, x: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidInput(format!("step must be positive, got {step}")));
    }
    let eval = |at: f64| {
        let value = f(at);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation { at, value })
        }
    };
    let d1 = eval(x + step)? - eval(x - step)?;
    let d2 = eval(x + 2.0 * step)? - eval(x - 2.0 * step)?;
    let d = (8.0 * d1 - d2) / (12.0 * step);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Range)
    }
}

/// Second-order one-sided difference. A positive `step` looks forward from
/// `x`, a negative one looks backward, so `f` is only evaluated on one side.
pub(crate) fn one_sided_derivative<F>(f: F, x: f64, step: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let eval = |at: f64| {
        let value = f(at);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation { at, value })
        }
    };
    let d = (-3.0 * eval(x)? + 4.0 * eval(x + step)? - eval(x + 2.0 * step)?) / (2.0 * step);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Range)
    }
}
