//! The natural fibration `(t, c) ↦ t`, the compound fibration
//! `(t, c) ↦ (1+i)^{-t} c`, and the fibration induced by a general
//! capitalization factor. Fibers of the compound fibration are the classes
//! of events with equal present value.

use std::cmp::Ordering;

use serde::Serialize;

use crate::diff::{one_sided_derivative, DEFAULT_FD_STEP};
use crate::error::{Error, Result};
use crate::event::{FinancialEvent, Rate};
use crate::law::CapitalizationLaw;
use crate::{approx_eq, scale, DEFAULT_TOL};

pub fn project_natural(e: FinancialEvent) -> f64 {
    e.time()
}

/// Present value of `e` at rate `i`: `(1+i)^{-t} c`.
pub fn project_compound(e: FinancialEvent, i: Rate) -> Result<f64> {
    let value = i.factor(-e.time())? * e.capital();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Range)
    }
}

/// Projection induced by a capitalization factor `f` given on `[0, ∞)`:
/// `f(t)⁻¹ c` for `t ≥ 0` and `f(-t) c` for `t < 0`.
pub fn project_general(e: FinancialEvent, f: &CapitalizationLaw) -> Result<f64> {
    let t = e.time();
    let value = if t >= 0.0 { e.capital() / f.positive_at(t)? } else { f.positive_at(-t)? * e.capital() };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Range)
    }
}

/// One-sided slopes at 0 of the two branches `g_>(t) = f(t)⁻¹` and
/// `g_<(t) = f(-t)`, next to `-f′(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GluingSlopes {
    pub right: f64,
    pub left: f64,
    pub expected: f64,
}

/// Computes the gluing slopes, evaluating `f` only on `[0, ∞)`.
pub fn gluing_slopes(f: &CapitalizationLaw) -> Result<GluingSlopes> {
    let at_zero = f.positive_at(0.0)?;
    let right = one_sided_derivative(|t| 1.0 / f.eval(t), 0.0, DEFAULT_FD_STEP)?;
    let left = one_sided_derivative(|t| f.eval(-t), 0.0, -DEFAULT_FD_STEP)?;
    let slope = match f.analytic_derivative() {
        Some(d) => d(0.0),
        None => one_sided_derivative(|t| f.eval(t), 0.0, DEFAULT_FD_STEP)?,
    };
    if !slope.is_finite() {
        return Err(Error::Evaluation { at: 0.0, value: slope });
    }
    // -f'(0) f(0)^-2 reduces to -f'(0) once f(0) = 1
    let expected = -slope / (at_zero * at_zero);
    Ok(GluingSlopes { right, left, expected })
}

/// Whether the two branches of the general projection glue to a C¹ map at
/// `t = 0`: both one-sided slopes equal `-f′(0)` within `tol`.
pub fn general_gluing_check(f: &CapitalizationLaw, tol: f64) -> bool {
    match gluing_slopes(f) {
        Ok(s) => (s.right - s.expected).abs() <= tol && (s.left - s.expected).abs() <= tol,
        Err(_) => false,
    }
}

/// `e1 ∼_i e2`: equal present values at rate `i` within relative `tol`.
pub fn equivalent(e1: FinancialEvent, e2: FinancialEvent, i: Rate, tol: f64) -> bool {
    match (project_compound(e1, i), project_compound(e2, i)) {
        (Ok(a), Ok(b)) => approx_eq(a, b, tol),
        _ => false,
    }
}

/// A fiber of the compound fibration: the class of all events with present
/// value `base_capital` at `rate`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fiber {
    pub rate: Rate,
    pub base_capital: f64,
}

impl Fiber {
    pub fn new(rate: Rate, base_capital: f64) -> Result<Self> {
        if !base_capital.is_finite() {
            return Err(Error::NonFinite("base capital"));
        }
        Ok(Self { rate, base_capital })
    }

    /// Capital evolution of the fiber, `(1+i)^t c₀`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let value = self.rate.factor(t)? * self.base_capital;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Range)
        }
    }

    /// The fiber's event at time `t`.
    pub fn event_at(&self, t: f64) -> Result<FinancialEvent> {
        FinancialEvent::new(t, self.eval(t)?)
    }

    pub fn contains(&self, e: FinancialEvent, tol: f64) -> bool {
        project_compound(e, self.rate).is_ok_and(|c| approx_eq(c, self.base_capital, tol))
    }

    /// Present-value order within tolerance `tol`; fibers must share a rate.
    pub fn compare_with_tol(&self, other: &Fiber, tol: f64) -> Result<Ordering> {
        let (a, b) = (self.rate.value(), other.rate.value());
        if !approx_eq(a, b, tol) {
            return Err(Error::Incomparable(a, b));
        }
        let (x, y) = (self.base_capital, other.base_capital);
        Ok(if (x - y).abs() <= tol * scale(x, y) {
            Ordering::Equal
        } else if x < y {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }
}

pub fn fiber_of(e: FinancialEvent, i: Rate) -> Result<Fiber> {
    Fiber::new(i, project_compound(e, i)?)
}

/// Preorder on same-rate fibers: `[e] ≼ [e′]` iff the present value of `e`
/// does not exceed that of `e′`.
pub fn fiber_compare(a: &Fiber, b: &Fiber) -> Result<Ordering> {
    a.compare_with_tol(b, DEFAULT_TOL)
}
