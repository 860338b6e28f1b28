//! Discount laws acting on the natural fibration: financial translation
//! between the fibers `{t} × ℝ`, its derivative, the Christoffel form
//! `Γ_t(k, c) = F′(0) k c`, the connection it induces, and the force of
//! interest of a capitalization law.

use serde::Serialize;

use crate::diff::DerivativeSource;
use crate::error::{Error, Result};
use crate::event::{FinancialEvent, TangentVector};
use crate::law::{CapitalizationLaw, DiscountLaw};
use crate::{approx_eq, scale, DEFAULT_TOL};

/// The bilinear form `Γ_t(k, c) = γ k c` on the fiber over `time`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChristoffelForm {
    pub time: f64,
    pub gamma: f64,
    /// How `γ = F′(0)` was obtained; `None` when given directly.
    pub source: Option<DerivativeSource>,
}

impl ChristoffelForm {
    pub fn new(time: f64, gamma: f64) -> Result<Self> {
        if !time.is_finite() || !gamma.is_finite() {
            return Err(Error::NonFinite("Christoffel form"));
        }
        Ok(Self { time, gamma, source: None })
    }

    pub fn apply(&self, k: f64, c: f64) -> f64 {
        self.gamma * k * c
    }
}

/// `τ_h(t, c) = (t + h, F(h)⁻¹ c)`.
pub fn financial_translate(e: FinancialEvent, h: f64, f: &DiscountLaw) -> Result<FinancialEvent> {
    let factor = f.factor(h)?;
    let capital = e.capital() / factor;
    if !capital.is_finite() {
        return Err(Error::Range);
    }
    FinancialEvent::new(e.time() + h, capital)
}

/// Derivative of `(h, c) ↦ (t + h, F(h)⁻¹ c)` at `(0, c)` applied to `(k, v)`:
/// `(k, v - F′(0) k c)`.
pub fn translation_derivative(f: &DiscountLaw, c: f64, k: f64, v: f64) -> Result<(f64, f64)> {
    let (slope, _) = f.derivative_at_zero()?;
    Ok((k, v - slope * k * c))
}

pub fn christoffel_from_discount(f: &DiscountLaw, t: f64) -> Result<ChristoffelForm> {
    let (gamma, source) = f.derivative_at_zero()?;
    let mut form = ChristoffelForm::new(t, gamma)?;
    form.source = Some(source);
    Ok(form)
}

/// The linear discount law `F(h) = 1 + Γ_t(h, 1)`, on the radius
/// `min(1, 0.5/|γ|)` where it stays at least 1/2.
pub fn discount_from_christoffel(g: &ChristoffelForm) -> DiscountLaw {
    let gamma = g.gamma;
    let radius = if gamma == 0.0 { 1.0 } else { (0.5 / gamma.abs()).min(1.0) };
    DiscountLaw::new(move |h| 1.0 + gamma * h, radius).expect("radius is positive").with_derivative(move |_| gamma)
}

/// Horizontal lift of the time vector `k` through `e`:
/// `C_t((t, k), (t, c)) = ((t, c), (k, -Γ_t(k, c)))`.
pub fn connection_apply(g: &ChristoffelForm, k: f64, e: FinancialEvent) -> Result<TangentVector> {
    if !approx_eq(e.time(), g.time, DEFAULT_TOL) {
        return Err(Error::FiberMismatch { fiber: g.time, event: e.time() });
    }
    TangentVector::new(e, k, -g.apply(k, e.capital()))
}

/// The local discount law that `u` induces at time `t`:
/// `F(h) = u(t) / u(t + h)`, so that `F(h)⁻¹ = u(t+h) u(t)⁻¹`.
///
/// The radius is half the distance from `t` to the edge of `u`'s domain.
pub fn induced_discount(u: &CapitalizationLaw, t: f64) -> Result<DiscountLaw> {
    let domain = u.domain();
    domain.check(t)?;
    let at_t = u.positive_at(t)?;
    let radius = 0.5 * domain.distance_to_boundary(t);
    if !(radius > 0.0) {
        return Err(Error::Domain { value: t, lo: domain.lo(), hi: domain.hi() });
    }
    let eval = u.eval_fn();
    let law = DiscountLaw::new(move |h| at_t / eval(t + h), radius)?;
    Ok(match u.analytic_derivative() {
        Some(d) => {
            let eval = u.eval_fn();
            law.with_derivative(move |h| {
                let ut = eval(t + h);
                -at_t * d(t + h) / (ut * ut)
            })
        }
        None => law,
    })
}

/// Instantaneous force of interest `δ(t) = u′(t) / u(t)`.
pub fn force_of_interest(u: &CapitalizationLaw, t: f64) -> Result<f64> {
    u.domain().check(t)?;
    let value = u.positive_at(t)?;
    let (slope, _) = u.derivative_at(t)?;
    Ok(slope / value)
}

/// Horizontal lift of `k` through `e` for the connection induced by `u`,
/// built from the local discount law at `e`'s time.
pub fn global_connection(u: &CapitalizationLaw, k: f64, e: FinancialEvent) -> Result<TangentVector> {
    let f = induced_discount(u, e.time())?;
    let g = christoffel_from_discount(&f, e.time())?;
    connection_apply(&g, k, e)
}

/// Checks `-Γ_t(k, c) = δ(t) k c` for the connection induced by `u`.
pub fn verify_force_relation(u: &CapitalizationLaw, t: f64, k: f64, c: f64, tol: f64) -> bool {
    let lhs = induced_discount(u, t).and_then(|f| christoffel_from_discount(&f, t)).map(|g| -g.apply(k, c));
    let rhs = force_of_interest(u, t).map(|delta| delta * k * c);
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => (a - b).abs() <= tol * scale(a, b),
        _ => false,
    }
}
