//! Capitalization and discount laws, the built-in law registry, and sampled
//! validation of the law axioms.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::diff::{fd_derivative, DerivativeSource, DEFAULT_FD_STEP};
use crate::error::{Error, Result};
use crate::event::Rate;

/// A shareable real function.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A closed interval of the real line; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const REAL: Interval = Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
    pub const NON_NEGATIVE: Interval = Interval { lo: 0.0, hi: f64::INFINITY };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidInput(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain { value: x, lo: self.lo, hi: self.hi })
        }
    }

    /// Distance from `x` to the nearer end; infinite for an unbounded side.
    pub fn distance_to_boundary(&self, x: f64) -> f64 {
        (x - self.lo).min(self.hi - x)
    }

    /// `n + 1` equally spaced points from `lo` to `hi`.
    pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        if n == 0 {
            return vec![lo];
        }
        let dx = (hi - lo) / n as f64;
        (0..=n).map(|k| if k == n { hi } else { lo + k as f64 * dx }).collect()
    }
}

/// Laws shipped with the crate; the ids are stable and used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LawKind {
    /// `u(h) = (1+i)^h`
    Compound,
    /// `u(h) = 1 + i h`, restricted to where it stays non-negative
    Simple,
    /// `u(h) = e^{δh}`
    ExpForce,
}

impl LawKind {
    pub const ALL: [LawKind; 3] = [LawKind::Compound, LawKind::Simple, LawKind::ExpForce];

    pub fn id(self) -> &'static str {
        match self {
            LawKind::Compound => "compound",
            LawKind::Simple => "simple",
            LawKind::ExpForce => "exp-force",
        }
    }

    /// Builds the law with its single parameter: the rate `i` for compound
    /// and simple laws, the force `δ` for the exponential law.
    pub fn capitalization(self, param: f64) -> Result<CapitalizationLaw> {
        match self {
            LawKind::Compound => Ok(CapitalizationLaw::compound(Rate::new(param)?)),
            LawKind::Simple => Ok(CapitalizationLaw::simple(Rate::new(param)?)),
            LawKind::ExpForce => CapitalizationLaw::exp_force(param),
        }
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for LawKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawKind::ALL.into_iter().find(|k| k.id() == s).ok_or_else(|| Error::InvalidInput(format!("unknown law '{s}'")))
    }
}

/// A capitalization law `h ↦ u(h)` with `u(0) = 1`, `u > 0` and `u` of class C¹.
#[derive(Clone)]
pub struct CapitalizationLaw {
    eval: RealFn,
    derivative: Option<RealFn>,
    domain: Interval,
    label: String,
}

impl CapitalizationLaw {
    pub fn new<F>(eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { eval: Arc::new(eval), derivative: None, domain: Interval::REAL, label: "custom".into() }
    }

    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn compound(rate: Rate) -> Self {
        let u = rate.accumulation();
        let ln_u = u.ln();
        Self::new(move |h| u.powf(h)).with_derivative(move |h| ln_u * u.powf(h)).with_label(format!("compound({rate})"))
    }

    pub fn simple(rate: Rate) -> Self {
        let i = rate.value();
        let domain = if i > 0.0 {
            Interval { lo: -1.0 / i, hi: f64::INFINITY }
        } else if i < 0.0 {
            Interval { lo: f64::NEG_INFINITY, hi: -1.0 / i }
        } else {
            Interval::REAL
        };
        Self::new(move |h| 1.0 + i * h)
            .with_derivative(move |_| i)
            .with_domain(domain)
            .with_label(format!("simple({rate})"))
    }

    pub fn exp_force(delta: f64) -> Result<Self> {
        if !delta.is_finite() {
            return Err(Error::NonFinite("force of interest"));
        }
        Ok(Self::new(move |h| (delta * h).exp())
            .with_derivative(move |h| delta * (delta * h).exp())
            .with_label(format!("exp-force({delta})")))
    }

    pub fn eval(&self, h: f64) -> f64 {
        (self.eval)(h)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// `u′(h)`, analytic when available, otherwise a finite difference with
    /// [`DEFAULT_FD_STEP`].
    pub fn derivative_at(&self, h: f64) -> Result<(f64, DerivativeSource)> {
        match &self.derivative {
            Some(d) => {
                let value = d(h);
                if value.is_finite() {
                    Ok((value, DerivativeSource::Analytic))
                } else {
                    Err(Error::Evaluation { at: h, value })
                }
            }
            None => Ok((
                fd_derivative(|x| self.eval(x), h, DEFAULT_FD_STEP)?,
                DerivativeSource::FiniteDifference { step: DEFAULT_FD_STEP },
            )),
        }
    }

    /// The analytic derivative closure, if any.
    pub(crate) fn analytic_derivative(&self) -> Option<RealFn> {
        self.derivative.clone()
    }

    pub(crate) fn eval_fn(&self) -> RealFn {
        self.eval.clone()
    }

    /// Evaluates `u(h)` and requires it to be finite and positive.
    pub fn positive_at(&self, h: f64) -> Result<f64> {
        let value = self.eval(h);
        if !value.is_finite() {
            Err(Error::Evaluation { at: h, value })
        } else if value <= 0.0 {
            Err(Error::InvalidLaw { at: h, value })
        } else {
            Ok(value)
        }
    }
}

impl fmt::Debug for CapitalizationLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CapitalizationLaw")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// A local discount law `h ↦ F(h)` on the neighborhood `|h| ≤ radius` of 0,
/// with `F(0) = 1`, `F > 0` and `F` of class C¹.
#[derive(Clone)]
pub struct DiscountLaw {
    eval: RealFn,
    derivative: Option<RealFn>,
    radius: f64,
}

impl DiscountLaw {
    pub fn new<F>(eval: F, radius: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_arc(Arc::new(eval), radius)
    }

    pub(crate) fn from_arc(eval: RealFn, radius: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::InvalidInput(format!("discount radius must be positive, got {radius}")));
        }
        Ok(Self { eval, derivative: None, radius })
    }

    pub fn with_derivative<F>(self, derivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.with_derivative_arc(Arc::new(derivative))
    }

    pub(crate) fn with_derivative_arc(mut self, derivative: RealFn) -> Self {
        self.derivative = Some(derivative);
        self
    }

    /// `F(h) = (1+i)^{-h}` on the whole line.
    pub fn compound(rate: Rate) -> Self {
        let u = rate.accumulation();
        let ln_u = u.ln();
        Self { eval: Arc::new(move |h| u.powf(-h)), derivative: None, radius: f64::INFINITY }
            .with_derivative(move |h| -ln_u * u.powf(-h))
    }

    pub fn eval(&self, h: f64) -> f64 {
        (self.eval)(h)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// `F(h)` for `|h| ≤ radius`, required finite and positive.
    pub fn factor(&self, h: f64) -> Result<f64> {
        if !(h.abs() <= self.radius) {
            return Err(Error::Domain { value: h, lo: -self.radius, hi: self.radius });
        }
        let value = self.eval(h);
        if !value.is_finite() {
            Err(Error::Evaluation { at: h, value })
        } else if value <= 0.0 {
            Err(Error::InvalidLaw { at: h, value })
        } else {
            Ok(value)
        }
    }

    /// `F′(0)`: analytic when supplied, else central difference with
    /// [`DEFAULT_FD_STEP`].
    pub fn derivative_at_zero(&self) -> Result<(f64, DerivativeSource)> {
        match &self.derivative {
            Some(d) => {
                let value = d(0.0);
                if value.is_finite() {
                    Ok((value, DerivativeSource::Analytic))
                } else {
                    Err(Error::Evaluation { at: 0.0, value })
                }
            }
            None => {
                if 2.0 * DEFAULT_FD_STEP > self.radius {
                    return Err(Error::Domain { value: 2.0 * DEFAULT_FD_STEP, lo: -self.radius, hi: self.radius });
                }
                Ok((
                    fd_derivative(|h| self.eval(h), 0.0, DEFAULT_FD_STEP)?,
                    DerivativeSource::FiniteDifference { step: DEFAULT_FD_STEP },
                ))
            }
        }
    }
}

impl fmt::Debug for DiscountLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscountLaw")
            .field("radius", &self.radius)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// One failed axiom found while sampling a law.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The factor at time 0 is not 1.
    NotUnitAtZero {
        value: f64,
    },
    NonPositive {
        at: f64,
        value: f64,
    },
    NonFinite {
        at: f64,
    },
    OutsideDomain {
        at: f64,
    },
    /// Finite differences at two step sizes disagree or blow up.
    NotC1Plausible {
        at: f64,
        coarse: f64,
        fine: f64,
    },
    /// The supplied analytic derivative disagrees with finite differences.
    DerivativeMismatch {
        at: f64,
        analytic: f64,
        numeric: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotUnitAtZero { value } => write!(f, "factor at 0 is {value}, not 1"),
            Violation::NonPositive { at, value } => write!(f, "factor {value} at {at} is not positive"),
            Violation::NonFinite { at } => write!(f, "factor at {at} is not finite"),
            Violation::OutsideDomain { at } => write!(f, "sample {at} lies outside the law's domain"),
            Violation::NotC1Plausible { at, coarse, fine } => {
                write!(f, "derivative at {at} unstable: {coarse} (coarse) vs {fine} (fine)")
            }
            Violation::DerivativeMismatch { at, analytic, numeric } => {
                write!(f, "analytic derivative {analytic} at {at} differs from numeric {numeric}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

const COARSE_STEP: f64 = 1e-3;
const FINE_STEP: f64 = 1e-5;
const C1_TOL: f64 = 1e-4;

fn check_law(
    eval: &dyn Fn(f64) -> f64,
    derivative: Option<&RealFn>,
    in_domain: &dyn Fn(f64) -> bool,
    grid: &[f64],
) -> ValidationReport {
    let mut violations = Vec::new();
    let at_zero = eval(0.0);
    if !((at_zero - 1.0).abs() <= 4.0 * f64::EPSILON) {
        violations.push(Violation::NotUnitAtZero { value: at_zero });
    }
    for &h in grid {
        if !in_domain(h) {
            violations.push(Violation::OutsideDomain { at: h });
            continue;
        }
        let value = eval(h);
        if !value.is_finite() {
            violations.push(Violation::NonFinite { at: h });
            continue;
        }
        if value <= 0.0 {
            violations.push(Violation::NonPositive { at: h, value });
        }
        let coarse = fd_derivative(eval, h, COARSE_STEP).unwrap_or(f64::NAN);
        let fine = fd_derivative(eval, h, FINE_STEP).unwrap_or(f64::NAN);
        let stable =
            coarse.is_finite() && fine.is_finite() && (coarse - fine).abs() <= C1_TOL * crate::scale(coarse, fine);
        if !stable {
            violations.push(Violation::NotC1Plausible { at: h, coarse, fine });
            continue;
        }
        if let Some(d) = derivative {
            let analytic = d(h);
            if !(analytic.is_finite() && (analytic - fine).abs() <= C1_TOL * crate::scale(analytic, fine)) {
                violations.push(Violation::DerivativeMismatch { at: h, analytic, numeric: fine });
            }
        }
    }
    ValidationReport { violations }
}

/// Samples `u` on `grid` and reports every failed axiom: `u(0) = 1`,
/// positivity, and C¹ plausibility (stable finite differences at two steps).
pub fn validate_capitalization_law(u: &CapitalizationLaw, grid: &[f64]) -> ValidationReport {
    let domain = u.domain();
    check_law(&|h| u.eval(h), u.derivative.as_ref(), &|h| domain.contains(h), grid)
}

/// As [`validate_capitalization_law`], with samples bounded by the radius.
pub fn validate_discount_law(f: &DiscountLaw, grid: &[f64]) -> ValidationReport {
    let radius = f.radius();
    check_law(&|h| f.eval(h), f.derivative.as_ref(), &|h| h.abs() <= radius, grid)
}
