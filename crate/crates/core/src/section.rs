//! Sections of the compound fibration and section traces.
//!
//! A section picks one event on every fiber: `s(c) = (f(c), u^{f(c)} c)`.
//! The graph of a capital evolution `M` is the trace of a section exactly
//! when `v(t) = M(t) u^{-t}` is a bijection onto the capitals, in which case
//! `v` is the inverse of the section's time map and `M(t) = u^t v(t)`.
//! On a sample grid, bijectivity is checked as distinct values, strict
//! monotonicity in `t`, and coverage of a target interval.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::diff::{fd_derivative, DEFAULT_FD_STEP};
use crate::error::{Error, Result};
use crate::event::{FinancialEvent, Rate};
use crate::law::{Interval, RealFn};
use crate::{approx_eq, scale};

/// Set of capitals a section is defined on.
#[derive(Debug, Clone, PartialEq)]
pub enum CapitalDomain {
    Interval(Interval),
    Grid(Vec<f64>),
}

impl CapitalDomain {
    pub fn contains(&self, c: f64) -> bool {
        match self {
            CapitalDomain::Interval(iv) => iv.contains(c),
            CapitalDomain::Grid(g) => g.contains(&c),
        }
    }
}

/// A section of the compound fibration at `rate`, given by its time map.
#[derive(Clone)]
pub struct Section {
    rate: Rate,
    time_map: RealFn,
    domain: CapitalDomain,
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Section").field("rate", &self.rate).field("domain", &self.domain).finish()
    }
}

/// Builds `c ↦ (f(c), u^{f(c)} c)`. On a grid domain the time map is checked
/// for finiteness at every point up front.
pub fn section_from_time_map<F>(f: F, i: Rate, domain: CapitalDomain) -> Result<Section>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    if let CapitalDomain::Grid(grid) = &domain {
        if let Some(&c) = grid.iter().find(|c| !c.is_finite()) {
            return Err(Error::Evaluation { at: c, value: c });
        }
        for &c in grid {
            let value = f(c);
            if !value.is_finite() {
                return Err(Error::Evaluation { at: c, value });
            }
        }
    }
    Ok(Section { rate: i, time_map: Arc::new(f), domain })
}

impl Section {
    pub fn rate(&self) -> Rate {
        self.rate
    }

    pub fn domain(&self) -> &CapitalDomain {
        &self.domain
    }

    /// The time `f(c)` at which the section meets the fiber of `c`.
    pub fn time_at(&self, c: f64) -> Result<f64> {
        if !self.domain.contains(c) {
            let (lo, hi) = match &self.domain {
                CapitalDomain::Interval(iv) => (iv.lo(), iv.hi()),
                CapitalDomain::Grid(g) => (
                    g.iter().copied().fold(f64::INFINITY, f64::min),
                    g.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                ),
            };
            return Err(Error::Domain { value: c, lo, hi });
        }
        let t = (self.time_map)(c);
        if t.is_finite() {
            Ok(t)
        } else {
            Err(Error::Evaluation { at: c, value: t })
        }
    }

    pub fn eval(&self, c: f64) -> Result<FinancialEvent> {
        let t = self.time_at(c)?;
        let capital = self.rate.factor(t)? * c;
        if !capital.is_finite() {
            return Err(Error::Range);
        }
        FinancialEvent::new(t, capital)
    }
}

pub fn section_eval(s: &Section, c: f64) -> Result<FinancialEvent> {
    s.eval(c)
}

/// Whether `c ↦ (s1(c), s2(c))` is a section at rate `i` on the sampled
/// capitals, i.e. `s2(c) = c (1+i)^{s1(c)}` within relative `tol`.
pub fn is_section<S1, S2>(s1: S1, s2: S2, i: Rate, capitals: &[f64], tol: f64) -> bool
where
    S1: Fn(f64) -> f64,
    S2: Fn(f64) -> f64,
{
    capitals.iter().all(|&c| {
        let t = s1(c);
        let capital = s2(c);
        match i.factor(t) {
            Ok(f) => capital.is_finite() && approx_eq(capital, c * f, tol),
            Err(_) => false,
        }
    })
}

#[derive(Clone)]
enum EvolutionSource {
    Function { eval: RealFn, derivative: Option<RealFn> },
    Samples(Vec<f64>),
}

/// A capital evolution `M : T′ → C` observed on an increasing grid of times.
#[derive(Clone)]
pub struct CapitalEvolution {
    source: EvolutionSource,
    domain: Interval,
    grid: Vec<f64>,
}

impl fmt::Debug for CapitalEvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sampled = matches!(self.source, EvolutionSource::Samples(_));
        f.debug_struct("CapitalEvolution")
            .field("domain", &self.domain)
            .field("points", &self.grid.len())
            .field("sampled", &sampled)
            .finish()
    }
}

fn check_grid(grid: &[f64], domain: Interval) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("empty time grid".into()));
    }
    for (k, &t) in grid.iter().enumerate() {
        if !t.is_finite() {
            return Err(Error::NonFinite("grid time"));
        }
        domain.check(t)?;
        if k > 0 && t <= grid[k - 1] {
            return Err(Error::InvalidInput(format!(
                "grid not strictly increasing at index {k}: {} then {t}",
                grid[k - 1]
            )));
        }
    }
    Ok(())
}

impl CapitalEvolution {
    pub fn new<F>(eval: F, domain: Interval, grid: Vec<f64>) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_grid(&grid, domain)?;
        Ok(Self { source: EvolutionSource::Function { eval: Arc::new(eval), derivative: None }, domain, grid })
    }

    /// Evolution known only through samples `(times[k], values[k])`.
    pub fn from_samples(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidInput(format!("{} times but {} capitals", times.len(), values.len())));
        }
        let domain = match (times.first(), times.last()) {
            (Some(&lo), Some(&hi)) if lo <= hi => Interval::new(lo, hi)?,
            _ => Interval::REAL,
        };
        check_grid(&times, domain)?;
        Ok(Self { source: EvolutionSource::Samples(values), domain, grid: times })
    }

    /// Attaches an analytic `M′`; ignored for sampled evolutions.
    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if let EvolutionSource::Function { derivative: d, .. } = &mut self.source {
            *d = Some(Arc::new(derivative));
        }
        self
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// `M` at every grid time.
    pub fn values(&self) -> Vec<f64> {
        match &self.source {
            EvolutionSource::Function { eval, .. } => self.grid.iter().map(|&t| eval(t)).collect(),
            EvolutionSource::Samples(v) => v.clone(),
        }
    }

    /// `M′(t)`: analytic when supplied, else a central difference.
    pub fn derivative_at(&self, t: f64) -> Result<f64> {
        match &self.source {
            EvolutionSource::Function { derivative: Some(d), .. } => {
                let value = d(t);
                if value.is_finite() {
                    Ok(value)
                } else {
                    Err(Error::Evaluation { at: t, value })
                }
            }
            EvolutionSource::Function { eval, derivative: None } => fd_derivative(|x| eval(x), t, DEFAULT_FD_STEP),
            EvolutionSource::Samples(_) => Err(Error::Inapplicable("a sampled evolution carries no derivative".into())),
        }
    }

    /// The same evolution on the grid points inside `[lo, hi]`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<Self> {
        let sub = Interval::new(lo, hi)?;
        let keep: Vec<usize> = (0..self.grid.len()).filter(|&k| sub.contains(self.grid[k])).collect();
        if keep.is_empty() {
            return Err(Error::InvalidInput(format!("no grid point inside [{lo}, {hi}]")));
        }
        let grid = keep.iter().map(|&k| self.grid[k]).collect();
        let source = match &self.source {
            EvolutionSource::Samples(v) => EvolutionSource::Samples(keep.iter().map(|&k| v[k]).collect()),
            f => f.clone(),
        };
        Ok(Self { source, domain: sub, grid })
    }
}

/// Why a sampled evolution is not a section trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum TraceFailure {
    /// `M(t) u^{-t}` is not a finite capital at this grid index.
    ProjectionMismatch { index: usize },
    /// Two grid times project to the same capital within tolerance.
    Injectivity { first: usize, second: usize },
    /// Values are distinct but change direction after this index, so any
    /// continuous `v` through them takes some value twice.
    Monotonicity { index: usize },
    /// The projected range `[lo, hi]` does not cover the targets.
    Surjectivity { lo: f64, hi: f64 },
}

impl TraceFailure {
    pub fn reason(&self) -> &'static str {
        match self {
            TraceFailure::ProjectionMismatch { .. } => "projection_mismatch",
            TraceFailure::Injectivity { .. } => "injectivity",
            TraceFailure::Monotonicity { .. } => "monotonicity",
            TraceFailure::Surjectivity { .. } => "surjectivity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceReport {
    pub is_trace: bool,
    /// Whether `(t, c) ↦ c u^{-t}` is injective on the sampled graph.
    pub injective: bool,
    /// Samples `(t, v(t))` of the inverse time map; present iff `is_trace`.
    pub witness: Option<Vec<(f64, f64)>>,
    pub failure: Option<TraceFailure>,
}

impl TraceReport {
    fn failed(injective: bool, failure: TraceFailure) -> Self {
        Self { is_trace: false, injective, witness: None, failure: Some(failure) }
    }
}

/// Tie threshold shared by the injectivity and monotonicity checks:
/// `tol · max(1, max |v|)`.
fn tie_threshold(v: &[f64], tol: f64) -> f64 {
    tol * v.iter().fold(1f64, |m, x| m.max(x.abs()))
}

/// Decides whether the graph of `m` on its grid is the trace of a section
/// of the compound fibration at rate `i` whose capitals cover `targets`.
///
/// Computes `v(t) = M(t) u^{-t}` on the grid and requires, in order:
/// finite values, pairwise distinct values (gap above the tie threshold),
/// strict monotonicity, and `[min v, max v] ⊇ targets` within `tol`.
pub fn trace_test(m: &CapitalEvolution, i: Rate, targets: Interval, tol: f64) -> TraceReport {
    let grid = m.grid();
    let values = m.values();
    let mut v = Vec::with_capacity(grid.len());
    for (k, (&t, &capital)) in grid.iter().zip(&values).enumerate() {
        match i.factor(-t).map(|f| f * capital) {
            Ok(x) if x.is_finite() => v.push(x),
            _ => return TraceReport::failed(false, TraceFailure::ProjectionMismatch { index: k }),
        }
    }

    let threshold = tie_threshold(&v, tol);
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    if let Some(w) = order.windows(2).find(|w| v[w[1]] - v[w[0]] <= threshold) {
        let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
        return TraceReport::failed(false, TraceFailure::Injectivity { first, second });
    }

    if v.len() > 1 {
        let increasing = v[1] > v[0];
        if let Some(k) = v.windows(2).position(|w| (w[1] > w[0]) != increasing) {
            return TraceReport::failed(true, TraceFailure::Monotonicity { index: k });
        }
    }

    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = |x: f64| tol * scale(x, 0.0);
    if !(lo <= targets.lo() + slack(targets.lo()) && hi >= targets.hi() - slack(targets.hi())) {
        return TraceReport::failed(true, TraceFailure::Surjectivity { lo, hi });
    }

    TraceReport { is_trace: true, injective: true, witness: Some(grid.iter().copied().zip(v).collect()), failure: None }
}

/// Sufficient condition for a trace over the positive capitals: with `i > 0`
/// and `M > 0`, `M′ < 0` forces `v′ = (M′ - M ln u) u^{-t} < 0`. Returns
/// whether `M′(t) < 0` at every grid time.
pub fn decreasing_evolution_shortcut(m: &CapitalEvolution, i: Rate) -> Result<bool> {
    if i.value() <= 0.0 {
        return Err(Error::Inapplicable(format!("rate {i} is not positive")));
    }
    let values = m.values();
    if let Some((&t, &capital)) = m.grid().iter().zip(&values).find(|(_, &c)| !(c > 0.0)) {
        return Err(Error::Inapplicable(format!("capital {capital} at {t} is not positive")));
    }
    for &t in m.grid() {
        if m.derivative_at(t)? >= 0.0 {
            return Ok(false);
        }
    }
    Ok(true)
}
