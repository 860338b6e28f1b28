//! Fibrations of the plane of financial events.
//!
//! A financial event is a point `(t, c)` of the plane: a time and a capital.
//! Compound capitalization at rate `i` fibers the plane into the curves
//! `t ↦ (1+i)^t c₀`, each curve being the class of events with present value
//! `c₀`. This crate computes with that structure:
//!
//! - [`fibration`]: the natural and compound projections, the projection
//!   induced by an arbitrary capitalization factor, fibers and their order.
//! - [`morphism`]: the rate-change isomorphisms between compound fibrations
//!   and the global trivialization.
//! - [`section`]: sections of a compound fibration and the test deciding
//!   whether the graph of a capital evolution is the trace of a section.
//! - [`connection`]: discount laws, financial translation, the Christoffel
//!   form, the induced connection and the force of interest.
//!
//! All reals are `f64`. Every equality that holds exactly over the reals is
//! checked up to a relative tolerance, see [`approx_eq`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod connection;
pub mod diff;
pub mod error;
pub mod event;
pub mod fibration;
pub mod law;
pub mod morphism;
pub mod section;

pub use connection::{
    christoffel_from_discount, connection_apply, discount_from_christoffel, financial_translate, force_of_interest,
    global_connection, induced_discount, translation_derivative, verify_force_relation, ChristoffelForm,
};
pub use diff::{fd_derivative, DerivativeSource, DEFAULT_FD_STEP};
pub use error::{Error, Result};
pub use event::{FinancialEvent, Rate, TangentVector};
pub use fibration::{
    equivalent, fiber_compare, fiber_of, general_gluing_check, gluing_slopes, project_compound, project_general,
    project_natural, Fiber, GluingSlopes,
};
pub use law::{
    validate_capitalization_law, validate_discount_law, CapitalizationLaw, DiscountLaw, Interval, LawKind, RealFn,
    ValidationReport, Violation,
};
pub use morphism::{rate_isomorphism, trivialize, untrivialize};
pub use section::{
    decreasing_evolution_shortcut, is_section, section_from_time_map, trace_test, CapitalDomain, CapitalEvolution,
    Section, TraceFailure, TraceReport,
};

/// Default relative tolerance for checks that are exact identities over the reals.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative comparison with scale `max(1, |a|, |b|)`.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * scale(a, b)
}

#[inline]
pub(crate) fn scale(a: f64, b: f64) -> f64 {
    1f64.max(a.abs()).max(b.abs())
}
