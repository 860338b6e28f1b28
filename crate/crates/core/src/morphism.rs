//! Rate-change isomorphisms between compound fibrations, and the global
//! product chart that trivializes each of them.

use crate::error::{Error, Result};
use crate::event::{FinancialEvent, Rate};
use crate::fibration::project_compound;

/// `g(t, c) = (t, (u′/u)^t c)`, carrying the fibration at rate `i` onto the
/// one at rate `i_prime` fiber by fiber: the event `(t, u^t c₀)` goes to
/// `(t, u′^t c₀)`.
pub fn rate_isomorphism(e: FinancialEvent, i: Rate, i_prime: Rate) -> Result<FinancialEvent> {
    let ratio = i_prime.accumulation() / i.accumulation();
    let factor = ratio.powf(e.time());
    if !(factor.is_finite() && factor > 0.0) {
        return Err(Error::Range);
    }
    let capital = factor * e.capital();
    if !capital.is_finite() {
        return Err(Error::Range);
    }
    FinancialEvent::new(e.time(), capital)
}

/// Product chart `(t, c) ↦ (t, π_i(t, c))`.
pub fn trivialize(e: FinancialEvent, i: Rate) -> Result<(f64, f64)> {
    Ok((e.time(), project_compound(e, i)?))
}

/// Inverse of [`trivialize`]: `(t, c₀) ↦ (t, (1+i)^t c₀)`.
pub fn untrivialize(t: f64, base_capital: f64, i: Rate) -> Result<FinancialEvent> {
    let capital = i.factor(t)? * base_capital;
    if !capital.is_finite() {
        return Err(Error::Range);
    }
    FinancialEvent::new(t, capital)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx_eq;
    use proptest::prelude::*;

    fn ev(t: f64, c: f64) -> FinancialEvent {
        FinancialEvent::new(t, c).unwrap()
    }

    fn rate(i: f64) -> Rate {
        Rate::new(i).unwrap()
    }

    #[test]
    fn isomorphism_examples() {
        // (1.21/1.1)^2 * 121 = 1.21 * 121 = 146.41
        let g = rate_isomorphism(ev(2.0, 121.0), rate(0.1), rate(0.21)).unwrap();
        assert_eq!(g.time(), 2.0);
        assert!(approx_eq(g.capital(), 146.41, 1e-12));
        assert_eq!(rate_isomorphism(ev(0.0, 9.5), rate(0.3), rate(-0.4)).unwrap(), ev(0.0, 9.5));
        assert_eq!(rate_isomorphism(ev(7.5, -3.0), rate(0.3), rate(0.3)).unwrap(), ev(7.5, -3.0));
    }

    #[test]
    fn isomorphism_overflow() {
        assert_eq!(rate_isomorphism(ev(1e4, 1.0), rate(-0.9), rate(1.0)), Err(Error::Range));
    }

    #[test]
    fn chart_examples() {
        let (t, c0) = trivialize(ev(2.0, 121.0), rate(0.1)).unwrap();
        assert_eq!(t, 2.0);
        assert!(approx_eq(c0, 100.0, 1e-12));
        assert_eq!(trivialize(ev(-4.0, 6.0), Rate::ZERO).unwrap(), (-4.0, 6.0));
        assert_eq!(trivialize(ev(0.0, 6.0), rate(0.8)).unwrap(), (0.0, 6.0));

        let e = untrivialize(2.0, 100.0, rate(0.1)).unwrap();
        assert!(approx_eq(e.capital(), 121.0, 1e-12));
        assert_eq!(untrivialize(-4.0, 6.0, Rate::ZERO).unwrap(), ev(-4.0, 6.0));
        assert_eq!(untrivialize(0.0, 6.0, rate(0.8)).unwrap(), ev(0.0, 6.0));
    }

    fn any_rate() -> impl Strategy<Value = Rate> {
        (-0.9f64..=1.0).prop_map(rate)
    }

    proptest! {
        #[test]
        fn morphism_law(t in -50.0f64..50.0, c in -1e3f64..1e3, i in any_rate(), j in any_rate()) {
            let e = ev(t, c);
            let g = rate_isomorphism(e, i, j).unwrap();
            let lhs = project_compound(g, j).unwrap();
            let rhs = project_compound(e, i).unwrap();
            prop_assert!(approx_eq(lhs, rhs, 1e-9), "{lhs} vs {rhs}");
        }

        #[test]
        fn group_laws(t in -50.0f64..50.0, c in -1e3f64..1e3, i in any_rate(), j in any_rate(), k in any_rate()) {
            let e = ev(t, c);
            prop_assert_eq!(rate_isomorphism(e, i, i).unwrap(), e);
            let back = rate_isomorphism(rate_isomorphism(e, i, j).unwrap(), j, i).unwrap();
            prop_assert!(approx_eq(back.capital(), c, 1e-9));
            let via = rate_isomorphism(rate_isomorphism(e, i, j).unwrap(), j, k).unwrap();
            let direct = rate_isomorphism(e, i, k).unwrap();
            prop_assert!(approx_eq(via.capital(), direct.capital(), 1e-9));
        }

        #[test]
        fn fiberwise_form(t in -50.0f64..50.0, c0 in -1e3f64..1e3, i in any_rate(), j in any_rate()) {
            let e = untrivialize(t, c0, i).unwrap();
            let g = rate_isomorphism(e, i, j).unwrap();
            let expected = j.accumulation().powf(t) * c0;
            prop_assert!(approx_eq(g.capital(), expected, 1e-9), "{} vs {expected}", g.capital());
        }

        #[test]
        fn chart_round_trips(t in -50.0f64..50.0, c in -1e3f64..1e3, i in any_rate()) {
            let (s, c0) = trivialize(ev(t, c), i).unwrap();
            let e = untrivialize(s, c0, i).unwrap();
            prop_assert!(approx_eq(e.capital(), c, 1e-9));
            let e = untrivialize(t, c, i).unwrap();
            let (s, c0) = trivialize(e, i).unwrap();
            prop_assert_eq!(s, t);
            prop_assert!(approx_eq(c0, c, 1e-9));
        }
    }
}
