//! Asymptotic data at the far end of the momentum interval.

use num_traits::Zero;

use super::behavior::{cone_data, ConeData};
use super::{IntervalEnd, MomentumInterval, MomentumProfile};
use crate::error::{Error, Result};
use crate::poly::{int, to_f64, Rational};

/// `C = 0`: expansion of `phi` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFlatAsymptotics {
    /// `(exponent, coefficient)` from the growth degree down to the requested order.
    pub laurent: Vec<(i64, Rational)>,
    pub metric_index: Rational,
    pub cone_exponent: Rational,
    /// Constant term of the expansion.
    pub constant_term: Rational,
    /// `phi` is a polynomial, so the expansion is finite.
    pub terminates: bool,
    /// First exponent below zero with a nonzero coefficient, if any within range.
    pub tail_order: Option<i64>,
    /// Exponent gap between the leading term and the first other nonzero term of `phi`.
    pub leading_gap: Option<i64>,
    /// Every coefficient of `phi - i tau - c0` with exponent in `[3 - n, -1]` vanishes.
    pub refined: bool,
    /// `-2`, or `-2n + 2` when `refined`.
    pub decay_order: i64,
}

/// `C < 0`: hyperbolic model along the fibres.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicAsymptotics {
    pub leading_coefficient: Rational,
    /// `alpha^2 = 4 * leading`.
    pub alpha_squared: Rational,
    pub alpha: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Asymptotics {
    ScalarFlat(ScalarFlatAsymptotics),
    Hyperbolic(HyperbolicAsymptotics),
    Cone(ConeData),
    /// `C > 0` with an unbounded interval (possible for semi-negative weights only).
    Unbounded { growth_degree: i64 },
}

pub fn scalar_flat_asymptotics(profile: &MomentumProfile, order: u32) -> Result<ScalarFlatAsymptotics> {
    if !profile.c.is_zero() {
        return Err(Error::WrongCase("Laurent data requires C = 0".into()));
    }
    let phi = profile.phi().reduced();
    if phi.degree_at_infinity() != Some(1) {
        return Err(Error::WrongCase("phi does not grow linearly; the weight is not strictly negative".into()));
    }
    let n = profile.n as i64;
    let min_exp = -(order as i64).max(n);
    let laurent = phi.laurent_at_infinity(min_exp);
    let coeff = |e: i64| laurent.iter().find(|(k, _)| *k == e).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero);
    let metric_index = coeff(1);
    let constant_term = coeff(0);
    let terminates = phi.denominator.degree() == Some(0);
    let tail_order = laurent.iter().find(|(k, c)| *k < 0 && !c.is_zero()).map(|(k, _)| *k);
    let leading_gap = laurent.iter().skip(1).find(|(_, c)| !c.is_zero()).map(|(k, _)| 1 - k);
    let refined = laurent.iter().filter(|(k, _)| (3 - n..=-1).contains(k)).all(|(_, c)| c.is_zero());
    let decay_order = if refined { 2 - 2 * n } else { -2 };
    let laurent = laurent.into_iter().filter(|(k, _)| *k >= -(order as i64)).collect();
    Ok(ScalarFlatAsymptotics {
        laurent,
        cone_exponent: &metric_index * int(2),
        metric_index,
        constant_term,
        terminates,
        tail_order,
        leading_gap,
        refined,
        decay_order,
    })
}

pub fn hyperbolic_asymptotics(profile: &MomentumProfile) -> Result<HyperbolicAsymptotics> {
    if profile.curvature_sign() >= 0 {
        return Err(Error::WrongCase("hyperbolic data requires C < 0".into()));
    }
    let phi = profile.phi().reduced();
    if phi.degree_at_infinity() != Some(2) {
        return Err(Error::InternalInconsistency("phi does not grow quadratically for C < 0".into()));
    }
    let leading = phi.numerator.leading() / phi.denominator.leading();
    let alpha_squared = &leading * int(4);
    Ok(HyperbolicAsymptotics { alpha: to_f64(&alpha_squared).sqrt(), leading_coefficient: leading, alpha_squared })
}

pub fn cone_asymptotics(profile: &MomentumProfile, interval: &MomentumInterval) -> Result<ConeData> {
    match (&interval.end, profile.curvature_sign() > 0) {
        (IntervalEnd::Finite(enc), true) => Ok(cone_data(profile, enc)),
        _ => Err(Error::WrongCase("cone data requires C > 0 and a finite far end".into())),
    }
}

/// The asymptotic datum matching the curvature case.
pub fn asymptotics(profile: &MomentumProfile, interval: &MomentumInterval, order: u32) -> Result<Asymptotics> {
    match profile.curvature_sign() {
        0 => scalar_flat_asymptotics(profile, order).map(Asymptotics::ScalarFlat),
        s if s < 0 => hyperbolic_asymptotics(profile).map(Asymptotics::Hyperbolic),
        _ => match &interval.end {
            IntervalEnd::Finite(_) => cone_asymptotics(profile, interval).map(Asymptotics::Cone),
            IntervalEnd::Infinite => Ok(Asymptotics::Unbounded {
                growth_degree: profile.phi().reduced().degree_at_infinity().unwrap_or(0),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::ProfileInputs;
    use crate::poly::{frac, Polynomial};

    fn solve(q: &[i64], p: &[i64], n: usize, c: i64) -> MomentumProfile {
        let inputs = ProfileInputs { qtilde: Polynomial::from_ints(q), p: Polynomial::from_ints(p), n };
        MomentumProfile::solve(&inputs, &int(c))
    }

    #[test]
    fn burns_terminates() {
        let a = scalar_flat_asymptotics(&solve(&[1, 1], &[2], 2, 0), 6).unwrap();
        assert!(a.terminates);
        assert_eq!(a.metric_index, int(1));
        assert_eq!(a.cone_exponent, int(2));
        assert_eq!(a.tail_order, None);
        assert_eq!(a.leading_gap, None);
        assert_eq!(a.laurent[0], (1, int(1)));
    }

    #[test]
    fn o_minus_two() {
        // CP^1, lambda = -2w, kappa = 2w: Q = 2 + 2t, P = 2
        let prof = solve(&[2, 2], &[2], 2, 0);
        let phi = prof.phi().reduced();
        // phi = (t^2 + 2t) / (2t + 2)
        assert_eq!(phi.numerator, Polynomial::new(vec![int(0), int(1), frac(1, 2)]));
        assert_eq!(phi.denominator, Polynomial::from_ints(&[1, 1]));
        let a = scalar_flat_asymptotics(&prof, 4).unwrap();
        assert_eq!(a.metric_index, frac(1, 2));
        assert_eq!(a.constant_term, frac(1, 2));
        assert!(!a.terminates);
        assert_eq!(a.tail_order, Some(-1));
        // -(1/2)/(t+1) = -1/2 t^-1 + 1/2 t^-2 - ...
        assert_eq!(a.laurent[2], (-1, frac(-1, 2)));
        assert_eq!(a.laurent[3], (-2, frac(1, 2)));
        assert_eq!(a.decay_order, -2);
    }

    #[test]
    fn a2_proportional_class_is_refined() {
        // kappa = -lambda on the full flag of A2: phi = (1+t)/2 - (2t+1)/(2(1+t)^3)
        let prof = solve(&[2, 6, 6, 2], &[12, 24, 12], 4, 0);
        let a = scalar_flat_asymptotics(&prof, 8).unwrap();
        assert_eq!(a.metric_index, frac(1, 2));
        assert_eq!(a.constant_term, frac(1, 2));
        assert_eq!(a.tail_order, Some(-2));
        assert!(a.refined);
        assert_eq!(a.decay_order, -6);
        assert_eq!(a.leading_gap, Some(1));
    }

    #[test]
    fn wrong_cases() {
        assert!(matches!(scalar_flat_asymptotics(&solve(&[1, 1], &[2], 2, -1), 4), Err(Error::WrongCase(_))));
        assert!(matches!(hyperbolic_asymptotics(&solve(&[1, 1], &[2], 2, 0)), Err(Error::WrongCase(_))));
        let h = hyperbolic_asymptotics(&solve(&[1, 1], &[2], 2, -1)).unwrap();
        assert_eq!(h.leading_coefficient, frac(1, 6));
        assert_eq!(h.alpha_squared, frac(2, 3));
        let flat = solve(&[1, 1], &[2], 2, 0);
        let iv = MomentumInterval { end: IntervalEnd::Infinite };
        assert!(matches!(cone_asymptotics(&flat, &iv), Err(Error::WrongCase(_))));
    }
}
