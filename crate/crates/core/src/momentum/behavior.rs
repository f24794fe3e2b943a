//! Endpoint behaviour of a momentum profile and the resulting curvature case.

use num_traits::{Signed, Zero};

use super::{deflated, has_root_in, momentum_interval, sign_at_root, IntervalEnd, MomentumInterval, MomentumProfile};
use crate::error::{Error, Result};
use crate::poly::{int, to_f64, Rational, RootEnclosure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremCase {
    ScalarFlat,
    NegativeCsc,
    PositiveCsc,
}

impl TheoremCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremCase::ScalarFlat => "scalar_flat",
            TheoremCase::NegativeCsc => "negative_csc",
            TheoremCase::PositiveCsc => "positive_csc",
        }
    }
}

/// Where the metric lives: the whole total space or a disk bundle of finite
/// fibre radius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    WholeBundle,
    DiskBundle,
}

impl Domain {
    pub fn as_str(self) -> &'static str {
        match self {
            Domain::WholeBundle => "whole_bundle",
            Domain::DiskBundle => "disk_bundle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EndpointLocation {
    Origin,
    Finite(RootEnclosure),
    Infinity,
}

/// One end of the momentum interval.
#[derive(Clone, Debug, PartialEq)]
pub struct EndpointRow {
    pub location: EndpointLocation,
    /// Vanishing order of `phi` at a finite end.
    pub zero_order: Option<i64>,
    /// `|phi'|` at a finite end.
    pub derivative_abs: Option<f64>,
    /// Growth degree of `phi` at an infinite end.
    pub growth_degree: Option<i64>,
    /// Whether the fibre coordinate `t = log r^2` stays bounded at this end.
    pub fibre_range_finite: bool,
    /// Whether the end lies at finite distance along a fibre.
    pub distance_finite: bool,
    /// Whether the endpoint condition for completeness holds.
    pub complete: bool,
    /// Matching row (1 to 4) of the behaviour table, when there is one.
    pub table_row: Option<u8>,
}

/// Data attached to the finite far end when `C > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeData {
    pub b: RootEnclosure,
    pub b_approx: f64,
    pub phi_prime_at_b: f64,
    /// `a = -phi'(b)`; the fibre is a cone of angle factor `a` at infinity.
    pub cone_angle_factor: f64,
    /// `phi'(b) = -1` exactly.
    pub smooth_completion: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BehaviorReport {
    pub theorem_case: TheoremCase,
    pub domain: Domain,
    pub complete: bool,
    pub interval: MomentumInterval,
    pub origin: EndpointRow,
    pub far_end: EndpointRow,
    /// Leading coefficient of `phi` when it grows linearly (`C = 0`, strictly negative weight).
    pub metric_index: Option<Rational>,
    /// `2 i`.
    pub cone_exponent: Option<Rational>,
    /// Leading coefficient of `phi` when `C < 0`.
    pub hyperbolic_leading: Option<Rational>,
    /// `alpha_{n,C} = sqrt(4 * leading)`.
    pub hyperbolic_rate: Option<f64>,
    pub cone: Option<ConeData>,
}

fn origin_row(profile: &MomentumProfile) -> Result<EndpointRow> {
    let phi = profile.phi();
    let order = phi.order_at(&Rational::zero());
    let d0 = super::phi_prime_at_zero(profile);
    if order != 1 || d0 != int(1) {
        return Err(Error::InternalInconsistency(format!(
            "initial data violated: order {order} and phi'(0) = {d0} at the origin"
        )));
    }
    Ok(EndpointRow {
        location: EndpointLocation::Origin,
        zero_order: Some(1),
        derivative_abs: Some(1.0),
        growth_degree: None,
        fibre_range_finite: false,
        distance_finite: true,
        complete: true,
        table_row: Some(1),
    })
}

fn infinite_row(growth: i64) -> EndpointRow {
    // t = int dx/phi diverges iff growth <= 1; distance int dx/sqrt(phi) diverges iff growth <= 2
    let (fibre_range_finite, distance_finite, table_row) = match growth {
        g if g <= 1 => (false, false, Some(4)),
        2 => (true, false, Some(3)),
        _ => (true, true, None),
    };
    EndpointRow {
        location: EndpointLocation::Infinity,
        zero_order: None,
        derivative_abs: None,
        growth_degree: Some(growth),
        fibre_range_finite,
        distance_finite,
        complete: growth <= 2,
        table_row,
    }
}

pub(crate) fn cone_data(profile: &MomentumProfile, enc: &RootEnclosure) -> ConeData {
    let psi = deflated(&profile.phi_num);
    let d_phi = profile.phi_num.derivative();
    let mid = enc.midpoint();
    let phi_prime = to_f64(&(d_phi.eval(&mid) / profile.qtilde.eval(&mid)));
    let test = &d_phi + &profile.qtilde;
    ConeData {
        b: enc.clone(),
        b_approx: to_f64(&mid),
        phi_prime_at_b: phi_prime,
        cone_angle_factor: -phi_prime,
        smooth_completion: sign_at_root(&test, &psi, enc) == 0,
    }
}

pub fn classify_behavior(profile: &MomentumProfile, width: &Rational) -> Result<BehaviorReport> {
    let interval = momentum_interval(profile, width)?;
    let theorem_case = match profile.curvature_sign() {
        0 => TheoremCase::ScalarFlat,
        s if s < 0 => TheoremCase::NegativeCsc,
        _ => TheoremCase::PositiveCsc,
    };
    let origin = origin_row(profile)?;
    let phi = profile.phi().reduced();
    let (far_end, cone) = match &interval.end {
        IntervalEnd::Infinite => {
            let g = phi.degree_at_infinity().ok_or_else(|| Error::InternalInconsistency("phi vanishes identically".into()))?;
            (infinite_row(g), None)
        }
        IntervalEnd::Finite(enc) => {
            let cone = cone_data(profile, enc);
            let psi = deflated(&profile.phi_num);
            if has_root_in(&psi.gcd(&psi.derivative()), enc) {
                return Err(Error::InternalInconsistency("far end is not a simple zero".into()));
            }
            let row = EndpointRow {
                location: EndpointLocation::Finite(enc.clone()),
                zero_order: Some(1),
                derivative_abs: Some(cone.phi_prime_at_b.abs()),
                growth_degree: None,
                fibre_range_finite: false,
                distance_finite: true,
                complete: cone.smooth_completion,
                table_row: cone.smooth_completion.then_some(1),
            };
            (row, Some(cone))
        }
    };
    let domain = if far_end.fibre_range_finite { Domain::DiskBundle } else { Domain::WholeBundle };
    let growth = far_end.growth_degree;
    let leading = phi.numerator.leading() / phi.denominator.leading();
    let (metric_index, cone_exponent) = if theorem_case == TheoremCase::ScalarFlat && growth == Some(1) {
        (Some(leading.clone()), Some(&leading * int(2)))
    } else {
        (None, None)
    };
    let (hyperbolic_leading, hyperbolic_rate) = if theorem_case == TheoremCase::NegativeCsc && growth == Some(2) {
        debug_assert!(leading.is_positive());
        let rate = (4.0 * to_f64(&leading)).sqrt();
        (Some(leading), Some(rate))
    } else {
        (None, None)
    };
    Ok(BehaviorReport {
        theorem_case,
        domain,
        complete: origin.complete && far_end.complete,
        interval,
        origin,
        far_end,
        metric_index,
        cone_exponent,
        hyperbolic_leading,
        hyperbolic_rate,
        cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::{default_width, ProfileInputs};
    use crate::poly::{frac, Polynomial};

    fn burns(c: Rational) -> MomentumProfile {
        let inputs = ProfileInputs { qtilde: Polynomial::from_ints(&[1, 1]), p: Polynomial::from_ints(&[2]), n: 2 };
        MomentumProfile::solve(&inputs, &c)
    }

    #[test]
    fn scalar_flat_cp1() {
        let r = classify_behavior(&burns(int(0)), &default_width()).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::ScalarFlat);
        assert_eq!(r.domain, Domain::WholeBundle);
        assert_eq!(r.far_end.growth_degree, Some(1));
        assert_eq!(r.far_end.table_row, Some(4));
        assert_eq!(r.origin.table_row, Some(1));
        assert!(r.complete);
        assert_eq!(r.metric_index, Some(int(1)));
        assert_eq!(r.cone_exponent, Some(int(2)));
        assert!(r.cone.is_none() && r.hyperbolic_rate.is_none());
    }

    #[test]
    fn negative_cp1() {
        let r = classify_behavior(&burns(int(-1)), &default_width()).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::NegativeCsc);
        assert_eq!(r.domain, Domain::DiskBundle);
        assert!(r.far_end.fibre_range_finite);
        assert!(!r.far_end.distance_finite);
        assert_eq!(r.far_end.table_row, Some(3));
        assert_eq!(r.hyperbolic_leading, Some(frac(1, 6)));
        assert!((r.hyperbolic_rate.unwrap() - (4.0f64 / 6.0).sqrt()).abs() < 1e-15);
        assert!(r.metric_index.is_none());
    }

    #[test]
    fn positive_cone() {
        let r = classify_behavior(&burns(int(2)), &default_width()).unwrap();
        assert_eq!(r.theorem_case, TheoremCase::PositiveCsc);
        assert_eq!(r.domain, Domain::WholeBundle);
        let cone = r.cone.unwrap();
        assert!((cone.b_approx - 3f64.sqrt()).abs() < 1e-12);
        let expected = -2.0 / (1.0 + 3f64.sqrt());
        assert!((cone.phi_prime_at_b - expected).abs() < 1e-9);
        assert!(!cone.smooth_completion);
        assert!(!r.complete);
        assert_eq!(r.far_end.table_row, None);
    }

    #[test]
    fn smooth_completion_detected_exactly() {
        // Q = 1, P = 0 gives Phi = t - C t^2 / 2, root b = 2/C, phi'(b) = -1 for every C
        let inputs = ProfileInputs { qtilde: Polynomial::one(), p: Polynomial::zero(), n: 1 };
        let r = classify_behavior(&MomentumProfile::solve(&inputs, &frac(3, 7)), &default_width()).unwrap();
        let cone = r.cone.unwrap();
        assert!(cone.smooth_completion);
        assert!(r.complete);
        assert_eq!(r.far_end.table_row, Some(1));
    }
}
