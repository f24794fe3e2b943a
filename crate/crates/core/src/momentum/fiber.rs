//! Reconstruction of the fibre coordinates from the momentum profile:
//! `t = int dx/phi`, `s = int dx/(2 sqrt phi)`, `f = int x dx/phi`, `r = e^(t/2)`.

use num_traits::One;

use super::{IntervalEnd, MomentumInterval, MomentumProfile};
use crate::error::{Error, Result};
use crate::poly::{int, to_f64, Rational};
use crate::quadrature::integrate;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FiberSample {
    pub tau: f64,
    pub phi: f64,
    /// Log of the squared fibre norm, `t = log r^2`.
    pub t: f64,
    /// Fibre distance from the anchor.
    pub s: f64,
    /// Potential, normalized to vanish at the anchor.
    pub f: f64,
    pub r: f64,
}

/// `1` on an unbounded interval, else half the far end.
pub fn default_tau0(interval: &MomentumInterval) -> Rational {
    match &interval.end {
        IntervalEnd::Infinite => Rational::one(),
        IntervalEnd::Finite(enc) => enc.midpoint() / int(2),
    }
}

pub fn fiber_maps(
    profile: &MomentumProfile,
    interval: &MomentumInterval,
    tau0: &Rational,
    grid: &[Rational],
    rtol: f64,
) -> Result<Vec<FiberSample>> {
    for x in std::iter::once(tau0).chain(grid) {
        if !interval.contains_interior(x) {
            return Err(Error::GridOutOfInterval(x.to_string()));
        }
    }
    let phi = profile.phi().reduced();
    let phi_f = |x: f64| phi.eval_f64(x);
    let a = to_f64(tau0);
    Ok(grid
        .iter()
        .map(|x| {
            let tau = to_f64(x);
            let t = integrate(|u| 1.0 / phi_f(u), a, tau, rtol);
            let s = integrate(|u| 0.5 / phi_f(u).sqrt(), a, tau, rtol);
            let f = integrate(|u| u / phi_f(u), a, tau, rtol);
            let value = phi.eval(x).map(|v| to_f64(&v)).unwrap_or(f64::NAN);
            FiberSample { tau, phi: value, t, s, f, r: (0.5 * t).exp() }
        })
        .collect())
}
