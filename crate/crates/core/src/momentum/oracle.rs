//! Independent binary64 integration of `u'' = P - C Q`, `u(0) = 0`,
//! `u'(0) = Q(0)` by classical RK4, for cross-checking the exact profile.

use super::MomentumProfile;
use crate::error::{Error, Result};
use crate::poly::{to_f64, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub tau_max: f64,
    pub step: f64,
    /// Bound on the step-doubling local error estimate, relative to `1 + |u|`.
    pub bound: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { tau_max: 1.0, step: 1e-3, bound: 1e-6 }
    }
}

type State = (f64, f64);

fn rk4_step<F: Fn(f64) -> f64>(rhs: &F, tau: f64, (u, v): State, h: f64) -> State {
    // y = (u, v), y' = (v, rhs(tau))
    let k1 = (v, rhs(tau));
    let k2 = (v + 0.5 * h * k1.1, rhs(tau + 0.5 * h));
    let k3 = (v + 0.5 * h * k2.1, rhs(tau + 0.5 * h));
    let k4 = (v + h * k3.1, rhs(tau + h));
    (
        u + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        v + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Samples `(tau, phi)` on the uniform grid `tau_k = k h`, `h = tau_max / ceil(tau_max / step)`.
pub fn numeric_oracle(qtilde: &Polynomial, p: &Polynomial, c: &Rational, opts: &OracleOptions) -> Result<Vec<(f64, f64)>> {
    let forcing = (p - &qtilde.scale(c)).to_f64_coeffs();
    let q = qtilde.to_f64_coeffs();
    let horner = |cs: &[f64], x: f64| cs.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let rhs = |x: f64| horner(&forcing, x);
    let steps = (opts.tau_max / opts.step).ceil().max(1.0) as usize;
    let h = opts.tau_max / steps as f64;
    let mut y: State = (0.0, to_f64(&qtilde.coeff(0)));
    let mut out = Vec::with_capacity(steps + 1);
    out.push((0.0, 0.0));
    for k in 0..steps {
        let tau = k as f64 * h;
        let full = rk4_step(&rhs, tau, y, h);
        let half = rk4_step(&rhs, tau + 0.5 * h, rk4_step(&rhs, tau, y, 0.5 * h), 0.5 * h);
        let estimate = (full.0 - half.0).abs() / 15.0 / (1.0 + half.0.abs());
        if estimate > opts.bound {
            return Err(Error::StepTooLarge { estimate, bound: opts.bound, tau });
        }
        y = full;
        let next = (k + 1) as f64 * h;
        out.push((next, y.0 / horner(&q, next)));
    }
    Ok(out)
}

/// Sup-norm distance between the oracle and the exact profile, checked at
/// every `stride`-th grid point.
pub fn oracle_deviation(profile: &MomentumProfile, opts: &OracleOptions, stride: usize) -> Result<f64> {
    let samples = numeric_oracle(&profile.qtilde, &profile.p, &profile.c, opts)?;
    let phi = profile.phi();
    let stride = stride.max(1);
    let mut worst: f64 = 0.0;
    for (k, &(tau, value)) in samples.iter().enumerate() {
        if k % stride != 0 && k + 1 != samples.len() {
            continue;
        }
        let x = Rational::from_float(tau).expect("finite grid point");
        let exact = phi.eval(&x).map(|v| to_f64(&v)).ok_or_else(|| {
            Error::InternalInconsistency(format!("Q vanishes at tau = {tau}"))
        })?;
        worst = worst.max((value - exact).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::ProfileInputs;
    use crate::poly::int;

    fn prof(q: &[i64], p: &[i64], n: usize, c: i64) -> MomentumProfile {
        MomentumProfile::solve(&ProfileInputs { qtilde: Polynomial::from_ints(q), p: Polynomial::from_ints(p), n }, &int(c))
    }

    #[test]
    fn burns_at_two() {
        let p = prof(&[1, 1], &[2], 2, 0);
        let opts = OracleOptions { tau_max: 2.0, ..Default::default() };
        let s = numeric_oracle(&p.qtilde, &p.p, &p.c, &opts).unwrap();
        let (tau, phi) = *s.last().unwrap();
        assert_eq!(tau, 2.0);
        assert!((phi - 2.0).abs() < 1e-8);
    }

    #[test]
    fn a2_at_one() {
        let p = prof(&[2, 6, 6, 2], &[12, 24, 12], 4, 0);
        let opts = OracleOptions { tau_max: 1.0, ..Default::default() };
        let s = numeric_oracle(&p.qtilde, &p.p, &p.c, &opts).unwrap();
        assert!((s.last().unwrap().1 - 13.0 / 16.0).abs() < 1e-8);
        assert!(oracle_deviation(&p, &opts, 10).unwrap() < 1e-8);
    }

    #[test]
    fn fourth_order_convergence() {
        // cubic forcing; RK4 is exact only up to degree 2
        let p = prof(&[1, 3, 3, 1], &[3, 6, 3], 4, -5);
        let coarse = OracleOptions { tau_max: 2.0, step: 0.1, bound: 1.0 };
        let fine = OracleOptions { step: 0.05, ..coarse };
        let e1 = oracle_deviation(&p, &coarse, 1).unwrap();
        let e2 = oracle_deviation(&p, &fine, 2).unwrap();
        assert!(e1 > 0.0 && e1 / e2 > 8.0, "{e1} {e2}");
    }

    #[test]
    fn step_too_large() {
        let p = prof(&[1, 3, 3, 1], &[3, 6, 3], 4, -5);
        let opts = OracleOptions { tau_max: 10.0, step: 2.0, bound: 1e-12 };
        assert!(matches!(numeric_oracle(&p.qtilde, &p.p, &p.c, &opts), Err(Error::StepTooLarge { .. })));
    }
}
