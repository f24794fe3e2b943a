//! Search for a positive curvature constant whose profile closes up smoothly
//! at the far end, i.e. `g(C) = phi'(b(C)) + 1 = 0`.

use num_traits::{Signed, Zero};

use super::behavior::cone_data;
use super::{build_profile_inputs, deflated, momentum_interval, sign_at_root, IntervalEnd, MomentumProfile, ProfileInputs};
use crate::error::{Error, Result};
use crate::flag::{BundleWeight, FlagVariety, KahlerClass};
use crate::poly::{int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothCandidate {
    /// Bracket `[c_lo, c_hi]` on which `g` changes sign (equal when exact).
    pub c_lo: Rational,
    pub c_hi: Rational,
    pub c: f64,
    pub g: f64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothCSearch {
    /// `(C, g(C))` at the sample points; `g` is `None` where the interval is unbounded.
    pub samples: Vec<(Rational, Option<f64>)>,
    pub candidate: Option<SmoothCandidate>,
}

const MAX_BISECTIONS: usize = 200;

/// `(exact sign of g, g as binary64)`, or `None` on an unbounded interval.
fn g_at(inputs: &ProfileInputs, c: &Rational, width: &Rational) -> Result<Option<(i32, f64)>> {
    let prof = MomentumProfile::solve(inputs, c);
    let iv = momentum_interval(&prof, width)?;
    let IntervalEnd::Finite(enc) = &iv.end else {
        return Ok(None);
    };
    let cone = cone_data(&prof, enc);
    let test = &prof.phi_num.derivative() + &prof.qtilde;
    let s = sign_at_root(&test, &deflated(&prof.phi_num), enc);
    let g = if s == 0 { 0.0 } else { cone.phi_prime_at_b + 1.0 };
    Ok(Some((s, g)))
}

pub fn find_smooth_c(
    fv: &FlagVariety,
    lambda: &BundleWeight,
    kappa: &KahlerClass,
    range: (&Rational, &Rational),
    samples: usize,
    tol: f64,
) -> Result<SmoothCSearch> {
    let (lo, hi) = range;
    if !lo.is_positive() || !hi.is_positive() {
        return Err(Error::InvalidRange(format!("[{lo}, {hi}] contains C <= 0")));
    }
    if hi < lo {
        return Err(Error::InvalidRange(format!("[{lo}, {hi}] is empty")));
    }
    let inputs = build_profile_inputs(fv, lambda, kappa)?;
    let width = super::default_width();
    let count = if lo == hi { 1 } else { samples.max(2) };
    let points: Vec<Rational> = (0..count)
        .map(|k| if count == 1 { lo.clone() } else { lo + (hi - lo) * int(k as i64) / int(count as i64 - 1) })
        .collect();
    let mut values = Vec::with_capacity(count);
    for c in &points {
        values.push(g_at(&inputs, c, &width)?);
    }
    let samples_out = points.iter().cloned().zip(values.iter().map(|v| v.map(|(_, g)| g))).collect();

    let mut candidate = None;
    for (k, v) in values.iter().enumerate() {
        if let Some((0, g)) = v {
            let c = points[k].clone();
            candidate = Some(SmoothCandidate { c: crate::poly::to_f64(&c), c_lo: c.clone(), c_hi: c, g: *g, exact: true });
            break;
        }
        let Some(next) = values.get(k + 1) else { break };
        if let (Some((sa, _)), Some((sb, _))) = (v, next) {
            if sa * sb < 0 {
                candidate = Some(bisect_c(&inputs, points[k].clone(), points[k + 1].clone(), *sa, tol, &width)?);
                break;
            }
        }
    }
    Ok(SmoothCSearch { samples: samples_out, candidate })
}

fn bisect_c(inputs: &ProfileInputs, mut a: Rational, mut b: Rational, sa: i32, tol: f64, width: &Rational) -> Result<SmoothCandidate> {
    let mut last = f64::NAN;
    for _ in 0..MAX_BISECTIONS {
        let mid = (&a + &b) / int(2);
        let Some((s, g)) = g_at(inputs, &mid, width)? else {
            return Err(Error::InternalInconsistency("unbounded interval inside a bracket of finite ones".into()));
        };
        last = g;
        if s == 0 {
            return Ok(SmoothCandidate { c: crate::poly::to_f64(&mid), c_lo: mid.clone(), c_hi: mid, g, exact: true });
        }
        if s == sa {
            a = mid;
        } else {
            b = mid;
        }
        if g.abs() <= tol {
            break;
        }
    }
    let mid = (&a + &b) / int(2);
    debug_assert!(!(&b - &a).is_zero());
    Ok(SmoothCandidate { c: crate::poly::to_f64(&mid), c_lo: a, c_hi: b, g: last, exact: false })
}
