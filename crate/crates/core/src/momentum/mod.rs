//! Momentum construction for invariant constant-scalar-curvature metrics.
//!
//! With `Q(tau) = prod_a ((kappa,a) - tau (lambda,a))` over the tangent roots
//! and `P = Q * sum_a (a,delta) / ((kappa,a) - tau (lambda,a))`, the momentum
//! profile `phi` solves `(phi Q)'' + C Q = P` with `phi(0) = 0`,
//! `phi'(0) = 1`. Writing `Phi = phi Q`, the solution is two exact
//! antiderivatives of `P - C Q`, so every profile is an exact rational
//! function.

mod asymptotics;
mod behavior;
mod fiber;
mod oracle;
mod smooth;

pub use asymptotics::{
    asymptotics, cone_asymptotics, hyperbolic_asymptotics, scalar_flat_asymptotics, Asymptotics, HyperbolicAsymptotics,
    ScalarFlatAsymptotics,
};
pub use behavior::{
    classify_behavior, BehaviorReport, ConeData, Domain, EndpointLocation, EndpointRow, TheoremCase,
};
pub use fiber::{default_tau0, fiber_maps, FiberSample};
pub use oracle::{numeric_oracle, oracle_deviation, OracleOptions};
pub use smooth::{find_smooth_c, SmoothCSearch, SmoothCandidate};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::flag::{BundleWeight, FlagVariety, KahlerClass};
use crate::poly::{bisect_root, frac, int, sign, Polynomial, Rational, RationalFunction, RootEnclosure, SturmSequence};
use crate::rootsys::format_root;

/// `(Q, P, n)` for a line bundle with Kähler class; `n` is the complex
/// dimension of the total space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileInputs {
    pub qtilde: Polynomial,
    pub p: Polynomial,
    pub n: usize,
}

pub fn build_profile_inputs(fv: &FlagVariety, lambda: &BundleWeight, kappa: &KahlerClass) -> Result<ProfileInputs> {
    let curv = fv.curvature_coeffs(lambda)?;
    if let Some((r, v)) = fv.d_plus.iter().zip(&curv).find(|(_, v)| v.is_positive()) {
        return Err(Error::NotSemiNegative { root: format_root(r), value: v.to_string() });
    }
    let kc = fv.kahler_coeffs(kappa)?;
    let ke = fv.ke_coeffs();
    Ok(inputs_from_coeffs(&kc, &curv, &ke))
}

/// Build `(Q, P)` from per-root data `(kappa,a)`, `(lambda,a)`, `(a,delta)`.
pub fn inputs_from_coeffs(kahler: &[Rational], curvature: &[Rational], ke: &[Rational]) -> ProfileInputs {
    let factors: Vec<Polynomial> = kahler
        .iter()
        .zip(curvature)
        .map(|(k, l)| Polynomial::linear(k.clone(), -l.clone()))
        .collect();
    let m = factors.len();
    // prefix[i] = prod_{j<i}, suffix[i] = prod_{j>=i}
    let mut prefix = vec![Polynomial::one(); m + 1];
    for i in 0..m {
        prefix[i + 1] = &prefix[i] * &factors[i];
    }
    let mut suffix = vec![Polynomial::one(); m + 1];
    for i in (0..m).rev() {
        suffix[i] = &factors[i] * &suffix[i + 1];
    }
    let mut p = Polynomial::zero();
    for i in 0..m {
        let others = &prefix[i] * &suffix[i + 1];
        p = &p + &others.scale(&ke[i]);
    }
    ProfileInputs { qtilde: prefix[m].clone(), p, n: m + 1 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumProfile {
    pub n: usize,
    pub qtilde: Polynomial,
    pub p: Polynomial,
    /// Target constant scalar curvature.
    pub c: Rational,
    /// `Phi = phi * Q`.
    pub phi_num: Polynomial,
}

impl MomentumProfile {
    pub fn solve(inputs: &ProfileInputs, c: &Rational) -> Self {
        let forcing = &inputs.p - &inputs.qtilde.scale(c);
        let d_phi = &forcing.antiderivative() + &Polynomial::constant(inputs.qtilde.coeff(0));
        Self {
            n: inputs.n,
            qtilde: inputs.qtilde.clone(),
            p: inputs.p.clone(),
            c: c.clone(),
            phi_num: d_phi.antiderivative(),
        }
    }

    /// `phi = Phi / Q`, unreduced.
    pub fn phi(&self) -> RationalFunction {
        RationalFunction::new(self.phi_num.clone(), self.qtilde.clone())
    }

    /// `Phi'' + C Q - P`; identically zero for a correct solve.
    pub fn residual(&self) -> Polynomial {
        &(&self.phi_num.derivative().derivative() + &self.qtilde.scale(&self.c)) - &self.p
    }

    pub fn phi_at(&self, tau: &Rational) -> Option<Rational> {
        self.phi().eval(tau)
    }

    pub fn curvature_sign(&self) -> i32 {
        sign(&self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntervalEnd {
    Infinite,
    /// Enclosure of the unique positive root of `Phi`.
    Finite(RootEnclosure),
}

/// Momentum interval `[0, b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentumInterval {
    pub end: IntervalEnd,
}

impl MomentumInterval {
    pub fn is_infinite(&self) -> bool {
        matches!(self.end, IntervalEnd::Infinite)
    }

    /// Whether `tau` lies in the open interval `(0, b)`, certified against
    /// the lower end of the enclosure.
    pub fn contains_interior(&self, tau: &Rational) -> bool {
        if !tau.is_positive() {
            return false;
        }
        match &self.end {
            IntervalEnd::Infinite => true,
            IntervalEnd::Finite(enc) => *tau < enc.lo,
        }
    }
}

/// Default enclosure width for the finite end of the interval.
pub fn default_width() -> Rational {
    frac(1, 1_000_000_000_000)
}

/// `Phi / tau`; `Phi(0) = 0` always.
pub(crate) fn deflated(phi_num: &Polynomial) -> Polynomial {
    let (q, r) = phi_num.div_rem(&Polynomial::x());
    debug_assert!(r.is_zero());
    q
}

pub fn momentum_interval(profile: &MomentumProfile, width: &Rational) -> Result<MomentumInterval> {
    let roots = profile.phi_num.count_positive_roots();
    if !profile.c.is_positive() {
        if roots != 0 {
            return Err(Error::InternalInconsistency(format!(
                "Phi has {roots} positive root(s) with C <= 0"
            )));
        }
        return Ok(MomentumInterval { end: IntervalEnd::Infinite });
    }
    // Phi'' changes sign at most once on (0, inf), so Phi has at most one
    // positive root. With a strictly negative weight there is exactly one;
    // a semi-negative weight may leave Phi positive for every tau.
    let d_roots = profile.phi_num.derivative().count_positive_roots();
    let strict = profile.qtilde.degree() == Some(profile.n - 1);
    if roots > 1 || (strict && (roots != 1 || d_roots != 1)) {
        return Err(Error::InternalInconsistency(format!(
            "C > 0 requires exactly one positive root of Phi and of Phi' (found {roots} and {d_roots})"
        )));
    }
    if roots == 0 {
        return Ok(MomentumInterval { end: IntervalEnd::Infinite });
    }
    let psi = deflated(&profile.phi_num);
    let hi = psi.root_bound();
    if sign(&psi.eval(&Rational::zero())) <= 0 || sign(&psi.eval(&hi)) >= 0 {
        return Err(Error::InternalInconsistency("Phi/tau does not change sign on (0, bound)".into()));
    }
    let enc = bisect_root(&psi, Rational::zero(), hi, width);
    Ok(MomentumInterval { end: IntervalEnd::Finite(enc) })
}

/// Whether `p` has a root in the closed enclosure.
pub(crate) fn has_root_in(p: &Polynomial, enc: &RootEnclosure) -> bool {
    if p.is_zero() {
        return true;
    }
    if p.degree() == Some(0) {
        return false;
    }
    if p.eval(&enc.lo).is_zero() || p.eval(&enc.hi).is_zero() {
        return true;
    }
    SturmSequence::new(p).count_from(&enc.lo, Some(&enc.hi)) > 0
}

/// Exact sign of `h` at the unique root of `psi` inside `enc`, refining the
/// enclosure until `h` has no root in it.
pub(crate) fn sign_at_root(h: &Polynomial, psi: &Polynomial, enc: &RootEnclosure) -> i32 {
    if has_root_in(&psi.gcd(h), enc) && psi.gcd(h).degree().unwrap_or(0) > 0 {
        return 0;
    }
    let mut enc = enc.clone();
    loop {
        if !has_root_in(h, &enc) {
            return sign(&h.eval(&enc.midpoint()));
        }
        if enc.lo == enc.hi {
            return sign(&h.eval(&enc.lo));
        }
        let w = enc.width() / int(2);
        let lo_sign = sign(&psi.eval(&enc.lo));
        enc = if lo_sign == 0 {
            RootEnclosure { lo: enc.lo.clone(), hi: enc.lo.clone() }
        } else {
            bisect_root(psi, enc.lo.clone(), enc.hi.clone(), &w)
        };
    }
}

/// `i = (1/(n(n-1))) sum_a (a,delta) / (a,-lambda)`; requires every `(lambda,a) < 0`.
pub fn metric_index(fv: &FlagVariety, lambda: &BundleWeight) -> Result<Rational> {
    let curv = fv.curvature_coeffs(lambda)?;
    let ke = fv.ke_coeffs();
    let mut sum = Rational::zero();
    for ((r, l), k) in fv.d_plus.iter().zip(&curv).zip(&ke) {
        if l.is_zero() {
            return Err(Error::DivisionByZero(format_root(r)));
        }
        if l.is_positive() {
            return Err(Error::NotSemiNegative { root: format_root(r), value: l.to_string() });
        }
        sum += k / -l;
    }
    let n = fv.bundle_dim() as i64;
    Ok(sum / int(n * (n - 1)))
}

/// `phi'(0)` from the exact rational function.
pub(crate) fn phi_prime_at_zero(profile: &MomentumProfile) -> Rational {
    profile.phi().derivative().eval(&Rational::zero()).unwrap_or_else(Rational::one)
}
