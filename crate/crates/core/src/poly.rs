//! Exact univariate polynomials and rational functions over `BigRational`,
//! with Sturm-sequence root counting and bisection refinement.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial with exact rational coefficients, stored in ascending degree.
///
/// The coefficient vector never carries trailing zeros; the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a + b x`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(d) = self.degree() else {
            return Rational::zero();
        };
        // Homogeneous Horner over the integers with a single final reduction:
        // sum a_i p^i q^(d-i) / (L q^d), where a_i = L c_i.
        let l = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let a: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let (p, q) = (x.numer(), x.denom());
        let mut acc = a[d].clone();
        let mut qpow = BigInt::one();
        for ai in a[..d].iter().rev() {
            qpow *= q;
            acc = acc * p + ai * &qpow;
        }
        Rational::new(acc, l * qpow)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `x` as a root (0 if not a root). Panics on the zero polynomial.
    pub fn root_multiplicity(&self, x: &Rational) -> usize {
        assert!(!self.is_zero(), "zero polynomial has every root");
        let factor = Self::linear(-x.clone(), Rational::one());
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem(&factor);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Sign of the polynomial as `x -> +inf`.
    pub fn sign_at_pos_inf(&self) -> i32 {
        sign(&self.leading())
    }

    /// Number of distinct real roots in `(0, +inf)`.
    pub fn count_positive_roots(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let m = self.root_multiplicity(&Rational::zero());
        let deflated = Self::new(self.coeffs[m..].to_vec());
        SturmSequence::new(&deflated).count_from(&Rational::zero(), None)
    }

    /// Upper bound on the absolute value of every real root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let max = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        Rational::one() + max
    }
}

pub(crate) fn sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (s, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if s == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {s} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "tau")?,
                (1, false) => write!(f, "{mag}*tau")?,
                (_, true) => write!(f, "tau^{i}")?,
                (_, false) => write!(f, "{mag}*tau^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Signed remainder sequence `p, p', -rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Polynomial>,
}

impl SturmSequence {
    pub fn new(p: &Polynomial) -> Self {
        let mut seq = Vec::new();
        if p.is_zero() {
            return Self { seq };
        }
        seq.push(p.clone());
        let d = p.derivative();
        if d.is_zero() {
            return Self { seq };
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps sign structure and tames coefficient growth
            let r = -&r;
            let lead = r.leading().abs();
            seq.push(r.scale(&(Rational::one() / lead)));
        }
        Self { seq }
    }

    fn variations<I: Iterator<Item = i32>>(signs: I) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.seq.iter().map(Polynomial::sign_at_pos_inf))
    }

    /// Distinct roots in `(lo, hi]`, or `(lo, +inf)` when `hi` is `None`.
    /// `lo` must not be a root.
    pub fn count_from(&self, lo: &Rational, hi: Option<&Rational>) -> usize {
        if self.seq.is_empty() {
            return 0;
        }
        let a = self.variations_at(lo);
        let b = match hi {
            Some(h) => self.variations_at(h),
            None => self.variations_at_pos_inf(),
        };
        a.saturating_sub(b)
    }
}

/// Closed rational interval `[lo, hi]` known to contain a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootEnclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        to_f64(&self.lo) <= x && x <= to_f64(&self.hi)
    }
}

/// Refine a sign-changing bracket `[lo, hi]` of `p` by bisection until its
/// width is at most `width`. `p(lo)` and `p(hi)` must be nonzero with opposite signs.
pub fn bisect_root(p: &Polynomial, lo: Rational, hi: Rational, width: &Rational) -> RootEnclosure {
    let (mut lo, mut hi) = (lo, hi);
    let s_lo = sign(&p.eval(&lo));
    debug_assert!(s_lo != 0 && s_lo == -sign(&p.eval(&hi)));
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / int(2);
        let s = sign(&p.eval(&mid));
        if s == 0 {
            return RootEnclosure { lo: mid.clone(), hi: mid };
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootEnclosure { lo, hi }
}

/// Exact rational function `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFunction {
    /// Panics if `denominator` is zero.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        Self { numerator, denominator }
    }

    /// Lowest terms with a monic denominator; two equal functions reduce to
    /// the same representation.
    pub fn reduced(&self) -> Self {
        let g = self.numerator.gcd(&self.denominator);
        let (num, _) = self.numerator.div_rem(&g);
        let (den, _) = self.denominator.div_rem(&g);
        let lead = den.leading();
        Self {
            numerator: num.scale(&(Rational::one() / &lead)),
            denominator: den.monic(),
        }
    }

    /// `None` where the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denominator.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.numerator.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.numerator.eval_f64(x) / self.denominator.eval_f64(x)
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.numerator.derivative() * &self.denominator)
            - &(&self.numerator * &self.denominator.derivative());
        Self::new(num, &self.denominator * &self.denominator)
    }

    /// Growth degree at infinity: `deg num - deg den` (`None` for zero).
    pub fn degree_at_infinity(&self) -> Option<i64> {
        Some(self.numerator.degree()? as i64 - self.denominator.degree()? as i64)
    }

    /// Order of vanishing at `x` (negative for a pole, 0 if finite nonzero).
    pub fn order_at(&self, x: &Rational) -> i64 {
        let r = self.reduced();
        if r.numerator.is_zero() {
            return i64::MAX;
        }
        r.numerator.root_multiplicity(x) as i64 - r.denominator.root_multiplicity(x) as i64
    }

    /// Laurent expansion at infinity: pairs `(exponent, coefficient)` for
    /// every exponent from the growth degree down to `min_exponent`,
    /// including zero coefficients.
    pub fn laurent_at_infinity(&self, min_exponent: i64) -> Vec<(i64, Rational)> {
        let Some(top) = self.degree_at_infinity() else {
            return Vec::new();
        };
        if top < min_exponent {
            return Vec::new();
        }
        // Long division in descending powers, continued past the constant term.
        let dd = self.denominator.degree().unwrap();
        let lead = self.denominator.leading();
        let terms = (top - min_exponent + 1) as usize;
        let nd = self.numerator.degree().unwrap();
        let mut rem: Vec<Rational> = self.numerator.coeffs().to_vec();
        // rem[k] holds the coefficient of x^(k - shift)
        let shift = terms + dd;
        let mut padded = vec![Rational::zero(); shift];
        padded.append(&mut rem);
        let mut out = Vec::with_capacity(terms);
        for step in 0..terms {
            let exp = top - step as i64;
            let idx = nd + shift - step;
            let q = &padded[idx] / &lead;
            if !q.is_zero() {
                for (j, d) in self.denominator.coeffs().iter().enumerate() {
                    padded[idx - dd + j] -= &q * d;
                }
            }
            out.push((exp, q));
        }
        out
    }
}
