//! Generalized flag varieties `G^C / P` given by a subset of simple roots,
//! with the weight-level data of line bundles and invariant Kähler classes.
//!
//! All per-root coefficient maps are returned as vectors aligned with
//! [`FlagVariety::d_plus`]. Kähler classes are stored through a weight
//! `kappa` whose pairing `(kappa, a)` is twice the coefficient of the
//! invariant form on the root `a`; curvature and Kähler-Einstein
//! coefficients are stored unhalved in the same way.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, Rational};
use crate::rootsys::{format_root, Basis, Root, RootSystem, WeightVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVariety {
    pub rs: RootSystem,
    /// Zero-based simple-root indices generating the Levi part.
    pub pi_prime: BTreeSet<usize>,
    /// Positive roots with some coefficient outside `pi_prime`.
    pub d_plus: Vec<Root>,
    /// Positive roots supported on `pi_prime`.
    pub r_plus: Vec<Root>,
    /// Sum of `d_plus`, in simple-root coordinates.
    pub delta: Vec<i64>,
    /// Zero-based simple-root indices not in `pi_prime`, ascending.
    pub s_star_indices: Vec<usize>,
}

impl FlagVariety {
    /// `pi_prime` holds zero-based simple-root indices.
    pub fn new(rs: RootSystem, pi_prime: impl IntoIterator<Item = usize>) -> Result<Self> {
        let pi_prime: BTreeSet<usize> = pi_prime.into_iter().collect();
        if let Some(&bad) = pi_prime.iter().find(|&&i| i >= rs.rank) {
            return Err(Error::IndexOutOfRange { index: bad + 1, rank: rs.rank });
        }
        let s_star_indices: Vec<usize> = (0..rs.rank).filter(|i| !pi_prime.contains(i)).collect();
        if s_star_indices.is_empty() {
            return Err(Error::EmptyTangentSpace);
        }
        let (d_plus, r_plus): (Vec<Root>, Vec<Root>) = rs
            .positive_roots
            .iter()
            .cloned()
            .partition(|r| s_star_indices.iter().any(|&i| r[i] != 0));
        let mut delta = vec![0; rs.rank];
        for r in &d_plus {
            for (d, c) in delta.iter_mut().zip(r) {
                *d += c;
            }
        }
        Ok(Self { rs, pi_prime, d_plus, r_plus, delta, s_star_indices })
    }

    pub fn dim(&self) -> usize {
        self.d_plus.len()
    }

    /// Complex dimension of the total space of a line bundle over the variety.
    pub fn bundle_dim(&self) -> usize {
        self.d_plus.len() + 1
    }

    pub fn delta_vector(&self) -> WeightVector {
        WeightVector::from_root(&self.delta)
    }

    /// Expand `s*` coefficients to a full fundamental-weight vector.
    pub fn embed(&self, coeffs: &[Rational]) -> Result<WeightVector> {
        if coeffs.len() != self.s_star_indices.len() {
            return Err(Error::DimensionMismatch { expected: self.s_star_indices.len(), got: coeffs.len() });
        }
        let mut full = vec![Rational::zero(); self.rs.rank];
        for (&i, c) in self.s_star_indices.iter().zip(coeffs) {
            full[i] = c.clone();
        }
        Ok(WeightVector::new(full, Basis::FundamentalWeight))
    }

    /// Restrict a weight lying in `s*` to its `s*` coefficients. Weights with
    /// a nonzero coefficient on a fundamental weight indexed by `pi_prime`
    /// are rejected.
    pub fn restrict(&self, v: &WeightVector) -> Result<Vec<Rational>> {
        let w = self.rs.convert(v, Basis::FundamentalWeight)?;
        if let Some(&j) = self.pi_prime.iter().find(|&&j| !w.coords[j].is_zero()) {
            return Err(Error::Value {
                path: "weight".into(),
                message: format!("coefficient on w{} must vanish (index lies in the parabolic subset)", j + 1),
            });
        }
        Ok(self.s_star_indices.iter().map(|&i| w.coords[i].clone()).collect())
    }

    /// `(v, a)` for every `a` in `d_plus`.
    pub fn pairings(&self, v: &WeightVector) -> Result<Vec<Rational>> {
        self.d_plus.iter().map(|r| self.rs.pair_with_root(v, r)).collect()
    }

    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&Root> = self.d_plus.iter().collect();
        for a in &self.d_plus {
            for b in &self.d_plus {
                let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.rs.is_root_coords(&sum) && !set.contains(&sum) {
                    return false;
                }
            }
        }
        true
    }

    pub fn root_label(&self, r: &[i64]) -> String {
        format_root(r)
    }

    /// `(a, delta)` for every `a` in `d_plus`: the Kähler-Einstein (and Ricci)
    /// coefficients, unhalved.
    pub fn ke_coeffs(&self) -> Vec<Rational> {
        self.pairings(&self.delta_vector()).expect("delta has the ambient rank")
    }

    /// `(kappa, a)` for every `a` in `d_plus`; twice the form coefficients.
    pub fn kahler_coeffs(&self, kappa: &KahlerClass) -> Result<Vec<Rational>> {
        let v = kappa.weight(self)?;
        let out = self.pairings(&v)?;
        if let Some((r, c)) = self.d_plus.iter().zip(&out).find(|(_, c)| !c.is_positive()) {
            return Err(Error::NonPositiveClass(format!("(kappa, {}) = {c}", format_root(r))));
        }
        Ok(out)
    }

    /// `(lambda, a)` for every `a` in `d_plus`; twice the curvature-form coefficients.
    pub fn curvature_coeffs(&self, lambda: &BundleWeight) -> Result<Vec<Rational>> {
        self.pairings(&lambda.weight(self)?)
    }

    pub fn classify_bundle_weight(&self, lambda: &BundleWeight) -> Result<BundleClass> {
        let c = self.curvature_coeffs(lambda)?;
        let pos = c.iter().filter(|x| x.is_positive()).count();
        let neg = c.iter().filter(|x| x.is_negative()).count();
        let zero = c.len() - pos - neg;
        Ok(match (pos, neg, zero) {
            (_, 0, 0) => BundleClass::Ample,
            (0, _, 0) => BundleClass::Negative,
            (0, _, _) => BundleClass::SemiNegative,
            (_, 0, _) => BundleClass::SemiPositive,
            _ => BundleClass::Mixed,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BundleClass {
    Ample,
    Negative,
    SemiNegative,
    SemiPositive,
    Mixed,
}

impl BundleClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BundleClass::Ample => "ample",
            BundleClass::Negative => "negative",
            BundleClass::SemiNegative => "semi-negative",
            BundleClass::SemiPositive => "semi-positive",
            BundleClass::Mixed => "mixed",
        }
    }
}

/// Integral weight on the flag variety: integer coefficients on the
/// fundamental weights indexed by `s_star_indices`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleWeight {
    pub n: Vec<i64>,
}

impl BundleWeight {
    pub fn new(n: Vec<i64>) -> Result<Self> {
        if n.iter().all(|&x| x == 0) {
            return Err(Error::ZeroWeight);
        }
        Ok(Self { n })
    }

    pub fn weight(&self, fv: &FlagVariety) -> Result<WeightVector> {
        if self.n.iter().all(|&x| x == 0) {
            return Err(Error::ZeroWeight);
        }
        fv.embed(&self.n.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    pub fn scaled(&self, m: i64) -> Self {
        Self { n: self.n.iter().map(|x| x * m).collect() }
    }

    /// The anticanonical weight `delta`, restricted to `s*`.
    pub fn anticanonical(fv: &FlagVariety) -> Self {
        let coeffs = fv.restrict(&fv.delta_vector()).expect("delta lies in s*");
        Self {
            n: coeffs
                .iter()
                .map(|c| i64::try_from(c.to_integer()).expect("delta is integral"))
                .collect(),
        }
    }
}

/// Positive rational coefficients on the `s*` fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KahlerClass {
    pub x: Vec<Rational>,
}

impl KahlerClass {
    pub fn new(x: Vec<Rational>) -> Result<Self> {
        if let Some((i, v)) = x.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            return Err(Error::NonPositiveClass(format!("coefficient {} is {v}", i + 1)));
        }
        Ok(Self { x })
    }

    pub fn from_ints(x: &[i64]) -> Result<Self> {
        Self::new(x.iter().map(|&v| int(v)).collect())
    }

    pub fn weight(&self, fv: &FlagVariety) -> Result<WeightVector> {
        fv.embed(&self.x)
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        Self { x: self.x.iter().map(|v| v * t).collect() }
    }
}
