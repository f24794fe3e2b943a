//! Invariant vector fields on the unit circle bundle of a homogeneous line
//! bundle, and the applicability test for the invariant ddc-lemma.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flag::{BundleWeight, FlagVariety};
use crate::poly::Rational;
use crate::rootsys::{format_root, Basis, Root, WeightVector};

/// Sign convention note emitted alongside the proportionality constant.
pub const SIGN_CONVENTION: &str =
    "proportionality constant l is reported with lambda = -l * alpha; the opposite convention alpha = -l * lambda is not used";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldCase {
    /// Only the fibre rotation field.
    A,
    /// Fibre rotation plus the two fields of a distinguished root.
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFieldClassification {
    pub case: FieldCase,
    pub distinguished_root: Option<Root>,
    /// `l` with `lambda = -l * alpha`.
    pub proportionality: Option<Rational>,
}

impl InvariantFieldClassification {
    /// Real dimension of the space of invariant vector fields.
    pub fn dimension(&self) -> usize {
        match self.case {
            FieldCase::A => 1,
            FieldCase::B => 3,
        }
    }
}

/// `Some(c)` with `v = c * w`, when `w != 0` and the vectors are parallel.
fn proportional(v: &[Rational], w: &[Rational]) -> Option<Rational> {
    let k = w.iter().position(|x| !x.is_zero())?;
    let c = &v[k] / &w[k];
    v.iter().zip(w).all(|(a, b)| *a == &c * b).then_some(c)
}

pub fn classify_invariant_fields(fv: &FlagVariety, lambda: &BundleWeight) -> Result<InvariantFieldClassification> {
    let lw = fv.rs.convert(&lambda.weight(fv)?, Basis::SimpleRoot)?;
    if lw.is_zero() {
        return Err(Error::ZeroWeight);
    }
    for alpha in &fv.d_plus {
        let a = WeightVector::from_root(alpha);
        let Some(c) = proportional(&lw.coords, &a.coords) else {
            continue;
        };
        let blocked = fv.r_plus.iter().any(|beta| {
            let plus: Root = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            let minus: Root = alpha.iter().zip(beta).map(|(x, y)| x - y).collect();
            // beta ranges over both signs; the pair {alpha+beta, alpha-beta} is sign-symmetric
            fv.rs.is_root_coords(&plus) || fv.rs.is_root_coords(&minus)
        });
        if blocked {
            continue;
        }
        return Ok(InvariantFieldClassification {
            case: FieldCase::B,
            distinguished_root: Some(alpha.clone()),
            proportionality: Some(-c),
        });
    }
    Ok(InvariantFieldClassification { case: FieldCase::A, distinguished_root: None, proportionality: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdcVerdict {
    pub applicable: bool,
    pub reason: String,
}

pub fn ddc_applicable(fv: &FlagVariety, lambda: &BundleWeight) -> Result<DdcVerdict> {
    let cls = classify_invariant_fields(fv, lambda)?;
    Ok(match (&cls.case, &cls.distinguished_root, &cls.proportionality) {
        (FieldCase::A, _, _) => DdcVerdict {
            applicable: true,
            reason: "invariant fields are spanned by the fibre rotation alone".into(),
        },
        (FieldCase::B, Some(root), Some(l)) if l.is_positive() => DdcVerdict {
            applicable: true,
            reason: format!("lambda = -l * ({}) with l = {l} > 0", format_root(root)),
        },
        (FieldCase::B, Some(root), Some(l)) => DdcVerdict {
            applicable: false,
            reason: format!("lambda = -l * ({}) with l = {l} <= 0", format_root(root)),
        },
        _ => unreachable!("case B always carries a root and a constant"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::frac;
    use crate::rootsys::RootSystem;

    fn fv(t: &str, pi: &[usize]) -> FlagVariety {
        FlagVariety::new(RootSystem::parse(t).unwrap(), pi.iter().map(|i| i - 1)).unwrap()
    }

    fn w(n: &[i64]) -> BundleWeight {
        BundleWeight::new(n.to_vec()).unwrap()
    }

    #[test]
    fn cp1_is_case_b() {
        let f = fv("A1", &[]);
        let c = classify_invariant_fields(&f, &w(&[-1])).unwrap();
        assert_eq!(c.case, FieldCase::B);
        assert_eq!(c.distinguished_root, Some(vec![1]));
        assert_eq!(c.proportionality, Some(frac(1, 2)));
        assert_eq!(c.dimension(), 3);
    }

    #[test]
    fn ddc_cp1_signs() {
        let f = fv("A1", &[]);
        assert!(ddc_applicable(&f, &w(&[-1])).unwrap().applicable);
        let pos = ddc_applicable(&f, &w(&[1])).unwrap();
        assert!(!pos.applicable);
        assert!(pos.reason.contains("-1/2"));
    }

    #[test]
    fn a2_beta() {
        let f = fv("A2", &[]);
        let v = ddc_applicable(&f, &w(&[-1, -1])).unwrap();
        assert!(v.applicable);
        let c = classify_invariant_fields(&f, &w(&[-1, -1])).unwrap();
        assert_eq!(c.distinguished_root, Some(vec![1, 1]));
        assert_eq!(c.proportionality, Some(frac(1, 1)));
        assert_eq!(classify_invariant_fields(&f, &w(&[1, 2])).unwrap().case, FieldCase::A);
        // mixed weight proportional to a1 with l < 0
        let mixed = ddc_applicable(&f, &w(&[2, -1])).unwrap();
        assert!(!mixed.applicable);
        // mixed weight not proportional to any root: case A
        assert!(ddc_applicable(&f, &w(&[3, -1])).unwrap().applicable);
    }

    #[test]
    fn a3_partial_row() {
        let f = fv("A3", &[1]);
        for n in [-3, -1, 1, 2] {
            let c = classify_invariant_fields(&f, &w(&[n, -2 * n])).unwrap();
            assert_eq!(c.distinguished_root, Some(vec![0, 0, 1]), "n = {n}");
            assert_eq!(c.proportionality, Some(Rational::from_integer(n.into())));
        }
        assert_eq!(classify_invariant_fields(&f, &w(&[1, 1])).unwrap().case, FieldCase::A);
    }

    #[test]
    fn levi_roots_block_case_b() {
        // In A2 with Pi' = {a1}, s* is spanned by w2. The only D+ root proportional
        // to a multiple of w2 would have to be orthogonal to a1; none is, so case A.
        let f = fv("A2", &[1]);
        assert_eq!(classify_invariant_fields(&f, &w(&[-1])).unwrap().case, FieldCase::A);
        // B3 with Pi' = {a2, a3}: -w1 = -(a1+a2+a3) is parallel to the short root e1,
        // but e1 + e3 is a root, so the fields of e1 are not invariant.
        let f = fv("B3", &[2, 3]);
        let c = classify_invariant_fields(&f, &w(&[-1])).unwrap();
        assert_eq!(c.case, FieldCase::A);
    }

    #[test]
    fn zero_weight_rejected() {
        let f = fv("A2", &[]);
        assert_eq!(
            classify_invariant_fields(&f, &BundleWeight { n: vec![0, 0] }),
            Err(Error::ZeroWeight)
        );
    }
}
