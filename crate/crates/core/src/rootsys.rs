//! Root systems of semisimple Lie types with an exact Weyl-invariant form.
//!
//! Simple roots follow Bourbaki numbering. The bilinear form is normalized so
//! that long roots of every simple factor have squared length 2; roots are
//! stored as integer vectors in simple-root coordinates.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleFactor {
    pub family: Family,
    pub rank: usize,
}

impl SimpleFactor {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidLieType(format!("{}{} does not exist", family.letter(), rank)))
        }
    }

    /// Squared lengths of the simple roots, long roots normalized to 2.
    fn root_lengths(&self) -> Vec<Rational> {
        let n = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![int(2); n],
            Family::B => (0..n).map(|i| if i + 1 == n { int(1) } else { int(2) }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { int(2) } else { int(1) }).collect(),
            Family::F => vec![int(2), int(2), int(1), int(1)],
            Family::G => vec![frac(2, 3), int(2)],
        }
    }

    /// Dynkin diagram edges `(i, j, bond multiplicity)`, zero-based.
    fn edges(&self) -> Vec<(usize, usize, i64)> {
        let n = self.rank;
        let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => chain(n),
            Family::B | Family::C => {
                let mut e = chain(n - 1);
                e.push((n - 2, n - 1, 2));
                e
            }
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1, 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2, 1), (1, 3, 1)];
                e.extend((2..n - 1).map(|i| (i, i + 1, 1)));
                e
            }
            Family::F => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
            Family::G => vec![(0, 1, 3)],
        }
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A semisimple type as a product of simple factors, e.g. `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieTypeSpec {
    pub factors: Vec<SimpleFactor>,
}

impl LieTypeSpec {
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }
}

impl FromStr for LieTypeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidLieType(s.to_string());
        let mut factors = Vec::new();
        for part in s.trim().split(['x', 'X']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Family::A,
                Some('B') => Family::B,
                Some('C') => Family::C,
                Some('D') => Family::D,
                Some('E') => Family::E,
                Some('F') => Family::F,
                Some('G') => Family::G,
                _ => return Err(bad()),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let rank: usize = digits.parse().map_err(|_| bad())?;
            factors.push(SimpleFactor::new(family, rank)?);
        }
        if factors.is_empty() {
            return Err(bad());
        }
        Ok(Self { factors })
    }
}

impl fmt::Display for LieTypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

/// A root in simple-root coordinates.
pub type Root = Vec<i64>;

pub fn root_height(r: &[i64]) -> i64 {
    r.iter().sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    SimpleRoot,
    FundamentalWeight,
}

/// A rational vector of the weight space, tagged with its basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub coords: Vec<Rational>,
    pub basis: Basis,
}

impl WeightVector {
    pub fn new(coords: Vec<Rational>, basis: Basis) -> Self {
        Self { coords, basis }
    }

    pub fn zero(rank: usize, basis: Basis) -> Self {
        Self::new(vec![Rational::zero(); rank], basis)
    }

    pub fn from_root(root: &[i64]) -> Self {
        Self::new(root.iter().map(|&c| int(c)).collect(), Basis::SimpleRoot)
    }

    pub fn from_weight_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), Basis::FundamentalWeight)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coords.iter().map(|c| c * k).collect(), self.basis)
    }

    /// Integer coordinates, if every coordinate is integral.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub lie_type: LieTypeSpec,
    pub rank: usize,
    /// `cartan[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub cartan: Vec<Vec<i64>>,
    pub gram: Vec<Vec<Rational>>,
    /// Sorted by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    /// Row `j` holds the simple-root coordinates of the fundamental weight `w_j`.
    pub fundamental_weights: Vec<Vec<Rational>>,
    /// Index range of each simple factor within the simple roots.
    pub factor_ranges: Vec<Range<usize>>,
    root_set: HashSet<Root>,
}

impl RootSystem {
    pub fn new(spec: &LieTypeSpec) -> Result<Self> {
        if spec.factors.is_empty() {
            return Err(Error::InvalidLieType("empty product".into()));
        }
        for f in &spec.factors {
            SimpleFactor::new(f.family, f.rank)?;
        }
        let rank = spec.rank();
        let mut gram = vec![vec![Rational::zero(); rank]; rank];
        let mut factor_ranges = Vec::new();
        let mut offset = 0;
        for f in &spec.factors {
            let lengths = f.root_lengths();
            for (i, d) in lengths.iter().enumerate() {
                gram[offset + i][offset + i] = d.clone();
            }
            for (i, j, m) in f.edges() {
                let short = if lengths[i] < lengths[j] { &lengths[i] } else { &lengths[j] };
                let v = -(int(m) * short) / int(2);
                gram[offset + i][offset + j] = v.clone();
                gram[offset + j][offset + i] = v;
            }
            factor_ranges.push(offset..offset + f.rank);
            offset += f.rank;
        }
        Ok(Self::from_gram(spec.clone(), gram, factor_ranges))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(&s.parse()?)
    }

    fn from_gram(lie_type: LieTypeSpec, gram: Vec<Vec<Rational>>, factor_ranges: Vec<Range<usize>>) -> Self {
        let rank = gram.len();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let a = int(2) * &gram[i][j] / &gram[j][j];
                        debug_assert!(a.is_integer());
                        i64::try_from(a.to_integer()).expect("Cartan entry fits in i64")
                    })
                    .collect()
            })
            .collect();

        let mut positive_roots = Vec::new();
        for range in &factor_ranges {
            positive_roots.extend(enumerate_positive_roots(&cartan, range.clone(), rank));
        }
        positive_roots.sort_by(|a, b| root_height(a).cmp(&root_height(b)).then_with(|| a.cmp(b)));

        let cartan_q: Vec<Vec<Rational>> =
            cartan.iter().map(|row| row.iter().map(|&a| int(a)).collect()).collect();
        let fundamental_weights = invert(&cartan_q).expect("Cartan matrix is invertible");

        let mut root_set = HashSet::new();
        for r in &positive_roots {
            root_set.insert(r.clone());
            root_set.insert(r.iter().map(|c| -c).collect());
        }
        Self {
            lie_type,
            rank,
            cartan,
            gram,
            positive_roots,
            fundamental_weights,
            factor_ranges,
            root_set,
        }
    }

    /// Same roots with the bilinear form multiplied by `c > 0`.
    pub fn with_scaled_form(&self, c: &Rational) -> Self {
        assert!(c.is_positive(), "form scale must be positive");
        let mut out = self.clone();
        for row in &mut out.gram {
            for g in row.iter_mut() {
                *g *= c;
            }
        }
        out
    }

    fn check(&self, v: &WeightVector) -> Result<()> {
        if v.coords.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.coords.len() });
        }
        Ok(())
    }

    pub fn convert(&self, v: &WeightVector, target: Basis) -> Result<WeightVector> {
        self.check(v)?;
        if v.basis == target {
            return Ok(v.clone());
        }
        let n = self.rank;
        let coords = match target {
            // w_j = sum_k r_k cartan[k][j]
            Basis::FundamentalWeight => (0..n)
                .map(|j| {
                    (0..n).fold(Rational::zero(), |acc, k| acc + &v.coords[k] * int(self.cartan[k][j]))
                })
                .collect(),
            // r = sum_j w_j fundamental_weights[j]
            Basis::SimpleRoot => (0..n)
                .map(|k| {
                    (0..n).fold(Rational::zero(), |acc, j| {
                        acc + &v.coords[j] * &self.fundamental_weights[j][k]
                    })
                })
                .collect(),
        };
        Ok(WeightVector::new(coords, target))
    }

    pub fn to_root_coords(&self, v: &WeightVector) -> Result<Vec<Rational>> {
        Ok(self.convert(v, Basis::SimpleRoot)?.coords)
    }

    pub fn inner_product(&self, v: &WeightVector, w: &WeightVector) -> Result<Rational> {
        let a = self.to_root_coords(v)?;
        let b = self.to_root_coords(w)?;
        Ok(self.gram_form(&a, &b))
    }

    /// `a^T gram b` for simple-root coordinate vectors.
    pub fn gram_form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * &self.gram[i][j] * bj;
                }
            }
        }
        acc
    }

    /// Inner product of a weight with a root given in simple-root coordinates.
    pub fn pair_with_root(&self, v: &WeightVector, root: &[i64]) -> Result<Rational> {
        self.inner_product(v, &WeightVector::from_root(root))
    }

    pub fn is_root(&self, v: &WeightVector) -> bool {
        self.as_root(v).is_some_and(|r| self.root_set.contains(&r))
    }

    pub fn is_positive_root(&self, v: &WeightVector) -> bool {
        self.as_root(v).is_some_and(|r| self.root_set.contains(&r) && r.iter().all(|&c| c >= 0))
    }

    pub fn is_root_coords(&self, r: &[i64]) -> bool {
        self.root_set.contains(r)
    }

    fn as_root(&self, v: &WeightVector) -> Option<Root> {
        if v.coords.len() != self.rank {
            return None;
        }
        self.convert(v, Basis::SimpleRoot).ok()?.as_integers()
    }

    /// Simple reflection `s_i` applied to a root in simple-root coordinates.
    pub fn reflect(&self, i: usize, root: &[i64]) -> Root {
        let pairing: i64 = root.iter().enumerate().map(|(k, &c)| c * self.cartan[k][i]).sum();
        let mut out = root.to_vec();
        out[i] -= pairing;
        out
    }

    /// Highest root of each simple factor.
    pub fn highest_roots(&self) -> Vec<Root> {
        self.factor_ranges
            .iter()
            .map(|range| {
                self.positive_roots
                    .iter()
                    .filter(|r| r.iter().enumerate().all(|(k, &c)| c == 0 || range.contains(&k)))
                    .max_by_key(|r| root_height(r))
                    .cloned()
                    .expect("every factor has roots")
            })
            .collect()
    }

    /// Exact LDL^T test: every pivot of the Gram matrix is positive.
    pub fn gram_is_positive_definite(&self) -> bool {
        let n = self.rank;
        let mut a = self.gram.clone();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &a[k][k];
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
        true
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }
}

/// Breadth-first closure under simple-root addition, using root strings:
/// for a positive root b != a_i, `b + a_i` is a root iff `p - <b, a_i^v> > 0`
/// where `p` is the largest `k` with `b - k a_i` a root.
fn enumerate_positive_roots(cartan: &[Vec<i64>], range: Range<usize>, rank: usize) -> Vec<Root> {
    let mut all: HashSet<Root> = HashSet::new();
    let mut level: Vec<Root> = range
        .clone()
        .map(|i| {
            let mut r = vec![0; rank];
            r[i] = 1;
            r
        })
        .collect();
    all.extend(level.iter().cloned());
    while !level.is_empty() {
        let mut next: Vec<Root> = Vec::new();
        for beta in &level {
            for i in range.clone() {
                let is_simple_i = beta.iter().enumerate().all(|(k, &c)| c == i64::from(k == i));
                if is_simple_i {
                    continue;
                }
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if probe[i] >= 0 && all.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = beta.iter().enumerate().map(|(k, &c)| c * cartan[k][i]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !all.contains(&up) {
                        all.insert(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }
    all.into_iter().collect()
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Human-readable root such as `a1+a2` or `2a1+a2`.
pub fn format_root(root: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in root.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push(if c > 0 { '+' } else { '-' });
        } else if c < 0 {
            s.push('-');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(&format!("a{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::parse(s).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A5", 15),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("C4", 16),
            ("D3", 6),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A1xA1", 2),
            ("A2xB2", 7),
        ] {
            assert_eq!(rs(t).positive_roots.len(), n, "{t}");
        }
    }

    #[test]
    fn a2_roots_and_weights() {
        let r = rs("A2");
        assert_eq!(r.positive_roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(r.cartan, vec![vec![2, -1], vec![-1, 2]]);
        let w1 = WeightVector::from_weight_ints(&[1, 0]);
        let w2 = WeightVector::from_weight_ints(&[0, 1]);
        let a1 = WeightVector::from_root(&[1, 0]);
        let a2 = WeightVector::from_root(&[0, 1]);
        assert_eq!(r.inner_product(&w1, &a1).unwrap(), int(1));
        assert_eq!(r.inner_product(&w1, &a2).unwrap(), int(0));
        assert_eq!(r.inner_product(&w1, &w2).unwrap(), frac(1, 3));
    }

    #[test]
    fn a1_normalization_and_conversion() {
        let r = rs("A1");
        let a = WeightVector::from_root(&[1]);
        assert_eq!(r.inner_product(&a, &a).unwrap(), int(2));
        let w = r.convert(&a, Basis::FundamentalWeight).unwrap();
        assert_eq!(w.coords, vec![int(2)]);
    }

    #[test]
    fn conversion_a2_beta() {
        let r = rs("A2");
        let beta = WeightVector::from_root(&[1, 1]);
        let w = r.convert(&beta, Basis::FundamentalWeight).unwrap();
        assert_eq!(w.coords, vec![int(1), int(1)]);
        let z = WeightVector::zero(2, Basis::SimpleRoot);
        assert!(r.convert(&z, Basis::FundamentalWeight).unwrap().is_zero());
    }

    #[test]
    fn membership() {
        let a2 = rs("A2");
        assert!(a2.is_root(&WeightVector::from_root(&[1, 1])));
        assert!(!a2.is_root(&WeightVector::from_root(&[2, 0])));
        assert!(a2.is_root(&WeightVector::from_root(&[-1, -1])));
        assert!(!a2.is_positive_root(&WeightVector::from_root(&[-1, -1])));
        assert!(!a2.is_root(&WeightVector::new(vec![frac(1, 2), int(0)], Basis::SimpleRoot)));
        let a3 = rs("A3");
        // s1 - s3 = a1 + a2
        assert!(a3.is_positive_root(&WeightVector::from_root(&[1, 1, 0])));
        // s1 - s4 = a1 + a2 + a3
        assert!(a3.is_positive_root(&WeightVector::from_root(&[1, 1, 1])));
    }

    #[test]
    fn fundamental_weight_duality() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "A1xG2"] {
            let r = rs(t);
            assert!(r.gram_is_positive_definite(), "{t}");
            for j in 0..r.rank {
                let w = WeightVector::new(r.fundamental_weights[j].clone(), Basis::SimpleRoot);
                for i in 0..r.rank {
                    let a = WeightVector::from_root(&r.simple_root(i));
                    let v = int(2) * r.inner_product(&w, &a).unwrap() / &r.gram[i][i];
                    assert_eq!(v, if i == j { int(1) } else { int(0) }, "{t} w{j} a{i}");
                }
            }
        }
    }

    #[test]
    fn highest_roots_have_length_two() {
        for t in ["A4", "B4", "C4", "D5", "G2", "F4", "E7", "B2xG2"] {
            let r = rs(t);
            for h in r.highest_roots() {
                let v = WeightVector::from_root(&h);
                assert_eq!(r.inner_product(&v, &v).unwrap(), int(2), "{t}");
            }
        }
    }

    #[test]
    fn reflections_permute_positive_roots() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            for i in 0..r.rank {
                let simple = r.simple_root(i);
                let mut images: Vec<Root> = r
                    .positive_roots
                    .iter()
                    .filter(|b| **b != simple)
                    .map(|b| r.reflect(i, b))
                    .collect();
                images.sort();
                let mut expected: Vec<Root> =
                    r.positive_roots.iter().filter(|b| **b != simple).cloned().collect();
                expected.sort();
                assert_eq!(images, expected, "{t} s{i}");
            }
        }
    }

    #[test]
    fn parse_errors() {
        for bad in ["H2", "E5", "F3", "G3", "D2", "B1", "A0", "", "A", "A1x", "2A"] {
            assert!(bad.parse::<LieTypeSpec>().is_err(), "{bad}");
        }
        assert_eq!("a1xA1".parse::<LieTypeSpec>().unwrap().rank(), 2);
        assert_eq!("b3".parse::<LieTypeSpec>().unwrap().to_string(), "B3");
    }

    #[test]
    fn dimension_mismatch() {
        let r = rs("A2");
        let v = WeightVector::from_root(&[1]);
        assert_eq!(
            r.inner_product(&v, &v),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn root_formatting() {
        assert_eq!(format_root(&[1, 1, 0]), "a1+a2");
        assert_eq!(format_root(&[0, 2, -1]), "2a2-a3");
    }
}
