//! Fuzzy subsets with exact rational membership and the sup-min Γ-product.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::crisp::{CrispSubset, IdealKind};
use crate::error::{Error, Result};
use crate::laws::tuples;
use crate::magma::GammaMagma;

/// A membership degree in `[0, 1]`, always in lowest terms.
pub type Grade = Ratio<u64>;

/// A fuzzy subset `f: S → [0, 1]` of a carrier `0..order`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuzzySubset {
    values: Vec<Grade>,
}

impl FuzzySubset {
    pub fn new(values: Vec<Grade>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| **v > Grade::one()) {
            return Err(Error::InvalidFuzzy(format!("membership {v} exceeds 1")));
        }
        Ok(FuzzySubset { values })
    }

    /// Values `numerators[i] / den`.
    pub fn from_fractions(den: u64, numerators: &[u64]) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidFuzzy("denominator must be positive".into()));
        }
        if let Some(n) = numerators.iter().find(|&&n| n > den) {
            return Err(Error::InvalidFuzzy(format!("numerator {n} exceeds denominator {den}")));
        }
        Ok(FuzzySubset {
            values: numerators.iter().map(|&n| Grade::new(n, den)).collect(),
        })
    }

    pub fn constant(order: usize, value: Grade) -> Result<Self> {
        Self::new(vec![value; order])
    }

    pub fn zeros(order: usize) -> Self {
        FuzzySubset {
            values: vec![Grade::zero(); order],
        }
    }

    /// The whole carrier as a fuzzy subset: membership 1 everywhere.
    pub fn ones(order: usize) -> Self {
        FuzzySubset {
            values: vec![Grade::one(); order],
        }
    }

    /// Value `value` at `x`, 0 elsewhere.
    pub fn point(order: usize, x: usize, value: Grade) -> Result<Self> {
        let mut f = Self::zeros(order);
        if x >= order {
            return Err(Error::ElementOutOfRange { element: x, order });
        }
        f.values[x] = value;
        Self::new(f.values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Grade] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Grade {
        self.values[x]
    }

    /// Smallest common denominator and the matching numerators.
    pub fn to_fractions(&self) -> (u64, Vec<u64>) {
        let den = self.values.iter().fold(1u64, |acc, v| lcm(acc, *v.denom()));
        let nums = self.values.iter().map(|v| v.numer() * (den / v.denom())).collect();
        (den, nums)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: FuzzyFile = serde_json::from_str(s)?;
        Self::from_fractions(file.den, &file.num)
    }

    pub fn to_json(&self) -> String {
        let (den, num) = self.to_fractions();
        serde_json::to_string(&FuzzyFile { den, num }).expect("fuzzy serialization is infallible")
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

/// On-disk fuzzy subset: values `num[i] / den`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzyFile {
    pub den: u64,
    pub num: Vec<u64>,
}

impl fmt::Debug for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for FuzzySubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (den, num) = self.to_fractions();
        FuzzyFile { den, num }.serialize(s)
    }
}

fn check_len(expected: usize, f: &FuzzySubset) -> Result<()> {
    if f.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: f.len(),
        });
    }
    Ok(())
}

/// Pointwise minimum, `f ∩ g`.
pub fn meet(f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    check_len(f.len(), g)?;
    Ok(meet_unchecked(f, g))
}

/// Pointwise maximum, `f ∪ g`.
pub fn join(f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    check_len(f.len(), g)?;
    Ok(join_unchecked(f, g))
}

/// Pointwise order, `f ⊆ g`.
pub fn leq(f: &FuzzySubset, g: &FuzzySubset) -> Result<bool> {
    check_len(f.len(), g)?;
    Ok(leq_unchecked(f, g))
}

pub(crate) fn meet_unchecked(f: &FuzzySubset, g: &FuzzySubset) -> FuzzySubset {
    FuzzySubset {
        values: f.values.iter().zip(&g.values).map(|(a, b)| *a.min(b)).collect(),
    }
}

pub(crate) fn join_unchecked(f: &FuzzySubset, g: &FuzzySubset) -> FuzzySubset {
    FuzzySubset {
        values: f.values.iter().zip(&g.values).map(|(a, b)| *a.max(b)).collect(),
    }
}

pub(crate) fn leq_unchecked(f: &FuzzySubset, g: &FuzzySubset) -> bool {
    f.values.iter().zip(&g.values).all(|(a, b)| a <= b)
}

/// The Γ-product `f ∘ g`: at `a`, the largest `min(f(b), g(c))` over all
/// factorizations `a = b α c`, and 0 when `a` has none.
pub fn gamma_product(m: &GammaMagma, f: &FuzzySubset, g: &FuzzySubset) -> Result<FuzzySubset> {
    check_len(m.order(), f)?;
    check_len(m.order(), g)?;
    Ok(product_unchecked(m, f, g))
}

pub(crate) fn product_unchecked(m: &GammaMagma, f: &FuzzySubset, g: &FuzzySubset) -> FuzzySubset {
    let n = m.order();
    let mut out = vec![Grade::zero(); n];
    for (x, fx) in f.values.iter().enumerate() {
        if fx.is_zero() {
            continue;
        }
        for (y, gy) in g.values.iter().enumerate() {
            let v = fx.min(gy);
            for gi in 0..m.gamma_count() {
                let r = m.op(x, gi, y);
                if *v > out[r] {
                    out[r] = *v;
                }
            }
        }
    }
    FuzzySubset { values: out }
}

/// The fuzzy Γ-ideal kinds, plus Γ-idempotency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FuzzyKind {
    /// `f(x α y) ≥ f(x) ∧ f(y)`
    Subgroupoid,
    /// `f(x α y) ≥ f(y)`
    Left,
    /// `f(x α y) ≥ f(x)`
    Right,
    /// left and right
    TwoSided,
    /// generalized bi-ideal and subgroupoid
    Bi,
    /// `f((x α y) β z) ≥ f(x) ∧ f(z)`
    GeneralizedBi,
    /// `f((x α y) β z) ≥ f(y)`
    Interior,
    /// `(f ∘ S) ∩ (S ∘ f) ⊆ f`
    Quasi,
    /// `f ∘ f = f`
    Idempotent,
}

impl FuzzyKind {
    pub const ALL: [FuzzyKind; 9] = [
        FuzzyKind::Subgroupoid,
        FuzzyKind::Left,
        FuzzyKind::Right,
        FuzzyKind::TwoSided,
        FuzzyKind::Bi,
        FuzzyKind::GeneralizedBi,
        FuzzyKind::Interior,
        FuzzyKind::Quasi,
        FuzzyKind::Idempotent,
    ];

    pub fn key(self) -> &'static str {
        match self {
            FuzzyKind::Idempotent => "idempotent",
            other => other.crisp().expect("non-idempotent kinds have a crisp twin").key(),
        }
    }

    /// The crisp kind with the same defining inclusion, if any.
    pub fn crisp(self) -> Option<IdealKind> {
        Some(match self {
            FuzzyKind::Subgroupoid => IdealKind::Subgroupoid,
            FuzzyKind::Left => IdealKind::Left,
            FuzzyKind::Right => IdealKind::Right,
            FuzzyKind::TwoSided => IdealKind::TwoSided,
            FuzzyKind::Bi => IdealKind::Bi,
            FuzzyKind::GeneralizedBi => IdealKind::GeneralizedBi,
            FuzzyKind::Interior => IdealKind::Interior,
            FuzzyKind::Quasi => IdealKind::Quasi,
            FuzzyKind::Idempotent => return None,
        })
    }

    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl From<IdealKind> for FuzzyKind {
    fn from(k: IdealKind) -> Self {
        match k {
            IdealKind::Subgroupoid => FuzzyKind::Subgroupoid,
            IdealKind::Left => FuzzyKind::Left,
            IdealKind::Right => FuzzyKind::Right,
            IdealKind::TwoSided => FuzzyKind::TwoSided,
            IdealKind::Bi => FuzzyKind::Bi,
            IdealKind::GeneralizedBi => FuzzyKind::GeneralizedBi,
            IdealKind::Interior => FuzzyKind::Interior,
            IdealKind::Quasi => FuzzyKind::Quasi,
        }
    }
}

impl fmt::Display for FuzzyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for FuzzyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FuzzyKind::ALL
            .into_iter()
            .find(|k| k.key() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown fuzzy kind `{s}`")))
    }
}

/// A set of [`FuzzyKind`]s.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FuzzyKindSet(u16);

impl FuzzyKindSet {
    pub fn all() -> Self {
        FuzzyKind::ALL.into_iter().collect()
    }

    pub fn contains(self, kind: FuzzyKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn insert(&mut self, kind: FuzzyKind) {
        self.0 |= kind.bit();
    }

    pub fn iter(self) -> impl Iterator<Item = FuzzyKind> {
        FuzzyKind::ALL.into_iter().filter(move |k| self.contains(*k))
    }
}

impl FromIterator<FuzzyKind> for FuzzyKindSet {
    fn from_iter<I: IntoIterator<Item = FuzzyKind>>(iter: I) -> Self {
        let mut s = FuzzyKindSet::default();
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Debug for FuzzyKindSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for FuzzyKindSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(FuzzyKind::key))
    }
}

/// Every fuzzy kind `f` belongs to, each decided by exhaustive quantification
/// over elements and Γ-labels (quasi and idempotent through Γ-products).
pub fn classify_fuzzy(m: &GammaMagma, f: &FuzzySubset) -> Result<FuzzyKindSet> {
    check_len(m.order(), f)?;
    Ok(classify_unchecked(m, f))
}

pub(crate) fn classify_unchecked(m: &GammaMagma, f: &FuzzySubset) -> FuzzyKindSet {
    let n = m.order();
    let k = m.gamma_count();
    let v = &f.values;
    let (mut sub, mut left, mut right) = (true, true, true);
    for x in 0..n {
        for y in 0..n {
            for g in 0..k {
                let p = v[m.op(x, g, y)];
                left &= p >= v[y];
                right &= p >= v[x];
                sub &= p >= v[x].min(v[y]);
            }
        }
    }
    let (mut gen_bi, mut interior) = (true, true);
    'outer: for x in 0..n {
        for y in 0..n {
            for a in 0..k {
                let xy = m.op(x, a, y);
                for z in 0..n {
                    for b in 0..k {
                        let p = v[m.op(xy, b, z)];
                        gen_bi &= p >= v[x].min(v[z]);
                        interior &= p >= v[y];
                        if !gen_bi && !interior {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    let ones = FuzzySubset::ones(n);
    let fs = product_unchecked(m, f, &ones);
    let sf = product_unchecked(m, &ones, f);
    let quasi = leq_unchecked(&meet_unchecked(&fs, &sf), f);
    let idempotent = product_unchecked(m, f, f) == *f;

    let mut kinds = FuzzyKindSet::default();
    for (kind, holds) in [
        (FuzzyKind::Subgroupoid, sub),
        (FuzzyKind::Left, left),
        (FuzzyKind::Right, right),
        (FuzzyKind::TwoSided, left && right),
        (FuzzyKind::Bi, gen_bi && sub),
        (FuzzyKind::GeneralizedBi, gen_bi),
        (FuzzyKind::Interior, interior),
        (FuzzyKind::Quasi, quasi),
        (FuzzyKind::Idempotent, idempotent),
    ] {
        if holds {
            kinds.insert(kind);
        }
    }
    kinds
}

/// The least fuzzy subset of kind `kind` that contains `f`.
///
/// Each ideal kind is the set of prefixpoints `step(f) ⊆ f` of a monotone
/// operator built from Γ-products (e.g. `S ∘ f` for left ideals), so iterating
/// `f ← f ∪ step(f)` climbs to the least one. Idempotency is not of this form
/// and yields `None`.
pub fn closure(m: &GammaMagma, f: &FuzzySubset, kind: FuzzyKind) -> Result<Option<FuzzySubset>> {
    check_len(m.order(), f)?;
    if kind == FuzzyKind::Idempotent {
        return Ok(None);
    }
    let ones = FuzzySubset::ones(m.order());
    let p = |a: &FuzzySubset, b: &FuzzySubset| product_unchecked(m, a, b);
    let step = |f: &FuzzySubset| -> FuzzySubset {
        match kind {
            FuzzyKind::Subgroupoid => p(f, f),
            FuzzyKind::Left => p(&ones, f),
            FuzzyKind::Right => p(f, &ones),
            FuzzyKind::TwoSided => join_unchecked(&p(&ones, f), &p(f, &ones)),
            FuzzyKind::GeneralizedBi => p(&p(f, &ones), f),
            FuzzyKind::Bi => join_unchecked(&p(f, f), &p(&p(f, &ones), f)),
            FuzzyKind::Interior => p(&p(&ones, f), &ones),
            FuzzyKind::Quasi => meet_unchecked(&p(f, &ones), &p(&ones, f)),
            FuzzyKind::Idempotent => unreachable!(),
        }
    };
    let mut cur = f.clone();
    loop {
        let next = join_unchecked(&cur, &step(&cur));
        if next == cur {
            return Ok(Some(cur));
        }
        cur = next;
    }
}

/// `χA`: 1 on `A`, 0 elsewhere.
pub fn characteristic(a: &CrispSubset) -> FuzzySubset {
    FuzzySubset {
        values: (0..a.order())
            .map(|x| if a.contains(x) { Grade::one() } else { Grade::zero() })
            .collect(),
    }
}

/// `{x : f(x) ≥ t}` for a positive threshold `t`.
pub fn level_cut(f: &FuzzySubset, t: Grade) -> Result<CrispSubset> {
    if t.is_zero() {
        return Err(Error::NonPositiveCut);
    }
    CrispSubset::from_elements(f.len(), (0..f.len()).filter(|&x| f.values[x] >= t))
}

/// The value grid `{0, 1/d, ..., 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    den: u64,
}

impl Lattice {
    pub fn new(den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("lattice denominator must be positive".into()));
        }
        Ok(Lattice { den })
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn values(self) -> Vec<Grade> {
        (0..=self.den).map(|i| Grade::new(i, self.den)).collect()
    }

    pub fn contains(self, v: Grade) -> bool {
        self.den.is_multiple_of(*v.denom()) && v <= Grade::one()
    }

    /// Number of lattice-valued subsets of an `order`-element carrier.
    pub fn subset_count(self, order: usize) -> u128 {
        (self.den as u128 + 1).checked_pow(order as u32).unwrap_or(u128::MAX)
    }

    /// All lattice-valued subsets, element 0 most significant, ascending.
    pub fn subsets(self, order: usize) -> impl Iterator<Item = FuzzySubset> {
        let values = self.values();
        tuples(order, values.len()).map(move |idx| FuzzySubset {
            values: idx.into_iter().map(|i| values[i]).collect(),
        })
    }

    pub fn random_subset<R: Rng + ?Sized>(self, order: usize, rng: &mut R) -> FuzzySubset {
        FuzzySubset {
            values: (0..order)
                .map(|_| Grade::new(rng.random_range(0..=self.den), self.den))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn g(n: u64, d: u64) -> Grade {
        Grade::new(n, d)
    }

    #[test]
    fn half_and_seven_tenths_product() {
        let m = corpus::ir5();
        let f = FuzzySubset::point(5, 2, g(1, 2)).unwrap();
        let h = FuzzySubset::point(5, 3, g(7, 10)).unwrap();
        let p = gamma_product(&m, &f, &h).unwrap();
        assert_eq!(p, FuzzySubset::point(5, 4, g(1, 2)).unwrap());
        assert_eq!(level_cut(&p, g(3, 5)).unwrap(), CrispSubset::empty(5));
        assert_eq!(
            level_cut(&p, g(1, 2)).unwrap(),
            CrispSubset::from_elements(5, [4]).unwrap()
        );
    }

    #[test]
    fn product_with_zero_is_zero() {
        let m = corpus::ag9();
        let f = Lattice::new(3).unwrap().random_subset(9, &mut rand::rng());
        assert_eq!(
            gamma_product(&m, &f, &FuzzySubset::zeros(9)).unwrap(),
            FuzzySubset::zeros(9)
        );
    }

    #[test]
    fn whole_carrier_is_idempotent_on_ir5() {
        let m = corpus::ir5();
        let one = FuzzySubset::ones(5);
        assert_eq!(gamma_product(&m, &one, &one).unwrap(), one);
    }

    #[test]
    fn non_factorizable_gets_zero() {
        let m = corpus::non_factorizable_pair();
        let one = FuzzySubset::ones(2);
        assert_eq!(gamma_product(&m, &one, &one).unwrap().get(0), g(0, 1));
    }

    #[test]
    fn lattice_ops() {
        let a = CrispSubset::from_elements(4, [0, 1]).unwrap();
        let b = CrispSubset::from_elements(4, [1, 2]).unwrap();
        let (fa, fb) = (characteristic(&a), characteristic(&b));
        assert_eq!(meet(&fa, &fb).unwrap(), characteristic(&a.intersection(&b)));
        assert_eq!(join(&fa, &FuzzySubset::zeros(4)).unwrap(), fa);
        assert!(leq(&meet(&fa, &fb).unwrap(), &fa).unwrap());
        assert!(meet(&fa, &FuzzySubset::zeros(3)).is_err());
        assert!(leq(&fa, &FuzzySubset::zeros(5)).is_err());
    }

    #[test]
    fn constant_one_has_every_kind() {
        for m in [corpus::ir5(), corpus::ag9()] {
            let kinds = classify_fuzzy(&m, &FuzzySubset::ones(m.order())).unwrap();
            for k in FuzzyKind::ALL {
                if k != FuzzyKind::Idempotent || m.every_element_factorizable() {
                    assert!(kinds.contains(k), "{k}");
                }
            }
        }
    }

    #[test]
    fn point_c_is_not_left() {
        let m = corpus::ir5();
        let f = FuzzySubset::point(5, 2, g(1, 1)).unwrap();
        assert!(!classify_fuzzy(&m, &f).unwrap().contains(FuzzyKind::Left));
    }

    #[test]
    fn cut_validation_and_round_trip() {
        let a = CrispSubset::from_elements(5, [0, 1]).unwrap();
        let chi = characteristic(&a);
        assert_eq!(level_cut(&chi, g(1, 1)).unwrap(), a);
        assert_eq!(characteristic(&level_cut(&chi, g(1, 1)).unwrap()), chi);
        assert!(matches!(level_cut(&chi, g(0, 1)), Err(Error::NonPositiveCut)));
    }

    #[test]
    fn fuzzy_json() {
        let f = FuzzySubset::from_json(r#"{"den": 4, "num": [0, 2, 4]}"#).unwrap();
        assert_eq!(f.values(), [g(0, 1), g(1, 2), g(1, 1)]);
        assert_eq!(f.to_json(), r#"{"den":2,"num":[0,1,2]}"#);
        assert!(FuzzySubset::from_json(r#"{"den": 4, "num": [5]}"#).is_err());
        assert!(FuzzySubset::from_json(r#"{"den": 0, "num": [0]}"#).is_err());
        assert!(FuzzySubset::new(vec![g(3, 2)]).is_err());
    }

    #[test]
    fn lattice_enumeration() {
        let l = Lattice::new(2).unwrap();
        let all: Vec<_> = l.subsets(2).collect();
        assert_eq!(all.len() as u128, l.subset_count(2));
        assert_eq!(all[1].values(), [g(0, 1), g(1, 2)]);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(Lattice::new(0).is_err());
        assert!(l.contains(g(1, 2)) && !l.contains(g(1, 3)));
    }

    #[test]
    fn closures_land_in_their_kind_and_stay_minimal() {
        let m = corpus::ag9();
        let l = Lattice::new(2).unwrap();
        let mut rng = rand::rng();
        for _ in 0..50 {
            let f = l.random_subset(9, &mut rng);
            for kind in FuzzyKind::ALL {
                let Some(c) = closure(&m, &f, kind).unwrap() else {
                    assert_eq!(kind, FuzzyKind::Idempotent);
                    continue;
                };
                assert!(leq_unchecked(&f, &c));
                assert!(classify_unchecked(&m, &c).contains(kind), "{kind}");
                if classify_unchecked(&m, &f).contains(kind) {
                    assert_eq!(c, f);
                }
            }
        }
    }
}
