//! Crisp subsets, the Γ-product of subsets and the crisp Γ-ideal kinds.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::magma::GammaMagma;

/// A subset of the carrier `0..order`, stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrispSubset {
    order: usize,
    words: Vec<u64>,
}

impl CrispSubset {
    pub fn empty(order: usize) -> Self {
        CrispSubset {
            order,
            words: vec![0; order.div_ceil(64)],
        }
    }

    pub fn full(order: usize) -> Self {
        let mut s = Self::empty(order);
        for x in 0..order {
            s.insert(x);
        }
        s
    }

    pub fn from_elements(order: usize, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(order);
        for x in elements {
            if x >= order {
                return Err(Error::ElementOutOfRange { element: x, order });
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Subset whose members are the set bits of `mask` (`order <= 64`).
    pub fn from_mask(order: usize, mask: u64) -> Self {
        assert!(order <= 64, "mask subsets need order <= 64");
        let mut s = Self::empty(order);
        if order > 0 {
            let keep = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Bit pattern of the subset (`order <= 64`).
    pub fn mask(&self) -> u64 {
        assert!(self.order <= 64, "mask subsets need order <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    /// Parses a JSON array of 0-indexed elements such as `[0, 1]`.
    pub fn from_json(order: usize, s: &str) -> Result<Self> {
        let elements: Vec<usize> = serde_json::from_str(s)?;
        Self::from_elements(order, elements)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.order && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        assert!(x < self.order, "element out of range");
        self.words[x / 64] |= 1 << (x % 64);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.order
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &CrispSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &CrispSubset) -> CrispSubset {
        CrispSubset {
            order: self.order,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }
}

impl fmt::Debug for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for CrispSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

fn check_len(m: &GammaMagma, a: &CrispSubset) -> Result<()> {
    if a.order != m.order() {
        return Err(Error::LengthMismatch {
            expected: m.order(),
            found: a.order,
        });
    }
    Ok(())
}

/// `AΓB`: every product `a γ b` with `a ∈ A`, `b ∈ B` and `γ ∈ Γ`.
pub fn set_product(m: &GammaMagma, a: &CrispSubset, b: &CrispSubset) -> Result<CrispSubset> {
    check_len(m, a)?;
    check_len(m, b)?;
    Ok(product_unchecked(m, a, b))
}

fn product_unchecked(m: &GammaMagma, a: &CrispSubset, b: &CrispSubset) -> CrispSubset {
    let mut out = CrispSubset::empty(m.order());
    for x in a.iter() {
        for y in b.iter() {
            for g in 0..m.gamma_count() {
                out.insert(m.op(x, g, y));
            }
        }
    }
    out
}

/// The crisp Γ-ideal kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealKind {
    /// `AΓA ⊆ A`
    Subgroupoid,
    /// `SΓA ⊆ A`
    Left,
    /// `AΓS ⊆ A`
    Right,
    /// left and right
    TwoSided,
    /// generalized bi-ideal that is also a subgroupoid
    Bi,
    /// `(AΓS)ΓA ⊆ A`
    GeneralizedBi,
    /// `(SΓA)ΓS ⊆ A`
    Interior,
    /// `SΓA ∩ AΓS ⊆ A`
    Quasi,
}

impl IdealKind {
    pub const ALL: [IdealKind; 8] = [
        IdealKind::Subgroupoid,
        IdealKind::Left,
        IdealKind::Right,
        IdealKind::TwoSided,
        IdealKind::Bi,
        IdealKind::GeneralizedBi,
        IdealKind::Interior,
        IdealKind::Quasi,
    ];

    pub fn key(self) -> &'static str {
        match self {
            IdealKind::Subgroupoid => "subgroupoid",
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two_sided",
            IdealKind::Bi => "bi",
            IdealKind::GeneralizedBi => "generalized_bi",
            IdealKind::Interior => "interior",
            IdealKind::Quasi => "quasi",
        }
    }

    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for IdealKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdealKind::ALL
            .into_iter()
            .find(|k| k.key() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown ideal kind `{s}`")))
    }
}

/// A set of [`IdealKind`]s.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct KindSet(u16);

impl KindSet {
    pub fn all() -> Self {
        IdealKind::ALL.into_iter().collect()
    }

    pub fn contains(self, kind: IdealKind) -> bool {
        self.0 & kind.bit() != 0
    }

    pub fn insert(&mut self, kind: IdealKind) {
        self.0 |= kind.bit();
    }

    pub fn iter(self) -> impl Iterator<Item = IdealKind> {
        IdealKind::ALL.into_iter().filter(move |k| self.contains(*k))
    }
}

impl FromIterator<IdealKind> for KindSet {
    fn from_iter<I: IntoIterator<Item = IdealKind>>(iter: I) -> Self {
        let mut s = KindSet::default();
        for k in iter {
            s.insert(k);
        }
        s
    }
}

impl fmt::Debug for KindSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for KindSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(IdealKind::key))
    }
}

/// Every kind whose defining inclusion holds for the non-empty subset `a`.
pub fn classify_subset(m: &GammaMagma, a: &CrispSubset) -> Result<KindSet> {
    check_len(m, a)?;
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let s = CrispSubset::full(m.order());
    let aa = product_unchecked(m, a, a);
    let sa = product_unchecked(m, &s, a);
    let as_ = product_unchecked(m, a, &s);
    let sub = aa.is_subset(a);
    let left = sa.is_subset(a);
    let right = as_.is_subset(a);
    let gen_bi = product_unchecked(m, &as_, a).is_subset(a);
    let interior = product_unchecked(m, &sa, &s).is_subset(a);
    let quasi = sa.intersection(&as_).is_subset(a);

    let mut kinds = KindSet::default();
    for (kind, holds) in [
        (IdealKind::Subgroupoid, sub),
        (IdealKind::Left, left),
        (IdealKind::Right, right),
        (IdealKind::TwoSided, left && right),
        (IdealKind::Bi, gen_bi && sub),
        (IdealKind::GeneralizedBi, gen_bi),
        (IdealKind::Interior, interior),
        (IdealKind::Quasi, quasi),
    ] {
        if holds {
            kinds.insert(kind);
        }
    }
    Ok(kinds)
}

/// `a = (x β (a ξ a)) γ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntraWitness {
    pub element: usize,
    pub x: usize,
    pub y: usize,
    pub beta: usize,
    pub xi: usize,
    pub gamma: usize,
}

impl IntraWitness {
    /// Evaluates `(x β (a ξ a)) γ y` and compares it with `a`.
    pub fn holds(&self, m: &GammaMagma) -> bool {
        let n = m.order();
        let k = m.gamma_count();
        if [self.element, self.x, self.y].iter().any(|&v| v >= n)
            || [self.beta, self.xi, self.gamma].iter().any(|&g| g >= k)
        {
            return false;
        }
        let a = self.element;
        m.op(m.op(self.x, self.beta, m.op(a, self.xi, a)), self.gamma, self.y) == a
    }
}

/// The lexicographically least `(x, y, β, ξ, γ)` exhibiting `a` as
/// intra-regular, or `None`.
pub fn intra_regular_witness(m: &GammaMagma, a: usize) -> Result<Option<IntraWitness>> {
    m.check_element(a)?;
    Ok(find_intra_witness(m, a))
}

fn find_intra_witness(m: &GammaMagma, a: usize) -> Option<IntraWitness> {
    let n = m.order();
    let k = m.gamma_count();
    let squares: Vec<usize> = (0..k).map(|xi| m.op(a, xi, a)).collect();
    for x in 0..n {
        for y in 0..n {
            for beta in 0..k {
                for (xi, &sq) in squares.iter().enumerate() {
                    let left = m.op(x, beta, sq);
                    for gamma in 0..k {
                        if m.op(left, gamma, y) == a {
                            return Some(IntraWitness {
                                element: a,
                                x,
                                y,
                                beta,
                                xi,
                                gamma,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_intra_regular(m: &GammaMagma) -> bool {
    (0..m.order()).all(|a| find_intra_witness(m, a).is_some())
}

/// Largest order accepted by [`enumerate_ideals`].
pub const MAX_ENUMERATION_ORDER: usize = 20;

/// All non-empty subsets of kind `kind`, in ascending bit-pattern order.
pub fn enumerate_ideals(m: &GammaMagma, kind: IdealKind) -> Result<Vec<CrispSubset>> {
    let n = m.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity {
            what: format!("enumerating subsets of an order-{n} structure"),
            required: 1u128 << n,
            limit: 1u128 << MAX_ENUMERATION_ORDER,
        });
    }
    let products = MaskProducts::new(m);
    let full = (1u64 << n) - 1;
    Ok((1..=full)
        .into_par_iter()
        .filter(|&a| products.is_kind(a, kind))
        .map(|a| CrispSubset::from_mask(n, a))
        .collect())
}

/// Subset products on bit masks, via per-row byte lookup tables.
struct MaskProducts {
    n: usize,
    k: usize,
    chunks: usize,
    /// `image[((g * n + x) * chunks + c) * 256 + byte]`: the products
    /// `x g y` for the `y` selected by `byte` in chunk `c`.
    image: Vec<u64>,
}

impl MaskProducts {
    fn new(m: &GammaMagma) -> Self {
        let n = m.order();
        let k = m.gamma_count();
        let chunks = n.div_ceil(8);
        let mut image = vec![0u64; k * n * chunks * 256];
        for g in 0..k {
            for x in 0..n {
                for c in 0..chunks {
                    let base = ((g * n + x) * chunks + c) * 256;
                    for byte in 1..256usize {
                        let low = byte.trailing_zeros() as usize;
                        let y = c * 8 + low;
                        let rest = image[base + (byte & (byte - 1))];
                        image[base + byte] = if y < n { rest | 1 << m.op(x, g, y) } else { rest };
                    }
                }
            }
        }
        MaskProducts { n, k, chunks, image }
    }

    fn product(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for g in 0..self.k {
                let base = (g * self.n + x) * self.chunks;
                for c in 0..self.chunks {
                    let byte = (b >> (8 * c)) as usize & 0xff;
                    out |= self.image[(base + c) * 256 + byte];
                }
            }
        }
        out
    }

    fn is_kind(&self, a: u64, kind: IdealKind) -> bool {
        let s = (1u64 << self.n) - 1;
        let within = |x: u64| x & !a == 0;
        match kind {
            IdealKind::Subgroupoid => within(self.product(a, a)),
            IdealKind::Left => within(self.product(s, a)),
            IdealKind::Right => within(self.product(a, s)),
            IdealKind::TwoSided => within(self.product(s, a)) && within(self.product(a, s)),
            IdealKind::GeneralizedBi => within(self.product(self.product(a, s), a)),
            IdealKind::Bi => within(self.product(a, a)) && within(self.product(self.product(a, s), a)),
            IdealKind::Interior => within(self.product(self.product(s, a), s)),
            IdealKind::Quasi => within(self.product(s, a) & self.product(a, s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(n: usize, xs: &[usize]) -> CrispSubset {
        CrispSubset::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn product_reads_table_cells() {
        let m = corpus::ir5();
        // a c = a, b c = b
        assert_eq!(
            set_product(&m, &set(5, &[0, 1]), &set(5, &[2])).unwrap(),
            set(5, &[0, 1])
        );
    }

    #[test]
    fn empty_product_is_empty() {
        let m = corpus::ir5();
        let p = set_product(&m, &CrispSubset::empty(5), &CrispSubset::full(5)).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn product_length_mismatch() {
        let m = corpus::ir5();
        let err = set_product(&m, &CrispSubset::full(4), &CrispSubset::full(5)).unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { .. }));
    }

    #[test]
    fn full_carrier_has_every_kind() {
        for m in [corpus::ir5(), corpus::ag9(), corpus::left_zero_pair()] {
            let kinds = classify_subset(&m, &CrispSubset::full(m.order())).unwrap();
            assert_eq!(kinds, KindSet::all());
        }
    }

    #[test]
    fn classify_rejects_empty() {
        let m = corpus::ir5();
        assert!(matches!(
            classify_subset(&m, &CrispSubset::empty(5)),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn singleton_c_is_not_left() {
        let m = corpus::ir5();
        let kinds = classify_subset(&m, &set(5, &[2])).unwrap();
        assert!(!kinds.contains(IdealKind::Subgroupoid));
        assert!(!kinds.contains(IdealKind::Left));
    }

    #[test]
    fn left_zero_pair_witness() {
        let m = corpus::left_zero_pair();
        let w = intra_regular_witness(&m, 1).unwrap().unwrap();
        assert_eq!((w.x, w.y), (1, 0));
        assert!(w.holds(&m));
    }

    #[test]
    fn non_factorizable_element_is_not_intra_regular() {
        let m = corpus::non_factorizable_pair();
        assert_eq!(intra_regular_witness(&m, 0).unwrap(), None);
        assert!(!is_intra_regular(&m));
        assert!(intra_regular_witness(&m, 2).is_err());
    }

    #[test]
    fn order_one_has_one_ideal_of_each_kind() {
        let m = corpus::trivial();
        for kind in IdealKind::ALL {
            assert_eq!(enumerate_ideals(&m, kind).unwrap(), vec![CrispSubset::full(1)]);
        }
    }

    #[test]
    fn mask_products_agree_with_set_product() {
        for m in [corpus::ir5(), corpus::ag9()] {
            let n = m.order();
            let p = MaskProducts::new(&m);
            for a in (1..1u64 << n).step_by(37) {
                for b in (1..1u64 << n).step_by(53) {
                    let expect = set_product(&m, &CrispSubset::from_mask(n, a), &CrispSubset::from_mask(n, b))
                        .unwrap()
                        .mask();
                    assert_eq!(p.product(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn mask_classification_agrees_with_classify_subset() {
        let m = corpus::ag9();
        let p = MaskProducts::new(&m);
        for a in (1..1u64 << 9).step_by(7) {
            let kinds = classify_subset(&m, &CrispSubset::from_mask(9, a)).unwrap();
            for kind in IdealKind::ALL {
                assert_eq!(p.is_kind(a, kind), kinds.contains(kind), "{a:b} {kind}");
            }
        }
    }

    #[test]
    fn too_large_for_enumeration() {
        let n = MAX_ENUMERATION_ORDER + 1;
        let table: Vec<Vec<usize>> = vec![vec![0; n]; n];
        let m = GammaMagma::new(vec!["1".into()], vec![table]).unwrap();
        assert!(matches!(
            enumerate_ideals(&m, IdealKind::Left),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn subset_json() {
        let s = CrispSubset::from_json(5, "[0, 1]").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,1]");
        assert!(CrispSubset::from_json(5, "[7]").is_err());
    }
}
