//! Structural identities of Γ-magmas.
//!
//! Every law except [`Law::HasLeftIdentity`] is an equation between two terms
//! over element variables and Γ-label variables. [`check_laws`] quantifies
//! each equation over all element tuples (lexicographic) and, for each element
//! tuple, over all label tuples, and keeps the first failing instance.

use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::magma::GammaMagma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Law {
    /// `(x α y) β z = (z α y) β x`
    LeftInvertive,
    /// `(w α x) β (y γ z) = (w α y) β (x γ z)`
    Medial,
    /// `x α (y β z) = y α (x β z)`
    AgStarStar,
    /// `(w α x) β (y γ z) = (z α y) β (x γ w)`
    Paramedial,
    /// `x α y = y α x`
    Commutative,
    /// `(x α y) β z = x α (y β z)`
    Associative,
    /// `a γ a = a`
    Band,
    /// some `e` with `e γ x = x` for every `γ` and `x`
    HasLeftIdentity,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::LeftInvertive,
        Law::Medial,
        Law::AgStarStar,
        Law::Paramedial,
        Law::Commutative,
        Law::Associative,
        Law::Band,
        Law::HasLeftIdentity,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Law::LeftInvertive => "left_invertive",
            Law::Medial => "medial",
            Law::AgStarStar => "ag_star_star",
            Law::Paramedial => "paramedial",
            Law::Commutative => "commutative",
            Law::Associative => "associative",
            Law::Band => "band",
            Law::HasLeftIdentity => "has_left_identity",
        }
    }

    /// The law as an equation, or `None` for the existential left identity.
    pub(crate) fn equation(self) -> Option<Equation> {
        use Term::{Op, Var};
        let (elements, labels, lhs, rhs) = match self {
            Law::LeftInvertive => (
                3,
                2,
                Op(1, bx(Op(0, bx(Var(0)), bx(Var(1)))), bx(Var(2))),
                Op(1, bx(Op(0, bx(Var(2)), bx(Var(1)))), bx(Var(0))),
            ),
            Law::Medial => (
                4,
                3,
                Op(1, bx(Op(0, bx(Var(0)), bx(Var(1)))), bx(Op(2, bx(Var(2)), bx(Var(3))))),
                Op(1, bx(Op(0, bx(Var(0)), bx(Var(2)))), bx(Op(2, bx(Var(1)), bx(Var(3))))),
            ),
            Law::AgStarStar => (
                3,
                2,
                Op(0, bx(Var(0)), bx(Op(1, bx(Var(1)), bx(Var(2))))),
                Op(0, bx(Var(1)), bx(Op(1, bx(Var(0)), bx(Var(2))))),
            ),
            Law::Paramedial => (
                4,
                3,
                Op(1, bx(Op(0, bx(Var(0)), bx(Var(1)))), bx(Op(2, bx(Var(2)), bx(Var(3))))),
                Op(1, bx(Op(0, bx(Var(3)), bx(Var(2)))), bx(Op(2, bx(Var(1)), bx(Var(0))))),
            ),
            Law::Commutative => (2, 1, Op(0, bx(Var(0)), bx(Var(1))), Op(0, bx(Var(1)), bx(Var(0)))),
            Law::Associative => (
                3,
                2,
                Op(1, bx(Op(0, bx(Var(0)), bx(Var(1)))), bx(Var(2))),
                Op(0, bx(Var(0)), bx(Op(1, bx(Var(1)), bx(Var(2))))),
            ),
            Law::Band => (1, 1, Op(0, bx(Var(0)), bx(Var(0))), Var(0)),
            Law::HasLeftIdentity => return None,
        };
        Some(Equation {
            elements,
            labels,
            lhs,
            rhs,
        })
    }

    /// Evaluates both sides of an equational law at one instance.
    pub fn sides(self, m: &GammaMagma, elements: &[usize], labels: &[usize]) -> Result<(usize, usize)> {
        let eq = self
            .equation()
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` is not an equation", self.key())))?;
        if elements.len() != eq.elements {
            return Err(Error::LengthMismatch {
                expected: eq.elements,
                found: elements.len(),
            });
        }
        if labels.len() != eq.labels {
            return Err(Error::LengthMismatch {
                expected: eq.labels,
                found: labels.len(),
            });
        }
        for &x in elements {
            m.check_element(x)?;
        }
        if let Some(&g) = labels.iter().find(|&&g| g >= m.gamma_count()) {
            return Err(Error::UnknownLabel(g.to_string()));
        }
        Ok((eq.lhs.eval(m, elements, labels), eq.rhs.eval(m, elements, labels)))
    }
}

impl Law {
    /// Writes an instance as `lhs ≠ rhs` (or `lhs = rhs`) using element
    /// names and Γ-label names, e.g. `(6 alpha 7) beta 8 ≠ 6 alpha (7 beta 8)`.
    pub fn render(self, m: &GammaMagma, elements: &[usize], labels: &[usize]) -> Result<String> {
        let (l, r) = self.sides(m, elements, labels)?;
        let eq = self.equation().expect("sides succeeded, so this is an equation");
        let rel = if l == r { "=" } else { "≠" };
        Ok(format!(
            "{} {rel} {}",
            eq.lhs.render(m, elements, labels, true),
            eq.rhs.render(m, elements, labels, true)
        ))
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.key() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown law `{s}`")))
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.key())
    }
}

fn bx(t: Term) -> Box<Term> {
    Box::new(t)
}

/// A term over element variables `Var(i)` and binary operations whose label
/// is the label variable `Op(j, ..)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Term {
    Var(usize),
    Op(usize, Box<Term>, Box<Term>),
}

impl Term {
    pub(crate) fn eval(&self, m: &GammaMagma, elements: &[usize], labels: &[usize]) -> usize {
        match self {
            Term::Var(i) => elements[*i],
            Term::Op(g, l, r) => m.op(l.eval(m, elements, labels), labels[*g], r.eval(m, elements, labels)),
        }
    }
}

impl Term {
    fn render(&self, m: &GammaMagma, elements: &[usize], labels: &[usize], top: bool) -> String {
        match self {
            Term::Var(i) => m.element_name(elements[*i]),
            Term::Op(g, l, r) => {
                let inner = format!(
                    "{} {} {}",
                    l.render(m, elements, labels, false),
                    m.labels()[labels[*g]],
                    r.render(m, elements, labels, false)
                );
                if top {
                    inner
                } else {
                    format!("({inner})")
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Equation {
    pub elements: usize,
    pub labels: usize,
    pub lhs: Term,
    pub rhs: Term,
}

/// Odometer over `0..base` tuples of fixed length, last position fastest.
pub(crate) fn tuples(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.checked_pow(len as u32).expect("tuple space overflow");
    let mut cur = vec![0usize; len];
    (0..total).map(move |i| {
        if i > 0 {
            for slot in cur.iter_mut().rev() {
                *slot += 1;
                if *slot < base {
                    break;
                }
                *slot = 0;
            }
        }
        cur.clone()
    })
}

/// Why a law fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawWitness {
    /// An instance of the equation whose two sides differ.
    Instance {
        elements: Vec<usize>,
        labels: Vec<usize>,
        lhs: usize,
        rhs: usize,
    },
    /// For each candidate `e` (by index), an `(x, γ)` with `e γ x ≠ x`.
    NoLeftIdentity { refutations: Vec<(usize, usize)> },
}

impl LawWitness {
    /// Re-evaluates the witness against `m` and confirms it refutes `law`.
    pub fn confirms(&self, m: &GammaMagma, law: Law) -> bool {
        match (self, law) {
            (LawWitness::NoLeftIdentity { refutations }, Law::HasLeftIdentity) => {
                refutations.len() == m.order()
                    && refutations
                        .iter()
                        .enumerate()
                        .all(|(e, &(x, g))| x < m.order() && g < m.gamma_count() && m.op(e, g, x) != x)
            }
            (
                LawWitness::Instance {
                    elements,
                    labels,
                    lhs,
                    rhs,
                },
                law,
            ) => matches!(law.sides(m, elements, labels), Ok((l, r)) if l == *lhs && r == *rhs && l != r),
            _ => false,
        }
    }
}

/// Outcome of [`check_laws`]: a verdict per law and a witness per failed law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    results: Vec<(Law, Option<LawWitness>)>,
}

impl LawReport {
    pub fn holds(&self, law: Law) -> bool {
        self.witness(law).is_none()
    }

    pub fn witness(&self, law: Law) -> Option<&LawWitness> {
        self.results
            .iter()
            .find(|(l, _)| *l == law)
            .and_then(|(_, w)| w.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = (Law, Option<&LawWitness>)> {
        self.results.iter().map(|(l, w)| (*l, w.as_ref()))
    }

    pub fn is_gamma_ag(&self) -> bool {
        self.holds(Law::LeftInvertive)
    }
}

impl Serialize for LawReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Witnesses<'a>(&'a [(Law, Option<LawWitness>)]);
        impl Serialize for Witnesses<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(None)?;
                for (law, w) in self.0 {
                    if let Some(w) = w {
                        map.serialize_entry(law.key(), w)?;
                    }
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(None)?;
        for (law, w) in &self.results {
            map.serialize_entry(law.key(), &w.is_none())?;
        }
        map.serialize_entry("witnesses", &Witnesses(&self.results))?;
        map.end()
    }
}

/// Decides every law in [`Law::ALL`] by exhaustive quantification.
pub fn check_laws(m: &GammaMagma) -> LawReport {
    let results = Law::ALL.into_iter().map(|law| (law, first_failure(m, law))).collect();
    LawReport { results }
}

/// Decides a single law; `None` when it holds.
pub fn first_failure(m: &GammaMagma, law: Law) -> Option<LawWitness> {
    let Some(eq) = law.equation() else {
        return left_identity_failure(m);
    };
    let n = m.order();
    let k = m.gamma_count();
    for elements in tuples(eq.elements, n) {
        for labels in tuples(eq.labels, k) {
            let lhs = eq.lhs.eval(m, &elements, &labels);
            let rhs = eq.rhs.eval(m, &elements, &labels);
            if lhs != rhs {
                return Some(LawWitness::Instance {
                    elements,
                    labels,
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

/// The smallest Γ-left identity, if any.
pub fn left_identity(m: &GammaMagma) -> Option<usize> {
    (0..m.order()).find(|&e| refute_left_identity(m, e).is_none())
}

fn refute_left_identity(m: &GammaMagma, e: usize) -> Option<(usize, usize)> {
    (0..m.order())
        .flat_map(|x| (0..m.gamma_count()).map(move |g| (x, g)))
        .find(|&(x, g)| m.op(e, g, x) != x)
}

fn left_identity_failure(m: &GammaMagma) -> Option<LawWitness> {
    let refutations: Option<Vec<_>> = (0..m.order()).map(|e| refute_left_identity(m, e)).collect();
    refutations.map(|refutations| LawWitness::NoLeftIdentity { refutations })
}
