//! The catalogue of verifiable statements about fuzzy Γ-ideals.

use std::collections::BTreeMap;

use super::verdict::{Counterexample, Evaluation, Hypothesis};
use crate::fuzzy::{
    classify_unchecked, leq_unchecked, meet_unchecked, product_unchecked, FuzzyKind, FuzzyKindSet, FuzzySubset,
};
use crate::magma::GammaMagma;

/// Premise on a quantified fuzzy subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Family {
    Any,
    Subgroupoid,
    Left,
    Right,
    /// left or right
    OneSided,
    Quasi,
    /// quasi and `f ∘ f = f`
    IdempotentQuasi,
}

impl Family {
    pub(crate) fn admits(self, kinds: FuzzyKindSet) -> bool {
        match self {
            Family::Any => true,
            Family::Subgroupoid => kinds.contains(FuzzyKind::Subgroupoid),
            Family::Left => kinds.contains(FuzzyKind::Left),
            Family::Right => kinds.contains(FuzzyKind::Right),
            Family::OneSided => kinds.contains(FuzzyKind::Left) || kinds.contains(FuzzyKind::Right),
            Family::Quasi => kinds.contains(FuzzyKind::Quasi),
            Family::IdempotentQuasi => kinds.contains(FuzzyKind::Quasi) && kinds.contains(FuzzyKind::Idempotent),
        }
    }

    /// The closure kind used to push a random subset into this family.
    /// `OneSided` picks left or right by `coin`.
    pub(crate) fn projection(self, coin: bool) -> Option<FuzzyKind> {
        match self {
            Family::Any => None,
            Family::Subgroupoid => Some(FuzzyKind::Subgroupoid),
            Family::Left => Some(FuzzyKind::Left),
            Family::Right => Some(FuzzyKind::Right),
            Family::OneSided => Some(if coin { FuzzyKind::Left } else { FuzzyKind::Right }),
            Family::Quasi | Family::IdempotentQuasi => Some(FuzzyKind::Quasi),
        }
    }
}

/// Shared evaluation context: the structure and its whole-carrier subset `S`.
pub(crate) struct Ctx<'a> {
    pub(crate) m: &'a GammaMagma,
    pub(crate) s: FuzzySubset,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(m: &'a GammaMagma) -> Self {
        Ctx {
            m,
            s: FuzzySubset::ones(m.order()),
        }
    }

    pub(crate) fn p(&self, f: &FuzzySubset, g: &FuzzySubset) -> FuzzySubset {
        product_unchecked(self.m, f, g)
    }

    pub(crate) fn kinds(&self, f: &FuzzySubset) -> FuzzyKindSet {
        classify_unchecked(self.m, f)
    }

    fn is(&self, f: &FuzzySubset, kind: FuzzyKind) -> bool {
        self.kinds(f).contains(kind)
    }
}

pub(crate) type TupleCheck = fn(&Ctx, &[FuzzySubset]) -> Option<Counterexample>;
pub(crate) type FamilyCheck = fn(&Ctx, &[FuzzySubset]) -> Option<Counterexample>;

pub(crate) enum Body {
    /// Universally quantified over tuples drawn from the slot families.
    Tuple {
        slots: &'static [Family],
        check: TupleCheck,
    },
    /// A claim about the whole family of fuzzy two-sided ideals.
    TwoSidedFamily { check: FamilyCheck },
}

pub(crate) struct Statement {
    pub(crate) id: &'static str,
    pub(crate) hypotheses: &'static [Hypothesis],
    pub(crate) summary: &'static str,
    pub(crate) body: Body,
}

use Family::*;
use Hypothesis::*;

const AG: &[Hypothesis] = &[GammaAg];
const AG_SS: &[Hypothesis] = &[GammaAg, AgStarStar];
const AG_IR: &[Hypothesis] = &[GammaAg, IntraRegular];
const AG_SS_IR: &[Hypothesis] = &[GammaAg, AgStarStar, IntraRegular];

pub(crate) static STATEMENTS: &[Statement] = &[
    Statement {
        id: "sf",
        hypotheses: AG,
        summary: "f fuzzy left ideal ⇒ S∘f = f",
        body: Body::Tuple {
            slots: &[Left],
            check: left_absorbs,
        },
    },
    Statement {
        id: "sf_factorizable",
        hypotheses: &[GammaAg, EveryElementFactorizable],
        summary: "every element factorizable, f fuzzy left ideal ⇒ S∘f = f",
        body: Body::Tuple {
            slots: &[Left],
            check: left_absorbs,
        },
    },
    Statement {
        id: "sf_left_identity",
        hypotheses: &[GammaAg, HasLeftIdentity],
        summary: "left identity, f fuzzy left ideal ⇒ S∘f = f",
        body: Body::Tuple {
            slots: &[Left],
            check: left_absorbs,
        },
    },
    Statement {
        id: "trm_i",
        hypotheses: AG,
        summary: "(f∘g)∘h = (h∘g)∘f",
        body: Body::Tuple {
            slots: &[Any, Any, Any],
            check: left_invertive,
        },
    },
    Statement {
        id: "trm_ii",
        hypotheses: AG,
        summary: "(f∘g)∘(h∘j) = (f∘h)∘(g∘j)",
        body: Body::Tuple {
            slots: &[Any, Any, Any, Any],
            check: medial,
        },
    },
    Statement {
        id: "agss_i",
        hypotheses: AG_SS,
        summary: "f∘(g∘h) = g∘(f∘h)",
        body: Body::Tuple {
            slots: &[Any, Any, Any],
            check: ag_star_star,
        },
    },
    Statement {
        id: "agss_ii",
        hypotheses: AG_SS,
        summary: "(f∘g)∘(h∘j) = (j∘h)∘(g∘f)",
        body: Body::Tuple {
            slots: &[Any, Any, Any, Any],
            check: paramedial,
        },
    },
    Statement {
        id: "fghj",
        hypotheses: AG,
        summary: "subgroupoid ⇔ f∘f ⊆ f; left ⇔ S∘f ⊆ f; right ⇔ f∘S ⊆ f; two-sided ⇔ both",
        body: Body::Tuple {
            slots: &[Any],
            check: product_characterizations,
        },
    },
    Statement {
        id: "bi_lemma",
        hypotheses: AG,
        summary: "for a fuzzy subgroupoid f: bi ⇔ (f∘S)∘f ⊆ f",
        body: Body::Tuple {
            slots: &[Subgroupoid],
            check: bi_characterization,
        },
    },
    Statement {
        id: "rl_cap_quasi",
        hypotheses: AG,
        summary: "f right, g left ⇒ f∩g quasi",
        body: Body::Tuple {
            slots: &[Right, Left],
            check: cap_is_quasi,
        },
    },
    Statement {
        id: "qqq",
        hypotheses: AG,
        summary: "f quasi ⇒ f subgroupoid",
        body: Body::Tuple {
            slots: &[Quasi],
            check: quasi_is_subgroupoid,
        },
    },
    Statement {
        id: "idem_quasi_bi",
        hypotheses: AG,
        summary: "f idempotent quasi ⇒ f bi",
        body: Body::Tuple {
            slots: &[IdempotentQuasi],
            check: quasi_is_bi,
        },
    },
    Statement {
        id: "onesided_quasi",
        hypotheses: AG,
        summary: "f left or right ⇒ f quasi",
        body: Body::Tuple {
            slots: &[OneSided],
            check: one_sided_is_quasi,
        },
    },
    Statement {
        id: "onesided_genbi",
        hypotheses: AG,
        summary: "f left or right ⇒ f generalized bi",
        body: Body::Tuple {
            slots: &[OneSided],
            check: one_sided_is_gen_bi,
        },
    },
    Statement {
        id: "idemquasi_prod_bi",
        hypotheses: AG_SS,
        summary: "f idempotent quasi, g any ⇒ f∘g and g∘f bi",
        body: Body::Tuple {
            slots: &[IdempotentQuasi, Any],
            check: products_are_bi,
        },
    },
    Statement {
        id: "prod_onesided",
        hypotheses: AG_SS,
        summary: "f, g left ⇒ f∘g left; f, g right ⇒ f∘g right",
        body: Body::Tuple {
            slots: &[OneSided, OneSided],
            check: one_sided_products,
        },
    },
    Statement {
        id: "eq5",
        hypotheses: AG_IR,
        summary: "S∘S = S",
        body: Body::Tuple {
            slots: &[],
            check: whole_idempotent,
        },
    },
    Statement {
        id: "llb",
        hypotheses: AG_IR,
        summary: "f left ⇔ f right",
        body: Body::Tuple {
            slots: &[Any],
            check: left_iff_right,
        },
    },
    Statement {
        id: "left_idem",
        hypotheses: AG_SS_IR,
        summary: "f left (hence also two-sided) ⇒ f∘f = f",
        body: Body::Tuple {
            slots: &[Left],
            check: idempotent_ideal,
        },
    },
    Statement {
        id: "cap_eq_prod",
        hypotheses: AG_SS_IR,
        summary: "f right, g left ⇒ f∩g = f∘g",
        body: Body::Tuple {
            slots: &[Right, Left],
            check: cap_equals_product,
        },
    },
    Statement {
        id: "semi1",
        hypotheses: AG_SS_IR,
        summary: "fuzzy two-sided ideals form a semilattice under ∘ with identity S",
        body: Body::TwoSidedFamily {
            check: super::semilattice::semilattice_check,
        },
    },
    Statement {
        id: "irr_iff_prime",
        hypotheses: AG_SS_IR,
        summary: "a fuzzy two-sided ideal is irreducible ⇔ it is prime",
        body: Body::TwoSidedFamily {
            check: super::semilattice::irreducible_iff_prime,
        },
    },
    Statement {
        id: "all_prime_iff_chain",
        hypotheses: AG_SS_IR,
        summary: "every fuzzy two-sided ideal prime ⇔ the family is totally ordered",
        body: Body::TwoSidedFamily {
            check: super::semilattice::all_prime_iff_chain,
        },
    },
    Statement {
        id: "inte",
        hypotheses: AG_SS_IR,
        summary: "f two-sided ⇔ f interior",
        body: Body::Tuple {
            slots: &[Any],
            check: two_sided_iff_interior,
        },
    },
    Statement {
        id: "q2",
        hypotheses: AG_SS_IR,
        summary: "f two-sided ⇔ f quasi",
        body: Body::Tuple {
            slots: &[Any],
            check: two_sided_iff_quasi,
        },
    },
    Statement {
        id: "gener",
        hypotheses: AG_SS_IR,
        summary: "f bi ⇔ f generalized bi",
        body: Body::Tuple {
            slots: &[Any],
            check: bi_iff_gen_bi,
        },
    },
    Statement {
        id: "bii",
        hypotheses: AG_SS_IR,
        summary: "f two-sided ⇔ f bi",
        body: Body::Tuple {
            slots: &[Any],
            check: two_sided_iff_bi,
        },
    },
    Statement {
        id: "bi_fixedpoint",
        hypotheses: AG_SS_IR,
        summary: "f bi ⇔ (f∘S)∘f = f and f∘f = f",
        body: Body::Tuple {
            slots: &[Any],
            check: bi_fixed_point,
        },
    },
    Statement {
        id: "interior_fixedpoint",
        hypotheses: AG_SS_IR,
        summary: "f interior ⇔ (S∘f)∘S = f",
        body: Body::Tuple {
            slots: &[Any],
            check: interior_fixed_point,
        },
    },
    Statement {
        id: "l145",
        hypotheses: AG_SS_IR,
        summary: "f left ⇒ S∘f = f = f∘S",
        body: Body::Tuple {
            slots: &[Left],
            check: absorbs_both_sides,
        },
    },
    Statement {
        id: "grand_equiv",
        hypotheses: AG_SS_IR,
        summary: "left, right, two-sided, bi, generalized bi, interior, quasi and S∘f = f = f∘S coincide",
        body: Body::Tuple {
            slots: &[Any],
            check: all_conditions_agree,
        },
    },
];

pub(crate) fn lookup(id: &str) -> Option<&'static Statement> {
    STATEMENTS.iter().find(|s| s.id == id)
}

fn subset(f: FuzzySubset) -> Evaluation {
    Evaluation::Subset(f)
}

fn equal(fs: &[&FuzzySubset], claim: &str, lhs: FuzzySubset, rhs: FuzzySubset) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample::new(fs, claim, subset(lhs), subset(rhs)))
}

fn iff(fs: &[&FuzzySubset], claim: &str, lhs: bool, rhs: bool) -> Option<Counterexample> {
    (lhs != rhs).then(|| Counterexample::new(fs, claim, Evaluation::Flag(lhs), Evaluation::Flag(rhs)))
}

/// A conclusion of the form "f has kind k", reported as `true ⇒ false`.
fn has_kind(ctx: &Ctx, fs: &[&FuzzySubset], claim: &str, f: &FuzzySubset, kind: FuzzyKind) -> Option<Counterexample> {
    iff(fs, claim, true, ctx.is(f, kind))
}

fn left_absorbs(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    equal(&[f], "S∘f = f", ctx.p(&ctx.s, f), f.clone())
}

fn left_invertive(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g, h) = (&t[0], &t[1], &t[2]);
    equal(
        &[f, g, h],
        "(f∘g)∘h = (h∘g)∘f",
        ctx.p(&ctx.p(f, g), h),
        ctx.p(&ctx.p(h, g), f),
    )
}

fn medial(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g, h, j) = (&t[0], &t[1], &t[2], &t[3]);
    equal(
        &[f, g, h, j],
        "(f∘g)∘(h∘j) = (f∘h)∘(g∘j)",
        ctx.p(&ctx.p(f, g), &ctx.p(h, j)),
        ctx.p(&ctx.p(f, h), &ctx.p(g, j)),
    )
}

fn ag_star_star(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g, h) = (&t[0], &t[1], &t[2]);
    equal(
        &[f, g, h],
        "f∘(g∘h) = g∘(f∘h)",
        ctx.p(f, &ctx.p(g, h)),
        ctx.p(g, &ctx.p(f, h)),
    )
}

fn paramedial(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g, h, j) = (&t[0], &t[1], &t[2], &t[3]);
    equal(
        &[f, g, h, j],
        "(f∘g)∘(h∘j) = (j∘h)∘(g∘f)",
        ctx.p(&ctx.p(f, g), &ctx.p(h, j)),
        ctx.p(&ctx.p(j, h), &ctx.p(g, f)),
    )
}

fn product_characterizations(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    let kinds = ctx.kinds(f);
    let ff = leq_unchecked(&ctx.p(f, f), f);
    let sf = leq_unchecked(&ctx.p(&ctx.s, f), f);
    let fs = leq_unchecked(&ctx.p(f, &ctx.s), f);
    iff(
        &[f],
        "subgroupoid ⇔ f∘f ⊆ f",
        kinds.contains(FuzzyKind::Subgroupoid),
        ff,
    )
    .or_else(|| iff(&[f], "left ⇔ S∘f ⊆ f", kinds.contains(FuzzyKind::Left), sf))
    .or_else(|| iff(&[f], "right ⇔ f∘S ⊆ f", kinds.contains(FuzzyKind::Right), fs))
    .or_else(|| {
        iff(
            &[f],
            "two-sided ⇔ S∘f ⊆ f and f∘S ⊆ f",
            kinds.contains(FuzzyKind::TwoSided),
            sf && fs,
        )
    })
}

fn bi_characterization(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    let fsf = leq_unchecked(&ctx.p(&ctx.p(f, &ctx.s), f), f);
    iff(&[f], "bi ⇔ (f∘S)∘f ⊆ f", ctx.is(f, FuzzyKind::Bi), fsf)
}

fn cap_is_quasi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g) = (&t[0], &t[1]);
    has_kind(ctx, &[f, g], "f∩g quasi", &meet_unchecked(f, g), FuzzyKind::Quasi)
}

fn quasi_is_subgroupoid(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    has_kind(ctx, &[&t[0]], "f subgroupoid", &t[0], FuzzyKind::Subgroupoid)
}

fn quasi_is_bi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    has_kind(ctx, &[&t[0]], "f bi", &t[0], FuzzyKind::Bi)
}

fn one_sided_is_quasi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    has_kind(ctx, &[&t[0]], "f quasi", &t[0], FuzzyKind::Quasi)
}

fn one_sided_is_gen_bi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    has_kind(ctx, &[&t[0]], "f generalized bi", &t[0], FuzzyKind::GeneralizedBi)
}

fn products_are_bi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g) = (&t[0], &t[1]);
    has_kind(ctx, &[f, g], "f∘g bi", &ctx.p(f, g), FuzzyKind::Bi)
        .or_else(|| has_kind(ctx, &[f, g], "g∘f bi", &ctx.p(g, f), FuzzyKind::Bi))
}

fn one_sided_products(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g) = (&t[0], &t[1]);
    let (kf, kg) = (ctx.kinds(f), ctx.kinds(g));
    let fg = ctx.p(f, g);
    let both = |k| kf.contains(k) && kg.contains(k);
    let left = if both(FuzzyKind::Left) {
        has_kind(ctx, &[f, g], "f, g left ⇒ f∘g left", &fg, FuzzyKind::Left)
    } else {
        None
    };
    left.or_else(|| {
        if both(FuzzyKind::Right) {
            has_kind(ctx, &[f, g], "f, g right ⇒ f∘g right", &fg, FuzzyKind::Right)
        } else {
            None
        }
    })
}

fn whole_idempotent(ctx: &Ctx, _: &[FuzzySubset]) -> Option<Counterexample> {
    equal(&[], "S∘S = S", ctx.p(&ctx.s, &ctx.s), ctx.s.clone())
}

fn left_iff_right(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let k = ctx.kinds(&t[0]);
    iff(
        &[&t[0]],
        "left ⇔ right",
        k.contains(FuzzyKind::Left),
        k.contains(FuzzyKind::Right),
    )
}

fn idempotent_ideal(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    equal(&[f], "f∘f = f", ctx.p(f, f), f.clone())
}

fn cap_equals_product(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let (f, g) = (&t[0], &t[1]);
    equal(&[f, g], "f∩g = f∘g", meet_unchecked(f, g), ctx.p(f, g))
}

fn kind_iff(ctx: &Ctx, t: &[FuzzySubset], claim: &str, a: FuzzyKind, b: FuzzyKind) -> Option<Counterexample> {
    let k = ctx.kinds(&t[0]);
    iff(&[&t[0]], claim, k.contains(a), k.contains(b))
}

fn two_sided_iff_interior(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    kind_iff(ctx, t, "two-sided ⇔ interior", FuzzyKind::TwoSided, FuzzyKind::Interior)
}

fn two_sided_iff_quasi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    kind_iff(ctx, t, "two-sided ⇔ quasi", FuzzyKind::TwoSided, FuzzyKind::Quasi)
}

fn bi_iff_gen_bi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    kind_iff(ctx, t, "bi ⇔ generalized bi", FuzzyKind::Bi, FuzzyKind::GeneralizedBi)
}

fn two_sided_iff_bi(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    kind_iff(ctx, t, "two-sided ⇔ bi", FuzzyKind::TwoSided, FuzzyKind::Bi)
}

fn bi_fixed_point(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    let fixed = ctx.p(&ctx.p(f, &ctx.s), f) == *f && ctx.p(f, f) == *f;
    iff(&[f], "bi ⇔ (f∘S)∘f = f and f∘f = f", ctx.is(f, FuzzyKind::Bi), fixed)
}

fn interior_fixed_point(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    let fixed = ctx.p(&ctx.p(&ctx.s, f), &ctx.s) == *f;
    iff(&[f], "interior ⇔ (S∘f)∘S = f", ctx.is(f, FuzzyKind::Interior), fixed)
}

fn absorbs_both_sides(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    equal(&[f], "S∘f = f", ctx.p(&ctx.s, f), f.clone()).or_else(|| equal(&[f], "f∘S = f", ctx.p(f, &ctx.s), f.clone()))
}

/// The eight conditions compared by `grand_equiv`, in a fixed order.
pub(crate) fn grand_conditions(ctx: &Ctx, f: &FuzzySubset) -> BTreeMap<String, bool> {
    let k = ctx.kinds(f);
    let absorbs = ctx.p(&ctx.s, f) == *f && ctx.p(f, &ctx.s) == *f;
    [
        ("left", k.contains(FuzzyKind::Left)),
        ("right", k.contains(FuzzyKind::Right)),
        ("two_sided", k.contains(FuzzyKind::TwoSided)),
        ("bi", k.contains(FuzzyKind::Bi)),
        ("generalized_bi", k.contains(FuzzyKind::GeneralizedBi)),
        ("interior", k.contains(FuzzyKind::Interior)),
        ("quasi", k.contains(FuzzyKind::Quasi)),
        ("absorbs_s", absorbs),
    ]
    .into_iter()
    .map(|(name, v)| (name.to_string(), v))
    .collect()
}

fn all_conditions_agree(ctx: &Ctx, t: &[FuzzySubset]) -> Option<Counterexample> {
    let f = &t[0];
    let flags = grand_conditions(ctx, f);
    let first = flags["left"];
    flags.values().any(|&v| v != first).then(|| {
        Counterexample::new(
            &[f],
            "all eight conditions agree",
            Evaluation::Flags(flags),
            Evaluation::Flag(first),
        )
    })
}
