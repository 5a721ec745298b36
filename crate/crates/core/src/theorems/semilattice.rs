//! Claims about the whole family of fuzzy two-sided ideals under `∘`.

use std::collections::HashMap;

use serde::Serialize;

use super::statements::Ctx;
use super::verdict::{Counterexample, Evaluation};
use crate::fuzzy::{leq_unchecked, meet_unchecked, FuzzyKind, FuzzySubset};

/// Algebraic structure of the L_d-valued fuzzy two-sided ideals under `∘`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemilatticeReport {
    pub lattice: u64,
    pub ideal_count: usize,
    pub closed: bool,
    pub commutative: bool,
    pub associative: bool,
    pub idempotent: bool,
    /// `f∘S = f = S∘f` for every ideal `f`.
    pub identity: bool,
    /// `S∘S = S`.
    pub whole_idempotent: bool,
    /// The first violation of each failed property, in the order above.
    pub violations: Vec<Counterexample>,
}

impl SemilatticeReport {
    pub fn is_semilattice(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Table<'a> {
    fam: &'a [FuzzySubset],
    index: HashMap<&'a FuzzySubset, usize>,
    /// `prod[i][j]` is `fam[i] ∘ fam[j]`.
    prod: Vec<Vec<FuzzySubset>>,
}

impl<'a> Table<'a> {
    fn new(ctx: &Ctx, fam: &'a [FuzzySubset]) -> Self {
        let index = fam.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let prod = fam.iter().map(|f| fam.iter().map(|g| ctx.p(f, g)).collect()).collect();
        Table { fam, index, prod }
    }

    /// `(fam[i] ∘ fam[j]) ∘ fam[k]`, using the table when the inner product is an ideal.
    fn left_assoc(&self, ctx: &Ctx, i: usize, j: usize, k: usize) -> FuzzySubset {
        match self.index.get(&self.prod[i][j]) {
            Some(&ij) => self.prod[ij][k].clone(),
            None => ctx.p(&self.prod[i][j], &self.fam[k]),
        }
    }

    fn right_assoc(&self, ctx: &Ctx, i: usize, j: usize, k: usize) -> FuzzySubset {
        match self.index.get(&self.prod[j][k]) {
            Some(&jk) => self.prod[i][jk].clone(),
            None => ctx.p(&self.fam[i], &self.prod[j][k]),
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn sides(fs: &[&FuzzySubset], claim: &str, lhs: FuzzySubset, rhs: FuzzySubset) -> Counterexample {
    Counterexample::new(fs, claim, Evaluation::Subset(lhs), Evaluation::Subset(rhs))
}

pub(crate) fn analyze(ctx: &Ctx, lattice: u64, fam: &[FuzzySubset]) -> SemilatticeReport {
    let t = Table::new(ctx, fam);
    let n = fam.len();
    let mut violations = Vec::new();

    let not_closed = pairs(n).find(|&(i, j)| {
        !t.index.contains_key(&t.prod[i][j]) && !ctx.kinds(&t.prod[i][j]).contains(FuzzyKind::TwoSided)
    });
    if let Some((i, j)) = not_closed {
        violations.push(Counterexample::new(
            &[&fam[i], &fam[j]],
            "f∘g two-sided",
            Evaluation::Flag(true),
            Evaluation::Flag(false),
        ));
    }
    let not_comm = pairs(n).find(|&(i, j)| i < j && t.prod[i][j] != t.prod[j][i]);
    if let Some((i, j)) = not_comm {
        violations.push(sides(
            &[&fam[i], &fam[j]],
            "f∘g = g∘f",
            t.prod[i][j].clone(),
            t.prod[j][i].clone(),
        ));
    }
    let not_assoc = pairs(n)
        .flat_map(|(i, j)| (0..n).map(move |k| (i, j, k)))
        .map(|(i, j, k)| (i, j, k, t.left_assoc(ctx, i, j, k), t.right_assoc(ctx, i, j, k)))
        .find(|(_, _, _, l, r)| l != r);
    if let Some((i, j, k, l, r)) = not_assoc {
        violations.push(sides(&[&fam[i], &fam[j], &fam[k]], "(f∘g)∘h = f∘(g∘h)", l, r));
    }
    if let Some(i) = (0..n).find(|&i| t.prod[i][i] != fam[i]) {
        violations.push(sides(&[&fam[i]], "f∘f = f", t.prod[i][i].clone(), fam[i].clone()));
    }
    let not_identity = (0..n).find_map(|i| {
        let f = &fam[i];
        let fs = ctx.p(f, &ctx.s);
        if fs != *f {
            return Some(sides(&[f], "f∘S = f", fs, f.clone()));
        }
        let sf = ctx.p(&ctx.s, f);
        (sf != *f).then(|| sides(&[f], "S∘f = f", sf, f.clone()))
    });
    let identity = not_identity.is_none();
    violations.extend(not_identity);
    let ss = ctx.p(&ctx.s, &ctx.s);
    let whole_idempotent = ss == ctx.s;
    if !whole_idempotent {
        violations.push(sides(&[], "S∘S = S", ss, ctx.s.clone()));
    }

    SemilatticeReport {
        lattice,
        ideal_count: n,
        closed: not_closed.is_none(),
        commutative: not_comm.is_none(),
        associative: violations.iter().all(|v| v.claim != "(f∘g)∘h = f∘(g∘h)"),
        idempotent: violations.iter().all(|v| v.claim != "f∘f = f"),
        identity,
        whole_idempotent,
        violations,
    }
}

pub(crate) fn semilattice_check(ctx: &Ctx, fam: &[FuzzySubset]) -> Option<Counterexample> {
    analyze(ctx, 0, fam).violations.into_iter().next()
}

/// A pair `(g, h)` of ideals with `combine(g, h) ⊆ f` but neither `g ⊆ f` nor `h ⊆ f`.
fn breaking_pair<'a>(
    fam: &'a [FuzzySubset],
    f: &FuzzySubset,
    combined: impl Fn(usize, usize) -> FuzzySubset,
) -> Option<(&'a FuzzySubset, &'a FuzzySubset)> {
    let outside: Vec<usize> = (0..fam.len()).filter(|&i| !leq_unchecked(&fam[i], f)).collect();
    outside
        .iter()
        .flat_map(|&i| outside.iter().map(move |&j| (i, j)))
        .find(|&(i, j)| leq_unchecked(&combined(i, j), f))
        .map(|(i, j)| (&fam[i], &fam[j]))
}

pub(crate) fn irreducible_iff_prime(ctx: &Ctx, fam: &[FuzzySubset]) -> Option<Counterexample> {
    let t = Table::new(ctx, fam);
    fam.iter().find_map(|f| {
        let not_irreducible = breaking_pair(fam, f, |i, j| meet_unchecked(&fam[i], &fam[j]));
        let not_prime = breaking_pair(fam, f, |i, j| t.prod[i][j].clone());
        if not_irreducible.is_some() == not_prime.is_some() {
            return None;
        }
        let (g, h) = not_irreducible.or(not_prime).expect("exactly one side fails");
        Some(Counterexample::new(
            &[f, g, h],
            "strongly irreducible ⇔ prime",
            Evaluation::Flag(not_irreducible.is_none()),
            Evaluation::Flag(not_prime.is_none()),
        ))
    })
}

pub(crate) fn all_prime_iff_chain(ctx: &Ctx, fam: &[FuzzySubset]) -> Option<Counterexample> {
    let t = Table::new(ctx, fam);
    let not_prime = fam
        .iter()
        .find_map(|f| breaking_pair(fam, f, |i, j| t.prod[i][j].clone()).map(|(g, h)| [f, g, h]));
    let incomparable = pairs(fam.len())
        .find(|&(i, j)| !leq_unchecked(&fam[i], &fam[j]) && !leq_unchecked(&fam[j], &fam[i]))
        .map(|(i, j)| [&fam[i], &fam[j]]);
    let all_prime = not_prime.is_none();
    let chain = incomparable.is_none();
    if all_prime == chain {
        return None;
    }
    let subsets: Vec<&FuzzySubset> = match (not_prime, incomparable) {
        (Some(w), None) => w.to_vec(),
        (None, Some(w)) => w.to_vec(),
        _ => unreachable!("flags differ"),
    };
    Some(Counterexample::new(
        &subsets,
        "every ideal prime ⇔ ideals totally ordered",
        Evaluation::Flag(all_prime),
        Evaluation::Flag(chain),
    ))
}
