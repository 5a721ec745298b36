//! Executable statements about fuzzy Γ-ideals, checked on a concrete structure.
//!
//! "For every fuzzy subset" is read as "for every subset valued in the grid
//! `{0, 1/d, ..., 1}`", with `d` chosen per run. Exhaustive mode walks every
//! tuple of grid-valued subsets meeting the premises; sampled mode draws
//! subsets from a seeded ChaCha stream and projects each onto its premise
//! family through the matching closure operator.

mod semilattice;
mod statements;
mod verdict;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::crisp::is_intra_regular;
use crate::error::{Error, Result};
use crate::fuzzy::{closure, FuzzyKind, FuzzySubset, Lattice};
use crate::laws::{first_failure, left_identity, Law};
use crate::magma::GammaMagma;

pub use self::semilattice::SemilatticeReport;
pub use self::verdict::{Bounds, Counterexample, Evaluation, Hypothesis, Status, Verdict};

use self::statements::{lookup, Body, Ctx, Family, Statement, STATEMENTS};

/// Default cap on the number of quantified tuples in exhaustive mode.
pub const DEFAULT_BUDGET: u128 = 4_000_000;

/// How a statement's quantifiers are discharged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, samples: usize },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => f.write_str("exhaustive"),
            Mode::Sampled { seed, samples } => write!(f, "sampled:{seed}:{samples}"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    /// `exhaustive` or `sampled:<seed>:<n>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "exhaustive" {
            return Ok(Mode::Exhaustive);
        }
        let bad = || Error::InvalidArgument(format!("mode must be `exhaustive` or `sampled:<seed>:<n>`, got `{s}`"));
        let mut parts = s.split(':');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some("sampled"), Some(seed), Some(n), None) => Ok(Mode::Sampled {
                seed: seed.parse().map_err(|_| bad())?,
                samples: n.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest number of quantified tuples (or subsets to enumerate) accepted
    /// before reporting a capacity error.
    pub budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: DEFAULT_BUDGET }
    }
}

/// Public description of a registered statement.
#[derive(Debug, Clone, Copy)]
pub struct StatementInfo {
    pub id: &'static str,
    pub summary: &'static str,
    pub hypotheses: &'static [Hypothesis],
}

/// Every registered statement, in registry order.
pub fn catalogue() -> impl Iterator<Item = StatementInfo> {
    STATEMENTS.iter().map(|s| StatementInfo {
        id: s.id,
        summary: s.summary,
        hypotheses: s.hypotheses,
    })
}

pub fn ids() -> impl Iterator<Item = &'static str> {
    STATEMENTS.iter().map(|s| s.id)
}

fn statement(id: &str) -> Result<&'static Statement> {
    lookup(id).ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Whether `m` satisfies hypothesis `h`.
pub fn hypothesis_holds(m: &GammaMagma, h: Hypothesis) -> bool {
    match h {
        Hypothesis::GammaAg => first_failure(m, Law::LeftInvertive).is_none(),
        Hypothesis::AgStarStar => first_failure(m, Law::AgStarStar).is_none(),
        Hypothesis::IntraRegular => is_intra_regular(m),
        Hypothesis::EveryElementFactorizable => m.every_element_factorizable(),
        Hypothesis::HasLeftIdentity => left_identity(m).is_some(),
    }
}

/// Lazily evaluated hypothesis flags, shared across a batch.
struct Profile<'a> {
    m: &'a GammaMagma,
    known: HashMap<Hypothesis, bool>,
}

impl<'a> Profile<'a> {
    fn new(m: &'a GammaMagma) -> Self {
        Profile {
            m,
            known: HashMap::new(),
        }
    }

    fn missing(&mut self, hyps: &[Hypothesis]) -> Vec<Hypothesis> {
        hyps.iter()
            .copied()
            .filter(|&h| !*self.known.entry(h).or_insert_with(|| hypothesis_holds(self.m, h)))
            .collect()
    }
}

/// Verify one registered statement on `m`.
pub fn verify(m: &GammaMagma, id: &str, lattice: Lattice, mode: Mode, opts: VerifyOptions) -> Result<Verdict> {
    let stmt = statement(id)?;
    verify_with(m, stmt, &mut Profile::new(m), lattice, mode, opts)
}

/// Verify every registered statement. Capacity errors are reported per id.
pub fn verify_all(
    m: &GammaMagma,
    lattice: Lattice,
    mode: Mode,
    opts: VerifyOptions,
) -> Vec<(&'static str, Result<Verdict>)> {
    let mut profile = Profile::new(m);
    STATEMENTS
        .iter()
        .map(|s| (s.id, verify_with(m, s, &mut profile, lattice, mode, opts)))
        .collect()
}

fn verify_with(
    m: &GammaMagma,
    stmt: &Statement,
    profile: &mut Profile,
    lattice: Lattice,
    mode: Mode,
    opts: VerifyOptions,
) -> Result<Verdict> {
    let missing = profile.missing(stmt.hypotheses);
    if !missing.is_empty() {
        return Ok(Verdict {
            id: stmt.id.to_string(),
            status: Status::HypothesisNotMet,
            missing_hypotheses: missing,
            bounds: None,
            witness: None,
        });
    }
    let ctx = Ctx::new(m);
    let (bounds, witness) = match (&stmt.body, mode) {
        (Body::Tuple { slots, check }, Mode::Exhaustive) => exhaustive(&ctx, slots, *check, lattice, opts)?,
        (Body::Tuple { slots, check }, Mode::Sampled { seed, samples }) => {
            sampled(&ctx, slots, *check, lattice, seed, samples)
        }
        (Body::TwoSidedFamily { check }, _) => {
            let fam = ideal_family(m, lattice, FuzzyKind::TwoSided, opts)?;
            let cubed = (fam.len() as u128).saturating_pow(3);
            if cubed > opts.budget {
                return Err(capacity("triples of two-sided fuzzy ideals", cubed, opts.budget));
            }
            let bounds = Bounds {
                lattice: lattice.den(),
                mode: Mode::Exhaustive.to_string(),
                tuples: fam.len() as u128,
                premise_hits: fam.len() as u128,
            };
            (bounds, check(&ctx, &fam))
        }
    };
    Ok(Verdict {
        id: stmt.id.to_string(),
        status: if witness.is_some() {
            Status::Counterexample
        } else {
            Status::Holds
        },
        missing_hypotheses: Vec::new(),
        bounds: Some(bounds),
        witness,
    })
}

fn capacity(what: &str, required: u128, limit: u128) -> Error {
    Error::Capacity {
        what: what.to_string(),
        required,
        limit,
    }
}

fn all_subsets(order: usize, lattice: Lattice, opts: VerifyOptions) -> Result<Vec<FuzzySubset>> {
    let count = lattice.subset_count(order);
    if count > opts.budget {
        return Err(capacity("grid-valued fuzzy subsets", count, opts.budget));
    }
    Ok(lattice.subsets(order).collect())
}

/// Every grid-valued fuzzy subset of `m` of kind `kind`, in ascending order.
pub fn ideal_family(
    m: &GammaMagma,
    lattice: Lattice,
    kind: FuzzyKind,
    opts: VerifyOptions,
) -> Result<Vec<FuzzySubset>> {
    let ctx = Ctx::new(m);
    let all = all_subsets(m.order(), lattice, opts)?;
    Ok(all.into_par_iter().filter(|f| ctx.kinds(f).contains(kind)).collect())
}

fn exhaustive(
    ctx: &Ctx,
    slots: &[Family],
    check: statements::TupleCheck,
    lattice: Lattice,
    opts: VerifyOptions,
) -> Result<(Bounds, Option<Counterexample>)> {
    let bounds = |tuples| Bounds {
        lattice: lattice.den(),
        mode: Mode::Exhaustive.to_string(),
        tuples,
        premise_hits: tuples,
    };
    if slots.is_empty() {
        return Ok((bounds(1), check(ctx, &[])));
    }
    let all = all_subsets(ctx.m.order(), lattice, opts)?;
    let needs_kinds = slots.iter().any(|&s| s != Family::Any);
    let kinds: Vec<_> = if needs_kinds {
        all.par_iter().map(|f| ctx.kinds(f)).collect()
    } else {
        Vec::new()
    };
    let mut families: HashMap<Family, Vec<usize>> = HashMap::new();
    for &slot in slots {
        families.entry(slot).or_insert_with(|| {
            (0..all.len())
                .filter(|&i| slot == Family::Any || slot.admits(kinds[i]))
                .collect()
        });
    }
    let lists: Vec<&[usize]> = slots.iter().map(|s| families[s].as_slice()).collect();
    let space = lists.iter().fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128));
    if space > opts.budget {
        return Err(capacity("premise-filtered tuples", space, opts.budget));
    }
    if space == 0 {
        return Ok((bounds(0), None));
    }
    let rest = &lists[1..];
    let found = lists[0].par_iter().find_map_first(|&first| {
        let mut idx = vec![0usize; rest.len()];
        let mut tuple: Vec<FuzzySubset> = Vec::with_capacity(slots.len());
        loop {
            tuple.clear();
            tuple.push(all[first].clone());
            tuple.extend(rest.iter().zip(&idx).map(|(l, &i)| all[l[i]].clone()));
            if let Some(cx) = check(ctx, &tuple) {
                return Some(cx);
            }
            // Odometer, last slot fastest.
            let mut pos = rest.len();
            loop {
                if pos == 0 {
                    return None;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < rest[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    });
    Ok((bounds(space), found))
}

/// Draw one subset for `slot`, or `None` when the projection misses the family.
fn draw(ctx: &Ctx, slot: Family, lattice: Lattice, rng: &mut ChaCha8Rng) -> Option<FuzzySubset> {
    let f = lattice.random_subset(ctx.m.order(), rng);
    let coin: bool = rng.random();
    let f = match slot.projection(coin) {
        None => f,
        Some(kind) => closure(ctx.m, &f, kind).ok()??,
    };
    (slot == Family::Any || slot.admits(ctx.kinds(&f))).then_some(f)
}

fn sampled(
    ctx: &Ctx,
    slots: &[Family],
    check: statements::TupleCheck,
    lattice: Lattice,
    seed: u64,
    samples: usize,
) -> (Bounds, Option<Counterexample>) {
    let outcomes: Vec<(bool, Option<Counterexample>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let tuple: Option<Vec<FuzzySubset>> = slots.iter().map(|&s| draw(ctx, s, lattice, &mut rng)).collect();
            match tuple {
                Some(t) => (true, check(ctx, &t)),
                None => (false, None),
            }
        })
        .collect();
    let hits = outcomes.iter().filter(|(hit, _)| *hit).count();
    let witness = outcomes.into_iter().find_map(|(_, cx)| cx);
    let bounds = Bounds {
        lattice: lattice.den(),
        mode: Mode::Sampled { seed, samples }.to_string(),
        tuples: samples as u128,
        premise_hits: hits as u128,
    };
    (bounds, witness)
}

/// Re-evaluate a recorded counterexample from scratch. `true` when the
/// subsets meet the premises and reproduce exactly the recorded sides.
pub fn replay(m: &GammaMagma, id: &str, lattice: Lattice, cx: &Counterexample, opts: VerifyOptions) -> Result<bool> {
    let stmt = statement(id)?;
    for f in &cx.subsets {
        if f.len() != m.order() {
            return Err(Error::LengthMismatch {
                expected: m.order(),
                found: f.len(),
            });
        }
    }
    let ctx = Ctx::new(m);
    let again = match &stmt.body {
        Body::Tuple { slots, check } => {
            if slots.len() != cx.subsets.len() {
                return Ok(false);
            }
            let premises = slots
                .iter()
                .zip(&cx.subsets)
                .all(|(s, f)| *s == Family::Any || s.admits(ctx.kinds(f)));
            if !premises {
                return Ok(false);
            }
            check(&ctx, &cx.subsets)
        }
        Body::TwoSidedFamily { check } => {
            let fam = ideal_family(m, lattice, FuzzyKind::TwoSided, opts)?;
            check(&ctx, &fam)
        }
    };
    Ok(again.as_ref() == Some(cx))
}

/// Closure, commutativity, associativity, idempotency and identity of the
/// grid-valued fuzzy two-sided ideals under `∘`.
pub fn semilattice_report(m: &GammaMagma, lattice: Lattice, opts: VerifyOptions) -> Result<SemilatticeReport> {
    let fam = ideal_family(m, lattice, FuzzyKind::TwoSided, opts)?;
    let cubed = (fam.len() as u128).saturating_pow(3);
    if cubed > opts.budget {
        return Err(capacity("triples of two-sided fuzzy ideals", cubed, opts.budget));
    }
    Ok(semilattice::analyze(&Ctx::new(m), lattice.den(), &fam))
}

#[cfg(test)]
mod tests;
