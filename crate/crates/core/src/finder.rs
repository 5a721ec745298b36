//! Enumeration of small Γ-magmas satisfying given laws, one per isomorphism class.
//!
//! The search fills the flat table family cell by cell (label-major, then row,
//! then column), trying values in ascending order. Every instance of every
//! required equation is kept on a pending list until both sides evaluate;
//! an instance whose sides are known and differ prunes the branch, and one
//! whose only unknown is the outermost cell of one side forces that cell.
//! A branch is also pruned as soon as some relabelling maps the assigned part
//! of the table to something lexicographically smaller, so only the
//! lexicographically least member of each orbit survives.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::crisp::is_intra_regular;
use crate::error::{Error, PartialSearch, Result};
use crate::laws::{first_failure, left_identity, tuples, Equation, Law, Term};
use crate::magma::GammaMagma;

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Which relabellings count as isomorphisms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoMode {
    /// Permutations of the carrier.
    #[default]
    ElementsOnly,
    /// Permutations of the carrier and of the Γ-labels.
    ElementsAndGamma,
}

impl IsoMode {
    pub fn key(self) -> &'static str {
        match self {
            IsoMode::ElementsOnly => "elements_only",
            IsoMode::ElementsAndGamma => "elements_and_gamma",
        }
    }
}

impl fmt::Display for IsoMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for IsoMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "elements_only" => Ok(IsoMode::ElementsOnly),
            "elements_and_gamma" => Ok(IsoMode::ElementsAndGamma),
            _ => Err(Error::InvalidArgument(format!(
                "iso mode must be `elements_only` or `elements_and_gamma`, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub gamma_count: usize,
    pub laws: Vec<Law>,
    /// Keep only intra-regular models.
    pub intra_regular: bool,
    pub iso: IsoMode,
    /// Maximum number of search nodes.
    pub budget: u64,
}

impl SearchSpec {
    pub fn new(order: usize, gamma_count: usize, laws: Vec<Law>) -> Self {
        SearchSpec {
            order,
            gamma_count,
            laws,
            intra_regular: false,
            iso: IsoMode::default(),
            budget: DEFAULT_BUDGET,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 || self.gamma_count == 0 {
            return Err(Error::InvalidArgument("order and Γ-count must be positive".into()));
        }
        if self.order > 8 || self.gamma_count > 4 {
            return Err(Error::InvalidArgument(format!(
                "search supports order ≤ 8 and Γ-count ≤ 4, got {} and {}",
                self.order, self.gamma_count
            )));
        }
        Ok(())
    }
}

const UNSET: u8 = u8::MAX;

/// One ground instance of an equation.
struct Instance {
    law: usize,
    elements: [u8; 4],
    labels: [u8; 3],
}

enum Eval {
    Val(u8),
    /// Both arguments known, but the outermost cell is unassigned.
    Top(usize),
    Blocked,
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    n: usize,
    cells: usize,
    equations: Vec<Equation>,
    /// Relabellings as (element permutation, label permutation), identity excluded.
    group: Vec<(Vec<u8>, Vec<u8>)>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl<'a> Searcher<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        let n = spec.order;
        let k = spec.gamma_count;
        let label_perms = match spec.iso {
            IsoMode::ElementsOnly => vec![(0..k as u8).collect()],
            IsoMode::ElementsAndGamma => permutations(k),
        };
        let mut group = Vec::new();
        for p in permutations(n) {
            for q in &label_perms {
                let identity = p.iter().enumerate().all(|(i, &v)| i == v as usize)
                    && q.iter().enumerate().all(|(i, &v)| i == v as usize);
                if !identity {
                    group.push((p.clone(), q.clone()));
                }
            }
        }
        let mut laws = spec.laws.clone();
        laws.sort();
        laws.dedup();
        Searcher {
            spec,
            n,
            cells: k * n * n,
            equations: laws.iter().filter_map(|l| l.equation()).collect(),
            group,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for (law, eq) in self.equations.iter().enumerate() {
            for els in tuples(eq.elements, self.n) {
                for labs in tuples(eq.labels, self.spec.gamma_count) {
                    let mut elements = [0u8; 4];
                    let mut labels = [0u8; 3];
                    for (slot, v) in elements.iter_mut().zip(&els) {
                        *slot = *v as u8;
                    }
                    for (slot, v) in labels.iter_mut().zip(&labs) {
                        *slot = *v as u8;
                    }
                    out.push(Instance { law, elements, labels });
                }
            }
        }
        out
    }

    fn cell(&self, g: usize, x: usize, y: usize) -> usize {
        (g * self.n + x) * self.n + y
    }

    fn eval(&self, t: &Term, inst: &Instance, table: &[u8]) -> Eval {
        match t {
            Term::Var(i) => Eval::Val(inst.elements[*i]),
            Term::Op(g, l, r) => match (self.eval(l, inst, table), self.eval(r, inst, table)) {
                (Eval::Val(a), Eval::Val(b)) => {
                    let c = self.cell(inst.labels[*g] as usize, a as usize, b as usize);
                    match table[c] {
                        UNSET => Eval::Top(c),
                        v => Eval::Val(v),
                    }
                }
                _ => Eval::Blocked,
            },
        }
    }

    /// Re-examines `pending`, forcing cells where possible. Returns `false`
    /// on a contradiction. Forced cells are appended to `trail`; instances
    /// still undecided are left in `pending`.
    fn propagate(
        &self,
        table: &mut [u8],
        pending: &mut Vec<usize>,
        instances: &[Instance],
        trail: &mut Vec<usize>,
    ) -> bool {
        loop {
            let mut changed = false;
            let mut keep = Vec::with_capacity(pending.len());
            for &i in pending.iter() {
                let inst = &instances[i];
                let eq = &self.equations[inst.law];
                match (self.eval(&eq.lhs, inst, table), self.eval(&eq.rhs, inst, table)) {
                    (Eval::Val(a), Eval::Val(b)) => {
                        if a != b {
                            return false;
                        }
                    }
                    (Eval::Val(v), Eval::Top(c)) | (Eval::Top(c), Eval::Val(v)) => {
                        table[c] = v;
                        trail.push(c);
                        changed = true;
                    }
                    _ => keep.push(i),
                }
            }
            *pending = keep;
            if !changed {
                return true;
            }
        }
    }

    /// `false` when some relabelling sends the assigned part of `table` to a
    /// lexicographically smaller table.
    fn may_be_least(&self, table: &[u8]) -> bool {
        let n = self.n;
        let mut inv = vec![0u8; n];
        let mut inv_g = vec![0u8; self.spec.gamma_count];
        'perm: for (p, q) in &self.group {
            for (i, &v) in p.iter().enumerate() {
                inv[v as usize] = i as u8;
            }
            for (i, &v) in q.iter().enumerate() {
                inv_g[v as usize] = i as u8;
            }
            for c in 0..self.cells {
                let (g, x, y) = (c / (n * n), (c / n) % n, c % n);
                let src = table[self.cell(inv_g[g] as usize, inv[x] as usize, inv[y] as usize)];
                let here = table[c];
                if src == UNSET || here == UNSET {
                    continue 'perm;
                }
                let image = p[src as usize];
                if image < here {
                    return false;
                }
                if image > here {
                    continue 'perm;
                }
            }
        }
        true
    }

    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.spec.budget {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn accept(&self, table: &[u8]) -> Option<GammaMagma> {
        let data = table.iter().map(|&v| v as usize).collect();
        let m = GammaMagma::from_flat(self.n, self.spec.gamma_count, data).expect("complete table");
        if self.spec.laws.contains(&Law::HasLeftIdentity) && left_identity(&m).is_none() {
            return None;
        }
        if self.spec.intra_regular && !is_intra_regular(&m) {
            return None;
        }
        debug_assert!(self.spec.laws.iter().all(|&l| first_failure(&m, l).is_none()));
        Some(m)
    }

    /// Depth-first search from `table`, whose undecided instances are
    /// `pending`. Returns `false` if the budget ran out.
    fn dfs(&self, table: &mut Vec<u8>, pending: Vec<usize>, instances: &[Instance], out: &mut Vec<GammaMagma>) -> bool {
        if !self.tick() {
            return false;
        }
        if !self.may_be_least(table) {
            return true;
        }
        let Some(cell) = table.iter().position(|&v| v == UNSET) else {
            out.extend(self.accept(table));
            return true;
        };
        for v in 0..self.n as u8 {
            table[cell] = v;
            let mut trail = vec![cell];
            let mut next = pending.clone();
            let ok = self.propagate(table, &mut next, instances, &mut trail);
            let finished = !ok || self.dfs(table, next, instances, out);
            for c in trail {
                table[c] = UNSET;
            }
            if !finished {
                return false;
            }
        }
        true
    }

    /// Partial assignments at which the search is split across workers,
    /// in search order, each with its forced cells and pending instances.
    fn split(
        &self,
        instances: &[Instance],
        root: Vec<u8>,
        pending: Vec<usize>,
        depth: usize,
    ) -> Vec<(Vec<u8>, Vec<usize>)> {
        let mut frontier = vec![(root, pending)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (table, pending) in frontier {
                let Some(cell) = table.iter().position(|&v| v == UNSET) else {
                    next.push((table, pending));
                    continue;
                };
                if !self.may_be_least(&table) {
                    continue;
                }
                for v in 0..self.n as u8 {
                    let mut t = table.clone();
                    t[cell] = v;
                    let mut p = pending.clone();
                    let mut trail = Vec::new();
                    if self.propagate(&mut t, &mut p, instances, &mut trail) {
                        next.push((t, p));
                    }
                }
            }
            frontier = next;
        }
        frontier
    }
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

/// One representative per isomorphism class of the models of `spec`, each
/// the lexicographically least flat table family in its class, in ascending
/// order of that table.
pub fn enumerate_models(spec: &SearchSpec) -> Result<Vec<GammaMagma>> {
    spec.validate()?;
    let s = Searcher::new(spec);
    let instances = s.instances();
    let mut root = vec![UNSET; s.cells];
    let mut pending: Vec<usize> = (0..instances.len()).collect();
    if !s.propagate(&mut root, &mut pending, &instances, &mut Vec::new()) {
        return Ok(Vec::new());
    }
    let depth = if s.cells > 6 { 3 } else { 0 };
    let frontier = s.split(&instances, root, pending, depth);
    let results: Vec<(Vec<u8>, bool, Vec<GammaMagma>)> = frontier
        .into_par_iter()
        .map(|(table, pending)| {
            let mut out = Vec::new();
            let mut work = table.clone();
            let done = s.dfs(&mut work, pending, &instances, &mut out);
            (table, done, out)
        })
        .collect();
    let mut found = Vec::new();
    for (prefix, done, out) in results {
        if !done {
            // Models before the first unfinished subtree are final.
            let frontier = prefix
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != UNSET)
                .map(|(c, &v)| (c, v as usize))
                .collect();
            return Err(Error::BudgetExhausted(Box::new(PartialSearch {
                nodes: s.nodes.load(Ordering::Relaxed),
                found,
                frontier,
            })));
        }
        found.extend(out);
    }
    Ok(found)
}

/// Number of isomorphism classes of models of `spec`.
pub fn count_models(spec: &SearchSpec) -> Result<usize> {
    enumerate_models(spec).map(|v| v.len())
}

/// The lexicographically least table family isomorphic to `m`.
pub fn canonical_form(m: &GammaMagma, iso: IsoMode) -> GammaMagma {
    let n = m.order();
    let k = m.gamma_count();
    let label_perms = match iso {
        IsoMode::ElementsOnly => vec![(0..k as u8).collect()],
        IsoMode::ElementsAndGamma => permutations(k),
    };
    let mut best = m.flat().to_vec();
    for p in permutations(n) {
        let mut inv = vec![0usize; n];
        for (i, &v) in p.iter().enumerate() {
            inv[v as usize] = i;
        }
        for q in &label_perms {
            let mut inv_g = vec![0usize; k];
            for (i, &v) in q.iter().enumerate() {
                inv_g[v as usize] = i;
            }
            let image: Vec<usize> = (0..k * n * n)
                .map(|c| {
                    let (g, x, y) = (c / (n * n), (c / n) % n, c % n);
                    p[m.op(inv[x], inv_g[g], inv[y])] as usize
                })
                .collect();
            if image < best {
                best = image;
            }
        }
    }
    GammaMagma::from_flat(n, k, best).expect("relabelling preserves validity")
}

/// Whether two structures are related by a relabelling allowed by `iso`.
pub fn isomorphic(a: &GammaMagma, b: &GammaMagma, iso: IsoMode) -> bool {
    a.order() == b.order()
        && a.gamma_count() == b.gamma_count()
        && canonical_form(a, iso).flat() == canonical_form(b, iso).flat()
}

/// Properties a search for a minimal example can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// Γ-AG-groupoid with an element that is no product.
    NonFactorizableElement,
    /// Non-commutative Γ-AG-groupoid.
    NonCommutativeAg,
    /// Γ-AG-groupoid that is not Γ-AG**.
    AgNotAgStarStar,
}

impl Property {
    pub const ALL: [Property; 3] = [
        Property::NonFactorizableElement,
        Property::NonCommutativeAg,
        Property::AgNotAgStarStar,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Property::NonFactorizableElement => "non_factorizable_element",
            Property::NonCommutativeAg => "non_commutative_ag",
            Property::AgNotAgStarStar => "ag_not_ag_star_star",
        }
    }

    fn holds(self, m: &GammaMagma) -> bool {
        match self {
            Property::NonFactorizableElement => !m.every_element_factorizable(),
            Property::NonCommutativeAg => first_failure(m, Law::Commutative).is_some(),
            Property::AgNotAgStarStar => first_failure(m, Law::AgStarStar).is_some(),
        }
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.key() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{s}`")))
    }
}

/// The smallest-order single-label Γ-AG-groupoid with `property`, up to
/// `max_order`, taking the least canonical table at that order.
pub fn find_counterexample_structure(property: Property, max_order: usize, budget: u64) -> Result<Option<GammaMagma>> {
    for order in 1..=max_order {
        let mut spec = SearchSpec::new(order, 1, vec![Law::LeftInvertive]);
        spec.budget = budget;
        if let Some(m) = enumerate_models(&spec)?.into_iter().find(|m| property.holds(m)) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}
