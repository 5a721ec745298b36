use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::fuzzy::FuzzySubset;

/// Structural assumptions a statement may require of the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Left invertive under every pair of labels.
    GammaAg,
    AgStarStar,
    IntraRegular,
    EveryElementFactorizable,
    /// Some `e` with `e γ x = x` for every `γ` and `x`.
    HasLeftIdentity,
}

impl Hypothesis {
    pub fn key(self) -> &'static str {
        match self {
            Hypothesis::GammaAg => "gamma_ag",
            Hypothesis::AgStarStar => "ag_star_star",
            Hypothesis::IntraRegular => "intra_regular",
            Hypothesis::EveryElementFactorizable => "every_element_factorizable",
            Hypothesis::HasLeftIdentity => "has_left_identity",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// One side of a violated statement, as evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evaluation {
    Subset(FuzzySubset),
    Flag(bool),
    Flags(BTreeMap<String, bool>),
}

/// Concrete fuzzy subsets on which a statement fails, with both sides of
/// the failing claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub subsets: Vec<FuzzySubset>,
    /// The part of the statement that fails.
    pub claim: String,
    pub lhs: Evaluation,
    pub rhs: Evaluation,
}

impl Counterexample {
    pub(crate) fn new(subsets: &[&FuzzySubset], claim: &str, lhs: Evaluation, rhs: Evaluation) -> Self {
        Counterexample {
            subsets: subsets.iter().map(|f| (*f).clone()).collect(),
            claim: claim.to_string(),
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Counterexample,
    HypothesisNotMet,
}

/// How much was searched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lattice: u64,
    /// `exhaustive`, or `sampled:<seed>:<n>`.
    pub mode: String,
    /// Exhaustive: size of the quantified tuple space after premise
    /// filtering. Sampled: number of samples drawn.
    pub tuples: u128,
    /// Sampled: how many draws met every premise. Exhaustive: same as `tuples`.
    pub premise_hits: u128,
}

/// Outcome of verifying one statement on one structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub missing_hypotheses: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Counterexample>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_counterexample(&self) -> bool {
        self.status == Status::Counterexample
    }
}
