//! Structures shipped with the crate.
//!
//! * `ag9`: the 9-element AG-band with `a α b = a²b`, `a β b = ab²`;
//! * `ir5`: the 5-element intra-regular AG\*\*-groupoid with `Γ = {1}`.

use crate::error::{Error, Result};
use crate::magma::GammaMagma;

pub const AG9_JSON: &str = include_str!("../../../corpus/ag9.json");
pub const IR5_JSON: &str = include_str!("../../../corpus/ir5.json");

pub const NAMES: [&str; 2] = ["ag9", "ir5"];

pub fn ag9() -> GammaMagma {
    GammaMagma::from_json(AG9_JSON).expect("ag9 corpus file is valid")
}

pub fn ir5() -> GammaMagma {
    GammaMagma::from_json(IR5_JSON).expect("ir5 corpus file is valid")
}

pub fn by_name(name: &str) -> Result<GammaMagma> {
    match name {
        "ag9" => Ok(ag9()),
        "ir5" => Ok(ir5()),
        other => Err(Error::InvalidArgument(format!("unknown corpus structure `{other}`"))),
    }
}

/// Base multiplication of `ag9` in its printed 1-based labels.
const AG9_BASE_LABELS: [[usize; 9]; 9] = [
    [1, 4, 7, 3, 6, 8, 2, 9, 5],
    [9, 2, 5, 7, 1, 4, 8, 6, 3],
    [6, 8, 3, 5, 9, 2, 4, 1, 7],
    [5, 9, 2, 4, 7, 1, 6, 3, 8],
    [3, 6, 8, 2, 5, 9, 1, 7, 4],
    [7, 1, 4, 8, 3, 6, 9, 5, 2],
    [8, 3, 6, 9, 2, 5, 7, 4, 1],
    [2, 5, 9, 1, 4, 7, 3, 8, 6],
    [4, 7, 1, 6, 8, 3, 5, 2, 9],
];

/// The base table of `ag9`, 0-indexed.
pub fn ag9_base() -> Vec<Vec<usize>> {
    AG9_BASE_LABELS
        .iter()
        .map(|row| row.iter().map(|v| v - 1).collect())
        .collect()
}

/// Order-2 structure with constant product `x γ y = 1`, so element `0` has no
/// factorization. It is left invertive and AG\*\*.
pub fn non_factorizable_pair() -> GammaMagma {
    GammaMagma::new(vec!["1".into()], vec![vec![vec![1, 1], vec![1, 1]]]).expect("valid table")
}

/// Single-element structure with one label.
pub fn trivial() -> GammaMagma {
    GammaMagma::new(vec!["1".into()], vec![vec![vec![0]]]).expect("valid table")
}

/// Left-zero semigroup of order 2 (`x y = x`).
pub fn left_zero_pair() -> GammaMagma {
    GammaMagma::new(vec!["1".into()], vec![vec![vec![0, 0], vec![1, 1]]]).expect("valid table")
}
