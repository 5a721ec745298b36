use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite carrier `0..order` with one multiplication table per Γ-label.
///
/// `op(x, g, y)` is `x g y`, the product of `x` and `y` under the `g`-th
/// label. Every table entry is below `order`; that is checked once at
/// construction and never again.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaMagma {
    order: usize,
    labels: Vec<String>,
    /// Row-major, table after table: `data[(g * n + x) * n + y]`.
    data: Vec<usize>,
    names: Option<Vec<String>>,
}

impl GammaMagma {
    /// Builds a structure from per-label row-major tables.
    pub fn new(labels: Vec<String>, tables: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let order = tables.first().map_or(0, Vec::len);
        if order == 0 {
            return Err(Error::InvalidStructure("order must be positive".into()));
        }
        if labels.is_empty() {
            return Err(Error::InvalidStructure("at least one Γ-label is required".into()));
        }
        if labels.len() != tables.len() {
            return Err(Error::InvalidStructure(format!(
                "{} labels but {} tables",
                labels.len(),
                tables.len()
            )));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidStructure("empty Γ-label".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidStructure(format!("duplicate Γ-label `{label}`")));
            }
        }
        let mut data = Vec::with_capacity(labels.len() * order * order);
        for (label, table) in labels.iter().zip(&tables) {
            if table.len() != order {
                return Err(Error::InvalidStructure(format!(
                    "table `{label}` has {} rows, expected {order}",
                    table.len()
                )));
            }
            for (x, row) in table.iter().enumerate() {
                if row.len() != order {
                    return Err(Error::InvalidStructure(format!(
                        "row {x} of table `{label}` has {} entries, expected {order}",
                        row.len()
                    )));
                }
                if let Some(&bad) = row.iter().find(|&&v| v >= order) {
                    return Err(Error::InvalidStructure(format!(
                        "entry {bad} in row {x} of table `{label}` is not an element"
                    )));
                }
                data.extend_from_slice(row);
            }
        }
        Ok(GammaMagma {
            order,
            labels,
            data,
            names: None,
        })
    }

    /// Builds a structure from a flat table family with labels `g0, g1, ...`.
    pub fn from_flat(order: usize, gamma_count: usize, data: Vec<usize>) -> Result<Self> {
        if order == 0 || gamma_count == 0 {
            return Err(Error::InvalidStructure("order and Γ-count must be positive".into()));
        }
        if data.len() != gamma_count * order * order {
            return Err(Error::LengthMismatch {
                expected: gamma_count * order * order,
                found: data.len(),
            });
        }
        if data.iter().any(|&v| v >= order) {
            return Err(Error::InvalidStructure("table entry out of range".into()));
        }
        Ok(GammaMagma {
            order,
            labels: default_labels(gamma_count),
            data,
            names: None,
        })
    }

    /// Attaches display names for the elements (e.g. the letters `a..e`).
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: names.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element: its attached name, or its index.
    pub fn element_name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves an element given either by display name or by index.
    pub fn parse_element(&self, s: &str) -> Result<usize> {
        if let Some(i) = self.names.as_ref().and_then(|ns| ns.iter().position(|n| n == s)) {
            return Ok(i);
        }
        let x: usize = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("`{s}` is neither an element name nor an index")))?;
        self.check_element(x)?;
        Ok(x)
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    /// `x label y`, with range and label checks.
    pub fn apply(&self, x: usize, label: &str, y: usize) -> Result<usize> {
        self.check_element(x)?;
        self.check_element(y)?;
        let g = self.label_index(label)?;
        Ok(self.op(x, g, y))
    }

    /// `x g y` for a label index `g`. Arguments must be in range (checked only
    /// in debug builds); use [`GammaMagma::apply`] for untrusted input.
    #[inline]
    pub fn op(&self, x: usize, g: usize, y: usize) -> usize {
        debug_assert!(x < self.order && y < self.order, "element out of range");
        self.data[(g * self.order + x) * self.order + y]
    }

    /// The `g`-th table as a flat row-major slice.
    pub fn table(&self, g: usize) -> &[usize] {
        let nn = self.order * self.order;
        &self.data[g * nn..(g + 1) * nn]
    }

    /// All tables, flattened in label order.
    pub fn flat(&self) -> &[usize] {
        &self.data
    }

    pub fn tables(&self) -> Vec<Vec<Vec<usize>>> {
        (0..self.gamma_count())
            .map(|g| self.table(g).chunks(self.order).map(<[usize]>::to_vec).collect())
            .collect()
    }

    /// True when `x` occurs as some product `y g z`.
    pub fn is_factorizable(&self, x: usize) -> bool {
        self.data.contains(&x)
    }

    pub fn every_element_factorizable(&self) -> bool {
        let mut hit = vec![false; self.order];
        for &v in &self.data {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn to_file(&self) -> StructureFile {
        StructureFile {
            order: self.order,
            gamma: self.labels.clone(),
            tables: self.tables(),
            labels: self.names.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("structure serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: StructureFile = serde_json::from_str(s)?;
        file.into_magma()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidStructure(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

impl fmt::Debug for GammaMagma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GammaMagma")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .field("tables", &self.tables())
            .finish()
    }
}

pub(crate) fn default_labels(k: usize) -> Vec<String> {
    (0..k).map(|g| format!("g{g}")).collect()
}

/// On-disk structure format.
///
/// ```json
/// {"order": 2, "gamma": ["l0"], "tables": {"l0": [[0, 1], [1, 0]]}}
/// ```
///
/// `tables` is keyed by label and written in the order of `gamma`; the
/// optional `labels` field names the elements.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawStructureFile")]
pub struct StructureFile {
    pub order: usize,
    pub gamma: Vec<String>,
    /// One table per entry of `gamma`, in the same order.
    pub tables: Vec<Vec<Vec<usize>>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructureFile {
    order: usize,
    gamma: Vec<String>,
    tables: HashMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawStructureFile> for StructureFile {
    type Error = Error;

    fn try_from(mut raw: RawStructureFile) -> Result<Self> {
        if raw.tables.len() != raw.gamma.len() {
            return Err(Error::InvalidStructure(format!(
                "{} tables for {} Γ-labels",
                raw.tables.len(),
                raw.gamma.len()
            )));
        }
        let tables = raw
            .gamma
            .iter()
            .map(|l| {
                raw.tables
                    .remove(l)
                    .ok_or_else(|| Error::InvalidStructure(format!("no table for Γ-label `{l}`")))
            })
            .collect::<Result<_>>()?;
        Ok(StructureFile {
            order: raw.order,
            gamma: raw.gamma,
            tables,
            labels: raw.labels,
        })
    }
}

impl StructureFile {
    pub fn into_magma(self) -> Result<GammaMagma> {
        let m = GammaMagma::new(self.gamma, self.tables)?;
        if m.order() != self.order {
            return Err(Error::InvalidStructure(format!(
                "declared order {} but tables have {} rows",
                self.order,
                m.order()
            )));
        }
        match self.labels {
            Some(names) => m.with_names(names),
            None => Ok(m),
        }
    }
}

impl Serialize for StructureFile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Tables<'a>(&'a [String], &'a [Vec<Vec<usize>>]);
        impl Serialize for Tables<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (label, table) in self.0.iter().zip(self.1) {
                    map.serialize_entry(label, table)?;
                }
                map.end()
            }
        }
        let fields = if self.labels.is_some() { 4 } else { 3 };
        let mut st = s.serialize_struct("StructureFile", fields)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("gamma", &self.gamma)?;
        st.serialize_field("tables", &Tables(&self.gamma, &self.tables))?;
        if let Some(labels) = &self.labels {
            st.serialize_field("labels", labels)?;
        }
        st.end()
    }
}

/// The three term shapes used to derive Γ-operations from a base table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermPattern {
    /// `xy`
    #[serde(rename = "xy")]
    Plain,
    /// `(xx)y`
    #[serde(rename = "(xx)y")]
    SquareLeft,
    /// `x(yy)`
    #[serde(rename = "x(yy)")]
    SquareRight,
}

impl TermPattern {
    fn eval(self, base: &[Vec<usize>], x: usize, y: usize) -> usize {
        match self {
            TermPattern::Plain => base[x][y],
            TermPattern::SquareLeft => base[base[x][x]][y],
            TermPattern::SquareRight => base[x][base[y][y]],
        }
    }
}

impl std::str::FromStr for TermPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "xy" => Ok(TermPattern::Plain),
            "(xx)y" | "x2y" => Ok(TermPattern::SquareLeft),
            "x(yy)" | "xy2" => Ok(TermPattern::SquareRight),
            other => Err(Error::InvalidArgument(format!("unknown term pattern `{other}`"))),
        }
    }
}

/// Derives a Γ-structure from a single base table: the `g`-th operation is
/// `patterns[g]` evaluated in `base`. Labels default to `g0, g1, ...`.
pub fn from_base_with_terms(
    base: &[Vec<usize>],
    patterns: &[TermPattern],
    labels: Option<Vec<String>>,
) -> Result<GammaMagma> {
    if patterns.is_empty() {
        return Err(Error::InvalidArgument("at least one term pattern is required".into()));
    }
    let n = base.len();
    if base.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
        return Err(Error::InvalidStructure(
            "base table is not a closed square table".into(),
        ));
    }
    let labels = labels.unwrap_or_else(|| default_labels(patterns.len()));
    let tables = patterns
        .iter()
        .map(|&p| (0..n).map(|x| (0..n).map(|y| p.eval(base, x, y)).collect()).collect())
        .collect();
    GammaMagma::new(labels, tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> GammaMagma {
        GammaMagma::new(vec!["g".into()], vec![vec![vec![0]]]).unwrap()
    }

    #[test]
    fn order_one_apply() {
        assert_eq!(trivial().apply(0, "g", 0).unwrap(), 0);
    }

    #[test]
    fn apply_rejects_bad_input() {
        let m = trivial();
        assert!(matches!(m.apply(1, "g", 0), Err(Error::ElementOutOfRange { .. })));
        assert!(matches!(m.apply(0, "h", 0), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn construction_enforces_closure() {
        let err = GammaMagma::new(vec!["g".into()], vec![vec![vec![0, 2], vec![1, 0]]]).unwrap_err();
        assert!(matches!(err, Error::InvalidStructure(_)));
    }

    #[test]
    fn duplicate_and_empty_labels_rejected() {
        let t = vec![vec![0]];
        assert!(GammaMagma::new(vec!["a".into(), "a".into()], vec![t.clone(), t.clone()]).is_err());
        assert!(GammaMagma::new(vec![String::new()], vec![t.clone()]).is_err());
        assert!(GammaMagma::new(vec![], vec![]).is_err());
    }

    #[test]
    fn json_keeps_gamma_order() {
        let m = GammaMagma::new(
            vec!["z".into(), "a".into()],
            vec![vec![vec![0, 0], vec![0, 0]], vec![vec![1, 1], vec![1, 1]]],
        )
        .unwrap();
        let json = serde_json::to_string(&m.to_file()).unwrap();
        assert_eq!(
            json,
            r#"{"order":2,"gamma":["z","a"],"tables":{"z":[[0,0],[0,0]],"a":[[1,1],[1,1]]}}"#
        );
        assert_eq!(GammaMagma::from_json(&json).unwrap(), m);
    }

    #[test]
    fn json_errors() {
        assert!(GammaMagma::from_json(r#"{"order":2,"gamma":["a"],"tables":{"b":[[0,0],[0,0]]}}"#).is_err());
        assert!(GammaMagma::from_json(r#"{"order":3,"gamma":["a"],"tables":{"a":[[0,0],[0,0]]}}"#).is_err());
        assert!(GammaMagma::from_json(r#"{"order":2,"gamma":["a"],"tables":{"a":[[0,2],[0,0]]}}"#).is_err());
        assert!(GammaMagma::from_json("not json").is_err());
    }

    #[test]
    fn repeated_plain_pattern_gives_identical_tables() {
        let base = vec![vec![1, 0], vec![0, 0]];
        let m = from_base_with_terms(&base, &[TermPattern::Plain, TermPattern::Plain], None).unwrap();
        assert_eq!(m.table(0), m.table(1));
        assert_eq!(m.labels(), ["g0", "g1"]);
    }

    #[test]
    fn square_patterns() {
        // base: x*y = x + y mod 3
        let base: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + y) % 3).collect()).collect();
        let m = from_base_with_terms(&base, &[TermPattern::SquareLeft, TermPattern::SquareRight], None).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(m.op(x, 0, y), (2 * x + y) % 3);
                assert_eq!(m.op(x, 1, y), (x + 2 * y) % 3);
            }
        }
    }

    #[test]
    fn factorizability() {
        let m = GammaMagma::new(vec!["g".into()], vec![vec![vec![1, 1], vec![1, 1]]]).unwrap();
        assert!(!m.is_factorizable(0));
        assert!(m.is_factorizable(1));
        assert!(!m.every_element_factorizable());
    }
}
