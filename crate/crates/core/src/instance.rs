//! Problem instances: a black-box table, a subset size and the property the
//! marked subset satisfies.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::combinat::{binomial_checked, Subsets};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryMode {
    /// One oracle value per domain element.
    Item,
    /// One oracle value per unordered pair of elements (edge labels).
    Pairwise,
}

/// Which generator built an instance. Also fixes the property semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    ElementDistinctness,
    LDistinctness,
    ZeroSumXor,
    SumModQ,
    Consecutive,
    LClique,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::ElementDistinctness => "element-distinctness",
            Family::LDistinctness => "l-distinctness",
            Family::ZeroSumXor => "zero-sum-xor",
            Family::SumModQ => "sum-mod-q",
            Family::Consecutive => "consecutive",
            Family::LClique => "l-clique",
            Family::Custom => "custom",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Family::ElementDistinctness,
            Family::LDistinctness,
            Family::ZeroSumXor,
            Family::SumModQ,
            Family::Consecutive,
            Family::LClique,
            Family::Custom,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| Error::InvalidParameters(format!("unknown family `{s}`")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The L indices under test together with access to their oracle values.
pub struct Selection<'a> {
    pub instance: &'a ProblemInstance,
    pub indices: &'a [usize],
}

impl Selection<'_> {
    pub fn value(&self, index: usize) -> u64 {
        self.instance.values[index]
    }

    pub fn edge(&self, a: usize, b: usize) -> u64 {
        self.instance.values[pair_index(a, b)]
    }

    pub fn items(&self) -> Vec<(usize, u64)> {
        self.indices.iter().map(|&i| (i, self.value(i))).collect()
    }
}

pub type PredicateFn = dyn Fn(&Selection<'_>) -> bool + Send + Sync;

/// A permutation-invariant property of L-subsets.
#[derive(Clone)]
pub enum Property {
    AllEqual,
    XorZero {
        bits: u32,
    },
    SumModQ {
        q: u64,
    },
    /// The L values are distinct and form a run `y, y+1, ..., y+L-1`.
    Consecutive,
    /// Every pair inside the subset carries edge label 1.
    Clique,
    /// Explicit list of satisfying tuples, each sorted by index.
    Listed(BTreeSet<Vec<(usize, u64)>>),
    Predicate(Arc<PredicateFn>),
}

impl fmt::Debug for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::AllEqual => write!(f, "AllEqual"),
            Property::XorZero { bits } => write!(f, "XorZero {{ bits: {bits} }}"),
            Property::SumModQ { q } => write!(f, "SumModQ {{ q: {q} }}"),
            Property::Consecutive => write!(f, "Consecutive"),
            Property::Clique => write!(f, "Clique"),
            Property::Listed(s) => f.debug_tuple("Listed").field(s).finish(),
            Property::Predicate(_) => write!(f, "Predicate(..)"),
        }
    }
}

impl PartialEq for Property {
    fn eq(&self, other: &Self) -> bool {
        use Property::*;
        match (self, other) {
            (AllEqual, AllEqual) | (Consecutive, Consecutive) | (Clique, Clique) => true,
            (XorZero { bits: a }, XorZero { bits: b }) => a == b,
            (SumModQ { q: a }, SumModQ { q: b }) => a == b,
            (Listed(a), Listed(b)) => a == b,
            (Predicate(a), Predicate(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl Property {
    /// Evaluate an item-mode property on an L-tuple of (index, value) pairs in any order.
    ///
    /// Returns `None` for variants that need the whole instance (clique, predicate).
    pub fn holds_items(&self, tuple: &[(usize, u64)]) -> Option<bool> {
        let values = || tuple.iter().map(|&(_, v)| v);
        Some(match self {
            Property::AllEqual => values().all(|v| v == tuple[0].1),
            Property::XorZero { .. } => values().fold(0, |acc, v| acc ^ v) == 0,
            Property::SumModQ { q } => values().map(|v| v as u128).sum::<u128>() % *q as u128 == 0,
            Property::Consecutive => {
                let mut vs: Vec<u64> = values().collect();
                vs.sort_unstable();
                vs.windows(2).all(|w| w[0].checked_add(1) == Some(w[1]))
            }
            Property::Listed(set) => {
                let mut key = tuple.to_vec();
                key.sort_unstable();
                set.contains(&key)
            }
            Property::Clique | Property::Predicate(_) => return None,
        })
    }
}

/// Index of the unordered pair {a, b} in a pairwise value table (colex order).
pub fn pair_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    hi * (hi - 1) / 2 + lo
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    pub n: usize,
    pub l: usize,
    pub mode: QueryMode,
    /// `n` item values, or `C(n,2)` edge labels in [`pair_index`] order.
    pub values: Vec<u64>,
    pub property: Property,
    pub family: Family,
    pub seed: Option<u64>,
}

impl ProblemInstance {
    pub fn new(
        n: usize,
        l: usize,
        mode: QueryMode,
        values: Vec<u64>,
        property: Property,
        family: Family,
        seed: Option<u64>,
    ) -> Result<Self> {
        if l == 0 || l >= n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= l < n, got n={n}, l={l}"
            )));
        }
        let expected = match mode {
            QueryMode::Item => n,
            QueryMode::Pairwise => n * (n - 1) / 2,
        };
        if values.len() != expected {
            return Err(Error::InvalidParameters(format!(
                "{mode:?} mode with n={n} needs {expected} values, got {}",
                values.len()
            )));
        }
        match &property {
            Property::Clique if mode != QueryMode::Pairwise => {
                return Err(Error::InvalidParameters(
                    "clique property needs pairwise mode".into(),
                ))
            }
            Property::Clique if l < 2 => {
                return Err(Error::InvalidParameters(
                    "clique property needs l >= 2".into(),
                ))
            }
            Property::XorZero { bits } => {
                if *bits == 0 || *bits > 63 {
                    return Err(Error::InvalidParameters(format!(
                        "xor width {bits} not in 1..=63"
                    )));
                }
                if let Some(v) = values.iter().find(|&&v| v >> bits != 0) {
                    return Err(Error::InvalidParameters(format!(
                        "value {v} exceeds {bits} bits"
                    )));
                }
            }
            Property::SumModQ { q } if *q < 2 => {
                return Err(Error::InvalidParameters(format!(
                    "modulus q={q} must be >= 2"
                )))
            }
            Property::Listed(set) => {
                for entry in set {
                    let sorted_distinct = entry.windows(2).all(|w| w[0].0 < w[1].0);
                    if entry.len() != l || !sorted_distinct || entry.iter().any(|&(i, _)| i >= n) {
                        return Err(Error::InvalidParameters(format!(
                            "listed solution {entry:?} is not a sorted {l}-subset of [0,{n})"
                        )));
                    }
                }
            }
            _ => {}
        }
        if mode == QueryMode::Pairwise
            && !matches!(property, Property::Clique | Property::Predicate(_))
        {
            return Err(Error::InvalidParameters(format!(
                "property {property:?} is not defined on pairwise instances"
            )));
        }
        Ok(Self {
            n,
            l,
            mode,
            values,
            property,
            family,
            seed,
        })
    }

    /// Does the sorted L-subset satisfy the property?
    pub fn satisfies(&self, subset: &[usize]) -> bool {
        let sel = Selection {
            instance: self,
            indices: subset,
        };
        match &self.property {
            Property::Clique => subset
                .iter()
                .enumerate()
                .all(|(t, &a)| subset[t + 1..].iter().all(|&b| sel.edge(a, b) == 1)),
            Property::Predicate(f) => f(&sel),
            other => other.holds_items(&sel.items()).unwrap_or(false),
        }
    }

    /// All satisfying L-subsets, in colex order.
    pub fn all_marked(&self) -> Vec<MarkedSet> {
        Subsets::new(self.n, self.l)
            .filter(|s| self.satisfies(s))
            .map(|indices| MarkedSet { indices })
            .collect()
    }

    pub fn find_marked(&self) -> Classification {
        let mut found = None;
        let mut count = 0u64;
        for s in Subsets::new(self.n, self.l) {
            if self.satisfies(&s) {
                count += 1;
                if found.is_none() {
                    found = Some(s);
                }
            }
        }
        match (count, found) {
            (0, _) => Classification::None,
            (1, Some(indices)) => Classification::Unique(MarkedSet { indices }),
            (c, _) => Classification::Multiple(c),
        }
    }

    pub fn to_file(&self) -> Result<InstanceFile> {
        let params = match &self.property {
            Property::AllEqual | Property::Consecutive | Property::Clique => {
                PropertyParams::default()
            }
            Property::XorZero { bits } => PropertyParams {
                bits: Some(*bits),
                ..Default::default()
            },
            Property::SumModQ { q } => PropertyParams {
                q: Some(*q),
                ..Default::default()
            },
            Property::Listed(set) => PropertyParams {
                solutions: Some(set.iter().cloned().collect()),
                ..Default::default()
            },
            Property::Predicate(_) => {
                return Err(Error::Unserializable(
                    "callable predicates have no file form".into(),
                ))
            }
        };
        let (values, pairs) = match self.mode {
            QueryMode::Item => (Some(self.values.clone()), None),
            QueryMode::Pairwise => (None, Some(self.values.clone())),
        };
        Ok(InstanceFile {
            n: self.n,
            l: self.l,
            mode: self.mode,
            values,
            pairs,
            property: PropertyFile {
                family: self.family,
                params,
            },
            seed: self.seed,
        })
    }

    pub fn from_file(file: InstanceFile) -> Result<Self> {
        let InstanceFile {
            n,
            l,
            mode,
            values,
            pairs,
            property,
            seed,
        } = file;
        let table = match mode {
            QueryMode::Item => values,
            QueryMode::Pairwise => pairs,
        }
        .ok_or_else(|| {
            Error::InvalidParameters(format!("{mode:?} instance without value table"))
        })?;
        let p = property.params;
        let missing =
            |what: &str| Error::InvalidParameters(format!("{} needs `{what}`", property.family));
        let prop = match property.family {
            Family::ElementDistinctness | Family::LDistinctness => Property::AllEqual,
            Family::ZeroSumXor => Property::XorZero {
                bits: p.bits.ok_or_else(|| missing("bits"))?,
            },
            Family::SumModQ => Property::SumModQ {
                q: p.q.ok_or_else(|| missing("q"))?,
            },
            Family::Consecutive => Property::Consecutive,
            Family::LClique => Property::Clique,
            Family::Custom => Property::Listed(
                p.solutions
                    .ok_or_else(|| missing("solutions"))?
                    .into_iter()
                    .collect(),
            ),
        };
        Self::new(n, l, mode, table, prop, property.family, seed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file()?)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    /// Number of L-subsets a brute-force scan visits.
    pub fn search_space(&self) -> Option<u64> {
        binomial_checked(self.n as u64, self.l as u64)
    }
}

/// The special subset: sorted, distinct, in range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedSet {
    indices: Vec<usize>,
}

impl MarkedSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedSubset(indices));
        }
        Ok(Self { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Is this set contained in the sorted subset `a`?
    pub fn is_subset_of(&self, a: &[usize]) -> bool {
        self.indices.iter().all(|x| a.binary_search(x).is_ok())
    }

    pub fn contains(&self, x: usize) -> bool {
        self.indices.binary_search(&x).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Unique(MarkedSet),
    None,
    Multiple(u64),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<(usize, u64)>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFile {
    pub family: Family,
    #[serde(default)]
    pub params: PropertyParams,
}

/// On-disk JSON form of a [`ProblemInstance`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub l: usize,
    pub mode: QueryMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<u64>>,
    pub property: PropertyFile,
    #[serde(default)]
    pub seed: Option<u64>,
}
