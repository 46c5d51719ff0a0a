//! Serialized run reports shared by both engines.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::instance::QueryMode;

/// Format a float with 17 significant digits (`1.2345678901234567e-1`).
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// Serde helper emitting a float as a 17-significant-digit JSON number.
pub fn ser_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    raw.serialize(s)
}

pub fn ser_opt_sig17<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => ser_sig17(v, s),
        None => s.serialize_none(),
    }
}

pub fn ser_sig17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&raw)?;
    }
    seq.end()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Full,
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    /// No subset satisfies the property; P is the identity.
    NoMarked,
    /// More than one subset satisfies the property.
    MultipleMarked,
    /// The single-solution precondition of the analysis does not hold.
    Unguaranteed,
    /// Query count is the formula value, not an oracle counter.
    ModeledQueries,
}

/// Oracle cost of the two query-bearing primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryCosts {
    pub prepare: u64,
    pub per_shift: u64,
}

impl QueryCosts {
    /// M queries to load f(A) and one per shift in item mode; C(M,2) and M
    /// edge queries in pairwise mode.
    pub fn for_mode(mode: QueryMode, m: usize) -> Self {
        let m = m as u64;
        match mode {
            QueryMode::Item => Self {
                prepare: m,
                per_shift: 1,
            },
            QueryMode::Pairwise => Self {
                prepare: m * (m.saturating_sub(1)) / 2,
                per_shift: m,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub engine: Engine,
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub t1: u64,
    pub t2: u64,
    pub mode: QueryMode,
    #[serde(serialize_with = "ser_sig17")]
    pub success_probability: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub overlap_w: f64,
    pub query_count: u64,
    pub query_costs: QueryCosts,
    pub flags: Vec<Flag>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}
