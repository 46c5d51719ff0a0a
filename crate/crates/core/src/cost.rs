//! Parameter choices, query counts and the clique cost models.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ser_opt_sig17, ser_sig17, sig17};

/// Nearest integer, halves rounded away from zero.
pub fn nint(x: f64) -> u64 {
    x.round().max(0.0) as u64
}

/// Rule for the number of outer iterations `t2`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum T2Rule {
    /// `nint((π/4)(N/M)^{L/2})`: a quarter turn of the rotation by `2<w|s>`.
    #[default]
    QuarterPi,
    /// `nint((π/2)(N/M)^{L/2})`.
    Literal,
}

impl FromStr for T2Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quarter-pi" => Ok(Self::QuarterPi),
            "literal" => Ok(Self::Literal),
            other => Err(Error::InvalidParameters(format!(
                "unknown t2 rule `{other}`"
            ))),
        }
    }
}

pub fn default_m(n: u64, l: usize) -> u64 {
    nint((n as f64).powf(l as f64 / (l as f64 + 1.0)))
}

/// `nint((π/2)√(M/L))`
pub fn t1_for(m: u64, l: usize) -> u64 {
    nint(std::f64::consts::FRAC_PI_2 * (m as f64 / l as f64).sqrt())
}

pub fn t2_for(n: u64, m: u64, l: usize, rule: T2Rule) -> u64 {
    let factor = match rule {
        T2Rule::QuarterPi => std::f64::consts::FRAC_PI_4,
        T2Rule::Literal => std::f64::consts::FRAC_PI_2,
    };
    nint(factor * (n as f64 / m as f64).powf(l as f64 / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterChoice {
    pub n: u64,
    pub l: usize,
    pub m: u64,
    pub t1: u64,
    pub t2: u64,
    pub total_queries: u64,
    #[serde(serialize_with = "ser_sig17")]
    pub exponent_target: f64,
    pub t2_rule: T2Rule,
}

pub fn choose_parameters(n: u64, l: usize) -> Result<ParameterChoice> {
    choose_parameters_with(n, l, T2Rule::default())
}

pub fn choose_parameters_with(n: u64, l: usize, rule: T2Rule) -> Result<ParameterChoice> {
    if l == 0 {
        return Err(Error::InvalidParameters("l must be at least 1".into()));
    }
    parameters_for_m(n, default_m(n, l), l, rule)
}

/// Parameters with `M` fixed by the caller and `t1`, `t2` from the formulas.
pub fn parameters_for_m(n: u64, m: u64, l: usize, rule: T2Rule) -> Result<ParameterChoice> {
    if l == 0 || (l as u64) > m || m >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= l <= m < n, got n={n}, m={m}, l={l}"
        )));
    }
    let t1 = t1_for(m, l);
    let t2 = t2_for(n, m, l, rule);
    Ok(ParameterChoice {
        n,
        l,
        m,
        t1,
        t2,
        total_queries: query_count(m, t1, t2),
        exponent_target: l as f64 / (l as f64 + 1.0),
        t2_rule: rule,
    })
}

/// `M + 2 t1 t2`
pub fn query_count(m: u64, t1: u64, t2: u64) -> u64 {
    m + 2 * t1 * t2
}

pub fn subset_query_count(params: &ParameterChoice) -> u64 {
    query_count(params.m, params.t1, params.t2)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueVariant {
    Simple,
    Recursive,
    Mss,
}

impl CliqueVariant {
    pub const ALL: [CliqueVariant; 3] = [Self::Simple, Self::Recursive, Self::Mss];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Simple => "simple",
            Self::Recursive => "recursive",
            Self::Mss => "mss",
        }
    }

    /// Exponent `q` of the analytic choice `M = nint(N^q)`.
    pub fn m_exponent(self, l: usize) -> f64 {
        let l = l as f64;
        match self {
            Self::Simple => l / (l + 1.0),
            Self::Recursive => l / (l + 2.0),
            Self::Mss => (l - 1.0) / l,
        }
    }

    pub fn analytic_m(self, n: u64, l: usize) -> u64 {
        nint((n as f64).powf(self.m_exponent(l)))
    }

    /// Exact exponent of the analytic total cost.
    pub fn exponent(self, l: usize) -> Ratio<i64> {
        let l = l as i64;
        match self {
            Self::Simple => Ratio::new(2 * l, l + 1),
            Self::Recursive => Ratio::new(5 * l - 2, 2 * l + 4),
            Self::Mss => Ratio::new(2 * (l - 1), l),
        }
    }
}

impl fmt::Display for CliqueVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CliqueVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(Self::Simple),
            "recursive" => Ok(Self::Recursive),
            "mss" => Ok(Self::Mss),
            other => Err(Error::InvalidParameters(format!(
                "unknown clique variant `{other}`"
            ))),
        }
    }
}

/// Leading-order query cost of finding an L-clique with an M-vertex subset
/// walk, polylog factors dropped. `Mss` shares the recursive formula.
pub fn clique_cost(n: u64, m: u64, l: usize, variant: CliqueVariant) -> f64 {
    clique_cost_f(n as f64, m as f64, l as f64, variant)
}

fn clique_cost_f(n: f64, m: f64, l: f64, variant: CliqueVariant) -> f64 {
    match variant {
        CliqueVariant::Simple => m * m + (n / m).powf(l / 2.0) * m.sqrt() * m,
        CliqueVariant::Recursive | CliqueVariant::Mss => {
            m * m + (n / m).powf((l - 1.0) / 2.0) * (m.powf((l - 1.0) / l) * n.sqrt() + m.powf(1.5))
        }
    }
}

/// Cost at the variant's own analytic `M`.
pub fn analytic_cost(n: u64, l: usize, variant: CliqueVariant) -> (u64, f64) {
    let m = variant.analytic_m(n, l).clamp(l as u64, n - 1);
    (m, clique_cost(n, m, l, variant))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizeResult {
    pub n: u64,
    pub l: usize,
    pub variant: CliqueVariant,
    pub m_star: u64,
    #[serde(serialize_with = "ser_sig17")]
    pub cost: f64,
    /// Slope of `ln cost(m_star)` over `N/100, N/10, N`.
    #[serde(serialize_with = "ser_opt_sig17")]
    pub fitted_exponent: Option<f64>,
    pub polylog_dropped: bool,
}

/// Integer minimizer of [`clique_cost`] over `M ∈ [l, n-1]`.
pub fn minimize_m(n: u64, l: usize, variant: CliqueVariant) -> Result<(u64, f64)> {
    if l == 0 || (l as u64) >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= l < n, got n={n}, l={l}"
        )));
    }
    let (lo, hi) = (l as u64, n - 1);
    let f = |x: f64| clique_cost_f(n as f64, x.exp(), l as f64, variant);
    let (mut a, mut b) = ((lo as f64).ln(), (hi as f64).ln());
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let centre = ((a + b) / 2.0).exp().round() as u64;
    let (start, end) = (centre.saturating_sub(3).max(lo), (centre + 3).min(hi));
    let best = (start..=end)
        .map(|m| (m, clique_cost(n, m, l, variant)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("scan range is nonempty");
    Ok(best)
}

pub fn optimize_m(n: u64, l: usize, variant: CliqueVariant) -> Result<OptimizeResult> {
    let (m_star, cost) = minimize_m(n, l, variant)?;
    let fitted_exponent = if n / 100 > 4 * l as u64 {
        let pts = [n / 100, n / 10, n]
            .iter()
            .map(|&k| minimize_m(k, l, variant).map(|(_, c)| (k as f64, c)))
            .collect::<Result<Vec<_>>>()?;
        loglog_slope(&pts)
    } else {
        None
    };
    Ok(OptimizeResult {
        n,
        l,
        variant,
        m_star,
        cost,
        fitted_exponent,
        polylog_dropped: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliqueCostRow {
    pub l: usize,
    pub simple_exponent: Ratio<i64>,
    pub recursive_exponent: Ratio<i64>,
    pub mss_exponent: Ratio<i64>,
    pub best: CliqueVariant,
}

impl CliqueCostRow {
    pub fn new(l: usize) -> Self {
        let simple_exponent = CliqueVariant::Simple.exponent(l);
        let recursive_exponent = CliqueVariant::Recursive.exponent(l);
        let mss_exponent = CliqueVariant::Mss.exponent(l);
        let mut best = CliqueVariant::Simple;
        let mut best_value = simple_exponent;
        for (v, e) in [
            (CliqueVariant::Recursive, recursive_exponent),
            (CliqueVariant::Mss, mss_exponent),
        ] {
            if e < best_value {
                best = v;
                best_value = e;
            }
        }
        Self {
            l,
            simple_exponent,
            recursive_exponent,
            mss_exponent,
            best,
        }
    }

    pub fn exponent(&self, variant: CliqueVariant) -> Ratio<i64> {
        match variant {
            CliqueVariant::Simple => self.simple_exponent,
            CliqueVariant::Recursive => self.recursive_exponent,
            CliqueVariant::Mss => self.mss_exponent,
        }
    }
}

/// Exponent table for `L = 2..=7`.
pub fn table1() -> Vec<CliqueCostRow> {
    (2..=7).map(CliqueCostRow::new).collect()
}

pub const TABLE1_HEADER: &str =
    "L,simple,recursive,mss,best,simple_value,recursive_value,mss_value";

fn ratio_value(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn table1_csv(rows: &[CliqueCostRow]) -> String {
    let mut out = String::from(TABLE1_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.l,
            r.simple_exponent,
            r.recursive_exponent,
            r.mss_exponent,
            r.best,
            sig17(ratio_value(r.simple_exponent)),
            sig17(ratio_value(r.recursive_exponent)),
            sig17(ratio_value(r.mss_exponent)),
        ));
    }
    out
}
