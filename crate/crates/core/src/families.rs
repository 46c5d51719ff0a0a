//! Seeded instance generators for the standard property families.
//!
//! Item-mode generators build the value table greedily: the planted subset is
//! written first, then every other index draws values until one is found that
//! does not complete a new satisfying subset with already assigned indices. A
//! whole draw is repeated when an index runs out of admissible values.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::Subsets;
use crate::error::{Error, Result};
use crate::instance::{pair_index, Classification, Family, ProblemInstance, Property, QueryMode};

const MAX_ATTEMPTS: usize = 2000;
const DRAWS_PER_INDEX: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: usize,
    pub l: usize,
    pub seed: u64,
    /// Plant exactly one solution (`true`) or guarantee none (`false`).
    pub plant: bool,
    /// Explicit planted subset; drawn at random when absent.
    #[serde(default)]
    pub planted: Option<Vec<usize>>,
    /// Bit width for zero-sum XOR; defaults to `ceil(log2 n) + 2`.
    #[serde(default)]
    pub bits: Option<u32>,
    /// Modulus for sum-mod-q; defaults to `4 * next_power_of_two(n)`.
    #[serde(default)]
    pub q: Option<u64>,
    /// Value range `[0, range)` for equality and consecutive families; defaults to `4 n`.
    #[serde(default)]
    pub range: Option<u64>,
    /// Edge probability for non-planted clique edges; defaults to 0.5.
    #[serde(default)]
    pub edge_prob: Option<f64>,
    /// Custom family: explicit value table.
    #[serde(default)]
    pub values: Option<Vec<u64>>,
    /// Custom family: explicit satisfying tuples.
    #[serde(default)]
    pub solutions: Option<Vec<Vec<(usize, u64)>>>,
}

impl FamilyParams {
    pub fn new(n: usize, l: usize, seed: u64, plant: bool) -> Self {
        Self {
            n,
            l,
            seed,
            plant,
            planted: None,
            bits: None,
            q: None,
            range: None,
            edge_prob: None,
            values: None,
            solutions: None,
        }
    }
}

pub fn default_xor_bits(n: usize) -> u32 {
    (n.max(2) as f64).log2().ceil() as u32 + 2
}

pub fn default_modulus(n: usize) -> u64 {
    4 * (n.max(1) as u64).next_power_of_two()
}

pub fn make_family(family: Family, params: &FamilyParams) -> Result<ProblemInstance> {
    let FamilyParams { n, l, .. } = *params;
    if l == 0 || l >= n {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= l < n, got n={n}, l={l}"
        )));
    }
    if let Some(p) = &params.planted {
        if p.len() != l {
            return Err(Error::InvalidParameters(format!(
                "planted set {p:?} must have {l} elements"
            )));
        }
        if !params.plant {
            return Err(Error::InvalidParameters(
                "planted set given together with no-plant".into(),
            ));
        }
    }
    match family {
        Family::ElementDistinctness => {
            if l != 2 {
                return Err(Error::InvalidParameters(format!(
                    "element distinctness has l = 2, got {l}"
                )));
            }
            let range = params.range.unwrap_or(4 * n as u64);
            item_family(family, Property::AllEqual, range, params)
        }
        Family::LDistinctness => {
            let range = params.range.unwrap_or(4 * n as u64);
            item_family(family, Property::AllEqual, range, params)
        }
        Family::ZeroSumXor => {
            let bits = params.bits.unwrap_or_else(|| default_xor_bits(n));
            if bits == 0 || bits > 63 {
                return Err(Error::InvalidParameters(format!(
                    "xor width {bits} not in 1..=63"
                )));
            }
            item_family(family, Property::XorZero { bits }, 1u64 << bits, params)
        }
        Family::SumModQ => {
            let q = params.q.unwrap_or_else(|| default_modulus(n));
            if q < 2 {
                return Err(Error::InvalidParameters(format!(
                    "modulus q={q} must be >= 2"
                )));
            }
            item_family(family, Property::SumModQ { q }, q, params)
        }
        Family::Consecutive => {
            let range = params.range.unwrap_or(4 * n as u64);
            if range < l as u64 {
                return Err(Error::InvalidParameters(format!(
                    "range {range} cannot hold {l} consecutive values"
                )));
            }
            item_family(family, Property::Consecutive, range, params)
        }
        Family::LClique => clique_family(params),
        Family::Custom => {
            let values = params
                .values
                .clone()
                .ok_or_else(|| Error::InvalidParameters("custom family needs values".into()))?;
            let sols = params
                .solutions
                .clone()
                .ok_or_else(|| Error::InvalidParameters("custom family needs solutions".into()))?;
            let listed = sols
                .into_iter()
                .map(|mut t| {
                    t.sort_unstable();
                    t
                })
                .collect();
            ProblemInstance::new(
                n,
                l,
                QueryMode::Item,
                values,
                Property::Listed(listed),
                family,
                Some(params.seed),
            )
        }
    }
}

fn planted_indices(params: &FamilyParams, rng: &mut ChaCha8Rng) -> Result<Vec<usize>> {
    let mut p = match &params.planted {
        Some(p) => p.clone(),
        None => rand::seq::index::sample(rng, params.n, params.l).into_vec(),
    };
    p.sort_unstable();
    if p.windows(2).any(|w| w[0] == w[1]) || p.iter().any(|&x| x >= params.n) {
        return Err(Error::InvalidParameters(format!(
            "planted set {p:?} is not a valid subset"
        )));
    }
    Ok(p)
}

fn planted_values(property: &Property, range: u64, l: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    match property {
        Property::AllEqual => vec![rng.random_range(0..range); l],
        Property::XorZero { .. } => {
            let mut v: Vec<u64> = (0..l - 1).map(|_| rng.random_range(0..range)).collect();
            v.push(v.iter().fold(0, |acc, x| acc ^ x));
            v
        }
        Property::SumModQ { q } => {
            let mut v: Vec<u64> = (0..l - 1).map(|_| rng.random_range(0..*q)).collect();
            let s = v.iter().map(|&x| x as u128).sum::<u128>() % *q as u128;
            v.push(((*q as u128 - s) % *q as u128) as u64);
            v
        }
        Property::Consecutive => {
            let start = rng.random_range(0..=range - l as u64);
            let mut v: Vec<u64> = (0..l as u64).map(|i| start + i).collect();
            v.shuffle(rng);
            v
        }
        _ => unreachable!("item families only"),
    }
}

/// Would assigning `value` to `index` complete a satisfying subset with assigned indices?
fn completes_solution(
    property: &Property,
    assigned: &[(usize, u64)],
    index: usize,
    value: u64,
    l: usize,
) -> bool {
    if l == 1 {
        return property.holds_items(&[(index, value)]).unwrap_or(false);
    }
    let mut tuple = Vec::with_capacity(l);
    Subsets::new(assigned.len(), l - 1).any(|pick| {
        tuple.clear();
        tuple.extend(pick.iter().map(|&t| assigned[t]));
        tuple.push((index, value));
        property.holds_items(&tuple).unwrap_or(false)
    })
}

fn item_family(
    family: Family,
    property: Property,
    range: u64,
    params: &FamilyParams,
) -> Result<ProblemInstance> {
    let FamilyParams {
        n, l, seed, plant, ..
    } = *params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = if plant {
        Some(planted_indices(params, &mut rng)?)
    } else {
        None
    };

    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut values = vec![0u64; n];
        let mut assigned: Vec<(usize, u64)> = Vec::with_capacity(n);
        if let Some(p) = &planted {
            let pv = planted_values(&property, range, l, &mut rng);
            for (&i, &v) in p.iter().zip(&pv) {
                values[i] = v;
                assigned.push((i, v));
            }
        }
        let mut rest: Vec<usize> = (0..n)
            .filter(|i| planted.as_ref().is_none_or(|p| !p.contains(i)))
            .collect();
        rest.shuffle(&mut rng);
        for x in rest {
            let mut ok = None;
            for _ in 0..DRAWS_PER_INDEX {
                let v = rng.random_range(0..range);
                if !completes_solution(&property, &assigned, x, v, l) {
                    ok = Some(v);
                    break;
                }
            }
            let Some(v) = ok else { continue 'attempt };
            values[x] = v;
            assigned.push((x, v));
        }
        let inst = ProblemInstance::new(
            n,
            l,
            QueryMode::Item,
            values,
            property.clone(),
            family,
            Some(seed),
        )?;
        if classification_matches(&inst, planted.as_deref()) {
            return Ok(inst);
        }
    }
    Err(Error::GeneratorExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

fn classification_matches(inst: &ProblemInstance, planted: Option<&[usize]>) -> bool {
    match (inst.find_marked(), planted) {
        (Classification::Unique(s), Some(p)) => s.indices() == p,
        (Classification::None, None) => true,
        _ => false,
    }
}

fn clique_family(params: &FamilyParams) -> Result<ProblemInstance> {
    let FamilyParams {
        n, l, seed, plant, ..
    } = *params;
    if l < 2 {
        return Err(Error::InvalidParameters(
            "clique family needs l >= 2".into(),
        ));
    }
    let p = params.edge_prob.unwrap_or(0.5);
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameters(format!(
            "edge probability {p} not in [0,1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted = if plant {
        Some(planted_indices(params, &mut rng)?)
    } else {
        None
    };

    let mut adj = vec![vec![false; n]; n];
    if let Some(c) = &planted {
        for (t, &a) in c.iter().enumerate() {
            for &b in &c[t + 1..] {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = (1..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    pairs.shuffle(&mut rng);
    for (a, b) in pairs {
        if adj[a][b] || !rng.random_bool(p) {
            continue;
        }
        let common: Vec<usize> = (0..n).filter(|&x| adj[a][x] && adj[b][x]).collect();
        let closes = Subsets::new(common.len(), l - 2).any(|pick| {
            pick.iter()
                .enumerate()
                .all(|(t, &u)| pick[t + 1..].iter().all(|&v| adj[common[u]][common[v]]))
        });
        if !closes {
            adj[a][b] = true;
            adj[b][a] = true;
        }
    }
    let mut table = vec![0u64; n * (n - 1) / 2];
    for b in 1..n {
        for a in 0..b {
            table[pair_index(a, b)] = adj[a][b] as u64;
        }
    }
    let inst = ProblemInstance::new(
        n,
        l,
        QueryMode::Pairwise,
        table,
        Property::Clique,
        Family::LClique,
        Some(seed),
    )?;
    if classification_matches(&inst, planted.as_deref()) {
        Ok(inst)
    } else {
        Err(Error::GeneratorExhausted { attempts: 1 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::MarkedSet;

    #[test]
    fn zero_sum_xor_planted_is_unique() {
        let mut params = FamilyParams::new(8, 3, 7, true);
        params.bits = Some(4);
        let inst = make_family(Family::ZeroSumXor, &params).unwrap();
        assert!(matches!(inst.find_marked(), Classification::Unique(_)));
        assert!(inst.values.iter().all(|&v| v < 16));
    }

    #[test]
    fn clique_with_explicit_triangle() {
        let mut params = FamilyParams::new(5, 3, 3, true);
        params.planted = Some(vec![0, 1, 2]);
        let inst = make_family(Family::LClique, &params).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(inst.values[pair_index(a, b)], 1);
        }
        assert_eq!(
            inst.find_marked(),
            Classification::Unique(MarkedSet::new(vec![0, 1, 2], 5).unwrap())
        );
    }

    #[test]
    fn element_distinctness_without_plant_is_injective() {
        let inst = make_family(
            Family::ElementDistinctness,
            &FamilyParams::new(6, 2, 1, false),
        )
        .unwrap();
        assert_eq!(inst.find_marked(), Classification::None);
        let mut v = inst.values.clone();
        v.sort_unstable();
        v.dedup();
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn every_family_honours_the_plant_flag() {
        let fams = [
            (Family::ElementDistinctness, 2),
            (Family::LDistinctness, 3),
            (Family::ZeroSumXor, 3),
            (Family::SumModQ, 3),
            (Family::Consecutive, 3),
            (Family::LClique, 3),
        ];
        for (fam, l) in fams {
            for seed in 0..5 {
                for plant in [true, false] {
                    let params = FamilyParams::new(12, l, seed, plant);
                    let inst = make_family(fam, &params)
                        .unwrap_or_else(|e| panic!("{fam} {seed} {plant}: {e}"));
                    let c = inst.find_marked();
                    if plant {
                        assert!(
                            matches!(c, Classification::Unique(_)),
                            "{fam} seed {seed}: {c:?}"
                        );
                    } else {
                        assert_eq!(c, Classification::None, "{fam} seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_sum_xor_n16_without_plant() {
        let inst = make_family(Family::ZeroSumXor, &FamilyParams::new(16, 3, 0, false)).unwrap();
        assert_eq!(inst.find_marked(), Classification::None);
        assert_eq!(inst.property, Property::XorZero { bits: 6 });
    }

    #[test]
    fn generators_are_deterministic() {
        let p = FamilyParams::new(10, 3, 42, true);
        assert_eq!(
            make_family(Family::SumModQ, &p).unwrap(),
            make_family(Family::SumModQ, &p).unwrap()
        );
    }

    #[test]
    fn parameter_errors() {
        let mut p = FamilyParams::new(8, 3, 0, true);
        assert!(make_family(Family::ElementDistinctness, &p).is_err());
        p.bits = Some(0);
        assert!(make_family(Family::ZeroSumXor, &p).is_err());
        p.q = Some(1);
        assert!(make_family(Family::SumModQ, &p).is_err());
        p.range = Some(2);
        assert!(make_family(Family::Consecutive, &p).is_err());
        assert!(make_family(Family::Custom, &p).is_err());
        p.planted = Some(vec![1, 2]);
        assert!(make_family(Family::LDistinctness, &p).is_err());
        // two residues mod 2 among eight values always give an even pair sum
        let mut tight = FamilyParams::new(8, 2, 0, false);
        tight.q = Some(2);
        assert!(matches!(
            make_family(Family::SumModQ, &tight),
            Err(Error::GeneratorExhausted { .. })
        ));
    }

    #[test]
    fn default_widths() {
        assert_eq!(default_xor_bits(16), 6);
        assert_eq!(default_xor_bits(9), 6);
        assert_eq!(default_modulus(9), 64);
    }
}
