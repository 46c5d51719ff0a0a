//! State-vector simulation on the explicit bipartite subset/coin space.
//!
//! A-side basis states are pairs `(A, k)` with `|A| = M`, `k ∉ A`; B-side
//! states are `(B, k)` with `|B| = M+1`, `k ∈ B`. Function values are implied
//! by the subset, so the amplitude vectors are indexed by
//! `rank(A) * (N-M) + position of k in the complement of A` and
//! `rank(B) * (M+1) + position of k in B`, ranks being colexicographic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinat::{binomial_checked, Subsets};
use crate::error::{Error, Result};
use crate::instance::{Classification, MarkedSet, ProblemInstance};
use crate::report::{Engine, Flag, QueryCosts, RunReport};

pub const DEFAULT_AMPLITUDE_CAP: u128 = 1 << 27;
pub const MEMCAP_ENV: &str = "JOHNSON_WALK_MEMCAP";

/// Amplitude cap, overridable through `JOHNSON_WALK_MEMCAP`.
pub fn amplitude_cap() -> u128 {
    std::env::var(MEMCAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_AMPLITUDE_CAP)
}

/// Total amplitudes (both sides) for walk subset size `m`, `None` on overflow.
pub fn full_dimension(n: usize, m: usize) -> Option<u128> {
    let subsets = binomial_checked(n as u64, m as u64)? as u128;
    subsets.checked_mul((n - m) as u128)?.checked_mul(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    ASide,
    BSide,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FullState {
    pub amps_a: Vec<Complex64>,
    pub amps_b: Vec<Complex64>,
    pub side: Side,
    pub query_count: u64,
}

impl FullState {
    pub fn norm_sqr(&self) -> f64 {
        self.amps_a
            .iter()
            .chain(&self.amps_b)
            .map(|z| z.norm_sqr())
            .sum()
    }

    pub fn inner(&self, other: &FullState) -> Complex64 {
        self.amps_a
            .iter()
            .zip(&other.amps_a)
            .chain(self.amps_b.iter().zip(&other.amps_b))
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_deviation(&self, other: &FullState) -> f64 {
        self.amps_a
            .iter()
            .zip(&other.amps_a)
            .chain(self.amps_b.iter().zip(&other.amps_b))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Deliberate defects for exercising the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the mean term in the C2 diffusion.
    C2SignError,
}

/// Index tables for a fixed `(N, M)`.
#[derive(Debug, Clone)]
pub struct FullSpace {
    pub n: usize,
    pub m: usize,
    pub a_subsets: usize,
    pub b_subsets: usize,
    /// A-pair index -> B-pair index of `(A ∪ {k}, k)`.
    shift: Vec<u32>,
}

impl FullSpace {
    pub fn new(n: usize, m: usize, cap: u128) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= m < n, got n={n}, m={m}"
            )));
        }
        let requested = full_dimension(n, m).unwrap_or(u128::MAX);
        if requested > cap || requested / 2 > u32::MAX as u128 {
            return Err(Error::MemoryCap { requested, cap });
        }
        let a_subsets = binomial_checked(n as u64, m as u64).unwrap() as usize;
        let b_subsets = binomial_checked(n as u64, m as u64 + 1).unwrap() as usize;

        let binom: Vec<Vec<u64>> = (0..=n as u64)
            .map(|a| {
                (0..=m as u64 + 1)
                    .map(|k| binomial_checked(a, k).unwrap())
                    .collect()
            })
            .collect();
        let coins = n - m;
        let mut shift = vec![0u32; a_subsets * coins];
        for (rank, a) in Subsets::new(n, m).enumerate() {
            let mut t = 0;
            let mut q = 0; // elements of A below k
            for k in 0..n {
                if q < m && a[q] == k {
                    q += 1;
                    continue;
                }
                // colex rank of A ∪ {k}: k sits at position q, later elements shift up one slot
                let mut rb = binom[k][q + 1];
                for (i, &x) in a.iter().enumerate() {
                    rb += if i < q {
                        binom[x][i + 1]
                    } else {
                        binom[x][i + 2]
                    };
                }
                shift[rank * coins + t] = (rb as usize * (m + 1) + q) as u32;
                t += 1;
            }
        }
        Ok(Self {
            n,
            m,
            a_subsets,
            b_subsets,
            shift,
        })
    }

    pub fn a_len(&self) -> usize {
        self.a_subsets * (self.n - self.m)
    }

    pub fn b_len(&self) -> usize {
        self.b_subsets * (self.m + 1)
    }

    pub fn shift_index(&self, a_pair: usize) -> usize {
        self.shift[a_pair] as usize
    }

    /// Decode an A-pair index into `(A, k)`.
    pub fn a_pair(&self, index: usize) -> (Vec<usize>, usize) {
        let coins = self.n - self.m;
        let a = crate::combinat::unrank_subset((index / coins) as u64, self.m, self.n).unwrap();
        let k = (0..self.n)
            .filter(|x| !a.contains(x))
            .nth(index % coins)
            .unwrap();
        (a, k)
    }

    /// Decode a B-pair index into `(B, k)`.
    pub fn b_pair(&self, index: usize) -> (Vec<usize>, usize) {
        let b = crate::combinat::unrank_subset((index / (self.m + 1)) as u64, self.m + 1, self.n)
            .unwrap();
        let k = b[index % (self.m + 1)];
        (b, k)
    }
}

fn diffuse_blocks(amps: &mut [Complex64], block: usize, fault: bool) {
    amps.par_chunks_mut(block.max(1))
        .with_min_len(64)
        .for_each(|chunk| {
            let mean = chunk.iter().sum::<Complex64>() / block as f64;
            let twice = if fault { -2.0 * mean } else { 2.0 * mean };
            for a in chunk.iter_mut() {
                *a = twice - *a;
            }
        });
}

/// Simulator bound to one instance and walk size.
#[derive(Debug, Clone)]
pub struct FullSim<'a> {
    pub instance: &'a ProblemInstance,
    pub space: FullSpace,
    pub costs: QueryCosts,
    marked: Vec<MarkedSet>,
    /// Per A subset: does it contain some marked set?
    flip: Vec<bool>,
    fault: Option<Fault>,
}

impl<'a> FullSim<'a> {
    pub fn new(instance: &'a ProblemInstance, m: usize) -> Result<Self> {
        Self::with_cap(instance, m, amplitude_cap())
    }

    pub fn with_cap(instance: &'a ProblemInstance, m: usize, cap: u128) -> Result<Self> {
        let n = instance.n;
        if instance.l > m || m >= n {
            return Err(Error::InvalidParameters(format!(
                "need l <= m < n, got n={n}, m={m}, l={}",
                instance.l
            )));
        }
        let space = FullSpace::new(n, m, cap)?;
        let marked = instance.all_marked();
        let flip = Subsets::new(n, m)
            .map(|a| marked.iter().any(|s| s.is_subset_of(&a)))
            .collect();
        Ok(Self {
            instance,
            space,
            costs: QueryCosts::for_mode(instance.mode, m),
            marked,
            flip,
            fault: None,
        })
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn m(&self) -> usize {
        self.space.m
    }

    pub fn marked(&self) -> &[MarkedSet] {
        &self.marked
    }

    fn coins(&self) -> usize {
        self.space.n - self.space.m
    }

    /// The uniform superposition over all legal A-side pairs.
    pub fn prepare_s(&self) -> FullState {
        let len = self.space.a_len();
        let amp = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        FullState {
            amps_a: vec![amp; len],
            amps_b: vec![Complex64::default(); self.space.b_len()],
            side: Side::ASide,
            query_count: self.costs.prepare,
        }
    }

    pub fn zero_state(&self) -> FullState {
        FullState {
            amps_a: vec![Complex64::default(); self.space.a_len()],
            amps_b: vec![Complex64::default(); self.space.b_len()],
            side: Side::Mixed,
            query_count: 0,
        }
    }

    fn check_shape(&self, state: &FullState) -> Result<()> {
        if state.amps_a.len() != self.space.a_len() || state.amps_b.len() != self.space.b_len() {
            return Err(Error::MalformedState(format!(
                "expected {}+{} amplitudes, got {}+{}",
                self.space.a_len(),
                self.space.b_len(),
                state.amps_a.len(),
                state.amps_b.len()
            )));
        }
        Ok(())
    }

    /// Grover diffusion over the coins `k ∉ A`; identity on the B side.
    pub fn apply_c1(&self, state: &mut FullState) {
        diffuse_blocks(&mut state.amps_a, self.coins(), false);
    }

    /// Grover diffusion over the coins `k ∈ B`; identity on the A side.
    pub fn apply_c2(&self, state: &mut FullState) {
        diffuse_blocks(
            &mut state.amps_b,
            self.space.m + 1,
            self.fault == Some(Fault::C2SignError),
        );
    }

    /// `(A, k) <-> (A ∪ {k}, k)`. Costs one shift's worth of queries.
    pub fn apply_shift(&self, state: &mut FullState) {
        let FullState { amps_a, amps_b, .. } = state;
        for (i, a) in amps_a.iter_mut().enumerate() {
            std::mem::swap(a, &mut amps_b[self.space.shift[i] as usize]);
        }
        state.side = match state.side {
            Side::ASide => Side::BSide,
            Side::BSide => Side::ASide,
            Side::Mixed => Side::Mixed,
        };
        state.query_count += self.costs.per_shift;
    }

    /// Negate every A-side pair whose subset contains a marked set. No queries.
    pub fn apply_phase_flip(&self, state: &mut FullState) {
        let coins = self.coins();
        state
            .amps_a
            .par_chunks_mut(coins)
            .zip(self.flip.par_iter())
            .filter(|(_, f)| **f)
            .for_each(|(chunk, _)| chunk.iter_mut().for_each(|a| *a = -*a));
    }

    /// Phase flip for an explicitly given marked set.
    pub fn apply_phase_flip_for(&self, state: &mut FullState, marked: &MarkedSet) {
        let coins = self.coins();
        for (rank, a) in Subsets::new(self.space.n, self.space.m).enumerate() {
            if marked.is_subset_of(&a) {
                state.amps_a[rank * coins..(rank + 1) * coins]
                    .iter_mut()
                    .for_each(|x| *x = -*x);
            }
        }
    }

    /// One walk step `W = S C2 S C1`.
    pub fn apply_walk_step(&self, state: &mut FullState) -> Result<()> {
        self.check_shape(state)?;
        if state.side != Side::ASide {
            return Err(Error::MalformedState(format!(
                "walk step needs an A-side state, got {:?}",
                state.side
            )));
        }
        self.apply_c1(state);
        self.apply_shift(state);
        self.apply_c2(state);
        self.apply_shift(state);
        Ok(())
    }

    /// Probability that a measurement returns a subset containing a marked set.
    pub fn success_probability(&self, state: &FullState) -> f64 {
        let coins = self.coins();
        state
            .amps_a
            .chunks(coins)
            .zip(&self.flip)
            .filter(|(_, f)| **f)
            .map(|(c, _)| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .fold(0.0, |a, b| a + b)
    }

    /// `|<A_{L,0}|state>|²` for the marked set `s`.
    pub fn overlap_w(&self, state: &FullState, s: &MarkedSet) -> f64 {
        let coins = self.coins();
        let mut sum = Complex64::default();
        let mut count = 0usize;
        for (rank, a) in Subsets::new(self.space.n, self.space.m).enumerate() {
            if s.is_subset_of(&a) {
                sum += state.amps_a[rank * coins..(rank + 1) * coins]
                    .iter()
                    .sum::<Complex64>();
                count += coins;
            }
        }
        if count == 0 {
            0.0
        } else {
            sum.norm_sqr() / count as f64
        }
    }

    /// Basis index `2j + p` of the symmetric state each A-side pair belongs to.
    pub fn a_label_indices(&self, s: &MarkedSet) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.space.a_len());
        for a in Subsets::new(self.space.n, self.space.m) {
            let j = a.iter().filter(|&&x| s.contains(x)).count();
            let mut q = 0;
            for k in 0..self.space.n {
                if q < a.len() && a[q] == k {
                    q += 1;
                    continue;
                }
                out.push(2 * j + s.contains(k) as usize);
            }
        }
        out
    }

    /// `(W^t1 P)^t2 |s>` with the report.
    pub fn run(&self, t1: u64, t2: u64) -> Result<FullRun> {
        let mut state = self.prepare_s();
        for _ in 0..t2 {
            self.apply_phase_flip(&mut state);
            for _ in 0..t1 {
                self.apply_walk_step(&mut state)?;
            }
        }
        let mut flags = Vec::new();
        let overlap_w = match self.marked.len() {
            0 => {
                flags.extend([Flag::NoMarked, Flag::Unguaranteed]);
                0.0
            }
            1 => self.overlap_w(&state, &self.marked[0]),
            _ => {
                flags.extend([Flag::MultipleMarked, Flag::Unguaranteed]);
                self.overlap_w(&state, &self.marked[0])
            }
        };
        let report = RunReport {
            engine: Engine::Full,
            n: self.space.n as u64,
            m: self.space.m as u64,
            l: self.instance.l as u64,
            t1,
            t2,
            mode: self.instance.mode,
            success_probability: self.success_probability(&state),
            overlap_w,
            query_count: state.query_count,
            query_costs: self.costs,
            flags,
        };
        Ok(FullRun { report, state })
    }
}

#[derive(Debug, Clone)]
pub struct FullRun {
    pub report: RunReport,
    pub state: FullState,
}

/// Convenience wrapper: build the simulator and run.
pub fn run_algorithm(instance: &ProblemInstance, m: usize, t1: u64, t2: u64) -> Result<FullRun> {
    FullSim::new(instance, m)?.run(t1, t2)
}

/// Outcome of measuring the subset and coin registers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub side: Side,
    pub index: usize,
    pub subset: Vec<usize>,
    pub coin: usize,
}

/// Draw one `(subset, coin)` outcome from the `|amp|²` distribution.
pub fn measure_sample(space: &FullSpace, state: &FullState, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    measure_with(space, state, &mut rng)
}

/// Draw `count` outcomes with one seeded stream.
pub fn measure_many(space: &FullSpace, state: &FullState, seed: u64, count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| measure_with(space, state, &mut rng))
        .collect()
}

fn measure_with(space: &FullSpace, state: &FullState, rng: &mut ChaCha8Rng) -> Sample {
    let total = state.norm_sqr();
    let mut target = rng.random::<f64>() * total;
    let mut last_nonzero = None;
    for (side, amps) in [(Side::ASide, &state.amps_a), (Side::BSide, &state.amps_b)] {
        for (i, z) in amps.iter().enumerate() {
            let p = z.norm_sqr();
            if p > 0.0 {
                last_nonzero = Some((side, i));
                if target < p {
                    return decode(space, side, i);
                }
                target -= p;
            }
        }
    }
    // rounding left a sliver past the last bin
    let (side, i) = last_nonzero.expect("measuring the zero vector");
    decode(space, side, i)
}

fn decode(space: &FullSpace, side: Side, index: usize) -> Sample {
    let (subset, coin) = match side {
        Side::BSide => space.b_pair(index),
        _ => space.a_pair(index),
    };
    Sample {
        side,
        index,
        subset,
        coin,
    }
}

/// Classification helper used by callers that need the single marked set.
pub fn unique_marked(instance: &ProblemInstance) -> Option<MarkedSet> {
    match instance.find_marked() {
        Classification::Unique(s) => Some(s),
        _ => None,
    }
}
