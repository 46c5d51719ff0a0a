//! The walk restricted to the (2L+1)-dimensional symmetric subspace.
//!
//! A-side basis `|A_{j,p}>` is ordered (0,0),(0,1),...,(L-1,0),(L-1,1),(L,0),
//! so `(j,p)` sits at index `2j + p` and the marked direction `|w> = |A_{L,0}>`
//! is the last entry. B-side states only appear while assembling `W`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::combinat::{a_labels, b_labels, weight, Label, NormConstants};
use crate::error::{Error, Result};
use crate::full_sim::{FullSim, FullState, Side};
use crate::instance::{MarkedSet, QueryMode};
use crate::report::{Engine, Flag, QueryCosts, RunReport};

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedBasis {
    pub n: u64,
    pub m: u64,
    pub l: usize,
    pub labels: Vec<Label>,
    /// `1 / (N - M)`
    pub alpha: f64,
    /// `1 / (M + 1)`
    pub beta: f64,
}

impl ReducedBasis {
    pub fn new(n: u64, m: u64, l: usize) -> Result<Self> {
        if l == 0 || l as u64 > m || m >= n || n - m < l as u64 {
            return Err(Error::InvalidParameters(format!(
                "need 1 <= l <= m and l <= n - m, got n={n}, m={m}, l={l}"
            )));
        }
        Ok(Self {
            n,
            m,
            l,
            labels: a_labels(l),
            alpha: 1.0 / (n - m) as f64,
            beta: 1.0 / (m + 1) as f64,
        })
    }

    pub fn dim(&self) -> usize {
        2 * self.l + 1
    }

    pub fn index(&self, j: usize, p: u8) -> usize {
        2 * j + p as usize
    }

    /// Index of `|w> = |A_{L,0}>`.
    pub fn w_index(&self) -> usize {
        2 * self.l
    }

    fn b_index(j: usize, p: u8) -> usize {
        if j == 0 {
            0
        } else {
            2 * j - 1 + p as usize
        }
    }

    /// Coin C1 on the A basis, with entries `1-2α(L-j)`, `2√(α(L-j)(1-α(L-j)))`, `2α(L-j)-1`.
    pub fn coin1(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.dim(), self.dim());
        for j in 0..self.l {
            let x = self.alpha * (self.l - j) as f64;
            let (i0, i1) = (self.index(j, 0), self.index(j, 1));
            let off = 2.0 * (x * (1.0 - x)).max(0.0).sqrt();
            c[(i0, i0)] = 1.0 - 2.0 * x;
            c[(i1, i1)] = 2.0 * x - 1.0;
            c[(i0, i1)] = off;
            c[(i1, i0)] = off;
        }
        let w = self.w_index();
        c[(w, w)] = 1.0;
        c
    }

    /// Coin C2 on the B basis, with entries `1-2βj`, `2√(βj(1-βj))`, `2βj-1`.
    pub fn coin2_b(&self) -> DMatrix<f64> {
        let mut c = DMatrix::zeros(self.dim(), self.dim());
        c[(0, 0)] = 1.0;
        for j in 1..=self.l {
            let y = self.beta * j as f64;
            let (i0, i1) = (Self::b_index(j, 0), Self::b_index(j, 1));
            let off = 2.0 * (y * (1.0 - y)).max(0.0).sqrt();
            c[(i0, i0)] = 1.0 - 2.0 * y;
            c[(i1, i1)] = 2.0 * y - 1.0;
            c[(i0, i1)] = off;
            c[(i1, i0)] = off;
        }
        c
    }

    /// Shift as an A -> B map: `A_{j,0} -> B_{j,0}`, `A_{j,1} -> B_{j+1,1}`.
    pub fn shift_a_to_b(&self) -> DMatrix<f64> {
        let mut s = DMatrix::zeros(self.dim(), self.dim());
        for lab in &self.labels {
            let target = match lab.p {
                0 => Self::b_index(lab.j, 0),
                _ => Self::b_index(lab.j + 1, 1),
            };
            s[(target, self.index(lab.j, lab.p))] = 1.0;
        }
        s
    }

    /// `S C2 S` seen on the A side.
    pub fn shifted_coin2(&self) -> DMatrix<f64> {
        let s = self.shift_a_to_b();
        s.transpose() * self.coin2_b() * s
    }

    /// B-side labels in the order used by [`Self::coin2_b`].
    pub fn b_labels(&self) -> Vec<Label> {
        b_labels(self.l)
    }
}

/// `W = (S C2 S) C1` on the symmetric A-side subspace.
pub fn build_walk_matrix(basis: &ReducedBasis) -> DMatrix<f64> {
    basis.shifted_coin2() * basis.coin1()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub amps: DVector<Complex64>,
}

impl ReducedState {
    pub fn basis_vector(basis: &ReducedBasis, index: usize) -> Self {
        let mut amps = DVector::zeros(basis.dim());
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn apply(&mut self, matrix: &DMatrix<f64>) {
        let m = matrix.map(|x| Complex64::new(x, 0.0));
        self.amps = m * &self.amps;
    }
}

/// `|s>` in the reduced basis: amplitude `√(c_{j,p}/c)` on each label.
pub fn reduced_s(basis: &ReducedBasis) -> ReducedState {
    let amps = DVector::from_iterator(
        basis.dim(),
        basis.labels.iter().map(|lab| {
            Complex64::new(
                weight(basis.n, basis.m, basis.l as u64, lab.j, lab.p).sqrt(),
                0.0,
            )
        }),
    );
    ReducedState { amps }
}

/// Negate the `(L,0)` amplitude.
pub fn apply_phase_flip_reduced(basis: &ReducedBasis, state: &mut ReducedState) {
    let w = basis.w_index();
    state.amps[w] = -state.amps[w];
}

/// A reusable walk operator for a fixed basis.
#[derive(Debug, Clone)]
pub struct ReducedEngine {
    pub basis: ReducedBasis,
    walk: DMatrix<Complex64>,
}

impl ReducedEngine {
    pub fn new(basis: ReducedBasis) -> Self {
        let walk = build_walk_matrix(&basis).map(|x| Complex64::new(x, 0.0));
        Self { basis, walk }
    }

    pub fn walk_step(&self, state: &mut ReducedState) {
        state.amps = &self.walk * &state.amps;
    }

    pub fn phase_flip(&self, state: &mut ReducedState) {
        apply_phase_flip_reduced(&self.basis, state);
    }

    /// `(W^t1 P)^t2 |s>` by repeated multiplication.
    pub fn run(&self, t1: u64, t2: u64) -> ReducedRun {
        let mut state = reduced_s(&self.basis);
        for _ in 0..t2 {
            self.phase_flip(&mut state);
            for _ in 0..t1 {
                self.walk_step(&mut state);
            }
        }
        let overlap_w = state.amps[self.basis.w_index()].norm_sqr();
        let costs = QueryCosts::for_mode(QueryMode::Item, self.basis.m as usize);
        let report = RunReport {
            engine: Engine::Reduced,
            n: self.basis.n,
            m: self.basis.m,
            l: self.basis.l as u64,
            t1,
            t2,
            mode: QueryMode::Item,
            success_probability: overlap_w,
            overlap_w,
            query_count: costs.prepare + 2 * t1 * t2 * costs.per_shift,
            query_costs: costs,
            flags: vec![Flag::ModeledQueries],
        };
        ReducedRun { report, state }
    }
}

#[derive(Debug, Clone)]
pub struct ReducedRun {
    pub report: RunReport,
    pub state: ReducedState,
}

pub fn run_reduced(basis: &ReducedBasis, t1: u64, t2: u64) -> ReducedRun {
    ReducedEngine::new(basis.clone()).run(t1, t2)
}

/// Expand a reduced state into the full space: each `|A_{j,p}>` becomes the
/// uniform superposition over its `c_{j,p}` pairs.
pub fn embed_to_full(
    state: &ReducedState,
    sim: &FullSim<'_>,
    marked: &MarkedSet,
) -> Result<FullState> {
    let n = sim.space.n as u64;
    let m = sim.space.m as u64;
    let l = marked.len();
    if l != sim.instance.l || state.amps.len() != 2 * l + 1 {
        return Err(Error::MalformedState(format!(
            "reduced state of length {} does not match L = {}",
            state.amps.len(),
            sim.instance.l
        )));
    }
    let consts = NormConstants::new(n, m, l as u64)?;
    let scale: Vec<Complex64> = a_labels(l)
        .iter()
        .enumerate()
        .map(|(i, lab)| {
            let c = consts.c(lab.j, lab.p).to_f64().unwrap_or(0.0);
            if c > 0.0 {
                state.amps[i] / c.sqrt()
            } else {
                Complex64::default()
            }
        })
        .collect();
    let mut out = sim.zero_state();
    for (amp, lab) in out.amps_a.iter_mut().zip(sim.a_label_indices(marked)) {
        *amp = scale[lab];
    }
    out.side = Side::ASide;
    Ok(out)
}
