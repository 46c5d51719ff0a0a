//! Eigenstructure of the walk `W` and of the search operator `U P`.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::cost::t1_for;
use crate::error::{Error, Result};
use crate::reduced::{build_walk_matrix, reduced_s, ReducedBasis};
use crate::report::{ser_sig17, ser_sig17_vec};

const UNITARY_TOL: f64 = 1e-10;
/// Phases closer than this are one pole of the cotangent condition.
const CLUSTER_TOL: f64 = 1e-10;
/// Poles whose `|<w|u>|²` is below this carry no root.
const PASS_THROUGH_WEIGHT: f64 = 1e-20;
const POLE_GUARD: f64 = 1e-13;

fn wrap_phase(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(TAU) - PI;
    if y <= -PI {
        y + TAU
    } else {
        y
    }
}

/// Distance between two phases on the unit circle.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

#[derive(Debug, Clone)]
pub struct UnitaryEigen {
    /// Eigenphases in `(-π, π]`, ascending.
    pub phases: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in `phases` order.
    pub vectors: DMatrix<Complex64>,
    /// `<u_j|w>` for the current axis `w`.
    pub w_amplitudes: Vec<Complex64>,
    /// `|<w|u_j>|²`
    pub overlaps_w: Vec<f64>,
}

impl UnitaryEigen {
    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    /// Recompute the overlaps against a new unit vector `w`.
    pub fn with_axis(mut self, w: &DVector<Complex64>) -> Self {
        self.w_amplitudes = (0..self.dim())
            .map(|j| self.vectors.column(j).dotc(w))
            .collect();
        self.overlaps_w = self.w_amplitudes.iter().map(|z| z.norm_sqr()).collect();
        self
    }

    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            self.dim(),
            self.phases.iter().map(|&u| Complex64::from_polar(1.0, u)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

fn max_abs_c(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
}

pub fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    let n = u.nrows();
    max_abs_c(&(u.adjoint() * u - DMatrix::identity(n, n)))
}

/// Eigendecomposition of a small dense unitary. Real input is treated through
/// the real Schur form, pairing the `±` phases of each 2×2 rotation block.
/// Overlaps are taken against the last basis vector until [`UnitaryEigen::with_axis`].
pub fn eigendecompose_unitary(u: &DMatrix<Complex64>) -> Result<UnitaryEigen> {
    if !u.is_square() || u.nrows() == 0 {
        return Err(Error::InvalidParameters(
            "matrix must be square and nonempty".into(),
        ));
    }
    let deviation = unitarity_deviation(u);
    if deviation > UNITARY_TOL || deviation.is_nan() {
        return Err(Error::NotUnitary { deviation });
    }
    let (pairs, vectors) = if u.iter().all(|z| z.im == 0.0) {
        real_schur_pairs(&u.map(|z| z.re))
    } else {
        complex_schur_pairs(u)
    };
    let n = u.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pairs[a].total_cmp(&pairs[b]));
    let phases: Vec<f64> = order.iter().map(|&i| pairs[i]).collect();
    let sorted = DMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    let mut w = DVector::zeros(n);
    w[n - 1] = Complex64::new(1.0, 0.0);
    let eig = UnitaryEigen {
        phases,
        vectors: sorted,
        w_amplitudes: Vec::new(),
        overlaps_w: Vec::new(),
    };
    Ok(eig.with_axis(&w))
}

pub fn eigendecompose_orthogonal(u: &DMatrix<f64>) -> Result<UnitaryEigen> {
    eigendecompose_unitary(&u.map(|x| Complex64::new(x, 0.0)))
}

fn complex_schur_pairs(u: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let (q, t) = u.clone().schur().unpack();
    let phases = (0..u.nrows())
        .map(|i| wrap_phase(t[(i, i)].arg()))
        .collect();
    (phases, q)
}

fn real_schur_pairs(u: &DMatrix<f64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = u.nrows();
    let (q, t) = u.clone().schur().unpack();
    let qc = q.map(|x| Complex64::new(x, 0.0));
    let scale = t.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let mut phases = Vec::with_capacity(n);
    let mut local = DMatrix::<Complex64>::zeros(n, n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)].abs() > 1e-15 * scale {
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half = (a + d) / 2.0;
            let disc = ((a - d) / 2.0).powi(2) + b * c;
            let roots = if disc < 0.0 {
                let mu = (-disc).sqrt();
                [Complex64::new(half, mu), Complex64::new(half, -mu)]
            } else {
                let r = disc.sqrt();
                [Complex64::new(half + r, 0.0), Complex64::new(half - r, 0.0)]
            };
            for (k, lambda) in roots.iter().enumerate() {
                let v0 = [Complex64::new(b, 0.0), lambda - a];
                let v1 = [lambda - d, Complex64::new(c, 0.0)];
                let n0 = (v0[0].norm_sqr() + v0[1].norm_sqr()).sqrt();
                let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
                let (v, nv) = if n0 >= n1 { (v0, n0) } else { (v1, n1) };
                local[(i, i + k)] = v[0] / nv;
                local[(i + 1, i + k)] = v[1] / nv;
                phases.push(wrap_phase(lambda.arg()));
            }
            i += 2;
        } else {
            local[(i, i)] = Complex64::new(1.0, 0.0);
            phases.push(if t[(i, i)] < 0.0 { PI } else { 0.0 });
            i += 1;
        }
    }
    (phases, qc * local)
}

/// One pole of the cotangent condition: a cluster of (near) equal phases.
#[derive(Debug, Clone)]
struct Pole {
    phase: f64,
    weight: f64,
    members: Vec<usize>,
}

fn cluster_poles(eigen: &UnitaryEigen) -> Vec<Pole> {
    let mut clusters: Vec<Pole> = Vec::new();
    for (j, &u) in eigen.phases.iter().enumerate() {
        match clusters.last_mut() {
            Some(last)
                if phase_distance(u, eigen.phases[*last.members.last().unwrap()])
                    <= CLUSTER_TOL =>
            {
                last.members.push(j);
            }
            _ => clusters.push(Pole {
                phase: u,
                weight: 0.0,
                members: vec![j],
            }),
        }
    }
    if clusters.len() > 1 {
        let first = eigen.phases[clusters[0].members[0]];
        let last = eigen.phases[*clusters.last().unwrap().members.last().unwrap()];
        if phase_distance(first, last) <= CLUSTER_TOL {
            let tail = clusters.pop().unwrap();
            let mut members = tail.members;
            members.append(&mut clusters[0].members);
            clusters[0].members = members;
        }
    }
    for c in &mut clusters {
        c.weight = c.members.iter().map(|&j| eigen.overlaps_w[j]).sum();
        let anchor = eigen.phases[c.members[0]];
        let offset: f64 = if c.weight > 0.0 {
            c.members
                .iter()
                .map(|&j| eigen.overlaps_w[j] * wrap_phase(eigen.phases[j] - anchor))
                .sum::<f64>()
                / c.weight
        } else {
            0.0
        };
        c.phase = wrap_phase(anchor + offset);
    }
    clusters
}

#[derive(Debug, Clone)]
pub struct UPSpectrum {
    /// Roots `θ_a` of the cotangent condition, in `(-π, π]`, ascending.
    pub thetas: Vec<f64>,
    /// `R_a = |<w|θ_a>|²`
    pub r_a: Vec<f64>,
    /// `<u_j|θ_a>`, rows indexed by eigenvector of `U`, columns by root.
    pub overlaps: DMatrix<Complex64>,
    /// `|Σ_j |<w|u_j>|² cot((θ_a - u_j)/2)|` at each root.
    pub residuals: Vec<f64>,
    /// Phases of `U` eigenvectors orthogonal to `w`, kept unchanged by `UP`.
    pub pass_through: Vec<f64>,
}

impl UPSpectrum {
    /// All eigenphases of `UP`: roots plus pass-through phases, ascending.
    pub fn all_phases(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .thetas
            .iter()
            .chain(self.pass_through.iter())
            .copied()
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    /// Eigenvector `|θ_a>` in the original basis.
    pub fn eigenvector(&self, eigen: &UnitaryEigen, a: usize) -> DVector<Complex64> {
        &eigen.vectors * self.overlaps.column(a)
    }
}

/// `cot(d/2)` with `d = off + t` measured from a pole, switching to the
/// complementary distance `back - t` near the opposite end of the circle.
fn half_cot(off: f64, back: f64, t: f64) -> f64 {
    let d = off + t;
    if d <= PI {
        1.0 / (d / 2.0).tan()
    } else {
        -1.0 / ((back - t) / 2.0).tan()
    }
}

/// Eigenphases of `U (1 - 2|w><w|)` from the eigenstructure of `U`, with `w`
/// the axis used for `eigen.overlaps_w`.
pub fn up_eigenphases(eigen: &UnitaryEigen) -> Result<UPSpectrum> {
    let poles_all = cluster_poles(eigen);
    let mut pass_through = Vec::new();
    let mut poles = Vec::new();
    for p in poles_all {
        if p.weight <= PASS_THROUGH_WEIGHT {
            pass_through.extend(p.members.iter().map(|&j| eigen.phases[j]));
        } else {
            pass_through.extend(std::iter::repeat_n(p.phase, p.members.len() - 1));
            poles.push(p);
        }
    }
    let k = poles.len();
    let mut thetas = Vec::with_capacity(k);
    for i in 0..k {
        let base = poles[i].phase;
        let offs: Vec<(f64, f64, f64)> = poles
            .iter()
            .map(|p| {
                let off = (base - p.phase).rem_euclid(TAU);
                let back = if off == 0.0 {
                    TAU
                } else {
                    (p.phase - base).rem_euclid(TAU)
                };
                (p.weight, off, back)
            })
            .collect();
        let arc = if k == 1 { TAU } else { offs[(i + 1) % k].2 };
        let f = |t: f64| {
            offs.iter()
                .map(|&(w, off, back)| w * half_cot(off, back, t))
                .sum::<f64>()
        };
        let (mut lo, mut hi) = (POLE_GUARD.min(arc / 4.0), arc - POLE_GUARD.min(arc / 4.0));
        let (flo, fhi) = (f(lo), f(hi));
        let t = if flo <= 0.0 {
            lo / 2.0
        } else if fhi >= 0.0 {
            (arc + hi) / 2.0
        } else {
            if flo.is_nan() || fhi.is_nan() {
                return Err(Error::RootBracketing {
                    left: base,
                    right: base + arc,
                    detail: "cotangent sum is not finite at the guards".into(),
                });
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        thetas.push(wrap_phase(base + t));
    }
    thetas.sort_by(f64::total_cmp);

    let dim = eigen.dim();
    let mut r_a = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    let mut overlaps = DMatrix::zeros(dim, k);
    for (a, &theta) in thetas.iter().enumerate() {
        let cots: Vec<f64> = poles
            .iter()
            .map(|p| 1.0 / (wrap_phase(theta - p.phase) / 2.0).tan())
            .collect();
        let cot2: f64 = poles.iter().zip(&cots).map(|(p, c)| p.weight * c * c).sum();
        let r = 1.0 / (1.0 + cot2);
        residuals.push(
            poles
                .iter()
                .zip(&cots)
                .map(|(p, c)| p.weight * c)
                .sum::<f64>()
                .abs(),
        );
        r_a.push(r);
        let root_r = r.sqrt();
        for (p, &c) in poles.iter().zip(&cots) {
            for &j in &p.members {
                overlaps[(j, a)] = eigen.w_amplitudes[j] * root_r * Complex64::new(1.0, c);
            }
        }
    }
    Ok(UPSpectrum {
        thetas,
        r_a,
        overlaps,
        residuals,
        pass_through,
    })
}

/// `U (1 - 2|w><w|)`
pub fn reflect_about(u: &DMatrix<Complex64>, w: &DVector<Complex64>) -> DMatrix<Complex64> {
    let n = u.nrows();
    let p = DMatrix::<Complex64>::identity(n, n) - w * w.adjoint() * Complex64::new(2.0, 0.0);
    u * p
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkPhaseRow {
    pub j: usize,
    #[serde(serialize_with = "ser_sig17")]
    pub theta: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub sin_half: f64,
    /// `√(j(α+β-jαβ))`
    #[serde(serialize_with = "ser_sig17")]
    pub closed_form: f64,
    /// `2√(j/M)`
    #[serde(serialize_with = "ser_sig17")]
    pub asymptotic: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub closed_form_error: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub asymptotic_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkSpectrum {
    pub n: u64,
    pub m: u64,
    pub l: usize,
    #[serde(serialize_with = "ser_sig17_vec")]
    pub phases: Vec<f64>,
    #[serde(serialize_with = "ser_sig17_vec")]
    pub overlaps_w: Vec<f64>,
    pub rows: Vec<WalkPhaseRow>,
    /// Largest `|θ_j + θ_{-j}|` and `|<w|u_+>|² - |<w|u_->|²|` over the `±` pairs.
    #[serde(serialize_with = "ser_sig17")]
    pub pairing_error: f64,
    /// Fidelities of the `±θ_L` eigenvectors with `(|A_{L-1,1}> ± i|A_{L,0}>)/√2`.
    #[serde(serialize_with = "ser_sig17_vec")]
    pub extreme_fidelity: Vec<f64>,
    /// Whether `|sin(θ_j/2)|` matched the closed form to 1e-9 at every `j`.
    pub closed_form_exact: bool,
}

/// Fidelity `|<a|b>|²` of two unit vectors.
pub fn fidelity(a: &DVector<Complex64>, b: &DVector<Complex64>) -> f64 {
    a.dotc(b).norm_sqr()
}

pub fn walk_spectrum(n: u64, m: u64, l: usize) -> Result<WalkSpectrum> {
    let basis = ReducedBasis::new(n, m, l)?;
    let eig = eigendecompose_orthogonal(&build_walk_matrix(&basis))?;
    let dim = basis.dim();
    let mut positive: Vec<usize> = (0..dim).filter(|&i| eig.phases[i] > 1e-12).collect();
    let mut negative: Vec<usize> = (0..dim).filter(|&i| eig.phases[i] < -1e-12).collect();
    positive.sort_by(|&a, &b| eig.phases[a].total_cmp(&eig.phases[b]));
    negative.sort_by(|&a, &b| eig.phases[b].total_cmp(&eig.phases[a]));

    let mut pairing_error = if positive.len() == negative.len() && positive.len() == l {
        0.0
    } else {
        f64::INFINITY
    };
    for (&p, &q) in positive.iter().zip(&negative) {
        pairing_error = pairing_error
            .max((eig.phases[p] + eig.phases[q]).abs())
            .max((eig.overlaps_w[p] - eig.overlaps_w[q]).abs());
    }

    let (alpha, beta) = (basis.alpha, basis.beta);
    let rows: Vec<WalkPhaseRow> = positive
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let j = k + 1;
            let jf = j as f64;
            let theta = eig.phases[i];
            let sin_half = (theta / 2.0).sin().abs();
            let closed_form = (jf * (alpha + beta - jf * alpha * beta)).sqrt();
            let asymptotic = 2.0 * (jf / m as f64).sqrt();
            WalkPhaseRow {
                j,
                theta,
                sin_half,
                closed_form,
                asymptotic,
                closed_form_error: (sin_half - closed_form).abs(),
                asymptotic_error: (theta - asymptotic).abs(),
            }
        })
        .collect();

    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut targets = [DVector::zeros(dim), DVector::zeros(dim)];
    for (t, sign) in targets.iter_mut().zip([1.0, -1.0]) {
        t[basis.index(l - 1, 1)] = Complex64::new(s2, 0.0);
        t[basis.w_index()] = Complex64::new(0.0, sign * s2);
    }
    let extreme_fidelity = [positive.last(), negative.last()]
        .iter()
        .map(|idx| match idx {
            Some(&i) => {
                let v = eig.vectors.column(i).into_owned();
                fidelity(&targets[0], &v).max(fidelity(&targets[1], &v))
            }
            None => 0.0,
        })
        .collect();

    Ok(WalkSpectrum {
        n,
        m,
        l,
        closed_form_exact: rows.len() == l && rows.iter().all(|r| r.closed_form_error <= 1e-9),
        phases: eig.phases.clone(),
        overlaps_w: eig.overlaps_w.clone(),
        rows,
        pairing_error,
        extreme_fidelity,
    })
}

#[derive(Debug, Clone)]
pub struct DeltaDecomposition {
    pub c_diag: DMatrix<f64>,
    pub delta1: DMatrix<f64>,
    pub delta2: DMatrix<f64>,
    pub norm_delta1: f64,
    pub norm_delta2: f64,
    /// `‖Δ1‖ √(N-M)`
    pub scaled_delta1: f64,
    /// `‖Δ2‖ √(M+1)`
    pub scaled_delta2: f64,
    pub delta2_c: DMatrix<f64>,
    pub delta2_c_eigenvalues: Vec<Complex64>,
    /// `0` and `-2βj ± 2i√(βj(1-βj))` for `j = 1..=L`.
    pub delta2_c_expected: Vec<Complex64>,
}

fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    m.singular_values().iter().fold(0.0f64, |a, &x| a.max(x))
}

/// Largest distance from any entry of `a` to its nearest entry in `b`, both ways.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0f64, f64::max)
    };
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    one_way(a, b).max(one_way(b, a))
}

pub fn delta_decomposition(n: u64, m: u64, l: usize) -> Result<DeltaDecomposition> {
    let basis = ReducedBasis::new(n, m, l)?;
    let dim = basis.dim();
    let c_diag = DMatrix::from_diagonal(&DVector::from_iterator(
        dim,
        basis
            .labels
            .iter()
            .map(|lab| if lab.p == 0 { 1.0 } else { -1.0 }),
    ));
    let delta1 = basis.coin1() - &c_diag;
    let delta2 = basis.shifted_coin2() - &c_diag;
    let norm_delta1 = spectral_norm(&delta1);
    let norm_delta2 = spectral_norm(&delta2);
    let delta2_c = &delta2 * &c_diag;
    let delta2_c_eigenvalues: Vec<Complex64> =
        delta2_c.complex_eigenvalues().iter().copied().collect();
    let mut delta2_c_expected = vec![Complex64::default()];
    for j in 1..=l {
        let y = basis.beta * j as f64;
        let im = 2.0 * (y * (1.0 - y)).sqrt();
        delta2_c_expected.push(Complex64::new(-2.0 * y, im));
        delta2_c_expected.push(Complex64::new(-2.0 * y, -im));
    }
    Ok(DeltaDecomposition {
        scaled_delta1: norm_delta1 * ((n - m) as f64).sqrt(),
        scaled_delta2: norm_delta2 * ((m + 1) as f64).sqrt(),
        c_diag,
        delta1,
        delta2,
        norm_delta1,
        norm_delta2,
        delta2_c,
        delta2_c_eigenvalues,
        delta2_c_expected,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaSummary {
    #[serde(serialize_with = "ser_sig17")]
    pub norm_delta1: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub norm_delta2: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub scaled_delta1: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub scaled_delta2: f64,
    pub delta2_c_eigenvalues: Vec<ComplexJson>,
    #[serde(serialize_with = "ser_sig17")]
    pub eigenvalue_error: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexJson {
    #[serde(serialize_with = "ser_sig17")]
    pub re: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub im: f64,
}

impl From<&DeltaDecomposition> for DeltaSummary {
    fn from(d: &DeltaDecomposition) -> Self {
        Self {
            norm_delta1: d.norm_delta1,
            norm_delta2: d.norm_delta2,
            scaled_delta1: d.scaled_delta1,
            scaled_delta2: d.scaled_delta2,
            delta2_c_eigenvalues: d
                .delta2_c_eigenvalues
                .iter()
                .map(|z| ComplexJson { re: z.re, im: z.im })
                .collect(),
            eigenvalue_error: multiset_distance(&d.delta2_c_eigenvalues, &d.delta2_c_expected),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationReport {
    pub n: u64,
    pub m: u64,
    pub l: usize,
    pub t1: u64,
    /// `<w|s>`
    #[serde(serialize_with = "ser_sig17")]
    pub ws: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub theta_plus: f64,
    #[serde(serialize_with = "ser_sig17")]
    pub theta_minus: f64,
    /// `|θ_±| / (2<w|s>)`
    #[serde(serialize_with = "ser_sig17_vec")]
    pub ratio_ws: Vec<f64>,
    /// `|θ_±| / (2(M/N)^{L/2})`
    #[serde(serialize_with = "ser_sig17_vec")]
    pub ratio_asymptotic: Vec<f64>,
    /// Fidelities of `|θ_±>` with `(|w> ± i|s>)/√2`.
    #[serde(serialize_with = "ser_sig17_vec")]
    pub fidelity: Vec<f64>,
    /// `10 (1/M + M/N)`
    #[serde(serialize_with = "ser_sig17")]
    pub epsilon: f64,
    pub within_bounds: bool,
    #[serde(serialize_with = "ser_sig17_vec")]
    pub thetas: Vec<f64>,
    #[serde(serialize_with = "ser_sig17_vec")]
    pub r_a: Vec<f64>,
}

/// Eigenphases of `W^{t1} P` nearest zero and their eigenvectors.
pub fn algorithm_rotation(n: u64, m: u64, l: usize) -> Result<RotationReport> {
    let basis = ReducedBasis::new(n, m, l)?;
    let t1 = t1_for(m, l);
    let w = build_walk_matrix(&basis);
    let u = w.pow(t1 as u32);
    let mut axis = DVector::zeros(basis.dim());
    axis[basis.w_index()] = Complex64::new(1.0, 0.0);
    let eig = eigendecompose_orthogonal(&u)?.with_axis(&axis);
    let up = up_eigenphases(&eig)?;
    let mut by_size: Vec<usize> = (0..up.thetas.len()).collect();
    by_size.sort_by(|&a, &b| up.thetas[a].abs().total_cmp(&up.thetas[b].abs()));
    let (ia, ib) = match by_size.as_slice() {
        [a, b, ..] => (*a, *b),
        _ => {
            return Err(Error::RootBracketing {
                left: -PI,
                right: PI,
                detail: "fewer than two roots".into(),
            })
        }
    };
    let (ip, im) = if up.thetas[ia] >= up.thetas[ib] {
        (ia, ib)
    } else {
        (ib, ia)
    };

    let s = reduced_s(&basis).amps;
    let ws = s[basis.w_index()].re;
    let s2 = std::f64::consts::FRAC_1_SQRT_2;
    let target = |sign: f64| (&axis + &s * Complex64::new(0.0, sign)) * Complex64::new(s2, 0.0);
    let fid = |a: usize| {
        let v = up.eigenvector(&eig, a);
        fidelity(&target(1.0), &v).max(fidelity(&target(-1.0), &v))
    };
    let fidelity_pm = vec![fid(ip), fid(im)];
    let asym = 2.0 * (m as f64 / n as f64).powf(l as f64 / 2.0);
    let (theta_plus, theta_minus) = (up.thetas[ip], up.thetas[im]);
    let ratio_ws = vec![
        theta_plus.abs() / (2.0 * ws),
        theta_minus.abs() / (2.0 * ws),
    ];
    let ratio_asymptotic = vec![theta_plus.abs() / asym, theta_minus.abs() / asym];
    let epsilon = 10.0 * (1.0 / m as f64 + m as f64 / n as f64);
    let within_bounds = ratio_asymptotic.iter().all(|r| (r - 1.0).abs() <= epsilon)
        && fidelity_pm.iter().all(|&f| f >= 1.0 - epsilon);
    Ok(RotationReport {
        n,
        m,
        l,
        t1,
        ws,
        theta_plus,
        theta_minus,
        ratio_ws,
        ratio_asymptotic,
        fidelity: fidelity_pm,
        epsilon,
        within_bounds,
        thetas: up.thetas.clone(),
        r_a: up.r_a.clone(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub walk: WalkSpectrum,
    pub delta: DeltaSummary,
    pub rotation: RotationReport,
}

impl SpectralReport {
    pub fn compute(n: u64, m: u64, l: usize) -> Result<Self> {
        Ok(Self {
            walk: walk_spectrum(n, m, l)?,
            delta: DeltaSummary::from(&delta_decomposition(n, m, l)?),
            rotation: algorithm_rotation(n, m, l)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectral report serialization is infallible")
    }
}
