//! Desk-scale invariant suite behind the `verify` command.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{rank_subset, unrank_subset, Subsets};
use crate::cost::{choose_parameters, loglog_slope, subset_query_count, table1, CliqueVariant};
use crate::full_sim::{Fault, FullSim, FullState, Side};
use crate::instance::{Family, ProblemInstance, Property, QueryMode};
use crate::reduced::{build_walk_matrix, embed_to_full, reduced_s, ReducedBasis, ReducedEngine};
use crate::spectral::{
    algorithm_rotation, delta_decomposition, eigendecompose_unitary, multiset_distance,
    phase_distance, reflect_about, up_eigenphases, walk_spectrum,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

/// Element-distinctness instance on 9 items whose only collision is {2, 6}.
pub fn fixture_ed9() -> ProblemInstance {
    ProblemInstance::new(
        9,
        2,
        QueryMode::Item,
        vec![10, 11, 5, 12, 13, 14, 5, 15, 16],
        Property::AllEqual,
        Family::ElementDistinctness,
        None,
    )
    .expect("fixture is valid")
}

fn random_state(sim: &FullSim<'_>, rng: &mut ChaCha8Rng, side: Side) -> FullState {
    let mut s = sim.zero_state();
    let mut fill = |v: &mut Vec<Complex64>| {
        for z in v.iter_mut() {
            *z = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    };
    match side {
        Side::ASide => fill(&mut s.amps_a),
        Side::BSide => fill(&mut s.amps_b),
        Side::Mixed => {
            fill(&mut s.amps_a);
            fill(&mut s.amps_b);
        }
    }
    let norm = s.norm_sqr().sqrt();
    s.amps_a
        .iter_mut()
        .chain(s.amps_b.iter_mut())
        .for_each(|z| *z /= norm);
    s.side = side;
    s
}

fn involution_check(fault: Option<Fault>) -> CheckResult {
    let inst = fixture_ed9();
    let mut sim = FullSim::new(&inst, 4).expect("fixture fits in memory");
    if let Some(f) = fault {
        sim = sim.with_fault(f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    type Op<'a> = (&'static str, &'a dyn Fn(&mut FullState));
    let ops: [Op<'_>; 4] = [
        ("S", &|s| sim.apply_shift(s)),
        ("C1", &|s| sim.apply_c1(s)),
        ("C2", &|s| sim.apply_c2(s)),
        ("P", &|s| sim.apply_phase_flip(s)),
    ];
    let mut failing = Vec::new();
    for (name, op) in ops {
        let mut local: f64 = 0.0;
        for _ in 0..50 {
            let x = random_state(&sim, &mut rng, Side::Mixed);
            let mut y = x.clone();
            op(&mut y);
            worst_norm = worst_norm.max((y.norm_sqr() - 1.0).abs());
            op(&mut y);
            local = local.max(y.max_deviation(&x));
        }
        if local > 1e-10 {
            failing.push(name);
        }
        worst = worst.max(local);
    }
    let passed = failing.is_empty() && worst_norm <= 1e-10;
    check(
        "reflections_square_to_identity",
        passed,
        format!(
            "max |O²x - x| = {worst:.3e}, max norm drift = {worst_norm:.3e}, failing {failing:?}"
        ),
    )
}

fn equivalence_check(fault: Option<Fault>) -> CheckResult {
    let inst = fixture_ed9();
    let mut sim = FullSim::new(&inst, 4).expect("fixture fits in memory");
    if let Some(f) = fault {
        sim = sim.with_fault(f);
    }
    let marked = sim.marked()[0].clone();
    let engine = ReducedEngine::new(ReducedBasis::new(9, 4, 2).expect("valid"));
    let mut red = reduced_s(&engine.basis);
    let mut full = sim.prepare_s();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        sim.apply_phase_flip(&mut full);
        engine.phase_flip(&mut red);
        worst = worst.max(
            embed_to_full(&red, &sim, &marked)
                .expect("shapes match")
                .max_deviation(&full),
        );
        if sim.apply_walk_step(&mut full).is_err() {
            worst = f64::INFINITY;
            break;
        }
        engine.walk_step(&mut red);
        worst = worst.max(
            embed_to_full(&red, &sim, &marked)
                .expect("shapes match")
                .max_deviation(&full),
        );
    }
    check(
        "full_reduced_equivalence",
        worst <= 1e-9,
        format!("max amplitude deviation over 50 rounds = {worst:.3e}"),
    )
}

fn query_check() -> CheckResult {
    let inst = fixture_ed9();
    let sim = FullSim::new(&inst, 4).expect("fixture fits in memory");
    let p = choose_parameters(9, 2).expect("valid");
    let run = sim.run(p.t1, p.t2).expect("A-side run");
    let mut ok = run.report.query_count == subset_query_count(&p);
    let mut detail = format!(
        "counter {} vs M + 2 t1 t2 = {}",
        run.report.query_count,
        subset_query_count(&p)
    );
    let pts: Vec<(f64, f64)> = [1e3, 1e4, 1e5, 1e6]
        .iter()
        .map(|&n| {
            (
                n,
                subset_query_count(&choose_parameters(n as u64, 2).expect("valid")) as f64,
            )
        })
        .collect();
    let slope = loglog_slope(&pts).unwrap_or(f64::NAN);
    ok &= (slope - 2.0 / 3.0).abs() <= 0.02;
    detail.push_str(&format!(", L=2 slope {slope:.4}"));
    check("query_accounting", ok, detail)
}

fn combinat_check() -> CheckResult {
    let mut ok = true;
    for (rank, subset) in Subsets::new(12, 5).enumerate() {
        ok &= rank_subset(&subset, 12).ok() == Some(rank as u64);
        ok &= unrank_subset(rank as u64, 5, 12).ok().as_deref() == Some(subset.as_slice());
    }
    check(
        "colex_bijection",
        ok,
        "rank/unrank over all 5-subsets of 12".into(),
    )
}

fn reduced_orthogonality_check() -> CheckResult {
    let mut worst: f64 = 0.0;
    for (n, l) in [(50u64, 1usize), (200, 2), (1000, 3), (1_000_000, 2)] {
        let p = choose_parameters(n, l).expect("valid");
        let basis = ReducedBasis::new(n, p.m, l).expect("valid");
        let w = build_walk_matrix(&basis);
        let dev = &w * w.transpose() - DMatrix::identity(basis.dim(), basis.dim());
        worst = worst.max(dev.iter().fold(0.0f64, |a, x| a.max(x.abs())));
    }
    check(
        "reduced_walk_orthogonal",
        worst <= 1e-12,
        format!("max |W Wᵀ - I| = {worst:.3e}"),
    )
}

fn spectrum_check() -> CheckResult {
    let mut worst: f64 = 0.0;
    for (n, l) in [(3u64, 1usize), (50, 1), (50, 2), (200, 2), (1000, 3)] {
        let m = if n == 3 {
            1
        } else {
            choose_parameters(n, l).expect("valid").m
        };
        let s = walk_spectrum(n, m, l).expect("valid");
        for r in &s.rows {
            worst = worst.max(r.closed_form_error);
        }
        worst = worst.max(s.pairing_error);
    }
    check(
        "walk_spectrum_closed_form",
        worst <= 1e-9,
        format!("max |sin(θ/2) - s_j| = {worst:.3e}"),
    )
}

fn delta_check() -> CheckResult {
    let mut worst: f64 = 0.0;
    for (n, m, l) in [(50u64, 14u64, 2usize), (1000, 100, 3), (9, 4, 2)] {
        let d = delta_decomposition(n, m, l).expect("valid");
        worst = worst.max(multiset_distance(
            &d.delta2_c_eigenvalues,
            &d.delta2_c_expected,
        ));
    }
    check(
        "delta_decomposition",
        worst <= 1e-10,
        format!("max eigenvalue error = {worst:.3e}"),
    )
}

fn root_finder_check() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for t in 0..20 {
        let d = 2 + t % 14;
        let g = DMatrix::from_fn(d, d, |_, _| rng.random::<f64>() - 0.5);
        let u = g.qr().q().map(|x| Complex64::new(x, 0.0));
        let w =
            DVector::from_fn(d, |_, _| Complex64::new(rng.random::<f64>() - 0.5, 0.0)).normalize();
        let (Ok(e), Ok(direct)) = (
            eigendecompose_unitary(&u),
            eigendecompose_unitary(&reflect_about(&u, &w)),
        ) else {
            worst = f64::INFINITY;
            break;
        };
        let Ok(up) = up_eigenphases(&e.with_axis(&w)) else {
            worst = f64::INFINITY;
            break;
        };
        let roots = up.all_phases();
        if roots.len() != direct.phases.len() {
            worst = f64::INFINITY;
            break;
        }
        for x in &roots {
            let nearest = direct
                .phases
                .iter()
                .map(|y| phase_distance(*x, *y))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    check(
        "up_root_finder",
        worst <= 1e-9,
        format!("max root error vs direct diagonalization = {worst:.3e}"),
    )
}

fn rotation_check() -> CheckResult {
    match algorithm_rotation(10_000, 464, 2) {
        Ok(r) => {
            let ok = r.ratio_ws.iter().all(|x| (x - 1.0).abs() <= 0.05) && r.within_bounds;
            check(
                "search_rotation_angle",
                ok,
                format!(
                    "θ± = {:.6}, {:.6}; ratios {:?}",
                    r.theta_plus, r.theta_minus, r.ratio_ws
                ),
            )
        }
        Err(e) => check("search_rotation_angle", false, e.to_string()),
    }
}

fn final_overlap_check() -> CheckResult {
    let p = choose_parameters(1_000_000, 2).expect("valid");
    let basis = ReducedBasis::new(p.n, p.m, 2).expect("valid");
    let run = ReducedEngine::new(basis).run(p.t1, p.t2);
    check(
        "final_overlap",
        run.report.overlap_w >= 0.97,
        format!("overlap_w = {:.6} at N=1e6, L=2", run.report.overlap_w),
    )
}

fn table_check() -> CheckResult {
    let expect = [
        (4, 3, 1, 1),
        (3, 2, 13, 10),
        (8, 5, 3, 2),
        (5, 3, 23, 14),
        (12, 7, 7, 4),
        (7, 4, 33, 18),
    ];
    let rows = table1();
    let ok = rows.iter().zip(expect).all(|(r, (a, b, c, d))| {
        r.simple_exponent == Ratio::new(a, b)
            && r.recursive_exponent == Ratio::new(c, d)
            && r.mss_exponent == CliqueVariant::Mss.exponent(r.l)
    });
    check("clique_exponent_table", ok, format!("{} rows", rows.len()))
}

/// Run the whole suite; `fault` is injected into the full engine only.
pub fn run_checks(fault: Option<Fault>) -> Vec<CheckResult> {
    vec![
        combinat_check(),
        involution_check(fault),
        equivalence_check(fault),
        query_check(),
        reduced_orthogonality_check(),
        spectrum_check(),
        delta_check(),
        root_finder_check(),
        rotation_check(),
        final_overlap_check(),
        table_check(),
    ]
}
