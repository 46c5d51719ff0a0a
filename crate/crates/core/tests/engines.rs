use johnson_walk::families::{make_family, FamilyParams};
use johnson_walk::full_sim::FullSim;
use johnson_walk::instance::{Family, ProblemInstance, Property, QueryMode};
use johnson_walk::reduced::{embed_to_full, ReducedBasis, ReducedEngine};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ITEM_FAMILIES: [Family; 5] = [
    Family::ElementDistinctness,
    Family::LDistinctness,
    Family::ZeroSumXor,
    Family::SumModQ,
    Family::Consecutive,
];

fn family_for(index: usize, l: usize) -> Family {
    match ITEM_FAMILIES[index % ITEM_FAMILIES.len()] {
        Family::ElementDistinctness if l != 2 => Family::LDistinctness,
        f => f,
    }
}

fn unique_instance(family: Family, n: usize, l: usize, seed: u64) -> Option<ProblemInstance> {
    let inst = make_family(family, &FamilyParams::new(n, l, seed, true)).ok()?;
    (inst.all_marked().len() == 1).then_some(inst)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn full_and_reduced_agree_step_by_step(
        fam in 0usize..5,
        n in 6usize..=10,
        l in 1usize..=3,
        mfrac in 0.0f64..1.0,
        t1 in 0u64..5,
        t2 in 0u64..4,
        seed in 0u64..1000,
    ) {
        prop_assume!(n > 2 * l);
        let Some(inst) = unique_instance(family_for(fam, l), n, l, seed) else {
            return Ok(());
        };
        let m = l + (mfrac * (n - 2 * l) as f64) as usize;
        let sim = FullSim::new(&inst, m).unwrap();
        let marked = sim.marked()[0].clone();
        let engine = ReducedEngine::new(ReducedBasis::new(n as u64, m as u64, l).unwrap());
        let mut full = sim.prepare_s();
        let mut red = johnson_walk::reduced::reduced_s(&engine.basis);
        for _ in 0..t2 {
            sim.apply_phase_flip(&mut full);
            engine.phase_flip(&mut red);
            for _ in 0..t1 {
                sim.apply_walk_step(&mut full).unwrap();
                engine.walk_step(&mut red);
                prop_assert!(embed_to_full(&red, &sim, &marked).unwrap().max_deviation(&full) <= 1e-9);
            }
        }
        let a = sim.run(t1, t2).unwrap().report;
        let b = engine.run(t1, t2).report;
        prop_assert!((a.overlap_w - b.overlap_w).abs() <= 1e-12);
        prop_assert!((a.success_probability - b.success_probability).abs() <= 1e-12);
        prop_assert_eq!(a.query_count, b.query_count);
    }

    #[test]
    fn relabeling_the_domain_leaves_success_unchanged(
        n in 6usize..=10,
        l in 2usize..=3,
        seed in 0u64..500,
        perm_seed in 0u64..500,
        t1 in 1u64..4,
        t2 in 1u64..4,
    ) {
        let Some(inst) = unique_instance(Family::LDistinctness, n, l, seed) else {
            return Ok(());
        };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let mut values = vec![0; n];
        for (i, &v) in inst.values.iter().enumerate() {
            values[perm[i]] = v;
        }
        let moved = ProblemInstance::new(n, l, QueryMode::Item, values, Property::AllEqual, inst.family, None).unwrap();
        let m = (n / 2).max(l);
        let a = FullSim::new(&inst, m).unwrap().run(t1, t2).unwrap().report;
        let b = FullSim::new(&moved, m).unwrap().run(t1, t2).unwrap().report;
        prop_assert!((a.success_probability - b.success_probability).abs() <= 1e-12);
        prop_assert!((a.overlap_w - b.overlap_w).abs() <= 1e-12);
    }

    #[test]
    fn query_counter_is_exact(
        n in 5usize..=9,
        l in 1usize..=2,
        mfrac in 0.0f64..1.0,
        t1 in 0u64..6,
        t2 in 0u64..6,
        seed in 0u64..100,
    ) {
        let m = l + (mfrac * (n - 1 - l) as f64) as usize;
        let item = make_family(Family::LDistinctness, &FamilyParams::new(n, l.max(2), seed, true)).unwrap();
        let run = FullSim::new(&item, m.max(2)).unwrap().run(t1, t2).unwrap();
        let mm = m.max(2) as u64;
        prop_assert_eq!(run.report.query_count, mm + 2 * t1 * t2);

        let graph = make_family(Family::LClique, &FamilyParams::new(n, 3, seed, true)).unwrap();
        let gm = m.max(3) as u64;
        let run = FullSim::new(&graph, gm as usize).unwrap().run(t1, t2).unwrap();
        prop_assert_eq!(run.report.query_count, gm * (gm - 1) / 2 + 2 * t1 * t2 * gm);
    }

    #[test]
    fn walk_preserves_norm(seed in 0u64..200, steps in 1usize..20) {
        let inst = make_family(Family::ZeroSumXor, &FamilyParams::new(8, 3, seed, true)).unwrap();
        let sim = FullSim::new(&inst, 4).unwrap();
        let mut s = sim.prepare_s();
        for _ in 0..steps {
            sim.apply_phase_flip(&mut s);
            sim.apply_walk_step(&mut s).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() <= 1e-10);
    }
}
