use auglab::algorithms::{bit_scaling, geometric_scaling, BitScaleConfig, GeoConfig, RunOptions};
use auglab::numeric::{ceil_log2, dot};
use auglab::trace::EventKind;
use auglab::worstcase::{
    build_worstcase, predicted_adversarial_count, predicted_phase_path, verify_orderings,
    WorstCaseParams,
};
use auglab::{FeasibleSet, OraclePolicy, PotentialKind};

fn least_bit_scaling() -> BitScaleConfig {
    BitScaleConfig {
        policy: OraclePolicy::LeastImproving,
        require_applicable: false,
        ..BitScaleConfig::default()
    }
}

#[test]
fn dimension_and_binary_points() {
    for k in 2..=6 {
        let inst = build_worstcase(WorstCaseParams::new(k, 4).unwrap()).unwrap();
        assert_eq!(inst.pointset.points().len(), 2 * k);
        for y in inst.pointset.points() {
            assert_eq!(y.len(), 8 * k - 2);
            assert!(y.iter().all(|v| *v == 0 || *v == 1));
        }
    }
}

#[test]
fn each_phase_path_ends_at_the_level_optimum() {
    for (k, p) in [(2, 3), (3, 5), (4, 2), (5, 6)] {
        let params = WorstCaseParams::new(k, p).unwrap();
        let inst = build_worstcase(params).unwrap();
        for level in 1..=p {
            let c = inst.cost(level);
            let values: Vec<i128> = (1..=2 * k).map(|j| dot(c, inst.point(j))).collect();
            let best = (1..=2 * k).max_by_key(|&j| values[j - 1]).unwrap();
            assert_eq!(
                predicted_phase_path(params, level).last(),
                Some(&best),
                "k={k} level={level}"
            );
        }
    }
}

#[test]
fn orderings_hold_on_the_grid() {
    for k in 2..=7 {
        for p in 1..=9 {
            let inst = build_worstcase(WorstCaseParams::new(k, p).unwrap()).unwrap();
            let report = verify_orderings(&inst);
            assert!(
                report.all_pass(),
                "k={k} p={p}: {:?}",
                report.failures().next()
            );
            assert_eq!(report.checks.len(), p * (2 * k - 1));
        }
    }
}

#[test]
fn adversarial_bit_scaling_follows_the_predicted_path() {
    for k in 2..=5 {
        for p in 1..=6 {
            let params = WorstCaseParams::new(k, p).unwrap();
            let inst = build_worstcase(params).unwrap();
            let t = bit_scaling(
                &inst.pointset,
                &inst.start(),
                &least_bit_scaling(),
                &RunOptions::default().checked(),
            )
            .unwrap();
            assert!(t.is_optimal());
            assert_eq!(
                t.counters.n_improvements,
                predicted_adversarial_count(params)
            );
            let mut phases: Vec<Vec<usize>> = Vec::new();
            let mut at = inst.index_of(&inst.start()).unwrap();
            for e in &t.events {
                match &e.kind {
                    EventKind::PhaseStart { .. } => phases.push(vec![at]),
                    EventKind::Improvement { x, .. } => {
                        at = inst.index_of(x).unwrap();
                        phases.last_mut().unwrap().push(at);
                    }
                    _ => {}
                }
            }
            let moved: Vec<&Vec<usize>> = phases.iter().filter(|ph| ph.len() > 1).collect();
            assert_eq!(moved.len(), p);
            for (level, path) in moved.into_iter().enumerate() {
                assert_eq!(
                    path,
                    &predicted_phase_path(params, level + 1),
                    "k={k} p={p}"
                );
            }
        }
    }
}

#[test]
fn geometric_scaling_stays_short() {
    for k in 2..=5 {
        for p in [1, 4, 8] {
            let params = WorstCaseParams::new(k, p).unwrap();
            let inst = build_worstcase(params).unwrap();
            let cfg = GeoConfig {
                potential: PotentialKind::L1,
                ..GeoConfig::default()
            };
            let t = geometric_scaling(
                &inst.pointset,
                &inst.start(),
                &cfg,
                OraclePolicy::LeastImproving,
                &RunOptions::default(),
            )
            .unwrap();
            assert!(t.is_optimal());
            assert!(t.counters.n_improvements < 2 * k as u64);
            let n = params.dim() as u64;
            let log_c = ceil_log2(inst.pointset.objective().c_bit() as u128) as u64;
            assert!(predicted_adversarial_count(params) * 8 >= (n + 2) * log_c);
        }
    }
}

#[test]
fn parameters_are_validated() {
    assert!(WorstCaseParams::new(1, 3).is_err());
    assert!(WorstCaseParams::new(2, 0).is_err());
    assert!(WorstCaseParams::new(2, 62).is_err());
}
