use iris_core::det::{brute_force_minmax_regret, brute_force_ris, enumerate_feasible, solve_bnb};
use iris_core::heuristics::{crossover, mutate};
use iris_core::io::{instance_to_json, parse_instance};
use iris_core::regret::cut_objective_coefficients;
use iris_core::{
    cost_of, evaluate_regret, generate_instance, is_feasible, minmax_regret, worst_case_scenario, GenParams, Instance,
    Mode, RisDispatcher, RisSolver, RobustStatus, Scenario, Selection, SolverConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params() -> impl Strategy<Value = GenParams> {
    (1usize..=4, 1usize..=5, any::<bool>(), any::<u64>(), 0usize..=8)
        .prop_flat_map(|(m, r, transitive, seed, k)| {
            let mode = if transitive { Mode::Transitive } else { Mode::Normal };
            (1..=r.min(3)).prop_map(move |p| {
                let mut params = GenParams::new(m, r, p, 0, mode, seed);
                params.k_pairs = k.min(params.cross_pairs() as usize);
                params
            })
        })
}

fn instance() -> impl Strategy<Value = Instance> {
    params().prop_map(|p| generate_instance(&p).unwrap())
}

fn scenario(inst: &Instance, seed: u64) -> Scenario {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Scenario::new(inst.intervals().iter().map(|iv| rng.gen_range(iv.lo..=iv.hi)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_instances_are_valid(p in params()) {
        let inst = generate_instance(&p).unwrap();
        prop_assert!(!inst.validate().has_errors());
        prop_assert_eq!(inst.n_sets(), p.m);
        prop_assert!(inst.sets().iter().all(|s| s.quota == p.p && s.items.len() == p.r));
        prop_assert!(inst.intervals().iter().all(|iv| iv.lo <= iv.hi));
        let cross = inst.forbidden().iter().filter(|f| !f.is_same_set()).count();
        match p.mode {
            Mode::Normal => prop_assert_eq!(inst.forbidden().len(), p.k_pairs),
            Mode::Transitive => prop_assert!(cross >= p.k_pairs),
        }
        prop_assert_eq!(instance_to_json(&generate_instance(&p).unwrap()), instance_to_json(&inst));
    }

    #[test]
    fn json_round_trip(inst in instance()) {
        let back = parse_instance(&instance_to_json(&inst)).unwrap();
        prop_assert_eq!(back.intervals(), inst.intervals());
        prop_assert_eq!(back.forbidden(), inst.forbidden());
    }

    #[test]
    fn dispatcher_and_bnb_match_enumeration(inst in instance(), seed in any::<u64>()) {
        let sc = scenario(&inst, seed);
        let want = brute_force_ris(&inst, &sc).unwrap().value();
        prop_assert_eq!(RisDispatcher::for_instance(&inst).solve(&inst, &sc).unwrap().value(), want);
        prop_assert_eq!(solve_bnb(&inst, &sc, None).value(), want);
    }

    #[test]
    fn cut_form_is_regret_against_alternative(inst in instance(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let feasible = enumerate_feasible(&inst).unwrap();
        prop_assume!(!feasible.is_empty());
        let x = Selection::from_flat(&inst, feasible[i.index(feasible.len())].iter().copied());
        let y = Selection::from_flat(&inst, feasible[j.index(feasible.len())].iter().copied());
        let c = worst_case_scenario(&inst, &x);
        let form = cut_objective_coefficients(&inst, &y);
        prop_assert_eq!(form.eval(&inst, &x), cost_of(&inst, &c, &x) - cost_of(&inst, &c, &y));
    }

    #[test]
    fn regret_is_nonnegative_and_tight(inst in instance(), i in any::<prop::sample::Index>()) {
        let feasible = enumerate_feasible(&inst).unwrap();
        prop_assume!(!feasible.is_empty());
        let x = Selection::from_flat(&inst, feasible[i.index(feasible.len())].iter().copied());
        let report = evaluate_regret(&inst, &x, &RisDispatcher::for_instance(&inst)).unwrap();
        prop_assert!(report.regret >= 0);
        prop_assert!(is_feasible(&inst, &report.witness));
        let c = worst_case_scenario(&inst, &x);
        for y in &feasible {
            let y = Selection::from_flat(&inst, y.iter().copied());
            prop_assert!(cost_of(&inst, &c, &x) - cost_of(&inst, &c, &y) <= report.regret);
        }
    }

    #[test]
    fn operators_keep_feasibility(inst in instance(), seed in any::<u64>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let feasible = enumerate_feasible(&inst).unwrap();
        prop_assume!(!feasible.is_empty());
        let x1 = Selection::from_flat(&inst, feasible[i.index(feasible.len())].iter().copied());
        let x2 = Selection::from_flat(&inst, feasible[j.index(feasible.len())].iter().copied());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = mutate(&inst, &x1, &mut rng);
        prop_assert!(m.is_well_formed(&inst) && is_feasible(&inst, &m));
        let c = crossover(&inst, &x1, &x2, &mut rng);
        prop_assert!(c.is_well_formed(&inst) && is_feasible(&inst, &c));
        for (s, items) in c.chosen().iter().enumerate() {
            prop_assert!(items == &x1.chosen()[s] || items == &x2.chosen()[s]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cut_generation_matches_enumeration(inst in instance(), seed in any::<u64>(), heuristics in any::<bool>()) {
        let config = SolverConfig { heuristics, ..SolverConfig::default().seeded(seed) };
        match (minmax_regret(&inst, &config), brute_force_minmax_regret(&inst)) {
            (Ok(got), Ok(want)) => {
                prop_assert_eq!(got.status, RobustStatus::Optimal);
                prop_assert_eq!(got.regret, want.regret);
                prop_assert!(is_feasible(&inst, &got.x_star));
            }
            (Err(_), Err(_)) => {}
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got.map(|r| r.regret), want.map(|r| r.regret)),
        }
    }
}
