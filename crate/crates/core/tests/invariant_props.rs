//! Property tests over randomized models and instances.

use proptest::prelude::*;

use fpp_core::models::{BaseDistribution, SnRule, WeightModel};
use fpp_core::simulator::{shortest_path, Instance};

fn arb_model() -> impl Strategy<Value = WeightModel> {
    let base = prop_oneof![
        (0.2f64..5.0).prop_map(|l| BaseDistribution::uniform(l).unwrap()),
        (0.2f64..5.0).prop_map(|l| BaseDistribution::exponential(l).unwrap()),
    ];
    let rule = prop_oneof![
        (0.05f64..1.5).prop_map(|s| SnRule::constant(s).unwrap()),
        ((0.2f64..2.0), (0.55f64..0.95)).prop_map(|(c, a)| SnRule::power_of_log(c, a).unwrap()),
        (0.2f64..6.0).prop_map(|g| SnRule::gamma_over_log(g).unwrap()),
    ];
    prop_oneof![
        (base, rule).prop_map(|(b, r)| WeightModel::powered(b, r).unwrap()),
        ((0.3f64..3.0), (1.2f64..4.0)).prop_map(|(rho, a)| WeightModel::log_frechet(rho, a).unwrap()),
        (0.3f64..4.0).prop_map(|g| WeightModel::neg_power_exp(g).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantile_inverts_cdf(model in arb_model(), n in 3u64..100_000, q in 1e-6f64..0.999999) {
        let x = model.quantile(n, q).unwrap();
        let back = model.cdf(n, x);
        prop_assert!((back - q).abs() <= 1e-9 * q.max(1e-6), "q={q} x={x} back={back}");
    }

    #[test]
    fn cdf_monotone_pairs(model in arb_model(), n in 3u64..10_000, a in 0.0f64..2.0, b in 0.0f64..2.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(model.cdf(n, lo) <= model.cdf(n, hi));
    }

    #[test]
    fn scale_solves_defining_equation(model in arb_model(), n in 3u64..1_000_000) {
        let u = model.scale_un(n);
        prop_assert!((n as f64 * model.cdf(n, u) - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn optimal_path_invariants(model in arb_model(), n in 2u32..40, seed in any::<u64>()) {
        let inst = Instance::new(n, seed, model);
        let r = shortest_path(&inst);
        // Self-avoiding 1 -> 2 path.
        prop_assert_eq!(*r.path.first().unwrap(), 1);
        prop_assert_eq!(*r.path.last().unwrap(), 2);
        let mut sorted = r.path.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), r.path.len());
        prop_assert_eq!(r.hopcount as usize, r.path.len() - 1);
        // Weight is reproducible from the lazy edges.
        let recomputed = inst.path_weight(&r.path).unwrap();
        prop_assert!((recomputed - r.weight).abs() <= 1e-12 * r.weight.max(1e-300));
        // Never worse than the direct edge, equal exactly when one hop.
        prop_assert!(r.weight <= r.weight_of_direct_edge);
        prop_assert_eq!(r.hopcount == 1, r.weight == r.weight_of_direct_edge);
    }
}
