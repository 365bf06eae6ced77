use cascade_lab::cascade::{run_cascade, CascadeConfig, SurplusAssignment};
use cascade_lab::generators::erase;
use cascade_lab::graph::{DegreeSequence, MultiGraph};
use cascade_lab::harness::parse_k_grid;
use cascade_lab::removal::build_trace;
use cascade_lab::rng::stream;
use cascade_lab::stats::{ks_one_sample, ks_two_sample, Proportion};
use cascade_lab::walk::{giant_increments, sample_bridge};
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = MultiGraph> {
    (1usize..10).prop_flat_map(|n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 1..18)
            .prop_map(move |edges| MultiGraph::new(n, edges))
    })
}

/// Per component: (vertices, edges), by a plain label-propagation pass.
fn components(g: &MultiGraph) -> Vec<(usize, usize)> {
    let mut label: Vec<usize> = (0..g.n()).collect();
    loop {
        let mut changed = false;
        for &(u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            let l = label[u].min(label[v]);
            if label[u] != l || label[v] != l {
                label[u] = l;
                label[v] = l;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = vec![(0, 0); g.n()];
    for &l in &label {
        out[l].0 += 1;
    }
    for &(u, _) in g.edges() {
        out[label[u as usize]].1 += 1;
    }
    out.into_iter().filter(|c| c.0 > 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn giant_matches_recomputation(g in graph(), seed in any::<u64>()) {
        let trace = build_trace(&g, &mut stream(seed, 0)).unwrap();
        let m = g.m();
        prop_assert_eq!(trace.giant_edges().len(), m + 1);
        for i in 0..=m {
            let rest = trace.remaining_graph(i).unwrap();
            let largest = components(&rest).iter().map(|c| c.1).max().unwrap_or(0);
            prop_assert_eq!(trace.giant_edges()[i] as usize, largest, "step {}", i);
            prop_assert_eq!(i + largest + trace.outside_edges(i), m);
        }
        prop_assert!(trace.giant_edges().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(trace.forest().conservation_holds());
    }

    #[test]
    fn first_disconnect_matches_recomputation(g in graph(), seed in any::<u64>()) {
        prop_assume!(components(&g).len() == 1);
        let trace = build_trace(&g, &mut stream(seed, 1)).unwrap();
        let want = (0..=g.m())
            .find(|&i| components(&trace.remaining_graph(i).unwrap()).len() > 1)
            .unwrap_or(g.m() + 1);
        prop_assert_eq!(trace.first_disconnect(), want);
    }

    #[test]
    fn cascade_bounds(g in graph(), seed in any::<u64>(), theta in 0.05f64..3.0) {
        let mut rng = stream(seed, 2);
        let trace = build_trace(&g, &mut rng).unwrap();
        let caps = SurplusAssignment::sample(g.m(), &mut rng);
        let cfg = CascadeConfig::new(theta).unwrap();
        let r = run_cascade(&trace, &caps, &cfg).unwrap();
        prop_assert!(r.a_hat <= r.a && r.a <= g.m());
        prop_assert!(r.a_tilde <= r.a);
        // deterministic given the same inputs
        prop_assert_eq!(run_cascade(&trace, &caps, &cfg).unwrap().a, r.a);
    }

    #[test]
    fn extreme_capacities(g in graph(), seed in any::<u64>()) {
        let trace = build_trace(&g, &mut stream(seed, 3)).unwrap();
        let m = g.m();
        let cfg = CascadeConfig::new(1.0).unwrap();
        let none = SurplusAssignment::from_sorted(vec![0.0; m]).unwrap();
        prop_assert_eq!(run_cascade(&trace, &none, &cfg).unwrap().a, m);
        let full = SurplusAssignment::from_sorted(vec![1.0; m]).unwrap();
        prop_assert_eq!(run_cascade(&trace, &full, &cfg).unwrap().a, 0);
    }

    #[test]
    fn increments_sum_to_m_plus_one(g in graph(), seed in any::<u64>(), theta in 0.05f64..3.0) {
        let trace = build_trace(&g, &mut stream(seed, 4)).unwrap();
        let inc = giant_increments(&trace, theta);
        let m = g.m() as f64;
        prop_assert!((inc.sum() - (m + 1.0)).abs() <= 1e-9 * (m + 1.0));
        if theta <= m + 1.0 {
            prop_assert!(inc.values.iter().all(|&l| l >= 0.0));
        }
    }

    #[test]
    fn bridge_returns_to_zero(m in 1usize..2000, seed in any::<u64>()) {
        let path = sample_bridge(m, &mut stream(seed, 5));
        prop_assert_eq!(path.values.len(), m + 2);
        prop_assert!(path.values[m + 1].abs() < 1e-9);
    }

    #[test]
    fn erasure_is_simple(g in graph()) {
        match erase(&g) {
            Ok(h) => {
                prop_assert!(h.is_simple());
                prop_assert!(h.m() <= g.m());
            }
            Err(_) => prop_assert!(g.edges().iter().all(|&(u, v)| u == v)),
        }
    }

    #[test]
    fn wilson_brackets_estimate(trials in 1usize..5000, frac in 0.0f64..=1.0) {
        let s = ((trials as f64) * frac).floor() as usize;
        let p = Proportion::new(s, trials);
        let (lo, hi) = p.wilson95();
        prop_assert!(0.0 <= lo && lo <= p.p_hat() && p.p_hat() <= hi && hi <= 1.0);
    }

    #[test]
    fn ks_distances_in_unit_interval(a in prop::collection::vec(-5.0f64..5.0, 1..60),
                                     b in prop::collection::vec(-5.0f64..5.0, 1..60)) {
        let d = ks_two_sample(&a, &b);
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert_eq!(ks_two_sample(&a, &a), 0.0);
        let d1 = ks_one_sample(&a, |x| ((x + 5.0) / 10.0).clamp(0.0, 1.0));
        prop_assert!((0.0..=1.0).contains(&d1));
    }

    #[test]
    fn degree_text_roundtrip(degrees in prop::collection::vec(0u32..7, 1..40)) {
        let sum: u32 = degrees.iter().sum();
        prop_assume!(sum.is_multiple_of(2));
        let seq = DegreeSequence::new(degrees).unwrap();
        prop_assert_eq!(DegreeSequence::parse(&seq.to_plain_text()).unwrap(), seq.clone());
        let counted = DegreeSequence::parse(&seq.to_count_text()).unwrap();
        prop_assert_eq!(counted.counts(), seq.counts());
    }

    #[test]
    fn k_grid_accepts_increasing(ks in prop::collection::btree_set(1usize..100_000, 1..8)) {
        let text = ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_k_grid(&text).unwrap().len(), ks.len());
        let rev = ks.iter().rev().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(parse_k_grid(&rev).is_ok(), ks.len() == 1);
    }
}
