mod common;

use bosonic_tradeoff::finite_dim::{cqe_region_bounds_fd, ensemble_entropies, protocol_rates};
use bosonic_tradeoff::regions::{
    ce_frontier, cq_frontier, cq_timeshare_corners, cqe_bounds, max_first_given_second, minkowski_sum, rp_frontier,
    rps_bounds, timeshare_companion_at, BoundTriple, PointOrigin,
};
use bosonic_tradeoff::rule_of_thumb::taylor_lower_bound_at;
use bosonic_tradeoff::{
    classical_capacity, ea_classical_capacity, g_inverse, lambda_star, quantum_capacity, EntropyBits, EpsilonGap,
    Frontier, RateTriple, RegionTag, ShareGrid, ShareParam, Slice,
};
use common::{g, random_channel, random_ensemble, random_unitary, setup};
use proptest::prelude::*;

fn small_grid() -> ShareGrid {
    ShareGrid::log_spaced(64, 1e-6).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn g_inverse_round_trips(log_h in (1e-6f64).log10()..(60f64).log10()) {
        let h = 10f64.powf(log_h);
        let n = g_inverse(EntropyBits::new(h).unwrap()).unwrap();
        prop_assert!((g(n.value()) - h).abs() <= 1e-9);
    }

    #[test]
    fn g_is_strictly_increasing(a in 0.0f64..1e6, frac in 1e-9f64..1.0) {
        let b = a + frac * (1.0 + a);
        prop_assert!(g(a) < g(b));
    }

    #[test]
    fn g_is_concave(x in 1e-3f64..1e4, rel in 1e-3f64..0.5) {
        let h = rel * x;
        let dd = g(x + h) - 2.0 * g(x) + g(x - h);
        prop_assert!(dd <= 1e-12 * g(x).max(1.0), "second difference {dd}");
    }

    #[test]
    fn assistance_never_hurts(eta in 0.01f64..0.999, ns in 1e-3f64..1e4) {
        let (c, p) = setup(eta, ns);
        prop_assert!(ea_classical_capacity(c, p).rate.value() >= classical_capacity(c, p).value());
    }

    #[test]
    fn face_inequality_chain(eta in 0.5f64..1.0, ns in 1e-2f64..1e4, lambda in 0.0f64..=1.0, q_frac in 0.0f64..=1.0) {
        let (c, p) = setup(eta, ns);
        let s = ShareParam::new(lambda).unwrap();
        let b = cqe_bounds(c, p, s);
        let r = rps_bounds(c, p, s);
        let q = q_frac * b.b2;
        // b1 - b3 = g(lambda N) >= b2, so b1 - 2Q >= b3 - Q whenever Q <= b2
        prop_assert!(b.b1 - b.b3 - b.b2 >= -1e-12);
        prop_assert!(b.b1 - 2.0 * q >= b.b3 - q - 1e-12);
        prop_assert!(r.b1 - q >= r.b3 - q - 1e-12);
        prop_assert_eq!(b.b2, r.b2);
        prop_assert_eq!(b.b3, r.b3);
    }

    #[test]
    fn frontier_points_are_in_their_region(eta in 0.05f64..=1.0, ns in 1e-2f64..1e3) {
        let (c, p) = setup(eta, ns);
        let grid = small_grid();
        for f in [cq_frontier(c, p, &grid), rp_frontier(c, p, &grid), ce_frontier(c, p, &grid)] {
            prop_assert!(f.is_strict_pareto());
            for pt in &f.points {
                let PointOrigin::Sharing { bounds, .. } = pt.origin else { panic!("sweep point without share") };
                prop_assert!(pt.rates.satisfies(&bounds, 1e-9), "{:?}", pt);
            }
        }
    }

    #[test]
    fn frontier_endpoints_match_capacities(eta in 0.05f64..=1.0, ns in 1e-2f64..1e4) {
        let (c, p) = setup(eta, ns);
        let f = cq_frontier(c, p, &small_grid());
        let first = &f.points[0].rates;
        let last = &f.points[f.len() - 1].rates;
        if quantum_capacity(c, p).value() > 0.0 {
            prop_assert!((first.first - classical_capacity(c, p).value()).abs() <= 1e-9);
            prop_assert!(first.second.abs() <= 1e-9);
            prop_assert!((last.second - quantum_capacity(c, p).value()).abs() <= 1e-9);
            prop_assert!(last.first.abs() <= 1e-9);
        } else {
            prop_assert_eq!(f.len(), 1);
            prop_assert!((first.first - classical_capacity(c, p).value()).abs() <= 1e-9);
        }
    }

    #[test]
    fn tradeoff_beats_timesharing(q_frac in 0.01f64..0.99) {
        let (c, p) = setup(0.75, 200.0);
        let (a, b) = cq_timeshare_corners(c, p);
        let q = q_frac * quantum_capacity(c, p).value();
        let best = max_first_given_second(RegionTag::Cqe, c, p, q, &small_grid()).unwrap();
        prop_assert!(best.rate > timeshare_companion_at(Slice::Cq, a, b, q).unwrap());
    }

    #[test]
    fn singleton_sum_translates(eta in 0.55f64..0.95, ns in 0.1f64..300.0, dc in -5.0f64..5.0, dq in -5.0f64..5.0) {
        let (c, p) = setup(eta, ns);
        let f = cq_frontier(c, p, &small_grid());
        let v = RateTriple::new(RegionTag::Cqe, dc, dq, 0.0);
        let sum = minkowski_sum(&f, &Frontier::singleton(Slice::Cq, v)).unwrap();
        prop_assert_eq!(sum.len(), f.len());
        for (s, o) in sum.points.iter().zip(&f.points) {
            prop_assert_eq!(s.rates.first, o.rates.first + dc);
            prop_assert_eq!(s.rates.second, o.rates.second + dq);
        }
    }

    #[test]
    fn taylor_bound_never_exceeds_truth(eta in prop::sample::select(vec![0.6, 0.75, 0.9]), log_x in (20f64).log10()..4.0) {
        let x = 10f64.powf(log_x);
        let c = bosonic_tradeoff::ChannelSpec::new(eta).unwrap();
        let q = g(eta * x) - g((1.0 - eta) * x);
        prop_assert!(q >= taylor_lower_bound_at(c, x).unwrap());
    }

    #[test]
    fn lambda_star_reaches_within_two_epsilon(
        eta in prop::sample::select(vec![0.6, 0.75, 0.9]),
        log_ns in 1.5f64..4.0,
        eps in 0.01f64..0.5,
    ) {
        let (c, p) = setup(eta, 10f64.powf(log_ns));
        let s = lambda_star(c, p, EpsilonGap::new(eps).unwrap()).unwrap();
        let x = s.lambda() * p.ns();
        prop_assume!(s.lambda() < 1.0 && x >= 20.0);
        let q_max = (eta / (1.0 - eta)).log2();
        prop_assert!(g(eta * x) - g((1.0 - eta) * x) >= q_max - 2.0 * eps);
    }
}

fn assert_close(a: BoundTriple, b: BoundTriple, tol: f64) {
    for (x, y) in [(a.b1, b.b1), (a.b2, b.b2), (a.b3, b.b3)] {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rates_and_bounds_are_consistent(seed in any::<u64>(), d_in in 2usize..=4, d_out in 2usize..=4, k in 1usize..=4, members in 1usize..=4) {
        prop_assume!(d_out * k >= d_in);
        let ch = random_channel(seed, d_in, d_out, k);
        let ens = random_ensemble(seed, d_in, members);
        let r = protocol_rates(&ch, &ens).unwrap();
        let b = cqe_region_bounds_fd(&ch, &ens).unwrap();
        // the protocol point (bits, qubits, -ebits) lies on all three faces
        prop_assert!((r.qubits - r.ebits - b.b2).abs() <= 1e-10);
        prop_assert!((r.bits + 2.0 * r.qubits - b.b1).abs() <= 1e-10);
        prop_assert!((r.bits + r.qubits - r.ebits - b.b3).abs() <= 1e-10);
    }

    #[test]
    fn output_unitaries_change_nothing(seed in any::<u64>(), d_in in 2usize..=4, d_out in 2usize..=4, k in 1usize..=3) {
        prop_assume!(d_out * k >= d_in);
        let ch = random_channel(seed, d_in, d_out, k);
        let ens = random_ensemble(seed, d_in, 3);
        let rotated = ch.rotate_output(&random_unitary(seed, d_out)).unwrap();
        assert_close(cqe_region_bounds_fd(&ch, &ens).unwrap(), cqe_region_bounds_fd(&rotated, &ens).unwrap(), 1e-10);
        let (h0, h1) = (ensemble_entropies(&ch, &ens).unwrap(), ensemble_entropies(&rotated, &ens).unwrap());
        prop_assert!((h0.output_of_average - h1.output_of_average).abs() <= 1e-10);
        prop_assert!((h0.output - h1.output).abs() <= 1e-10);
        prop_assert!((h0.environment - h1.environment).abs() <= 1e-10);
    }

    #[test]
    fn complementary_output_is_a_state(seed in any::<u64>(), d_in in 2usize..=4, d_out in 2usize..=4, k in 1usize..=4) {
        prop_assume!(d_out * k >= d_in);
        let ch = random_channel(seed, d_in, d_out, k);
        let rho = random_ensemble(seed, d_in, 2).average();
        let env = ch.complementary_output(&rho).unwrap();
        prop_assert!(bosonic_tradeoff::finite_dim::check_density(&env).is_ok());
    }
}

#[test]
fn quantum_capacity_converges_from_below() {
    for eta in [0.6f64, 0.75, 0.9] {
        let limit = (eta / (1.0 - eta)).log2();
        let mut prev = 0.0;
        for ns in [1.0, 10.0, 1e2, 1e3, 1e4] {
            let (c, p) = setup(eta, ns);
            let q = quantum_capacity(c, p).value();
            assert!(q >= prev && q < limit, "{eta} {ns}: {q}");
            prev = q;
        }
        assert!(limit - prev < 1e-3);
    }
}

#[test]
fn low_transmissivity_collapses_to_classical_axis() {
    for eta in [0.1, 0.3, 0.49, 0.5] {
        let (c, p) = setup(eta, 50.0);
        let f = cq_frontier(c, p, &ShareGrid::default());
        assert_eq!(f.len(), 1);
        assert_eq!(f.points[0].rates.second, 0.0);
        assert_eq!(f.points[0].rates.first, classical_capacity(c, p).value());
    }
}
