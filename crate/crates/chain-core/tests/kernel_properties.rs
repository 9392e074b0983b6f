use chain_core::state::all_states;
use chain_core::{
    brute_force_kernel, build_kernel, burnside_step, kernel_entry, lump_to_orbits, sample_stationary, RngStream,
    State,
};
use exact_core::{ratio, Rational};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[test]
fn closed_form_matches_stabilizer_enumeration() {
    for (n, k) in [(1, 2), (2, 2), (3, 2), (4, 2), (1, 3), (2, 3), (3, 3)] {
        let kernel = build_kernel(n, k).unwrap();
        assert_eq!(kernel.to_rational_matrix(), brute_force_kernel(n, k).unwrap(), "n={n} k={k}");
    }
}

#[test]
fn reflections_and_relabelings_preserve_entries() {
    for n in 1..=5 {
        let states: Vec<State> = all_states(n, 2).collect();
        let rev: Vec<usize> = (0..n).rev().collect();
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        for x in &states {
            for y in &states {
                let base = kernel_entry(x, y).unwrap();
                assert_eq!(base, kernel_entry(x, &y.complement()).unwrap());
                assert_eq!(base, kernel_entry(&x.complement(), &y.complement()).unwrap());
                assert_eq!(base, kernel_entry(&x.permuted(&rev), &y.permuted(&rev)).unwrap());
                assert_eq!(base, kernel_entry(&x.permuted(&rot), &y.permuted(&rot)).unwrap());
            }
        }
    }
}

#[test]
fn detailed_balance_for_three_letters() {
    let kernel = build_kernel(4, 3).unwrap();
    let pi = kernel.stationary();
    for x in 0..kernel.size() {
        for y in 0..kernel.size() {
            assert_eq!(&pi[x] * kernel.entry(x, y), &pi[y] * kernel.entry(y, x));
        }
    }
}

#[test]
fn stationary_weights_are_uniform_over_orbits() {
    let kernel = build_kernel(5, 2).unwrap();
    let lumped = lump_to_orbits(&kernel).unwrap();
    let mut per_orbit = vec![Rational::from_integer(0.into()); 6];
    for x in 0..kernel.size() {
        per_orbit[kernel.state(x).ones()] += kernel.pi(x);
    }
    assert!(per_orbit.iter().all(|p| *p == ratio(1, 6)));
    let uniform = vec![ratio(1, 6); 6];
    assert_eq!(lumped.matrix.vec_mul(&uniform).unwrap(), uniform);
}

fn gof_p_value(observed: &[usize], expected: &[f64]) -> f64 {
    let total: usize = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0;
    for (&o, &p) in observed.iter().zip(expected) {
        if p == 0.0 {
            assert_eq!(o, 0, "mass on an impossible state");
            continue;
        }
        let e = p * total as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    ChiSquared::new((cells - 1) as f64).unwrap().sf(stat)
}

#[test]
fn sampler_row_for_01_is_uniform() {
    let x = State::parse("01", 2).unwrap();
    let mut rng = RngStream::new(2024, 0);
    let mut counts = [0usize; 4];
    for _ in 0..1_000_000 {
        counts[burnside_step(&x, &mut rng).index()] += 1;
    }
    assert!(gof_p_value(&counts, &[0.25; 4]) > 1e-3, "{counts:?}");
}

#[test]
fn stationary_sampler_matches_pi() {
    let mut rng = RngStream::new(99, 3);
    let draws = 200_000;
    let mut counts = [0usize; 4];
    for _ in 0..draws {
        counts[sample_stationary(2, 2, &mut rng).index()] += 1;
    }
    let p01 = counts[2] as f64 / draws as f64;
    let se = (1.0 / 6.0 * 5.0 / 6.0 / draws as f64).sqrt();
    assert!((p01 - 1.0 / 6.0).abs() < 3.0 * se);
    assert!(gof_p_value(&counts, &[1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0]) > 1e-3);

    let mut weights = [0usize; 11];
    let mut rng = RngStream::new(5, 5);
    for _ in 0..1_000_000 {
        weights[sample_stationary(10, 2, &mut rng).ones()] += 1;
    }
    assert!(gof_p_value(&weights, &[1.0 / 11.0; 11]) > 1e-3, "{weights:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_coordinates_preserves_entries(
        n in 1usize..7,
        seed in any::<u64>(),
        xi in any::<usize>(),
        yi in any::<usize>(),
        k in 2u8..4,
    ) {
        use rand::seq::SliceRandom;
        let size = (k as usize).pow(n as u32);
        let x = State::from_index(xi % size, n, k);
        let y = State::from_index(yi % size, n, k);
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut RngStream::new(seed, 0));
        prop_assert_eq!(kernel_entry(&x, &y).unwrap(), kernel_entry(&x.permuted(&sigma), &y.permuted(&sigma)).unwrap());
        prop_assert_eq!(kernel_entry(&x, &y).unwrap(), kernel_entry(&x.complement(), &y.complement()).unwrap());
    }

    #[test]
    fn sampled_steps_stay_in_support(n in 1usize..12, seed in any::<u64>(), xi in any::<usize>()) {
        let x = State::from_index(xi % (1 << n), n, 2);
        let mut rng = RngStream::new(seed, 1);
        let y = burnside_step(&x, &mut rng);
        prop_assert!(kernel_entry(&x, &y).unwrap() > ratio(0, 1));
    }
}
