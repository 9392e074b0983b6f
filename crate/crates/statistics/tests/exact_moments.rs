use chain_core::{build_kernel, Kernel, State};
use exact_core::{rat_int, Rational, ScaledVector};
use num_traits::{One, Zero};
use spectral::{f_subset_eval, f_subset_vector};
use statistics::{
    alternation_histogram, alternation_variance_after, alternations, centered_pair_product_after,
    expected_alternations_after, ones_covariance, ones_covariance_after, ones_moments, stationary_alternation_mean,
    stationary_alternation_variance, DEFAULT_BINS,
};

fn law(k: &Kernel, x: &State, l: u64) -> Vec<Rational> {
    let mut mu = ScaledVector::point_mass(k.size(), x.index());
    for _ in 0..l {
        mu = mu.times(k.matrix());
    }
    mu.to_rationals()
}

fn moments(p: &[Rational], g: impl Fn(&State) -> Rational, n: usize) -> (Rational, Rational) {
    let mut m1 = Rational::zero();
    let mut m2 = Rational::zero();
    for (i, w) in p.iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let v = g(&State::from_index(i, n, 2));
        m1 += w * &v;
        m2 += w * &v * &v;
    }
    let var = &m2 - &m1 * &m1;
    (m1, var)
}

#[test]
fn alternation_moments_after_steps_match_exact_sums() {
    for n in 2..=6 {
        let k = build_kernel(n, 2).unwrap();
        let t = |y: &State| rat_int(alternations(y).unwrap() as u64);
        for i in 0..k.size() {
            let x = k.state(i);
            for l in 0..=3 {
                let (mean, var) = moments(&law(&k, &x, l), t, n);
                assert_eq!(expected_alternations_after(&x, l).unwrap(), mean, "n={n} x={x} l={l}");
                assert_eq!(alternation_variance_after(&x, l).unwrap(), var, "n={n} x={x} l={l}");
            }
        }
    }
}

#[test]
fn stationary_alternation_moments_by_state_sums() {
    for n in 2..=8 {
        let k = build_kernel(n, 2).unwrap();
        let (mean, var) = moments(&k.stationary(), |y| rat_int(alternations(y).unwrap() as u64), n);
        assert_eq!(mean, stationary_alternation_mean(n).unwrap());
        assert_eq!(var, stationary_alternation_variance(n).unwrap());
    }
}

#[test]
fn ones_moments_match_exact_sums() {
    for n in 1..=6 {
        let k = build_kernel(n, 2).unwrap();
        for i in 0..k.size() {
            let x = k.state(i);
            for l in 0..=3 {
                let (mean, var) = moments(&law(&k, &x, l), |y| rat_int(y.ones() as u64), n);
                let r = ones_moments(&x, l).unwrap();
                assert_eq!((r.mean, r.variance), (mean, var), "n={n} x={x} l={l}");
            }
        }
    }
}

#[test]
fn block_covariances_match_exact_sums() {
    let blocks: [(&[usize], &[usize]); 4] = [(&[1], &[2]), (&[1, 2], &[3, 4]), (&[1, 2, 3], &[2, 5]), (&[4], &[4])];
    for n in 5..=6 {
        let k = build_kernel(n, 2).unwrap();
        for (s, t) in blocks {
            let count = |y: &State, b: &[usize]| rat_int(b.iter().filter(|&&c| y.digits()[c - 1] == 1).count() as u64);
            let cov = |p: &[Rational]| {
                let (ms, _) = moments(p, |y| count(y, s), n);
                let (mt, _) = moments(p, |y| count(y, t), n);
                let (mst, _) = moments(p, |y| count(y, s) * count(y, t), n);
                mst - ms * mt
            };
            assert_eq!(cov(&k.stationary()), ones_covariance(s, t));
            for i in (0..k.size()).step_by(3) {
                let x = k.state(i);
                for l in 0..=2 {
                    assert_eq!(ones_covariance_after(&x, s, t, l).unwrap(), cov(&law(&k, &x, l)), "n={n} x={x} l={l}");
                }
            }
        }
        let x = k.state(11);
        let p = law(&k, &x, 2);
        let (e, _) = moments(&p, |y| {
            let a = Rational::new((2 * i64::from(y.digits()[0]) - 1).into(), 2.into());
            let b = Rational::new((2 * i64::from(y.digits()[2]) - 1).into(), 2.into());
            a * b
        }, n);
        assert_eq!(centered_pair_product_after(&x, 1, 3, 2).unwrap(), e);
    }
}

#[test]
fn alternation_indicator_expands_into_pair_eigenvectors() {
    for n in 2..=8 {
        for idx in 0..1usize << n {
            let x = State::from_index(idx, n, 2);
            for i in 0..n - 1 {
                let mask = (1u64 << i) | (1u64 << (i + 1));
                let lhs = i64::from(x.digits()[i] != x.digits()[i + 1]);
                assert_eq!(3 * lhs, 1 - f_subset_eval(mask, &x));
            }
        }
    }
}

#[test]
fn product_identities_hold_pointwise_at_four() {
    let f = |mask: u64| f_subset_vector(4, mask);
    let (a, b, c, d) = (1u64, 2, 4, 8);
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    for x in 0..16 {
        let v = |m: u64| rat_int(f(m)[x]);
        let lhs = v(a | b) * v(c | d);
        let rhs = r(18, 35) * v(a | b | c | d) - r(2, 7) * (v(a | b) + v(c | d))
            + r(3, 14) * (v(a | c) + v(a | d) + v(b | c) + v(b | d))
            + r(1, 5);
        assert_eq!(lhs, rhs);
        let lhs = v(a | b) * v(a | c);
        let rhs = r(3, 2) * v(b | c) - r(1, 2) * (v(a | b) + v(a | c)) + r(1, 2);
        assert_eq!(lhs, rhs);
        assert_eq!(v(a | b) * v(a | b), -v(a | b) + rat_int(2));
        assert_eq!(v(0), Rational::one());
    }
}

#[test]
fn monte_carlo_at_two_hundred() {
    let (h, r) = alternation_histogram(200, 100_000, DEFAULT_BINS, 2024).unwrap();
    assert_eq!(h.counts.iter().sum::<u64>(), 100_000);
    assert!(r.mean_z < 3.0, "{r:?}");
    assert!(r.variance_rel_error < 0.10, "{r:?}");
    // The sampled law tracks the exact finite-n law; the distance of both to
    // the limit CDF is finite-n bias.
    let exact = r.exact_sup_cdf_half.unwrap();
    assert!((r.sup_cdf_half - exact).abs() < 0.01, "{r:?}");
    assert!((exact - 0.1131).abs() < 0.001, "{exact}");
}
