//! The two-stage move and exact stationary draws.

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::rng::RngStream;
use crate::state::State;

/// One Burnside move from `x`.
///
/// Positions holding each value are shuffled among themselves
/// (Fisher–Yates), giving a uniform element of the stabilizer. Each cycle of
/// that permutation then receives an independent uniform value.
pub fn burnside_step(x: &State, rng: &mut RngStream) -> State {
    let n = x.n();
    let k = x.k();
    let mut sigma = vec![0usize; n];
    let mut class: Vec<usize> = Vec::with_capacity(n);
    for a in 0..k {
        class.clear();
        class.extend((0..n).filter(|&i| x.digits()[i] == a));
        let mut image = class.clone();
        image.shuffle(rng);
        for (&from, &to) in class.iter().zip(&image) {
            sigma[from] = to;
        }
    }
    let mut digits = vec![0u8; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let value = rng.random_range(0..k);
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            digits[j] = value;
            j = sigma[j];
        }
    }
    State::from_digits_unchecked(k, digits)
}

/// Trajectory `x0, x1, ..., x_steps`.
pub fn run_chain(x0: &State, steps: usize, rng: &mut RngStream) -> Vec<State> {
    let mut path = Vec::with_capacity(steps + 1);
    path.push(x0.clone());
    for _ in 0..steps {
        let next = burnside_step(path.last().expect("nonempty"), rng);
        path.push(next);
    }
    path
}

/// Exact draw from the stationary law: a uniform orbit (a uniform weak
/// composition of `n` into `k` parts, by stars and bars), then a uniform
/// arrangement of that multiset.
pub fn sample_stationary(n: usize, k: u8, rng: &mut RngStream) -> State {
    let slots = n + k as usize - 1;
    let mut bars: Vec<usize> = index::sample(rng, slots, k as usize - 1).into_vec();
    bars.sort_unstable();
    let mut digits = Vec::with_capacity(n);
    let mut prev = 0usize;
    for (a, &b) in bars.iter().enumerate() {
        digits.extend(std::iter::repeat_n(a as u8, b - prev));
        prev = b + 1;
    }
    digits.extend(std::iter::repeat_n(k - 1, slots - prev));
    digits.shuffle(rng);
    State::from_digits_unchecked(k, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_replay_bit_identically() {
        let x = State::parse("0110100", 2).unwrap();
        let a = run_chain(&x, 50, &mut RngStream::new(11, 0));
        let b = run_chain(&x, 50, &mut RngStream::new(11, 0));
        assert_eq!(a, b);
        assert_eq!(a.len(), 51);
        assert_eq!(run_chain(&x, 0, &mut RngStream::new(1, 1)), vec![x]);
    }

    #[test]
    fn stationary_draws_have_the_right_shape() {
        let mut rng = RngStream::new(5, 0);
        for _ in 0..200 {
            let s = sample_stationary(9, 3, &mut rng);
            assert_eq!(s.n(), 9);
            assert!(s.digits().iter().all(|&d| d < 3));
        }
        assert_eq!(sample_stationary(0, 2, &mut rng).n(), 0);
    }

    #[test]
    fn stationary_weight_counts_are_uniform_in_expectation() {
        let mut rng = RngStream::new(21, 4);
        let n = 4;
        let mut counts = [0usize; 5];
        let draws = 50_000;
        for _ in 0..draws {
            counts[sample_stationary(n, 2, &mut rng).ones()] += 1;
        }
        for c in counts {
            let p = c as f64 / draws as f64;
            assert!((p - 0.2).abs() < 0.01, "{counts:?}");
        }
    }

    #[test]
    fn one_coordinate_step_is_a_fair_coin() {
        let mut rng = RngStream::new(2, 2);
        let x = State::zeros(1, 2);
        let ones: usize = (0..40_000).map(|_| burnside_step(&x, &mut rng).ones()).sum();
        assert!((ones as f64 / 40_000.0 - 0.5).abs() < 0.01);
    }
}
