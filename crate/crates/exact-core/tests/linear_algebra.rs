use exact_core::{
    binomial, integer_rank, mat_pow, nullspace, parse_rational, format_rational, rank_mod_p, rat_int, ratio,
    rational_rank, BigInt, Matrix, Rational, ScaledMatrix, CERT_PRIMES,
};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..5, r * c)))
}

proptest! {
    #[test]
    fn ranks_agree_across_fields((r, c, data) in small_matrix()) {
        let q = Matrix::new(r, c, data.iter().map(|&v| rat_int(v)).collect()).unwrap();
        let exact = rational_rank(&q);
        let rows: Vec<Vec<BigInt>> = data.chunks(c).map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
        prop_assert_eq!(integer_rank(rows), exact);
        let wide: Vec<i128> = data.iter().map(|&v| v as i128).collect();
        for &p in &CERT_PRIMES {
            prop_assert!(rank_mod_p(&wide, r, c, p) <= exact);
        }
        prop_assert_eq!(nullspace(&q).len(), c - exact);
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

#[test]
fn nullspace_vectors_are_annihilated() {
    let m = Matrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3), rat_int(1)], vec![rat_int(1), ratio(2, 3), rat_int(2)]]).unwrap();
    let ns = nullspace(&m);
    assert_eq!(ns.len(), 2);
    for v in &ns {
        assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == Rational::from_integer(0.into())));
    }
}

#[test]
fn scaled_powers_match_rational_powers() {
    // Two-state chain with holding probability 3/4.
    let k = Matrix::from_rows(vec![vec![ratio(3, 4), ratio(1, 4)], vec![ratio(1, 4), ratio(3, 4)]]).unwrap();
    let s = ScaledMatrix::from_rational(&k).unwrap();
    assert_eq!(s.denom(), 4);
    let k5 = mat_pow(&k, 5).unwrap();
    // Off-diagonal entry of the fifth power: (1 - (1/2)^5) / 2.
    assert_eq!(*k5.get(0, 1), ratio(31, 64));
    assert_eq!(s.to_matrix::<Rational>(), k);
}

#[test]
fn binomials() {
    assert_eq!(binomial(10, 3), BigInt::from(120));
    assert_eq!(binomial(5, -1), BigInt::from(0));
    assert_eq!(binomial(4, 7), BigInt::from(0));
}
