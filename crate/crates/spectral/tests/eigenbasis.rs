use chain_core::build_kernel;
use exact_core::{rat_int, ratio, Rational};
use num_traits::Zero;
use spectral::{
    beta, build_basis, f_subset_vector, is_eigenvector, multiplicity_table, pi_inner, subset_eigenvalue, subsets_of_size,
    Eigenvalue,
};

#[test]
fn basis_is_orthogonal_and_diagonalizes_the_kernel() {
    for n in 1..=4 {
        let kernel = build_kernel(n, 2).unwrap();
        let b = build_basis(n).unwrap();
        assert_eq!(b.len(), 1 << n);
        b.check_eigen(&kernel).unwrap();
        for (i, u) in b.vectors.iter().enumerate() {
            assert_eq!(pi_inner(n, &u.coords, &u.coords), u.norm, "n={n}, vector {i}");
            for v in &b.vectors[i + 1..] {
                assert!(pi_inner(n, &u.coords, &v.coords).is_zero());
            }
        }
    }
}

#[test]
fn multiplicities_match_the_basis_labels() {
    let n = 5;
    let b = build_basis(n).unwrap();
    for (e, m) in multiplicity_table(n) {
        let count = b.vectors.iter().filter(|v| v.eigenvalue == e).count() as u64;
        assert_eq!(count, m, "{e}");
    }
    assert_eq!(multiplicity_table(n).iter().map(|(_, m)| m).sum::<u64>(), 32);
}

#[test]
fn subset_vectors_are_eigenvectors() {
    let n = 4;
    let kernel = build_kernel(n, 2).unwrap();
    for m in 0..=n {
        for mask in subsets_of_size(n, m) {
            let v: Vec<Rational> = f_subset_vector(n, mask).into_iter().map(rat_int).collect();
            let lambda = subset_eigenvalue(mask).value();
            assert!(is_eigenvector(&kernel, &v, &lambda), "mask {mask:b}");
        }
    }
}

#[test]
fn first_betas() {
    assert_eq!(beta(0), rat_int(1));
    assert_eq!(beta(1), ratio(1, 4));
    assert_eq!(beta(2), ratio(9, 64));
    assert_eq!(Eigenvalue::for_level(1, 2), Eigenvalue::Zero);
    assert_eq!(Eigenvalue::for_level(2, 2).value(), ratio(9, 64));
}
