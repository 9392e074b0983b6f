//! The orthogonal eigenbasis against its closed-form norms and the printed
//! small cases.

use chain_core::{build_kernel, State};
use exact_core::{binomial, ratio, BigInt, Rational};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use spectral::{build_basis, g_q, norm_f_q_by_sum, pi_inner, OrthoVector, Tableau};

use crate::error::{precondition, VerifierError};
use crate::multiplicity::{is_integer_eigenvector, primitive};
use crate::result::{CheckResult, Checker};

pub const ORTHOBASIS_MAX_N: usize = 7;
pub const PARSEVAL_MAX_N: usize = 6;

/// Column headers of the `n = 3` tables, read as `x1 x2 x3`.
pub const GOLDEN_STATES: [&str; 8] = ["000", "001", "010", "011", "100", "101", "110", "111"];

/// One row of a golden table: `m`, `ℓ`, the second row of `Q`, the eight
/// entries as `(num, den)`, and for `f` rows the squared norm.
pub struct GoldenRow {
    pub m: usize,
    pub l: usize,
    pub second_row: &'static [usize],
    pub values: [(i64, i64); 8],
    pub norm: (i64, i64),
}

const fn w(v: i64) -> (i64, i64) {
    (v, 1)
}

const HALF: (i64, i64) = (1, 2);
const MINUS_HALF: (i64, i64) = (-1, 2);
const THREE_HALVES: (i64, i64) = (3, 2);

/// The vectors `g_Q^{m,i}` at `n = 3`. The norm column is unused.
pub const GOLDEN_G: [GoldenRow; 8] = [
    GoldenRow { m: 0, l: 0, second_row: &[], values: [w(1), w(0), w(0), w(0), w(0), w(0), w(0), w(0)], norm: w(0) },
    GoldenRow { m: 0, l: 1, second_row: &[], values: [w(0), w(1), w(1), w(0), w(1), w(0), w(0), w(0)], norm: w(0) },
    GoldenRow { m: 1, l: 0, second_row: &[3], values: [w(0), w(1), MINUS_HALF, w(0), MINUS_HALF, w(0), w(0), w(0)], norm: w(0) },
    GoldenRow { m: 1, l: 0, second_row: &[2], values: [w(0), w(0), w(1), w(0), w(-1), w(0), w(0), w(0)], norm: w(0) },
    GoldenRow { m: 0, l: 2, second_row: &[], values: [w(0), w(0), w(0), w(1), w(0), w(1), w(1), w(0)], norm: w(0) },
    GoldenRow { m: 1, l: 1, second_row: &[3], values: [w(0), w(0), w(0), HALF, w(0), HALF, w(-1), w(0)], norm: w(0) },
    GoldenRow { m: 1, l: 1, second_row: &[2], values: [w(0), w(0), w(0), w(1), w(0), w(-1), w(0), w(0)], norm: w(0) },
    GoldenRow { m: 0, l: 3, second_row: &[], values: [w(0), w(0), w(0), w(0), w(0), w(0), w(0), w(1)], norm: w(0) },
];

/// The vectors `f_Q^{m,ℓ}` at `n = 3` with their squared norms.
pub const GOLDEN_F: [GoldenRow; 8] = [
    GoldenRow { m: 0, l: 0, second_row: &[], values: [w(1); 8], norm: w(1) },
    GoldenRow { m: 0, l: 1, second_row: &[], values: [w(3), w(1), w(1), w(-1), w(1), w(-1), w(-1), w(-3)], norm: w(5) },
    GoldenRow { m: 1, l: 0, second_row: &[3], values: [w(0), w(-2), w(1), w(-1), w(1), w(-1), w(2), w(0)], norm: w(1) },
    GoldenRow { m: 1, l: 0, second_row: &[2], values: [w(0), w(0), w(-2), w(-2), w(2), w(2), w(0), w(0)], norm: (4, 3) },
    GoldenRow { m: 0, l: 2, second_row: &[], values: [w(3), w(-3), w(-3), w(-3), w(-3), w(-3), w(-3), w(3)], norm: w(9) },
    GoldenRow {
        m: 1,
        l: 1,
        second_row: &[3],
        values: [w(0), w(-3), THREE_HALVES, THREE_HALVES, THREE_HALVES, THREE_HALVES, w(-3), w(0)],
        norm: (9, 4),
    },
    GoldenRow { m: 1, l: 1, second_row: &[2], values: [w(0), w(0), w(-3), w(3), w(3), w(-3), w(0), w(0)], norm: w(3) },
    GoldenRow { m: 0, l: 3, second_row: &[], values: [w(1), w(-3), w(-3), w(3), w(-3), w(3), w(3), w(-1)], norm: w(5) },
];

/// Eigenvalue placement arrays: for each `m + ℓ`, the eigenvalue carried
/// by the copies of shape `(n-m, m)`, and the number of tableaux per `m`.
pub struct Placement {
    pub n: usize,
    pub tableaux: &'static [(usize, usize)],
    pub cells: &'static [(usize, usize, (i64, i64))],
}

pub const PLACEMENTS: [Placement; 2] = [
    Placement {
        n: 4,
        tableaux: &[(2, 2), (1, 3), (0, 1)],
        cells: &[
            (0, 0, (1, 1)),
            (1, 1, (0, 1)),
            (1, 0, (0, 1)),
            (2, 2, (1, 4)),
            (2, 1, (1, 4)),
            (2, 0, (1, 4)),
            (3, 1, (0, 1)),
            (3, 0, (0, 1)),
            (4, 0, (9, 64)),
        ],
    },
    Placement {
        n: 5,
        tableaux: &[(2, 5), (1, 4), (0, 1)],
        cells: &[
            (0, 0, (1, 1)),
            (1, 1, (0, 1)),
            (1, 0, (0, 1)),
            (2, 2, (1, 4)),
            (2, 1, (1, 4)),
            (2, 0, (1, 4)),
            (3, 2, (0, 1)),
            (3, 1, (0, 1)),
            (3, 0, (0, 1)),
            (4, 1, (9, 64)),
            (4, 0, (9, 64)),
            (5, 0, (0, 1)),
        ],
    },
];

fn rat((p, q): (i64, i64)) -> Rational {
    ratio(p, q)
}

/// Golden row values placed at their state indices.
fn golden_vector(row: &GoldenRow) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 8];
    for (s, &val) in GOLDEN_STATES.iter().zip(&row.values) {
        v[State::parse(s, 2).expect("golden header").index()] = rat(val);
    }
    v
}

fn label(v: &OrthoVector) -> String {
    format!("f^{{{},{}}} for {}", v.m, v.l, v.tableau)
}

fn check_golden(c: &mut Checker, vectors: &[OrthoVector]) -> Result<(), VerifierError> {
    let kernel = build_kernel(3, 2)?;
    for row in &GOLDEN_G {
        let q = Tableau::new(3, row.second_row.to_vec())?;
        let got = g_q(3, row.m, row.l, &q)?;
        let want = golden_vector(row);
        c.check(got == want, || format!("g^{{{},{}}} for {q}: got {got:?}", row.m, row.l));
    }
    for row in &GOLDEN_F {
        let q = Tableau::new(3, row.second_row.to_vec())?;
        let want = golden_vector(row);
        let found = vectors.iter().find(|v| v.m == row.m && v.l == row.l && v.tableau == q);
        c.check(found.is_some_and(|v| v.coords == want), || format!("f^{{{},{}}} for {q} differs from the table", row.m, row.l));
        c.check(found.is_some_and(|v| v.norm == rat(row.norm)), || format!("norm of f^{{{},{}}} for {q}", row.m, row.l));
        c.check(pi_inner(3, &want, &want) == rat(row.norm), || format!("table norm of f^{{{},{}}} for {q}", row.m, row.l));
        // The table rows themselves are eigenvectors with β_1 on m + ℓ = 2,
        // 1 on m + ℓ = 0 and 0 elsewhere.
        let lam = match row.m + row.l {
            0 => Rational::one(),
            2 => ratio(1, 4),
            _ => Rational::zero(),
        };
        c.check(is_integer_eigenvector(kernel.matrix(), &primitive(&want), &lam), || {
            format!("table row f^{{{},{}}} for {q} is not a {lam}-eigenvector", row.m, row.l)
        });
    }
    Ok(())
}

fn check_placement(c: &mut Checker, p: &Placement, vectors: &[OrthoVector]) {
    for &(m, count) in p.tableaux {
        let got = vectors.iter().filter(|v| v.m == m && v.l == 0).count();
        c.check(got == count, || format!("n={}: {got} tableaux of shape ({}, {m}), expected {count}", p.n, p.n - m));
    }
    let cells: Vec<(usize, usize)> = p.cells.iter().map(|&(s, m, _)| (s, m)).collect();
    for v in vectors {
        let cell = p.cells.iter().find(|&&(s, m, _)| s == v.m + v.l && m == v.m);
        c.check(cell.is_some_and(|&(_, _, val)| v.eigenvalue.value() == rat(val)), || {
            format!("n={}: {} has eigenvalue {} outside the array", p.n, label(v), v.eigenvalue)
        });
    }
    for (s, m) in cells {
        c.check(vectors.iter().any(|v| v.m == m && v.m + v.l == s), || format!("n={}: array cell m+l={s}, m={m} is empty", p.n));
    }
}

/// `L / C(n, j)` with `L = lcm_j C(n, j)`: integer weights proportional to `π`.
fn integer_weights(n: usize) -> Vec<BigInt> {
    let c: Vec<BigInt> = (0..=n).map(|j| binomial(n as u64, j as i64)).collect();
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    c.iter().map(|x| &l / x).collect()
}

/// Orthogonality, closed-form norms, eigen-equations and, for small `n`,
/// Parseval's identity `Σ_v v(x)² / ‖v‖² = 1 / π(x)`. At `n = 3` the
/// vectors are compared entry by entry with the printed tables, and at
/// `n = 4, 5` the eigenvalues with the printed placement arrays.
pub fn verify_orthobasis(n: usize) -> Result<CheckResult, VerifierError> {
    if n == 0 || n > ORTHOBASIS_MAX_N {
        return Err(precondition("orthobasis", format!("needs 1 <= n <= {ORTHOBASIS_MAX_N}, got {n}")));
    }
    let basis = build_basis(n)?;
    let kernel = build_kernel(n, 2)?;
    let vs = &basis.vectors;
    let mut c = Checker::new("orthobasis").param("n", n);
    c.check(vs.len() == 1 << n, || format!("{} vectors, expected {}", vs.len(), 1 << n));

    let ints: Vec<Vec<BigInt>> = vs.par_iter().map(|v| primitive(&v.coords)).collect();
    let bad = vs.par_iter().zip(&ints).find_map_first(|(v, u)| {
        (!is_integer_eigenvector(kernel.matrix(), u, &v.eigenvalue.value())).then(|| format!("{} is not an eigenvector", label(v)))
    });
    c.batch(vs.len() as u64, bad);

    let wts = integer_weights(n);
    let weighted: Vec<Vec<BigInt>> =
        ints.iter().map(|u| u.iter().enumerate().map(|(x, a)| a * &wts[x.count_ones() as usize]).collect()).collect();
    let bad = (0..vs.len()).into_par_iter().find_map_first(|i| {
        (i + 1..vs.len()).find_map(|j| {
            let dot: BigInt = weighted[i].iter().zip(&ints[j]).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum();
            (!dot.is_zero()).then(|| format!("{} and {} are not orthogonal", label(&vs[i]), label(&vs[j])))
        })
    });
    c.batch((vs.len() * (vs.len() - 1) / 2) as u64, bad);

    let bad = vs.par_iter().find_map_first(|v| {
        let direct = pi_inner(n, &v.coords, &v.coords);
        let by_sum = norm_f_q_by_sum(n, v.m, v.l, &v.tableau).ok()?;
        (direct != v.norm || by_sum != v.norm)
            .then(|| format!("{}: closed form {}, direct {direct}, level sum {by_sum}", label(v), v.norm))
    });
    c.batch(vs.len() as u64, bad);

    if n <= PARSEVAL_MAX_N {
        let bad = (0..1usize << n).into_par_iter().find_map_first(|x| {
            let total: Rational = vs.iter().filter(|v| !v.coords[x].is_zero()).map(|v| &v.coords[x] * &v.coords[x] / &v.norm).sum();
            let want = Rational::from_integer(BigInt::from(n + 1) * binomial(n as u64, x.count_ones() as i64));
            (total != want).then(|| format!("Parseval at {}: {total} vs {want}", State::from_index(x, n, 2)))
        });
        c.batch(1 << n, bad);
    }
    if n == 3 {
        check_golden(&mut c, vs)?;
    }
    if let Some(p) = PLACEMENTS.iter().find(|p| p.n == n) {
        check_placement(&mut c, p, vs);
    }
    let extra = match n {
        3 => ", golden tables",
        4 | 5 => ", placement array",
        _ => "",
    };
    Ok(c.finish(format!("{} vectors orthogonal with closed-form norms{extra}", vs.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_pass() {
        for n in 1..=5 {
            let r = verify_orthobasis(n).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn golden_headers_cover_every_state() {
        let mut idx: Vec<usize> = GOLDEN_STATES.iter().map(|s| State::parse(s, 2).unwrap().index()).collect();
        idx.sort_unstable();
        assert_eq!(idx, (0..8).collect::<Vec<_>>());
        assert_eq!(State::parse("011", 2).unwrap().index(), 6);
    }

    #[test]
    fn out_of_range() {
        assert!(verify_orthobasis(0).is_err());
        assert!(verify_orthobasis(8).is_err());
    }
}
