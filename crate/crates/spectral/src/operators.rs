//! Coordinate permutations acting on vectors over `C_2^n`.

use exact_core::{rat_int, Rational};

use crate::error::{range, SpectralError};

/// `(s_{ab} v)(x) = v(x with coordinates a and b exchanged)`, 1-based.
pub fn transposition_apply(a: usize, b: usize, v: &[Rational]) -> Vec<Rational> {
    let (ba, bb) = (a - 1, b - 1);
    (0..v.len())
        .map(|x| {
            let (xa, xb) = (x >> ba & 1, x >> bb & 1);
            let y = if xa == xb { x } else { x ^ (1 << ba) ^ (1 << bb) };
            v[y].clone()
        })
        .collect()
}

/// Jucys–Murphy element `M_r = Σ_{t < r} s_{t r}` applied to `v`.
pub fn jm_apply(r: usize, v: &[Rational]) -> Result<Vec<Rational>, SpectralError> {
    let n = v.len().trailing_zeros() as usize;
    if r < 2 || r > n {
        return Err(range("jm_apply", format!("need 2 <= r <= {n}, got {r}")));
    }
    let mut out = vec![rat_int(0); v.len()];
    for t in 1..r {
        for (o, w) in out.iter_mut().zip(transposition_apply(t, r, v)) {
            *o += w;
        }
    }
    Ok(out)
}

/// `τ_j v = s_j v + v / (c_j - c_{j+1})`, where `c_j` and `c_{j+1}` are the
/// contents of `j` and `j + 1` in the tableau whose eigenspace holds `v`.
pub fn tau_apply(j: usize, v: &[Rational], content_j: i64, content_next: i64) -> Result<Vec<Rational>, SpectralError> {
    let d = content_j - content_next;
    if d == 0 {
        return Err(SpectralError::Singular { j });
    }
    let inv = Rational::new(1.into(), d.into());
    Ok(transposition_apply(j, j + 1, v).into_iter().zip(v).map(|(s, x)| s + x * &inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::ratio;

    fn indicator(len: usize, at: usize) -> Vec<Rational> {
        (0..len).map(|i| rat_int(i64::from(i == at))).collect()
    }

    #[test]
    fn single_transposition_moves_a_point_mass() {
        // Index 1 is the state "10"; exchanging coordinates gives "01", index 2.
        assert_eq!(jm_apply(2, &indicator(4, 1)).unwrap(), indicator(4, 2));
        assert!(jm_apply(1, &indicator(4, 1)).is_err());
        assert!(jm_apply(3, &indicator(4, 1)).is_err());
    }

    #[test]
    fn tau_rejects_equal_contents() {
        assert_eq!(tau_apply(1, &indicator(4, 0), 2, 2), Err(SpectralError::Singular { j: 1 }));
        let out = tau_apply(1, &indicator(4, 1), -1, 1).unwrap();
        assert_eq!(out, vec![ratio(0, 1), ratio(-1, 2), ratio(1, 1), ratio(0, 1)]);
    }

    #[test]
    fn jucys_murphy_elements_commute() {
        let n = 5;
        let v: Vec<Rational> = (0..1 << n).map(|i| ratio((i * i % 17) as i64 - 8, 3)).collect();
        for r in 2..=n {
            for s in 2..=n {
                let a = jm_apply(r, &jm_apply(s, &v).unwrap()).unwrap();
                let b = jm_apply(s, &jm_apply(r, &v).unwrap()).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
