use std::fmt;

use exact_core::{rat_int, Rational};
use num_traits::One;

use crate::error::SpectralError;

/// Standard Young tableau of two-row shape `(n - m, m)`, stored by its
/// second row `a_1 < ... < a_m` (entries are 1-based). Standardness is
/// `a_r >= 2r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    n: usize,
    second: Vec<usize>,
}

impl Tableau {
    pub fn new(n: usize, second: Vec<usize>) -> Result<Self, SpectralError> {
        let m = second.len();
        let ok = 2 * m <= n
            && second.windows(2).all(|w| w[0] < w[1])
            && second.iter().enumerate().all(|(r, &a)| a >= 2 * (r + 1) && a <= n);
        if !ok {
            return Err(SpectralError::Shape(format!("second row {second:?} is not standard for n = {n}")));
        }
        Ok(Self { n, second })
    }

    /// Second row `2, 4, ..., 2m`: columns `{1,2}, {3,4}, ...` come first.
    pub fn column_reading(n: usize, m: usize) -> Result<Self, SpectralError> {
        Self::new(n, (1..=m).map(|r| 2 * r).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.second.len()
    }

    pub fn second_row(&self) -> &[usize] {
        &self.second
    }

    pub fn first_row(&self) -> Vec<usize> {
        (1..=self.n).filter(|r| !self.second.contains(r)).collect()
    }

    pub fn is_column_reading(&self) -> bool {
        self.second.iter().enumerate().all(|(r, &a)| a == 2 * (r + 1))
    }

    /// `(row, column)` of entry `r`, both 1-based.
    pub fn position(&self, r: usize) -> (usize, usize) {
        match self.second.iter().position(|&a| a == r) {
            Some(p) => (2, p + 1),
            None => (1, (1..=r).filter(|q| !self.second.contains(q)).count()),
        }
    }

    /// Content `column - row` of the box holding `r`.
    pub fn content(&self, r: usize) -> i64 {
        let (row, col) = self.position(r);
        col as i64 - row as i64
    }

    /// The filling with `j` and `j + 1` exchanged, if that is still standard.
    pub fn swapped(&self, j: usize) -> Option<Self> {
        let second = self
            .second
            .iter()
            .map(|&a| if a == j { j + 1 } else if a == j + 1 { j } else { a })
            .collect::<Vec<_>>();
        let mut sorted = second.clone();
        sorted.sort_unstable();
        Self::new(self.n, sorted).ok()
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.first_row()), join(&self.second))
    }
}

/// All standard tableaux of shape `(n - m, m)`, column reading first and
/// the rest in lexicographic order of the second row. There are
/// `C(n, m) - C(n, m - 1)` of them.
pub fn enumerate_tableaux(n: usize, m: usize) -> Vec<Tableau> {
    fn rec(n: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Tableau>) {
        let r = prefix.len() + 1;
        if r > m {
            out.push(Tableau { n, second: prefix.clone() });
            return;
        }
        let lo = (2 * r).max(prefix.last().map_or(0, |&a| a + 1));
        for a in lo..=n {
            prefix.push(a);
            rec(n, m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if 2 * m <= n {
        rec(n, m, &mut Vec::new(), &mut out);
    }
    out
}

/// `γ_Q = Π_r Π_{d=2}^{a_r - 2r + 1} (d² - 1) / d²`.
pub fn gamma_q(q: &Tableau) -> Rational {
    let mut acc = Rational::one();
    for (idx, &a) in q.second.iter().enumerate() {
        let r = idx + 1;
        for d in 2..=(a + 1).saturating_sub(2 * r) as i64 {
            acc *= rat_int(d * d - 1) / rat_int(d * d);
        }
    }
    acc
}
