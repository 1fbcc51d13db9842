//! Permutations of `{1..n}` in one-line notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A permutation `π(1)…π(n)` of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("value {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `π(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Positions `i` (1-based, `1 ≤ i < n`) with `π(i) > π(i+1)`.
    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.0.len()).filter(|&i| self.is_descent(i)).collect()
    }

    pub fn is_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.0.len() && self.0[i - 1] > self.0[i]
    }

    pub fn des(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// `π⁻¹` as a one-line vector, so `position_of(v)` is `inverse[v-1]`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Parses `132` (single digits, n ≤ 9) or `1 3 2` / `1,3,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad permutation entry {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad digit {c:?}"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }

    /// Rearranges to the lexicographically next permutation; false at the last one.
    pub fn advance(&mut self) -> bool {
        next_permutation(&mut self.0)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.0.len() <= 9;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 && !compact {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).expect("pivot has a larger successor");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// All permutations of `{1..n}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Permutations {
    next: Option<Permutation>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations { next: Some(Permutation::identity(n)) }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance() {
            self.next = Some(succ);
        }
        Some(current)
    }
}
