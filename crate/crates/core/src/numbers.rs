//! Exact number triangles and the three alternating-sign Eulerian formulas.
//!
//! Indices outside a triangle evaluate to zero, which is the convention the
//! summations below rely on.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::perm::Permutations;
use crate::{Bounds, Result};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Which triangle a [`NumberTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Eulerian,
    Stirling2,
    Binomial,
}

impl TableKind {
    /// First row index and first column index of the printed triangle.
    fn origin(self) -> (usize, usize) {
        match self {
            TableKind::Eulerian => (1, 0),
            TableKind::Stirling2 => (1, 1),
            TableKind::Binomial => (0, 0),
        }
    }
}

/// An immutable triangle of exact values, rows ascending in `n` and columns
/// ascending in `k`.
///
/// Row `n` of the Eulerian triangle has columns `0..n`, of the Stirling
/// triangle `1..=n`, and of Pascal's triangle `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberTable {
    kind: TableKind,
    n_max: usize,
    rows: Vec<Vec<BigInt>>,
}

impl NumberTable {
    /// Eulerian numbers by `⟨n,k⟩ = (k+1)⟨n−1,k⟩ + (n−k)⟨n−1,k−1⟩`.
    pub fn eulerian(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let row = if n == 1 {
                vec![BigInt::one()]
            } else {
                let prev = &rows[n - 2];
                let at = |k: isize| -> BigInt {
                    if k < 0 || k as usize >= prev.len() {
                        BigInt::zero()
                    } else {
                        prev[k as usize].clone()
                    }
                };
                (0..n)
                    .map(|k| at(k as isize) * (k + 1) + at(k as isize - 1) * (n - k))
                    .collect()
            };
            rows.push(row);
        }
        NumberTable { kind: TableKind::Eulerian, n_max, rows }
    }

    /// Stirling numbers of the second kind by `S(n+1,i+1) = (i+1)S(n,i+1) + S(n,i)`.
    pub fn stirling2(n_max: usize) -> Self {
        // full[n][k] for 0 ≤ k ≤ n, seeded with S(0,0) = 1
        let mut full: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &full[n - 1];
            let row = (0..=n)
                .map(|k| {
                    if k == 0 {
                        return BigInt::zero();
                    }
                    let stay = prev.get(k).cloned().unwrap_or_default() * k;
                    let fresh = prev.get(k - 1).cloned().unwrap_or_default();
                    stay + fresh
                })
                .collect();
            full.push(row);
        }
        let rows = full.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
        NumberTable { kind: TableKind::Stirling2, n_max, rows }
    }

    /// Pascal's triangle.
    pub fn binomial(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let row = (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { prev[k - 1].clone() };
                    let right = prev.get(k).cloned().unwrap_or_default();
                    left + right
                })
                .collect();
            rows.push(row);
        }
        NumberTable { kind: TableKind::Binomial, n_max, rows }
    }

    pub fn new(kind: TableKind, n_max: usize) -> Self {
        match kind {
            TableKind::Eulerian => Self::eulerian(n_max),
            TableKind::Stirling2 => Self::stirling2(n_max),
            TableKind::Binomial => Self::binomial(n_max),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Value at `(n, k)`, zero outside the triangle.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        let (n0, k0) = self.kind.origin();
        if n < n0 || k < k0 as i64 {
            // S(0,0) and friends are not stored; none of the callers need them
            return BigInt::zero();
        }
        self.rows
            .get(n - n0)
            .and_then(|row| row.get(k as usize - k0))
            .cloned()
            .unwrap_or_default()
    }

    /// `(n, first column index, values)` for every stored row.
    pub fn rows(&self) -> impl Iterator<Item = (usize, usize, &[BigInt])> {
        let (n0, k0) = self.kind.origin();
        self.rows.iter().enumerate().map(move |(i, r)| (i + n0, k0, r.as_slice()))
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        let (n0, _) = self.kind.origin();
        n.checked_sub(n0).and_then(|i| self.rows.get(i)).map(Vec::as_slice)
    }
}

/// `⟨n,k⟩`, the number of permutations of `{1..n}` with `k` descents.
pub fn eulerian(n: usize, k: i64) -> BigInt {
    NumberTable::eulerian(n).get(n, k)
}

/// `S(n,k)`, zero when `k < 1` or `k > n`.
pub fn stirling2(n: usize, k: i64) -> BigInt {
    NumberTable::stirling2(n).get(n, k)
}

/// Descent-count histogram of all of `S_n`, by exhaustive generation.
pub fn eulerian_row_by_enumeration(n: usize, bounds: &Bounds) -> Result<Vec<BigInt>> {
    bounds.check_n("n", n)?;
    let mut counts = vec![0u64; n.max(1)];
    for p in Permutations::new(n) {
        counts[p.des()] += 1;
    }
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// `⟨n,k⟩` counted straight from the definition.
pub fn eulerian_by_enumeration(n: usize, k: i64, bounds: &Bounds) -> Result<BigInt> {
    let row = eulerian_row_by_enumeration(n, bounds)?;
    Ok(usize::try_from(k).ok().and_then(|k| row.get(k).cloned()).unwrap_or_default())
}

fn sign(exponent: usize) -> i32 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Signed summands of `Σ_{i=0}^{k} (−1)^i C(n+1,i) (k+1−i)^n`, in order of `i`.
pub fn eulerian_terms_powers(n: usize, k: usize) -> Vec<BigInt> {
    (0..=k)
        .map(|i| {
            let power = num_traits::pow(BigInt::from(k + 1 - i), n);
            binomial(n as u64 + 1, i as i64) * power * sign(i)
        })
        .collect()
}

/// Signed summands of `Σ_{i=1}^{k+1} (−1)^{k+1−i} C(n−i, k+1−i) S(n,i) i!`.
pub fn eulerian_terms_stirling(n: usize, k: usize) -> Vec<BigInt> {
    assert!(k < n, "requires k < n (got n={n}, k={k})");
    let s = NumberTable::stirling2(n);
    (1..=k + 1)
        .map(|i| {
            binomial((n - i) as u64, (k + 1 - i) as i64) * s.get(n, i as i64) * factorial(i as u64) * sign(k + 1 - i)
        })
        .collect()
}

/// Signed summands of `Σ_{i=0}^{k} (−1)^{k−i} C(n−i, k−i) S(n+1,i+1) i!`.
pub fn eulerian_terms_stirling_shifted(n: usize, k: usize) -> Vec<BigInt> {
    assert!(k < n, "requires k < n (got n={n}, k={k})");
    let s = NumberTable::stirling2(n + 1);
    (0..=k)
        .map(|i| {
            binomial((n - i) as u64, (k - i) as i64) * s.get(n + 1, i as i64 + 1) * factorial(i as u64) * sign(k - i)
        })
        .collect()
}

pub fn eulerian_sum_powers(n: usize, k: usize) -> BigInt {
    eulerian_terms_powers(n, k).into_iter().sum()
}

pub fn eulerian_sum_stirling(n: usize, k: usize) -> BigInt {
    eulerian_terms_stirling(n, k).into_iter().sum()
}

pub fn eulerian_sum_stirling_shifted(n: usize, k: usize) -> BigInt {
    eulerian_terms_stirling_shifted(n, k).into_iter().sum()
}

/// Both sides of a checked identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    #[serde(with = "crate::numbers::decimal")]
    pub lhs: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub rhs: BigInt,
    pub holds: bool,
}

impl IdentityCheck {
    fn new(lhs: BigInt, rhs: BigInt) -> Self {
        let holds = lhs == rhs;
        IdentityCheck { lhs, rhs, holds }
    }
}

/// `(k+1)^n = Σ_{i=0}^{n−1} ⟨n,i⟩ C(k+n−i, n)`.
pub fn verify_worpitzky(n: usize, k: usize) -> IdentityCheck {
    let e = NumberTable::eulerian(n);
    let lhs = num_traits::pow(BigInt::from(k + 1), n);
    let rhs = (0..n).map(|i| e.get(n, i as i64) * binomial((k + n - i) as u64, n as i64)).sum();
    IdentityCheck::new(lhs, rhs)
}

/// `k!·S(n,k) = Σ_{i=0}^{k−1} ⟨n,i⟩ C(n−1−i, k−1−i)`.
pub fn verify_ordered_stirling(n: usize, k: usize) -> IdentityCheck {
    assert!(k >= 1, "requires k ≥ 1");
    let e = NumberTable::eulerian(n);
    let lhs = factorial(k as u64) * stirling2(n, k as i64);
    let rhs = (0..k)
        .map(|i| {
            let top = n as i64 - 1 - i as i64;
            if top < 0 {
                BigInt::zero()
            } else {
                e.get(n, i as i64) * binomial(top as u64, (k - 1 - i) as i64)
            }
        })
        .sum();
    IdentityCheck::new(lhs, rhs)
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }

    /// Same, for sequences.
    pub mod vec {
        use num_bigint::BigInt;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
        }
    }
}
