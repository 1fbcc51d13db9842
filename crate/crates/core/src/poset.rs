//! Naturally labelled posets on `{1..n}`, linear extensions, P-partitions and
//! P-Eulerian numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::barred::{anchored_over, class_size_formula, AnchoredBarredPermutation, BarredPermutation, Iota1};
use crate::involution::{check_involution_parts, SignedInvolution};
use crate::numbers::binomial;
use crate::perm::Permutation;
use crate::{Bounds, Error, Result};

/// A partial order on `{1..n}`, kept as its Hasse diagram plus the full
/// strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    /// `less[a-1][b-1]` iff `a <_P b`.
    less: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    covers: Vec<[usize; 2]>,
}

impl Poset {
    /// Builds a poset from relations `a <_P b`. Redundant relations are
    /// dropped, or rejected when `strict` is set.
    pub fn new(n: usize, relations: &[(usize, usize)], strict: bool) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            for element in [a, b] {
                if element == 0 || element > n {
                    return Err(Error::ElementOutOfRange { element, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            if std::mem::replace(&mut less[a - 1][b - 1], true) {
                return Err(Error::DuplicateCover(a, b));
            }
        }
        // Warshall closure
        for m in 0..n {
            for a in 0..n {
                if less[a][m] {
                    for b in 0..n {
                        if less[m][b] {
                            less[a][b] = true;
                        }
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| less[a][a]) {
            return Err(Error::CycleDetected(a + 1));
        }
        let mut covers = Vec::new();
        for &(a, b) in relations {
            let implied = (0..n).any(|m| less[a - 1][m] && less[m][b - 1]);
            if !implied {
                covers.push((a, b));
            } else if strict {
                return Err(Error::RedundantCover(a, b));
            }
        }
        covers.sort_unstable();
        Ok(Poset { n, covers, less })
    }

    pub fn antichain(n: usize) -> Self {
        Poset::new(n, &[], true).expect("an antichain is a poset")
    }

    /// `1 < 2 < ⋯ < n`.
    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Poset::new(n, &covers, true).expect("a chain is a poset")
    }

    /// Parses `{"n": 3, "covers": [[1,2],[3,2]]}`.
    pub fn from_json(src: &str, strict: bool) -> Result<Self> {
        let raw: PosetJson = serde_json::from_str(src)?;
        let rel: Vec<_> = raw.covers.iter().map(|&[a, b]| (a, b)).collect();
        Poset::new(raw.n, &rel, strict)
    }

    pub fn to_json(&self) -> String {
        let raw = PosetJson { n: self.n, covers: self.covers.iter().map(|&(a, b)| [a, b]).collect() };
        serde_json::to_string(&raw).expect("poset serializes")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cover relations `(a, b)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `a <_P b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a - 1][b - 1]
    }

    /// Every pair `(a, b)` with `a <_P b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.n {
            for b in 1..=self.n {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_linear_extension(&self, pi: &Permutation) -> bool {
        if pi.len() != self.n {
            return false;
        }
        let pos = pi.inverse();
        self.relations().iter().all(|&(a, b)| pos.at(a) < pos.at(b))
    }

    /// `ℒ(P)` in lexicographic order.
    pub fn linear_extensions(&self, bounds: &Bounds) -> Result<Vec<Permutation>> {
        bounds.check_n("poset size", self.n)?;
        let mut below = vec![0usize; self.n];
        for &(_, b) in &self.covers {
            below[b - 1] += 1;
        }
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(self.n);
        self.extend(&mut below, &mut word, &mut out);
        Ok(out)
    }

    fn extend(&self, below: &mut [usize], word: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if word.len() == self.n {
            out.push(Permutation::new(word.clone()).expect("extension is a permutation"));
            return;
        }
        for x in 1..=self.n {
            if below[x - 1] != 0 || word.contains(&x) {
                continue;
            }
            word.push(x);
            for &(a, b) in &self.covers {
                if a == x {
                    below[b - 1] -= 1;
                }
            }
            self.extend(below, word, out);
            for &(a, b) in &self.covers {
                if a == x {
                    below[b - 1] += 1;
                }
            }
            word.pop();
        }
    }

    /// `⟨P,k⟩`: linear extensions with `k` descents.
    pub fn p_eulerian(&self, k: usize, bounds: &Bounds) -> Result<BigInt> {
        let count = self.linear_extensions(bounds)?.iter().filter(|pi| pi.des() == k).count();
        Ok(BigInt::from(count))
    }

    /// `⟨P,0⟩, …, ⟨P,n−1⟩`.
    pub fn p_eulerian_row(&self, bounds: &Bounds) -> Result<Vec<BigInt>> {
        let mut row = vec![0u64; self.n.max(1)];
        for pi in self.linear_extensions(bounds)? {
            row[pi.des()] += 1;
        }
        Ok(row.into_iter().map(BigInt::from).collect())
    }

    /// `Ω_P(k)` by testing every map `{1..n} → {0..k}`.
    pub fn omega(&self, k: usize, bounds: &Bounds) -> Result<BigInt> {
        let space = (k as u128 + 1).checked_pow(self.n as u32).unwrap_or(u128::MAX);
        bounds.check_items("(k+1)^n", space)?;
        let relations = self.relations();
        let mut f = vec![0u64; self.n];
        let mut count: u64 = 0;
        loop {
            if satisfies(&relations, &f) {
                count += 1;
            }
            if !odometer(&mut f, k as u64) {
                break;
            }
        }
        Ok(BigInt::from(count))
    }

    /// `Ω_P(k) = Σ_{π ∈ ℒ(P)} C(n + k − des π, n)`.
    pub fn omega_via_linext(&self, k: usize, bounds: &Bounds) -> Result<BigInt> {
        let n = self.n as i64;
        Ok(self
            .linear_extensions(bounds)?
            .iter()
            .map(|pi| binomial((n + k as i64 - pi.des() as i64).max(0) as u64, n))
            .sum())
    }

    /// Checks that `f ↦ π(β(f))` sends P-partitions exactly onto `ℒ(P)`
    /// for every `f: {1..n} → {0..k}`.
    pub fn check_compatibility(&self, k: usize, bounds: &Bounds) -> Result<CompatibilityCheck> {
        let space = (k as u128 + 1).checked_pow(self.n as u32).unwrap_or(u128::MAX);
        bounds.check_items("(k+1)^n", space)?;
        let relations = self.relations();
        let mut f = vec![0u64; self.n];
        let mut check = CompatibilityCheck { k, assignments: 0, p_partitions: 0, counterexample: None };
        loop {
            let boxes: Vec<u32> = f.iter().map(|&v| v as u32).collect();
            let beta = BarredPermutation::from_assignment(&boxes, k as u32)?;
            let is_partition = satisfies(&relations, &f);
            check.assignments += 1;
            check.p_partitions += u64::from(is_partition);
            if is_partition != self.is_linear_extension(beta.pi()) && check.counterexample.is_none() {
                check.counterexample = Some(f.clone());
            }
            if !odometer(&mut f, k as u64) {
                break;
            }
        }
        Ok(check)
    }

    /// Hasse diagram in Graphviz syntax, drawn bottom to top.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph P {\n  rankdir=BT;\n  node [shape=circle];\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  {a} -> {b};");
        }
        out.push_str("}\n");
        out
    }
}

fn satisfies(relations: &[(usize, usize)], f: &[u64]) -> bool {
    relations.iter().all(|&(i, j)| if i < j { f[i - 1] <= f[j - 1] } else { f[i - 1] < f[j - 1] })
}

/// Steps `f` through `{0..=max}^n`; false after the last vector.
fn odometer(f: &mut [u64], max: u64) -> bool {
    for v in f.iter_mut() {
        if *v < max {
            *v += 1;
            return true;
        }
        *v = 0;
    }
    false
}

/// A candidate P-partition `i ↦ values[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPartitionAssignment {
    pub values: Vec<u64>,
}

impl PPartitionAssignment {
    /// Names the first relation the assignment breaks, if any.
    pub fn violation(&self, poset: &Poset) -> Option<(usize, usize)> {
        if self.values.len() != poset.n() {
            return Some((0, 0));
        }
        poset
            .relations()
            .into_iter()
            .find(|&(i, j)| !satisfies(&[(i, j)], &self.values))
    }

    pub fn is_p_partition(&self, poset: &Poset) -> bool {
        self.violation(poset).is_none()
    }
}

/// Result of [`Poset::check_compatibility`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityCheck {
    pub k: usize,
    pub assignments: u64,
    pub p_partitions: u64,
    /// First `f` where P-partition membership and `π(β(f)) ∈ ℒ(P)` disagree.
    pub counterexample: Option<Vec<u64>>,
}

impl CompatibilityCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// `ι₁` restricted to anchored barred permutations over linear extensions.
struct Iota1OnPoset<'a> {
    poset: &'a Poset,
    inner: Iota1,
}

impl SignedInvolution for Iota1OnPoset<'_> {
    type Item = AnchoredBarredPermutation;

    fn sign(&self, b: &Self::Item) -> i32 {
        self.inner.sign(b)
    }

    fn apply(&self, b: &Self::Item) -> Self::Item {
        self.inner.apply(b)
    }

    fn is_exception(&self, b: &Self::Item) -> bool {
        self.inner.is_exception(b)
    }

    fn in_domain(&self, b: &Self::Item) -> bool {
        self.inner.in_domain(b) && self.poset.is_linear_extension(b.pi())
    }

    fn class_of(&self, b: &Self::Item) -> usize {
        self.inner.class_of(b)
    }

    fn check_pair(&self, b: &Self::Item, image: &Self::Item) -> std::result::Result<(), String> {
        self.inner.check_pair(b, image)
    }
}

/// Outcome of checking the P-Eulerian alternating sum at one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeulReport {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
    pub k: usize,
    /// `Ω_P(j)` for `0 ≤ j ≤ k`.
    #[serde(serialize_with = "crate::barred::serialize_counts")]
    pub omega_values: BTreeMap<usize, BigInt>,
    /// Elements of `𝔅_{P,k}` with `i` floats.
    #[serde(serialize_with = "crate::barred::serialize_counts")]
    pub class_counts: BTreeMap<usize, BigInt>,
    /// `Σ (−1)^i C(n+1,i) Ω_P(k−i)`.
    #[serde(with = "crate::numbers::decimal")]
    pub formula_sum: BigInt,
    /// Signed count of `𝔅_{P,k}` under the checked involution.
    #[serde(with = "crate::numbers::decimal")]
    pub signed_sum: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub fixed_points: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub p_eulerian: BigInt,
}

impl PeulReport {
    /// Every class has `C(n+1,i)·Ω_P(k−i)` elements and all three totals agree.
    pub fn holds(&self) -> bool {
        let classes = self.class_counts.iter().all(|(&i, c)| {
            *c == binomial(self.n as u64 + 1, i as i64) * &self.omega_values[&(self.k - i)]
        });
        classes && self.signed_sum == self.formula_sum && self.signed_sum == self.p_eulerian && self.fixed_points == self.p_eulerian
    }
}

/// Runs `ι₁` over `𝔅_{P,k}` and compares with the `Ω_P` alternating sum.
pub fn verify_die_peul(poset: &Poset, k: usize, bounds: &Bounds) -> Result<PeulReport> {
    let n = poset.n();
    let extensions = poset.linear_extensions(bounds)?;
    let predicted: BigInt = (0..=k).map(|i| class_size_formula(n, k, i)).sum();
    bounds.check_items("|𝔅_{n,k}|", predicted.try_into().unwrap_or(u128::MAX))?;
    let omega_values: BTreeMap<usize, BigInt> =
        (0..=k).map(|j| poset.omega_via_linext(j, bounds).map(|v| (j, v))).collect::<Result<_>>()?;
    let formula_sum = (0..=k)
        .map(|i| {
            let term = binomial(n as u64 + 1, i as i64) * &omega_values[&(k - i)];
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let inv = Iota1OnPoset { poset, inner: Iota1 { n, k } };
    let tally = check_involution_parts(&inv, extensions.iter().map(|pi| anchored_over(pi, k, None)))?;
    Ok(PeulReport {
        n,
        covers: poset.covers().to_vec(),
        k,
        omega_values,
        class_counts: (0..=k).map(|i| (i, BigInt::from(*tally.class_counts.get(&i).unwrap_or(&0)))).collect(),
        formula_sum,
        signed_sum: tally.signed_sum_big(),
        fixed_points: tally.fixed_points.into(),
        p_eulerian: BigInt::from(extensions.iter().filter(|pi| pi.des() == k).count()),
    })
}
