//! Set compositions, decorated set compositions and the split/merge toggle `ι₂`.
//!
//! Text form: elements separated by spaces, `|` for an ordinary boundary,
//! `a|` for an anchor (left maximum above right minimum), and a trailing `~`
//! on highlighted elements, e.g. `3 5~ 6~ a| 1~ 2~ 4~ | 7 8~ | 9~`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::involution::{check_involution, SignedInvolution, Tally};
use crate::numbers::{binomial, factorial, stirling2};
use crate::perm::{Permutation, Permutations};
use crate::{Bounds, Error, Result};

/// An ordered partition of `{1..n}` into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SetComposition {
    blocks: Vec<Vec<usize>>,
}

impl SetComposition {
    /// Blocks may be given in any internal order; they are stored sorted.
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidComposition("empty block".into()));
            }
            block.sort_unstable();
            for &v in block.iter() {
                if v == 0 || v > n {
                    return Err(Error::InvalidComposition(format!("element {v} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidComposition(format!("element {v} repeated")));
                }
            }
        }
        Ok(SetComposition { blocks })
    }

    /// Cuts `pi` after each position in `cuts` (positions `1..n−1`).
    pub fn from_word(pi: &Permutation, cuts: &[usize]) -> Result<Self> {
        let mut blocks = vec![Vec::new()];
        for (pos, &v) in pi.one_line().iter().enumerate() {
            if pos > 0 && cuts.contains(&pos) {
                blocks.push(Vec::new());
            }
            blocks.last_mut().expect("nonempty").push(v);
        }
        SetComposition::new(blocks)
    }

    /// Blocks are the maximal increasing runs of `pi`.
    pub fn descent_composition(pi: &Permutation) -> Self {
        SetComposition::from_word(pi, &pi.descent_set()).expect("runs form a composition")
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Blocks concatenated.
    pub fn reading_word(&self) -> Vec<usize> {
        self.blocks.concat()
    }

    /// Whether the boundary after block `b` (0-based) is an anchor.
    pub fn is_anchor(&self, b: usize) -> bool {
        self.blocks[b].last() > self.blocks[b + 1].first()
    }

    pub fn maxima(&self) -> BTreeSet<usize> {
        self.blocks.iter().filter_map(|b| b.last().copied()).collect()
    }

    /// Every boundary is an anchor.
    pub fn is_descent_composition(&self) -> bool {
        (0..self.len().saturating_sub(1)).all(|b| self.is_anchor(b))
    }
}

impl TryFrom<Vec<Vec<usize>>> for SetComposition {
    type Error = Error;
    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        SetComposition::new(blocks)
    }
}

impl From<SetComposition> for Vec<Vec<usize>> {
    fn from(c: SetComposition) -> Self {
        c.blocks
    }
}

/// A set composition with a highlighted set containing every block maximum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DecoratedRepr", into = "DecoratedRepr")]
pub struct DecoratedSetComposition {
    composition: SetComposition,
    highlighted: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct DecoratedRepr {
    blocks: SetComposition,
    highlighted: BTreeSet<usize>,
}

impl TryFrom<DecoratedRepr> for DecoratedSetComposition {
    type Error = Error;
    fn try_from(r: DecoratedRepr) -> Result<Self> {
        DecoratedSetComposition::new(r.blocks, r.highlighted)
    }
}

impl From<DecoratedSetComposition> for DecoratedRepr {
    fn from(g: DecoratedSetComposition) -> Self {
        DecoratedRepr { blocks: g.composition, highlighted: g.highlighted }
    }
}

impl DecoratedSetComposition {
    pub fn new(composition: SetComposition, highlighted: BTreeSet<usize>) -> Result<Self> {
        let n = composition.n();
        if let Some(&v) = highlighted.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidComposition(format!("highlighted element {v} outside 1..={n}")));
        }
        if let Some(m) = composition.maxima().into_iter().find(|m| !highlighted.contains(m)) {
            return Err(Error::InvalidComposition(format!("block maximum {m} is not highlighted")));
        }
        Ok(DecoratedSetComposition { composition, highlighted })
    }

    /// Only the maxima highlighted.
    pub fn plain(composition: SetComposition) -> Self {
        let highlighted = composition.maxima();
        DecoratedSetComposition { composition, highlighted }
    }

    pub fn composition(&self) -> &SetComposition {
        &self.composition
    }

    pub fn highlighted(&self) -> &BTreeSet<usize> {
        &self.highlighted
    }

    /// Highlighted elements that are not block maxima.
    pub fn remarkable(&self) -> BTreeSet<usize> {
        self.highlighted.difference(&self.composition.maxima()).copied().collect()
    }

    /// `(−1)^{#remarkable}`.
    pub fn sign(&self) -> i32 {
        if self.remarkable().len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The leftmost highlighted element not followed by an anchor, ignoring
    /// the last element of the word.
    pub fn toggle_element(&self) -> Option<usize> {
        let blocks = self.composition.blocks();
        for (b, block) in blocks.iter().enumerate() {
            for (j, &v) in block.iter().enumerate() {
                let last_in_block = j + 1 == block.len();
                if b + 1 == blocks.len() && last_in_block {
                    return None;
                }
                if self.highlighted.contains(&v) && !(last_in_block && self.composition.is_anchor(b)) {
                    return Some(v);
                }
            }
        }
        None
    }

    /// `ι₂`: split right after the toggle element, or merge across the
    /// ordinary boundary that follows it.
    pub fn iota2(&self) -> Self {
        let Some(h) = self.toggle_element() else {
            return self.clone();
        };
        let mut blocks = self.composition.blocks.clone();
        let b = blocks.iter().position(|block| block.contains(&h)).expect("toggle element is placed");
        let j = blocks[b].iter().position(|&v| v == h).expect("toggle element is in its block");
        if j + 1 < blocks[b].len() {
            let right = blocks[b].split_off(j + 1);
            blocks.insert(b + 1, right);
        } else {
            let right = blocks.remove(b + 1);
            blocks[b].extend(right);
        }
        DecoratedSetComposition { composition: SetComposition { blocks }, highlighted: self.highlighted.clone() }
    }
}

impl fmt::Display for DecoratedSetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = Vec::new();
        for (b, block) in self.composition.blocks.iter().enumerate() {
            if b > 0 {
                tokens.push(if self.composition.is_anchor(b - 1) { "a|".to_string() } else { "|".to_string() });
            }
            for v in block {
                tokens.push(if self.highlighted.contains(v) { format!("{v}~") } else { v.to_string() });
            }
        }
        f.write_str(&tokens.join(" "))
    }
}

impl FromStr for DecoratedSetComposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = vec![Vec::new()];
        let mut marks = Vec::new();
        let mut highlighted = BTreeSet::new();
        for token in s.split_whitespace() {
            match token {
                "|" | "a|" => {
                    marks.push(token == "a|");
                    blocks.push(Vec::new());
                }
                _ => {
                    let (digits, hl) = match token.strip_suffix('~') {
                        Some(d) => (d, true),
                        None => (token, false),
                    };
                    let v: usize = digits.parse().map_err(|_| Error::Parse(format!("bad token {token:?}")))?;
                    if hl {
                        highlighted.insert(v);
                    }
                    blocks.last_mut().expect("nonempty").push(v);
                }
            }
        }
        if blocks.iter().any(|b| b.windows(2).any(|w| w[0] > w[1])) {
            return Err(Error::InvalidComposition("blocks must be written in increasing order".into()));
        }
        let composition = SetComposition::new(blocks)?;
        for (b, &anchor) in marks.iter().enumerate() {
            if anchor != composition.is_anchor(b) {
                return Err(Error::InvalidComposition(format!("boundary {} is marked wrongly", b + 1)));
            }
        }
        DecoratedSetComposition::new(composition, highlighted)
    }
}

/// Subsets of `1..n−1` containing `required`, as sorted vectors, in
/// lexicographic order of their indicator vectors.
fn cut_sets(n: usize, required: &[usize]) -> Vec<Vec<usize>> {
    let optional: Vec<usize> = (1..n).filter(|p| !required.contains(p)).collect();
    let m = optional.len();
    let mut out = Vec::with_capacity(1 << m);
    for mask in 0..(1u64 << m) {
        let mut cuts: Vec<usize> = required.to_vec();
        for (bit, &p) in optional.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                cuts.push(p);
            }
        }
        cuts.sort_unstable();
        out.push(cuts);
    }
    out.sort_by_key(|cuts| (1..n).map(|p| cuts.contains(&p)).collect::<Vec<bool>>());
    out
}

/// Ways to pick `size` of `pool`, in lexicographic order of indicator vectors.
fn choose(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &[usize], size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if size == 0 {
            out.push(cur.clone());
            return;
        }
        if pool.len() < size {
            return;
        }
        rec(&pool[1..], size, cur, out);
        cur.push(pool[0]);
        rec(&pool[1..], size - 1, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    rec(pool, size, &mut Vec::new(), &mut out);
    out
}

/// `S(n,blocks)·blocks!` by exhaustive generation.
pub fn count_set_compositions(n: usize, blocks: usize, bounds: &Bounds) -> Result<BigInt> {
    bounds.check_n("n", n)?;
    bounds.check_items("ordered set partitions", set_composition_total(n))?;
    let mut count: u64 = 0;
    for pi in Permutations::new(n) {
        for cuts in cut_sets(n, &pi.descent_set()) {
            count += u64::from(cuts.len() + 1 == blocks);
        }
    }
    Ok(BigInt::from(count))
}

fn set_composition_total(n: usize) -> u128 {
    (1..=n)
        .map(|i| stirling2(n, i as i64) * factorial(i as u64))
        .sum::<BigInt>()
        .try_into()
        .unwrap_or(u128::MAX)
}

/// `|C^i_{n,k}| = C(n−i, k+1−i)·S(n,i)·i!`.
pub fn class_size_formula(n: usize, k: usize, i: usize) -> BigInt {
    if i == 0 || i > n || i > k + 1 {
        return BigInt::from(0);
    }
    binomial((n - i) as u64, (k + 1 - i) as i64) * stirling2(n, i as i64) * factorial(i as u64)
}

/// Every decorated set composition of `{1..n}` with `k+1` highlighted
/// elements (and `blocks` blocks when given), ordered by reading word, then
/// boundary positions, then highlighted set.
pub fn enumerate_decorated(
    n: usize,
    k: usize,
    blocks: Option<usize>,
    bounds: &Bounds,
) -> Result<impl Iterator<Item = DecoratedSetComposition>> {
    bounds.check_n("n", n)?;
    let predicted: BigInt = (1..=n).map(|i| class_size_formula(n, k, i)).sum();
    bounds.check_items("|𝒞_{n,k}|", predicted.try_into().unwrap_or(u128::MAX))?;
    Ok(Permutations::new(n).flat_map(move |pi| {
        let mut out = Vec::new();
        for cuts in cut_sets(n, &pi.descent_set()) {
            let i = cuts.len() + 1;
            if i > k + 1 || blocks.is_some_and(|b| b != i) {
                continue;
            }
            let composition = SetComposition::from_word(&pi, &cuts).expect("cuts refine descents");
            let maxima = composition.maxima();
            let rest: Vec<usize> = (1..=n).filter(|v| !maxima.contains(v)).collect();
            for extra in choose(&rest, k + 1 - i) {
                let mut highlighted = maxima.clone();
                highlighted.extend(extra);
                out.push(DecoratedSetComposition { composition: composition.clone(), highlighted });
            }
        }
        out
    }))
}

/// `ι₂` on `𝒞_{n,k}`.
#[derive(Clone, Copy, Debug)]
pub struct Iota2 {
    pub n: usize,
    pub k: usize,
}

impl SignedInvolution for Iota2 {
    type Item = DecoratedSetComposition;

    fn sign(&self, g: &Self::Item) -> i32 {
        g.sign()
    }

    fn apply(&self, g: &Self::Item) -> Self::Item {
        g.iota2()
    }

    /// Descent compositions with nothing remarkable.
    fn is_exception(&self, g: &Self::Item) -> bool {
        g.composition.is_descent_composition() && g.remarkable().is_empty()
    }

    fn in_domain(&self, g: &Self::Item) -> bool {
        g.composition.n() == self.n && g.highlighted.len() == self.k + 1
    }

    fn class_of(&self, g: &Self::Item) -> usize {
        g.composition.len()
    }

    fn check_pair(&self, g: &Self::Item, image: &Self::Item) -> std::result::Result<(), String> {
        if g.highlighted != image.highlighted {
            return Err("highlighted set changed".into());
        }
        if g.composition.reading_word() != image.composition.reading_word() {
            return Err("reading word changed".into());
        }
        if g.toggle_element() != image.toggle_element() {
            return Err(format!("toggle element changed to {:?}", image.toggle_element()));
        }
        Ok(())
    }
}

/// Outcome of checking `ι₂` over `𝒞_{n,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Die2Report {
    pub n: usize,
    pub k: usize,
    /// `|C^i_{n,k}|` by block count `i`.
    #[serde(serialize_with = "crate::barred::serialize_counts")]
    pub class_counts: BTreeMap<usize, BigInt>,
    #[serde(with = "crate::numbers::decimal")]
    pub total: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub paired: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub fixed_points: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub signed_sum: BigInt,
}

impl Die2Report {
    pub const CSV_HEADER: [&'static str; 7] = ["n", "k", "blocks", "count", "formula", "fixed_points", "signed_sum"];

    fn from_tally(n: usize, k: usize, t: &Tally) -> Self {
        Die2Report {
            n,
            k,
            class_counts: (1..=(k + 1).min(n)).map(|i| (i, BigInt::from(*t.class_counts.get(&i).unwrap_or(&0)))).collect(),
            total: t.total.into(),
            paired: t.paired.into(),
            fixed_points: t.fixed_points.into(),
            signed_sum: t.signed_sum.into(),
        }
    }

    pub fn classes_match_formula(&self) -> bool {
        self.class_counts.iter().all(|(&i, c)| *c == class_size_formula(self.n, self.k, i))
    }

    /// One row per block count, columns as in [`Self::CSV_HEADER`].
    pub fn csv_rows(&self) -> Vec<[String; 7]> {
        self.class_counts
            .iter()
            .map(|(&i, c)| {
                [
                    self.n.to_string(),
                    self.k.to_string(),
                    i.to_string(),
                    c.to_string(),
                    class_size_formula(self.n, self.k, i).to_string(),
                    self.fixed_points.to_string(),
                    self.signed_sum.to_string(),
                ]
            })
            .collect()
    }
}

/// Applies `ι₂` to all of `𝒞_{n,k}` and checks the involution laws.
pub fn verify_die_eq2(n: usize, k: usize, bounds: &Bounds) -> Result<Die2Report> {
    let tally = check_involution(&Iota2 { n, k }, enumerate_decorated(n, k, None, bounds)?)?;
    Ok(Die2Report::from_tally(n, k, &tally))
}
