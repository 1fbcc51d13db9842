//! Barred permutations, their anchored refinement, and the float toggle `ι₁`.
//!
//! A barred permutation with `k` bars is a placement of balls `1..n` into
//! boxes `0..=k`, written box by box with each box sorted. Gaps are indexed
//! `0..=n`: gap `0` precedes `π(1)`, gap `i` sits between `π(i)` and
//! `π(i+1)`, gap `n` follows `π(n)`.
//!
//! Text form, gap by gap: `f|` is a float, `|` an unnecessary bar, `a|` an
//! anchor, listed in that order within a gap. Elements are bare digits when
//! `n ≤ 9` (`f||3|56|a|12f|4|789`) and whitespace-separated otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::involution::{check_involution, SignedInvolution, Tally};
use crate::numbers::binomial;
use crate::perm::{Permutation, Permutations};
use crate::{Bounds, Error, Result};

/// An element of `B_{n,k}`: a permutation with a bar count for each gap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarredPermutation {
    pi: Permutation,
    bars: Vec<u32>,
}

impl BarredPermutation {
    pub fn new(pi: Permutation, bars: Vec<u32>) -> Result<Self> {
        let n = pi.len();
        if bars.len() != n + 1 {
            return Err(Error::InvalidBarred(format!("expected {} gaps, got {}", n + 1, bars.len())));
        }
        if let Some(i) = pi.descent_set().into_iter().find(|&i| bars[i] == 0) {
            return Err(Error::InvalidBarred(format!("descent gap {i} has no bar")));
        }
        Ok(BarredPermutation { pi, bars })
    }

    /// The placement where ball `i` lands in box `boxes[i-1]`.
    pub fn from_assignment(boxes: &[u32], k: u32) -> Result<Self> {
        if let Some(&b) = boxes.iter().find(|&&b| b > k) {
            return Err(Error::InvalidBarred(format!("box {b} exceeds {k}")));
        }
        let mut order: Vec<usize> = (1..=boxes.len()).collect();
        order.sort_by_key(|&i| (boxes[i - 1], i));
        let mut bars = Vec::with_capacity(order.len() + 1);
        let mut level = 0;
        for &i in &order {
            bars.push(boxes[i - 1] - level);
            level = boxes[i - 1];
        }
        bars.push(k - level);
        BarredPermutation::new(Permutation::new(order)?, bars)
    }

    /// Box index of each ball, inverse of [`Self::from_assignment`].
    pub fn to_assignment(&self) -> Vec<u32> {
        let mut boxes = vec![0; self.pi.len()];
        let mut level = 0;
        for (pos, &v) in self.pi.one_line().iter().enumerate() {
            level += self.bars[pos];
            boxes[v - 1] = level;
        }
        boxes
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn bars(&self) -> &[u32] {
        &self.bars
    }

    pub fn total_bars(&self) -> u32 {
        self.bars.iter().sum()
    }
}

impl fmt::Display for BarredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gaps: Vec<GapBars> =
            self.bars.iter().map(|&u| GapBars { float: false, unnecessary: u, anchor: false }).collect();
        write_gapped(f, &self.pi, &gaps)
    }
}

impl FromStr for BarredPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (pi, gaps) = parse_gapped(s)?;
        if gaps.iter().any(|g| g.float || g.anchor) {
            return Err(Error::Parse("plain barred permutations use only `|`".into()));
        }
        BarredPermutation::new(pi, gaps.iter().map(|g| g.unnecessary).collect())
    }
}

/// An element of `𝔅_{n,k}`. Anchors are implied by the descents of `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AnchoredRepr", into = "AnchoredRepr")]
pub struct AnchoredBarredPermutation {
    pi: Permutation,
    unnecessary: Vec<u32>,
    float: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct AnchoredRepr {
    pi: Permutation,
    unnecessary: Vec<u32>,
    float: Vec<bool>,
}

impl TryFrom<AnchoredRepr> for AnchoredBarredPermutation {
    type Error = Error;
    fn try_from(r: AnchoredRepr) -> Result<Self> {
        AnchoredBarredPermutation::new(r.pi, r.unnecessary, r.float)
    }
}

impl From<AnchoredBarredPermutation> for AnchoredRepr {
    fn from(b: AnchoredBarredPermutation) -> Self {
        AnchoredRepr { pi: b.pi, unnecessary: b.unnecessary, float: b.float }
    }
}

impl AnchoredBarredPermutation {
    pub fn new(pi: Permutation, unnecessary: Vec<u32>, float: Vec<bool>) -> Result<Self> {
        let gaps = pi.len() + 1;
        if unnecessary.len() != gaps || float.len() != gaps {
            return Err(Error::InvalidBarred(format!("expected {gaps} gaps")));
        }
        Ok(AnchoredBarredPermutation { pi, unnecessary, float })
    }

    /// The exception over `pi`: one anchor per descent and nothing else.
    pub fn anchors_only(pi: Permutation) -> Self {
        let gaps = pi.len() + 1;
        AnchoredBarredPermutation { pi, unnecessary: vec![0; gaps], float: vec![false; gaps] }
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn n(&self) -> usize {
        self.pi.len()
    }

    pub fn unnecessary(&self) -> &[u32] {
        &self.unnecessary
    }

    pub fn float(&self) -> &[bool] {
        &self.float
    }

    pub fn has_anchor(&self, gap: usize) -> bool {
        self.pi.is_descent(gap)
    }

    pub fn anchor_count(&self) -> usize {
        self.pi.des()
    }

    pub fn float_count(&self) -> usize {
        self.float.iter().filter(|&&f| f).count()
    }

    pub fn total_bars(&self) -> usize {
        self.anchor_count() + self.unnecessary.iter().sum::<u32>() as usize + self.float_count()
    }

    /// `(−1)^{#floats}`.
    pub fn sign(&self) -> i32 {
        if self.float_count().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_anchors_only(&self) -> bool {
        self.float_count() == 0 && self.unnecessary.iter().all(|&u| u == 0)
    }

    /// Forgets bar species.
    pub fn underlying(&self) -> BarredPermutation {
        let bars = (0..=self.n())
            .map(|g| self.unnecessary[g] + u32::from(self.float[g]) + u32::from(self.has_anchor(g)))
            .collect();
        BarredPermutation { pi: self.pi.clone(), bars }
    }

    /// `ι₁`: in the leftmost gap holding a non-anchor bar, turn its leftmost
    /// non-anchor bar from float to unnecessary or back. Anchor-only
    /// elements are fixed.
    pub fn iota1(&self) -> Self {
        let mut out = self.clone();
        let Some(g) = (0..=self.n()).find(|&g| self.float[g] || self.unnecessary[g] > 0) else {
            return out;
        };
        if self.float[g] {
            out.float[g] = false;
            out.unnecessary[g] += 1;
        } else {
            out.unnecessary[g] -= 1;
            out.float[g] = true;
        }
        out
    }

    fn gaps(&self) -> Vec<GapBars> {
        (0..=self.n())
            .map(|g| GapBars { float: self.float[g], unnecessary: self.unnecessary[g], anchor: self.has_anchor(g) })
            .collect()
    }
}

impl fmt::Display for AnchoredBarredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_gapped(f, &self.pi, &self.gaps())
    }
}

impl FromStr for AnchoredBarredPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (pi, gaps) = parse_gapped(s)?;
        for (g, bars) in gaps.iter().enumerate() {
            if bars.anchor != pi.is_descent(g) {
                let what = if bars.anchor { "anchor in a non-descent gap" } else { "descent gap without an anchor" };
                return Err(Error::InvalidBarred(format!("{what} (gap {g})")));
            }
        }
        let unnecessary = gaps.iter().map(|g| g.unnecessary).collect();
        let float = gaps.iter().map(|g| g.float).collect();
        AnchoredBarredPermutation::new(pi, unnecessary, float)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct GapBars {
    float: bool,
    unnecessary: u32,
    anchor: bool,
}

fn write_gapped(f: &mut fmt::Formatter<'_>, pi: &Permutation, gaps: &[GapBars]) -> fmt::Result {
    let compact = pi.len() <= 9;
    let mut tokens: Vec<String> = Vec::new();
    let push_gap = |tokens: &mut Vec<String>, g: &GapBars| {
        if g.float {
            tokens.push("f|".into());
        }
        tokens.extend(std::iter::repeat_n("|".to_string(), g.unnecessary as usize));
        if g.anchor {
            tokens.push("a|".into());
        }
    };
    for (pos, &v) in pi.one_line().iter().enumerate() {
        push_gap(&mut tokens, &gaps[pos]);
        tokens.push(v.to_string());
    }
    push_gap(&mut tokens, &gaps[pi.len()]);
    f.write_str(&tokens.join(if compact { "" } else { " " }))
}

fn parse_gapped(s: &str) -> Result<(Permutation, Vec<GapBars>)> {
    let spaced = s.trim().contains(char::is_whitespace);
    let chars: Vec<char> = s.trim().chars().collect();
    let mut values = Vec::new();
    let mut gaps = vec![GapBars::default()];
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let gap = gaps.last_mut().expect("at least one gap");
        match c {
            c if c.is_whitespace() => {}
            '|' => gap.unnecessary += 1,
            'f' | 'a' => {
                if chars.get(i + 1) != Some(&'|') {
                    return Err(Error::Parse(format!("`{c}` must be followed by `|`")));
                }
                if c == 'f' {
                    if gap.float || gap.unnecessary > 0 || gap.anchor {
                        return Err(Error::Parse("a float must come first and at most once per gap".into()));
                    }
                    gap.float = true;
                } else {
                    if gap.anchor {
                        return Err(Error::Parse("two anchors in one gap".into()));
                    }
                    gap.anchor = true;
                }
                i += 1;
            }
            '0'..='9' => {
                let mut j = i + 1;
                if spaced {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                values.push(text.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
                gaps.push(GapBars::default());
                i = j;
                continue;
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
        if c == '|' && gap.anchor {
            return Err(Error::Parse("unnecessary bars must precede the anchor".into()));
        }
        i += 1;
    }
    Ok((Permutation::new(values)?, gaps))
}

/// All vectors of length `len` with nonnegative entries summing to at most
/// `max_sum`, in lexicographic order.
fn vectors_sum_at_most(len: usize, max_sum: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur.push(v);
            rec(len, left - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_sum, &mut Vec::with_capacity(len), &mut out);
    out
}

/// All boolean vectors of length `len` with exactly `ones` entries set, in
/// lexicographic order (`false < true`).
fn subsets_of_size(len: usize, ones: usize) -> Vec<Vec<bool>> {
    fn rec(len: usize, ones: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let left = len - cur.len();
        if ones > left {
            return;
        }
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        cur.push(false);
        rec(len, ones, cur, out);
        cur.pop();
        if ones > 0 {
            cur.push(true);
            rec(len, ones - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, ones, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `𝔅_{π,k}`, optionally restricted to `floats` float bars, in order of
/// (unnecessary vector, float vector).
pub fn anchored_over(pi: &Permutation, k: usize, floats: Option<usize>) -> Vec<AnchoredBarredPermutation> {
    let n = pi.len();
    let d = pi.des();
    if d > k {
        return Vec::new();
    }
    let spare = (k - d) as u32;
    let mut out = Vec::new();
    for u in vectors_sum_at_most(n + 1, spare) {
        let t = (spare - u.iter().sum::<u32>()) as usize;
        if t > n + 1 || floats.is_some_and(|i| i != t) {
            continue;
        }
        for fl in subsets_of_size(n + 1, t) {
            out.push(AnchoredBarredPermutation { pi: pi.clone(), unnecessary: u.clone(), float: fl });
        }
    }
    out
}

/// `|B^i_{n,k}| = C(n+1,i)(k+1−i)^n`.
pub fn class_size_formula(n: usize, k: usize, i: usize) -> BigInt {
    if i > k {
        return BigInt::from(0);
    }
    binomial(n as u64 + 1, i as i64) * num_traits::pow(BigInt::from(k + 1 - i), n)
}

fn predicted_total(n: usize, k: usize) -> u128 {
    (0..=k)
        .map(|i| class_size_formula(n, k, i))
        .sum::<BigInt>()
        .try_into()
        .unwrap_or(u128::MAX)
}

/// Every element of `𝔅_{n,k}` (or `B^i_{n,k}` when `floats = Some(i)`),
/// lexicographic by (π, unnecessary vector, float vector).
pub fn enumerate_anchored(
    n: usize,
    k: usize,
    floats: Option<usize>,
    bounds: &Bounds,
) -> Result<impl Iterator<Item = AnchoredBarredPermutation>> {
    bounds.check_n("n", n)?;
    bounds.check_items("|𝔅_{n,k}|", predicted_total(n, k))?;
    Ok(Permutations::new(n).flat_map(move |pi| anchored_over(&pi, k, floats)))
}

/// The barred permutations over `pi` with exactly `k` bars.
pub fn barred_over(pi: &Permutation, k: usize) -> Vec<BarredPermutation> {
    let descents = pi.descent_set();
    let d = descents.len();
    if d > k {
        return Vec::new();
    }
    // spread the k − des free bars over the gaps, then add one per descent
    vectors_sum_at_most(pi.len() + 1, (k - d) as u32)
        .into_iter()
        .filter(|v| v.iter().sum::<u32>() as usize == k - d)
        .map(|mut v| {
            for &i in &descents {
                v[i] += 1;
            }
            BarredPermutation { pi: pi.clone(), bars: v }
        })
        .collect()
}

/// Every barred permutation of `n` elements with exactly `k` bars.
pub fn enumerate_barred(n: usize, k: usize, bounds: &Bounds) -> Result<impl Iterator<Item = BarredPermutation>> {
    bounds.check_n("n", n)?;
    bounds.check_items("(k+1)^n", (k as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX))?;
    Ok(Permutations::new(n).flat_map(move |pi| barred_over(&pi, k)))
}

/// `|B_{n,k}|` by exhaustive generation.
pub fn count_barred(n: usize, k: usize, bounds: &Bounds) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_barred(n, k, bounds)?.count()))
}

/// `ι₁` on `𝔅_{n,k}`.
#[derive(Clone, Copy, Debug)]
pub struct Iota1 {
    pub n: usize,
    pub k: usize,
}

impl SignedInvolution for Iota1 {
    type Item = AnchoredBarredPermutation;

    fn sign(&self, b: &Self::Item) -> i32 {
        b.sign()
    }

    fn apply(&self, b: &Self::Item) -> Self::Item {
        b.iota1()
    }

    fn is_exception(&self, b: &Self::Item) -> bool {
        b.is_anchors_only()
    }

    fn in_domain(&self, b: &Self::Item) -> bool {
        b.n() == self.n && b.total_bars() == self.k
    }

    fn class_of(&self, b: &Self::Item) -> usize {
        b.float_count()
    }

    fn check_pair(&self, b: &Self::Item, image: &Self::Item) -> std::result::Result<(), String> {
        if b.pi != image.pi {
            return Err(format!("underlying permutation changed to {image}"));
        }
        Ok(())
    }
}

/// Outcome of checking `ι₁` over `𝔅_{n,k}` or one of its fibres `𝔅_{π,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Die1Report {
    pub n: usize,
    pub k: usize,
    /// `|B^i|` by float count `i`.
    #[serde(serialize_with = "serialize_counts")]
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

impl Die1Report {
    pub(crate) fn from_tally(n: usize, k: usize, t: &Tally) -> Self {
        Die1Report {
            n,
            k,
            class_counts: (0..=k).map(|i| (i, BigInt::from(*t.class_counts.get(&i).unwrap_or(&0)))).collect(),
            total: t.total.into(),
            paired: t.paired.into(),
            fixed_points: t.fixed_points.into(),
            signed_sum: t.signed_sum.into(),
        }
    }

    /// Whether every `|B^i_{n,k}|` equals `C(n+1,i)(k+1−i)^n`.
    pub fn classes_match_formula(&self) -> bool {
        self.class_counts.iter().all(|(&i, c)| *c == class_size_formula(self.n, self.k, i))
    }
}

pub(crate) fn serialize_counts<S: serde::Serializer>(m: &BTreeMap<usize, BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(k, v)| (k.to_string(), v.to_string())))
}

/// Applies `ι₁` to all of `𝔅_{n,k}` and checks the involution laws.
pub fn verify_die_eq1(n: usize, k: usize, bounds: &Bounds) -> Result<Die1Report> {
    let tally = check_involution(&Iota1 { n, k }, enumerate_anchored(n, k, None, bounds)?)?;
    Ok(Die1Report::from_tally(n, k, &tally))
}

/// The same check restricted to the fibre `𝔅_{π,k}`.
pub fn restrict_to_permutation(k: usize, pi: &Permutation) -> Result<Die1Report> {
    let n = pi.len();
    let tally = check_involution(&Iota1 { n, k }, anchored_over(pi, k, None))?;
    Ok(Die1Report::from_tally(n, k, &tally))
}
