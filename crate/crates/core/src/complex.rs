//! Finite abstract simplicial complexes with faces stored as `u128` vertex
//! bitsets, interval partitions, decorated faces and the toggle `ι₃`, and the
//! barycentric subdivisions `Δₙ` and `Δ′ₙ`.
//!
//! Vertex `i` is bit `i`, in the order the labels were given. That order is
//! also the one `ι₃` uses to pick its least vertex.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::involution::{check_involution, SignedInvolution};
use crate::numbers::{binomial, eulerian, factorial, stirling2};
use crate::perm::Permutations;
use crate::{Bounds, Error, Result};

/// A set of vertex indices.
pub type Face = u128;

fn card(f: Face) -> usize {
    f.count_ones() as usize
}

fn indices(f: Face) -> Vec<usize> {
    (0..128).filter(|&i| f >> i & 1 == 1).collect()
}

/// Orders faces by size, then lexicographically by their index lists.
fn face_key(f: Face) -> (usize, Vec<usize>) {
    (card(f), indices(f))
}

/// Every subset of `f`, including `0` and `f`.
fn subsets(f: Face) -> impl Iterator<Item = Face> {
    let mut next = Some(f);
    std::iter::from_fn(move || {
        let s = next?;
        next = if s == 0 { None } else { Some((s - 1) & f) };
        Some(s)
    })
}

/// A vertex label as written in JSON: a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Str(s.to_string())
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<Label>,
    facets: Vec<Vec<Label>>,
}

/// A downward-closed family of vertex sets, always containing `∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    facets: Vec<Face>,
    faces: Vec<Face>,
}

impl SimplicialComplex {
    pub fn from_facets(labels: Vec<Label>, facets: &[Vec<Label>]) -> Result<Self> {
        if labels.len() > 128 {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.to_string()));
            }
        }
        let mut masks = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut mask: Face = 0;
            for l in facet {
                let i = index.get(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?;
                mask |= 1 << i;
            }
            masks.push(mask);
        }
        for (a, &fa) in masks.iter().enumerate() {
            for (b, &fb) in masks.iter().enumerate() {
                if a != b && fa & !fb == 0 && (fa != fb || a > b) {
                    return Err(Error::DominatedFacet { dominated: label_list(&labels, fa), by: label_list(&labels, fb) });
                }
            }
        }
        Ok(Self::from_masks(labels, masks))
    }

    /// Trusts that `facets` is an antichain.
    fn from_masks(labels: Vec<Label>, mut facets: Vec<Face>) -> Self {
        if facets.is_empty() {
            facets.push(0);
        }
        facets.sort_by_key(|&f| face_key(f));
        let mut seen = HashSet::new();
        for &f in &facets {
            seen.extend(subsets(f));
        }
        let mut faces: Vec<Face> = seen.into_iter().collect();
        faces.sort_by_key(|&f| face_key(f));
        SimplicialComplex { labels, facets, faces }
    }

    /// Parses `{"vertices": [...], "facets": [[...], ...]}`.
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(src)?;
        SimplicialComplex::from_facets(raw.vertices, &raw.facets)
    }

    pub fn to_json(&self) -> String {
        let raw = ComplexJson { vertices: self.labels.clone(), facets: self.facets.iter().map(|&f| self.face_labels(f)).collect() };
        serde_json::to_string(&raw).expect("complex serializes")
    }

    /// All subsets of `{1..n}`.
    pub fn full_simplex(n: usize) -> Self {
        let labels = (1..=n as i64).map(Label::Int).collect();
        SimplicialComplex::from_masks(labels, vec![mask_below(n)])
    }

    /// All proper subsets of `{1..n}`.
    pub fn simplex_boundary(n: usize) -> Self {
        let labels = (1..=n as i64).map(Label::Int).collect();
        let full = mask_below(n);
        let facets = if n == 0 { vec![] } else { (0..n).map(|i| full & !(1 << i)).collect() };
        SimplicialComplex::from_masks(labels, facets)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Faces ordered by size, then lexicographically; `faces()[0]` is `∅`.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_face(&self, f: Face) -> bool {
        self.facets.iter().any(|&x| f & !x == 0)
    }

    pub fn is_facet(&self, f: Face) -> bool {
        self.facets.contains(&f)
    }

    /// `max |F|`, one more than the dimension.
    pub fn d(&self) -> usize {
        self.facets.iter().map(|&f| card(f)).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|&f| card(f) == card(self.facets[0]))
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0u64; self.d() + 1];
        for &f in &self.faces {
            counts[card(f)] += 1;
        }
        FVector { counts: counts.into_iter().map(BigInt::from).collect() }
    }

    pub fn face_labels(&self, f: Face) -> Vec<Label> {
        indices(f).into_iter().map(|i| self.labels[i].clone()).collect()
    }

    /// `abc` when every label is one character, `{1,10}` otherwise, `∅` for
    /// the empty face.
    pub fn face_name(&self, f: Face) -> String {
        label_list(&self.labels, f)
    }

    pub fn face_from_labels(&self, labels: &[Label]) -> Result<Face> {
        let mut mask = 0;
        for l in labels {
            let i = self.labels.iter().position(|x| x == l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Depth-first exact cover of the faces by intervals `[A, F]`, one per
    /// facet. Calls `visit` on each partition found until it breaks.
    pub fn for_each_partition<V>(&self, mut visit: V) -> Result<()>
    where
        V: FnMut(&IntervalPartition) -> ControlFlow<()>,
    {
        if !self.is_pure() {
            return Err(Error::NotPure(self.facets.iter().map(|&f| card(f)).collect()));
        }
        let mut search = Search {
            complex: self,
            position: self.faces.iter().enumerate().map(|(i, &f)| (f, i)).collect(),
            covered: vec![false; self.faces.len()],
            assigned: vec![None; self.facets.len()],
        };
        let _ = search.run(&mut visit);
        Ok(())
    }

    /// The first partition in search order, or `None` when there is none.
    pub fn find_partition(&self) -> Result<Option<IntervalPartition>> {
        let mut found = None;
        self.for_each_partition(|p| {
            found = Some(p.clone());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// Checks facet-hood, disjointness and coverage, then compares the
    /// anchor-size census with the h-vector.
    pub fn verify_partition(&self, p: &IntervalPartition) -> std::result::Result<Census, PartitionViolation> {
        let mut owner: HashMap<Face, usize> = HashMap::new();
        for (b, iv) in p.blocks.iter().enumerate() {
            if !self.is_facet(iv.facet) {
                return Err(PartitionViolation::NotAFacet(self.face_name(iv.facet)));
            }
            if iv.anchor & !iv.facet != 0 {
                return Err(PartitionViolation::AnchorOutsideFacet {
                    anchor: self.face_name(iv.anchor),
                    facet: self.face_name(iv.facet),
                });
            }
            for extra in subsets(iv.facet & !iv.anchor) {
                let face = iv.anchor | extra;
                if let Some(first) = owner.insert(face, b) {
                    return Err(PartitionViolation::Overlap {
                        face: self.face_name(face),
                        first: self.face_name(p.blocks[first].facet),
                        second: self.face_name(iv.facet),
                    });
                }
            }
        }
        if let Some(&f) = self.faces.iter().find(|f| !owner.contains_key(f)) {
            return Err(PartitionViolation::Uncovered(self.face_name(f)));
        }
        let mut census = vec![0u64; self.d() + 1];
        for iv in &p.blocks {
            census[card(iv.anchor)] += 1;
        }
        let census: Vec<BigInt> = census.into_iter().map(BigInt::from).collect();
        let h = h_vector(&self.f_vector()).h;
        if census != h {
            return Err(PartitionViolation::CensusMismatch { census, h });
        }
        Ok(Census { h: census })
    }

    /// Faces become vertices (sorted by size, then lexicographically) and
    /// chains become faces.
    pub fn barycentric(&self) -> Result<SimplicialComplex> {
        let vertices: Vec<Face> = self.faces.iter().copied().filter(|&f| f != 0).collect();
        if vertices.len() > 128 {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        let position: HashMap<Face, usize> = vertices.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let labels = vertices.iter().map(|&f| Label::Str(format!("{{{}}}", self.face_labels(f).iter().map(Label::to_string).collect::<Vec<_>>().join(",")))).collect();
        let mut facets = Vec::new();
        for &top in &self.facets {
            // complete flags of `top`, one vertex added per step
            let mut stack = vec![(0 as Face, 0 as Face)];
            while let Some((current, chain)) = stack.pop() {
                if current == top {
                    facets.push(chain);
                    continue;
                }
                for i in indices(top & !current) {
                    let next = current | 1 << i;
                    stack.push((next, chain | 1 << position[&next]));
                }
            }
        }
        Ok(SimplicialComplex::from_masks(labels, facets))
    }
}

fn mask_below(n: usize) -> Face {
    if n >= 128 {
        u128::MAX
    } else {
        (1 << n) - 1
    }
}

fn label_list(labels: &[Label], f: Face) -> String {
    if f == 0 {
        return "∅".into();
    }
    let names: Vec<String> = indices(f).into_iter().map(|i| labels[i].to_string()).collect();
    if labels.iter().all(|l| l.to_string().chars().count() == 1) {
        names.concat()
    } else {
        format!("{{{}}}", names.join(","))
    }
}

struct Search<'a> {
    complex: &'a SimplicialComplex,
    position: HashMap<Face, usize>,
    covered: Vec<bool>,
    assigned: Vec<Option<Face>>,
}

impl Search<'_> {
    fn is_covered(&self, f: Face) -> bool {
        self.covered[self.position[&f]]
    }

    /// Anchors `A ⊆ facet` whose interval `[A, facet]` is still uncovered.
    fn anchors(&self, facet: Face) -> Vec<Face> {
        let blocked: Vec<Face> = subsets(facet).filter(|&g| self.is_covered(g)).collect();
        let mut out: Vec<Face> = subsets(facet).filter(|&a| blocked.iter().all(|&c| a & !c != 0)).collect();
        out.sort_by_key(|&a| face_key(a));
        out
    }

    fn mark(&mut self, anchor: Face, facet: Face, value: bool) {
        for extra in subsets(facet & !anchor) {
            let i = self.position[&(anchor | extra)];
            self.covered[i] = value;
        }
    }

    fn run<V: FnMut(&IntervalPartition) -> ControlFlow<()>>(&mut self, visit: &mut V) -> ControlFlow<()> {
        let facets = &self.complex.facets;
        let mut best: Option<(usize, Vec<Face>)> = None;
        let mut reachable = vec![false; self.covered.len()];
        for (i, &facet) in facets.iter().enumerate() {
            if self.assigned[i].is_some() {
                continue;
            }
            let anchors = self.anchors(facet);
            if anchors.is_empty() {
                return ControlFlow::Continue(());
            }
            for &a in &anchors {
                reachable[self.position[&a]] = true;
            }
            if best.as_ref().is_none_or(|(_, b)| anchors.len() < b.len()) {
                best = Some((i, anchors));
            }
        }
        let Some((i, anchors)) = best else {
            if self.covered.iter().all(|&c| c) {
                let blocks = facets
                    .iter()
                    .zip(&self.assigned)
                    .map(|(&facet, a)| Interval { anchor: a.expect("all assigned"), facet })
                    .collect();
                return visit(&IntervalPartition { blocks });
            }
            return ControlFlow::Continue(());
        };
        // a face that is no remaining facet's anchor candidate can never be covered
        if self.covered.iter().zip(&reachable).any(|(&c, &r)| !c && !r) {
            return ControlFlow::Continue(());
        }
        let facet = facets[i];
        for anchor in anchors {
            self.mark(anchor, facet, true);
            self.assigned[i] = Some(anchor);
            let flow = self.run(visit);
            self.assigned[i] = None;
            self.mark(anchor, facet, false);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// `(f₀, …, f_d)`, `f_i` counting faces with `i` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector {
    #[serde(with = "crate::numbers::decimal::vec")]
    pub counts: Vec<BigInt>,
}

impl FVector {
    pub fn d(&self) -> usize {
        self.counts.len() - 1
    }
}

/// h-vector with the Euler characteristic check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector {
    #[serde(with = "crate::numbers::decimal::vec")]
    pub h: Vec<BigInt>,
    /// `f₁ − f₂ + f₃ − ⋯`.
    #[serde(with = "crate::numbers::decimal")]
    pub chi: BigInt,
    /// `h_d = (−1)^d (1 − χ)`.
    pub euler_holds: bool,
}

/// `h_k = Σ_{i ≤ k} (−1)^{k−i} C(d−i, k−i) f_i`.
pub fn h_vector(f: &FVector) -> HVector {
    let d = f.d();
    let h: Vec<BigInt> = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let term = binomial((d - i) as u64, (k - i) as i64) * &f.counts[i];
                    if (k - i) % 2 == 0 {
                        term
                    } else {
                        -term
                    }
                })
                .sum()
        })
        .collect();
    let chi: BigInt = f.counts.iter().enumerate().skip(1).map(|(i, c)| if i % 2 == 1 { c.clone() } else { -c }).sum();
    let expected = if d.is_multiple_of(2) { BigInt::from(1) - &chi } else { &chi - BigInt::from(1) };
    let euler_holds = h[d] == expected;
    HVector { h, chi, euler_holds }
}

/// One block `[anchor, facet]` of a partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub anchor: Face,
    pub facet: Face,
}

impl Interval {
    pub fn contains(&self, g: Face) -> bool {
        self.anchor & !g == 0 && g & !self.facet == 0
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalJson {
    anchor: Vec<Label>,
    facet: Vec<Label>,
}

/// A proposed decomposition of a complex into intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalPartition {
    pub blocks: Vec<Interval>,
}

impl IntervalPartition {
    /// Parses `[{"anchor": [...], "facet": [...]}, ...]` against `complex`.
    pub fn from_json(src: &str, complex: &SimplicialComplex) -> Result<Self> {
        let raw: Vec<IntervalJson> = serde_json::from_str(src)?;
        let blocks = raw
            .iter()
            .map(|b| Ok(Interval { anchor: complex.face_from_labels(&b.anchor)?, facet: complex.face_from_labels(&b.facet)? }))
            .collect::<Result<_>>()?;
        Ok(IntervalPartition { blocks })
    }

    pub fn to_json(&self, complex: &SimplicialComplex) -> String {
        let raw: Vec<IntervalJson> = self
            .blocks
            .iter()
            .map(|b| IntervalJson { anchor: complex.face_labels(b.anchor), facet: complex.face_labels(b.facet) })
            .collect();
        serde_json::to_string(&raw).expect("partition serializes")
    }

    /// Blocks sorted by facet order, for comparing partitions.
    pub fn normalized(&self) -> Vec<Interval> {
        let mut blocks = self.blocks.clone();
        blocks.sort_by_key(|b| (face_key(b.facet), face_key(b.anchor)));
        blocks
    }
}

/// Anchor sizes of a verified partition, which equal the h-vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    #[serde(with = "crate::numbers::decimal::vec")]
    pub h: Vec<BigInt>,
}

/// The first reason a proposed partition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionViolation {
    NotAFacet(String),
    AnchorOutsideFacet { anchor: String, facet: String },
    Overlap { face: String, first: String, second: String },
    Uncovered(String),
    CensusMismatch { census: Vec<BigInt>, h: Vec<BigInt> },
}

impl fmt::Display for PartitionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionViolation::NotAFacet(x) => write!(f, "{x} is not a facet"),
            PartitionViolation::AnchorOutsideFacet { anchor, facet } => write!(f, "anchor {anchor} is not inside facet {facet}"),
            PartitionViolation::Overlap { face, first, second } => {
                write!(f, "face {face} lies in the intervals of both {first} and {second}")
            }
            PartitionViolation::Uncovered(x) => write!(f, "face {x} is not covered"),
            PartitionViolation::CensusMismatch { census, h } => {
                let show = |v: &[BigInt]| v.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",");
                write!(f, "census ({}) differs from h-vector ({})", show(census), show(h))
            }
        }
    }
}

impl std::error::Error for PartitionViolation {}

/// `G^J`: a face `G` with remarkable vertices `J` taken from the rest of
/// its interval's facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedFace {
    pub g: Face,
    pub j: Face,
}

/// `ι₃` for a fixed complex and partition.
pub struct Iota3 {
    /// Interval containing each face.
    block_of: HashMap<Face, Interval>,
    k: usize,
}

impl Iota3 {
    pub fn new(complex: &SimplicialComplex, partition: &IntervalPartition, k: usize) -> Result<Self> {
        complex.verify_partition(partition).map_err(|v| Error::InvalidPartition(v.to_string()))?;
        let mut block_of = HashMap::new();
        for iv in &partition.blocks {
            for extra in subsets(iv.facet & !iv.anchor) {
                block_of.insert(iv.anchor | extra, *iv);
            }
        }
        Ok(Iota3 { block_of, k })
    }

    /// Every `G^J` with `|G ∪ J| = k`, by `G` in face order then `J`.
    pub fn domain(&self, complex: &SimplicialComplex) -> Vec<DecoratedFace> {
        let mut out = Vec::new();
        for &g in complex.faces() {
            if card(g) > self.k {
                continue;
            }
            let free = self.block_of[&g].facet & !g;
            let mut js: Vec<Face> = subsets(free).filter(|&j| card(g) + card(j) == self.k).collect();
            js.sort_by_key(|&j| face_key(j));
            out.extend(js.into_iter().map(|j| DecoratedFace { g, j }));
        }
        out
    }
}

impl SignedInvolution for Iota3 {
    type Item = DecoratedFace;

    fn sign(&self, x: &DecoratedFace) -> i32 {
        if card(x.j).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Moves the least vertex of `I ∪ J` (with `I = G − F̃`) across.
    fn apply(&self, x: &DecoratedFace) -> DecoratedFace {
        let movable = (x.g & !self.block_of[&x.g].anchor) | x.j;
        if movable == 0 {
            return *x;
        }
        let v = movable & movable.wrapping_neg();
        DecoratedFace { g: x.g ^ v, j: x.j ^ v }
    }

    fn is_exception(&self, x: &DecoratedFace) -> bool {
        x.j == 0 && self.block_of.get(&x.g).is_some_and(|iv| iv.anchor == x.g)
    }

    fn in_domain(&self, x: &DecoratedFace) -> bool {
        match self.block_of.get(&x.g) {
            Some(iv) => x.j & !(iv.facet & !x.g) == 0 && card(x.g) + card(x.j) == self.k,
            None => false,
        }
    }

    fn class_of(&self, x: &DecoratedFace) -> usize {
        card(x.g)
    }

    fn check_pair(&self, x: &DecoratedFace, image: &DecoratedFace) -> std::result::Result<(), String> {
        if self.block_of[&x.g] != self.block_of[&image.g] {
            return Err("image lies in a different interval".into());
        }
        Ok(())
    }
}

/// Outcome of checking `ι₃` at one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Die3Report {
    pub k: usize,
    /// Elements with `|G| = i`.
    #[serde(serialize_with = "crate::barred::serialize_counts")]
    pub class_counts: BTreeMap<usize, BigInt>,
    #[serde(with = "crate::numbers::decimal")]
    pub total: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub fixed_points: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub signed_sum: BigInt,
    /// Anchors of size `k`.
    #[serde(with = "crate::numbers::decimal")]
    pub anchors_of_size_k: BigInt,
    #[serde(with = "crate::numbers::decimal")]
    pub h_k: BigInt,
}

impl Die3Report {
    pub fn holds(&self) -> bool {
        self.signed_sum == self.h_k && self.fixed_points == self.anchors_of_size_k
    }
}

/// Runs `ι₃` over `𝒞_{Σ,k}` for the given partition.
pub fn verify_die_simplicial(complex: &SimplicialComplex, partition: &IntervalPartition, k: usize) -> Result<Die3Report> {
    let inv = Iota3::new(complex, partition, k)?;
    let tally = check_involution(&inv, inv.domain(complex))?;
    let h = h_vector(&complex.f_vector()).h;
    Ok(Die3Report {
        k,
        class_counts: tally.class_counts.iter().map(|(&i, &c)| (i, BigInt::from(c))).collect(),
        total: tally.total.into(),
        fixed_points: tally.fixed_points.into(),
        signed_sum: tally.signed_sum_big(),
        anchors_of_size_k: BigInt::from(partition.blocks.iter().filter(|b| card(b.anchor) == k).count()),
        h_k: h.get(k).cloned().unwrap_or_default(),
    })
}

/// A face of `Δₙ` or `Δ′ₙ` written as consecutive differences of its flag.
/// The last block holds what the top of the flag misses and may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagComposition {
    pub blocks: Vec<Vec<usize>>,
}

impl fmt::Display for FlagComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n: usize = self.blocks.iter().map(Vec::len).sum();
        let sep = if n <= 9 { "" } else { " " };
        let parts: Vec<String> =
            self.blocks.iter().map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)).collect();
        f.write_str(&parts.join(if n <= 9 { "|" } else { " | " }))
    }
}

/// `Δₙ` or `Δ′ₙ` with its canonical partition, one block per permutation.
#[derive(Clone, Debug)]
pub struct Delta {
    pub n: usize,
    pub boundary: bool,
    pub complex: SimplicialComplex,
    pub partition: IntervalPartition,
    /// Subset of `{1..n}` (bit `i−1` for element `i`) behind each vertex.
    subsets: Vec<u128>,
}

impl Delta {
    pub fn encode(&self, face: Face) -> FlagComposition {
        let mut flag: Vec<u128> = indices(face).into_iter().map(|i| self.subsets[i]).collect();
        flag.sort_by_key(|s| s.count_ones());
        let mut blocks = Vec::with_capacity(flag.len() + 1);
        let mut prev = 0;
        for s in flag.into_iter().chain(std::iter::once(mask_below(self.n))) {
            blocks.push(indices(s & !prev).into_iter().map(|i| i + 1).collect());
            prev = s;
        }
        FlagComposition { blocks }
    }

    pub fn decode(&self, c: &FlagComposition) -> Result<Face> {
        let mut face = 0;
        let mut acc: u128 = 0;
        for block in &c.blocks[..c.blocks.len().saturating_sub(1)] {
            for &v in block {
                if v == 0 || v > self.n {
                    return Err(Error::InvalidComposition(format!("element {v} outside 1..={}", self.n)));
                }
                acc |= 1 << (v - 1);
            }
            let i = self
                .subsets
                .iter()
                .position(|&s| s == acc)
                .ok_or_else(|| Error::InvalidComposition(format!("{c} is not a face")))?;
            face |= 1 << i;
        }
        Ok(face)
    }
}

/// Barycentric subdivision of the `(n−1)`-simplex, or of its boundary.
pub fn delta_n(n: usize, boundary: bool, bounds: &Bounds) -> Result<Delta> {
    if n > bounds.max_delta_n {
        return Err(Error::BoundExceeded { what: "n for Δₙ", value: n as u128, limit: bounds.max_delta_n as u128 });
    }
    let base = if boundary { SimplicialComplex::simplex_boundary(n) } else { SimplicialComplex::full_simplex(n) };
    let complex = base.barycentric()?;
    let subsets: Vec<u128> = base.faces().iter().copied().filter(|&f| f != 0).collect();
    let position: HashMap<u128, usize> = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut blocks = Vec::new();
    let top = if boundary { n.saturating_sub(1) } else { n };
    if n == 1 && boundary {
        blocks.push(Interval { anchor: 0, facet: 0 });
    } else {
        for pi in Permutations::new(n) {
            let mut prefix: u128 = 0;
            let mut facet: Face = 0;
            let mut anchor: Face = 0;
            for i in 1..=top {
                prefix |= 1 << (pi.at(i) - 1);
                facet |= 1 << position[&prefix];
                if pi.is_descent(i) {
                    anchor |= 1 << position[&prefix];
                }
            }
            blocks.push(Interval { anchor, facet });
        }
    }
    Ok(Delta { n, boundary, complex, partition: IntervalPartition { blocks }, subsets })
}

/// Side-by-side f-vectors and h-vectors of `Δₙ` and `Δ′ₙ` with their
/// closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaFormulaReport {
    pub n: usize,
    #[serde(with = "crate::numbers::decimal::vec")]
    pub f_delta: Vec<BigInt>,
    #[serde(with = "crate::numbers::decimal::vec")]
    pub f_boundary: Vec<BigInt>,
    #[serde(with = "crate::numbers::decimal::vec")]
    pub h_delta: Vec<BigInt>,
    #[serde(with = "crate::numbers::decimal::vec")]
    pub h_boundary: Vec<BigInt>,
    #[serde(with = "crate::numbers::decimal::vec")]
    pub eulerian_row: Vec<BigInt>,
}

fn expect_eq(what: &'static str, expected: &[BigInt], found: &[BigInt]) -> Result<()> {
    if expected.len() != found.len() {
        return Err(Error::FormulaMismatch {
            what,
            index: expected.len().min(found.len()),
            expected: format!("length {}", expected.len()),
            found: format!("length {}", found.len()),
        });
    }
    match expected.iter().zip(found).position(|(e, f)| e != f) {
        Some(index) => {
            Err(Error::FormulaMismatch { what, index, expected: expected[index].to_string(), found: found[index].to_string() })
        }
        None => Ok(()),
    }
}

/// Checks `f_i(Δₙ) = i!·S(n+1,i+1)`, `f_i(Δ′ₙ) = S(n,i+1)(i+1)!` and that
/// both h-vectors are the Eulerian row `n` (padded by a final `0` for `Δₙ`).
pub fn verify_fvector_formulas(n: usize, bounds: &Bounds) -> Result<DeltaFormulaReport> {
    let full = delta_n(n, false, bounds)?;
    let bdry = delta_n(n, true, bounds)?;
    let f_delta = full.complex.f_vector().counts;
    let f_boundary = bdry.complex.f_vector().counts;
    let want_delta: Vec<BigInt> = (0..=n).map(|i| factorial(i as u64) * stirling2(n + 1, i as i64 + 1)).collect();
    let want_bdry: Vec<BigInt> = (0..n).map(|i| stirling2(n, i as i64 + 1) * factorial(i as u64 + 1)).collect();
    expect_eq("f(Δₙ)", &want_delta, &f_delta)?;
    expect_eq("f(Δ′ₙ)", &want_bdry, &f_boundary)?;
    let eulerian_row: Vec<BigInt> = (0..n).map(|k| eulerian(n, k as i64)).collect();
    let h_delta = h_vector(&full.complex.f_vector()).h;
    let h_boundary = h_vector(&bdry.complex.f_vector()).h;
    let mut padded = eulerian_row.clone();
    padded.push(BigInt::from(0));
    expect_eq("h(Δₙ)", &padded, &h_delta)?;
    expect_eq("h(Δ′ₙ)", &eulerian_row, &h_boundary)?;
    Ok(DeltaFormulaReport { n, f_delta, f_boundary, h_delta, h_boundary, eulerian_row })
}

/// Face poset in Graphviz syntax, bottom to top, with each partition block
/// drawn as a cluster.
pub fn face_poset_dot(complex: &SimplicialComplex, partition: Option<&IntervalPartition>) -> String {
    let id = |f: Face| format!("f{}", indices(f).iter().map(usize::to_string).collect::<Vec<_>>().join("_"));
    let mut out = String::from("digraph faces {\n  rankdir=BT;\n  node [shape=box];\n");
    let node = |out: &mut String, f: Face, indent: &str| {
        let _ = writeln!(out, "{indent}{} [label=\"{}\"];", id(f), complex.face_name(f));
    };
    match partition {
        Some(p) => {
            for (b, iv) in p.normalized().iter().enumerate() {
                let _ = writeln!(out, "  subgraph cluster_{b} {{\n    style=rounded;\n    color=gray;");
                let mut members: Vec<Face> = subsets(iv.facet & !iv.anchor).map(|x| iv.anchor | x).collect();
                members.sort_by_key(|&f| face_key(f));
                for f in members {
                    node(&mut out, f, "    ");
                }
                out.push_str("  }\n");
            }
        }
        None => {
            for &f in complex.faces() {
                node(&mut out, f, "  ");
            }
        }
    }
    for &f in complex.faces() {
        for &g in complex.faces() {
            if card(g) == card(f) + 1 && f & !g == 0 {
                let _ = writeln!(out, "  {} -> {};", id(f), id(g));
            }
        }
    }
    out.push_str("}\n");
    out
}
