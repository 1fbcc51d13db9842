//! A reusable checker for sign-reversing involutions on finite signed sets.
//!
//! Each of the three toggles in this crate implements [`SignedInvolution`];
//! [`check_involution`] walks an enumerated domain once and certifies the
//! three laws a cancellation argument needs: `ι∘ι = id`, `sign(ι x) = −sign(x)`
//! off the fixed set, and fixed points being exactly the declared exceptions,
//! each counted positively.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::Serialize;

use crate::{Error, Result};

pub trait SignedInvolution {
    type Item: Clone + Eq + Hash + Debug;

    /// `+1` or `−1`.
    fn sign(&self, item: &Self::Item) -> i32;

    fn apply(&self, item: &Self::Item) -> Self::Item;

    /// Whether `item` is one of the exceptions the involution should fix.
    fn is_exception(&self, item: &Self::Item) -> bool;

    /// Membership in the signed set being summed.
    fn in_domain(&self, item: &Self::Item) -> bool;

    /// Summand index used for the per-class census.
    fn class_of(&self, item: &Self::Item) -> usize;

    /// Extra invariants an involution promises about `item ↦ image`.
    fn check_pair(&self, _item: &Self::Item, _image: &Self::Item) -> std::result::Result<(), String> {
        Ok(())
    }
}

/// Census of a checked domain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub total: u64,
    pub paired: u64,
    pub fixed_points: u64,
    pub signed_sum: i64,
    /// Number of elements in each summand class.
    pub class_counts: BTreeMap<usize, u64>,
}

impl Tally {
    pub fn signed_sum_big(&self) -> BigInt {
        BigInt::from(self.signed_sum)
    }

    fn merge(&mut self, other: &Tally) {
        self.total += other.total;
        self.paired += other.paired;
        self.fixed_points += other.fixed_points;
        self.signed_sum += other.signed_sum;
        for (&c, &v) in &other.class_counts {
            *self.class_counts.entry(c).or_default() += v;
        }
    }
}

/// Runs every law over `items`, stopping at the first violation.
///
/// `items` must list the domain, each element once; duplicates are reported
/// as violations.
pub fn check_involution<I, It>(inv: &I, items: It) -> Result<Tally>
where
    I: SignedInvolution,
    It: IntoIterator<Item = I::Item>,
{
    let mut seen: HashSet<I::Item> = HashSet::new();
    let mut tally = Tally::default();
    for item in items {
        let fail = |msg: String| Err(Error::InvolutionViolation(format!("{msg} at {item:?}")));
        if !inv.in_domain(&item) {
            return fail("enumerated element outside the domain".into());
        }
        let image = inv.apply(&item);
        if !inv.in_domain(&image) {
            return fail(format!("image {image:?} leaves the domain"));
        }
        if inv.apply(&image) != item {
            return fail(format!("applying twice does not return (image {image:?})"));
        }
        let s = inv.sign(&item);
        if image == item {
            if !inv.is_exception(&item) {
                return fail("fixed point that is not an exception".into());
            }
            if s != 1 {
                return fail("fixed point with negative sign".into());
            }
            tally.fixed_points += 1;
        } else {
            if inv.is_exception(&item) {
                return fail(format!("exception moved to {image:?}"));
            }
            if inv.sign(&image) != -s {
                return fail(format!("sign not reversed (image {image:?})"));
            }
            tally.paired += 1;
        }
        if let Err(msg) = inv.check_pair(&item, &image) {
            return fail(msg);
        }
        tally.total += 1;
        tally.signed_sum += i64::from(s);
        *tally.class_counts.entry(inv.class_of(&item)).or_default() += 1;
        if !seen.insert(item.clone()) {
            return fail("element enumerated twice".into());
        }
    }
    if tally.paired % 2 != 0 {
        return Err(Error::InvolutionViolation(format!("odd number of paired elements ({})", tally.paired)));
    }
    Ok(tally)
}

/// Checks several disjoint pieces of one domain and merges their tallies.
pub fn check_involution_parts<I, P, It>(inv: &I, parts: P) -> Result<Tally>
where
    I: SignedInvolution,
    P: IntoIterator<Item = It>,
    It: IntoIterator<Item = I::Item>,
{
    let mut total = Tally::default();
    for part in parts {
        total.merge(&check_involution(inv, part)?);
    }
    Ok(total)
}
