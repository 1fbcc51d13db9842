mod common;

use std::collections::HashSet;

use common::{binom, cube, des, eulerian, perms, pow};
use eulerian_die::barred::*;
use eulerian_die::{BigInt, Bounds, Permutation};
use proptest::prelude::*;

/// `|B^i_{n,k}|` by choosing `i` float gaps and spreading the remaining
/// `k − des − i` unnecessary bars, per permutation.
fn class_oracle(n: usize, k: usize, i: usize) -> i128 {
    perms(n)
        .iter()
        .map(|p| {
            let d = des(p);
            if d + i > k {
                return 0;
            }
            let spare = (k - d - i) as i64;
            binom(n as i64 + 1, i as i64) * binom(spare + n as i64, n as i64)
        })
        .sum()
}

#[test]
fn placements_biject_with_barred_permutations() {
    let b = Bounds::default();
    for n in 1..=4 {
        for k in 0..=3 {
            let images: HashSet<_> = cube(n, k as u64)
                .iter()
                .map(|f| {
                    let boxes: Vec<u32> = f.iter().map(|&x| x as u32).collect();
                    let beta = BarredPermutation::from_assignment(&boxes, k as u32).unwrap();
                    assert_eq!(beta.to_assignment(), boxes);
                    beta
                })
                .collect();
            assert_eq!(images.len() as i128, pow(k as i128 + 1, n));
            let listed: HashSet<_> = enumerate_barred(n, k, &b).unwrap().collect();
            assert_eq!(listed, images);
            assert_eq!(count_barred(n, k, &b).unwrap(), BigInt::from(pow(k as i128 + 1, n)));
        }
    }
}

#[test]
fn suite_n5_k4() {
    let b = Bounds::default();
    for n in 1..=5 {
        for k in 0..=4 {
            let r = verify_die_eq1(n, k, &b).unwrap();
            let e = if k < n { eulerian(n, k) } else { 0 };
            assert_eq!(r.fixed_points, BigInt::from(e), "n={n} k={k}");
            assert_eq!(r.signed_sum, BigInt::from(e));
            assert!(r.classes_match_formula());
            for i in 0..=k {
                assert_eq!(r.class_counts[&i], BigInt::from(class_oracle(n, k, i)));
                let listed = enumerate_anchored(n, k, Some(i), &b).unwrap().count();
                assert_eq!(BigInt::from(listed), r.class_counts[&i]);
            }
        }
    }
}

#[test]
fn fibres_partition_the_whole_set() {
    let b = Bounds::default();
    let (n, k) = (4, 3);
    let whole = verify_die_eq1(n, k, &b).unwrap();
    let mut total = BigInt::from(0);
    for p in perms(n) {
        let pi = Permutation::new(p.clone()).unwrap();
        let r = restrict_to_permutation(k, &pi).unwrap();
        assert_eq!(r.signed_sum, BigInt::from(i32::from(des(&p) == k)));
        if des(&p) > k {
            assert_eq!(r.total, BigInt::from(0));
        }
        total += r.total;
    }
    assert_eq!(total, whole.total);
}

#[test]
fn bound_is_enforced() {
    let tight = Bounds { max_items: 100, ..Bounds::default() };
    assert!(enumerate_anchored(5, 2, None, &tight).is_err());
    assert!(count_barred(5, 2, &tight).is_err());
}

fn anchored_strategy() -> impl Strategy<Value = AnchoredBarredPermutation> {
    (1usize..=6)
        .prop_flat_map(|n| {
            (
                Just(n).prop_perturb(|n, mut rng| {
                    let mut v: Vec<usize> = (1..=n).collect();
                    for i in (1..n).rev() {
                        v.swap(i, rng.random_range(0..=i));
                    }
                    v
                }),
                prop::collection::vec(0u32..3, n + 1),
                prop::collection::vec(any::<bool>(), n + 1),
            )
        })
        .prop_map(|(p, u, f)| AnchoredBarredPermutation::new(Permutation::new(p).unwrap(), u, f).unwrap())
}

proptest! {
    #[test]
    fn iota1_laws(beta in anchored_strategy()) {
        let image = beta.iota1();
        prop_assert_eq!(image.iota1(), beta.clone());
        prop_assert_eq!(image.pi(), beta.pi());
        prop_assert_eq!(image.total_bars(), beta.total_bars());
        if image == beta {
            prop_assert!(beta.is_anchors_only());
        } else {
            prop_assert_eq!(image.sign(), -beta.sign());
        }
    }

    #[test]
    fn text_and_json_round_trip(beta in anchored_strategy()) {
        let text = beta.to_string();
        prop_assert_eq!(text.parse::<AnchoredBarredPermutation>().unwrap(), beta.clone());
        let json = serde_json::to_string(&beta).unwrap();
        prop_assert_eq!(serde_json::from_str::<AnchoredBarredPermutation>(&json).unwrap(), beta.clone());
        let plain = beta.underlying();
        prop_assert_eq!(plain.to_string().parse::<BarredPermutation>().unwrap(), plain);
    }
}
