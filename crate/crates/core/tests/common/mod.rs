//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library.

#![allow(dead_code)]

/// All permutations of `1..=n`, by insertion.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for v in 1..=n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, v);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

pub fn des(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn eulerian(n: usize, k: usize) -> i128 {
    perms(n).iter().filter(|p| des(p) == k).count() as i128
}

/// Pascal's triangle, zero outside it.
pub fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut row = vec![1i128];
    for _ in 0..n {
        let mut next = vec![1i128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row[k as usize]
}

/// Set partitions of an `n`-set into `k` blocks, counted as restricted
/// growth strings.
pub fn stirling(n: usize, k: usize) -> i128 {
    fn rec(left: usize, used: usize, k: usize) -> i128 {
        if left == 0 {
            return i128::from(used == k);
        }
        let mut total = 0;
        for b in 0..=used.min(k.saturating_sub(1)) {
            total += rec(left - 1, if b == used { used + 1 } else { used }, k);
        }
        total
    }
    if n == 0 {
        return i128::from(k == 0);
    }
    rec(n, 0, k)
}

pub fn fact(n: usize) -> i128 {
    (1..=n as i128).product()
}

pub fn pow(b: i128, e: usize) -> i128 {
    (0..e).fold(1, |acc, _| acc * b)
}

/// Every vector in `{0..=max}^len`.
pub fn cube(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|v: Vec<u64>| (0..=max).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}
