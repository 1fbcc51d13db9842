//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::fs;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use eulerian_die::barred::verify_die_eq1;
use eulerian_die::complex::{delta_n, h_vector, verify_die_simplicial, verify_fvector_formulas, IntervalPartition, SimplicialComplex};
use eulerian_die::composition::verify_die_eq2;
use eulerian_die::numbers::{
    eulerian, eulerian_row_by_enumeration, eulerian_sum_powers, eulerian_sum_stirling, eulerian_sum_stirling_shifted,
    eulerian_terms_powers, eulerian_terms_stirling, eulerian_terms_stirling_shifted,
};
use eulerian_die::poset::{verify_die_peul, Poset};
use eulerian_die::{BigInt, Bounds, Error};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn eulerdie(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_eulerdie")).args(args).output().map_err(err)?;
    if !out.status.success() {
        return Err(format!("eulerdie {args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8(out.stdout).map_err(err)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

const EULERIAN_TABLE: &str = "\
n\\k | 0 1 2 3 4 5 6 7
1 | 1
2 | 1 1
3 | 1 4 1
4 | 1 11 11 1
5 | 1 26 66 26 1
6 | 1 57 302 302 57 1
7 | 1 120 1191 2416 1191 120 1
8 | 1 247 4293 15619 15619 4293 247 1
";

const STIRLING_TABLE: &str = "\
n\\k | 1 2 3 4 5 6 7 8
1 | 1
2 | 1 1
3 | 1 3 1
4 | 1 7 6 1
5 | 1 15 25 10 1
6 | 1 31 90 65 15 1
7 | 1 63 301 350 140 21 1
8 | 1 127 966 1701 1050 266 28 1
";

fn tables() -> Check {
    for (kind, want) in [("eulerian", EULERIAN_TABLE), ("stirling", STIRLING_TABLE)] {
        let start = Instant::now();
        let got = eulerdie(&["numbers", kind, "8"])?;
        let elapsed = start.elapsed();
        ensure(got == want, || format!("{kind} table differs:\n{got}"))?;
        ensure(elapsed < Duration::from_secs(1), || format!("{kind} table took {elapsed:?}"))?;
    }
    Ok(())
}

fn triple_formula() -> Check {
    let start = Instant::now();
    let b = Bounds::default();
    for n in 1..=10 {
        let enumerated = eulerian_row_by_enumeration(n, &b).map_err(err)?;
        for k in 0..n {
            let want = eulerian(n, k as i64);
            let sums = [eulerian_sum_powers(n, k), eulerian_sum_stirling(n, k), eulerian_sum_stirling_shifted(n, k)];
            ensure(sums.iter().all(|s| *s == want), || format!("n={n} k={k}: sums {sums:?}, want {want}"))?;
            ensure(enumerated[k] == want, || format!("n={n} k={k}: enumeration {}, want {want}", enumerated[k]))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))
}

fn worked_examples() -> Check {
    let cases = [
        (eulerian_terms_powers(5, 2), [243, -192, 15]),
        (eulerian_terms_stirling(5, 2), [6, -90, 150]),
        (eulerian_terms_stirling_shifted(5, 2), [10, -124, 180]),
    ];
    for (terms, want) in cases {
        ensure(terms == big(&want), || format!("terms {terms:?}, want {want:?}"))?;
        ensure(terms.iter().sum::<BigInt>() == BigInt::from(66), || "sum is not 66".into())?;
    }
    for (id, line) in [("eq1", "243 - 192 + 15 = 66"), ("eq2", "6 - 90 + 150 = 66"), ("eq3", "10 - 124 + 180 = 66")] {
        let out = eulerdie(&["verify", id, "--n", "5", "--k", "2"])?;
        ensure(out.contains(line), || format!("{id} output lacks `{line}`:\n{out}"))?;
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn iota1_suite() -> Check {
    let b = Bounds::default();
    for n in 1..=5 {
        for k in 0..=4 {
            let r = verify_die_eq1(n, k, &b).map_err(err)?;
            ensure(r.fixed_points == eulerian(n, k as i64), || format!("n={n} k={k}: {} fixed points", r.fixed_points))?;
            ensure(r.signed_sum == r.fixed_points, || format!("n={n} k={k}: signed sum {}", r.signed_sum))?;
            for i in 0..=k.min(n + 1) {
                let want = binom(n as i64 + 1, i as i64) * ((k + 1 - i) as i64).pow(n as u32);
                let got = r.class_counts.get(&i).cloned().unwrap_or_default();
                ensure(got == BigInt::from(want), || format!("n={n} k={k} i={i}: class has {got}, want {want}"))?;
            }
        }
    }
    Ok(())
}

fn iota2_suite() -> Check {
    let b = Bounds::default();
    for n in 1..=6 {
        for k in 0..n {
            let r = verify_die_eq2(n, k, &b).map_err(err)?;
            ensure(r.fixed_points == eulerian(n, k as i64), || format!("n={n} k={k}: {} fixed points", r.fixed_points))?;
            ensure(r.signed_sum == r.fixed_points, || format!("n={n} k={k}: signed sum {}", r.signed_sum))?;
        }
    }
    let pairs = [
        ("3 5~ 6~ a| 1~ 2~ 4~ | 7 8~ | 9~", "3 5~ | 6~ a| 1~ 2~ 4~ | 7 8~ | 9~"),
        ("3 5 6~ a| 1~ | 2~ 4~ 7~ | 8 9~", "3 5 6~ a| 1~ 2~ 4~ 7~ | 8 9~"),
        ("5 9~ a| 3~ a| 2 4~ a| 1~ 8~ a| 6 7~", "5 9~ a| 3~ a| 2 4~ a| 1~ | 8~ a| 6 7~"),
    ];
    for (from, to) in pairs {
        for (a, b) in [(from, to), (to, from)] {
            let out = eulerdie(&["trace", "iota2", a])?;
            let image = out.lines().nth(1).unwrap_or_default();
            ensure(image.starts_with(&format!("{b}  (")), || format!("{a} maps to `{image}`, want {b}"))?;
        }
    }
    Ok(())
}

fn load_poset(dir: &Path, name: &str) -> Result<Poset, String> {
    Poset::from_json(&fs::read_to_string(dir.join(name)).map_err(err)?, false).map_err(err)
}

fn posets(dir: &Path) -> Check {
    let b = Bounds::default();
    let out = eulerdie(&["poset", "linext", dir.join("fig1.json").to_str().unwrap()])?;
    ensure(out == "132\n312\n", || format!("fig1 extensions: {out}"))?;
    let fig1 = load_poset(dir, "fig1.json")?;
    let row = fig1.p_eulerian_row(&b).map_err(err)?;
    ensure(row == big(&[0, 2, 0]), || format!("fig1 P-Eulerian {row:?}"))?;

    let fig2 = load_poset(dir, "fig2.json")?;
    for k in 0..=10i64 {
        let want = k * (k + 1) * (k + 2) * (k + 3) * (2 * k + 3) / 40;
        let got = fig2.omega(k as usize, &b).map_err(err)?;
        ensure(got == BigInt::from(want), || format!("fig2 Ω({k}) = {got}, want {want}"))?;
    }
    for k in 0..=6 {
        let want = if k == 1 || k == 2 { 3 } else { 0 };
        let r = verify_die_peul(&fig2, k, &b).map_err(err)?;
        ensure(r.holds() && r.formula_sum == BigInt::from(want), || format!("fig2 k={k}: {}", r.formula_sum))?;
    }
    for name in ["fig1.json", "fig2.json", "antichain5.json", "chain3.json"] {
        let p = load_poset(dir, name)?;
        for k in 0..=6 {
            let (a, c) = (p.omega(k, &b).map_err(err)?, p.omega_via_linext(k, &b).map_err(err)?);
            ensure(a == c, || format!("{name} k={k}: omega {a} vs {c}"))?;
        }
    }
    Ok(())
}

fn load_complex(dir: &Path, name: &str) -> Result<SimplicialComplex, String> {
    SimplicialComplex::from_json(&fs::read_to_string(dir.join(name)).map_err(err)?).map_err(err)
}

fn sample_partition(dir: &Path, c: &SimplicialComplex) -> Result<IntervalPartition, String> {
    IntervalPartition::from_json(&fs::read_to_string(dir.join("fig4-partition.json")).map_err(err)?, c).map_err(err)
}

fn topology(dir: &Path) -> Check {
    let fig3 = load_complex(dir, "fig3.json")?;
    ensure(fig3.f_vector().counts == big(&[1, 5, 6, 1]), || format!("fig3 f {:?}", fig3.f_vector()))?;
    let h3 = h_vector(&fig3.f_vector()).h;
    ensure(h3 == big(&[1, 2, -1, -1]), || format!("fig3 h {h3:?}"))?;
    ensure(!fig3.is_pure(), || "fig3 reported pure".into())?;
    ensure(matches!(fig3.find_partition(), Err(Error::NotPure(_))), || "fig3 partition search did not refuse".into())?;

    let fig4 = load_complex(dir, "fig4.json")?;
    ensure(fig4.f_vector().counts == big(&[1, 5, 7, 3]), || format!("fig4 f {:?}", fig4.f_vector()))?;
    let h4 = h_vector(&fig4.f_vector()).h;
    ensure(h4 == big(&[1, 2, 0, 0]), || format!("fig4 h {h4:?}"))?;
    let census = fig4.verify_partition(&sample_partition(dir, &fig4)?).map_err(err)?;
    ensure(census.h == h4, || format!("sample partition census {:?}", census.h))?;
    let found = fig4.find_partition().map_err(err)?.ok_or("no partition found")?;
    let census = fig4.verify_partition(&found).map_err(err)?;
    ensure(census.h == h4, || format!("found partition census {:?}", census.h))
}

fn barycentric() -> Check {
    let b = Bounds::default();
    for n in 1..=5 {
        verify_fvector_formulas(n, &b).map_err(err)?;
        for boundary in [false, true] {
            let d = delta_n(n, boundary, &b).map_err(err)?;
            let census = d.complex.verify_partition(&d.partition).map_err(|v| format!("n={n}: {v}"))?;
            let mut row: Vec<BigInt> = (0..n).map(|k| eulerian(n, k as i64)).collect();
            if !boundary {
                row.push(BigInt::from(0));
            }
            ensure(census.h == row, || format!("n={n} boundary={boundary}: census {:?}", census.h))?;
        }
    }
    let out = eulerdie(&["complex", "delta", "--n", "3"])?;
    let want = "f=(1,7,12,6)\nh=(1,4,1,0)\n[123, 1|2|3|]\n[13|2, 1|3|2|]\n[2|13, 2|1|3|]\n[23|1, 2|3|1|]\n[3|12, 3|1|2|]\n[3|2|1, 3|2|1|]\n";
    ensure(out == want, || format!("delta 3:\n{out}"))
}

fn iota3_suite(dir: &Path) -> Check {
    let start = Instant::now();
    let fig4 = load_complex(dir, "fig4.json")?;
    let p4 = sample_partition(dir, &fig4)?;
    let d4 = delta_n(4, false, &Bounds::default()).map_err(err)?;
    for (name, c, p) in [("fig4", &fig4, &p4), ("Δ4", &d4.complex, &d4.partition)] {
        let h = h_vector(&c.f_vector()).h;
        for (k, hk) in h.iter().enumerate() {
            let r = verify_die_simplicial(c, p, k).map_err(err)?;
            ensure(r.holds() && r.signed_sum == *hk, || format!("{name} k={k}: signed sum {}, h_k {hk}", r.signed_sum))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))
}

fn partition_independence(dir: &Path) -> Check {
    let b = Bounds::default();
    let fig4 = load_complex(dir, "fig4.json")?;
    let mut fixtures = vec![("fig4".to_string(), fig4.clone(), sample_partition(dir, &fig4)?)];
    for n in 2..=4 {
        for boundary in [false, true] {
            let d = delta_n(n, boundary, &b).map_err(err)?;
            fixtures.push((format!("n={n} boundary={boundary}"), d.complex, d.partition));
        }
    }
    let mut different = 0;
    for (name, c, reference) in &fixtures {
        let h = h_vector(&c.f_vector()).h;
        let reference = reference.normalized();
        let mut seen = BTreeSet::new();
        let mut failure = None;
        c.for_each_partition(|p| {
            let key = format!("{:?}", p.normalized());
            if p.normalized() != reference && seen.insert(key) {
                match c.verify_partition(p) {
                    Ok(census) if census.h == h => {}
                    Ok(census) => failure = Some(format!("{name}: census {:?}, h {h:?}", census.h)),
                    Err(v) => failure = Some(format!("{name}: {v}")),
                }
            }
            if failure.is_some() || seen.len() >= 50 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .map_err(err)?;
        if let Some(f) = failure {
            return Err(f);
        }
        different += seen.len();
    }
    ensure(different > 0, || "no fixture produced a second partition".into())
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let corpus: PathBuf = dir.path().to_path_buf();
    let seeded = eulerdie(&["--seed-corpus", corpus.to_str().unwrap()]);
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("1 table reproduction", Box::new(tables)),
        ("2 triple-formula agreement", Box::new(triple_formula)),
        ("3 worked examples", Box::new(worked_examples)),
        ("4 iota1 suite", Box::new(iota1_suite)),
        ("5 iota2 suite", Box::new(iota2_suite)),
        ("6 P-partition suite", Box::new(|| posets(&corpus))),
        ("7 topology fixtures", Box::new(|| topology(&corpus))),
        ("8 barycentric suite", Box::new(barycentric)),
        ("9 iota3 suite", Box::new(|| iota3_suite(&corpus))),
        ("10 partition independence", Box::new(|| partition_independence(&corpus))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let verdict = seeded.clone().and_then(|_| check());
        let ms = start.elapsed().as_millis();
        match verdict {
            Ok(()) => println!("PASS criterion {name} ({ms} ms)"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name} ({ms} ms): {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
