use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use eulerian_die::barred::verify_die_eq1;
use eulerian_die::complex::{delta_n, verify_die_simplicial, IntervalPartition, SimplicialComplex};
use eulerian_die::composition::{verify_die_eq2, Die2Report};
use eulerian_die::numbers::{
    eulerian, eulerian_row_by_enumeration, eulerian_terms_powers, eulerian_terms_stirling, eulerian_terms_stirling_shifted,
    verify_ordered_stirling, verify_worpitzky,
};
use eulerian_die::poset::{verify_die_peul, Poset};
use eulerian_die::{BigInt, Bounds};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{csv_rows, json as to_json, reject_dot, Output};
use crate::{run::read, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Eq1,
    Eq2,
    Eq3,
    Worpitzky,
    OrderedStirling,
    Die1,
    Die2,
    Die3,
    Peul,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: Identity,
    /// A single n; otherwise every n up to --n-max.
    #[arg(long)]
    pub n: Option<usize>,
    /// A single k; otherwise every admissible k up to --k-max.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub k_max: Option<usize>,
    /// Poset JSON for peul.
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Complex JSON for die3.
    #[arg(long)]
    pub complex: Option<PathBuf>,
    /// Interval partition JSON for die3; searched for when absent.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// For die3 with --n: use the subdivided boundary of the simplex.
    #[arg(long)]
    pub boundary: bool,
}

#[derive(Serialize)]
struct Case {
    case: String,
    pass: bool,
    value: String,
    detail: Value,
}

#[derive(Serialize)]
struct Report {
    identity: Identity,
    parameters: Value,
    pass: bool,
    cases: Vec<Case>,
    counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_clock_ms: Option<u128>,
}

fn ns(args: &VerifyArgs, default_max: usize) -> Vec<usize> {
    match args.n {
        Some(n) => vec![n],
        None => (1..=args.n_max.unwrap_or(default_max)).collect(),
    }
}

fn ks(args: &VerifyArgs, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    match args.k {
        Some(k) => vec![k],
        None => {
            let hi = args.k_max.map_or(*range.end(), |m| m.min(*range.end()));
            (*range.start()..=hi).collect()
        }
    }
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

/// `a - b + c` with signs folded in.
fn signed_terms(terms: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t < &BigInt::from(0);
        let abs = if neg { -t } else { t.clone() };
        match (i, neg) {
            (0, false) => s.push_str(&abs.to_string()),
            (0, true) => s.push_str(&format!("-{abs}")),
            (_, false) => s.push_str(&format!(" + {abs}")),
            (_, true) => s.push_str(&format!(" - {abs}")),
        }
    }
    s
}

fn alternating_sum_cases(args: &VerifyArgs, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for n in ns(args, 10) {
        if n == 0 {
            bail!("n must be positive");
        }
        let row = if n <= bounds.max_n { Some(eulerian_row_by_enumeration(n, bounds)?) } else { None };
        for k in ks(args, 0..=n - 1) {
            if k >= n {
                bail!("eq1/eq2/eq3 need k < n (got n={n}, k={k})");
            }
            let terms = match args.identity {
                Identity::Eq1 => eulerian_terms_powers(n, k),
                Identity::Eq2 => eulerian_terms_stirling(n, k),
                _ => eulerian_terms_stirling_shifted(n, k),
            };
            let sum: BigInt = terms.iter().sum();
            let want = eulerian(n, k as i64);
            let enumerated = row.as_ref().map(|r| r[k].clone());
            let pass = sum == want && enumerated.as_ref().is_none_or(|e| *e == want);
            cases.push(Case {
                case: format!("n={n} k={k}"),
                pass,
                value: sum.to_string(),
                detail: json!({
                    "terms": strings(&terms),
                    "expression": format!("{} = {sum}", signed_terms(&terms)),
                    "eulerian": want.to_string(),
                    "by_enumeration": enumerated.map(|e| e.to_string()),
                }),
            });
        }
    }
    Ok(cases)
}

fn poset_from(path: &Option<PathBuf>) -> Result<Poset> {
    let path = path.as_ref().context("peul needs --poset FILE")?;
    Poset::from_json(&read(path)?, false).with_context(|| format!("parsing {}", path.display()))
}

fn complex_and_partition(args: &VerifyArgs, bounds: &Bounds) -> Result<(SimplicialComplex, IntervalPartition)> {
    if let Some(n) = args.n {
        if args.complex.is_none() {
            let d = delta_n(n, args.boundary, bounds)?;
            return Ok((d.complex, d.partition));
        }
    }
    let path = args.complex.as_ref().context("die3 needs --complex FILE or --n N")?;
    let complex = SimplicialComplex::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let partition = match &args.partition {
        Some(p) => IntervalPartition::from_json(&read(p)?, &complex).with_context(|| format!("parsing {}", p.display()))?,
        None => complex.find_partition()?.context("the complex has no interval partition")?,
    };
    Ok((complex, partition))
}

fn cases(args: &VerifyArgs, bounds: &Bounds) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    match args.identity {
        Identity::Eq1 | Identity::Eq2 | Identity::Eq3 => return alternating_sum_cases(args, bounds),
        Identity::Worpitzky | Identity::OrderedStirling => {
            for n in ns(args, 8) {
                let range = if args.identity == Identity::Worpitzky { 0..=8 } else { 1..=n };
                for k in ks(args, range) {
                    let check = if args.identity == Identity::Worpitzky {
                        verify_worpitzky(n, k)
                    } else {
                        if k == 0 {
                            bail!("ordered-stirling needs k ≥ 1");
                        }
                        verify_ordered_stirling(n, k)
                    };
                    cases.push(Case {
                        case: format!("n={n} k={k}"),
                        pass: check.holds,
                        value: check.lhs.to_string(),
                        detail: json!({ "lhs": check.lhs.to_string(), "rhs": check.rhs.to_string() }),
                    });
                }
            }
        }
        Identity::Die1 => {
            for n in ns(args, 5) {
                for k in ks(args, 0..=4) {
                    let r = verify_die_eq1(n, k, bounds)?;
                    let pass = r.fixed_points == eulerian(n, k as i64) && r.classes_match_formula();
                    cases.push(Case {
                        case: format!("n={n} k={k}"),
                        pass,
                        value: r.signed_sum.to_string(),
                        detail: serde_json::to_value(&r)?,
                    });
                }
            }
        }
        Identity::Die2 => {
            for n in ns(args, 6) {
                for k in ks(args, 0..=n.saturating_sub(1)) {
                    let r = verify_die_eq2(n, k, bounds)?;
                    cases.push(die2_case(&r));
                }
            }
        }
        Identity::Die3 => {
            let (complex, partition) = complex_and_partition(args, bounds)?;
            for k in ks(args, 0..=complex.d()) {
                let r = verify_die_simplicial(&complex, &partition, k)?;
                cases.push(Case { case: format!("k={k}"), pass: r.holds(), value: r.signed_sum.to_string(), detail: serde_json::to_value(&r)? });
            }
        }
        Identity::Peul => {
            let poset = poset_from(&args.poset)?;
            for k in ks(args, 0..=poset.n() + 1) {
                let r = verify_die_peul(&poset, k, bounds)?;
                cases.push(Case { case: format!("k={k}"), pass: r.holds(), value: r.signed_sum.to_string(), detail: serde_json::to_value(&r)? });
            }
        }
    }
    Ok(cases)
}

fn die2_case(r: &Die2Report) -> Case {
    let pass = r.fixed_points == eulerian(r.n, r.k as i64) && r.signed_sum == r.fixed_points && r.classes_match_formula();
    Case {
        case: format!("n={} k={}", r.n, r.k),
        pass,
        value: r.signed_sum.to_string(),
        detail: serde_json::to_value(r).expect("report serializes"),
    }
}

pub fn run(args: &VerifyArgs, format: Format, timing: bool, bounds: &Bounds) -> Result<Output> {
    reject_dot(format)?;
    let start = Instant::now();
    // die2 in CSV lists the per-class rows of each report
    if args.identity == Identity::Die2 && format == Format::Csv {
        let mut rows = Vec::new();
        let mut ok = true;
        for n in ns(args, 6) {
            for k in ks(args, 0..=n.saturating_sub(1)) {
                let r = verify_die_eq2(n, k, bounds)?;
                ok &= die2_case(&r).pass;
                rows.extend(r.csv_rows());
            }
        }
        return Ok(Output { stdout: csv_rows(&Die2Report::CSV_HEADER, rows)?, ok });
    }
    let cases = cases(args, bounds)?;
    let pass = cases.iter().all(|c| c.pass);
    let report = Report {
        identity: args.identity,
        parameters: json!({
            "n": args.n, "k": args.k, "n_max": args.n_max, "k_max": args.k_max,
            "poset": args.poset.as_ref().map(|p| p.display().to_string()),
            "complex": args.complex.as_ref().map(|p| p.display().to_string()),
            "partition": args.partition.as_ref().map(|p| p.display().to_string()),
            "boundary": args.boundary,
        }),
        pass,
        counterexample: cases.iter().find(|c| !c.pass).map(|c| c.case.clone()),
        cases,
        wall_clock_ms: timing.then(|| start.elapsed().as_millis()),
    };
    let stdout = match format {
        Format::Json => to_json(&report)?,
        Format::Csv => csv_rows(
            &["identity", "case", "pass", "value"],
            report.cases.iter().map(|c| {
                let id = serde_json::to_value(report.identity).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                [id, c.case.clone(), c.pass.to_string(), c.value.clone()]
            }),
        )?,
        _ => text(&report),
    };
    Ok(Output { stdout, ok: pass })
}

fn text(r: &Report) -> String {
    let name = serde_json::to_value(r.identity).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut out = format!("{name}: {} ({} cases)\n", if r.pass { "PASS" } else { "FAIL" }, r.cases.len());
    for c in &r.cases {
        let shown = c.detail.get("expression").and_then(Value::as_str).map_or_else(|| c.value.clone(), String::from);
        out.push_str(&format!("  {}: {} {}\n", c.case, shown, if c.pass { "ok" } else { "FAIL" }));
    }
    if let Some(c) = &r.counterexample {
        out.push_str(&format!("first counterexample: {c}\n"));
    }
    if let Some(ms) = r.wall_clock_ms {
        out.push_str(&format!("wall clock: {ms} ms\n"));
    }
    out
}
