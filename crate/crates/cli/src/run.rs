use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use eulerian_die::barred::AnchoredBarredPermutation;
use eulerian_die::complex::{delta_n, face_poset_dot, h_vector, Delta, IntervalPartition, SimplicialComplex};
use eulerian_die::composition::DecoratedSetComposition;
use eulerian_die::numbers::{NumberTable, TableKind};
use eulerian_die::poset::Poset;
use eulerian_die::{BigInt, Bounds};
use serde_json::json;

use crate::output::{csv_rows, join, json, reject_dot, Output};
use crate::{corpus, verify, Cli, Command, ComplexAction, Format, PosetAction, TableArg, TraceArg};

/// Largest table the `numbers` command prints.
const TABLE_LIMIT: usize = 500;

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn run(cli: &Cli) -> Result<Output> {
    let bounds = Bounds { max_n: cli.max_n, max_items: cli.max_items, max_delta_n: cli.max_delta_n };
    let mut out = Output::ok(String::new());
    if let Some(dir) = &cli.seed_corpus {
        out.stdout = corpus::seed(dir)?;
    }
    let Some(command) = &cli.command else {
        if cli.seed_corpus.is_none() {
            bail!("no command given; see --help");
        }
        return Ok(out);
    };
    let sub = match command {
        Command::Numbers { kind, n_max } => numbers(*kind, *n_max, cli.format)?,
        Command::Verify(args) => verify::run(args, cli.format, cli.timing, &bounds)?,
        Command::Poset { action, file, k, strict } => poset(*action, file, *k, *strict, cli.format, &bounds)?,
        Command::Complex { action, file, n, boundary, partition } => {
            complex(*action, file.as_deref(), *n, *boundary, partition.as_deref(), cli.format, &bounds)?
        }
        Command::Trace { involution, input } => trace(*involution, input, cli.format)?,
    };
    out.stdout.push_str(&sub.stdout);
    out.ok &= sub.ok;
    Ok(out)
}

fn numbers(kind: TableArg, n_max: usize, format: Format) -> Result<Output> {
    reject_dot(format)?;
    if n_max > TABLE_LIMIT {
        bail!("n_max {n_max} exceeds the table limit {TABLE_LIMIT}");
    }
    let kind = match kind {
        TableArg::Eulerian => TableKind::Eulerian,
        TableArg::Stirling => TableKind::Stirling2,
        TableArg::Binomial => TableKind::Binomial,
    };
    let table = NumberTable::new(kind, n_max);
    let stdout = match format {
        Format::Json => {
            let rows: Vec<_> = table
                .rows()
                .map(|(n, k0, row)| json!({ "n": n, "k_min": k0, "values": row.iter().map(BigInt::to_string).collect::<Vec<_>>() }))
                .collect();
            json(&json!({ "kind": kind, "n_max": n_max, "rows": rows }))?
        }
        Format::Csv => csv_rows(
            &["n", "k", "value"],
            table.rows().flat_map(|(n, k0, row)| {
                row.iter().enumerate().map(move |(j, v)| [n.to_string(), (k0 + j).to_string(), v.to_string()])
            }),
        )?,
        _ => {
            let k0 = table.rows().next().map_or(0, |(_, k0, _)| k0);
            let width = table.rows().map(|(_, _, r)| r.len()).max().unwrap_or(0);
            let cols: Vec<usize> = (k0..k0 + width).collect();
            let mut s = format!("n\\k | {}\n", join(&cols, " "));
            for (n, _, row) in table.rows() {
                s.push_str(&format!("{n} | {}\n", join(row, " ")));
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}

fn load_poset(file: &Path, strict: bool) -> Result<Poset> {
    Poset::from_json(&read(file)?, strict).with_context(|| format!("parsing {}", file.display()))
}

fn poset(action: PosetAction, file: &Path, k: Option<usize>, strict: bool, format: Format, bounds: &Bounds) -> Result<Output> {
    let p = load_poset(file, strict)?;
    if action == PosetAction::HasseDot {
        if matches!(format, Format::Json | Format::Csv) {
            bail!("hasse-dot only writes DOT");
        }
        return Ok(Output::ok(p.hasse_dot()));
    }
    reject_dot(format)?;
    let stdout = match action {
        PosetAction::Linext => {
            let exts = p.linear_extensions(bounds)?;
            match format {
                Format::Json => json(&exts.iter().map(|e| e.one_line().to_vec()).collect::<Vec<_>>())?,
                Format::Csv => csv_rows(&["extension", "descents"], exts.iter().map(|e| [e.to_string(), e.des().to_string()]))?,
                _ => exts.iter().map(|e| format!("{e}\n")).collect(),
            }
        }
        PosetAction::PEulerian => {
            let values: Vec<(usize, BigInt)> = match k {
                Some(k) => vec![(k, p.p_eulerian(k, bounds)?)],
                None => p.p_eulerian_row(bounds)?.into_iter().enumerate().collect(),
            };
            keyed(values, "p_eulerian", k.is_some(), format)?
        }
        PosetAction::Omega => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=p.n()).collect(),
            };
            let values = ks.into_iter().map(|k| Ok((k, p.omega(k, bounds)?))).collect::<Result<Vec<_>>>()?;
            keyed(values, "omega", k.is_some(), format)?
        }
        PosetAction::HasseDot => unreachable!(),
    };
    Ok(Output::ok(stdout))
}

/// A list of `(k, value)` pairs; a single requested value prints bare in text.
fn keyed(values: Vec<(usize, BigInt)>, name: &str, single: bool, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(&values.iter().map(|(k, v)| json!({ "k": k, name: v.to_string() })).collect::<Vec<_>>())?,
        Format::Csv => csv_rows(&["k", name], values.iter().map(|(k, v)| [k.to_string(), v.to_string()]))?,
        _ if single => format!("{}\n", values[0].1),
        _ => format!("{}\n", join(&values.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), " ")),
    })
}

fn load_complex(file: Option<&Path>, n: Option<usize>, boundary: bool, bounds: &Bounds) -> Result<(SimplicialComplex, Option<Delta>)> {
    match (file, n) {
        (Some(_), Some(_)) => bail!("give either FILE or --n, not both"),
        (Some(f), None) => {
            Ok((SimplicialComplex::from_json(&read(f)?).with_context(|| format!("parsing {}", f.display()))?, None))
        }
        (None, Some(n)) => {
            let d = delta_n(n, boundary, bounds)?;
            Ok((d.complex.clone(), Some(d)))
        }
        (None, None) => bail!("a complex FILE or --n is required"),
    }
}

fn load_partition(path: &Path, c: &SimplicialComplex) -> Result<IntervalPartition> {
    IntervalPartition::from_json(&read(path)?, c).with_context(|| format!("parsing {}", path.display()))
}

fn vector_out(name: &str, v: &[BigInt], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(&json!({ name: v.iter().map(BigInt::to_string).collect::<Vec<_>>() }))?,
        Format::Csv => csv_rows(&["i", name], v.iter().enumerate().map(|(i, x)| [i.to_string(), x.to_string()]))?,
        _ => format!("{}\n", join(v, ",")),
    })
}

fn blocks_text(c: &SimplicialComplex, p: &IntervalPartition, delta: Option<&Delta>) -> String {
    let name = |f| match delta {
        Some(d) => d.encode(f).to_string(),
        None => c.face_name(f),
    };
    p.blocks.iter().map(|b| format!("[{}, {}]\n", name(b.anchor), name(b.facet))).collect()
}

fn complex(
    action: ComplexAction,
    file: Option<&Path>,
    n: Option<usize>,
    boundary: bool,
    partition: Option<&Path>,
    format: Format,
    bounds: &Bounds,
) -> Result<Output> {
    let (c, delta) = load_complex(file, n, boundary, bounds)?;
    if action == ComplexAction::Facedot {
        if matches!(format, Format::Json | Format::Csv) {
            bail!("facedot only writes DOT");
        }
        let p = match (partition, &delta) {
            (Some(path), _) => Some(load_partition(path, &c)?),
            (None, Some(d)) => Some(d.partition.clone()),
            (None, None) if c.is_pure() => c.find_partition()?,
            (None, None) => None,
        };
        return Ok(Output::ok(face_poset_dot(&c, p.as_ref())));
    }
    reject_dot(format)?;
    let out = match action {
        ComplexAction::Fvector => Output::ok(vector_out("f", &c.f_vector().counts, format)?),
        ComplexAction::Hvector => Output::ok(vector_out("h", &h_vector(&c.f_vector()).h, format)?),
        ComplexAction::Partition => {
            let found = match &delta {
                Some(d) => Some(d.partition.clone()),
                None => c.find_partition()?,
            };
            let stdout = match (&found, format) {
                (Some(p), Format::Json) => format!("{}\n", p.to_json(&c)),
                (None, Format::Json) => "null\n".to_string(),
                (Some(p), Format::Csv) => csv_rows(
                    &["anchor", "facet"],
                    p.blocks.iter().map(|b| [c.face_name(b.anchor), c.face_name(b.facet)]),
                )?,
                (None, Format::Csv) => csv_rows(&["anchor", "facet"], Vec::<[String; 2]>::new())?,
                (Some(p), _) => blocks_text(&c, p, delta.as_ref()),
                (None, _) => "not partitionable\n".to_string(),
            };
            Output::ok(stdout)
        }
        ComplexAction::VerifyPartition => {
            let p = match (partition, &delta) {
                (Some(path), _) => load_partition(path, &c)?,
                (None, Some(d)) => d.partition.clone(),
                (None, None) => bail!("verify-partition needs --partition FILE"),
            };
            let verdict = c.verify_partition(&p);
            let stdout = match (&verdict, format) {
                (Ok(census), Format::Json) => json(&json!({ "valid": true, "census": census }))?,
                (Err(v), Format::Json) => json(&json!({ "valid": false, "violation": v.to_string() }))?,
                (Ok(census), Format::Csv) => csv_rows(&["valid", "census", "violation"], [["true".into(), join(&census.h, ","), String::new()]])?,
                (Err(v), Format::Csv) => csv_rows(&["valid", "census", "violation"], [["false".into(), String::new(), v.to_string()]])?,
                (Ok(census), _) => format!("valid, census {}\n", join(&census.h, ",")),
                (Err(v), _) => format!("invalid: {v}\n"),
            };
            Output { stdout, ok: verdict.is_ok() }
        }
        ComplexAction::Barycentric => {
            let b = c.barycentric()?;
            match format {
                Format::Csv => bail!("barycentric writes text or JSON"),
                _ => Output::ok(format!("{}\n", b.to_json())),
            }
        }
        ComplexAction::Delta => {
            let d = delta.context("delta needs --n")?;
            let f = d.complex.f_vector().counts;
            let h = h_vector(&d.complex.f_vector()).h;
            let stdout = match format {
                Format::Json => {
                    let blocks: Vec<_> = d
                        .partition
                        .blocks
                        .iter()
                        .map(|b| json!({ "anchor": d.encode(b.anchor).to_string(), "facet": d.encode(b.facet).to_string() }))
                        .collect();
                    json(&json!({
                        "n": d.n,
                        "boundary": d.boundary,
                        "f": f.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                        "h": h.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                        "partition": blocks,
                    }))?
                }
                Format::Csv => csv_rows(
                    &["anchor", "facet"],
                    d.partition.blocks.iter().map(|b| [d.encode(b.anchor).to_string(), d.encode(b.facet).to_string()]),
                )?,
                _ => format!("f=({})\nh=({})\n{}", join(&f, ","), join(&h, ","), blocks_text(&c, &d.partition, Some(&d))),
            };
            Output::ok(stdout)
        }
        ComplexAction::Facedot => unreachable!(),
    };
    Ok(out)
}

fn trace(involution: TraceArg, input: &str, format: Format) -> Result<Output> {
    reject_dot(format)?;
    let (from, sign, to, image_sign, extra) = match involution {
        TraceArg::Iota1 => {
            let b: AnchoredBarredPermutation = input.parse().context("parsing the anchored barred permutation")?;
            let image = b.iota1();
            (b.to_string(), b.sign(), image.to_string(), image.sign(), None)
        }
        TraceArg::Iota2 => {
            let g: DecoratedSetComposition = input.parse().context("parsing the decorated set composition")?;
            let image = g.iota2();
            (g.to_string(), g.sign(), image.to_string(), image.sign(), Some(g.toggle_element()))
        }
    };
    let fixed = from == to;
    let stdout = match format {
        Format::Json => {
            let mut v = json!({ "input": from, "sign": sign, "image": to, "image_sign": image_sign, "fixed": fixed });
            if let Some(t) = extra {
                v["toggle"] = json!(t);
            }
            json(&v)?
        }
        Format::Csv => csv_rows(
            &["input", "sign", "image", "image_sign", "fixed"],
            [[from, sign.to_string(), to, image_sign.to_string(), fixed.to_string()]],
        )?,
        _ => {
            let mut s = format!("{from}  ({sign:+})\n{to}  ({image_sign:+})\n");
            if let Some(Some(t)) = extra {
                s.push_str(&format!("toggle element {t}\n"));
            }
            if fixed {
                s.push_str("fixed point\n");
            }
            s
        }
    };
    Ok(Output::ok(stdout))
}
