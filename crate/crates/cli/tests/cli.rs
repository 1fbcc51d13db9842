use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eulerian_die::barred::AnchoredBarredPermutation;
use eulerian_die::complex::{IntervalPartition, SimplicialComplex};
use eulerian_die::composition::DecoratedSetComposition;
use eulerian_die::poset::Poset;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerdie")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn corpus() -> (TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    stdout(&["--seed-corpus", path.to_str().unwrap()]);
    (dir, path)
}

fn file(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn seed_corpus_writes_every_fixture() {
    let (_tmp, dir) = corpus();
    for name in ["fig1.json", "fig2.json", "antichain5.json", "chain3.json", "fig3.json", "fig4.json", "fig4-partition.json"] {
        assert!(dir.join(name).is_file(), "{name}");
    }
    let fig4 = SimplicialComplex::from_json(&fs::read_to_string(dir.join("fig4.json")).unwrap()).unwrap();
    IntervalPartition::from_json(&fs::read_to_string(dir.join("fig4-partition.json")).unwrap(), &fig4).unwrap();
}

#[test]
fn binomial_rows() {
    assert_eq!(stdout(&["numbers", "binomial", "1"]), "n\\k | 0 1\n0 | 1\n1 | 1 1\n");
}

#[test]
fn table_csv_and_json() {
    let csv = stdout(&["numbers", "eulerian", "3", "--format", "csv"]);
    assert_eq!(csv, "n,k,value\n1,0,1\n2,0,1\n2,1,1\n3,0,1\n3,1,4\n3,2,1\n");
    let v: Value = serde_json::from_str(&stdout(&["numbers", "stirling", "4", "--format", "json"])).unwrap();
    assert_eq!(v["rows"][3]["values"], serde_json::json!(["1", "7", "6", "1"]));
    assert_eq!(v["rows"][3]["k_min"], 1);
}

#[test]
fn large_values_stay_exact_in_json() {
    let v: Value = serde_json::from_str(&stdout(&["numbers", "eulerian", "30", "--format", "json"])).unwrap();
    let middle = v["rows"][29]["values"][14].as_str().unwrap();
    // ⟨30,14⟩ has 32 digits, well past f64 precision
    assert_eq!(middle.len(), 32);
}

#[test]
fn verify_examples() {
    let (_tmp, dir) = corpus();
    assert!(stdout(&["verify", "eq1", "--n", "5", "--k", "2"]).contains("= 66 ok"));
    let v: Value = serde_json::from_str(&stdout(&["verify", "die2", "--n", "2", "--k", "0", "--format", "json"])).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"][0]["detail"]["fixed_points"], "1");
    let v: Value =
        serde_json::from_str(&stdout(&["verify", "peul", "--poset", &file(&dir, "fig2.json"), "--k", "2", "--format", "json"])).unwrap();
    assert_eq!(v["cases"][0]["value"], "3");
    assert!(v["counterexample"].is_null());
}

#[test]
fn verify_default_ranges_pass() {
    let (_tmp, dir) = corpus();
    for id in ["eq1", "eq2", "eq3", "worpitzky", "ordered-stirling", "die1", "die2"] {
        assert!(stdout(&["verify", id]).starts_with(&format!("{id}: PASS")), "{id}");
    }
    let out = stdout(&["verify", "die3", "--complex", &file(&dir, "fig4.json"), "--partition", &file(&dir, "fig4-partition.json")]);
    assert!(out.starts_with("die3: PASS (4 cases)"));
    assert!(stdout(&["verify", "die3", "--n", "3", "--boundary"]).starts_with("die3: PASS"));
    assert!(stdout(&["verify", "peul", "--poset", &file(&dir, "fig1.json")]).starts_with("peul: PASS"));
}

#[test]
fn die2_csv_lists_classes() {
    let csv = stdout(&["verify", "die2", "--n", "3", "--k", "1", "--format", "csv"]);
    assert_eq!(csv, "n,k,blocks,count,formula,fixed_points,signed_sum\n3,1,1,2,2,4,4\n3,1,2,6,6,4,4\n");
}

#[test]
fn timing_is_opt_in() {
    let plain = stdout(&["verify", "die1", "--n", "3", "--format", "json"]);
    assert!(!plain.contains("wall_clock_ms"));
    let timed = stdout(&["verify", "die1", "--n", "3", "--format", "json", "--timing"]);
    assert!(timed.contains("wall_clock_ms"));
}

#[test]
fn output_is_deterministic() {
    let (_tmp, dir) = corpus();
    let args = ["verify", "peul", "--poset", &file(&dir, "fig2.json"), "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["complex", "facedot", &file(&dir, "fig4.json")];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn failing_partition_exits_one() {
    let (_tmp, dir) = corpus();
    let bad = dir.join("bad-partition.json");
    fs::write(&bad, r#"[{"anchor":[],"facet":["a","b","c"]},{"anchor":["d"],"facet":["b","c","d"]}]"#).unwrap();
    let out = run(&["complex", "verify-partition", &file(&dir, "fig4.json"), "--partition", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("invalid: "));
}

#[test]
fn errors_exit_two_with_location() {
    let (_tmp, dir) = corpus();
    let broken = dir.join("broken.json");
    fs::write(&broken, "{\"n\": 3,\n \"covers\": [[1, 2],\n [2, ]]}\n").unwrap();
    let out = run(&["poset", "linext", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("broken.json") && err.contains("line 3"), "{err}");

    let cyclic = dir.join("cyclic.json");
    fs::write(&cyclic, r#"{"n":2,"covers":[[1,2],[2,1]]}"#).unwrap();
    assert_eq!(run(&["poset", "linext", cyclic.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["verify", "die1", "--n", "20", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["complex", "delta", "--n", "9"]).status.code(), Some(2));
    assert_eq!(run(&["numbers", "eulerian", "3", "--format", "dot"]).status.code(), Some(2));
}

#[test]
fn strict_rejects_implied_covers() {
    let (_tmp, dir) = corpus();
    let redundant = dir.join("redundant.json");
    fs::write(&redundant, r#"{"n":3,"covers":[[1,2],[2,3],[1,3]]}"#).unwrap();
    let path = redundant.to_str().unwrap();
    assert_eq!(stdout(&["poset", "linext", path]), "123\n");
    assert_eq!(run(&["poset", "linext", path, "--strict"]).status.code(), Some(2));
}

#[test]
fn poset_actions() {
    let (_tmp, dir) = corpus();
    assert_eq!(stdout(&["poset", "linext", &file(&dir, "fig1.json")]), "132\n312\n");
    assert_eq!(stdout(&["poset", "omega", &file(&dir, "antichain5.json"), "--k", "0"]), "1\n");
    assert_eq!(stdout(&["poset", "omega", &file(&dir, "fig2.json"), "--k", "2"]), "21\n");
    assert_eq!(stdout(&["poset", "p-eulerian", &file(&dir, "fig1.json")]), "0 2 0\n");
    assert_eq!(stdout(&["poset", "omega", &file(&dir, "chain3.json"), "--format", "csv"]), "k,omega\n0,1\n1,4\n2,10\n3,20\n");
    let dot = stdout(&["poset", "hasse-dot", &file(&dir, "fig1.json")]);
    assert!(dot.starts_with("digraph P {") && dot.contains("1 -> 2;") && dot.contains("3 -> 2;"));
}

#[test]
fn poset_json_round_trips() {
    let (_tmp, dir) = corpus();
    let src = fs::read_to_string(dir.join("fig2.json")).unwrap();
    let p = Poset::from_json(&src, true).unwrap();
    assert_eq!(Poset::from_json(&p.to_json(), true).unwrap(), p);
    let exts: Vec<Vec<usize>> = serde_json::from_str(&stdout(&["poset", "linext", &file(&dir, "fig2.json"), "--format", "json"])).unwrap();
    // 1 first, then the chains 2<5 and 4<3 interleaved
    assert_eq!(exts.len(), 6);
}

#[test]
fn complex_actions() {
    let (_tmp, dir) = corpus();
    let fig4 = file(&dir, "fig4.json");
    assert_eq!(stdout(&["complex", "hvector", &fig4]), "1,2,0,0\n");
    assert_eq!(stdout(&["complex", "fvector", &fig4]), "1,5,7,3\n");
    assert_eq!(stdout(&["complex", "hvector", &file(&dir, "fig3.json")]), "1,2,-1,-1\n");
    assert_eq!(run(&["complex", "partition", &file(&dir, "fig3.json")]).status.code(), Some(2));
    assert!(stdout(&["complex", "delta", "--n", "1"]).starts_with("f=(1,1)\n"));
    assert!(stdout(&["complex", "delta", "--n", "3", "--boundary"]).starts_with("f=(1,6,6)\nh=(1,4,1)\n"));
    assert_eq!(
        stdout(&["complex", "verify-partition", &fig4, "--partition", &file(&dir, "fig4-partition.json")]),
        "valid, census 1,2,0,0\n"
    );
}

#[test]
fn found_partition_round_trips() {
    let (_tmp, dir) = corpus();
    let fig4 = file(&dir, "fig4.json");
    let json = stdout(&["complex", "partition", &fig4, "--format", "json"]);
    let out = dir.join("found.json");
    fs::write(&out, &json).unwrap();
    let c = SimplicialComplex::from_json(&fs::read_to_string(&fig4).unwrap()).unwrap();
    let p = IntervalPartition::from_json(&json, &c).unwrap();
    assert_eq!(c.verify_partition(&p).unwrap().h.len(), 4);
    assert_eq!(stdout(&["complex", "verify-partition", &fig4, "--partition", out.to_str().unwrap()]), "valid, census 1,2,0,0\n");
}

#[test]
fn barycentric_output_parses() {
    let (_tmp, dir) = corpus();
    let json = stdout(&["complex", "barycentric", &file(&dir, "fig4.json")]);
    let b = SimplicialComplex::from_json(&json).unwrap();
    assert_eq!(b.f_vector().counts.len(), 4);
    assert_eq!(b.facets().len(), 18);
}

#[test]
fn facedot_clusters() {
    let (_tmp, dir) = corpus();
    let dot = stdout(&["complex", "facedot", &file(&dir, "fig4.json"), "--partition", &file(&dir, "fig4-partition.json")]);
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    let dot = stdout(&["complex", "facedot", "--n", "3"]);
    assert_eq!(dot.matches("subgraph cluster_").count(), 6);
    let dot = stdout(&["complex", "facedot", &file(&dir, "fig3.json")]);
    assert!(!dot.contains("cluster"));
}

#[test]
fn traces() {
    let out = stdout(&["trace", "iota1", "1 f| 3 a| 2"]);
    assert_eq!(out, "1f|3a|2  (-1)\n1|3a|2  (+1)\n");
    let v: Value = serde_json::from_str(&stdout(&["trace", "iota1", "3 a| 2 a| 1", "--format", "json"])).unwrap();
    assert_eq!(v["fixed"], true);
    let image: AnchoredBarredPermutation = v["image"].as_str().unwrap().parse().unwrap();
    assert_eq!(image.to_string(), "3a|2a|1");

    let v: Value = serde_json::from_str(&stdout(&["trace", "iota2", "3 5~ 6~ a| 1~ 2~ 4~ | 7 8~ | 9~", "--format", "json"])).unwrap();
    assert_eq!(v["toggle"], 5);
    let image: DecoratedSetComposition = v["image"].as_str().unwrap().parse().unwrap();
    assert_eq!(image.iota2().to_string(), "3 5~ 6~ a| 1~ 2~ 4~ | 7 8~ | 9~");
    assert_eq!(run(&["trace", "iota2", "1~ a| 2~"]).status.code(), Some(2));
}
