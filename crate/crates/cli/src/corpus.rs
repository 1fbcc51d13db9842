use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

/// File name and contents of each fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("fig1.json", r#"{"n":3,"covers":[[1,2],[3,2]]}"#),
    ("fig2.json", r#"{"n":5,"covers":[[1,2],[2,5],[1,4],[4,3]]}"#),
    ("antichain5.json", r#"{"n":5,"covers":[]}"#),
    ("chain3.json", r#"{"n":3,"covers":[[1,2],[2,3]]}"#),
    ("fig3.json", r#"{"vertices":["a","b","c","d","e"],"facets":[["a","b","c"],["b","d"],["c","e"],["d","e"]]}"#),
    ("fig4.json", r#"{"vertices":["a","b","c","d","e"],"facets":[["a","b","c"],["b","c","d"],["c","d","e"]]}"#),
    (
        "fig4-partition.json",
        r#"[{"anchor":[],"facet":["a","b","c"]},{"anchor":["d"],"facet":["b","c","d"]},{"anchor":["e"],"facet":["c","d","e"]}]"#,
    ),
];

/// Writes every fixture into `dir` and lists what was written.
pub fn seed(dir: &Path) -> Result<String> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut listing = String::new();
    for (name, body) in FIXTURES {
        let path = dir.join(name);
        fs::write(&path, format!("{body}\n")).with_context(|| format!("writing {}", path.display()))?;
        listing.push_str(&format!("{}\n", path.display()));
    }
    Ok(listing)
}
