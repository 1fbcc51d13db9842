use anyhow::{bail, Result};
use serde::Serialize;

use crate::Format;

/// What a command produced and whether every check in it passed.
pub struct Output {
    pub stdout: String,
    pub ok: bool,
}

impl Output {
    pub fn ok(stdout: String) -> Self {
        Output { stdout, ok: true }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn csv_rows<R, I>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn reject_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        bail!("--format dot is only available for hasse-dot and facedot");
    }
    Ok(())
}
