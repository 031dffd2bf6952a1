use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::Scale;
use crate::error::CliError;

/// Where an output came from; embedded in every file written.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub scale: Scale,
}

impl Provenance {
    pub fn new(args: &[String], seed: u64, scale: Scale) -> Self {
        Self {
            version: concat!("sphertest ", env!("CARGO_PKG_VERSION")),
            command: args.join(" "),
            seed,
            scale,
        }
    }

    /// Comment block for CSV output, with extra `key: value` lines.
    pub fn csv_header(&self, extra: &[(&str, String)]) -> String {
        let scale = match self.scale {
            Scale::Desk => "desk",
            Scale::Paper => "paper",
        };
        let mut s = format!(
            "# {}\n# command: {}\n# seed: {}\n# scale: {scale}\n",
            self.version, self.command, self.seed
        );
        for (k, v) in extra {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s
    }

    /// `payload` (a JSON object) with a leading `provenance` entry.
    pub fn wrap<T: Serialize>(&self, payload: &T) -> Result<Value, CliError> {
        let mut out = Map::new();
        out.insert("provenance".into(), serde_json::to_value(self)?);
        match serde_json::to_value(payload)? {
            Value::Object(m) => out.extend(m),
            other => {
                out.insert("data".into(), other);
            }
        }
        Ok(Value::Object(out))
    }
}

/// Buffered writer for `path`, or for stdout when no path is given.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json(path: Option<&Path>, value: &Value) -> Result<(), CliError> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes a CSV table: the provenance block, a header row, then the rows.
pub fn write_csv(
    path: Option<&Path>,
    header: &str,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<f64>>,
) -> Result<(), CliError> {
    let mut w = sink(path)?;
    w.write_all(header.as_bytes())?;
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_cell(*v)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    w.flush()?;
    Ok(())
}

fn fmt_cell(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
