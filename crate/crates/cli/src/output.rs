use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One result line; CSV columns keep this field order.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub generator: String,
    pub construction: String,
    pub extra: String,
}

impl Row {
    fn text(&self) -> String {
        let mut line = format!("[{},{},{}]  {}", self.n, self.k, self.d, self.generator);
        if !self.construction.is_empty() {
            line.push_str("  ");
            line.push_str(&self.construction);
        }
        if !self.extra.is_empty() {
            line.push_str("  ");
            line.push_str(&self.extra);
        }
        line
    }
}

pub fn json<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn csv_rows<T: Serialize>(out: &mut impl Write, rows: &[T]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(unwrap_io)?;
    }
    w.flush()
}

fn unwrap_io(e: csv::Error) -> io::Error {
    if !matches!(e.kind(), csv::ErrorKind::Io(_)) {
        return io::Error::other(e);
    }
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        _ => unreachable!(),
    }
}

/// Rows followed by a summary line (text), a trailing `#` comment (CSV) or a wrapper object (JSON).
pub fn rows(out: &mut impl Write, format: Format, rows: &[Row], summary: &str) -> io::Result<()> {
    match format {
        Format::Text => {
            for r in rows {
                writeln!(out, "{}", r.text())?;
            }
            writeln!(out, "{summary}")
        }
        Format::Csv => {
            if rows.is_empty() {
                writeln!(out, "n,k,d,generator,construction,extra")?;
            }
            csv_rows(out, rows)?;
            writeln!(out, "# {summary}")
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Wrapped<'a> {
                results: &'a [Row],
                summary: &'a str,
            }
            json(out, &Wrapped { results: rows, summary })
        }
    }
}
