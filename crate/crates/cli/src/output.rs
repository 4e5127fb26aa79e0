use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::Format;

/// Line-oriented record writer for JSONL or CSV.
///
/// In CSV mode a header row starts each run of records with the same keys;
/// nested values are written as inline JSON.
pub struct Sink {
    out: Box<dyn Write>,
    format: Format,
    header: Option<Vec<String>>,
}

impl Sink {
    pub fn open(path: Option<&Path>, format: Format) -> io::Result<Self> {
        let out: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Self { out, format, header: None })
    }

    pub fn emit<T: Serialize>(&mut self, item: &T) -> io::Result<()> {
        let v = serde_json::to_value(item).map_err(io::Error::other)?;
        match self.format {
            Format::Jsonl => writeln!(self.out, "{v}"),
            Format::Csv => self.emit_csv(v),
        }
    }

    fn emit_csv(&mut self, v: Value) -> io::Result<()> {
        let Value::Object(map) = v else {
            return writeln!(self.out, "{}", csv_field(&v));
        };
        let keys: Vec<String> = map.keys().cloned().collect();
        if self.header.as_ref() != Some(&keys) {
            if self.header.is_some() {
                writeln!(self.out)?;
            }
            writeln!(self.out, "{}", keys.iter().map(|k| csv_quote(k)).collect::<Vec<_>>().join(","))?;
            self.header = Some(keys);
        }
        let header = self.header.as_ref().expect("set above");
        let row: Vec<String> = header.iter().map(|k| map.get(k).map(csv_field).unwrap_or_default()).collect();
        writeln!(self.out, "{}", row.join(","))
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => csv_quote(s),
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        _ => csv_quote(&v.to_string()),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(csv_quote("a,b"), "\"a,b\"");
        assert_eq!(csv_quote("plain"), "plain");
        assert_eq!(csv_field(&serde_json::json!([1, 2])), "\"[1,2]\"");
        assert_eq!(csv_field(&serde_json::json!("x\"y")), "\"x\"\"y\"");
    }
}
