use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use emitpair_core::EmissionCurve;
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(command: &str, config_json: &str, config_hash: &str, columns: &[&str]) -> Self {
        let mut text = String::new();
        writeln!(text, "# emitpair {} {command}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(text, "# config_sha256={config_hash}").unwrap();
        writeln!(text, "# config={config_json}").unwrap();
        writeln!(text, "{}", columns.join(",")).unwrap();
        Csv { text }
    }

    pub fn row(&mut self, cells: impl IntoIterator<Item = String>) {
        let cells: Vec<String> = cells.into_iter().collect();
        writeln!(self.text, "{}", cells.join(",")).unwrap();
    }

    pub fn write(&self, path: &Path) -> CliResult<()> {
        write_file(path, &self.text)
    }
}

/// Time column followed by one column per curve.
pub fn curves_csv(command: &str, config_json: &str, config_hash: &str, curves: &[EmissionCurve]) -> Csv {
    let mut columns = vec!["t"];
    columns.extend(curves.iter().map(|c| c.label.as_str()));
    let mut csv = Csv::new(command, config_json, config_hash, &columns);
    if let Some(first) = curves.first() {
        for (i, t) in first.times.iter().enumerate() {
            csv.row(std::iter::once(num(*t)).chain(curves.iter().map(|c| num(c.values[i]))));
        }
    }
    csv
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    write_file(path, &text)
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1.7682173117332068, 1e-300, 0.0] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(num(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn sidecar_extension() {
        assert_eq!(sidecar_path(Path::new("a/curves.csv")), PathBuf::from("a/curves.json"));
        assert_eq!(sidecar_path(Path::new("plain")), PathBuf::from("plain.json"));
    }
}
