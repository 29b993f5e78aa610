use crate::error::{Error, Result};
use std::fmt;
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Flag(bool),
}

/// Floats with 17 significant digits, so values round-trip exactly.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(x) => f.write_str(&format_float(*x)),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Flag(b) => write!(f, "{b}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub criterion: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(criterion: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Verdict { criterion: criterion.into(), passed, detail: detail.into() }
    }
}

/// Result table of a named experiment together with its pass/fail verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        ExperimentReport {
            name: name.to_string(),
            parameters: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl fmt::Display) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn verdict(&mut self, criterion: &str, passed: bool, detail: impl Into<String>) {
        self.verdicts.push(Verdict::new(criterion, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    /// Column `name` of every row, as floats.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[i] {
                    Cell::Num(x) => *x,
                    Cell::Int(k) => *k as f64,
                    _ => f64::NAN,
                })
                .collect(),
        )
    }

    /// `# key=value` metadata, a header row and data rows.
    pub fn write_csv<W: Write>(&self, out: W, timestamp: Option<&str>) -> Result<()> {
        let mut out = out;
        let io = |e: std::io::Error| Error::config(format!("write failed: {e}"));
        writeln!(out, "# experiment={}", self.name).map_err(io)?;
        for (k, v) in &self.parameters {
            writeln!(out, "# {k}={v}").map_err(io)?;
        }
        if let Some(ts) = timestamp {
            writeln!(out, "# timestamp={ts}").map_err(io)?;
        }
        for v in &self.verdicts {
            writeln!(out, "# verdict.{}={} ({})", v.criterion, if v.passed { "pass" } else { "fail" }, v.detail)
                .map_err(io)?;
        }
        for n in &self.notes {
            writeln!(out, "# note={n}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::config(format!("csv: {e}"));
        w.write_record(&self.columns).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.to_string())).map_err(csv_err)?;
        }
        w.flush().map_err(io)?;
        Ok(())
    }

    pub fn to_csv_string(&self, timestamp: Option<&str>) -> String {
        let mut buf = Vec::new();
        // writing to memory cannot fail
        let _ = self.write_csv(&mut buf, timestamp);
        String::from_utf8(buf).unwrap_or_default()
    }

    /// Human-readable summary: parameters, an aligned table with 8 significant digits, verdicts and notes.
    pub fn summary(&self) -> String {
        let mut s = format!("{}\n", self.name);
        if !self.parameters.is_empty() {
            let kv: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            s.push_str(&format!("  {}\n", kv.join(" ")));
        }
        let short = |c: &Cell| match c {
            Cell::Num(x) if x.is_finite() => format!("{x:.7e}"),
            other => other.to_string(),
        };
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(short).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| {
                cells.iter().filter_map(|r| r.get(j)).map(|c| c.len()).chain([self.columns[j].len()]).max().unwrap_or(0)
            })
            .collect();
        let line = |r: &[String]| {
            let v: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            format!("  {}\n", v.join("  "))
        };
        if !self.rows.is_empty() {
            s.push_str(&line(&self.columns));
            for r in &cells {
                s.push_str(&line(r));
            }
        }
        for v in &self.verdicts {
            s.push_str(&format!("  [{}] {}: {}\n", if v.passed { "PASS" } else { "FAIL" }, v.criterion, v.detail));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 0.1f64 + 0.2;
        let s = format_float(x);
        assert_eq!(s.parse::<f64>().unwrap(), x);
        assert_eq!(s, "3.0000000000000004e-1");
    }

    #[test]
    fn csv_layout() {
        let mut r = ExperimentReport::new("demo", &["T", "p"]);
        r.param("seed", 42);
        r.push(vec![Cell::Num(2.0), Cell::Num(0.5)]);
        r.verdict("trend", true, "ok");
        let s = r.to_csv_string(None);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# experiment=demo");
        assert_eq!(lines[1], "# seed=42");
        assert_eq!(lines[3], "T,p");
        assert_eq!(lines[4], "2.0000000000000000e0,5.0000000000000000e-1");
        assert!(!s.contains("timestamp"));
        assert!(r.to_csv_string(Some("now")).contains("# timestamp=now"));
    }
}
