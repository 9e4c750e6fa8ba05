//! Tabular output in csv, json, markdown, and aligned text.
//!
//! Emission is fully deterministic: fixed column order, fixed real
//! precision per column, LF line endings. A value renders to the same
//! string in every format, so csv and json round-trip to identical data.

use std::fmt;

/// Output encodings for tabular data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
    Md,
}

impl Format {
    pub fn label(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Md => "md",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            other => Err(format!("unknown format `{other}` (text, csv, json, md)")),
        }
    }
}

/// One table cell. Reals carry their column's precision so every format
/// renders the same digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    UInt(u64),
    Int(i64),
    Real { value: f64, decimals: usize },
    Bool(bool),
}

impl Cell {
    pub fn real(value: f64, decimals: usize) -> Cell {
        Cell::Real { value, decimals }
    }

    fn is_numeric(&self) -> bool {
        !matches!(self, Cell::Str(_))
    }

    fn rendered(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::UInt(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Real { value, decimals } => format!("{value:.decimals$}"),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Str(s) => json_string(s),
            _ => self.rendered(),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rendered())
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// A uniform-schema table ready for emission.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Table {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
            Format::Md => self.to_md(),
            Format::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&c.rendered())).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        if self.rows.is_empty() {
            return "[]\n".to_string();
        }
        let mut out = String::from("[\n");
        let body: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let pairs: Vec<String> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| format!("{}:{}", json_string(name), cell.json()))
                    .collect();
                format!("  {{{}}}", pairs.join(","))
            })
            .collect();
        out.push_str(&body.join(",\n"));
        out.push_str("\n]\n");
        out
    }

    fn to_md(&self) -> String {
        let mut out = String::new();
        out.push_str("| ");
        out.push_str(&self.columns.join(" | "));
        out.push_str(" |\n|");
        for _ in &self.columns {
            out.push_str(" --- |");
        }
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|c| c.rendered()).collect();
            out.push_str("| ");
            out.push_str(&fields.join(" | "));
            out.push_str(" |\n");
        }
        out
    }

    fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| c.rendered()).collect())
            .collect();
        for row in &rendered {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let numeric: Vec<bool> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, _)| self.rows.iter().all(|r| r[i].is_numeric()))
            .collect();

        let mut out = String::new();
        for (i, name) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            if numeric[i] && !self.rows.is_empty() {
                out.push_str(&format!("{name:>width$}", width = widths[i]));
            } else {
                out.push_str(&format!("{name:<width$}", width = widths[i]));
            }
        }
        out = out.trim_end().to_string();
        out.push('\n');
        for row in &rendered {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                if numeric[i] {
                    line.push_str(&format!("{cell:>width$}", width = widths[i]));
                } else {
                    line.push_str(&format!("{cell:<width$}", width = widths[i]));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// `10^k` label for a value that is a clean power of ten, else `10^k.k`.
pub fn pow10_label(v: f64) -> String {
    let e = v.log10();
    let tenth = (e * 10.0).round() / 10.0;
    if (tenth - tenth.round()).abs() < 1e-9 {
        format!("10^{}", tenth.round() as i64)
    } else {
        format!("10^{tenth:.1}")
    }
}

/// Render a small positive value to one significant digit in plain decimal
/// notation (0.0004, not 4e-4).
pub fn one_significant(v: f64) -> String {
    if v <= 0.0 {
        return "0".to_string();
    }
    let mut exp = v.log10().floor() as i32;
    let mut digit = (v / 10f64.powi(exp)).round();
    if digit >= 10.0 {
        digit = 1.0;
        exp += 1;
    }
    if exp >= 0 {
        format!("{}", (digit * 10f64.powi(exp)) as i64)
    } else {
        format!("{:.*}", (-exp) as usize, digit * 10f64.powi(exp))
    }
}
