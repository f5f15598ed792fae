//! Instance descriptions, the embedded `n = 5` generating-function tables
//! and the report formats shared by the command-line front end.
//!
//! Golden CSV schema: `pattern,degree,numerator`, where `pattern` is a 0/1
//! word, `degree` is the degree `d` of `m ↦ v^{(5,m)}` (so the denominator is
//! `(1-x)^{d+1}`) and `numerator` lists integer coefficients from `x^0` up,
//! separated by spaces.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::counting::genfunc::render_poly;
use crate::counting::{genfunc, Mode, RationalGenFunc};
use crate::error::{Error, Result};
use crate::vectors::{dominates, NatVector};

const TABLE1: &str = include_str!("../data/table1.csv");
const TABLE2: &str = include_str!("../data/table2.csv");
const TABLE3: &str = include_str!("../data/table3.csv");

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Ascii,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "ascii" => Ok(Format::Ascii),
            _ => Err(Error::Input(format!("unknown format {s:?}"))),
        }
    }
}

/// A polytope `F_{G(n,m)}(a,b)` together with what to count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub n: usize,
    pub m: usize,
    pub a: NatVector,
    pub b: NatVector,
    pub mode: Mode,
}

impl InstanceSpec {
    /// Checks lengths against `n`; `b` defaults to zero.
    pub fn new(n: usize, m: usize, a: NatVector, b: Option<NatVector>, mode: Mode) -> Result<Self> {
        let b = b.unwrap_or_else(|| NatVector::zeros(n));
        for (name, v) in [("a", &a), ("b", &b)] {
            if v.len() != n {
                return Err(Error::Input(format!("{name} = {v} has length {}, expected n = {n}", v.len())));
            }
        }
        Ok(InstanceSpec { n, m, a, b, mode })
    }

    /// Errors unless `a ⊵ b`, which is when the polytope is nonempty.
    pub fn require_nonempty(&self) -> Result<()> {
        if dominates(&self.a, &self.b)? {
            Ok(())
        } else {
            Err(Error::NotDominating { a: self.a.to_string(), b: self.b.to_string() })
        }
    }
}

/// One table row: a 0/1 pattern, the degree in `m`, and the numerator.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub pattern: NatVector,
    pub degree: usize,
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub numerator: Vec<BigInt>,
}

impl GoldenRow {
    fn from_genfunc(pattern: NatVector, g: &RationalGenFunc) -> Self {
        GoldenRow { pattern, degree: g.degree.unwrap_or(0), numerator: g.numerator.clone() }
    }

    fn csv_line(&self) -> String {
        let word: String = self.pattern.as_slice().iter().map(|x| x.to_string()).collect();
        let coeffs: Vec<String> = self.numerator.iter().map(|c| c.to_string()).collect();
        format!("{word},{},{}", self.degree, coeffs.join(" "))
    }
}

/// One of the three embedded tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub table: u8,
    pub rows: Vec<GoldenRow>,
}

impl GoldenTable {
    /// Canonical CSV, identical to the embedded file.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},degree,numerator\n", if self.table == 1 { "support_a" } else { "b" });
        for r in &self.rows {
            out.push_str(&r.csv_line());
            out.push('\n');
        }
        out
    }
}

fn parse_pattern(word: &str) -> Result<NatVector> {
    let entries = word
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::Input(format!("bad pattern {word:?}"))),
        })
        .collect::<Result<Vec<u64>>>()?;
    NatVector::new(entries)
}

/// Parses a table in the golden CSV schema.
pub fn parse_golden(table: u8, csv: &str) -> Result<GoldenTable> {
    let mut rows = Vec::new();
    for (lineno, line) in csv.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Input(format!("line {}: {line:?}", lineno + 1));
        let mut fields = line.split(',');
        let (Some(p), Some(d), Some(num), None) = (fields.next(), fields.next(), fields.next(), fields.next()) else {
            return Err(bad());
        };
        let numerator =
            num.split_whitespace().map(|c| c.parse::<BigInt>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        rows.push(GoldenRow { pattern: parse_pattern(p)?, degree: d.parse().map_err(|_| bad())?, numerator });
    }
    Ok(GoldenTable { table, rows })
}

/// The embedded copy of table `which`.
pub fn golden_table(which: u8) -> Result<GoldenTable> {
    let csv = match which {
        1 => TABLE1,
        2 => TABLE2,
        3 => TABLE3,
        _ => return Err(Error::Input(format!("no table {which}; expected 1, 2 or 3"))),
    };
    parse_golden(which, csv)
}

/// The instance behind a row: table 1 varies `a` with `b = 0`, tables 2 and
/// 3 fix `a = 1⁵` and vary `b`.
fn row_instance(which: u8, pattern: &NatVector) -> (NatVector, NatVector, Mode) {
    let n = pattern.len();
    match which {
        1 => (pattern.clone(), NatVector::zeros(n), Mode::Vertices),
        2 => (NatVector::ones(n), pattern.clone(), Mode::Vertices),
        _ => (NatVector::ones(n), pattern.clone(), Mode::Unsplittable),
    }
}

/// A computed row next to the embedded one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDiff {
    pub expected: GoldenRow,
    pub computed: GoldenRow,
    pub matches: bool,
}

/// Every row of one table, recomputed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: u8,
    pub rows: Vec<RowDiff>,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &RowDiff> {
        self.rows.iter().filter(|r| !r.matches)
    }

    pub fn all_match(&self) -> bool {
        self.mismatches().next().is_none()
    }

    /// The recomputed table.
    pub fn computed(&self) -> GoldenTable {
        GoldenTable { table: self.table, rows: self.rows.iter().map(|r| r.computed.clone()).collect() }
    }

    pub fn render(&self, format: Format) -> String {
        render_reports(std::slice::from_ref(self), format)
    }

    fn csv_rows(&self, out: &mut String) {
        for r in &self.rows {
            let e = r.expected.csv_line();
            let c = r.computed.csv_line();
            let status = if r.matches { "ok" } else { "MISMATCH" };
            let ef: Vec<&str> = e.split(',').collect();
            let cf: Vec<&str> = c.split(',').collect();
            let _ = writeln!(out, "{},{},{status},{},{},{},{}", self.table, ef[0], ef[1], cf[1], ef[2], cf[2]);
        }
    }
}

/// Several reports as one document: a JSON array, a single CSV header, or
/// consecutive ascii blocks.
pub fn render_reports(reports: &[TableReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => serde_json::to_string_pretty(&reports[0]).expect("reports serialize"),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
        Format::Csv => {
            let mut out = String::from("table,pattern,status,expected_degree,computed_degree,expected,computed\n");
            for r in reports {
                r.csv_rows(&mut out);
            }
            out
        }
        Format::Ascii => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Table {}: {} rows, {} mismatches", self.table, self.rows.len(), self.mismatches().count())?;
        for r in &self.rows {
            let mark = if r.matches { "  " } else { "!!" };
            writeln!(
                f,
                "{mark} ({}) d={:<2} {}",
                r.expected.pattern,
                r.computed.degree,
                render_poly(&r.computed.numerator, "x")
            )?;
            if !r.matches {
                writeln!(
                    f,
                    "     expected d={:<2} {}",
                    r.expected.degree,
                    render_poly(&r.expected.numerator, "x")
                )?;
            }
        }
        Ok(())
    }
}

/// Recomputes every row of table `which` and diffs it against the embedded
/// copy.
pub fn reproduce_tables(which: u8) -> Result<TableReport> {
    let golden = golden_table(which)?;
    let rows = golden
        .rows
        .into_par_iter()
        .map(|expected| {
            let (a, b, mode) = row_instance(which, &expected.pattern);
            let g = genfunc(&a, &b, mode)?;
            let computed = GoldenRow::from_genfunc(expected.pattern.clone(), &g);
            let matches = computed == expected;
            Ok(RowDiff { expected, computed, matches })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport { table: which, rows })
}
