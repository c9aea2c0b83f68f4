//! Report types and their table, CSV and JSON renderings.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use wps_core::{Subset, WeightVector, WeightedZeta};

use crate::config::Format;

/// Exact fraction as "num/den", denominator always present.
pub fn fraction(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ATerm {
    pub u: Vec<usize>,
    pub weights: Vec<u32>,
    /// |u|, the sum of the weights in u.
    pub size: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub s: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub d: u64,
    pub oracle: Option<String>,
    pub exact: Option<String>,
    pub main: Option<String>,
    pub abs_error: Option<String>,
    /// d >= d0, where the main term accounts for everything but the
    /// contributions of the zeros of P(t).
    pub beyond_d0: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub q: u64,
    pub weights: Vec<u32>,
    pub curve: String,
    pub h: u64,
    pub g: u32,
    pub numerator: Vec<i64>,
    pub d0: u64,
    pub zeta_values: Vec<ZetaValue>,
    pub a_table: Vec<ATerm>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub q: u64,
    pub weights: Vec<u32>,
    pub curve: String,
    pub h: u64,
    pub g: u32,
    pub curve_zeta: String,
    pub zw: String,
    pub height_zeta: String,
    pub poly_part: String,
    pub d0: u64,
    pub zeta_values: Vec<ZetaValue>,
    pub a_table: Vec<ATerm>,
}

pub fn a_table(hz: &WeightedZeta) -> Vec<ATerm> {
    let w = hz.weights();
    let mut terms: Vec<(Subset, ATerm)> = hz
        .main_coeffs()
        .iter()
        .map(|(u, a)| {
            let term = ATerm {
                u: u.indices().collect(),
                weights: u.indices().map(|i| w.get(i)).collect(),
                size: w.weight_of(*u),
                value: fraction(a),
            };
            (*u, term)
        })
        .collect();
    terms.sort_by_key(|(u, t)| (t.size, u.len(), t.u.clone()));
    terms.into_iter().map(|(_, t)| t).collect()
}

pub fn zeta_values(hz: &WeightedZeta) -> Vec<ZetaValue> {
    let w = hz.weights();
    let mut sizes: Vec<u32> = w.subsets().map(|u| w.weight_of(u)).filter(|&s| s >= 2).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|s| ZetaValue { s, value: fraction(&hz.curve().zeta_value(s as i64).expect("s >= 2")) })
        .collect()
}

fn braces(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn paren(w: &[u32]) -> String {
    WeightVector::new(w.to_vec()).map(|w| w.to_string()).unwrap_or_else(|_| "()".into())
}

fn spaced<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Drops a trailing "/1" for table output.
fn compact(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec(), &mut out);
    for r in rows {
        line(r.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}

fn a_table_text(terms: &[ATerm]) -> String {
    let rows: Vec<Vec<String>> = terms
        .iter()
        .map(|t| vec![braces(&t.u), paren(&t.weights), t.size.to_string(), compact(&t.value).to_string()])
        .collect();
    aligned(&["u", "weights", "|u|", "a_u"], &rows)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn a_table_csv(terms: &[ATerm]) -> String {
    csv_string(
        &["u", "weights", "size", "a_u"],
        terms.iter().map(|t| vec![spaced(&t.u), spaced(&t.weights), t.size.to_string(), t.value.clone()]),
    )
}

type Column = (&'static str, fn(&Row) -> Option<&String>);

impl CountReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn has<F: Fn(&Row) -> bool>(&self, f: F) -> bool {
        self.rows.iter().any(f)
    }

    fn columns(&self) -> Vec<Column> {
        let mut cols: Vec<Column> = Vec::new();
        if self.has(|r| r.oracle.is_some()) {
            cols.push(("oracle", |r| r.oracle.as_ref()));
        }
        if self.has(|r| r.exact.is_some()) {
            cols.push(("exact", |r| r.exact.as_ref()));
        }
        if self.has(|r| r.main.is_some()) {
            cols.push(("main", |r| r.main.as_ref()));
            cols.push(("abs_error", |r| r.abs_error.as_ref()));
        }
        cols
    }

    fn csv(&self) -> String {
        let cols = self.columns();
        let mut header = vec!["d"];
        header.extend(cols.iter().map(|(n, _)| *n));
        header.push("beyond_d0");
        csv_string(
            &header,
            self.rows.iter().map(|r| {
                let mut cells = vec![r.d.to_string()];
                cells.extend(cols.iter().map(|(_, get)| get(r).cloned().unwrap_or_default()));
                cells.push(r.beyond_d0.to_string());
                cells
            }),
        )
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "q = {}, weights = {}, curve = {} (g = {}, h = {})",
            self.q,
            paren(&self.weights),
            self.curve,
            self.g,
            self.h
        );
        let _ = writeln!(out, "P(t) = {}", wps_core::QPoly::from_ints(&self.numerator));
        let _ = writeln!(out, "d0 = {}", self.d0);
        if self.has(|r| r.main.is_some()) {
            for z in &self.zeta_values {
                let _ = writeln!(out, "zeta_X({}) = {}", z.s, compact(&z.value));
            }
            out.push('\n');
            out.push_str(&a_table_text(&self.a_table));
        }
        out.push('\n');
        let cols = self.columns();
        let mut header = vec!["d"];
        header.extend(cols.iter().map(|(n, _)| *n));
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut cells = vec![r.d.to_string()];
                cells.extend(cols.iter().map(|(_, get)| compact(get(r).map_or("", |s| s.as_str())).to_string()));
                cells
            })
            .collect();
        out.push_str(&aligned(&header, &rows));
        out
    }
}

impl ZetaReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Csv => {
                let mut out = String::new();
                for (k, v) in self.items() {
                    let _ = writeln!(out, "# {k}: {v}");
                }
                out + &a_table_csv(&self.a_table)
            }
            Format::Table => {
                let mut out = String::new();
                let items = self.items();
                let width = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in items {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
                for z in &self.zeta_values {
                    let _ = writeln!(out, "{:<width$}  {}", format!("zeta_X({})", z.s), compact(&z.value));
                }
                out.push('\n');
                out + &a_table_text(&self.a_table)
            }
        }
    }

    fn items(&self) -> Vec<(&'static str, String)> {
        vec![
            ("q", self.q.to_string()),
            ("weights", paren(&self.weights)),
            ("curve", format!("{} (g = {}, h = {})", self.curve, self.g, self.h)),
            ("Z(X,t)", self.curve_zeta.clone()),
            ("Z_w(X,t)", self.zw.clone()),
            ("height zeta", self.height_zeta.clone()),
            ("poly part", self.poly_part.clone()),
            ("d0", self.d0.to_string()),
        ]
    }
}
