//! Output records and their table, CSV and JSON forms.
//!
//! CSV floats are written with 17 significant digits so a parse gives back
//! the exact bits. Blank CSV cells mean "no value".

use std::error::Error;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use symgauss::rootsys::CatalogEntry;

pub type BoxError = Box<dyn Error + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Num(f64),
    Opt(Option<f64>),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) | Cell::Opt(Some(x)) => format!("{x:.16e}"),
            Cell::Opt(None) => String::new(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn table(&self) -> String {
        match self {
            Cell::Num(x) | Cell::Opt(Some(x)) => {
                if *x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
                    format!("{x:.10}")
                } else {
                    format!("{x:.6e}")
                }
            }
            Cell::Opt(None) => "-".into(),
            other => other.csv(),
        }
    }
}

/// Looks up cells of one CSV row by column name.
pub struct Row<'a> {
    header: &'a [String],
    cells: &'a [String],
}

impl Row<'_> {
    pub fn text(&self, name: &str) -> Result<&str, BoxError> {
        let i = self.header.iter().position(|h| h == name).ok_or_else(|| format!("missing column '{name}'"))?;
        Ok(self.cells.get(i).map(String::as_str).unwrap_or(""))
    }

    pub fn num(&self, name: &str) -> Result<f64, BoxError> {
        Ok(self.text(name)?.parse()?)
    }

    pub fn int(&self, name: &str) -> Result<u64, BoxError> {
        Ok(self.text(name)?.parse()?)
    }

    pub fn opt(&self, name: &str) -> Result<Option<f64>, BoxError> {
        let s = self.text(name)?;
        if s.is_empty() {
            Ok(None)
        } else {
            Ok(Some(s.parse()?))
        }
    }

    pub fn flag(&self, name: &str) -> Result<bool, BoxError> {
        Ok(self.text(name)?.parse()?)
    }
}

pub trait Tabular: Sized + Serialize + DeserializeOwned {
    fn header(records: &[Self]) -> Vec<String>;
    fn cells(&self) -> Vec<Cell>;
    fn from_row(row: &Row<'_>) -> Result<Self, BoxError>;

    fn table_header(records: &[Self]) -> Vec<String> {
        Self::header(records)
    }

    fn table_cells(&self) -> Vec<Cell> {
        self.cells()
    }
}

pub fn emit<T: Tabular>(records: &[T], format: Format) -> Result<String, BoxError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(T::header(records))?;
            for r in records {
                w.write_record(r.cells().iter().map(Cell::csv))?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Table => {
            let header = T::table_header(records);
            let rows: Vec<Vec<String>> =
                records.iter().map(|r| r.table_cells().iter().map(Cell::table).collect()).collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].chars().count()]).max().unwrap())
                .collect();
            let mut s = String::new();
            let line = |s: &mut String, cells: &[String]| {
                let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                let _ = writeln!(s, "{}", parts.join("  ").trim_end());
            };
            line(&mut s, &header);
            for r in &rows {
                line(&mut s, r);
            }
            Ok(s)
        }
    }
}

pub fn parse_csv<T: Tabular>(text: &str) -> Result<Vec<T>, BoxError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers()?.iter().map(str::to_owned).collect();
    let mut out = Vec::new();
    for rec in rd.records() {
        let cells: Vec<String> = rec?.iter().map(str::to_owned).collect();
        out.push(T::from_row(&Row { header: &header, cells: &cells })?);
    }
    Ok(out)
}

pub fn parse_json<T: Tabular>(text: &str) -> Result<Vec<T>, BoxError> {
    Ok(serde_json::from_str(text)?)
}

impl Tabular for CatalogEntry {
    fn header(_: &[Self]) -> Vec<String> {
        ["label", "family", "rank", "dimension", "alpha", "beta", "gamma", "remark"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<Cell> {
        [&self.label, &self.family, &self.rank_formula, &self.dim_formula, &self.alpha, &self.beta, &self.gamma, &self.remark]
            .into_iter()
            .map(|s| Cell::Text(s.clone()))
            .collect()
    }

    fn from_row(row: &Row<'_>) -> Result<Self, BoxError> {
        Ok(CatalogEntry {
            label: row.text("label")?.into(),
            family: row.text("family")?.into(),
            rank_formula: row.text("rank")?.into(),
            dim_formula: row.text("dimension")?.into(),
            alpha: row.text("alpha")?.into(),
            beta: row.text("beta")?.into(),
            gamma: row.text("gamma")?.into(),
            remark: row.text("remark")?.into(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedformRecord {
    pub family: String,
    pub rank: u64,
    pub sigma: f64,
    #[serde(rename = "log_Za")]
    pub log_big_za: f64,
    pub log_za: f64,
}

impl Tabular for ClosedformRecord {
    fn header(_: &[Self]) -> Vec<String> {
        ["family", "rank", "sigma", "log_Za", "log_za"].map(String::from).to_vec()
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.family.clone()),
            Cell::Int(self.rank),
            Cell::Num(self.sigma),
            Cell::Num(self.log_big_za),
            Cell::Num(self.log_za),
        ]
    }

    fn from_row(row: &Row<'_>) -> Result<Self, BoxError> {
        Ok(ClosedformRecord {
            family: row.text("family")?.into(),
            rank: row.int("rank")?,
            sigma: row.num("sigma")?,
            log_big_za: row.num("log_Za")?,
            log_za: row.num("log_za")?,
        })
    }

    fn table_header(records: &[Self]) -> Vec<String> {
        let mut h = Self::header(records);
        h.push("Za/za".into());
        h
    }

    fn table_cells(&self) -> Vec<Cell> {
        let mut c = self.cells();
        c.push(Cell::Num((self.log_big_za - self.log_za).exp()));
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankValue {
    pub r: u64,
    pub value: f64,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRecord {
    pub family: String,
    pub t: f64,
    pub F: f64,
    pub F_r: Vec<RankValue>,
    pub e2: f64,
    pub E2: f64,
}

impl Tabular for LimitRecord {
    fn header(records: &[Self]) -> Vec<String> {
        let mut h: Vec<String> = ["family", "t", "F", "e2", "E2"].map(String::from).to_vec();
        if let Some(first) = records.first() {
            h.extend(first.F_r.iter().map(|rv| format!("F_r{}", rv.r)));
        }
        h
    }

    fn cells(&self) -> Vec<Cell> {
        let mut c = vec![Cell::Text(self.family.clone()), Cell::Num(self.t), Cell::Num(self.F), Cell::Num(self.e2), Cell::Num(self.E2)];
        c.extend(self.F_r.iter().map(|rv| Cell::Num(rv.value)));
        c
    }

    fn from_row(row: &Row<'_>) -> Result<Self, BoxError> {
        let mut f_r = Vec::new();
        for name in row.header {
            if let Some(r) = name.strip_prefix("F_r") {
                f_r.push(RankValue { r: r.parse()?, value: row.num(name)? });
            }
        }
        Ok(LimitRecord {
            family: row.text("family")?.into(),
            t: row.num("t")?,
            F: row.num("F")?,
            F_r: f_r,
            e2: row.num("e2")?,
            E2: row.num("E2")?,
        })
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumRecord {
    pub kernel: String,
    pub c: f64,
    pub t: f64,
    pub beta: f64,
    pub delta: f64,
    pub r: u64,
    pub E_r: f64,
    pub grad_norm: f64,
    pub converged: bool,
    pub closed_form_target: Option<f64>,
    pub gap: Option<f64>,
    pub exploratory: bool,
}

impl Tabular for EquilibriumRecord {
    fn header(_: &[Self]) -> Vec<String> {
        ["kernel", "c", "t", "beta", "delta", "r", "E_r", "grad_norm", "converged", "closed_form_target", "gap", "exploratory"]
            .map(String::from)
            .to_vec()
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            Cell::Text(self.kernel.clone()),
            Cell::Num(self.c),
            Cell::Num(self.t),
            Cell::Num(self.beta),
            Cell::Num(self.delta),
            Cell::Int(self.r),
            Cell::Num(self.E_r),
            Cell::Num(self.grad_norm),
            Cell::Flag(self.converged),
            Cell::Opt(self.closed_form_target),
            Cell::Opt(self.gap),
            Cell::Flag(self.exploratory),
        ]
    }

    fn from_row(row: &Row<'_>) -> Result<Self, BoxError> {
        Ok(EquilibriumRecord {
            kernel: row.text("kernel")?.into(),
            c: row.num("c")?,
            t: row.num("t")?,
            beta: row.num("beta")?,
            delta: row.num("delta")?,
            r: row.int("r")?,
            E_r: row.num("E_r")?,
            grad_norm: row.num("grad_norm")?,
            converged: row.flag("converged")?,
            closed_form_target: row.opt("closed_form_target")?,
            gap: row.opt("gap")?,
            exploratory: row.flag("exploratory")?,
        })
    }
}
