//! Result documents and their JSON and TSV renderings.

use std::collections::BTreeMap;

use irredkit::{Tolerances, C64};
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Tsv => "tsv",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceEcho {
    pub eq: f64,
    pub rank: f64,
    pub eig_cluster: f64,
    pub int: f64,
    pub block: f64,
}

impl From<&Tolerances> for ToleranceEcho {
    fn from(t: &Tolerances) -> Self {
        ToleranceEcho {
            eq: t.eq,
            rank: t.rank,
            eig_cluster: t.eig_cluster,
            int: t.int,
            block: t.block,
        }
    }
}

/// A table that can also be rendered as TSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// The output of every command.
#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub args: Vec<String>,
    pub seed: u64,
    pub tolerances: ToleranceEcho,
    pub max_order: usize,
    pub payload: Value,
    pub max_residuals: BTreeMap<String, f64>,
    #[serde(skip)]
    pub table: Option<Table>,
}

/// One named check with the residual it was measured at.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// `None` when the check was skipped.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub skipped: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &str, residual: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            residual: Some(residual),
            tolerance,
            passed: residual <= tolerance,
            skipped: false,
        });
    }

    pub fn skip(&mut self, name: &str, tolerance: f64) {
        self.checks.push(Check {
            name: name.into(),
            residual: None,
            tolerance,
            passed: true,
            skipped: true,
        });
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

pub fn serialize_result(doc: &ResultDocument, format: OutputFormat) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("result documents serialize");
            s.push('\n');
            Ok(s)
        }
        OutputFormat::Tsv => match &doc.table {
            Some(t) => Ok(render_tsv(t)),
            None => Err(CliError::UnsupportedFormat(format.name().into())),
        },
    }
}

fn render_tsv(t: &Table) -> String {
    let mut out = t.header.join("\t");
    out.push('\n');
    for row in &t.rows {
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

/// `%.12g`-style formatting; magnitudes below 1e-12 print as 0.
pub fn format_real(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `a+bi` with 12 significant digits per part.
pub fn format_complex(z: C64) -> String {
    let re = format_real(z.re);
    let im = format_real(z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}
