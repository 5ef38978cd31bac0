//! Serializable records. Rationals are always `"n"` or `"n/d"` strings.

use lgcy_core::rational::{self, Q};
use lgcy_core::report::CheckReport;
use lgcy_core::{PowerSeries, QMPolynomial};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    GwCurve,
    FjrwCubic,
}

impl Theory {
    pub fn as_str(self) -> &'static str {
        match self {
            Theory::GwCurve => "gw_curve",
            Theory::FjrwCubic => "fjrw_cubic",
        }
    }
}

/// One `coeff * E2^a E4^b E6^c` term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QmTerm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPayload {
    pub order: i64,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "representation", content = "payload", rename_all = "snake_case")]
pub enum Payload {
    QmPolynomial(Vec<QmTerm>),
    QSeries(SeriesPayload),
    SSeries(SeriesPayload),
    Rational(String),
}

impl Payload {
    pub fn representation(&self) -> &'static str {
        match self {
            Payload::QmPolynomial(_) => "qm_polynomial",
            Payload::QSeries(_) => "q_series",
            Payload::SSeries(_) => "s_series",
            Payload::Rational(_) => "rational",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub theory: Theory,
    pub genus: Option<u32>,
    /// Insertions as text, e.g. `"omega psi^0, omega psi^2"`.
    pub insertions: String,
    pub connected: bool,
    #[serde(flatten)]
    pub payload: Payload,
}

pub fn qm_terms(p: &QMPolynomial) -> Vec<QmTerm> {
    p.terms()
        .map(|(m, c)| QmTerm { a: m.e2, b: m.e4, c: m.e6, coeff: rational::to_string(c) })
        .collect()
}

pub fn qm_from_terms(terms: &[QmTerm]) -> Result<QMPolynomial, CliError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        out.push((lgcy_core::Monomial::new(t.a, t.b, t.c), parse_rational(&t.coeff)?));
    }
    Ok(QMPolynomial::from_terms(out))
}

pub fn series_payload(s: &PowerSeries) -> SeriesPayload {
    SeriesPayload { order: s.order(), coefficients: s.coeffs().iter().map(rational::to_string).collect() }
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    rational::parse(s).ok_or_else(|| CliError::InvalidRequest(format!("not a rational number: {s:?}")))
}

/// A verification outcome as written to output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl From<&CheckReport> for CheckRecord {
    fn from(r: &CheckReport) -> Self {
        CheckRecord { name: r.name.clone(), anchor: r.anchor.clone(), passed: r.passed, detail: r.detail.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassEntry {
    pub m: u32,
    pub n: u32,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinEntry {
    pub weight: u32,
    /// `E_weight` in terms of `E4, E6` (absent for weight 2).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polynomial: Option<Vec<QmTerm>>,
    pub q_series: SeriesPayload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "table", rename_all = "snake_case")]
pub enum Table {
    A { bound: u32, entries: Vec<WeierstrassEntry> },
    B { bound: u32, entries: Vec<WeierstrassEntry> },
    Eisenstein { max_weight: u32, order: usize, entries: Vec<EisensteinEntry> },
}

/// Everything a command can print.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Invariants { version: u32, records: Vec<InvariantRecord> },
    Verification { version: u32, suite: String, passed: bool, checks: Vec<CheckRecord> },
    Table {
        version: u32,
        #[serde(flatten)]
        table: Table,
    },
}

impl Document {
    /// Number of failed checks; zero for non-verification documents.
    pub fn failures(&self) -> usize {
        match self {
            Document::Verification { checks, .. } => checks.iter().filter(|c| !c.passed).count(),
            _ => 0,
        }
    }
}
