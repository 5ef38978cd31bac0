//! Rendering of documents as JSON, CSV or plain text.
//!
//! Every renderer is a pure function of the document, so identical inputs
//! give identical bytes.

use std::fmt::Write as _;

use crate::config::Format;
use crate::error::CliError;
use crate::record::{Document, InvariantRecord, Payload, QmTerm, SeriesPayload, Table, WeierstrassEntry};

pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => csv(doc),
        Format::Text => Ok(text(doc)),
    }
}

fn csv(doc: &Document) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc {
        Document::Invariants { records, .. } => {
            w.write_record(["theory", "genus", "insertions", "connected", "representation", "a", "b", "c", "index", "value"])?;
            for r in records {
                let genus = r.genus.map(|g| g.to_string()).unwrap_or_default();
                let head = [r.theory.as_str().to_string(), genus, r.insertions.clone(), r.connected.to_string()];
                for row in payload_rows(&r.payload) {
                    w.write_record(head.iter().chain(row.iter()))?;
                }
            }
        }
        Document::Verification { suite, checks, .. } => {
            w.write_record(["suite", "name", "anchor", "passed", "detail"])?;
            for c in checks {
                let detail = c.detail.as_deref().unwrap_or("");
                w.write_record([suite.as_str(), &c.name, &c.anchor, if c.passed { "true" } else { "false" }, detail])?;
            }
        }
        Document::Table { table, .. } => match table {
            Table::A { entries, .. } | Table::B { entries, .. } => {
                w.write_record(["m", "n", "value"])?;
                for WeierstrassEntry { m, n, value } in entries {
                    w.write_record([m.to_string(), n.to_string(), value.clone()])?;
                }
            }
            Table::Eisenstein { entries, .. } => {
                w.write_record(["weight", "representation", "a", "b", "c", "index", "value"])?;
                for e in entries {
                    let weight = e.weight.to_string();
                    let mut rows = Vec::new();
                    if let Some(p) = &e.polynomial {
                        rows.extend(payload_rows(&Payload::QmPolynomial(p.clone())));
                    }
                    rows.extend(payload_rows(&Payload::QSeries(e.q_series.clone())));
                    for row in rows {
                        w.write_record(std::iter::once(&weight).chain(row.iter()))?;
                    }
                }
            }
        },
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `[representation, a, b, c, index, value]` rows: one per monomial or
/// series coefficient.
fn payload_rows(p: &Payload) -> Vec<[String; 6]> {
    let rep = p.representation().to_string();
    match p {
        Payload::QmPolynomial(terms) => terms
            .iter()
            .map(|t| [rep.clone(), t.a.to_string(), t.b.to_string(), t.c.to_string(), String::new(), t.coeff.clone()])
            .collect(),
        Payload::QSeries(s) | Payload::SSeries(s) => s
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| [rep.clone(), String::new(), String::new(), String::new(), k.to_string(), c.clone()])
            .collect(),
        Payload::Rational(v) => vec![[rep, String::new(), String::new(), String::new(), String::new(), v.clone()]],
    }
}

fn text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Invariants { records, .. } => {
            for r in records {
                writeln!(out, "{}", record_line(r)).unwrap();
            }
        }
        Document::Verification { suite, passed, checks, .. } => {
            for c in checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    Some(d) => writeln!(out, "{tag} {} ({}): {d}", c.name, c.anchor),
                    None => writeln!(out, "{tag} {} ({})", c.name, c.anchor),
                }
                .unwrap();
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            let verdict = if *passed { "passed" } else { "FAILED" };
            writeln!(out, "suite {suite}: {verdict}, {} checks, {failed} failed", checks.len()).unwrap();
        }
        Document::Table { table, .. } => match table {
            Table::A { bound, entries } | Table::B { bound, entries } => {
                let name = if matches!(table, Table::A { .. }) { "a" } else { "b" };
                writeln!(out, "{name}(m, n) for 4m + 6n <= {bound}").unwrap();
                for e in entries {
                    writeln!(out, "{name}({}, {}) = {}", e.m, e.n, e.value).unwrap();
                }
            }
            Table::Eisenstein { entries, .. } => {
                for e in entries {
                    match &e.polynomial {
                        Some(p) => writeln!(out, "E{} = {}", e.weight, qm_text(p)).unwrap(),
                        None => writeln!(out, "E{}", e.weight).unwrap(),
                    }
                    writeln!(out, "  = {}", series_text(&e.q_series, "q")).unwrap();
                }
            }
        },
    }
    out
}

fn record_line(r: &InvariantRecord) -> String {
    let genus = r.genus.map(|g| format!(" g={g}")).unwrap_or_default();
    let conn = if r.connected { " connected" } else { "" };
    let value = match &r.payload {
        Payload::QmPolynomial(t) => qm_text(t),
        Payload::QSeries(s) => series_text(s, "q"),
        Payload::SSeries(s) => series_text(s, "s"),
        Payload::Rational(v) => v.clone(),
    };
    format!("{}{genus}{conn} <{}> = {value}", r.theory.as_str(), r.insertions)
}

fn qm_text(terms: &[QmTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|t| {
            let mut s = t.coeff.clone();
            for (name, e) in [("E2", t.a), ("E4", t.b), ("E6", t.c)] {
                match e {
                    0 => {}
                    1 => write!(s, "*{name}").unwrap(),
                    _ => write!(s, "*{name}^{e}").unwrap(),
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

fn series_text(s: &SeriesPayload, var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in s.coefficients.iter().enumerate() {
        if c == "0" {
            continue;
        }
        parts.push(match k {
            0 => c.clone(),
            1 => format!("{c}*{var}"),
            _ => format!("{c}*{var}^{k}"),
        });
    }
    if parts.is_empty() {
        parts.push("0".into());
    }
    format!("{} + O({var}^{})", parts.join(" + "), s.order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Theory;

    fn doc() -> Document {
        Document::Invariants {
            version: 1,
            records: vec![InvariantRecord {
                theory: Theory::GwCurve,
                genus: Some(2),
                insertions: "omega psi^2".into(),
                connected: true,
                payload: Payload::QmPolynomial(vec![
                    QmTerm { a: 0, b: 1, c: 0, coeff: "1/2880".into() },
                    QmTerm { a: 2, b: 0, c: 0, coeff: "1/1152".into() },
                ]),
            }],
        }
    }

    #[test]
    fn csv_has_one_row_per_monomial() {
        let s = render(&doc(), Format::Csv).unwrap();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "gw_curve,2,omega psi^2,true,qm_polynomial,0,1,0,,1/2880");
    }

    #[test]
    fn text_and_json() {
        assert_eq!(
            render(&doc(), Format::Text).unwrap(),
            "gw_curve g=2 connected <omega psi^2> = 1/2880*E4 + 1/1152*E2^2\n"
        );
        let v: serde_json::Value = serde_json::from_str(&render(&doc(), Format::Json).unwrap()).unwrap();
        assert_eq!(v["kind"], "invariants");
        assert_eq!(v["records"][0]["payload"][1]["coeff"], "1/1152");
    }
}
