//! One function per subcommand. Each returns a [`Document`]; printing and
//! exit codes are left to the binary.

use lgcy_core::cayley::{fjrw_onepoint_all_genus, genus_zero_data, CayleyFrame};
use lgcy_core::chazy::{fjrw_genus1_series, genus_one_invariant};
use lgcy_core::modular::{eisenstein, qm_eval, quasimodularize};
use lgcy_core::npoint::{connected_invariant, stationary_invariant};
use lgcy_core::rational::to_string;
use lgcy_core::theta::WeierstrassTable;
use lgcy_core::QMPolynomial;

use crate::cache::Cache;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::record::{
    qm_terms, series_payload, CheckRecord, Document, EisensteinEntry, InvariantRecord, Payload, Table, Theory,
    WeierstrassEntry,
};
use crate::suites::{self, Suite};
use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeierstrassKind {
    A,
    B,
}

fn invariants(records: Vec<InvariantRecord>) -> Document {
    Document::Invariants { version: SCHEMA_VERSION, records }
}

fn omega_insertions(psi: &[i64]) -> String {
    psi.iter().map(|l| format!("omega psi^{l}")).collect::<Vec<_>>().join(", ")
}

/// The polynomial record, followed by its `q`-expansion when asked for.
fn gw_records(
    genus: Option<u32>,
    psi: &[i64],
    connected: bool,
    p: &QMPolynomial,
    q_series: Option<usize>,
) -> Vec<InvariantRecord> {
    let record = |payload| InvariantRecord {
        theory: Theory::GwCurve,
        genus,
        insertions: omega_insertions(psi),
        connected,
        payload,
    };
    let mut out = vec![record(Payload::QmPolynomial(qm_terms(p)))];
    if let Some(order) = q_series {
        out.push(record(Payload::QSeries(series_payload(&qm_eval(p, order)))));
    }
    out
}

/// `<<omega psi^{2g-2}>>_g`. The `z`-order must reach `2g`.
pub fn gw_onepoint(
    cfg: &RunConfig,
    cache: &Cache,
    genus: u32,
    psi: Option<i64>,
    q_series: bool,
) -> Result<Document, CliError> {
    let expected = 2 * genus as i64 - 2;
    if let Some(l) = psi {
        if l != expected {
            return Err(CliError::InvalidRequest(format!(
                "genus {genus} one-point function needs psi = {expected}, got {l}"
            )));
        }
    }
    let q = q_series.then_some(cfg.order);
    let params = format!("genus={genus};z_order={};q_series={q:?}", cfg.z_order);
    let records = cache.get_or_compute("gw-onepoint", &params, || {
        let p = stationary_invariant(&[expected], cfg.z_order)?;
        Ok(gw_records(Some(genus), &[expected], true, &p, q))
    })?;
    Ok(invariants(records))
}

/// Stationary `N`-point function, disconnected unless `connected`.
pub fn gw_npoint(
    cfg: &RunConfig,
    cache: &Cache,
    legs: usize,
    psi: &[i64],
    connected: bool,
    q_series: bool,
) -> Result<Document, CliError> {
    if legs == 0 || psi.len() != legs {
        return Err(CliError::InvalidRequest(format!("{legs} legs but {} psi powers", psi.len())));
    }
    if let Some(l) = psi.iter().find(|&&l| l < 0) {
        return Err(CliError::InvalidRequest(format!("negative psi power {l} in an n-point function")));
    }
    let total: i64 = psi.iter().sum();
    let genus = (connected && total % 2 == 0).then(|| (total / 2 + 1) as u32);
    let q = q_series.then_some(cfg.order);
    let params = format!("psi={psi:?};connected={connected};z_order={};q_series={q:?}", cfg.z_order);
    let records = cache.get_or_compute("gw-npoint", &params, || {
        let p = if connected {
            connected_invariant(psi, cfg.z_order)?
        } else {
            stationary_invariant(psi, cfg.z_order)?
        };
        Ok(gw_records(genus, psi, connected, &p, q))
    })?;
    Ok(invariants(records))
}

/// Genus-one series `<<phi>>_{1,1}(s)`, the primary invariants
/// `Theta_{1,n}` for `1 <= n <= max`, and the genus-zero primary values.
pub fn fjrw_invariants(cfg: &RunConfig, max: usize) -> Result<Document, CliError> {
    let needed = max.saturating_sub(1);
    if cfg.order < needed {
        return Err(CliError::InsufficientOrder { what: "order", needed: needed as u64, given: cfg.order as u64 });
    }
    let series = fjrw_genus1_series(cfg.order);
    let mut records = vec![InvariantRecord {
        theory: Theory::FjrwCubic,
        genus: Some(1),
        insertions: "phi".into(),
        connected: true,
        payload: Payload::SSeries(series_payload(&series)),
    }];
    for n in 1..=max {
        let v = genus_one_invariant(&series, n).expect("order checked above");
        records.push(InvariantRecord {
            theory: Theory::FjrwCubic,
            genus: Some(1),
            insertions: vec!["phi"; n].join(", "),
            connected: true,
            payload: Payload::Rational(to_string(&v)),
        });
    }
    for (labels, v) in genus_zero_data() {
        records.push(InvariantRecord {
            theory: Theory::FjrwCubic,
            genus: Some(0),
            insertions: labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", "),
            connected: true,
            payload: Payload::Rational(to_string(&v)),
        });
    }
    Ok(invariants(records))
}

/// `<<phi psi^{2g-2}>>_{g,1}(s)` to the configured order.
pub fn fjrw_onepoint(cfg: &RunConfig, genus: u32) -> Result<Document, CliError> {
    let frame = CayleyFrame::new(cfg.order.max(3))?;
    let table = WeierstrassTable::new(cfg.b_bound_for(genus))?;
    let series = fjrw_onepoint_all_genus(genus, &frame, &table)?.truncate(cfg.order);
    let psi = 2 * genus as i64 - 2;
    Ok(invariants(vec![InvariantRecord {
        theory: Theory::FjrwCubic,
        genus: Some(genus),
        insertions: format!("phi psi^{psi}"),
        connected: true,
        payload: Payload::SSeries(series_payload(&series)),
    }]))
}

fn table(table: Table) -> Document {
    Document::Table { version: SCHEMA_VERSION, table }
}

/// `a_{m,n}` or `b_{m,n}` for `4m + 6n <= bound`.
pub fn weierstrass_table(cache: &Cache, kind: WeierstrassKind, bound: u32) -> Result<Document, CliError> {
    let op = match kind {
        WeierstrassKind::A => "table-a",
        WeierstrassKind::B => "table-b",
    };
    let t = cache.get_or_compute(op, &format!("bound={bound}"), || {
        let w = WeierstrassTable::new(bound)?;
        let entries = match kind {
            WeierstrassKind::A => w.a_entries().collect::<Vec<_>>(),
            WeierstrassKind::B => w.b_entries().collect(),
        };
        let entries = entries
            .into_iter()
            .map(|(&(m, n), v)| WeierstrassEntry { m, n, value: to_string(v) })
            .collect();
        Ok(match kind {
            WeierstrassKind::A => Table::A { bound, entries },
            WeierstrassKind::B => Table::B { bound, entries },
        })
    })?;
    Ok(table(t))
}

/// `E_2, E_4, ..., E_{max_weight}` as `q`-series, with `E_k` for `k >= 4`
/// also written in terms of `E4, E6`.
pub fn eisenstein_table(cfg: &RunConfig, cache: &Cache, max_weight: u32) -> Result<Document, CliError> {
    if max_weight < 2 || max_weight % 2 == 1 {
        return Err(CliError::InvalidRequest(format!("max weight must be even and at least 2, got {max_weight}")));
    }
    let order = cfg.order;
    let params = format!("max_weight={max_weight};order={order};margin={}", cfg.margin);
    let t = cache.get_or_compute("table-eisenstein", &params, || {
        let mut entries = Vec::new();
        for w in (2..=max_weight).step_by(2) {
            let q = eisenstein(w, order)?;
            let polynomial = if w >= 4 { Some(qm_terms(&quasimodularize(&q, w, cfg.margin)?)) } else { None };
            entries.push(EisensteinEntry { weight: w, polynomial, q_series: series_payload(&q) });
        }
        Ok(Table::Eisenstein { max_weight, order, entries })
    })?;
    Ok(table(t))
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<Document, CliError> {
    let reports = suites::run(suite, cfg)?;
    let checks: Vec<CheckRecord> = reports.iter().map(CheckRecord::from).collect();
    Ok(Document::Verification {
        version: SCHEMA_VERSION,
        suite: suite.name().into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::QmTerm;

    fn records(doc: Document) -> Vec<InvariantRecord> {
        match doc {
            Document::Invariants { records, .. } => records,
            other => panic!("unexpected {other:?}"),
        }
    }

    fn term(a: u32, b: u32, c: u32, coeff: &str) -> QmTerm {
        QmTerm { a, b, c, coeff: coeff.into() }
    }

    #[test]
    fn gw_examples() {
        let cfg = RunConfig::default();
        let cache = Cache::disabled();
        let g1 = records(gw_onepoint(&cfg, &cache, 1, None, false).unwrap());
        assert_eq!(g1[0].payload, Payload::QmPolynomial(vec![term(1, 0, 0, "-1/24")]));
        let g0 = records(gw_onepoint(&cfg, &cache, 0, Some(-2), false).unwrap());
        assert_eq!(g0[0].payload, Payload::QmPolynomial(vec![term(0, 0, 0, "1")]));
        let two = records(gw_npoint(&cfg, &cache, 2, &[0, 0], true, false).unwrap());
        assert_eq!(
            two[0].payload,
            Payload::QmPolynomial(vec![term(0, 1, 0, "1/288"), term(2, 0, 0, "-1/288")])
        );
        assert_eq!(two[0].genus, Some(1));
    }

    #[test]
    fn gw_errors() {
        let cfg = RunConfig { z_order: 4, ..RunConfig::default() };
        let cache = Cache::disabled();
        assert_eq!(gw_onepoint(&cfg, &cache, 2, Some(1), false).unwrap_err().exit_code(), 2);
        assert_eq!(gw_onepoint(&cfg, &cache, 3, None, false).unwrap_err().exit_code(), 3);
        assert_eq!(gw_npoint(&cfg, &cache, 2, &[0], false, false).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn fjrw_examples() {
        let cfg = RunConfig::default();
        let recs = records(fjrw_invariants(&cfg, 12).unwrap());
        let theta = |n: usize| recs[n].payload.clone();
        assert_eq!(theta(3), Payload::Rational("1/108".into()));
        assert_eq!(theta(4), Payload::Rational("0".into()));
        assert_eq!(theta(5), Payload::Rational("0".into()));
        assert!(fjrw_invariants(&RunConfig { order: 5, ..cfg.clone() }, 12).is_err());

        let one = records(fjrw_onepoint(&RunConfig { order: 1, ..cfg }, 2).unwrap());
        match &one[0].payload {
            Payload::SSeries(s) => assert_eq!(s.coefficients, ["0", "1/1080"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tables_round_trip_through_cache() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path().to_path_buf()));
        let fresh = weierstrass_table(&Cache::disabled(), WeierstrassKind::B, 12).unwrap();
        assert_eq!(weierstrass_table(&cache, WeierstrassKind::B, 12).unwrap(), fresh);
        assert_eq!(weierstrass_table(&cache, WeierstrassKind::B, 12).unwrap(), fresh);
        let cfg = RunConfig { order: 20, ..RunConfig::default() };
        let e = eisenstein_table(&cfg, &cache, 8).unwrap();
        assert_eq!(eisenstein_table(&cfg, &cache, 8).unwrap(), e);
    }
}
