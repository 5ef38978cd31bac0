//! Verification suites run by `lgcy verify`.

use clap::ValueEnum;
use lgcy_core::cayley::{cayley_transform, fjrw_onepoint_all_genus, CayleyFrame};
use lgcy_core::chazy::{self, bp_residual, chazy_residual, fjrw_genus1_series, genus_one_invariant};
use lgcy_core::hae::{hae_onepoint_check, prime_form_anomaly_check};
use lgcy_core::mirror::{
    alpha, level_three_identity_checks, borwein_a, hyp2f1, i_function_fjrw, i_function_gw, mirror_map_check,
    HypergeometricParams,
};
use lgcy_core::modular::{eisenstein, qm_eval, quasimodularize, required_order, EisensteinReducer};
use lgcy_core::npoint::{connected_invariant, two_point_closed_form_check};
use lgcy_core::rational::{int, rat, to_string, Q};
use lgcy_core::report::CheckReport;
use lgcy_core::series::DeriveMode;
use lgcy_core::theta::{self, onepoint_from_b, WeierstrassTable};
use lgcy_core::virasoro::{virasoro_suite, Family, Poly, Quantization, VarId};
use lgcy_core::{PowerSeries, QMPolynomial, Var};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Ramanujan,
    Chazy,
    Bp,
    PrimeForm,
    Weights,
    Hae,
    Virasoro,
    Mirror,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ramanujan => "ramanujan",
            Suite::Chazy => "chazy",
            Suite::Bp => "bp",
            Suite::PrimeForm => "prime-form",
            Suite::Weights => "weights",
            Suite::Hae => "hae",
            Suite::Virasoro => "virasoro",
            Suite::Mirror => "mirror",
        }
    }

    const EACH: [Suite; 8] = [
        Suite::Ramanujan,
        Suite::Chazy,
        Suite::Bp,
        Suite::PrimeForm,
        Suite::Weights,
        Suite::Hae,
        Suite::Virasoro,
        Suite::Mirror,
    ];
}

/// Largest genus the one-point checks reach at the given `z`-order.
fn max_genus(cfg: &RunConfig) -> u32 {
    cfg.z_order / 2
}

pub fn run(suite: Suite, cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(s, cfg)?);
            }
            Ok(out)
        }
        Suite::Ramanujan => ramanujan(cfg),
        Suite::Chazy => chazy_suite(cfg),
        Suite::Bp => bp(cfg),
        Suite::PrimeForm => prime_form(cfg),
        Suite::Weights => weights(cfg),
        Suite::Hae => hae(cfg),
        Suite::Virasoro => virasoro(),
        Suite::Mirror => mirror(cfg),
    }
}

fn need_order(cfg: &RunConfig, needed: usize) -> Result<(), CliError> {
    if cfg.order < needed {
        return Err(CliError::InsufficientOrder { what: "order", needed: needed as u64, given: cfg.order as u64 });
    }
    Ok(())
}

fn ramanujan(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    need_order(cfg, 3)?;
    let d = cfg.order;
    let (e2, e4, e6) = (eisenstein(2, d)?, eisenstein(4, d)?, eisenstein(6, d)?);
    let th = |f: &PowerSeries| f.derive(DeriveMode::ThetaQ);
    Ok(vec![
        CheckReport::series_equal(
            "Ramanujan E2",
            "theta E2 = (E2^2 - E4) / 12",
            &th(&e2),
            &(&(&e2 * &e2) - &e4).scale(&rat(1, 12)),
        ),
        CheckReport::series_equal(
            "Ramanujan E4",
            "theta E4 = (E2 E4 - E6) / 3",
            &th(&e4),
            &(&(&e2 * &e4) - &e6).scale(&rat(1, 3)),
        ),
        CheckReport::series_equal(
            "Ramanujan E6",
            "theta E6 = (E2 E6 - E4^2) / 2",
            &th(&e6),
            &(&(&e2 * &e6) - &(&e4 * &e4)).scale(&rat(1, 2)),
        ),
    ])
}

fn value_check(name: &str, anchor: &str, got: Option<Q>, expected: Q) -> CheckReport {
    match got {
        Some(g) if g == expected => CheckReport::pass(name, anchor).with_detail(to_string(&g)),
        Some(g) => CheckReport::fail(name, anchor, format!("{} != {}", to_string(&g), to_string(&expected))),
        None => CheckReport::fail(name, anchor, "coefficient not computed".into()),
    }
}

fn chazy_suite(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    need_order(cfg, 8)?;
    let e2 = eisenstein(2, cfg.order)?;
    let mut out = vec![CheckReport::series_zero(
        "E2 solves Chazy",
        "2 f''' - 2 f f'' + 3 f'^2 = 0 for f = E2, ' = q d/dq",
        &chazy_residual(&e2, DeriveMode::ThetaQ)?,
    )];
    let f = chazy::chazy_solve_s(&chazy::ChazyInitialData::genus_one_fjrw(), 8);
    let expected = PowerSeries::new(
        Var::S,
        vec![int(0), int(0), rat(-1, 9), int(0), int(0), rat(-1, 1215), int(0), int(0), rat(-1, 459270)],
    );
    out.push(CheckReport::series_equal(
        "elliptic expansion",
        "Chazy solution with f(0) = f'(0) = 0, f''(0) = -2/9",
        &f,
        &expected,
    ));
    out.push(CheckReport::series_zero(
        "elliptic expansion solves Chazy",
        "2 f''' - 2 f f'' + 3 f'^2 = 0, ' = d/ds",
        &chazy_residual(&chazy::chazy_solve_s(&chazy::ChazyInitialData::genus_one_fjrw(), cfg.order), DeriveMode::Plain)?,
    ));
    let g1 = fjrw_genus1_series(cfg.order);
    for (n, v) in [(3, rat(1, 108)), (4, int(0)), (5, int(0)), (6, rat(1, 243)), (9, rat(8, 2187))] {
        out.push(value_check(
            &format!("genus-one FJRW invariant n = {n}"),
            "Theta_(1,n) = (n-1)! [s^(n-1)] <<phi>>_(1,1)",
            genus_one_invariant(&g1, n),
            v,
        ));
    }
    let frame = CayleyFrame::new(cfg.order.max(8))?;
    let [r2, r4, r6] = frame.ramanujan_residuals()?;
    out.push(CheckReport::series_zero("Cayley frame Ramanujan E2", "CE2' = (CE2^2 - CE4) / 12, ' = d/ds", &r2));
    out.push(CheckReport::series_zero("Cayley frame Ramanujan E4", "CE4' = (CE2 CE4 - CE6) / 3", &r4));
    out.push(CheckReport::series_zero("Cayley frame Ramanujan E6", "CE6' = (CE2 CE6 - CE4^2) / 2", &r6));
    let e4 = PowerSeries::new(
        Var::S,
        vec![int(0), rat(8, 3), int(0), int(0), rat(5, 81), int(0), int(0), rat(2, 5103)],
    );
    let e6 = PowerSeries::new(
        Var::S,
        vec![int(-8), int(0), int(0), rat(-28, 27), int(0), int(0), rat(-7, 405), int(0)],
    );
    out.push(CheckReport::series_equal("Cayley image of E4", "CE4 = 8s/3 + 5s^4/81 + 2s^7/5103 + ...", &frame.e4().truncate(7), &e4));
    out.push(CheckReport::series_equal("Cayley image of E6", "CE6 = -8 - 28s^3/27 - 7s^6/405 + ...", &frame.e6().truncate(7), &e6));
    Ok(out)
}

fn bp(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    need_order(cfg, 3)?;
    let d = cfg.order;
    let e2 = eisenstein(2, d)?;
    let mut out = vec![CheckReport::series_zero(
        "BP equation for -E2/24",
        "(12/5) g g'' - (18/5) g'^2 + (1/10) g''' = 0 for g = -E2/24",
        &bp_residual(&e2.scale(&rat(-1, 24)), DeriveMode::ThetaQ)?,
    )];
    let samples = [
        ("E4", eisenstein(4, d)?),
        ("E6", eisenstein(6, d)?),
        ("E2^2 + E4", &(&e2 * &e2) + &eisenstein(4, d)?),
    ];
    for (label, g) in samples {
        let lhs = chazy_residual(&g.scale(&int(-24)), DeriveMode::ThetaQ)?;
        let rhs = bp_residual(&g, DeriveMode::ThetaQ)?.scale(&int(-480));
        out.push(CheckReport::series_equal(
            &format!("Chazy versus BP on {label}"),
            "Chazy(-24 g) = -480 BP(g)",
            &lhs,
            &rhs,
        ));
    }
    Ok(out)
}

fn prime_form(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let dz = cfg.z_order as usize;
    let mut reducer = EisensteinReducer::new(cfg.margin);
    let mut out = Vec::new();
    out.push(match theta::prime_form_with(dz, &mut reducer) {
        Ok(_) => CheckReport::pass("prime form routes", "Eisenstein exponential = E2 Gaussian times Weierstrass sigma")
            .with_detail(format!("to z^{dz}")),
        Err(e) => CheckReport::fail("prime form routes", "Eisenstein exponential = E2 Gaussian times Weierstrass sigma", e.to_string()),
    });
    out.push(prime_form_anomaly_check(dz)?);
    let inv = theta::one_over_theta_with(dz, &mut reducer)?;
    let gmax = max_genus(cfg);
    let table = WeierstrassTable::new(cfg.b_bound_for(gmax))?;
    for g in 1..=gmax {
        let name = format!("one-point b-formula, genus {g}");
        let anchor = "[z^(2g-1)] 1/Theta = sum b_(m,n)/l! C2^l (E4/24)^m (-E6/108)^n";
        let lhs = inv.coeff(2 * g as i64 - 1);
        out.push(match onepoint_from_b(g, &table) {
            Some(rhs) if rhs == lhs => CheckReport::pass(&name, anchor),
            Some(rhs) => CheckReport::fail(&name, anchor, format!("{lhs} != {rhs}")),
            None => CheckReport::fail(&name, anchor, format!("b-table bound {} below {}", table.bound(), 2 * g)),
        });
    }
    Ok(out)
}

fn weights(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let dz = cfg.z_order as usize;
    let inv = theta::one_over_theta(dz)?;
    let gmax = max_genus(cfg);
    let frame = CayleyFrame::new(cfg.order.max(3))?;
    let table = WeierstrassTable::new(cfg.b_bound_for(gmax))?;
    let mut out = Vec::new();
    for g in 1..=gmax {
        let w = 2 * g;
        need_order(cfg, required_order(w, cfg.margin))?;
        let c = inv.coeff(2 * g as i64 - 1);
        let name = format!("one-point weight, genus {g}");
        let anchor = "[z^(2g-1)] 1/Theta is quasi-modular of weight 2g";
        out.push(match quasimodularize(&qm_eval(&c, cfg.order), w, cfg.margin) {
            Ok(p) if p == c && c.is_homogeneous_of(w) => CheckReport::pass(&name, anchor),
            Ok(p) => CheckReport::fail(&name, anchor, format!("recovered {p}, expected {c}")),
            Err(e) => CheckReport::fail(&name, anchor, e.to_string()),
        });
        out.push(CheckReport::series_equal(
            &format!("one-point Cayley route, genus {g}"),
            "Cayley transform of the curve one-point function = b-formula in the Cayley frame",
            &cayley_transform(&c, &frame),
            &fjrw_onepoint_all_genus(g, &frame, &table)?,
        ));
    }
    let c1 = QMPolynomial::c2();
    let two = connected_invariant(&[0, 0], 4)?;
    let expected = (&(&QMPolynomial::e2() * &QMPolynomial::e2()) - &QMPolynomial::e4()).scale(&rat(-1, 288));
    out.push(if two == expected {
        CheckReport::pass("connected two-point (0,0)", "<<omega, omega>>_1 = -(E2^2 - E4)/288")
    } else {
        CheckReport::fail("connected two-point (0,0)", "<<omega, omega>>_1 = -(E2^2 - E4)/288", format!("{two}"))
    });
    out.push(CheckReport::series_equal(
        "divisor equation",
        "<<omega, omega>>_1 = theta_q <<omega>>_1",
        &qm_eval(&two, cfg.order),
        &qm_eval(&c1, cfg.order).derive(DeriveMode::ThetaQ),
    ));
    let connected_one = qm_eval(&c1, cfg.order.max(1));
    out.push(value_check(
        "degree-one one-point",
        "q^1 coefficient of <<omega>>_1 is 1",
        connected_one.get(1).cloned(),
        int(1),
    ));
    out.push(two_point_closed_form_check(8)?);
    Ok(out)
}

fn hae(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let gmax = max_genus(cfg);
    let mut out = vec![prime_form_anomaly_check(cfg.z_order as usize)?];
    let frame = CayleyFrame::new(cfg.order.max(3))?;
    out.extend(hae_onepoint_check(gmax, &frame)?);
    Ok(out)
}

fn virasoro() -> Result<Vec<CheckReport>, CliError> {
    let mut out = virasoro_suite(3, 10)?;
    let s = Quantization::new(rat(-5, 7), 4, 4);
    let q0 = |l| VarId::new(Family::Ancestor, 0, l);
    let name = "quantization leaves the top sector alone";
    let anchor = "S_t commutes with multiplication by q^3_k and with d/dq^3_k";
    let f = &(&Poly::var(q0(0)) * &Poly::var(q0(1))) + &Poly::monomial(&[(q0(2), 1), (q0(0), 1)], rat(3, 2));
    let mut failure = None;
    for k in 0..=4 {
        let x = Poly::var(VarId::new(Family::Ancestor, 3, k));
        let g = &f * &x;
        if s.apply(&g) != (&x * &s.apply(&f)).truncate_degree(4) {
            failure = Some(format!("multiplication by q3_{k}"));
            break;
        }
        let v = VarId::new(Family::Ancestor, 3, k);
        if s.apply(&g.derivative(v)).truncate_degree(3) != s.apply(&g).derivative(v).truncate_degree(3) {
            failure = Some(format!("derivative in q3_{k}"));
            break;
        }
    }
    out.push(match failure {
        None => CheckReport::pass(name, anchor),
        Some(d) => CheckReport::fail(name, anchor, d),
    });
    let one_step = Quantization::new(int(1), 1, 2).apply_flow(&Poly::var(q0(0)));
    let expected = &Poly::var(q0(0)) - &Poly::var(q0(1));
    out.push(if one_step == expected {
        CheckReport::pass("quantization flow", "exp(-t sum q^0_(k+1) d/dq^0_k) q^0_0 = q^0_0 - t q^0_1 at index bound 1")
    } else {
        CheckReport::fail("quantization flow", "exp(-t sum q^0_(k+1) d/dq^0_k) q^0_0 = q^0_0 - t q^0_1 at index bound 1", format!("{one_step}"))
    });
    Ok(out)
}

fn mirror(cfg: &RunConfig) -> Result<Vec<CheckReport>, CliError> {
    let d = cfg.order.clamp(12, 24);
    let mut out = level_three_identity_checks(d)?;
    let (i0, _) = i_function_gw(d);
    out.push(CheckReport::series_equal(
        "geometric I-function",
        "I0(x) = 2F1(1/3, 2/3; 1; 27x)",
        &i0,
        &hyp2f1(&HypergeometricParams::level_three(), d, Var::X).rescale(&int(27)),
    ));
    let (j0, _) = i_function_fjrw(d);
    let inner = PowerSeries::monomial(Var::T, d, 3, rat(1, 27));
    let rhs = hyp2f1(&HypergeometricParams::orbifold(), d / 3, Var::X).compose(&inner)?.shift(1).truncate(d);
    out.push(CheckReport::series_equal(
        "FJRW I-function",
        "I0(t) = t 2F1(1/3, 1/3; 2/3; t^3/27)",
        &j0,
        &rhs,
    ));
    let a = borwein_a(d);
    out.push(CheckReport::series_equal(
        "lattice theta coefficients",
        "A = 1 + 6q + 6q^3 + 6q^4 + ...",
        &a.truncate(4),
        &PowerSeries::new(Var::Q, vec![int(1), int(6), int(0), int(6), int(6)]),
    ));
    let al = alpha(d);
    out.push(value_check("alpha leading term", "alpha = 27 q + O(q^2)", al.get(1).cloned(), int(27)));
    out.push(mirror_map_check(d.max(10))?);
    Ok(out)
}
