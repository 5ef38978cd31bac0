//! Level-three modular series (`A`, `C^3`, `alpha`), Gauss hypergeometric
//! series, the identities tying them to `E2`, and the genus-zero
//! I-functions of the cubic on both sides together with the mirror map.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Roots;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::modular::{eisenstein, euler_function, ModularError};
use crate::rational::{factorial, int, rat, Q};
use crate::report::CheckReport;
use crate::series::{DeriveMode, PowerSeries, SeriesError, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MirrorError {
    #[error("lower parameter {0} is a nonpositive integer")]
    Pole(Q),
    #[error("order {given} below the minimum {minimum}")]
    OrderTooSmall { given: usize, minimum: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// Parameters `a, b; c` of a Gauss series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    a: Q,
    b: Q,
    c: Q,
}

impl HypergeometricParams {
    pub fn new(a: Q, b: Q, c: Q) -> Result<Self, MirrorError> {
        if c.is_integer() && c <= Q::zero() {
            return Err(MirrorError::Pole(c));
        }
        Ok(HypergeometricParams { a, b, c })
    }

    /// `(1/3, 2/3; 1)`, the series giving `A` in terms of `alpha`.
    pub fn level_three() -> Self {
        HypergeometricParams { a: rat(1, 3), b: rat(2, 3), c: int(1) }
    }

    /// `(1/3, 1/3; 2/3)`, the series near the orbifold point.
    pub fn orbifold() -> Self {
        HypergeometricParams { a: rat(1, 3), b: rat(1, 3), c: rat(2, 3) }
    }
}

/// Rising factorial `(a)_n`.
pub fn pochhammer(a: &Q, n: usize) -> Q {
    (0..n).fold(Q::one(), |acc, j| acc * (a + int(j as i64)))
}

/// `sum_l (a)_l (b)_l / ((c)_l l!) x^l` in the variable `var`.
pub fn hyp2f1(p: &HypergeometricParams, order: usize, var: Var) -> PowerSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = Q::one();
    for l in 0..=order {
        coeffs.push(term.clone());
        let lq = int(l as i64);
        term = term * (&p.a + &lq) * (&p.b + &lq) / ((&p.c + &lq) * (&lq + int(1)));
    }
    PowerSeries::new(var, coeffs)
}

/// Theta series of the hexagonal lattice, `sum_{m,n} q^(m^2 + mn + n^2)`.
pub fn borwein_a(order: usize) -> PowerSeries {
    // m^2 + mn + n^2 >= 3/4 max(|m|,|n|)^2.
    let bound = ((4 * order) / 3).sqrt() as i64 + 2;
    let mut counts = alloc::vec![0i64; order + 1];
    for m in -bound..=bound {
        for n in -bound..=bound {
            let norm = m * m + m * n + n * n;
            if norm as usize <= order {
                counts[norm as usize] += 1;
            }
        }
    }
    PowerSeries::new(Var::Q, counts.into_iter().map(int).collect())
}

/// `C^3 = 27 q (q^3; q^3)^9 / (q; q)^3`.
pub fn borwein_c_cubed(order: usize) -> PowerSeries {
    let e = euler_function(order);
    let e3 = euler_function(order / 3 + 1).dilate(3).truncate(order);
    let num = e3.pow(9);
    let den = e.pow(3).reciprocal().expect("euler product starts with 1");
    (&num * &den).shift(1).truncate(order).scale(&int(27))
}

/// `alpha = C^3 / A^3`.
pub fn alpha(order: usize) -> PowerSeries {
    let a3 = borwein_a(order).pow(3);
    &borwein_c_cubed(order) * &a3.reciprocal().expect("A starts with 1")
}

/// `q d/dq log f = (q df/dq) / f` for `f(0) = 1`.
fn theta_log(f: &PowerSeries) -> PowerSeries {
    &f.derive(DeriveMode::ThetaQ) * &f.reciprocal().expect("unit constant term")
}

/// `q d/dq log alpha`, using `alpha = 27 q u` with `u(0) = 1`.
fn theta_log_alpha(alpha: &PowerSeries) -> PowerSeries {
    let order = alpha.order() as usize;
    let u = PowerSeries::new(Var::Q, alpha.coeffs()[1..].to_vec()).scale(&rat(1, 27));
    &PowerSeries::one(Var::Q, order - 1) + &theta_log(&u)
}

fn one_minus(f: &PowerSeries) -> PowerSeries {
    &PowerSeries::one(f.var(), f.order() as usize) - f
}

const MIN_IDENTITY_ORDER: usize = 12;

/// The level-three identities, each as an exact `q`-series equation to
/// order `order` (one less where `alpha / q` is involved):
///
/// 1. `A^2 = (3 E2(q^3) - E2(q)) / 2`
/// 2. `theta alpha = alpha (1 - alpha) A^2`
/// 3. `E2 = 12 theta log A - (4 alpha - 1) A^2`
/// 4. `E2 = theta (12 log A + log(alpha (1 - alpha)^3))`
/// 5. `(3 E2(q^3) + E2) / 4 = 6 theta log A - (2 C^3 - A^3) / A`
/// 6. `-E2(q^3) / 8 = theta (-log(A) / 2 - log(alpha^3 (1 - alpha)) / 24)`
/// 7. `A = 2F1(1/3, 2/3; 1; alpha)`
pub fn level_three_identity_checks(order: usize) -> Result<Vec<CheckReport>, MirrorError> {
    if order < MIN_IDENTITY_ORDER {
        return Err(MirrorError::OrderTooSmall { given: order, minimum: MIN_IDENTITY_ORDER });
    }
    let a = borwein_a(order);
    let c3 = borwein_c_cubed(order);
    let al = alpha(order);
    let e2 = eisenstein(2, order)?;
    let e2_3 = eisenstein(2, order / 3 + 1)?.dilate(3).truncate(order);
    let a2 = &a * &a;
    let tla = theta_log(&a);
    let tl_alpha = theta_log_alpha(&al);
    let tl_one_minus = theta_log(&one_minus(&al));
    let q = |s: PowerSeries| s.truncate(order - 1);

    let mut out = Vec::new();
    out.push(CheckReport::series_equal(
        "A^2 and E2",
        "A^2 = (3 E2(q^3) - E2(q)) / 2",
        &a2,
        &(&e2_3.scale(&int(3)) - &e2).scale(&rat(1, 2)),
    ));
    out.push(CheckReport::series_equal(
        "alpha derivative",
        "theta alpha = alpha (1 - alpha) A^2",
        &al.derive(DeriveMode::ThetaQ),
        &(&(&al * &one_minus(&al)) * &a2),
    ));
    let four_alpha_minus_one = &al.scale(&int(4)) - &PowerSeries::one(Var::Q, order);
    out.push(CheckReport::series_equal(
        "E2 from A and alpha",
        "E2 = 12 theta log A - (4 alpha - 1) A^2",
        &e2,
        &(&tla.scale(&int(12)) - &(&four_alpha_minus_one * &a2)),
    ));
    out.push(CheckReport::series_equal(
        "E2 as a logarithmic derivative",
        "E2 = theta (12 log A + log(alpha (1 - alpha)^3))",
        &q(e2.clone()),
        &q(&(&tla.scale(&int(12)) + &tl_alpha.truncate(order)) + &tl_one_minus.scale(&int(3))),
    ));
    let big_e = (&e2_3.scale(&int(3)) + &e2).scale(&rat(1, 4));
    let ratio = &(&c3.scale(&int(2)) - &a.pow(3)) * &a.reciprocal()?;
    out.push(CheckReport::series_equal(
        "second level-three generator",
        "(3 E2(q^3) + E2) / 4 = 6 theta log A - (2 C^3 - A^3) / A",
        &big_e,
        &(&tla.scale(&int(6)) - &ratio),
    ));
    let rhs = &(&tla.scale(&rat(-1, 2)) - &tl_alpha.truncate(order).scale(&rat(1, 8)))
        - &tl_one_minus.scale(&rat(1, 24));
    out.push(CheckReport::series_equal(
        "genus-one hyperplane function",
        "-E2(q^3) / 8 = theta (-log(A) / 2 - log(alpha^3 (1 - alpha)) / 24)",
        &q(e2_3.scale(&rat(-1, 8))),
        &q(rhs),
    ));
    let f = hyp2f1(&HypergeometricParams::level_three(), order, Var::X);
    out.push(CheckReport::series_equal(
        "A as a hypergeometric function of alpha",
        "A = 2F1(1/3, 2/3; 1; alpha)",
        &a,
        &f.compose(&al)?,
    ));
    Ok(out)
}

fn gw_coefficient(d: u64) -> Q {
    let f = Q::from_integer(factorial(d));
    Q::from_integer(factorial(3 * d)) / (&f * &f * &f)
}

/// Geometric I-function of the cubic: `(I0, I1 - I0 log x)` in `x`.
///
/// `I0 = sum (3d)!/(d!)^3 x^d` and the log-free part of `I1` is
/// `sum (3d)!/(d!)^3 * 3 (H_{3d} - H_d) x^d`.
pub fn i_function_gw(order: usize) -> (PowerSeries, PowerSeries) {
    let i0 = PowerSeries::from_fn(Var::X, order, |d| gw_coefficient(d as u64));
    let i1 = PowerSeries::from_fn(Var::X, order, |d| {
        let h: Q = (d + 1..=3 * d).map(|k| rat(1, k as i64)).sum();
        gw_coefficient(d as u64) * h * int(3)
    });
    (i0, i1)
}

/// FJRW I-function components in `t`:
/// `I0 = sum ((1/3)_l)^3 t^(1+3l) / (3l)!` and
/// `I1 = sum ((2/3)_l)^3 t^(2+3l) / (2)_(3l)`.
pub fn i_function_fjrw(order: usize) -> (PowerSeries, PowerSeries) {
    let component = |start: usize, a: Q| {
        PowerSeries::from_fn(Var::T, order, |k| {
            if k < start || !(k - start).is_multiple_of(3) {
                return Q::zero();
            }
            let l = (k - start) / 3;
            let p = pochhammer(&a, l);
            &p * &p * &p / pochhammer(&int(start as i64), 3 * l)
        })
    };
    (component(1, rat(1, 3)), component(2, rat(2, 3)))
}

const MIN_MIRROR_ORDER: usize = 10;

/// Inverts `q = x exp(I1~ / I0)` and checks `27 x(q) = alpha(q)`.
pub fn mirror_map_check(order: usize) -> Result<CheckReport, MirrorError> {
    let (i0, i1) = i_function_gw(order);
    mirror_map_check_with(&i0, &i1, order)
}

/// As `mirror_map_check`, for given `I0` and log-free `I1`.
///
/// When the two sides differ by `q -> lambda q`, the report names `lambda`.
pub fn mirror_map_check_with(
    i0: &PowerSeries,
    i1: &PowerSeries,
    order: usize,
) -> Result<CheckReport, MirrorError> {
    if order < MIN_MIRROR_ORDER {
        return Err(MirrorError::OrderTooSmall { given: order, minimum: MIN_MIRROR_ORDER });
    }
    let ratio = &i1.truncate(order) * &i0.truncate(order).reciprocal()?;
    let q_of_x = ratio.exp()?.shift(1).truncate(order);
    compare_mirror_map(&q_of_x, order)
}

/// Reverts `q(x)` and compares `27 x(q)` with `alpha(q)`.
pub fn compare_mirror_map(q_of_x: &PowerSeries, order: usize) -> Result<CheckReport, MirrorError> {
    let x_of_q = q_of_x.reversion()?.with_var(Var::Q);
    let lhs = x_of_q.scale(&int(27));
    let rhs = alpha(order);
    let name = "mirror map";
    let anchor = "27 x(q) = alpha(q) for the inverse of q = x exp(I1 / I0)";
    let report = CheckReport::series_equal(name, anchor, &lhs, &rhs);
    if report.passed {
        return Ok(report.with_detail(format!("lambda = 1 to order {order}")));
    }
    let lambda = match (lhs.get(1), rhs.get(1)) {
        (Some(l), Some(r)) if !l.is_zero() => Some(r / l),
        _ => None,
    };
    Ok(match lambda {
        Some(lambda) if lhs.rescale(&lambda) == rhs => CheckReport::fail(
            name,
            anchor,
            format!("sides agree after q -> lambda q with lambda = {lambda}"),
        ),
        _ => report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyp2f1_examples() {
        let f = hyp2f1(&HypergeometricParams::level_three(), 5, Var::X);
        assert_eq!(f.coeff(0), &int(1));
        assert_eq!(f.coeff(1), &rat(2, 9));
        assert_eq!(hyp2f1(&HypergeometricParams::level_three(), 0, Var::X).coeffs(), &[int(1)]);
        let p = HypergeometricParams::new(Q::zero(), rat(5, 2), rat(7, 3)).unwrap();
        assert_eq!(hyp2f1(&p, 6, Var::X), PowerSeries::one(Var::X, 6));
        assert_eq!(
            HypergeometricParams::new(int(1), int(1), int(-2)),
            Err(MirrorError::Pole(int(-2)))
        );
    }

    #[test]
    fn lattice_sum_matches_point_count() {
        let a = borwein_a(30);
        for n in 0..=30i64 {
            let mut count = 0;
            for m in -40..=40i64 {
                for k in -40..=40i64 {
                    if m * m + m * k + k * k == n {
                        count += 1;
                    }
                }
            }
            assert_eq!(a.coeff(n as usize), &int(count), "n = {n}");
        }
        assert_eq!(&a.coeffs()[..5], &[int(1), int(6), int(0), int(6), int(6)]);
    }

    #[test]
    fn alpha_leading_terms() {
        let al = alpha(6);
        assert_eq!(al.coeff(0), &int(0));
        assert_eq!(al.coeff(1), &int(27));
        assert_eq!(al.coeff(2), &int(-405));
    }

    #[test]
    fn identities_hold() {
        let reports = level_three_identity_checks(20).unwrap();
        assert_eq!(reports.len(), 7);
        for r in &reports {
            assert!(r.passed, "{r}");
        }
        assert!(matches!(level_three_identity_checks(5), Err(MirrorError::OrderTooSmall { .. })));
    }

    #[test]
    fn gw_i_function() {
        let (i0, i1) = i_function_gw(8);
        assert_eq!(&i0.coeffs()[..4], &[int(1), int(6), int(90), int(1680)]);
        assert_eq!(i1.coeff(0), &int(0));
        // 6 * 3 (1/2 + 1/3) = 15.
        assert_eq!(i1.coeff(1), &int(15));
        let f = hyp2f1(&HypergeometricParams::level_three(), 8, Var::X).rescale(&int(27));
        assert_eq!(i0, f);
    }

    #[test]
    fn fjrw_i_function() {
        let (i0, i1) = i_function_fjrw(10);
        assert_eq!(i0.coeff(1), &int(1));
        assert_eq!(i0.coeff(4), &rat(1, 162));
        assert_eq!(i1.coeff(2), &int(1));
        assert!(i1.coeff(3).is_zero());
        let f = hyp2f1(&HypergeometricParams::orbifold(), 3, Var::X);
        let g = f.compose(&PowerSeries::monomial(Var::T, 9, 3, rat(1, 27))).unwrap().shift(1);
        assert_eq!(i0, g.truncate(10));
    }

    #[test]
    fn mirror_map() {
        let r = mirror_map_check(12).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn mirror_map_detects_perturbation() {
        let (i0, mut i1) = i_function_gw(12);
        let mut c = i1.clone().into_coeffs();
        c[3] += int(1);
        i1 = PowerSeries::new(Var::X, c);
        assert!(!mirror_map_check_with(&i0, &i1, 12).unwrap().passed);
    }

    #[test]
    fn mirror_map_reports_rescaling() {
        let (i0, i1) = i_function_gw(12);
        let q_of_x = (&i1 * &i0.reciprocal().unwrap()).exp().unwrap().shift(1).truncate(12);
        let r = compare_mirror_map(&q_of_x.scale(&rat(1, 2)), 12).unwrap();
        assert!(!r.passed);
        assert!(r.detail.unwrap().contains("lambda = 1/2"));
    }
}
