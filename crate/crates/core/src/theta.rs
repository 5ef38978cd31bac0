//! The prime form `Theta(z)`, the rescaled Weierstrass sigma function, and
//! the `a_{m,n}` / `b_{m,n}` tables.
//!
//! All series are in the rescaled variable `z = 2 pi i u`, where the
//! Eisenstein exponent has rational coefficients:
//! `Theta(z) = z exp(sum_{k >= 1} B_{2k} / (2k (2k)!) E_{2k} z^{2k})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::modular::{EisensteinReducer, ModularError, Monomial, QMPolynomial};
use crate::rational::{factorial, int, pow, rat, Q};
use crate::series::{Coefficient, LaurentSeries, PowerSeries, SeriesError, Var};

/// Laurent series in `z` with quasi-modular coefficients.
pub type ZLaurent = LaurentSeries<QMPolynomial>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("the two prime form constructions disagree at z^{exponent}")]
    RouteMismatch { exponent: i64 },
    #[error("1/sigma coefficient at z^{exponent} is not of the form b (E4/24)^m (-E6/108)^n")]
    TableMismatch { exponent: i64 },
}

/// `E4/24`.
pub fn e4_normalized() -> QMPolynomial {
    QMPolynomial::e4().scale(&rat(1, 24))
}

/// `-E6/108`.
pub fn e6_normalized() -> QMPolynomial {
    QMPolynomial::e6().scale(&rat(-1, 108))
}

/// `sum_{k >= k0, 2k <= order} B_{2k} / (2k (2k)!) E_{2k} z^{2k}`.
fn eisenstein_exponent(
    order: usize,
    k0: u32,
    reducer: &mut EisensteinReducer,
) -> Result<PowerSeries<QMPolynomial>, ThetaError> {
    let mut coeffs = alloc::vec![QMPolynomial::zero(); order + 1];
    let mut k = k0;
    while 2 * k as usize <= order {
        let w = 2 * k;
        let e = if w == 2 { QMPolynomial::e2() } else { reducer.reduce(w)? };
        let c = crate::modular::bernoulli(w as usize)
            / (int(w as i64) * Q::from_integer(factorial(w as u64)));
        coeffs[w as usize] = e.scale(&c);
        k += 1;
    }
    Ok(PowerSeries::new(Var::Z, coeffs))
}

fn z_times(p: PowerSeries<QMPolynomial>) -> ZLaurent {
    LaurentSeries::new(Var::Z, 1, p.into_coeffs())
}

/// Rescaled sigma function `z exp(sum_{k >= 2} ...)`, to order `dz`.
pub fn sigma_tilde(dz: usize) -> Result<ZLaurent, ThetaError> {
    sigma_tilde_with(dz, &mut EisensteinReducer::default())
}

pub fn sigma_tilde_with(dz: usize, reducer: &mut EisensteinReducer) -> Result<ZLaurent, ThetaError> {
    let inner = dz.max(1) - 1;
    Ok(z_times(eisenstein_exponent(inner, 2, reducer)?.exp()?))
}

/// `a_{m,n}` for `4m + 6n <= bound` from the Weierstrass recursion.
pub fn weierstrass_a(bound: u32) -> BTreeMap<(u32, u32), Q> {
    let mut a: BTreeMap<(u32, u32), Q> = BTreeMap::new();
    a.insert((0, 0), int(1));
    let get = |a: &BTreeMap<(u32, u32), Q>, m: i64, n: i64| -> Q {
        if m < 0 || n < 0 {
            return Q::zero();
        }
        a.get(&(m as u32, n as u32)).cloned().unwrap_or_else(Q::zero)
    };
    let mut w = 2;
    while w <= bound {
        for n in 0..=w / 6 {
            let rest = w - 6 * n;
            if rest % 4 != 0 {
                continue;
            }
            let (m, n) = ((rest / 4) as i64, n as i64);
            let s = 4 * m + 6 * n;
            let v = int(3 * (m + 1)) * get(&a, m + 1, n - 1)
                + rat(16, 3) * int(n + 1) * get(&a, m - 2, n + 1)
                - rat(1, 6) * int((s - 1) * (s - 2)) * get(&a, m - 1, n);
            a.insert((m as u32, n as u32), v);
        }
        w += 2;
    }
    a
}

/// Rescaled sigma from the `a_{m,n}` table:
/// `sum a_{m,n} / (4m+6n+1)! (E4/24)^m (-E6/108)^n z^{4m+6n+1}`.
pub fn sigma_tilde_weierstrass(dz: usize) -> ZLaurent {
    let bound = dz.max(1) as u32 - 1;
    let a = weierstrass_a(bound);
    let e4 = e4_normalized();
    let e6 = e6_normalized();
    let mut coeffs = alloc::vec![QMPolynomial::zero(); bound as usize + 1];
    for (&(m, n), c) in &a {
        let e = (4 * m + 6 * n) as usize;
        let t = (&e4.pow(m) * &e6.pow(n)).scale(&(c / Q::from_integer(factorial(e as u64 + 1))));
        coeffs[e].add_assign_ref(&t);
    }
    LaurentSeries::new(Var::Z, 1, coeffs)
}

/// `b_{m,n}` for `4m + 6n <= bound`, read off from `1/sigma_tilde`.
pub fn b_table(bound: u32) -> Result<BTreeMap<(u32, u32), Q>, ThetaError> {
    let sigma = sigma_tilde(bound as usize + 1)?;
    let inv = sigma.reciprocal()?;
    let mut b = BTreeMap::new();
    for w in (0..=bound).step_by(2) {
        for n in 0..=w / 6 {
            if (w - 6 * n) % 4 == 0 {
                b.insert(((w - 6 * n) / 4, n), Q::zero());
            }
        }
        let e = w as i64 - 1;
        for (mono, c) in inv.coeff(e).terms() {
            if mono.e2 != 0 || mono.weight() != w {
                return Err(ThetaError::TableMismatch { exponent: e });
            }
            let (m, n) = (mono.e4, mono.e6);
            let v = c * pow(&int(24), m as i64) * pow(&int(-108), n as i64);
            b.insert((m, n), v);
        }
    }
    Ok(b)
}

/// The `a_{m,n}` and `b_{m,n}` tables up to a common bound on `4m + 6n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassTable {
    bound: u32,
    a: BTreeMap<(u32, u32), Q>,
    b: BTreeMap<(u32, u32), Q>,
}

impl WeierstrassTable {
    pub fn new(bound: u32) -> Result<Self, ThetaError> {
        Ok(WeierstrassTable {
            bound,
            a: weierstrass_a(bound),
            b: b_table(bound)?,
        })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn a(&self, m: u32, n: u32) -> Option<&Q> {
        self.a.get(&(m, n))
    }

    pub fn b(&self, m: u32, n: u32) -> Option<&Q> {
        self.b.get(&(m, n))
    }

    pub fn a_entries(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.a.iter()
    }

    pub fn b_entries(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.b.iter()
    }
}

/// Prime form to order `dz`, built two ways and compared coefficientwise:
/// the full Eisenstein exponential, and `exp(E2 z^2 / 24)` times the
/// Weierstrass-recursion sigma.
pub fn prime_form(dz: usize) -> Result<ZLaurent, ThetaError> {
    prime_form_with(dz, &mut EisensteinReducer::default())
}

pub fn prime_form_with(dz: usize, reducer: &mut EisensteinReducer) -> Result<ZLaurent, ThetaError> {
    let inner = dz.max(1) - 1;
    let direct = z_times(eisenstein_exponent(inner, 1, reducer)?.exp()?);
    let gauss = PowerSeries::monomial(Var::Z, inner, 2, QMPolynomial::e2().scale(&rat(1, 24))).exp()?;
    let weierstrass = sigma_tilde_weierstrass(dz);
    let product = &LaurentSeries::from_power_series(&gauss) * &weierstrass;
    for e in 1..=dz as i64 {
        if direct.coeff(e) != product.coeff(e) {
            return Err(ThetaError::RouteMismatch { exponent: e });
        }
    }
    Ok(direct)
}

/// `1/Theta(z)` to order `dz`; this is `(q)_inf F_1`.
pub fn one_over_theta(dz: usize) -> Result<ZLaurent, ThetaError> {
    one_over_theta_with(dz, &mut EisensteinReducer::default())
}

pub fn one_over_theta_with(dz: usize, reducer: &mut EisensteinReducer) -> Result<ZLaurent, ThetaError> {
    let theta = prime_form_with(dz + 2, reducer)?;
    Ok(theta.reciprocal()?.truncate(dz as i64))
}

/// `d^m/dz^m log Theta(z)` to order `dz`.
pub fn log_theta_deriv(m: usize, dz: usize) -> Result<ZLaurent, ThetaError> {
    log_theta_deriv_with(m, dz, &mut EisensteinReducer::default())
}

pub fn log_theta_deriv_with(
    m: usize,
    dz: usize,
    reducer: &mut EisensteinReducer,
) -> Result<ZLaurent, ThetaError> {
    assert!(m >= 1, "log_theta_deriv needs m >= 1");
    let mut regular = eisenstein_exponent(dz + m, 1, reducer)?;
    for _ in 0..m {
        regular = regular.derive(crate::series::DeriveMode::Plain);
    }
    // d^m log z = (-1)^{m-1} (m-1)! z^{-m}
    let sign = if m % 2 == 1 { 1 } else { -1 };
    let pole_coeff = Q::from_integer(factorial(m as u64 - 1)) * int(sign);
    let pole = LaurentSeries::monomial(Var::Z, -(m as i64), QMPolynomial::constant(pole_coeff), dz as i64);
    Ok(&pole + &LaurentSeries::from_power_series(&regular))
}

/// `Theta^{(k)}(z) / (k! Theta(z))` to order `dz`, from a prime form known
/// to order at least `dz + k + 2`.
pub fn theta_ratio(theta: &ZLaurent, k: usize, dz: usize) -> ZLaurent {
    if k == 0 {
        return LaurentSeries::monomial(Var::Z, 0, QMPolynomial::one(), dz as i64);
    }
    assert!(
        theta.order() >= (dz + k + 2) as i64,
        "prime form order {} too small for ratio {k} at order {dz}",
        theta.order()
    );
    let mut d = theta.clone();
    for _ in 0..k {
        d = d.derivative();
    }
    let d = d.scale(&(Q::one() / Q::from_integer(factorial(k as u64))));
    let inv = theta.reciprocal().expect("prime form is nonzero");
    let r = &d * &inv;
    debug_assert!(r.order() >= dz as i64);
    r.truncate(dz as i64)
}

/// True if the coefficient of `z^e` has weight `e + offset` for every `e`.
pub fn weights_consistent(series: &ZLaurent, offset: i64) -> bool {
    series
        .terms()
        .all(|(e, c)| e + offset >= 0 && c.is_homogeneous_of((e + offset) as u32))
}

/// `sum_{l + 2m + 3n = g} b_{m,n} / l! C2^l (E4/24)^m (-E6/108)^n`.
///
/// Needs a table with `bound >= 2g`; returns `None` otherwise.
pub fn onepoint_from_b(g: u32, table: &WeierstrassTable) -> Option<QMPolynomial> {
    let c2 = QMPolynomial::c2();
    let e4 = e4_normalized();
    let e6 = e6_normalized();
    let mut acc = QMPolynomial::zero();
    for n in 0..=g / 3 {
        for m in 0..=(g - 3 * n) / 2 {
            let l = g - 3 * n - 2 * m;
            let b = table.b(m, n)?;
            if b.is_zero() {
                continue;
            }
            let coeff = b / Q::from_integer(factorial(l as u64));
            let t = (&(&c2.pow(l) * &e4.pow(m)) * &e6.pow(n)).scale(&coeff);
            acc.add_assign_ref(&t);
        }
    }
    Some(acc)
}

/// Monomials of `E4^m E6^n` in `(E4/24)^m (-E6/108)^n` normalization.
pub fn normalized_monomial(m: u32, n: u32) -> QMPolynomial {
    QMPolynomial::term(
        Monomial::new(0, m, n),
        pow(&rat(1, 24), m as i64) * pow(&rat(-1, 108), n as i64),
    )
}

/// Coefficients of a `ZLaurent` as `(exponent, polynomial)` pairs.
pub fn laurent_terms(series: &ZLaurent) -> Vec<(i64, QMPolynomial)> {
    series.terms().map(|(e, c)| (e, c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2() -> QMPolynomial {
        QMPolynomial::e2()
    }

    #[test]
    fn weierstrass_initial_values() {
        let a = weierstrass_a(12);
        assert_eq!(a[&(0, 0)], int(1));
        assert_eq!(a[&(1, 0)], int(-1));
        assert_eq!(a[&(0, 1)], int(-3));
    }

    #[test]
    fn sigma_low_terms() {
        let s = sigma_tilde(9).unwrap();
        assert_eq!(s.coeff(1), QMPolynomial::one());
        assert_eq!(s.coeff(5), QMPolynomial::e4().scale(&rat(-1, 2880)));
        for k in 0..=4 {
            assert!(s.coeff(2 * k).is_zero());
        }
        assert_eq!(s, sigma_tilde_weierstrass(9));
    }

    #[test]
    fn b_initial_values() {
        let b = b_table(12).unwrap();
        assert_eq!(b[&(0, 0)], int(1));
        assert_eq!(b[&(1, 0)], rat(1, 120));
    }

    #[test]
    fn prime_form_low_terms() {
        let t = prime_form(9).unwrap();
        assert_eq!(t.coeff(1), QMPolynomial::one());
        assert_eq!(t.coeff(3), e2().scale(&rat(1, 24)));
        assert!(weights_consistent(&t, -1));
    }

    #[test]
    fn one_over_theta_low_terms() {
        let r = one_over_theta(8).unwrap();
        assert_eq!(r.valuation(), -1);
        assert_eq!(r.coeff(-1), QMPolynomial::one());
        assert_eq!(r.coeff(1), QMPolynomial::c2());
        let z3 = (&QMPolynomial::e4().scale(&rat(1, 5)) + &(&e2() * &e2()).scale(&rat(1, 2)))
            .scale(&rat(1, 576));
        assert_eq!(r.coeff(3), z3);
        assert!(weights_consistent(&r, 1));
    }

    #[test]
    fn log_derivatives() {
        let l1 = log_theta_deriv(1, 8).unwrap();
        assert_eq!(l1.coeff(-1), QMPolynomial::one());
        assert_eq!(l1.coeff(1), e2().scale(&rat(1, 12)));
        assert!(weights_consistent(&l1, 1));
        let l2 = log_theta_deriv(2, 8).unwrap();
        assert_eq!(l2.coeff(-2), QMPolynomial::constant(int(-1)));
        assert_eq!(log_theta_deriv(2, 7).unwrap(), l1.derivative());
    }

    #[test]
    fn ratio_one_is_log_derivative() {
        let theta = prime_form(14).unwrap();
        assert_eq!(theta_ratio(&theta, 1, 10), log_theta_deriv(1, 10).unwrap());
        let r2 = theta_ratio(&theta, 2, 10);
        assert!(weights_consistent(&r2, 2));
        assert_eq!(r2.valuation(), 0);
    }

    #[test]
    fn onepoint_matches_reciprocal() {
        let table = WeierstrassTable::new(14).unwrap();
        let inv = one_over_theta(14).unwrap();
        for g in 0..=7u32 {
            assert_eq!(onepoint_from_b(g, &table).unwrap(), inv.coeff(2 * g as i64 - 1), "genus {g}");
        }
        assert!(onepoint_from_b(8, &table).is_none());
    }
}
