//! The Chazy equation, the Belorousski–Pandharipande combination, and the
//! formal Chazy solver in the elliptic coordinate `s`.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::{factorial, int, rat, Q};
use crate::series::{DeriveMode, PowerSeries, SeriesError, Var};

/// The genus-one, three-point primary FJRW invariant of the Fermat cubic.
/// It enters as input data and determines the whole genus-one series.
pub fn theta_1_3() -> Q {
    rat(1, 108)
}

/// `2f''' - 2 f f'' + 3 f'^2`.
pub fn chazy_residual(f: &PowerSeries, mode: DeriveMode) -> Result<PowerSeries, SeriesError> {
    let d1 = f.derive(mode);
    let d2 = d1.derive(mode);
    let d3 = d2.derive(mode);
    let a = d3.scale(&int(2));
    let b = f.checked_mul(&d2)?.scale(&int(2));
    let c = d1.checked_mul(&d1)?.scale(&int(3));
    a.checked_sub(&b)?.checked_add(&c)
}

/// `(12/5) g g'' - (18/5) g'^2 + (1/10) g'''`.
pub fn bp_residual(g: &PowerSeries, mode: DeriveMode) -> Result<PowerSeries, SeriesError> {
    let d1 = g.derive(mode);
    let d2 = d1.derive(mode);
    let d3 = d2.derive(mode);
    let a = g.checked_mul(&d2)?.scale(&rat(12, 5));
    let b = d1.checked_mul(&d1)?.scale(&rat(18, 5));
    a.checked_sub(&b)?.checked_add(&d3.scale(&rat(1, 10)))
}

/// Values `f(0), f'(0), f''(0)` of a formal solution in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChazyInitialData {
    pub f0: Q,
    pub f1: Q,
    pub f2: Q,
}

impl ChazyInitialData {
    pub fn new(f0: Q, f1: Q, f2: Q) -> Self {
        ChazyInitialData { f0, f1, f2 }
    }

    /// Data for `f = -24 <<phi>>_{1,1}` given the invariant `Theta_{1,3}`.
    ///
    /// `<<phi>>_{1,1} = sum_m s^m / m! Theta_{1,m+1}` with `Theta_{1,1} =
    /// Theta_{1,2} = 0`, so `f''(0) = -24 Theta_{1,3}`.
    pub fn from_theta_1_3(theta: &Q) -> Self {
        ChazyInitialData::new(Q::zero(), Q::zero(), int(-24) * theta)
    }

    pub fn genus_one_fjrw() -> Self {
        Self::from_theta_1_3(&theta_1_3())
    }
}

/// Unique formal solution of the Chazy equation in `d/ds` with the given
/// initial data, to order `order`.
pub fn chazy_solve_s(init: &ChazyInitialData, order: usize) -> PowerSeries {
    let mut a: Vec<Q> = Vec::with_capacity(order + 1);
    a.push(init.f0.clone());
    a.push(init.f1.clone());
    a.push(&init.f2 / int(2));
    a.truncate(order + 1);
    while a.len() <= order {
        let k = a.len() - 3;
        // [s^k] (2 f f'' - 3 f'^2), using a_0 .. a_{k+2}.
        let mut rhs = Q::zero();
        for i in 0..=k {
            let j = k - i;
            let f = &a[i];
            let ddf = &a[j + 2] * int(((j + 2) * (j + 1)) as i64);
            rhs += int(2) * f * ddf;
            let df_i = &a[i + 1] * int(i as i64 + 1);
            let df_j = &a[j + 1] * int(j as i64 + 1);
            rhs -= int(3) * df_i * df_j;
        }
        let denom = int(2 * ((k + 1) * (k + 2) * (k + 3)) as i64);
        a.push(rhs / denom);
    }
    PowerSeries::new(Var::S, a)
}

/// Genus-one primary FJRW correlation function `<<phi>>_{1,1}(s)`.
pub fn fjrw_genus1_series(order: usize) -> PowerSeries {
    chazy_solve_s(&ChazyInitialData::genus_one_fjrw(), order).scale(&rat(-1, 24))
}

/// `Theta_{1,m+1} = m! [s^m] <<phi>>_{1,1}`.
pub fn genus_one_invariant(series: &PowerSeries, n: usize) -> Option<Q> {
    let m = n.checked_sub(1)?;
    series
        .get(m)
        .map(|c| c * Q::from_integer(factorial(m as u64)))
}
