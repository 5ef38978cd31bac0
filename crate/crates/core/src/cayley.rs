//! Holomorphic Cayley transformation to the elliptic point and FJRW
//! correlation functions of the Fermat cubic with its `mu_3` symmetry.
//!
//! The transformation is pure generator substitution: `E2` goes to the
//! formal Chazy solution in `s` with the genus-one FJRW initial data, and
//! `E4`, `E6` follow from the Ramanujan system with `' = d/ds`.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::chazy::{chazy_solve_s, ChazyInitialData};
use crate::modular::QMPolynomial;
use crate::npoint::{self, NpointError};
use crate::rational::{factorial, int, rat, Q};
use crate::series::{DeriveMode, PowerSeries, SeriesError, Var};
use crate::theta::WeierstrassTable;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("s-order {available} is below the minimum {needed}")]
    OrderTooSmall { needed: usize, available: usize },
    #[error("b-table bound {available} is below the required {needed}")]
    TableTooSmall { needed: u32, available: u32 },
    #[error("insertions {0} are outside the stationary sector")]
    Unsupported(InsertionList),
    #[error("psi powers sum to {0}, which is odd; no genus satisfies the dimension constraint")]
    NoGenus(u32),
    #[error("genus-zero correlators need at least three insertions")]
    Unstable,
    #[error(transparent)]
    Npoint(#[from] NpointError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Images of `E2, E4, E6` under the holomorphic Cayley transformation.
#[derive(Clone, Debug, PartialEq)]
pub struct CayleyFrame {
    e2: PowerSeries,
    e4: PowerSeries,
    e6: PowerSeries,
}

impl CayleyFrame {
    /// The elliptic point of expansion; recorded, never evaluated.
    pub const ELLIPTIC_POINT: &'static str = "tau* = -(sqrt(-1)/sqrt(3)) * exp(2*pi*sqrt(-1)/3)";
    /// Normalization of the disk coordinate `s`; recorded, never evaluated.
    pub const SCALE: &'static str =
        "c = Gamma(1/3) / (2*pi*sqrt(-1) * Gamma(2/3)^2) * exp(-pi*sqrt(-1)/3)";

    pub fn new(order: usize) -> Result<Self, CayleyError> {
        Self::with_initial_data(&ChazyInitialData::genus_one_fjrw(), order)
    }

    pub fn with_initial_data(init: &ChazyInitialData, order: usize) -> Result<Self, CayleyError> {
        if order < 3 {
            return Err(CayleyError::OrderTooSmall { needed: 3, available: order });
        }
        let e2 = chazy_solve_s(init, order + 2);
        let e4 = e2.checked_mul(&e2)?.checked_sub(&e2.derive(DeriveMode::Plain).scale(&int(12)))?;
        let e6 = e2.checked_mul(&e4)?.checked_sub(&e4.derive(DeriveMode::Plain).scale(&int(3)))?;
        Ok(CayleyFrame {
            e2: e2.truncate(order),
            e4: e4.truncate(order),
            e6: e6.truncate(order),
        })
    }

    pub fn order(&self) -> usize {
        self.e6.order() as usize
    }

    pub fn e2(&self) -> &PowerSeries {
        &self.e2
    }

    pub fn e4(&self) -> &PowerSeries {
        &self.e4
    }

    pub fn e6(&self) -> &PowerSeries {
        &self.e6
    }

    /// The Ramanujan identities in `d/ds`, as residual series.
    pub fn ramanujan_residuals(&self) -> Result<[PowerSeries; 3], SeriesError> {
        let d = |f: &PowerSeries| f.derive(DeriveMode::Plain);
        let (e2, e4, e6) = (&self.e2, &self.e4, &self.e6);
        let r2 = d(e2).checked_sub(&e2.checked_mul(e2)?.checked_sub(e4)?.scale(&rat(1, 12)))?;
        let r4 = d(e4).checked_sub(&e2.checked_mul(e4)?.checked_sub(e6)?.scale(&rat(1, 3)))?;
        let r6 = d(e6).checked_sub(&e2.checked_mul(e6)?.checked_sub(&e4.checked_mul(e4)?)?.scale(&rat(1, 2)))?;
        Ok([r2, r4, r6])
    }
}

/// `p(CE2, CE4, CE6)` as a series in `s`.
pub fn cayley_transform(p: &QMPolynomial, frame: &CayleyFrame) -> PowerSeries {
    p.substitute(&frame.e2, &frame.e4, &frame.e6)
        .expect("frame series share the variable s")
}

/// Basis of the FJRW state space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FjrwLabel {
    One,
    Phi,
    B1,
    B2,
}

impl FjrwLabel {
    /// Complex degree: 0 for 1, 1 for the odd classes, 2 for phi.
    pub fn degree(self) -> u32 {
        match self {
            FjrwLabel::One => 0,
            FjrwLabel::B1 | FjrwLabel::B2 => 1,
            FjrwLabel::Phi => 2,
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, FjrwLabel::B1 | FjrwLabel::B2)
    }
}

impl fmt::Display for FjrwLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FjrwLabel::One => "1",
            FjrwLabel::Phi => "phi",
            FjrwLabel::B1 => "b1",
            FjrwLabel::B2 => "b2",
        })
    }
}

/// Basis of the cohomology of the elliptic curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurveClass {
    One,
    Omega,
    E1,
    E2,
}

/// The degree- and grading-preserving identification of state spaces.
pub fn state_space_map(c: CurveClass) -> FjrwLabel {
    match c {
        CurveClass::One => FjrwLabel::One,
        CurveClass::Omega => FjrwLabel::Phi,
        CurveClass::E1 => FjrwLabel::B1,
        CurveClass::E2 => FjrwLabel::B2,
    }
}

/// `label psi^psi` inserted at one marked point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FjrwInsertion {
    pub label: FjrwLabel,
    pub psi: u32,
}

impl FjrwInsertion {
    pub fn new(label: FjrwLabel, psi: u32) -> Self {
        FjrwInsertion { label, psi }
    }

    pub fn phi(psi: u32) -> Self {
        Self::new(FjrwLabel::Phi, psi)
    }
}

/// Insertions as written in an error message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionList(pub Vec<FjrwInsertion>);

impl fmt::Display for InsertionList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ins) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}psi^{}", ins.label, ins.psi)?;
        }
        Ok(())
    }
}

/// Genus fixed by the dimension constraint `sum psi = 2g - 2`.
pub fn genus_of(psi: &[u32]) -> Result<u32, CayleyError> {
    let total: u32 = psi.iter().sum();
    if total % 2 == 1 {
        return Err(CayleyError::NoGenus(total));
    }
    Ok(total / 2 + 1)
}

/// Connected FJRW correlation function of stationary (`phi`) insertions,
/// transported from the curve. Repeated identical odd insertions vanish by
/// the `Z_2` grading; any other non-`phi` insertion is unsupported.
pub fn fjrw_correlation(
    insertions: &[FjrwInsertion],
    frame: &CayleyFrame,
) -> Result<PowerSeries, CayleyError> {
    for (i, a) in insertions.iter().enumerate() {
        if a.label.is_odd() && insertions[i + 1..].contains(a) {
            return Ok(PowerSeries::zero(Var::S, frame.order()));
        }
    }
    if insertions.iter().any(|a| a.label != FjrwLabel::Phi) {
        return Err(CayleyError::Unsupported(InsertionList(insertions.to_vec())));
    }
    let psi: Vec<u32> = insertions.iter().map(|a| a.psi).collect();
    genus_of(&psi)?;
    let legs: Vec<i64> = psi.iter().map(|&l| l as i64).collect();
    let weight = npoint::stationary_weight(&legs)?;
    let gw = npoint::connected_invariant(&legs, weight)?;
    Ok(cayley_transform(&gw, frame))
}

/// `<<phi psi^{2g-2}>>_{g,1}` from the `b_{m,n}` formula in the Cayley frame.
pub fn fjrw_onepoint_all_genus(
    g: u32,
    frame: &CayleyFrame,
    table: &WeierstrassTable,
) -> Result<PowerSeries, CayleyError> {
    if table.bound() < 2 * g {
        return Err(CayleyError::TableTooSmall {
            needed: 2 * g,
            available: table.bound(),
        });
    }
    let c2 = frame.e2.scale(&rat(-1, 24));
    let e4 = frame.e4.scale(&rat(1, 24));
    let e6 = frame.e6.scale(&rat(-1, 108));
    let order = frame.order();
    let mut acc = PowerSeries::zero(Var::S, order);
    for n in 0..=g / 3 {
        for m in 0..=(g - 3 * n) / 2 {
            let l = g - 3 * n - 2 * m;
            let b = table.b(m, n).cloned().unwrap_or_else(Q::zero);
            if b.is_zero() {
                continue;
            }
            let t = c2.pow(l).checked_mul(&e4.pow(m))?.checked_mul(&e6.pow(n))?;
            let coeff = b / Q::from_integer(factorial(l as u64));
            acc = acc.checked_add(&t.scale(&coeff))?;
        }
    }
    Ok(acc)
}

/// `(base_n + m, m! [s^m] f)` for every known coefficient.
pub fn extract_fjrw_invariants(f: &PowerSeries, base_n: usize) -> Vec<(usize, Q)> {
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| (base_n + m, c * Q::from_integer(factorial(m as u64))))
        .collect()
}

/// Genus-zero primary FJRW invariants: the pairing three-point values, and
/// zero for four or more insertions.
pub fn genus_zero_primary(labels: &[FjrwLabel]) -> Result<Q, CayleyError> {
    if labels.len() < 3 {
        return Err(CayleyError::Unstable);
    }
    if labels.len() > 3 {
        return Ok(Q::zero());
    }
    let mut sorted = labels.to_vec();
    sorted.sort();
    use FjrwLabel::*;
    match sorted.as_slice() {
        [One, One, Phi] => Ok(int(1)),
        [One, B1, B2] => {
            let b1 = labels.iter().position(|&l| l == B1);
            let b2 = labels.iter().position(|&l| l == B2);
            Ok(if b1 < b2 { int(1) } else { int(-1) })
        }
        _ => Ok(Q::zero()),
    }
}

/// The nonzero genus-zero three-point values in a fixed order.
pub fn genus_zero_data() -> Vec<([FjrwLabel; 3], Q)> {
    use FjrwLabel::*;
    [[One, One, Phi], [One, B1, B2], [One, B2, B1]]
        .into_iter()
        .map(|l| {
            let v = genus_zero_primary(&l).expect("three insertions");
            (l, v)
        })
        .collect()
}

/// Distinct primes in the denominators of the first coefficients of `f`.
pub fn denominator_primes(f: &PowerSeries) -> Vec<u64> {
    let mut primes: Vec<u64> = f.coeffs().iter().flat_map(crate::rational::denominator_primes).collect();
    primes.sort();
    primes.dedup();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chazy::fjrw_genus1_series;
    use crate::modular::ramanujan_derive;

    fn s_series(terms: &[(usize, Q)], order: usize) -> PowerSeries {
        let mut p = PowerSeries::zero(Var::S, order);
        for (k, c) in terms {
            p = &p + &PowerSeries::monomial(Var::S, order, *k, c.clone());
        }
        p
    }

    #[test]
    fn frame_displays() {
        let f = CayleyFrame::new(8).unwrap();
        assert_eq!(f.e2(), &s_series(&[(2, rat(-1, 9)), (5, rat(-1, 1215)), (8, rat(-1, 459270))], 8));
        assert_eq!(f.e4().truncate(7), s_series(&[(1, rat(8, 3)), (4, rat(5, 81)), (7, rat(2, 5103))], 7));
        assert_eq!(f.e6().truncate(6), s_series(&[(0, int(-8)), (3, rat(-28, 27)), (6, rat(-7, 405))], 6));
        assert!(f.ramanujan_residuals().unwrap().iter().all(PowerSeries::is_zero));
        assert!(CayleyFrame::new(2).is_err());
    }

    #[test]
    fn transform_basics() {
        let f = CayleyFrame::new(10).unwrap();
        assert_eq!(cayley_transform(&QMPolynomial::constant(int(1)), &f), PowerSeries::one(Var::S, 10));
        assert_eq!(cayley_transform(&QMPolynomial::c2(), &f), fjrw_genus1_series(10));
        let p = &QMPolynomial::e2().pow(2) + &QMPolynomial::e6();
        let lhs = cayley_transform(&p, &f).derive(DeriveMode::Plain);
        let rhs = cayley_transform(&ramanujan_derive(&p), &f).truncate(9);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn correlations() {
        let f = CayleyFrame::new(8).unwrap();
        assert_eq!(fjrw_correlation(&[FjrwInsertion::phi(0)], &f).unwrap(), fjrw_genus1_series(8));
        let g2 = fjrw_correlation(&[FjrwInsertion::phi(2)], &f).unwrap();
        assert!(g2.coeff(0).is_zero());
        assert_eq!(g2.coeff(1), &rat(1, 1080));
        let b = FjrwInsertion::new(FjrwLabel::B1, 0);
        assert!(fjrw_correlation(&[b, b], &f).unwrap().is_zero());
        assert!(matches!(
            fjrw_correlation(&[FjrwInsertion::new(FjrwLabel::One, 0)], &f),
            Err(CayleyError::Unsupported(_))
        ));
        assert_eq!(fjrw_correlation(&[FjrwInsertion::phi(1)], &f), Err(CayleyError::NoGenus(1)));
    }

    #[test]
    fn two_point_is_derivative() {
        let f = CayleyFrame::new(10).unwrap();
        let one = fjrw_correlation(&[FjrwInsertion::phi(0)], &f).unwrap();
        let two = fjrw_correlation(&[FjrwInsertion::phi(0), FjrwInsertion::phi(0)], &f).unwrap();
        assert_eq!(two.truncate(9), one.derive(DeriveMode::Plain));
    }

    #[test]
    fn onepoint_formula() {
        let f = CayleyFrame::new(10).unwrap();
        let t = WeierstrassTable::new(8).unwrap();
        assert_eq!(fjrw_onepoint_all_genus(1, &f, &t).unwrap(), fjrw_genus1_series(10));
        let g2 = fjrw_onepoint_all_genus(2, &f, &t).unwrap();
        let c2 = f.e2().scale(&rat(-1, 24));
        let expected = &(&c2 * &c2).scale(&rat(1, 2)) + &f.e4().scale(&rat(1, 24 * 120));
        assert_eq!(g2, expected);
        assert!(g2.coeff(0).is_zero());
        assert_eq!(
            fjrw_onepoint_all_genus(5, &f, &t),
            Err(CayleyError::TableTooSmall { needed: 10, available: 8 })
        );
    }

    #[test]
    fn extraction() {
        let inv = extract_fjrw_invariants(&fjrw_genus1_series(8), 1);
        assert_eq!(inv[0], (1, Q::zero()));
        assert_eq!(inv[1], (2, Q::zero()));
        assert_eq!(inv[2], (3, rat(1, 108)));
        assert_eq!(inv[5], (6, rat(1, 243)));
    }

    #[test]
    fn genus_zero() {
        use FjrwLabel::*;
        assert_eq!(genus_zero_primary(&[One, One, Phi]).unwrap(), int(1));
        assert_eq!(genus_zero_primary(&[Phi, One, One]).unwrap(), int(1));
        assert_eq!(genus_zero_primary(&[One, B2, B1]).unwrap(), int(-1));
        assert_eq!(genus_zero_primary(&[Phi, Phi, Phi, Phi]).unwrap(), int(0));
        assert_eq!(genus_zero_primary(&[One, Phi]), Err(CayleyError::Unstable));
        assert_eq!(state_space_map(CurveClass::Omega), Phi);
        assert_eq!(Phi.degree(), 2);
    }
}
