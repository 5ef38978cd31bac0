//! Truncated univariate power and Laurent series with exact coefficients.
//!
//! A series knows its truncation order: coefficients above it are unknown,
//! and every binary operation keeps the smaller of the two orders.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{self, Q};

/// Name of the formal variable a series is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Q,
    S,
    T,
    X,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Var::Q => "q",
            Var::S => "s",
            Var::T => "t",
            Var::X => "x",
            Var::Z => "z",
        };
        f.write_str(c)
    }
}

/// Which derivative `derive` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeriveMode {
    /// `q d/dq`, keeps the truncation order.
    ThetaQ,
    /// Plain `d/ds`, lowers the truncation order by one.
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch { left: Var, right: Var },
    #[error("constant term is not invertible")]
    NonUnitConstant,
    #[error("constant term must be 1")]
    ConstantNotOne,
    #[error("constant term must be 0")]
    NonzeroConstant,
    #[error("series is zero to its truncation order")]
    ZeroSeries,
}

/// Coefficient ring of a series: the rationals or quasi-modular polynomials.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Zero + One + Neg<Output = Self> {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, r: &Q) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: Q) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }
}

impl Coefficient for Q {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, r: &Q) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: Q) -> Self {
        r
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

fn check_var(a: Var, b: Var) -> Result<(), SeriesError> {
    if a == b {
        Ok(())
    } else {
        Err(SeriesError::VarMismatch { left: a, right: b })
    }
}

fn big(n: usize) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Power series `c_0 + c_1 v + ... + c_D v^D + O(v^{D+1})`.
///
/// An empty coefficient vector means nothing is known (order `-1`), which is
/// what differentiating an order-0 series produces.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C = Q> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Coefficient> PowerSeries<C> {
    pub fn new(var: Var, coeffs: Vec<C>) -> Self {
        PowerSeries { var, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> C) -> Self {
        PowerSeries {
            var,
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::from_fn(var, order, |_| C::zero())
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, order, C::one())
    }

    pub fn constant(var: Var, order: usize, c: C) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    /// `c v^k` truncated at `order`.
    pub fn monomial(var: Var, order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(var, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Truncation order; `-1` when no coefficient is known.
    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `v^k`; `None` above the truncation order.
    pub fn get(&self, k: usize) -> Option<&C> {
        self.coeffs.get(k)
    }

    /// Coefficient of `v^k`. Panics above the truncation order.
    pub fn coeff(&self, k: usize) -> &C {
        match self.coeffs.get(k) {
            Some(c) => c,
            None => panic!("coefficient {k} is above truncation order {}", self.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = (order + 1).min(self.coeffs.len());
        PowerSeries {
            var: self.var,
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn map<D: Coefficient>(&self, f: impl FnMut(&C) -> D) -> PowerSeries<D> {
        PowerSeries {
            var: self.var,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, rhs.var)?;
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Ok(PowerSeries {
            var: self.var,
            coeffs: (0..n).map(|k| self.coeffs[k].add_ref(&rhs.coeffs[k])).collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, rhs.var)?;
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Ok(PowerSeries {
            var: self.var,
            coeffs: (0..n).map(|k| self.coeffs[k].sub_ref(&rhs.coeffs[k])).collect(),
        })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, rhs.var)?;
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(PowerSeries {
            var: self.var,
            coeffs: out,
        })
    }

    pub fn scale(&self, r: &Q) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: u32) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut acc = Self::one(self.var, self.coeffs.len() - 1);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs.first().ok_or(SeriesError::ZeroSeries)?;
        let r0 = a0.inverse().ok_or(SeriesError::NonUnitConstant)?;
        let n = self.coeffs.len();
        let mut r: Vec<C> = Vec::with_capacity(n);
        r.push(r0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc.add_assign_ref(&self.coeffs[j].mul_ref(&r[k - j]));
                }
            }
            r.push(-acc.mul_ref(&r0));
        }
        Ok(PowerSeries {
            var: self.var,
            coeffs: r,
        })
    }

    /// `exp(self)`; the constant term must vanish.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        match self.coeffs.first() {
            None => return Ok(self.clone()),
            Some(c) if !c.is_zero() => return Err(SeriesError::NonzeroConstant),
            _ => {}
        }
        let n = self.coeffs.len();
        let mut e: Vec<C> = Vec::with_capacity(n);
        e.push(C::one());
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign_ref(&self.coeffs[k].mul_ref(&e[m - k]).scale(&big(k)));
                }
            }
            e.push(acc.scale(&rational::rat(1, m as i64)));
        }
        Ok(PowerSeries {
            var: self.var,
            coeffs: e,
        })
    }

    /// `log(self)`; the constant term must be exactly 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        match self.coeffs.first() {
            None => return Ok(self.clone()),
            Some(c) if !c.is_one() => return Err(SeriesError::ConstantNotOne),
            _ => {}
        }
        let n = self.coeffs.len();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(C::zero());
        for m in 1..n {
            let mut acc = self.coeffs[m].scale(&big(m));
            for (k, bk) in b.iter().enumerate().skip(1) {
                if !self.coeffs[m - k].is_zero() {
                    acc = acc.sub_ref(&bk.mul_ref(&self.coeffs[m - k]).scale(&big(k)));
                }
            }
            b.push(acc.scale(&rational::rat(1, m as i64)));
        }
        Ok(PowerSeries {
            var: self.var,
            coeffs: b,
        })
    }

    /// `self(inner)`, expressed in the variable of `inner`; needs `inner(0) = 0`.
    ///
    /// When `inner` has valuation `v`, coefficients of `self` above its order
    /// only affect powers `>= (D_self + 1) v`, so the result is exact up to
    /// `min(D_inner, (D_self + 1) v - 1)`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        match inner.coeffs.first() {
            Some(c) if !c.is_zero() => return Err(SeriesError::NonzeroConstant),
            _ => {}
        }
        let d_inner = inner.order();
        let d_outer = self.order();
        let order = match inner.valuation() {
            Some(v) => d_inner.min((d_outer + 1) * v as i64 - 1),
            None => d_inner,
        };
        if order < 0 {
            return Ok(PowerSeries::new(inner.var, Vec::new()));
        }
        let order = order as usize;
        let g = inner.truncate(order);
        let mut acc = PowerSeries::zero(inner.var, order);
        for c in self.coeffs.iter().rev() {
            acc = &acc * &g;
            acc.coeffs[0].add_assign_ref(c);
        }
        Ok(acc)
    }

    pub fn derive(&self, mode: DeriveMode) -> Self {
        match mode {
            DeriveMode::ThetaQ => PowerSeries {
                var: self.var,
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c.scale(&big(k)))
                    .collect(),
            },
            DeriveMode::Plain => PowerSeries {
                var: self.var,
                coeffs: self
                    .coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c.scale(&big(k)))
                    .collect(),
            },
        }
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(C::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&rational::rat(1, k as i64 + 1)));
        }
        PowerSeries {
            var: self.var,
            coeffs,
        }
    }

    /// `f(v^k)`: order grows to `k D` with zeros in between.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let n = self.coeffs.len();
        if n == 0 {
            return self.clone();
        }
        let mut out = vec![C::zero(); (n - 1) * k + k];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        PowerSeries {
            var: self.var,
            coeffs: out,
        }
    }

    /// `f(lambda v)`.
    pub fn rescale(&self, lambda: &Q) -> Self {
        let mut p = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.scale(&p));
            p *= lambda;
        }
        PowerSeries {
            var: self.var,
            coeffs: out,
        }
    }

    /// `v^k f`, order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries {
            var: self.var,
            coeffs,
        }
    }

    /// Compositional inverse of a series `c_1 v + ...` with invertible `c_1`.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        match self.coeffs.first() {
            Some(c) if !c.is_zero() => return Err(SeriesError::NonzeroConstant),
            None => return Err(SeriesError::ZeroSeries),
            _ => {}
        }
        let c1 = self
            .coeffs
            .get(1)
            .ok_or(SeriesError::ZeroSeries)?
            .inverse()
            .ok_or(SeriesError::NonUnitConstant)?;
        let order = self.coeffs.len() - 1;
        // Fixed point g = (v - (f(g) - c_1 g)) / c_1, one coefficient per round.
        let mut g = PowerSeries::monomial(self.var, order, 1, c1.clone());
        for _ in 1..order {
            let fg = self.compose(&g)?;
            let mut next = g.clone();
            for k in 1..=order {
                let mut target = if k == 1 { C::one() } else { C::zero() };
                target = target.sub_ref(&fg.coeffs[k]);
                next.coeffs[k].add_assign_ref(&target.mul_ref(&c1));
            }
            g = next;
        }
        Ok(g)
    }
}

impl<C: Coefficient> Add for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn add(self, rhs: Self) -> PowerSeries<C> {
        self.checked_add(rhs).expect("series addition")
    }
}

impl<C: Coefficient> Sub for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn sub(self, rhs: Self) -> PowerSeries<C> {
        self.checked_sub(rhs).expect("series subtraction")
    }
}

impl<C: Coefficient> Mul for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn mul(self, rhs: Self) -> PowerSeries<C> {
        self.checked_mul(rhs).expect("series multiplication")
    }
}

impl<C: Coefficient> Neg for &PowerSeries<C> {
    type Output = PowerSeries<C>;
    fn neg(self) -> PowerSeries<C> {
        self.map(|c| -c.clone())
    }
}

impl fmt::Display for PowerSeries<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rational::to_string(c))?,
                1 => write!(f, "{}*{}", rational::to_string(c), self.var)?,
                _ => write!(f, "{}*{}^{}", rational::to_string(c), self.var, k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

/// Laurent series `sum_{k = v}^{D} c_k x^k + O(x^{D+1})`.
///
/// Stored normalized: the first stored coefficient is nonzero unless the
/// series is zero to its order, in which case nothing is stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<C = Q> {
    var: Var,
    valuation: i64,
    order: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentSeries<C> {
    /// Coefficients for exponents `start, start + 1, ...`; the order is the
    /// last exponent given.
    pub fn new(var: Var, start: i64, coeffs: Vec<C>) -> Self {
        let order = start + coeffs.len() as i64 - 1;
        Self::normalized(var, start, order, coeffs)
    }

    fn normalized(var: Var, start: i64, order: i64, mut coeffs: Vec<C>) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(p) => {
                coeffs.drain(..p);
                LaurentSeries {
                    var,
                    valuation: start + p as i64,
                    order,
                    coeffs,
                }
            }
            None => LaurentSeries {
                var,
                valuation: order + 1,
                order,
                coeffs: Vec::new(),
            },
        }
    }

    pub fn zero(var: Var, order: i64) -> Self {
        LaurentSeries {
            var,
            valuation: order + 1,
            order,
            coeffs: Vec::new(),
        }
    }

    /// `c x^k + O(x^{order + 1})`.
    pub fn monomial(var: Var, k: i64, c: C, order: i64) -> Self {
        if k > order {
            return Self::zero(var, order);
        }
        let mut coeffs = vec![C::zero(); (order - k + 1) as usize];
        coeffs[0] = c;
        Self::normalized(var, k, order, coeffs)
    }

    pub fn from_power_series(p: &PowerSeries<C>) -> Self {
        Self::new(p.var, 0, p.coeffs.clone())
    }

    /// `None` when the series has a pole.
    pub fn to_power_series(&self) -> Option<PowerSeries<C>> {
        if self.valuation < 0 {
            return None;
        }
        if self.order < 0 {
            return Some(PowerSeries::new(self.var, Vec::new()));
        }
        Some(PowerSeries::from_fn(self.var, self.order as usize, |k| {
            self.coeff(k as i64)
        }))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Exponent of the leading nonzero term, or `order + 1` for zero.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`. Panics above the truncation order.
    pub fn coeff(&self, k: i64) -> C {
        assert!(
            k <= self.order,
            "coefficient {k} is above truncation order {}",
            self.order
        );
        if k < self.valuation {
            C::zero()
        } else {
            self.coeffs[(k - self.valuation) as usize].clone()
        }
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let coeffs = if order < self.valuation {
            Vec::new()
        } else {
            self.coeffs[..(order - self.valuation + 1) as usize].to_vec()
        };
        Self::normalized(self.var, self.valuation, order, coeffs)
    }

    pub fn map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> LaurentSeries<D> {
        LaurentSeries::normalized(
            self.var,
            self.valuation,
            self.order,
            self.coeffs.iter().map(&mut f).collect(),
        )
    }

    /// `x^k f`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            var: self.var,
            valuation: self.valuation + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, r: &Q) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.combine(rhs, |a, b| a.add_ref(b))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.combine(rhs, |a, b| a.sub_ref(b))
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&C, &C) -> C) -> Result<Self, SeriesError> {
        check_var(self.var, rhs.var)?;
        let order = self.order.min(rhs.order);
        let start = self.valuation.min(rhs.valuation);
        if start > order {
            return Ok(Self::zero(self.var, order));
        }
        let coeffs = (start..=order)
            .map(|k| op(&self.coeff(k), &rhs.coeff(k)))
            .collect();
        Ok(Self::normalized(self.var, start, order, coeffs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        check_var(self.var, rhs.var)?;
        let order = (self.order + rhs.valuation).min(rhs.order + self.valuation);
        let start = self.valuation + rhs.valuation;
        if self.is_zero() || rhs.is_zero() || start > order {
            return Ok(Self::zero(self.var, order));
        }
        let n = (order - start + 1) as usize;
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j].add_assign_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(Self::normalized(self.var, start, order, out))
    }

    /// Inverse with valuation `-v`; exact to order `D - 2v`.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries);
        }
        let v = self.valuation;
        let unit = PowerSeries::new(self.var, self.coeffs.clone());
        let inv = unit.reciprocal()?;
        Ok(Self::normalized(self.var, -v, inv.order() - v, inv.coeffs))
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Q::from_integer(BigInt::from(self.valuation + i as i64))))
            .collect();
        Self::normalized(self.var, self.valuation - 1, self.order - 1, coeffs)
    }
}

impl<C: Coefficient> Add for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn add(self, rhs: Self) -> LaurentSeries<C> {
        self.checked_add(rhs).expect("series addition")
    }
}

impl<C: Coefficient> Sub for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn sub(self, rhs: Self) -> LaurentSeries<C> {
        self.checked_sub(rhs).expect("series subtraction")
    }
}

impl<C: Coefficient> Mul for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn mul(self, rhs: Self) -> LaurentSeries<C> {
        self.checked_mul(rhs).expect("series multiplication")
    }
}

impl<C: Coefficient> Neg for &LaurentSeries<C> {
    type Output = LaurentSeries<C>;
    fn neg(self) -> LaurentSeries<C> {
        self.map(|c| -c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ps(coeffs: &[i64]) -> PowerSeries {
        PowerSeries::new(Var::Q, coeffs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let p = &ps(&[1, 1, 0, 0]) * &ps(&[1, -1, 0, 0]);
        assert_eq!(p, ps(&[1, 0, -1, 0]));
    }

    #[test]
    fn geometric_series_times_one_minus_q() {
        let geo = ps(&[1; 11]);
        assert_eq!(&geo * &ps(&[1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0]), PowerSeries::one(Var::Q, 10));
    }

    #[test]
    fn truncation_takes_minimum() {
        let p = &ps(&[1, 2, 3, 4, 5]) * &ps(&[1, 1]);
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let a = ps(&[1, 1]);
        let b = ps(&[1, 1]).with_var(Var::S);
        assert_eq!(
            a.checked_mul(&b),
            Err(SeriesError::VarMismatch { left: Var::Q, right: Var::S })
        );
    }

    #[test]
    fn exp_of_zero() {
        assert_eq!(PowerSeries::<Q>::zero(Var::Q, 6).exp().unwrap(), PowerSeries::one(Var::Q, 6));
    }

    #[test]
    fn log_of_partition_generating_function() {
        let d = 12;
        let mut euler = PowerSeries::one(Var::Q, d);
        for n in 1..=d {
            euler = &euler * &PowerSeries::new(Var::Q, (0..=d).map(|k| {
                if k == 0 { int(1) } else if k == n { int(-1) } else { int(0) }
            }).collect());
        }
        let l = euler.reciprocal().unwrap().log().unwrap();
        for n in 1..=d {
            let sigma: i64 = (1..=n as i64).filter(|k| n as i64 % k == 0).sum();
            assert_eq!(l.coeff(n), &rat(sigma, n as i64));
        }
    }

    #[test]
    fn constant_term_errors() {
        assert_eq!(ps(&[0, 1]).reciprocal(), Err(SeriesError::NonUnitConstant));
        assert_eq!(ps(&[2, 1]).log(), Err(SeriesError::ConstantNotOne));
        assert_eq!(ps(&[1, 1]).exp(), Err(SeriesError::NonzeroConstant));
        assert_eq!(ps(&[1, 1]).compose(&ps(&[1, 1])), Err(SeriesError::NonzeroConstant));
    }

    #[test]
    fn theta_derivative_of_e2_shape() {
        let e2 = ps(&[1, -24, -72, -96]);
        assert_eq!(e2.derive(DeriveMode::ThetaQ), ps(&[0, -24, -144, -288]));
        assert_eq!(e2.derive(DeriveMode::Plain), ps(&[-24, -144, -288]));
    }

    #[test]
    fn compose_with_horner() {
        // 1/(1-g) with g = q + q^2.
        let f = ps(&[1; 6]);
        let g = ps(&[0, 1, 1, 0, 0, 0]);
        assert_eq!(f.compose(&g).unwrap(), ps(&[1, 1, 2, 3, 5, 8]));
    }

    #[test]
    fn compose_respects_outer_order() {
        let f = ps(&[1, 1]);
        let g = ps(&[0, 0, 1, 0, 0, 0, 0]);
        // f known to order 1, g has valuation 2: result exact to order 3.
        assert_eq!(f.compose(&g).unwrap(), ps(&[1, 0, 1, 0]));
    }

    #[test]
    fn reversion_of_q_plus_q2() {
        let f = ps(&[0, 1, 1, 0, 0, 0]);
        let g = f.reversion().unwrap();
        // Catalan numbers with alternating sign.
        assert_eq!(g, ps(&[0, 1, -1, 2, -5, 14]));
        assert_eq!(f.compose(&g).unwrap(), ps(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn dilate_and_rescale() {
        let f = ps(&[1, 2, 3]);
        assert_eq!(f.dilate(2), ps(&[1, 0, 2, 0, 3, 0]));
        assert_eq!(f.rescale(&int(2)), ps(&[1, 4, 12]));
    }

    #[test]
    fn laurent_reciprocal_of_z() {
        let z = LaurentSeries::monomial(Var::Z, 1, int(1), 8);
        let r = z.reciprocal().unwrap();
        assert_eq!(r.valuation(), -1);
        assert_eq!(r.coeff(-1), int(1));
        assert_eq!(r.order(), 6);
        assert!(r.terms().all(|(k, _)| k == -1));
    }

    #[test]
    fn laurent_reciprocal_newton_oracle() {
        // z + c z^3 / 24 with c = 5: 1/(z (1 + u)) with u = c z^2 / 24.
        let c = int(5);
        let a = LaurentSeries::new(Var::Z, 1, vec![int(1), int(0), &c / int(24), int(0), int(0), int(0), int(0)]);
        let r = a.reciprocal().unwrap();
        let u = &c / int(24);
        assert_eq!(r.coeff(-1), int(1));
        assert_eq!(r.coeff(1), -u.clone());
        assert_eq!(r.coeff(3), &u * &u);
        assert_eq!(r.coeff(0), int(0));
        let one = &a * &r;
        assert_eq!(one.coeff(0), int(1));
        assert!(one.terms().all(|(k, _)| k == 0));
        assert_eq!(r.reciprocal().unwrap(), a.truncate(r.reciprocal().unwrap().order()));
    }

    #[test]
    fn laurent_derivative() {
        let a = LaurentSeries::new(Var::Z, -2, vec![int(1), int(0), int(3), int(4)]);
        let d = a.derivative();
        assert_eq!(d.valuation(), -3);
        assert_eq!(d.coeff(-3), int(-2));
        assert_eq!(d.coeff(-1), int(0));
        assert_eq!(d.coeff(0), int(4));
        assert_eq!(d.order(), 0);
    }

    #[test]
    fn laurent_zero_reciprocal_errors() {
        assert_eq!(LaurentSeries::<Q>::zero(Var::Z, 3).reciprocal(), Err(SeriesError::ZeroSeries));
    }
}
