//! Eisenstein series and the quasi-modular ring `Q[E2, E4, E6]`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{self, Fit};
use crate::rational::{self, int, rat, Q};
use crate::series::{Coefficient, PowerSeries, SeriesError, Var};

/// Extra q-coefficients `quasimodularize` checks beyond the unknowns.
pub const DEFAULT_MARGIN: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("Eisenstein series need an even weight >= 2, got {0}")]
    InvalidWeight(u32),
    #[error("not quasi-modular of the requested weight: q^{coefficient} disagrees")]
    NotQuasiModular { coefficient: usize },
    #[error("insufficient order: need q-order {needed}, have {available}")]
    InsufficientOrder { needed: usize, available: i64 },
    #[error("E{0} reduced to a polynomial involving E2")]
    NotModular(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `E2^e2 E4^e4 E6^e6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub e2: u32,
    pub e4: u32,
    pub e6: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e2: 0, e4: 0, e6: 0 };

    pub fn new(e2: u32, e4: u32, e6: u32) -> Self {
        Monomial { e2, e4, e6 }
    }

    pub fn weight(&self) -> u32 {
        2 * self.e2 + 4 * self.e4 + 6 * self.e6
    }

    fn times(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.e2 + o.e2, self.e4 + o.e4, self.e6 + o.e6)
    }
}

/// All monomials of weight `w`, ascending.
pub fn weight_basis(w: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if w % 2 == 1 {
        return out;
    }
    for e6 in 0..=w / 6 {
        for e4 in 0..=(w - 6 * e6) / 4 {
            let rest = w - 6 * e6 - 4 * e4;
            out.push(Monomial::new(rest / 2, e4, e6));
        }
    }
    out.sort();
    out
}

/// Polynomial in the formal generators `E2, E4, E6` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QMPolynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl QMPolynomial {
    pub fn constant(c: Q) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QMPolynomial { terms }
    }

    pub fn e2() -> Self {
        Self::term(Monomial::new(1, 0, 0), int(1))
    }

    pub fn e4() -> Self {
        Self::term(Monomial::new(0, 1, 0), int(1))
    }

    pub fn e6() -> Self {
        Self::term(Monomial::new(0, 0, 1), int(1))
    }

    /// `C2 = -E2/24`.
    pub fn c2() -> Self {
        Self::term(Monomial::new(1, 0, 0), rat(-1, 24))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = QMPolynomial::default();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// The common weight of all monomials; `None` if zero or inhomogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    /// True if every monomial has weight `w` (vacuous for zero).
    pub fn is_homogeneous_of(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::weight).max()
    }

    pub fn is_e2_free(&self) -> bool {
        self.terms.keys().all(|m| m.e2 == 0)
    }

    /// Drops monomials of weight above `w`.
    pub fn truncate_weight(&self, w: u32) -> Self {
        QMPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= w)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Product keeping only monomials of weight at most `w`.
    pub fn mul_truncated(&self, rhs: &Self, w: u32) -> Self {
        let mut out = QMPolynomial::default();
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            if wa > w {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if wa + mb.weight() <= w {
                    out.add_term(ma.times(mb), &(ca * cb));
                }
            }
        }
        out
    }

    pub fn scale(&self, r: &Q) -> Self {
        if r.is_zero() {
            return QMPolynomial::default();
        }
        QMPolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QMPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative in the generator `E2`.
    pub fn partial_e2(&self) -> Self {
        let mut out = QMPolynomial::default();
        for (m, c) in &self.terms {
            if m.e2 > 0 {
                out.add_term(Monomial::new(m.e2 - 1, m.e4, m.e6), &(c * int(m.e2 as i64)));
            }
        }
        out
    }

    /// Substitutes series for the three generators.
    pub fn substitute(
        &self,
        e2: &PowerSeries,
        e4: &PowerSeries,
        e6: &PowerSeries,
    ) -> Result<PowerSeries, SeriesError> {
        let order = e2.order().min(e4.order()).min(e6.order());
        let var = e2.var();
        if order < 0 {
            return Ok(PowerSeries::new(var, Vec::new()));
        }
        let order = order as usize;
        let pows = |g: &PowerSeries, n: u32| -> Result<Vec<PowerSeries>, SeriesError> {
            let g = g.truncate(order);
            let mut v = vec![PowerSeries::one(var, order)];
            for i in 1..=n as usize {
                let next = v[i - 1].checked_mul(&g)?;
                v.push(next);
            }
            Ok(v)
        };
        let max = |f: fn(&Monomial) -> u32| self.terms.keys().map(f).max().unwrap_or(0);
        let p2 = pows(e2, max(|m| m.e2))?;
        let p4 = pows(e4, max(|m| m.e4))?;
        let p6 = pows(e6, max(|m| m.e6))?;
        let mut acc = PowerSeries::zero(var, order);
        for (m, c) in &self.terms {
            let t = p2[m.e2 as usize].checked_mul(&p4[m.e4 as usize])?;
            let t = t.checked_mul(&p6[m.e6 as usize])?;
            acc = acc.checked_add(&t.scale(c))?;
        }
        Ok(acc)
    }
}

impl Add for &QMPolynomial {
    type Output = QMPolynomial;
    fn add(self, rhs: Self) -> QMPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &QMPolynomial {
    type Output = QMPolynomial;
    fn sub(self, rhs: Self) -> QMPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &QMPolynomial {
    type Output = QMPolynomial;
    fn mul(self, rhs: Self) -> QMPolynomial {
        let mut out = QMPolynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.times(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &QMPolynomial {
    type Output = QMPolynomial;
    fn neg(self) -> QMPolynomial {
        self.scale(&int(-1))
    }
}

impl Add for QMPolynomial {
    type Output = QMPolynomial;
    fn add(self, rhs: Self) -> QMPolynomial {
        &self + &rhs
    }
}

impl Sub for QMPolynomial {
    type Output = QMPolynomial;
    fn sub(self, rhs: Self) -> QMPolynomial {
        &self - &rhs
    }
}

impl Mul for QMPolynomial {
    type Output = QMPolynomial;
    fn mul(self, rhs: Self) -> QMPolynomial {
        &self * &rhs
    }
}

impl Neg for QMPolynomial {
    type Output = QMPolynomial;
    fn neg(self) -> QMPolynomial {
        -&self
    }
}

impl Zero for QMPolynomial {
    fn zero() -> Self {
        QMPolynomial::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QMPolynomial {
    fn one() -> Self {
        QMPolynomial::constant(int(1))
    }
}

impl Coefficient for QMPolynomial {
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
        QMPolynomial::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::ONE) {
                return Some(QMPolynomial::constant(c.recip()));
            }
        }
        None
    }
    fn from_rational(r: Q) -> Self {
        QMPolynomial::constant(r)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl fmt::Display for QMPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&rational::to_string(c))?;
            for (name, e) in [("E2", m.e2), ("E4", m.e4), ("E6", m.e6)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Q {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(int(1));
            continue;
        }
        let mut acc = Q::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += Q::from_integer(rational::binomial(m as u64 + 1, k as u64)) * bk;
        }
        b.push(-acc / int(m as i64 + 1));
    }
    b.pop().unwrap_or_else(Q::zero)
}

/// `sigma_k(n)`, the sum of `d^k` over divisors `d` of `n`.
pub fn divisor_sigma(n: u64, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                acc += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    acc
}

/// `E_k(q) = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n` to order `order`.
pub fn eisenstein(k: u32, order: usize) -> Result<PowerSeries, ModularError> {
    if k < 2 || k % 2 == 1 {
        return Err(ModularError::InvalidWeight(k));
    }
    let factor = -int(2 * k as i64) / bernoulli(k as usize);
    Ok(PowerSeries::from_fn(Var::Q, order, |n| {
        if n == 0 {
            int(1)
        } else {
            &factor * Q::from_integer(divisor_sigma(n as u64, k - 1))
        }
    }))
}

/// `prod_{n >= 1} (1 - q^n)` to order `order`.
pub fn euler_function(order: usize) -> PowerSeries {
    let mut c = vec![Q::zero(); order + 1];
    c[0] = int(1);
    for n in 1..=order {
        for k in (n..=order).rev() {
            let prev = c[k - n].clone();
            c[k] -= prev;
        }
    }
    PowerSeries::new(Var::Q, c)
}

/// q-expansion of a quasi-modular polynomial.
pub fn qm_eval(p: &QMPolynomial, order: usize) -> PowerSeries {
    let g = |k| eisenstein(k, order).expect("even weight");
    p.substitute(&g(2), &g(4), &g(6))
        .expect("all generators are q-series")
}

/// Ramanujan derivation: the image of `q d/dq` on the ring.
pub fn ramanujan_derive(p: &QMPolynomial) -> QMPolynomial {
    let e2 = QMPolynomial::e2();
    let e4 = QMPolynomial::e4();
    let e6 = QMPolynomial::e6();
    let d2 = (&(&e2 * &e2) - &e4).scale(&rat(1, 12));
    let d4 = (&(&e2 * &e4) - &e6).scale(&rat(1, 3));
    let d6 = (&(&e2 * &e6) - &(&e4 * &e4)).scale(&rat(1, 2));
    let mut out = QMPolynomial::default();
    for (m, c) in &p.terms {
        for (e, d, dm) in [
            (m.e2, &d2, Monomial::new(1, 0, 0)),
            (m.e4, &d4, Monomial::new(0, 1, 0)),
            (m.e6, &d6, Monomial::new(0, 0, 1)),
        ] {
            if e == 0 {
                continue;
            }
            let rest = Monomial::new(m.e2 - dm.e2, m.e4 - dm.e4, m.e6 - dm.e6);
            let t = &QMPolynomial::term(rest, c * int(e as i64)) * d;
            out.add_assign_ref(&t);
        }
    }
    out
}

/// Smallest q-order at which `quasimodularize` can fit and verify weight `w`.
pub fn required_order(w: u32, margin: usize) -> usize {
    (weight_basis(w).len() + margin).saturating_sub(1)
}

/// Expresses a q-series as a weight-`w` quasi-modular polynomial, verifying
/// the fit on every available coefficient.
pub fn quasimodularize(f: &PowerSeries, w: u32, margin: usize) -> Result<QMPolynomial, ModularError> {
    if f.var() != Var::Q {
        return Err(SeriesError::VarMismatch { left: f.var(), right: Var::Q }.into());
    }
    let basis = weight_basis(w);
    let needed = required_order(w, margin);
    if f.order() < needed as i64 {
        return Err(ModularError::InsufficientOrder {
            needed,
            available: f.order(),
        });
    }
    if basis.is_empty() {
        return match f.valuation() {
            None => Ok(QMPolynomial::default()),
            Some(k) => Err(ModularError::NotQuasiModular { coefficient: k }),
        };
    }
    let order = f.order() as usize;
    let columns: Vec<PowerSeries> = {
        let e2 = eisenstein(2, order)?;
        let e4 = eisenstein(4, order)?;
        let e6 = eisenstein(6, order)?;
        basis
            .iter()
            .map(|m| QMPolynomial::term(*m, int(1)).substitute(&e2, &e4, &e6))
            .collect::<Result<_, _>>()?
    };
    let rows: Vec<Vec<Q>> = (0..=order)
        .map(|k| columns.iter().map(|c| c.coeff(k).clone()).collect())
        .collect();
    match linalg::fit_columns(&rows, f.coeffs()) {
        Fit::Solved(x) => Ok(QMPolynomial::from_terms(basis.into_iter().zip(x))),
        Fit::Inconsistent { row, .. } => Err(ModularError::NotQuasiModular { coefficient: row }),
        Fit::RankDeficient => Err(ModularError::InsufficientOrder {
            needed: order + 1,
            available: f.order(),
        }),
    }
}

/// Memoized reduction of `E_k`, `k >= 4`, to a polynomial in `E4, E6`.
#[derive(Clone, Debug)]
pub struct EisensteinReducer {
    margin: usize,
    cache: BTreeMap<u32, QMPolynomial>,
}

impl Default for EisensteinReducer {
    fn default() -> Self {
        Self::new(DEFAULT_MARGIN)
    }
}

impl EisensteinReducer {
    pub fn new(margin: usize) -> Self {
        EisensteinReducer {
            margin,
            cache: BTreeMap::new(),
        }
    }

    pub fn reduce(&mut self, k: u32) -> Result<QMPolynomial, ModularError> {
        if k < 4 || k % 2 == 1 {
            return Err(ModularError::InvalidWeight(k));
        }
        if let Some(p) = self.cache.get(&k) {
            return Ok(p.clone());
        }
        let order = required_order(k, self.margin);
        let p = quasimodularize(&eisenstein(k, order)?, k, self.margin)?;
        if !p.is_e2_free() {
            return Err(ModularError::NotModular(k));
        }
        self.cache.insert(k, p.clone());
        Ok(p)
    }
}

/// `E_k` for even `k >= 4` as a polynomial in `E4, E6`.
pub fn reduce_e2k(k: u32) -> Result<QMPolynomial, ModularError> {
    EisensteinReducer::default().reduce(k)
}
