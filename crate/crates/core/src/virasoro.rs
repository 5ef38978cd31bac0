//! Polynomial differential operators on the descendant variables: the
//! Virasoro operators of the elliptic curve and of the Fermat cubic, their
//! bracket, and the quantized operator `S_t` relating ancestors and
//! descendants.
//!
//! Variables `x^i_l` carry a sector `i` and a descendant index `l`. Sectors
//! are `0 = 1`, `1, 2` = the two odd classes, `3` = the top class (`omega` on
//! the curve, `phi` for the cubic).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{factorial, int, Q};
use crate::report::CheckReport;

/// Which set of variables a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Descendant variables of the curve.
    Curve,
    /// Descendant variables of the Fermat cubic.
    Cubic,
    /// Ancestor variables acted on by `S_t`.
    Ancestor,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Curve => "t",
            Family::Cubic => "u",
            Family::Ancestor => "q",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub sector: u8,
    pub index: u32,
}

impl VarId {
    pub fn new(family: Family, sector: u8, index: u32) -> Self {
        assert!(sector < 4, "sector out of range");
        VarId { family, sector, index }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}_{}", self.family, self.sector, self.index)
    }
}

pub type Exponents = BTreeMap<VarId, u32>;

/// Polynomial with rational coefficients in finitely many `VarId`s.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Exponents, Q>,
}

fn degree_of(e: &Exponents) -> u32 {
    e.values().sum()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(Exponents::new(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        Poly::monomial(&[(v, 1)], Q::one())
    }

    pub fn monomial(powers: &[(VarId, u32)], c: Q) -> Self {
        let mut e = Exponents::new();
        for &(v, k) in powers {
            if k > 0 {
                *e.entry(v).or_insert(0) += k;
            }
        }
        let mut p = Poly::zero();
        p.add_term(e, c);
        p
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if let Some(&k) = e.get(&v) {
                let mut e2 = e.clone();
                if k == 1 {
                    e2.remove(&v);
                } else {
                    e2.insert(v, k - 1);
                }
                out.add_term(e2, c * int(k as i64));
            }
        }
        out
    }

    /// Drops terms of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| degree_of(e) <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn relabel(&self, f: impl Fn(VarId) -> VarId) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let e2 = e.iter().map(|(v, k)| (f(*v), *k)).collect();
            out.add_term(e2, c.clone());
        }
        out
    }

    fn variables(&self) -> impl Iterator<Item = VarId> + '_ {
        self.terms.keys().flat_map(|e| e.keys().copied())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = ea.clone();
                for (v, k) in eb {
                    *e.entry(*v).or_insert(0) += k;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (v, k) in e {
                if *k == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// `f -> m f + sum_v c_v df/dv` with polynomial `m` and `c_v`.
///
/// First-order operators of this form are closed under the commutator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOperator {
    multiplier: Poly,
    fields: BTreeMap<VarId, Poly>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator::default()
    }

    pub fn multiplication(m: Poly) -> Self {
        DiffOperator { multiplier: m, fields: BTreeMap::new() }
    }

    pub fn multiplier(&self) -> &Poly {
        &self.multiplier
    }

    pub fn fields(&self) -> &BTreeMap<VarId, Poly> {
        &self.fields
    }

    pub fn field(&self, v: VarId) -> Poly {
        self.fields.get(&v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.multiplier.is_zero() && self.fields.is_empty()
    }

    /// Adds `c * d/dv`.
    pub fn add_field(&mut self, v: VarId, c: &Poly) {
        let sum = &self.field(v) + c;
        if sum.is_zero() {
            self.fields.remove(&v);
        } else {
            self.fields.insert(v, sum);
        }
    }

    pub fn add_multiplier(&mut self, m: &Poly) {
        self.multiplier = &self.multiplier + m;
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = &self.multiplier * f;
        for v in f.variables().collect::<alloc::collections::BTreeSet<_>>() {
            if let Some(c) = self.fields.get(&v) {
                out = &out + &(c * &f.derivative(v));
            }
        }
        out
    }

    /// The vector-field part applied to `f`, without the multiplier.
    fn apply_field(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (v, c) in &self.fields {
            let d = f.derivative(*v);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    pub fn scale(&self, c: &Q) -> DiffOperator {
        let mut out = DiffOperator::multiplication(self.multiplier.scale(c));
        for (v, p) in &self.fields {
            out.add_field(*v, &p.scale(c));
        }
        out
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &DiffOperator) -> DiffOperator {
        let mult = &self.apply_field(&other.multiplier) - &other.apply_field(&self.multiplier);
        let mut out = DiffOperator::multiplication(mult);
        let targets: alloc::collections::BTreeSet<VarId> =
            self.fields.keys().chain(other.fields.keys()).copied().collect();
        for w in targets {
            let c = &self.apply_field(&other.field(w)) - &other.apply_field(&self.field(w));
            out.add_field(w, &c);
        }
        out
    }

    pub fn relabel(&self, f: impl Fn(VarId) -> VarId + Copy) -> DiffOperator {
        let mut out = DiffOperator::multiplication(self.multiplier.relabel(f));
        for (v, c) in &self.fields {
            out.add_field(f(*v), &c.relabel(f));
        }
        out
    }
}

impl Add for &DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let mut out = self.clone();
        out.add_multiplier(&rhs.multiplier);
        for (v, c) in &rhs.fields {
            out.add_field(*v, c);
        }
        out
    }
}

impl Sub for &DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        self + &rhs.scale(&-Q::one())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VirasoroError {
    #[error("Virasoro mode {0} is below -1")]
    InvalidMode(i64),
    #[error("index bound {available} too small for mode {mode}: need at least {needed}")]
    IndexBoundTooSmall { mode: i64, needed: u32, available: u32 },
    #[error("no variables with index in the safe window for modes ({n}, {m}) at bound {bound}")]
    EmptyWindow { n: i64, m: i64, bound: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Curve,
    FermatCubic,
}

impl Theory {
    pub fn family(self) -> Family {
        match self {
            Theory::Curve => Family::Curve,
            Theory::FermatCubic => Family::Cubic,
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Curve => "curve",
            Theory::FermatCubic => "fermat-cubic",
        })
    }
}

/// Rising factorial `a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: i64, n: u32) -> Q {
    (0..n as i64).fold(Q::one(), |acc, j| acc * int(a + j))
}

/// `L_k` on variables of index at most `bound`:
///
/// `-(k+1)! d/dx^0_{k+1} + sum_l w_i(l) x^i_l d/dx^i_{l+k}`, with
/// `w_i(l) = (l)_{k+1}` in sectors 0, 2 and `(l+1)_{k+1}` in sectors 1, 3.
/// `L_{-1}` also carries the multiplication term `x^0_0 x^3_0`.
pub fn virasoro_op(theory: Theory, k: i64, bound: u32) -> Result<DiffOperator, VirasoroError> {
    if k < -1 {
        return Err(VirasoroError::InvalidMode(k));
    }
    let needed = (k + 1) as u32;
    if needed > bound {
        return Err(VirasoroError::IndexBoundTooSmall { mode: k, needed, available: bound });
    }
    let family = theory.family();
    let x = |i: u8, l: u32| VarId::new(family, i, l);
    let mut op = DiffOperator::zero();
    op.add_field(x(0, needed), &Poly::constant(-Q::from_integer(factorial(needed as u64))));
    for i in 0..4u8 {
        let shift = if i % 2 == 0 { 0 } else { 1 };
        for l in 0..=bound as i64 {
            let target = l + k;
            if target < 0 || target > bound as i64 {
                continue;
            }
            let w = pochhammer(l + shift, needed);
            if !w.is_zero() {
                op.add_field(x(i, target as u32), &Poly::var(x(i, l as u32)).scale(&w));
            }
        }
    }
    if k == -1 {
        op.add_multiplier(&Poly::monomial(&[(x(0, 0), 1), (x(3, 0), 1)], Q::one()));
    }
    Ok(op)
}

/// Bracket checks for all `-1 <= n, m <= max_mode`.
pub fn virasoro_suite(max_mode: i64, bound: u32) -> Result<Vec<CheckReport>, VirasoroError> {
    let mut out = Vec::new();
    for n in -1..=max_mode {
        for m in -1..=max_mode {
            out.extend(virasoro_commutator_check(n, m, bound)?);
        }
    }
    for k in -1..=max_mode {
        out.push(relabel_check(k, bound)?);
    }
    Ok(out)
}

/// Largest index for which `[L_n, L_m]` and `L_{n+m}` are unaffected by
/// cutting the variables off at `bound`.
pub fn safe_window(n: i64, m: i64, bound: u32) -> Option<u32> {
    let lowered = bound as i64 - n.max(m).max(0);
    let raised = bound as i64 - [n, m].iter().filter(|&&k| k < 0).count() as i64;
    let w = lowered.min(raised);
    (w >= 0).then_some(w as u32)
}

fn window_monomials(family: Family, window: u32) -> Vec<Poly> {
    let vars: Vec<VarId> = (0..4u8)
        .flat_map(|i| (0..=window).map(move |l| VarId::new(family, i, l)))
        .collect();
    let mut out = alloc::vec![Poly::constant(Q::one())];
    for (a, &va) in vars.iter().enumerate() {
        out.push(Poly::var(va));
        for &vb in &vars[a..] {
            out.push(Poly::monomial(&[(va, 1), (vb, 1)], Q::one()));
        }
    }
    out
}

/// Checks `[L_n, L_m] = (n - m) L_{n+m}` on every monomial of degree at
/// most two in the safe window, for both theories.
pub fn virasoro_commutator_check(
    n: i64,
    m: i64,
    bound: u32,
) -> Result<Vec<CheckReport>, VirasoroError> {
    if n < -1 || m < -1 {
        return Err(VirasoroError::InvalidMode(n.min(m)));
    }
    let window = safe_window(n, m, bound).ok_or(VirasoroError::EmptyWindow { n, m, bound })?;
    let mut reports = Vec::new();
    for theory in [Theory::Curve, Theory::FermatCubic] {
        let ln = virasoro_op(theory, n, bound)?;
        let lm = virasoro_op(theory, m, bound)?;
        // For n = m the right side vanishes and L_(n+m) may not exist.
        let lnm = if n == m {
            DiffOperator::zero()
        } else {
            virasoro_op(theory, n + m, bound)?.scale(&int(n - m))
        };
        let name = format!("Virasoro bracket [L_{n}, L_{m}], {theory}");
        let anchor = "[L_n, L_m] = (n - m) L_(n+m)";
        let failure = window_monomials(theory.family(), window).into_iter().find_map(|f| {
            let lhs = &ln.apply(&lm.apply(&f)) - &lm.apply(&ln.apply(&f));
            let rhs = lnm.apply(&f);
            (lhs != rhs).then(|| format!("on {f}: {lhs} != {rhs}"))
        });
        reports.push(match failure {
            None => CheckReport::pass(&name, anchor)
                .with_detail(format!("monomials of degree <= 2, indices <= {window}")),
            Some(d) => CheckReport::fail(&name, anchor, d),
        });
    }
    Ok(reports)
}

/// The curve operator with each `t^i_l` renamed `u^i_l` equals the cubic
/// operator: the state-space identification preserves sectors.
pub fn relabel_check(k: i64, bound: u32) -> Result<CheckReport, VirasoroError> {
    let curve = virasoro_op(Theory::Curve, k, bound)?;
    let cubic = virasoro_op(Theory::FermatCubic, k, bound)?;
    let moved = curve.relabel(|v| VarId::new(Family::Cubic, v.sector, v.index));
    let name = format!("curve/cubic relabeling, L_{k}");
    let anchor = "curve Virasoro operators map to the cubic ones under t -> u";
    Ok(if moved == cubic {
        CheckReport::pass(&name, anchor)
    } else {
        CheckReport::fail(&name, anchor, format!("index bound {bound}"))
    })
}

/// `S_t = exp(-t (q^0_0)^2 / 2 - t sum_k q^0_{k+1} d/dq^0_k)` on ancestor
/// polynomials of index at most `bound` and degree at most `max_degree`.
///
/// Both parts of the exponent raise `2 deg + (sum of indices)`, so the
/// exponential series stops on the truncated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantization {
    t: Q,
    bound: u32,
    max_degree: u32,
}

impl Quantization {
    pub fn new(t: Q, bound: u32, max_degree: u32) -> Self {
        Quantization { t, bound, max_degree }
    }

    pub fn t(&self) -> &Q {
        &self.t
    }

    fn q0(l: u32) -> VarId {
        VarId::new(Family::Ancestor, 0, l)
    }

    /// The vector-field part `-t sum_k q^0_{k+1} d/dq^0_k`.
    pub fn flow_generator(&self) -> DiffOperator {
        let mut op = DiffOperator::zero();
        for k in 0..self.bound {
            op.add_field(Self::q0(k), &Poly::var(Self::q0(k + 1)).scale(&-self.t.clone()));
        }
        op
    }

    /// The full exponent.
    pub fn generator(&self) -> DiffOperator {
        let mut op = self.flow_generator();
        op.add_multiplier(&Poly::monomial(&[(Self::q0(0), 2)], -&self.t / int(2)));
        op
    }

    fn exponentiate(&self, op: &DiffOperator, f: &Poly) -> Poly {
        let mut sum = f.truncate_degree(self.max_degree);
        let mut term = sum.clone();
        let mut n = 1i64;
        while !term.is_zero() {
            term = op.apply(&term).truncate_degree(self.max_degree).scale(&(Q::one() / int(n)));
            sum = &sum + &term;
            n += 1;
        }
        sum
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        self.exponentiate(&self.generator(), f)
    }

    /// `exp` of the vector-field part alone.
    pub fn apply_flow(&self, f: &Poly) -> Poly {
        self.exponentiate(&self.flow_generator(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn t(i: u8, l: u32) -> VarId {
        VarId::new(Family::Curve, i, l)
    }

    #[test]
    fn poly_basics() {
        let a = &Poly::var(t(0, 1)) + &Poly::constant(int(2));
        let b = &a * &a;
        assert_eq!(b.degree(), Some(2));
        assert_eq!(b.derivative(t(0, 1)), a.scale(&int(2)));
        assert!((&b - &b).is_zero());
        assert_eq!(format!("{}", Poly::monomial(&[(t(3, 2), 2)], rat(1, 2))), "1/2*t3_2^2");
    }

    #[test]
    fn l0_on_linear_monomials() {
        let l0 = virasoro_op(Theory::Curve, 0, 10).unwrap();
        for l in 0..=10u32 {
            let x = Poly::var(t(0, l));
            let expected = if l == 1 {
                &x.scale(&int(1)) - &Poly::constant(int(1))
            } else {
                x.scale(&int(l as i64))
            };
            assert_eq!(l0.apply(&x), expected);
            assert_eq!(l0.apply(&Poly::var(t(3, l))), Poly::var(t(3, l)).scale(&int(l as i64 + 1)));
        }
    }

    #[test]
    fn constants_are_annihilated() {
        for k in -1..=4 {
            let op = virasoro_op(Theory::FermatCubic, k, 8).unwrap();
            assert!(op.apply(&Poly::constant(int(5))).is_zero() || k == -1);
        }
    }

    #[test]
    fn bound_errors() {
        assert_eq!(
            virasoro_op(Theory::Curve, 3, 3),
            Err(VirasoroError::IndexBoundTooSmall { mode: 3, needed: 4, available: 3 })
        );
        assert_eq!(virasoro_op(Theory::Curve, -2, 3), Err(VirasoroError::InvalidMode(-2)));
        assert_eq!(
            virasoro_commutator_check(3, 3, 2),
            Err(VirasoroError::EmptyWindow { n: 3, m: 3, bound: 2 })
        );
        assert!(matches!(
            virasoro_commutator_check(3, 2, 5),
            Err(VirasoroError::IndexBoundTooSmall { mode: 5, .. })
        ));
        assert_eq!(safe_window(3, 3, 2), None);
    }

    #[test]
    fn symbolic_bracket_one_minus_one() {
        let big = 12;
        let l1 = virasoro_op(Theory::Curve, 1, big).unwrap();
        let lm1 = virasoro_op(Theory::Curve, -1, big).unwrap();
        let l0 = virasoro_op(Theory::Curve, 0, big).unwrap();
        let c = l1.commutator(&lm1);
        // Away from the cut the symbolic bracket agrees with 2 L_0.
        let inner = |op: &DiffOperator| {
            let mut o = DiffOperator::multiplication(op.multiplier().clone());
            for (v, p) in op.fields() {
                if v.index < big - 1 {
                    o.add_field(*v, p);
                }
            }
            o
        };
        assert_eq!(inner(&c), inner(&l0.scale(&int(2))));
    }

    #[test]
    fn commutator_examples() {
        for (n, m) in [(1, 0), (2, -1), (2, 2), (0, -1), (3, 1)] {
            let r = virasoro_commutator_check(n, m, 10).unwrap();
            assert!(r.iter().all(|x| x.passed), "{r:?}");
        }
    }

    #[test]
    fn full_suite_at_ten() {
        let r = virasoro_suite(3, 10).unwrap();
        assert_eq!(r.len(), 2 * 25 + 5);
        assert!(r.iter().all(|x| x.passed));
    }

    #[test]
    fn relabeling() {
        for k in -1..=3 {
            assert!(relabel_check(k, 10).unwrap().passed);
        }
    }

    #[test]
    fn quantization_identity_at_zero() {
        let s = Quantization::new(Q::zero(), 4, 4);
        let f = &Poly::var(Quantization::q0(0)) * &Poly::var(VarId::new(Family::Ancestor, 3, 1));
        assert_eq!(s.apply(&f), f);
    }

    #[test]
    fn quantization_flow_on_q00() {
        let s = Quantization::new(rat(2, 3), 1, 3);
        let q0 = Poly::var(Quantization::q0(0));
        let q1 = Poly::var(Quantization::q0(1));
        assert_eq!(s.apply_flow(&q0), &q0 - &q1.scale(&rat(2, 3)));
        let wide = Quantization::new(rat(2, 3), 3, 3);
        let expected = [(0, rat(1, 1)), (1, rat(-2, 3)), (2, rat(2, 9)), (3, rat(-4, 81))]
            .iter()
            .fold(Poly::zero(), |acc, (l, c)| &acc + &Poly::var(Quantization::q0(*l)).scale(c));
        assert_eq!(wide.apply_flow(&q0), expected);
    }

    #[test]
    fn quantization_multiplier_on_one() {
        let s = Quantization::new(int(1), 2, 4);
        let q00 = Poly::monomial(&[(Quantization::q0(0), 2)], Q::one());
        let one = Poly::constant(Q::one());
        let out = s.apply(&one);
        // exp(-q^2/2 - V) 1 starts 1 - q00^2/2 + ...
        assert_eq!(out.terms().get(&Exponents::new()), Some(&Q::one()));
        assert_eq!(out.terms().get(q00.terms().keys().next().unwrap()), Some(&rat(-1, 2)));
    }

    #[test]
    fn quantization_ignores_top_sector() {
        let s = Quantization::new(rat(-5, 7), 3, 4);
        let q3 = VarId::new(Family::Ancestor, 3, 2);
        let f = &(&Poly::var(Quantization::q0(0)) * &Poly::var(Quantization::q0(1)))
            + &Poly::monomial(&[(Quantization::q0(0), 1), (q3, 1)], rat(3, 2));
        let x3 = Poly::var(q3);
        assert_eq!(s.apply(&(&x3 * &f)), (&x3 * &s.apply(&f)).truncate_degree(4));
        assert_eq!(
            s.apply(&f.derivative(q3)).truncate_degree(3),
            s.apply(&f).derivative(q3).truncate_degree(3)
        );
    }
}
