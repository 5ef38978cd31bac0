//! N-point functions of the elliptic curve from the theta-derivative
//! determinant formula, and extraction of stationary invariants.
//!
//! `(q)_inf F_N = sum_sigma det M_N(sigma) / Theta(z_1 + ... + z_N)`.
//! Single permutation terms have poles along partial sums such as
//! `z_1 + z_2 = 0` that cancel only in the full sum, so the sum is never
//! expanded term by term. Instead `G = z_1 ... z_N (q)_inf F_N` is evaluated
//! exactly at rational points, where every graded piece of weight `w` is a
//! homogeneous polynomial of degree `w` in the `z_i`, and each piece is
//! recovered by Newton interpolation on a grid with `z_1 = 1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::modular::{EisensteinReducer, Monomial, QMPolynomial};
use crate::rational::{binomial, int, pow, Q};
use crate::report::CheckReport;
use crate::series::Coefficient;
use crate::theta::{self, ThetaError, ZLaurent};

/// Largest number of legs `npoint` accepts.
pub const MAX_LEGS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NpointError {
    #[error("number of legs must be between 1 and {MAX_LEGS}, got {0}")]
    InvalidLegs(usize),
    #[error("psi exponent {0} is below -2")]
    InvalidPsi(i64),
    #[error("z-order too small: need {needed}, have {available}")]
    OrderTooSmall { needed: u32, available: u32 },
    #[error("disconnected value for leg subset {0:#b} is missing")]
    MissingSubtable(u32),
    #[error("interpolated polynomial has a term of negative degree in z_1")]
    Interpolation,
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// Truncated series in `z_1 .. z_N` with quasi-modular coefficients.
///
/// The coefficient of `prod z_i^{e_i}` has weight `sum (e_i + 1)`; every
/// coefficient of weight at most `max_weight` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiZPoly {
    legs: usize,
    max_weight: u32,
    terms: BTreeMap<Vec<i64>, QMPolynomial>,
}

impl MultiZPoly {
    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QMPolynomial)> {
        self.terms.iter()
    }

    /// Coefficient of `prod z_i^{e_i}`.
    pub fn coeff(&self, exps: &[i64]) -> Result<QMPolynomial, NpointError> {
        if exps.len() != self.legs {
            return Err(NpointError::InvalidLegs(exps.len()));
        }
        if let Some(&e) = exps.iter().find(|&&e| e < -1) {
            return Err(NpointError::InvalidPsi(e - 1));
        }
        let w: i64 = exps.iter().map(|e| e + 1).sum();
        if w > self.max_weight as i64 {
            return Err(NpointError::OrderTooSmall {
                needed: w as u32,
                available: self.max_weight,
            });
        }
        Ok(self.terms.get(exps).cloned().unwrap_or_default())
    }

    /// Invariance under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            let mut sorted = e.clone();
            sorted.sort();
            self.terms.get(&sorted) == Some(c)
        })
    }

    /// Value at a rational point (all `z_i` nonzero), keeping the grading.
    pub fn evaluate(&self, point: &[Q]) -> QMPolynomial {
        let mut acc = QMPolynomial::zero();
        for (e, c) in &self.terms {
            let mut x = Q::one();
            for (zi, ei) in point.iter().zip(e) {
                x *= pow(zi, *ei);
            }
            acc.add_assign_ref(&c.scale(&x));
        }
        acc
    }
}

/// Laurent expansion kept as `(exponent, coefficient)` pairs with
/// coefficient weight bounded by the working weight.
struct GradedTerms(Vec<(i64, QMPolynomial)>);

impl GradedTerms {
    fn new(series: &ZLaurent, offset: i64, max_weight: u32) -> Self {
        GradedTerms(
            series
                .terms()
                .filter(|(e, _)| e + offset <= max_weight as i64)
                .map(|(e, c)| (e, c.clone()))
                .collect(),
        )
    }

    fn at(&self, s: &Q) -> QMPolynomial {
        let mut acc = QMPolynomial::zero();
        for (e, c) in &self.0 {
            acc.add_assign_ref(&c.scale(&pow(s, *e)));
        }
        acc
    }
}

/// Everything `npoint` needs from the prime form, truncated by weight.
struct DeterminantData {
    legs: usize,
    max_weight: u32,
    /// `ratios[k-1]` is `Theta^{(k)} / (k! Theta)` for `k = 1 .. legs-1`.
    ratios: Vec<GradedTerms>,
    inv_theta: GradedTerms,
    /// `taylor[k]` is `[z^k] Theta` for `k = 0 .. legs`.
    taylor: Vec<QMPolynomial>,
}

impl DeterminantData {
    fn new(legs: usize, max_weight: u32, reducer: &mut EisensteinReducer) -> Result<Self, NpointError> {
        let dz = max_weight as usize;
        let theta = theta::prime_form_with(dz + legs + 3, reducer)?;
        let ratios = (1..legs)
            .map(|k| GradedTerms::new(&theta::theta_ratio(&theta, k, dz), k as i64, max_weight))
            .collect();
        let inv = theta.reciprocal().map_err(ThetaError::from)?.truncate(dz as i64);
        Ok(DeterminantData {
            legs,
            max_weight,
            ratios,
            inv_theta: GradedTerms::new(&inv, 1, max_weight),
            taylor: (0..=legs as i64).map(|k| theta.coeff(k)).collect(),
        })
    }

    /// `sum_sigma det M_N(sigma) / Theta(sum z)` at a point.
    fn evaluate(&self, z: &[Q], perms: &[Vec<usize>]) -> QMPolynomial {
        let n = self.legs;
        let w = self.max_weight;
        // Ratio values per subset of legs, by bitmask.
        let mut subset_values: BTreeMap<u32, Vec<QMPolynomial>> = BTreeMap::new();
        let mut total = QMPolynomial::zero();
        for perm in perms {
            let mut mat = vec![vec![QMPolynomial::zero(); n]; n];
            for j in 1..n {
                let mask = perm[..n - j].iter().fold(0u32, |m, &i| m | (1 << i));
                let vals = subset_values.entry(mask).or_insert_with(|| {
                    let s: Q = perm[..n - j].iter().map(|&i| z[i].clone()).sum();
                    self.ratios.iter().map(|r| r.at(&s)).collect()
                });
                for i in 1..=n {
                    mat[i - 1][j - 1] = if i > j + 1 {
                        QMPolynomial::zero()
                    } else if i == j + 1 {
                        QMPolynomial::one()
                    } else {
                        vals[j - i].clone()
                    };
                }
            }
            for i in 1..=n {
                mat[i - 1][n - 1] = self.taylor[n - i + 1].clone();
            }
            let rows: Vec<usize> = (0..n).collect();
            total.add_assign_ref(&determinant(&mat, &rows, 0, w));
        }
        let s: Q = z.iter().sum();
        total.mul_truncated(&self.inv_theta.at(&s), w)
    }
}

/// Cofactor expansion down column `col` over the remaining `rows`.
fn determinant(mat: &[Vec<QMPolynomial>], rows: &[usize], col: usize, w: u32) -> QMPolynomial {
    if rows.is_empty() {
        return QMPolynomial::one();
    }
    let mut acc = QMPolynomial::zero();
    for (idx, &r) in rows.iter().enumerate() {
        let entry = &mat[r][col];
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let mut t = entry.mul_truncated(&determinant(mat, &minor, col + 1, w), w);
        if idx % 2 == 1 {
            t = -t;
        }
        acc.add_assign_ref(&t);
    }
    acc
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Values at nodes to monomial coefficients, in place along one axis.
fn interpolate_line(nodes: &[Q], values: &mut [QMPolynomial]) {
    let n = nodes.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let d = values[i].sub_ref(&values[i - 1]);
            values[i] = d.scale(&(nodes[i].clone() - &nodes[i - j]).recip());
        }
    }
    let mut poly = vec![QMPolynomial::zero(); n];
    for k in (0..n).rev() {
        // poly <- poly * (x - nodes[k]) + c_k
        let mut next = vec![QMPolynomial::zero(); n];
        for i in 0..n {
            if poly[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1].add_assign_ref(&poly[i]);
            }
            next[i].add_assign_ref(&poly[i].scale(&-nodes[k].clone()));
        }
        next[0].add_assign_ref(&values[k]);
        poly = next;
    }
    values.clone_from_slice(&poly);
}

/// `(q)_inf F_N` with every coefficient of weight at most `max_weight`.
pub fn npoint(legs: usize, max_weight: u32) -> Result<MultiZPoly, NpointError> {
    npoint_with(legs, max_weight, &mut EisensteinReducer::default())
}

pub fn npoint_with(
    legs: usize,
    max_weight: u32,
    reducer: &mut EisensteinReducer,
) -> Result<MultiZPoly, NpointError> {
    if legs == 0 || legs > MAX_LEGS {
        return Err(NpointError::InvalidLegs(legs));
    }
    let data = DeterminantData::new(legs, max_weight, reducer)?;
    let perms = permutations(legs);
    let dims = legs - 1;
    let size = max_weight as usize + 1;
    let nodes: Vec<Q> = (1..=size as i64).map(int).collect();
    let total = size.pow(dims as u32);

    // G(1, y) is symmetric in y, so evaluate once per sorted node tuple.
    let mut cache: BTreeMap<Vec<usize>, QMPolynomial> = BTreeMap::new();
    let mut grid = Vec::with_capacity(total);
    for flat in 0..total {
        let mut idx: Vec<usize> = (0..dims).map(|d| (flat / size.pow(d as u32)) % size).collect();
        idx.sort();
        let v = cache.entry(idx.clone()).or_insert_with(|| {
            let mut z = vec![Q::one()];
            z.extend(idx.iter().map(|&i| nodes[i].clone()));
            let prod: Q = z.iter().product();
            data.evaluate(&z, &perms).scale(&prod)
        });
        grid.push(v.clone());
    }

    for d in 0..dims {
        let stride = size.pow(d as u32);
        for base in 0..total {
            if !(base / stride).is_multiple_of(size) {
                continue;
            }
            let mut line: Vec<QMPolynomial> = (0..size).map(|k| grid[base + k * stride].clone()).collect();
            interpolate_line(&nodes, &mut line);
            for (k, v) in line.into_iter().enumerate() {
                grid[base + k * stride] = v;
            }
        }
    }

    let mut terms = BTreeMap::new();
    for (flat, coeff) in grid.into_iter().enumerate() {
        let b: Vec<i64> = (0..dims).map(|d| ((flat / size.pow(d as u32)) % size) as i64).collect();
        let deg: i64 = b.iter().sum();
        let mut by_weight: BTreeMap<u32, QMPolynomial> = BTreeMap::new();
        for (m, c) in coeff.terms() {
            by_weight
                .entry(m.weight())
                .or_default()
                .add_term(*m, c);
        }
        for (w, piece) in by_weight {
            let a1 = w as i64 - deg;
            if a1 < 0 {
                return Err(NpointError::Interpolation);
            }
            let mut exps = Vec::with_capacity(legs);
            exps.push(a1 - 1);
            exps.extend(b.iter().map(|x| x - 1));
            terms.insert(exps, piece);
        }
    }
    Ok(MultiZPoly {
        legs,
        max_weight,
        terms,
    })
}

fn check_legs(psi: &[i64]) -> Result<u32, NpointError> {
    if psi.is_empty() || psi.len() > MAX_LEGS {
        return Err(NpointError::InvalidLegs(psi.len()));
    }
    if let Some(&l) = psi.iter().find(|&&l| l < -2) {
        return Err(NpointError::InvalidPsi(l));
    }
    Ok(psi.iter().map(|l| (l + 2) as u32).sum())
}

/// Weight `sum (l_i + 2)` of a stationary correlator.
pub fn stationary_weight(psi: &[i64]) -> Result<u32, NpointError> {
    check_legs(psi)
}

/// Disconnected stationary ancestor correlator `<<prod omega psi^{l_i}>>`,
/// the coefficient of `prod z_i^{l_i + 1}` in `(q)_inf F_N`.
pub fn stationary_invariant(psi: &[i64], dz: u32) -> Result<QMPolynomial, NpointError> {
    let w = check_legs(psi)?;
    if w > dz {
        return Err(NpointError::OrderTooSmall { needed: w, available: dz });
    }
    let exps: Vec<i64> = psi.iter().map(|l| l + 1).collect();
    if psi.len() == 1 {
        let inv = theta::one_over_theta(w.max(1) as usize)?;
        return Ok(inv.coeff(exps[0]));
    }
    npoint(psi.len(), w)?.coeff(&exps)
}

/// Connected correlator of the legs in the full set from disconnected values
/// indexed by leg bitmask: `D(S) = sum_{B ∋ min S} C(B) D(S \ B)`.
pub fn connected_from_disconnected(
    legs: usize,
    disconnected: &BTreeMap<u32, QMPolynomial>,
) -> Result<QMPolynomial, NpointError> {
    if legs == 0 || legs > 31 {
        return Err(NpointError::InvalidLegs(legs));
    }
    let full: u32 = (1u32 << legs) - 1;
    let d = |mask: u32| -> Result<QMPolynomial, NpointError> {
        if mask == 0 {
            return Ok(QMPolynomial::one());
        }
        disconnected
            .get(&mask)
            .cloned()
            .ok_or(NpointError::MissingSubtable(mask))
    };
    let mut conn: BTreeMap<u32, QMPolynomial> = BTreeMap::new();
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut value = d(mask)?;
        // Proper blocks B = low | sub with sub a proper subset of rest.
        let mut sub = rest;
        loop {
            let block = low | sub;
            if block != mask {
                let c = &conn[&block];
                value = &value - &(c * &d(mask ^ block)?);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        conn.insert(mask, value);
    }
    Ok(conn.remove(&full).unwrap_or_default())
}

/// Connected stationary ancestor correlator.
pub fn connected_invariant(psi: &[i64], dz: u32) -> Result<QMPolynomial, NpointError> {
    let w = check_legs(psi)?;
    if w > dz {
        return Err(NpointError::OrderTooSmall { needed: w, available: dz });
    }
    let n = psi.len();
    let mut table = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let sub: Vec<i64> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| psi[i]).collect();
        table.insert(mask, stationary_invariant(&sub, dz)?);
    }
    connected_from_disconnected(n, &table)
}

/// Exponent tuple of a monomial in `(q)_inf F_N` for the given psi powers.
pub fn exponents(psi: &[i64]) -> Vec<i64> {
    psi.iter().map(|l| l + 1).collect()
}

/// `E2^a E4^b E6^c` terms of a polynomial as a sorted list.
pub fn monomials(p: &QMPolynomial) -> Vec<(Monomial, Q)> {
    p.terms().map(|(m, c)| (*m, c.clone())).collect()
}

/// Checks the two-point closed form
/// `(q)_inf F_2 = (L(z_1) + L(z_2)) / Theta(z_1 + z_2)`, `L = Theta'/Theta`,
/// coefficientwise in the pole-free form
/// `G(z_1, z_2) Theta(z_1 + z_2) = z_1 z_2 (L(z_1) + L(z_2))` with
/// `G = z_1 z_2 (q)_inf F_2`, through total degree `max_weight + 1`.
pub fn two_point_closed_form_check(max_weight: u32) -> Result<CheckReport, NpointError> {
    let name = "two-point closed form";
    let anchor = "(q)_inf F_2 = (Theta'/Theta (z1) + Theta'/Theta (z2)) / Theta(z1 + z2)";
    let w = max_weight as i64;
    let f2 = npoint(2, max_weight)?;
    let theta = theta::prime_form(max_weight as usize + 2)?;
    let log_d = theta::log_theta_deriv(1, max_weight as usize + 1)?;
    let g = |b1: i64, b2: i64| f2.coeff(&[b1 - 1, b2 - 1]);
    for total in 0..=w + 1 {
        for a1 in 0..=total {
            let a2 = total - a1;
            let mut lhs = QMPolynomial::zero();
            for k in 1..=total {
                let th = theta.coeff(k);
                if th.is_empty() {
                    continue;
                }
                for j in (k - a2).max(0)..=k.min(a1) {
                    let c = Q::from_integer(binomial(k as u64, j as u64));
                    lhs = &lhs + &(&th * &g(a1 - j, a2 - k + j)?).scale(&c);
                }
            }
            let mut rhs = QMPolynomial::zero();
            if a2 == 1 {
                rhs = &rhs + &log_d.coeff(a1 - 1);
            }
            if a1 == 1 {
                rhs = &rhs + &log_d.coeff(a2 - 1);
            }
            if lhs != rhs {
                return Ok(CheckReport::fail(
                    name,
                    anchor,
                    format!("z1^{a1} z2^{a2}: {lhs} != {rhs}"),
                ));
            }
        }
    }
    Ok(CheckReport::pass(name, anchor).with_detail(format!("through total degree {}", w + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn e2() -> QMPolynomial {
        QMPolynomial::e2()
    }

    #[test]
    fn one_point_matches_reciprocal() {
        let f1 = npoint(1, 10).unwrap();
        let inv = theta::one_over_theta(10).unwrap();
        for e in -1..=9 {
            assert_eq!(f1.coeff(&[e]).unwrap(), inv.coeff(e));
        }
    }

    #[test]
    fn stationary_examples() {
        assert_eq!(stationary_invariant(&[-2], 4).unwrap(), QMPolynomial::one());
        assert_eq!(stationary_invariant(&[0], 4).unwrap(), QMPolynomial::c2());
        let expected = &(&e2() * &e2()).scale(&rat(1, 1152)) + &QMPolynomial::e4().scale(&rat(1, 2880));
        assert_eq!(stationary_invariant(&[2], 4).unwrap(), expected);
        assert!(matches!(
            stationary_invariant(&[4], 4),
            Err(NpointError::OrderTooSmall { needed: 6, available: 4 })
        ));
        assert_eq!(stationary_invariant(&[-3], 4), Err(NpointError::InvalidPsi(-3)));
    }

    #[test]
    fn two_point_connected() {
        let c = connected_invariant(&[0, 0], 8).unwrap();
        let expected = (&(&e2() * &e2()) - &QMPolynomial::e4()).scale(&rat(-1, 288));
        assert_eq!(c, expected);
        let d = stationary_invariant(&[0, 0], 8).unwrap();
        assert_eq!(d, &expected + &QMPolynomial::c2().pow(2));
    }

    #[test]
    fn two_point_symmetric_and_weighted() {
        let f2 = npoint(2, 8).unwrap();
        assert!(f2.is_symmetric());
        for (e, c) in f2.terms() {
            let w: i64 = e.iter().map(|x| x + 1).sum();
            assert!(c.is_homogeneous_of(w as u32));
        }
    }

    #[test]
    fn residue_is_lower_point_function() {
        let f3 = npoint(3, 6).unwrap();
        let f2 = npoint(2, 6).unwrap();
        for (e, c) in f2.terms() {
            assert_eq!(&f3.coeff(&[e[0], e[1], -1]).unwrap(), c);
        }
    }

    #[test]
    fn connected_needs_subtables() {
        let mut t = BTreeMap::new();
        t.insert(0b01, QMPolynomial::one());
        assert_eq!(connected_from_disconnected(2, &t), Err(NpointError::MissingSubtable(0b10)));
    }

    #[test]
    fn invalid_legs() {
        assert_eq!(npoint(0, 4), Err(NpointError::InvalidLegs(0)));
        assert_eq!(npoint(5, 4), Err(NpointError::InvalidLegs(5)));
    }

    #[test]
    fn two_point_closed_form() {
        let r = two_point_closed_form_check(8).unwrap();
        assert!(r.passed, "{r}");
    }
}
