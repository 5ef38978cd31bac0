//! N-point coefficients against the Okounkov–Pandharipande partition sum
//! `<prod tau_{l_i}(omega)>^• = sum_lambda q^|lambda| prod p_{l_i+1}(lambda) / (l_i+1)!`.

use lgcy_core::modular::{bernoulli, euler_function, qm_eval};
use lgcy_core::npoint::{connected_invariant, npoint, stationary_invariant};
use lgcy_core::rational::{int, rat, Q};
use lgcy_core::series::{PowerSeries, Var};
use num_traits::{One, Zero};

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn qpow(x: &Q, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, _| acc * x)
}

fn shifted_power_sum(lambda: &[usize], k: usize) -> Q {
    let half = rat(1, 2);
    let mut acc = Q::zero();
    for (i, &part) in lambda.iter().enumerate() {
        let i = int(i as i64 + 1);
        acc += qpow(&(int(part as i64) - &i + &half), k) - qpow(&(-&i + &half), k);
    }
    let zeta = -bernoulli(k + 1) / int(k as i64 + 1);
    acc + (Q::one() - qpow(&rat(1, 2), k)) * zeta
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |a, k| a * int(k as i64))
}

fn oracle(psi: &[i64], order: usize) -> PowerSeries {
    let desc = PowerSeries::from_fn(Var::Q, order, |d| {
        partitions(d, d)
            .iter()
            .map(|lambda| {
                psi.iter().fold(Q::one(), |acc, &l| {
                    let k = (l + 1) as usize;
                    acc * shifted_power_sum(lambda, k) / factorial(k)
                })
            })
            .sum()
    });
    &desc * &euler_function(order)
}

const ORDER: usize = 8;

fn check(psi: &[i64]) {
    let w: i64 = psi.iter().map(|l| l + 2).sum();
    let p = stationary_invariant(psi, w as u32).unwrap();
    assert!(p.is_homogeneous_of(w as u32), "{psi:?}");
    assert_eq!(qm_eval(&p, ORDER), oracle(psi, ORDER), "legs {psi:?}");
}

#[test]
fn one_point() {
    for l in [0, 2, 4, 6] {
        check(&[l]);
    }
}

#[test]
fn two_point() {
    for psi in [[0, 0], [1, 1], [0, 2], [2, 2], [1, 3], [0, 4]] {
        check(&psi);
    }
}

#[test]
fn three_point() {
    for psi in [[0, 0, 0], [0, 1, 1], [1, 1, 2], [0, 0, 2]] {
        check(&psi);
    }
}

#[test]
fn four_point() {
    check(&[0, 0, 0, 0]);
    check(&[1, 1, 0, 0]);
}

#[test]
fn connected_degree_expansion() {
    let c = qm_eval(&connected_invariant(&[0], 2).unwrap(), 3);
    assert_eq!(c.coeff(0), &rat(-1, 24));
    assert_eq!(c.coeff(1), &int(1));
}

#[test]
fn two_point_closed_form_at_points() {
    use lgcy_core::theta::{log_theta_deriv, prime_form};
    let w = 10u32;
    let f2 = npoint(2, w).unwrap();
    let l1 = log_theta_deriv(1, w as usize).unwrap();
    let theta = prime_form(w as usize + 4).unwrap();
    let inv = theta.reciprocal().unwrap();
    let at = |s: &lgcy_core::theta::ZLaurent, off: i64, x: &Q| {
        let mut acc = lgcy_core::QMPolynomial::zero();
        for (e, c) in s.terms() {
            if e + off <= w as i64 {
                acc = &acc + &c.scale(&lgcy_core::rational::pow(x, e));
            }
        }
        acc
    };
    for (a, b) in [(rat(2, 3), rat(5, 7)), (rat(-3, 2), rat(1, 4))] {
        let closed = (&at(&l1, 1, &a) + &at(&l1, 1, &b)).mul_truncated(&at(&inv, 1, &(&a + &b)), w);
        assert_eq!(f2.evaluate(&[a.clone(), b.clone()]), closed);
    }
}
