//! Exact Gaussian elimination over the rationals.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Q;

/// Result of fitting `A x = b` with more rows than unknowns.
#[derive(Clone, Debug, PartialEq)]
pub enum Fit {
    /// Unique solution consistent with every row.
    Solved(Vec<Q>),
    /// The columns are dependent on the rows supplied.
    RankDeficient,
    /// Index of the first row the least-index solution does not satisfy.
    Inconsistent { row: usize, solution: Vec<Q> },
}

/// Solves using the first linearly independent rows (in row order) and then
/// checks every row against that solution.
pub fn fit_columns(rows: &[Vec<Q>], rhs: &[Q]) -> Fit {
    let cols = rows.first().map_or(0, Vec::len);
    // Incremental row echelon form: keep reduced pivot rows.
    let mut pivots: Vec<(usize, Vec<Q>, Q)> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        if pivots.len() == cols {
            break;
        }
        let mut v = row.clone();
        let mut b = rhs[r].clone();
        for (p, prow, pb) in &pivots {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(prow) {
                    *x -= &f * y;
                }
                b -= &f * pb;
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            b *= &inv;
            // Keep earlier pivots reduced in the new column.
            for (_, prow, pb) in pivots.iter_mut() {
                if !prow[p].is_zero() {
                    let f = prow[p].clone();
                    for (x, y) in prow.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                    *pb -= &f * &b;
                }
            }
            pivots.push((p, v, b));
        }
    }
    if pivots.len() < cols {
        return Fit::RankDeficient;
    }
    let mut solution = alloc::vec![Q::zero(); cols];
    for (p, _, b) in &pivots {
        solution[*p] = b.clone();
    }
    for (r, row) in rows.iter().enumerate() {
        let lhs = row
            .iter()
            .zip(&solution)
            .fold(Q::zero(), |acc, (a, x)| acc + a * x);
        if lhs != rhs[r] {
            return Fit::Inconsistent { row: r, solution };
        }
    }
    Fit::Solved(solution)
}
