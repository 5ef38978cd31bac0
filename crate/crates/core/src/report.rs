//! Pass/fail records produced by the verification checks.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use crate::rational;
use crate::series::{Coefficient, PowerSeries};

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Which identity or property is being checked, in words.
    pub anchor: String,
    pub passed: bool,
    /// First failing coefficient, or a note on the outcome.
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(name: &str, anchor: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: true,
            detail: None,
        }
    }

    pub fn fail(name: &str, anchor: &str, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: false,
            detail: Some(detail),
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }

    /// Passes when `lhs` and `rhs` agree to the smaller truncation order.
    pub fn series_equal(name: &str, anchor: &str, lhs: &PowerSeries, rhs: &PowerSeries) -> Self {
        match first_difference(lhs, rhs) {
            None => Self::pass(name, anchor),
            Some(k) => Self::fail(
                name,
                anchor,
                format!(
                    "{}^{k}: {} != {}",
                    lhs.var(),
                    rational::to_string(lhs.coeff(k)),
                    rational::to_string(rhs.coeff(k))
                ),
            ),
        }
    }

    /// Passes when `residual` vanishes to its order.
    pub fn series_zero(name: &str, anchor: &str, residual: &PowerSeries) -> Self {
        match residual.valuation() {
            None => Self::pass(name, anchor),
            Some(k) => Self::fail(
                name,
                anchor,
                format!("{}^{k}: residual {}", residual.var(), rational::to_string(residual.coeff(k))),
            ),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({})", self.name, self.anchor)?;
        if let Some(d) = &self.detail {
            write!(f, ": {d}")?;
        }
        Ok(())
    }
}

/// Index of the first coefficient where two series differ, up to the smaller
/// truncation order.
pub fn first_difference<C: Coefficient>(a: &PowerSeries<C>, b: &PowerSeries<C>) -> Option<usize> {
    a.coeffs().iter().zip(b.coeffs()).position(|(x, y)| x != y)
}

/// True if every report passed.
pub fn all_passed<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> bool {
    reports.into_iter().all(|r| r.passed)
}
