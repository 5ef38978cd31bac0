use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Truncation orders and output settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Truncation order for `q`- and `s`-series.
    pub order: usize,
    /// Order in the elliptic variable `z` for prime-form expansions.
    pub z_order: u32,
    /// Weight bound `4m + 6n` of the Weierstrass tables; `None` picks the
    /// smallest bound a command needs.
    pub b_bound: Option<u32>,
    /// Extra `q`-coefficients checked beyond those that fix a quasi-modular form.
    pub margin: usize,
    /// `None` disables the cache.
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 24,
            z_order: 14,
            b_bound: None,
            margin: 10,
            cache_dir: None,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn b_bound_for(&self, genus: u32) -> u32 {
        self.b_bound.unwrap_or(2 * genus)
    }
}
