//! Experiment configuration.
//!
//! The on-disk format is TOML with this schema (all keys optional; the
//! defaults below apply):
//!
//! ```toml
//! seed = 17                      # 64-bit; fixes every fuzzed sample
//! k_tau = 256                    # truncation for the tau functional
//! range_max = 64                 # generator index cap for cover/sandwich sweeps
//! family_len = 128               # tangent terms built for tree pipelines
//! fuzz_budget = 1000             # samples per fuzzed invariant
//! snap_denominator_bound = "18446744073709551616"   # 2^64, as a string
//! output_dir = "out"
//! n_schedule = [2, 3, 4]         # tree depths per bad cell
//! alpha_policy = "optimized"     # or "fixed:3/4"
//! ab_grid = [                    # exponent pairs, exact "p/q" strings
//!   ["1/2", "1/2"], ["1/2", "1"], ["1/2", "2"],
//!   ["1", "1/2"], ["1", "1"], ["1", "2"],
//!   ["2", "1/2"], ["2", "1"], ["2", "2"],
//! ]
//! ```
//!
//! Rationals are stored as exact "p/q" strings so the file round-trips
//! losslessly.

use gmax_core::scalar::parse_scalar;
use gmax_core::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub k_tau: usize,
    pub range_max: u64,
    pub family_len: u64,
    pub fuzz_budget: usize,
    /// Denominator cap for snapping irrational inputs, decimal string
    /// (values up to 2^127 are accepted).
    pub snap_denominator_bound: String,
    pub output_dir: String,
    pub n_schedule: Vec<u32>,
    /// "optimized" re-derives the scaling factor from each window's tau;
    /// "fixed:p/q" forces one value.
    pub alpha_policy: String,
    /// Exponent pairs (a, b) as exact "p/q" strings.
    pub ab_grid: Vec<[String; 2]>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let grid_vals = ["1/2", "1", "2"];
        let mut ab_grid = Vec::new();
        for a in grid_vals {
            for b in grid_vals {
                ab_grid.push([a.to_string(), b.to_string()]);
            }
        }
        ExperimentConfig {
            seed: 17,
            k_tau: 256,
            range_max: 64,
            family_len: 128,
            fuzz_budget: 1000,
            snap_denominator_bound: "18446744073709551616".into(),
            output_dir: "out".into(),
            n_schedule: vec![2, 3, 4],
            alpha_policy: "optimized".into(),
            ab_grid,
        }
    }
}

/// Scaling-factor policy parsed out of the config string.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaPolicy {
    Optimized,
    Fixed(Scalar),
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<ExperimentConfig, String> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| format!("config parse error: {e}"))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), String> {
        self.alpha_policy()?;
        self.snap_bound()?;
        self.grid()?;
        if self.n_schedule.is_empty() {
            return Err("n_schedule must be nonempty".into());
        }
        if self.n_schedule.iter().any(|&n| n == 0 || n > 12) {
            return Err("n_schedule entries must be in 1..=12".into());
        }
        if self.range_max == 0 || self.range_max > 256 {
            return Err("range_max must be in 1..=256".into());
        }
        if self.family_len < 4 {
            return Err("family_len must be at least 4".into());
        }
        Ok(())
    }

    pub fn alpha_policy(&self) -> Result<AlphaPolicy, String> {
        if self.alpha_policy == "optimized" {
            return Ok(AlphaPolicy::Optimized);
        }
        if let Some(rest) = self.alpha_policy.strip_prefix("fixed:") {
            let a = parse_scalar(rest)?;
            return Ok(AlphaPolicy::Fixed(a));
        }
        Err(format!(
            "alpha_policy must be \"optimized\" or \"fixed:p/q\", got {:?}",
            self.alpha_policy
        ))
    }

    pub fn snap_bound(&self) -> Result<u128, String> {
        self.snap_denominator_bound
            .parse::<u128>()
            .map_err(|e| format!("snap_denominator_bound: {e}"))
    }

    /// The exponent grid parsed into exact rationals, config order.
    pub fn grid(&self) -> Result<Vec<(Scalar, Scalar)>, String> {
        self.ab_grid
            .iter()
            .map(|[a, b]| Ok((parse_scalar(a)?, parse_scalar(b)?)))
            .collect()
    }
}
