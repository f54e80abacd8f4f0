use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{fz_lambda_ratio, kappa_problem};
use crate::error::{Error, Result};
use crate::partition::{FlagOracle, FlagSpec};
use crate::series::Dense;
use crate::shapes::{enum_skew_classes, rp_count};

/// A way of computing FZ_k(q) / Z(q) for a gap vector k.
pub trait FlagSeriesStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// FZ_k / Z truncated at q^n.
    fn ratio(&self, k: &[usize], n: usize) -> Result<Dense>;
}

/// Backwards recursion over offsets with the remaining label counts as state.
pub struct PositionDp;

impl FlagSeriesStrategy for PositionDp {
    fn name(&self) -> &'static str {
        "position-dp"
    }

    fn description(&self) -> &'static str {
        "placement recursion over offsets, grouped by north-west data"
    }

    fn ratio(&self, k: &[usize], n: usize) -> Result<Dense> {
        if k.iter().sum::<usize>() == 0 {
            return Ok(Dense::one(n));
        }
        Ok(kappa_problem(k).solve(n))
    }
}

/// Explicit sum of RP(shape; k) * FZ_shape / Z over every translation class.
pub struct ShapeSum;

impl FlagSeriesStrategy for ShapeSum {
    fn name(&self) -> &'static str {
        "shape-sum"
    }

    fn description(&self) -> &'static str {
        "sum over all skew classes with memoized per-shape series"
    }

    fn ratio(&self, k: &[usize], n: usize) -> Result<Dense> {
        let total: usize = k.iter().sum();
        if total == 0 {
            return Ok(Dense::one(n));
        }
        let classes = enum_skew_classes(total);
        let parts = classes
            .par_iter()
            .map(|s| {
                let w = rp_count(s, k)?;
                if w.is_zero() {
                    return Ok(Dense::zero(n));
                }
                Ok(fz_lambda_ratio(s, n).scale(&w))
            })
            .collect::<Result<Vec<Dense>>>()?;
        Ok(parts.iter().fold(Dense::zero(n), |acc, d| acc.add(d)))
    }
}

/// Direct chain counting, divided by Z. Exponential; meant for small n.
pub struct OracleStrategy;

impl FlagSeriesStrategy for OracleStrategy {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn description(&self) -> &'static str {
        "brute-force enumeration of nested partitions"
    }

    fn ratio(&self, k: &[usize], n: usize) -> Result<Dense> {
        let mut oracle = FlagOracle::new();
        let counts: Vec<BigInt> = (0..=n).map(|m| oracle.count(&FlagSpec::from_gaps(m, k))).collect();
        Ok(Dense::from_coeffs(counts, n).mul(&Dense::euler(n)))
    }
}

pub const DEFAULT_STRATEGY: &str = "position-dp";

pub struct StrategyRegistry {
    entries: Vec<Box<dyn FlagSeriesStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: vec![] }
    }

    pub fn register(&mut self, s: Box<dyn FlagSeriesStrategy>) {
        self.entries.retain(|e| e.name() != s.name());
        self.entries.push(s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn FlagSeriesStrategy> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::Unknown { kind: "strategy", name: name.to_string(), known: self.names().join(", ") }
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn FlagSeriesStrategy> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(PositionDp));
        r.register(Box::new(ShapeSum));
        r.register(Box::new(OracleStrategy));
        r
    }
}
