//! Named identity checks behind a common trait, selectable at runtime.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::flag::{FlagEngine, StrategyRegistry};
use crate::globalize::{punctual_nested_table, resolve_dp6_exponent};
use crate::motive::{motive_3n, motive_3n_from_strata, motive_strata, series_2bullet, series_3bullet};
use crate::quot::{check_fq2_example, check_q_identity, QuotEngine};
use crate::series::DEFAULT_GUARD;

/// Truncation orders for the identity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub q: usize,
    pub s: usize,
    pub v: usize,
    pub guard: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { q: 12, s: 4, v: 4, guard: DEFAULT_GUARD }
    }
}

/// Outcome of one check; `detail` describes the first mismatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Ok(None) when the identity holds, Ok(Some(detail)) on a mismatch.
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>>;
}

fn as_detail(r: Result<impl Sized>) -> Result<Option<String>> {
    match r {
        Ok(_) => Ok(None),
        Err(Error::IdentityFailed { detail, .. }) => Ok(Some(detail)),
        Err(e) => Err(e),
    }
}

struct QGeometric;
impl Identity for QGeometric {
    fn name(&self) -> &'static str {
        "q-geometric"
    }
    fn description(&self) -> &'static str {
        "sum_r Z(q)^r s^r equals 1/(1 - s Z(q))"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        check_q_identity(cfg.q, cfg.s)
    }
}

fn quot(cfg: &VerifyConfig) -> QuotEngine<'static> {
    let mut flag = FlagEngine::default();
    flag.guard = cfg.guard;
    QuotEngine::new(flag)
}

struct FqFunctional;
impl Identity for FqFunctional {
    fn name(&self) -> &'static str {
        "fq-functional"
    }
    fn description(&self) -> &'static str {
        "FQ(q,s,v) (1 - FZ(q,v) s) = 1 in Z[[q,s,v]]"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        quot(cfg).check_fq_functional(cfg.q, cfg.s, cfg.v)
    }
}

struct FqExponential;
impl Identity for FqExponential {
    fn name(&self) -> &'static str {
        "fq-exponential"
    }
    fn description(&self) -> &'static str {
        "FQ_D as a sum of divided derivatives of Q weighted by powers of FZ - 1"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        quot(cfg).check_exponential(cfg.q, cfg.s, cfg.v)
    }
}

struct Fq2Example;
impl Identity for Fq2Example {
    fn name(&self) -> &'static str {
        "fq2-example"
    }
    fn description(&self) -> &'static str {
        "gap-2 series: coloured enumeration, closed form and operator form agree"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        check_fq2_example(cfg.q, cfg.s)
    }
}

struct Motive2n;
impl Identity for Motive2n {
    fn name(&self) -> &'static str {
        "motive-2n-series"
    }
    fn description(&self) -> &'static str {
        "termwise [2,n] motives match the closed generating series"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        as_detail(series_2bullet(cfg.q))
    }
}

struct Motive3n;
impl Identity for Motive3n {
    fn name(&self) -> &'static str {
        "motive-3n-series"
    }
    fn description(&self) -> &'static str {
        "termwise [3,n] motives match the closed generating series"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        as_detail(series_3bullet(cfg.q))
    }
}

struct Strata;
impl Identity for Strata {
    fn name(&self) -> &'static str {
        "motive-strata"
    }
    fn description(&self) -> &'static str {
        "H3 closed form equals the complement and the strata reassemble [3,n]"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        for n in 5..=cfg.q.max(5) {
            if let Some(d) = as_detail(motive_strata(n))? {
                return Ok(Some(d));
            }
            let (a, b) = (motive_3n_from_strata(n)?, motive_3n(n)?);
            if a != b {
                return Ok(Some(format!("n={n}: strata give {a}, closed form {b}")));
            }
        }
        Ok(None)
    }
}

struct StrategyAgreement;
impl Identity for StrategyAgreement {
    fn name(&self) -> &'static str {
        "strategy-agreement"
    }
    fn description(&self) -> &'static str {
        "every registered flag-series strategy gives the same FZ_k for small gaps"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        let reg = StrategyRegistry::default();
        let gaps: [&[usize]; 6] = [&[1], &[2], &[3], &[1, 1], &[2, 1], &[1, 1, 1]];
        for k in gaps {
            let mut seen = None;
            for s in reg.iter() {
                let r = s.ratio(k, cfg.q)?;
                match &seen {
                    None => seen = Some((s.name(), r)),
                    Some((n0, r0)) if *r0 != r => {
                        return Ok(Some(format!("gaps {k:?}: {n0} and {} differ", s.name())))
                    }
                    _ => {}
                }
            }
        }
        Ok(None)
    }
}

struct PunctualTable;
impl Identity for PunctualTable {
    fn name(&self) -> &'static str {
        "punctual-table"
    }
    fn description(&self) -> &'static str {
        "coloured flag counts match the rank-r gap series for r = 1..3"
    }
    fn check(&self, cfg: &VerifyConfig) -> Result<Option<String>> {
        let m = cfg.q.min(8);
        for r in 1..=3 {
            if let Some(d) = as_detail(punctual_nested_table(r, m / 2, m))? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }
}

struct Dp6;
impl Identity for Dp6 {
    fn name(&self) -> &'static str {
        "dp6"
    }
    fn description(&self) -> &'static str {
        "a unique Euler characteristic in 2..=12 reproduces the dP6 coefficient, and it is 6"
    }
    fn check(&self, _cfg: &VerifyConfig) -> Result<Option<String>> {
        match resolve_dp6_exponent() {
            Ok(6) => Ok(None),
            Ok(e) => Ok(Some(format!("resolved to {e}, expected 6"))),
            Err(Error::Unresolved(d)) => Ok(Some(d)),
            Err(e) => Err(e),
        }
    }
}

pub struct IdentityRegistry {
    items: BTreeMap<&'static str, Box<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn empty() -> Self {
        IdentityRegistry { items: BTreeMap::new() }
    }

    pub fn register(&mut self, id: Box<dyn Identity>) {
        self.items.insert(id.name(), id);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Identity> {
        self.items.get(name).map(|b| b.as_ref()).ok_or_else(|| Error::Unknown {
            kind: "identity",
            name: name.to_string(),
            known: self.names().join(", "),
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.items.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.items.values().map(|b| b.as_ref())
    }

    /// Runs the named checks, or all of them when `names` is empty.
    pub fn run(&self, names: &[String], cfg: &VerifyConfig) -> Result<Vec<Outcome>> {
        let selected: Vec<&dyn Identity> = if names.is_empty() {
            self.iter().collect()
        } else {
            names.iter().map(|n| self.get(n)).collect::<Result<_>>()?
        };
        selected
            .into_iter()
            .map(|id| {
                let detail = id.check(cfg)?;
                Ok(Outcome { name: id.name().to_string(), passed: detail.is_none(), detail })
            })
            .collect()
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(QGeometric));
        r.register(Box::new(FqFunctional));
        r.register(Box::new(FqExponential));
        r.register(Box::new(Fq2Example));
        r.register(Box::new(Motive2n));
        r.register(Box::new(Motive3n));
        r.register(Box::new(Strata));
        r.register(Box::new(StrategyAgreement));
        r.register(Box::new(PunctualTable));
        r.register(Box::new(Dp6));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        let reg = IdentityRegistry::default();
        assert!(matches!(reg.get("nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn cheap_identities_hold() {
        let reg = IdentityRegistry::default();
        let cfg = VerifyConfig { q: 8, s: 3, v: 3, guard: DEFAULT_GUARD };
        let names: Vec<String> = ["q-geometric", "motive-2n-series", "motive-3n-series", "motive-strata"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        for o in reg.run(&names, &cfg).unwrap() {
            assert!(o.passed, "{}: {:?}", o.name, o.detail);
        }
    }
}
