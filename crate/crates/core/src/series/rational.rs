use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;

use super::dense::{fmt_poly, Dense};
use super::multi::QSeries;
use crate::error::{Error, Result};

/// Default number of trailing coefficients that must vanish in a rationality check.
pub const DEFAULT_GUARD: usize = 10;

/// numerator(q) / prod_j (1 - q^j)^{e_j}.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: Vec<BigInt>,
    pub denominator: BTreeMap<usize, u32>,
}

impl RationalForm {
    pub fn new(mut numerator: Vec<BigInt>, denominator: BTreeMap<usize, u32>) -> Self {
        while numerator.last().is_some_and(Zero::is_zero) {
            numerator.pop();
        }
        denominator_retain(Self { numerator, denominator })
    }

    pub fn from_i64s(num: &[i64], den: &[(usize, u32)]) -> Self {
        Self::new(num.iter().map(|&x| x.into()).collect(), den.iter().copied().collect())
    }

    pub fn denominator_degree(&self) -> usize {
        self.denominator.iter().map(|(j, e)| j * *e as usize).sum()
    }

    pub fn numerator_degree(&self) -> Option<usize> {
        self.numerator.len().checked_sub(1)
    }

    /// Expands the quotient as a power series up to q^trunc.
    pub fn expand(&self, trunc: usize) -> Dense {
        let mut s = Dense::from_coeffs(self.numerator.iter().cloned(), trunc);
        for (&j, &e) in &self.denominator {
            for _ in 0..e {
                s.div_one_minus_qk(j);
            }
        }
        s
    }

    pub fn numerator_at(&self, q: i64) -> BigInt {
        let q = BigInt::from(q);
        self.numerator.iter().rev().fold(BigInt::zero(), |acc, c| acc * &q + c)
    }

    pub fn numerator_string(&self) -> String {
        fmt_poly(&self.numerator, "q")
    }

    pub fn denominator_string(&self) -> String {
        let mut out = String::new();
        for (j, e) in &self.denominator {
            let base = if *j == 1 { "(1 - q)".to_string() } else { format!("(1 - q^{j})") };
            out.push_str(&base);
            if *e > 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let num: Vec<String> = self.numerator.iter().map(|c| c.to_string()).collect();
        let den: Vec<[u64; 2]> = self.denominator.iter().map(|(j, e)| [*j as u64, *e as u64]).collect();
        json!({ "numerator": num, "denominator": den })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let num = v["numerator"]
            .as_array()
            .ok_or_else(|| bad("numerator must be an array"))?
            .iter()
            .map(|x| x.as_str().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad coefficient")))
            .collect::<Result<Vec<BigInt>>>()?;
        let den: Vec<(usize, u32)> =
            serde_json::from_value(v["denominator"].clone()).map_err(|e| Error::Json(e.to_string()))?;
        Ok(Self::new(num, den.into_iter().collect()))
    }
}

fn denominator_retain(mut r: RationalForm) -> RationalForm {
    r.denominator.retain(|_, e| *e > 0);
    r
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.numerator_string(), self.denominator_string())
    }
}

impl fmt::Debug for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multiplies `s` by the denominator and checks that everything above
/// `max_deg` vanishes up to the truncation of `s`.
pub fn clear_denominator_dense(
    s: &Dense,
    denom: &BTreeMap<usize, u32>,
    max_deg: usize,
    guard: usize,
) -> Result<RationalForm> {
    let den_deg: usize = denom.iter().map(|(j, e)| j * *e as usize).sum();
    let need = max_deg + den_deg + guard;
    if s.trunc() < need {
        return Err(Error::TruncationTooSmall { have: s.trunc(), need });
    }
    let mut num = s.clone();
    for (&j, &e) in denom {
        for _ in 0..e {
            num.mul_one_minus_qk(j);
        }
    }
    for d in max_deg + 1..=num.trunc() {
        let c = num.coeff(d);
        if !c.is_zero() {
            return Err(Error::NotRational { degree: d, value: c.to_string() });
        }
    }
    let c = num.into_coeffs();
    Ok(RationalForm::new(c[..=max_deg.min(c.len() - 1)].to_vec(), denom.clone()))
}

pub fn clear_denominator(
    s: &QSeries,
    denom: &BTreeMap<usize, u32>,
    max_deg: usize,
    guard: usize,
) -> Result<RationalForm> {
    clear_denominator_dense(&s.to_dense()?, denom, max_deg, guard)
}

/// The map j -> 1 for j = 1..=n, i.e. prod_{j<=n} (1 - q^j).
pub fn full_denominator(n: usize) -> BTreeMap<usize, u32> {
    (1..=n).map(|j| (j, 1)).collect()
}
