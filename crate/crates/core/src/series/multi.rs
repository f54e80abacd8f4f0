use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::dense::Dense;
use crate::error::{invalid, Error, Result};

pub const VARIABLE_NAMES: [&str; 6] = ["q", "s", "v", "t", "q1", "q2"];

/// Sparse truncated power series in one to three named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    vars: Vec<String>,
    trunc: Vec<u32>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl QSeries {
    pub fn zero(vars: &[&str], trunc: &[u32]) -> Result<Self> {
        if vars.is_empty() || vars.len() > 3 {
            return invalid(format!("expected 1 to 3 variables, got {}", vars.len()));
        }
        if vars.len() != trunc.len() {
            return invalid("one truncation per variable is required");
        }
        for (i, v) in vars.iter().enumerate() {
            if !VARIABLE_NAMES.contains(v) {
                return invalid(format!("unknown variable `{v}`"));
            }
            if vars[..i].contains(v) {
                return invalid(format!("repeated variable `{v}`"));
            }
        }
        Ok(QSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            trunc: trunc.to_vec(),
            terms: BTreeMap::new(),
        })
    }

    pub fn one(vars: &[&str], trunc: &[u32]) -> Result<Self> {
        let mut s = Self::zero(vars, trunc)?;
        s.terms.insert(vec![0; vars.len()], BigInt::one());
        Ok(s)
    }

    /// Builds a series from (exponents, coefficient) pairs; terms beyond the
    /// truncation are dropped and repeated exponents are summed.
    pub fn from_terms<I>(vars: &[&str], trunc: &[u32], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut s = Self::zero(vars, trunc)?;
        for (e, c) in terms {
            if e.len() != vars.len() {
                return invalid("exponent tuple has the wrong length");
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn from_dense(d: &Dense, var: &str) -> Result<Self> {
        let terms = d
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone()));
        Self::from_terms(&[var], &[d.trunc() as u32], terms)
    }

    pub fn to_dense(&self) -> Result<Dense> {
        if self.vars.len() != 1 {
            return invalid("not a single-variable series");
        }
        let t = self.trunc[0] as usize;
        let mut c = vec![BigInt::zero(); t + 1];
        for (e, x) in &self.terms {
            c[e[0] as usize] = x.clone();
        }
        Ok(Dense::from_coeffs(c, t))
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> &[u32] {
        &self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn fits(&self, e: &[u32]) -> bool {
        e.iter().zip(&self.trunc).all(|(a, t)| a <= t)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() || !self.fits(&e) {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &QSeries) -> Result<Vec<u32>> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(self.trunc.iter().zip(&other.trunc).map(|(a, b)| *a.min(b)).collect())
    }

    fn with_trunc(&self, trunc: Vec<u32>) -> QSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().zip(&trunc).all(|(a, t)| a <= t))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        QSeries { vars: self.vars.clone(), trunc, terms }
    }

    pub fn truncate(&self, trunc: &[u32]) -> Result<QSeries> {
        if trunc.len() != self.vars.len() {
            return invalid("one truncation per variable is required");
        }
        let t = trunc.iter().zip(&self.trunc).map(|(a, b)| *a.min(b)).collect();
        Ok(self.with_trunc(t))
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        let t = self.check_vars(other)?;
        let mut out = self.with_trunc(t);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        QSeries { vars: self.vars.clone(), trunc: self.trunc.clone(), terms }
    }

    pub fn scale(&self, k: &BigInt) -> QSeries {
        let mut out = self.with_trunc(self.trunc.clone());
        if k.is_zero() {
            out.terms.clear();
        } else {
            for c in out.terms.values_mut() {
                *c *= k;
            }
        }
        out
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        let t = self.check_vars(other)?;
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                if e.iter().zip(&t).all(|(a, b)| a <= b) {
                    *acc.entry(e).or_default() += ca * cb;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(QSeries { vars: self.vars.clone(), trunc: t, terms: acc })
    }

    /// Mixed-radix index of an exponent tuple inside the truncation box.
    fn index(&self, e: &[u32]) -> usize {
        e.iter().zip(&self.trunc).fold(0, |acc, (a, t)| acc * (*t as usize + 1) + *a as usize)
    }

    fn box_tuples(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for t in &self.trunc {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=*t).map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn inv(&self) -> Result<QSeries> {
        let zero = vec![0; self.vars.len()];
        let a0 = self.coeff(&zero);
        if !(a0.is_one() || (-&a0).is_one()) {
            return Err(Error::NonUnit(a0.to_string()));
        }
        let tuples = self.box_tuples();
        let mut b = vec![BigInt::zero(); tuples.len()];
        let rest: Vec<_> = self.terms.iter().filter(|(e, _)| **e != zero).collect();
        // Lexicographic order visits e - f before e for every nonzero f.
        for e in &tuples {
            let mut acc = if *e == zero { BigInt::one() } else { BigInt::zero() };
            for (f, c) in &rest {
                if f.iter().zip(e).all(|(a, b)| a <= b) {
                    let d: Vec<u32> = e.iter().zip(f.iter()).map(|(a, b)| a - b).collect();
                    acc -= *c * &b[self.index(&d)];
                }
            }
            b[self.index(e)] = &a0 * acc;
        }
        let terms = tuples.into_iter().zip(b).filter(|(_, c)| !c.is_zero()).collect();
        Ok(QSeries { vars: self.vars.clone(), trunc: self.trunc.clone(), terms })
    }

    pub fn pow(&self, mut e: u64) -> QSeries {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let mut acc = QSeries::one(&vars, &self.trunc).expect("validated variables");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same variables");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same variables");
            }
        }
        acc
    }

    /// Substitutes the series for one variable: collects the coefficient of
    /// `var`^k as a series in the remaining variables.
    pub fn slice(&self, var: &str, k: u32) -> Result<QSeries> {
        let pos = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::Invalid(format!("no variable `{var}`")))?;
        if self.vars.len() == 1 {
            return invalid("cannot slice a single-variable series");
        }
        let vars: Vec<&str> =
            self.vars.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, v)| v.as_str()).collect();
        let trunc: Vec<u32> =
            self.trunc.iter().enumerate().filter(|(i, _)| *i != pos).map(|(_, t)| *t).collect();
        let terms = self.terms.iter().filter(|(e, _)| e[pos] == k).map(|(e, c)| {
            let mut e2 = e.clone();
            e2.remove(pos);
            (e2, c.clone())
        });
        QSeries::from_terms(&vars, &trunc, terms)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut row: Vec<Value> = e.iter().map(|a| json!(a)).collect();
                row.push(json!(c.to_string()));
                Value::Array(row)
            })
            .collect();
        json!({ "variables": self.vars, "truncation": self.trunc, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<QSeries> {
        let bad = |m: &str| Error::Json(m.to_string());
        let vars: Vec<String> = serde_json::from_value(v["variables"].clone())
            .map_err(|e| Error::Json(e.to_string()))?;
        let trunc: Vec<u32> = serde_json::from_value(v["truncation"].clone())
            .map_err(|e| Error::Json(e.to_string()))?;
        let vars_ref: Vec<&str> = vars.iter().map(String::as_str).collect();
        let rows = v["terms"].as_array().ok_or_else(|| bad("terms must be an array"))?;
        let mut terms = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("term must be an array"))?;
            let (coef, exps) = row.split_last().ok_or_else(|| bad("empty term"))?;
            let e = exps
                .iter()
                .map(|x| x.as_u64().map(|a| a as u32).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<Vec<u32>>>()?;
            let c: BigInt = coef
                .as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("coefficient must be a decimal string"))?;
            terms.push((e, c));
        }
        QSeries::from_terms(&vars_ref, &trunc, terms)
    }
}

pub fn ps_add(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.add(b)
}

pub fn ps_mul(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.mul(b)
}

pub fn ps_inv(a: &QSeries) -> Result<QSeries> {
    a.inv()
}

pub fn ps_pow(a: &QSeries, e: u64) -> QSeries {
    a.pow(e)
}

/// True when the constant coefficient is +1 or -1.
pub fn is_unit(a: &QSeries) -> bool {
    let c = a.coeff(&vec![0; a.variables().len()]);
    c.abs().is_one()
}
