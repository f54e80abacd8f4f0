use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::Value;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::dense::fmt_poly;
use crate::error::{Error, Result};

/// Polynomial in the Lefschetz class L; index i holds the coefficient of L^i.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly(Vec<BigInt>);

impl LPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        LPoly(c)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        LPoly(vec![])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(k: impl Into<BigInt>) -> Self {
        Self::new(vec![k.into()])
    }

    /// L^k.
    pub fn l(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        LPoly(c)
    }

    /// [P^n] = 1 + L + ... + L^n.
    pub fn proj(n: usize) -> Self {
        LPoly(vec![BigInt::one(); n + 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    /// Multiplies by L^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        LPoly(c)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::new(self.0.iter().map(|x| x * &k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|c| Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Json("expected an array".into()))?;
        let c = arr
            .iter()
            .map(|x| {
                x.as_str()
                    .and_then(|s| s.parse::<BigInt>().ok())
                    .ok_or_else(|| Error::Json("coefficient must be a decimal string".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(c))
    }
}

pub fn lpoly_eval_at_one(p: &LPoly) -> BigInt {
    p.eval_at_one()
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_poly(&self.0, "L"))
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_poly(&self.0, "L"))
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        let n = self.0.len().max(o.0.len());
        LPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        let n = self.0.len().max(o.0.len());
        LPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly(self.0.iter().map(|x| -x).collect())
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        LPoly::new(c)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LPoly {
            type Output = LPoly;
            fn $m(self, o: LPoly) -> LPoly { (&self).$m(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Truncated series in t with coefficients in Z[L].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LSeries(Vec<LPoly>);

impl LSeries {
    pub fn zero(trunc: usize) -> Self {
        LSeries(vec![LPoly::zero(); trunc + 1])
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.0[0] = LPoly::one();
        s
    }

    pub fn from_coeffs(mut c: Vec<LPoly>, trunc: usize) -> Self {
        c.resize(trunc + 1, LPoly::zero());
        LSeries(c)
    }

    pub fn trunc(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[LPoly] {
        &self.0
    }

    pub fn coeff(&self, n: usize) -> LPoly {
        self.0.get(n).cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &LSeries) -> LSeries {
        let t = self.trunc().min(o.trunc());
        LSeries((0..=t).map(|i| &self.0[i] + &o.0[i]).collect())
    }

    pub fn sub(&self, o: &LSeries) -> LSeries {
        let t = self.trunc().min(o.trunc());
        LSeries((0..=t).map(|i| &self.0[i] - &o.0[i]).collect())
    }

    pub fn scale(&self, p: &LPoly) -> LSeries {
        LSeries(self.0.iter().map(|c| c * p).collect())
    }

    pub fn mul(&self, o: &LSeries) -> LSeries {
        let t = self.trunc().min(o.trunc());
        let mut c = vec![LPoly::zero(); t + 1];
        for i in 0..=t {
            if self.0[i].is_zero() {
                continue;
            }
            for j in 0..=t - i {
                if !o.0[j].is_zero() {
                    c[i + j] = &c[i + j] + &(&self.0[i] * &o.0[j]);
                }
            }
        }
        LSeries(c)
    }

    /// 1/(1 - a t^k) expanded to `trunc`.
    pub fn geometric(a: &LPoly, k: usize, trunc: usize) -> LSeries {
        let mut c = vec![LPoly::zero(); trunc + 1];
        let mut p = LPoly::one();
        let mut i = 0;
        while i <= trunc {
            c[i] = p.clone();
            p = &p * a;
            i += k;
        }
        LSeries(c)
    }
}
