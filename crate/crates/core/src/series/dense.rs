use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Truncated power series in the single variable q. Coefficient `c[i]` is the
/// coefficient of q^i and `c.len() == trunc + 1` always.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dense {
    c: Vec<BigInt>,
}

impl Dense {
    pub fn zero(trunc: usize) -> Self {
        Dense { c: vec![BigInt::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.c[0] = BigInt::one();
        s
    }

    pub fn monomial(coef: impl Into<BigInt>, deg: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if deg <= trunc {
            s.c[deg] = coef.into();
        }
        s
    }

    /// Builds a series from coefficients, padding or cutting to `trunc`.
    pub fn from_coeffs<I, T>(coeffs: I, trunc: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(trunc);
        for (i, x) in coeffs.into_iter().enumerate() {
            if i > trunc {
                break;
            }
            s.c[i] = x.into();
        }
        s
    }

    pub fn from_i64s(coeffs: &[i64], trunc: usize) -> Self {
        Self::from_coeffs(coeffs.iter().copied(), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        Self::from_coeffs(self.c.iter().cloned(), trunc)
    }

    pub fn add(&self, other: &Dense) -> Dense {
        let t = self.trunc().min(other.trunc());
        Dense { c: (0..=t).map(|i| &self.c[i] + &other.c[i]).collect() }
    }

    pub fn sub(&self, other: &Dense) -> Dense {
        let t = self.trunc().min(other.trunc());
        Dense { c: (0..=t).map(|i| &self.c[i] - &other.c[i]).collect() }
    }

    pub fn neg(&self) -> Dense {
        Dense { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Dense {
        Dense { c: self.c.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, other: &Dense) -> Dense {
        let t = self.trunc().min(other.trunc());
        let mut out = vec![BigInt::zero(); t + 1];
        for (i, a) in self.c.iter().enumerate().take(t + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate().take(t + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Dense { c: out }
    }

    /// Multiplies by (1 - q^k) in place.
    pub fn mul_one_minus_qk(&mut self, k: usize) {
        assert!(k >= 1);
        for i in (k..self.c.len()).rev() {
            let prev = self.c[i - k].clone();
            self.c[i] -= prev;
        }
    }

    /// Divides by (1 - q^k) in place.
    pub fn div_one_minus_qk(&mut self, k: usize) {
        assert!(k >= 1);
        for i in k..self.c.len() {
            let prev = self.c[i - k].clone();
            self.c[i] += prev;
        }
    }

    pub fn shift(&self, k: usize) -> Dense {
        let t = self.trunc();
        let mut out = Self::zero(t);
        for i in k..=t {
            out.c[i] = self.c[i - k].clone();
        }
        out
    }

    pub fn inv(&self) -> Result<Dense> {
        let a0 = &self.c[0];
        if !(a0.is_one() || (-a0).is_one()) {
            return Err(Error::NonUnit(a0.to_string()));
        }
        let t = self.trunc();
        let mut b = vec![BigInt::zero(); t + 1];
        b[0] = a0.clone();
        for n in 1..=t {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !self.c[k].is_zero() {
                    acc += &self.c[k] * &b[n - k];
                }
            }
            b[n] = -(a0 * acc);
        }
        Ok(Dense { c: b })
    }

    pub fn pow(&self, mut e: u64) -> Dense {
        let mut base = self.clone();
        let mut acc = Dense::one(self.trunc());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.c.iter().sum()
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().rposition(|x| !x.is_zero())
    }

    /// Partition generating function Z(q) = prod 1/(1-q^j).
    pub fn partitions(trunc: usize) -> Dense {
        let mut z = Dense::one(trunc);
        for j in 1..=trunc {
            z.div_one_minus_qk(j);
        }
        z
    }

    /// prod_{j=1}^{trunc} (1 - q^j), the inverse of Z.
    pub fn euler(trunc: usize) -> Dense {
        let mut z = Dense::one(trunc);
        for j in 1..=trunc {
            z.mul_one_minus_qk(j);
        }
        z
    }
}

impl fmt::Debug for Dense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(q^{})", fmt_poly(&self.c, "q"), self.trunc() + 1)
    }
}

/// Renders `c` as a polynomial in `var`, low degree first, e.g. `3 - q - q^2`.
pub fn fmt_poly(c: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let a = x.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_numbers() {
        let z = Dense::partitions(10);
        let want = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        assert_eq!(z, Dense::from_i64s(&want, 10));
    }

    #[test]
    fn euler_inverts_z() {
        let n = 30;
        assert_eq!(Dense::partitions(n).mul(&Dense::euler(n)), Dense::one(n));
        assert_eq!(Dense::euler(n).inv().unwrap(), Dense::partitions(n));
    }

    #[test]
    fn printing() {
        let p = Dense::from_i64s(&[3, -1, -1], 2);
        assert_eq!(fmt_poly(p.coeffs(), "q"), "3 - q - q^2");
    }
}
