//! Closed motivic formulas in Z[L] for punctual Hilbert schemes, their
//! strata, and the nestings [2,n] and [3,n].

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::series::{LPoly, LSeries};

fn p1() -> LPoly {
    LPoly::proj(1)
}

fn p2() -> LPoly {
    LPoly::proj(2)
}

fn l(k: usize) -> LPoly {
    LPoly::l(k)
}

fn k_(x: i64) -> LPoly {
    LPoly::constant(x)
}

/// The series prod_{j>=1} 1/(1 - L^{j-1} t^j) up to t^trunc.
pub fn hilb_series(trunc: usize) -> LSeries {
    (1..=trunc).fold(LSeries::one(trunc), |acc, j| acc.mul(&LSeries::geometric(&l(j - 1), j, trunc)))
}

/// Motives of the punctual Hilbert schemes of 0..=trunc points.
pub fn gottsche_punctual(trunc: usize) -> Vec<LPoly> {
    hilb_series(trunc).coeffs().to_vec()
}

fn hilb(n: usize) -> LPoly {
    hilb_series(n).coeff(n)
}

/// Stratification of the punctual Hilbert scheme of n points by embedding
/// dimension and the value of the Hilbert-Samuel function at 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strata {
    /// Curvilinear locus.
    pub c: LPoly,
    pub h1: LPoly,
    pub h2: LPoly,
    /// H2 split by the degree of the radical of the quadric: [i = 1, i = 2].
    pub h2_split: [LPoly; 2],
    /// Complement of the other strata. For n < 4 this is everything that is
    /// not curvilinear.
    pub h3: LPoly,
}

impl Strata {
    pub fn total(&self) -> LPoly {
        &(&(&self.c + &self.h1) + &self.h2) + &self.h3
    }
}

pub fn motive_c(n: usize) -> LPoly {
    p1().shift(n - 2)
}

pub fn motive_h1(n: usize) -> LPoly {
    match n {
        0..=3 => LPoly::zero(),
        4 => p2(),
        _ => p1().shift(n - 3),
    }
}

pub fn motive_h2_split(n: usize) -> [LPoly; 2] {
    if n < 5 {
        return [LPoly::zero(), LPoly::zero()];
    }
    let k = (n / 2) as i64;
    let first = (&(&k_(1) + &l(1).scale(k - 2)) * &p1()).shift(n - 5);
    let second = if n % 2 == 0 {
        p1().scale(k - 2).shift(n - 3)
    } else {
        (&k_(1) + &p1().scale(k - 2)).shift(n - 3)
    };
    [first, second]
}

/// The closed expression for H3 (valid for n >= 5).
pub fn motive_h3_closed(n: usize) -> Result<LPoly> {
    if n < 5 {
        return invalid("the closed form for H3 needs n >= 5");
    }
    let k = (n / 2) as i64;
    let sub = if n % 2 == 0 {
        let inner = &(&k_(1) + &(&p1() * &l(1)).scale(k - 2)) + &(&p1() * &l(2));
        (&inner * &p1()).shift(n - 5)
    } else {
        let pp = &p1() * &p1();
        let inner = &(&p2() + &(&pp * &l(1)).scale(k - 2)) + &(&pp * &l(2));
        inner.shift(n - 5)
    };
    Ok(&hilb(n) - &sub)
}

pub fn motive_strata(n: usize) -> Result<Strata> {
    if n < 2 {
        return invalid("strata are defined for n >= 2");
    }
    let c = motive_c(n);
    let h1 = motive_h1(n);
    let h2_split = motive_h2_split(n);
    let h2 = &h2_split[0] + &h2_split[1];
    let h3 = &(&(&hilb(n) - &c) - &h1) - &h2;
    if n >= 5 {
        let closed = motive_h3_closed(n)?;
        if closed != h3 {
            return Err(Error::IdentityFailed {
                name: format!("H3 closed form at n={n}"),
                detail: format!("complement {h3} vs closed {closed}"),
            });
        }
    }
    Ok(Strata { c, h1, h2, h2_split, h3 })
}

pub fn motive_2n(n: usize) -> Result<LPoly> {
    if n < 2 {
        return invalid("[2,n] needs n >= 2");
    }
    Ok(&p1() * &(&hilb(n) - &l(n - 1)))
}

/// [P2][Hilb_n] - L^{n-2} [P1] (L^2 + floor(n/2) L + 1), valid for n >= 3.
pub fn motive_3n(n: usize) -> Result<LPoly> {
    if n < 3 {
        return invalid("[3,n] needs n >= 3");
    }
    let inner = &(&l(2) + &l(1).scale((n / 2) as i64)) + &k_(1);
    Ok(&(&p2() * &hilb(n)) - &(&inner * &p1()).shift(n - 2))
}

/// L^{n-4} ((n-5) L^3 + (floor(n/2) + n - 6) L^2 + floor(n/2) L + 1).
pub fn motive_y1112(n: usize) -> Result<LPoly> {
    if n < 5 {
        return invalid("Y_(1,1,1),2 needs n >= 5");
    }
    let n_ = n as i64;
    let h = n_ / 2;
    Ok(LPoly::from_i64s(&[1, h, h + n_ - 6, n_ - 5]).shift(n - 4))
}

/// Curvilinear length-3 locus, the fibre over H3 in the [3,n] decomposition.
pub fn motive_c3() -> LPoly {
    motive_c(3)
}

/// [3,n] assembled from its strata: C + Y_(1,2) contribute the Hilbert
/// scheme, then Y_(1,1,1),i for i = 1, 2, 3.
pub fn motive_3n_from_strata(n: usize) -> Result<LPoly> {
    if n < 5 {
        return invalid("the stratified assembly needs n >= 5");
    }
    let s = motive_strata(n)?;
    Ok(&(&(&hilb(n) + &(&s.h1 * &l(1))) + &motive_y1112(n)?) + &(&s.h3 * &motive_c3()))
}

fn check_series(name: &str, termwise: &LSeries, closed: &LSeries) -> Result<()> {
    for n in 0..=termwise.trunc() {
        if termwise.coeff(n) != closed.coeff(n) {
            return Err(Error::IdentityFailed {
                name: name.to_string(),
                detail: format!("t^{n}: termwise {} vs closed {}", termwise.coeff(n), closed.coeff(n)),
            });
        }
    }
    Ok(())
}

/// sum_{n>=2} [2,n] t^n, checked against [P1] Hilb(t) + [P1] (t(L-1) - 1)/(1 - Lt).
pub fn series_2bullet(trunc: usize) -> Result<LSeries> {
    let terms = (0..=trunc).map(|n| if n < 2 { Ok(LPoly::zero()) } else { motive_2n(n) });
    let termwise = LSeries::from_coeffs(terms.collect::<Result<Vec<_>>>()?, trunc);
    let num = LSeries::from_coeffs(vec![k_(-1), &l(1) - &k_(1)], trunc);
    let closed = hilb_series(trunc).scale(&p1()).add(&num.mul(&LSeries::geometric(&l(1), 1, trunc)).scale(&p1()));
    check_series("[2,n] generating series", &termwise, &closed)?;
    Ok(termwise)
}

/// The polynomial h(t) in the closed form of the [3,n] generating series.
pub fn h_poly() -> Vec<LPoly> {
    let l3m1 = &l(3) - &k_(1);
    vec![p2(), -&l3m1, -&(&l3m1 * &p1()), &l(2) * &l3m1, -&l(2)]
}

/// sum_{n>=3} [3,n] t^n, checked against [P2] Hilb(t) - h(t)/((1 - Lt)(1 - L^2 t^2)).
pub fn series_3bullet(trunc: usize) -> Result<LSeries> {
    let terms = (0..=trunc).map(|n| if n < 3 { Ok(LPoly::zero()) } else { motive_3n(n) });
    let termwise = LSeries::from_coeffs(terms.collect::<Result<Vec<_>>>()?, trunc);
    let h = LSeries::from_coeffs(h_poly(), trunc)
        .mul(&LSeries::geometric(&l(1), 1, trunc))
        .mul(&LSeries::geometric(&l(2), 2, trunc));
    let closed = hilb_series(trunc).scale(&p2()).sub(&h);
    check_series("[3,n] generating series", &termwise, &closed)?;
    Ok(termwise)
}

/// (a_{n-2}, a_{n-3}): the coefficients of L^{n-2} and L^{n-3} in the
/// punctual Hilbert scheme motive, in closed form.
pub fn a_coefficients(n: usize) -> Result<(i64, i64)> {
    if n <= 3 {
        return invalid("needs n > 3");
    }
    let n = n as i64;
    Ok((n / 2, (n * (n - 6)).div_euclid(12) + (n - 1) / 2 + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestingKind {
    TwoN,
    ThreeN,
}

pub fn component_count(kind: NestingKind, n: usize) -> Result<i64> {
    if n < 4 {
        return invalid("needs n >= 4");
    }
    let (a2, a3) = a_coefficients(n)?;
    Ok(match kind {
        NestingKind::TwoN => a2,
        NestingKind::ThreeN => a3,
    })
}

/// Hilbert-Samuel function (1, h_1, ..., h_t) of a fat point in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsVector {
    h: Vec<usize>,
}

impl HsVector {
    pub fn new(mut h: Vec<usize>) -> Result<Self> {
        while h.last() == Some(&0) {
            h.pop();
        }
        if h.first() != Some(&1) {
            return invalid("h_0 must be 1");
        }
        let v = HsVector { h };
        let d = v.d();
        for i in d..v.h.len() {
            if v.at(i) < v.at(i + 1) {
                return invalid("h must be weakly decreasing from index d on");
            }
        }
        Ok(v)
    }

    pub fn at(&self, i: usize) -> usize {
        self.h.get(i).copied().unwrap_or(0)
    }

    pub fn values(&self) -> &[usize] {
        &self.h
    }

    /// The first index with h_i < i + 1.
    pub fn d(&self) -> usize {
        (0..).find(|&i| self.at(i) < i + 1).unwrap()
    }

    pub fn size(&self) -> usize {
        self.h.iter().sum()
    }
}

fn c2(a: i64) -> i64 {
    a * (a - 1) / 2
}

/// Dimension of the stratum of ideals with Hilbert-Samuel function h.
pub fn hs_dimension(h: &HsVector) -> i64 {
    let d = h.d();
    let t = h.values().len();
    let sum: i64 = (d..=t).map(|i| c2(h.at(i - 1) as i64 - h.at(i) as i64)).sum();
    h.size() as i64 - d as i64 - sum
}

/// Exponent of L relating the stratum to its homogeneous locus.
pub fn hs_motive_exponent(h: &HsVector) -> i64 {
    let d = h.d();
    let t = h.values().len();
    let sum: i64 = (d..=t)
        .map(|i| {
            let (a, b, c) = (h.at(i - 1) as i64, h.at(i) as i64, h.at(i + 1) as i64);
            (a - b) * (a + b - 2 * c - 1) / 2 - c
        })
        .sum();
    c2(d as i64) - sum
}

/// Stored motives of small nestings, as (label, motive).
pub fn punctual_constants() -> Vec<(&'static str, LPoly)> {
    vec![
        ("[0,2]", p1()),
        ("[1,3]", p2()),
        ("[2,4]", LPoly::from_i64s(&[1, 2, 3, 2])),
        ("[3,5]", LPoly::from_i64s(&[1, 2, 4, 4, 2])),
        ("[2,3,4]", &p1() * &LPoly::from_i64s(&[1, 2, 2])),
    ]
}

/// Stored global motives for the affine plane, as (label, motive).
pub fn plane_constants() -> Vec<(&'static str, LPoly)> {
    vec![("[0,2]", &p1() * &l(3)), ("[1,3]", &LPoly::from_i64s(&[-1, -1, 0, 2, 3]) * &l(2))]
}

pub fn euler(p: &LPoly) -> BigInt {
    p.eval_at_one()
}
