//! Higher-rank series FQ_{r,D}, Q(q,s), FQ(q,s,v) and the identities relating
//! them to the rank-one series.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::flag::{pd_degree_bound, FlagEngine};
use crate::partition::FlagOracle;
use crate::series::{clear_denominator_dense, Dense, QSeries, RationalForm};

/// A series in s whose coefficients are q-series: `c[r]` is the coefficient of s^r.
pub type SSeries = Vec<Dense>;

/// Z(q)^r truncated at q^n.
pub fn q_rank_series(r: usize, n: usize) -> QSeries {
    QSeries::from_dense(&Dense::partitions(n).pow(r as u64), "q").expect("valid variable")
}

/// Partitions of `total` into at most `parts` positive parts, largest first.
fn bounded_partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(total, total, parts, &mut vec![], &mut out);
    out
}

/// Number of compositions of length r (zeros allowed) that rearrange `parts`.
fn arrangements(parts: &[usize], r: usize) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    *counts.entry(0).or_default() += r - parts.len();
    let mut out = BigInt::one();
    let mut placed = 0usize;
    for m in counts.values() {
        out *= binomial(BigInt::from(placed + m), BigInt::from(*m));
        placed += m;
    }
    out
}

pub struct QuotEngine<'a> {
    pub flag: FlagEngine<'a>,
}

impl Default for QuotEngine<'static> {
    fn default() -> Self {
        QuotEngine { flag: FlagEngine::default() }
    }
}

impl<'a> QuotEngine<'a> {
    pub fn new(flag: FlagEngine<'a>) -> Self {
        QuotEngine { flag }
    }

    /// FZ_d / Z for d = 0..=dmax.
    fn ratios(&self, dmax: usize, n: usize) -> Result<Vec<Dense>> {
        (0..=dmax).map(|d| self.flag.fz_d_ratio(d, n)).collect()
    }

    /// FQ_{r,D} / Z^r as a sum over gap multisets weighted by their arrangements.
    pub fn fq_ratio(&self, r: usize, d: usize, n: usize) -> Result<Dense> {
        let ratios = self.ratios(d, n)?;
        Ok(composition_sum(&ratios, r, d, n))
    }

    /// FQ_{r,D} / Z^r as the v^D coefficient of (sum_d FZ_d/Z v^d)^r.
    pub fn fq_ratio_by_power(&self, r: usize, d: usize, n: usize) -> Result<Dense> {
        let g = self.ratios(d, n)?;
        let mut acc: Vec<Dense> = (0..=d).map(|i| if i == 0 { Dense::one(n) } else { Dense::zero(n) }).collect();
        for _ in 0..r {
            acc = vmul(&acc, &g, d, n);
        }
        Ok(acc[d].clone())
    }

    /// Series whose q^n coefficient counts r-coloured nestings of sizes (n, n+D).
    pub fn fq_rd(&self, r: usize, d: usize, n: usize) -> Result<QSeries> {
        if r == 0 {
            return invalid("rank must be positive");
        }
        let z = Dense::partitions(n).pow(r as u64);
        QSeries::from_dense(&self.fq_ratio(r, d, n)?.mul(&z), "q")
    }

    /// Denominator prod_{j<=D} (1 - q^j)^{min(r, floor(D/j))}.
    pub fn rank_denominator(r: usize, d: usize) -> BTreeMap<usize, u32> {
        (1..=d).map(|j| (j, r.min(d / j) as u32)).filter(|(_, e)| *e > 0).collect()
    }

    /// Numerator degree bound obtained by bringing every composition term
    /// over the common denominator.
    pub fn rank_degree_bound(r: usize, d: usize) -> usize {
        let common: usize = Self::rank_denominator(r, d).iter().map(|(j, e)| j * *e as usize).sum();
        bounded_partitions(d, r)
            .iter()
            .map(|p| {
                let num: usize = p.iter().map(|&x| pd_degree_bound(x)).sum();
                let own: usize = p.iter().map(|&x| x * (x + 1) / 2).sum();
                num + common - own
            })
            .max()
            .unwrap_or(0)
    }

    pub fn rational_form_rd(&self, r: usize, d: usize) -> Result<RationalForm> {
        if r == 0 || d == 0 {
            return invalid("rank and gap must be positive");
        }
        let den = Self::rank_denominator(r, d);
        let bound = Self::rank_degree_bound(r, d);
        let dd: usize = den.iter().map(|(j, e)| j * *e as usize).sum();
        let n = bound + dd + self.flag.guard;
        clear_denominator_dense(&self.fq_ratio(r, d, n)?, &den, bound, self.flag.guard)
    }

    /// FQ(q,s,v) = sum_{r,D} FQ_{r,D} s^r v^D, with FQ_{0,D} = delta_{D,0}.
    pub fn fq_surface(&self, nq: usize, ns: usize, nv: usize) -> Result<QSeries> {
        let ratios = self.ratios(nv, nq)?;
        let z = Dense::partitions(nq);
        let mut terms = vec![];
        let mut zr = Dense::one(nq);
        for r in 0..=ns {
            for d in 0..=nv {
                let s = composition_sum(&ratios, r, d, nq).mul(&zr);
                terms.extend(push_terms(&s, r, Some(d)));
            }
            zr = zr.mul(&z);
        }
        QSeries::from_terms(&["q", "s", "v"], &[nq as u32, ns as u32, nv as u32], terms)
    }

    /// FZ(q,v) = sum_D FZ_D v^D as a (q,v) series.
    pub fn fz_qv(&self, nq: usize, nv: usize) -> Result<QSeries> {
        let z = Dense::partitions(nq);
        let mut terms = vec![];
        for (d, r) in self.ratios(nv, nq)?.iter().enumerate() {
            terms.extend(push_terms(&r.mul(&z), d, None));
        }
        QSeries::from_terms(&["q", "v"], &[nq as u32, nv as u32], terms)
    }

    /// Compares 1/(1 - FZ(q,v) s) with the series built from the rank sums.
    pub fn check_fq_functional(&self, nq: usize, ns: usize, nv: usize) -> Result<Option<String>> {
        let fq = self.fq_surface(nq, ns, nv)?;
        let fz = self.fz_qv(nq, nv)?;
        // lift FZ(q,v) to FZ(q,v) s in variables (q,s,v)
        let lifted = fz.terms().iter().map(|(e, c)| (vec![e[0], 1, e[1]], c.clone()));
        let trunc = [nq as u32, ns as u32, nv as u32];
        let fzs = QSeries::from_terms(&["q", "s", "v"], &trunc, lifted)?;
        let one = QSeries::one(&["q", "s", "v"], &trunc)?;
        let closed = one.sub(&fzs)?.inv()?;
        Ok(first_mismatch(&fq, &closed, &["q", "s", "v"]))
    }

    /// Checks FQ_D(q,s) = sum_l [v^D] (G - 1)^l * (s^l/l!) d^l/ds^l Q(q,s) with
    /// G = sum_d (FZ_d/Z) v^d, for every D <= nv and every s-degree <= ns.
    pub fn check_exponential(&self, nq: usize, ns: usize, nv: usize) -> Result<Option<String>> {
        let g = self.ratios(nv, nq)?;
        let mut h = g.clone();
        h[0] = Dense::zero(nq);
        let q = q_surface_direct(nq, ns);
        // powers of G - 1 in v
        let mut pows: Vec<Vec<Dense>> = vec![(0..=nv)
            .map(|i| if i == 0 { Dense::one(nq) } else { Dense::zero(nq) })
            .collect()];
        for l in 1..=nv {
            pows.push(vmul(&pows[l - 1], &h, nv, nq));
        }
        for d in 0..=nv {
            let mut op: SSeries = vec![Dense::zero(nq); ns + 1];
            for (l, p) in pows.iter().enumerate() {
                if p[d].is_zero() {
                    continue;
                }
                let dq = divided_derivative(&q, l);
                for r in 0..=ns {
                    op[r] = op[r].add(&p[d].mul(&dq[r]));
                }
            }
            for (r, got) in op.iter().enumerate() {
                let want = if r == 0 {
                    if d == 0 { Dense::one(nq) } else { Dense::zero(nq) }
                } else {
                    self.fq_rd(r, d, nq)?.to_dense()?
                };
                if let Some(i) = (0..=nq).find(|&i| got.coeff(i) != want.coeff(i)) {
                    return Ok(Some(format!(
                        "coefficient of q^{i} s^{r} v^{d}: operator gives {}, rank sum gives {}",
                        got.coeff(i),
                        want.coeff(i)
                    )));
                }
            }
        }
        Ok(None)
    }
}

fn push_terms(s: &Dense, a: usize, b: Option<usize>) -> Vec<(Vec<u32>, BigInt)> {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            let mut e = vec![i as u32, a as u32];
            if let Some(b) = b {
                e.push(b as u32);
            }
            (e, c.clone())
        })
        .collect()
}

fn composition_sum(ratios: &[Dense], r: usize, d: usize, n: usize) -> Dense {
    if r == 0 {
        return if d == 0 { Dense::one(n) } else { Dense::zero(n) };
    }
    let mut acc = Dense::zero(n);
    for p in bounded_partitions(d, r) {
        let term = p.iter().fold(Dense::one(n), |t, &x| t.mul(&ratios[x]));
        acc = acc.add(&term.scale(&arrangements(&p, r)));
    }
    acc
}

/// Product of two v-series with q-series coefficients, truncated at v^dmax.
fn vmul(a: &[Dense], b: &[Dense], dmax: usize, n: usize) -> Vec<Dense> {
    let mut out = vec![Dense::zero(n); dmax + 1];
    for i in 0..=dmax {
        for j in 0..=dmax - i {
            if !a[i].is_zero() && !b[j].is_zero() {
                out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
            }
        }
    }
    out
}

/// (s^l / l!) d^l/ds^l applied termwise: s^r maps to C(r,l) s^r.
pub fn divided_derivative(f: &SSeries, l: usize) -> SSeries {
    f.iter()
        .enumerate()
        .map(|(r, c)| if r < l { Dense::zero(c.trunc()) } else { c.scale(&binomial(BigInt::from(r), BigInt::from(l))) })
        .collect()
}

/// d^l/ds^l divided by l!: the s^m coefficient is C(m+l, l) f_{m+l}; the top l
/// coefficients are lost to truncation.
pub fn plain_divided_derivative(f: &SSeries, l: usize) -> SSeries {
    let n = f[0].trunc();
    (0..f.len())
        .map(|m| match f.get(m + l) {
            Some(c) => c.scale(&binomial(BigInt::from(m + l), BigInt::from(l))),
            None => Dense::zero(n),
        })
        .collect()
}

/// Q(q,s) = sum_r Z^r s^r as an s-series.
pub fn q_surface_direct(nq: usize, ns: usize) -> SSeries {
    let z = Dense::partitions(nq);
    let mut out = vec![Dense::one(nq)];
    for r in 1..=ns {
        let next = out[r - 1].mul(&z);
        out.push(next);
    }
    out
}

fn sseries_to_q(s: &SSeries, ns: usize) -> Result<QSeries> {
    let nq = s[0].trunc();
    let terms = s.iter().enumerate().flat_map(|(r, c)| push_terms(c, r, None));
    QSeries::from_terms(&["q", "s"], &[nq as u32, ns as u32], terms)
}

fn first_mismatch(a: &QSeries, b: &QSeries, vars: &[&str]) -> Option<String> {
    if a == b {
        return None;
    }
    let keys: std::collections::BTreeSet<&Vec<u32>> = a.terms().keys().chain(b.terms().keys()).collect();
    for e in keys {
        let (x, y) = (a.coeff(e), b.coeff(e));
        if x != y {
            let mono: Vec<String> = vars.iter().zip(e).map(|(v, k)| format!("{v}^{k}")).collect();
            return Some(format!("coefficient of {}: {} vs {}", mono.join(" "), x, y));
        }
    }
    Some("truncations differ".into())
}

/// Compares sum_r Z^r s^r with 1/(1 - s Z(q)).
pub fn check_q_identity(nq: usize, ns: usize) -> Result<Option<String>> {
    let direct = sseries_to_q(&q_surface_direct(nq, ns), ns)?;
    let z = Dense::partitions(nq);
    let sz = QSeries::from_terms(&["q", "s"], &[nq as u32, ns as u32], push_terms(&z, 1, None))?;
    let closed = QSeries::one(&["q", "s"], &[nq as u32, ns as u32])?.sub(&sz)?.inv()?;
    Ok(first_mismatch(&direct, &closed, &["q", "s"]))
}

pub fn verify_q_identity(nq: usize, ns: usize) -> Result<bool> {
    Ok(check_q_identity(nq, ns)?.is_none())
}

pub fn verify_fq_functional(nq: usize, ns: usize, nv: usize) -> Result<bool> {
    Ok(QuotEngine::default().check_fq_functional(nq, ns, nv)?.is_none())
}

pub fn verify_exponential_identity(nq: usize, ns: usize, nv: usize) -> Result<bool> {
    Ok(QuotEngine::default().check_exponential(nq, ns, nv)?.is_none())
}

/// The three descriptions of sum_{r,n} chi_r^{[2,n]} q^n s^r: coloured
/// enumeration, the closed combination of Q_r, and the differential operator
///   (s^2 - 2s/(1-q) + (2s(1-s+s^2) - 2s^2/(1-q)) d/ds + s^2(1-s)^2/2 d^2/ds^2) Q.
pub struct Fq2Forms {
    pub oracle: SSeries,
    pub closed: SSeries,
    pub operator: SSeries,
}

pub fn fq2_forms(nq: usize, ns: usize) -> Result<Fq2Forms> {
    // Q is built two orders deeper in s so that derivatives lose nothing.
    let q = q_surface_direct(nq, ns + 2);
    let zero = Dense::zero(nq);
    let at = |f: &SSeries, r: isize| -> Dense {
        if r < 0 { zero.clone() } else { f.get(r as usize).cloned().unwrap_or_else(|| zero.clone()) }
    };
    let geo = {
        let mut g = Dense::one(nq);
        g.div_one_minus_qk(1);
        g
    };

    let mut oracle = vec![];
    let mut fo = FlagOracle::new();
    for r in 0..=ns {
        if r == 0 {
            oracle.push(zero.clone());
            continue;
        }
        let table = fo.coloured_table(r, &[2, nq.max(2)]);
        let c: Vec<BigInt> = (0..=nq).map(|n| if n < 2 { BigInt::zero() } else { table[&vec![2, n]].clone() }).collect();
        oracle.push(Dense::from_coeffs(c, nq));
    }

    let mut closed = vec![];
    for r in 0..=ns as isize {
        let a = at(&q, r).sub(&at(&q, r - 1).mul(&geo)).scale(&BigInt::from(2 * r));
        let c2 = BigInt::from(r * (r - 1) / 2);
        let b = at(&q, r).sub(&at(&q, r - 1).scale(&BigInt::from(2))).add(&at(&q, r - 2)).scale(&c2);
        closed.push(a.add(&b));
    }

    let d1 = plain_divided_derivative(&q, 1);
    let d2 = plain_divided_derivative(&q, 2);
    let mut operator = vec![];
    for r in 0..=ns as isize {
        let mut t = at(&q, r - 2);
        t = t.sub(&at(&q, r - 1).mul(&geo).scale(&BigInt::from(2)));
        // 2s(1 - s + s^2) Q'
        let two = BigInt::from(2);
        t = t.add(&at(&d1, r - 1).scale(&two)).sub(&at(&d1, r - 2).scale(&two)).add(&at(&d1, r - 3).scale(&two));
        // -2s^2/(1-q) Q'
        t = t.sub(&at(&d1, r - 2).mul(&geo).scale(&two));
        // s^2 (1 - 2s + s^2) Q''/2, with d2 already divided by 2
        t = t.add(&at(&d2, r - 2)).sub(&at(&d2, r - 3).scale(&two)).add(&at(&d2, r - 4));
        operator.push(t);
    }
    Ok(Fq2Forms { oracle, closed, operator })
}

pub fn check_fq2_example(nq: usize, ns: usize) -> Result<Option<String>> {
    let f = fq2_forms(nq, ns)?;
    for r in 0..=ns {
        for n in 0..=nq {
            let (a, b, c) = (f.oracle[r].coeff(n), f.closed[r].coeff(n), f.operator[r].coeff(n));
            if a != b || b != c {
                return Ok(Some(format!(
                    "coefficient of q^{n} s^{r}: enumeration {a}, closed form {b}, operator {c}"
                )));
            }
        }
    }
    Ok(None)
}

pub fn verify_fq2_example(nq: usize, ns: usize) -> Result<bool> {
    Ok(check_fq2_example(nq, ns)?.is_none())
}

pub fn fq_rd(r: usize, d: usize, n: usize) -> Result<QSeries> {
    QuotEngine::default().fq_rd(r, d, n)
}

pub fn rational_form_rd(r: usize, d: usize) -> Result<RationalForm> {
    QuotEngine::default().rational_form_rd(r, d)
}
