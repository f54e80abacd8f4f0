//! Brute-force partitions, nested flags and coloured flags.
//!
//! Everything here is computed by direct enumeration and serves as the
//! reference the generating-function engines are tested against.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

use crate::error::{invalid, Result};
use crate::shapes::SkewShape;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid("partition parts must be weakly decreasing");
        }
        Ok(Partition { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Row i, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// i -> m_i, the number of parts equal to i.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition { parts: (0..w).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect() }
    }
}

/// Weakly increasing sizes n_1 <= ... <= n_l of a nesting.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagSpec {
    sizes: Vec<usize>,
}

impl FlagSpec {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return invalid(format!("nesting sizes must be weakly increasing, got {sizes:?}"));
        }
        Ok(FlagSpec { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Sizes (n, n+k_1, n+k_1+k_2, ...).
    pub fn from_gaps(n: usize, gaps: &[usize]) -> Self {
        let mut sizes = vec![n];
        for g in gaps {
            sizes.push(sizes.last().unwrap() + g);
        }
        FlagSpec { sizes }
    }
}

/// All partitions of n in reverse lexicographic order.
pub fn enum_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_parts_unchecked(cur.clone()));
            return;
        }
        for p in (1..=max.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out
}

pub fn count_partitions_with_k_parts(n: usize, k: usize) -> BigInt {
    // t[a][b] = partitions of a with exactly b parts
    let mut t = vec![vec![BigInt::zero(); k + 1]; n + 1];
    t[0][0] = BigInt::one();
    for a in 1..=n {
        for b in 1..=k.min(a) {
            let v = &t[a - 1][b - 1] + &t[a - b][b];
            t[a][b] = v;
        }
    }
    t[n][k].clone()
}

pub fn contains(inner: &Partition, outer: &Partition) -> bool {
    inner.len() <= outer.len() && inner.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
}

/// All partitions mu containing lambda with |mu| = |lambda| + g.
pub fn supersets(lambda: &Partition, g: usize) -> Vec<Partition> {
    fn rec(lam: &[usize], j: usize, upper: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if j >= lam.len() {
            if rem == 0 {
                out.push(Partition::from_parts_unchecked(cur.clone()));
                return;
            }
            for x in (1..=upper.min(rem)).rev() {
                cur.push(x);
                rec(lam, j + 1, x, rem - x, cur, out);
                cur.pop();
            }
            return;
        }
        let lo = lam[j];
        for x in (lo..=upper.min(lo + rem)).rev() {
            cur.push(x);
            rec(lam, j + 1, x, rem - (x - lo), cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    let upper = lambda.part(0) + g;
    rec(&lambda.parts, 0, upper, g, &mut vec![], &mut out);
    out
}

/// Memoized chain counter shared across queries.
#[derive(Default)]
pub struct FlagOracle {
    memo: HashMap<(Partition, Vec<usize>), BigInt>,
}

impl FlagOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Chains starting at `lambda` that grow by the given gaps in turn.
    pub fn chains_from(&mut self, lambda: &Partition, gaps: &[usize]) -> BigInt {
        if gaps.is_empty() {
            return BigInt::one();
        }
        let key = (lambda.clone(), gaps.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for mu in supersets(lambda, gaps[0]) {
            total += self.chains_from(&mu, &gaps[1..]);
        }
        self.memo.insert(key, total.clone());
        total
    }

    pub fn count(&mut self, spec: &FlagSpec) -> BigInt {
        let s = spec.sizes();
        if s.is_empty() {
            return BigInt::one();
        }
        let gaps: Vec<usize> = s.windows(2).map(|w| w[1] - w[0]).collect();
        enum_partitions(s[0]).iter().map(|l| self.chains_from(l, &gaps)).sum()
    }

    /// F(w) = number of r-coloured nestings with total size vector w, for
    /// every weakly increasing w bounded by `bound` componentwise.
    pub fn coloured_table(&mut self, r: usize, bound: &[usize]) -> HashMap<Vec<usize>, BigInt> {
        let vecs = bounded_increasing(bound);
        let single: HashMap<Vec<usize>, BigInt> = vecs
            .iter()
            .map(|v| (v.clone(), self.count(&FlagSpec { sizes: v.clone() })))
            .collect();
        let mut cur = single.clone();
        for _ in 1..r {
            let mut next = HashMap::with_capacity(vecs.len());
            for w in &vecs {
                let mut acc = BigInt::zero();
                for v in &vecs {
                    if !v.iter().zip(w).all(|(a, b)| a <= b) {
                        continue;
                    }
                    let rest: Vec<usize> = w.iter().zip(v).map(|(a, b)| a - b).collect();
                    if rest.windows(2).any(|x| x[0] > x[1]) {
                        continue;
                    }
                    acc += &single[v] * &cur[&rest];
                }
                next.insert(w.clone(), acc);
            }
            cur = next;
        }
        cur
    }
}

/// Weakly increasing vectors w with 0 <= w_i <= bound_i.
fn bounded_increasing(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let lo = p.last().copied().unwrap_or(0);
                (lo..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn count_nested_flags(spec: &FlagSpec) -> BigInt {
    FlagOracle::new().count(spec)
}

/// Number of r-coloured nestings: sum over splittings of the size vector into r
/// weakly increasing vectors of the product of single-colour counts.
pub fn count_coloured_flags(r: usize, spec: &FlagSpec) -> Result<BigInt> {
    if r == 0 {
        return invalid("rank must be positive");
    }
    if spec.sizes().is_empty() {
        return Ok(BigInt::one());
    }
    let table = FlagOracle::new().coloured_table(r, spec.sizes());
    Ok(table[spec.sizes()].clone())
}

/// A_m(shape): pairs nu within mu with |nu| = m whose difference is `shape`
/// up to translation.
pub fn insertion_count(shape: &SkewShape, m: usize) -> BigInt {
    let mut n = BigInt::zero();
    for nu in enum_partitions(m) {
        for mu in supersets(&nu, shape.size()) {
            if SkewShape::from_partitions(&mu, &nu) == *shape {
                n += 1;
            }
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reverse_lex_order() {
        let p: Vec<Vec<usize>> = enum_partitions(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(p, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enum_partitions(0), vec![Partition::empty()]);
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(FlagSpec::new(vec![3, 2]).is_err());
    }

    #[test]
    fn supersets_of_a_box() {
        let sup = supersets(&Partition::new(vec![1]).unwrap(), 2);
        assert_eq!(sup.len(), 3);
        let sup = supersets(&Partition::new(vec![2, 1]).unwrap(), 1);
        assert_eq!(sup.len(), 3);
    }

    #[test]
    fn conjugate() {
        let p = Partition::new(vec![4, 3, 3, 1, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[5, 3, 3, 1]);
        assert_eq!(p.conjugate().conjugate(), p);
    }
}
