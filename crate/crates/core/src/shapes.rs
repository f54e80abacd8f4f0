//! Skew Ferrers diagrams up to translation.
//!
//! Rows are stored top row first in English orientation as `(start, len)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{invalid, Error, Result};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectedSkew {
    rows: Vec<(usize, usize)>,
}

impl ConnectedSkew {
    pub fn new(rows: Vec<(usize, usize)>) -> Result<Self> {
        if rows.is_empty() {
            return invalid("a shape needs at least one row");
        }
        if rows.iter().any(|r| r.1 == 0) {
            return invalid("rows must be nonempty");
        }
        for w in rows.windows(2) {
            let ((s0, l0), (s1, l1)) = (w[0], w[1]);
            if s1 > s0 || s1 + l1 > s0 + l0 {
                return invalid("starts and ends must weakly decrease down the rows");
            }
            if s1 + l1 <= s0 {
                return invalid("consecutive rows must share a column");
            }
        }
        if rows.iter().map(|r| r.0).min() != Some(0) {
            return invalid("shape is not translated to column 0");
        }
        Ok(ConnectedSkew { rows })
    }

    /// Translates rows given with arbitrary integer starts so the minimum start is 0.
    fn normalized(rows: &[(i64, usize)]) -> Self {
        let m = rows.iter().map(|r| r.0).min().unwrap();
        ConnectedSkew { rows: rows.iter().map(|&(s, l)| ((s - m) as usize, l)).collect() }
    }

    pub fn rows(&self) -> &[(usize, usize)] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.1).sum()
    }

    /// Number of columns, equal to the total west length of the north-west path.
    pub fn width(&self) -> usize {
        self.rows[0].0 + self.rows[0].1
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for (r, &(s, l)) in self.rows.iter().enumerate() {
            out.extend((s..s + l).map(|c| (r, c)));
        }
        out
    }

    /// True when the component is an ordinary Ferrers diagram.
    pub fn is_partition(&self) -> bool {
        self.rows.iter().all(|r| r.0 == 0)
    }

    pub fn transpose(&self) -> ConnectedSkew {
        let w = self.width();
        let rows: Vec<(i64, usize)> = (0..w)
            .map(|c| {
                let rs: Vec<usize> = self
                    .rows
                    .iter()
                    .enumerate()
                    .filter(|(_, &(s, l))| s <= c && c < s + l)
                    .map(|(r, _)| r)
                    .collect();
                (rs[0] as i64, rs.len())
            })
            .collect();
        ConnectedSkew::normalized(&rows)
    }

    pub fn nw_path(&self) -> NWPath {
        let mut ell = vec![self.rows[0].1];
        let mut v = vec![];
        let mut run = 1;
        for w in self.rows.windows(2) {
            if w[1].0 < w[0].0 {
                v.push(run);
                ell.push(w[0].0 - w[1].0);
                run = 1;
            } else {
                run += 1;
            }
        }
        v.push(run);
        NWPath { ell, v }
    }

    pub fn render(&self) -> String {
        let w = self.width();
        self.rows
            .iter()
            .map(|&(s, l)| {
                let mut line: String = (0..w).map(|c| if c >= s && c < s + l { '■' } else { ' ' }).collect();
                line.truncate(line.trim_end().len());
                line
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn sort_key(&self) -> (usize, &[(usize, usize)]) {
        (self.size(), &self.rows)
    }
}

impl Ord for ConnectedSkew {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ConnectedSkew {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// North-west boundary path: west runs `ell` and south runs `v`, alternating,
/// read from the north-east corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NWPath {
    pub ell: Vec<usize>,
    pub v: Vec<usize>,
}

impl NWPath {
    pub fn m(&self) -> usize {
        self.ell.len()
    }

    pub fn l(&self) -> usize {
        self.ell.iter().sum()
    }

    pub fn vv(&self) -> usize {
        self.v.iter().sum()
    }

    pub fn l_nw(&self) -> usize {
        self.l() + self.vv()
    }

    pub fn b(&self) -> usize {
        let mut acc = 0;
        let mut below = 0;
        for i in 0..self.m() {
            acc += self.ell[i] * below;
            below += self.v[i];
        }
        acc
    }
}

pub fn nw_path(c: &ConnectedSkew) -> NWPath {
    c.nw_path()
}

/// A translation class of a possibly disconnected skew diagram: a sorted
/// multiset of connected components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    comps: Vec<ConnectedSkew>,
}

impl SkewShape {
    pub fn from_components(mut comps: Vec<ConnectedSkew>) -> Self {
        comps.sort();
        SkewShape { comps }
    }

    pub fn connected(c: ConnectedSkew) -> Self {
        SkewShape { comps: vec![c] }
    }

    /// The class of mu minus nu.
    pub fn from_partitions(mu: &Partition, nu: &Partition) -> Self {
        let mut comps = vec![];
        let mut cur: Vec<(i64, usize)> = vec![];
        let mut prev: Option<(usize, usize)> = None;
        for i in 0..mu.len() {
            let (s, e) = (nu.part(i), mu.part(i));
            if s == e {
                if !cur.is_empty() {
                    comps.push(ConnectedSkew::normalized(&cur));
                    cur.clear();
                }
                prev = None;
                continue;
            }
            if let Some((ps, _)) = prev {
                if e <= ps {
                    comps.push(ConnectedSkew::normalized(&cur));
                    cur.clear();
                }
            }
            cur.push((s as i64, e - s));
            prev = Some((s, e));
        }
        if !cur.is_empty() {
            comps.push(ConnectedSkew::normalized(&cur));
        }
        Self::from_components(comps)
    }

    pub fn components(&self) -> &[ConnectedSkew] {
        &self.comps
    }

    pub fn size(&self) -> usize {
        self.comps.iter().map(ConnectedSkew::size).sum()
    }

    pub fn is_connected(&self) -> bool {
        self.comps.len() == 1
    }

    pub fn is_partition(&self) -> bool {
        self.is_connected() && self.comps[0].is_partition()
    }

    pub fn is_disjoint_boxes(&self) -> bool {
        self.comps.iter().all(|c| c.size() == 1)
    }

    pub fn transpose(&self) -> SkewShape {
        Self::from_components(self.comps.iter().map(ConnectedSkew::transpose).collect())
    }

    /// Distinct components with their multiplicities.
    pub fn grouped(&self) -> Vec<(ConnectedSkew, usize)> {
        let mut out: Vec<(ConnectedSkew, usize)> = vec![];
        for c in &self.comps {
            match out.last_mut() {
                Some((d, m)) if d == c => *m += 1,
                _ => out.push((c.clone(), 1)),
            }
        }
        out
    }

    pub fn sym_factor(&self) -> BigInt {
        let mut f = BigInt::one();
        for (_, m) in self.grouped() {
            for i in 2..=m {
                f *= i;
            }
        }
        f
    }

    /// Cells of all components placed on disjoint rows and columns.
    pub fn placed_cells(&self) -> Vec<(usize, usize)> {
        let (mut r0, mut c0) = (0, 0);
        let mut out = vec![];
        for c in &self.comps {
            out.extend(c.cells().into_iter().map(|(r, k)| (r + r0, k + c0)));
            r0 += c.height();
            c0 += c.width();
        }
        out
    }

    pub fn render(&self) -> String {
        self.comps.iter().map(ConnectedSkew::render).collect::<Vec<_>>().join("\n\n")
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Vec<[usize; 2]>> =
            self.comps.iter().map(|c| c.rows.iter().map(|&(s, l)| [s, l]).collect()).collect();
        json!({ "components": comps })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let comps: Vec<Vec<(usize, usize)>> =
            serde_json::from_value(v["components"].clone()).map_err(|e| Error::Json(e.to_string()))?;
        let comps = comps.into_iter().map(ConnectedSkew::new).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_components(comps))
    }
}

pub fn transpose(s: &SkewShape) -> SkewShape {
    s.transpose()
}

pub fn sym_factor(s: &SkewShape) -> BigInt {
    s.sym_factor()
}

/// Connected translation classes of size d in size-then-row order.
pub fn enum_connected_skew(d: usize) -> Vec<ConnectedSkew> {
    fn rec(rem: usize, cur: &mut Vec<(i64, usize)>, out: &mut Vec<ConnectedSkew>) {
        if rem == 0 {
            out.push(ConnectedSkew::normalized(cur));
            return;
        }
        let (s, l) = *cur.last().unwrap();
        let e = s + l as i64;
        // next row [s2, e2) with s2 <= s, s < e2 <= e, 1 <= e2 - s2 <= rem
        for e2 in (s + 1)..=e {
            for s2 in (e2 - rem as i64)..=s {
                let len = (e2 - s2) as usize;
                cur.push((s2, len));
                rec(rem - len, cur, out);
                cur.pop();
            }
        }
    }
    if d == 0 {
        return vec![];
    }
    let mut out = vec![];
    for l0 in 1..=d {
        let mut cur = vec![(0i64, l0)];
        rec(d - l0, &mut cur, &mut out);
    }
    out.sort();
    out
}

/// All translation classes of size d: multisets of connected components.
pub fn enum_skew_classes(d: usize) -> Vec<SkewShape> {
    let pool: Vec<ConnectedSkew> = (1..=d).flat_map(enum_connected_skew).collect();
    fn rec(pool: &[ConnectedSkew], from: usize, rem: usize, cur: &mut Vec<ConnectedSkew>, out: &mut Vec<SkewShape>) {
        if rem == 0 {
            out.push(SkewShape { comps: cur.clone() });
            return;
        }
        for i in from..pool.len() {
            let sz = pool[i].size();
            if sz > rem {
                break;
            }
            cur.push(pool[i].clone());
            rec(pool, i, rem - sz, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    if d > 0 {
        rec(&pool, 0, d, &mut vec![], &mut out);
    }
    out.sort();
    out
}

/// Order ideals of the cell poset (closed under moving north or west inside
/// the shape), bucketed by size, as bitmasks over `cells`.
fn order_ideals(cells: &[(usize, usize)]) -> Vec<Vec<u64>> {
    assert!(cells.len() <= 64, "shape too large for bitmask enumeration");
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let preds: Vec<u64> = cells
        .iter()
        .map(|&(r, c)| {
            let mut m = 0u64;
            if r > 0 {
                if let Some(&i) = index.get(&(r - 1, c)) {
                    m |= 1 << i;
                }
            }
            if c > 0 {
                if let Some(&i) = index.get(&(r, c - 1)) {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    let mut by_size = vec![vec![0u64]];
    let mut seen: HashSet<u64> = HashSet::from([0]);
    for k in 0..cells.len() {
        let mut next = vec![];
        for &m in &by_size[k] {
            for (i, &p) in preds.iter().enumerate() {
                let bit = 1u64 << i;
                if m & bit == 0 && p & !m == 0 && seen.insert(m | bit) {
                    next.push(m | bit);
                }
            }
        }
        next.sort_unstable();
        by_size.push(next);
    }
    by_size
}

/// Labellings whose sublevel sets are successive order ideals of sizes given
/// by the prefix sums of `k`.
pub fn rp_count(s: &SkewShape, k: &[usize]) -> Result<BigInt> {
    if k.iter().sum::<usize>() != s.size() {
        return invalid(format!("label counts {k:?} do not sum to the shape size {}", s.size()));
    }
    let ideals = order_ideals(&s.placed_cells());
    let mut ways: BTreeMap<u64, BigInt> = BTreeMap::from([(0u64, BigInt::one())]);
    let mut level = 0;
    for &ki in k {
        let mut next: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (&m, w) in &ways {
            for &j in &ideals[level + ki] {
                if j & m == m {
                    *next.entry(j).or_insert_with(BigInt::zero) += w;
                }
            }
        }
        level += ki;
        ways = next;
    }
    Ok(ways.into_values().sum())
}
