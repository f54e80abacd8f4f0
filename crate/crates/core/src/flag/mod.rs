//! Generating series FZ_shape, FZ_D and FZ_k of nested flags and their
//! rational forms over products of (1 - q^j).

mod coef;
mod placement;
mod strategy;

use num_bigint::BigInt;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

pub use placement::PlacementWeight;
pub use strategy::{
    FlagSeriesStrategy, OracleStrategy, PositionDp, ShapeSum, StrategyRegistry, DEFAULT_STRATEGY,
};

use crate::error::{invalid, Result};
use crate::series::{clear_denominator_dense, full_denominator, Dense, QSeries, RationalForm, DEFAULT_GUARD};
use crate::shapes::{enum_connected_skew, rp_count, ConnectedSkew, SkewShape};
use placement::{Group, Problem};

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Degree bound for P_D: C(D,2) + C(D-1,2) + ceil(D^2/4).
pub fn pd_degree_bound(d: usize) -> usize {
    binom2(d) + binom2(d.saturating_sub(1)) + (d * d).div_ceil(4)
}

/// Degree bound for P_k with K = sum k: floor(5K^2/4 - K/2 + 1).
pub fn pk_degree_bound(total: usize) -> usize {
    (5 * total * total + 4 - 2 * total) / 4
}

fn denominator_degree(den: &BTreeMap<usize, u32>) -> usize {
    den.iter().map(|(j, e)| j * *e as usize).sum()
}

/// Connected shapes of each size up to d, computed once per process.
pub(crate) fn connected_upto(d: usize) -> Arc<Vec<Vec<ConnectedSkew>>> {
    static CACHE: OnceLock<Mutex<Arc<Vec<Vec<ConnectedSkew>>>>> = OnceLock::new();
    let cell = CACHE.get_or_init(|| Mutex::new(Arc::new(vec![vec![]])));
    let mut guard = cell.lock().unwrap();
    if guard.len() <= d {
        let mut v = (**guard).clone();
        for s in v.len()..=d {
            v.push(enum_connected_skew(s));
        }
        *guard = Arc::new(v);
    }
    guard.clone()
}

/// Mixed-radix indexing of vectors 0 <= x <= k.
struct Radix {
    k: Vec<usize>,
    strides: Vec<usize>,
}

impl Radix {
    fn new(k: &[usize]) -> Self {
        let mut strides = vec![1; k.len()];
        for i in (0..k.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * (k[i + 1] + 1);
        }
        Radix { k: k.to_vec(), strides }
    }

    fn len(&self) -> usize {
        self.k.iter().map(|x| x + 1).product()
    }

    fn index(&self, x: &[usize]) -> usize {
        x.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    fn digits(&self, mut i: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| {
                let d = i / s;
                i %= s;
                d
            })
            .collect()
    }
}

/// Placement problem whose state is the vector of label counts still to place.
pub(crate) fn kappa_problem(k: &[usize]) -> Problem {
    let total: usize = k.iter().sum();
    let radix = Radix::new(k);
    let states: Vec<Vec<usize>> = (0..radix.len()).map(|i| radix.digits(i)).collect();
    let shapes = connected_upto(total);
    let single_step = k.iter().filter(|&&x| x > 0).count() <= 1;

    let work: Vec<&ConnectedSkew> = shapes.iter().flatten().collect();
    let per_shape: Vec<(PlacementWeight, Vec<(usize, BigInt)>)> = work
        .par_iter()
        .map(|c| {
            let size = c.size();
            let shape = SkewShape::connected((*c).clone());
            let mut out = vec![];
            for (i, kp) in states.iter().enumerate() {
                if kp.iter().sum::<usize>() != size {
                    continue;
                }
                let n = if single_step || kp.iter().filter(|&&x| x > 0).count() <= 1 {
                    BigInt::from(1)
                } else {
                    rp_count(&shape, kp).expect("sizes agree")
                };
                if n != BigInt::from(0) {
                    out.push((i, n));
                }
            }
            (PlacementWeight::of(c), out)
        })
        .collect();

    let mut agg: BTreeMap<PlacementWeight, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (w, list) in per_shape {
        let slot = agg.entry(w).or_default();
        for (i, n) in list {
            *slot.entry(i).or_default() += n;
        }
    }
    let groups = agg
        .into_iter()
        .map(|(weight, moves)| {
            let edges = states
                .iter()
                .enumerate()
                .map(|(s, kappa)| {
                    moves
                        .iter()
                        .filter(|(i, _)| states[**i].iter().zip(kappa).all(|(a, b)| a <= b))
                        .map(|(i, n)| (s - i, n.clone()))
                        .collect()
                })
                .collect();
            Group { weight, edges }
        })
        .collect();
    Problem { n_states: radix.len(), done: 0, root: radix.index(k), groups }
}

/// Placement problem for one translation class: the state is the multiset of
/// components still to place.
fn class_problem(s: &SkewShape) -> Problem {
    let grouped = s.grouped();
    let mults: Vec<usize> = grouped.iter().map(|(_, m)| *m).collect();
    let radix = Radix::new(&mults);
    let groups = grouped
        .iter()
        .enumerate()
        .map(|(gi, (c, _))| {
            let edges = (0..radix.len())
                .map(|st| {
                    if radix.digits(st)[gi] > 0 {
                        vec![(st - radix.strides[gi], BigInt::from(1))]
                    } else {
                        vec![]
                    }
                })
                .collect();
            Group { weight: PlacementWeight::of(c), edges }
        })
        .collect();
    Problem { n_states: radix.len(), done: 0, root: radix.index(&mults), groups }
}

/// FZ_shape / Z truncated at q^n; memoized per shape.
pub fn fz_lambda_ratio(s: &SkewShape, n: usize) -> Dense {
    static CACHE: OnceLock<Mutex<HashMap<SkewShape, Dense>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(s) {
        if d.trunc() >= n {
            return d.truncate(n);
        }
    }
    let d = class_problem(s).solve(n);
    cache.lock().unwrap().insert(s.clone(), d.clone());
    d
}

fn times_z(ratio: &Dense) -> QSeries {
    let z = Dense::partitions(ratio.trunc());
    QSeries::from_dense(&ratio.mul(&z), "q").expect("q is a valid variable")
}

/// Series whose q^m coefficient is the number of ways A_m(shape) to insert
/// the shape into a partition of m.
pub fn fz_lambda(s: &SkewShape, n: usize) -> QSeries {
    times_z(&fz_lambda_ratio(s, n))
}

/// Strategy plus guard used by the rational extraction routines.
#[derive(Clone, Copy)]
pub struct FlagEngine<'a> {
    pub strategy: &'a dyn FlagSeriesStrategy,
    pub guard: usize,
}

static DEFAULT_DP: PositionDp = PositionDp;

impl Default for FlagEngine<'static> {
    fn default() -> Self {
        FlagEngine { strategy: &DEFAULT_DP, guard: DEFAULT_GUARD }
    }
}

impl<'a> FlagEngine<'a> {
    pub fn new(strategy: &'a dyn FlagSeriesStrategy, guard: usize) -> Self {
        FlagEngine { strategy, guard }
    }

    pub fn fz_d_ratio(&self, d: usize, n: usize) -> Result<Dense> {
        self.strategy.ratio(&[d], n)
    }

    pub fn fz_d(&self, d: usize, n: usize) -> Result<QSeries> {
        Ok(times_z(&self.fz_d_ratio(d, n)?))
    }

    pub fn fz_k(&self, k: &[usize], n: usize) -> Result<QSeries> {
        Ok(times_z(&self.strategy.ratio(k, n)?))
    }

    pub fn rational_form_d(&self, d: usize) -> Result<RationalForm> {
        if d == 0 {
            return invalid("D must be positive");
        }
        let den = full_denominator(d);
        let bound = pd_degree_bound(d);
        let n = bound + denominator_degree(&den) + self.guard;
        clear_denominator_dense(&self.fz_d_ratio(d, n)?, &den, bound, self.guard)
    }

    pub fn rational_form_k(&self, k: &[usize]) -> Result<RationalForm> {
        let total: usize = k.iter().sum();
        if total == 0 {
            return invalid("the gaps must not all vanish");
        }
        let den = full_denominator(total);
        let bound = pk_degree_bound(total);
        let n = bound + denominator_degree(&den) + self.guard;
        clear_denominator_dense(&self.strategy.ratio(k, n)?, &den, bound, self.guard)
    }

    pub fn rational_form_lambda(&self, s: &SkewShape) -> Result<RationalForm> {
        let (den, bound) = lambda_denominator(s);
        let n = bound + denominator_degree(&den) + self.guard;
        clear_denominator_dense(&fz_lambda_ratio(s, n), &den, bound, self.guard)
    }

    /// P_shape over the common denominator prod_{j <= |shape|} (1 - q^j).
    pub fn rational_form_lambda_full(&self, s: &SkewShape) -> Result<RationalForm> {
        let den = full_denominator(s.size());
        let bound = pd_degree_bound(s.size());
        let n = bound + denominator_degree(&den) + self.guard;
        clear_denominator_dense(&fz_lambda_ratio(s, n), &den, bound, self.guard)
    }
}

/// Denominator and numerator degree bound used for a single class.
pub fn lambda_denominator(s: &SkewShape) -> (BTreeMap<usize, u32>, usize) {
    if s.is_connected() {
        let mut c = s.components()[0].clone();
        if c.width() > c.height() {
            c = c.transpose();
        }
        let p = c.nw_path();
        let (l, v) = (p.l(), p.vv());
        let den = (l.max(v)..=l + v - 1).map(|i| (i, 1)).collect();
        (den, binom2(p.l_nw() - 1) + p.b())
    } else {
        (full_denominator(s.size()), pd_degree_bound(s.size()))
    }
}

pub fn fz_d(d: usize, n: usize) -> Result<QSeries> {
    FlagEngine::default().fz_d(d, n)
}

pub fn fz_k(k: &[usize], n: usize) -> Result<QSeries> {
    FlagEngine::default().fz_k(k, n)
}

pub fn rational_form_lambda(s: &SkewShape) -> Result<RationalForm> {
    FlagEngine::default().rational_form_lambda(s)
}

pub fn rational_form_d(d: usize) -> Result<RationalForm> {
    FlagEngine::default().rational_form_d(d)
}

pub fn rational_form_k(k: &[usize]) -> Result<RationalForm> {
    FlagEngine::default().rational_form_k(k)
}
