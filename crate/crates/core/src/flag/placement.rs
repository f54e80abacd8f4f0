//! Placement sums over pairwise disjoint offset intervals.
//!
//! A connected component sitting at offset j contributes
//! q^{jV+B} prod_{p=1}^{L-1} (1 - q^{j+p}) and blocks the offsets j..j+L-1.
//! Summing over placements sorted by offset gives a backwards recursion over
//! the offset t whose state records what is still to be placed.

use num_bigint::BigInt;
use rayon::prelude::*;

use super::coef::{axpy, mul_one_minus, Coef};
use crate::series::Dense;
use crate::shapes::ConnectedSkew;

/// North-west data of a component entering its placement weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlacementWeight {
    /// Total south length (number of rows).
    pub v: usize,
    /// Total west length (number of columns); also the blocked interval length.
    pub l: usize,
    pub b: usize,
}

impl PlacementWeight {
    pub fn of(c: &ConnectedSkew) -> Self {
        let p = c.nw_path();
        PlacementWeight { v: p.vv(), l: p.l(), b: p.b() }
    }

    /// The weight polynomial at offset j, truncated at q^n.
    pub fn at(&self, j: usize, n: usize) -> Dense {
        let e = j * self.v + self.b;
        let mut d = Dense::monomial(1, e, n);
        for p in 1..self.l {
            d.mul_one_minus_qk(j + p);
        }
        d
    }
}

/// One kind of placeable component. `edges[s]` lists `(target, multiplicity)`:
/// placing this component in state `s` moves to state `target`.
pub(crate) struct Group {
    pub weight: PlacementWeight,
    pub edges: Vec<Vec<(usize, BigInt)>>,
}

pub(crate) struct Problem {
    pub n_states: usize,
    /// State from which nothing remains to be placed.
    pub done: usize,
    pub root: usize,
    pub groups: Vec<Group>,
}

struct Typed<C> {
    weight: PlacementWeight,
    edges: Vec<Vec<(usize, C)>>,
}

impl Problem {
    /// The placement sum for `root`, truncated at q^n.
    pub fn solve(&self, n: usize) -> Dense {
        if let Some(d) = self.run::<i128>(n) {
            return d;
        }
        self.run::<BigInt>(n).expect("BigInt arithmetic cannot overflow")
    }

    fn run<C: Coef>(&self, n: usize) -> Option<Dense> {
        let groups = self
            .groups
            .iter()
            .map(|g| {
                let edges = g
                    .edges
                    .iter()
                    .map(|es| es.iter().map(|(t, k)| Some((*t, C::from_big(k)?))).collect::<Option<Vec<_>>>())
                    .collect::<Option<Vec<_>>>()?;
                Some(Typed { weight: g.weight, edges })
            })
            .collect::<Option<Vec<_>>>()?;
        let lmax = groups.iter().map(|g| g.weight.l).max().unwrap_or(1);
        let zero_layer = |n_states: usize| -> Vec<Vec<C>> {
            let mut layer = vec![vec![C::zero(); n + 1]; n_states];
            layer[self.done][0] = C::one();
            layer
        };
        // layers[t] for t in 0..=n+lmax; offsets past n only carry the empty placement
        let mut layers: Vec<Vec<Vec<C>>> = (0..=n + lmax).map(|_| zero_layer(self.n_states)).collect();
        for t in (0..=n).rev() {
            let next = &layers[t + 1];
            let new: Vec<Vec<C>> = (0..self.n_states)
                .into_par_iter()
                .map(|s| {
                    let mut acc = next[s].clone();
                    for g in &groups {
                        let es = &g.edges[s];
                        if es.is_empty() {
                            continue;
                        }
                        let w = g.weight;
                        let e = t * w.v + w.b;
                        if e > n {
                            continue;
                        }
                        let len = n - e + 1;
                        let src = &layers[t + w.l];
                        let mut tmp = vec![C::zero(); len];
                        for (target, k) in es {
                            axpy(&mut tmp, k, &src[*target][..len])?;
                        }
                        if tmp.iter().all(C::is_zero) {
                            continue;
                        }
                        for p in 1..w.l {
                            mul_one_minus(&mut tmp, t + p)?;
                        }
                        for (i, x) in tmp.iter().enumerate() {
                            if !x.is_zero() {
                                acc[e + i] = acc[e + i].add(x)?;
                            }
                        }
                    }
                    Some(acc)
                })
                .collect::<Option<Vec<_>>>()?;
            layers[t] = new;
        }
        let out = &layers[0][self.root];
        Some(Dense::from_coeffs(out.iter().map(C::to_big), n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_box_weight() {
        let w = PlacementWeight::of(&ConnectedSkew::new(vec![(0, 1)]).unwrap());
        assert_eq!(w, PlacementWeight { v: 1, l: 1, b: 0 });
        assert_eq!(w.at(3, 5), Dense::monomial(1, 3, 5));
    }

    #[test]
    fn weight_factors_are_nonzero() {
        let w = PlacementWeight { v: 2, l: 3, b: 1 };
        let d = w.at(0, 12);
        // q (1 - q)(1 - q^2)
        assert_eq!(d, Dense::from_i64s(&[0, 1, -1, -1, 1], 12));
    }
}
