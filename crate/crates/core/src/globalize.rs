//! Global invariants of a surface from punctual ones at the level of Euler
//! characteristics, where the power structure is ordinary exponentiation.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::partition::FlagOracle;
use crate::quot::QuotEngine;
use crate::series::QSeries;

/// Published coefficient of q1^6 q2^12 for rank 6 on the sixth del Pezzo surface.
pub const DP6_TARGET: u64 = 120_806_108_165_466;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceProfile {
    pub name: String,
    pub euler_characteristic: i64,
}

impl SurfaceProfile {
    pub fn new(name: impl Into<String>, euler_characteristic: i64) -> Self {
        SurfaceProfile { name: name.into(), euler_characteristic }
    }
}

/// sum chi_r^{[n1,n2]} q1^n1 q2^n2 over n1 <= max1, n1 <= n2 <= max2, from
/// coloured enumeration, cross-checked against the rank-r gap series.
pub fn punctual_nested_table(r: usize, max1: usize, max2: usize) -> Result<QSeries> {
    if r == 0 {
        return invalid("rank must be positive");
    }
    if max1 > max2 {
        return invalid("max1 must not exceed max2");
    }
    let table = FlagOracle::new().coloured_table(r, &[max1, max2]);
    let mut entries: Vec<(&Vec<usize>, &BigInt)> = table.iter().collect();
    entries.sort();
    let terms = entries.into_iter().map(|(e, c)| (vec![e[0] as u32, e[1] as u32], c.clone()));
    let series = QSeries::from_terms(&["q1", "q2"], &[max1 as u32, max2 as u32], terms)?;

    let quot = QuotEngine::default();
    for d in 0..=max2 - max1 {
        let fq = quot.fq_rd(r, d, max1)?;
        for n1 in 0..=max1 {
            let a = series.coeff(&[n1 as u32, (n1 + d) as u32]);
            let b = fq.coeff(&[n1 as u32]);
            if a != b {
                return Err(Error::IdentityFailed {
                    name: "punctual table vs gap series".into(),
                    detail: format!("rank {r}, sizes ({n1},{}): enumeration {a}, series {b}", n1 + d),
                });
            }
        }
    }
    Ok(series)
}

/// punctual^{chi(S)}.
pub fn globalize(punctual: &QSeries, surface: &SurfaceProfile) -> Result<QSeries> {
    let zero = vec![0; punctual.variables().len()];
    if !punctual.coeff(&zero).is_one() {
        return Err(Error::NonUnit(punctual.coeff(&zero).to_string()));
    }
    if surface.euler_characteristic < 0 {
        return invalid("only nonnegative Euler characteristics are supported");
    }
    Ok(punctual.pow(surface.euler_characteristic as u64))
}

/// Coefficient of q1^6 q2^12 after raising the rank-6 table to the power e.
pub fn dp6_coefficient(table: &QSeries, e: i64) -> Result<BigInt> {
    Ok(globalize(table, &SurfaceProfile::new("candidate", e))?.coeff(&[6, 12]))
}

/// The unique e in 2..=12 reproducing the published dP6 number.
pub fn resolve_dp6_exponent() -> Result<i64> {
    let table = punctual_nested_table(6, 6, 12)?;
    let target = BigInt::from(DP6_TARGET);
    let mut hits = vec![];
    for e in 2..=12 {
        if dp6_coefficient(&table, e)? == target {
            hits.push(e);
        }
    }
    match hits.as_slice() {
        [e] => Ok(*e),
        [] => Err(Error::Unresolved(format!("no exponent in 2..=12 gives {DP6_TARGET}"))),
        many => Err(Error::Unresolved(format!("several exponents give {DP6_TARGET}: {many:?}"))),
    }
}
