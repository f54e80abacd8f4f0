//! End-to-end acceptance checks. Runs as a plain binary so that the
//! PASS/FAIL line of every criterion is always printed.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use punctual::flag::{
    fz_lambda_ratio, pd_degree_bound, pk_degree_bound, FlagEngine, StrategyRegistry,
};
use punctual::globalize::{globalize, punctual_nested_table, resolve_dp6_exponent, SurfaceProfile, DP6_TARGET};
use punctual::motive::{
    component_count, gottsche_punctual, motive_2n, motive_3n, motive_strata, series_2bullet, series_3bullet,
    NestingKind,
};
use punctual::partition::{count_coloured_flags, count_nested_flags, count_partitions_with_k_parts, FlagSpec};
use punctual::quot::{check_fq2_example, check_q_identity, QuotEngine};
use punctual::series::{Dense, LPoly, RationalForm};
use punctual::shapes::enum_skew_classes;

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// Parses "3 - q - q^2" style integer polynomials. Any single letter is taken
/// as the variable.
fn parse_poly(s: &str) -> Vec<i64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
    let mut out: BTreeMap<usize, i64> = BTreeMap::new();
    let mut term = String::new();
    let mut flush = |t: &str| {
        if t.is_empty() {
            return;
        }
        let (sign, body) = match t.as_bytes()[0] {
            b'-' => (-1, &t[1..]),
            b'+' => (1, &t[1..]),
            _ => (1, t),
        };
        let split = body.find(|c: char| c.is_ascii_alphabetic());
        let (coef, exp) = match split {
            None => (body.parse::<i64>().unwrap(), 0),
            Some(i) => {
                let c = if i == 0 { 1 } else { body[..i].parse::<i64>().unwrap() };
                let rest = &body[i + 1..];
                let e = rest.strip_prefix('^').map_or(1, |x| x.parse::<usize>().unwrap());
                (c, e)
            }
        };
        *out.entry(exp).or_default() += sign * coef;
    };
    for ch in s.chars() {
        if (ch == '+' || ch == '-') && !term.is_empty() {
            flush(&term);
            term.clear();
        }
        term.push(ch);
    }
    flush(&term);
    let deg = out.keys().max().copied().unwrap_or(0);
    (0..=deg).map(|i| out.get(&i).copied().unwrap_or(0)).collect()
}

const NUMERATORS: [&str; 10] = [
    "1",
    "2-q",
    "3-q-q^2",
    "5-3q+q^2-2q^3-q^4+q^5",
    "7-3q-q^2+q^3-2q^4-5q^5+3q^6+q^7-q^8+2q^9-q^{10}",
    "11-7q+q^2+q^3+q^4-11q^5+3q^6-2q^7+2q^8+q^{10}+4q^{11}-4q^{12}+2q^{13}-q^{14}",
    "15-8q-q^2+4q^3-7q^5-3q^6-14q^7+12q^8+2q^9-9q^{10}+7q^{11}+5q^{12}+q^{13}+q^{14}-4q^{15}-q^{16}+5q^{17}-7 q^{18}+2q^{19}+2q^{20}-q^{21}",
    "22 - 14q + 4q^3 + 11q^4 - 19q^5 + 6q^6 - 27q^7 + 7q^8 + 4q^9 - q^{10} - 13q^{11} + 15q^{12} + 4q^{13} + q^{14} + 13q^{15} - 8q^{16} - 3q^{17} + 6q^{18} + q^{19} - 15q^{20} + 5q^{21} + q^{22} + 4q^{23} - 7q^{24} + 3q^{25} + 3q^{26} - 2q^{27}",
    "30 - 18q - 4q^2 + 13q^3 + 8q^4 - 16q^5 + 9q^6 - 33q^7 - q^8 - 6q^9 + q^{10} - 5q^{11} + 9q^{12} - 16q^{13} + 7q^{14} + 32q^{15} + 6q^{16} - 12q^{17} + 8q^{18} + 6q^{19} - 10q^{20} + 2q^{21} - 5q^{22} + q^{23} - 22q^{24} + 16q^{25} + 7q^{26} - 15q^{27} + 4q^{28} + 12q^{29} - 11q^{30} + 6q^{31} + q^{32} - 6q^{33} + 4q^{34} - t^{35}",
    "42 - 28q - 2q^2 + 11q^3 + 23q^4 - 23q^5 + 24q^6 - 64q^7 + 25q^8 - 32q^9 - 7q^{10} - 6q^{11} + 38q^{12} - 76q^{13} + 23q^{14} + 31q^{15} + 13q^{16} + 8q^{17} + 23q^{18} - 7q^{19} + 16q^{20} - 8q^{21} - 15q^{22} + 47q^{23} - 47q^{24} - 26q^{25} + 15q^{26} + 12q^{27} - 33q^{28} + 24q^{29} - 19q^{30} + 19q^{31} - 5q^{32} - 3q^{33} + 25q^{34} - 7q^{35} - 28q^{36} + 20q^{37} + 9q^{38} - 9q^{39} - 6q^{40} - q^{41} + 8q^{42} - 3q^{43}",
];

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn p(n: usize) -> BigInt {
    Dense::partitions(n).coeff(n)
}

fn c1_numerators() -> Check {
    let engine = FlagEngine::default();
    for (i, s) in NUMERATORS.iter().enumerate() {
        let d = i + 1;
        let t = Instant::now();
        let rf = engine.rational_form_d(d).map_err(|e| e.to_string())?;
        ensure!(rf.numerator == big(&parse_poly(s)), "D={d}: got {}", rf.numerator_string());
        ensure!(d > 8 || t.elapsed().as_secs() < 10, "D={d} took {:?}", t.elapsed());
    }
    Ok(())
}

fn c2_ratios() -> Check {
    let table: [(&[usize], &str, &[(usize, u32)]); 8] = [
        (&[1, 1], "2", &[(1, 1), (2, 1)]),
        (&[1, 1, 1], "4-2q", &[(1, 2), (2, 1)]),
        (&[1, 1, 1, 1], "10-4q-2q^2", &[(1, 2), (2, 2)]),
        (&[1, 1, 1, 1, 1], "26-28q+6q^2", &[(1, 3), (2, 2)]),
        (&[1, 1, 1, 1, 1, 1], "76-72q-12q^2+16q^3", &[(1, 3), (2, 3)]),
        (&[1, 2], "3+2q-q^2-q^3", &[(1, 1), (2, 1), (3, 1)]),
        (&[2, 1], "4-q+2q^2-2q^3", &[(1, 1), (2, 1), (3, 1)]),
        (&[2, 2], "8-3q+8q^2-4q^3-2q^4-q^5", &[(1, 1), (2, 1), (3, 1), (4, 1)]),
    ];
    const ORDER: usize = 48;
    let engine = FlagEngine::default();
    let z = Dense::partitions(ORDER);
    for (k, num, den) in table {
        let want = RationalForm::from_i64s(&parse_poly(num), den).expand(ORDER).mul(&z);
        let rf = engine.rational_form_k(k).map_err(|e| e.to_string())?;
        ensure!(rf.numerator_degree().unwrap_or(0) <= pk_degree_bound(k.iter().sum()), "k={k:?}: degree bound");
        let got = rf.expand(ORDER).mul(&z);
        ensure!(got == want, "k={k:?}: re-expansion differs from the reference ratio");
        let direct = engine.fz_k(k, ORDER).map_err(|e| e.to_string())?.to_dense().map_err(|e| e.to_string())?;
        ensure!(direct == want, "k={k:?}: series differs from the reference ratio");
    }
    Ok(())
}

fn gap_vectors(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in 1..=total {
        for mut rest in gap_vectors(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn c3_oracle() -> Check {
    let reg = StrategyRegistry::default();
    for strategy in reg.iter() {
        let engine = FlagEngine::new(strategy, 10);
        for d in 0..=4 {
            let s = engine.fz_d(d, 12).map_err(|e| e.to_string())?;
            for n in 0..=12 {
                let want = count_nested_flags(&FlagSpec::new(vec![n, n + d]).unwrap());
                ensure!(s.coeff(&[n as u32]) == want, "{}: D={d}, n={n}", strategy.name());
            }
        }
        for total in 1..=4 {
            for k in gap_vectors(total).into_iter().filter(|k| k.len() <= 4) {
                let s = engine.fz_k(&k, 10).map_err(|e| e.to_string())?;
                for n in 0..=10 {
                    let want = count_nested_flags(&FlagSpec::from_gaps(n, &k));
                    ensure!(s.coeff(&[n as u32]) == want, "{}: k={k:?}, n={n}", strategy.name());
                }
            }
        }
    }
    Ok(())
}

fn c4_special_values() -> Check {
    let engine = FlagEngine::default();
    for d in 1..=10usize {
        let rf = engine.rational_form_d(d).map_err(|e| e.to_string())?;
        let c = |i: usize| rf.numerator.get(i).cloned().unwrap_or_default();
        ensure!(rf.numerator_at(0) == p(d), "P_{d}(0)");
        ensure!(rf.numerator_at(1) == BigInt::from(1), "P_{d}(1)");
        ensure!(c(1) == p(d + 1) - 2 * p(d), "q coefficient of P_{d}");
        if d >= 2 {
            ensure!(c(2) == 2 * p(d + 2) - 2 * p(d + 1) - p(d) - 2, "q^2 coefficient of P_{d}");
        }
        if d >= 3 {
            let odd = (d % 2) as i64;
            let want = 3 * p(d + 3) - 4 * p(d + 2) - p(d + 1) + 2 * p(d) - 2 - d as i64 - odd;
            ensure!(c(3) == want, "q^3 coefficient of P_{d}: {} vs {want}", c(3));
        }
    }
    Ok(())
}

fn c5_higher_rank() -> Check {
    let (nq, ns, nv) = (12, 4, 4);
    let quot = QuotEngine::default();
    let results = [
        ("Q(1 - sZ) = 1", check_q_identity(nq, ns)),
        ("FQ(1 - FZ s) = 1", quot.check_fq_functional(nq, ns, nv)),
        ("exponential operator", quot.check_exponential(nq, ns, nv)),
        ("gap-2 closed form", check_fq2_example(nq, ns)),
    ];
    for (name, r) in results {
        match r {
            Ok(None) => {}
            Ok(Some(d)) => return Err(format!("{name}: {d}")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    for r in 1..=3 {
        for d in 0..=4 {
            let a = quot.fq_ratio(r, d, nq).map_err(|e| e.to_string())?;
            let b = quot.fq_ratio_by_power(r, d, nq).map_err(|e| e.to_string())?;
            ensure!(a == b, "composition sum vs power at r={r}, D={d}");
        }
    }
    Ok(())
}

fn c6_coloured() -> Check {
    let quot = QuotEngine::default();
    for r in 1..=3 {
        for d in 0..=3 {
            let s = quot.fq_rd(r, d, 10).map_err(|e| e.to_string())?;
            for n in 0..=10 {
                let want = count_coloured_flags(r, &FlagSpec::new(vec![n, n + d]).unwrap()).map_err(|e| e.to_string())?;
                ensure!(s.coeff(&[n as u32]) == want, "r={r}, D={d}, n={n}");
            }
        }
    }
    Ok(())
}

fn c7_dp6() -> Check {
    let e = resolve_dp6_exponent().map_err(|e| e.to_string())?;
    ensure!((2..=12).contains(&e), "exponent {e} out of range");
    let table = punctual_nested_table(6, 6, 12).map_err(|e| e.to_string())?;
    let global = globalize(&table, &SurfaceProfile::new("dP6", e)).map_err(|e| e.to_string())?;
    ensure!(global.coeff(&[6, 12]) == BigInt::from(DP6_TARGET), "coefficient {}", global.coeff(&[6, 12]));
    println!("  resolved Euler characteristic of dP6: {e}");
    Ok(())
}

fn c8_motives() -> Check {
    ensure!(motive_2n(4).unwrap() == LPoly::from_i64s(&[1, 2, 3, 2]), "[2,4]");
    ensure!(motive_3n(5).unwrap() == LPoly::from_i64s(&[1, 2, 4, 4, 2]), "[3,5]");
    series_2bullet(15).map_err(|e| e.to_string())?;
    series_3bullet(15).map_err(|e| e.to_string())?;
    let hilb = gottsche_punctual(20);
    for n in 4..=20 {
        let s = motive_strata(n).map_err(|e| e.to_string())?;
        ensure!(s.total() == hilb[n], "strata at n={n}");
        ensure!(&s.h2_split[0] + &s.h2_split[1] == s.h2, "H2 split at n={n}");
    }
    for n in 3..=14 {
        if n >= 2 {
            let want = count_nested_flags(&FlagSpec::new(vec![2, n]).unwrap());
            ensure!(motive_2n(n).unwrap().eval_at_one() == want, "[2,{n}] at L=1");
        }
        let want = count_nested_flags(&FlagSpec::new(vec![3, n]).unwrap());
        ensure!(motive_3n(n).unwrap().eval_at_one() == want, "[3,{n}] at L=1");
    }
    for n in 4..=20 {
        let m2 = motive_2n(n).unwrap();
        ensure!(m2.degree() == Some(n - 1), "dim [2,{n}]");
        ensure!(m2.leading() == BigInt::from(component_count(NestingKind::TwoN, n).unwrap()), "[2,{n}] leading");
        let m3 = motive_3n(n).unwrap();
        ensure!(m3.degree() == Some(n - 1), "dim [3,{n}]");
        ensure!(m3.leading() == BigInt::from(component_count(NestingKind::ThreeN, n).unwrap()), "[3,{n}] leading");
    }
    for (n, h) in hilb.iter().enumerate().skip(1) {
        for k in 1..=n {
            ensure!(h.coeff(n - k) == count_partitions_with_k_parts(n, k), "L^{} in Hilb({n})", n - k);
        }
    }
    Ok(())
}

fn c9_properties() -> Check {
    let engine = FlagEngine::default();
    for d in 1..=6 {
        for s in enum_skew_classes(d) {
            let t = s.transpose();
            ensure!(fz_lambda_ratio(&s, 30) == fz_lambda_ratio(&t, 30), "transposition at {}", s.render());
            let rf = engine.rational_form_lambda_full(&s).map_err(|e| e.to_string())?;
            ensure!(rf.numerator_degree().unwrap_or(0) <= pd_degree_bound(d), "degree at {}", s.render());
            let at0 = BigInt::from(s.is_partition() as i64);
            let at1 = BigInt::from(s.is_disjoint_boxes() as i64);
            ensure!(rf.numerator_at(0) == at0, "P(0) at {}", s.render());
            ensure!(rf.numerator_at(1) == at1, "P(1) at {}", s.render());
            engine.rational_form_lambda(&s).map_err(|e| format!("own denominator at {}: {e}", s.render()))?;
        }
    }
    for d in 1..=10 {
        let rf = engine.rational_form_d(d).map_err(|e| e.to_string())?;
        ensure!(rf.numerator_degree().unwrap_or(0) <= pd_degree_bound(d), "P_{d} degree");
    }
    for total in 1..=5 {
        for k in gap_vectors(total) {
            let rf = engine.rational_form_k(&k).map_err(|e| e.to_string())?;
            ensure!(rf.numerator_degree().unwrap_or(0) <= pk_degree_bound(total), "P_k degree at {k:?}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 P_D numerators for D = 1..10", c1_numerators),
        ("2 FZ_k / Z ratios", c2_ratios),
        ("3 flag oracle equivalence", c3_oracle),
        ("4 special values of P_D", c4_special_values),
        ("5 higher-rank identities", c5_higher_rank),
        ("6 coloured oracle equivalence", c6_coloured),
        ("7 dP6 coefficient", c7_dp6),
        ("8 motivic suite", c8_motives),
        ("9 shape property suites", c9_properties),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", t.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
