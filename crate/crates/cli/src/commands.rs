use num_bigint::BigInt;
use serde_json::{json, Value};
use std::fs;
use std::path::Path;

use punctual::flag::{FlagEngine, FlagSeriesStrategy, StrategyRegistry};
use punctual::globalize::{globalize, punctual_nested_table, resolve_dp6_exponent, SurfaceProfile, DP6_TARGET};
use punctual::motive::{motive_2n, motive_3n, motive_strata, series_2bullet, series_3bullet};
use punctual::partition::{count_coloured_flags, FlagSpec};
use punctual::quot::QuotEngine;
use punctual::series::{Dense, LPoly, RationalForm};
use punctual::verify::{IdentityRegistry, VerifyConfig};

use crate::args::{FqArgs, FzArgs, GlobalizeArgs, MotiveArgs, OracleArgs, TablesArgs, VerifyArgs};
use crate::error::{usage, CliError, Result};
use crate::report::{csv_bytes, join, strings, Report};

fn rational_json(rf: &RationalForm) -> Value {
    let mut v = rf.to_json();
    v["display"] = json!(rf.to_string());
    v
}

fn series_json(s: &Dense) -> Value {
    json!(strings(s.coeffs()))
}

fn motive_json(nesting: &[usize], m: &LPoly) -> Value {
    json!({ "nesting": nesting, "motive": strings(m.coeffs()), "euler": m.eval_at_one().to_string() })
}

fn with_strategy<T>(name: &str, f: impl FnOnce(&dyn FlagSeriesStrategy) -> Result<T>) -> Result<T> {
    let reg = StrategyRegistry::default();
    f(reg.get(name)?)
}

pub fn fz(a: &FzArgs, guard: usize) -> Result<Report> {
    with_strategy(&a.method, |s| {
        let engine = FlagEngine::new(s, guard);
        let (label, key, rf, series) = match (&a.d, &a.k) {
            (Some(d), _) => {
                let rf = engine.rational_form_d(*d)?;
                let series = a.series.map(|n| engine.fz_d(*d, n)?.to_dense()).transpose()?;
                (format!("D = {d}"), json!({ "D": d }), rf, series)
            }
            (None, Some(k)) => {
                let rf = engine.rational_form_k(k)?;
                let series = a.series.map(|n| engine.fz_k(k, n)?.to_dense()).transpose()?;
                (format!("k = ({})", join(k, ",")), json!({ "k": k }), rf, series)
            }
            (None, None) => return usage("give --D or --k"),
        };
        let mut json = key;
        json["method"] = json!(s.name());
        json["rational_form"] = rational_json(&rf);
        let mut text = format!("FZ / Z for {label}:\n{rf}\n");
        if let Some(ser) = &series {
            json["series"] = series_json(ser);
            text.push_str(&format!("series: {}\n", join(ser.coeffs(), " ")));
        }
        let mut csv = vec![strings(&["degree", "coefficient"])];
        csv.extend(rf.numerator.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]));
        Ok(Report { json, text, csv })
    })
}

pub fn fq(a: &FqArgs, guard: usize) -> Result<Report> {
    with_strategy(&a.method, |s| {
        let quot = QuotEngine::new(FlagEngine::new(s, guard));
        let rf = quot.rational_form_rd(a.rank, a.d)?;
        let mut json = json!({ "rank": a.rank, "D": a.d, "method": s.name(), "rational_form": rational_json(&rf) });
        let mut text = format!("FQ / Z^r for r = {}, D = {}:\n{rf}\n", a.rank, a.d);
        if let Some(n) = a.series {
            let ser = quot.fq_rd(a.rank, a.d, n)?.to_dense()?;
            json["series"] = series_json(&ser);
            text.push_str(&format!("series: {}\n", join(ser.coeffs(), " ")));
        }
        let mut csv = vec![strings(&["degree", "coefficient"])];
        csv.extend(rf.numerator.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]));
        Ok(Report { json, text, csv })
    })
}

pub fn oracle(a: &OracleArgs) -> Result<Report> {
    let spec = FlagSpec::new(a.nesting.clone())?;
    let count = count_coloured_flags(a.rank, &spec)?;
    Ok(Report {
        json: json!({ "nesting": a.nesting, "rank": a.rank, "count": count.to_string() }),
        text: count.to_string(),
        csv: vec![strings(&["nesting", "rank", "count"]), vec![join(&a.nesting, ","), a.rank.to_string(), count.to_string()]],
    })
}

pub fn motive(a: &MotiveArgs) -> Result<Report> {
    if let Some(nesting) = &a.nesting {
        let m = match nesting.as_slice() {
            [2, n] => motive_2n(*n)?,
            [3, n] => motive_3n(*n)?,
            _ => return usage("--nesting must be 2,n or 3,n"),
        };
        return Ok(Report {
            json: motive_json(nesting, &m),
            text: format!("[{}] = {m}\neuler = {}", join(nesting, ","), m.eval_at_one()),
            csv: vec![strings(&["nesting", "motive", "euler"]), vec![join(nesting, ","), join(m.coeffs(), " "), m.eval_at_one().to_string()]],
        });
    }
    if let Some(n) = a.strata {
        let s = motive_strata(n)?;
        let parts = [("C", &s.c), ("H1", &s.h1), ("H2", &s.h2), ("H3", &s.h3)];
        let mut json = json!({ "n": n, "total": strings(s.total().coeffs()) });
        let mut text = format!("strata of the punctual Hilbert scheme of {n} points\n");
        let mut csv = vec![strings(&["stratum", "motive", "euler"])];
        for (name, m) in parts {
            json[name] = json!(strings(m.coeffs()));
            text.push_str(&format!("{name}: {m}\n"));
            csv.push(vec![name.to_string(), join(m.coeffs(), " "), m.eval_at_one().to_string()]);
        }
        text.push_str(&format!("total: {}\n", s.total()));
        return Ok(Report { json, text, csv });
    }
    let Some(t) = a.series else { return usage("give --nesting, --strata or --series") };
    let series = match a.step {
        2 => series_2bullet(t)?,
        3 => series_3bullet(t)?,
        _ => return usage("--step must be 2 or 3"),
    };
    let first = a.step;
    let rows: Vec<(usize, &LPoly)> = series.coeffs().iter().enumerate().filter(|(n, _)| *n >= first).collect();
    Ok(Report {
        json: json!({
            "step": a.step,
            "truncation": t,
            "terms": rows.iter().map(|(n, m)| motive_json(&[first, *n], m)).collect::<Vec<_>>(),
        }),
        text: rows.iter().map(|(n, m)| format!("[{first},{n}] = {m}")).collect::<Vec<_>>().join("\n"),
        csv: std::iter::once(strings(&["nesting", "motive", "euler"]))
            .chain(rows.iter().map(|(n, m)| vec![format!("{first},{n}"), join(m.coeffs(), " "), m.eval_at_one().to_string()]))
            .collect(),
    })
}

pub fn globalize_cmd(a: &GlobalizeArgs) -> Result<Report> {
    if a.resolve_dp6 {
        let e = resolve_dp6_exponent()?;
        return Ok(Report {
            json: json!({ "exponent": e, "target": DP6_TARGET.to_string() }),
            text: format!("chi(dP6) = {e} reproduces {DP6_TARGET}"),
            csv: vec![strings(&["exponent", "target"]), vec![e.to_string(), DP6_TARGET.to_string()]],
        });
    }
    let chi = a.chi.expect("required by the parser");
    let n2 = a.n2.unwrap_or(4);
    let n1 = a.n1.unwrap_or(n2.min(2));
    if n1 > n2 {
        return usage("--n1 must not exceed --n2");
    }
    let table = punctual_nested_table(a.rank, n1, n2)?;
    let global = globalize(&table, &SurfaceProfile::new("S", chi))?;
    let coef = global.coeff(&[n1 as u32, n2 as u32]);
    let mut csv = vec![strings(&["n1", "n2", "coefficient"])];
    for (e, c) in global.terms() {
        csv.push(vec![e[0].to_string(), e[1].to_string(), c.to_string()]);
    }
    Ok(Report {
        json: json!({ "rank": a.rank, "n1": n1, "n2": n2, "chi": chi, "coefficient": coef.to_string(), "table": global.to_json() }),
        text: format!("coefficient of q1^{n1} q2^{n2} for rank {} and chi = {chi}: {coef}", a.rank),
        csv,
    })
}

pub fn verify(a: &VerifyArgs, guard: usize) -> Result<Report> {
    let reg = IdentityRegistry::default();
    if a.list {
        let items: Vec<Value> = reg.iter().map(|i| json!({ "name": i.name(), "description": i.description() })).collect();
        return Ok(Report {
            text: reg.iter().map(|i| format!("{:<20} {}", i.name(), i.description())).collect::<Vec<_>>().join("\n"),
            csv: std::iter::once(strings(&["name", "description"]))
                .chain(reg.iter().map(|i| strings(&[i.name(), i.description()])))
                .collect(),
            json: json!({ "identities": items }),
        });
    }
    let cfg = VerifyConfig { q: a.q, s: a.s, v: a.v, guard };
    let outcomes = reg.run(&a.only, &cfg)?;
    let all = outcomes.iter().all(|o| o.passed);
    let report = Report {
        json: json!({
            "passed": all,
            "truncation": { "q": a.q, "s": a.s, "v": a.v },
            "results": outcomes.iter().map(|o| json!({ "name": o.name, "passed": o.passed, "detail": o.detail })).collect::<Vec<_>>(),
        }),
        text: outcomes
            .iter()
            .map(|o| match &o.detail {
                None => format!("PASS {}", o.name),
                Some(d) => format!("FAIL {}: {d}", o.name),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        csv: std::iter::once(strings(&["name", "passed", "detail"]))
            .chain(outcomes.iter().map(|o| vec![o.name.clone(), o.passed.to_string(), o.detail.clone().unwrap_or_default()]))
            .collect(),
    };
    Ok(report)
}

/// Reference gap vectors for the FZ_k table.
const RATIO_GAPS: [&[usize]; 8] =
    [&[1, 1], &[1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1], &[1, 2], &[2, 1], &[2, 2]];

fn write_pair(dir: &Path, stem: &str, rows: &[Vec<String>], json: &Value, written: &mut Vec<String>) -> Result<()> {
    let csv_name = format!("{stem}.csv");
    fs::write(dir.join(&csv_name), csv_bytes(rows)?)?;
    let json_name = format!("{stem}.json");
    let mut body = serde_json::to_string_pretty(json).map_err(|e| std::io::Error::other(e.to_string()))?;
    body.push('\n');
    fs::write(dir.join(&json_name), body)?;
    written.push(csv_name);
    written.push(json_name);
    Ok(())
}

fn rational_rows(label: &str, items: &[(String, RationalForm)]) -> (Vec<Vec<String>>, Value) {
    let mut rows = vec![strings(&[label, "numerator", "denominator"])];
    let mut json = vec![];
    for (k, rf) in items {
        rows.push(vec![k.clone(), join(&rf.numerator, " "), rf.denominator_string()]);
        let mut v = rational_json(rf);
        v[label] = json!(k);
        json.push(v);
    }
    (rows, Value::Array(json))
}

pub fn tables(a: &TablesArgs, guard: usize) -> Result<Report> {
    if a.max_d == 0 {
        return usage("--max-d must be positive");
    }
    fs::create_dir_all(&a.out)?;
    let reg = StrategyRegistry::default();
    let engine = FlagEngine::new(reg.get(punctual::flag::DEFAULT_STRATEGY)?, guard);
    let quot = QuotEngine::new(engine);
    let mut written = vec![];

    let pd: Vec<(String, RationalForm)> =
        (1..=a.max_d).map(|d| Ok((d.to_string(), engine.rational_form_d(d)?))).collect::<Result<_>>()?;
    let (rows, json) = rational_rows("D", &pd);
    write_pair(&a.out, "polynomials_d", &rows, &json, &mut written)?;

    let pk: Vec<(String, RationalForm)> =
        RATIO_GAPS.iter().map(|k| Ok((join(k, ","), engine.rational_form_k(k)?))).collect::<Result<_>>()?;
    let (rows, json) = rational_rows("k", &pk);
    write_pair(&a.out, "ratios_k", &rows, &json, &mut written)?;

    let mut prd = vec![];
    for r in 1..=3 {
        for d in 1..=3 {
            prd.push((format!("{r},{d}"), quot.rational_form_rd(r, d)?));
        }
    }
    let (rows, json) = rational_rows("rank,D", &prd);
    write_pair(&a.out, "quot_rd", &rows, &json, &mut written)?;

    let mut rows = vec![strings(&["nesting", "motive", "euler"])];
    let mut json = vec![];
    for (i, n) in (4..=15).map(|n| (2, n)).chain((5..=15).map(|n| (3, n))) {
        let m = if i == 2 { motive_2n(n)? } else { motive_3n(n)? };
        rows.push(vec![format!("{i},{n}"), join(m.coeffs(), " "), m.eval_at_one().to_string()]);
        json.push(motive_json(&[i, n], &m));
    }
    write_pair(&a.out, "motives", &rows, &Value::Array(json), &mut written)?;

    let e = resolve_dp6_exponent()?;
    let table = punctual_nested_table(6, 6, 12)?;
    let coef: BigInt = globalize(&table, &SurfaceProfile::new("dP6", e))?.coeff(&[6, 12]);
    let rows = vec![strings(&["exponent", "coefficient"]), vec![e.to_string(), coef.to_string()]];
    write_pair(&a.out, "dp6", &rows, &json!({ "exponent": e, "coefficient": coef.to_string() }), &mut written)?;

    let dir = a.out.display().to_string();
    Ok(Report {
        text: format!("wrote {} files to {dir}\n{}", written.len(), written.join("\n")),
        csv: std::iter::once(strings(&["file"])).chain(written.iter().map(|f| vec![f.clone()])).collect(),
        json: json!({ "directory": dir, "files": written }),
    })
}

pub fn failed_checks(r: &Report) -> Option<CliError> {
    (r.json.get("passed") == Some(&Value::Bool(false))).then(|| CliError::Failed("some identities failed".into()))
}
