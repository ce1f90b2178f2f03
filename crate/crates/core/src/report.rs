//! Text and JSON rendering of analysis results.
//!
//! JSON carries every rational as a `"p/q"` string and infinity as `"inf"`.
//! With `approx` set, each value also gets an `*_approx` float field (JSON)
//! or a `~` decimal suffix (text); these are for reading only.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::equilibria::{CeSolution, NashSet};
use crate::game::{CorrelatedStrategy, MixedProfile};
use crate::rational::{approx_f64, format_rational, Rational};
use crate::search::{SearchConfig, SearchOutcome};
use crate::values::{ExtendedRational, MediationValue, ValueReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Style {
    pub approx: bool,
}

fn ext_approx(v: &ExtendedRational) -> Value {
    match v {
        ExtendedRational::Finite(r) => json!(approx_f64(r)),
        ExtendedRational::Infinite => json!("inf"),
    }
}

fn put_rational(map: &mut Map<String, Value>, key: &str, r: &Rational, style: Style) {
    map.insert(key.into(), json!(format_rational(r)));
    if style.approx {
        map.insert(format!("{key}_approx"), json!(approx_f64(r)));
    }
}

fn put_ext(map: &mut Map<String, Value>, key: &str, v: &ExtendedRational, style: Style) {
    map.insert(key.into(), json!(v.to_string()));
    if style.approx {
        map.insert(format!("{key}_approx"), ext_approx(v));
    }
}

fn text_rational(r: &Rational, style: Style) -> String {
    if style.approx && !r.is_integer() {
        format!("{} (~{:.6})", format_rational(r), approx_f64(r))
    } else {
        format_rational(r)
    }
}

fn text_ext(v: &ExtendedRational, style: Style) -> String {
    match v {
        ExtendedRational::Finite(r) => text_rational(r, style),
        ExtendedRational::Infinite => "inf".into(),
    }
}

fn mv_kind(mv: &MediationValue) -> &'static str {
    match mv {
        MediationValue::Exact(_) => "exact",
        MediationValue::UpperBound(_) => "upper_bound",
        MediationValue::Indeterminate => "indeterminate",
    }
}

pub fn values_json(r: &ValueReport, style: Style) -> Value {
    let mut m = Map::new();
    match &r.nash.value {
        Some(v) => put_rational(&mut m, "v_n", v, style),
        None => {
            m.insert("v_n".into(), Value::Null);
        }
    }
    m.insert("v_n_completeness".into(), json!(r.nash.completeness.as_str()));
    put_rational(&mut m, "v_c", &r.v_c, style);
    put_rational(&mut m, "opt", &r.opt, style);
    match r.mv.value() {
        Some(v) => put_ext(&mut m, "mv", v, style),
        None => {
            m.insert("mv".into(), Value::Null);
        }
    }
    m.insert("mv_kind".into(), json!(mv_kind(&r.mv)));
    put_ext(&mut m, "ev", &r.ev, style);
    Value::Object(m)
}

pub fn values_text(r: &ValueReport, style: Style) -> String {
    let v_n = match &r.nash.value {
        Some(v) => text_rational(v, style),
        None => "unknown".into(),
    };
    let mv = match &r.mv {
        MediationValue::Exact(v) => text_ext(v, style),
        MediationValue::UpperBound(v) => format!("<= {} (v_N is a lower bound)", text_ext(v, style)),
        MediationValue::Indeterminate => "indeterminate".into(),
    };
    format!(
        "v_N  = {v_n} [{}]\nv_C  = {}\nopt  = {}\nMV   = {mv}\nEV   = {}\n",
        r.nash.completeness.as_str(),
        text_rational(&r.v_c, style),
        text_rational(&r.opt, style),
        text_ext(&r.ev, style),
    )
}

fn profile_json(p: &MixedProfile) -> Value {
    Value::Array(
        p.strategies()
            .iter()
            .map(|s| Value::Array(s.iter().map(|x| json!(format_rational(x))).collect()))
            .collect(),
    )
}

pub fn nash_json(set: &NashSet, style: Style) -> Value {
    let list: Vec<Value> = set
        .equilibria
        .iter()
        .map(|e| {
            let mut m = Map::new();
            m.insert("profile".into(), profile_json(&e.profile));
            put_rational(&mut m, "surplus", &e.surplus, style);
            Value::Object(m)
        })
        .collect();
    json!({
        "completeness": set.completeness.as_str(),
        "degenerate": set.degenerate,
        "equilibria": list,
    })
}

pub fn nash_text(set: &NashSet, style: Style) -> String {
    let mut out = format!(
        "{} Nash equilibria ({}{})\n",
        set.equilibria.len(),
        set.completeness.as_str(),
        if set.degenerate { ", degenerate" } else { "" }
    );
    for e in &set.equilibria {
        let _ = writeln!(out, "  {}  surplus {}", e.profile, text_rational(&e.surplus, style));
    }
    out
}

pub fn distribution_json(mu: &CorrelatedStrategy) -> Value {
    Value::Array(
        mu.support()
            .map(|(p, w)| json!({ "profile": p.0, "weight": format_rational(w) }))
            .collect(),
    )
}

pub fn distribution_text(mu: &CorrelatedStrategy) -> String {
    let mut out = String::new();
    for (p, w) in mu.support() {
        let _ = writeln!(out, "  {p}  {}", format_rational(w));
    }
    out
}

pub fn ce_json(sol: &CeSolution, style: Style) -> Value {
    let mut alpha = Vec::new();
    for (i, a) in sol.certificate.alpha.iter().enumerate() {
        for (s, row) in a.iter().enumerate() {
            for (t, x) in row.iter().enumerate() {
                if s != t && *x != Rational::from_integer(0.into()) {
                    alpha.push(json!({
                        "player": i, "recommended": s, "deviation": t,
                        "value": format_rational(x),
                    }));
                }
            }
        }
    }
    let mut m = Map::new();
    put_rational(&mut m, "v_c", &sol.value, style);
    m.insert("distribution".into(), distribution_json(&sol.distribution));
    m.insert(
        "certificate".into(),
        json!({ "beta": format_rational(&sol.certificate.beta), "alpha": alpha }),
    );
    Value::Object(m)
}

pub fn ce_text(sol: &CeSolution, style: Style) -> String {
    let mut out = format!("v_C = {}\noptimal correlated equilibrium:\n", text_rational(&sol.value, style));
    out.push_str(&distribution_text(&sol.distribution));
    let _ = writeln!(out, "dual certificate: beta = {}", format_rational(&sol.certificate.beta));
    for (i, a) in sol.certificate.alpha.iter().enumerate() {
        for (s, row) in a.iter().enumerate() {
            for (t, x) in row.iter().enumerate() {
                if s != t && *x != Rational::from_integer(0.into()) {
                    let _ = writeln!(out, "  alpha[{i}]({t}|{s}) = {}", format_rational(x));
                }
            }
        }
    }
    out
}

pub fn search_json(cfg: &SearchConfig, out: &SearchOutcome, style: Style) -> Value {
    let transcript: Vec<Value> = out
        .transcript
        .iter()
        .map(|imp| json!({ "iteration": imp.iteration, "value": imp.value.to_string() }))
        .collect();
    let mut m = Map::new();
    m.insert("seed".into(), json!(cfg.seed));
    m.insert("iterations".into(), json!(cfg.iterations));
    m.insert("target".into(), json!(cfg.target.as_str()));
    put_rational(&mut m, "threshold", &cfg.threshold, style);
    m.insert("evaluated".into(), json!(out.evaluated));
    m.insert("filtered".into(), json!(out.filtered));
    m.insert("indeterminate".into(), json!(out.indeterminate));
    m.insert(
        "status".into(),
        json!(if out.threshold_met { "threshold_met" } else { "inconclusive" }),
    );
    m.insert("estimate".into(), json!(out.estimate));
    m.insert("transcript".into(), Value::Array(transcript));
    m.insert(
        "best".into(),
        match &out.best {
            None => Value::Null,
            Some(b) => {
                let mut bm = Map::new();
                bm.insert("iteration".into(), json!(b.iteration));
                put_ext(&mut bm, "value", &b.value, style);
                bm.insert("report".into(), values_json(&b.report, style));
                bm.insert(
                    "instance".into(),
                    serde_json::from_str(&crate::io::render(&b.instance)).expect("rendered JSON parses"),
                );
                Value::Object(bm)
            }
        },
    );
    Value::Object(m)
}

pub fn search_text(cfg: &SearchConfig, out: &SearchOutcome, style: Style) -> String {
    let mut s = format!(
        "search: target {} > {}, seed {}, {} iterations ({} evaluated, {} filtered, {} indeterminate)\n",
        cfg.target.as_str(),
        format_rational(&cfg.threshold),
        cfg.seed,
        cfg.iterations,
        out.evaluated,
        out.filtered,
        out.indeterminate
    );
    s.push_str("improvements:\n");
    for imp in &out.transcript {
        let _ = writeln!(s, "  #{:<8} {}", imp.iteration, text_ext(&imp.value, style));
    }
    match &out.best {
        None => s.push_str("no instance produced a value\n"),
        Some(b) => {
            let _ = writeln!(
                s,
                "best: iteration {} with {} = {}{} (re-analyzed)",
                b.iteration,
                cfg.target.as_str(),
                text_ext(&b.value, style),
                if out.estimate { " [estimate]" } else { "" }
            );
            s.push_str(&values_text(&b.report, style));
            s.push_str(&crate::io::render(&b.instance));
        }
    }
    let _ = writeln!(
        s,
        "status: {}",
        if out.threshold_met { "threshold met" } else { "inconclusive (threshold not met within budget)" }
    );
    s
}
