//! Serialization of classification reports as deterministic JSON and as text.

use hha::classify::{ClassificationReport, Verdict};
use hha::{Form, Scalar};
use serde_json::{json, Map, Value};

/// Where a report came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub input_sha256: String,
    pub library_version: &'static str,
    pub scalar_field: String,
    /// The pair of sphere points used as `(I, J)`, when not the standard one.
    pub pair: Option<String>,
}

/// Scalar and form rendering: exact canonical strings, or floats under `--float`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Render {
    pub float: bool,
}

impl Render {
    pub fn scalar(self, x: &Scalar) -> Value {
        if self.float {
            json!(x.to_f64())
        } else {
            Value::String(x.to_string())
        }
    }

    pub fn form(self, f: &Form) -> Value {
        Value::String(self.form_text(f))
    }

    pub fn scalar_text(self, x: &Scalar) -> String {
        if self.float {
            x.to_f64().to_string()
        } else {
            x.to_string()
        }
    }

    pub fn form_text(self, f: &Form) -> String {
        if self.float {
            f.to_float().to_string()
        } else {
            f.to_string()
        }
    }

    fn opt_scalar(self, x: Option<&Scalar>) -> Value {
        x.map_or(Value::Null, |x| self.scalar(x))
    }

    fn verdict(self, v: &Verdict) -> Value {
        json!({
            "holds": v.holds,
            "residual": self.form(&v.residual),
            "scalar_residual": self.opt_scalar(v.scalar_residual.as_ref()),
        })
    }
}

pub fn provenance_json(p: &Provenance) -> Value {
    json!({
        "input_sha256": p.input_sha256,
        "library_version": p.library_version,
        "scalar_field": p.scalar_field,
        "pair": p.pair,
    })
}

fn named_verdicts(r: &ClassificationReport) -> Vec<(&'static str, &Verdict)> {
    let mut v = vec![
        ("hyperkahler", &r.hyperkahler),
        ("hkt", &r.hkt),
        ("strong_hkt", &r.strong_hkt),
        ("q_balanced", &r.q_balanced),
        ("q_strongly_gauduchon", &r.q_strongly_gauduchon),
        ("q_gauduchon", &r.q_gauduchon),
        ("balanced", &r.balanced),
        ("gauduchon", &r.gauduchon),
    ];
    for s in &r.skt {
        v.push((
            match s.label.as_str() {
                "I" => "skt_i",
                "J" => "skt_j",
                _ => "skt_k",
            },
            &s.verdict,
        ));
    }
    v
}

/// All boolean verdicts that appear in both report formats, in a fixed order.
pub fn verdict_set(r: &ClassificationReport) -> Vec<(String, bool)> {
    let mut v: Vec<(String, bool)> = r.flags().into_iter().map(|(k, b)| (k.to_string(), b)).collect();
    v.push(("abelian_structure".into(), r.abelian_structure));
    v.push(("unimodular".into(), r.unimodular));
    v.push(("einstein".into(), r.einstein.lambda.is_some()));
    v.push(("sl_n_h".into(), r.sl.alpha_zero));
    v
}

/// The report as a JSON value with a fixed key order.
pub fn report_json(name: &str, prov: &Provenance, r: &ClassificationReport, render: Render) -> Value {
    let mut flags = Map::new();
    for (k, b) in verdict_set(r) {
        flags.insert(k, Value::Bool(b));
    }
    let mut verdicts = Map::new();
    for (k, v) in named_verdicts(r) {
        verdicts.insert(k.into(), render.verdict(v));
    }
    let obstruction = r.obstruction.as_ref().map_or(Value::Null, |o| {
        json!({
            "c1": render.scalar(&o.c1),
            "gamma_unit_volume": render.scalar(&o.gamma_unit),
            "gamma_metric_volume": render.scalar(&o.gamma_metric),
            "volume": render.scalar(&o.volume),
            "q_gauduchon_in_class": o.q_gauduchon_in_class,
            "q_balanced_in_class": o.q_balanced_in_class,
        })
    });
    json!({
        "name": name,
        "provenance": provenance_json(prov),
        "scope": r.scope,
        "n": r.n,
        "dimension": 4 * r.n,
        "degenerate_n1": r.degenerate_n1,
        "flags": flags,
        "verdicts": verdicts,
        "qsg_witness": r.qsg_witness.as_ref().map_or(Value::Null, |w| render.form(w)),
        "canonical": {
            "alpha": render.form(&r.canonical.alpha),
            "beta": render.form(&r.canonical.beta),
            "eta": render.form(&r.canonical.eta),
            "theta": render.form(&r.canonical.theta),
        },
        "curvature": {
            "ric_chern": render.form(&r.curvature.ric_chern),
            "ric_bismut": render.form(&r.curvature.ric_bismut),
            "ric_obata": render.form(&r.curvature.ric_obata),
            "s_chern": render.scalar(&r.curvature.s_chern),
            "s_bismut": render.scalar(&r.curvature.s_bismut),
            "s_obata": render.scalar(&r.curvature.s_obata),
            "del_j_alpha": render.form(&r.curvature.del_j_alpha),
            "del_j_beta": render.form(&r.curvature.del_j_beta),
        },
        "alpha_norm_sqr": render.scalar(&r.alpha_norm_sqr),
        "beta_norm_sqr": render.scalar(&r.beta_norm_sqr),
        "einstein": {
            "lambda": render.opt_scalar(r.einstein.lambda.as_ref()),
            "residual": render.form(&r.einstein.residual),
        },
        "sl": {
            "alpha_zero": r.sl.alpha_zero,
            "d_eta_zero": r.sl.d_eta_zero,
            "del_j_alpha_zero": r.sl.del_j_alpha_zero,
            "caveat": r.sl.caveat,
        },
        "obstruction": obstruction,
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// The report as human-readable text. Every entry of [`verdict_set`] appears as `name: bool`.
pub fn report_text(name: &str, prov: &Provenance, r: &ClassificationReport, render: Render) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("report {name}"));
    line(format!("  input_sha256: {}", prov.input_sha256));
    line(format!("  library_version: {}", prov.library_version));
    line(format!("  scalar_field: {}", prov.scalar_field));
    if let Some(p) = &prov.pair {
        line(format!("  pair: {p}"));
    }
    line(format!("  n: {}", r.n));
    line("verdicts".into());
    for (k, b) in verdict_set(r) {
        line(format!("  {k}: {b}"));
    }
    line("quantities".into());
    if let Some(w) = &r.qsg_witness {
        line(format!("  qsg_witness: {}", render.form_text(w)));
    }
    line(format!("  alpha: {}", render.form_text(&r.canonical.alpha)));
    line(format!("  beta: {}", render.form_text(&r.canonical.beta)));
    line(format!("  del_j_alpha: {}", render.form_text(&r.curvature.del_j_alpha)));
    line(format!("  lambda: {}", r.einstein.lambda.as_ref().map_or("none".to_string(), |l| render.scalar_text(l))));
    line(format!("  s_chern: {}", render.scalar_text(&r.curvature.s_chern)));
    line(format!("  s_bismut: {}", render.scalar_text(&r.curvature.s_bismut)));
    line(format!("  s_obata: {}", render.scalar_text(&r.curvature.s_obata)));
    if let Some(o) = &r.obstruction {
        line(format!("  c1: {}", render.scalar_text(&o.c1)));
        line(format!("  gamma_unit_volume: {}", render.scalar_text(&o.gamma_unit)));
    }
    line(format!("scope: {}", r.scope));
    out
}

/// Parses the `name: bool` lines of a text report back into a verdict set.
pub fn parse_text_verdicts(text: &str) -> Vec<(String, bool)> {
    let mut in_block = false;
    let mut out = Vec::new();
    for l in text.lines() {
        if l == "verdicts" {
            in_block = true;
            continue;
        }
        if in_block {
            match l.trim().split_once(": ") {
                Some((k, v)) if l.starts_with("  ") => out.push((k.to_string(), v == "true")),
                _ => break,
            }
        }
    }
    out
}
