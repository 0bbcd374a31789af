//! JSON rendering of verification reports.

use serde_json::{json, Map, Value};

use crate::formulas::{SideBreakdown, VerificationReport};

/// Rounds to 15 significant digits so reports are stable across platforms.
pub fn round15(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    json!(r)
}

fn rhs_json(side: &Option<SideBreakdown>) -> Value {
    match side {
        None => Value::Null,
        Some(s) => json!({
            "h": round15(s.component("h_r").unwrap_or(0.0)),
            "zero_sum": round15(s.component("zero_sum").unwrap_or(0.0)),
            "trivial_sum": round15(s.component("trivial_sum").unwrap_or(0.0)),
            "total": round15(s.value),
            "tail_estimate": round15(s.tail_estimate),
            "imag_residue": round15(s.imag_residue),
        }),
    }
}

fn opt(v: Option<f64>) -> Value {
    v.map(round15).unwrap_or(Value::Null)
}

pub fn report_json(r: &VerificationReport) -> Value {
    let p = &r.params;
    let cfg = &r.precision;
    let h_variants: Map<String, Value> = r
        .h_variants
        .iter()
        .map(|(k, v)| (k.clone(), round15(*v)))
        .collect();
    json!({
        "identity": p.identity.name(),
        "params": {
            "x": round15(p.x),
            "r": p.r,
            "weight": p.weight.name(),
            "n_terms": p.n_terms,
            "n_zeros": p.n_zeros,
            "n_trivial": p.n_trivial,
            "rhs_mode": p.rhs_mode.name(),
        },
        "precision": {
            "em_bernoulli_order": cfg.em_bernoulli_order,
            "em_terms": {
                "min_terms": cfg.em_terms.min_terms,
                "offset": round15(cfg.em_terms.offset),
                "per_unit_height": round15(cfg.em_terms.per_unit_height),
            },
            "target_abs_err": round15(cfg.target_abs_err),
            "quadrature_nodes_per_panel": cfg.quadrature_nodes_per_panel,
            "line_integral_cutoff": round15(cfg.line_integral_cutoff),
        },
        "lhs": {
            "value": round15(r.lhs.value),
            "tail_bound": round15(r.lhs.tail_estimate),
        },
        "rhs_paper": rhs_json(&r.rhs_paper),
        "rhs_oracle": rhs_json(&r.rhs_oracle),
        "residual_paper": opt(r.residual_paper),
        "residual_oracle": opt(r.residual_oracle),
        "pass_bound": round15(r.pass_bound),
        "pass": r.pass,
        "runtime_ms": r.runtime_ms,
        "h_variants": h_variants,
    })
}

/// Plain-text table of the components of both sides.
pub fn summary_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let p = &r.params;
    out.push_str(&format!(
        "{} (r = {}, x = {}, terms = {}, zeros = {}, trivial = {})\n",
        p.identity.name(),
        p.r,
        p.x,
        p.n_terms,
        p.n_zeros,
        p.n_trivial
    ));
    out.push_str(&format!("{:<14}{:>24}{:>24}\n", "", "paper", "oracle"));
    let cell = |s: &Option<SideBreakdown>, key: Option<&str>| -> String {
        match s {
            None => "-".to_string(),
            Some(s) => {
                let v = match key {
                    Some(k) => s.component(k).unwrap_or(0.0),
                    None => s.value,
                };
                format!("{v:.15e}")
            }
        }
    };
    for (label, key) in [
        ("h", Some("h_r")),
        ("zero_sum", Some("zero_sum")),
        ("trivial_sum", Some("trivial_sum")),
        ("total", None),
    ] {
        out.push_str(&format!(
            "{:<14}{:>24}{:>24}\n",
            label,
            cell(&r.rhs_paper, key),
            cell(&r.rhs_oracle, key)
        ));
    }
    let res = |v: Option<f64>| v.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into());
    out.push_str(&format!(
        "{:<14}{:>24}{:>24}\n",
        "residual",
        res(r.residual_paper),
        res(r.residual_oracle)
    ));
    out.push_str(&format!("lhs           {:.15e} (tail {:.3e})\n", r.lhs.value, r.lhs.tail_estimate));
    out.push_str(&format!(
        "pass_bound    {:.3e}  {}  ({} ms)\n",
        r.pass_bound,
        if r.pass { "PASS" } else { "FAIL" },
        r.runtime_ms
    ));
    out
}
