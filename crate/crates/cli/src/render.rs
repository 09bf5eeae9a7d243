//! Text rendering for humans; JSON goes through serde unchanged.

use qforge::classify::{EnumerationReport, Provenance};
use qforge::{AffineMesh, Quandle};
use serde_json::Value;

pub struct Output {
    json: bool,
}

impl Output {
    pub fn new(json: bool) -> Self {
        Output { json }
    }

    /// Prints `v` as JSON, or `text` in text mode.
    pub fn value(&self, v: &Value, text: &str) {
        if self.json {
            println!("{v}");
        } else {
            println!("{text}");
        }
    }

    pub fn quandle(&self, q: &Quandle) {
        if self.json {
            println!("{}", serde_json::to_string(q).expect("quandle serialises"));
        } else {
            println!("{}", table(q));
        }
    }
}

/// The operation table with a header row and column.
pub fn table(q: &Quandle) -> String {
    let n = q.size();
    let w = (n.max(2) - 1).to_string().len();
    let mut lines = vec![format!("{:>w$} |{}", "*", (0..n).map(|b| format!(" {b:>w$}")).collect::<String>())];
    lines.push(format!("{}-+{}", "-".repeat(w), "-".repeat((w + 1) * n)));
    for a in 0..n {
        lines.push(format!(
            "{a:>w$} |{}",
            (0..n).map(|b| format!(" {:>w$}", q.op(a, b))).collect::<String>()
        ));
    }
    lines.join("\n")
}

/// `key: value` lines for a JSON object, nested values inline.
pub fn fields(v: &Value) -> String {
    let Some(obj) = v.as_object() else {
        return v.to_string();
    };
    let width = obj.keys().map(String::len).max().unwrap_or(0);
    obj.iter()
        .map(|(k, v)| {
            let shown = match v {
                Value::String(s) => s.clone(),
                Value::Null => "-".to_string(),
                other => other.to_string(),
            };
            format!("{k:width$}  {shown}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn mesh(m: &AffineMesh) -> String {
    let k = m.len();
    let mut lines = vec![format!(
        "summands: {}",
        m.groups().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    )];
    for i in 0..k {
        for j in 0..k {
            let phi = m.phi(i, j);
            let shown = if phi.is_zero() { "0".to_string() } else { format!("{:?}", phi.matrix()) };
            lines.push(format!("phi[{i},{j}] = {shown}   c[{i},{j}] = {}", m.c(i, j)));
        }
    }
    lines.join("\n")
}

pub fn enumeration(rep: &EnumerationReport) -> String {
    let mut lines = vec![
        format!(
            "qforge {}  config {}  seed {}",
            rep.version, rep.config_hash, rep.seed
        ),
        format!(
            "order {}{}: {} SI medial quandle(s); latin {}, reductive {}, two-element projection {}, quasi-reductive non-reductive {}",
            rep.order,
            if rep.involutory_only { " (involutory)" } else { "" },
            rep.representatives.len(),
            rep.counts.latin,
            rep.counts.reductive,
            rep.counts.two_element_projection,
            rep.counts.quasi_reductive_non_reductive,
        ),
    ];
    if rep.truncated {
        lines.push(format!("best effort, skipped: {}", rep.skipped.join("; ")));
    }
    for (i, r) in rep.representatives.iter().enumerate() {
        let origin = match &r.provenance {
            Provenance::Alexander { module } => format!("Alexander over {} with t = {:?}", module.group(), module.t().matrix()),
            Provenance::Siq { spec } => format!(
                "siq over {} with t = {:?}, C = {{{}}}",
                spec.module().group(),
                spec.module().t().matrix(),
                spec.c().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            ),
        };
        lines.push(format!(
            "{i:>3}  {:<22}  orbits {:?}  {origin}",
            r.class.to_string(),
            r.fingerprint.orbit_sizes
        ));
    }
    lines.join("\n")
}
