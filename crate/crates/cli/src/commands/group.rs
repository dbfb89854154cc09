use std::fmt::Write;

use coordlens_core::criteria::{crit_conj_centralizer, crit_p, crit_perfect_dagger, CriterionOutcome};
use coordlens_core::groups::{prime_divisors, FiniteGroup, GroupError};
use serde_json::{json, Value};

use super::CmdResult;
use crate::error::CliError;
use crate::output::{set_text, yes_no, Output};
use crate::GroupCmd;

/// A field that may be skipped because the group exceeds an operation bound.
fn field<T>(r: Result<T, GroupError>, f: impl FnOnce(&T) -> Value) -> Value {
    match r {
        Ok(v) => f(&v),
        Err(e @ GroupError::TooLarge { .. }) => json!({ "skipped": e.to_string() }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn text_of(v: &Value) -> String {
    match v {
        Value::Bool(b) => yes_no(*b).to_string(),
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("skipped") => format!("skipped ({})", m["skipped"].as_str().unwrap_or("")),
        Value::Object(m) if m.contains_key("error") => format!("error ({})", m["error"].as_str().unwrap_or("")),
        other => other.to_string(),
    }
}

fn criterion_line(o: &CriterionOutcome) -> String {
    match o {
        CriterionOutcome::Pass(c) => format!("crit_{} PASS: {}", c.criterion, c.detail),
        CriterionOutcome::Fail(f) => format!("crit_{} FAIL: {}", f.criterion, f.reason),
    }
}

fn analyze(g: &FiniteGroup) -> Result<Value, CliError> {
    let labels = |elems: &mut dyn Iterator<Item = u32>| -> Vec<String> { elems.map(|a| g.label(a).to_string()).collect() };
    let classes = field(g.conjugacy_classes(), |cs| {
        json!({ "count": cs.len(), "sizes": cs.iter().map(Vec::len).collect::<Vec<_>>() })
    });
    let center = g.center();
    let center_elems: Vec<u32> = g.elements().filter(|&a| center.contains(a)).collect();
    let nilpotent = field(g.lower_central_series(), |(_, class)| json!({ "nilpotent": class.is_some(), "class": class }));
    let width = field(g.commutator_width(), |w| json!({ "perfect": w.perfect, "width": w.width }));
    let derived = field(g.commutator_subgroup(), |d| json!(d.order()));
    let abelianization = field(g.abelianization(), |a| json!(a));
    let decomposable = field(g.is_decomposable(), |d| match d {
        Some((a, b)) => json!({ "decomposable": true, "factors": [a.order(), b.order()] }),
        None => json!({ "decomposable": false }),
    });
    let normal = field(g.normal_subgroups(), |ns| json!(ns.iter().map(|n| n.order()).collect::<Vec<_>>()));

    let mut criteria = vec![crit_conj_centralizer(g)];
    for p in prime_divisors(g.order()) {
        criteria.push(crit_p(g, p));
    }
    if let Ok(w) = g.commutator_width() {
        if w.perfect && g.order() > 1 {
            criteria.push(crit_perfect_dagger(g, w.width));
        }
    }
    let criteria: Vec<Value> = criteria
        .into_iter()
        .map(|r| match r {
            Ok(o) => json!({ "outcome": o, "line": criterion_line(&o) }),
            Err(e) => json!({ "line": format!("skipped: {e}") }),
        })
        .collect();

    Ok(json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "classes": classes,
        "center": { "order": center.order(), "elements": labels(&mut center_elems.into_iter()) },
        "lower_central_series": nilpotent,
        "commutator_width": width,
        "derived_order": derived,
        "abelianization": abelianization,
        "decomposition": decomposable,
        "normal_subgroup_orders": normal,
        "criteria": criteria,
    }))
}

pub fn group(cmd: GroupCmd, out: Output) -> CmdResult {
    let GroupCmd::Analyze { group, bound } = cmd;
    let g = crate::input::load_group(&group)?;
    if g.order() > bound {
        return Err(CliError::Bound(format!("{} has order {}, above --bound {bound}", g.name(), g.order())));
    }
    let doc = analyze(&g)?;
    out.emit(doc.clone(), || {
        let mut s = String::new();
        let _ = writeln!(s, "group {} (order {})", doc["name"].as_str().unwrap(), doc["order"]);
        let _ = writeln!(s, "abelian: {}", text_of(&doc["abelian"]));
        let classes = match doc["classes"].get("count") {
            Some(c) => format!("{c} (sizes {})", doc["classes"]["sizes"]),
            None => text_of(&doc["classes"]),
        };
        let _ = writeln!(s, "classes: {classes}");
        let center = &doc["center"];
        let elems = center["elements"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string());
        let _ = writeln!(s, "center: {} {}", center["order"], set_text(elems));
        let lcs = &doc["lower_central_series"];
        let nil = match lcs.get("nilpotent") {
            Some(Value::Bool(true)) => format!("nilpotent of class {}", lcs["class"]),
            Some(_) => "not nilpotent".into(),
            None => text_of(lcs),
        };
        let _ = writeln!(s, "nilpotent: {nil}");
        let w = &doc["commutator_width"];
        match w.get("perfect") {
            Some(p) => {
                let _ = writeln!(s, "perfect: {}, commutator width {}", text_of(p), w["width"]);
            }
            None => {
                let _ = writeln!(s, "commutator width: {}", text_of(w));
            }
        }
        let _ = writeln!(s, "derived subgroup order: {}", text_of(&doc["derived_order"]));
        let _ = writeln!(s, "abelianization: {}", text_of(&doc["abelianization"]));
        let d = &doc["decomposition"];
        let dec = match d.get("decomposable") {
            Some(Value::Bool(true)) => format!("decomposable ({} x {})", d["factors"][0], d["factors"][1]),
            Some(_) => "indecomposable".into(),
            None => text_of(d),
        };
        let _ = writeln!(s, "decomposition: {dec}");
        let _ = writeln!(s, "normal subgroup orders: {}", text_of(&doc["normal_subgroup_orders"]));
        let _ = writeln!(s, "criteria:");
        for c in doc["criteria"].as_array().unwrap() {
            let _ = writeln!(s, "  {}", c["line"].as_str().unwrap());
        }
        s
    });
    Ok(true)
}
