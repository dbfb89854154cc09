use std::fmt::Write;

use coordlens_core::logic::{parse_formula, Evaluator, Formula, Interp};
use coordlens_core::reduced::{los_check, los_check_all, FiniteIdeal, ReducedProduct};
use serde_json::{json, Value};

use super::CmdResult;
use crate::error::CliError;
use crate::input::{json_arg, load_structure, split_top_level};
use crate::output::{set_text, yes_no, Output};
use crate::{ProductArgs, ReducedCmd};

struct Built {
    names: Vec<String>,
    rp: ReducedProduct,
}

fn build(args: &ProductArgs) -> Result<Built, CliError> {
    let mut names = Vec::new();
    let mut factors = Vec::new();
    for f in args.factors.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, m) = load_structure(f)?;
        names.push(name);
        factors.push(m);
    }
    if factors.is_empty() {
        return Err(CliError::Input("no factors given".into()));
    }
    let mut ideal = json_arg(&args.ideal)?;
    let Value::Object(map) = &mut ideal else {
        return Err(CliError::Parse("ideal must be a JSON object".into()));
    };
    map.entry("indices").or_insert(json!(factors.len()));
    let ideal = FiniteIdeal::from_json(&ideal)?;
    if ideal.indices() != factors.len() {
        return Err(CliError::Input(format!("ideal has {} indices but there are {} factors", ideal.indices(), factors.len())));
    }
    Ok(Built { names, rp: ReducedProduct::new(factors, &ideal)? })
}

/// The formula and its free variables (sorted) bound to `--elem` values.
fn bind(rp: &ReducedProduct, text: &str, elems: &[String]) -> Result<(Formula, Vec<String>, Vec<u32>), CliError> {
    let phi = parse_formula(text, rp.signature())?;
    let vars: Vec<String> = phi.free_vars().iter().cloned().collect();
    if elems.len() != vars.len() {
        return Err(CliError::Input(format!(
            "formula has free variables [{}] but {} --elem given",
            vars.join(", "),
            elems.len()
        )));
    }
    let a = elems
        .iter()
        .map(|e| {
            let parts = split_top_level(e);
            let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
            rp.element_from_labels(&refs)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((phi, vars, a))
}

fn masks(v: &[u32]) -> Vec<Vec<usize>> {
    v.iter().map(|&m| coordlens_core::reduced::mask_to_vec(m)).collect()
}

fn summary(b: &Built) -> Value {
    let ideal = b.rp.ideal();
    json!({
        "factors": b.names,
        "indices": ideal.indices(),
        "ideal": { "generators": masks(ideal.generators()), "members": masks(ideal.members()) },
        "algebra_size": b.rp.algebra().elements().len(),
        "free_coordinates": b.rp.free_coordinates(),
        "elements": b.rp.element_count(),
    })
}

fn labels(rp: &ReducedProduct, a: &[u32]) -> Vec<String> {
    a.iter().map(|&x| rp.label(x)).collect()
}

pub fn reduced(cmd: ReducedCmd, out: Output) -> CmdResult {
    match cmd {
        ReducedCmd::Build { product, supp, elem } => {
            let b = build(&product)?;
            let mut doc = summary(&b);
            if let Some(text) = &supp {
                let (phi, vars, a) = bind(&b.rp, text, &elem)?;
                doc["supp"] = json!({ "formula": phi.to_string(), "class": b.rp.supp_phi(&phi, &vars, &a)?.indices() });
            } else if !elem.is_empty() {
                return Err(CliError::Input("--elem needs --supp".into()));
            }
            out.emit(doc.clone(), || {
                let mut s = String::new();
                let _ = writeln!(s, "factors: {}", b.names.join(", "));
                let _ = writeln!(s, "indices: {}", b.rp.indices());
                let gens = b.rp.ideal().generators().iter().map(|&m| set_text(coordlens_core::reduced::mask_to_vec(m)));
                let _ = writeln!(s, "ideal generated by: [{}]", gens.collect::<Vec<_>>().join(", "));
                let _ = writeln!(s, "ideal members: {}", b.rp.ideal().members().len());
                let _ = writeln!(s, "P(I)/ideal: {} classes", doc["algebra_size"]);
                let _ = writeln!(s, "free coordinates: {}", set_text(b.rp.free_coordinates()));
                let _ = writeln!(s, "elements: {}", b.rp.element_count());
                if let Some(sv) = doc.get("supp") {
                    let class: Vec<u64> = sv["class"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
                    let _ = writeln!(s, "supp {}: {}", sv["formula"].as_str().unwrap(), set_text(class));
                }
                s
            });
            Ok(true)
        }
        ReducedCmd::Eval { product, formula, elem } => {
            let b = build(&product)?;
            let (phi, vars, a) = bind(&b.rp, &formula, &elem)?;
            let holds = Evaluator::new(&b.rp, &phi, &vars)?.eval_tuple(&a);
            let doc = json!({ "formula": phi.to_string(), "vars": vars, "elements": labels(&b.rp, &a), "holds": holds });
            out.emit(doc, || format!("{}: {}", phi, holds));
            Ok(true)
        }
        ReducedCmd::Supp { product, formula, elem } => {
            let b = build(&product)?;
            let (phi, vars, a) = bind(&b.rp, &formula, &elem)?;
            let class = b.rp.supp_phi(&phi, &vars, &a)?;
            let doc = json!({
                "formula": phi.to_string(),
                "vars": vars,
                "elements": labels(&b.rp, &a),
                "class": class.indices(),
                "zero": class.is_zero(),
            });
            out.emit(doc, || format!("supp {}: {}", phi, set_text(class.indices())));
            Ok(true)
        }
        ReducedCmd::Los { product, formula, elem } => {
            let b = build(&product)?;
            if elem.is_empty() {
                let phi = parse_formula(&formula, b.rp.signature())?;
                let vars: Vec<String> = phi.free_vars().iter().cloned().collect();
                let bad = los_check_all(&b.rp, &phi)?;
                let assignments = b.rp.element_count().pow(vars.len() as u32);
                let doc = json!({
                    "formula": phi.to_string(),
                    "assignments": assignments,
                    "agrees": bad.is_none(),
                    "counterexample": bad.as_ref().map(|a| labels(&b.rp, a)),
                });
                out.emit(doc, || match &bad {
                    None => format!("transfer holds at all {assignments} assignments"),
                    Some(a) => format!("counterexample: [{}] = [{}]", vars.join(", "), labels(&b.rp, a).join(", ")),
                });
                Ok(bad.is_none())
            } else {
                let (phi, vars, a) = bind(&b.rp, &formula, &elem)?;
                let r = los_check(&b.rp, &phi, &vars, &a)?;
                let doc = json!({ "formula": phi.to_string(), "elements": labels(&b.rp, &a), "report": r, "agrees": r.agrees() });
                out.emit(doc, || {
                    format!(
                        "holds in product: {}\nfailure set: {}\nfailure set in ideal: {}\nagrees: {}",
                        yes_no(r.holds_in_product),
                        set_text(&r.failure_set),
                        yes_no(r.failure_in_ideal),
                        yes_no(r.agrees())
                    )
                });
                Ok(r.agrees())
            }
        }
    }
}
