use std::collections::BTreeSet;

use coordlens_core::graphprod::{conjugate_to_vertex, rc_classify, GraphError, ProductSpec, RcClass};
use serde_json::json;

use super::CmdResult;
use crate::error::CliError;
use crate::input::json_arg;
use crate::output::{set_text, Output};
use crate::GraphCmd;

fn load(arg: &str) -> Result<ProductSpec, CliError> {
    Ok(ProductSpec::from_json(&json_arg(arg)?)?)
}

fn names(spec: &ProductSpec, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| spec.graph().name(v).to_string()).collect()
}

pub fn graph(cmd: GraphCmd, out: Output) -> CmdResult {
    match cmd {
        GraphCmd::Classify { graph } => {
            let spec = load(&graph)?;
            let class = rc_classify(spec.graph(), &spec.sizes())?;
            let (doc, text) = match &class {
                RcClass::Recognizes { reason } => {
                    (json!({ "outcome": "recognizes", "reason": reason }), format!("recognizes: {reason}"))
                }
                RcClass::Decomposable { x, y } => {
                    let (x, y) = (names(&spec, x.iter().copied()), names(&spec, y.iter().copied()));
                    let text = format!("fails: decomposable as X = {} and Y = {}", set_text(&x), set_text(&y));
                    (json!({ "outcome": "fails", "decomposable": { "x": x, "y": y } }), text)
                }
                RcClass::OpenRacg => (
                    json!({ "outcome": "open", "reason": "right-angled Coxeter group with connected complement" }),
                    "open: right-angled Coxeter group with connected complement".to_string(),
                ),
            };
            out.emit(doc, || text);
            Ok(true)
        }
        GraphCmd::NormalForm { graph, word } => {
            let spec = load(&graph)?;
            let w = spec.parse_word(&word)?;
            let nf = spec.normal_form(&w);
            let ht = spec.head_tail(&nf)?;
            let set = |s: &BTreeSet<usize>| names(&spec, s.iter().copied());
            let doc = json!({
                "input": spec.format_word(&w),
                "normal_form": spec.format_word(&nf),
                "length": ht.length,
                "first": set(&ht.first),
                "last": set(&ht.last),
                "vertices": set(&ht.vertices),
            });
            out.emit(doc, || {
                format!(
                    "normal form: {}\nlength: {}\nfirst: {}\nlast: {}\nvertices: {}",
                    spec.format_word(&nf),
                    ht.length,
                    set_text(set(&ht.first)),
                    set_text(set(&ht.last)),
                    set_text(set(&ht.vertices))
                )
            });
            Ok(true)
        }
        GraphCmd::Conjugate { graph, word, vertex } => {
            let spec = load(&graph)?;
            let v = spec.graph().vertex(&vertex).ok_or_else(|| CliError::Input(format!("unknown vertex `{vertex}`")))?;
            let w = spec.parse_word(&word)?;
            match conjugate_to_vertex(&spec, &w, v) {
                Ok(h) => {
                    let c = spec.conjugate(&h, &spec.normal_form(&w));
                    let doc = json!({
                        "word": spec.format_word(&spec.normal_form(&w)),
                        "vertex": vertex,
                        "conjugator": spec.format_word(&h),
                        "conjugate": spec.format_word(&c),
                    });
                    out.emit(doc, || {
                        format!("conjugator: {}\nconjugate: {}", spec.format_word(&h), spec.format_word(&c))
                    });
                    Ok(true)
                }
                Err(GraphError::NotFound) => {
                    let doc = json!({ "word": spec.format_word(&w), "vertex": vertex, "conjugator": null });
                    out.emit(doc, || GraphError::NotFound.to_string());
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}
