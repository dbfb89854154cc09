use std::fmt::Write;

use coordlens_core::logic::{classify_h, equivalent_in, parse_formula, valid_in, Interp, Signature};
use serde_json::json;

use super::CmdResult;
use crate::error::CliError;
use crate::input::load_structure;
use crate::output::Output;
use crate::FormulaCmd;

fn signature(name: &str) -> Result<Signature, CliError> {
    match name {
        "group" => Ok(Signature::group()),
        "pure" => Ok(Signature::pure()),
        "magma" => Ok(Signature::magma()),
        "order" => Ok(Signature::order()),
        _ => Err(CliError::Input(format!("unknown signature `{name}` (expected group, pure, magma or order)"))),
    }
}

pub fn formula(cmd: FormulaCmd, out: Output) -> CmdResult {
    match cmd {
        FormulaCmd::Parse { formula, sig } => {
            let phi = parse_formula(&formula, &signature(&sig)?)?;
            let free: Vec<&String> = phi.free_vars().iter().collect();
            let doc = json!({ "formula": phi.to_string(), "free_vars": free, "sentence": phi.is_sentence() });
            out.emit(doc, || format!("{phi}\nfree: [{}]", phi.free_vars().iter().cloned().collect::<Vec<_>>().join(", ")));
            Ok(true)
        }
        FormulaCmd::Classify { formula, sig, structure } => {
            let (sig, m) = match &structure {
                Some(s) => {
                    let (name, m) = load_structure(s)?;
                    (m.signature().clone(), Some((name, m)))
                }
                None => (signature(&sig)?, None),
            };
            let phi = parse_formula(&formula, &sig)?;
            match classify_h(&phi) {
                Ok(cert) => {
                    let mut failed = Vec::new();
                    if let Some((name, m)) = &m {
                        for (i, ob) in cert.obligations.iter().enumerate() {
                            if let Some(a) = valid_in(m, ob)? {
                                failed.push(format!("obligation {i} fails in {name} at {}", a.display(m)));
                            }
                        }
                    }
                    let doc = json!({
                        "formula": phi.to_string(),
                        "h_formula": true,
                        "outright": cert.is_outright(),
                        "derivation": cert.to_string(),
                        "obligations": cert.obligations.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                        "obligation_failures": failed,
                    });
                    out.emit(doc, || {
                        let mut s = format!("h-formula{}\n{cert}", if cert.is_outright() { "" } else { " (with obligations)" });
                        for f in &failed {
                            let _ = writeln!(s, "{f}");
                        }
                        s
                    });
                    Ok(failed.is_empty())
                }
                Err(r) => {
                    let doc = json!({
                        "formula": phi.to_string(),
                        "h_formula": false,
                        "refusal": { "path": r.path, "node": r.node, "subformula": r.subformula },
                    });
                    out.emit(doc, || r.to_string());
                    Ok(false)
                }
            }
        }
        FormulaCmd::Equiv { phi, psi, structure } => {
            let (name, m) = load_structure(&structure)?;
            let sig = m.signature().clone();
            let (phi, psi) = (parse_formula(&phi, &sig)?, parse_formula(&psi, &sig)?);
            let bad = equivalent_in(&m, &phi, &psi)?;
            let doc = json!({
                "structure": name,
                "phi": phi.to_string(),
                "psi": psi.to_string(),
                "equivalent": bad.is_none(),
                "counterexample": bad.as_ref().map(|a| a.display(&m)),
            });
            out.emit(doc, || match &bad {
                None => format!("equivalent in {name}"),
                Some(a) => format!("not equivalent in {name}: counterexample {}", a.display(&m)),
            });
            Ok(bad.is_none())
        }
    }
}
