use std::fmt::Write;

use coordlens_core::catalog::{self, Built, CatalogEntry};
use serde_json::{json, Value};

use super::CmdResult;
use crate::output::Output;
use crate::CatalogCmd;

fn kind(e: &CatalogEntry) -> &'static str {
    match e.built {
        Built::Group(_) => "group",
        Built::Structure(_) => "structure",
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "name": e.name,
        "family": e.family,
        "params": e.params,
        "kind": kind(e),
        "order": e.order(),
        "expected": e.expected,
    })
}

pub fn catalog(cmd: CatalogCmd, out: Output) -> CmdResult {
    match cmd {
        CatalogCmd::List => {
            let entries: Vec<CatalogEntry> =
                catalog::default_names().into_iter().map(catalog::lookup).collect::<Result<_, _>>()?;
            let doc = json!({ "entries": entries.iter().map(entry_json).collect::<Vec<_>>() });
            out.emit(doc, || {
                let mut s = format!("{:<8} {:<12} {:>6}  {:<10} {:<8} flag\n", "name", "family", "order", "expected", "basis");
                for e in &entries {
                    let basis = serde_json::to_value(e.expected.basis).unwrap();
                    let _ = writeln!(
                        s,
                        "{:<8} {:<12} {:>6}  {:<10} {:<8} {}",
                        e.name,
                        e.family,
                        e.order(),
                        e.expected.outcome.to_string(),
                        basis.as_str().unwrap_or(""),
                        if e.expected.flag.is_some() { "*" } else { "" }
                    );
                }
                s
            });
            Ok(true)
        }
        CatalogCmd::Show { name, tables } => {
            let e = catalog::lookup(&name)?;
            let mut doc = entry_json(&e);
            if let Built::Group(g) = &e.built {
                doc["elements"] = json!(g.labels());
            }
            if tables {
                doc["tables"] = match &e.built {
                    Built::Group(g) => g.to_json(),
                    Built::Structure(m) => m.to_json(),
                };
            }
            out.emit(doc.clone(), || {
                let mut s = String::new();
                let _ = writeln!(s, "name: {}", e.name);
                let _ = writeln!(s, "family: {} {:?}", e.family, e.params);
                let _ = writeln!(s, "kind: {}", kind(&e));
                let _ = writeln!(s, "order: {}", e.order());
                let basis = serde_json::to_value(e.expected.basis).unwrap();
                let _ = writeln!(s, "expected: {} ({})", e.expected.outcome, basis.as_str().unwrap_or(""));
                let _ = writeln!(s, "citation: {}", e.expected.citation);
                if let Some(f) = &e.expected.flag {
                    let _ = writeln!(s, "flag: {f}");
                }
                if let Built::Group(g) = &e.built {
                    if g.order() <= 64 {
                        let _ = writeln!(s, "elements: {}", g.labels().join(" "));
                    }
                }
                if tables {
                    let _ = writeln!(s, "{}", serde_json::to_string(&doc["tables"]).unwrap());
                }
                s
            });
            Ok(true)
        }
    }
}
