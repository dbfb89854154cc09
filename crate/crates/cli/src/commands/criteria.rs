use std::fmt::Write;
use std::time::Duration;

use coordlens_core::catalog;
use coordlens_core::criteria::{verdict_for_names, VerdictOptions, Witness};
use serde_json::json;

use super::CmdResult;
use crate::error::CliError;
use crate::output::Output;
use crate::CriteriaCmd;

fn witness_line(w: &Witness) -> String {
    match w {
        Witness::Certificate(c) => format!("certificate {} on {}: {}", c.criterion, c.group, c.detail),
        Witness::Obstruction(o) => format!("obstruction {} on {}: {}", o.kind.name(), o.groups.join(","), o.detail),
        Witness::Failure(f) => format!("criterion {} fails on {}: {}", f.criterion, f.group, f.reason),
    }
}

pub fn criteria(cmd: CriteriaCmd, out: Output) -> CmdResult {
    let CriteriaCmd::Verdict { names, timeout } = cmd;
    let list: Vec<&str> = names.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if list.is_empty() {
        return Err(CliError::Input("no catalog names given".into()));
    }
    let v = verdict_for_names(&list, &VerdictOptions { timeout: Duration::from_secs(timeout) })?;
    let expected = match list.as_slice() {
        [one] => Some(catalog::lookup(one)?.expected),
        _ => None,
    };
    let doc = json!({ "verdict": v, "expected": expected });
    out.emit(doc, || {
        let mut s = String::new();
        let _ = writeln!(s, "{{{}}}: {}", v.groups.join(", "), v.outcome);
        let _ = writeln!(s, "reason: {}", v.reason);
        let _ = writeln!(s, "citation: {}", v.citation);
        if let Some(e) = &expected {
            let agree = if e.outcome == v.outcome { "agrees" } else { "differs" };
            let _ = writeln!(s, "expected: {} ({agree})", e.outcome);
            if let Some(f) = &e.flag {
                let _ = writeln!(s, "flag: {f}");
            }
        }
        for w in &v.witnesses {
            let _ = writeln!(s, "  {}", witness_line(w));
        }
        for n in &v.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    });
    Ok(true)
}
