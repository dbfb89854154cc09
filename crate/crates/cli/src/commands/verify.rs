use std::fmt::Write;

use coordlens_core::verify::{self, CheckResult, Status};
use serde_json::json;

use super::CmdResult;
use crate::output::Output;
use crate::VerifyArgs;

fn result_text(r: &CheckResult, s: &mut String) {
    let _ = writeln!(s, "{} {} ({}, {} ms)", r.status, r.name, r.scale, r.millis);
    let _ = writeln!(s, "  {}", r.citation);
    for i in &r.instances {
        let _ = writeln!(s, "  [{}] {}: {}", if i.ok { "ok" } else { "FAIL" }, i.instance, i.detail);
    }
    for c in &r.counterexamples {
        let _ = writeln!(s, "  counterexample: {c}");
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
}

pub fn verify(args: VerifyArgs, out: Output) -> CmdResult {
    if args.list {
        let checks = verify::checks();
        let doc = json!({ "checks": checks.iter().map(|c| json!({ "name": c.name, "citation": c.citation })).collect::<Vec<_>>() });
        out.emit(doc, || checks.iter().map(|c| format!("{:<30} {}\n", c.name, c.citation)).collect());
        return Ok(true);
    }
    let results = match &args.name {
        Some(name) => vec![verify::run(name, args.scale)?],
        None => verify::run_all(args.scale)?,
    };
    let passed = results.iter().filter(|r| r.status == Status::Pass).count();
    let all_pass = passed == results.len();
    let doc = if args.name.is_some() {
        serde_json::to_value(&results[0])?
    } else {
        json!({ "scale": args.scale, "passed": passed, "total": results.len(), "results": results })
    };
    out.emit(doc, || {
        let mut s = String::new();
        for r in &results {
            result_text(r, &mut s);
        }
        if args.name.is_none() {
            let _ = writeln!(s, "{passed}/{} checks passed", results.len());
        }
        s
    });
    Ok(all_pass)
}
