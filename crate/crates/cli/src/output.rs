use std::io::Write;

use serde_json::Value;

/// JSON schema version stamped on every document.
pub const SCHEMA: u64 = 1;

#[derive(Clone, Copy, Debug)]
pub struct Output {
    pub json: bool,
    /// Keep wall-clock fields in JSON (they make output non-reproducible).
    pub timings: bool,
}

impl Output {
    /// Prints `doc` (with `schema` added) in JSON mode, `text` otherwise.
    /// Write errors (a closed pipe) are ignored.
    pub fn emit(&self, doc: Value, text: impl FnOnce() -> String) {
        let mut t = if self.json { self.render(doc) } else { text() };
        if !t.ends_with('\n') {
            t.push('\n');
        }
        let _ = std::io::stdout().lock().write_all(t.as_bytes());
    }

    pub fn render(&self, mut doc: Value) -> String {
        if !self.timings {
            strip_key(&mut doc, "millis");
        }
        if let Value::Object(m) = &mut doc {
            m.insert("schema".into(), SCHEMA.into());
        }
        serde_json::to_string_pretty(&doc).expect("JSON values serialize")
    }
}

fn strip_key(v: &mut Value, key: &str) {
    match v {
        Value::Object(m) => {
            m.remove(key);
            m.values_mut().for_each(|x| strip_key(x, key));
        }
        Value::Array(a) => a.iter_mut().for_each(|x| strip_key(x, key)),
        _ => {}
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn set_text<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(","))
}
