//! Check records and run reports shared by the library and the CLI.

use std::cmp::Ordering;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub class: String,
    pub pass: bool,
    /// Empty on success; otherwise a short description of what is nonzero.
    pub residual: String,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, class: impl Into<String>, pass: bool, residual: impl Into<String>) -> CheckRecord {
        CheckRecord { id: id.into(), class: class.into(), pass, residual: residual.into() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "id": self.id, "class": self.class, "pass": self.pass, "residual": self.residual })
    }
}

/// Compares ids so that embedded integers sort numerically
/// (`id.9[r=2]` before `id.10[r=0]`, `k=-2` before `k=1`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let ta = tokens(a);
    let tb = tokens(b);
    for (x, y) in ta.iter().zip(&tb) {
        let o = match (x, y) {
            (Tok::Num(p), Tok::Num(q)) => p.cmp(q),
            (Tok::Text(p), Tok::Text(q)) => p.cmp(q),
            (Tok::Num(_), Tok::Text(_)) => Ordering::Less,
            (Tok::Text(_), Tok::Num(_)) => Ordering::Greater,
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    ta.len().cmp(&tb.len())
}

#[derive(Debug)]
enum Tok<'a> {
    Num(i64),
    Text(&'a str),
}

fn tokens(s: &str) -> Vec<Tok<'_>> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let signed = b[i] == b'-' && i + 1 < b.len() && b[i + 1].is_ascii_digit() && (i == 0 || b[i - 1] == b'=' || b[i - 1] == b',');
        if b[i].is_ascii_digit() || signed {
            let start = i;
            i += 1;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(s[start..i].parse().unwrap_or(i64::MAX)));
        } else {
            let start = i;
            while i < b.len() && !b[i].is_ascii_digit() && !(b[i] == b'-' && i + 1 < b.len() && b[i + 1].is_ascii_digit() && i > 0 && (b[i - 1] == b'=' || b[i - 1] == b',')) {
                i += 1;
            }
            if i == start {
                i += 1;
            }
            out.push(Tok::Text(&s[start..i]));
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub title: String,
    /// `key = value` lines printed before the records.
    pub header: Vec<(String, String)>,
    pub records: Vec<CheckRecord>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), ..Report::default() }
    }

    pub fn header(mut self, key: impl Into<String>, value: impl ToString) -> Report {
        self.header.push((key.into(), value.to_string()));
        self
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.records.extend(rs);
    }

    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| natural_cmp(&a.id, &b.id).then_with(|| a.class.cmp(&b.class)));
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn count(&self) -> (usize, usize) {
        let ok = self.records.iter().filter(|r| r.pass).count();
        (ok, self.records.len())
    }

    pub fn find(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Newline-delimited JSON: a header record, one record per check, a
    /// closing verdict record.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header: serde_json::Map<String, serde_json::Value> =
            self.header.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
        out.push_str(&serde_json::json!({ "report": self.title, "header": header }).to_string());
        out.push('\n');
        for r in &self.records {
            out.push_str(&r.to_json().to_string());
            out.push('\n');
        }
        let (ok, total) = self.count();
        out.push_str(&serde_json::json!({ "verdict": if self.passed() { "pass" } else { "fail" }, "passed": ok, "total": total, "notes": self.notes }).to_string());
        out.push('\n');
        out
    }

    pub fn to_text(&self, verbose: bool) -> String {
        let mut out = format!("{}\n", self.title);
        for (k, v) in &self.header {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for r in &self.records {
            if verbose || !r.pass {
                let mark = if r.pass { "ok  " } else { "FAIL" };
                out.push_str(&format!("{mark} {} ({})", r.id, r.class));
                if !r.residual.is_empty() {
                    out.push_str(&format!(": {}", r.residual));
                }
                out.push('\n');
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let (ok, total) = self.count();
        out.push_str(&format!("{} ({ok}/{total} checks passed)\n", if self.passed() { "PASS" } else { "FAIL" }));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut ids = vec!["id.10[r=0]", "id.9[r=2]", "id.9[r=10]", "x[k=1]", "x[k=-2]", "id.9[r=-1]"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, vec!["id.9[r=-1]", "id.9[r=2]", "id.9[r=10]", "id.10[r=0]", "x[k=-2]", "x[k=1]"]);
    }
}
