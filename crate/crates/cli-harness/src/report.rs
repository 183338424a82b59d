use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};

/// Newline-delimited JSON records, one per check, closed by a summary.
/// `elapsed_ms` is the only field that varies between identical runs.
pub struct Reporter {
    command: String,
    seed: u64,
    lines: Vec<String>,
    passed: usize,
    failed: usize,
    start: Instant,
}

pub struct Check<'a> {
    pub check: &'a str,
    pub instance: String,
    pub trial: Option<usize>,
    pub residual: String,
    pub pass: bool,
    pub retries: usize,
}

impl Reporter {
    pub fn new(command: impl Into<String>, seed: u64) -> Reporter {
        Reporter {
            command: command.into(),
            seed,
            lines: vec![],
            passed: 0,
            failed: 0,
            start: Instant::now(),
        }
    }

    /// Free-form record; counted as a check when it carries "pass".
    pub fn record(&mut self, v: Value) {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        if let Value::Object(o) = v {
            m.extend(o);
        }
        match m.get("pass").and_then(Value::as_bool) {
            Some(true) => self.passed += 1,
            Some(false) => self.failed += 1,
            None => {}
        }
        self.lines.push(Value::Object(m).to_string());
    }

    pub fn check(&mut self, c: Check, elapsed: Duration) {
        self.record(json!({
            "check": c.check,
            "instance": c.instance,
            "trial": c.trial,
            "residual": c.residual,
            "pass": c.pass,
            "retries": c.retries,
            "seed": self.seed,
            "elapsed_ms": elapsed.as_secs_f64() * 1e3,
        }));
    }

    pub fn finish(mut self) -> (String, bool) {
        let ok = self.failed == 0;
        let summary = json!({
            "command": self.command,
            "summary": true,
            "passed": self.passed,
            "failed": self.failed,
            "seed": self.seed,
            "elapsed_ms": self.start.elapsed().as_secs_f64() * 1e3,
        });
        self.lines.push(summary.to_string());
        let mut out = self.lines.join("\n");
        out.push('\n');
        (out, ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(pass: bool) -> Check<'static> {
        Check {
            check: "x",
            instance: "i".into(),
            trial: Some(0),
            residual: "0".into(),
            pass,
            retries: 0,
        }
    }

    #[test]
    fn summary_counts_and_exit_status() {
        let mut r = Reporter::new("verify x", 5);
        r.check(check(true), Duration::ZERO);
        r.record(json!({ "note": 1 }));
        let (text, ok) = r.finish();
        assert!(ok);
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["command"], "verify x");
        assert_eq!(lines[0]["seed"], 5);
        assert_eq!(lines[2]["summary"], true);
        assert_eq!(lines[2]["passed"], 1);

        let mut r = Reporter::new("verify x", 5);
        r.check(check(true), Duration::ZERO);
        r.check(check(false), Duration::ZERO);
        let (text, ok) = r.finish();
        assert!(!ok);
        assert!(text.ends_with("\n"));
    }
}
