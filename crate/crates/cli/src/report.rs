//! Scenario reports: per-claim verdicts with witnesses, certified ranges and timing.

use std::fmt::Write as _;
use std::time::Instant;

use cychom_core::exactla::SparseMatrix;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    Undetermined,
}

impl Verdict {
    pub fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Undetermined => "UNDETERMINED",
        }
    }
}

/// Where a check failed: a degree, a basis element and a matrix entry, as far
/// as they apply.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entry: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Witness {
    pub fn degree(q: impl Into<i64>) -> Self {
        Self {
            degree: Some(q.into()),
            ..Self::default()
        }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.note = s.into();
        self
    }

    pub fn entry(mut self, e: (usize, usize)) -> Self {
        self.entry = Some(e);
        self
    }

    pub fn basis(mut self, b: impl Into<String>) -> Self {
        self.basis = Some(b.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certified {
    pub what: String,
    /// Inclusive degree range.
    pub degrees: (i64, i64),
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub max_degree: usize,
    pub window: usize,
    pub budget: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: Vec<String>,
    pub parameters: Parameters,
    pub data: Value,
    pub claims: Vec<Claim>,
    pub certified: Vec<Certified>,
    pub elapsed_ms: u128,
}

impl ScenarioReport {
    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.verdict == Verdict::Pass)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.claims.iter().filter(|c| c.verdict == v).count()
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "scenario: {}", self.scenario);
        for i in &self.inputs {
            let _ = writeln!(s, "  input: {i}");
        }
        let p = &self.parameters;
        let _ = writeln!(
            s,
            "  max degree {}, window {}, budget {}, seed {}",
            p.max_degree, p.window, p.budget, p.seed
        );
        if !self.data.is_null() {
            render_value(&mut s, &self.data, 1);
        }
        for c in &self.certified {
            let _ = writeln!(
                s,
                "  certified: {} in degrees {}..={}",
                c.what, c.degrees.0, c.degrees.1
            );
        }
        for c in &self.claims {
            let _ = writeln!(s, "{:<12} {}: {}", c.verdict.label(), c.name, c.detail);
            if let Some(w) = &c.witness {
                let mut parts = Vec::new();
                if let Some(d) = w.degree {
                    parts.push(format!("degree {d}"));
                }
                if let Some(b) = &w.basis {
                    parts.push(format!("basis {b}"));
                }
                if let Some((r, c)) = w.entry {
                    parts.push(format!("entry ({r}, {c})"));
                }
                if !w.note.is_empty() {
                    parts.push(w.note.clone());
                }
                let _ = writeln!(s, "             witness: {}", parts.join(", "));
            }
        }
        let _ = writeln!(
            s,
            "{} pass, {} fail, {} undetermined in {} ms",
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Undetermined),
            self.elapsed_ms
        );
        s
    }
}

fn render_value(s: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(s, "{pad}{k}:");
                        render_value(s, x, indent + 1);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(s, "{pad}{k}:");
                        for i in items {
                            let _ = writeln!(s, "{pad}  -");
                            render_value(s, i, indent + 2);
                        }
                    }
                    _ => {
                        let _ = writeln!(s, "{pad}{k}: {x}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{other}");
        }
    }
}

/// Collects claims while a scenario runs.
pub struct Builder {
    scenario: String,
    inputs: Vec<String>,
    parameters: Parameters,
    data: serde_json::Map<String, Value>,
    claims: Vec<Claim>,
    certified: Vec<Certified>,
    start: Instant,
}

impl Builder {
    pub fn new(scenario: impl Into<String>, parameters: Parameters) -> Self {
        Self {
            scenario: scenario.into(),
            inputs: Vec::new(),
            parameters,
            data: serde_json::Map::new(),
            claims: Vec::new(),
            certified: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, s: impl Into<String>) -> &mut Self {
        self.inputs.push(s.into());
        self
    }

    pub fn data(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.data.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
        self
    }

    pub fn certify(&mut self, what: impl Into<String>, lo: i64, hi: i64) -> &mut Self {
        if lo <= hi {
            self.certified.push(Certified {
                what: what.into(),
                degrees: (lo, hi),
            });
        }
        self
    }

    pub fn claim(
        &mut self,
        name: impl Into<String>,
        verdict: Verdict,
        detail: impl Into<String>,
        witness: Option<Witness>,
    ) -> &mut Self {
        self.claims.push(Claim {
            name: name.into(),
            verdict,
            detail: detail.into(),
            witness: if verdict == Verdict::Pass {
                None
            } else {
                witness
            },
        });
        self
    }

    /// A pass/fail claim whose witness is only built on failure.
    pub fn check(
        &mut self,
        name: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
        witness: impl FnOnce() -> Witness,
    ) -> &mut Self {
        let w = (!ok).then(witness);
        self.claim(name, Verdict::of(ok), detail, w)
    }

    pub fn undetermined(
        &mut self,
        name: impl Into<String>,
        reason: impl Into<String>,
    ) -> &mut Self {
        self.claim(name, Verdict::Undetermined, reason, None)
    }

    pub fn extend(&mut self, prefix: &str, other: ScenarioReport) -> &mut Self {
        for mut c in other.claims {
            c.name = format!("{prefix}{}", c.name);
            self.claims.push(c);
        }
        for mut c in other.certified {
            c.what = format!("{prefix}{}", c.what);
            self.certified.push(c);
        }
        if !other.data.is_null() {
            self.data
                .insert(prefix.trim_end_matches(['/', ' ']).to_string(), other.data);
        }
        self
    }

    pub fn finish(self) -> ScenarioReport {
        ScenarioReport {
            scenario: self.scenario,
            inputs: self.inputs,
            parameters: self.parameters,
            data: if self.data.is_empty() {
                Value::Null
            } else {
                Value::Object(self.data)
            },
            claims: self.claims,
            certified: self.certified,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// First entry where `a` differs from `b`, as (row, column).
pub fn first_difference(a: &SparseMatrix, b: &SparseMatrix) -> Option<(usize, usize)> {
    if a.shape() != b.shape() {
        return Some((usize::MAX, usize::MAX));
    }
    a.columns()
        .iter()
        .zip(b.columns())
        .enumerate()
        .find_map(|(j, (x, y))| {
            let d = x.sub(y);
            d.entries().first().map(|e| (e.0, j))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Parameters {
        Parameters {
            max_degree: 6,
            window: 3,
            budget: 10,
            seed: 0,
        }
    }

    #[test]
    fn pass_claims_drop_witnesses() {
        let mut b = Builder::new("t", params());
        b.check("ok", true, "", || Witness::degree(1));
        b.check("bad", false, "", || Witness::degree(2).entry((0, 1)));
        let r = b.finish();
        assert!(r.claims[0].witness.is_none());
        assert_eq!(r.claims[1].witness.as_ref().unwrap().entry, Some((0, 1)));
        assert!(!r.all_pass());
        assert!(r.render_text().contains("entry (0, 1)"));
    }

    #[test]
    fn verdicts_serialize_uppercase() {
        assert_eq!(
            serde_json::to_string(&Verdict::Undetermined).unwrap(),
            "\"UNDETERMINED\""
        );
    }

    #[test]
    fn difference_location() {
        let a = SparseMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]);
        let b = SparseMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]);
        assert_eq!(first_difference(&a, &b), Some((1, 1)));
        assert_eq!(first_difference(&a, &a), None);
    }
}
