//! Structured pass/fail records for identity checks.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub inputs: String,
    pub inputs_digest: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub residual: Option<f64>,
    pub runtime_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// 64-bit FNV-1a, rendered as hex. Stable across platforms and runs.
pub fn digest(s: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{h:016x}")
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: &str, inputs: impl Into<String>) -> Self {
        let inputs = inputs.into();
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            inputs_digest: digest(&inputs),
            inputs,
            status: Status::Skip,
            lhs: String::new(),
            rhs: String::new(),
            residual: None,
            runtime_ms: None,
            note: None,
        }
    }

    pub fn values(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs = lhs.into();
        self.rhs = rhs.into();
        self
    }

    pub fn residual(mut self, r: f64) -> Self {
        self.residual = Some(r);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn pass_if(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport { suite: suite.to_string(), records: vec![] }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// Sorts records by id so merged reports are deterministic.
    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(""), "cbf29ce484222325");
        assert_eq!(digest("a"), "af63dc4c8601ec8c");
    }
}
