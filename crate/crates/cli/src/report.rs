use std::time::Instant;

use morse_core::SequenceSpec;
use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a report field is added, removed or changes meaning.
/// Must match `schema/audit-report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    /// The checked property holds on the prefix.
    Holds,
    /// A witness against the property was found.
    Violated,
    /// Census only; nothing is asserted.
    Reported,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Holds | Outcome::Reported => 0,
            Outcome::Violated => 1,
        }
    }

    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Outcome::Holds
        } else {
            Outcome::Violated
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SequenceInfo {
    pub name: String,
    pub family: &'static str,
}

impl From<&SequenceSpec> for SequenceInfo {
    fn from(spec: &SequenceSpec) -> Self {
        Self { name: spec.to_string(), family: spec.family() }
    }
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub command: Vec<String>,
    pub sequence: Option<SequenceInfo>,
    pub prefix_length: usize,
    pub property: &'static str,
    pub verdict: Outcome,
    pub witnesses: Vec<Value>,
    pub witnesses_truncated: bool,
    pub census: Value,
    pub details: Value,
    pub elapsed_ms: u64,
    pub determinism_seed: &'static str,
}

impl AuditReport {
    pub fn new(property: &'static str, sequence: Option<&SequenceSpec>, prefix_length: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: std::env::args().skip(1).collect(),
            sequence: sequence.map(SequenceInfo::from),
            prefix_length,
            property,
            verdict: Outcome::Reported,
            witnesses: Vec::new(),
            witnesses_truncated: false,
            census: Value::Object(Default::default()),
            details: Value::Object(Default::default()),
            elapsed_ms: 0,
            determinism_seed: "none",
        }
    }

    /// Keeps the first `cap` witnesses in order.
    pub fn set_witnesses<T: Serialize>(&mut self, witnesses: impl IntoIterator<Item = T>, cap: usize) {
        let mut iter = witnesses.into_iter();
        self.witnesses = iter.by_ref().take(cap).map(to_value).collect();
        self.witnesses_truncated = iter.next().is_some();
    }

    pub fn finish(mut self, started: Instant) -> Self {
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }
}

pub fn to_value<T: Serialize>(value: T) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}
