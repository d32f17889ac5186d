use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Violated,
    InputError,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violated => 1,
            Verdict::InputError => 2,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violated => "violated",
            Verdict::InputError => "input-error",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// The worse of two verdicts, with violations outranking inconclusive results.
    pub fn and(self, other: Verdict) -> Verdict {
        let rank = |v| match v {
            Verdict::Pass => 0,
            Verdict::Inconclusive => 1,
            Verdict::Violated => 2,
            Verdict::InputError => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub compute_ms: f64,
}

/// One JSON object per invocation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Map<String, Value>,
    pub witnesses: Vec<Value>,
    pub certificates: Vec<Value>,
    pub timings: Timings,
}

/// What a command produces before timings are attached.
#[derive(Debug)]
pub struct Outcome {
    pub verdict: Verdict,
    pub result: Map<String, Value>,
    pub witnesses: Vec<Value>,
    pub certificates: Vec<Value>,
    pub text: Vec<String>,
}

impl Outcome {
    pub fn new(verdict: Verdict) -> Self {
        Outcome {
            verdict,
            result: Map::new(),
            witnesses: Vec::new(),
            certificates: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn input_error(message: impl Into<String>) -> Self {
        let message = message.into();
        let mut out = Outcome::new(Verdict::InputError);
        out.text.push(format!("error: {message}"));
        out.set("error", message);
        out
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.result.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn witness(&mut self, value: impl Serialize) {
        self.witnesses.push(serde_json::to_value(value).expect("serializable"));
    }

    pub fn certificate(&mut self, value: impl Serialize) {
        self.certificates.push(serde_json::to_value(value).expect("serializable"));
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn downgrade(&mut self, verdict: Verdict) {
        self.verdict = self.verdict.and(verdict);
    }
}
