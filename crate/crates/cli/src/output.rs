use serde::Serialize;
use serde_json::Value;
use ybe_growth::series::TruncatedSeries;

use crate::{Command, GlobalOpts};

/// What a command produced, in all output formats.
#[derive(Debug, Default)]
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub csv: String,
    /// `Some` when an oracle comparison or cross-check ran.
    pub verified: Option<bool>,
    pub budget_hit: bool,
    pub closed_form_missing: bool,
}

#[derive(Serialize)]
pub struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    command: Command,
    config: &'a GlobalOpts,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_secs: Option<f64>,
}

impl<'a> Report<'a> {
    pub fn new(command: Command, config: &'a GlobalOpts, out: &'a Outcome, elapsed_secs: Option<f64>) -> Self {
        Report {
            tool: "ybe-growth",
            version: ybe_growth::VERSION,
            command,
            config,
            result: &out.result,
            verified: out.verified,
            elapsed_secs,
        }
    }
}

/// Oracle values next to the formula values.
#[derive(Debug, Clone, Serialize)]
pub struct OracleCheck {
    pub oracle: &'static str,
    pub expected: Vec<String>,
    pub actual: Vec<String>,
    pub complete: bool,
    pub passed: bool,
}

impl OracleCheck {
    pub fn new(oracle: &'static str, expected: &TruncatedSeries, actual: &[u64], complete: bool) -> Self {
        let expected = coeff_strings(expected);
        let actual: Vec<String> = actual.iter().map(u64::to_string).collect();
        let passed = actual.iter().zip(&expected).all(|(a, e)| a == e);
        OracleCheck { oracle, expected, actual, complete, passed }
    }
}

pub fn coeff_strings(s: &TruncatedSeries) -> Vec<String> {
    s.coeffs().iter().map(ybe_growth::series::q_to_string).collect()
}

pub fn joined(s: &TruncatedSeries) -> String {
    coeff_strings(s).join(", ")
}

/// `degree,coefficient[,oracle]` rows.
pub fn series_csv(s: &TruncatedSeries, oracle: Option<&OracleCheck>) -> String {
    let mut out = String::from(if oracle.is_some() { "degree,coefficient,oracle\n" } else { "degree,coefficient\n" });
    for (i, c) in coeff_strings(s).iter().enumerate() {
        match oracle {
            Some(o) => {
                let v = o.actual.get(i).map_or("", String::as_str);
                out.push_str(&format!("{i},{c},{v}\n"));
            }
            None => out.push_str(&format!("{i},{c}\n")),
        }
    }
    out
}

pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}
