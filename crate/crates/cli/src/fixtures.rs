//! Fixture files: a JSON array of expected decisions.

use std::io::Write;

use serde::Deserialize;

use regsym::regularity::Decision;

use crate::{analyze, EngineArgs, QuantArg, EXIT_ERROR};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub symbol: String,
    #[serde(default = "default_quantization")]
    pub quantization: String,
    pub expected: String,
    #[serde(default)]
    pub notes: String,
}

fn default_quantization() -> String {
    "weyl".to_string()
}

fn decision_from(s: &str) -> Option<Decision> {
    match s {
        "Regular" => Some(Decision::Regular),
        "NotRegular" => Some(Decision::NotRegular),
        "Inconclusive" => Some(Decision::Inconclusive),
        _ => None,
    }
}

fn quantization_from(s: &str) -> Option<QuantArg> {
    match s {
        "weyl" => Some(QuantArg::Weyl),
        "left" => Some(QuantArg::Left),
        _ => None,
    }
}

pub fn load_fixtures(text: &str) -> Result<Vec<Fixture>, String> {
    let list: Vec<Fixture> = serde_json::from_str(text).map_err(|e| format!("malformed fixture file: {e}"))?;
    for f in &list {
        if decision_from(&f.expected).is_none() {
            return Err(format!("fixture {:?}: unknown expected decision {:?}", f.name, f.expected));
        }
        if quantization_from(&f.quantization).is_none() {
            return Err(format!("fixture {:?}: unknown quantization {:?}", f.name, f.quantization));
        }
    }
    Ok(list)
}

/// Decide every fixture; exit 0 when all match, 1 on any mismatch, 3 on a bad file.
pub fn run_fixtures(path: &str, engine: &EngineArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {path}: {e}");
            return EXIT_ERROR;
        }
    };
    let list = match load_fixtures(&text) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut failed = 0usize;
    for f in &list {
        let expected = decision_from(&f.expected).expect("validated");
        let q = quantization_from(&f.quantization).expect("validated");
        let got = analyze(&f.symbol, &engine.options(q.into()));
        let (status, shown) = match &got {
            Ok(v) if v.decision == expected => ("PASS", v.decision.name().to_string()),
            Ok(v) => ("FAIL", v.decision.name().to_string()),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let _ = writeln!(out, "{status} {:<28} expected {:<12} got {shown}", f.name, f.expected);
    }
    let _ = writeln!(out, "{} run, {} passed, {} failed", list.len(), list.len() - failed, failed);
    if failed == 0 {
        0
    } else {
        1
    }
}
