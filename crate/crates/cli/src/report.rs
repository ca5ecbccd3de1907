//! JSON and text renderings of an analysis.

use std::io;

use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use regsym::oracle::OracleReport;
use regsym::puiseux::{format_exponent, BranchSet};
use regsym::regularity::{BranchCondition, ConditionStatus, Deviation, PairStatus, Quantization, SymbolClass, Verdict};
use regsym::symbol::Rational;

pub const SCHEMA: &str = "regsym/1";

/// Everything shown for one analyzed symbol.
pub struct AnalysisReport<'a> {
    pub input: &'a str,
    pub quantization: Quantization,
    pub verdict: &'a Verdict,
    pub oracle: Option<&'a OracleReport>,
    pub elapsed_ms: f64,
}

pub fn quantization_name(q: Quantization) -> &'static str {
    match q {
        Quantization::Weyl => "weyl",
        Quantization::Left => "left",
    }
}

fn rational64(e: &Rational64) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

fn big_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn complex(c: Complex64) -> Value {
    json!({ "re": c.re, "im": c.im })
}

fn term((e, c): (Rational64, Complex64)) -> Value {
    json!({ "exponent": rational64(&e), "re": c.re, "im": c.im })
}

fn deviation(d: Deviation) -> Value {
    d.map_or(Value::Null, term)
}

fn pair_status(s: PairStatus) -> &'static str {
    match s {
        PairStatus::Separated => "Separated",
        PairStatus::Fails => "Fails",
        PairStatus::NotApplicable => "NotApplicable",
        PairStatus::Borderline => "Borderline",
    }
}

fn condition_status(s: ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Holds => "Holds",
        ConditionStatus::Boundary => "Boundary",
        ConditionStatus::Fails => "Fails",
    }
}

fn classification(v: &Verdict) -> Value {
    let c = &v.classification;
    let mut out = json!({ "class": c.class.name(), "regular": c.regular });
    match &c.class {
        SymbolClass::QuasiElliptic { q } => out["q"] = json!(big_rational(q)),
        SymbolClass::SGElliptic { m, n } => {
            out["m"] = json!(m);
            out["n"] = json!(n);
        }
        _ => {}
    }
    out
}

fn branch_set(set: &BranchSet) -> Value {
    let branches: Vec<Value> = set
        .branches
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let cert = set.certificates.get(j);
            json!({
                "index": j,
                "terms": s.terms.iter().map(|t| term(*t)).collect::<Vec<_>>(),
                "truncation": rational64(&s.truncation_exponent),
                "exact": s.exact,
                "ramification": s.ramification(),
                "unseparated": set.is_unseparated(j),
                "residual": cert.map_or(Value::Null, |c| json!({
                    "slope": c.slope,
                    "bound": c.bound,
                    "passed": c.passed,
                })),
            })
        })
        .collect();
    json!({
        "direction": set.direction.label(),
        "ramification": set.ramification(),
        "unseparated": set.unseparated,
        "branches": branches,
    })
}

fn condition_entry(e: &BranchCondition) -> Value {
    json!({
        "direction": e.direction.label(),
        "branch": e.branch,
        "status": condition_status(e.status),
        "witness": e.witness.map_or(Value::Null, term),
    })
}

fn oracle(o: &OracleReport) -> Value {
    json!({
        "status": o.status.name(),
        "observations": o.observations,
        "samples": o.samples.iter().map(|(label, g)| json!({
            "label": label,
            "growth": g.label.name(),
            "slope_log": g.slope_log,
            "residual_log": g.residual_log,
            "slope_linear": g.slope_linear,
        })).collect::<Vec<_>>(),
    })
}

impl AnalysisReport<'_> {
    pub fn to_json(&self) -> Value {
        let v = self.verdict;
        let t = &v.tolerances;
        json!({
            "schema": SCHEMA,
            "input": { "symbol": self.input, "quantization": quantization_name(self.quantization) },
            "weyl_symbol": v.weyl_symbol.to_string(),
            "normalized": { "symbol": v.normalized.to_string(), "shear": big_rational(&v.shear) },
            "classification": classification(v),
            "decision": v.decision.name(),
            "path": v.path.name(),
            "boundary": v.boundary(),
            "directions": v.branch_sets.iter().map(branch_set).collect::<Vec<_>>(),
            "separation": v.separation.iter().map(|r| json!({
                "direction": r.direction.label(),
                "overall": pair_status(r.overall()),
                "pairs": r.pairs.iter().map(|p| json!({
                    "j": p.j,
                    "k": p.k,
                    "lambda": complex(p.lambda),
                    "status": pair_status(p.status),
                    "deviation_j": deviation(p.deviation_j),
                    "deviation_k": deviation(p.deviation_k),
                })).collect::<Vec<_>>(),
                "notes": r.notes,
            })).collect::<Vec<_>>(),
            "condition": v.condition.as_ref().map_or(Value::Null, |c| json!({
                "holds": c.holds(),
                "entries": c.entries.iter().map(condition_entry).collect::<Vec<_>>(),
            })),
            "diagnostics": v.diagnostics,
            "tolerances": {
                "precision": t.precision,
                "zero_tol": t.zero_tol,
                "im_tol": t.im_tol,
                "lambda_tol": t.lambda_tol,
                "coeff_tol": t.coeff_tol,
                "cluster_tol": t.cluster_tol,
                "depth": rational64(&t.depth),
            },
            "oracle": self.oracle.map_or(Value::Null, oracle),
            "timing_ms": self.elapsed_ms,
        })
    }

    pub fn to_text(&self) -> String {
        let v = self.verdict;
        let mut s = String::new();
        let mut line = |l: String| {
            s.push_str(&l);
            s.push('\n');
        };
        line(format!("decision: {}", v.decision.name()));
        line(format!("path: {}", v.path.name()));
        line(format!("input: {} ({} symbol)", self.input, quantization_name(self.quantization)));
        line(format!("weyl symbol: {}", v.weyl_symbol));
        if v.shear != Rational::from_integer(0.into()) {
            line(format!("sheared by x -> x + ({})xi: {}", big_rational(&v.shear), v.normalized));
        }
        line(format!("class: {}", v.classification.class.name()));
        for set in &v.branch_sets {
            line(format!("branches at {} infinity (ramification {}):", set.direction.label(), set.ramification()));
            for (j, b) in set.branches.iter().enumerate() {
                let terms: Vec<String> = b
                    .terms
                    .iter()
                    .map(|(e, c)| format!("({:.6}{:+.6}i) x^{}", c.re, c.im, format_exponent(e)))
                    .collect();
                let tail = if b.exact {
                    String::new()
                } else {
                    format!(" + O(x^{})", format_exponent(&b.truncation_exponent))
                };
                let cert = set
                    .certificates
                    .get(j)
                    .map(|c| {
                        format!(
                            "  [residual slope {:.3}, bound {:.3}, {}]",
                            c.slope,
                            c.bound,
                            if c.passed { "ok" } else { "FAILED" }
                        )
                    })
                    .unwrap_or_default();
                line(format!("  {j}: {}{tail}{cert}", terms.join(" + ")));
            }
        }
        for r in &v.separation {
            let tested: Vec<String> = r
                .pairs
                .iter()
                .filter(|p| p.status != PairStatus::NotApplicable)
                .map(|p| format!("({},{}) {}", p.j, p.k, pair_status(p.status)))
                .collect();
            line(format!(
                "separation at {} infinity: {}{}",
                r.direction.label(),
                pair_status(r.overall()),
                if tested.is_empty() { String::new() } else { format!(" [{}]", tested.join(", ")) }
            ));
        }
        if let Some(c) = &v.condition {
            line(format!("condition: {}", if c.holds() { "Holds" } else { "Fails" }));
            for e in c.failing() {
                line(format!(
                    "  branch {} at {} infinity: {}",
                    e.branch,
                    e.direction.label(),
                    condition_status(e.status)
                ));
            }
        }
        for d in &v.diagnostics {
            line(format!("note: {d}"));
        }
        if let Some(o) = self.oracle {
            line(format!("oracle: {}", o.status.name()));
            for n in &o.observations {
                line(format!("  {n}"));
            }
        }
        let t = &v.tolerances;
        line(format!(
            "tolerances: precision {:e}, zero {:e}, im {:e}, lambda {:e}, depth {}",
            t.precision,
            t.zero_tol,
            t.im_tol,
            t.lambda_tol,
            format_exponent(&t.depth)
        ));
        s
    }
}

/// Pretty printing with every float written to 17 significant digits.
pub struct SigFormatter<'a>(PrettyFormatter<'a>);

impl Default for SigFormatter<'_> {
    fn default() -> Self {
        SigFormatter(PrettyFormatter::new())
    }
}

impl Formatter for SigFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter::default());
    serde::Serialize::serialize(v, &mut ser).expect("serializing a JSON value cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
