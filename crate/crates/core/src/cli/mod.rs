//! Spec files, reports and the bundled example corpus behind the `projtc` binary.

mod report;
mod specfile;

pub use report::{
    run, CheckOutcome, CheckStatus, Heights, Report, RunError, RunOptions, DEFAULT_MAX_DIM,
};
pub use specfile::{parse_spec, render_spec, Check, SpecError, SpecFile};

use serde_json::Value;

/// `(file name, contents)` of every shipped example.
pub const CORPUS: &[(&str, &str)] = &[
    (
        "circle_rank4.spec",
        include_str!("../../corpus/circle_rank4.spec"),
    ),
    (
        "circle_rank8.spec",
        include_str!("../../corpus/circle_rank8.spec"),
    ),
    (
        "circle_rank16.spec",
        include_str!("../../corpus/circle_rank16.spec"),
    ),
    (
        "hopf_s2_rank2.spec",
        include_str!("../../corpus/hopf_s2_rank2.spec"),
    ),
    (
        "point_rank3.spec",
        include_str!("../../corpus/point_rank3.spec"),
    ),
    (
        "rp1_rank2.spec",
        include_str!("../../corpus/rp1_rank2.spec"),
    ),
    (
        "rp2_cubed_rank3.spec",
        include_str!("../../corpus/rp2_cubed_rank3.spec"),
    ),
    (
        "rp2_rank2.spec",
        include_str!("../../corpus/rp2_rank2.spec"),
    ),
    (
        "rp2_rank3.spec",
        include_str!("../../corpus/rp2_rank3.spec"),
    ),
    (
        "rp3_rank2.spec",
        include_str!("../../corpus/rp3_rank2.spec"),
    ),
    (
        "rp4_rank2.spec",
        include_str!("../../corpus/rp4_rank2.spec"),
    ),
    (
        "rp5_rank2.spec",
        include_str!("../../corpus/rp5_rank2.spec"),
    ),
    (
        "rp6_rank2.spec",
        include_str!("../../corpus/rp6_rank2.spec"),
    ),
    (
        "torus_rank2.spec",
        include_str!("../../corpus/torus_rank2.spec"),
    ),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub actual: Option<String>,
}

#[derive(Debug)]
pub enum CorpusOutcome {
    Checked {
        report: Box<Report>,
        mismatches: Vec<Mismatch>,
    },
    Parse(SpecError),
    Run(RunError),
}

impl CorpusOutcome {
    pub fn passed(&self) -> bool {
        match self {
            CorpusOutcome::Checked { report, mismatches } => {
                mismatches.is_empty() && report.failed_checks().next().is_none()
            }
            _ => false,
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Runs one spec and compares its `[expect]` section against the report.
pub fn evaluate(text: &str, max_dim: u32) -> CorpusOutcome {
    let file = match parse_spec(text) {
        Ok(f) => f,
        Err(e) => return CorpusOutcome::Parse(e),
    };
    let options = RunOptions {
        checks: file.checks.clone(),
        max_dim,
    };
    let report = match run(&file.bundle, &options) {
        Ok(r) => r,
        Err(e) => return CorpusOutcome::Run(e),
    };
    let flat = report.flat();
    let mismatches = file
        .expect
        .iter()
        .filter_map(|(key, expected)| {
            let actual = flat.get(key).map(value_text);
            (actual.as_deref() != Some(expected.as_str())).then(|| Mismatch {
                key: key.clone(),
                expected: expected.clone(),
                actual,
            })
        })
        .collect();
    CorpusOutcome::Checked {
        report: Box::new(report),
        mismatches,
    }
}

/// Evaluates every corpus entry on its own thread; results follow [`CORPUS`] order.
pub fn run_corpus(max_dim: u32) -> Vec<(&'static str, CorpusOutcome)> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = CORPUS
            .iter()
            .map(|&(name, text)| (name, scope.spawn(move || evaluate(text, max_dim))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| (name, h.join().expect("corpus worker panicked")))
            .collect()
    })
}
