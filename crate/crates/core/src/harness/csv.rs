//! CSV writers. Numbers use 17 significant digits in scientific notation,
//! which round-trips every `f64` and is locale independent.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::sweep::SweepResult;
use crate::oracles::LemmaVerdict;

pub const SWEEP_HEADER: &str = "p,rep,seed,risk_null,risk_A,risk_BA,drop,bound,bound_applicable";
pub const SUMMARY_HEADER: &str =
    "p,mean_risk_A,se_risk_A,mean_risk_BA,se_risk_BA,mean_drop,se_drop";
pub const VERDICT_HEADER: &str = "lemma_id,trials,passes,pass_rate,worst_margin,threshold,status";

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// `<path>.summary.csv`
pub fn summary_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".summary.csv");
    PathBuf::from(s)
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in &result.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.p,
            r.rep,
            r.seed,
            fmt_f64(r.risk_null),
            fmt_f64(r.risk_a),
            fmt_f64(r.risk_ba),
            fmt_f64(r.drop),
            fmt_f64(r.bound),
            r.bound_applicable
        );
    }
    out
}

pub fn summary_csv(result: &SweepResult) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in &result.summary {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            s.p,
            fmt_f64(s.risk_a.mean),
            fmt_f64(s.risk_a.se),
            fmt_f64(s.risk_ba.mean),
            fmt_f64(s.risk_ba.se),
            fmt_f64(s.drop.mean),
            fmt_f64(s.drop.se)
        );
    }
    out
}

pub fn verdicts_csv(verdicts: &[LemmaVerdict]) -> String {
    let mut out = String::from(VERDICT_HEADER);
    out.push('\n');
    for v in verdicts {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            v.lemma_id.name(),
            v.trials,
            v.passes,
            fmt_f64(v.pass_rate),
            fmt_f64(v.worst_margin),
            fmt_f64(v.threshold),
            v.status()
        );
    }
    out
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the per-cell CSV at `path` and the per-p summary next to it.
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write(path, &sweep_csv(result))?;
    write(&summary_path(path), &summary_csv(result))
}

pub fn emit_verdicts_csv(verdicts: &[LemmaVerdict], path: &Path) -> Result<()> {
    write(path, &verdicts_csv(verdicts))
}
