//! Runs every acceptance criterion and prints one line per criterion.

use std::process::{Command, ExitCode};

use meanlab_cli::suite::CRITERIA;
use meanlab_cli::Record;

fn summarize(records: &[Record]) -> (bool, String) {
    let failed: Vec<String> = records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} {}", r.check, r.name))
        .collect();
    let ok = !records.is_empty() && failed.is_empty();
    let mut detail = format!("{}/{} checks", records.len() - failed.len(), records.len());
    if !failed.is_empty() {
        detail += &format!("; failing: {}", failed.join(", "));
    }
    (ok, detail)
}

fn suite_json() -> Result<(i32, serde_json::Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_meanlab"))
        .args(["suite", "--all", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let mut doc: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    doc.as_object_mut()
        .ok_or("report is not an object")?
        .remove("timestamp")
        .ok_or("report has no timestamp")?;
    Ok((out.status.code().unwrap_or(-1), doc))
}

fn cli_determinism(in_process: &[Record]) -> (bool, String) {
    let (ok_inner, inner) = summarize(in_process);
    match (suite_json(), suite_json()) {
        (Ok((c1, a)), Ok((c2, b))) => {
            let same = a == b;
            (
                ok_inner && same && c1 == 0 && c2 == 0,
                format!("exit {c1}/{c2}, identical apart from timestamp: {same}; in-process {inner}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    for c in &CRITERIA {
        let records = c.run();
        let (ok, detail) = if c.id == 11 {
            cli_determinism(&records)
        } else {
            summarize(&records)
        };
        all &= ok;
        println!(
            "criterion {:>2} {} {} ({detail})",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
