//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.
//!
//! Every suite writes a plain-text log (no timings); criterion 8 re-runs
//! them all and demands byte-identical logs.
//!
//! `CHARDECODE_BLESS=1` rewrites the pinned regression file instead of
//! checking it. `CHARDECODE_ACCEPTANCE_LOG=<dir>` also writes each suite
//! log to `<dir>/criterion-<id>.log`.

mod decoders;
mod geometry;
mod identities;
mod weil;
mod witness;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

pub type Log = String;

/// Outcome of one suite: `Err` carries the first violation found.
pub type Outcome = Result<(), String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn(&mut Log) -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "exact identities", limit: Duration::from_secs(10), run: identities::run },
    Criterion { id: 2, name: "multiplicity residues", limit: Duration::from_secs(30), run: residues::run },
    Criterion { id: 3, name: "Weil bounds", limit: Duration::from_secs(60), run: weil::run },
    Criterion { id: 4, name: "code geometry", limit: Duration::from_secs(120), run: geometry::run },
    Criterion { id: 5, name: "witness feasibility", limit: Duration::from_secs(60), run: witness::run },
    Criterion { id: 6, name: "decoder regressions", limit: Duration::from_secs(300), run: decoders::regressions },
    Criterion { id: 7, name: "oracle agreement", limit: Duration::from_secs(300), run: decoders::monte_carlo },
];

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id} {name}: {verdict} ({detail})");
}

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut logs = Vec::new();
    for c in CRITERIA {
        let mut log = Log::new();
        let t0 = Instant::now();
        let outcome = (c.run)(&mut log);
        let took = t0.elapsed();
        let in_time = took <= c.limit;
        let detail = match &outcome {
            Ok(()) if in_time => format!("{:.1}s of {}s", took.as_secs_f64(), c.limit.as_secs()),
            Ok(()) => format!("too slow: {:.1}s > {}s", took.as_secs_f64(), c.limit.as_secs()),
            Err(e) => e.clone(),
        };
        let ok = outcome.is_ok() && in_time;
        report(c.id, c.name, ok, &detail);
        all_ok &= ok;
        logs.push(log);
    }

    // Determinism: every suite again, same seeds, byte-identical logs.
    let mut mismatch = None;
    for (c, first) in CRITERIA.iter().zip(&logs) {
        let mut again = Log::new();
        let _ = (c.run)(&mut again);
        if again != *first && mismatch.is_none() {
            mismatch = Some(c.id);
        }
    }
    if let Some(dir) = std::env::var_os("CHARDECODE_ACCEPTANCE_LOG") {
        for (c, log) in CRITERIA.iter().zip(&logs) {
            let path = std::path::Path::new(&dir).join(format!("criterion-{}.log", c.id));
            if let Err(e) = std::fs::write(&path, log) {
                eprintln!("cannot write {}: {e}", path.display());
            }
        }
    }
    let bytes: usize = logs.iter().map(String::len).sum();
    let detail = match mismatch {
        None => format!("{} logs, {bytes} bytes identical", logs.len()),
        Some(id) => format!("log of criterion {id} differs between runs"),
    };
    report(8, "determinism", mismatch.is_none(), &detail);
    all_ok &= mismatch.is_none();

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Appends a line to a suite log.
pub fn note(log: &mut Log, line: impl AsRef<str>) {
    let _ = writeln!(log, "{}", line.as_ref());
}

/// Fails the suite with `msg` unless `ok`.
pub fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}
