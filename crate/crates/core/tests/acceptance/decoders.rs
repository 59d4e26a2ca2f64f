//! Criteria 6 and 7: the decoders on the pinned lab-mode parameter sets.
//!
//! Each set was found during bring-up to agree with the brute-force oracle
//! on every trial. Trial `s` draws its message from seed `1000 + s` and its
//! error pattern (and decoder seed) from `s`.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use chardecode::codes::{corrupt, encode_addp, encode_dbch, encode_mth, encode_qr, is_squarefree};
use chardecode::decode_dbch::{decode_addp, decode_dbch};
use chardecode::decode_qr::{decode_mth, decode_qr};
use chardecode::oracle::{
    brute_force_decode_addp, brute_force_decode_dbch, brute_force_decode_mth, brute_force_decode_qr, Nearest,
};
use chardecode::{Decoded, DecoderParams, Fe, Field, FieldCtx, Poly, Validation, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{ensure, note, Log, Outcome};

const TRIALS: u64 = 100;
const REGRESSION_SEEDS: u64 = 5;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Fam {
    Qr,
    Mth(u64),
    Dbch,
    Addp,
}

#[derive(Clone, Copy)]
struct Pin {
    fam: Fam,
    p: u64,
    b: u32,
    d: usize,
    e: usize,
    m: usize,
    c: usize,
    h: usize,
    u: Option<usize>,
}

const fn pin(fam: Fam, p: u64, b: u32, d: usize, e: usize, (m, c, h): (usize, usize, usize)) -> Pin {
    Pin { fam, p, b, d, e, m, c, h, u: None }
}

const PINS: &[Pin] = &[
    pin(Fam::Qr, 5, 2, 1, 0, (4, 2, 0)),
    pin(Fam::Qr, 5, 2, 1, 1, (4, 2, 2)),
    pin(Fam::Qr, 5, 2, 1, 2, (4, 2, 4)),
    pin(Fam::Qr, 7, 2, 2, 2, (4, 2, 4)),
    pin(Fam::Mth(3), 7, 1, 1, 0, (2, 1, 0)),
    pin(Fam::Mth(3), 31, 1, 1, 1, (2, 1, 2)),
    pin(Fam::Mth(5), 31, 1, 1, 1, (2, 1, 2)),
    pin(Fam::Mth(2), 5, 2, 1, 1, (2, 1, 2)),
    // The default U degree bound (h + dM = 12) lets spurious solutions in at q = 16.
    Pin { u: Some(6), ..pin(Fam::Dbch, 2, 4, 3, 0, (4, 2, 0)) },
    pin(Fam::Dbch, 2, 6, 3, 0, (4, 2, 0)),
    pin(Fam::Dbch, 2, 6, 3, 2, (4, 2, 4)),
    pin(Fam::Addp, 3, 3, 2, 0, (4, 2, 0)),
    pin(Fam::Addp, 3, 3, 2, 1, (4, 2, 2)),
];

impl fmt::Display for Pin {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.fam {
            Fam::Qr => "qr".to_string(),
            Fam::Mth(m) => format!("mth{m}"),
            Fam::Dbch => "dbch".to_string(),
            Fam::Addp => "addp".to_string(),
        };
        let q = self.p.pow(self.b);
        write!(out, "{fam} q={q} d={} e={} M={} c={} h={}", self.d, self.e, self.m, self.c, self.h)?;
        if let Some(u) = self.u {
            write!(out, " u={u}")?;
        }
        Ok(())
    }
}

struct Trial {
    received: Word,
    oracle: Nearest,
    decoded: Result<Decoded, String>,
}

impl Pin {
    fn field(&self) -> Field {
        FieldCtx::new(self.p, self.b, None).unwrap()
    }

    fn params(&self) -> DecoderParams {
        let mut params = DecoderParams::lab(self.d, self.e, self.m, self.c, self.h);
        params.overrides.u = self.u;
        params
    }

    fn message(&self, f: &Field, rng: &mut ChaCha8Rng) -> Poly {
        match self.fam {
            Fam::Qr => loop {
                let g = Poly::random_of_degree(self.d, true, rng, f);
                if is_squarefree(&g, f) {
                    break g;
                }
            },
            Fam::Mth(m) => loop {
                let g = Poly::random_of_degree(self.d, true, rng, f);
                if g.squarefree_decomposition(f).iter().all(|&(_, k)| (k as u64) < m) {
                    break g;
                }
            },
            Fam::Dbch | Fam::Addp => {
                let p = self.p as usize;
                let mut cs = vec![Fe::ZERO; self.d + 1];
                for (k, c) in cs.iter_mut().enumerate().skip(1) {
                    let allowed = if self.fam == Fam::Dbch { k % 2 == 1 } else { k % p != 0 };
                    if allowed {
                        *c = Fe::random(rng, f);
                    }
                }
                Poly::from_coeffs(cs)
            }
        }
    }

    fn trial(&self, f: &Field, s: u64) -> Trial {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + s);
        let g = self.message(f, &mut rng);
        let clean = match self.fam {
            Fam::Qr => encode_qr(f, &g, Validation::Strict),
            Fam::Mth(m) => encode_mth(f, m, &g, Validation::Strict),
            Fam::Dbch => encode_dbch(f, &g, Validation::Strict),
            Fam::Addp => encode_addp(f, &g, Validation::Strict),
        }
        .unwrap();
        let received = corrupt(&clean, self.e, s).unwrap();
        let params = self.params();
        let (oracle, decoded) = match self.fam {
            Fam::Qr => (brute_force_decode_qr(&received, self.d), decode_qr(&received, &params, s)),
            Fam::Mth(m) => (brute_force_decode_mth(&received, m, self.d), decode_mth(&received, m, &params, s)),
            Fam::Dbch => (brute_force_decode_dbch(&received, self.d), decode_dbch(&received, &params, s)),
            Fam::Addp => (brute_force_decode_addp(&received, self.d), decode_addp(&received, &params, s)),
        };
        Trial { received, oracle: oracle.unwrap(), decoded: decoded.map_err(|e| e.to_string()) }
    }
}

fn word_text(w: &Word) -> String {
    w.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn outcome_text(d: &Result<Decoded, String>) -> String {
    match d {
        Ok(d) => {
            let diag: Vec<String> = d.diagnostics.entries().iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{} | {}", d.poly, diag.join(";"))
        }
        Err(e) => format!("error | {e}"),
    }
}

fn regression_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/regressions.txt")
}

/// One line per (pin, seed): the received word, then the decoder's answer
/// with its full diagnostics.
fn regression_lines() -> Vec<String> {
    let mut lines = Vec::new();
    for pin in PINS {
        let f = pin.field();
        for s in 0..REGRESSION_SEEDS {
            let t = pin.trial(&f, s);
            lines.push(format!("{pin} seed={s} | {} | {}", word_text(&t.received), outcome_text(&t.decoded)));
        }
    }
    lines
}

pub fn regressions(log: &mut Log) -> Outcome {
    let lines = regression_lines();
    let path = regression_path();
    if std::env::var_os("CHARDECODE_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, lines.join("\n") + "\n").unwrap();
    }
    let pinned = fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let pinned: Vec<&str> = pinned.lines().collect();
    ensure(pinned.len() == lines.len(), || format!("{} pinned vectors, {} generated", pinned.len(), lines.len()))?;
    for (want, got) in pinned.iter().zip(&lines) {
        ensure(*want == got, || format!("regressed: {}", want.split(" | ").next().unwrap_or(want)))?;
        note(log, got);
    }
    note(log, format!("{} vectors byte-exact", lines.len()));
    Ok(())
}

pub fn monte_carlo(log: &mut Log) -> Outcome {
    let mut failures = Vec::new();
    for pin in PINS {
        let f = pin.field();
        let (mut counted, mut agreed) = (0, 0);
        for s in 0..TRIALS {
            let t = pin.trial(&f, s);
            if !(t.oracle.unique && t.oracle.distance <= pin.e) {
                note(log, format!("{pin} seed={s} skipped: oracle distance {} unique {}", t.oracle.distance, t.oracle.unique));
                continue;
            }
            counted += 1;
            match &t.decoded {
                Ok(d) if d.poly == t.oracle.message => agreed += 1,
                other => failures.push(format!("{pin} seed={s}: oracle {} decoder {}", t.oracle.message, outcome_text(other))),
            }
        }
        note(log, format!("{pin}: {agreed}/{counted} agree"));
    }
    ensure(failures.is_empty(), || format!("{} disagreements, first: {}", failures.len(), failures[0]))
}
