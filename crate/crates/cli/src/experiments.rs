//! `bench` and `roundtrip`.

use std::io::Write;
use std::time::Instant;

use chardecode::codes::{corrupt, is_squarefree};
use chardecode::decode_dbch::{dbch_layout, f_target};
use chardecode::decode_qr::qr_layout;
use chardecode::{DecoderParams, Diagnostics, Family, Fe, Field, FieldCtx, Poly, Validation};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{decode, encode, CliResult, DecodeOpts, FamilyArg, FamilyOpts};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Qr,
    Mth,
    Dbch,
    Addp,
    All,
}

/// A random message from the family's message space, with degree exactly
/// `d` where the family allows it.
pub fn random_message(fam: &FamilyOpts, d: usize, rng: &mut ChaCha8Rng, f: &Field) -> Poly {
    match fam.family {
        FamilyArg::Qr => loop {
            let g = Poly::random_of_degree(d, true, rng, f);
            if is_squarefree(&g, f) {
                return g;
            }
        },
        FamilyArg::Mth => loop {
            let g = Poly::random_of_degree(d, true, rng, f);
            if g.squarefree_decomposition(f).iter().all(|&(_, k)| (k as u64) < fam.m) {
                return g;
            }
        },
        FamilyArg::Dbch | FamilyArg::Addp => {
            let p = f.p() as usize;
            let mut cs = vec![Fe::ZERO; d + 1];
            for (k, c) in cs.iter_mut().enumerate().skip(1) {
                let allowed = if fam.family == FamilyArg::Dbch { k % 2 == 1 } else { k % p != 0 };
                if allowed {
                    *c = Fe::random(rng, f);
                }
            }
            Poly::from_coeffs(cs)
        }
    }
}

fn family(fam: &FamilyOpts) -> Family {
    match fam.family {
        FamilyArg::Qr => Family::Qr,
        FamilyArg::Mth => Family::Mth(fam.m),
        FamilyArg::Dbch => Family::Dbch,
        FamilyArg::Addp => Family::Addp,
    }
}

/// Rows and columns of the (largest) interpolation system.
fn system_dims(fam: &FamilyOpts, params: &DecoderParams, f: &Field) -> CliResult<(usize, usize)> {
    let res = params.resolve(family(fam), f, &mut Diagnostics::new())?;
    let layout = match fam.family {
        FamilyArg::Qr | FamilyArg::Mth => qr_layout(&res),
        FamilyArg::Dbch | FamilyArg::Addp => dbch_layout(&res, f_target(params.d, &res, res.h, f)),
    };
    Ok((f.q_usize() * layout.m, layout.cols()))
}

struct BenchCase {
    fam: FamilyArg,
    m: u64,
    p: u64,
    b: u32,
    d: usize,
    e: usize,
    sizes: (usize, usize, usize),
    u: Option<usize>,
}

const fn case(fam: FamilyArg, m: u64, (p, b): (u64, u32), d: usize, e: usize, sizes: (usize, usize, usize)) -> BenchCase {
    BenchCase { fam, m, p, b, d, e, sizes, u: None }
}

/// Lab-mode parameter sets on which the decoders match the brute-force
/// oracle in every trial.
const CASES: &[BenchCase] = &[
    case(FamilyArg::Qr, 2, (5, 2), 1, 1, (4, 2, 2)),
    case(FamilyArg::Qr, 2, (5, 2), 1, 2, (4, 2, 4)),
    case(FamilyArg::Qr, 2, (7, 2), 2, 2, (4, 2, 4)),
    case(FamilyArg::Mth, 3, (7, 1), 1, 0, (2, 1, 0)),
    case(FamilyArg::Mth, 3, (31, 1), 1, 1, (2, 1, 2)),
    case(FamilyArg::Mth, 5, (31, 1), 1, 1, (2, 1, 2)),
    BenchCase { u: Some(6), ..case(FamilyArg::Dbch, 2, (2, 4), 3, 0, (4, 2, 0)) },
    case(FamilyArg::Dbch, 2, (2, 6), 3, 0, (4, 2, 0)),
    case(FamilyArg::Dbch, 2, (2, 6), 3, 2, (4, 2, 4)),
    case(FamilyArg::Addp, 2, (3, 3), 2, 0, (4, 2, 0)),
    case(FamilyArg::Addp, 2, (3, 3), 2, 1, (4, 2, 2)),
];

const BENCH_TRIALS: u64 = 3;

pub fn bench(suite: Suite, out: &mut impl Write) -> CliResult {
    writeln!(out, "family,q,d,e,M,c,h,rows,cols,wall_ms")?;
    for c in CASES {
        let wanted = match suite {
            Suite::All => true,
            Suite::Qr => c.fam == FamilyArg::Qr,
            Suite::Mth => c.fam == FamilyArg::Mth,
            Suite::Dbch => c.fam == FamilyArg::Dbch,
            Suite::Addp => c.fam == FamilyArg::Addp,
        };
        if !wanted {
            continue;
        }
        let f = FieldCtx::new(c.p, c.b, None)?;
        let fam = FamilyOpts { family: c.fam, m: c.m };
        let (big_m, cc, h) = c.sizes;
        let mut params = DecoderParams::lab(c.d, c.e, big_m, cc, h);
        params.overrides.u = c.u;
        let (rows, cols) = system_dims(&fam, &params, &f)?;
        let mut total = 0.0;
        for s in 0..BENCH_TRIALS {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let g = random_message(&fam, c.d, &mut rng, &f);
            let r = corrupt(&encode(&fam, &f, &g, Validation::Strict)?, c.e, s)?;
            let t0 = Instant::now();
            let _ = decode(&fam, &r, &params, s);
            total += t0.elapsed().as_secs_f64();
        }
        let name = match c.fam {
            FamilyArg::Mth => format!("mth{}", c.m),
            FamilyArg::Qr => "qr".into(),
            FamilyArg::Dbch => "dbch".into(),
            FamilyArg::Addp => "addp".into(),
        };
        let ms = 1000.0 * total / BENCH_TRIALS as f64;
        writeln!(out, "{name},{},{},{},{big_m},{cc},{h},{rows},{cols},{ms:.2}", f.q(), c.d, c.e)?;
    }
    Ok(())
}

/// Trial `i` uses seed `seed + i` for the message, the error pattern and
/// the decoder, so the parallel run is reproducible.
pub fn roundtrip(f: &Field, opts: &DecodeOpts, trials: u64, seed: u64, out: &mut impl Write) -> CliResult {
    let params = opts.params()?;
    // Surface parameter errors once instead of per trial.
    params.resolve(family(&opts.fam), f, &mut Diagnostics::new())?;
    let outcomes: Vec<CliResult<(Poly, String)>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = seed + i;
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let g = random_message(&opts.fam, opts.d, &mut rng, f);
            let r = corrupt(&encode(&opts.fam, f, &g, Validation::Strict)?, opts.e, s)?;
            let got = match decode(&opts.fam, &r, &params, s) {
                Ok(out) => out.poly.to_string(),
                Err(e) => format!("error: {e}"),
            };
            Ok((g, got))
        })
        .collect();
    writeln!(out, "trial,seed,message,decoded,ok")?;
    let mut ok = 0;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let (g, got) = outcome?;
        let hit = g.to_string() == got;
        ok += hit as u64;
        writeln!(out, "{i},{},\"{g}\",\"{got}\",{hit}", seed + i as u64)?;
    }
    writeln!(out, "success={ok}/{trials}")?;
    Ok(())
}
