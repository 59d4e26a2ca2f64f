//! Criterion 3: Weil bounds on random polynomials. The sums are recomputed
//! here from the character definitions and compared with the library's
//! reports before the bound is checked.

use chardecode::oracle::{weil_sum_add, weil_sum_mult};
use chardecode::{Fe, Field, FieldCtx, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ensure, note, Log, Outcome};

const INSTANCES: usize = 1000;

/// `a² ≤ k² q`, i.e. `a ≤ k √q`, in integers.
fn below(a: u64, k: u64, q: u64) -> bool {
    (a as u128).pow(2) <= (k as u128).pow(2) * q as u128
}

fn multiplicative(log: &mut Log, f: &Field) -> Outcome {
    let q = f.q() as u64;
    let half = (q - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(0x3a ^ q);
    let mut sums = Vec::new();
    while sums.len() < INSTANCES {
        let g = Poly::random_of_degree(rng.gen_range(1..11), false, &mut rng, f);
        let report = weil_sum_mult(f, &g).unwrap();
        if !report.applicable {
            continue;
        }
        let sum: i64 = g
            .eval_all(f)
            .into_iter()
            .map(|v| match f.pow(v, half) {
                x if x == Fe::ONE => 1,
                x if x == Fe::ZERO => 0,
                _ => -1,
            })
            .sum();
        ensure(sum.unsigned_abs() == report.magnitude, || format!("q={q}: quadratic sum mismatch for {g}"))?;
        let deg = g.degree().unwrap() as u64;
        ensure(below(sum.unsigned_abs(), 2 * deg, q), || format!("q={q}: |sum chi({g})| = {} exceeds 2 deg sqrt q", sum.abs()))?;
        sums.push(sum.to_string());
    }
    note(log, format!("q={q} quadratic {}", sums.join(",")));
    Ok(())
}

/// Random `f` of degree prime to `p`, so `f` is never `λ + h^p - h`.
fn additive(log: &mut Log, f: &Field) -> Outcome {
    let q = f.q() as u64;
    let p = f.p() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(0xad ^ q);
    let mut mags = Vec::new();
    while mags.len() < INSTANCES {
        let deg = rng.gen_range(1..12);
        if (deg as u64).is_multiple_of(p) {
            continue;
        }
        let g = Poly::random_of_degree(deg, false, &mut rng, f);
        let report = weil_sum_add(f, &g);
        ensure(report.applicable, || format!("q={q}: {g} reported as a trivial trace"))?;
        // N_c = #{α : Tr g(α) = c}; each |p N_c - q| ≤ (p - 1)·|largest nontrivial sum|.
        let mut counts = vec![0i64; p as usize];
        for v in g.eval_all(f) {
            counts[f.trace(v).index() as usize] += 1;
        }
        let mag = counts.iter().map(|&n| (p as i64 * n - q as i64).unsigned_abs()).max().unwrap();
        ensure(mag == report.magnitude, || format!("q={q}: trace distribution mismatch for {g}"))?;
        ensure(below(mag, (p - 1) * (deg as u64 - 1), q), || format!("q={q}: additive sum for {g} exceeds (deg-1) sqrt q"))?;
        mags.push(mag.to_string());
    }
    note(log, format!("q={q} additive {}", mags.join(",")));
    Ok(())
}

pub fn run(log: &mut Log) -> Outcome {
    let f101 = FieldCtx::prime(101).unwrap();
    let f64 = FieldCtx::new(2, 6, None).unwrap();
    multiplicative(log, &f101)?;
    additive(log, &f101)?;
    additive(log, &f64)
}
