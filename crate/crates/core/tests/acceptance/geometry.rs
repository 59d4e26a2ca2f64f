//! Criterion 4: minimum distance and linearity of the dual-BCH code, and the
//! two blindness properties that make the message spaces what they are.

use chardecode::codes::{encode_dbch, encode_qr, hamming_distance};
use chardecode::oracle::min_weight_dbch;
use chardecode::{Fe, Field, FieldCtx, Poly, Validation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ensure, note, Log, Outcome};

fn min_weight(log: &mut Log) -> Outcome {
    let f = FieldCtx::new(2, 6, None).unwrap();
    let w = min_weight_dbch(&f, 3).unwrap();
    // Independent recount: weight of every nonzero a X + b X^3.
    let mut best = usize::MAX;
    for a in f.elements() {
        for b in f.elements() {
            if a == Fe::ZERO && b == Fe::ZERO {
                continue;
            }
            let weight = f
                .elements()
                .filter(|&x| {
                    let v = f.add(f.mul(a, x), f.mul(b, f.pow(x, 3)));
                    f.trace(v) != Fe::ZERO
                })
                .count();
            best = best.min(weight);
        }
    }
    ensure(w == best, || format!("min weight {w} disagrees with recount {best}"))?;
    ensure(w >= 16, || format!("q=64 d=3 min weight {w} < 16"))?;
    note(log, format!("q=64 d=3 min-weight {w} over 4095 codewords"));
    Ok(())
}

/// Over every `F_{2^b}` with `q ≤ 256`: `Tr` is additive on all coefficient
/// pairs, and every message of degree `≤ 3` encodes to the XOR of its
/// monomials' codewords.
fn linearity(log: &mut Log) -> Outcome {
    for b in 1..=8 {
        let f = FieldCtx::new(2, b, None).unwrap();
        let q = f.q_usize();
        let traces: Vec<Fe> = f.elements().map(|v| f.trace(v)).collect();
        for a in f.elements() {
            for c in f.elements() {
                let sum = f.add(a, c).index() as usize;
                let ok = traces[sum] == f.add(traces[a.index() as usize], traces[c.index() as usize]);
                ensure(ok, || format!("q={q}: trace not additive at {a}, {c}"))?;
            }
        }
        let mono = |a: Fe, k: usize| encode_dbch(&f, &Poly::monomial(a, k), Validation::Strict).unwrap();
        let words1: Vec<_> = f.elements().map(|a| mono(a, 1)).collect();
        let words3: Vec<_> = f.elements().map(|a| mono(a, 3)).collect();
        for a in f.elements() {
            for c in f.elements() {
                let g = Poly::from_coeffs(vec![Fe::ZERO, a, Fe::ZERO, c]);
                let w = encode_dbch(&f, &g, Validation::Strict).unwrap();
                let (u, v) = (&words1[a.index() as usize], &words3[c.index() as usize]);
                let xor = u.values().iter().zip(v.values()).map(|(&x, &y)| f.add(x, y));
                ensure(w.values().iter().copied().eq(xor), || format!("q={q}: encode_dbch not additive at {g}"))?;
            }
        }
        note(log, format!("q={q} linear over {} messages", q * q));
    }
    Ok(())
}

fn square_blind(log: &mut Log, f: &Field, rng: &mut ChaCha8Rng) -> Outcome {
    let q = f.q();
    let mut dists = Vec::new();
    for _ in 0..200 {
        let g = Poly::random_of_degree(rng.gen_range(0..6), false, rng, f);
        let h = Poly::random_of_degree(rng.gen_range(1..4), false, rng, f);
        let h2 = h.square(f);
        let a = encode_qr(f, &g, Validation::Lab).unwrap();
        let b = encode_qr(f, &g.mul(&h2, f), Validation::Lab).unwrap();
        let dist = hamming_distance(&a, &b).unwrap();
        ensure(dist <= h2.degree().unwrap(), || format!("q={q}: chi(g) and chi(g h^2) differ in {dist} places for h = {h}"))?;
        dists.push(dist.to_string());
    }
    note(log, format!("q={q} square-blind {}", dists.join(",")));
    Ok(())
}

fn trace_blind(log: &mut Log, f: &Field, rng: &mut ChaCha8Rng) -> Outcome {
    let q = f.q();
    for _ in 0..200 {
        let g = Poly::random(rng.gen_range(0..12), rng, f);
        let h = Poly::random(rng.gen_range(0..6), rng, f);
        let shifted = g.add(&h, f).add(&h.square(f), f);
        let a = encode_dbch(f, &g, Validation::Lab).unwrap();
        let b = encode_dbch(f, &shifted, Validation::Lab).unwrap();
        ensure(a == b, || format!("q={q}: Tr(g) != Tr(g + h + h^2) for g = {g}, h = {h}"))?;
    }
    note(log, format!("q={q} trace-blind 200"));
    Ok(())
}

pub fn run(log: &mut Log) -> Outcome {
    min_weight(log)?;
    linearity(log)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x4);
    for f in [FieldCtx::prime(101).unwrap(), FieldCtx::new(5, 3, None).unwrap()] {
        square_blind(log, &f, &mut rng)?;
    }
    for b in [6, 7] {
        trace_blind(log, &FieldCtx::new(2, b, None).unwrap(), &mut rng)?;
    }
    Ok(())
}
