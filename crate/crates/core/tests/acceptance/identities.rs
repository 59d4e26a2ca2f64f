//! Criterion 1: exact polynomial identities behind the decoders, checked
//! against reference computations written here from the definitions.

use chardecode::pseudo::{from_base_lambda, pseudodegree, pseudoderivative, to_base_lambda, PseudoPoly};
use chardecode::{Fe, Field, FieldCtx, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ensure, note, Log, Outcome};

const INSTANCES: usize = 200;

fn fields() -> Vec<Field> {
    vec![
        FieldCtx::prime(101).unwrap(),
        FieldCtx::new(2, 7, None).unwrap(),
        FieldCtx::new(5, 3, None).unwrap(),
    ]
}

/// `C(n, k)` in exact integers; fine for the small orders used here.
fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn mod_lambda(a: &Poly, f: &Field) -> Poly {
    a.rem(&Poly::lambda(f), f).unwrap()
}

fn signed(i: usize, f: &Field) -> Fe {
    if i.is_multiple_of(2) {
        Fe::ONE
    } else {
        f.minus_one()
    }
}

/// Random pseudopolynomial with `t` parts of degree at most `k`.
fn low_pdeg(t: usize, k: usize, rng: &mut ChaCha8Rng, f: &Field) -> Poly {
    let parts = (0..t).map(|_| Poly::random(k, rng, f)).collect();
    PseudoPoly::from_parts(parts, f).unwrap().to_poly(f)
}

pub fn run(log: &mut Log) -> Outcome {
    for f in fields() {
        let q = f.q_usize();
        let mut rng = ChaCha8Rng::seed_from_u64(0x1d ^ q as u64);

        for _ in 0..INSTANCES {
            let a = Poly::random(rng.gen_range(0..40), &mut rng, &f);
            let b = Poly::random(rng.gen_range(0..40), &mut rng, &f);
            let l = rng.gen_range(0..50);
            let lhs = a.mul(&b, &f).hasse(l, &f);
            let rhs = (0..=l).fold(Poly::zero(), |acc, i| acc.add(&a.hasse(i, &f).mul(&b.hasse(l - i, &f), &f), &f));
            ensure(lhs == rhs, || format!("q={q}: product rule fails at l={l} for {a} * {b}"))?;
        }
        note(log, format!("q={q} product-rule {INSTANCES}"));

        for _ in 0..INSTANCES {
            let v = Poly::random(q - 1, &mut rng, &f);
            let i = rng.gen_range(0..4);
            let l = rng.gen_range(0..q);
            let u = v.mul(&Poly::lambda(&f).pow(i as u64, &f), &f);
            let lhs = mod_lambda(&u.hasse(l, &f), &f);
            let rhs = if l >= i { mod_lambda(&v.hasse(l - i, &f).scale(signed(i, &f), &f), &f) } else { Poly::zero() };
            ensure(lhs == rhs, || format!("q={q}: lambda-power congruence fails at i={i} l={l}"))?;
        }
        note(log, format!("q={q} lambda-congruence {INSTANCES}"));

        for _ in 0..INSTANCES {
            let a = Poly::random(rng.gen_range(0..80), &mut rng, &f);
            let (i, j) = (rng.gen_range(0..30), rng.gen_range(0..30));
            let lhs = a.hasse(i, &f).hasse(j, &f);
            let coef = f.from_int((binom(i + j, i) % f.p() as u128) as u64);
            let rhs = a.hasse(i + j, &f).scale(coef, &f);
            ensure(lhs == rhs, || format!("q={q}: iterated derivative fails at i={i} j={j}"))?;
        }
        note(log, format!("q={q} iterated-derivative {INSTANCES}"));

        let mut checked = 0usize;
        for _ in 0..INSTANCES {
            let a = Poly::random(rng.gen_range(0..3 * q), &mut rng, &f);
            let l = rng.gen_range(0..2 * q);
            let pd = pseudoderivative(&a, l, &f);
            let full = a.hasse(l, &f);
            ensure(pd.degree().is_none_or(|d| d < q), || format!("q={q}: pseudoderivative degree >= q"))?;
            for alpha in f.elements() {
                ensure(pd.eval(alpha, &f) == full.eval(alpha, &f), || {
                    format!("q={q}: pseudoderivative of order {l} disagrees at {alpha}")
                })?;
                checked += 1;
            }
        }
        note(log, format!("q={q} pseudoderivative-agreement {INSTANCES} points={checked}"));

        for n in 0..INSTANCES {
            let a = if n % 2 == 0 {
                Poly::random(rng.gen_range(0..4 * q), &mut rng, &f)
            } else {
                low_pdeg(rng.gen_range(1..5), rng.gen_range(0..q), &mut rng, &f)
            };
            let expansion = to_base_lambda(&a, &f);
            ensure(from_base_lambda(&expansion, &f) == a, || format!("q={q}: base-lambda round trip fails"))?;
            // Reference expansion by repeated long division by Λ.
            let lambda = Poly::lambda(&f);
            let mut cur = a.clone();
            for part in expansion.parts() {
                let (quot, rem) = cur.divmod(&lambda, &f).unwrap();
                ensure(*part == rem, || format!("q={q}: base-lambda part differs from long division"))?;
                cur = quot;
            }
            ensure(cur.is_zero(), || format!("q={q}: base-lambda expansion is missing parts"))?;
        }
        note(log, format!("q={q} base-lambda-round-trip {INSTANCES}"));

        let mut pdegs = Vec::new();
        for n in 0..INSTANCES {
            let a = if n % 2 == 0 {
                low_pdeg(rng.gen_range(1..4), rng.gen_range(0..q / 4), &mut rng, &f)
            } else {
                Poly::random(rng.gen_range(0..3 * q), &mut rng, &f)
            };
            if a.is_zero() {
                continue;
            }
            let by_derivatives = (0..=a.degree().unwrap())
                .filter_map(|l| mod_lambda(&a.hasse(l, &f), &f).degree())
                .max()
                .unwrap();
            let by_parts = pseudodegree(&a, &f).unwrap();
            ensure(by_derivatives == by_parts, || {
                format!("q={q}: pseudodegree {by_parts} from parts, {by_derivatives} from derivatives")
            })?;
            pdegs.push(by_parts.to_string());
        }
        note(log, format!("q={q} pseudodegree-definitions {}", pdegs.join(",")));
    }
    Ok(())
}
