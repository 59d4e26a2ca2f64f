//! Criterion 5: the explicit Step-1 solutions built from an error locator
//! satisfy every row of the decoders' constraint matrices. This exercises
//! the system builders without going through any solver.

use chardecode::codes::{corrupt, encode_addp, encode_dbch, encode_qr, is_squarefree};
use chardecode::decode_dbch::{dbch_layout, dbch_system, f_target};
use chardecode::decode_qr::{qr_layout, qr_system};
use chardecode::pseudo::{error_locator, PseudoPoly};
use chardecode::system::Layout;
use chardecode::{DecoderParams, Diagnostics, Family, Fe, Field, FieldCtx, MatrixFq, Poly, Validation, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ensure, note, Log, Outcome};

const M: usize = 4;
const PER_CASE: u64 = 10;

fn error_points(clean: &Word, received: &Word, f: &Field) -> Vec<Fe> {
    clean
        .values()
        .iter()
        .zip(received.values())
        .zip(f.elements())
        .filter(|((a, b), _)| a != b)
        .map(|(_, alpha)| alpha)
        .collect()
}

fn pd(a: &Poly, l: usize, f: &Field) -> Poly {
    a.hasse(l, f).rem(&Poly::lambda(f), f).unwrap()
}

fn satisfied(mat: &MatrixFq, v: &[Fe], f: &Field) -> bool {
    mat.mul_vec(v, f).unwrap().iter().all(|x| x.is_zero())
}

/// `F = E·g^{(q-1)/2 + M}`, `U_ℓ = Σ_{ℓ1+ℓ2=ℓ} E_⟨ℓ1⟩ · G^{[ℓ2]} / g^{(q-1)/2}`.
fn qr_case(f: &Field, e: usize, seed: u64) -> Result<usize, String> {
    let q = f.q_usize();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = loop {
        let g = Poly::random_of_degree(1, true, &mut rng, f);
        if is_squarefree(&g, f) {
            break g;
        }
    };
    let clean = encode_qr(f, &g, Validation::Strict).unwrap();
    let r = corrupt(&clean, e, seed).unwrap();
    let params = DecoderParams::lab(1, e, M, 2, 2 * e);
    let res = params.resolve(Family::Qr, f, &mut Diagnostics::new()).unwrap();
    let s = error_points(&clean, &r, f);
    let big_e = error_locator(&s, M, res.c, res.h, f).unwrap().to_poly(f);

    let half = g.pow(((q - 1) / 2) as u64, f);
    let big_g = g.pow(((q - 1) / 2 + M) as u64, f);
    let big_f = big_e.mul(&big_g, f);
    let u: Vec<Poly> = (0..M)
        .map(|l| {
            (0..=l).fold(Poly::zero(), |acc, l1| {
                let tail = big_g.hasse(l - l1, f).div_exact(&half, f).unwrap();
                acc.add(&pd(&big_e, l1, f).mul(&tail, f), f)
            })
        })
        .collect();
    let layout = qr_layout(&res);
    let v = layout.join(&big_f, &[], &u).ok_or(format!("q={q}: QR witness does not fit the layout"))?;
    let mat = qr_system(r.values(), &layout, f);
    ensure(satisfied(&mat, &v, f), || format!("q={q} e={e} seed={seed}: QR witness violates a row"))?;
    Ok(mat.rows())
}

/// `TR(g) = Σ_t g^{p^t}`, which evaluates to `Tr(g(α))` on `F_q`.
fn trace_poly(g: &Poly, f: &Field) -> Poly {
    let mut out = Poly::zero();
    let mut cur = g.clone();
    for _ in 0..f.b() {
        out = out.add(&cur, f);
        cur = cur.pow(f.p() as u64, f);
    }
    out
}

/// `E` with `c + 1` parts, shifted by a power of `Λ` so the top part is
/// `E_c` and scaled so its leading coefficient is 1; `F = E·TR(g)`,
/// `U_ℓ = Σ_{ℓ1<ℓ} E_⟨ℓ1⟩ · TR(g)^{[ℓ-ℓ1]}` reduced mod `Λ`.
fn trace_case(f: &Field, d: usize, e: usize, family: Family, seed: u64) -> Result<usize, String> {
    let q = f.q_usize();
    let p = f.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Fe::ZERO; d + 1];
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        let allowed = if family == Family::Dbch { k % 2 == 1 } else { k % p != 0 };
        if allowed {
            *c = f.elem(rng.gen_range(0..q as u64)).unwrap();
        }
    }
    let g = Poly::from_coeffs(coeffs);
    let clean = match family {
        Family::Dbch => encode_dbch(f, &g, Validation::Strict),
        _ => encode_addp(f, &g, Validation::Strict),
    }
    .unwrap();
    let r = corrupt(&clean, e, seed).unwrap();
    let params = DecoderParams::lab(d, e, M, 2, 2 * e);
    let res = params.resolve(family, f, &mut Diagnostics::new()).unwrap();
    let s = error_points(&clean, &r, f);

    let loc = error_locator(&s, M, res.c + 1, res.h, f).unwrap();
    let mut parts = vec![Poly::zero(); res.c + 1 - loc.len()];
    parts.extend(loc.parts().iter().cloned());
    let top = parts[res.c].clone();
    let hstar = top.degree().unwrap();
    let scale = f.inv(top.leading().unwrap()).unwrap();
    let parts: Vec<Poly> = parts.iter().map(|c| c.scale(scale, f)).collect();
    let big_e = PseudoPoly::from_parts(parts.clone(), f).unwrap().to_poly(f);

    let tr = trace_poly(&g, f);
    let big_f = big_e.mul(&tr, f);
    let target = f_target(d, &res, hstar, f);
    if !g.is_zero() && g.degree() == Some(d) {
        ensure(big_f.degree() == Some(target), || format!("q={q}: witness F has degree {:?}, want {target}", big_f.degree()))?;
    }
    let u: Vec<Poly> = (0..M)
        .map(|l| {
            let sum = (0..l).fold(Poly::zero(), |acc, l1| acc.add(&pd(&big_e, l1, f).mul(&tr.hasse(l - l1, f), f), f));
            sum.rem(&Poly::lambda(f), f).unwrap()
        })
        .collect();
    let layout: Layout = dbch_layout(&res, target);
    let v = layout.join(&big_f, &parts, &u).ok_or(format!("q={q}: trace witness does not fit the layout"))?;
    let mat = dbch_system(r.values(), &layout, f);
    ensure(satisfied(&mat, &v, f), || format!("q={q} d={d} e={e} seed={seed}: trace witness violates a row"))?;
    Ok(mat.rows())
}

pub fn run(log: &mut Log) -> Outcome {
    let f25 = FieldCtx::new(5, 2, None).unwrap();
    let f16 = FieldCtx::new(2, 4, None).unwrap();
    for e in 0..=2 {
        let rows: usize = (0..PER_CASE).map(|s| qr_case(&f25, e, s)).sum::<Result<_, _>>()?;
        note(log, format!("qr q=25 M={M} e={e}: {PER_CASE} witnesses, {rows} rows"));
    }
    for e in 0..=2 {
        let rows: usize = (0..PER_CASE).map(|s| trace_case(&f16, 3, e, Family::Dbch, s)).sum::<Result<_, _>>()?;
        note(log, format!("dbch q=16 M={M} d=3 e={e}: {PER_CASE} witnesses, {rows} rows"));
    }
    for e in 0..=1 {
        let rows: usize = (0..PER_CASE).map(|s| trace_case(&f25, 2, e, Family::Addp, s)).sum::<Result<_, _>>()?;
        note(log, format!("addp q=25 M={M} d=2 e={e}: {PER_CASE} witnesses, {rows} rows"));
    }
    Ok(())
}
