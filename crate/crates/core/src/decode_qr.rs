//! Algorithm A (quadratic character) and its `m`-th power generalization
//! `A_m`.
//!
//! Both interpolate `F^{[ℓ]}(α) = r(α)·U_ℓ(α)` for every `α ∈ F_q` and
//! `ℓ < M`, factor `F`, and read each irreducible factor's exponent in the
//! message off its multiplicity in `F` modulo `q`.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::codes::{Alphabet, Word};
use crate::diag::{Decoded, Diagnostics};
use crate::error::{Error, FailureKind, Result};
use crate::factor::factor_poly;
use crate::field::{Fe, FieldCtx};
use crate::linsolve::{nullspace_basis, seeded_combinations, MatrixFq};
use crate::params::{DecoderParams, Family, Resolved};
use crate::poly::Poly;
use crate::system::{add_hasse_form, build_rows, Binoms, Layout};

/// Extra nullspace vectors decoded to detect ambiguous solutions.
const AMBIGUITY_PROBES: usize = 2;

pub fn qr_layout(res: &Resolved) -> Layout {
    Layout { f_len: res.big_d + 1, e_parts: 0, e_len: 0, m: res.m, u_len: res.u + 1 }
}

/// Rows `F^{[ℓ]}(α) - r(α)·U_ℓ(α) = 0`.
pub fn qr_system(r: &[Fe], layout: &Layout, f: &FieldCtx) -> MatrixFq {
    let binoms = Binoms::new(layout.f_len, layout.m, f);
    let max_pow = layout.f_len.max(layout.u_len);
    build_rows(layout, max_pow, f, |row, ai, pows, l| {
        add_hasse_form(row, 0, layout.f_len, l, Fe::ONE, pows, &binoms, f);
        let neg_r = f.neg(r[ai]);
        if !neg_r.is_zero() {
            let start = layout.u_col(l, 0);
            for (j, &pw) in pows[..layout.u_len].iter().enumerate() {
                row[start + j] = f.mul(neg_r, pw);
            }
        }
    })
}

/// Solves one system and returns the `F` parts of the nonzero candidates:
/// canonical basis vectors with `F ≠ 0` in order, then seeded combinations.
fn candidates(
    r: &[Fe],
    res: &Resolved,
    probes: usize,
    seed: u64,
    f: &FieldCtx,
    diag: &mut Diagnostics,
) -> Result<Vec<Poly>> {
    let layout = qr_layout(res);
    let mat = qr_system(r, &layout, f);
    diag.push("rows", mat.rows());
    diag.push("cols", mat.cols());
    let basis = nullspace_basis(&mat, f);
    diag.push("nullity", basis.len());
    if basis.is_empty() {
        return Err(Error::decode(FailureKind::NoNonzeroSolution, diag.clone()));
    }
    let mut out: Vec<Poly> = basis
        .iter()
        .map(|v| layout.split_f(v))
        .filter(|p| !p.is_zero())
        .take(1 + probes)
        .collect();
    if out.is_empty() {
        return Err(Error::decode(FailureKind::AllSolutionsZeroF, diag.clone()));
    }
    out.extend(
        seeded_combinations(&basis, probes, seed, f)
            .iter()
            .map(|v| layout.split_f(v))
            .filter(|p| !p.is_zero()),
    );
    Ok(out)
}

fn residue_list(fac: &[(Poly, usize)], q: usize) -> String {
    fac.iter().map(|(_, mu)| (mu % q).to_string()).collect::<Vec<_>>().join(",")
}

/// Steps 3 to 5 of Algorithm A: the product of the factors whose
/// multiplicity mod `q` lies in `[⌈3q/8⌉, ⌊7q/8⌋]`.
fn qr_extract(big_f: &Poly, seed: u64, f: &FieldCtx, diag: Option<&mut Diagnostics>) -> Result<Poly> {
    let q = f.q_usize();
    let fac = factor_poly(big_f, seed, f)?;
    let mut out = Poly::one();
    let mut picked = 0;
    for (h, mu) in &fac.factors {
        let x = mu % q;
        if 8 * x >= 3 * q && 8 * x <= 7 * q {
            out = out.mul(h, f);
            picked += 1;
        }
    }
    if let Some(diag) = diag {
        diag.push("degF", big_f.degree().unwrap_or(0));
        diag.push("factors", fac.factors.len());
        diag.push("residues", residue_list(&fac.factors, q));
        diag.push("J", picked);
    }
    Ok(out)
}

/// The message read off one interpolated `F`: the product of its irreducible
/// factors whose multiplicity mod `q` lies in `[⌈3q/8⌉, ⌊7q/8⌋]`.
pub fn select_factors(big_f: &Poly, seed: u64, f: &FieldCtx) -> Result<Poly> {
    qr_extract(big_f, seed, f, None)
}

fn check_alphabet(r: &Word, ok: &[Alphabet]) -> Result<()> {
    if ok.contains(&r.alphabet()) {
        Ok(())
    } else {
        Err(Error::InvalidMessage(format!("decoder does not accept a {} word", r.alphabet())))
    }
}

/// Algorithm A. The first nullspace vector with `F ≠ 0` is decoded; a few
/// more are decoded as well and `ambiguous=true` is recorded if any of them
/// disagrees.
pub fn decode_qr(r: &Word, params: &DecoderParams, seed: u64) -> Result<Decoded> {
    let f = r.field();
    if !f.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    check_alphabet(r, &[Alphabet::Qr, Alphabet::Fq])?;
    let mut diag = Diagnostics::new();
    let res = params.resolve(Family::Qr, f, &mut diag)?;
    let cands = candidates(r.values(), &res, AMBIGUITY_PROBES, seed, f, &mut diag)?;
    let poly = qr_extract(&cands[0], seed, f, Some(&mut diag))?;
    let mut ambiguous = false;
    for other in &cands[1..] {
        if qr_extract(other, seed, f, None)? != poly {
            ambiguous = true;
            break;
        }
    }
    diag.push("ambiguous", ambiguous);
    Ok(Decoded { poly, diagnostics: diag })
}

/// Whether `x - k q` lands in `(-(1/12 - ε) q, (3/12 - ε) q)` for some `k`,
/// for `0 ≤ x < q`.
fn in_mth_window(x: u64, q: u64, eps: Ratio<u64>) -> bool {
    let (num, den) = (*eps.numer() as i128, *eps.denom() as i128);
    let (q, x) = (q as i128, x as i128);
    let lo = -(den - 12 * num) * q;
    let hi = (3 * den - 12 * num) * q;
    [x, x - q].iter().any(|&y| lo < 12 * den * y && 12 * den * y < hi)
}

/// Algorithm `A_m` for a prime `m | q - 1`.
pub fn decode_mth(r: &Word, m: u64, params: &DecoderParams, seed: u64) -> Result<Decoded> {
    let f = r.field();
    f.check_order(m)?;
    let mut ok = vec![Alphabet::Mth(m), Alphabet::Fq];
    if m == 2 {
        ok.push(Alphabet::Qr);
    }
    check_alphabet(r, &ok)?;
    let q = f.q() as u64;
    let mut diag = Diagnostics::new();
    let res = params.resolve(Family::Mth(m), f, &mut diag)?;

    // mults[H][ν - 1] = multiplicity of H in F_ν.
    let mut mults: BTreeMap<Poly, Vec<u64>> = BTreeMap::new();
    for nu in 1..m {
        diag.push("nu", nu);
        let r_nu: Vec<Fe> = r.values().iter().map(|&v| f.pow(v, nu)).collect();
        let cands = candidates(&r_nu, &res, 0, seed, f, &mut diag)?;
        let fac = factor_poly(&cands[0], seed, f)?;
        diag.push("degF", cands[0].degree().unwrap_or(0));
        diag.push("residues", residue_list(&fac.factors, q as usize));
        for (h, mu) in fac.factors {
            mults.entry(h).or_insert_with(|| vec![0; (m - 1) as usize])[(nu - 1) as usize] = mu as u64;
        }
    }

    let step = (q - 1) / m;
    let mut poly = Poly::one();
    let mut chosen = Vec::new();
    for (h, per_nu) in &mults {
        let fits: Vec<u64> = (0..m)
            .filter(|&mu| {
                per_nu.iter().enumerate().all(|(i, &mu_nu)| {
                    let nu = i as u64 + 1;
                    let shift = (nu * mu % q) * step % q;
                    let x = (mu_nu % q + q - shift) % q;
                    in_mth_window(x, q, params.eps)
                })
            })
            .collect();
        if fits.len() != 1 {
            diag.push("inconsistent", format!("{h}: candidates {fits:?}"));
            return Err(Error::decode(FailureKind::NoConsistentMu, diag));
        }
        chosen.push(fits[0].to_string());
        poly = poly.mul(&h.pow(fits[0], f), f);
    }
    diag.push("mu", chosen.join(","));
    Ok(Decoded { poly, diagnostics: diag })
}
