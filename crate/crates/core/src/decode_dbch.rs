//! Algorithms B and C (dual-BCH, characteristic 2) and their
//! characteristic-`p` analogue `B_p`.
//!
//! Algorithm B interpolates `F^{[ℓ]}(α) = r(α)·E^{[ℓ]}(α) + U_ℓ(α)` with
//! `E = Σ_{i ≤ c} E_i Λ^i` of degree exactly `cq + h*` and reads the top
//! coefficient of the message off the leading coefficients of `F` and `E`.
//! Algorithm C peels monomials from the top down.

use crate::codes::{Alphabet, Word};
use crate::diag::{Decoded, Diagnostics};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::linsolve::{nullspace_basis, solve_affine, MatrixFq};
use crate::params::{DecoderParams, Family, Resolved};
use crate::poly::Poly;
use crate::system::{add_hasse_form, build_rows, Binoms, Layout};

/// Layout for one `h*`: `F` up to `target`, `E_0..E_c` of degree `≤ h`,
/// `U_ℓ` of degree `≤ u`.
pub fn dbch_layout(res: &Resolved, target: usize) -> Layout {
    Layout { f_len: target + 1, e_parts: res.c + 1, e_len: res.h + 1, m: res.m, u_len: res.u + 1 }
}

/// Degree of `F` demanded at `h*`: `d q / p + c q + h*`.
pub fn f_target(d: usize, res: &Resolved, hstar: usize, f: &FieldCtx) -> usize {
    let q = f.q_usize();
    d * (q / f.p() as usize) + res.c * q + hstar
}

/// Rows `F^{[ℓ]}(α) - r(α)·Σ_i (-1)^i E_i^{[ℓ-i]}(α) - U_ℓ(α) = 0`; the
/// middle sum equals `E^{[ℓ]}(α)` on `F_q` for `ℓ < q`.
pub fn dbch_system(r: &[Fe], layout: &Layout, f: &FieldCtx) -> MatrixFq {
    let binoms = Binoms::new(layout.f_len.max(layout.e_len), layout.m, f);
    let max_pow = layout.f_len.max(layout.e_len).max(layout.u_len);
    let minus_one = f.minus_one();
    build_rows(layout, max_pow, f, |row, ai, pows, l| {
        add_hasse_form(row, 0, layout.f_len, l, Fe::ONE, pows, &binoms, f);
        let neg_r = f.neg(r[ai]);
        let mut sign = Fe::ONE;
        for i in 0..layout.e_parts.min(l + 1) {
            let coef = f.mul(neg_r, sign);
            add_hasse_form(row, layout.e_col(i, 0), layout.e_len, l - i, coef, pows, &binoms, f);
            sign = f.mul(sign, minus_one);
        }
        let start = layout.u_col(l, 0);
        for (j, &pw) in pows[..layout.u_len].iter().enumerate() {
            row[start + j] = f.neg(pw);
        }
    })
}

/// Solves the normalized system at one `h*`: the `X^{h*}` coefficient of
/// `E_c` is pinned to 1 and its higher ones to 0. Returns the solution (in
/// full-layout coordinates) whose `F` has exact degree `target`.
fn solve_at(r: &[Fe], layout: &Layout, hstar: usize, target: usize, f: &FieldCtx) -> Result<Option<Vec<Fe>>> {
    let mat = dbch_system(r, layout, f);
    let c = layout.e_parts - 1;
    let pinned = layout.e_col(c, hstar);
    let dropped = (hstar + 1..layout.e_len).map(|j| layout.e_col(c, j));
    let skip: Vec<usize> = std::iter::once(pinned).chain(dropped).collect();
    let keep: Vec<usize> = (0..layout.cols()).filter(|col| !skip.contains(col)).collect();
    let sub = mat.select_columns(&keep);
    let rhs: Vec<Fe> = (0..mat.rows()).map(|i| f.neg(mat.get(i, pinned))).collect();
    let Some(x0) = solve_affine(&sub, &rhs, f)? else {
        return Ok(None);
    };
    // F columns come first and are all kept, so `target` indexes F's top.
    let chosen = if !x0[target].is_zero() {
        Some(x0)
    } else {
        // F's top coefficient is affine in the kernel coordinates; if any
        // basis vector moves it, x0 + that vector has it nonzero.
        nullspace_basis(&sub, f).into_iter().find(|v| !v[target].is_zero()).map(|v| {
            x0.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect()
        })
    };
    Ok(chosen.map(|x| {
        let mut full = vec![Fe::ZERO; layout.cols()];
        for (&col, &v) in keep.iter().zip(&x) {
            full[col] = v;
        }
        full[pinned] = Fe::ONE;
        full
    }))
}

/// `a_d = (a/b)^p` from the top coefficients of `F` and `E`.
pub fn leading_ratio(a: Fe, b: Fe, f: &FieldCtx) -> Result<Fe> {
    Ok(f.pow(f.div(a, b)?, f.p() as u64))
}

/// Algorithm B / `B_p` core: the coefficient `a_d` at degree `d`, or zero
/// if no `h*` admits a solution. Every success is recorded.
fn leading_coefficient(
    r: &[Fe],
    d: usize,
    res: &Resolved,
    f: &FieldCtx,
    diag: &mut Diagnostics,
) -> Result<Fe> {
    let mut found = None;
    for hstar in 0..=res.h {
        let target = f_target(d, res, hstar, f);
        let layout = dbch_layout(res, target);
        let Some(sol) = solve_at(r, &layout, hstar, target, f)? else {
            continue;
        };
        let a = sol[target];
        let e_top = layout.split_e(&sol)[res.c].clone();
        let b = e_top.leading().expect("pinned to one");
        let ad = leading_ratio(a, b, f)?;
        diag.push("success", format!("{hstar}:{ad}"));
        if found.is_none() {
            let q = f.q_usize();
            diag.push("hstar", hstar);
            diag.push("degF", target);
            diag.push("degE", res.c * q + hstar);
            diag.push("a", a);
            diag.push("b", b);
            found = Some(ad);
        }
    }
    Ok(found.unwrap_or(Fe::ZERO))
}

fn check_dbch(r: &Word, d: usize) -> Result<()> {
    if r.field().is_odd() {
        return Err(Error::OddCharacteristic);
    }
    if d.is_multiple_of(2) {
        return Err(Error::EvenDegreeD(d));
    }
    if r.alphabet() != Alphabet::F2 {
        return Err(Error::InvalidMessage(format!("dual-BCH decoding needs an f2 word, got {}", r.alphabet())));
    }
    Ok(())
}

fn check_addp(r: &Word, d: usize) -> Result<()> {
    let p = r.field().p() as usize;
    if d.is_multiple_of(p) {
        return Err(Error::DegreeDivisibleByP { d, p: p as u64 });
    }
    if !matches!(r.alphabet(), Alphabet::Fp | Alphabet::F2) {
        return Err(Error::InvalidMessage(format!("trace decoding needs an fp word, got {}", r.alphabet())));
    }
    Ok(())
}

fn leading(r: &Word, family: Family, params: &DecoderParams) -> Result<Decoded> {
    let f = r.field();
    let mut diag = Diagnostics::new();
    let res = params.resolve(family, f, &mut diag)?;
    let ad = leading_coefficient(r.values(), params.d, &res, f, &mut diag)?;
    diag.push("ad", ad);
    Ok(Decoded { poly: Poly::monomial(ad, params.d), diagnostics: diag })
}

/// Peels `a_d̃ X^d̃` for each `d̃` in `degrees` (highest first), subtracting
/// `Tr(a_d̃ α^d̃)` from the received word after every round.
fn peel(r: &Word, family: Family, params: &DecoderParams, degrees: &[usize]) -> Result<Decoded> {
    let f = r.field();
    let mut rt = r.values().to_vec();
    let mut acc = Poly::zero();
    let mut diag = Diagnostics::new();
    for &dt in degrees {
        let mut round = Diagnostics::new();
        let res = params.with_degree(dt).resolve(family, f, &mut round)?;
        let ad = leading_coefficient(&rt, dt, &res, f, &mut round)?;
        diag.push("round", format!("{dt}:{ad}"));
        diag.extend(round);
        if ad.is_zero() {
            continue;
        }
        acc = acc.add(&Poly::monomial(ad, dt), f);
        for (v, alpha) in rt.iter_mut().zip(f.elements()) {
            *v = f.sub(*v, f.trace(f.mul(ad, f.pow(alpha, dt as u64))));
        }
    }
    Ok(Decoded { poly: acc, diagnostics: diag })
}

/// Algorithm B: the degree-`d` monomial of the message.
pub fn decode_dbch_leading(r: &Word, params: &DecoderParams, _seed: u64) -> Result<Decoded> {
    check_dbch(r, params.d)?;
    leading(r, Family::Dbch, params)
}

/// Algorithm C: all odd monomials, peeled from degree `d` down to 1.
pub fn decode_dbch(r: &Word, params: &DecoderParams, _seed: u64) -> Result<Decoded> {
    check_dbch(r, params.d)?;
    let degrees: Vec<usize> = (1..=params.d).rev().step_by(2).collect();
    peel(r, Family::Dbch, params, &degrees)
}

/// Algorithm `B_p`: the degree-`d` monomial of a trace message in
/// characteristic `p`.
pub fn decode_addp_leading(r: &Word, params: &DecoderParams, _seed: u64) -> Result<Decoded> {
    check_addp(r, params.d)?;
    leading(r, Family::Addp, params)
}

/// Peeling with `B_p` over every degree `≤ d` prime to `p`, highest first.
pub fn decode_addp(r: &Word, params: &DecoderParams, _seed: u64) -> Result<Decoded> {
    check_addp(r, params.d)?;
    let p = r.field().p() as usize;
    let degrees: Vec<usize> = (1..=params.d).rev().filter(|k| k % p != 0).collect();
    peel(r, Family::Addp, params, &degrees)
}
