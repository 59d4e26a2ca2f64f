//! Ground truth for the decoders: exhaustive nearest-codeword search, the
//! zero-error dual-BCH solve over `F_2`, and empirical Weil-bound checks.

use crate::codes::{encode_addp, encode_dbch, encode_mth, encode_qr, hamming_distance, Validation, Word};
use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};
use crate::linsolve::{solve_affine, MatrixFq};
use crate::poly::Poly;

/// Largest message space the brute-force searches will enumerate.
pub const SEARCH_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nearest {
    /// First minimizer in enumeration order.
    pub message: Poly,
    pub distance: usize,
    pub unique: bool,
}

fn guard(size: u128) -> Result<()> {
    if size > SEARCH_LIMIT {
        Err(Error::SearchSpaceTooLarge(size))
    } else {
        Ok(())
    }
}

fn space(q: u128, slots: usize) -> u128 {
    (0..slots).fold(1u128, |acc, _| acc.saturating_mul(q))
}

/// Every coefficient vector over `F_q` of the given length, as an odometer
/// over canonical indices (index 0 varies fastest).
fn odometer(len: usize, q: u32, mut visit: impl FnMut(&[Fe]) -> Result<()>) -> Result<()> {
    let mut digits = vec![Fe::ZERO; len];
    loop {
        visit(&digits)?;
        let mut i = 0;
        loop {
            if i == len {
                return Ok(());
            }
            let next = digits[i].index() + 1;
            if next < q {
                digits[i] = Fe::from_index(next);
                break;
            }
            digits[i] = Fe::ZERO;
            i += 1;
        }
    }
}

struct Best {
    best: Option<Nearest>,
}

impl Best {
    fn offer(&mut self, g: &Poly, dist: usize) {
        match &mut self.best {
            None => self.best = Some(Nearest { message: g.clone(), distance: dist, unique: true }),
            Some(b) if dist < b.distance => {
                *b = Nearest { message: g.clone(), distance: dist, unique: true };
            }
            Some(b) if dist == b.distance => b.unique = false,
            _ => {}
        }
    }
}

/// Nearest `χ∘g` over monic squarefree `g` of degree `≤ d`.
pub fn brute_force_decode_qr(r: &Word, d: usize) -> Result<Nearest> {
    let f = r.field();
    if !f.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    let q = f.q() as u128;
    guard((0..=d).map(|k| space(q, k)).sum())?;
    let mut best = Best { best: None };
    for k in 0..=d {
        odometer(k, f.q(), |low| {
            let mut c = low.to_vec();
            c.push(Fe::ONE);
            let g = Poly::from_coeffs(c);
            if crate::codes::is_squarefree(&g, f) {
                let w = encode_qr(f, &g, Validation::Strict)?;
                best.offer(&g, hamming_distance(r, &w)?);
            }
            Ok(())
        })?;
    }
    Ok(best.best.expect("the constant 1 is always a candidate"))
}

/// Nearest `χ_m∘g` over monic `g` of degree `≤ d` with every multiplicity
/// below `m`.
pub fn brute_force_decode_mth(r: &Word, m: u64, d: usize) -> Result<Nearest> {
    let f = r.field();
    f.check_order(m)?;
    let q = f.q() as u128;
    guard((0..=d).map(|k| space(q, k)).sum())?;
    let mut best = Best { best: None };
    for k in 0..=d {
        odometer(k, f.q(), |low| {
            let mut c = low.to_vec();
            c.push(Fe::ONE);
            let g = Poly::from_coeffs(c);
            if g.squarefree_decomposition(f).iter().all(|&(_, mu)| (mu as u64) < m) {
                let w = encode_mth(f, m, &g, Validation::Lab)?;
                best.offer(&g, hamming_distance(r, &w)?);
            }
            Ok(())
        })?;
    }
    Ok(best.best.expect("the constant 1 is always a candidate"))
}

/// Bit-packed trace codeword of `a X^k`.
fn trace_bits(a: Fe, k: usize, f: &FieldCtx) -> Vec<u64> {
    let mut bits = vec![0u64; f.q_usize().div_ceil(64)];
    for (i, alpha) in f.elements().enumerate() {
        if !f.trace(f.mul(a, f.pow(alpha, k as u64))).is_zero() {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn word_bits(w: &Word) -> Vec<u64> {
    let mut bits = vec![0u64; w.values().len().div_ceil(64)];
    for (i, v) in w.values().iter().enumerate() {
        if !v.is_zero() {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

/// Calls `visit(g, codeword bits)` for every `g` with odd monomials of
/// degree `≤ d`, using precomputed per-monomial codewords.
fn for_each_dbch(f: &FieldCtx, d: usize, mut visit: impl FnMut(&Poly, &[u64])) -> Result<()> {
    let degrees: Vec<usize> = (1..=d).step_by(2).collect();
    guard(space(f.q() as u128, degrees.len()))?;
    let tables: Vec<Vec<Vec<u64>>> = degrees
        .iter()
        .map(|&k| f.elements().map(|a| trace_bits(a, k, f)).collect())
        .collect();
    let words = f.q_usize().div_ceil(64);
    odometer(degrees.len(), f.q(), |coefs| {
        let mut bits = vec![0u64; words];
        let mut c = vec![Fe::ZERO; d + 1];
        for (slot, (&a, &k)) in coefs.iter().zip(&degrees).enumerate() {
            c[k] = a;
            for (b, t) in bits.iter_mut().zip(&tables[slot][a.index() as usize]) {
                *b ^= t;
            }
        }
        visit(&Poly::from_coeffs(c), &bits);
        Ok(())
    })
}

/// Nearest `Tr∘g` over `g` with odd monomials only, degree `≤ d`.
pub fn brute_force_decode_dbch(r: &Word, d: usize) -> Result<Nearest> {
    let f = r.field();
    if f.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    let target = word_bits(r);
    let mut best = Best { best: None };
    for_each_dbch(f, d, |g, bits| {
        let dist = bits.iter().zip(&target).map(|(a, b)| (a ^ b).count_ones() as usize).sum();
        best.offer(g, dist);
    })?;
    Ok(best.best.expect("zero is always a candidate"))
}

/// Nearest `Tr∘g` over `g` with monomials of degree prime to `p`, `≤ d`.
pub fn brute_force_decode_addp(r: &Word, d: usize) -> Result<Nearest> {
    let f = r.field();
    let p = f.p() as usize;
    let degrees: Vec<usize> = (1..=d).filter(|k| k % p != 0).collect();
    guard(space(f.q() as u128, degrees.len()))?;
    // Per-monomial value tables; codeword values add pointwise.
    let tables: Vec<Vec<Vec<Fe>>> = degrees
        .iter()
        .map(|&k| {
            f.elements()
                .map(|a| f.elements().map(|x| f.trace(f.mul(a, f.pow(x, k as u64)))).collect())
                .collect()
        })
        .collect();
    let mut best = Best { best: None };
    odometer(degrees.len(), f.q(), |coefs| {
        let mut vals = vec![Fe::ZERO; f.q_usize()];
        let mut c = vec![Fe::ZERO; d + 1];
        for (slot, (&a, &k)) in coefs.iter().zip(&degrees).enumerate() {
            c[k] = a;
            for (v, &t) in vals.iter_mut().zip(&tables[slot][a.index() as usize]) {
                *v = f.add(*v, t);
            }
        }
        let dist = vals.iter().zip(r.values()).filter(|(a, b)| a != b).count();
        best.offer(&Poly::from_coeffs(c), dist);
        Ok(())
    })?;
    let out = best.best.expect("zero is always a candidate");
    debug_assert_eq!(
        hamming_distance(r, &encode_addp(f, &out.message, Validation::Lab)?)?,
        out.distance
    );
    Ok(out)
}

/// Inverts `g ↦ Tr∘g` on odd-monomial `g` of degree `≤ d` by linear algebra
/// over `F_2`, coordinatizing each coefficient by its canonical-index bits.
/// `None` when `w` is not a codeword.
pub fn dbch_zero_error_solve(w: &Word, d: usize) -> Result<Option<Poly>> {
    let f = w.field();
    if f.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    let f2 = FieldCtx::prime(2)?;
    let b = f.b() as usize;
    let degrees: Vec<usize> = (1..=d).step_by(2).collect();
    let mut mat = MatrixFq::zeros(f.q_usize(), degrees.len() * b);
    for (i, alpha) in f.elements().enumerate() {
        for (s, &k) in degrees.iter().enumerate() {
            let xk = f.pow(alpha, k as u64);
            for t in 0..b {
                let beta = Fe::from_index(1 << t);
                mat.set(i, s * b + t, f.trace(f.mul(beta, xk)));
            }
        }
    }
    let Some(x) = solve_affine(&mat, w.values(), &f2)? else {
        return Ok(None);
    };
    let mut c = vec![Fe::ZERO; d + 1];
    for (s, &k) in degrees.iter().enumerate() {
        let idx = (0..b).filter(|&t| !x[s * b + t].is_zero()).fold(0u32, |acc, t| acc | 1 << t);
        c[k] = Fe::from_index(idx);
    }
    let g = Poly::from_coeffs(c);
    Ok((encode_dbch(f, &g, Validation::Strict)? == *w).then_some(g))
}

/// Minimum weight of a nonzero dual-BCH codeword of degree `≤ d`.
pub fn min_weight_dbch(f: &FieldCtx, d: usize) -> Result<usize> {
    if f.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    let mut best = usize::MAX;
    for_each_dbch(f, d, |g, bits| {
        if !g.is_zero() {
            best = best.min(bits.iter().map(|b| b.count_ones() as usize).sum());
        }
    })?;
    Ok(best)
}

/// An exact character-sum measurement against its Weil bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilReport {
    /// `|Σ|` for the quadratic and binary sums; for odd `p`,
    /// `max_c |p·N_c - q|` where `N_c` counts `α` with `Tr f(α) = c`.
    pub magnitude: u64,
    /// Divisor turning `magnitude` into the compared quantity (`p - 1` for
    /// additive sums, 1 otherwise).
    pub scale: u64,
    /// The bound's integer factor `k`, so the bound is `k·√q`.
    pub bound_factor: u64,
    pub applicable: bool,
    pub q: u64,
}

impl WeilReport {
    /// `magnitude / scale ≤ bound_factor · √q`, compared exactly.
    pub fn within_bound(&self) -> bool {
        let lhs = self.magnitude as u128;
        let rhs = (self.scale * self.bound_factor) as u128;
        lhs * lhs <= rhs * rhs * self.q as u128
    }
}

/// `Σ_α χ(f(α))` against `2·deg(f)·√q`; applicable unless `f = λ h²`.
pub fn weil_sum_mult(f: &FieldCtx, poly: &Poly) -> Result<WeilReport> {
    if !f.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    let minus_one = f.minus_one();
    let mut sum: i64 = 0;
    for v in poly.eval_all(f) {
        let chi = f.quad_char(v)?;
        if chi == Fe::ONE {
            sum += 1;
        } else if chi == minus_one {
            sum -= 1;
        }
    }
    let applicable = match poly.squarefree_core(f) {
        Ok((_, core, _)) => !core.is_one(),
        Err(_) => false,
    };
    Ok(WeilReport {
        magnitude: sum.unsigned_abs(),
        scale: 1,
        bound_factor: 2 * poly.degree().unwrap_or(0) as u64,
        applicable,
        q: f.q() as u64,
    })
}

/// Additive-character sum of `Tr∘f` against `(deg f - 1)·√q`; applicable
/// unless `f = λ + h^p - h`.
pub fn weil_sum_add(f: &FieldCtx, poly: &Poly) -> WeilReport {
    let p = f.p() as usize;
    let mut counts = vec![0i64; p];
    for v in poly.eval_all(f) {
        counts[f.trace(v).index() as usize] += 1;
    }
    let q = f.q() as i64;
    let magnitude = counts.iter().map(|&n| (p as i64 * n - q).unsigned_abs()).max().unwrap_or(0);
    let (_, core, _) = poly.trace_core(f);
    WeilReport {
        magnitude,
        scale: (p - 1) as u64,
        bound_factor: poly.degree().unwrap_or(1).saturating_sub(1) as u64,
        applicable: core.degree().unwrap_or(0) > 0,
        q: f.q() as u64,
    }
}
