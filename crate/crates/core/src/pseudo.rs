//! Pseudopolynomials: polynomials viewed through their base-`Λ` expansion,
//! where `Λ = X^q - X`.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::factor_poly;
use crate::field::{Fe, FieldCtx};
use crate::linsolve::{nullspace_basis, MatrixFq};
use crate::poly::Poly;

/// `Σ C_i Λ^i` with every `deg C_i < q`. Trailing zero parts are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PseudoPoly {
    parts: Vec<Poly>,
}

impl PseudoPoly {
    pub fn from_parts(mut parts: Vec<Poly>, f: &FieldCtx) -> Result<Self> {
        if let Some(d) = parts.iter().filter_map(Poly::degree).find(|&d| d >= f.q_usize()) {
            return Err(Error::InvalidMessage(format!(
                "base-lambda part of degree {d} is not below q = {}",
                f.q()
            )));
        }
        while parts.last().is_some_and(Poly::is_zero) {
            parts.pop();
        }
        Ok(PseudoPoly { parts })
    }

    pub fn parts(&self) -> &[Poly] {
        &self.parts
    }

    /// Number of parts `t` (zero for the zero pseudopolynomial).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `max_i deg C_i`, or `None` when zero.
    pub fn max_part_degree(&self) -> Option<usize> {
        self.parts.iter().filter_map(Poly::degree).max()
    }

    pub fn to_poly(&self, f: &FieldCtx) -> Poly {
        from_base_lambda(self, f)
    }

    pub fn parse(s: &str, f: &FieldCtx) -> Result<Self> {
        let parts = s
            .lines()
            .take_while(|l| !l.trim().is_empty())
            .map(|l| Poly::parse(l, f))
            .collect::<Result<Vec<_>>>()?;
        PseudoPoly::from_parts(parts, f)
    }
}

impl fmt::Display for PseudoPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.parts {
            writeln!(out, "{c}")?;
        }
        writeln!(out)
    }
}

/// Divides by `Λ` using `X^i = X^{i-q} Λ + X^{i-q+1}`.
fn divmod_lambda(a: &[Fe], f: &FieldCtx) -> (Vec<Fe>, Vec<Fe>) {
    let q = f.q_usize();
    if a.len() <= q {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut quot = vec![Fe::ZERO; a.len() - q];
    for i in (q..a.len()).rev() {
        let c = r[i];
        if c.is_zero() {
            continue;
        }
        r[i] = Fe::ZERO;
        quot[i - q] = c;
        r[i - q + 1] = f.add(r[i - q + 1], c);
    }
    r.truncate(q);
    (quot, r)
}

pub fn to_base_lambda(a: &Poly, f: &FieldCtx) -> PseudoPoly {
    let mut parts = Vec::new();
    let mut cur = a.coeffs().to_vec();
    while !cur.is_empty() {
        let (quot, r) = divmod_lambda(&cur, f);
        parts.push(Poly::from_coeffs(r));
        cur = Poly::from_coeffs(quot).into_coeffs();
    }
    PseudoPoly { parts }
}

/// Horner in `Λ`.
pub fn from_base_lambda(a: &PseudoPoly, f: &FieldCtx) -> Poly {
    let lambda = Poly::lambda(f);
    a.parts
        .iter()
        .rev()
        .fold(Poly::zero(), |acc, c| acc.mul(&lambda, f).add(c, f))
}

/// Reduction mod `Λ`: `X^i ≡ X^{1 + (i-1) mod (q-1)}` for `i ≥ 1`.
pub fn reduce_mod_lambda(a: &Poly, f: &FieldCtx) -> Poly {
    let q = f.q_usize();
    let c = a.coeffs();
    if c.len() <= q {
        return a.clone();
    }
    let mut out = c[..q].to_vec();
    for (i, &v) in c.iter().enumerate().skip(q) {
        let j = 1 + (i - 1) % (q - 1);
        out[j] = f.add(out[j], v);
    }
    Poly::from_coeffs(out)
}

/// `A_⟨ℓ⟩ = A^{[ℓ]} mod Λ`, the degree `< q` polynomial that agrees with the
/// `ℓ`-th Hasse derivative on all of `F_q`.
pub fn pseudoderivative(a: &Poly, l: usize, f: &FieldCtx) -> Poly {
    reduce_mod_lambda(&a.hasse(l, f), f)
}

/// Largest part degree of the base-`Λ` expansion.
pub fn pseudodegree(a: &Poly, f: &FieldCtx) -> Result<usize> {
    to_base_lambda(a, f).max_part_degree().ok_or(Error::ZeroPolynomial)
}

/// Nonzero `E = Σ_{i<c} E_i Λ^i` with `deg E_i ≤ h` vanishing to order `M`
/// at every point of `S`. The kernel of `(E_i coefficients) ↦ E mod Z_S^M`
/// is taken; its first canonical basis vector is returned.
pub fn error_locator(s: &[Fe], m: usize, c: usize, h: usize, f: &FieldCtx) -> Result<PseudoPoly> {
    let mut pts = s.to_vec();
    pts.sort();
    pts.dedup();
    if m >= f.q_usize() || h >= f.q_usize() {
        return Err(Error::InfeasibleParameters(format!(
            "error locator needs M < q and h < q (M={m}, h={h}, q={})",
            f.q()
        )));
    }
    let unknowns = c * (h + 1);
    let constraints = pts.len() * m;
    if unknowns <= constraints {
        return Err(Error::InfeasibleParameters(format!(
            "error locator needs c(h+1) > |S|M, got {unknowns} <= {constraints}"
        )));
    }
    let z = pts
        .iter()
        .fold(Poly::one(), |acc, &a| acc.mul(&Poly::linear(a, f), f))
        .pow(m as u64, f);
    let lambda_mod = Poly::lambda(f).rem(&z, f)?;
    let mut mat = MatrixFq::zeros(constraints, unknowns);
    let mut lam_pow = Poly::one().rem(&z, f)?;
    for i in 0..c {
        let mut col = lam_pow.clone();
        for j in 0..=h {
            for (r, &v) in col.coeffs().iter().enumerate() {
                mat.set(r, i * (h + 1) + j, v);
            }
            col = col.shift(1).rem(&z, f)?;
        }
        lam_pow = lam_pow.mulmod(&lambda_mod, &z, f)?;
    }
    let v = nullspace_basis(&mat, f)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotFound("error locator kernel is trivial".into()))?;
    let parts = v.chunks(h + 1).map(|ch| Poly::from_coeffs(ch.to_vec())).collect();
    PseudoPoly::from_parts(parts, f)
}

/// Irreducible factors of `A` with multiplicities reduced mod `q`.
pub fn factor_mult_residues(a: &Poly, seed: u64, f: &FieldCtx) -> Result<Vec<(Poly, usize)>> {
    let q = f.q_usize();
    Ok(factor_poly(a, seed, f)?
        .factors
        .into_iter()
        .map(|(h, mu)| (h, mu % q))
        .collect())
}

/// Number of `α ∈ F_q` at which `A` vanishes to order at least `M`.
pub fn high_mult_root_count(a: &Poly, m: usize, f: &FieldCtx) -> Result<usize> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut count = 0;
    for alpha in f.elements() {
        if a.multiplicity(alpha, f)? >= m {
            count += 1;
        }
    }
    Ok(count)
}

/// Whether `count ≤ min(c k / (M - c + 1) + c, k)`, compared exactly.
/// Requires `c < M`.
pub fn within_high_mult_bound(count: usize, c: usize, k: usize, m: usize) -> bool {
    assert!(c < m, "bound needs c < M");
    let denom = (m - c + 1) as u128;
    let (count, c, k) = (count as u128, c as u128, k as u128);
    count <= k && count * denom <= c * k + c * denom
}
