//! Column layout and row construction shared by the interpolation systems.
//!
//! Unknowns are laid out as `F` coefficients, then the `E_i` blocks (base-`Λ`
//! parts of `E`), then the `U_ℓ` blocks. Row `α·M + ℓ` is the constraint at
//! point `α` (canonical index) and derivative order `ℓ`.

use crate::field::{Fe, FieldCtx};
use crate::linsolve::MatrixFq;
use crate::poly::{binom_mod, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    /// Number of `F` coefficients (degree cap + 1).
    pub f_len: usize,
    /// Number of base-`Λ` parts of `E`; zero when `E` is absent.
    pub e_parts: usize,
    /// Coefficients per `E_i`.
    pub e_len: usize,
    /// Number of `U_ℓ` blocks, which is also the row count per point.
    pub m: usize,
    /// Coefficients per `U_ℓ`.
    pub u_len: usize,
}

impl Layout {
    pub fn cols(&self) -> usize {
        self.f_len + self.e_parts * self.e_len + self.m * self.u_len
    }

    pub fn f_col(&self, i: usize) -> usize {
        i
    }

    pub fn e_col(&self, part: usize, j: usize) -> usize {
        self.f_len + part * self.e_len + j
    }

    pub fn u_col(&self, l: usize, j: usize) -> usize {
        self.f_len + self.e_parts * self.e_len + l * self.u_len + j
    }

    pub fn split_f(&self, v: &[Fe]) -> Poly {
        Poly::from_coeffs(v[..self.f_len].to_vec())
    }

    pub fn split_e(&self, v: &[Fe]) -> Vec<Poly> {
        (0..self.e_parts)
            .map(|i| Poly::from_coeffs(v[self.e_col(i, 0)..self.e_col(i, 0) + self.e_len].to_vec()))
            .collect()
    }

    pub fn split_u(&self, v: &[Fe]) -> Vec<Poly> {
        (0..self.m)
            .map(|l| Poly::from_coeffs(v[self.u_col(l, 0)..self.u_col(l, 0) + self.u_len].to_vec()))
            .collect()
    }

    /// Inverse of the `split_*` functions; polynomials longer than their
    /// block are rejected with `None`.
    pub fn join(&self, f_poly: &Poly, e: &[Poly], u: &[Poly]) -> Option<Vec<Fe>> {
        let mut v = vec![Fe::ZERO; self.cols()];
        let mut put = |start: usize, len: usize, p: &Poly| -> Option<()> {
            if p.coeffs().len() > len {
                return None;
            }
            v[start..start + p.coeffs().len()].copy_from_slice(p.coeffs());
            Some(())
        };
        put(0, self.f_len, f_poly)?;
        if e.len() > self.e_parts || u.len() > self.m {
            return None;
        }
        for (i, p) in e.iter().enumerate() {
            put(self.e_col(i, 0), self.e_len, p)?;
        }
        for (l, p) in u.iter().enumerate() {
            put(self.u_col(l, 0), self.u_len, p)?;
        }
        Some(v)
    }
}

/// `binom(i, ℓ) mod p` for `i < n`, `ℓ < m`, stored row-major by `i`.
pub(crate) struct Binoms {
    m: usize,
    table: Vec<Fe>,
}

impl Binoms {
    pub(crate) fn new(n: usize, m: usize, f: &FieldCtx) -> Self {
        let mut table = Vec::with_capacity(n * m);
        for i in 0..n {
            for l in 0..m {
                table.push(Fe::from_index(binom_mod(i as u64, l as u64, f.p())));
            }
        }
        Binoms { m, table }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, l: usize) -> Fe {
        self.table[i * self.m + l]
    }
}

/// `α^0 .. α^{n-1}`.
pub(crate) fn powers(alpha: Fe, n: usize, f: &FieldCtx) -> Vec<Fe> {
    let mut out = Vec::with_capacity(n);
    let mut cur = Fe::ONE;
    for _ in 0..n {
        out.push(cur);
        cur = f.mul(cur, alpha);
    }
    out
}

/// Writes `coef · P^{[ℓ]}(α)` as a linear form in the coefficients of `P`
/// into `row[start..start + len]` (added to what is there).
#[allow(clippy::too_many_arguments)]
pub(crate) fn add_hasse_form(
    row: &mut [Fe],
    start: usize,
    len: usize,
    l: usize,
    coef: Fe,
    pows: &[Fe],
    binoms: &Binoms,
    f: &FieldCtx,
) {
    if coef.is_zero() {
        return;
    }
    for i in l..len {
        let b = binoms.get(i, l);
        if b.is_zero() {
            continue;
        }
        let term = f.mul(coef, f.mul(b, pows[i - l]));
        row[start + i] = f.add(row[start + i], term);
    }
}

/// Builds the matrix row by row; `fill(row, α, pows, ℓ)` writes one row.
pub(crate) fn build_rows(
    layout: &Layout,
    max_pow: usize,
    f: &FieldCtx,
    mut fill: impl FnMut(&mut [Fe], usize, &[Fe], usize),
) -> MatrixFq {
    let q = f.q_usize();
    let mut mat = MatrixFq::zeros(q * layout.m, layout.cols());
    for (ai, alpha) in f.elements().enumerate() {
        let pows = powers(alpha, max_pow, f);
        for l in 0..layout.m {
            fill(mat.row_mut(ai * layout.m + l), ai, &pows, l);
        }
    }
    mat
}
