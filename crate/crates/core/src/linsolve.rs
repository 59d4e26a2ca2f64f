//! Dense Gaussian elimination over `F_q`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// Row-major dense matrix over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl MatrixFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFq { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        let n = rows.len();
        Ok(MatrixFq { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fe] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[Fe], f: &FieldCtx) -> Result<Vec<Fe>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &x)| f.add(acc, f.mul(a, x)))
            })
            .collect())
    }

    /// Copy keeping only the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> MatrixFq {
        let mut out = MatrixFq::zeros(self.rows, keep.len());
        for r in 0..self.rows {
            for (j, &c) in keep.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }
}

/// Reduced row echelon form. Returns the pivot columns in order.
fn rref(m: &mut MatrixFq, f: &FieldCtx) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv_nonzero(m.get(r, c));
        for v in &mut m.row_mut(r)[c..] {
            *v = f.mul(*v, inv);
        }
        let pivot_row: Vec<Fe> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor.is_zero() {
                continue;
            }
            f.axpy(&mut m.row_mut(i)[c..], f.neg(factor), &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by elimination on a copy.
pub fn rank(m: &MatrixFq, f: &FieldCtx) -> usize {
    let mut work = m.clone();
    rref(&mut work, f).len()
}

/// Canonical nullspace basis: one vector per free column, in increasing column
/// order, with that free variable set to 1 and the other free variables 0.
pub fn nullspace_basis(m: &MatrixFq, f: &FieldCtx) -> Vec<Vec<Fe>> {
    let mut work = m.clone();
    let pivots = rref(&mut work, f);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; m.cols];
            v[free] = Fe::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work.get(r, free));
            }
            v
        })
        .collect()
}

/// Up to `count` nonzero nullspace vectors: the canonical basis first, then
/// seeded random combinations of it. Empty iff the kernel is trivial.
pub fn nullspace_sample(m: &MatrixFq, count: usize, seed: u64, f: &FieldCtx) -> Vec<Vec<Fe>> {
    let basis = nullspace_basis(m, f);
    let mut out: Vec<Vec<Fe>> = basis.iter().take(count).cloned().collect();
    let extra = count.saturating_sub(out.len());
    out.extend(seeded_combinations(&basis, extra, seed, f));
    out
}

/// `count` nonzero random combinations of `basis` (none if it is empty).
pub fn seeded_combinations(basis: &[Vec<Fe>], count: usize, seed: u64, f: &FieldCtx) -> Vec<Vec<Fe>> {
    let Some(len) = basis.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut v = vec![Fe::ZERO; len];
        for b in basis {
            let c = Fe::random(&mut rng, f);
            if c.is_zero() {
                continue;
            }
            f.axpy(&mut v, c, b);
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// One solution of `M x = rhs` with every free variable set to zero, or
/// `None` when the system is inconsistent.
pub fn solve_affine(m: &MatrixFq, rhs: &[Fe], f: &FieldCtx) -> Result<Option<Vec<Fe>>> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: rhs.len() });
    }
    let cols = m.cols + 1;
    let mut aug = MatrixFq::zeros(m.rows, cols);
    for r in 0..m.rows {
        aug.row_mut(r)[..m.cols].copy_from_slice(m.row(r));
        aug.set(r, m.cols, rhs[r]);
    }
    let pivots = rref(&mut aug, f);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Fe::ZERO; m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols);
    }
    Ok(Some(x))
}
