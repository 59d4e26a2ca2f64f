//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{prime_divisors, Fe, FieldCtx};
use crate::poly::Poly;

/// `unit * prod H_j^{mu_j}` with distinct monic irreducible `H_j`, sorted by
/// degree and then by coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fe,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, f: &FieldCtx) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (h, mu)| acc.mul(&h.pow(*mu as u64, f), f))
    }

    /// Multiplicity of the monic irreducible `h` (zero when absent).
    pub fn multiplicity_of(&self, h: &Poly) -> usize {
        self.factors.iter().find(|(g, _)| g == h).map_or(0, |(_, m)| *m)
    }
}

/// The `q`-power Frobenius on `F_q[X] / (m)` as a matrix: row `j` holds
/// `X^{jq} mod m`.
struct Frobenius {
    modulus: Poly,
    rows: Vec<Poly>,
}

impl Frobenius {
    fn new(modulus: &Poly, f: &FieldCtx) -> Self {
        let n = modulus.degree().expect("nonzero modulus");
        let xq = Poly::x()
            .powmod(f.q() as u128, modulus, f)
            .expect("nonzero modulus");
        let mut rows = Vec::with_capacity(n);
        let mut cur = Poly::one().rem(modulus, f).expect("nonzero modulus");
        for _ in 0..n {
            rows.push(cur.clone());
            cur = cur.mulmod(&xq, modulus, f).expect("nonzero modulus");
        }
        Frobenius { modulus: modulus.clone(), rows }
    }

    /// `a^q mod m` for `a` already reduced mod `m`.
    fn apply(&self, a: &Poly, f: &FieldCtx) -> Poly {
        let n = self.rows.len();
        let mut out = vec![Fe::ZERO; n];
        for (j, &c) in a.coeffs().iter().enumerate() {
            f.axpy(&mut out, c, self.rows[j].coeffs());
        }
        Poly::from_coeffs(out)
    }

    fn mulmod(&self, a: &Poly, b: &Poly, f: &FieldCtx) -> Poly {
        a.mulmod(b, &self.modulus, f).expect("nonzero modulus")
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(a: &Poly, f: &FieldCtx) -> Result<bool> {
    let n = a.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(true);
    }
    let (_, m) = a.monic(f);
    let frob = Frobenius::new(&m, f);
    let x = Poly::x();
    let mut powers = Vec::with_capacity(n);
    let mut h = x.clone();
    for _ in 0..n {
        h = frob.apply(&h, f);
        powers.push(h.clone());
    }
    if powers[n - 1] != x {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let hr = &powers[n / r as usize - 1];
        if !hr.sub(&x, f).gcd(&m, f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete factorization; the content is independent of `seed`, which only
/// drives the randomized equal-degree splitting.
pub fn factor_poly(a: &Poly, seed: u64, f: &FieldCtx) -> Result<Factorization> {
    let (unit, m) = a.monic(f);
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in m.squarefree_decomposition(f) {
        for (block, k) in distinct_degree(&part, f) {
            for h in equal_degree(&block, k, &mut rng, f) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by(|x, y| (x.0.degree(), &x.0).cmp(&(y.0.degree(), &y.0)));
    Ok(Factorization { unit, factors })
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree `k`.
fn distinct_degree(g: &Poly, f: &FieldCtx) -> Vec<(Poly, usize)> {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![(g.clone(), 1)];
    }
    let frob = Frobenius::new(g, f);
    let x = Poly::x();
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut h = x.clone();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        h = frob.apply(&h, f);
        let d = rest.gcd(&h.sub(&x, f), f);
        if !d.is_one() {
            rest = rest.div_exact(&d, f).expect("gcd divides");
            out.push((d, k));
        }
        k += 1;
    }
    if let Some(deg) = rest.degree().filter(|&d| d > 0) {
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-`k`
/// irreducibles. One random splitting element is tried against every
/// unsplit piece at once.
fn equal_degree(g: &Poly, k: usize, rng: &mut ChaCha8Rng, f: &FieldCtx) -> Vec<Poly> {
    let n = g.degree().expect("nonzero");
    if n == k {
        return vec![g.clone()];
    }
    let frob = Frobenius::new(g, f);
    let mut pieces = vec![g.clone()];
    while pieces.iter().any(|p| p.degree() != Some(k)) {
        let a = Poly::random(n - 1, rng, f);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = splitting_element(&a, k, &frob, f);
        let mut next = Vec::with_capacity(pieces.len() + 1);
        for piece in pieces {
            if piece.degree() == Some(k) {
                next.push(piece);
                continue;
            }
            let t = s.rem(&piece, f).expect("nonzero");
            let d = piece.gcd(&t, f);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < piece.degree().unwrap_or(0) {
                let other = piece.div_exact(&d, f).expect("gcd divides");
                next.push(d);
                next.push(other);
            } else {
                next.push(piece);
            }
        }
        pieces = next;
    }
    pieces
}

/// Odd `q`: `a^{(q^k-1)/2} - 1`. Even `q`: the absolute trace
/// `sum_{i < bk} a^{2^i}`. Either vanishes on roughly half the factors.
fn splitting_element(a: &Poly, k: usize, frob: &Frobenius, f: &FieldCtx) -> Poly {
    if f.is_odd() {
        // a^{1 + q + ... + q^{k-1}}, then the (q-1)/2 power.
        let mut t = a.clone();
        let mut s = a.clone();
        for _ in 1..k {
            t = frob.apply(&t, f);
            s = frob.mulmod(&s, &t, f);
        }
        let s = s
            .powmod(((f.q() - 1) / 2) as u128, &frob.modulus, f)
            .expect("nonzero modulus");
        s.sub(&Poly::one(), f)
    } else {
        // Trace down to F_2 of F_q, then the q-power orbit.
        let mut u = a.clone();
        let mut sq = a.clone();
        for _ in 1..f.b() {
            sq = frob.mulmod(&sq, &sq, f);
            u = u.add(&sq, f);
        }
        let mut acc = u.clone();
        let mut t = u;
        for _ in 1..k {
            t = frob.apply(&t, f);
            acc = acc.add(&t, f);
        }
        acc
    }
}
