//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! A [`Poly`] is just a normalized coefficient vector; every operation takes
//! the field explicitly, so polynomials stay cheap to clone and compare.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, FieldCtx};

/// `a_0 + a_1 X + ...`, with no trailing zero coefficients. The zero
/// polynomial has no coefficients and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binom_mod(mut n: u64, mut k: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 {
        let (ni, ki) = (n % p64, k % p64);
        if ki > ni {
            return 0;
        }
        acc = acc * small_binom(ni, ki.min(ni - ki), p64) % p64;
        n /= p64;
        k /= p64;
    }
    acc as u32
}

// binom(n, k) mod p for n < p.
fn small_binom(n: u64, k: u64, p: u64) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * pow_mod(den, p - 2, p) % p
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fe::ONE] }
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Fe::ZERO, Fe::ONE] }
    }

    pub fn constant(c: Fe) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c X^k`.
    pub fn monomial(c: Fe, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// `X - alpha`.
    pub fn linear(alpha: Fe, f: &FieldCtx) -> Self {
        Poly { coeffs: vec![f.neg(alpha), Fe::ONE] }
    }

    /// `Lambda(X) = X^q - X`, the product of `X - alpha` over all of `F_q`.
    pub fn lambda(f: &FieldCtx) -> Self {
        let mut coeffs = vec![Fe::ZERO; f.q_usize() + 1];
        coeffs[1] = f.minus_one();
        coeffs[f.q_usize()] = Fe::ONE;
        Poly { coeffs }
    }

    /// Builds a polynomial from low-to-high coefficients, trimming zeros.
    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Uniformly random polynomial of degree at most `max_deg`.
    pub fn random<R: Rng + ?Sized>(max_deg: usize, rng: &mut R, f: &FieldCtx) -> Self {
        Self::from_coeffs((0..=max_deg).map(|_| Fe::random(rng, f)).collect())
    }

    /// Random polynomial of degree exactly `deg`, monic when `monic` is set.
    pub fn random_of_degree<R: Rng + ?Sized>(deg: usize, monic: bool, rng: &mut R, f: &FieldCtx) -> Self {
        let mut coeffs: Vec<Fe> = (0..deg).map(|_| Fe::random(rng, f)).collect();
        let lead = if monic { Fe::ONE } else { Fe::random_nonzero(rng, f) };
        coeffs.push(lead);
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Fe::ONE)
    }

    pub fn add(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &FieldCtx) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Fe, f: &FieldCtx) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, other: &Poly, f: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..], a, &other.coeffs);
        }
        Poly { coeffs: out }
    }

    pub fn square(&self, f: &FieldCtx) -> Poly {
        self.mul(self, f)
    }

    pub fn pow(&self, mut n: u64, f: &FieldCtx) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            n >>= 1;
            if n > 0 {
                base = base.square(f);
            }
        }
        acc
    }

    /// Quotient and remainder, `deg(rem) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Poly, f: &FieldCtx) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivideByZero)?;
        let Some(n) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if n < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = f.inv_nonzero(divisor.coeffs[dd]);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[k] = t;
            f.axpy(&mut rem[k..], f.neg(t), &divisor.coeffs);
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldCtx) -> Result<Poly> {
        Ok(self.divmod(divisor, f)?.1)
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly, f: &FieldCtx) -> Result<Poly> {
        let (q, r) = self.divmod(divisor, f)?;
        if !r.is_zero() {
            return Err(Error::InvalidMessage("division is not exact".into()));
        }
        Ok(q)
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        self.mul(other, f).rem(modulus, f)
    }

    /// `self^n mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut n: u128, modulus: &Poly, f: &FieldCtx) -> Result<Poly> {
        let mut base = self.rem(modulus, f)?;
        let mut acc = Poly::one().rem(modulus, f)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, modulus, f)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mulmod(&base, modulus, f)?;
            }
        }
        Ok(acc)
    }

    /// Leading coefficient and the monic associate. Zero maps to `(0, 0)`.
    pub fn monic(&self, f: &FieldCtx) -> (Fe, Poly) {
        match self.leading() {
            None => (Fe::ZERO, Poly::zero()),
            Some(l) if l == Fe::ONE => (l, self.clone()),
            Some(l) => (l, self.scale(f.inv_nonzero(l), f)),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic(f).1
    }

    /// Horner evaluation.
    pub fn eval(&self, alpha: Fe, f: &FieldCtx) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, alpha), c))
    }

    /// Values at every element of `F_q`, in canonical order.
    pub fn eval_all(&self, f: &FieldCtx) -> Vec<Fe> {
        f.elements().map(|a| self.eval(a, f)).collect()
    }

    /// Hasse derivative: the coefficient of `Z^l` in `A(X + Z)`.
    pub fn hasse(&self, l: usize, f: &FieldCtx) -> Poly {
        if l == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= l {
            return Poly::zero();
        }
        let coeffs = (l..self.coeffs.len())
            .map(|i| {
                let a = self.coeffs[i];
                if a.is_zero() {
                    return a;
                }
                let c = binom_mod(i as u64, l as u64, f.p());
                f.mul(a, f.from_int(c as u64))
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &FieldCtx) -> Poly {
        self.hasse(1, f)
    }

    /// Largest `r` with `(X - alpha)^r` dividing `self`.
    pub fn multiplicity(&self, alpha: Fe, f: &FieldCtx) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cur = self.coeffs.clone();
        let mut count = 0;
        loop {
            // Synthetic division by X - alpha.
            let n = cur.len();
            let mut quot = vec![Fe::ZERO; n - 1];
            let mut carry = Fe::ZERO;
            for k in (0..n).rev() {
                let v = f.add(cur[k], f.mul(carry, alpha));
                if k == 0 {
                    carry = v;
                } else {
                    quot[k - 1] = v;
                    carry = v;
                }
            }
            if !carry.is_zero() || quot.is_empty() {
                return Ok(count);
            }
            count += 1;
            cur = quot;
        }
    }

    /// Substitutes `X -> X^p` inversely: requires every exponent to be a
    /// multiple of `p`, and takes `p`-th roots of the coefficients.
    pub fn pth_root(&self, f: &FieldCtx) -> Poly {
        let p = f.p() as usize;
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, c)| i % p == 0 || c.is_zero()));
        Poly::from_coeffs(self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(P_i, i)` with
    /// the `P_i` monic, squarefree, pairwise coprime and `self = prod P_i^i`.
    pub fn squarefree_decomposition(&self, f: &FieldCtx) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut c = self.gcd(&self.derivative(f), f);
        let mut w = self.div_exact(&c, f).expect("gcd divides");
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c, f);
            let z = w.div_exact(&y, f).expect("gcd divides");
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            c = c.div_exact(&y, f).expect("gcd divides");
            w = y;
        }
        if !c.is_one() {
            let root = c.pth_root(f);
            let p = f.p() as usize;
            out.extend(root.squarefree_decomposition(f).into_iter().map(|(q, m)| (q, m * p)));
        }
        out.sort_by_key(|a| a.1);
        out
    }

    /// `self = lambda * core * h^2` with `core` monic squarefree and `h` monic.
    pub fn squarefree_core(&self, f: &FieldCtx) -> Result<(Fe, Poly, Poly)> {
        let (lambda, m) = self.monic(f);
        if m.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut core = Poly::one();
        let mut h = Poly::one();
        for (part, mult) in m.squarefree_decomposition(f) {
            if mult % 2 == 1 {
                core = core.mul(&part, f);
            }
            if mult >= 2 {
                h = h.mul(&part.pow((mult / 2) as u64, f), f);
            }
        }
        Ok((lambda, core, h))
    }

    /// `self = lambda + core + h^p - h` where `core` has no monomial of degree
    /// divisible by `p` and `h(0) = 0`; `Tr(h^p - h)` vanishes identically.
    pub fn trace_core(&self, f: &FieldCtx) -> (Fe, Poly, Poly) {
        let p = f.p() as usize;
        let mut g = self.coeffs.clone();
        let mut h = vec![Fe::ZERO; g.len()];
        let lambda = g.first().copied().unwrap_or(Fe::ZERO);
        if !g.is_empty() {
            g[0] = Fe::ZERO;
        }
        for k in (1..g.len()).rev() {
            if k % p == 0 && !g[k].is_zero() {
                let s = f.pth_root(g[k]);
                g[k] = Fe::ZERO;
                let i = k / p;
                g[i] = f.add(g[i], s);
                h[i] = f.add(h[i], s);
            }
        }
        (lambda, Poly::from_coeffs(g), Poly::from_coeffs(h))
    }

    /// Characteristic-2 odd-degree core: `self = lambda + core + h + h^2`.
    pub fn odd_core(&self, f: &FieldCtx) -> Result<(Fe, Poly, Poly)> {
        if f.is_odd() {
            return Err(Error::OddCharacteristic);
        }
        Ok(self.trace_core(f))
    }

    /// Composition `self(inner(X))`.
    pub fn compose(&self, inner: &Poly, f: &FieldCtx) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(inner, f).add(&Poly::constant(c), f))
    }

    /// Parses comma-separated canonical indices, low degree first.
    pub fn parse(s: &str, f: &FieldCtx) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Poly::zero());
        }
        let coeffs = s
            .split(',')
            .map(|t| {
                let n = t
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))?;
                f.elem(n)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Fe {
    pub fn random<R: Rng + ?Sized>(rng: &mut R, f: &FieldCtx) -> Fe {
        f.elem(rng.gen_range(0..f.q() as u64)).expect("in range")
    }

    pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, f: &FieldCtx) -> Fe {
        f.elem(rng.gen_range(1..f.q() as u64)).expect("in range")
    }
}

/// The zero polynomial renders as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
