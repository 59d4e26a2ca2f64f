//! Finite fields `F_q`, `q = p^b`, in a polynomial basis over `F_p`.
//!
//! Elements are identified with their canonical index: the base-`p` digits of
//! the index are the polynomial-basis coefficients, least significant digit
//! first. Index 0 is zero and index 1 is one. Fields up to `2^20` elements get
//! log/antilog (and, for odd non-prime fields, Zech) tables; larger fields fall
//! back to digit-wise arithmetic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field size accepted by [`FieldCtx::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 30;

/// Largest field size for which lookup tables are built.
const TABLE_LIMIT: u64 = 1 << 20;

/// Shared handle to a field.
pub type Field = Arc<FieldCtx>;

/// A field element, stored as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Element with canonical index `n`; validity is relative to a field.
    #[inline]
    pub const fn from_index(n: u32) -> Fe {
        Fe(n)
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Repr {
    Prime,
    Binary,
    General,
}

#[derive(Debug)]
struct Tables {
    // exp has length 2(q-1) so exponent sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[n] = log(1 + g^n), or u32::MAX when 1 + g^n = 0.
    zech: Vec<u32>,
    // Full addition table for small odd extension fields.
    add: Vec<u16>,
}

/// Largest odd extension field that gets a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

/// Arithmetic context for `F_{p^b}`. Immutable after construction.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    b: u32,
    q: u32,
    modulus: Vec<u32>,
    repr: Repr,
    tables: Option<Tables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.b == other.b && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds `F_{p^b}`. Without an explicit modulus the lexicographically
    /// least monic irreducible (comparing `c_0, c_1, ...`) is used.
    pub fn new(p: u64, b: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NonPrimeP(p));
        }
        if b == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q = (0..b)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p, b })?;
        let p32 = p as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != b as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        b + 1,
                        m.len()
                    )));
                }
                if m[b as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if m.iter().any(|&c| c >= p32) {
                    return Err(Error::BadModulus("coefficient out of range".into()));
                }
                if b > 1 && !modulus_irreducible(p32, m) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => default_modulus(p32, b),
        };

        let repr = if b == 1 {
            Repr::Prime
        } else if p == 2 {
            Repr::Binary
        } else {
            Repr::General
        };
        let mut ctx = FieldCtx {
            p: p32,
            b,
            q: q as u32,
            modulus,
            repr,
            tables: None,
        };
        if repr != Repr::Prime && q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn b(&self) -> u32 {
        self.b
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn q_usize(&self) -> usize {
        self.q as usize
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    /// Element with the given canonical index.
    pub fn elem(&self, index: u64) -> Result<Fe> {
        if index < self.q as u64 {
            Ok(Fe(index as u32))
        } else {
            Err(Error::Parse(format!(
                "element index {index} out of range for q = {}",
                self.q
            )))
        }
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, n: u64) -> Fe {
        Fe((n % self.p as u64) as u32)
    }

    /// Image of a signed integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn minus_one(&self) -> Fe {
        Fe(self.p - 1)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p
    }

    fn digits(&self, a: Fe) -> [u32; 32] {
        let mut out = [0u32; 32];
        let mut n = a.0;
        for slot in out.iter_mut().take(self.b as usize) {
            *slot = n % self.p;
            n /= self.p;
        }
        out
    }

    fn pack_digits(&self, d: &[u32]) -> Fe {
        let mut n = 0u32;
        for &x in d[..self.b as usize].iter().rev() {
            n = n * self.p + x;
        }
        Fe(n)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match self.repr {
            Repr::Prime => {
                let s = a.0 + b.0;
                Fe(if s >= self.p { s - self.p } else { s })
            }
            Repr::Binary => Fe(a.0 ^ b.0),
            Repr::General => self.add_general(a, b),
        }
    }

    fn add_general(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            if !t.add.is_empty() {
                return Fe(t.add[(a.0 * self.q + b.0) as usize] as u32);
            }
            // a + b = a (1 + b/a)
            let n = self.q - 1;
            let la = t.log[a.0 as usize];
            let lb = t.log[b.0 as usize];
            let diff = if lb >= la { lb - la } else { lb + n - la };
            let z = t.zech[diff as usize];
            if z == u32::MAX {
                return Fe::ZERO;
            }
            return Fe(t.exp[(la + z) as usize]);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u32; 32];
        for i in 0..self.b as usize {
            let s = da[i] + db[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
        self.pack_digits(&out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        match self.repr {
            Repr::Prime => Fe(self.p - a.0),
            Repr::Binary => a,
            Repr::General => {
                if let Some(t) = &self.tables {
                    let half = (self.q - 1) / 2;
                    return Fe(t.exp[(t.log[a.0 as usize] + half) as usize]);
                }
                let da = self.digits(a);
                let mut out = [0u32; 32];
                for i in 0..self.b as usize {
                    out[i] = if da[i] == 0 { 0 } else { self.p - da[i] };
                }
                self.pack_digits(&out)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        match self.repr {
            Repr::Prime => Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 }),
            Repr::Binary => Fe(a.0 ^ b.0),
            Repr::General => self.add_general(a, self.neg(b)),
        }
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.repr == Repr::Prime {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook product of the coefficient vectors reduced by the modulus.
    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as u64;
        let n = self.b as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = [0u64; 64];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // X^n = -(m_0 + ... + m_{n-1} X^{n-1})
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
            }
        }
        let mut out = [0u32; 32];
        for i in 0..n {
            out[i] = prod[i] as u32;
        }
        self.pack_digits(&out)
    }

    /// `y += c * x` elementwise over the common prefix of `y` and `x`.
    pub fn axpy(&self, y: &mut [Fe], c: Fe, x: &[Fe]) {
        if c.is_zero() {
            return;
        }
        match (self.repr, &self.tables) {
            (Repr::Prime, _) => {
                let p = self.p as u64;
                let c = c.0 as u64;
                for (yi, &xi) in y.iter_mut().zip(x) {
                    yi.0 = ((yi.0 as u64 + c * xi.0 as u64) % p) as u32;
                }
            }
            (Repr::Binary, Some(t)) => {
                let lc = t.log[c.0 as usize] as usize;
                for (yi, &xi) in y.iter_mut().zip(x) {
                    if xi.0 != 0 {
                        yi.0 ^= t.exp[lc + t.log[xi.0 as usize] as usize];
                    }
                }
            }
            (_, Some(t)) => {
                let lc = t.log[c.0 as usize] as usize;
                for (yi, &xi) in y.iter_mut().zip(x) {
                    if xi.0 != 0 {
                        *yi = self.add(*yi, Fe(t.exp[lc + t.log[xi.0 as usize] as usize]));
                    }
                }
            }
            _ => {
                for (yi, &xi) in y.iter_mut().zip(x) {
                    *yi = self.add(*yi, self.mul(c, xi));
                }
            }
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivideByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: Fe) -> Fe {
        debug_assert!(a.0 != 0);
        if self.repr == Repr::Prime {
            return Fe(inv_mod(a.0 as u64, self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                let l = t.log[a.0 as usize];
                Fe(t.exp[((n - l) % n) as usize])
            }
            None => self.pow(a, self.q as u64 - 2),
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `a^0 = 1` (including `0^0`).
    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        if let Some(t) = &self.tables {
            let order = (self.q - 1) as u64;
            let l = t.log[a.0 as usize] as u64;
            return Fe(t.exp[((l * (n % order)) % order) as usize]);
        }
        self.pow_slow(a, n)
    }

    fn pow_slow(&self, a: Fe, mut n: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_no_table(acc, base);
            }
            base = self.mul_no_table(base, base);
            n >>= 1;
        }
        acc
    }

    fn mul_no_table(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if self.repr == Repr::Prime {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        self.mul_slow(a, b)
    }

    /// Frobenius `a^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Unique `p`-th root, `a^{q/p}`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, (self.q / self.p) as u64)
    }

    /// Absolute trace `sum_{i<b} a^{p^i}`; always lands in the prime subfield.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = a;
        let mut cur = a;
        for _ in 1..self.b {
            cur = self.frobenius(cur);
            acc = self.add(acc, cur);
        }
        acc
    }

    /// Quadratic character `a^{(q-1)/2}` as an element of `{0, 1, -1}`.
    pub fn quad_char(&self, a: Fe) -> Result<Fe> {
        if !self.is_odd() {
            return Err(Error::EvenCharacteristic);
        }
        Ok(self.pow(a, (self.q as u64 - 1) / 2))
    }

    /// `m`-th power residue character `a^{(q-1)/m}` for a prime `m | q-1`.
    pub fn power_residue_char(&self, m: u64, a: Fe) -> Result<Fe> {
        self.check_order(m)?;
        Ok(self.pow(a, (self.q as u64 - 1) / m))
    }

    pub(crate) fn check_order(&self, m: u64) -> Result<()> {
        if m == 0 || !is_prime_u64(m) || !(self.q as u64 - 1).is_multiple_of(m) {
            return Err(Error::BadOrder { m });
        }
        Ok(())
    }

    fn build_tables(&self) -> Tables {
        let n = self.q - 1;
        let gen = self.find_generator();
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut cur = Fe::ONE;
        for i in 0..n {
            exp[i as usize] = cur.0;
            log[cur.0 as usize] = i;
            cur = self.mul_slow(cur, gen);
        }
        for i in n..2 * n {
            exp[i as usize] = exp[(i - n) as usize];
        }
        let mut zech = Vec::new();
        if self.repr == Repr::General {
            zech = vec![u32::MAX; n as usize];
            for (i, z) in zech.iter_mut().enumerate() {
                let s = self.add_digitwise(Fe(exp[i]), Fe::ONE);
                if s.0 != 0 {
                    *z = log[s.0 as usize];
                }
            }
        }
        let mut tables = Tables { exp, log, zech, add: Vec::new() };
        if self.repr == Repr::General && self.q <= ADD_TABLE_LIMIT {
            let q = self.q;
            tables.add = (0..q * q)
                .map(|n| self.add_digitwise(Fe(n / q), Fe(n % q)).0 as u16)
                .collect();
        }
        tables
    }

    fn add_digitwise(&self, a: Fe, b: Fe) -> Fe {
        let da = self.digits(a);
        let db = self.digits(b);
        let mut out = [0u32; 32];
        for i in 0..self.b as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.pack_digits(&out)
    }

    fn find_generator(&self) -> Fe {
        let n = (self.q - 1) as u64;
        let primes = prime_divisors(n);
        (1..self.q)
            .map(Fe)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, n / r) != Fe::ONE))
            .expect("multiplicative group is cyclic")
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    old_s.rem_euclid(m as i64) as u64
}

fn modulus_irreducible(p: u32, m: &[u32]) -> bool {
    let fp = FieldCtx::prime(p as u64).expect("p already checked prime");
    let poly = Poly::from_coeffs(m.iter().map(|&c| Fe(c)).collect());
    crate::factor::is_irreducible(&poly, &fp).unwrap_or(false)
}

fn default_modulus(p: u32, b: u32) -> Vec<u32> {
    if b == 1 {
        return vec![0, 1];
    }
    let n = b as usize;
    let mut digits = vec![0u32; n];
    loop {
        // digits[0] is c_0, the most significant position in the ordering.
        let mut m = digits.clone();
        m.push(1);
        if m[0] != 0 && modulus_irreducible(p, &m) {
            return m;
        }
        let mut i = n;
        loop {
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            assert!(i > 0, "an irreducible of every degree exists");
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} b={} mod=", self.p, self.b)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parsed `p=<int> b=<int> mod=<c_0,...,c_b>` text; `mod` may be omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub b: u32,
    pub modulus: Option<Vec<u32>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field> {
        FieldCtx::new(self.p, self.b, self.modulus.as_deref())
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = None;
        let mut b = None;
        let mut modulus = None;
        for tok in s.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field token `{tok}`")))?;
            let bad = |_| Error::Parse(format!("bad value in `{tok}`"));
            match key {
                "p" => p = Some(val.parse::<u64>().map_err(bad)?),
                "b" => b = Some(val.parse::<u32>().map_err(bad)?),
                "mod" => {
                    modulus = Some(
                        val.split(',')
                            .map(|c| c.trim().parse::<u32>())
                            .collect::<std::result::Result<Vec<_>, _>>()
                            .map_err(bad)?,
                    )
                }
                _ => return Err(Error::Parse(format!("unknown field key `{key}`"))),
            }
        }
        Ok(FieldSpec {
            p: p.ok_or_else(|| Error::Parse("missing p=".into()))?,
            b: b.unwrap_or(1),
            modulus,
        })
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let field = s.parse::<FieldSpec>()?.build()?;
        Ok(Arc::try_unwrap(field).expect("freshly built handle is unique"))
    }
}
