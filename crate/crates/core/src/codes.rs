//! Encoders for the four code families, distances and the error channel.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::factor_poly;
use crate::field::{Fe, Field, FieldCtx, FieldSpec};
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    /// `{0, 1, -1}`.
    Qr,
    /// `{0, 1}`.
    F2,
    /// The prime subfield `F_p`.
    Fp,
    /// `{0}` together with the `m`-th roots of unity.
    Mth(u64),
    Fq,
}

impl Alphabet {
    pub fn contains(self, v: Fe, f: &FieldCtx) -> bool {
        match self {
            Alphabet::Qr => v.is_zero() || v == Fe::ONE || v == f.minus_one(),
            Alphabet::F2 => v.index() <= 1,
            Alphabet::Fp => v.index() < f.p(),
            Alphabet::Mth(m) => v.is_zero() || (v.index() < f.q() && f.pow(v, m) == Fe::ONE),
            Alphabet::Fq => v.index() < f.q(),
        }
    }

    /// Every symbol of the alphabet, in canonical order.
    pub fn symbols(self, f: &FieldCtx) -> Vec<Fe> {
        match self {
            Alphabet::Qr => {
                let mut s = vec![Fe::ZERO, Fe::ONE, f.minus_one()];
                s.dedup();
                s
            }
            Alphabet::F2 => vec![Fe::ZERO, Fe::ONE],
            Alphabet::Fp => (0..f.p()).map(Fe::from_index).collect(),
            Alphabet::Mth(_) | Alphabet::Fq => f.elements().filter(|&v| self.contains(v, f)).collect(),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Qr => write!(out, "qr"),
            Alphabet::F2 => write!(out, "f2"),
            Alphabet::Fp => write!(out, "fp"),
            Alphabet::Mth(m) => write!(out, "mth{m}"),
            Alphabet::Fq => write!(out, "fq"),
        }
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "qr" => Ok(Alphabet::Qr),
            "f2" => Ok(Alphabet::F2),
            "fp" => Ok(Alphabet::Fp),
            "fq" => Ok(Alphabet::Fq),
            other => other
                .strip_prefix("mth")
                .and_then(|m| m.parse().ok())
                .map(Alphabet::Mth)
                .ok_or_else(|| Error::Parse(format!("unknown alphabet `{other}`"))),
        }
    }
}

/// How message preconditions are enforced by the encoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Validation {
    #[default]
    Strict,
    /// Encode anyway and log a warning.
    Lab,
}

/// A received word: one symbol per element of `F_q`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    field: Field,
    alphabet: Alphabet,
    values: Vec<Fe>,
}

impl Word {
    pub fn new(field: Field, alphabet: Alphabet, values: Vec<Fe>) -> Result<Self> {
        if values.len() != field.q_usize() {
            return Err(Error::DimensionMismatch { expected: field.q_usize(), got: values.len() });
        }
        if let Some(v) = values.iter().find(|&&v| !alphabet.contains(v, &field)) {
            return Err(Error::InvalidMessage(format!(
                "symbol {v} is outside the {alphabet} alphabet"
            )));
        }
        Ok(Word { field, alphabet, values })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn values(&self) -> &[Fe] {
        &self.values
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut lines = s.lines();
        let mut next = |key: &str| -> Result<&str> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
            if key.is_empty() {
                return Ok(line);
            }
            line.strip_prefix(key)
                .map(str::trim)
                .ok_or_else(|| Error::Parse(format!("expected `{key}`, got `{line}`")))
        };
        let field = next("field:")?.parse::<FieldSpec>()?.build()?;
        let alphabet = next("alphabet:")?.parse()?;
        let values = next("")?
            .split_whitespace()
            .map(|t| {
                let i: u64 = t.parse().map_err(|_| Error::Parse(format!("bad symbol `{t}`")))?;
                field.elem(i)
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(field, alphabet, values)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "field: {}", self.field)?;
        writeln!(out, "alphabet: {}", self.alphabet)?;
        let mut first = true;
        for v in &self.values {
            if !first {
                write!(out, " ")?;
            }
            first = false;
            write!(out, "{v}")?;
        }
        writeln!(out)
    }
}

fn check(ok: bool, mode: Validation, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        return Ok(());
    }
    let msg = what();
    match mode {
        Validation::Strict => Err(Error::InvalidMessage(msg)),
        Validation::Lab => {
            log::warn!("encoding invalid message: {msg}");
            Ok(())
        }
    }
}

pub fn is_squarefree(g: &Poly, f: &FieldCtx) -> bool {
    !g.is_zero() && g.gcd(&g.derivative(f), f).is_one()
}

/// `α ↦ χ(g(α))` for the quadratic character; `g` should be monic squarefree.
pub fn encode_qr(field: &Field, g: &Poly, mode: Validation) -> Result<Word> {
    if !field.is_odd() {
        return Err(Error::EvenCharacteristic);
    }
    check(g.is_monic() && is_squarefree(g, field), mode, || {
        format!("qr message {g} is not monic squarefree")
    })?;
    let values = g
        .eval_all(field)
        .into_iter()
        .map(|v| field.quad_char(v))
        .collect::<Result<Vec<_>>>()?;
    Word::new(field.clone(), Alphabet::Qr, values)
}

/// `α ↦ Tr(g(α))` in characteristic 2; `g` should have odd-degree terms only.
pub fn encode_dbch(field: &Field, g: &Poly, mode: Validation) -> Result<Word> {
    if field.is_odd() {
        return Err(Error::OddCharacteristic);
    }
    let even_term = g.coeffs().iter().step_by(2).any(|c| !c.is_zero());
    check(!even_term, mode, || format!("dbch message {g} has an even-degree term"))?;
    let values = g.eval_all(field).into_iter().map(|v| field.trace(v)).collect();
    Word::new(field.clone(), Alphabet::F2, values)
}

/// `α ↦ χ_m(g(α)) = g(α)^{(q-1)/m}`; `g` should be monic with every factor
/// multiplicity in `1..m`.
pub fn encode_mth(field: &Field, m: u64, g: &Poly, mode: Validation) -> Result<Word> {
    field.check_order(m)?;
    let valid = g.is_monic()
        && factor_poly(g, 0, field)?
            .factors
            .iter()
            .all(|&(_, mu)| (mu as u64) < m);
    check(valid, mode, || {
        format!("order-{m} message {g} is not monic with multiplicities below m")
    })?;
    let values = g
        .eval_all(field)
        .into_iter()
        .map(|v| field.power_residue_char(m, v))
        .collect::<Result<Vec<_>>>()?;
    Word::new(field.clone(), Alphabet::Mth(m), values)
}

/// `α ↦ Tr(g(α)) ∈ F_p`; `g` should only have terms of degree prime to `p`.
pub fn encode_addp(field: &Field, g: &Poly, mode: Validation) -> Result<Word> {
    let p = field.p() as usize;
    let bad = g
        .coeffs()
        .iter()
        .enumerate()
        .any(|(i, c)| !c.is_zero() && i % p == 0);
    check(!bad, mode, || format!("message {g} has a term of degree divisible by {p}"))?;
    let values = g.eval_all(field).into_iter().map(|v| field.trace(v)).collect();
    Word::new(field.clone(), Alphabet::Fp, values)
}

pub fn hamming_distance(a: &Word, b: &Word) -> Result<usize> {
    if a.field != b.field {
        return Err(Error::CtxMismatch);
    }
    Ok(a.values.iter().zip(&b.values).filter(|(x, y)| x != y).count())
}

/// Changes exactly `e` seeded-random positions, each to a uniformly chosen
/// different symbol of the word's alphabet.
pub fn corrupt(w: &Word, e: usize, seed: u64) -> Result<Word> {
    let q = w.values.len();
    if e > q {
        return Err(Error::TooManyErrors { e, len: q });
    }
    let f = &w.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = w.values.clone();
    let symbols = w.alphabet.symbols(f);
    for i in sample(&mut rng, q, e).into_vec() {
        let old = values[i];
        let pos = symbols.iter().position(|&s| s == old).expect("word symbols lie in the alphabet");
        let k = rng.gen_range(0..symbols.len() - 1);
        values[i] = symbols[if k >= pos { k + 1 } else { k }];
    }
    Ok(Word { field: w.field.clone(), alphabet: w.alphabet, values })
}
