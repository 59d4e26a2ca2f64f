//! Decoder parameters: the default sizes derived from `(d, e, ε)`, with
//! per-parameter overrides for desk-scale experiments.

use num_rational::Ratio;

use crate::diag::Diagnostics;
use crate::error::{Error, Result};
use crate::field::FieldCtx;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Qr,
    Mth(u64),
    Dbch,
    Addp,
}

/// Theorem mode rejects parameters outside the correctness theorems; lab
/// mode records the violations in the diagnostics and carries on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    Theorem,
    #[default]
    Lab,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Overrides {
    pub m: Option<usize>,
    pub c: Option<usize>,
    pub h: Option<usize>,
    pub big_d: Option<usize>,
    pub u: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoderParams {
    pub d: usize,
    pub e: usize,
    pub eps: Ratio<u64>,
    pub mode: Mode,
    pub overrides: Overrides,
}

/// Concrete sizes handed to a system builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resolved {
    pub m: usize,
    pub c: usize,
    pub h: usize,
    /// Degree cap of `F` (Algorithms A and `A_m` only).
    pub big_d: usize,
    pub u: usize,
}

pub fn default_eps() -> Ratio<u64> {
    Ratio::new(1, 16)
}

impl DecoderParams {
    pub fn new(d: usize, e: usize) -> Self {
        DecoderParams { d, e, eps: default_eps(), mode: Mode::Lab, overrides: Overrides::default() }
    }

    /// Lab-mode parameters with `M`, `c`, `h` pinned.
    pub fn lab(d: usize, e: usize, m: usize, c: usize, h: usize) -> Self {
        let mut p = DecoderParams::new(d, e);
        p.overrides.m = Some(m);
        p.overrides.c = Some(c);
        p.overrides.h = Some(h);
        p
    }

    pub fn with_eps(mut self, eps: Ratio<u64>) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_degree(&self, d: usize) -> Self {
        DecoderParams { d, ..self.clone() }
    }

    /// Fills in the defaults, checks hard feasibility and records (lab) or
    /// rejects (theorem) violations of the theorem hypotheses.
    pub fn resolve(&self, family: Family, f: &FieldCtx, diag: &mut Diagnostics) -> Result<Resolved> {
        let eps = self.eps;
        if *eps.numer() == 0 {
            return Err(Error::InfeasibleParameters("epsilon must be positive".into()));
        }
        let q = f.q() as u128;
        let (num, den) = (*eps.numer() as u128, *eps.denom() as u128);
        let d = self.d as u128;
        let e = self.e as u128;
        let m_char = match family {
            Family::Mth(m) => m as u128,
            _ => 1,
        };
        let o = self.overrides;
        // M = ceil(16 d m / ε), rounded up to even.
        let m = match o.m {
            Some(m) => m,
            None => {
                let raw = (16 * d * m_char * den).div_ceil(num);
                usize::try_from(raw + raw % 2)
                    .map_err(|_| Error::InfeasibleParameters("M overflows".into()))?
            }
        };
        let c = o.c.unwrap_or(m / 2);
        let h = o.h.unwrap_or(2 * self.e);
        let qs = f.q_usize();
        let big_d = o.big_d.unwrap_or_else(|| match family {
            Family::Mth(mm) => {
                let mm = mm as usize;
                self.d * ((qs - 1) * (mm - 1) / mm + m) + c * qs
            }
            _ => self.d * ((qs - 1) / 2 + m) + c * qs,
        });
        let u = o.u.unwrap_or(match family {
            Family::Mth(mm) => h + (mm as usize - 1) * self.d * m,
            _ => h + self.d * m,
        });
        if m == 0 {
            return Err(Error::InfeasibleParameters("M must be positive".into()));
        }
        if matches!(family, Family::Dbch | Family::Addp) && (m >= qs || h >= qs) {
            return Err(Error::InfeasibleParameters(format!(
                "Hasse congruence needs M < q and h < q (M={m}, h={h}, q={qs})"
            )));
        }
        diag.push("M", m);
        diag.push("c", c);
        diag.push("h", h);
        if matches!(family, Family::Qr | Family::Mth(_)) {
            diag.push("D", big_d);
        }
        diag.push("u", u);

        let mut violations = Vec::new();
        // d <= ε √q / (16 m), squared to stay in integers.
        if (16 * d * m_char * den).pow(2) > num * num * q {
            violations.push(format!("d={} exceeds eps*sqrt(q)/{}", self.d, 16 * m_char));
        }
        // e <= (1/k - ε) q with k = 8, 12 or 4p.
        let k = match family {
            Family::Qr | Family::Dbch => 8,
            Family::Mth(_) => 12,
            Family::Addp => 4 * f.p() as u128,
        };
        if den <= k * num || k * den * e > (den - k * num) * q {
            violations.push(format!("e={} exceeds (1/{k} - eps) q", self.e));
        }
        let derived = (
            16 * d * m_char * den <= num * m as u128,
            c == m / 2 && m % 2 == 0,
            h == 2 * self.e,
        );
        if derived != (true, true, true) {
            violations.push(format!("overridden sizes M={m} c={c} h={h} fall below the defaults"));
        }
        match self.mode {
            Mode::Theorem if !violations.is_empty() => {
                return Err(Error::TheoremModeViolation(violations.join("; ")))
            }
            _ => {
                for v in violations {
                    diag.push("violation", v);
                }
            }
        }
        Ok(Resolved { m, c, h, big_d, u })
    }
}
