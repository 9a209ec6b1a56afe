//! Series parameters and the quantities derived from them.

use std::fmt;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::special::gamma;

/// Which series is being summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// Σ n^γ J_ν(nb/a)/(n²+a²)^μ
    JSeries,
    /// Σ (-1)^{n-1} n^γ J_ν(nb/a)/(n²+a²)^μ
    AlternatingJ,
    /// Σ n^γ Y_ν(nb/a)/(n²+a²)^μ, non-integer ν only
    YSeries,
}

/// Pole structure of the expansion, fixed by γ+ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// γ+ν is not an integer of the special kinds below.
    Generic,
    /// γ+ν = -1, -3, ...: a pole of H meets the pole of ζ at s = 1.
    DoublePole,
    /// γ+ν = 2m, m = 0, 1, ...: every algebraic term after the first vanishes.
    ExpSmall { m: u32 },
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Generic => f.write_str("generic"),
            Regime::DoublePole => f.write_str("double-pole"),
            Regime::ExpSmall { m } => write!(f, "exp-small(m={m})"),
        }
    }
}

/// The five-tuple (a, b, γ, ν, μ).
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub a: Real,
    pub b: Real,
    pub gamma: Real,
    pub nu: Real,
    pub mu: Real,
}

impl Params {
    /// Validates a, b, μ > 0 and absolute convergence 2μ - γ > 1/2.
    pub fn new(a: Real, b: Real, gamma: Real, nu: Real, mu: Real) -> Result<Params> {
        if !a.is_positive() {
            return Err(Error::InvalidParams("a > 0 required".into()));
        }
        if !b.is_positive() {
            return Err(Error::InvalidParams("b > 0 required".into()));
        }
        if !mu.is_positive() {
            return Err(Error::InvalidParams("mu > 0 required".into()));
        }
        let p = Params { a, b, gamma, nu, mu };
        if p.delta() <= 1.0 {
            return Err(Error::InvalidParams("2mu - gamma > 1/2 violated".into()));
        }
        Ok(p)
    }

    /// Parses each field as a decimal or `p/q` rational at `bits`.
    pub fn parse(a: &str, b: &str, gamma: &str, nu: &str, mu: &str, bits: u32) -> Result<Params> {
        Params::new(
            Real::parse(a, bits)?,
            Real::parse(b, bits)?,
            Real::parse(gamma, bits)?,
            Real::parse(nu, bits)?,
            Real::parse(mu, bits)?,
        )
    }

    /// Additional check for the Y-series: order must be non-integer.
    pub fn check_kind(&self, kind: SeriesKind) -> Result<()> {
        if kind == SeriesKind::YSeries && self.nu.is_integer() {
            return Err(Error::IntegerNu("the Y-series needs non-integer nu".into()));
        }
        Ok(())
    }

    /// Smallest precision among the fields.
    pub fn bits(&self) -> u32 {
        [&self.a, &self.b, &self.gamma, &self.nu, &self.mu].iter().map(|r| r.prec()).min().unwrap()
    }

    /// Same parameters rounded or widened to `bits`.
    pub fn with_prec(&self, bits: u32) -> Params {
        Params {
            a: self.a.with_prec(bits),
            b: self.b.with_prec(bits),
            gamma: self.gamma.with_prec(bits),
            nu: self.nu.with_prec(bits),
            mu: self.mu.with_prec(bits),
        }
    }

    /// Same parameters with `a` replaced.
    pub fn with_a(&self, a: Real) -> Params {
        Params { a, ..self.clone() }
    }

    /// Same parameters with ν replaced.
    pub fn with_nu(&self, nu: Real) -> Params {
        Params { nu, ..self.clone() }
    }

    /// χ = b²/4.
    pub fn chi(&self) -> Real {
        &self.b * &self.b / 4.0
    }

    /// B = (b/2)^ν / (2Γ(μ)).
    pub fn big_b(&self) -> Result<Real> {
        Ok((&self.b / 2.0).powf(&self.nu) / (gamma(&self.mu)? * 2.0))
    }

    /// δ = 2μ - γ + 1/2, the decay exponent of the summand envelope.
    pub fn delta(&self) -> Real {
        &self.mu * 2.0 - &self.gamma + 0.5
    }

    /// λ(s) = (s + γ + ν)/2.
    pub fn lambda(&self, s: &Real) -> Real {
        (s + &self.gamma + &self.nu) / 2.0
    }

    /// γ + ν.
    pub fn gamma_plus_nu(&self) -> Real {
        &self.gamma + &self.nu
    }

    /// ω_k = γ + ν + 2k.
    pub fn omega(&self, k: u32) -> Real {
        self.gamma_plus_nu() + f64::from(2 * k)
    }

    /// Prefactor a^{-ν-2μ}(b/2)^ν/Γ(1+ν) of the algebraic expansions.
    pub fn algebraic_prefactor(&self) -> Result<Real> {
        let e = -(&self.nu) - &self.mu * 2.0;
        let g = gamma(&(&self.nu + 1.0))?;
        Ok(self.a.powf(&e) * (&self.b / 2.0).powf(&self.nu) / g)
    }

    /// Regime selected by γ+ν, with integers recognised to within a few ulps.
    pub fn regime(&self) -> Regime {
        let s = self.gamma_plus_nu();
        let tol = (-(f64::from(self.bits()) - 8.0)).exp2();
        match s.near_integer(tol) {
            Some(k) if k < 0 && k % 2 != 0 => Regime::DoublePole,
            Some(k) if k >= 0 && k % 2 == 0 => Regime::ExpSmall { m: (k / 2) as u32 },
            _ => Regime::Generic,
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a={} b={} gamma={} nu={} mu={}",
            self.a.to_sci_string(12),
            self.b.to_sci_string(12),
            self.gamma.to_sci_string(12),
            self.nu.to_sci_string(12),
            self.mu.to_sci_string(12)
        )
    }
}
