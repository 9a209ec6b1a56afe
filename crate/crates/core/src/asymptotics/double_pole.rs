//! The double-pole case γ+ν = -1, where H(s) and ζ(s) both have a pole at
//! s = 1 and the expansion picks up a logarithm of a.

use super::coeffs::{coeff_f, f_star, kappa, residue_a};
use super::{build_report, ExpansionReport, Truncation};
use crate::error::{Error, Result};
use crate::params::{Params, Regime};
use crate::real::Real;
use crate::special::{digamma, gamma, normalized_i, zeta};

const GUARD_BITS: u32 = 32;

fn check_minus_one(p: &Params) -> Result<()> {
    if p.regime() != Regime::DoublePole {
        return Err(Error::Regime(format!("needs gamma+nu = -1, regime is {}", p.regime())));
    }
    let (k, _) = p.gamma_plus_nu().nearest_integer();
    if k != -1.0 {
        return Err(Error::Unimplemented("double-pole residue only for gamma+nu = -1".into()));
    }
    Ok(())
}

/// Residue of H(s) ζ(s) a^s at s = 1 when γ+ν = -1.
pub fn residue_s1(p: &Params) -> Result<Real> {
    check_minus_one(p)?;
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let eg = Real::euler_gamma(w);
    let log_a = q.a.ln();
    let big_b = q.big_b()?;
    let g_nu = gamma(&(&q.nu + 1.0))?;
    let res = if q.mu.is_integer() {
        if q.mu != 1.0 {
            return Err(Error::Unimplemented("residue for integer mu >= 2".into()));
        }
        let script_i = normalized_i(&q.nu, &q.b)?;
        let bracket = &log_a * 2.0 + &eg * 2.0 + kappa(&q)? * (1.0 - script_i)
            - q.chi() * f_star(&q)? / (&q.nu + 1.0);
        &q.a * big_b / g_nu * bracket
    } else {
        let bracket = log_a + (residue_a(&q)? + eg - digamma(&q.mu)?) / 2.0;
        &q.a * big_b * gamma(&q.mu)? * 2.0 / g_nu * bracket
    };
    Ok(res.with_prec(bits))
}

/// S ≈ a^{γ-2μ} Res + P Σ_{k≥1} (-1)^k (μ)_k/k! ζ(1-2k) F_k a^{-2k}.
pub fn theorem2_series(p: &Params, trunc: Truncation) -> Result<ExpansionReport> {
    check_minus_one(p)?;
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let res = residue_s1(&q)?;
    let leading = (q.a.powf(&(&q.gamma - &q.mu * 2.0)) * res).with_prec(bits);
    let pref = q.algebraic_prefactor()?;
    let a2 = &q.a * &q.a;
    let mut wk = Real::one(w);
    build_report(leading, 1, trunc, Regime::DoublePole, None, |i| {
        let k = i as u32 + 1;
        wk = &wk * (&q.mu + f64::from(k - 1)) / (f64::from(k) * &a2);
        let z = zeta(&Real::new(w, 1.0 - 2.0 * f64::from(k)))?;
        let t = &pref * &wk * z * coeff_f(&q, k)?;
        let t = if k % 2 == 1 { -t } else { t };
        Ok(t.with_prec(bits))
    })
}
