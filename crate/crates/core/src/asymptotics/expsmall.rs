//! The exponentially small case γ+ν = 2m: after the algebraic terms vanish
//! the remainder behaves like e^{-2πa}.

use super::algebraic::leading_h1;
use super::coeffs::{coeff_cprime, coeff_d};
use super::ExpansionReport;
use crate::error::{Error, Result};
use crate::params::{Params, Regime};
use crate::real::Real;
use crate::special::{bessel_i, gamma, normalized_i};

const GUARD_BITS: u32 = 32;

fn regime_m(p: &Params) -> Result<u32> {
    match p.regime() {
        Regime::ExpSmall { m } => Ok(m),
        r => Err(Error::Regime(format!("needs gamma+nu = 0, 2, 4, ..., regime is {r}"))),
    }
}

/// (-1)^m a^{γ-μ} π^μ I_ν(b)/Γ(μ) e^{-2πa}.
pub fn expsmall_scale(p: &Params) -> Result<Real> {
    let m = regime_m(p)?;
    let bits = p.bits();
    let q = p.with_prec(bits + GUARD_BITS);
    let pi = Real::pi(q.bits());
    let v = q.a.powf(&(&q.gamma - &q.mu)) * pi.powf(&q.mu) * bessel_i(&q.nu, &q.b)? / gamma(&q.mu)?
        * (-(&pi * &q.a * 2.0)).exp();
    let v = if m % 2 == 1 { -v } else { v };
    Ok(v.with_prec(bits))
}

/// Size of the omitted e^{-4πa} contribution, π^μ/Γ(μ) a^{γ-μ} e^{-4πa} 2^{μ-1}.
pub fn higher_exponential_envelope(p: &Params) -> Result<Real> {
    let bits = p.bits();
    let q = p.with_prec(bits + GUARD_BITS);
    let pi = Real::pi(q.bits());
    let v = pi.powf(&q.mu) / gamma(&q.mu)? * q.a.powf(&(&q.gamma - &q.mu)) * (-(&pi * &q.a * 4.0)).exp()
        * Real::exp2(&(&q.mu - 1.0));
    Ok(v.with_prec(bits))
}

/// S ≈ a^{γ-2μ+1}H(1) - δ_{0m} P/2 + scale Σ_{j≤J} D_j (2πa)^{-j}.
///
/// The series part approximates
/// 𝓢 = S - a^{γ-2μ+1}H(1) + δ_{0m} a^{-ν-2μ}(b/2)^ν/(2Γ(1+ν)).
pub fn theorem3_expsmall(p: &Params, j_max: u32) -> Result<ExpansionReport> {
    let m = regime_m(p)?;
    if j_max > 2 {
        return Err(Error::Unimplemented("only D_0, D_1, D_2 are available".into()));
    }
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let mut leading = leading_h1(&q)?;
    if m == 0 {
        leading = leading - q.algebraic_prefactor()? / 2.0;
    }
    let scale = expsmall_scale(&q)?;
    let x = Real::pi(w) * &q.a * 2.0;
    let mut terms = Vec::new();
    let mut value = Real::zero(w);
    for j in 0..=j_max {
        let t = &scale * coeff_d(&q, m, j)? * x.powi(-(j as i32));
        value += &t;
        terms.push(t.with_prec(bits));
    }
    let err_est = terms[j_max as usize].abs() + higher_exponential_envelope(&q)?.with_prec(bits);
    Ok(ExpansionReport {
        leading: leading.with_prec(bits),
        value: value.with_prec(bits),
        k_used: terms.len(),
        k_o: terms.len() - 1,
        terms,
        k_start: 0,
        err_est,
        regime: Regime::ExpSmall { m },
    })
}

/// 𝓘_ν(b){1 + C_1'/(s+μ-1) + C_2'/((s+μ-1)(s+μ-2))}, truncated after the
/// j_max-th correction: the large-s form of
/// F(s) = Σ_n (m-s/2)_n/(1-μ+m-s/2)_n χⁿ/((1+ν)_n n!).
pub fn inverse_factorial_f(p: &Params, m: u32, s: &Real, j_max: u32) -> Result<Real> {
    if *s < 10.0 {
        return Err(Error::Domain("inverse factorial form needs s >= 10".into()));
    }
    if j_max > 2 {
        return Err(Error::Unimplemented("only two corrections are available".into()));
    }
    let bits = p.bits().min(s.prec());
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let sw = s.with_prec(w);
    let u1 = &sw + &q.mu - 1.0;
    let u2 = &u1 - 1.0;
    let mut bracket = Real::one(w);
    if j_max >= 1 {
        bracket += &(coeff_cprime(&q, m, 1)? / &u1);
    }
    if j_max >= 2 {
        bracket += &(coeff_cprime(&q, m, 2)? / (&u1 * &u2));
    }
    Ok((normalized_i(&q.nu, &q.b)? * bracket).with_prec(bits))
}
