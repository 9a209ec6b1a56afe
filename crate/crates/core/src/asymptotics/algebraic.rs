//! The algebraic expansion
//! S ≈ a^{γ-2μ+1}H(1) + P Σ_k (-1)^k (μ)_k/k! ζ(-ω_k) F_k a^{-2k},
//! P = a^{-ν-2μ}(b/2)^ν/Γ(1+ν), valid unless γ+ν is a negative odd integer.

use super::coeffs::coeff_f;
use super::{build_report, ExpansionReport, Truncation};
use crate::error::{Error, Result};
use crate::mellin::mellin_h_continued;
use crate::params::{Params, Regime};
use crate::real::Real;
use crate::special::{gamma, is_nonpositive_integer, pochhammer, zeta};

const GUARD_BITS: u32 = 32;

fn reject_double_pole(p: &Params) -> Result<()> {
    if p.regime() == Regime::DoublePole {
        return Err(Error::Regime("gamma+nu is a negative odd integer; use the double-pole expansion".into()));
    }
    Ok(())
}

/// (μ)_k/k! · a^{-2k}
fn weight(p: &Params, k: u32) -> Real {
    let mut kf = Real::one(p.bits());
    for j in 1..=k {
        kf *= f64::from(j);
    }
    pochhammer(&p.mu, k) / kf * p.a.powi(-2 * k as i32)
}

/// The k-th term P(-1)^k (μ)_k/k! ζ(-ω_k) F_k a^{-2k}.
pub fn theorem1_term(p: &Params, k: u32) -> Result<Real> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let q = p.with_prec(bits + GUARD_BITS);
    let z = zeta(&(-q.omega(k)))?;
    let t = q.algebraic_prefactor()? * weight(&q, k) * z * coeff_f(&q, k)?;
    let t = if k % 2 == 1 { -t } else { t };
    Ok(t.with_prec(bits))
}

/// The k-th term rewritten through the functional equation of ζ:
/// -P sin(π(γ+ν)/2)/(2^{γ+ν} π^{1+γ+ν}) (μ)_k/k! Γ(1+ω_k) ζ(1+ω_k) F_k (2πa)^{-2k}.
///
/// Where Γ(1+ω_k) or ζ(1+ω_k) is singular and the sine vanishes, the value
/// is the limit, which equals the original form.
pub fn theorem1_alternative_term(p: &Params, k: u32) -> Result<Real> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let omega = q.omega(k);
    let one_plus = &omega + 1.0;
    let singular = is_nonpositive_integer(&one_plus) || omega.is_zero();
    if singular {
        return theorem1_term(p, k);
    }
    let g = q.gamma_plus_nu();
    let pi = Real::pi(w);
    let sine = (&g / 2.0).sin_pi();
    let front = -(q.algebraic_prefactor()? * sine / (Real::exp2(&g) * pi.powf(&(&g + 1.0))));
    let mut kf = Real::one(w);
    for j in 1..=k {
        kf *= f64::from(j);
    }
    let two_pi_a = &pi * &q.a * 2.0;
    let t = front * pochhammer(&q.mu, k) / kf
        * gamma(&one_plus)?
        * zeta(&one_plus)?
        * coeff_f(&q, k)?
        * two_pi_a.powi(-2 * k as i32);
    Ok(t.with_prec(bits))
}

/// a^{γ-2μ+1} H(1).
pub(crate) fn leading_h1(p: &Params) -> Result<Real> {
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let h1 = mellin_h_continued(&q, &Real::one(w))?;
    let e = &q.gamma - &q.mu * 2.0 + 1.0;
    Ok((q.a.powf(&e) * h1).with_prec(bits))
}

/// Algebraic expansion with the given truncation. In the exponentially
/// small regime at most the k = 0 term is non-zero.
pub fn theorem1_series(p: &Params, trunc: Truncation) -> Result<ExpansionReport> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let leading = leading_h1(p)?;
    let pref = q.algebraic_prefactor()?;
    let a2 = &q.a * &q.a;
    let mut wk = Real::one(w);
    let report = build_report(leading, 0, trunc, p.regime(), None, |i| {
        let k = i as u32;
        if k > 0 {
            wk = &wk * (&q.mu + f64::from(k - 1)) / (f64::from(k) * &a2);
        }
        let z = zeta(&(-q.omega(k)))?;
        let t = &pref * &wk * z * coeff_f(&q, k)?;
        let t = if k % 2 == 1 { -t } else { t };
        Ok(t.with_prec(bits))
    })?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rewritten_terms_agree() {
        let p = Params::parse("3", "1", "1/2", "1/3", "5/2", 200).unwrap();
        for k in 0..8 {
            let a = theorem1_term(&p, k).unwrap();
            let b = theorem1_alternative_term(&p, k).unwrap();
            assert!(((&a - &b) / &a).abs().log2_abs() < -180.0, "k={k}");
        }
    }

    #[test]
    fn even_gamma_plus_nu_kills_the_series() {
        let p = Params::parse("3", "1", "1", "1", "3", 200).unwrap();
        let r = theorem1_series(&p, Truncation::Terms(6)).unwrap();
        assert!(r.terms.iter().all(Real::is_zero));
        assert!(matches!(r.regime, Regime::ExpSmall { m: 1 }));
        let q = Params::parse("3", "1", "-1/3", "1/3", "3", 200).unwrap();
        let r = theorem1_series(&q, Truncation::Terms(4)).unwrap();
        let want = -q.algebraic_prefactor().unwrap() / 2.0;
        assert!(((&r.terms[0] - &want) / &want).abs().log2_abs() < -180.0);
        assert!(r.terms[1..].iter().all(Real::is_zero));
    }

    #[test]
    fn double_pole_is_rejected() {
        let p = Params::parse("3", "1", "-1", "0", "5/2", 200).unwrap();
        assert!(matches!(theorem1_series(&p, Truncation::Optimal), Err(Error::Regime(_))));
    }
}
