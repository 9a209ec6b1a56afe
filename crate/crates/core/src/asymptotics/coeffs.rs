//! Closed-form coefficients of the expansions.

use crate::error::{Error, Result};
use crate::params::{Params, Regime};
use crate::real::Real;
use crate::special::{bessel_i, gamma, hyp1f2_reg, hyp2f3_reg, normalized_i};

/// F_k = 1F2(-k; 1-μ-k, 1+ν; χ), a polynomial of degree k in χ.
///
/// For μ > 0 the lower parameter 1-μ-k never reaches zero within the k+1
/// surviving terms, so the finite sum is always well defined. At μ = 1 it is
/// the k-th partial sum of 0F1(; 1+ν; χ), the limit of the polynomial as
/// μ → 1, not the formally cancelled full series.
pub fn coeff_f(p: &Params, k: u32) -> Result<Real> {
    let bits = p.bits();
    let chi = p.chi();
    let kk = f64::from(k);
    let b1 = 1.0 - &p.mu - kk;
    let b2 = &p.nu + 1.0;
    let mut term = Real::one(bits);
    let mut sum = term.clone();
    for n in 0..k {
        let nf = f64::from(n);
        let den = (&b1 + nf) * (&b2 + nf) * (nf + 1.0);
        if den.is_zero() {
            return Err(Error::Pole(format!("F_{k}: vanishing lower parameter")));
        }
        term = term * (nf - kk) * &chi / den;
        sum += &term;
    }
    Ok(sum)
}

fn expsmall_m(p: &Params, m: u32) -> Result<()> {
    match p.regime() {
        Regime::ExpSmall { m: got } if got == m => Ok(()),
        r => Err(Error::Regime(format!("needs gamma+nu = {}, regime is {r}", 2 * m))),
    }
}

/// C_1 = (1-μ)(4m-μ)/2, C_2 = (1-μ)(2-μ){16m² + (1+μ)(μ-8m)}/8.
pub fn coeff_c(p: &Params, m: u32, j: u32) -> Result<Real> {
    expsmall_m(p, m)?;
    let mu = &p.mu;
    let mf = f64::from(m);
    match j {
        1 => Ok((1.0 - mu) * (4.0 * mf - mu) / 2.0),
        2 => {
            let inner = (1.0 + mu) * (mu - 8.0 * mf) + 16.0 * mf * mf;
            Ok((1.0 - mu) * (2.0 - mu) * inner / 8.0)
        }
        _ => Err(Error::Unimplemented(format!("C_{j}"))),
    }
}

/// Ratios I_{ν+1}(b)/I_ν(b), I_{ν+2}(b)/I_ν(b).
fn bessel_ratios(p: &Params) -> Result<(Real, Real)> {
    let w = p.bits() + 16;
    let nu = p.nu.with_prec(w);
    let b = p.b.with_prec(w);
    let i0 = bessel_i(&nu, &b)?;
    if i0.is_zero() {
        return Err(Error::Domain("I_nu(b) vanishes".into()));
    }
    let i1 = bessel_i(&(&nu + 1.0), &b)?;
    let i2 = bessel_i(&(&nu + 2.0), &b)?;
    Ok(((i1 / &i0).with_prec(p.bits()), (i2 / i0).with_prec(p.bits())))
}

/// C_1' = (1-μ) b r_1, C_2' = (1-μ) b {(2m+1-μ) r_1 + (2-μ)(b/2) r_2},
/// r_i = I_{ν+i}(b)/I_ν(b).
pub fn coeff_cprime(p: &Params, m: u32, j: u32) -> Result<Real> {
    expsmall_m(p, m)?;
    let (r1, r2) = bessel_ratios(p)?;
    let mu = &p.mu;
    let b = &p.b;
    match j {
        1 => Ok((1.0 - mu) * b * r1),
        2 => {
            let mf = f64::from(m);
            let inner = (2.0 * mf + 1.0 - mu) * &r1 + (2.0 - mu) * (b / 2.0) * r2;
            Ok((1.0 - mu) * b * inner)
        }
        _ => Err(Error::Unimplemented(format!("C'_{j}"))),
    }
}

/// D_0 = 1, D_1 = C_1 + C_1', D_2 = C_2 + C_2' + C_1 C_1'.
pub fn coeff_d(p: &Params, m: u32, j: u32) -> Result<Real> {
    expsmall_m(p, m)?;
    match j {
        0 => Ok(Real::one(p.bits())),
        1 => Ok(coeff_c(p, m, 1)? + coeff_cprime(p, m, 1)?),
        2 => {
            let c1 = coeff_c(p, m, 1)?;
            let c1p = coeff_cprime(p, m, 1)?;
            Ok(coeff_c(p, m, 2)? + coeff_cprime(p, m, 2)? + c1 * c1p)
        }
        _ => Err(Error::Unimplemented(format!("D_{j} has no closed form here"))),
    }
}

/// A = Γ(1+ν){χΓ(1-μ) 2F3r(1,1; 2, 2-μ, 2+ν; χ) - πχ^μ/sin(πμ) 1F2r(μ; 1+μ, 1+μ+ν; χ)},
/// for non-integer μ.
pub fn residue_a(p: &Params) -> Result<Real> {
    if p.mu.is_integer() {
        return Err(Error::Unimplemented("A is defined for non-integer mu".into()));
    }
    let bits = p.bits();
    let w = bits + 16;
    let q = p.with_prec(w);
    let one = Real::one(w);
    let two = Real::new(w, 2.0);
    let chi = q.chi();
    let first = &chi
        * gamma(&(1.0 - &q.mu))?
        * hyp2f3_reg(&one, &one, &two, &(2.0 - &q.mu), &(&q.nu + 2.0), &chi)?;
    let second = Real::pi(w) * chi.powf(&q.mu) / q.mu.sin_pi()
        * hyp1f2_reg(&q.mu, &(&q.mu + 1.0), &(&q.mu + 1.0 + &q.nu), &chi)?;
    Ok((gamma(&(&q.nu + 1.0))? * (first - second)).with_prec(bits))
}

/// F_* = Σ_n χⁿ/((2)_n (2+ν)_n) [ψ(2+n) - ψ(2) + ψ(2+ν+n) - ψ(2+ν)].
pub fn f_star(p: &Params) -> Result<Real> {
    let bits = p.bits();
    let w = bits + 16;
    let chi = p.chi().with_prec(w);
    let nu2 = p.nu.with_prec(w) + 2.0;
    let mut coef = Real::one(w);
    let mut dpsi = Real::zero(w);
    let mut sum = Real::zero(w);
    for n in 0..100_000u32 {
        let nf = f64::from(n);
        // Advance to index n+1.
        let a = 2.0 + nf;
        let c = &nu2 + nf;
        if c.is_zero() {
            return Err(Error::Pole("F_*: 2+nu is a non-positive integer".into()));
        }
        dpsi = dpsi + 1.0 / a + c.recip();
        coef = coef * &chi / (a * &c);
        let term = &coef * &dpsi;
        sum += &term;
        if nf > chi.to_f64() && term.abs().log2_abs() < sum.abs().log2_abs() - f64::from(w) {
            return Ok(sum.with_prec(bits));
        }
    }
    Err(Error::Convergence("F_* series did not converge".into()))
}

/// κ = 1 - γ̂ + ψ(2+ν) - log χ.
pub fn kappa(p: &Params) -> Result<Real> {
    let bits = p.bits();
    Ok(1.0 - Real::euler_gamma(bits) + crate::special::digamma(&(&p.nu + 2.0))? - p.chi().ln())
}

/// Coefficients needed by the expansions of one parameter set. Fields that
/// do not apply to the regime are `None`.
#[derive(Clone, Debug)]
pub struct CoeffSet {
    pub f: Vec<Real>,
    pub c: Option<[Real; 2]>,
    pub cprime: Option<[Real; 2]>,
    pub d: Option<[Real; 3]>,
    pub a: Option<Real>,
    pub f_star: Option<Real>,
    pub kappa: Option<Real>,
    /// 𝓘_ν(b) = Γ(1+ν)(b/2)^{-ν} I_ν(b).
    pub script_i: Real,
}

impl CoeffSet {
    /// F_0..F_{k_max-1} and every regime-specific constant.
    pub fn compute(p: &Params, k_max: u32) -> Result<CoeffSet> {
        let f = (0..k_max).map(|k| coeff_f(p, k)).collect::<Result<Vec<_>>>()?;
        let script_i = normalized_i(&p.nu, &p.b)?;
        let mut set = CoeffSet { f, c: None, cprime: None, d: None, a: None, f_star: None, kappa: None, script_i };
        match p.regime() {
            Regime::ExpSmall { m } => {
                set.c = Some([coeff_c(p, m, 1)?, coeff_c(p, m, 2)?]);
                set.cprime = Some([coeff_cprime(p, m, 1)?, coeff_cprime(p, m, 2)?]);
                set.d = Some([coeff_d(p, m, 0)?, coeff_d(p, m, 1)?, coeff_d(p, m, 2)?]);
            }
            Regime::DoublePole => {
                if p.mu.is_integer() {
                    set.f_star = Some(f_star(p)?);
                    set.kappa = Some(kappa(p)?);
                } else {
                    set.a = Some(residue_a(p)?);
                }
            }
            Regime::Generic => {}
        }
        Ok(set)
    }
}
