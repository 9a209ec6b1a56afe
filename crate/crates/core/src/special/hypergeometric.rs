//! Regularized generalized hypergeometric series
//! Σ_n Π(a_i)_n z^n / (n! Π Γ(b_j+n)), entire in every parameter.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::special::gamma::rgamma;

const MAX_TERMS: u64 = 1_000_000;

/// Regularized pFq with p ≤ q (so the series is entire in z).
pub fn hyp_pfq_reg(num: &[Real], den: &[Real], z: &Real) -> Result<Real> {
    if num.len() > den.len() {
        return Err(Error::Unimplemented("pFq with p > q".into()));
    }
    let bits = num.iter().chain(den).map(Real::prec).fold(z.prec(), u32::min);
    let mut guard = 24u32;
    for _ in 0..3 {
        let (sum, max_log) = pfq_sum(num, den, z, bits + guard)?;
        if sum.is_zero() {
            return Ok(sum.with_prec(bits));
        }
        let lost = (max_log - sum.log2_abs()).max(0.0).ceil() as u32;
        if lost + 16 <= guard {
            return Ok(sum.with_prec(bits));
        }
        guard = lost + 32;
    }
    let (sum, _) = pfq_sum(num, den, z, bits + guard)?;
    Ok(sum.with_prec(bits))
}

fn pfq_sum(num: &[Real], den: &[Real], z: &Real, w: u32) -> Result<(Real, f64)> {
    let a: Vec<Real> = num.iter().map(|v| v.with_prec(w)).collect();
    let b: Vec<Real> = den.iter().map(|v| v.with_prec(w)).collect();
    let z = z.with_prec(w);
    // Past every lower-parameter pole and every upper-parameter zero.
    let ceil_neg = |v: &Real| -> f64 {
        let f = -v.to_f64();
        if f > 0.0 {
            f.ceil() + 1.0
        } else {
            0.0
        }
    };
    let n_min = a.iter().chain(&b).map(ceil_neg).fold(0.0, f64::max);
    let terminating = a.iter().any(|v| v.is_integer() && !v.is_positive());

    let mut coef = Real::one(w);
    let mut rg: Vec<Real> = b.iter().map(rgamma).collect();
    let term_of = |coef: &Real, rg: &[Real]| rg.iter().fold(coef.clone(), |acc, r| acc * r);
    let mut term = term_of(&coef, &rg);
    let mut sum = term.clone();
    let mut max_log = term.log2_abs();
    let zf = z.to_f64().abs();
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // coef_{n+1} = coef_n Π(a_i+n) z / (n+1)
        let mut ratio = 1f64;
        for ai in &a {
            let f = ai + nf;
            ratio *= f.to_f64().abs();
            coef = &coef * &f;
        }
        coef = &coef * &z / (nf + 1.0);
        for (bj, r) in b.iter().zip(rg.iter_mut()) {
            let f = bj + nf;
            ratio /= f.to_f64().abs().max(1e-300);
            if f.is_zero() {
                *r = rgamma(&(bj + (nf + 1.0)));
            } else {
                *r = &*r / &f;
            }
        }
        ratio *= zf / (nf + 1.0);
        term = term_of(&coef, &rg);
        sum += &term;
        let tl = term.log2_abs();
        max_log = max_log.max(tl);
        if terminating && coef.is_zero() {
            return Ok((sum, max_log));
        }
        let past = nf + 1.0 >= n_min;
        let small = term.is_zero() || tl < max_log.max(sum.log2_abs()) - f64::from(w);
        if past && ratio < 0.5 && small {
            return Ok((sum, max_log));
        }
    }
    Err(Error::Convergence("hypergeometric series did not converge".into()))
}

/// Regularized 1F2(a; b1, b2; z).
pub fn hyp1f2_reg(a: &Real, b1: &Real, b2: &Real, z: &Real) -> Result<Real> {
    hyp_pfq_reg(&[a.clone()], &[b1.clone(), b2.clone()], z)
}

/// Regularized 2F3(a1, a2; b1, b2, b3; z).
pub fn hyp2f3_reg(a1: &Real, a2: &Real, b1: &Real, b2: &Real, b3: &Real, z: &Real) -> Result<Real> {
    hyp_pfq_reg(&[a1.clone(), a2.clone()], &[b1.clone(), b2.clone(), b3.clone()], z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;

    fn r(v: f64) -> Real {
        Real::new(200, v)
    }

    #[test]
    fn zero_argument_gives_leading_term() {
        let v = hyp1f2_reg(&r(0.7), &r(1.5), &r(2.25), &r(0.0)).unwrap();
        let want = (gamma(&r(1.5)).unwrap() * gamma(&r(2.25)).unwrap()).recip();
        assert!(((v - &want) / want).abs().log2_abs() < -190.0);
    }

    #[test]
    fn first_polynomial_coefficient() {
        // Γ(-μ)Γ(1+ν)·1F2reg(-1; -μ, 1+ν; χ) = 1 + χ/(μ(1+ν))
        let (mu, nu, chi) = (r(2.5), r(1.0 / 3.0), r(0.3));
        let v = hyp1f2_reg(&r(-1.0), &(1.0 - &mu - 1.0), &(&nu + 1.0), &chi).unwrap()
            * gamma(&(-&mu)).unwrap()
            * gamma(&(&nu + 1.0)).unwrap();
        let want = 1.0 + &chi / (&mu * (&nu + 1.0));
        assert!(((v - &want) / want).abs().log2_abs() < -185.0);
    }

    #[test]
    fn lower_parameter_at_pole_is_finite() {
        let v = hyp1f2_reg(&r(0.5), &r(-2.0), &r(1.0), &r(0.7)).unwrap();
        let left = hyp1f2_reg(&r(0.5), &r(-2.0 - 1e-9), &r(1.0), &r(0.7)).unwrap();
        let right = hyp1f2_reg(&r(0.5), &r(-2.0 + 1e-9), &r(1.0), &r(0.7)).unwrap();
        let mid = (left + right) / 2.0;
        assert!(((&v - &mid) / &v).abs().to_f64() < 1e-12);
    }
}
