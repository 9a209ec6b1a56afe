//! Riemann zeta via the Borwein accelerated eta series, with reflection for
//! negative arguments.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::special::gamma::gamma;

/// Radius around s = 1 treated as the pole.
pub const POLE_RADIUS: f64 = 1e-12;

pub fn zeta(s: &Real) -> Result<Real> {
    let bits = s.prec();
    let dist = (s - 1.0).abs();
    if dist < POLE_RADIUS {
        return Err(Error::Pole(format!("zeta at {}", s.to_sci_string(15))));
    }
    if s.is_zero() {
        return Ok(Real::new(bits, -0.5));
    }
    if s.is_negative() {
        return zeta_reflected(s);
    }
    // 1 - 2^(1-s) loses about -log2|s-1| bits near the pole.
    let near_pole = if dist < 1.0 { (-dist.log2_abs()).ceil() as u32 } else { 0 };
    let w = bits + 16 + near_pole;
    let sw = s.with_prec(w);
    let eta = borwein_eta(&sw);
    let denom = 1.0 - Real::exp2(&(1.0 - &sw));
    Ok((eta / denom).with_prec(bits))
}

/// ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s) for s < 0.
fn zeta_reflected(s: &Real) -> Result<Real> {
    let bits = s.prec();
    let half = s / 2.0;
    let sine = half.sin_pi();
    if sine.is_zero() {
        return Ok(Real::zero(bits));
    }
    let w = bits + 16;
    let sw = s.with_prec(w);
    let t = 1.0 - &sw;
    let z = zeta(&t)?;
    let g = gamma(&t)?;
    let pi = Real::pi(w);
    let v = Real::exp2(&sw) * pi.powf(&(&sw - 1.0)) * sine.with_prec(w) * g * z;
    Ok(v.with_prec(bits))
}

/// Dirichlet eta for s > 0, error about (3+√8)^{-n}.
fn borwein_eta(s: &Real) -> Real {
    let bits = s.prec();
    let n = (f64::from(bits) * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as u64 + 2;
    // d_k = n Σ_{i≤k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n as usize + 1);
    let mut e = Real::one(bits);
    let mut acc = e.clone();
    d.push(acc.clone());
    for i in 1..=n {
        let num = 4 * (n + i - 1) * (n - i + 1);
        let den = (2 * i) * (2 * i - 1);
        e = e * (num as f64) / (den as f64);
        acc += &e;
        d.push(acc.clone());
    }
    let dn = d[n as usize].clone();
    let mut sum = Real::zero(bits);
    let neg_s = -s;
    for k in 0..n {
        let base = Real::from_u64(bits, k + 1);
        let term = (&d[k as usize] - &dn) * base.powf(&neg_s);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    -(sum / dn)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn mpfr_zeta(s: f64, bits: u32) -> Real {
        Real::from_float(Float::with_val(bits, s).zeta())
    }

    #[test]
    fn classical_values() {
        let bits = 200;
        assert_eq!(zeta(&Real::new(bits, 0.0)).unwrap().to_f64(), -0.5);
        assert!(zeta(&Real::new(bits, -2.0)).unwrap().is_zero());
        assert!(zeta(&Real::new(bits, -10.0)).unwrap().is_zero());
        let z2 = zeta(&Real::new(bits, 2.0)).unwrap();
        let pi = Real::pi(bits);
        let want = &pi * &pi / 6.0;
        assert!(((z2 - &want) / want).abs().log2_abs() < -190.0);
        let zm1 = zeta(&Real::new(bits, -1.0)).unwrap();
        assert!((zm1 + 1.0 / 12.0).abs().log2_abs() < -50.0);
    }

    #[test]
    fn agrees_with_mpfr() {
        let bits = 256;
        for s in [0.3, 0.999, 1.001, 1.5, 3.25, 17.0, 60.5, -0.5, -2.5, -7.75, -31.0] {
            let ours = zeta(&Real::new(bits, s)).unwrap();
            let theirs = mpfr_zeta(s, bits);
            let rel = ((&ours - &theirs) / &theirs).abs();
            assert!(rel.log2_abs() < -240.0, "s={s}: {}", rel.to_f64());
        }
    }

    #[test]
    fn pole() {
        assert!(zeta(&Real::new(64, 1.0)).is_err());
    }
}
