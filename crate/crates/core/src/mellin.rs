//! The Mellin transform H(s) of the summand profile
//! h(x) = x^γ J_ν(bx)(1+x²)^{-μ}:
//!
//! H(s) = πB / sin π(μ-λ) · Q(s),
//! Q(s) = Γ(λ) 1F2r(λ; 1+λ-μ, 1+ν; χ) - χ^{μ-λ} Γ(μ) 1F2r(μ; 1-λ+μ, 1-λ+μ+ν; χ),
//!
//! with λ = (s+γ+ν)/2 and 1F2r the regularized series. Q vanishes wherever
//! μ-λ is an integer, so those points are removable singularities of H.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::real::Real;
use crate::special::{gamma, hyp1f2_reg, is_nonpositive_integer};

/// Below this distance of μ-λ from an integer, H is interpolated instead of
/// evaluated from the difference form.
pub const REMOVABLE_RADIUS: f64 = 1e-6;

/// A point s together with λ(s) and the distance of μ-λ to the integers.
#[derive(Clone, Debug)]
pub struct MellinPoint {
    pub s: Real,
    pub lambda: Real,
    pub distance_to_integer: Real,
}

impl MellinPoint {
    pub fn new(p: &Params, s: &Real) -> Self {
        let lambda = p.lambda(s);
        let (_, d) = (&p.mu - &lambda).nearest_integer();
        MellinPoint { s: s.clone(), lambda, distance_to_integer: d }
    }
}

/// Both terms of Q(s) separately: (Γ(λ) 1F2r(...), χ^{μ-λ} Γ(μ) 1F2r(...)).
pub fn q_parts(p: &Params, s: &Real) -> Result<(Real, Real)> {
    let lambda = p.lambda(s);
    if is_nonpositive_integer(&lambda) {
        return Err(Error::Pole(format!("H has a pole at s = {}", s.to_sci_string(15))));
    }
    let chi = p.chi();
    let one = Real::one(s.prec());
    let first = gamma(&lambda)? * hyp1f2_reg(&lambda, &(&one + &lambda - &p.mu), &(&one + &p.nu), &chi)?;
    let d = &p.mu - &lambda;
    let b1 = &one + &d;
    let b2 = &b1 + &p.nu;
    let second = chi.powf(&d) * gamma(&p.mu)? * hyp1f2_reg(&p.mu, &b1, &b2, &chi)?;
    Ok((first, second))
}

/// Q(s), evaluated with enough extra bits to absorb the cancellation between
/// its two terms near the removable points. No strip check: Q is entire
/// apart from the poles of Γ(λ).
pub fn mellin_q(p: &Params, s: &Real) -> Result<Real> {
    let bits = p.bits().min(s.prec());
    let pt = MellinPoint::new(p, s);
    let lost = if pt.distance_to_integer.is_zero() {
        // Exactly removable: Q is zero; the difference form is then a pure
        // rounding residue, still computed at extra precision.
        32.0
    } else {
        (-pt.distance_to_integer.log2_abs()).max(0.0)
    };
    let w = bits + 16 + lost.ceil() as u32;
    let (f, g) = q_parts(&p.with_prec(w), &s.with_prec(w))?;
    Ok((f - g).with_prec(bits))
}

fn in_strip(p: &Params, s: &Real) -> bool {
    let left = -p.gamma_plus_nu();
    *s > left && *s < p.delta()
}

/// H(s) inside the strip -γ-ν < s < δ.
pub fn mellin_h(p: &Params, s: &Real) -> Result<Real> {
    if !in_strip(p, s) {
        return Err(Error::Strip(format!(
            "s = {} outside ({}, {})",
            s.to_sci_string(12),
            (-p.gamma_plus_nu()).to_sci_string(12),
            p.delta().to_sci_string(12)
        )));
    }
    mellin_h_continued(p, s)
}

/// Analytic continuation of H to all s except the poles s = -γ-ν-2k.
pub fn mellin_h_continued(p: &Params, s: &Real) -> Result<Real> {
    let bits = p.bits().min(s.prec());
    let pt = MellinPoint::new(p, s);
    if is_nonpositive_integer(&pt.lambda) {
        return Err(Error::Pole(format!("H has a pole at s = {}", s.to_sci_string(15))));
    }
    if pt.distance_to_integer < REMOVABLE_RADIUS {
        return h_interpolated(p, s, bits);
    }
    h_direct(p, s, bits)
}

fn h_direct(p: &Params, s: &Real, bits: u32) -> Result<Real> {
    let pt = MellinPoint::new(p, s);
    let lost = (-pt.distance_to_integer.log2_abs()).max(0.0).ceil() as u32;
    let w = bits + 16 + lost;
    let pw = p.with_prec(w);
    let sw = s.with_prec(w);
    let q = mellin_q(&pw, &sw)?;
    let sine = (&pw.mu - &pw.lambda(&sw)).sin_pi();
    let h = Real::pi(w) * pw.big_b()? / sine * q;
    Ok(h.with_prec(bits))
}

/// Barycentric Chebyshev interpolation of H on [s_c-h, s_c+h] around the
/// removable point s_c, using nodes away from s_c.
fn h_interpolated(p: &Params, s: &Real, bits: u32) -> Result<Real> {
    let w = bits + 24;
    let pw = p.with_prec(w);
    let sw = s.with_prec(w);
    let k = (&pw.mu - &pw.lambda(&sw)).round();
    // μ - λ(s_c) = k exactly.
    let s_c = (&pw.mu - &k) * 2.0 - pw.gamma_plus_nu();
    // Distance to the nearest true pole -γ-ν-2j, j ≥ 0.
    let offset = (&pw.mu - &k).to_f64() * 2.0;
    let r = if offset >= 0.0 {
        offset
    } else {
        let frac = offset.rem_euclid(2.0);
        frac.min(2.0 - frac)
    };
    if r < 1e-9 {
        return Err(Error::Pole(format!("H has a pole at s = {}", s_c.to_sci_string(15))));
    }
    let h = (r / 4.0).min(0.1);
    let rho = r / h + ((r / h).powi(2) - 1.0).sqrt();
    let mut n = (f64::from(w) * std::f64::consts::LN_2 / rho.ln()).ceil() as usize + 8;
    n += n % 2;
    let t0 = (&sw - &s_c) / h;
    let pi = Real::pi(w);
    let mut num = Real::zero(w);
    let mut den = Real::zero(w);
    for j in 0..n {
        let angle = &pi * Real::from_u64(w, 2 * j as u64 + 1) / (2 * n) as f64;
        let (sn, tj) = angle.sin_cos();
        let weight = if j % 2 == 0 { sn } else { -sn };
        let node = &s_c + &tj * h;
        let fj = h_direct(&pw, &node, w)?;
        let diff = &t0 - &tj;
        if diff.is_zero() {
            return Ok(fj.with_prec(bits));
        }
        let c = weight / diff;
        num += &(&c * &fj);
        den += &c;
    }
    Ok((num / den).with_prec(bits))
}
