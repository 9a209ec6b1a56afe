//! Bessel functions J, Y and I of real order and non-negative argument.
//!
//! Small arguments use the ascending series with enough guard bits to absorb
//! its cancellation; large arguments use the Hankel expansion, truncated once
//! its terms drop below the working precision.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::special::gamma::rgamma;

/// Largest cancellation allowance (in bits) granted to the ascending series.
const MAX_SERIES_GUARD: u32 = 1 << 16;

/// The Hankel auxiliary series P(ν,x), Q(ν,x).
#[derive(Clone, Debug)]
pub struct Hankel {
    mu4: Real,
    nu: Real,
}

impl Hankel {
    pub fn new(nu: &Real) -> Self {
        Hankel { mu4: nu * nu * 4.0, nu: nu.clone() }
    }

    /// Smallest argument at which the expansion can reach `bits` of accuracy.
    pub fn min_argument(&self, bits: u32) -> f64 {
        let nu = self.nu.to_f64().abs();
        (0.35 * f64::from(bits + 8)).max(nu * nu).max(4.0)
    }

    /// (P, Q) at `x`, accurate to about `bits` absolute; `None` if the
    /// expansion diverges before reaching that accuracy.
    pub fn pq(&self, x: &Real, bits: u32) -> Option<(Real, Real)> {
        let w = bits + 8;
        let x = x.with_prec(w);
        let mu4 = self.mu4.with_prec(w);
        let eight_x = &x * 8.0;
        let mut p = Real::one(w);
        let mut q = Real::zero(w);
        let mut t = Real::one(w);
        let target = -f64::from(bits) - 4.0;
        for k in 1u32..100_000 {
            let odd = f64::from(2 * k - 1);
            let factor = (&mu4 - odd * odd) / (&eight_x * f64::from(k));
            t = &t * &factor;
            if t.is_zero() {
                return Some((p, q));
            }
            match k % 4 {
                1 => q += &t,
                2 => p -= &t,
                3 => q -= &t,
                _ => p += &t,
            }
            if t.log2_abs() < target {
                return Some((p, q));
            }
            if odd * odd > self.mu4.to_f64() && factor.abs() >= 1.0 {
                return None;
            }
        }
        None
    }

    /// Phase ω = x - (ν/2 + 1/4)π.
    fn phase(&self, x: &Real) -> Real {
        let w = x.prec();
        let shift = (self.nu.with_prec(w) / 2.0 + 0.25) * Real::pi(w);
        x - shift
    }
}

fn check_argument(nu: &Real, x: &Real, name: &str) -> Result<()> {
    if x.is_negative() {
        return Err(Error::Domain(format!("{name} needs x >= 0, got {}", x.to_sci_string(10))));
    }
    if x.is_zero() && nu.is_negative() {
        return Err(Error::Domain(format!("{name} at x = 0 needs nu >= 0")));
    }
    Ok(())
}

fn negative_integer_order(nu: &Real) -> Option<i64> {
    if nu.is_integer() && nu.is_negative() {
        nu.to_i64()
    } else {
        None
    }
}

/// J_ν(x).
pub fn bessel_j(nu: &Real, x: &Real) -> Result<Real> {
    check_argument(nu, x, "bessel_j")?;
    let bits = nu.prec().min(x.prec());
    if let Some(n) = negative_integer_order(nu) {
        let j = bessel_j(&(-nu), x)?;
        return Ok(if n % 2 == 0 { j } else { -j });
    }
    if x.is_zero() {
        return Ok(if nu.is_zero() { Real::one(bits) } else { Real::zero(bits) });
    }
    let hankel = Hankel::new(nu);
    if x.to_f64() >= hankel.min_argument(bits) {
        let w = bits + 16;
        if let Some((p, q)) = hankel.pq(&x.with_prec(w), w) {
            let xw = x.with_prec(w);
            let (s, c) = hankel.phase(&xw).sin_cos();
            let amp = (2.0 / (Real::pi(w) * &xw)).sqrt();
            return Ok((amp * (p * c - q * s)).with_prec(bits));
        }
    }
    ascending_j(nu, x, bits, -1.0)
}

/// I_ν(x).
pub fn bessel_i(nu: &Real, x: &Real) -> Result<Real> {
    check_argument(nu, x, "bessel_i")?;
    let bits = nu.prec().min(x.prec());
    if negative_integer_order(nu).is_some() {
        return bessel_i(&(-nu), x);
    }
    if x.is_zero() {
        return Ok(if nu.is_zero() { Real::one(bits) } else { Real::zero(bits) });
    }
    ascending_j(nu, x, bits, 1.0)
}

/// Y_ν(x) for non-integer ν and x > 0.
pub fn bessel_y(nu: &Real, x: &Real) -> Result<Real> {
    if nu.is_integer() {
        return Err(Error::IntegerNu("bessel_y is only provided for non-integer order".into()));
    }
    if !x.is_positive() {
        return Err(Error::Domain("bessel_y needs x > 0".into()));
    }
    let bits = nu.prec().min(x.prec());
    let hankel = Hankel::new(nu);
    if x.to_f64() >= hankel.min_argument(bits) {
        let w = bits + 16;
        if let Some((p, q)) = hankel.pq(&x.with_prec(w), w) {
            let xw = x.with_prec(w);
            let (s, c) = hankel.phase(&xw).sin_cos();
            let amp = (2.0 / (Real::pi(w) * &xw)).sqrt();
            return Ok((amp * (p * s + q * c)).with_prec(bits));
        }
    }
    let sine = nu.sin_pi();
    let lost = (-sine.log2_abs()).max(0.0).ceil() as u32;
    let w = bits + 16 + lost;
    let nuw = nu.with_prec(w);
    let xw = x.with_prec(w);
    let jp = bessel_j(&nuw, &xw)?;
    let jm = bessel_j(&(-&nuw), &xw)?;
    Ok(((jp * nuw.cos_pi() - jm) / nuw.sin_pi()).with_prec(bits))
}

/// Σ_k (sign·x²/4)^k (x/2)^ν / (k! Γ(ν+k+1)): J for sign = -1, I for +1.
fn ascending_j(nu: &Real, x: &Real, bits: u32, sign: f64) -> Result<Real> {
    let xf = x.to_f64();
    let guard = if sign < 0.0 { (1.4427 * xf).ceil() } else { 0.0 };
    if guard > f64::from(MAX_SERIES_GUARD) {
        return Err(Error::Precision(format!(
            "ascending Bessel series at x = {xf} would need {guard} guard bits"
        )));
    }
    let w = bits + 24 + guard as u32;
    let nuw = nu.with_prec(w);
    let xw = x.with_prec(w);
    let half = &xw / 2.0;
    let z = &half * &half * sign;
    let mut t = half.powf(&nuw) * rgamma(&(&nuw + 1.0));
    let mut sum = t.clone();
    let mut max_log = t.log2_abs();
    let peak = xf / 2.0 + nu.to_f64().abs();
    for k in 1u64..10_000_000 {
        let kf = k as f64;
        t = &t * &z / (&nuw + kf) / kf;
        sum += &t;
        let tl = t.log2_abs();
        max_log = max_log.max(tl);
        if kf > peak && (t.is_zero() || tl < max_log - f64::from(w)) {
            return Ok(sum.with_prec(bits));
        }
    }
    Err(Error::Convergence("ascending Bessel series did not converge".into()))
}

/// 𝓘_ν(b) = Γ(1+ν)(b/2)^{-ν} I_ν(b) = Σ_k χ^k / (k! (1+ν)_k), χ = b²/4.
pub fn normalized_i(nu: &Real, b: &Real) -> Result<Real> {
    let bits = nu.prec().min(b.prec());
    let w = bits + 16;
    let chi = b.with_prec(w) * b.with_prec(w) / 4.0;
    let nu1 = nu.with_prec(w) + 1.0;
    let mut t = Real::one(w);
    let mut sum = t.clone();
    let mut max_log = 0f64;
    for k in 1u64..10_000_000 {
        let kf = k as f64;
        let den = &nu1 + (kf - 1.0);
        if den.is_zero() {
            return Err(Error::Pole("normalized_i at a negative integer order".into()));
        }
        t = &t * &chi / den / kf;
        sum += &t;
        let tl = t.log2_abs();
        max_log = max_log.max(tl);
        if kf > chi.to_f64().sqrt() + 1.0 && (t.is_zero() || tl < max_log.max(sum.log2_abs()) - f64::from(w)) {
            return Ok(sum.with_prec(bits));
        }
    }
    Err(Error::Convergence("normalized I series did not converge".into()))
}
