//! Ground-truth values of the series by direct summation.
//!
//! The sum is cut at the first N whose tail bound is below tol/2, and each
//! term is evaluated at just enough precision that the accumulated rounding
//! error stays below the other tol/2. In the large-argument range the Bessel
//! factor comes from the Hankel expansion with its phase e^{inθ} advanced by
//! a rotation recurrence, resynchronised periodically.

use rug::{Assign, Float};
use rug::ops::PowAssign;

use crate::error::{Error, Result};
use crate::params::{Params, SeriesKind};
use crate::real::Real;
use crate::special::{bessel_j, bessel_y};

/// Knobs of the direct summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// Largest admissible truncation point N.
    pub cap: u64,
    /// Safety factor κ in |J_ν(x)| ≤ κ √(2/(πx)).
    pub kappa: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: 10_000_000, kappa: 2.0 }
    }
}

/// A directly summed value with its truncation data.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub value: Real,
    /// Number of terms summed.
    pub terms: u64,
    /// Bound on the neglected tail (the sharper of the envelope and the
    /// summation-by-parts bound).
    pub tail_bound: Real,
    /// Requested absolute tolerance.
    pub tol: Real,
}

/// Argument from which the √(2/(πx)) envelope is trusted.
pub fn envelope_start(p: &Params) -> f64 {
    let nu = p.nu.to_f64();
    (nu * nu - 0.25).abs().max(1.0)
}

fn log2_tail(p: &Params, n: f64, kappa: f64) -> f64 {
    let a = p.a.to_f64();
    let b = p.b.to_f64();
    let d = p.delta().to_f64();
    let c = kappa * (2.0 * a / (std::f64::consts::PI * b)).sqrt() / (d - 1.0);
    c.log2() + (1.0 - d) * n.log2()
}

/// Bound on |Σ_{n>N} term_n|, κ√(2a/(πb)) N^{1-δ}/(δ-1), using the default κ.
pub fn tail_bound(p: &Params, kind: SeriesKind, n: u64) -> Result<Real> {
    tail_bound_with(p, kind, n, OracleConfig::default().kappa)
}

pub fn tail_bound_with(p: &Params, kind: SeriesKind, n: u64, kappa: f64) -> Result<Real> {
    p.check_kind(kind)?;
    if n == 0 {
        return Err(Error::Domain("tail bound needs N >= 1".into()));
    }
    let x = n as f64 * p.b.to_f64() / p.a.to_f64();
    let x_min = envelope_start(p);
    if x < x_min {
        return Err(Error::Domain(format!(
            "N b/a = {x} lies below the envelope start {x_min}"
        )));
    }
    let bits = p.bits();
    let nr = Real::from_u64(bits, n);
    let d = p.delta();
    let c = (&p.a * 2.0 / (Real::pi(bits) * &p.b)).sqrt() * kappa / (&d - 1.0);
    Ok(c * nr.powf(&(1.0 - d)))
}

/// log2 of the summation-by-parts bound on the tail beyond N, or `None`
/// where its assumptions (Hankel range, decreasing amplitude) do not hold.
///
/// With term_n = Re(g(n) e^{i(nθ-φ)}), g = A(n)(P + iQ) and the partial sums
/// of e^{inθ} bounded by 1/|sin(θ/2)| (1/|cos(θ/2)| when alternating),
/// |Σ_{n>N} term_n| ≤ total variation of g / |sin(θ/2)|
///                  ≤ κ (1 + 3|4ν²-1|/(8x_N)) A(N+1) / |sin(θ/2)|,
/// A(n) = √(2/(πθ)) n^{γ-1/2} (n²+a²)^{-μ}.
pub fn log2_oscillatory_tail(p: &Params, kind: SeriesKind, n: u64, kappa: f64) -> Option<f64> {
    let a = p.a.to_f64();
    let theta = p.b.to_f64() / a;
    let g = p.gamma.to_f64();
    let mu = p.mu.to_f64();
    let nu = p.nu.to_f64();
    let nf = n as f64;
    let x = nf * theta;
    if x < envelope_start(p) {
        return None;
    }
    let hankel_corr = (4.0 * nu * nu - 1.0).abs() / (8.0 * x);
    if hankel_corr > 1.0 / 3.0 {
        return None;
    }
    // A decreases for n² (2μ - γ + 1/2) > (γ - 1/2) a².
    let gh = g - 0.5;
    if gh > 0.0 && nf * nf * (2.0 * mu - gh) <= gh * a * a {
        return None;
    }
    let half = theta / 2.0;
    let s = match kind {
        SeriesKind::AlternatingJ => half.cos().abs(),
        _ => half.sin().abs(),
    };
    if s < 1e-6 {
        return None;
    }
    let n1 = nf + 1.0;
    let log2_amp = 0.5 * (2.0 / (std::f64::consts::PI * theta)).log2() + gh * n1.log2() - mu * (n1 * n1 + a * a).log2();
    Some((kappa * (1.0 + 3.0 * hankel_corr)).log2() + log2_amp - s.log2())
}

/// Smallest N whose tail bound is ≤ tol/2 inside the certified range,
/// taking the better of the envelope bound and the oscillatory bound.
/// Returns N and log2 of the bound achieved.
pub fn truncation_point(p: &Params, kind: SeriesKind, tol: &Real, cfg: &OracleConfig) -> Result<(u64, f64)> {
    let d = p.delta().to_f64();
    let target = tol.log2_abs() - 1.0;
    let c = log2_tail(p, 1.0, cfg.kappa);
    let n_tail = ((c - target) / (d - 1.0)).exp2().ceil();
    let n_env = (envelope_start(p) * p.a.to_f64() / p.b.to_f64()).ceil();
    let mut n = n_tail.max(n_env).max(1.0);
    let mut best: Option<(u64, f64)> = None;
    if n.is_finite() && n <= 4.0 * cfg.cap as f64 {
        // Float rounding may leave the bound just above target.
        while log2_tail(p, n, cfg.kappa) > target {
            n += 1.0;
        }
        best = Some((n as u64, log2_tail(p, n, cfg.kappa)));
    }
    let ok = |m: u64| log2_oscillatory_tail(p, kind, m, cfg.kappa).is_some_and(|t| t <= target);
    // Exponential search, then bisection, for the oscillatory bound.
    let mut hi = n_env.max(1.0) as u64;
    while !ok(hi) && hi <= cfg.cap {
        hi *= 2;
    }
    if ok(hi) {
        let mut lo = hi / 2;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // Bound must hold from hi onward: the amplitude is decreasing there.
        let t = log2_oscillatory_tail(p, kind, hi, cfg.kappa).unwrap();
        if best.map_or(true, |(m, _)| hi < m) {
            best = Some((hi, t));
        }
    }
    match best {
        Some((m, t)) if m <= cfg.cap => Ok((m, t)),
        Some((m, _)) => Err(Error::Convergence(format!("direct sum needs {m} terms, cap is {}", cfg.cap))),
        None => Err(Error::Convergence(format!("direct sum needs more than {} terms", cfg.cap))),
    }
}

pub fn direct_sum(p: &Params, kind: SeriesKind, tol: &Real) -> Result<DirectSum> {
    direct_sum_with(p, kind, tol, &OracleConfig::default())
}

pub fn direct_sum_with(p: &Params, kind: SeriesKind, tol: &Real, cfg: &OracleConfig) -> Result<DirectSum> {
    p.check_kind(kind)?;
    if !tol.is_positive() {
        return Err(Error::InvalidParams("tol > 0 required".into()));
    }
    let (n, log2_bound) = truncation_point(p, kind, tol, cfg)?;
    let mut engine = TermEngine::new(p, kind)?;
    let value = engine.sum(1, n, tol.log2_abs() - 1.0)?;
    Ok(DirectSum {
        value,
        terms: n,
        tail_bound: Real::exp2(&Real::new(64, log2_bound)),
        tol: tol.clone(),
    })
}

/// Σ_{n=from}^{to} term_n with every term at the full working precision.
pub fn partial_sum(p: &Params, kind: SeriesKind, from: u64, to: u64) -> Result<Real> {
    p.check_kind(kind)?;
    let mut engine = TermEngine::new(p, kind)?;
    engine.fixed_bits = true;
    engine.sum(from.max(1), to, f64::NEG_INFINITY)
}

/// `base^e` with a fast path for exponents that are multiples of 1/4.
#[derive(Clone, Debug)]
struct PowPlan {
    exponent: Real,
    split: Option<(i32, u8)>,
}

impl PowPlan {
    fn new(exponent: Real) -> Self {
        let four = &exponent * 4.0;
        let split = if four.is_integer() && four.to_f64().abs() < 4.0e6 {
            let q = four.to_i64().unwrap();
            Some((q.div_euclid(4) as i32, q.rem_euclid(4) as u8))
        } else {
            None
        };
        PowPlan { exponent, split }
    }

    /// `base^e` in place, with `tmp` as scratch at the same precision.
    fn apply_in_place(&self, base: &mut Float, tmp: &mut Float) {
        match self.split {
            Some((int, quarter)) => {
                if quarter == 0 {
                    base.pow_assign(int);
                    return;
                }
                tmp.assign(&*base);
                base.pow_assign(int);
                tmp.sqrt_mut();
                match quarter {
                    1 => {
                        tmp.sqrt_mut();
                        *base *= &*tmp;
                    }
                    2 => *base *= &*tmp,
                    _ => {
                        *base *= &*tmp;
                        tmp.sqrt_mut();
                        *base *= &*tmp;
                    }
                }
            }
            None => {
                tmp.set_prec(base.prec());
                tmp.assign(self.exponent.as_float());
                base.pow_assign(&*tmp);
            }
        }
    }

    fn apply(&self, base: &Real) -> Real {
        let mut b = base.as_float().clone();
        let mut tmp = Float::new(base.prec());
        self.apply_in_place(&mut b, &mut tmp);
        Real::from_float(b)
    }
}

/// Constants rounded to one working precision of the Hankel-range loop.
struct Cache {
    bits: u32,
    theta: Float,
    a2: Float,
    amp0: Float,
    cphi: Float,
    sphi: Float,
    coeffs: Vec<Float>,
}

/// Scratch registers of the Hankel-range loop.
struct Regs {
    x: Float,
    y: Float,
    yk: Float,
    t: Float,
    p: Float,
    q: Float,
    u: Float,
    v: Float,
    tmp: Float,
    nr: Float,
    amp: Float,
}

impl Regs {
    fn new(bits: u32) -> Self {
        let f = || Float::new(bits);
        Regs { x: f(), y: f(), yk: f(), t: f(), p: f(), q: f(), u: f(), v: f(), tmp: f(), nr: f(), amp: f() }
    }

    fn set_prec(&mut self, bits: u32) {
        for r in [
            &mut self.x, &mut self.y, &mut self.yk, &mut self.t, &mut self.p, &mut self.q,
            &mut self.u, &mut self.v, &mut self.tmp, &mut self.nr, &mut self.amp,
        ] {
            r.set_prec(bits);
        }
    }
}

/// Phase e^{inθ} advanced by rotation, resynchronised from scratch every
/// `RESYNC` steps and whenever the precision changes.
struct Rotation {
    bits: u32,
    last: u64,
    c: Float,
    s: Float,
    c1: Float,
    s1: Float,
    t1: Float,
    t2: Float,
}

const RESYNC: u64 = 512;

impl Rotation {
    fn new() -> Self {
        let f = || Float::new(64);
        Rotation { bits: 0, last: 0, c: f(), s: f(), c1: f(), s1: f(), t1: f(), t2: f() }
    }

    fn advance(&mut self, theta: &Real, n: u64, bits: u32) {
        if bits != self.bits || self.last == 0 || self.last + 1 != n || n - self.last >= RESYNC || n % RESYNC == 0 {
            self.sync(theta, n, bits);
            return;
        }
        // (c + is) (c1 + i s1)
        self.t1.assign(&self.c * &self.c1);
        self.t2.assign(&self.s * &self.s1);
        self.t1 -= &self.t2;
        self.t2.assign(&self.s * &self.c1);
        self.s.assign(&self.c * &self.s1);
        self.s += &self.t2;
        std::mem::swap(&mut self.c, &mut self.t1);
        self.last = n;
    }

    fn sync(&mut self, theta: &Real, n: u64, bits: u32) {
        let hi = bits + 32;
        let th = Float::with_val(hi, theta.as_float());
        let phase = Float::with_val(hi, &th * n);
        let (s, c) = phase.sin_cos(Float::new(hi));
        let (s1, c1) = th.sin_cos(Float::new(hi));
        for r in [&mut self.c, &mut self.s, &mut self.c1, &mut self.s1, &mut self.t1, &mut self.t2] {
            r.set_prec(bits);
        }
        self.c.assign(&c);
        self.s.assign(&s);
        self.c1.assign(&c1);
        self.s1.assign(&s1);
        self.bits = bits;
        self.last = n;
    }
}

/// Sequential evaluator of the summands.
struct TermEngine<'a> {
    p: &'a Params,
    kind: SeriesKind,
    /// Working precision of the parameters.
    w: u32,
    fixed_bits: bool,
    theta: Real,
    a2: Real,
    /// √(2/(πθ)); the Hankel amplitude √(2/(πx)) is this times n^{-1/2}.
    amp0: Real,
    n_pow_hankel: PowPlan,
    n_pow_plain: PowPlan,
    v_pow: PowPlan,
    /// cos φ, sin φ with φ = (ν/2 + 1/4)π.
    cphi: Real,
    sphi: Real,
    /// Hankel coefficients a_k(ν).
    hankel: Vec<Real>,
    /// Hankel expansion terminates (ν a half odd integer).
    hankel_exact: bool,
    kappa: f64,
    cache: Option<Cache>,
}

impl<'a> TermEngine<'a> {
    fn new(p: &'a Params, kind: SeriesKind) -> Result<Self> {
        let w = p.bits();
        let hi = w + 64;
        let theta = p.b.with_prec(hi) / p.a.with_prec(hi);
        let a2 = p.a.with_prec(hi) * p.a.with_prec(hi);
        let amp0 = (2.0 / (Real::pi(hi) * &theta)).sqrt();
        let phi = (p.nu.with_prec(hi) / 2.0 + 0.25) * Real::pi(hi);
        let (sphi, cphi) = phi.sin_cos();
        let mu4 = p.nu.with_prec(hi) * p.nu.with_prec(hi) * 4.0;
        let mut hankel = vec![Real::one(hi)];
        let mut hankel_exact = false;
        for k in 1..(2 * w as u64 + 64) {
            let odd = (2 * k - 1) as f64;
            let next = &hankel[hankel.len() - 1] * &(&mu4 - odd * odd) / (8.0 * k as f64);
            if next.is_zero() {
                hankel_exact = true;
                break;
            }
            hankel.push(next);
        }
        Ok(TermEngine {
            p,
            kind,
            w,
            fixed_bits: false,
            theta,
            a2,
            amp0,
            n_pow_hankel: PowPlan::new(&p.gamma.with_prec(hi) - 0.5),
            n_pow_plain: PowPlan::new(p.gamma.with_prec(hi)),
            v_pow: PowPlan::new(-p.mu.with_prec(hi)),
            cphi,
            sphi,
            hankel,
            hankel_exact,
            kappa: OracleConfig::default().kappa,
            cache: None,
        })
    }

    /// log2 of an upper bound on |term_n| (Hankel range) or of the
    /// non-Bessel factor (small arguments).
    fn log2_envelope(&self, n: f64, hankel_range: bool) -> f64 {
        let a = self.p.a.to_f64();
        let g = self.p.gamma.to_f64();
        let mu = self.p.mu.to_f64();
        let base = g * n.log2() - mu * (n * n + a * a).log2();
        if hankel_range {
            let x = n * self.theta.to_f64();
            base + (self.kappa * (2.0 / (std::f64::consts::PI * x)).sqrt()).log2()
        } else {
            base
        }
    }

    /// Minimal x at which the Hankel series reaches `bits`.
    fn hankel_start(&self, bits: u32) -> f64 {
        if self.hankel_exact {
            return 0.0;
        }
        let nu = self.p.nu.to_f64().abs();
        (0.35 * f64::from(bits + 8)).max(nu * nu).max(4.0)
    }

    fn cache_for(&mut self, bits: u32) {
        if self.cache.as_ref().is_some_and(|c| c.bits == bits) {
            return;
        }
        let r = |v: &Real| Float::with_val(bits, v.as_float());
        self.cache = Some(Cache {
            bits,
            theta: r(&self.theta),
            a2: r(&self.a2),
            amp0: r(&self.amp0),
            cphi: r(&self.cphi),
            sphi: r(&self.sphi),
            coeffs: self.hankel.iter().map(r).collect(),
        });
    }

    /// Summand n in the Hankel range, into `regs.amp`; false if the Hankel
    /// series does not reach `bits` at this argument.
    fn hankel_term(&mut self, n: u64, bits: u32, rot: &mut Rotation, regs: &mut Regs) -> bool {
        self.cache_for(bits);
        let cache = self.cache.as_ref().unwrap();
        regs.set_prec(bits);
        regs.x.assign(&cache.theta * n);
        regs.y.assign(regs.x.recip_ref());
        regs.yk.assign(&regs.y);
        regs.p.assign(1u32);
        regs.q.assign(0u32);
        let target = -(bits as i32) - 2;
        let mut converged = self.hankel_exact;
        let mut prev_exp = i32::MAX;
        let nu2x4 = 4.0 * self.p.nu.to_f64().powi(2);
        for (k, ak) in cache.coeffs.iter().enumerate().skip(1) {
            if k > 1 {
                regs.yk *= &regs.y;
            }
            regs.t.assign(ak * &regs.yk);
            match k % 4 {
                1 => regs.q += &regs.t,
                2 => regs.p -= &regs.t,
                3 => regs.q -= &regs.t,
                _ => regs.p += &regs.t,
            }
            let e = regs.t.get_exp().unwrap_or(i32::MIN);
            if e < target {
                converged = true;
                break;
            }
            if e > prev_exp && k > 2 {
                let odd = (2 * k - 1) as f64;
                if odd * odd > nu2x4 {
                    return false;
                }
            }
            prev_exp = e;
        }
        if !converged {
            return false;
        }
        rot.advance(&self.theta, n, bits + 16);
        // u = P cφ + Q sφ, v = P sφ - Q cφ
        regs.u.assign(&regs.p * &cache.cphi);
        regs.tmp.assign(&regs.q * &cache.sphi);
        regs.u += &regs.tmp;
        regs.v.assign(&regs.p * &cache.sphi);
        regs.tmp.assign(&regs.q * &cache.cphi);
        regs.v -= &regs.tmp;
        if self.kind == SeriesKind::YSeries {
            // Y: c (Q cφ - P sφ) + s (P cφ + Q sφ) = -c v + s u
            regs.t.assign(&rot.s * &regs.u);
            regs.tmp.assign(&rot.c * &regs.v);
            regs.t -= &regs.tmp;
        } else {
            // J: c u + s v
            regs.t.assign(&rot.c * &regs.u);
            regs.tmp.assign(&rot.s * &regs.v);
            regs.t += &regs.tmp;
        }
        regs.t *= &cache.amp0;
        // n^{γ-1/2}
        regs.nr.assign(n);
        regs.amp.assign(&regs.nr);
        self.n_pow_hankel.apply_in_place(&mut regs.amp, &mut regs.tmp);
        regs.t *= &regs.amp;
        // (n² + a²)^{-μ}
        regs.v.assign(regs.nr.square_ref());
        regs.v += &cache.a2;
        self.v_pow.apply_in_place(&mut regs.v, &mut regs.tmp);
        regs.amp.assign(&regs.t * &regs.v);
        true
    }

    fn sum(&mut self, from: u64, to: u64, log2_tol: f64) -> Result<Real> {
        let w = self.w;
        let acc_bits = w + 32;
        let mut acc = Float::new(acc_bits);
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let theta_f = self.theta.to_f64();
        let alternating = self.kind == SeriesKind::AlternatingJ;

        // Largest term envelope limits the reachable tolerance.
        if log2_tol.is_finite() {
            let peak = (1..=64u64.min(to))
                .map(|n| self.log2_envelope(n as f64, false))
                .fold(f64::NEG_INFINITY, f64::max);
            if log2_tol < peak - f64::from(w) + 10.0 {
                return Err(Error::Precision(format!(
                    "tolerance 2^{log2_tol:.1} is below what {w} bits can certify"
                )));
            }
        }

        let mut rot = Rotation::new();
        let mut regs = Regs::new(64);
        for n in from..=to {
            let nf = n as f64;
            let x_f = nf * theta_f;
            let mut bits = if self.fixed_bits {
                acc_bits
            } else {
                // Per-term weight 3/(π² n²)/2 keeps the total rounding error below tol/4.
                let log2_w = (3.0 / (pi2 * nf * nf) / 2.0).log2();
                let need = self.log2_envelope(nf, x_f >= envelope_start(self.p)) - (log2_tol + log2_w) + 20.0;
                // Whole limbs: MPFR cost is per limb, and fewer distinct
                // precisions mean fewer cache rebuilds.
                let need = (need.ceil().max(64.0) as u32).div_ceil(64) * 64;
                need.min(acc_bits)
            };
            if x_f < 1.0 {
                bits = acc_bits;
            }
            let done = x_f >= self.hankel_start(bits) && self.hankel_term(n, bits, &mut rot, &mut regs);
            let term = if done {
                &regs.amp
            } else {
                regs.amp = self.plain_term(n, bits)?.into_float();
                &regs.amp
            };
            if alternating && n % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        Ok(Real::from_float(acc).with_prec(w))
    }

    /// Summand through the general Bessel routines.
    fn plain_term(&self, n: u64, bits: u32) -> Result<Real> {
        let wb = bits + 16;
        let nr = Real::from_u64(wb, n);
        let x = &self.theta.with_prec(wb) * &nr;
        let nu = self.p.nu.with_prec(wb);
        let bessel = match self.kind {
            SeriesKind::YSeries => bessel_y(&nu, &x)?,
            _ => bessel_j(&nu, &x)?,
        };
        let v = &nr * &nr + self.a2.with_prec(wb);
        Ok(bessel * self.n_pow_plain.apply(&nr) * self.v_pow.apply(&v))
    }
}
