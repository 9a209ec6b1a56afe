//! Self-checks of the identities, residues and coefficients on seeded
//! random parameter sets. Each check reports its inputs so a failure can be
//! reproduced.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{
    coeff_cprime, coeff_d, expsmall_scale, inverse_factorial_f, residue_s1, theorem1_alternative_term, theorem1_term,
    theorem3_expsmall,
};
use crate::error::{Error, Result};
use crate::mellin::{mellin_h_continued, mellin_q};
use crate::oracle::direct_sum;
use crate::params::{Params, SeriesKind};
use crate::real::{PrecisionCtx, Real};
use crate::special::zeta;
use crate::variants::{halving_weight, y_weights};

/// Seed of every random draw, so runs are reproducible.
pub const SEED: u64 = 0x6d62_6173_796d;

/// Parameter sets drawn per randomized check.
pub const SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Residues,
    Coeffs,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "identities" => Ok(Suite::Identities),
            "residues" => Ok(Suite::Residues),
            "coeffs" => Ok(Suite::Coeffs),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidParams(format!("unknown suite {s:?}"))),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Inputs and measured discrepancy.
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: String) -> Check {
        Check { name: name.into(), passed, detail }
    }
}

/// Multiple of 1/den drawn from [lo, hi].
fn grid(rng: &mut ChaCha8Rng, lo: f64, hi: f64, den: f64) -> f64 {
    let k = rng.gen_range((lo * den).ceil() as i64..=(hi * den).floor() as i64);
    k as f64 / den
}

fn frac_distance(x: f64) -> f64 {
    (x - x.round()).abs()
}

fn build(bits: u32, a: f64, b: f64, gamma: f64, nu: f64, mu: f64) -> Result<Params> {
    let r = |v| Real::new(bits, v);
    Params::new(r(a), r(b), r(gamma), r(nu), r(mu))
}

/// Generic-regime parameters with δ ≥ 6, non-integer ν and γ+ν at least
/// 1/32 away from the integers.
pub fn generic_params(rng: &mut ChaCha8Rng, bits: u32) -> Result<Params> {
    loop {
        let mu = grid(rng, 3.0, 5.0, 8.0);
        let nu = grid(rng, -0.9, 1.9, 16.0);
        let gamma = grid(rng, -1.0, 2.0 * mu - 5.5, 8.0);
        if frac_distance(nu) < 1.0 / 32.0 || frac_distance(gamma + nu) < 1.0 / 32.0 {
            continue;
        }
        let a = grid(rng, 3.0, 6.0, 8.0);
        let b = grid(rng, 0.5, 2.0, 8.0);
        return build(bits, a, b, gamma, nu, mu);
    }
}

/// Double-pole parameters γ+ν = -1 with non-integer μ.
pub fn double_pole_params(rng: &mut ChaCha8Rng, bits: u32) -> Result<Params> {
    loop {
        let mu = grid(rng, 1.2, 4.8, 16.0);
        let nu = grid(rng, -0.9, 1.5, 16.0);
        if frac_distance(mu) < 1.0 / 32.0 {
            continue;
        }
        let a = grid(rng, 2.0, 6.0, 8.0);
        let b = grid(rng, 0.5, 2.0, 8.0);
        return build(bits, a, b, -1.0 - nu, nu, mu);
    }
}

/// The same double-pole parameters with μ = 1.
pub fn unit_mu(p: &Params) -> Result<Params> {
    Params::new(p.a.clone(), p.b.clone(), p.gamma.clone(), p.nu.clone(), Real::one(p.bits()))
}

/// Oracle tolerance used by the identity checks: 10^{-20} a^{γ-2μ+1}.
pub fn identity_tolerance(p: &Params) -> Real {
    p.a.powf(&(&p.gamma - &p.mu * 2.0 + 1.0)) * 1e-20
}

fn rel_diff(x: &Real, y: &Real) -> Real {
    if y.is_zero() {
        return x.abs();
    }
    ((x - y) / y).abs()
}

/// S_alt(a) = S(a) - 2^{γ-2μ+1} S(a/2) at oracle level, to 4·tol.
pub fn alternating_identity(p: &Params) -> Result<Check> {
    let tol = identity_tolerance(p);
    let alt = direct_sum(p, SeriesKind::AlternatingJ, &tol)?.value;
    let full = direct_sum(p, SeriesKind::JSeries, &tol)?.value;
    let half = direct_sum(&p.with_a(&p.a / 2.0), SeriesKind::JSeries, &tol)?.value;
    let diff = (&alt - (full - halving_weight(p) * half)).abs();
    let passed = diff <= &tol * 4.0;
    Ok(Check::new(
        "alternating identity",
        passed,
        format!("{p}: |diff| = {} vs 4 tol = {}", diff.to_sci_string(3), (&tol * 4.0).to_sci_string(3)),
    ))
}

/// S_Y = cot(πν) S_ν - csc(πν) S_{-ν} at oracle level, to 4·tol.
pub fn y_relation(p: &Params) -> Result<Check> {
    let tol = identity_tolerance(p);
    let (wc, ws) = y_weights(&p.nu)?;
    let y = direct_sum(p, SeriesKind::YSeries, &tol)?.value;
    let j = direct_sum(p, SeriesKind::JSeries, &tol)?.value;
    let jm = direct_sum(&p.with_nu(-p.nu.clone()), SeriesKind::JSeries, &tol)?.value;
    let diff = (&y - (&wc * &j + &ws * &jm)).abs();
    // Each J-sum carries its own tol, magnified by its weight.
    let bound = &tol * 4.0 * (1.0 + wc.abs() + ws.abs()) / 3.0;
    let passed = diff <= bound;
    Ok(Check::new(
        "Y relation",
        passed,
        format!("{p}: |diff| = {} vs bound = {}", diff.to_sci_string(3), bound.to_sci_string(3)),
    ))
}

/// ν = ±1/2: J and Y reduce to √(2/(πx)) times sin or cos. The oracle
/// value is compared with the trigonometric sum over the same terms.
pub fn half_order_reduction(p: &Params, nu_sign: i32, kind: SeriesKind) -> Result<Check> {
    let bits = p.bits();
    let q = p.with_nu(Real::new(bits, 0.5 * f64::from(nu_sign)));
    let tol = identity_tolerance(&q);
    let d = direct_sum(&q, kind, &tol)?;
    let w = bits + 32;
    let theta = q.b.with_prec(w) / q.a.with_prec(w);
    let amp = (2.0 / (Real::pi(w) * &theta)).sqrt();
    let e = &q.gamma.with_prec(w) - 0.5;
    let a2 = q.a.with_prec(w) * q.a.with_prec(w);
    let mut sum = Real::zero(w);
    for n in 1..=d.terms {
        let nr = Real::from_u64(w, n);
        let (s, c) = (&theta * &nr).sin_cos();
        // J_{1/2} ∝ sin, J_{-1/2} ∝ cos, Y_{1/2} ∝ -cos, Y_{-1/2} ∝ sin.
        let trig = match (kind, nu_sign > 0) {
            (SeriesKind::YSeries, true) => -c,
            (SeriesKind::YSeries, false) => s,
            (_, true) => s,
            (_, false) => c,
        };
        let t = trig * nr.powf(&e) * (&nr * &nr + &a2).powf(&-q.mu.with_prec(w));
        sum.accumulate(&t);
    }
    let sum = sum * amp;
    let diff = (&d.value - &sum).abs();
    let passed = diff <= &tol * 4.0;
    let name = format!("{} reduction at nu = {}", if kind == SeriesKind::YSeries { "Y" } else { "J" }, q.nu);
    Ok(Check::new(name, passed, format!("{q}: |diff| = {}", diff.to_sci_string(3))))
}

/// Largest relative gap between the two forms of the algebraic terms, k ≤ k_max.
pub fn term_identity_gap(p: &Params, k_max: u32) -> Result<Real> {
    let mut worst = Real::zero(p.bits());
    for k in 0..=k_max {
        let t = theorem1_term(p, k)?;
        let u = theorem1_alternative_term(p, k)?;
        worst = worst.max(&rel_diff(&u, &t));
    }
    Ok(worst)
}

/// Residue of H(s)ζ(s)a^s at the double pole s = 1 by symmetric differences
/// of ε²f(1+ε), with two Richardson steps.
pub fn finite_difference_residue(p: &Params) -> Result<Real> {
    let w = p.bits() + 64;
    let q = p.with_prec(w);
    let f = |eps: &Real| -> Result<Real> {
        let s = eps + 1.0;
        Ok(eps * eps * mellin_h_continued(&q, &s)? * zeta(&s)? * q.a.powf(&s))
    };
    let d = |eps: f64| -> Result<Real> {
        let e = Real::new(w, eps);
        Ok((f(&e)? - f(&-e.clone())?) / (&e * 2.0))
    };
    let h = 1.0 / 64.0;
    let (d0, d1, d2) = (d(h)?, d(h / 2.0)?, d(h / 4.0)?);
    let r0 = (&d1 * 4.0 - &d0) / 3.0;
    let r1 = (&d2 * 4.0 - &d1) / 3.0;
    Ok(((&r1 * 16.0 - &r0) / 15.0).with_prec(p.bits()))
}

/// Closed-form residue against the finite-difference one.
pub fn residue_check(p: &Params, rel_tol: f64) -> Result<Check> {
    let closed = residue_s1(p)?;
    let fd = finite_difference_residue(p)?;
    let r = rel_diff(&closed, &fd);
    Ok(Check::new(
        "double-pole residue",
        r < rel_tol,
        format!("{p}: closed {} vs differences {}, rel {}", closed.to_sci_string(12), fd.to_sci_string(12), r.to_sci_string(3)),
    ))
}

/// s with μ - λ(s) = k.
pub fn removable_point(p: &Params, k: i64) -> Real {
    (&p.mu - k as f64) * 2.0 - p.gamma_plus_nu()
}

/// (|Q(s_k)|, relative gap between H(s_k) and the Richardson limit of the
/// symmetric averages of H around s_k).
pub fn removable_point_data(p: &Params, k: i64) -> Result<(Real, Real)> {
    let s = removable_point(p, k);
    let q = mellin_q(p, &s)?.abs();
    let avg = |eps: f64| -> Result<Real> {
        let e = Real::new(p.bits(), eps);
        Ok((mellin_h_continued(p, &(&s + &e))? + mellin_h_continued(p, &(&s - &e))?) / 2.0)
    };
    let (h1, h2) = (avg(1e-2)?, avg(5e-3)?);
    let limit = (&h2 * 4.0 - &h1) / 3.0;
    let at = mellin_h_continued(p, &s)?;
    Ok((q, rel_diff(&at, &limit)))
}

/// F(s) = Σ_n (m-s/2)_n/(1-μ+m-s/2)_n χⁿ/((1+ν)_n n!) by its series.
pub fn f_series(p: &Params, m: u32, s: &Real) -> Result<Real> {
    let w = p.bits() + 32;
    let q = p.with_prec(w);
    let top = f64::from(m) - s.with_prec(w) / 2.0;
    let bottom = &top + 1.0 - &q.mu;
    let chi = q.chi();
    let mut term = Real::one(w);
    let mut sum = Real::one(w);
    for n in 0..10_000u32 {
        let nf = f64::from(n);
        term = term * (&top + nf) / (&bottom + nf) * &chi / ((&q.nu + 1.0 + nf) * (nf + 1.0));
        sum.accumulate(&term);
        if term.is_zero() || (nf > chi.to_f64() && term.abs().log2_abs() < sum.abs().log2_abs() - f64::from(w)) {
            return Ok(sum.with_prec(p.bits()));
        }
    }
    Err(Error::Convergence("F(s) series".into()))
}

/// Errors of the inverse factorial forms with 0, 1, 2 corrections against
/// the series, at s.
pub fn inverse_factorial_errors(p: &Params, m: u32, s: &Real) -> Result<[Real; 3]> {
    let exact = f_series(p, m, s)?;
    let e = |j| -> Result<Real> { Ok(rel_diff(&inverse_factorial_f(p, m, s, j)?, &exact)) };
    Ok([e(0)?, e(1)?, e(2)?])
}

/// 𝓢 = S - a^{γ-2μ+1}H(1) + δ_{0m}P/2 from the oracle, resolved to 10⁻⁴
/// of its second correction.
pub fn expsmall_remainder(p: &Params) -> Result<Real> {
    let r = theorem3_expsmall(p, 2)?;
    let tol = r.terms[2].abs() * 1e-4;
    let s = direct_sum(p, SeriesKind::JSeries, &tol)?.value;
    Ok(&s - &r.leading)
}

/// [log|𝓢(a)| - log|𝓢(a+1)|]/(2π) for each a.
pub fn exponential_rates(p: &Params, a_values: &[u32]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for &a in a_values {
        let s0 = expsmall_remainder(&p.with_a(Real::new(p.bits(), f64::from(a))))?;
        let s1 = expsmall_remainder(&p.with_a(Real::new(p.bits(), f64::from(a + 1))))?;
        let r = (s0.abs().ln() - s1.abs().ln()) / (Real::pi(p.bits()) * 2.0);
        out.push(r.to_f64());
    }
    Ok(out)
}

/// Least-squares D_1, D_2 from 𝓢/scale = 1 + D_1/x + D_2/x², x = 2πa.
pub fn fit_d1_d2(p: &Params, a_values: &[u32]) -> Result<(f64, f64)> {
    let mut pts = Vec::new();
    for &a in a_values {
        let q = p.with_a(Real::new(p.bits(), f64::from(a)));
        let y = (expsmall_remainder(&q)? / expsmall_scale(&q)?).to_f64();
        let x = 2.0 * std::f64::consts::PI * f64::from(a);
        // (y - 1) x = D_1 + D_2 / x
        pts.push((1.0 / x, (y - 1.0) * x));
    }
    let n = pts.len() as f64;
    let (sv, su) = pts.iter().fold((0.0, 0.0), |(a, b), (v, u)| (a + v, b + u));
    let (mv, mu) = (sv / n, su / n);
    let (cov, var) = pts.iter().fold((0.0, 0.0), |(c, s), (v, u)| (c + (v - mv) * (u - mu), s + (v - mv) * (v - mv)));
    let d2 = cov / var;
    Ok((mu - d2 * mv, d2))
}

fn identities(bits: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for _ in 0..SAMPLES {
        let p = generic_params(rng, bits)?;
        out.push(alternating_identity(&p)?);
        out.push(y_relation(&p)?);
    }
    for _ in 0..3 {
        let p = generic_params(rng, bits)?;
        for sign in [1, -1] {
            for kind in [SeriesKind::JSeries, SeriesKind::YSeries] {
                out.push(half_order_reduction(&p, sign, kind)?);
            }
        }
    }
    Ok(out)
}

fn residues(bits: u32, digits: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for _ in 0..5 {
        let p = double_pole_params(rng, bits)?;
        out.push(residue_check(&p, 1e-8)?);
    }
    let p = double_pole_params(rng, bits)?;
    out.push(residue_check(&unit_mu(&p)?, 1e-8)?);
    let q_tol = 10f64.powi(10 - digits as i32);
    for _ in 0..5 {
        let p = generic_params(rng, bits)?;
        for k in -2..=2 {
            let (q, gap) = removable_point_data(&p, k)?;
            out.push(Check::new(
                format!("removable point mu-lambda = {k}"),
                q.to_f64() <= q_tol && gap.to_f64() < 1e-6,
                format!("{p}: |Q| = {}, continuity gap {}", q.to_sci_string(3), gap.to_sci_string(3)),
            ));
        }
    }
    Ok(out)
}

fn coeffs(bits: u32, digits: u32, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let rel_tol = 10f64.powi(5 - digits as i32);
    for _ in 0..SAMPLES {
        let p = generic_params(rng, bits)?;
        let gap = term_identity_gap(&p, 8)?;
        out.push(Check::new(
            "functional-equation term identity",
            gap.to_f64() < rel_tol,
            format!("{p}: max rel gap {}", gap.to_sci_string(3)),
        ));
    }
    let p = Params::parse("8", "1", "0", "0", "4", bits)?;
    let d0 = coeff_d(&p, 0, 0)?;
    out.push(Check::new("D_0 = 1", d0 == 1.0, format!("D_0 = {}", d0.to_sci_string(20))));
    let s = Real::new(bits, 400.5);
    let errs = inverse_factorial_errors(&p, 0, &s)?;
    let s2 = Real::new(bits, 800.5);
    let errs2 = inverse_factorial_errors(&p, 0, &s2)?;
    let ratio = (&errs[2] / &errs2[2]).to_f64();
    out.push(Check::new(
        "inverse factorial corrections",
        errs[1] < errs[0] && errs[2] < errs[1] && (6.0..10.0).contains(&ratio),
        format!(
            "errors {} {} {}, halving ratio {ratio:.3}, C'_1 = {}",
            errs[0].to_sci_string(3),
            errs[1].to_sci_string(3),
            errs[2].to_sci_string(3),
            coeff_cprime(&p, 0, 1)?.to_sci_string(10)
        ),
    ));
    let rate_params = Params::parse("6", "1", "19/4", "-19/4", "5", bits)?;
    let rates = exponential_rates(&rate_params, &[6, 7, 8])?;
    out.push(Check::new(
        "exponential rate 2 pi",
        rates.iter().all(|r| (r - 1.0).abs() <= 0.02),
        format!("{rate_params}: rate / 2pi = {rates:?}"),
    ));
    let (d1, _) = fit_d1_d2(&p, &[6, 8, 10])?;
    let closed = coeff_d(&p, 0, 1)?.to_f64();
    out.push(Check::new(
        "fitted D_1",
        ((d1 - closed) / closed).abs() <= 0.05,
        format!("{p}: fit {d1:.6} vs closed {closed:.6}"),
    ));
    Ok(out)
}

/// Runs a suite at the given precision with the fixed seed.
pub fn run(suite: Suite, ctx: &PrecisionCtx) -> Result<Vec<Check>> {
    let bits = ctx.bits();
    let digits = ctx.digits();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(identities(bits, &mut rng)?);
    }
    if matches!(suite, Suite::Residues | Suite::All) {
        out.extend(residues(bits, digits, &mut rng)?);
    }
    if matches!(suite, Suite::Coeffs | Suite::All) {
        out.extend(coeffs(bits, digits, &mut rng)?);
    }
    Ok(out)
}
