//! Expansions of the alternating series Σ (-1)^{n-1} … and of the series
//! with Y_ν in place of J_ν, built from the J-series expansions through
//!   S_alt(a) = S(a) - 2^{γ-2μ+1} S(a/2),
//!   S_Y = cot(πν) S_ν - csc(πν) S_{-ν}.

use crate::asymptotics::{theorem1_series, theorem1_term, theorem3_expsmall, ExpansionReport, Truncation};
use crate::error::{Error, Result};
use crate::params::{Params, Regime};
use crate::real::Real;

const GUARD_BITS: u32 = 32;

/// Corrections kept by the exponentially small expansion.
const EXPSMALL_TERMS: u32 = 2;

fn reject_double_pole(p: &Params) -> Result<()> {
    if p.regime() == Regime::DoublePole {
        return Err(Error::Regime("gamma+nu is a negative odd integer".into()));
    }
    Ok(())
}

/// 2^{γ-2μ+1}, the weight of S(a/2) in the alternating identity.
pub fn halving_weight(p: &Params) -> Real {
    Real::exp2(&(&p.gamma - &p.mu * 2.0 + 1.0))
}

/// The k-th alternating term P(-1)^k (μ)_k/k! ζ(-ω_k) F_k {1 - 2^{1+ω_k}} a^{-2k}.
pub fn alternating_term(p: &Params, k: u32) -> Result<Real> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let q = p.with_prec(bits + GUARD_BITS);
    let factor = 1.0 - Real::exp2(&(q.omega(k) + 1.0));
    Ok((theorem1_term(&q, k)? * factor).with_prec(bits))
}

/// The same term through the identity: term_k(a) - 2^{γ-2μ+1} term_k(a/2).
pub fn alternating_identity_term(p: &Params, k: u32) -> Result<Real> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let q = p.with_prec(bits + GUARD_BITS);
    let half = q.with_a(&q.a / 2.0);
    let t = theorem1_term(&q, k)? - halving_weight(&q) * theorem1_term(&half, k)?;
    Ok(t.with_prec(bits))
}

/// w1·r1 + w2·r2, termwise where both have terms at the same index.
fn combine(w1: &Real, r1: &ExpansionReport, w2: &Real, r2: &ExpansionReport) -> ExpansionReport {
    let bits = r1.leading.prec();
    let k_start = r1.k_start.min(r2.k_start);
    let end = (r1.k_start as usize + r1.terms.len()).max(r2.k_start as usize + r2.terms.len());
    let at = |r: &ExpansionReport, k: usize| {
        k.checked_sub(r.k_start as usize).and_then(|i| r.terms.get(i)).cloned().unwrap_or_else(|| Real::zero(bits))
    };
    let terms = (k_start as usize..end).map(|k| w1 * &at(r1, k) + w2 * &at(r2, k)).collect();
    ExpansionReport {
        leading: w1 * &r1.leading + w2 * &r2.leading,
        value: w1 * &r1.value + w2 * &r2.value,
        terms,
        k_start,
        k_used: r1.k_used.max(r2.k_used),
        k_o: r1.k_o.max(r2.k_o),
        err_est: w1.abs() * &r1.err_est + w2.abs() * &r2.err_est,
        regime: r1.regime,
    }
}

/// Expansion of the J-series suited to the regime: the algebraic one, or
/// the exponentially small one with two corrections when γ+ν = 2m.
pub fn j_series_expansion(p: &Params, trunc: Truncation) -> Result<ExpansionReport> {
    match p.regime() {
        Regime::Generic => theorem1_series(p, trunc),
        Regime::ExpSmall { .. } => {
            let j = match trunc {
                Truncation::Optimal => EXPSMALL_TERMS,
                Truncation::Terms(n) => (n as u32).min(EXPSMALL_TERMS),
            };
            theorem3_expsmall(p, j)
        }
        Regime::DoublePole => Err(Error::Regime("gamma+nu is a negative odd integer".into())),
    }
}

/// Expansion of Σ (-1)^{n-1} n^γ J_ν(nb/a)/(n²+a²)^μ. The leading H(1)
/// contributions cancel; when γ+ν = 2m the identity is applied to the
/// exponentially small expansions at a and a/2.
pub fn alternating_expansion(p: &Params, trunc: Truncation) -> Result<ExpansionReport> {
    reject_double_pole(p)?;
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    if let Regime::ExpSmall { .. } = q.regime() {
        let half = q.with_a(&q.a / 2.0);
        let r1 = j_series_expansion(&q, trunc)?;
        let r2 = j_series_expansion(&half, trunc)?;
        let r = combine(&Real::one(w), &r1, &-halving_weight(&q), &r2);
        return Ok(round_report(r, bits));
    }
    let leading = Real::zero(bits);
    crate::asymptotics::build_report(leading, 0, trunc, q.regime(), None, |i| alternating_term(p, i as u32))
}

/// cot(πν) and -csc(πν).
pub fn y_weights(nu: &Real) -> Result<(Real, Real)> {
    if nu.is_integer() {
        return Err(Error::IntegerNu("Y-series needs non-integer nu".into()));
    }
    let (s, c) = (nu.sin_pi(), nu.cos_pi());
    Ok((&c / &s, -s.recip()))
}

/// Expansion of Σ n^γ Y_ν(nb/a)/(n²+a²)^μ as cot(πν) S_ν - csc(πν) S_{-ν}.
pub fn y_series_expansion(p: &Params, trunc: Truncation) -> Result<ExpansionReport> {
    let bits = p.bits();
    let w = bits + GUARD_BITS;
    let q = p.with_prec(w);
    let (wc, ws) = y_weights(&q.nu)?;
    let minus = q.with_nu(-q.nu.clone());
    if q.regime() == Regime::DoublePole || minus.regime() == Regime::DoublePole {
        return Err(Error::Regime("one of gamma+nu, gamma-nu is a negative odd integer".into()));
    }
    let r1 = j_series_expansion(&q, trunc)?;
    let r2 = j_series_expansion(&minus, trunc)?;
    Ok(round_report(combine(&wc, &r1, &ws, &r2), bits))
}

fn round_report(mut r: ExpansionReport, bits: u32) -> ExpansionReport {
    r.leading = r.leading.with_prec(bits);
    r.value = r.value.with_prec(bits);
    r.err_est = r.err_est.with_prec(bits);
    for t in &mut r.terms {
        *t = t.with_prec(bits);
    }
    r
}
