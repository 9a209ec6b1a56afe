//! Large-a asymptotic expansions of the series and their truncation.

mod algebraic;
mod coeffs;
mod double_pole;
mod expsmall;

pub use algebraic::{theorem1_alternative_term, theorem1_series, theorem1_term};
pub use coeffs::{coeff_c, coeff_cprime, coeff_d, coeff_f, f_star, kappa, residue_a, CoeffSet};
pub use double_pole::{residue_s1, theorem2_series};
pub use expsmall::{expsmall_scale, higher_exponential_envelope, inverse_factorial_f, theorem3_expsmall};

use crate::error::{Error, Result};
use crate::params::Regime;
use crate::real::Real;

/// Longest expansion ever generated.
pub const K_MAX: usize = 64;

/// How many terms of an expansion to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Stop just before the least term.
    Optimal,
    /// Keep exactly this many terms.
    Terms(usize),
}

/// An evaluated expansion: S ≈ leading + value.
#[derive(Clone, Debug)]
pub struct ExpansionReport {
    /// Contribution not part of the series, e.g. a^{γ-2μ+1}H(1).
    pub leading: Real,
    /// Sum of the retained terms.
    pub value: Real,
    /// Signed terms, terms[i] belonging to index k_start + i.
    pub terms: Vec<Real>,
    pub k_start: u32,
    /// Number of retained terms.
    pub k_used: usize,
    /// Position of the least term in `terms`.
    pub k_o: usize,
    /// Magnitude of the first omitted term, plus any known envelope.
    pub err_est: Real,
    pub regime: Regime,
}

impl ExpansionReport {
    /// leading + value, the approximation to the full series.
    pub fn approximation(&self) -> Real {
        &self.leading + &self.value
    }

    /// Index k of the last retained term, if any term is retained.
    pub fn last_retained_k(&self) -> Option<u32> {
        (self.k_used > 0).then(|| self.k_start + self.k_used as u32 - 1)
    }
}

/// Index of the smallest |term|, scanning until the magnitudes grow on two
/// consecutive steps or the list ends.
pub fn optimal_truncate(terms: &[Real]) -> usize {
    let mut best = 0;
    let mut growth = 0;
    for i in 1..terms.len() {
        let cur = terms[i].abs();
        if cur < terms[best].abs() {
            best = i;
        }
        if cur > terms[i - 1].abs() {
            growth += 1;
            if growth >= 2 {
                break;
            }
        } else {
            growth = 0;
        }
    }
    best
}

/// Generates terms with `next(i)` and assembles the report.
pub(crate) fn build_report(
    leading: Real,
    k_start: u32,
    trunc: Truncation,
    regime: Regime,
    extra_err: Option<Real>,
    mut next: impl FnMut(usize) -> Result<Real>,
) -> Result<ExpansionReport> {
    let bits = leading.prec();
    let mut terms: Vec<Real> = Vec::new();
    let (k_used, k_o) = match trunc {
        Truncation::Terms(n) => {
            if n >= K_MAX {
                return Err(Error::InvalidParams(format!("at most {} terms", K_MAX - 1)));
            }
            for i in 0..=n {
                terms.push(next(i)?);
            }
            (n, optimal_truncate(&terms))
        }
        Truncation::Optimal => {
            let mut growth = 0;
            for i in 0..K_MAX {
                let t = next(i)?;
                if i > 0 && t.abs() > terms[i - 1].abs() {
                    growth += 1;
                } else {
                    growth = 0;
                }
                terms.push(t);
                if growth >= 2 {
                    break;
                }
            }
            let k = optimal_truncate(&terms);
            (k, k)
        }
    };
    let mut value = Real::zero(bits);
    for t in &terms[..k_used] {
        value.accumulate(t);
    }
    let mut err_est = terms.get(k_used).map(Real::abs).unwrap_or_else(|| Real::zero(bits));
    if let Some(e) = extra_err {
        err_est = err_est + e;
    }
    Ok(ExpansionReport { leading, value, terms, k_start, k_used, k_o, err_est, regime })
}
