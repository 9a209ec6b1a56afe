//! Special functions at arbitrary working precision.

pub mod bessel;
pub mod gamma;
pub mod hypergeometric;
pub mod zeta;

pub use bessel::{bessel_i, bessel_j, bessel_y, normalized_i, Hankel};
pub use gamma::{digamma, gamma, is_nonpositive_integer, ln_gamma, pochhammer, rgamma};
pub use hypergeometric::{hyp1f2_reg, hyp2f3_reg, hyp_pfq_reg};
pub use zeta::zeta;
