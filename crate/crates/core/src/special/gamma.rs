//! Gamma-family functions backed by MPFR.

use rug::Float;

use crate::error::{Error, Result};
use crate::real::Real;

/// True for 0, -1, -2, ...
pub fn is_nonpositive_integer(x: &Real) -> bool {
    x.is_integer() && !x.is_positive()
}

pub fn gamma(x: &Real) -> Result<Real> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("gamma at {}", x.to_sci_string(10))));
    }
    Ok(Real::from_float(x.as_float().clone().gamma()))
}

/// 1/Γ(x), entire: zero at the poles of Γ.
pub fn rgamma(x: &Real) -> Real {
    if is_nonpositive_integer(x) {
        return Real::zero(x.prec());
    }
    let bits = x.prec();
    // Near a pole Γ is huge; computing it with a few extra bits keeps the
    // reciprocal correctly rounded.
    let g = Float::with_val(bits + 16, x.as_float()).gamma();
    Real::from_float(Float::with_val(bits, g.recip()))
}

pub fn digamma(x: &Real) -> Result<Real> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("digamma at {}", x.to_sci_string(10))));
    }
    Ok(Real::from_float(x.as_float().clone().digamma()))
}

/// log Γ(x) for x > 0.
pub fn ln_gamma(x: &Real) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln_gamma needs x > 0, got {}", x.to_sci_string(10))));
    }
    Ok(Real::from_float(x.as_float().clone().ln_gamma()))
}

/// Rising factorial (a)_n by running product.
pub fn pochhammer(a: &Real, n: u32) -> Real {
    let mut acc = Real::one(a.prec());
    for j in 0..n {
        acc *= &(a + f64::from(j));
    }
    acc
}
