//! Working-precision real scalars.
//!
//! [`Real`] wraps an MPFR float. Binary operations round once to the smaller
//! of the two operand precisions, so a value computed from mixed inputs never
//! claims more digits than its least precise input carried.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::{Constant, Round};
use rug::Float;

use crate::error::{Error, Result};

/// log2(10).
pub const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Decimal precision requested by a caller, plus hidden guard digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionCtx {
    digits: u32,
    guard_digits: u32,
}

impl PrecisionCtx {
    /// Smallest precision at which the table reproductions are meaningful.
    pub const MIN_DIGITS: u32 = 20;
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const DEFAULT_GUARD: u32 = 10;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "{digits} digits requested, at least {} required",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionCtx { digits, guard_digits: Self::DEFAULT_GUARD })
    }

    pub fn with_guard(mut self, guard_digits: u32) -> Self {
        self.guard_digits = guard_digits;
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Binary precision covering `digits + guard_digits` decimal digits.
    pub fn bits(&self) -> u32 {
        (f64::from(self.digits + self.guard_digits) * LOG2_10).ceil() as u32
    }

    pub fn real(&self, v: f64) -> Real {
        Real::new(self.bits(), v)
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(self.bits(), v)
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse(s, self.bits())
    }
}

impl Default for PrecisionCtx {
    fn default() -> Self {
        PrecisionCtx { digits: Self::DEFAULT_DIGITS, guard_digits: Self::DEFAULT_GUARD }
    }
}

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn new(bits: u32, v: f64) -> Real {
        Real(Float::with_val(bits, v))
    }

    pub fn from_i64(bits: u32, v: i64) -> Real {
        Real(Float::with_val(bits, v))
    }

    pub fn from_u64(bits: u32, v: u64) -> Real {
        Real(Float::with_val(bits, v))
    }

    pub fn from_float(f: Float) -> Real {
        Real(f)
    }

    pub fn zero(bits: u32) -> Real {
        Real::new(bits, 0.0)
    }

    pub fn one(bits: u32) -> Real {
        Real::new(bits, 1.0)
    }

    pub fn pi(bits: u32) -> Real {
        Real(Float::with_val(bits, Constant::Pi))
    }

    /// Euler–Mascheroni constant.
    pub fn euler_gamma(bits: u32) -> Real {
        Real(Float::with_val(bits, Constant::Euler))
    }

    pub fn ln2(bits: u32) -> Real {
        Real(Float::with_val(bits, Constant::Log2))
    }

    /// Parses a decimal literal (`0.25`, `-1e-3`) or a rational `p/q`.
    pub fn parse(s: &str, bits: u32) -> Result<Real> {
        let s = s.trim();
        let parse_one = |t: &str| -> Result<Real> {
            let parsed = Float::parse(t.trim())
                .map_err(|e| Error::InvalidParams(format!("cannot parse {t:?}: {e}")))?;
            Ok(Real(Float::with_val(bits, parsed)))
        };
        match s.split_once('/') {
            Some((num, den)) => {
                let den = parse_one(den)?;
                if den.is_zero() {
                    return Err(Error::InvalidParams(format!("zero denominator in {s:?}")));
                }
                Ok(parse_one(num)? / den)
            }
            None => parse_one(s),
        }
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Copy rounded (or exactly widened) to `bits`.
    pub fn with_prec(&self, bits: u32) -> Real {
        Real(Float::with_val(bits, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn recip(&self) -> Real {
        Real(self.0.clone().recip())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.prec()));
        (Real(s), Real(c))
    }

    /// `self^e` for a real exponent; the base should be positive.
    pub fn powf(&self, e: &Real) -> Real {
        let p = self.prec().min(e.prec());
        Real(Float::with_val(p, rug::ops::Pow::pow(&self.0, &e.0)))
    }

    pub fn powi(&self, e: i32) -> Real {
        Real(Float::with_val(self.prec(), rug::ops::Pow::pow(&self.0, e)))
    }

    /// 2^e at the precision of `e`.
    pub fn exp2(e: &Real) -> Real {
        Real(e.0.clone().exp2())
    }

    pub fn floor(&self) -> Real {
        Real(self.0.clone().floor())
    }

    pub fn round(&self) -> Real {
        Real(self.0.clone().round())
    }

    pub fn to_i64(&self) -> Option<i64> {
        let r = self.0.to_f64().round();
        if r.is_finite() && r.abs() < 9.0e15 {
            Some(r as i64)
        } else {
            None
        }
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Nearest integer and the distance to it.
    pub fn nearest_integer(&self) -> (Real, Real) {
        let r = self.round();
        let d = (self - &r).abs();
        (r, d)
    }

    /// `Some(k)` when `self` lies within `rel_tol * max(1, |self|)` of the
    /// integer `k`.
    pub fn near_integer(&self, rel_tol: f64) -> Option<i64> {
        let (r, d) = self.nearest_integer();
        let scale = self.abs().to_f64().max(1.0);
        if d.to_f64() <= rel_tol * scale {
            r.to_i64()
        } else {
            None
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `self += rhs` rounded to the precision of `self`, for accumulators that
    /// deliberately carry more bits than their summands.
    pub fn accumulate(&mut self, rhs: &Real) {
        self.0 += &rhs.0;
    }

    /// `self -= rhs` rounded to the precision of `self`.
    pub fn deplete(&mut self, rhs: &Real) {
        self.0 -= &rhs.0;
    }

    /// log2|self| as an f64, without overflow; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.0.to_f64_exp();
        m.abs().log2() + f64::from(e)
    }

    /// sin(πx), exactly zero at integers and exactly ±1 at half-integers.
    pub fn sin_pi(&self) -> Real {
        let bits = self.prec();
        let r = self.reduce_mod2();
        let two_r = Real(Float::with_val(bits + 2, &r.0 * 2u32));
        if let Some(k) = two_r.to_i64().filter(|_| two_r.is_integer()) {
            return match k.rem_euclid(4) {
                1 => Real::one(bits),
                3 => -Real::one(bits),
                _ => Real::zero(bits),
            };
        }
        let arg = Real::pi(bits + 8) * &r.with_prec(bits + 8);
        arg.sin().with_prec(bits)
    }

    /// cos(πx), exactly zero at half-integers and exactly ±1 at integers.
    pub fn cos_pi(&self) -> Real {
        let bits = self.prec();
        let r = self.reduce_mod2();
        let two_r = Real(Float::with_val(bits + 2, &r.0 * 2u32));
        if let Some(k) = two_r.to_i64().filter(|_| two_r.is_integer()) {
            return match k.rem_euclid(4) {
                0 => Real::one(bits),
                2 => -Real::one(bits),
                _ => Real::zero(bits),
            };
        }
        let arg = Real::pi(bits + 8) * &r.with_prec(bits + 8);
        arg.cos().with_prec(bits)
    }

    /// x - 2·round(x/2), exact in binary floating point.
    fn reduce_mod2(&self) -> Real {
        let half = Real(Float::with_val(self.prec(), &self.0 / 2u32));
        let k = half.round();
        let twice = Real(Float::with_val(self.prec() + 2, &k.0 * 2u32));
        Real(Float::with_val(self.prec(), &self.0 - &twice.0))
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.08383e-3`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix_round(10, Some(sig.max(1)), Round::Nearest)
    }

    /// Decimal mantissa/exponent pair with `sig` significant digits:
    /// `(1.08383, -3)` for 1.08383e-3.
    pub fn to_decimal_parts(&self, sig: usize) -> (String, i32) {
        let s = self.to_sci_string(sig);
        if s == "0" {
            return (format!("{:.*}", sig.saturating_sub(1), 0.0), 0);
        }
        let (mant, exp) = match s.split_once('e') {
            Some((m, e)) => (m.to_string(), e.parse::<i32>().unwrap_or(0)),
            None => (s.clone(), 0),
        };
        // MPFR prints "d.ddd" or, for small exponents, plain "ddd.dd";
        // normalise to exactly `sig` digits and a one-digit integer part.
        let negative = mant.starts_with('-');
        let body = mant.trim_start_matches(['-', '+']);
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        let all: Vec<char> = int_part.chars().chain(frac_part.chars()).filter(|c| c.is_ascii_digit()).collect();
        let lead = all.iter().take_while(|&&c| c == '0').count();
        let exp = exp + int_part.len() as i32 - 1 - lead as i32;
        let mut digits: Vec<char> = all[lead..].to_vec();
        digits.resize(sig.max(1), '0');
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push(digits[0]);
        if sig > 1 {
            out.push('.');
            out.extend(&digits[1..sig]);
        }
        (out, exp)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = match f.precision() {
            Some(p) => p,
            None => (f64::from(self.prec()) / LOG2_10).floor() as usize,
        };
        f.write_str(&self.to_sci_string(sig))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({}, {} bits)", self.to_sci_string(20), self.prec())
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}

macro_rules! real_binop {
    ($Op:ident, $op:ident, $OpAssign:ident, $op_assign:ident) => {
        impl $Op<&Real> for &Real {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real {
                let p = self.prec().min(rhs.prec());
                Real(Float::with_val(p, $Op::$op(&self.0, &rhs.0)))
            }
        }
        impl $Op<Real> for Real {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real {
                $Op::$op(&self, &rhs)
            }
        }
        impl $Op<&Real> for Real {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<Real> for &Real {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real {
                $Op::$op(self, &rhs)
            }
        }
        impl $Op<f64> for &Real {
            type Output = Real;
            fn $op(self, rhs: f64) -> Real {
                Real(Float::with_val(self.prec(), $Op::$op(&self.0, rhs)))
            }
        }
        impl $Op<f64> for Real {
            type Output = Real;
            fn $op(self, rhs: f64) -> Real {
                $Op::$op(&self, rhs)
            }
        }
        impl $Op<&Real> for f64 {
            type Output = Real;
            fn $op(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.prec(), $Op::$op(self, &rhs.0)))
            }
        }
        impl $Op<Real> for f64 {
            type Output = Real;
            fn $op(self, rhs: Real) -> Real {
                $Op::$op(self, &rhs)
            }
        }
        impl $Op<i64> for &Real {
            type Output = Real;
            fn $op(self, rhs: i64) -> Real {
                let r = Float::with_val(64, rhs);
                Real(Float::with_val(self.prec(), $Op::$op(&self.0, &r)))
            }
        }
        impl $Op<i64> for Real {
            type Output = Real;
            fn $op(self, rhs: i64) -> Real {
                $Op::$op(&self, rhs)
            }
        }
        impl $OpAssign<&Real> for Real {
            fn $op_assign(&mut self, rhs: &Real) {
                *self = $Op::$op(&*self, rhs);
            }
        }
        impl $OpAssign<Real> for Real {
            fn $op_assign(&mut self, rhs: Real) {
                *self = $Op::$op(&*self, &rhs);
            }
        }
        impl $OpAssign<f64> for Real {
            fn $op_assign(&mut self, rhs: f64) {
                self.0.$op_assign(rhs);
            }
        }
        impl $OpAssign<i64> for Real {
            fn $op_assign(&mut self, rhs: i64) {
                *self = $Op::$op(&*self, rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);
