//! Independent oracles for the special functions, the Mellin transform, the
//! direct sums and the coefficients. Each value is recomputed here by a
//! route that shares no code with the library routine under test, and the
//! result is also pinned to the frozen digits it produced.

use mbasym_core::asymptotics::{coeff_c, coeff_cprime, inverse_factorial_f, theorem1_term};
use mbasym_core::oracle::{partial_sum, tail_bound};
use mbasym_core::special::{bessel_i, bessel_j, digamma, gamma, hyp2f3_reg, ln_gamma, normalized_i};
use mbasym_core::verify::f_series;
use mbasym_core::{direct_sum, mellin_h, Params, PrecisionCtx, Real, SeriesKind};
use rug::Float;

const BITS: u32 = 200;

fn r(v: &str) -> Real {
    Real::parse(v, BITS).unwrap()
}

fn rel(a: &Real, b: &Real) -> f64 {
    ((a - b) / b).abs().to_f64()
}

/// Bernoulli numbers B_2..B_30 as exact fractions.
const BERNOULLI: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// ln Γ(x) by the Stirling series at x + 40, then the recurrence down.
fn stirling_ln_gamma(x: &Real) -> Real {
    let shift = 40.0;
    let z = x + shift;
    let mut v = (&z - 0.5) * z.ln() - &z + (Real::pi(BITS) * 2.0).ln() / 2.0;
    for (i, (num, den)) in BERNOULLI.iter().enumerate() {
        let k = (i + 1) as f64;
        v = v + Real::new(BITS, *num) / Real::new(BITS, *den) / (2.0 * k * (2.0 * k - 1.0)) / z.powi(2 * i as i32 + 1);
    }
    for j in 0..40 {
        v = v - (x + f64::from(j)).ln();
    }
    v
}

#[test]
fn gamma_by_recurrence_from_stirling() {
    let g17 = stirling_ln_gamma(&r("1.7")).exp();
    assert!(rel(&g17, &r("0.908638732853290449976819825407")) < 1e-29, "{}", g17.to_sci_string(32));
    let want = g17 * r("2.7") * r("1.7");
    let got = gamma(&r("3.7")).unwrap();
    assert!(rel(&got, &want) < 1e-29);
    assert!(rel(&got, &r("4.17065178379660316539360299862")) < 1e-29, "{}", got.to_sci_string(32));
}

#[test]
fn digamma_by_differences() {
    let w = 160;
    let x = Real::parse("5.5", w).unwrap();
    let h = Real::parse("1e-10", w).unwrap();
    let fd = (ln_gamma(&(&x + &h)).unwrap() - ln_gamma(&(&x - &h)).unwrap()) / (&h * 2.0);
    let got = digamma(&x).unwrap();
    assert!(rel(&got, &fd) < 1e-18);
    // ψ(11/2) = -γ̂ - 2 ln 2 + 2(1 + 1/3 + 1/5 + 1/7 + 1/9)
    let closed = -Real::euler_gamma(w) - Real::ln2(w) * 2.0
        + (Real::one(w) + 1.0 / Real::new(w, 3.0) + 1.0 / Real::new(w, 5.0) + 1.0 / Real::new(w, 7.0) + 1.0 / Real::new(w, 9.0))
            * 2.0;
    assert!(rel(&got, &closed) < 1e-45);
    assert!(rel(&got, &Real::parse("1.61109314858175112373362684160", w).unwrap()) < 1e-29, "{}", got.to_sci_string(32));
}

#[test]
fn bessel_i1_of_two_by_series() {
    let mut term = Real::one(BITS);
    let mut sum = Real::zero(BITS);
    for k in 0..60u32 {
        if k > 0 {
            term = term / (f64::from(k) * f64::from(k + 1));
        }
        sum = sum + &term;
    }
    let got = bessel_i(&r("1"), &r("2")).unwrap();
    assert!(rel(&got, &sum) < 1e-55);
    assert!(rel(&got, &r("1.59063685463732906338225442499966")) < 1e-32, "{}", got.to_sci_string(34));
}

#[test]
fn half_order_bessel_is_trigonometric() {
    for x in ["1", "2", "5"] {
        let x = r(x);
        let want = (2.0 / (Real::pi(BITS) * &x)).sqrt() * x.sin();
        assert!(rel(&bessel_j(&r("0.5"), &x).unwrap(), &want) < 1e-55);
    }
}

#[test]
fn hyp2f3_by_partial_sums() {
    // 2F3r(1,1; 2, 3/2, 2; 1/4) = Σ n!² /(Γ(2+n) Γ(3/2+n) Γ(2+n) n!) (1/4)^n
    let chi = r("0.25");
    let sqrt_pi = Real::pi(BITS).sqrt();
    let mut sum = Real::zero(BITS);
    let mut fact = Real::one(BITS);
    for n in 0..60u32 {
        let nf = f64::from(n);
        if n > 0 {
            fact = fact * nf;
        }
        let g2 = &fact * (nf + 1.0);
        // Γ(3/2+n) = √π (2n+1)!!/2^{n+1}
        let mut dbl = Real::one(BITS);
        for j in 0..=n {
            dbl = dbl * (2.0 * f64::from(j) + 1.0);
        }
        let g32 = &sqrt_pi * dbl / Real::exp2(&Real::new(BITS, nf + 1.0));
        sum = sum + &fact * chi.powi(n as i32) / (&g2 * &g2 * g32);
    }
    let got = hyp2f3_reg(&r("1"), &r("1"), &r("2"), &r("1.5"), &r("2"), &chi).unwrap();
    assert!(rel(&got, &sum) < 1e-50);
    assert!(rel(&got, &r("1.17645387921615290536224848353930")) < 1e-32, "{}", got.to_sci_string(34));
}

/// ∫ x^{s-1} x^γ J_ν(bx)(1+x²)^{-μ} dx by Simpson's rule, x = t³ on [0,1],
/// plain on [1, 200]; the neglected tail is below 2·10⁻¹¹.
fn mellin_quadrature(s: f64, gamma_: f64, nu: f64, mu: f64, b: f64) -> f64 {
    let f = |x: f64| -> f64 {
        let j = bessel_j(&Real::new(64, nu), &Real::new(64, b * x)).unwrap().to_f64();
        x.powf(s - 1.0 + gamma_) * j * (1.0 + x * x).powf(-mu)
    };
    let simpson = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize| -> f64 {
        let h = (hi - lo) / n as f64;
        let mut acc = g(lo) + g(hi);
        for i in 1..n {
            acc += g(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    };
    let near = simpson(&|t: f64| if t == 0.0 { 0.0 } else { 3.0 * t * t * f(t * t * t) }, 0.0, 1.0, 2000);
    let far = simpson(&f, 1.0, 200.0, 100_000);
    near + far
}

#[test]
fn mellin_transform_by_quadrature() {
    let q = mellin_quadrature(1.3, 0.5, 1.0 / 3.0, 3.0, 1.0);
    assert!((q - 0.175_316_968_3).abs() < 1e-9, "{q}");
    let p = Params::parse("1", "1", "1/2", "1/3", "3", BITS).unwrap();
    let h = mellin_h(&p, &r("1.3")).unwrap().to_f64();
    assert!(((h - q) / q).abs() < 1e-8, "{h} vs {q}");
}

/// J_0 for x ≥ 30 by the Hankel expansion in double precision.
fn j0_hankel(x: f64) -> f64 {
    let (mut p, mut q) = (1.0, 0.0);
    let mut a = 1.0;
    for k in 1..12 {
        let odd = (2 * k - 1) as f64;
        a *= -odd * odd / (8.0 * k as f64 * x);
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
    }
    let phase = x - std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * phase.cos() - q * phase.sin())
}

#[test]
fn direct_sum_vs_double_precision_partial_sum() {
    // γ = 0, ν = 0, μ = 2, a = b = 1: Σ J_0(n)/(n²+1)²; the tail past 10⁶ is below 10⁻²¹.
    let mut coarse = 0.0f64;
    for n in (1..=1_000_000u64).rev() {
        let x = n as f64;
        let j = if n < 30 { bessel_j(&Real::new(64, 0.0), &Real::new(64, x)).unwrap().to_f64() } else { j0_hankel(x) };
        coarse += j / ((x * x + 1.0) * (x * x + 1.0));
    }
    assert!((coarse - 0.196_249_552_117_825_7).abs() < 1e-15, "{coarse}");
    let bits = PrecisionCtx::new(50).unwrap().bits();
    let p = Params::parse("1", "1", "0", "0", "2", bits).unwrap();
    let d = direct_sum(&p, SeriesKind::JSeries, &Real::new(bits, 1e-30)).unwrap();
    assert!((d.value.to_f64() - coarse).abs() < 1e-12);
    let frozen = Real::parse("0.196249552117825735462793616767", bits).unwrap();
    assert!((&d.value - &frozen).abs().to_f64() < 1e-29);
}

#[test]
fn tail_bound_dominates_measured_tail() {
    let bits = PrecisionCtx::new(30).unwrap().bits();
    let p = Params::parse("2", "1", "1/2", "1/3", "3", bits).unwrap();
    for n in [100u64, 1000] {
        let measured = partial_sum(&p, SeriesKind::JSeries, n + 1, 100 * n).unwrap().abs();
        // Beyond 100N the bound itself covers the rest.
        let rest = tail_bound(&p, SeriesKind::JSeries, 100 * n).unwrap();
        let bound = tail_bound(&p, SeriesKind::JSeries, n).unwrap();
        assert!(bound >= measured + rest, "N={n}");
    }
}

#[test]
fn zeroth_algebraic_term_from_mpfr_zeta() {
    let p = Params::parse("3", "1", "1/2", "1/3", "3", BITS).unwrap();
    let arg = Float::with_val(BITS + 32, -5) / 6u32;
    let z = Real::from_float(Float::with_val(BITS + 32, arg).zeta()).with_prec(BITS);
    let want = p.algebraic_prefactor().unwrap() * z;
    assert!(rel(&theorem1_term(&p, 0).unwrap(), &want) < 1e-55);
}

#[test]
fn c_coefficients_by_fitting_g1() {
    // G_1(s)/(2^{1-μ}Γ(s+μ)) - 1 = C_1/u + C_2/(u(u-1)) + ..., u = s+μ-1.
    let p = Params::parse("8", "1", "0", "0", "4", BITS).unwrap();
    let (m, mu) = (0.0, 4.0);
    let mut rows = Vec::new();
    for s in [50.0, 100.0, 200.0] {
        let sr = Real::new(BITS, s);
        let lg = ln_gamma(&(&sr + 1.0)).unwrap() + ln_gamma(&(&sr / 2.0 + (mu - m))).unwrap()
            - ln_gamma(&(&sr / 2.0 + (1.0 - m))).unwrap()
            - ln_gamma(&(&sr + mu)).unwrap()
            - Real::ln2(BITS) * (1.0 - mu);
        let y = (lg.exp() - 1.0).to_f64();
        let u = s + mu - 1.0;
        rows.push((1.0 / u, 1.0 / (u * (u - 1.0)), y));
    }
    // Least squares in the two basis functions.
    let (mut a11, mut a12, mut a22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x1, x2, y) in &rows {
        a11 += x1 * x1;
        a12 += x1 * x2;
        a22 += x2 * x2;
        b1 += x1 * y;
        b2 += x2 * y;
    }
    let det = a11 * a22 - a12 * a12;
    let c1 = (b1 * a22 - b2 * a12) / det;
    let c2 = (a11 * b2 - a12 * b1) / det;
    let c1_closed = coeff_c(&p, 0, 1).unwrap().to_f64();
    let c2_closed = coeff_c(&p, 0, 2).unwrap().to_f64();
    assert!((c1 - c1_closed).abs() / c1_closed.abs() < 1e-3, "{c1} vs {c1_closed}");
    assert!((c2 - c2_closed).abs() / c2_closed.abs() < 5e-2, "{c2} vs {c2_closed}");
}

#[test]
fn a_coefficients_and_their_resummation() {
    // a_n(s) = (m-s/2)_n/(1-μ+m-s/2)_n = 1 + A_1(n)/u + A_2(n)/(u(u-1)) + O(s⁻³).
    let (m, mu, n) = (0.0f64, 4.0f64, 3u32);
    let a1 = 2.0 * (1.0 - mu) * f64::from(n);
    let a2 = 2.0 * (1.0 - mu) * ((2.0 * m + 1.0 - mu) * f64::from(n) + (2.0 - mu) * f64::from(n * (n - 1)));
    let err = |s: f64| {
        let top = m - s / 2.0;
        let bot = 1.0 - mu + m - s / 2.0;
        let mut an = 1.0;
        for j in 0..n {
            an *= (top + f64::from(j)) / (bot + f64::from(j));
        }
        let u = s + mu - 1.0;
        (an - 1.0 - a1 / u - a2 / (u * (u - 1.0))).abs()
    };
    let ratio = err(100.0) / err(200.0);
    assert!((ratio - 8.0).abs() < 0.2 * 8.0, "{ratio}");

    // C'_j 𝓘 = Σ χⁿ A_j(n)/((1+ν)_n n!).
    let p = Params::parse("8", "1.5", "1/3", "-1/3", "7/2", BITS).unwrap();
    let (m, mu) = (0.0, 3.5);
    let chi = p.chi();
    let mut c = Real::one(BITS);
    let (mut s1, mut s2) = (Real::zero(BITS), Real::zero(BITS));
    for k in 1..80u32 {
        let kf = f64::from(k);
        c = c * &chi / ((&p.nu + kf) * kf);
        s1 = s1 + &c * (2.0 * (1.0 - mu) * kf);
        s2 = s2 + &c * (2.0 * (1.0 - mu) * ((2.0 * m + 1.0 - mu) * kf + (2.0 - mu) * kf * (kf - 1.0)));
    }
    let i = normalized_i(&p.nu, &p.b).unwrap();
    assert!(rel(&(coeff_cprime(&p, 0, 1).unwrap() * &i), &s1) < 1e-50);
    assert!(rel(&(coeff_cprime(&p, 0, 2).unwrap() * &i), &s2) < 1e-50);
}

#[test]
fn inverse_factorial_error_scaling() {
    let p = Params::parse("8", "1", "0", "0", "4", BITS).unwrap();
    let err = |s: f64| {
        let sr = Real::new(BITS, s);
        let exact = f_series(&p, 0, &sr).unwrap();
        (inverse_factorial_f(&p, 0, &sr, 2).unwrap() - exact).abs()
    };
    let ratio = (err(100.0) / err(200.0)).to_f64();
    assert!((ratio - 8.0).abs() < 0.2 * 8.0, "{ratio}");
}
