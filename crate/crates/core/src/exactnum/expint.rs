//! Integrals of `e^{-az} q(z)` for polynomial `q`.
//!
//! Two evaluation schemes on the reference interval `[-1, 1]`:
//! * Maclaurin series in `a`, `Σ (-a)^n/n! ∫ z^n q`, used while
//!   `|a| < max(1e-3, deg q + 1)`. The closed form divides by `a^{j+1}` for
//!   every derivative `q^{(j)}`, so it loses all accuracy once `|a|` drops
//!   below the degree.
//! * Closed form by repeated integration by parts,
//!   `∫ e^{-at} q = -e^{-at} Σ_j q^{(j)}(t)/a^{j+1}`, whose terms shrink
//!   geometrically once `|a| > deg q`.

use super::poly::{Polynomial, RationalPolynomial, RealPolynomial};

/// Below this `|a|` the series is always used, whatever the degree.
pub const SERIES_THRESHOLD: f64 = 1e-3;

const MAX_TERMS: usize = 400;

fn series_threshold(deg: usize) -> f64 {
    SERIES_THRESHOLD.max(deg as f64 + 1.0)
}

/// `∫_{-1}^{1} z^k dz`.
fn unit_moment(k: usize) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        2.0 / (k as f64 + 1.0)
    }
}

fn series(q: &RealPolynomial, a: f64) -> f64 {
    let c = q.coeffs();
    let moment = |n: usize| -> f64 {
        c.iter()
            .enumerate()
            .map(|(k, ck)| ck * unit_moment(n + k))
            .sum()
    };
    let mag: f64 = c.iter().map(|x| x.abs()).sum::<f64>() * 2.0;
    let mut sum = 0.0;
    let mut factor = 1.0; // (-a)^n / n!
    for n in 0..MAX_TERMS {
        let term = factor * moment(n);
        sum += term;
        if n as f64 > a.abs() && (factor.abs() * mag) <= 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
        if factor == 0.0 {
            break;
        }
        factor *= -a / (n as f64 + 1.0);
    }
    sum
}

/// `S(t) = Σ_j q^{(j)}(t) / a^{j+1}`, so that the antiderivative is
/// `-e^{-at} S(t)`.
fn ibp_sum(q: &RealPolynomial, a: f64, t: f64) -> f64 {
    let mut sum = 0.0;
    let mut d = q.clone();
    let mut inv = 1.0 / a;
    while !d.is_zero() {
        sum += d.eval(&t) * inv;
        inv /= a;
        d = d.derivative();
    }
    sum
}

/// `e^{-|a|} ∫_{-1}^{1} e^{-az} q(z) dz`, finite for every finite `a`.
pub fn exp_poly_integral_scaled_real(q: &RealPolynomial, a: f64) -> f64 {
    let deg = q.degree().unwrap_or(0);
    if a.abs() < series_threshold(deg) {
        return series(q, a) * (-a.abs()).exp();
    }
    let s_lo = ibp_sum(q, a, -1.0);
    let s_hi = ibp_sum(q, a, 1.0);
    // I = e^{a} S(-1) - e^{-a} S(1)
    if a > 0.0 {
        s_lo - (-2.0 * a).exp() * s_hi
    } else {
        (2.0 * a).exp() * s_lo - s_hi
    }
}

/// `∫_{-1}^{1} e^{-az} q(z) dz` for a real-coefficient `q`.
pub fn exp_poly_integral_real(q: &RealPolynomial, a: f64) -> f64 {
    let deg = q.degree().unwrap_or(0);
    if a.abs() < series_threshold(deg) {
        return series(q, a);
    }
    exp_poly_integral_scaled_real(q, a) * a.abs().exp()
}

/// `∫_{-1}^{1} e^{-az} q(z) dz`.
pub fn exp_poly_integral(q: &RationalPolynomial, a: f64) -> f64 {
    exp_poly_integral_real(&q.to_real(), a)
}

/// `e^{-|a|} ∫_{-1}^{1} e^{-az} q(z) dz`.
pub fn exp_poly_integral_scaled(q: &RationalPolynomial, a: f64) -> f64 {
    exp_poly_integral_scaled_real(&q.to_real(), a)
}

/// `q(c + h s)` as a polynomial in `s`.
fn affine_compose(q: &RealPolynomial, c: f64, h: f64) -> RealPolynomial {
    let lin = Polynomial::linear(c, h);
    let mut acc = RealPolynomial::zero();
    for coef in q.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &RealPolynomial::constant(*coef);
    }
    acc
}

/// `∫_{lo}^{hi} e^{-az} q(z) dz`, by an affine change of variables onto
/// `[-1, 1]`.
pub fn exp_poly_integral_between(q: &RealPolynomial, a: f64, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return 0.0;
    }
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let shifted = affine_compose(q, c, h);
    (-a * c).exp() * h * exp_poly_integral_real(&shifted, a * h)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exactnum::field::rat;

    /// Adaptive Simpson quadrature, the reference oracle. `rel` is relative
    /// to the largest sampled `|f|`.
    pub fn simpson(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel: f64) -> f64 {
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = f(lm);
            let frm = f(rm);
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            let delta = left + right - whole;
            if depth == 0 || delta.abs() <= 15.0 * tol {
                left + right + delta / 15.0
            } else {
                rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                    + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
            }
        }
        let fa = f(lo);
        let fb = f(hi);
        let fm = f(0.5 * (lo + hi));
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        let peak = (0..=64)
            .map(|i| f(lo + (hi - lo) * i as f64 / 64.0).abs())
            .fold(0.0, f64::max);
        rec(f, lo, hi, fa, fm, fb, whole, rel * peak.max(1e-300) * (hi - lo), 40)
    }

    #[test]
    fn trivial_values() {
        let one = RationalPolynomial::from_ints(&[1]);
        let z = RationalPolynomial::from_ints(&[0, 1]);
        assert_eq!(exp_poly_integral(&one, 0.0), 2.0);
        assert_eq!(exp_poly_integral(&z, 0.0), 0.0);
        let v = exp_poly_integral(&one, 1.0);
        assert!((v - 2.350_402_387_287_602_8).abs() < 1e-15);
    }

    #[test]
    fn matches_exact_moment_at_zero() {
        let q = RationalPolynomial::new(vec![rat(3, 7), rat(-5, 2), rat(11, 3), rat(1, 9), rat(-4, 1)]);
        let exact = q.definite_integral(&rat(-1, 1), &rat(1, 1));
        let v = exp_poly_integral(&q, 0.0);
        assert!((v - crate::exactnum::field::rational_to_f64(&exact)).abs() < 1e-15);
    }

    #[test]
    fn both_regimes_agree_with_quadrature() {
        let q = RealPolynomial::new(vec![1.5, -2.0, 0.25, 3.0, -1.0, 0.5, 0.0, 2.0, -0.75]);
        for &a in &[-40.0, -9.5, -8.9, -3.0, -1e-4, 0.0, 1e-6, 0.7, 5.0, 9.1, 25.0] {
            let f = |z: f64| (-a * z).exp() * q.eval(&z);
            let oracle = simpson(&f, -1.0, 1.0, 1e-13);
            let v = exp_poly_integral_real(&q, a);
            assert!(
                (v - oracle).abs() <= 1e-10 * oracle.abs().max(1.0),
                "a = {a}: {v} vs {oracle}"
            );
        }
    }

    #[test]
    fn scaled_survives_huge_parameters() {
        let q = RealPolynomial::new(vec![1.0, -1.0]);
        let big = exp_poly_integral_scaled_real(&q, 1.0e6);
        assert!(big.is_finite() && big > 0.0);
        let neg = exp_poly_integral_scaled_real(&q, -1.0e6);
        assert!(neg.is_finite());
    }

    #[test]
    fn sub_interval_matches_quadrature() {
        let q = RealPolynomial::new(vec![0.5, 1.0, -2.0, 0.3]);
        for &(a, lo, hi) in &[(2.5, -1.0, 0.3), (-7.0, -0.2, 0.9), (1e-5, -1.0, -0.5)] {
            let f = |z: f64| (-a * z).exp() * q.eval(&z);
            let oracle = simpson(&f, lo, hi, 1e-13);
            let v = exp_poly_integral_between(&q, a, lo, hi);
            assert!((v - oracle).abs() <= 1e-11 * oracle.abs().max(1.0));
        }
    }
}
