//! Properties of the exact polynomial layer against constructed oracles.

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use sasaki_core::exactnum::{
    count_roots, deflate, exp_poly_integral, linear_factor, rat, rational_to_f64, sturm_isolate,
    RationalPolynomial,
};

/// A polynomial with known real roots: rational roots with multiplicities,
/// times irreducible quadratics `b² − k` (roots `±√k`) and `b² + 1`.
#[derive(Debug, Clone)]
struct Constructed {
    rational: Vec<(BigRational, usize)>,
    square_roots: Vec<i64>,
    complex_pairs: usize,
    scale: BigRational,
}

impl Constructed {
    fn poly(&self) -> RationalPolynomial {
        let mut p = RationalPolynomial::constant(self.scale.clone());
        for (r, m) in &self.rational {
            p = &p * &linear_factor(r).pow(*m as u32);
        }
        for k in &self.square_roots {
            p = &p * &RationalPolynomial::from_ints(&[-k, 0, 1]);
        }
        for _ in 0..self.complex_pairs {
            p = &p * &RationalPolynomial::from_ints(&[1, 0, 1]);
        }
        p
    }

    /// Real roots as `f64`, with multiplicity.
    fn real_roots(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = self.rational.iter().map(|(r, m)| (rational_to_f64(r), *m)).collect();
        for k in &self.square_roots {
            let s = (*k as f64).sqrt();
            out.push((s, 1));
            out.push((-s, 1));
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    }
}

/// Distinct rationals plus non-square positive integers, all distinct roots.
fn constructed() -> impl Strategy<Value = Constructed> {
    (
        prop::collection::btree_set((-40i64..40, 1i64..7), 0..5),
        prop::collection::vec(1usize..4, 5),
        prop::collection::btree_set(prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13]), 0..3),
        0usize..2,
        (1i64..9, 1i64..5, any::<bool>()),
    )
        .prop_map(|(rs, mults, sq, cx, (sn, sd, neg))| {
            let mut seen = std::collections::BTreeSet::new();
            let rational: Vec<(BigRational, usize)> = rs
                .into_iter()
                .map(|(n, d)| rat(n, d))
                .filter(|r| seen.insert(r.clone()))
                .zip(mults)
                .collect();
            let scale = rat(if neg { -sn } else { sn }, sd);
            Constructed { rational, square_roots: sq.into_iter().collect(), complex_pairs: cx, scale }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isolation_matches_constructed_roots(c in constructed()) {
        let p = c.poly();
        prop_assume!(!p.degree().is_none_or(|d| d == 0));
        let expected = c.real_roots();
        let found = sturm_isolate(&p, None, None, 20).unwrap();
        prop_assert_eq!(found.len(), expected.len());
        for (root, (x, m)) in found.iter().zip(&expected) {
            prop_assert_eq!(root.multiplicity, *m);
            prop_assert!((root.approx() - x).abs() < 1e-12, "{} vs {}", root.decimal, x);
            let is_rational = c.rational.iter().any(|(r, _)| rational_to_f64(r) == *x);
            prop_assert_eq!(root.is_rational(), is_rational);
        }
    }

    #[test]
    fn count_in_window_matches_oracle(c in constructed(), a in -50i64..50, w in 1i64..60, den in 1i64..4) {
        let p = c.poly();
        prop_assume!(!p.degree().is_none_or(|d| d == 0));
        let (lo, hi) = (rat(a, den), rat(a + w, den));
        let (flo, fhi) = (rational_to_f64(&lo), rational_to_f64(&hi));
        let oracle = c.real_roots().iter().filter(|(x, _)| *x > flo && *x < fhi).count();
        prop_assert_eq!(count_roots(&p, Some(&lo), Some(&hi)).unwrap(), oracle);
    }

    #[test]
    fn deflate_round_trip(c in constructed(), extra in 1usize..4, n in -9i64..9, d in 1i64..5) {
        let base = c.poly();
        let root = rat(n, d);
        prop_assume!(!base.eval(&root).is_zero());
        let p = &base * &linear_factor(&root).pow(extra as u32);
        let q = deflate(&p, &root, extra).unwrap();
        prop_assert_eq!(&(&q * &linear_factor(&root).pow(extra as u32)), &p);
        prop_assert!(deflate(&p, &root, extra + 1).is_err());
    }

    #[test]
    fn exp_integral_at_zero_is_exact_moment(coeffs in prop::collection::vec((-30i64..30, 1i64..9), 1..9)) {
        let q = RationalPolynomial::new(coeffs.iter().map(|(n, d)| rat(*n, *d)).collect());
        let exact = rational_to_f64(&q.definite_integral(&rat(-1, 1), &rat(1, 1)));
        let v = exp_poly_integral(&q, 0.0);
        prop_assert!((v - exact).abs() <= 1e-14 * exact.abs().max(1.0));
    }

    #[test]
    fn exp_integral_matches_quadrature(coeffs in prop::collection::vec(-20i64..20, 1..8), a in -50.0f64..50.0) {
        let q = RationalPolynomial::from_ints(&coeffs);
        prop_assume!(!q.is_zero());
        let real = q.to_real();
        let f = |z: f64| (-a * z).exp() * real.eval(&z);
        let oracle = gauss_legendre(&f, -1.0, 1.0);
        let v = exp_poly_integral(&q, a);
        let scale = (a.abs()).exp() * coeffs.iter().map(|c| c.abs() as f64).sum::<f64>();
        prop_assert!((v - oracle).abs() <= 1e-10 * scale.max(1.0), "a = {a}: {v} vs {oracle}");
    }
}

/// Composite Gauss–Legendre (5 points, 400 panels); plenty for degree < 8
/// times `e^{50 z}`.
fn gauss_legendre(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const X: [f64; 5] = [0.0, -0.538_469_310_105_683, 0.538_469_310_105_683, -0.906_179_845_938_664, 0.906_179_845_938_664];
    const W: [f64; 5] = [
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
        0.236_926_885_056_189,
    ];
    let n = 400;
    let h = (hi - lo) / n as f64;
    (0..n)
        .map(|i| {
            let c = lo + (i as f64 + 0.5) * h;
            X.iter().zip(W).map(|(x, w)| w * f(c + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

#[test]
fn zero_polynomial_is_rejected() {
    assert!(sturm_isolate(&RationalPolynomial::zero(), None, None, 10).is_err());
    assert!(count_roots(&RationalPolynomial::zero(), None, None).is_err());
}
