//! Real root isolation over the rationals.
//!
//! The pipeline is square-free decomposition (Yun), Sturm sequences per
//! square-free factor, bisection down to isolating brackets, rational root
//! detection, and bisection refinement to a fixed number of decimal places.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decimal::to_decimal;
use super::poly::RationalPolynomial;
use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: u32 = 40;

/// A real root of a rational polynomial, certified by a Sturm count.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    /// Half-open bracket `(lo, hi]` holding exactly this root.
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
    /// Set when the root is rational.
    pub exact: Option<BigRational>,
    /// Decimal value with `digits` places; `|decimal − root| < 10^-digits`.
    pub decimal: String,
    pub digits: u32,
}

impl IsolatedRoot {
    pub fn from_exact(x: BigRational, multiplicity: usize, digits: u32) -> Self {
        IsolatedRoot {
            lo: x.clone(),
            hi: x.clone(),
            multiplicity,
            decimal: to_decimal(&x, digits),
            exact: Some(x),
            digits,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    /// Best rational approximation available: the exact value or the
    /// bracket midpoint.
    pub fn value(&self) -> BigRational {
        match &self.exact {
            Some(x) => x.clone(),
            None => (&self.lo + &self.hi) / BigRational::from_integer(2.into()),
        }
    }

    pub fn approx(&self) -> f64 {
        super::field::rational_to_f64(&self.value())
    }

    /// Error bound of `decimal`, as a string.
    pub fn error_bound(&self) -> String {
        if self.exact.is_some() {
            "0".to_string()
        } else {
            format!("1e-{}", self.digits)
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        self.value().cmp(&other.value())
    }
}

/// Square-free decomposition: `p = c · Π a_i^i` with each `a_i` square-free
/// and pairwise coprime. Returns the non-constant `(a_i, i)`.
pub fn square_free_decomposition(p: &RationalPolynomial) -> Result<Vec<(RationalPolynomial, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0)?;
    let c = dp.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        let nb = b.exact_div(&a)?;
        let nc = d.exact_div(&a)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_part(), i));
        }
        d = &nc - &nb.derivative();
        b = nb;
        i += 1;
    }
    Ok(out)
}

/// Sturm sequence of a square-free polynomial; each member scaled by a
/// positive constant to keep coefficients small.
pub fn sturm_sequence(p: &RationalPolynomial) -> Vec<RationalPolynomial> {
    let mut seq = vec![p.primitive_part()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d.primitive_part());
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push((-r).primitive_part());
    }
    seq
}

fn sign_variations(seq: &[RationalPolynomial], x: &BigRational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in seq {
        let sg = s.sign_at(x);
        if sg == 0 {
            continue;
        }
        if last != 0 && sg != last {
            count += 1;
        }
        last = sg;
    }
    count
}

/// Number of distinct roots in `(lo, hi]` of the polynomial whose Sturm
/// sequence is `seq`.
fn sturm_count(seq: &[RationalPolynomial], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(seq, lo).saturating_sub(sign_variations(seq, hi))
}

/// Cauchy bound: all roots lie strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &RationalPolynomial) -> BigRational {
    let lead = p.leading().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Number of distinct real roots in the open interval `(lo, hi)`; `None`
/// bounds mean infinity.
pub fn count_roots(
    p: &RationalPolynomial,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
) -> Result<usize> {
    let mut total = 0;
    for (factor, _) in square_free_decomposition(p)? {
        let seq = sturm_sequence(&factor);
        let bound = cauchy_bound(&factor);
        let a = lo.cloned().unwrap_or_else(|| -bound.clone());
        let b = hi.cloned().unwrap_or(bound);
        if a >= b {
            continue;
        }
        let mut c = sturm_count(&seq, &a, &b);
        if hi.is_some() && factor.sign_at(&b) == 0 {
            c -= 1;
        }
        total += c;
    }
    Ok(total)
}

/// All distinct real roots of `p` in the open interval `(lo, hi)`, sorted,
/// each refined to `digits` decimal places and tagged with its multiplicity.
pub fn sturm_isolate(
    p: &RationalPolynomial,
    lo: Option<&BigRational>,
    hi: Option<&BigRational>,
    digits: u32,
) -> Result<Vec<IsolatedRoot>> {
    let mut roots = Vec::new();
    for (factor, mult) in square_free_decomposition(p)? {
        let seq = sturm_sequence(&factor);
        let bound = cauchy_bound(&factor);
        let a = lo.cloned().unwrap_or_else(|| -bound.clone());
        let b = hi.cloned().unwrap_or(bound);
        if a >= b {
            continue;
        }
        for (l, h) in isolate_brackets(&seq, a, b.clone()) {
            if hi.is_some() && h == b && factor.sign_at(&h) == 0 {
                continue;
            }
            roots.push(refine(&factor, &seq, l, h, mult, digits));
        }
    }
    roots.sort_by(|x, y| x.cmp_value(y));
    Ok(roots)
}

fn isolate_brackets(
    seq: &[RationalPolynomial],
    a: BigRational,
    b: BigRational,
) -> Vec<(BigRational, BigRational)> {
    let mut out = Vec::new();
    let mut stack = vec![(a, b)];
    while let Some((l, h)) = stack.pop() {
        match sturm_count(seq, &l, &h) {
            0 => {}
            1 => out.push((l, h)),
            _ => {
                let m = (&l + &h) * half();
                stack.push((m.clone(), h));
                stack.push((l, m));
            }
        }
    }
    out
}

/// Refines a bracket `(l, h]` holding exactly one root of the square-free
/// `q`: detects rational roots, then bisects to `digits` places.
fn refine(
    q: &RationalPolynomial,
    seq: &[RationalPolynomial],
    mut l: BigRational,
    mut h: BigRational,
    multiplicity: usize,
    digits: u32,
) -> IsolatedRoot {
    debug_assert_eq!(sturm_count(seq, &l, &h), 1);
    if q.sign_at(&h) == 0 {
        return IsolatedRoot {
            lo: l,
            decimal: to_decimal(&h, digits),
            exact: Some(h.clone()),
            hi: h,
            multiplicity,
            digits,
        };
    }
    // Sign of q just right of l (l itself may be a root belonging to a
    // neighbouring bracket).
    let left_sign = match q.sign_at(&l) {
        0 => q.derivative().sign_at(&l),
        s => s,
    };

    // Rational roots x = P/Q of an integer polynomial have Q | leading, so
    // leading·x is an integer. Once the bracket is shorter than 1/|leading|
    // at most one candidate remains.
    let (ints, _) = q.integer_content();
    let lead = BigRational::from_integer(ints.last().cloned().unwrap_or_else(BigInt::one).abs());
    let step = |l: &mut BigRational, h: &mut BigRational| -> Option<BigRational> {
        let m = (&*l + &*h) * half();
        match q.sign_at(&m) {
            0 => Some(m),
            s if s == left_sign => {
                *l = m;
                None
            }
            _ => {
                *h = m;
                None
            }
        }
    };
    let exact_hit = |l: BigRational, x: BigRational| IsolatedRoot {
        lo: l,
        hi: x.clone(),
        multiplicity,
        decimal: to_decimal(&x, digits),
        exact: Some(x),
        digits,
    };

    while (&h - &l) * &lead >= BigRational::one() {
        if let Some(x) = step(&mut l, &mut h) {
            return exact_hit(l, x);
        }
    }
    let candidate = (&h * &lead).floor();
    if candidate > &l * &lead {
        let x = candidate / &lead;
        if q.sign_at(&x) == 0 {
            return exact_hit(l, x);
        }
    }

    let tol = BigRational::new(1.into(), BigInt::from(10).pow(digits));
    while &h - &l >= tol {
        if let Some(x) = step(&mut l, &mut h) {
            return exact_hit(l, x);
        }
    }
    let mid = (&l + &h) * half();
    IsolatedRoot {
        lo: l,
        hi: h,
        multiplicity,
        exact: None,
        decimal: to_decimal(&mid, digits + 1),
        digits,
    }
}
