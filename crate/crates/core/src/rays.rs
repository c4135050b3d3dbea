//! Constant scalar curvature, Sasaki–Einstein and Sasaki–Ricci soliton rays
//! in the two-dimensional `w`-Sasaki cone.
//!
//! Rays are parametrized by their slope `b = v2/v1 ∈ (0, ∞)`. The CSC rays
//! are the positive roots of an explicit polynomial `f(b)` of degree
//! `2 d_N + 4`, which always vanishes to order three (four when
//! `w1 = w2`) at the excluded slope `b = w2/w1` of the reducible ray.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::{solve_csc_profile, solve_ke, solve_krs, AdmissibleData, Profile};
use crate::error::{Error, Result};
use crate::exactnum::field::{f64_to_rational, int, rational_to_f64};
use crate::exactnum::{
    deflate, precision_digits, sturm_isolate, to_decimal, IsolatedRoot, RationalPolynomial,
};
use crate::join::{contact_invariants, validate_join, BaseGeometry, JoinData};
use crate::quotient::{classify, quotient_data, QuotientData, ReebVector, Regularity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RayKind {
    Csc,
    Se,
    Srs,
    ReducibleProduct,
}

impl fmt::Display for RayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RayKind::Csc => "csc",
            RayKind::Se => "se",
            RayKind::Srs => "srs",
            RayKind::ReducibleProduct => "reducible-product",
        })
    }
}

/// A profile on the exact path (rational slope) or the real path.
#[derive(Clone, Debug, PartialEq)]
pub enum RayProfile {
    Exact(Profile<BigRational>),
    Real(Profile<f64>),
}

impl RayProfile {
    pub fn eval(&self, z: f64) -> f64 {
        match self {
            RayProfile::Exact(p) => p.eval(z),
            RayProfile::Real(p) => p.eval(z),
        }
    }

    pub fn residual_f64(&self) -> f64 {
        match self {
            RayProfile::Exact(p) => p.residual_f64(),
            RayProfile::Real(p) => p.residual_f64(),
        }
    }

    pub fn krs_a(&self) -> Option<f64> {
        match self {
            RayProfile::Exact(p) => p.krs_a,
            RayProfile::Real(p) => p.krs_a,
        }
    }

    pub fn positivity(&self) -> crate::admissible::Positivity {
        match self {
            RayProfile::Exact(p) => p.positivity,
            RayProfile::Real(p) => p.positivity,
        }
    }
}

/// Exact value of the Einstein integral at a candidate Reeb vector.
#[derive(Clone, Debug, PartialEq)]
pub struct EinsteinCheck {
    pub v: ReebVector,
    pub integral: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RaySolution {
    pub b: IsolatedRoot,
    pub kind: RayKind,
    pub regularity: Regularity,
    pub v: ReebVector,
    pub quotient: Option<QuotientData>,
    /// Scalar curvature in the `m = 1`, `v = (1, b)` normalization; rescaled
    /// by transverse homotheties along the ray.
    pub scalar_value: Option<f64>,
    pub scalar_value_exact: Option<BigRational>,
    pub profile: Option<RayProfile>,
    pub einstein_checks: Vec<EinsteinCheck>,
    pub notes: Vec<String>,
}

impl RaySolution {
    pub fn slope(&self) -> f64 {
        self.b.approx()
    }
}

/// `f(b)` for one join together with its forced factor.
#[derive(Clone, Debug, PartialEq)]
pub struct CscPolynomial {
    pub f: RationalPolynomial,
    pub d_n: u32,
    pub a: BigRational,
    pub l1: u64,
    pub l2: u64,
    pub w1: u64,
    pub w2: u64,
    /// `t = w2/w1`.
    pub forced_root: BigRational,
    pub forced_multiplicity: usize,
    /// `f / (w1 b − w2)^{multiplicity}`.
    pub deflated: RationalPolynomial,
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn qpow(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

/// `f(b)` from raw data; `l2` may be any rational, which lets callers
/// probe its dependence on `l2`.
pub fn csc_polynomial_raw(
    d_n: u32,
    a: &BigRational,
    l1: &BigRational,
    l2: &BigRational,
    w1: &BigRational,
    w2: &BigRational,
) -> RationalPolynomial {
    let d = d_n;
    let dd = q(d as i64);
    let d1 = q(d as i64 + 1);
    let d2 = q(d as i64 + 2);
    let mono = |c: BigRational, k: u32| RationalPolynomial::monomial(c, k as usize);
    let b = RationalPolynomial::linear(q(0), q(1));

    let t1 = (&RationalPolynomial::constant(a * l2 + l1 * &d1 * w2)
        - &b.scale(&(&d1 * l1 * w1)))
        * mono(qpow(w1, 2 * (d + 1)), 2 * d + 3);
    let t2 = mono(
        qpow(w1, d + 2) * qpow(w2, d) * &d1 * (a * &d1 * l2 - l1 * (&d1 * w1 + &d2 * w2)),
        d + 3,
    );
    let t3 = mono(
        qpow(w1, d + 1)
            * qpow(w2, d + 1)
            * (q(2) * a * &dd * &d2 * l2 - &d1 * q(2 * d as i64 + 3) * l1 * (w1 + w2)),
        d + 2,
    );
    let t4 = mono(
        qpow(w1, d) * qpow(w2, d + 2) * &d1 * (a * &d1 * l2 - l1 * (&d2 * w1 + &d1 * w2)),
        d + 1,
    );
    let t5 = RationalPolynomial::linear(-(&d1 * l1 * w2), a * l2 + l1 * &d1 * w1)
        .scale(&qpow(w2, 2 * (d + 1)));
    &(&(&(&t1 - &t2) + &t3) - &t4) + &t5
}

/// `f‴(w2/w1) = 3 (d+1)² (d+2) l1 w1² w2^{2d} (w1 − w2)`.
pub fn third_derivative_at_forced_root(d_n: u32, l1: u64, w1: u64, w2: u64) -> BigRational {
    let d = d_n as i64;
    q(3 * (d + 1) * (d + 1) * (d + 2))
        * q(l1)
        * qpow(&q(w1), 2)
        * qpow(&q(w2), 2 * d_n)
        * (q(w1) - q(w2))
}

/// The commonly quoted form `3 (d+1)(d+2) l1 w1^{d} w2^{d} (w1 − w2)`, which
/// differs from [`third_derivative_at_forced_root`] by the factor
/// `(d+1) w1^{2−d} w2^{d}`.
pub fn third_derivative_quoted(d_n: u32, l1: u64, w1: u64, w2: u64) -> BigRational {
    let d = d_n as i64;
    q(3 * (d + 1) * (d + 2)) * q(l1) * qpow(&q(w1), d_n) * qpow(&q(w2), d_n) * (q(w1) - q(w2))
}

/// Builds `f(b)` for a validated join and certifies the forced root at
/// `t = w2/w1`: `f(t) = f′(t) = f″(t) = 0` and the stated value of
/// `f‴(t)`.
pub fn build_csc_polynomial(j: &JoinData) -> Result<CscPolynomial> {
    let d = j.base.d_n;
    let f = csc_polynomial_raw(d, &j.base.a, &q(j.l1), &q(j.l2), &q(j.w1), &q(j.w2));
    let t = BigRational::new(j.w2.into(), j.w1.into());
    for k in 0..3 {
        if !f.nth_derivative(k).eval(&t).is_zero() {
            return Err(Error::Internal(format!("f^({k})(w2/w1) ≠ 0")));
        }
    }
    if f.nth_derivative(3).eval(&t) != third_derivative_at_forced_root(d, j.l1, j.w1, j.w2) {
        return Err(Error::Internal("f‴(w2/w1) differs from the closed form".into()));
    }
    if !f.leading().is_negative() {
        return Err(Error::Internal("leading coefficient of f is not negative".into()));
    }
    let mult = f.root_multiplicity(&t);
    let deflated = deflate(&f, &t, mult)?;
    Ok(CscPolynomial {
        f,
        d_n: d,
        a: j.base.a.clone(),
        l1: j.l1,
        l2: j.l2,
        w1: j.w1,
        w2: j.w2,
        forced_root: t,
        forced_multiplicity: mult,
        deflated,
    })
}

fn ray_for_exact_slope(j: &JoinData, b: &BigRational) -> Result<(ReebVector, Option<QuotientData>, Regularity)> {
    let v = ReebVector::from_slope(b)?;
    let quotient = quotient_data(j, &v)?;
    let reg = classify(j, &v);
    Ok((v, Some(quotient), reg))
}

fn exact_csc_solution(j: &JoinData, root: IsolatedRoot) -> Result<RaySolution> {
    let b = root.exact.clone().expect("rational root");
    let (v, quotient, regularity) = ray_for_exact_slope(j, &b)?;
    let ad = AdmissibleData::from_slope(j, b)?;
    let prof = solve_csc_profile(&ad)?;
    if !prof.residual.as_ref().is_some_and(|r| r.is_zero()) {
        return Err(Error::Internal("CSC residual nonzero at an exact root".into()));
    }
    let k = prof.csc_k.clone();
    Ok(RaySolution {
        b: root,
        kind: RayKind::Csc,
        regularity,
        v,
        quotient,
        scalar_value: k.as_ref().map(rational_to_f64),
        scalar_value_exact: k,
        profile: Some(RayProfile::Exact(prof)),
        einstein_checks: Vec::new(),
        notes: Vec::new(),
    })
}

fn real_csc_solution(j: &JoinData, root: IsolatedRoot) -> Result<RaySolution> {
    let b = root.approx();
    let v = ReebVector::irregular(b, Some(root.decimal.clone()))?;
    let ad = AdmissibleData::<f64>::from_slope(j, b)?;
    let prof = solve_csc_profile(&ad)?;
    let k = prof.csc_k;
    Ok(RaySolution {
        b: root,
        kind: RayKind::Csc,
        regularity: Regularity::Irregular,
        v,
        quotient: None,
        scalar_value: k,
        scalar_value_exact: None,
        profile: Some(RayProfile::Real(prof)),
        einstein_checks: Vec::new(),
        notes: Vec::new(),
    })
}

fn product_ray(j: &JoinData, kind: RayKind, digits: u32) -> RaySolution {
    RaySolution {
        b: IsolatedRoot::from_exact(BigRational::one(), 1, digits),
        kind,
        regularity: Regularity::Regular,
        v: ReebVector::unit(),
        quotient: None,
        scalar_value: None,
        scalar_value_exact: None,
        profile: None,
        einstein_checks: Vec::new(),
        notes: vec![format!(
            "b = 1 is the reducible ray v ∝ w: the product CSC structure on {} × CP¹ (no admissible profile)",
            j.base.label()
        )],
    }
}

/// All CSC rays of the `w`-Sasaki cone, sorted by slope.
pub fn find_csc_rays(j: &JoinData) -> Result<Vec<RaySolution>> {
    find_csc_rays_with(j, precision_digits())
}

pub fn find_csc_rays_with(j: &JoinData, digits: u32) -> Result<Vec<RaySolution>> {
    let poly = build_csc_polynomial(j)?;
    let zero = BigRational::zero();
    let roots = sturm_isolate(&poly.deflated, Some(&zero), None, digits)?;
    if j.w1 > j.w2 && !roots.iter().any(|r| r.value() > poly.forced_root) {
        return Err(Error::Internal("no CSC root above w2/w1".into()));
    }
    let mut out = roots
        .into_par_iter()
        .map(|root| {
            if root.is_rational() {
                exact_csc_solution(j, root)
            } else {
                real_csc_solution(j, root)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if j.w1 == j.w2 {
        out.push(product_ray(j, RayKind::ReducibleProduct, digits));
    }
    out.sort_by_key(|a| a.b.value());
    Ok(out)
}

/// `∫_{−1}^{1} ((v1 − v2) − (v1 + v2) z)((w1 v2 + w2 v1) + (w1 v2 − w2 v1) z)^{d} dz`.
pub fn einstein_integral(j: &JoinData, v1: &BigInt, v2: &BigInt) -> BigRational {
    let (w1, w2) = (BigInt::from(j.w1), BigInt::from(j.w2));
    let lin = RationalPolynomial::linear(q(v1 - v2), -q(v1 + v2));
    let base = RationalPolynomial::linear(q(&w1 * v2 + &w2 * v1), q(&w1 * v2 - &w2 * v1));
    (&lin * &base.pow(j.base.d_n)).definite_integral(&int(-1), &int(1))
}

/// `j(b) = ∫_{−1}^{1} ((1 − b) − (1 + b) z)((b + t) + (b − t) z)^{d} dz` as a
/// polynomial in `b`.
pub fn einstein_polynomial(d_n: u32, t: &BigRational) -> RationalPolynomial {
    let moment = |k: u32| -> BigRational {
        if k % 2 == 1 {
            BigRational::zero()
        } else {
            BigRational::new(2.into(), (k + 1).into())
        }
    };
    let b_plus = RationalPolynomial::linear(t.clone(), q(1));
    let b_minus = RationalPolynomial::linear(-t.clone(), q(1));
    let one_minus_b = RationalPolynomial::linear(q(1), q(-1));
    let one_plus_b = RationalPolynomial::linear(q(1), q(1));
    let mut acc = RationalPolynomial::zero();
    let mut binom = BigInt::one();
    for i in 0..=d_n {
        let inner = &one_minus_b.scale(&moment(i)) - &one_plus_b.scale(&moment(i + 1));
        let term = &(&b_plus.pow(d_n - i) * &b_minus.pow(i)) * &inner;
        acc = &acc + &term.scale(&q(binom.clone()));
        binom = binom * (d_n - i) / (i + 1);
    }
    acc
}

/// `h(b) = (1+d) b^{d+3} − (1 + 2t + d t) b^{d+2} + (2 + d + t) t^{d+1} b − (1+d) t^{d+2}`.
pub fn einstein_h(d_n: u32, t: &BigRational) -> RationalPolynomial {
    let d = q(d_n as i64);
    let one = q(1);
    let mono = |c: BigRational, k: u32| RationalPolynomial::monomial(c, k as usize);
    &(&(&mono(&one + &d, d_n + 3) - &mono(&one + q(2) * t + &d * t, d_n + 2))
        + &mono((q(2) + &d + t) * qpow(t, d_n + 1), 1))
        - &RationalPolynomial::constant((&one + &d) * qpow(t, d_n + 2))
}

fn se_obstruction(j: &JoinData) -> Error {
    Error::C1Obstruction {
        expected: contact_invariants(j).relative_fano,
        actual: (j.l1, j.l2),
    }
}

/// The Sasaki–Einstein ray, when the first Chern class allows one.
pub fn find_se_ray(j: &JoinData) -> Result<Option<RaySolution>> {
    find_se_ray_with(j, precision_digits())
}

pub fn find_se_ray_with(j: &JoinData, digits: u32) -> Result<Option<RaySolution>> {
    if !contact_invariants(j).se_possible {
        return Err(se_obstruction(j));
    }
    if j.w1 == j.w2 {
        let mut ray = product_ray(j, RayKind::ReducibleProduct, digits);
        ray.notes.push("Sasaki–Einstein structure is the product ray".into());
        return Ok(Some(ray));
    }
    let t = BigRational::new(j.w2.into(), j.w1.into());
    let jp = einstein_polynomial(j.base.d_n, &t);
    let roots = sturm_isolate(&jp, Some(&t), None, digits)?;
    if roots.len() != 1 {
        return Err(Error::Internal(format!(
            "expected one Einstein root above w2/w1, found {}",
            roots.len()
        )));
    }
    let root = roots.into_iter().next().expect("one root");
    let lambda_note = "λ = (1/m1 + 1/m2)/2 in the m = 1 normalization".to_string();
    if let Some(b) = root.exact.clone() {
        let (v, quotient, regularity) = ray_for_exact_slope(j, &b)?;
        let (v1, v2) = v.components().map(|(a, b)| (a.clone(), b.clone())).expect("quasi-regular");
        let here = einstein_integral(j, &v1, &v2);
        if !here.is_zero() {
            return Err(Error::Internal("Einstein integral nonzero at exact root".into()));
        }
        let swapped = einstein_integral(j, &v2, &v1);
        let ad = AdmissibleData::from_slope(j, b)?;
        let prof = solve_ke(&ad)?;
        let mut notes = vec![lambda_note];
        if v1 != v2 {
            notes.push(format!(
                "convention check: the Einstein integral vanishes at v = ({v1}, {v2}); at the swapped vector ({v2}, {v1}) it equals {swapped}. Sources using w1 <= w2 list the SE Reeb vector as ({v2}, {v1})."
            ));
        }
        let ke_scalar = csc_scalar_exact(&ad);
        Ok(Some(RaySolution {
            b: root,
            kind: RayKind::Se,
            regularity,
            v: v.clone(),
            quotient,
            scalar_value: Some(rational_to_f64(&ke_scalar)),
            scalar_value_exact: Some(ke_scalar),
            profile: Some(RayProfile::Exact(prof)),
            einstein_checks: vec![
                EinsteinCheck { v, integral: here },
                EinsteinCheck {
                    v: ReebVector::quasi_regular(v2, v1)?,
                    integral: swapped,
                },
            ],
            notes,
        }))
    } else {
        let b = root.approx();
        let v = ReebVector::irregular(b, Some(root.decimal.clone()))?;
        let ad = AdmissibleData::<f64>::from_slope(j, b)?;
        let prof = solve_ke(&ad)?;
        let scalar = solve_csc_profile(&ad)?.csc_k;
        Ok(Some(RaySolution {
            b: root,
            kind: RayKind::Se,
            regularity: Regularity::Irregular,
            v,
            quotient: None,
            scalar_value: scalar,
            scalar_value_exact: None,
            profile: Some(RayProfile::Real(prof)),
            einstein_checks: Vec::new(),
            notes: vec![lambda_note],
        }))
    }
}

fn csc_scalar_exact(ad: &AdmissibleData<BigRational>) -> BigRational {
    crate::admissible::csc_constants(ad).1
}

/// Sasaki–Ricci soliton on the ray through `v`.
pub fn find_srs_ray(j: &JoinData, v: &ReebVector) -> Result<RaySolution> {
    if !contact_invariants(j).se_possible {
        return Err(se_obstruction(j));
    }
    let regularity = classify(j, v);
    if regularity == Regularity::Reducible {
        return Err(Error::ReducibleRay);
    }
    let digits = precision_digits();
    match v.slope_exact() {
        Some(b) => {
            let quotient = Some(quotient_data(j, v)?);
            let ad = AdmissibleData::from_slope(j, b.clone())?;
            let prof = solve_krs(&ad)?;
            Ok(RaySolution {
                b: IsolatedRoot::from_exact(b, 1, digits),
                kind: RayKind::Srs,
                regularity,
                v: v.clone(),
                quotient,
                scalar_value: None,
                scalar_value_exact: None,
                profile: Some(RayProfile::Exact(prof)),
                einstein_checks: Vec::new(),
                notes: Vec::new(),
            })
        }
        None => {
            let b = v.slope_f64();
            let ad = AdmissibleData::<f64>::from_slope(j, b)?;
            let prof = solve_krs(&ad)?;
            let exact = f64_to_rational(b).ok_or_else(|| Error::InvalidInput("slope".into()))?;
            let mut root = IsolatedRoot::from_exact(exact, 1, 17);
            root.exact = None;
            root.decimal = format!("{b:.17}");
            Ok(RaySolution {
                b: root,
                kind: RayKind::Srs,
                regularity,
                v: v.clone(),
                quotient: None,
                scalar_value: None,
                scalar_value_exact: None,
                profile: Some(RayProfile::Real(prof)),
                einstein_checks: Vec::new(),
                notes: vec!["slope given in floating point; treated as irregular".into()],
            })
        }
    }
}

/// `f(w2/(2 w1))` as `c0 + slope·l2`.
pub fn midpoint_value_in_l2(base: &BaseGeometry, l1: u64, w1: u64, w2: u64) -> (BigRational, BigRational) {
    let x = BigRational::new(w2.into(), (2 * w1).into());
    let at = |l2: i64| csc_polynomial_raw(base.d_n, &base.a, &q(l1), &q(l2), &q(w1), &q(w2)).eval(&x);
    let c0 = at(0);
    (c0.clone(), at(1) - c0)
}

/// Closed-form slope of `l2 ↦ f(w2/(2 w1))`:
/// `A w2^{2d+3} / (2^{2d+3} w1) · (1 + 2^d (2^{d+2} − (d² + 2d + 5)))`.
pub fn midpoint_slope_formula(base: &BaseGeometry, w1: u64, w2: u64) -> BigRational {
    let d = base.d_n;
    let two_d = qpow(&q(2), d);
    let bracket = q(1) + &two_d * (qpow(&q(2), d + 2) - q((d * d + 2 * d + 5) as i64));
    &base.a * qpow(&q(w2), 2 * d + 3) / (qpow(&q(2), 2 * d + 3) * q(w1)) * bracket
}

/// Smallest valid `l2` with at least three CSC rays.
pub fn multi_ray_threshold(base: &BaseGeometry, l1: u64, w1: u64, w2: u64) -> Result<u64> {
    if !base.a.is_positive() {
        return Err(Error::NonPositiveScalar);
    }
    let (w1, w2) = if w1 >= w2 { (w1, w2) } else { (w2, w1) };
    let (c0, slope) = midpoint_value_in_l2(base, l1, w1, w2);
    if slope != midpoint_slope_formula(base, w1, w2) {
        return Err(Error::Internal("midpoint slope differs from closed form".into()));
    }
    if !slope.is_positive() {
        return Err(Error::Internal("midpoint slope not positive".into()));
    }
    // Beyond this bound f(w2/(2w1)) > 0, which forces two extra roots.
    let bound = (-c0 / &slope).floor().to_integer().to_u64().unwrap_or(0) + 1;
    let mut l2 = 1u64;
    loop {
        if let Ok(j) = validate_join(base.clone(), l1, l2, w1, w2) {
            if find_csc_rays_with(&j, 12)?.len() >= 3 {
                return Ok(l2);
            }
            if l2 > bound {
                return Err(Error::Internal(format!(
                    "l2 = {l2} exceeds the midpoint bound but has fewer than three rays"
                )));
            }
        }
        l2 += 1;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct YpqData {
    pub p: u64,
    pub q: u64,
    pub join: JoinData,
    pub quasiregular: bool,
    /// `n` with `4p² − 3q² = n²`, when it exists.
    pub n: Option<u64>,
}

/// The join data of `Y^{p,q}` over `CP¹`.
pub fn ypq_map(p: u64, q: u64) -> Result<YpqData> {
    if q == 0 || q >= p {
        return Err(Error::InvalidYpq(format!("need 1 <= q < p, got ({p}, {q})")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidYpq(format!("p and q must be coprime, got ({p}, {q})")));
    }
    let g = (p + q).gcd(&(p - q));
    let join = validate_join(BaseGeometry::cp(1)?, g, p, (p + q) / g, (p - q) / g)?;
    let disc = 4 * (p as u128) * (p as u128) - 3 * (q as u128) * (q as u128);
    let root = disc.sqrt();
    let n = (root * root == disc).then_some(root as u64);
    Ok(YpqData {
        p,
        q,
        join,
        quasiregular: n.is_some(),
        n,
    })
}

/// All valid `(p, q)` with `p ≤ pmax`, ordered by `(p, q)`.
pub fn ypq_scan(pmax: u64) -> Vec<YpqData> {
    let mut out: Vec<YpqData> = (2..=pmax)
        .into_par_iter()
        .flat_map_iter(|p| (1..p).filter_map(move |q| ypq_map(p, q).ok()))
        .collect();
    out.sort_by_key(|y| (y.p, y.q));
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub l2: u64,
    /// `None` when the join is invalid for this `l2`.
    pub rays: Option<Vec<RaySolution>>,
    pub rejection: Option<String>,
}

/// CSC rays for every `l2` in `from..=to`, computed in parallel.
pub fn scan_csc(base: &BaseGeometry, l1: u64, w1: u64, w2: u64, from: u64, to: u64) -> Result<Vec<ScanRow>> {
    let digits = precision_digits();
    let mut rows = (from..=to)
        .into_par_iter()
        .map(|l2| match validate_join(base.clone(), l1, l2, w1, w2) {
            Ok(j) => find_csc_rays_with(&j, digits).map(|rays| ScanRow {
                l2,
                rays: Some(rays),
                rejection: None,
            }),
            Err(e) => Ok(ScanRow {
                l2,
                rays: None,
                rejection: Some(e.to_string()),
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.l2);
    Ok(rows)
}

/// Decimal string of a slope for display.
pub fn slope_string(root: &IsolatedRoot) -> String {
    match &root.exact {
        Some(x) if x.is_integer() => x.to_string(),
        Some(x) => format!("{x}"),
        None => to_decimal(&root.value(), root.digits),
    }
}
