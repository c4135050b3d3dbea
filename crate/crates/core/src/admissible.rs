//! Admissible momentum profiles `F(z)` on `[-1, 1]`, `Θ = F/p`,
//! `p(z) = (1 + r z)^{d_N}`, for the extremal, constant scalar curvature,
//! Kähler–Einstein and Kähler–Ricci soliton branches.
//!
//! Everything is generic over [`Field`]: exact rationals for quasi-regular
//! rays, `f64` for irregular ones. The soliton profile is transcendental and
//! always evaluated in `f64`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::expint::{exp_poly_integral_between, exp_poly_integral_scaled_real};
use crate::exactnum::{count_roots, sturm_isolate, Field, Polynomial, RationalPolynomial, RealPolynomial};
use crate::join::JoinData;
use crate::quotient::QuotientData;

/// Largest `|a|` tried by the soliton bracket search is `2^MAX_SOLITON_EXPONENT`.
pub const MAX_SOLITON_EXPONENT: u32 = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleData<T> {
    pub d_n: u32,
    /// `s_{N_n}`.
    pub s: T,
    pub r: T,
    pub m1: T,
    pub m2: T,
}

impl<T: Field> AdmissibleData<T> {
    pub fn new(d_n: u32, s: T, r: T, m1: T, m2: T) -> Result<Self> {
        if d_n == 0 {
            return Err(Error::InvalidInput("d_N must be positive".into()));
        }
        if r.is_zero() || r.abs_val() >= T::one() {
            return Err(Error::InvalidInput(format!("need 0 < |r| < 1, got r = {r:?}")));
        }
        if m1 <= T::zero() || m2 <= T::zero() {
            return Err(Error::InvalidInput("m1, m2 must be positive".into()));
        }
        Ok(AdmissibleData { d_n, s, r, m1, m2 })
    }

    /// Data of the ray of slope `b` in the `m = 1`, `v = (1, b)`
    /// normalization: `m1 = 1`, `m2 = b`, `s = A·l2 / (l1 (w1 b − w2))`.
    pub fn from_slope(j: &JoinData, b: T) -> Result<Self> {
        if b <= T::zero() {
            return Err(Error::InvalidInput("slope must be positive".into()));
        }
        let w1 = T::from_int(j.w1 as i64);
        let w2 = T::from_int(j.w2 as i64);
        let det = w1.clone() * b.clone() - w2.clone();
        if det.is_zero() {
            return Err(Error::ReducibleRay);
        }
        let r = det.clone() / (w1 * b.clone() + w2);
        let s = T::from_rational(&j.base.a) * T::from_int(j.l2 as i64)
            / (T::from_int(j.l1 as i64) * det);
        Self::new(j.base.d_n, s, r, T::one(), b)
    }

    pub fn one_plus_rz(&self) -> Polynomial<T> {
        Polynomial::linear(T::one(), self.r.clone())
    }

    /// `p(z) = (1 + r z)^{d_N}`.
    pub fn p(&self) -> Polynomial<T> {
        self.one_plus_rz().pow(self.d_n)
    }

    /// Targets for `F′(−1)` and `F′(1)`.
    pub fn slope_targets(&self) -> (T, T) {
        let two = T::from_int(2);
        let one = T::one();
        let lo = two.clone() * pow(&(one.clone() - self.r.clone()), self.d_n) / self.m2.clone();
        let hi = -(two * pow(&(one + self.r.clone()), self.d_n)) / self.m1.clone();
        (lo, hi)
    }

    /// Transverse homothety: `m_i → m_i/a`, `s → a s`.
    pub fn rescaled(&self, a: &T) -> Self {
        AdmissibleData {
            d_n: self.d_n,
            s: self.s.clone() * a.clone(),
            r: self.r.clone(),
            m1: self.m1.clone() / a.clone(),
            m2: self.m2.clone() / a.clone(),
        }
    }

    pub fn to_real(&self) -> AdmissibleData<f64> {
        AdmissibleData {
            d_n: self.d_n,
            s: self.s.to_f64(),
            r: self.r.to_f64(),
            m1: self.m1.to_f64(),
            m2: self.m2.to_f64(),
        }
    }

    /// `λ = (1/m1 + 1/m2)/2`.
    pub fn lambda(&self) -> T {
        (T::one() / self.m1.clone() + T::one() / self.m2.clone()) / T::from_int(2)
    }

    fn scale(&self) -> f64 {
        [&self.s, &self.m1, &self.m2]
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(1.0, f64::max)
            .max(1.0 / self.m1.to_f64().min(self.m2.to_f64()))
    }
}

impl AdmissibleData<BigRational> {
    /// The actual data of the quotient `(S_n, Δ)`: `s = A/n`, `m_i = v_i m`.
    pub fn from_quotient(j: &JoinData, q: &QuotientData) -> Result<Self> {
        let n = BigRational::from_integer(q.n.clone());
        Self::new(
            j.base.d_n,
            j.base.a.clone() / n,
            q.r.clone(),
            BigRational::from_integer(q.m1.clone()),
            BigRational::from_integer(q.m2.clone()),
        )
    }
}

fn pow<T: Field>(x: &T, n: u32) -> T {
    (0..n).fold(T::one(), |acc, _| acc * x.clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Extremal,
    Csc,
    Ke,
    Krs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Positivity {
    /// No root of `F` in `(−1, 1)` by a Sturm count and `F(0) > 0`.
    Proved,
    /// Dense sampling with local minimum refinement found no zero.
    NumericallySupported,
    Fails,
    /// Not checked because the profile does not solve its equation.
    NotChecked,
}

/// `F(z) = e^{az} ∫_{-1}^{z} e^{-at} φ(t) dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct SolitonProfile {
    pub a: f64,
    pub phi: RealPolynomial,
    /// `∫_{-1}^{1} e^{-at} φ(t) dt`, zero for an exact solution.
    pub total: f64,
}

impl SolitonProfile {
    pub fn eval(&self, z: f64) -> f64 {
        let ez = (self.a * z).exp();
        if z <= 0.0 {
            ez * exp_poly_integral_between(&self.phi, self.a, -1.0, z)
        } else {
            ez * (self.total - exp_poly_integral_between(&self.phi, self.a, z, 1.0))
        }
    }

    /// `F′ = a F + φ`.
    pub fn derivative(&self, z: f64) -> f64 {
        self.a * self.eval(z) + self.phi.eval(&z)
    }

    /// `F″ = a F′ + φ′`.
    pub fn second_derivative(&self, z: f64) -> f64 {
        self.a * self.derivative(z) + self.phi.derivative().eval(&z)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProfileShape<T> {
    Polynomial(Polynomial<T>),
    Soliton(SolitonProfile),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Profile<T> {
    pub shape: ProfileShape<T>,
    pub branch: Branch,
    pub alpha: Option<T>,
    pub beta: Option<T>,
    pub csc_c: Option<T>,
    pub csc_k: Option<T>,
    pub lambda: Option<T>,
    pub krs_a: Option<f64>,
    /// Residual of the closing integral condition (`F(1)` before it is
    /// imposed); `None` for the soliton branch, see [`SolitonProfile::total`].
    pub residual: Option<T>,
    pub positivity: Positivity,
}

impl<T: Field> Profile<T> {
    fn new(shape: ProfileShape<T>, branch: Branch) -> Self {
        Profile {
            shape,
            branch,
            alpha: None,
            beta: None,
            csc_c: None,
            csc_k: None,
            lambda: None,
            krs_a: None,
            residual: None,
            positivity: Positivity::NotChecked,
        }
    }

    pub fn polynomial(&self) -> Option<&Polynomial<T>> {
        match &self.shape {
            ProfileShape::Polynomial(f) => Some(f),
            ProfileShape::Soliton(_) => None,
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        match &self.shape {
            ProfileShape::Polynomial(f) => f.to_real().eval(&z),
            ProfileShape::Soliton(s) => s.eval(z),
        }
    }

    pub fn derivative(&self, z: f64) -> f64 {
        match &self.shape {
            ProfileShape::Polynomial(f) => f.derivative().to_real().eval(&z),
            ProfileShape::Soliton(s) => s.derivative(z),
        }
    }

    pub fn second_derivative(&self, z: f64) -> f64 {
        match &self.shape {
            ProfileShape::Polynomial(f) => f.nth_derivative(2).to_real().eval(&z),
            ProfileShape::Soliton(s) => s.second_derivative(z),
        }
    }

    pub fn residual_f64(&self) -> f64 {
        match (&self.residual, &self.shape) {
            (Some(r), _) => r.to_f64(),
            (None, ProfileShape::Soliton(s)) => s.total,
            (None, _) => 0.0,
        }
    }

    pub fn positivity_certified(&self) -> bool {
        self.positivity == Positivity::Proved
    }

    /// `[F(−1), F(1), F′(−1) − target, F′(1) − target]` in `f64`.
    pub fn boundary_residuals(&self, ad: &AdmissibleData<T>) -> [f64; 4] {
        let (lo, hi) = ad.slope_targets();
        [
            self.eval(-1.0),
            self.eval(1.0),
            self.derivative(-1.0) - lo.to_f64(),
            self.derivative(1.0) - hi.to_f64(),
        ]
    }

    /// Exact check of all four boundary conditions on a polynomial profile.
    pub fn boundary_conditions_exact(&self, ad: &AdmissibleData<T>) -> Option<bool> {
        let f = self.polynomial()?;
        if !T::EXACT {
            return None;
        }
        let (lo, hi) = ad.slope_targets();
        let one = T::one();
        let df = f.derivative();
        Some(
            f.eval(&-one.clone()).is_zero()
                && f.eval(&one).is_zero()
                && df.eval(&-one.clone()) == lo
                && df.eval(&one) == hi,
        )
    }

    /// Sign changes of `F″` on `(−1, 1)`, counted exactly.
    pub fn second_derivative_sign_changes(&self) -> Option<usize> {
        let f = exact_poly(self.polynomial()?)?;
        let d2 = f.nth_derivative(2);
        if d2.is_zero() {
            return Some(0);
        }
        let roots = sturm_isolate(&d2, Some(&-BigRational::from_integer(1.into())), Some(&BigRational::from_integer(1.into())), 8).ok()?;
        Some(roots.iter().filter(|r| r.multiplicity % 2 == 1).count())
    }
}

fn exact_poly<T: Field>(f: &Polynomial<T>) -> Option<RationalPolynomial> {
    let coeffs: Option<Vec<BigRational>> = f.coeffs().iter().map(Field::to_rational).collect();
    coeffs.map(RationalPolynomial::new)
}

/// Positivity of `F` on `(−1, 1)`.
pub fn certify_positivity<T: Field>(f: &Polynomial<T>) -> Positivity {
    if let Some(exact) = exact_poly(f) {
        let one = BigRational::from_integer(1.into());
        let zero = BigRational::from_integer(0.into());
        return match count_roots(&exact, Some(&-one.clone()), Some(&one)) {
            Ok(0) if exact.sign_at(&zero) > 0 => Positivity::Proved,
            Ok(_) => Positivity::Fails,
            Err(_) => Positivity::Fails,
        };
    }
    let real = f.to_real();
    sample_positivity(|z| real.eval(&z))
}

/// Dense sampling on `(−1, 1)` with golden-section refinement around each
/// sampled local minimum.
pub fn sample_positivity(f: impl Fn(f64) -> f64) -> Positivity {
    const N: usize = 2000;
    let zs: Vec<f64> = (1..N).map(|i| -1.0 + 2.0 * i as f64 / N as f64).collect();
    let vals: Vec<f64> = zs.iter().map(|&z| f(z)).collect();
    if vals.iter().any(|v| !(*v > 0.0)) {
        return Positivity::Fails;
    }
    for i in 1..vals.len() - 1 {
        if vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] {
            let (mut lo, mut hi) = (zs[i - 1], zs[i + 1]);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..60 {
                let a = hi - g * (hi - lo);
                let b = lo + g * (hi - lo);
                if f(a) < f(b) {
                    hi = b;
                } else {
                    lo = a;
                }
            }
            if !(f(0.5 * (lo + hi)) > 0.0) {
                return Positivity::Fails;
            }
        }
    }
    Positivity::NumericallySupported
}

/// Gaussian elimination with partial pivoting.
fn solve_linear<T: Field>(mut a: Vec<Vec<T>>, mut b: Vec<T>, scale: f64) -> Option<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .abs_val()
                .partial_cmp(&a[j][col].abs_val())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if a[piv][col].is_negligible(scale) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col].clone() / a[col][col].clone();
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let t = factor.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - t;
            }
            let t = factor * b[col].clone();
            b[row] = b[row].clone() - t;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc - a[row][k].clone() * x[k].clone();
        }
        x[row] = acc / a[row][row].clone();
    }
    Some(x)
}

/// Extremal profile: `F″ = (1+rz)^{d−1}(2 d s r + (αz + β)(1 + rz))`, with
/// `α, β` and the two integration constants fixed by the boundary
/// conditions.
pub fn solve_extremal<T: Field>(ad: &AdmissibleData<T>) -> Result<Profile<T>> {
    let m1 = -T::one();
    let one = T::one();
    let z = Polynomial::linear(T::zero(), T::one());
    let p = ad.p();
    let a0 = ad
        .one_plus_rz()
        .pow(ad.d_n - 1)
        .scale(&(T::from_int(2 * ad.d_n as i64) * ad.s.clone() * ad.r.clone()));
    let a_alpha = &p * &z;
    let a_beta = p;
    let i1 = |q: &Polynomial<T>| q.integral_from(&m1);
    let (f0, fa, fb) = (i1(&i1(&a0)), i1(&i1(&a_alpha)), i1(&i1(&a_beta)));
    let (d0, da, db) = (i1(&a0), i1(&a_alpha), i1(&a_beta));
    let (lo, hi) = ad.slope_targets();
    let zero = T::zero();
    let two = T::from_int(2);
    // Unknowns (α, β, C1, C0), F = f0 + α fa + β fb + C1 (z + 1) + C0.
    let rows = vec![
        vec![zero.clone(), zero.clone(), zero.clone(), one.clone()],
        vec![zero.clone(), zero.clone(), one.clone(), zero.clone()],
        vec![da.eval(&one), db.eval(&one), one.clone(), zero.clone()],
        vec![fa.eval(&one), fb.eval(&one), two, one.clone()],
    ];
    let rhs = vec![zero, lo, hi - d0.eval(&one), -f0.eval(&one)];
    let x = solve_linear(rows, rhs, ad.scale()).ok_or(Error::DegenerateAdmissible)?;
    let (alpha, beta, c1, c0) = (x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone());
    let f = &(&(&f0 + &fa.scale(&alpha)) + &fb.scale(&beta))
        + &Polynomial::linear(c1.clone() + c0, c1);
    let mut prof = Profile::new(ProfileShape::Polynomial(f.clone()), Branch::Extremal);
    prof.alpha = Some(alpha);
    prof.beta = Some(beta);
    prof.residual = Some(T::zero());
    prof.positivity = certify_positivity(&f);
    Ok(prof)
}

/// The constants `(c, k)` of the constant scalar curvature profile.
pub fn csc_constants<T: Field>(ad: &AdmissibleData<T>) -> (T, T) {
    let one = T::one();
    let two = T::from_int(2);
    let d = ad.d_n;
    let d1 = T::from_int(d as i64 + 1);
    let (r, s, m1, m2) = (&ad.r, &ad.s, &ad.m1, &ad.m2);
    let up = one.clone() + r.clone();
    let dn = one.clone() - r.clone();
    let big_p = pow(&up, d + 1) - pow(&dn, d + 1);
    let denom = m1.clone() * m2.clone() * big_p;
    let k = two.clone()
        * d1
        * r.clone()
        * (m2.clone() * pow(&up, d) * (one.clone() + m1.clone() * s.clone())
            - m1.clone() * pow(&dn, d) * (m2.clone() * s.clone() - one.clone()))
        / denom.clone();
    let c = two.clone()
        * pow(&(one - r.clone() * r.clone()), d)
        * (m2.clone() * dn + m1.clone() * up - two * m1.clone() * m2.clone() * s.clone() * r.clone())
        / denom;
    (c, k)
}

/// Constant scalar curvature profile,
/// `F′ = (2s − k(1+rz)/(r(d+1)))(1+rz)^d + c`, `F(−1) = 0`.
pub fn solve_csc_profile<T: Field>(ad: &AdmissibleData<T>) -> Result<Profile<T>> {
    let (c, k) = csc_constants(ad);
    let lin = ad.one_plus_rz();
    let p = ad.p();
    let d1 = T::from_int(ad.d_n as i64 + 1);
    let df = &(&p.scale(&(T::from_int(2) * ad.s.clone()))
        - &(&p * &lin).scale(&(k.clone() / (ad.r.clone() * d1))))
        + &Polynomial::constant(c.clone());
    let f = df.integral_from(&-T::one());
    let residual = f.eval(&T::one());
    let mut prof = Profile::new(ProfileShape::Polynomial(f.clone()), Branch::Csc);
    if residual.is_negligible(ad.scale()) {
        prof.positivity = certify_positivity(&f);
    }
    prof.csc_c = Some(c);
    prof.csc_k = Some(k);
    prof.residual = Some(residual);
    Ok(prof)
}

/// Checks `2 s r = (1+r)/m2 + (1−r)/m1`.
pub fn check_fano<T: Field>(ad: &AdmissibleData<T>) -> Result<()> {
    let one = T::one();
    let lhs = T::from_int(2) * ad.s.clone() * ad.r.clone();
    let rhs = (one.clone() + ad.r.clone()) / ad.m2.clone() + (one - ad.r.clone()) / ad.m1.clone();
    let diff = lhs.clone() - rhs.clone();
    if diff.is_negligible(ad.scale()) {
        Ok(())
    } else {
        Err(Error::FanoConditionFails(format!(
            "2·s·r = {:.12} but (1+r)/m2 + (1−r)/m1 = {:.12}",
            lhs.to_f64(),
            rhs.to_f64()
        )))
    }
}

/// `φ(z) = ((1−z)/m2 − (1+z)/m1)·p(z)`.
pub fn ke_integrand<T: Field>(ad: &AdmissibleData<T>) -> Polynomial<T> {
    let one = T::one();
    let a = Polynomial::linear(one.clone(), -one.clone()).scale(&(one.clone() / ad.m2.clone()));
    let b = Polynomial::linear(one.clone(), one.clone()).scale(&(one / ad.m1.clone()));
    &(&a - &b) * &ad.p()
}

/// Kähler–Einstein profile `F = ∫_{−1}^{z} φ`; a genuine solution iff the
/// residual `∫_{−1}^{1} φ` vanishes.
pub fn solve_ke<T: Field>(ad: &AdmissibleData<T>) -> Result<Profile<T>> {
    check_fano(ad)?;
    let f = ke_integrand(ad).integral_from(&-T::one());
    let residual = f.eval(&T::one());
    let mut prof = Profile::new(ProfileShape::Polynomial(f.clone()), Branch::Ke);
    if residual.is_negligible(ad.scale()) {
        prof.positivity = certify_positivity(&f);
    }
    prof.lambda = Some(ad.lambda());
    prof.residual = Some(residual);
    Ok(prof)
}

/// Kähler–Ricci soliton profile: finds `a` with
/// `∫_{−1}^{1} e^{−az} φ(z) dz = 0` and builds
/// `F = e^{az} ∫_{−1}^{z} e^{−at} φ(t) dt`. When the integral already
/// vanishes at `a = 0` the Kähler–Einstein profile is returned unchanged.
pub fn solve_krs<T: Field>(ad: &AdmissibleData<T>) -> Result<Profile<T>> {
    let ke = solve_ke(ad)?;
    let i0 = ke.residual.clone().unwrap_or_else(T::zero);
    if i0.is_negligible(ad.scale()) {
        let mut prof = ke;
        prof.branch = Branch::Krs;
        prof.krs_a = Some(0.0);
        return Ok(prof);
    }
    let phi = ke_integrand(ad).to_real();
    let sign = |a: f64| exp_poly_integral_scaled_real(&phi, a);
    // I(a) > 0 for a → +∞ and I(a) < 0 for a → −∞.
    let dir = if i0.to_f64() < 0.0 { 1.0 } else { -1.0 };
    let mut far = dir;
    let mut near = 0.0;
    let mut found = false;
    for _ in 0..=MAX_SOLITON_EXPONENT {
        if sign(far) * dir > 0.0 {
            found = true;
            break;
        }
        near = far;
        far *= 2.0;
    }
    if !found {
        return Err(Error::NoSolitonParameter(MAX_SOLITON_EXPONENT));
    }
    // Invariant: sign(near)·dir ≤ 0 < sign(far)·dir.
    for _ in 0..200 {
        let mid = 0.5 * (near + far);
        if mid == near || mid == far {
            break;
        }
        if sign(mid) * dir > 0.0 {
            far = mid;
        } else {
            near = mid;
        }
    }
    let a = 0.5 * (near + far);
    let total = crate::exactnum::expint::exp_poly_integral_real(&phi, a);
    let soliton = SolitonProfile { a, phi, total };
    let positivity = sample_positivity(|z| soliton.eval(z));
    let mut prof = Profile::new(ProfileShape::Soliton(soliton), Branch::Krs);
    prof.lambda = Some(ad.lambda());
    prof.krs_a = Some(a);
    prof.positivity = positivity;
    Ok(prof)
}

/// `Scal(z) = 2 d s r/(1 + rz) − F″(z)/p(z)`.
pub fn scalar_curvature<T: Field>(profile: &Profile<T>, ad: &AdmissibleData<T>, z: f64) -> f64 {
    let ad = ad.to_real();
    let lin = 1.0 + ad.r * z;
    2.0 * ad.d_n as f64 * ad.s * ad.r / lin - profile.second_derivative(z) / lin.powi(ad.d_n as i32)
}

/// Exact scalar curvature of a polynomial profile.
pub fn scalar_curvature_exact<T: Field>(profile: &Profile<T>, ad: &AdmissibleData<T>, z: &T) -> Option<T> {
    let f = profile.polynomial()?;
    let lin = T::one() + ad.r.clone() * z.clone();
    Some(
        T::from_int(2 * ad.d_n as i64) * ad.s.clone() * ad.r.clone() / lin.clone()
            - f.nth_derivative(2).eval(z) / pow(&lin, ad.d_n),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::{int, rat};
    use crate::join::{validate_join, BaseGeometry};
    use crate::quotient::{quotient_data, ReebVector};
    use num_traits::Zero;
    use proptest::prelude::*;

    fn ypq_data(v1: i64, v2: i64) -> AdmissibleData<BigRational> {
        let j = validate_join(BaseGeometry::cp(1).unwrap(), 1, 13, 21, 5).unwrap();
        let q = quotient_data(&j, &ReebVector::quasi_regular(v1, v2).unwrap()).unwrap();
        AdmissibleData::from_quotient(&j, &q).unwrap()
    }

    #[test]
    fn csc_profile_meets_boundary_conditions() {
        let ad = AdmissibleData::new(2, rat(7, 3), rat(1, 5), int(1), int(1)).unwrap();
        let prof = solve_csc_profile(&ad).unwrap();
        let f = prof.polynomial().unwrap();
        let (lo, hi) = ad.slope_targets();
        assert!(f.eval(&int(-1)).is_zero());
        assert_eq!(f.derivative().eval(&int(-1)), lo);
        assert_eq!(f.derivative().eval(&int(1)), hi);
        assert_eq!(prof.residual.clone().unwrap(), f.eval(&int(1)));
    }

    #[test]
    fn csc_scalar_is_k() {
        let ad = AdmissibleData::new(2, rat(7, 3), rat(1, 5), int(1), int(2)).unwrap();
        let prof = solve_csc_profile(&ad).unwrap();
        let k = prof.csc_k.clone().unwrap();
        for z in [rat(-1, 2), int(0), rat(3, 4)] {
            assert_eq!(scalar_curvature_exact(&prof, &ad, &z).unwrap(), k);
        }
        assert!((scalar_curvature(&prof, &ad, 0.3) - k.to_f64()).abs() < 1e-10);
    }

    #[test]
    fn extremal_scal_is_affine() {
        let ad = AdmissibleData::new(3, rat(5, 2), rat(-2, 7), int(3), int(2)).unwrap();
        let prof = solve_extremal(&ad).unwrap();
        assert_eq!(prof.boundary_conditions_exact(&ad), Some(true));
        let (a, b) = (prof.alpha.clone().unwrap(), prof.beta.clone().unwrap());
        for z in [rat(-1, 3), rat(1, 7), int(1)] {
            let scal = scalar_curvature_exact(&prof, &ad, &z).unwrap();
            assert_eq!(scal, -(&a * &z + &b));
        }
    }

    #[test]
    fn ke_is_extremal() {
        // d = 1, r = 1/5: the integral condition forces m1 : m2 = 8 : 7 and
        // the Fano line then fixes s = 19/28.
        let ad = AdmissibleData::new(1, rat(19, 28), rat(1, 5), int(8), int(7)).unwrap();
        let ke = solve_ke(&ad).unwrap();
        assert!(ke.residual.clone().unwrap().is_zero());
        let ex = solve_extremal(&ad).unwrap();
        assert_eq!(ke.polynomial(), ex.polynomial());
    }

    #[test]
    fn ke_integral_for_equal_ramification() {
        let m = int(3);
        let r = rat(1, 4);
        let s = int(1) / (&m * &r);
        let ad = AdmissibleData::new(1, s, r.clone(), m.clone(), m.clone()).unwrap();
        let prof = solve_ke(&ad).unwrap();
        assert_eq!(prof.residual.unwrap(), -(int(4) * r) / (int(3) * m));
    }

    #[test]
    fn fano_failure_rejected() {
        let ad = AdmissibleData::new(1, int(1), rat(1, 5), int(1), int(1)).unwrap();
        assert!(matches!(solve_ke(&ad), Err(Error::FanoConditionFails(_))));
    }

    #[test]
    fn ypq_se_ray_is_ke() {
        let ad = ypq_data(7, 5);
        let prof = solve_ke(&ad).unwrap();
        assert!(prof.residual.clone().unwrap().is_zero());
        assert!(prof.positivity_certified());
        let krs = solve_krs(&ad).unwrap();
        assert_eq!(krs.krs_a, Some(0.0));
        assert_eq!(krs.polynomial(), prof.polynomial());
    }

    #[test]
    fn ypq_soliton_off_the_se_ray() {
        let ad = ypq_data(5, 7);
        let ke = solve_ke(&ad).unwrap();
        let i0 = ke.residual.clone().unwrap().to_f64();
        assert!(i0 != 0.0);
        let prof = solve_krs(&ad).unwrap();
        let a = prof.krs_a.unwrap();
        assert!(a != 0.0);
        assert_eq!(a > 0.0, i0 < 0.0);
        let ProfileShape::Soliton(s) = &prof.shape else {
            panic!("expected soliton profile")
        };
        assert!(s.total.abs() < 1e-10);
        let oracle = crate::exactnum::expint::tests::simpson(
            &|z: f64| (-a * z).exp() * s.phi.eval(&z),
            -1.0,
            1.0,
            1e-14,
        );
        assert!(oracle.abs() < 1e-9);
        assert_eq!(prof.positivity, Positivity::NumericallySupported);
        for r in prof.boundary_residuals(&ad) {
            assert!(r.abs() < 1e-9, "{r}");
        }
    }

    #[test]
    fn positivity_detects_interior_zero() {
        // (1 − z²)(z − 1/2)² touches zero inside.
        let f = RationalPolynomial::from_ints(&[1, 0, -1]) * RationalPolynomial::new(vec![rat(-1, 2), int(1)]).pow(2);
        assert_eq!(certify_positivity(&f), Positivity::Fails);
        assert_eq!(certify_positivity(&f.to_real()), Positivity::Fails);
        let g = RationalPolynomial::from_ints(&[1, 0, -1]);
        assert_eq!(certify_positivity(&g), Positivity::Proved);
        assert_eq!(certify_positivity(&g.to_real()), Positivity::NumericallySupported);
    }

    fn admissible() -> impl Strategy<Value = AdmissibleData<BigRational>> {
        (1u32..5, -20i64..=20, 1i64..=10, 1i64..=9, 1i64..=9, 1i64..=9)
            .prop_filter_map("valid", |(d, rn, rd, sn, m1, m2)| {
                let r = rat(rn, 21);
                let s = rat(sn, rd) * if rn < 0 { int(-1) } else { int(1) };
                AdmissibleData::new(d, s, r, int(m1), int(m2)).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn every_branch_meets_boundary_conditions(ad in admissible()) {
            prop_assert_eq!(solve_extremal(&ad).unwrap().boundary_conditions_exact(&ad), Some(true));
            let csc = solve_csc_profile(&ad).unwrap();
            let f = csc.polynomial().unwrap();
            let (lo, hi) = ad.slope_targets();
            prop_assert!(f.eval(&int(-1)).is_zero());
            prop_assert_eq!(f.derivative().eval(&int(-1)), lo);
            prop_assert_eq!(f.derivative().eval(&int(1)), hi);
            prop_assert!(csc.second_derivative_sign_changes().unwrap() <= 1);
        }

        #[test]
        fn extremal_positive_when_sr_nonnegative(ad in admissible()) {
            prop_assert!(ad.s.clone() * ad.r.clone() >= int(0));
            prop_assert_eq!(solve_extremal(&ad).unwrap().positivity, Positivity::Proved);
        }

        #[test]
        fn homothety_scales_k(ad in admissible(), a in 1i64..7) {
            let a = rat(a, 3);
            let k = solve_csc_profile(&ad).unwrap().csc_k.unwrap();
            let k2 = solve_csc_profile(&ad.rescaled(&a)).unwrap().csc_k.unwrap();
            prop_assert_eq!(k2, k * a);
        }

        #[test]
        fn real_path_agrees_with_exact(ad in admissible()) {
            let exact = solve_extremal(&ad).unwrap();
            let real = solve_extremal(&ad.to_real()).unwrap();
            for z in [-0.9, -0.2, 0.4, 0.95] {
                prop_assert!((exact.eval(z) - real.eval(z)).abs() < 1e-9);
            }
            for r in real.boundary_residuals(&ad.to_real()) {
                prop_assert!(r.abs() < 1e-12);
            }
        }
    }
}
