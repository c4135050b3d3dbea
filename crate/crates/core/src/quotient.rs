//! Quotients of the join by a Reeb flow: the log pair `(S_n, Δ)` and the
//! data attached to it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::join::JoinData;

/// A point of the two-dimensional Sasaki cone, up to scale.
#[derive(Clone, Debug, PartialEq)]
pub enum ReebVector {
    /// Coprime positive integers.
    QuasiRegular { v1: BigInt, v2: BigInt },
    /// Normalized to `(1, slope)` with irrational slope.
    Irregular { slope: f64, decimal: Option<String> },
}

impl ReebVector {
    /// The almost-regular vector `(1, 1)`.
    pub fn unit() -> Self {
        ReebVector::QuasiRegular {
            v1: BigInt::one(),
            v2: BigInt::one(),
        }
    }

    /// `(v1, v2)` reduced to lowest terms.
    pub fn quasi_regular(v1: impl Into<BigInt>, v2: impl Into<BigInt>) -> Result<Self> {
        let (v1, v2) = (v1.into(), v2.into());
        if !v1.is_positive() || !v2.is_positive() {
            return Err(Error::InvalidInput(format!(
                "Reeb vector components must be positive, got ({v1}, {v2})"
            )));
        }
        let g = v1.gcd(&v2);
        Ok(ReebVector::QuasiRegular {
            v1: v1 / &g,
            v2: v2 / &g,
        })
    }

    /// The ray of slope `b = v2/v1`.
    pub fn from_slope(b: &BigRational) -> Result<Self> {
        Self::quasi_regular(b.denom().clone(), b.numer().clone())
    }

    pub fn irregular(slope: f64, decimal: Option<String>) -> Result<Self> {
        if !(slope.is_finite() && slope > 0.0) {
            return Err(Error::InvalidInput(format!("slope must be positive, got {slope}")));
        }
        Ok(ReebVector::Irregular { slope, decimal })
    }

    pub fn is_quasi_regular(&self) -> bool {
        matches!(self, ReebVector::QuasiRegular { .. })
    }

    pub fn components(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            ReebVector::QuasiRegular { v1, v2 } => Some((v1, v2)),
            ReebVector::Irregular { .. } => None,
        }
    }

    pub fn slope_exact(&self) -> Option<BigRational> {
        self.components()
            .map(|(v1, v2)| BigRational::new(v2.clone(), v1.clone()))
    }

    pub fn slope_f64(&self) -> f64 {
        match self {
            ReebVector::QuasiRegular { .. } => {
                crate::exactnum::rational_to_f64(&self.slope_exact().expect("quasi-regular"))
            }
            ReebVector::Irregular { slope, .. } => *slope,
        }
    }
}

impl fmt::Display for ReebVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReebVector::QuasiRegular { v1, v2 } => write!(f, "({v1}, {v2})"),
            ReebVector::Irregular { slope, decimal } => match decimal {
                Some(d) => write!(f, "(1, {d})"),
                None => write!(f, "(1, {slope})"),
            },
        }
    }
}

/// The log pair of a quasi-regular quotient. Periods are stored as rational
/// multiples of `2π`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientData {
    pub v1: BigInt,
    pub v2: BigInt,
    pub s: BigInt,
    pub m: BigInt,
    pub m1: BigInt,
    pub m2: BigInt,
    /// Degree of `L_n`; negative when `v` lies below the `w`-ray.
    pub n: BigInt,
    pub r: BigRational,
    pub w_prime: (BigInt, BigInt),
    pub k1: BigInt,
    pub k2: BigInt,
    pub generic_period: BigRational,
    pub endpoint_period_1: BigRational,
    pub endpoint_period_2: BigRational,
}

impl QuotientData {
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.n.is_negative() {
            notes.push(format!(
                "n = {} < 0: v lies below the w-ray; reversing the fibre orientation identifies S_n with S_{}",
                self.n,
                -&self.n
            ));
        }
        notes
    }
}

/// The quotient formulas on raw integers, with no ordering assumption on
/// the weights.
pub fn quotient_formulas(
    l1: &BigInt,
    l2: &BigInt,
    w1: &BigInt,
    w2: &BigInt,
    v1: &BigInt,
    v2: &BigInt,
) -> Result<QuotientData> {
    let det = w1 * v2 - w2 * v1;
    if det.is_zero() {
        return Err(Error::ReducibleRay);
    }
    let s = det.abs().gcd(l2);
    let m = l2 / &s;
    let m1 = v1 * &m;
    let m2 = v2 * &m;
    let n = l1 * &det / &s;
    let r = BigRational::new(det.clone(), w1 * v2 + w2 * v1);
    let k1 = &m1 * l1 * w2;
    Ok(QuotientData {
        v1: v1.clone(),
        v2: v2.clone(),
        generic_period: BigRational::new(BigInt::one(), s.clone()),
        endpoint_period_1: BigRational::new(BigInt::one(), v1 * l2),
        endpoint_period_2: BigRational::new(BigInt::one(), v2 * l2),
        s,
        m,
        m1,
        m2,
        n,
        r,
        w_prime: (v2 * w1, v1 * w2),
        k1,
        k2: l2.clone(),
    })
}

fn join_ints(j: &JoinData) -> [BigInt; 4] {
    [j.l1.into(), j.l2.into(), j.w1.into(), j.w2.into()]
}

/// Log pair data for a quasi-regular Reeb vector.
pub fn quotient_data(j: &JoinData, v: &ReebVector) -> Result<QuotientData> {
    let (v1, v2) = v.components().ok_or_else(|| {
        Error::InvalidInput("integer quotient data needs a quasi-regular Reeb vector".into())
    })?;
    let [l1, l2, w1, w2] = join_ints(j);
    quotient_formulas(&l1, &l2, &w1, &w2, v1, v2)
}

/// What survives of the quotient data for an irregular `v = (1, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IrregularQuotient {
    pub slope: f64,
    pub r: f64,
    /// `m1 / m2 = v1 / v2`.
    pub m1_over_m2: f64,
}

pub fn irregular_quotient(j: &JoinData, slope: f64) -> Result<IrregularQuotient> {
    if !(slope.is_finite() && slope > 0.0) {
        return Err(Error::InvalidInput(format!("slope must be positive, got {slope}")));
    }
    let (w1, w2) = (j.w1 as f64, j.w2 as f64);
    let det = w1 * slope - w2;
    if det == 0.0 {
        return Err(Error::ReducibleRay);
    }
    Ok(IrregularQuotient {
        slope,
        r: det / (w1 * slope + w2),
        m1_over_m2: 1.0 / slope,
    })
}

/// `r` as an exact rational for slope `b`: `(w1 b − w2)/(w1 b + w2)`.
pub fn r_of_slope(j: &JoinData, b: &BigRational) -> BigRational {
    let w1 = BigRational::from_integer(j.w1.into());
    let w2 = BigRational::from_integer(j.w2.into());
    (&w1 * b - &w2) / (&w1 * b + &w2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPeriods {
    /// Multiples of `2π`.
    pub generic: BigRational,
    pub endpoint_1: BigRational,
    pub endpoint_2: BigRational,
    pub regular: bool,
}

impl OrbitPeriods {
    /// `generic / endpoint_i`, always an integer.
    pub fn multiples(&self) -> (BigInt, BigInt) {
        (
            (&self.generic / &self.endpoint_1).to_integer(),
            (&self.generic / &self.endpoint_2).to_integer(),
        )
    }
}

pub fn orbit_periods(j: &JoinData, v: &ReebVector) -> Result<OrbitPeriods> {
    let (v1, v2) = v.components().ok_or_else(|| {
        Error::InvalidInput("orbit periods need a quasi-regular Reeb vector".into())
    })?;
    let l2 = BigInt::from(j.l2);
    let det = BigInt::from(j.w1) * v2 - BigInt::from(j.w2) * v1;
    // On the w-ray the fibre is CP¹[w]; s degenerates to l2.
    let s = if det.is_zero() { l2.clone() } else { det.abs().gcd(&l2) };
    let generic = BigRational::new(BigInt::one(), s);
    let endpoint_1 = BigRational::new(BigInt::one(), v1 * &l2);
    let endpoint_2 = BigRational::new(BigInt::one(), v2 * &l2);
    let regular = generic == endpoint_1 && generic == endpoint_2;
    Ok(OrbitPeriods {
        generic,
        endpoint_1,
        endpoint_2,
        regular,
    })
}

/// Kähler class coefficients `(k1, k2)`; checks `gcd(k1, k2) = m`.
pub fn kahler_class(q: &QuotientData) -> Result<(BigInt, BigInt)> {
    if q.k1.gcd(&q.k2) != q.m {
        return Err(Error::Internal(format!(
            "gcd(k1, k2) = gcd({}, {}) differs from m = {}",
            q.k1, q.k2, q.m
        )));
    }
    Ok((q.k1.clone(), q.k2.clone()))
}

/// Recovers `(w1, w2, l1, l2)` from an almost-regular quotient.
pub fn invert_almost_regular(n: u64, m: u64, k1: u64, k2: u64) -> Result<(u64, u64, u64, u64)> {
    if n == 0 || m == 0 || k1 == 0 || k2 == 0 {
        return Err(Error::InvalidInput("n, m, k1, k2 must be positive".into()));
    }
    if k1.gcd(&k2) != m {
        return Err(Error::InconsistentM);
    }
    let num = BigInt::from(k1);
    let den = BigInt::from(n) * k2 + k1;
    let g = num.gcd(&den);
    let w2 = &num / &g;
    let w1 = &den / &g;
    let ln = BigInt::from(n);
    let ld = BigInt::from(m) * (&w1 - &w2);
    let g = ln.gcd(&ld);
    let to_u64 = |x: BigInt| {
        x.to_u64()
            .ok_or_else(|| Error::InvalidInput("recovered data exceeds 64 bits".into()))
    };
    Ok((
        to_u64(w1)?,
        to_u64(w2)?,
        to_u64(&ln / &g)?,
        to_u64(&ld / &g)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regularity {
    Regular,
    AlmostRegular,
    QuasiRegular,
    Irregular,
    Reducible,
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regularity::Regular => "regular",
            Regularity::AlmostRegular => "almost-regular",
            Regularity::QuasiRegular => "quasi-regular",
            Regularity::Irregular => "irregular",
            Regularity::Reducible => "reducible",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogPairReport {
    /// `(1 − 1/m1, 1 − 1/m2)`, the coefficients of `D1`, `D2` in `Δ`.
    pub branch: Option<(BigRational, BigRational)>,
    /// Coefficients of `p*c1(N)`, `PD(D1)`, `PD(D2)` in `c1^orb`.
    pub orbifold_c1: Option<(BigRational, BigRational, BigRational)>,
    pub regularity: Regularity,
}

pub fn classify(j: &JoinData, v: &ReebVector) -> Regularity {
    match v {
        ReebVector::Irregular { .. } => Regularity::Irregular,
        ReebVector::QuasiRegular { v1, v2 } => {
            if BigInt::from(j.w1) * v2 == BigInt::from(j.w2) * v1 {
                Regularity::Reducible
            } else if v1.is_one() && v2.is_one() {
                if (j.w1 - j.w2).is_multiple_of(j.l2) {
                    Regularity::Regular
                } else {
                    Regularity::AlmostRegular
                }
            } else {
                Regularity::QuasiRegular
            }
        }
    }
}

pub fn log_pair_report(j: &JoinData, v: &ReebVector) -> Result<LogPairReport> {
    let regularity = classify(j, v);
    if matches!(regularity, Regularity::Irregular | Regularity::Reducible) {
        return Ok(LogPairReport {
            branch: None,
            orbifold_c1: None,
            regularity,
        });
    }
    let q = quotient_data(j, v)?;
    let inv1 = BigRational::new(BigInt::one(), q.m1.clone());
    let inv2 = BigRational::new(BigInt::one(), q.m2.clone());
    let one = BigRational::one();
    Ok(LogPairReport {
        branch: Some((&one - &inv1, &one - &inv2)),
        orbifold_c1: Some((one, inv1, inv2)),
        regularity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::{int, rat};
    use crate::join::{validate_join, BaseGeometry};
    use proptest::prelude::*;

    fn ypq() -> JoinData {
        validate_join(BaseGeometry::cp(1).unwrap(), 1, 13, 21, 5).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn ypq_at_five_seven() {
        let v = ReebVector::quasi_regular(5, 7).unwrap();
        let q = quotient_data(&ypq(), &v).unwrap();
        assert_eq!(
            (q.s.clone(), q.m.clone(), q.m1.clone(), q.m2.clone(), q.n.clone()),
            (b(1), b(13), b(65), b(91), b(122))
        );
        assert_eq!(kahler_class(&q).unwrap(), (b(325), b(13)));
        let p = orbit_periods(&ypq(), &v).unwrap();
        assert_eq!(p.generic, int(1));
        assert_eq!(p.endpoint_1, rat(1, 65));
        assert_eq!(p.endpoint_2, rat(1, 91));
        assert!(!p.regular);
        let lp = log_pair_report(&ypq(), &v).unwrap();
        assert_eq!(lp.branch, Some((rat(64, 65), rat(90, 91))));
        assert_eq!(lp.regularity, Regularity::QuasiRegular);
    }

    #[test]
    fn cp2_unit_vector() {
        let j = validate_join(BaseGeometry::cp(2).unwrap(), 1, 1, 3, 2).unwrap();
        let q = quotient_data(&j, &ReebVector::unit()).unwrap();
        assert_eq!((q.s.clone(), q.m.clone(), q.m1.clone(), q.m2.clone(), q.n.clone()), (b(1), b(1), b(1), b(1), b(1)));
        assert_eq!(q.r, rat(1, 5));
        assert_eq!(kahler_class(&q).unwrap(), (b(2), b(1)));
        let p = orbit_periods(&j, &ReebVector::unit()).unwrap();
        assert!(p.regular);
        assert_eq!(classify(&j, &ReebVector::unit()), Regularity::Regular);
    }

    #[test]
    fn almost_regular_periods() {
        let j = validate_join(BaseGeometry::cp(2).unwrap(), 1, 5, 3, 2).unwrap();
        let p = orbit_periods(&j, &ReebVector::unit()).unwrap();
        assert_eq!(p.endpoint_1, p.endpoint_2);
        assert_ne!(p.generic, p.endpoint_1);
        assert!(!p.regular);
        assert_eq!(classify(&j, &ReebVector::unit()), Regularity::AlmostRegular);
    }

    #[test]
    fn reducible_ray_rejected() {
        let v = ReebVector::quasi_regular(21, 5).unwrap();
        assert_eq!(quotient_data(&ypq(), &v), Err(Error::ReducibleRay));
        assert_eq!(classify(&ypq(), &v), Regularity::Reducible);
    }

    #[test]
    fn negative_degree_gets_note() {
        let v = ReebVector::quasi_regular(1, 100).unwrap();
        let q = quotient_data(&ypq(), &v).unwrap();
        assert!(q.n.is_positive());
        let v = ReebVector::quasi_regular(100, 1).unwrap();
        let q = quotient_data(&ypq(), &v).unwrap();
        assert!(q.n.is_negative() && q.r.is_negative());
        assert_eq!(q.notes().len(), 1);
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_almost_regular(1, 1, 2, 1).unwrap(), (3, 2, 1, 1));
        assert_eq!(invert_almost_regular(1, 2, 2, 1), Err(Error::InconsistentM));
        let q = quotient_data(&ypq(), &ReebVector::unit()).unwrap();
        let u = |x: &BigInt| x.to_u64().unwrap();
        assert_eq!(
            invert_almost_regular(u(&q.n), u(&q.m), u(&q.k1), u(&q.k2)).unwrap(),
            (21, 5, 1, 13)
        );
    }

    #[test]
    fn irregular_extension() {
        let iq = irregular_quotient(&ypq(), 2.0f64.sqrt()).unwrap();
        let b = 2.0f64.sqrt();
        assert!((iq.r - (21.0 * b - 5.0) / (21.0 * b + 5.0)).abs() < 1e-15);
        assert!((iq.m1_over_m2 - 1.0 / b).abs() < 1e-15);
    }

    fn coprime_pair(max: u64) -> impl Strategy<Value = (u64, u64)> {
        (1u64..max, 1u64..max).prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
    }

    fn join_and_v() -> impl Strategy<Value = (JoinData, BigInt, BigInt)> {
        (1u32..4, coprime_pair(40), coprime_pair(40), coprime_pair(60))
            .prop_filter_map("valid non-reducible", |(r, l, w, v)| {
                let j = validate_join(BaseGeometry::cp(r).ok()?, l.0, l.1, w.0, w.1).ok()?;
                if j.w1 * v.1 == j.w2 * v.0 {
                    return None;
                }
                Some((j, BigInt::from(v.0), BigInt::from(v.1)))
            })
    }

    proptest! {
        #[test]
        fn quotient_invariants((j, v1, v2) in join_and_v()) {
            let v = ReebVector::quasi_regular(v1.clone(), v2.clone()).unwrap();
            let q = quotient_data(&j, &v).unwrap();
            prop_assert_eq!(BigRational::new(q.m1.clone(), q.m2.clone()), BigRational::new(v1.clone(), v2.clone()));
            let det = BigInt::from(j.w1) * &v2 - BigInt::from(j.w2) * &v1;
            prop_assert_eq!(&q.n * &q.k2 * &q.s, BigInt::from(j.l1) * j.l2 * &det);
            prop_assert!(q.r.abs() < BigRational::one() && !q.r.is_zero());
            prop_assert_eq!(q.n.signum(), q.r.numer().signum());
            prop_assert!((BigInt::from(j.l2) % &q.s).is_zero());
            prop_assert!((&q.k1 * BigInt::from(j.l2) - &q.k2 * &q.m1 * j.l1 * j.w2).is_zero());
            prop_assert_eq!(kahler_class(&q).unwrap().0, q.k1.clone());
            for vi in [&v1, &v2] {
                prop_assert!((vi * BigInt::from(j.l2) % &q.s).is_zero());
            }
            let p = orbit_periods(&j, &v).unwrap();
            prop_assert!((&p.generic / &p.endpoint_1).is_integer());
            prop_assert!((&p.generic / &p.endpoint_2).is_integer());
        }

        #[test]
        fn swap_covariance((j, v1, v2) in join_and_v()) {
            let [l1, l2, w1, w2] = join_ints(&j);
            let a = quotient_formulas(&l1, &l2, &w1, &w2, &v1, &v2).unwrap();
            let b = quotient_formulas(&l1, &l2, &w2, &w1, &v2, &v1).unwrap();
            prop_assert_eq!(&a.n, &(-&b.n));
            prop_assert_eq!(&a.r, &(-&b.r));
            prop_assert_eq!((&a.m1, &a.m2), (&b.m2, &b.m1));
        }

        #[test]
        fn fano_identity_on_the_se_locus(
            r in 1u32..5, w in coprime_pair(40), v in coprime_pair(40)
        ) {
            // Choose (l1, l2) = relative Fano indices so that l2·I = l1·|w|.
            let i = r as u64 + 1;
            let s = w.0 + w.1;
            let g = s.gcd(&i);
            if let Ok(j) = validate_join(BaseGeometry::cp(r).unwrap(), i / g, s / g, w.0, w.1) {
                let (v1, v2) = (BigInt::from(v.0), BigInt::from(v.1));
                if let Ok(q) = quotient_data(&j, &ReebVector::quasi_regular(v1, v2).unwrap()) {
                    let one = BigRational::one();
                    let lhs = BigRational::from_integer(BigInt::from(2 * i)) / BigRational::from_integer(q.n.clone()) * &q.r;
                    let rhs = (&one + &q.r) / BigRational::from_integer(q.m2.clone())
                        + (&one - &q.r) / BigRational::from_integer(q.m1.clone());
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
