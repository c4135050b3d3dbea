//! Join data `M ⋆_{l1,l2} S³_w` over a constant scalar curvature base and
//! its contact-level invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::field::int;
use crate::quotient::ReebVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarSign {
    Positive,
    Zero,
    Negative,
}

impl ScalarSign {
    fn of(q: &BigRational) -> Self {
        if q.is_positive() {
            ScalarSign::Positive
        } else if q.is_zero() {
            ScalarSign::Zero
        } else {
            ScalarSign::Negative
        }
    }
}

impl std::str::FromStr for ScalarSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "+" | "pos" => Ok(ScalarSign::Positive),
            "zero" | "0" => Ok(ScalarSign::Zero),
            "negative" | "-" | "neg" => Ok(ScalarSign::Negative),
            other => Err(Error::InvalidBase(format!("unknown scalar sign {other:?}"))),
        }
    }
}

/// The Kähler base `N`, seen only through the scalars the formulas use.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseGeometry {
    /// Complex dimension of `N`.
    pub d_n: u32,
    /// `s_{N_n} = A/n`.
    pub a: BigRational,
    /// Fano index, present iff `N` is monotone Kähler–Einstein.
    pub fano_index: Option<u64>,
    pub spin: bool,
    pub scalar_sign: ScalarSign,
    pub preset: Option<String>,
}

impl BaseGeometry {
    /// Complex projective space `CP^r` with its Fubini–Study metric.
    pub fn cp(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidBase("CP^r needs r >= 1".into()));
        }
        Ok(BaseGeometry {
            d_n: r,
            a: int(r as i64 + 1),
            fano_index: Some(r as u64 + 1),
            spin: r % 2 == 1,
            scalar_sign: ScalarSign::Positive,
            preset: Some(format!("CP^{r}")),
        })
    }

    /// A base given by its raw data; checked for internal consistency.
    pub fn custom(
        d_n: u32,
        a: BigRational,
        fano_index: Option<u64>,
        spin: bool,
        scalar_sign: Option<ScalarSign>,
    ) -> Result<Self> {
        let base = BaseGeometry {
            d_n,
            scalar_sign: scalar_sign.unwrap_or_else(|| ScalarSign::of(&a)),
            a,
            fano_index,
            spin,
            preset: None,
        };
        base.check()?;
        Ok(base)
    }

    /// Parses preset names such as `CP^2`, `CP2` or `cp3`.
    pub fn preset(name: &str) -> Result<Self> {
        let upper = name.trim().to_ascii_uppercase();
        let rest = upper
            .strip_prefix("CP")
            .ok_or_else(|| Error::InvalidBase(format!("unknown preset {name:?}")))?;
        let digits = rest.strip_prefix('^').unwrap_or(rest);
        let r: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidBase(format!("unknown preset {name:?}")))?;
        Self::cp(r)
    }

    fn check(&self) -> Result<()> {
        if self.d_n == 0 {
            return Err(Error::InvalidBase("d_N must be positive".into()));
        }
        if self.a > int(self.d_n as i64 + 1) {
            return Err(Error::InvalidBase(format!(
                "A = {} exceeds d_N + 1 = {}",
                self.a,
                self.d_n + 1
            )));
        }
        if ScalarSign::of(&self.a) != self.scalar_sign {
            return Err(Error::InvalidBase(format!(
                "sign of A = {} disagrees with scalar sign {:?}",
                self.a, self.scalar_sign
            )));
        }
        if let Some(i) = self.fano_index {
            if i == 0 {
                return Err(Error::InvalidBase("Fano index must be positive".into()));
            }
            if self.a != int(i as i64) {
                return Err(Error::InvalidBase(format!(
                    "monotone base needs A = I_N, got A = {} and I_N = {i}",
                    self.a
                )));
            }
        }
        if let Some(p) = &self.preset {
            let expected = Self::preset(p)?;
            if expected.d_n != self.d_n
                || expected.a != self.a
                || expected.fano_index != self.fano_index
                || expected.spin != self.spin
            {
                return Err(Error::InvalidBase(format!("data disagrees with preset {p}")));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match &self.preset {
            Some(p) => p.clone(),
            None => format!("custom(d_N={}, A={})", self.d_n, self.a),
        }
    }
}

/// Validated join data with `w1 ≥ w2`.
#[derive(Clone, Debug, PartialEq)]
pub struct JoinData {
    pub base: BaseGeometry,
    pub l1: u64,
    pub l2: u64,
    pub w1: u64,
    pub w2: u64,
    /// Set when the caller passed `w1 < w2` and the weights were swapped.
    pub swapped: bool,
}

impl JoinData {
    /// `|w| = w1 + w2`.
    pub fn w_sum(&self) -> u64 {
        self.w1 + self.w2
    }

    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if self.swapped {
            notes.push(format!(
                "weights given as ({}, {}) were reordered to w1 >= w2",
                self.w2, self.w1
            ));
        }
        notes
    }
}

impl fmt::Display for JoinData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M_{{{},{},({},{})}} over {}",
            self.l1,
            self.l2,
            self.w1,
            self.w2,
            self.base.label()
        )
    }
}

/// Checks the smoothness and coprimality conditions and canonicalizes the
/// weight order.
pub fn validate_join(base: BaseGeometry, l1: u64, l2: u64, w1: u64, w2: u64) -> Result<JoinData> {
    if l1 == 0 || l2 == 0 || w1 == 0 || w2 == 0 {
        return Err(Error::InvalidInput(
            "l1, l2, w1, w2 must all be positive".into(),
        ));
    }
    base.check()?;
    let gw = w1.gcd(&w2);
    if gw != 1 {
        return Err(Error::WeightsNotCoprime(gw));
    }
    let gl = l1.gcd(&l2);
    if gl != 1 {
        return Err(Error::LNotCoprime(gl));
    }
    let prod = BigInt::from(l1) * w1 * w2;
    let gs = BigInt::from(l2).gcd(&prod).to_u64().unwrap_or(0);
    if gs != 1 {
        return Err(Error::NonSmoothJoin(gs));
    }
    let swapped = w1 < w2;
    let (w1, w2) = if swapped { (w2, w1) } else { (w1, w2) };
    Ok(JoinData {
        base,
        l1,
        l2,
        w1,
        w2,
        swapped,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinStatus {
    Spin,
    NonSpin,
    Undetermined,
}

impl SpinStatus {
    fn from_bool(b: bool) -> Self {
        if b {
            SpinStatus::Spin
        } else {
            SpinStatus::NonSpin
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            SpinStatus::Spin => Some(true),
            SpinStatus::NonSpin => Some(false),
            SpinStatus::Undetermined => None,
        }
    }
}

/// Spin condition of the join from the parities of `l1`, `w1`, `w2`.
pub fn spin_condition(j: &JoinData) -> SpinStatus {
    spin_from_parity(j.base.spin, j.l1, j.w1, j.w2)
}

/// Parity rule behind [`spin_condition`], usable on raw data.
pub fn spin_from_parity(base_spin: bool, l1: u64, w1: u64, w2: u64) -> SpinStatus {
    if l1.is_multiple_of(2) || (w1 % 2 == 1 && w2 % 2 == 1) {
        SpinStatus::from_bool(base_spin)
    } else if (w1 + w2) % 2 == 1 {
        SpinStatus::from_bool(!base_spin)
    } else {
        // l1 odd, |w| even, one weight even: both weights even, which
        // coprime weights exclude.
        SpinStatus::Undetermined
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContactInvariants {
    /// Coefficient of `γ` in `c1(D)` when the base is monotone.
    pub c1_coefficient: Option<BigInt>,
    /// `c1(D)` written out; symbolic in `c1(N)` when the base is not monotone.
    pub c1_expression: String,
    pub spin: SpinStatus,
    /// `(l1*, l2*)`: the only `(l1, l2)` with vanishing `c1(D)`.
    pub relative_fano: Option<(u64, u64)>,
    pub se_possible: bool,
    pub regular_ray: Option<ReebVector>,
    /// `(1, 1)` is always in the cone and almost regular.
    pub almost_regular_ray: ReebVector,
}

pub fn contact_invariants(j: &JoinData) -> ContactInvariants {
    let w = j.w_sum();
    let l1w = BigInt::from(j.l1) * w;
    let (c1_coefficient, c1_expression, relative_fano) = match j.base.fano_index {
        Some(i) => {
            let c = BigInt::from(j.l2) * i - &l1w;
            let g = w.gcd(&i);
            let expr = format!("{c}·γ");
            (Some(c), expr, Some((i / g, w / g)))
        }
        None => (None, format!("π*c1(N) - {l1w}·γ"), None),
    };
    let se_possible = c1_coefficient.as_ref().is_some_and(|c| c.is_zero());
    let regular_ray = if (j.w1 - j.w2).is_multiple_of(j.l2) {
        Some(ReebVector::unit())
    } else {
        None
    };
    ContactInvariants {
        c1_coefficient,
        c1_expression,
        spin: spin_condition(j),
        relative_fano,
        se_possible,
        regular_ray,
        almost_regular_ray: ReebVector::unit(),
    }
}
