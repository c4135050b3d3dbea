//! Closed-form topology: orbifold cohomology of `CP¹[w1, w2]`, the integral
//! cohomology ring of joins `S^{2r+1} ⋆ S³_w`, and the ring of the ruled
//! manifolds `S_n = P(O ⊕ O(n))` over `CP^p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::join::{validate_join, BaseGeometry, JoinData};

/// A finitely generated abelian group `Z^rank ⊕ Z_torsion`; `torsion` is
/// 1 when there is none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub rank: u32,
    pub torsion: BigInt,
}

impl Group {
    pub fn zero() -> Self {
        Group { rank: 0, torsion: BigInt::one() }
    }

    pub fn free(rank: u32) -> Self {
        Group { rank, torsion: BigInt::one() }
    }

    /// `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Group { rank: 0, torsion: n.into().abs() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_one()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free = match self.rank {
            0 => None,
            1 => Some("Z".to_string()),
            k => Some(format!("Z^{k}")),
        };
        let tors = (!self.torsion.is_one()).then(|| format!("Z_{}", self.torsion));
        match (free, tors) {
            (None, None) => f.write_str("0"),
            (Some(a), None) | (None, Some(a)) => f.write_str(&a),
            (Some(a), Some(b)) => write!(f, "{a} ⊕ {b}"),
        }
    }
}

/// Groups indexed by degree, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedGroup {
    pub entries: Vec<(u32, Group)>,
}

impl GradedGroup {
    pub fn get(&self, degree: u32) -> Option<&Group> {
        self.entries.iter().find(|(d, _)| *d == degree).map(|(_, g)| g)
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.last().map_or(0, |(d, _)| *d)
    }

    fn is_canonical(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].0 < w[1].0) && self.entries.iter().all(|(_, g)| g.torsion.is_positive())
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(d, g)| format!("H^{d} = {g}")).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// An integer polynomial in the generators; keys are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPolynomial {
    pub fn monomial(coeff: impl Into<BigInt>, exponents: Vec<u32>) -> Self {
        let mut p = IntPolynomial::default();
        p.add_term(exponents, coeff.into());
        p
    }

    fn add_term(&mut self, exponents: Vec<u32>, coeff: BigInt) {
        let entry = self.terms.entry(exponents.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = IntPolynomial::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = (0..e1.len().max(e2.len()))
                    .map(|i| e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = IntPolynomial::monomial(1, vec![]);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Degrees of all terms under the given generator degrees.
    pub fn degrees(&self, gens: &[Generator]) -> Vec<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().zip(gens).map(|(k, g)| k * g.degree).sum())
            .collect()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        let mut key = exponents.to_vec();
        while key.last() == Some(&0) {
            key.pop();
        }
        self.terms
            .iter()
            .find(|(e, _)| {
                let mut e = (*e).clone();
                while e.last() == Some(&0) {
                    e.pop();
                }
                e == key
            })
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn format_with(&self, gens: &[Generator]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let key = |e: &Vec<u32>| {
            let total: u32 = e.iter().sum();
            let rev: Vec<u32> = e.iter().rev().copied().collect();
            (total, rev)
        };
        let mut ordered: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| key(b.0).cmp(&key(a.0)));
        let mut s = String::new();
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(gens)
                .filter(|(k, _)| **k > 0)
                .map(|(k, g)| if *k == 1 { g.name.clone() } else { format!("{}^{}", g.name, k) })
                .collect();
            let mono = mono.join("·");
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}·{mono}"),
            };
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<IntPolynomial>,
}

impl RingPresentation {
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| {
            let d = r.degrees(&self.generators);
            d.windows(2).all(|w| w[0] == w[1])
        })
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.format_with(&self.generators)).collect()
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        write!(f, "Z[{}]/({})", names.join(","), self.relation_strings().join(", "))
    }
}

/// Orbifold cohomology of `CP¹[w1, w2]` up to `max_degree` (default 6).
pub fn cohomology_weighted_line(w1: u64, w2: u64, max_degree: Option<u32>) -> Result<GradedGroup> {
    if w1 == 0 || w2 == 0 {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let g = w1.gcd(&w2);
    if g != 1 {
        return Err(Error::WeightsNotCoprime(g));
    }
    let top = max_degree.unwrap_or(6);
    let entries = (0..=top)
        .map(|deg| {
            let group = match deg {
                0 | 2 => Group::free(1),
                d if d % 2 == 1 => Group::zero(),
                _ => Group::cyclic(BigInt::from(w1) * w2),
            };
            (deg, group)
        })
        .collect();
    let out = GradedGroup { entries };
    debug_assert!(out.is_canonical());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SphereJoinTopology {
    pub join: JoinData,
    pub r: u32,
    pub ring: RingPresentation,
    /// Coefficient of `x²`, `w1 w2 l1²`.
    pub torsion_coefficient: BigInt,
    /// Additive groups `H^0 … H^{2r+3}`.
    pub groups: GradedGroup,
    pub pi1: Group,
    pub pi2: Group,
    pub b2: u32,
    pub notes: Vec<String>,
}

/// `d4` of the fibre class of `S³_w`, pulled back along `s1 ↦ l2 s`,
/// `s2 ↦ −l1 s`. The class on `BT²` is `w1 w2 s2²`.
pub fn spectral_d4_coefficient(l1: u64, l2: u64, w1: u64, w2: u64) -> BigInt {
    // Generators of H*(BT²): s1, s2; of H*(BS¹): s.
    let class = IntPolynomial::monomial(BigInt::from(w1) * w2, vec![0, 2]);
    let images = [
        IntPolynomial::monomial(l2, vec![1]),
        IntPolynomial::monomial(-BigInt::from(l1), vec![1]),
    ];
    let mut pulled = IntPolynomial::default();
    for (e, c) in &class.terms {
        let mut term = IntPolynomial::monomial(c.clone(), vec![]);
        for (k, img) in e.iter().zip(&images) {
            term = term.mul(&img.pow(*k));
        }
        pulled = pulled.add(&term);
    }
    pulled.coefficient(&[2])
}

/// Cohomology ring of `S^{2r+1} ⋆_{l1,l2} S³_w`.
pub fn sphere_join_ring(r: u32, l1: u64, l2: u64, w1: u64, w2: u64) -> Result<SphereJoinTopology> {
    let join = validate_join(BaseGeometry::cp(r)?, l1, l2, w1, w2)?;
    let c = BigInt::from(join.w1) * join.w2 * join.l1 * join.l1;
    if spectral_d4_coefficient(join.l1, join.l2, join.w1, join.w2) != c {
        return Err(Error::Internal("d4 coefficient disagrees with the ring relation".into()));
    }
    let generators = vec![
        Generator { name: "x".into(), degree: 2 },
        Generator { name: "y".into(), degree: 2 * r + 1 },
    ];
    let relations = vec![
        IntPolynomial::monomial(c.clone(), vec![2, 0]),
        IntPolynomial::monomial(1, vec![r + 1, 0]),
        IntPolynomial::monomial(1, vec![2, 1]),
        IntPolynomial::monomial(1, vec![0, 2]),
    ];
    let ring = RingPresentation { generators, relations };
    if !ring.is_homogeneous() {
        return Err(Error::Internal("inhomogeneous relation".into()));
    }
    let top = 2 * r + 3;
    let entries = (0..=top)
        .map(|deg| {
            let g = if deg == 0 || deg == 2 || deg == 2 * r + 1 || deg == top {
                Group::free(1)
            } else if deg % 2 == 0 && deg <= 2 * r {
                Group::cyclic(c.clone())
            } else {
                Group::zero()
            };
            (deg, g)
        })
        .collect();
    let mut notes = vec![
        "simply connected: π1 = 0, π2 = Z".to_string(),
        format!("torsion coefficient w1·w2·l1² = {c}"),
    ];
    if r == 2 {
        notes.push("dimension 7 with Fano base: b2 = 1 satisfies b2 <= 9".into());
    }
    Ok(SphereJoinTopology {
        join,
        r,
        ring,
        torsion_coefficient: c,
        groups: GradedGroup { entries },
        pi1: Group::zero(),
        pi2: Group::free(1),
        b2: 1,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuledTopology {
    pub p: u32,
    pub n: i64,
    pub ring: RingPresentation,
    pub notes: Vec<String>,
}

/// `H*(S_n) = Z[x1, x2]/(x1^{p+1}, x2 (n x1 + x2))`.
pub fn ruled_ring_cpp(p: u32, n: i64) -> Result<RuledTopology> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    let generators = vec![
        Generator { name: "x1".into(), degree: 2 },
        Generator { name: "x2".into(), degree: 2 },
    ];
    let x2 = IntPolynomial::monomial(1, vec![0, 1]);
    let lin = IntPolynomial::monomial(n, vec![1, 0]).add(&x2);
    let relations = vec![IntPolynomial::monomial(1, vec![p + 1, 0]), x2.mul(&lin)];
    let ring = RingPresentation { generators, relations };
    if !ring.is_homogeneous() {
        return Err(Error::Internal("inhomogeneous relation".into()));
    }
    let mut notes = Vec::new();
    if p > 1 {
        notes.push(format!("S_n ≅ S_n' exactly when |n'| = |n| = {}", n.unsigned_abs()));
    } else {
        notes.push(format!("Hirzebruch surface; diffeomorphism type fixed by the parity of n = {n}"));
    }
    Ok(RuledTopology { p, n, ring, notes })
}

/// The general join `M ⋆ S³_w` is not computed; this names the missing data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsupportedTopology {
    pub base: String,
    pub required_inputs: Vec<String>,
}

pub fn general_join_report(base: &BaseGeometry) -> UnsupportedTopology {
    UnsupportedTopology {
        base: base.label(),
        required_inputs: vec![
            "integral cohomology ring of the Sasaki manifold M over the base".into(),
            "E2 page of the Leray–Serre sequence of M × S³_w → M ×_{S¹} S³_w".into(),
            "differentials d_k beyond d4 (base specific)".into(),
            "pullback of the Euler classes of both circle bundles".into(),
        ],
    }
}
