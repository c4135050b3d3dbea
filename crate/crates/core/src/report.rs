//! Machine-readable reports shared by the command line and the C ABI.
//!
//! Numbers are tagged by shape: exact rationals are `{"num", "den"}` string
//! pairs, approximate reals are `{"decimal", "error_bound"}`. Plain JSON
//! integers only echo integer input parameters and counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::admissible::{Profile, ProfileShape};
use crate::exactnum::{Field, IsolatedRoot, RationalPolynomial};
use crate::join::{BaseGeometry, ContactInvariants, JoinData};
use crate::quotient::{LogPairReport, OrbitPeriods, QuotientData, ReebVector};
use crate::rays::{RayProfile, RaySolution, ScanRow, YpqData};
use crate::topology::{GradedGroup, RingPresentation, RuledTopology, SphereJoinTopology, UnsupportedTopology};

pub const SCHEMA_ID: &str = "sasaki-report/1";

/// Error bound attached to floating-point solver output.
pub const NUMERIC_ERROR_BOUND: &str = "1e-10";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub exact: Vec<String>,
    pub approximate: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub argv: Vec<String>,
    pub input: Value,
    pub result: Value,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, argv: Vec<String>, input: Value, result: Value) -> Self {
        let mut provenance = Provenance {
            exact: Vec::new(),
            approximate: Vec::new(),
        };
        collect_provenance(&result, "result", &mut provenance);
        Report {
            schema: SCHEMA_ID.into(),
            command: command.into(),
            argv,
            input,
            result,
            provenance,
            warnings: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn error(command: &str, argv: Vec<String>, err: &crate::Error) -> Self {
        let mut r = Report::new(
            command,
            argv,
            Value::Null,
            json!({ "error": err.to_string(), "exit_code": err.exit_code() }),
        );
        r.warnings.push(err.to_string());
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text rendering of the same tree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if !self.input.is_null() {
            out.push_str("input:\n");
            render(&self.input, 1, &mut out);
        }
        out.push_str("result:\n");
        render(&self.result, 1, &mut out);
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn collect_provenance(v: &Value, path: &str, p: &mut Provenance) {
    match v {
        Value::Object(m) if is_exact(m) => p.exact.push(path.into()),
        Value::Object(m) if is_approx(m) => p.approximate.push(path.into()),
        Value::Object(m) => {
            for (k, x) in m {
                collect_provenance(x, &format!("{path}.{k}"), p);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                collect_provenance(x, &format!("{path}[{i}]"), p);
            }
        }
        _ => {}
    }
}

fn is_exact(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("num") && m.contains_key("den")
}

fn is_approx(m: &Map<String, Value>) -> bool {
    m.len() == 2 && m.contains_key("decimal") && m.contains_key("error_bound")
}

/// One-line rendering of a leaf or tagged number.
fn leaf(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if is_exact(m) => {
            let (n, d) = (m["num"].as_str().unwrap_or(""), m["den"].as_str().unwrap_or(""));
            Some(if d == "1" { n.to_string() } else { format!("{n}/{d}") })
        }
        Value::Object(m) if is_approx(m) => Some(format!(
            "{} (± {})",
            m["decimal"].as_str().unwrap_or(""),
            m["error_bound"].as_str().unwrap_or("")
        )),
        Value::Array(a) if a.iter().all(|x| !x.is_array()) => {
            let items: Option<Vec<String>> = a.iter().map(leaf).collect();
            items.map(|v| format!("[{}]", v.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match leaf(x) {
                    Some(s) => out.push_str(&format!("{pad}{k:<width$} : {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match leaf(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", leaf(other).unwrap_or_default())),
    }
}

pub fn exact(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

pub fn exact_int(n: &BigInt) -> Value {
    json!({ "num": n.to_string(), "den": "1" })
}

pub fn approx(decimal: impl Into<String>, error_bound: impl Into<String>) -> Value {
    json!({ "decimal": decimal.into(), "error_bound": error_bound.into() })
}

pub fn approx_f64(x: f64) -> Value {
    approx(format!("{x:e}"), NUMERIC_ERROR_BOUND)
}

/// A field element: exact when it carries a rational, approximate otherwise.
pub fn number<T: Field>(x: &T) -> Value {
    match x.to_rational() {
        Some(q) => exact(&q),
        None => approx_f64(x.to_f64()),
    }
}

fn opt<T>(x: &Option<T>, f: impl Fn(&T) -> Value) -> Value {
    x.as_ref().map_or(Value::Null, f)
}

pub fn root_value(root: &IsolatedRoot) -> Value {
    match &root.exact {
        Some(q) => exact(q),
        None => approx(root.decimal.clone(), root.error_bound()),
    }
}

pub fn base_value(b: &BaseGeometry) -> Value {
    json!({
        "label": b.label(),
        "d_n": b.d_n,
        "a": exact(&b.a),
        "fano_index": b.fano_index,
        "spin": b.spin,
        "scalar_sign": b.scalar_sign,
    })
}

pub fn join_value(j: &JoinData) -> Value {
    json!({
        "base": base_value(&j.base),
        "l1": j.l1,
        "l2": j.l2,
        "w1": j.w1,
        "w2": j.w2,
        "swapped": j.swapped,
    })
}

pub fn reeb_value(v: &ReebVector) -> Value {
    match v {
        ReebVector::QuasiRegular { v1, v2 } => json!({
            "type": "quasi-regular",
            "v1": exact_int(v1),
            "v2": exact_int(v2),
        }),
        ReebVector::Irregular { slope, decimal } => json!({
            "type": "irregular",
            "slope": match decimal {
                Some(d) => approx(d.clone(), decimal_bound(d)),
                None => approx_f64(*slope),
            },
        }),
    }
}

/// Refined decimals carry one guard digit beyond the certified places.
fn decimal_bound(d: &str) -> String {
    let places = d.split('.').nth(1).map_or(0, str::len);
    format!("1e-{}", places.saturating_sub(1))
}

pub fn invariants_value(ci: &ContactInvariants) -> Value {
    json!({
        "c1_coefficient": opt(&ci.c1_coefficient, exact_int),
        "c1_expression": ci.c1_expression,
        "spin": ci.spin,
        "relative_fano": ci.relative_fano.map(|(a, b)| json!([a, b])),
        "se_possible": ci.se_possible,
        "regular_ray": opt(&ci.regular_ray, reeb_value),
        "almost_regular_ray": reeb_value(&ci.almost_regular_ray),
    })
}

pub fn quotient_value(q: &QuotientData) -> Value {
    json!({
        "v1": exact_int(&q.v1),
        "v2": exact_int(&q.v2),
        "s": exact_int(&q.s),
        "m": exact_int(&q.m),
        "m1": exact_int(&q.m1),
        "m2": exact_int(&q.m2),
        "n": exact_int(&q.n),
        "r": exact(&q.r),
        "w_prime": [exact_int(&q.w_prime.0), exact_int(&q.w_prime.1)],
        "k1": exact_int(&q.k1),
        "k2": exact_int(&q.k2),
        "periods_over_2pi": {
            "generic": exact(&q.generic_period),
            "endpoint_1": exact(&q.endpoint_period_1),
            "endpoint_2": exact(&q.endpoint_period_2),
        },
    })
}

pub fn periods_value(p: &OrbitPeriods) -> Value {
    json!({
        "generic": exact(&p.generic),
        "endpoint_1": exact(&p.endpoint_1),
        "endpoint_2": exact(&p.endpoint_2),
        "regular": p.regular,
    })
}

pub fn log_pair_value(l: &LogPairReport) -> Value {
    json!({
        "regularity": l.regularity,
        "branch_divisor": l.branch.as_ref().map(|(a, b)| json!([exact(a), exact(b)])),
        "orbifold_c1": l.orbifold_c1.as_ref().map(|(a, b, c)| json!([exact(a), exact(b), exact(c)])),
    })
}

pub fn polynomial_value(p: &RationalPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(exact).collect())
}

/// Values of `F` at a fixed grid of interior points.
const SAMPLE_POINTS: [f64; 5] = [-0.75, -0.5, 0.0, 0.5, 0.75];

pub fn profile_value<T: Field>(p: &Profile<T>) -> Value {
    let shape = match &p.shape {
        ProfileShape::Polynomial(poly) => match poly.coeffs().first().and_then(|c| c.to_rational()) {
            Some(_) => json!({
                "type": "polynomial",
                "coefficients": Value::Array(poly.coeffs().iter().map(number).collect()),
            }),
            None => json!({
                "type": "polynomial",
                "coefficients": Value::Array(poly.coeffs().iter().map(|c| approx_f64(c.to_f64())).collect()),
            }),
        },
        ProfileShape::Soliton(s) => json!({
            "type": "soliton",
            "a": approx_f64(s.a),
            "total": approx_f64(s.total),
        }),
    };
    json!({
        "branch": p.branch,
        "shape": shape,
        "alpha": opt(&p.alpha, number),
        "beta": opt(&p.beta, number),
        "csc_c": opt(&p.csc_c, number),
        "csc_k": opt(&p.csc_k, number),
        "lambda": opt(&p.lambda, number),
        "krs_a": opt(&p.krs_a, |a| approx_f64(*a)),
        "residual": match &p.residual {
            Some(r) => number(r),
            None => approx_f64(p.residual_f64()),
        },
        "positivity": p.positivity,
        "samples": SAMPLE_POINTS.iter().map(|z| json!({ "z": z.to_string(), "f": approx_f64(p.eval(*z)) })).collect::<Vec<_>>(),
    })
}

pub fn ray_profile_value(p: &RayProfile) -> Value {
    match p {
        RayProfile::Exact(p) => profile_value(p),
        RayProfile::Real(p) => profile_value(p),
    }
}

pub fn ray_value(r: &RaySolution) -> Value {
    json!({
        "kind": r.kind.to_string(),
        "b": root_value(&r.b),
        "multiplicity": r.b.multiplicity,
        "regularity": r.regularity,
        "v": reeb_value(&r.v),
        "quotient": opt(&r.quotient, quotient_value),
        "scalar_value": match (&r.scalar_value_exact, r.scalar_value) {
            (Some(q), _) => exact(q),
            (None, Some(x)) => approx_f64(x),
            (None, None) => Value::Null,
        },
        "profile": opt(&r.profile, ray_profile_value),
        "einstein_checks": r.einstein_checks.iter().map(|c| json!({
            "v": reeb_value(&c.v),
            "integral": exact(&c.integral),
        })).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn rays_value(rays: &[RaySolution]) -> Value {
    json!({
        "ray_count": rays.len(),
        "rays": rays.iter().map(ray_value).collect::<Vec<_>>(),
    })
}

pub fn ypq_value(y: &YpqData) -> Value {
    json!({
        "p": y.p,
        "q": y.q,
        "join": join_value(&y.join),
        "w": [y.join.w1, y.join.w2],
        "discriminant": exact_int(&(BigInt::from(4 * y.p * y.p) - BigInt::from(3 * y.q * y.q))),
        "quasiregular": y.quasiregular,
        "sqrt_discriminant": y.n,
    })
}

pub fn graded_value(g: &GradedGroup) -> Value {
    Value::Array(
        g.entries
            .iter()
            .map(|(d, grp)| json!({ "degree": d, "group": grp.to_string() }))
            .collect(),
    )
}

pub fn ring_value(r: &RingPresentation) -> Value {
    json!({
        "presentation": r.to_string(),
        "generators": r.generators.iter().map(|g| json!({ "name": g.name, "degree": g.degree })).collect::<Vec<_>>(),
        "relations": r.relation_strings(),
        "homogeneous": r.is_homogeneous(),
    })
}

pub fn sphere_join_value(t: &SphereJoinTopology) -> Value {
    json!({
        "r": t.r,
        "ring": ring_value(&t.ring),
        "torsion_coefficient": exact_int(&t.torsion_coefficient),
        "groups": graded_value(&t.groups),
        "pi1": t.pi1.to_string(),
        "pi2": t.pi2.to_string(),
        "b2": t.b2,
        "notes": t.notes,
    })
}

pub fn ruled_value(t: &RuledTopology) -> Value {
    json!({
        "p": t.p,
        "n": t.n,
        "ring": ring_value(&t.ring),
        "notes": t.notes,
    })
}

pub fn unsupported_value(u: &UnsupportedTopology) -> Value {
    json!({
        "supported": false,
        "base": u.base,
        "required_inputs": u.required_inputs,
    })
}

/// Column headers of the CSV scan table for up to `width` rays per row.
pub fn scan_csv_header(width: usize) -> Vec<String> {
    let mut h = vec!["l2".to_string(), "valid".into(), "ray_count".into()];
    h.extend((1..=width).map(|i| format!("root_{i}")));
    h.extend((1..=width).map(|i| format!("regularity_{i}")));
    h
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let width = rows.iter().filter_map(|r| r.rays.as_ref().map(Vec::len)).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(scan_csv_header(width)).expect("in-memory write");
    for row in rows {
        let mut rec = vec![row.l2.to_string()];
        match &row.rays {
            Some(rays) => {
                rec.push("true".into());
                rec.push(rays.len().to_string());
                for i in 0..width {
                    rec.push(rays.get(i).map_or(String::new(), |r| leaf(&root_value(&r.b)).unwrap_or_default()));
                }
                for i in 0..width {
                    rec.push(rays.get(i).map_or(String::new(), |r| r.regularity.to_string()));
                }
            }
            None => {
                rec.push("false".into());
                rec.push(String::new());
                rec.extend(std::iter::repeat_n(String::new(), 2 * width));
            }
        }
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

pub fn scan_value(rows: &[ScanRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| match &r.rays {
                Some(rays) => json!({
                    "l2": r.l2,
                    "valid": true,
                    "ray_count": rays.len(),
                    "roots": rays.iter().map(|x| root_value(&x.b)).collect::<Vec<_>>(),
                    "regularity": rays.iter().map(|x| x.regularity).collect::<Vec<_>>(),
                }),
                None => json!({
                    "l2": r.l2,
                    "valid": false,
                    "rejection": r.rejection,
                }),
            })
            .collect(),
    )
}

/// Approximate value of a tagged number, for consumers that want `f64`.
pub fn tagged_to_f64(v: &Value) -> Option<f64> {
    let m = v.as_object()?;
    if is_exact(m) {
        let n: BigInt = m["num"].as_str()?.parse().ok()?;
        let d: BigInt = m["den"].as_str()?.parse().ok()?;
        return Some(crate::exactnum::rational_to_f64(&BigRational::new(n, d)));
    }
    if is_approx(m) {
        return m["decimal"].as_str()?.parse().ok();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::field::rat;

    #[test]
    fn numbers_are_tagged() {
        let r = Report::new(
            "t",
            vec![],
            Value::Null,
            json!({ "x": exact(&rat(5, 7)), "y": approx("0.5", "1e-3"), "z": [exact(&rat(1, 1))] }),
        );
        assert_eq!(r.provenance.exact, ["result.x", "result.z[0]"]);
        assert_eq!(r.provenance.approximate, ["result.y"]);
        let text = r.to_text();
        assert!(text.contains("5/7"));
        assert!(text.contains("0.5 (± 1e-3)"));
        assert_eq!(tagged_to_f64(&exact(&rat(1, 4))), Some(0.25));
    }

    #[test]
    fn round_trips_through_serde() {
        let r = Report::new("t", vec!["a".into()], json!({"l1": 1}), json!({"k": exact(&rat(-3, 2))}));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
