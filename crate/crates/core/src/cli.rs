//! Command-line front end. [`run`] does all the work so it can be driven
//! in-process by tests and by the C ABI.

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::admissible::{solve_extremal, AdmissibleData};
use crate::error::{Error, Result};
use crate::join::{contact_invariants, validate_join, BaseGeometry, JoinData, ScalarSign};
use crate::quotient::{classify, log_pair_report, orbit_periods, quotient_data, ReebVector};
use crate::rays::{
    build_csc_polynomial, find_csc_rays, find_se_ray, find_srs_ray, multi_ray_threshold, scan_csc, ypq_map, ypq_scan,
    CscPolynomial, RaySolution,
};
use crate::report::{self, Report};
use crate::topology::{cohomology_weighted_line, ruled_ring_cpp, sphere_join_ring};

#[derive(Parser, Debug)]
#[command(name = "sasaki", version, about = "Sasaki geometry of joins with weighted 3-spheres")]
pub struct Cli {
    /// Emit the JSON report instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the smoothness and coprimality conditions.
    Validate(JoinArgs),
    /// Contact invariants: c1, spin, relative Fano indices, regular ray.
    Invariants(JoinArgs),
    /// Rays in the w-Sasaki cone.
    #[command(subcommand)]
    Rays(RaysCommand),
    /// The Y^{p,q} family as joins over CP^1.
    Ypq(YpqArgs),
    /// Closed-form cohomology.
    #[command(subcommand)]
    Topology(TopologyCommand),
    /// Parameter scans.
    #[command(subcommand)]
    Scan(ScanCommand),
}

#[derive(Subcommand, Debug)]
pub enum RaysCommand {
    /// All constant scalar curvature rays.
    Csc(JoinArgs),
    /// Extremal profile on one ray.
    Extremal(RayArgs),
    /// The Sasaki–Einstein ray.
    Se(JoinArgs),
    /// Sasaki–Ricci soliton on one ray.
    Soliton(RayArgs),
    /// Smallest l2 with at least three CSC rays.
    Threshold(ThresholdArgs),
}

#[derive(Subcommand, Debug)]
pub enum TopologyCommand {
    /// Cohomology ring of S^{2r+1} joined with S^3_w.
    SphereJoin(SphereJoinArgs),
    /// Orbifold cohomology of CP^1[w1, w2].
    WeightedLine(WeightedLineArgs),
    /// Cohomology ring of the ruled manifold S_n over CP^p.
    RuledCpp(RuledArgs),
}

#[derive(Subcommand, Debug)]
pub enum ScanCommand {
    /// CSC rays for a range of l2.
    Csc(ScanCscArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BaseArgs {
    /// Base preset (CP1, CP2, CP^r, ...) or `custom`.
    #[arg(long, default_value = "CP2")]
    pub base: String,
    /// Complex dimension of a custom base.
    #[arg(long)]
    pub dim: Option<u32>,
    /// The constant A of a custom base, e.g. `3` or `5/2`.
    #[arg(long)]
    pub a: Option<String>,
    /// Fano index of a custom monotone base.
    #[arg(long)]
    pub fano_index: Option<u64>,
    /// Custom base is spin.
    #[arg(long)]
    pub spin: bool,
    /// Sign of the scalar curvature of a custom base.
    #[arg(long)]
    pub scalar_sign: Option<ScalarSign>,
}

#[derive(Args, Debug, Clone)]
pub struct JoinArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long)]
    pub l1: u64,
    #[arg(long)]
    pub l2: u64,
    /// Weights as `w1,w2`.
    #[arg(long, value_parser = parse_pair)]
    pub w: (u64, u64),
}

#[derive(Args, Debug, Clone)]
pub struct RayArgs {
    #[command(flatten)]
    pub join: JoinArgs,
    /// First component of v; an integer, or a decimal for irregular rays.
    #[arg(long)]
    pub v1: String,
    #[arg(long)]
    pub v2: String,
}

#[derive(Args, Debug, Clone)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long)]
    pub l1: u64,
    #[arg(long, value_parser = parse_pair)]
    pub w: (u64, u64),
}

#[derive(Args, Debug, Clone)]
pub struct YpqArgs {
    #[arg(long, requires = "q", conflicts_with = "scan_pmax")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub q: Option<u64>,
    /// List every (p, q) with p up to this bound.
    #[arg(long)]
    pub scan_pmax: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct SphereJoinArgs {
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub l1: u64,
    #[arg(long)]
    pub l2: u64,
    #[arg(long, value_parser = parse_pair)]
    pub w: (u64, u64),
}

#[derive(Args, Debug, Clone)]
pub struct WeightedLineArgs {
    #[arg(long, value_parser = parse_pair)]
    pub w: (u64, u64),
    #[arg(long)]
    pub max_degree: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct RuledArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
}

#[derive(Args, Debug, Clone)]
pub struct ScanCscArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long)]
    pub l1: u64,
    #[arg(long, value_parser = parse_pair)]
    pub w: (u64, u64),
    #[arg(long)]
    pub l2_from: u64,
    #[arg(long)]
    pub l2_to: u64,
    /// Emit CSV (columns l2, valid, ray_count, root_i..., regularity_i...).
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

fn parse_pair(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `w1,w2`, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))
}

impl BaseArgs {
    pub fn build(&self) -> Result<BaseGeometry> {
        if !self.base.eq_ignore_ascii_case("custom") {
            if self.dim.is_some() || self.a.is_some() || self.fano_index.is_some() {
                return Err(Error::InvalidInput(
                    "--dim/--a/--fano-index only apply to --base custom".into(),
                ));
            }
            return BaseGeometry::preset(&self.base);
        }
        let dim = self
            .dim
            .ok_or_else(|| Error::InvalidInput("--base custom needs --dim".into()))?;
        let a = match (&self.a, self.fano_index) {
            (Some(a), _) => parse_rational(a)?,
            (None, Some(i)) => BigRational::from_integer(i.into()),
            (None, None) => return Err(Error::InvalidInput("--base custom needs --a or --fano-index".into())),
        };
        BaseGeometry::custom(dim, a, self.fano_index, self.spin, self.scalar_sign)
    }
}

impl JoinArgs {
    pub fn build(&self) -> Result<JoinData> {
        validate_join(self.base.build()?, self.l1, self.l2, self.w.0, self.w.1)
    }
}

fn parse_reeb(v1: &str, v2: &str) -> Result<ReebVector> {
    if let (Ok(a), Ok(b)) = (v1.trim().parse::<u64>(), v2.trim().parse::<u64>()) {
        return ReebVector::quasi_regular(a, b);
    }
    let f = |s: &str| {
        s.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x > 0.0)
            .ok_or_else(|| Error::InvalidInput(format!("v components must be positive numbers, got {s:?}")))
    };
    ReebVector::irregular(f(v2)? / f(v1)?, None)
}

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Rendered {
    Report(Box<Report>),
    Csv(String),
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let args: Vec<String> = argv.iter().skip(1).cloned().collect();
    let name = command_name(&cli.command);
    match execute(&cli, &name, args.clone()) {
        Ok(Rendered::Csv(s)) => Outcome { code: 0, stdout: s, stderr: String::new() },
        Ok(Rendered::Report(r)) => Outcome {
            code: 0,
            stdout: if cli.json { r.to_json() + "\n" } else { r.to_text() },
            stderr: String::new(),
        },
        Err(e) => {
            let r = Report::error(&name, args, &e);
            Outcome {
                code: e.exit_code(),
                stdout: if cli.json { r.to_json() + "\n" } else { r.to_text() },
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Validate(_) => "validate".into(),
        Command::Invariants(_) => "invariants".into(),
        Command::Rays(r) => format!(
            "rays {}",
            match r {
                RaysCommand::Csc(_) => "csc",
                RaysCommand::Extremal(_) => "extremal",
                RaysCommand::Se(_) => "se",
                RaysCommand::Soliton(_) => "soliton",
                RaysCommand::Threshold(_) => "threshold",
            }
        ),
        Command::Ypq(_) => "ypq".into(),
        Command::Topology(t) => format!(
            "topology {}",
            match t {
                TopologyCommand::SphereJoin(_) => "sphere-join",
                TopologyCommand::WeightedLine(_) => "weighted-line",
                TopologyCommand::RuledCpp(_) => "ruled-cpp",
            }
        ),
        Command::Scan(_) => "scan csc".into(),
    }
}

fn with_join(name: &str, args: Vec<String>, j: &JoinData, result: Value) -> Report {
    let mut r = Report::new(name, args, report::join_value(j), result);
    r.notes.extend(j.notes());
    r
}

/// Moves convention notes of a ray into report warnings.
fn lift_warnings(r: &mut Report, rays: &[&RaySolution]) {
    for ray in rays {
        for n in &ray.notes {
            if n.starts_with("convention") {
                r.warnings.push(n.clone());
            }
        }
    }
}

fn csc_polynomial_value(p: &CscPolynomial) -> Value {
    json!({
        "f": report::polynomial_value(&p.f),
        "forced_root": report::exact(&p.forced_root),
        "forced_multiplicity": p.forced_multiplicity,
        "deflated": report::polynomial_value(&p.deflated),
    })
}

fn ray_report(name: &str, args: Vec<String>, j: &JoinData, v: &ReebVector, extremal: bool) -> Result<Report> {
    let regularity = classify(j, v);
    let mut result = serde_json::Map::new();
    result.insert("v".into(), report::reeb_value(v));
    result.insert("regularity".into(), json!(regularity));
    if v.is_quasi_regular() && regularity != crate::quotient::Regularity::Reducible {
        let q = quotient_data(j, v)?;
        result.insert("quotient".into(), report::quotient_value(&q));
        result.insert("periods_over_2pi".into(), report::periods_value(&orbit_periods(j, v)?));
        result.insert("log_pair".into(), report::log_pair_value(&log_pair_report(j, v)?));
    }
    let mut notes = vec!["profile data uses the m = 1, v = (1, b) normalization".to_string()];
    if extremal {
        let profile = match v.slope_exact() {
            Some(b) => report::profile_value(&solve_extremal(&AdmissibleData::from_slope(j, b)?)?),
            None => report::profile_value(&solve_extremal(&AdmissibleData::<f64>::from_slope(j, v.slope_f64())?)?),
        };
        result.insert("profile".into(), profile);
    } else {
        let ray = find_srs_ray(j, v)?;
        result.insert("profile".into(), ray.profile.as_ref().map_or(Value::Null, report::ray_profile_value));
        notes.extend(ray.notes.clone());
    }
    let mut r = with_join(name, args, j, Value::Object(result));
    r.notes.extend(notes);
    Ok(r)
}

fn execute(cli: &Cli, name: &str, args: Vec<String>) -> Result<Rendered> {
    let report = match &cli.command {
        Command::Validate(a) => {
            let j = a.build()?;
            with_join(name, args, &j, json!({ "valid": true, "join": j.to_string() }))
        }
        Command::Invariants(a) => {
            let j = a.build()?;
            with_join(name, args, &j, report::invariants_value(&contact_invariants(&j)))
        }
        Command::Rays(RaysCommand::Csc(a)) => {
            let j = a.build()?;
            let poly = build_csc_polynomial(&j)?;
            let rays = find_csc_rays(&j)?;
            let mut result = report::rays_value(&rays);
            result["polynomial"] = csc_polynomial_value(&poly);
            let mut r = with_join(name, args, &j, result);
            r.notes.push("scalar_value is the transverse scalar curvature for m = 1, v = (1, b)".into());
            r
        }
        Command::Rays(RaysCommand::Se(a)) => {
            let j = a.build()?;
            let ray = find_se_ray(&j)?;
            let result = json!({ "ray": ray.as_ref().map_or(Value::Null, report::ray_value) });
            let mut r = with_join(name, args, &j, result);
            if let Some(ray) = &ray {
                lift_warnings(&mut r, &[ray]);
            }
            r
        }
        Command::Rays(RaysCommand::Extremal(a)) => {
            let j = a.join.build()?;
            ray_report(name, args, &j, &parse_reeb(&a.v1, &a.v2)?, true)?
        }
        Command::Rays(RaysCommand::Soliton(a)) => {
            let j = a.join.build()?;
            ray_report(name, args, &j, &parse_reeb(&a.v1, &a.v2)?, false)?
        }
        Command::Rays(RaysCommand::Threshold(a)) => {
            let base = a.base.build()?;
            let l2 = multi_ray_threshold(&base, a.l1, a.w.0, a.w.1)?;
            let input = json!({ "base": report::base_value(&base), "l1": a.l1, "w1": a.w.0, "w2": a.w.1 });
            Report::new(name, args, input, json!({ "threshold_l2": l2 }))
        }
        Command::Ypq(a) => match (a.p, a.q, a.scan_pmax) {
            (Some(p), Some(q), None) => {
                let y = ypq_map(p, q)?;
                let se = find_se_ray(&y.join)?;
                let mut result = report::ypq_value(&y);
                result["se_ray"] = se.as_ref().map_or(Value::Null, report::ray_value);
                let mut r = Report::new(name, args, json!({ "p": p, "q": q }), result);
                if let Some(ray) = &se {
                    lift_warnings(&mut r, &[ray]);
                }
                r
            }
            (None, None, Some(pmax)) => {
                let rows: Vec<Value> = ypq_scan(pmax)
                    .iter()
                    .map(|y| {
                        json!({
                            "p": y.p,
                            "q": y.q,
                            "w": [y.join.w1, y.join.w2],
                            "l1": y.join.l1,
                            "quasiregular": y.quasiregular,
                            "sqrt_discriminant": y.n,
                        })
                    })
                    .collect();
                let count = rows.iter().filter(|r| r["quasiregular"] == true).count();
                Report::new(
                    name,
                    args,
                    json!({ "scan_pmax": pmax }),
                    json!({ "quasiregular_count": count, "rows": rows }),
                )
            }
            _ => return Err(Error::InvalidInput("give either --p and --q, or --scan-pmax".into())),
        },
        Command::Topology(TopologyCommand::SphereJoin(a)) => {
            let t = sphere_join_ring(a.r, a.l1, a.l2, a.w.0, a.w.1)?;
            with_join(name, args, &t.join, report::sphere_join_value(&t))
        }
        Command::Topology(TopologyCommand::WeightedLine(a)) => {
            let g = cohomology_weighted_line(a.w.0, a.w.1, a.max_degree)?;
            Report::new(
                name,
                args,
                json!({ "w1": a.w.0, "w2": a.w.1 }),
                json!({ "groups": report::graded_value(&g), "summary": g.to_string() }),
            )
        }
        Command::Topology(TopologyCommand::RuledCpp(a)) => {
            let t = ruled_ring_cpp(a.p, a.n)?;
            Report::new(name, args, json!({ "p": a.p, "n": a.n }), report::ruled_value(&t))
        }
        Command::Scan(ScanCommand::Csc(a)) => {
            if a.l2_from == 0 || a.l2_from > a.l2_to {
                return Err(Error::InvalidInput("need 1 <= --l2-from <= --l2-to".into()));
            }
            let base = a.base.build()?;
            let rows = scan_csc(&base, a.l1, a.w.0, a.w.1, a.l2_from, a.l2_to)?;
            if a.csv {
                return Ok(Rendered::Csv(report::scan_csv(&rows)));
            }
            let input = json!({
                "base": report::base_value(&base),
                "l1": a.l1,
                "w1": a.w.0,
                "w2": a.w.1,
                "l2_from": a.l2_from,
                "l2_to": a.l2_to,
            });
            Report::new(name, args, input, json!({ "rows": report::scan_value(&rows) }))
        }
    };
    Ok(Rendered::Report(Box::new(report)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(s: &str) -> Outcome {
        run(std::iter::once("sasaki").chain(s.split_whitespace()))
    }

    #[test]
    fn parses_pairs_and_rationals() {
        assert_eq!(parse_pair("3,2"), Ok((3, 2)));
        assert!(parse_pair("3").is_err());
        assert_eq!(parse_rational("5/2").unwrap(), crate::exactnum::field::rat(5, 2));
    }

    #[test]
    fn validate_rejects_non_smooth() {
        let o = run_args("validate --base CP2 --l1 1 --l2 3 --w 3,2");
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("gcd(l2, l1·w1·w2) = 3"));
    }

    #[test]
    fn custom_base_flags() {
        let o = run_args("invariants --base custom --dim 2 --a 5/2 --l1 1 --l2 5 --w 3,2");
        assert_eq!(o.code, 0, "{}", o.stderr);
        let o = run_args("invariants --base custom --dim 2 --a 4 --l1 1 --l2 5 --w 3,2");
        assert_eq!(o.code, 2);
        let o = run_args("invariants --base CP2 --dim 2 --l1 1 --l2 5 --w 3,2");
        assert_eq!(o.code, 2);
    }

    #[test]
    fn irregular_reeb_vectors_parse() {
        assert!(parse_reeb("1", "0.7071").unwrap().slope_exact().is_none());
        assert_eq!(parse_reeb("7", "5").unwrap(), ReebVector::quasi_regular(7, 5).unwrap());
        assert!(parse_reeb("1", "-2").is_err());
    }

    #[test]
    fn help_exits_zero() {
        let o = run_args("--help");
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("rays"));
    }
}
