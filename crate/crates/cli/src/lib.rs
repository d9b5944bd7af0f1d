//! The `casson` command line. [`run`] is the whole program except for the
//! process exit, so tests can drive it in-process.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use casson_core::elimination::{a_polynomial, alexander_polynomial, ElimError, Presentation};
use casson_core::invariants::{
    admissible_condition_ii, alexander_twisted_double, bundled_db, connected_sum, eigenvalue_seminorm, find,
    lambda_prime, lambda_prime_asymptotic, load_db, InvError, KnotRecord,
};
use casson_core::poly::{BiLaurent, IntPoly1, PolyError};
use casson_core::surgery::{
    intersection_points, linear_growth_params, total_intersection, transversal, PointConfig, Slope, SurgeryError,
    TransversalityConfig,
};
use casson_core::whitehead::{f_equivalence_check, solve_gluing, SolverConfig, WhError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

const MAX_SLOPE: i64 = 1_000_000;
const MAX_Q_MAX: i64 = 10_000;
const MAX_XI: i64 = 64;
const MAX_TRIALS: usize = 64;
const MAX_SAMPLES: usize = 100_000;
const MAX_SEEDS: usize = 10_000;
const MAX_TWIST: i64 = 1_000;
const MAX_POINTS_TOTAL: u64 = 1_000;

#[derive(Parser, Debug)]
#[command(name = "casson", version, about = "SL(2,C) Casson invariant toolkit")]
struct Cli {
    /// Same as `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Knot database (JSON). Falls back to $CASSON_DB, then the bundled one.
    #[arg(long, global = true, env = "CASSON_DB")]
    db: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// Only for q-sweep tables.
    Csv,
}

#[derive(Args, Debug)]
struct KnotArg {
    /// Knot name in the database.
    knot: Option<String>,
    /// Inline Â-polynomial instead of a name, e.g. "m^6*l + 1".
    #[arg(long, conflicts_with = "knot")]
    ahat: Option<String>,
    /// Inline Alexander polynomial in t (default 1 with --ahat).
    #[arg(long, conflicts_with = "knot")]
    alexander: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Â-polynomial degree and products.
    Ahat {
        #[command(subcommand)]
        op: AhatOp,
    },
    /// λ′ = ½ deg_m Â.
    Lambda(KnotArg),
    /// Surgery estimates of λ′ over q <= q_max.
    LambdaAsym {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
        #[arg(long)]
        q_max: i64,
    },
    /// Intersections of Â with surgery curves.
    Surgery {
        #[command(subcommand)]
        op: SurgeryOp,
    },
    /// Transversality certificate for two surgery curves.
    Transversal {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Alexander polynomial of the n-twisted double.
    AlexanderDouble {
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
    /// Whether no p′-th root of unity is a root of Δ.
    Admissible {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
    },
    /// A-polynomial of a presentation given as JSON (`-` reads stdin).
    Apoly {
        #[arg(long)]
        presentation: String,
    },
    /// Eigenvalue-curve seminorm of a·μ + b·λ.
    Seminorm {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        a: i64,
        #[arg(short, allow_negative_numbers = true)]
        b: i64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Whitehead link character variety.
    Whitehead {
        #[command(subcommand)]
        op: WhiteheadOp,
    },
    /// Knot database maintenance.
    Db {
        #[command(subcommand)]
        op: DbOp,
    },
}

#[derive(Subcommand, Debug)]
enum AhatOp {
    Deg(KnotArg),
    /// Connected sum of two database knots.
    Mul { first: String, second: String },
}

#[derive(Subcommand, Debug)]
enum SurgeryOp {
    Intersect {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
        #[arg(short, allow_negative_numbers = true)]
        q: i64,
        /// Also locate and classify the points.
        #[arg(long)]
        points: bool,
    },
    Growth {
        #[command(flatten)]
        knot: KnotArg,
        #[arg(short, allow_negative_numbers = true)]
        p: i64,
    },
}

#[derive(Subcommand, Debug)]
enum WhiteheadOp {
    /// Statistical check of the chart polynomial against the relation.
    Verify {
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Solve the gluing equations for the n-twisted double.
    Glue {
        /// Companion knot in the database (must carry a presentation).
        knot: Option<String>,
        /// Companion presentation as JSON instead (`-` reads stdin).
        #[arg(long, conflicts_with = "knot")]
        presentation: Option<String>,
        #[arg(short, allow_negative_numbers = true, default_value_t = 0)]
        n: i64,
        #[arg(long, default_value_t = 200)]
        seeds: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DbOp {
    /// Check every record and recompute those with presentations.
    Validate,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain { kind: &'static str, message: String },
    NoConvergence(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain { .. } => 1,
            Failure::NoConvergence(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Domain { kind, .. } => kind,
            Failure::NoConvergence(_) => "nonconvergence",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::NoConvergence(m) | Failure::Domain { message: m, .. } => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn domain(kind: &'static str, e: impl ToString) -> Failure {
    Failure::Domain {
        kind,
        message: e.to_string(),
    }
}

fn from_poly(e: &PolyError, kind: &'static str) -> Failure {
    match e {
        PolyError::NoConvergence { .. } => Failure::NoConvergence(e.to_string()),
        _ => domain(kind, e),
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        from_poly(&e, "polynomial")
    }
}

impl From<SurgeryError> for Failure {
    fn from(e: SurgeryError) -> Self {
        match &e {
            SurgeryError::Poly(p) => from_poly(p, "surgery"),
            _ => domain("surgery", e),
        }
    }
}

impl From<ElimError> for Failure {
    fn from(e: ElimError) -> Self {
        match &e {
            ElimError::Poly(p) => from_poly(p, "elimination"),
            _ => domain("elimination", e),
        }
    }
}

impl From<InvError> for Failure {
    fn from(e: InvError) -> Self {
        match e {
            InvError::Poly(p) => p.into(),
            InvError::Surgery(s) => s.into(),
            InvError::Elim(x) => x.into(),
            other => domain("invariants", other),
        }
    }
}

impl From<WhError> for Failure {
    fn from(e: WhError) -> Self {
        match e {
            WhError::Poly(p) => p.into(),
            WhError::Elim(x) => x.into(),
            other => domain("whitehead", other),
        }
    }
}

/// Result of a command: the canonical JSON value plus renderings.
struct Output {
    value: Value,
    text: String,
    csv: Option<String>,
    code: i32,
}

impl Output {
    fn new(value: Value, text: impl Into<String>) -> Self {
        Self {
            value,
            text: text.into(),
            csv: None,
            code: 0,
        }
    }
}

struct Ctx<'a> {
    db: Option<PathBuf>,
    seed: u64,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn records(&self) -> Result<Vec<KnotRecord>, Failure> {
        match &self.db {
            Some(p) => Ok(load_db(p)?),
            None => Ok(bundled_db()),
        }
    }

    fn named(&self, name: &str) -> Result<KnotRecord, Failure> {
        Ok(find(&self.records()?, name)?.clone())
    }

    fn knot(&self, k: &KnotArg) -> Result<KnotRecord, Failure> {
        if let Some(name) = &k.knot {
            return self.named(name);
        }
        let ahat = match &k.ahat {
            Some(src) => {
                let a: BiLaurent = src.parse()?;
                a.normalize()?
            }
            None if k.alexander.is_some() => BiLaurent::one(),
            None => return Err(usage("give a knot name, --ahat or --alexander")),
        };
        let alexander = match &k.alexander {
            Some(src) => src.parse::<IntPoly1>()?,
            None => IntPoly1::one(),
        };
        let rec = KnotRecord {
            name: "inline".into(),
            ahat,
            alexander,
            presentation: None,
            provenance: "command line".into(),
        };
        rec.validate().map_err(|m| domain("invariants", m))?;
        Ok(rec)
    }

    fn read_source(&mut self, src: &str) -> Result<String, Failure> {
        let mut s = String::new();
        if src == "-" {
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| domain("io", format!("stdin: {e}")))?;
        } else {
            s = std::fs::read_to_string(src).map_err(|e| domain("io", format!("{src}: {e}")))?;
        }
        Ok(s)
    }

    fn presentation(&mut self, src: &str) -> Result<Presentation, Failure> {
        let s = self.read_source(src)?;
        Ok(Presentation::from_json(&s)?)
    }
}

fn bounded(name: &str, v: i64, max: i64) -> Result<i64, Failure> {
    if v.unsigned_abs() > max as u64 {
        return Err(usage(format!("|{name}| must be at most {max}")));
    }
    Ok(v)
}

fn count(name: &str, v: usize, max: usize) -> Result<usize, Failure> {
    if v == 0 || v > max {
        return Err(usage(format!("{name} must be in 1..={max}")));
    }
    Ok(v)
}

fn poly_json(a: &BiLaurent) -> Value {
    serde_json::to_value(a).expect("serializes")
}

fn record_json(r: &KnotRecord) -> Result<Value, Failure> {
    Ok(json!({
        "name": r.name,
        "ahat": r.ahat.to_string(),
        "ahat_terms": poly_json(&r.ahat),
        "alexander": r.alexander.to_string(),
        "lambda_prime": lambda_prime(r)?.to_string(),
    }))
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Output, Failure> {
    match cmd {
        Command::Ahat { op: AhatOp::Deg(k) } => {
            let r = ctx.knot(k)?;
            let (dm, dl) = (r.ahat.deg_m()?, r.ahat.deg_l()?);
            Ok(Output::new(
                json!({"name": r.name, "ahat": r.ahat.to_string(), "deg_m": dm, "deg_l": dl}),
                format!("deg_m {dm}\ndeg_l {dl}"),
            ))
        }
        Command::Ahat {
            op: AhatOp::Mul { first, second },
        } => {
            let sum = connected_sum(&ctx.named(first)?, &ctx.named(second)?)?;
            let text = format!("{}\nlambda' {}", sum.ahat, lambda_prime(&sum)?);
            Ok(Output::new(record_json(&sum)?, text))
        }
        Command::Lambda(k) => {
            let r = ctx.knot(k)?;
            let l = lambda_prime(&r)?;
            Ok(Output::new(
                json!({"name": r.name, "lambda_prime": l.to_string(), "deg_m": r.ahat.deg_m()?}),
                l.to_string(),
            ))
        }
        Command::LambdaAsym { knot, p, q_max } => {
            let p = bounded("p", *p, MAX_SLOPE)?;
            if !(2..=MAX_Q_MAX).contains(q_max) {
                return Err(usage(format!("--q-max must be in 2..={MAX_Q_MAX}")));
            }
            let r = ctx.knot(knot)?;
            let a = lambda_prime_asymptotic(&r, p, *q_max)?;
            let rows: Vec<(i64, String, f64)> = a
                .estimates
                .iter()
                .map(|(q, e)| (*q, e.to_string(), e.to_f64().unwrap_or(f64::NAN)))
                .collect();
            let mut text = String::new();
            let mut csv = String::from("q,estimate,decimal\n");
            for (q, e, d) in &rows {
                let _ = writeln!(text, "{q:>6}  {e:>14}  {d:.6}");
                let _ = writeln!(csv, "{q},{e},{d}");
            }
            let _ = write!(text, "limit {}", a.extrapolated);
            let value = json!({
                "name": r.name,
                "p": p,
                "estimates": rows.iter().map(|(q, e, d)| json!({"q": q, "estimate": e, "decimal": d})).collect::<Vec<_>>(),
                "extrapolated": a.extrapolated.to_string(),
                "growth": {"n": a.growth.n, "c": a.growth.c, "q0": a.growth.q0},
            });
            Ok(Output {
                csv: Some(csv),
                ..Output::new(value, text)
            })
        }
        Command::Surgery {
            op: SurgeryOp::Intersect { knot, p, q, points },
        } => {
            let slope = Slope::new(bounded("p", *p, MAX_SLOPE)?, bounded("q", *q, MAX_SLOPE)?)?;
            let r = ctx.knot(knot)?;
            if *points {
                let total = total_intersection(&r.ahat, slope)?;
                if total > MAX_POINTS_TOTAL {
                    return Err(usage(format!(
                        "--points locates at most {MAX_POINTS_TOTAL} points; this slope has {total}"
                    )));
                }
                let rep = intersection_points(&r.ahat, slope, &r.alexander, &PointConfig::default())?;
                let mut text = format!("total {}", rep.total);
                for pt in &rep.points {
                    let _ = write!(
                        text,
                        "\n  m = {:.9} {:+.9}i  l = {:.9} {:+.9}i  mult {}  {:?}",
                        pt.m.re, pt.m.im, pt.l.re, pt.l.im, pt.multiplicity, pt.kind
                    );
                }
                let value = serde_json::to_value(&rep).expect("serializes");
                Ok(Output::new(value, text))
            } else {
                let total = total_intersection(&r.ahat, slope)?;
                Ok(Output::new(
                    json!({"p": slope.p(), "q": slope.q(), "total": total}),
                    format!("total {total}"),
                ))
            }
        }
        Command::Surgery {
            op: SurgeryOp::Growth { knot, p },
        } => {
            let p = bounded("p", *p, MAX_SLOPE)?;
            let r = ctx.knot(knot)?;
            let g = linear_growth_params(&r.ahat, p)?;
            Ok(Output::new(
                json!({"p": p, "n": g.n, "c": g.c, "q0": g.q0}),
                match g.c {
                    0 => format!("total = {}q for q >= {}", g.n, g.q0),
                    c => format!("total = {}q {} {} for q >= {}", g.n, if c < 0 { '-' } else { '+' }, c.unsigned_abs(), g.q0),
                },
            ))
        }
        Command::Transversal { a, b } => {
            let (a, b): (Slope, Slope) = (a.parse()?, b.parse()?);
            let cert = transversal(a, b, &TransversalityConfig::default())?;
            let text = if cert.point_count == 1 {
                format!("transverse (det={})", cert.determinant)
            } else {
                format!("transverse (det={}), {} common points", cert.determinant, cert.point_count)
            };
            Ok(Output::new(serde_json::to_value(&cert).expect("serializes"), text))
        }
        Command::AlexanderDouble { n } => {
            let d = alexander_twisted_double(*n);
            Ok(Output::new(
                json!({"n": n, "alexander": d.to_string(), "terms": serde_json::to_value(&d).expect("serializes")}),
                d.to_string(),
            ))
        }
        Command::Admissible { knot, p } => {
            let r = ctx.knot(knot)?;
            let a = admissible_condition_ii(&r.alexander, *p)?;
            let witness = a.witness.as_ref().map(|w| w.to_string());
            let text = match &witness {
                None => format!("admissible (p' = {})", a.p_prime),
                Some(w) => format!("not admissible (p' = {}): gcd {w}", a.p_prime),
            };
            Ok(Output::new(
                json!({"p": p, "p_prime": a.p_prime, "admissible": a.admissible, "witness": witness}),
                text,
            ))
        }
        Command::Apoly { presentation } => {
            let pres = ctx.presentation(presentation)?;
            let a = a_polynomial(&pres)?;
            let alex = alexander_polynomial(&pres)?;
            let value = json!({
                "apoly": a.apoly.to_string(),
                "apoly_terms": poly_json(&a.apoly),
                "riley": a.riley.phi.to_string(),
                "l_minus_one_multiplicity": a.l_minus_one,
                "alexander": alex.to_string(),
            });
            Ok(Output::new(value, a.apoly.to_string()))
        }
        Command::Seminorm { knot, a, b, trials } => {
            let (a, b) = (bounded("a", *a, MAX_XI)?, bounded("b", *b, MAX_XI)?);
            let trials = count("--trials", *trials, MAX_TRIALS)?;
            let r = ctx.knot(knot)?;
            let s = eigenvalue_seminorm(&r.ahat, (a, b), trials, ctx.seed)?;
            let text = if s.degenerate {
                format!("{} (degenerate)", s.value)
            } else {
                s.value.to_string()
            };
            Ok(Output::new(
                json!({"a": a, "b": b, "value": s.value, "degenerate": s.degenerate}),
                text,
            ))
        }
        Command::Whitehead {
            op: WhiteheadOp::Verify { samples },
        } => {
            let samples = count("--samples", *samples, MAX_SAMPLES)?;
            let rep = f_equivalence_check(samples, ctx.seed)?;
            let text = format!(
                "{} samples: {} on-curve points (max residual {:.2e}), {} off-curve points (min residual {:.2e}), {} failures",
                rep.samples,
                rep.on_curve_points,
                rep.max_on_curve_residual,
                rep.off_curve_points,
                rep.min_off_curve_residual,
                rep.failures.len()
            );
            let code = if rep.passed() { 0 } else { 1 };
            Ok(Output {
                code,
                ..Output::new(serde_json::to_value(&rep).expect("serializes"), text)
            })
        }
        Command::Whitehead {
            op: WhiteheadOp::Glue { knot, presentation, n, seeds },
        } => {
            let n = bounded("n", *n, MAX_TWIST)?;
            let seeds = count("--seeds", *seeds, MAX_SEEDS)?;
            let pres = match (knot, presentation) {
                (Some(k), None) => ctx
                    .named(k)?
                    .presentation
                    .ok_or_else(|| domain("invariants", format!("{k} has no presentation")))?,
                (None, Some(src)) => ctx.presentation(src)?,
                _ => return Err(usage("give a knot name or --presentation")),
            };
            let cfg = SolverConfig {
                seed: ctx.seed,
                ..SolverConfig::default()
            };
            let sols = solve_gluing(&pres, n, seeds, &cfg)?;
            let mut text = format!("{} solutions", sols.len());
            for s in &sols {
                let _ = write!(
                    text,
                    "\n  m = {:.6} {:+.6}i  (t, u, v) = ({:.6} {:+.6}i, {:.6} {:+.6}i, {:.6} {:+.6}i)  residual {:.1e}",
                    s.riley.m.re, s.riley.m.im, s.chart.t.re, s.chart.t.im, s.chart.u.re, s.chart.u.im,
                    s.chart.v.re, s.chart.v.im, s.residual
                );
            }
            let value = json!({
                "n": n,
                "seeds": seeds,
                "solutions": sols.iter().map(|s| json!({
                    "riley": s.riley,
                    "abelian": s.abelian,
                    "rho1": s.rho1,
                    "rho1_irreducible": s.rho1_irreducible,
                    "chart": s.chart,
                    "residual": s.residual,
                })).collect::<Vec<_>>(),
            });
            Ok(Output::new(value, text))
        }
        Command::Db { op: DbOp::Validate } => validate_db(ctx),
    }
}

fn validate_db(ctx: &Ctx) -> Result<Output, Failure> {
    let recs = ctx.records()?;
    let mut issues = Vec::new();
    let mut verified = Vec::new();
    let mut unverified = Vec::new();
    for r in &recs {
        match &r.presentation {
            Some(p) => {
                let a = a_polynomial(p).map(|a| a.apoly);
                let d = alexander_polynomial(p);
                match (a, d) {
                    (Ok(a), Ok(d)) if a == r.ahat && d == r.alexander => verified.push(r.name.clone()),
                    (Ok(a), Ok(d)) => issues.push(format!(
                        "{}: stored data differs from recomputation (ahat {a}, alexander {d})",
                        r.name
                    )),
                    (Err(e), _) | (_, Err(e)) => issues.push(format!("{}: {e}", r.name)),
                }
            }
            None if r.provenance.contains("unverified") => unverified.push(r.name.clone()),
            None => issues.push(format!("{}: no presentation and provenance not marked unverified", r.name)),
        }
    }
    let mut text = format!("{} records, {} recomputed, {} external", recs.len(), verified.len(), unverified.len());
    for i in &issues {
        let _ = write!(text, "\n  {i}");
    }
    Ok(Output {
        code: if issues.is_empty() { 0 } else { 1 },
        ..Output::new(
            json!({"records": recs.len(), "verified": verified, "unverified": unverified, "issues": issues}),
            text,
        )
    })
}

fn write_json(out: &mut dyn Write, v: &Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializes"));
}

/// Runs one invocation; returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
                }
                _ => 2,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let format = if cli.json { Format::Json } else { cli.format };
    let mut ctx = Ctx {
        db: cli.db.clone(),
        seed: cli.seed,
        stdin,
    };
    let result = execute(&cli.command, &mut ctx).and_then(|o| match (format, &o.csv) {
        (Format::Csv, None) => Err(usage("csv output is only available for q-sweep tables (lambda-asym)")),
        _ => Ok(o),
    });
    match result {
        Ok(o) => {
            match format {
                Format::Json => write_json(out, &o.value),
                Format::Text => {
                    let _ = writeln!(out, "{}", o.text);
                }
                Format::Csv => {
                    let _ = write!(out, "{}", o.csv.as_deref().unwrap_or_default());
                }
            }
            o.code
        }
        Err(f) => {
            if format == Format::Json {
                write_json(out, &json!({"error": {"kind": f.kind(), "message": f.message(), "exit_code": f.code()}}));
            } else {
                let _ = writeln!(err, "error: {}", f.message());
            }
            f.code()
        }
    }
}
