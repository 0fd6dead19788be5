//! Command-line front end. [`run`] takes the full argument vector and returns
//! the exit code together with what should go to stdout and stderr, so the
//! binary and the tests share one code path.

use std::collections::BTreeMap;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mgbar::arith::{fmt_decimal, fmt_rational, int, parse_rational, Rational};
use mgbar::bn::{self, Liaison, LimitSeries, TreeCurve};
use mgbar::divclass::{self, DivisorClass, TestCurveKind};
use mgbar::koszul::{self, GradedModule};
use mgbar::linalg::RankMode;
use mgbar::psi::{self, Correlator};
use mgbar::tautring::{self, PushforwardTable, RingElement};
use mgbar::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// What a successful command produces.
#[derive(Debug, Clone, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub value: Value,
    pub provenance: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
    #[serde(skip)]
    pub human: String,
}

/// Exit code plus captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "mgbar", about = "Exact computations on moduli spaces of curves", disable_version_flag = true)]
struct Cli {
    /// Emit a JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Also show a decimal approximation accurate to this tolerance.
    #[arg(long, global = true, value_name = "EPS")]
    tolerance: Option<String>,

    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Divisor classes, slopes and test curves.
    Divclass {
        #[command(subcommand)]
        cmd: DivCmd,
    },
    /// Intersection numbers of psi classes.
    Psi {
        #[command(subcommand)]
        cmd: PsiCmd,
    },
    /// Brill-Noether numerics.
    Bn {
        #[command(subcommand)]
        cmd: BnCmd,
    },
    /// Tautological-ring calculus and the genus-22 computation.
    Taut {
        #[command(subcommand)]
        cmd: TautCmd,
    },
    /// Koszul cohomology of graded modules.
    Koszul {
        #[command(subcommand)]
        cmd: KoszulCmd,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassName {
    Canonical,
    CanonicalStack,
    Kappa1,
    LambdaN,
    KoszulOdd,
    D22,
    Custom,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Named class; `custom` takes --lambda and --delta.
    #[arg(long, value_enum, default_value = "custom")]
    class: ClassName,
    #[arg(long)]
    g: Option<u32>,
    /// Index for koszul-odd.
    #[arg(long)]
    i: Option<u32>,
    /// Index for lambda-n.
    #[arg(long)]
    n: Option<u32>,
    /// λ coefficient of a custom class.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Comma-separated δ0, δ1, … coefficients of a custom class, signs included
    /// (so `-1,-3` for λ-type classes with positive b_j).
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CanonicalKind {
    Coarse,
    Stack,
}

#[derive(Subcommand, Debug)]
enum DivCmd {
    /// Canonical class of the coarse space or of the stack.
    Canonical {
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum, default_value = "coarse")]
        kind: CanonicalKind,
    },
    /// Slope of a divisor class.
    Slope(ClassArgs),
    /// Koszul divisor class in genus 2i + 3.
    KoszulOdd {
        #[arg(long)]
        i: u32,
    },
    /// Slope of the Koszul divisor in genus 2i + 6.
    KoszulEven {
        #[arg(long)]
        i: u32,
    },
    /// Slope of the Gieseker-Petri divisor in genus rs + s.
    GpSlope {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
    },
    /// The genus-22 divisor class.
    D22,
    /// Whether a class has slope below 6 + 12/(g+1).
    K3Check(ClassArgs),
    /// Intersection of a test curve with a class.
    Pair {
        #[arg(long)]
        curve: String,
        #[command(flatten)]
        class: ClassArgs,
    },
}

#[derive(Subcommand, Debug)]
enum PsiCmd {
    /// ⟨τ_a1 … τ_an⟩_g.
    Eval {
        #[arg(long)]
        g: u32,
        /// Comma-separated exponents.
        #[arg(long)]
        a: String,
    },
    /// ⟨τ_{3g−2}⟩_g = 1/(24^g g!).
    OnePoint {
        #[arg(long)]
        g: u32,
    },
    /// Slope bound from the psi-class covering family.
    PandBound {
        #[arg(long)]
        g: u32,
    },
}

#[derive(Subcommand, Debug)]
enum BnCmd {
    /// ρ(g, r, d); takes `g r d` positionally or as flags.
    Rho {
        #[arg(allow_hyphen_values = true)]
        values: Vec<i64>,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
    },
    /// Residual curve under linkage in P^r.
    Liaison {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        r: i64,
    },
    /// Plane-model numerics for the Severi variety argument.
    Severi {
        #[arg(long)]
        g: u32,
    },
    /// (r+1)d − (r−3)(g−1).
    HilbertDim {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
    },
    /// C(r+2, 2) − (2d + 1 − g).
    Quadrics {
        #[arg(long)]
        g: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        d: i64,
    },
    /// Compatibility of a limit linear series given as JSON.
    LimitCheck {
        #[arg(long)]
        input: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Over {
    C,
    W,
    Cw,
}

#[derive(Subcommand, Debug)]
enum TautCmd {
    /// Normal form of a ring expression.
    Reduce {
        expr: String,
    },
    /// Integrate a class over C, over W, or over C × W.
    Integrate {
        expr: String,
        #[arg(long, value_enum, default_value = "cw")]
        over: Over,
    },
    /// Solve for the genus-22 divisor class.
    D22Solve,
    /// Check the pushforward table identities.
    TableVerify {
        /// Verify this JSON file instead of the built-in table.
        #[arg(long)]
        table: Option<String>,
        /// Print the table as JSON.
        #[arg(long)]
        dump: bool,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Module JSON: {"base_dim", "pieces", "mult"}.
    #[arg(long)]
    input: String,
    /// Compute ranks modulo this prime (> 2^30) instead of over Q.
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum KoszulCmd {
    /// Table of dim K_{i,j}, rows j and columns i.
    Betti {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 3)]
        max_i: usize,
        #[arg(long, default_value_t = 2)]
        max_j: usize,
    },
    /// Property N_p: K_{i,2} = 0 for i ≤ p.
    Np {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        p: usize,
    },
}

/// Rewrites `key=value` words into `--key value`.
fn normalize_args(argv: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    for (k, a) in argv.iter().enumerate() {
        if k > 0 && !a.starts_with('-') {
            if let Some((key, value)) = a.split_once('=') {
                if !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                    out.push(format!("--{}", key.replace('_', "-")));
                    out.push(value.to_string());
                    continue;
                }
            }
        }
        out.push(a.clone());
    }
    out
}

pub fn version_string() -> String {
    format!(
        "mgbar {} (pushforward table sha256 {})",
        env!("CARGO_PKG_VERSION"),
        PushforwardTable::builtin().checksum()
    )
}

/// Parses and runs one command line (`argv[0]` is the program name).
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    if argv.iter().skip(1).any(|a| a == "--version" || a == "-V") {
        return Outcome { code: 0, stdout: version_string() + "\n", stderr: String::new() };
    }
    let cli = match Cli::try_parse_from(normalize_args(&argv)) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let tolerance = match cli.tolerance.as_deref().map(parse_tolerance).transpose() {
        Ok(Some(t)) if t <= int(0) => {
            return Outcome { code: 2, stdout: String::new(), stderr: "error: --tolerance must be positive\n".into() }
        }
        Ok(t) => t,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    match execute(&cli.group) {
        Ok((mut res, scalar)) => {
            if let (Some(tol), Some(q)) = (&tolerance, &scalar) {
                let d = fmt_decimal(q, tol);
                res.human = format!("{} (≈ {d})", res.human);
                res.decimal = Some(d);
            }
            let stdout = if cli.json {
                serde_json::to_string_pretty(&res).expect("result serializes") + "\n"
            } else {
                res.human.clone() + "\n"
            };
            let code = if res.value.get("pass") == Some(&Value::Bool(false)) { 1 } else { 0 };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Accepts anything `parse_rational` does plus `1e-6` style exponents.
fn parse_tolerance(s: &str) -> mgbar::Result<Rational> {
    match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m = parse_rational(m)?;
            let e: i32 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            let p = Rational::from_integer(num_traits::pow(int(10).to_integer(), e.unsigned_abs() as usize));
            Ok(if e < 0 { m / p } else { m * p })
        }
        None => parse_rational(s),
    }
}

type Exec = mgbar::Result<(CommandResult, Option<Rational>)>;

fn result(command: &str, inputs: &[(&str, String)], value: Value, provenance: &[&str], human: String) -> CommandResult {
    CommandResult {
        command: command.to_string(),
        inputs: inputs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        value,
        provenance: provenance.iter().map(|s| s.to_string()).collect(),
        decimal: None,
        human,
    }
}

fn q(x: &Rational) -> Value {
    Value::String(fmt_rational(x))
}

fn read(path: &str) -> mgbar::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))
}

fn need<T: Copy>(v: Option<T>, flag: &str, class: &str) -> mgbar::Result<T> {
    v.ok_or_else(|| Error::Domain(format!("--class {class} needs --{flag}")))
}

fn build_class(a: &ClassArgs) -> mgbar::Result<(DivisorClass, Vec<(&'static str, String)>)> {
    let mut inputs = vec![("class", format!("{:?}", a.class).to_lowercase())];
    let d = match a.class {
        ClassName::Canonical => divclass::canonical_coarse(need(a.g, "g", "canonical")?)?,
        ClassName::CanonicalStack => divclass::canonical_stack(need(a.g, "g", "canonical-stack")?)?,
        ClassName::Kappa1 => divclass::kappa1(need(a.g, "g", "kappa1")?)?,
        ClassName::LambdaN => divclass::lambda_chern_n(need(a.g, "g", "lambda-n")?, need(a.n, "n", "lambda-n")?)?,
        ClassName::KoszulOdd => divclass::koszul_odd_class(need(a.i, "i", "koszul-odd")?)?,
        ClassName::D22 => divclass::d22_class(PushforwardTable::builtin())?,
        ClassName::Custom => {
            let g = need(a.g, "g", "custom")?;
            let lambda = parse_rational(a.lambda.as_deref().ok_or_else(|| Error::Domain("--class custom needs --lambda".into()))?)?;
            let delta = a
                .delta
                .as_deref()
                .ok_or_else(|| Error::Domain("--class custom needs --delta".into()))?
                .split(',')
                .map(parse_rational)
                .collect::<mgbar::Result<Vec<_>>>()?;
            DivisorClass::new(g, lambda, delta)?
        }
    };
    for (k, v) in [("g", a.g), ("i", a.i), ("n", a.n)] {
        if let Some(v) = v {
            inputs.push((k, v.to_string()));
        }
    }
    if let Some(l) = &a.lambda {
        inputs.push(("lambda", l.clone()));
    }
    if let Some(d) = &a.delta {
        inputs.push(("delta", d.clone()));
    }
    Ok((d, inputs))
}

fn class_json(d: &DivisorClass) -> Value {
    serde_json::to_value(d).expect("class serializes")
}

fn execute(group: &Group) -> Exec {
    match group {
        Group::Divclass { cmd } => divclass_cmd(cmd),
        Group::Psi { cmd } => psi_cmd(cmd),
        Group::Bn { cmd } => bn_cmd(cmd),
        Group::Taut { cmd } => taut_cmd(cmd),
        Group::Koszul { cmd } => koszul_cmd(cmd),
    }
}

fn divclass_cmd(cmd: &DivCmd) -> Exec {
    match cmd {
        DivCmd::Canonical { g, kind } => {
            let d = match kind {
                CanonicalKind::Coarse => divclass::canonical_coarse(*g)?,
                CanonicalKind::Stack => divclass::canonical_stack(*g)?,
            };
            let r = result(
                "divclass canonical",
                &[("g", g.to_string()), ("kind", format!("{kind:?}").to_lowercase())],
                class_json(&d),
                &["canonical class of the moduli space of stable curves"],
                d.to_string(),
            );
            Ok((r, None))
        }
        DivCmd::Slope(a) => {
            let (d, inputs) = build_class(a)?;
            let s = divclass::slope(&d);
            let r = result("divclass slope", &inputs, json!(s.to_string()), &["slope a / min b_j"], s.to_string());
            Ok((r, s.finite().cloned()))
        }
        DivCmd::KoszulOdd { i } => {
            let d = divclass::koszul_odd_class(*i)?;
            let s = divclass::slope(&d);
            let value = json!({"class": class_json(&d), "slope": s.to_string()});
            let r = result(
                "divclass koszul-odd",
                &[("i", i.to_string())],
                value,
                &["test curves C0, C1, R", "Koszul divisor class in odd genus"],
                format!("{d}  (genus {}, slope {s})", d.genus()),
            );
            Ok((r, s.finite().cloned()))
        }
        DivCmd::KoszulEven { i } => {
            let s = divclass::koszul_even_slope(*i);
            let r = result(
                "divclass koszul-even",
                &[("i", i.to_string())],
                q(&s),
                &["Koszul divisor slope in even genus"],
                fmt_rational(&s),
            );
            Ok((r, Some(s)))
        }
        DivCmd::GpSlope { r: rr, s: ss } => {
            let s = divclass::gieseker_petri_slope(*rr, *ss)?;
            let r = result(
                "divclass gp-slope",
                &[("r", rr.to_string()), ("s", ss.to_string())],
                q(&s),
                &["Gieseker-Petri divisor slope"],
                fmt_rational(&s),
            );
            Ok((r, Some(s)))
        }
        DivCmd::D22 => {
            let d = divclass::d22_class(PushforwardTable::builtin())?;
            let s = divclass::slope(&d);
            let value = json!({"class": class_json(&d), "slope": s.to_string()});
            let r = result(
                "divclass d22",
                &[],
                value,
                &["genus-22 degeneracy locus", "test curves C0, C1"],
                format!("{}λ - {}δ0 - {}δ1 - (≥ {})(δ2 + … + δ11)  slope {s}", d.lambda_coeff(), d.b(0), d.b(1), d.b(0)),
            );
            Ok((r, s.finite().cloned()))
        }
        DivCmd::K3Check(a) => {
            let (d, inputs) = build_class(a)?;
            let obstructs = divclass::k3_obstruction(&d)?;
            let s = divclass::slope(&d);
            let bound = divclass::brill_noether_slope(d.genus());
            let value = json!({"obstruction": obstructs, "slope": s.to_string(), "bound": q(&bound)});
            let human = format!(
                "slope {s} {} 6 + 12/(g+1) = {}: {}",
                if obstructs { "<" } else { ">=" },
                fmt_rational(&bound),
                if obstructs { "contains the K3 locus" } else { "no obstruction" }
            );
            Ok((result("divclass k3-check", &inputs, value, &["K3 surfaces and the slope 6 + 12/(g+1)"], human), None))
        }
        DivCmd::Pair { curve, class } => {
            let kind: TestCurveKind = curve.parse()?;
            let (d, mut inputs) = build_class(class)?;
            inputs.push(("curve", curve.clone()));
            let c = divclass::test_curve(kind, d.genus())?;
            let v = divclass::pair(&c, &d)?;
            Ok((result("divclass pair", &inputs, q(&v), &["test curve intersection numbers"], fmt_rational(&v)), Some(v)))
        }
    }
}

fn parse_list(s: &str) -> mgbar::Result<Vec<u32>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {x:?}"))))
        .collect()
}

fn psi_cmd(cmd: &PsiCmd) -> Exec {
    match cmd {
        PsiCmd::Eval { g, a } => {
            let c = Correlator::new(*g, parse_list(a)?)?;
            let v = psi::correlator_value(&c)?;
            let r = result(
                "psi eval",
                &[("g", g.to_string()), ("a", a.clone())],
                q(&v),
                &["Virasoro recursion", "string equation"],
                fmt_rational(&v),
            );
            Ok((r, Some(v)))
        }
        PsiCmd::OnePoint { g } => {
            let v = psi::psi_one_point(*g)?;
            Ok((result("psi one-point", &[("g", g.to_string())], q(&v), &["one-point psi integral"], fmt_rational(&v)), Some(v)))
        }
        PsiCmd::PandBound { g } => {
            let num = psi::pand_numerator(*g)?;
            let den = psi::pand_denominator(*g)?;
            let v = psi::pand_bound(*g)?;
            let value = json!({"bound": q(&v), "numerator": q(&num), "denominator": q(&den)});
            let r = result(
                "psi pand-bound",
                &[("g", g.to_string())],
                value,
                &["psi-class covering family", "two-point correlator", "one-point psi integral"],
                fmt_rational(&v),
            );
            Ok((r, Some(v)))
        }
    }
}

#[derive(Deserialize)]
struct LimitInput {
    components: Vec<u32>,
    edges: Vec<(usize, usize)>,
    #[serde(flatten)]
    series: LimitSeries,
}

fn bn_cmd(cmd: &BnCmd) -> Exec {
    match cmd {
        BnCmd::Rho { values, g, r, d } => {
            let (g, r, d) = match (values.as_slice(), g, r, d) {
                ([g, r, d], None, None, None) => (*g, *r, *d),
                ([], Some(g), Some(r), Some(d)) => (*g, *r, *d),
                _ => return Err(Error::Domain("bn rho takes `g r d` or --g --r --d".into())),
            };
            let v = bn::rho(g, r, d);
            let inputs = [("g", g.to_string()), ("r", r.to_string()), ("d", d.to_string())];
            Ok((result("bn rho", &inputs, json!(v), &["Brill-Noether number"], v.to_string()), None))
        }
        BnCmd::Liaison { g, d, r } => {
            let l = bn::liaison_solve(*g, *d, *r)?;
            let human = match &l {
                Liaison::Linked { f, d_res, g_res, intersections } => {
                    format!("f={f} d_res={d_res} g_res={g_res} intersections={intersections}")
                }
                Liaison::Infeasible { reason } => format!("infeasible: {reason}"),
            };
            let inputs = [("g", g.to_string()), ("d", d.to_string()), ("r", r.to_string())];
            let value = serde_json::to_value(&l).expect("liaison serializes");
            Ok((result("bn liaison", &inputs, value, &["linkage numerics"], human), None))
        }
        BnCmd::Severi { g } => {
            let s = bn::severi_analyze(*g)?;
            let human = format!(
                "d_min={} delta={} dim_U={} feasible={}",
                s.d_min, s.delta, s.dim_u, s.feasible
            );
            let value = serde_json::to_value(&s).expect("severi serializes");
            Ok((result("bn severi", &[("g", g.to_string())], value, &["nodal plane models"], human), None))
        }
        BnCmd::HilbertDim { d, g, r } => {
            let v = bn::hilbert_dim(*d, *g, *r);
            let inputs = [("d", d.to_string()), ("g", g.to_string()), ("r", r.to_string())];
            Ok((result("bn hilbert-dim", &inputs, json!(v), &["normal bundle Euler characteristic"], v.to_string()), None))
        }
        BnCmd::Quadrics { g, r, d } => {
            let v = bn::quadric_count(*g, *r, *d);
            let inputs = [("g", g.to_string()), ("r", r.to_string()), ("d", d.to_string())];
            Ok((result("bn quadrics", &inputs, json!(v), &["expected quadric count"], v.to_string()), None))
        }
        BnCmd::LimitCheck { input } => {
            let raw: LimitInput = serde_json::from_str(&read(input)?)?;
            let curve = TreeCurve::new(raw.components, raw.edges)?;
            let ok = bn::limit_series_compatible(&curve, &raw.series)?;
            let human = if ok { "compatible" } else { "not compatible" }.to_string();
            Ok((result("bn limit-check", &[("input", input.clone())], json!(ok), &["limit linear series"], human), None))
        }
    }
}

fn taut_cmd(cmd: &TautCmd) -> Exec {
    match cmd {
        TautCmd::Reduce { expr } => {
            let e: RingElement = expr.parse()?;
            let s = e.to_string();
            Ok((result("taut reduce", &[("expr", expr.clone())], json!(s), &["tautological ring relations"], s), None))
        }
        TautCmd::Integrate { expr, over } => {
            let e: RingElement = expr.parse()?;
            let table = PushforwardTable::builtin();
            let inputs = [("expr", expr.clone()), ("over", format!("{over:?}").to_lowercase())];
            match over {
                Over::C => {
                    let v = tautring::integrate_over_c(&e)?;
                    Ok((result("taut integrate", &inputs, json!(v.to_string()), &["pushforward along C"], v.to_string()), None))
                }
                Over::W | Over::Cw => {
                    let on_w = if matches!(over, Over::Cw) { tautring::integrate_over_c(&e)? } else { e };
                    let v = tautring::integrate_over_w(&on_w, table)?;
                    let r = result("taut integrate", &inputs, q(&v), &["pushforward table", "theta^g = g!"], fmt_rational(&v));
                    Ok((r, Some(v)))
                }
            }
        }
        TautCmd::D22Solve => {
            let sol = tautring::solve_d22(PushforwardTable::builtin())?;
            let slope = sol.slope();
            let human = format!("a={} b0={} b1={} slope={}", sol.a, sol.b0, sol.b1, fmt_rational(&slope));
            let value = json!({
                "a": sol.a.to_string(),
                "b0": sol.b0.to_string(),
                "b1": sol.b1.to_string(),
                "total_c1": sol.total_c1.to_string(),
                "total_c0": sol.total_c0.to_string(),
                "slope": q(&slope),
            });
            let r = result(
                "taut d22-solve",
                &[],
                value,
                &["degeneracy loci on C x W", "pushforward table", "test curves C0, C1"],
                human,
            );
            Ok((r, Some(slope)))
        }
        TautCmd::TableVerify { table, dump } => {
            let owned;
            let t = match table {
                Some(path) => {
                    owned = PushforwardTable::from_json(&read(path)?)?;
                    &owned
                }
                None => PushforwardTable::builtin(),
            };
            let checks = t.identity_checks();
            let pass = checks.iter().all(|c| c.holds);
            let mut human: Vec<String> =
                checks.iter().map(|c| format!("{} {}", if c.holds { "ok  " } else { "FAIL" }, c.name)).collect();
            human.push(format!("checksum {}", t.checksum()));
            human.push(if pass { "all identities hold".into() } else { "identities FAIL".into() });
            if *dump {
                human.push(t.to_json());
            }
            let mut value = json!({"pass": pass, "checks": checks, "checksum": t.checksum()});
            if *dump {
                value["table"] = serde_json::from_str(&t.to_json()).expect("table json");
            }
            let inputs: Vec<(&str, String)> = table.iter().map(|p| ("table", p.clone())).collect();
            Ok((result("taut table-verify", &inputs, value, &["pushforward table identities"], human.join("\n")), None))
        }
    }
}

type Inputs = Vec<(&'static str, String)>;

fn load_module(m: &ModuleArgs) -> mgbar::Result<(GradedModule, RankMode, Inputs)> {
    let module = GradedModule::from_json(&read(&m.input)?)?;
    let mut inputs = vec![("input", m.input.clone())];
    let mode = match m.prime {
        Some(p) => {
            inputs.push(("prime", p.to_string()));
            RankMode::modular(p)?
        }
        None => RankMode::Exact,
    };
    Ok((module, mode, inputs))
}

fn render_betti(t: &[Vec<usize>]) -> String {
    let width = t.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1).max(1);
    let mut lines = Vec::new();
    let header: Vec<String> = (0..t.first().map_or(0, Vec::len)).map(|i| format!("{i:>width$}")).collect();
    lines.push(format!("j\\i {}", header.join(" ")));
    for (j, row) in t.iter().enumerate() {
        let cells: Vec<String> =
            row.iter().map(|&x| if x == 0 { format!("{:>width$}", "-") } else { format!("{x:>width$}") }).collect();
        lines.push(format!("{j:>3} {}", cells.join(" ")));
    }
    lines.join("\n")
}

fn koszul_cmd(cmd: &KoszulCmd) -> Exec {
    match cmd {
        KoszulCmd::Betti { module, max_i, max_j } => {
            let (m, mode, mut inputs) = load_module(module)?;
            inputs.push(("max_i", max_i.to_string()));
            inputs.push(("max_j", max_j.to_string()));
            let t = koszul::betti_table(&m, *max_i, *max_j, mode)?;
            let r = result("koszul betti", &inputs, json!(t), &["Koszul cohomology K_{i,j}"], render_betti(&t));
            Ok((r, None))
        }
        KoszulCmd::Np { module, p } => {
            let (m, mode, mut inputs) = load_module(module)?;
            inputs.push(("p", p.to_string()));
            let holds = koszul::green_lazarsfeld_Np(&m, *p, mode)?;
            let human = format!("N_{p} {}", if holds { "holds" } else { "fails" });
            Ok((result("koszul np", &inputs, json!(holds), &["property N_p"], human), None))
        }
    }
}
