//! The `schwarz` command line: the series pipelines, golden-table checks,
//! the Novikov pipeline on a data file and the A∞ tools on an algebra file.

pub mod golden;

use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use thiserror::Error;

use schwarz_ainfty::{cochain_to_json, gauge_trivialize, is_coboundary, AInfinityStructure, AlgebraFile, Coboundary};
use schwarz_core::json::{series_from_json, series_to_json};
use schwarz_core::lefschetz::{
    d2_for_order, fifth_root_of_mirror, mirror_map, run_pipeline, solve_from_pencil_data, solve_from_pencil_data_ode,
};
use schwarz_core::modular::{
    cubic_f_from_schwarzian, e4_target, eta_quotient_hauptmodul, verify_e4_equation, verify_picard_fuchs,
    verify_ramanujan,
};
use schwarz_core::ring::format_rational;
use schwarz_core::schwarzian::{solve_schwarzian, SchwarzianProblem};
use schwarz_core::{parse_rational, Series};
use schwarz_novikov::gw::GwData;
use schwarz_novikov::{b_field_normalize, theorem_main_pipeline, LSeries, NovikovError};

use golden::Golden;

#[derive(Debug, Parser)]
#[command(name = "schwarz", version, about = "Exact q-series pipelines and A-infinity deformation tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The cubic-pencil f by the eta quotient and by the Schwarzian equation.
    CubicF {
        #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        /// Compare with the reference coefficients.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Residuals of the modular identities behind the cubic pencil.
    CubicVerify {
        #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(i64).range(4..))]
        order: i64,
        #[command(flatten)]
        out: Output,
    },
    /// psi, eta, z2 and f for the quintic from the I-function.
    Quintic {
        #[arg(long, default_value_t = 17, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        /// Truncation of the hbar^-1 expansion (at least 2).
        #[arg(long, default_value_t = 6)]
        cap: u32,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// The quintic mirror map y1/q1 and y2 as series in q2.
    MirrorMap {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(2..))]
        order: i64,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Solves S f + g = 0 with f = a1 q + a2 q^2 + O(q^3).
    SchwarzianSolve {
        /// `zero`, `cubic`, a series JSON literal or a path to a series JSON file.
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "1")]
        a1: String,
        #[arg(long, default_value = "0")]
        a2: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(4..))]
        order: i64,
        #[command(flatten)]
        out: Output,
    },
    /// The Novikov pipeline and B-field normalization on a GW data file.
    Novikov {
        #[arg(long)]
        input: PathBuf,
        /// Filtration level through which everything is computed.
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(i64).range(1..))]
        cap: i64,
        #[command(flatten)]
        out: Output,
    },
    /// A-infinity relations, Kaledin class and gauge trivialization.
    Ainfty {
        #[command(subcommand)]
        action: AinftyAction,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Arity cap (defaults to the file's).
    #[arg(long)]
    pub arity: Option<usize>,
    /// q-truncation order (defaults to the file's).
    #[arg(long)]
    pub qorder: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum AinftyAction {
    /// Evaluates the A-infinity relations.
    Check(AlgebraArgs),
    /// Computes d/dq of the structure and decides whether it is exact.
    Kaledin(AlgebraArgs),
    /// Gauge-trivializes an exact deformation.
    Trivialize(AlgebraArgs),
}

#[derive(Debug, Error)]
pub enum CliError {
    /// A check or golden comparison failed (exit 1).
    #[error("{0}")]
    Mismatch(String),
    /// Malformed input or an impossible computation (exit 2).
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

fn input_error(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Accumulates text and JSON output; the first failed check decides the
/// exit status.
struct Report {
    command: &'static str,
    text: String,
    fields: Map<String, Value>,
    series: Map<String, Value>,
    checks: Vec<Value>,
    failure: Option<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            text: String::new(),
            fields: Map::new(),
            series: Map::new(),
            checks: Vec::new(),
            failure: None,
        }
    }

    fn field(&mut self, key: &str, value: Value, shown: impl fmt::Display) {
        let _ = writeln!(self.text, "{key}: {shown}");
        self.fields.insert(key.to_string(), value);
    }

    fn series(&mut self, name: &str, s: &Series) {
        let _ = writeln!(self.text, "{name} = {s}");
        self.series.insert(name.to_string(), series_to_json(s));
    }

    fn check(&mut self, name: &str, outcome: Result<String, String>) {
        match outcome {
            Ok(detail) => {
                let _ = writeln!(self.text, "check {name}: ok ({detail})");
                self.checks.push(json!({"name": name, "passed": true, "detail": detail}));
            }
            Err(detail) => {
                let _ = writeln!(self.text, "check {name}: FAILED: {detail}");
                self.checks.push(json!({"name": name, "passed": false, "detail": detail}));
                self.failure.get_or_insert(format!("{name}: {detail}"));
            }
        }
    }

    fn golden(&mut self, g: &Golden, s: &Series) {
        let outcome = g.check(s).map(|last| format!("matches through {}^{last}", g.var)).map_err(|m| m.to_string());
        self.check(&format!("golden {}", g.name), outcome);
    }

    fn finish(self, out: Output, sink: &mut dyn Write) -> Result<(), CliError> {
        let written = if out.json {
            let mut doc = Map::new();
            doc.insert("command".into(), json!(self.command));
            doc.extend(self.fields);
            if !self.series.is_empty() {
                doc.insert("series".into(), Value::Object(self.series));
            }
            doc.insert("checks".into(), Value::Array(self.checks));
            writeln!(sink, "{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize"))
        } else {
            write!(sink, "{}", self.text)
        };
        written.map_err(input_error)?;
        match self.failure {
            Some(f) => Err(CliError::Mismatch(f)),
            None => Ok(()),
        }
    }
}

fn agreement(a: &Series, b: &Series, what: &str) -> Result<String, String> {
    match a.first_difference(b) {
        None => Ok(format!("{what} agree through q^{}", a.order().min(b.order()) - 1)),
        Some(e) => Err(format!("{what} differ at q^{e}")),
    }
}

fn vanishes(r: &Series) -> Result<String, String> {
    match r.valuation() {
        None => Ok(format!("zero through q^{}", r.order() - 1)),
        Some(e) => Err(format!("nonzero at q^{e}: {}", format_rational(&r.coeff(e)))),
    }
}

pub fn run(cli: &Cli, sink: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::CubicF { order, verify, out } => cubic_f(*order, *verify).finish(*out, sink),
        Command::CubicVerify { order, out } => cubic_verify(*order)?.finish(*out, sink),
        Command::Quintic { order, cap, verify, out } => quintic(*order, *cap, *verify)?.finish(*out, sink),
        Command::MirrorMap { order, verify, out } => mirror(*order, *verify)?.finish(*out, sink),
        Command::SchwarzianSolve { g, a1, a2, order, out } => schwarzian_solve(g, a1, a2, *order)?.finish(*out, sink),
        Command::Novikov { input, cap, out } => novikov(input, *cap)?.finish(*out, sink),
        Command::Ainfty { action } => {
            let (args, report) = match action {
                AinftyAction::Check(a) => (a, ainfty_check(a)?),
                AinftyAction::Kaledin(a) => (a, ainfty_kaledin(a)?),
                AinftyAction::Trivialize(a) => (a, ainfty_trivialize(a)?),
            };
            report.finish(args.out, sink)
        }
    }
}

fn cubic_f(order: i64, verify: bool) -> Report {
    let mut r = Report::new("cubic-f");
    r.field("order", json!(order), order);
    let by_eta = eta_quotient_hauptmodul(order).map(|m| m.series);
    let by_schwarzian = cubic_f_from_schwarzian(order);
    match (by_eta, by_schwarzian) {
        (Ok(f), Ok(g)) => {
            r.series("f", &f);
            r.check("routes", agreement(&f, &g, "eta quotient and Schwarzian solution"));
            if verify {
                r.golden(&golden::CUBIC_F, &f);
            }
        }
        (Err(e), _) | (_, Err(e)) => r.check("compute", Err(e.to_string())),
    }
    r
}

fn cubic_verify(order: i64) -> Result<Report, CliError> {
    let mut r = Report::new("cubic-verify");
    r.field("order", json!(order), order);
    let e4 = verify_e4_equation(order).map_err(input_error)?;
    r.check("schwarzian-equation assembled", vanishes(&e4.assembled));
    r.check("schwarzian-equation direct", vanishes(&e4.direct));
    r.check("ramanujan", vanishes(&verify_ramanujan(order).map_err(input_error)?));
    r.check("picard-fuchs", vanishes(&verify_picard_fuchs(order).map_err(input_error)?));
    let f = eta_quotient_hauptmodul(order).map_err(input_error)?.series;
    let g = cubic_f_from_schwarzian(order).map_err(input_error)?;
    r.check("routes", agreement(&f, &g, "eta quotient and Schwarzian solution"));
    Ok(r)
}

fn quintic(order: i64, cap: u32, verify: bool) -> Result<Report, CliError> {
    let mut r = Report::new("quintic");
    r.field("order", json!(order), order);
    r.field("hbar_cap", json!(cap), cap);
    let run = run_pipeline(d2_for_order(order), cap).map_err(input_error)?;
    let f = solve_from_pencil_data(&run.data).map_err(input_error)?;
    let by_ode = solve_from_pencil_data_ode(&run.data).map_err(input_error)?;
    let root = fifth_root_of_mirror(&run.mirror).map_err(input_error)?;
    let cut = |s: &Series| s.truncate(order);
    let (psi, eta, z2, f) = (cut(&run.data.psi), cut(&run.data.eta), cut(&run.data.z2), cut(&f));
    for (name, s) in [("psi", &psi), ("eta", &eta), ("z2", &z2), ("f", &f)] {
        r.series(name, s);
    }
    r.check("fifth-root", agreement(&f, &cut(&root), "f and y2(q^5)^(1/5)"));
    r.check("ode", agreement(&f, &cut(&by_ode), "Schwarzian and ODE solutions"));
    if verify {
        for (g, s) in [
            (&golden::QUINTIC_PSI, &psi),
            (&golden::QUINTIC_ETA, &eta),
            (&golden::QUINTIC_Z2, &z2),
            (&golden::QUINTIC_F, &f),
        ] {
            r.golden(g, s);
        }
    }
    Ok(r)
}

fn mirror(order: i64, verify: bool) -> Result<Report, CliError> {
    let mut r = Report::new("mirror-map");
    r.field("order", json!(order), order);
    let m = mirror_map((order - 1) as usize).map_err(input_error)?;
    let y1 = m.y1_over_q1.truncate(order);
    let y2 = m.y2.truncate(order);
    r.series("y1/q1", &y1);
    r.series("y2", &y2);
    if verify {
        r.golden(&golden::MIRROR_Y1, &y1);
        r.golden(&golden::MIRROR_Y2, &y2);
    }
    Ok(r)
}

fn parse_series_arg(g: &str, order: i64) -> Result<Series, CliError> {
    let known = order - 3;
    match g {
        "zero" => Ok(Series::zero("q", 0, known)),
        "cubic" => Ok(e4_target(known).map_err(input_error)?.truncate(known)),
        text => {
            let text = if text.trim_start().starts_with('{') {
                text.to_string()
            } else {
                std::fs::read_to_string(text).map_err(|e| CliError::Input(format!("{text}: {e}")))?
            };
            let v: Value = serde_json::from_str(&text).map_err(input_error)?;
            let s = series_from_json(&v).map_err(input_error)?;
            if s.var() != "q" {
                return Err(CliError::Input(format!("g is a series in '{}', expected 'q'", s.var())));
            }
            Ok(s.truncate(known))
        }
    }
}

fn schwarzian_solve(g: &str, a1: &str, a2: &str, order: i64) -> Result<Report, CliError> {
    let mut r = Report::new("schwarzian-solve");
    let g = parse_series_arg(g, order)?;
    let a1 = parse_rational(a1).map_err(input_error)?;
    let a2 = parse_rational(a2).map_err(input_error)?;
    r.field("a1", json!(format_rational(&a1)), format_rational(&a1));
    r.field("a2", json!(format_rational(&a2)), format_rational(&a2));
    r.series("g", &g);
    let problem = SchwarzianProblem::new(g, a1, a2).map_err(input_error)?;
    let f = solve_schwarzian(&problem).map_err(input_error)?;
    r.series("f", &f);
    Ok(r)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn novikov_error(e: NovikovError) -> CliError {
    match e {
        NovikovError::Check(m) => CliError::Mismatch(m),
        other => input_error(other),
    }
}

fn lseries(s: &LSeries) -> (Value, String) {
    let terms: Vec<_> = s.terms().collect();
    let json = terms.iter().map(|(e, c)| json!({"exp": e, "coeff": c.to_string()})).collect();
    let mut text: Vec<String> = terms.iter().map(|(e, c)| format!("({c}) q^{e}")).collect();
    text.push(format!("O(q^{})", s.order()));
    (Value::Array(json), text.join(" + "))
}

fn novikov(input: &Path, cap: i64) -> Result<Report, CliError> {
    let mut r = Report::new("novikov");
    let data = GwData::from_json(&read(input)?).map_err(input_error)?;
    r.field("cap", json!(cap), cap);
    r.field("rank", json!(data.lattice.rank), data.lattice.rank);
    let (z1, z2) = data.elements(cap).map_err(novikov_error)?;
    let main = theorem_main_pipeline(&z1, &z2, cap).map_err(novikov_error)?;
    r.series("f", &main.f);
    for (k, g) in main.g.iter().enumerate() {
        r.series(&format!("g{}", k + 1), g);
    }
    if let Some((psi, eta)) = &main.pencil {
        r.series("psi", psi);
        r.series("eta", eta);
        r.check("pencil", Ok("every g_k is 1 and the Schwarzian residual of f vanishes".into()));
    }
    let nb = b_field_normalize(&z1, cap).map_err(novikov_error)?;
    let (b, shown) = lseries(&nb.field.b);
    r.field("b_field_dE", b, shown);
    for (k, s) in nb.field.b_d.iter().enumerate() {
        let (v, shown) = lseries(s);
        r.field(&format!("b_field_D{}", k + 1), v, shown);
    }
    let (eta, shown) = lseries(&nb.eta);
    r.field("b_field_eta", eta, shown);
    Ok(r)
}

fn load(args: &AlgebraArgs) -> Result<AInfinityStructure, CliError> {
    let file = AlgebraFile::from_json(&read(&args.input)?).map_err(input_error)?;
    file.into_structure(args.arity, args.qorder).map_err(input_error)
}

fn describe(r: &mut Report, a: &AInfinityStructure) {
    r.field("dimension", json!(a.basis().dim()), a.basis().dim());
    r.field("arity", json!(a.arity()), a.arity());
    r.field("qorder", json!(a.qorder()), a.qorder());
    r.field("strictly_unital", json!(a.is_strictly_unital()), a.is_strictly_unital());
}

fn ainfty_check(args: &AlgebraArgs) -> Result<Report, CliError> {
    let mut r = Report::new("ainfty check");
    let a = load(args)?;
    describe(&mut r, &a);
    let report = a.check_a_infinity(a.arity(), a.qorder());
    let outcome = match report.residual.first_nonzero() {
        None => Ok(format!("relations hold through arity {} modulo q^{}", report.arity, a.qorder())),
        Some((inputs, output, power, c)) => {
            Err(format!("residual {} on {inputs:?} -> {output} at q^{power}", format_rational(&c)))
        }
    };
    r.check("relations", outcome);
    Ok(r)
}

fn ainfty_kaledin(args: &AlgebraArgs) -> Result<Report, CliError> {
    let mut r = Report::new("ainfty kaledin");
    let a = load(args)?;
    describe(&mut r, &a);
    let k = a.kaledin_representative().map_err(input_error)?;
    r.field("representative", cochain_to_json(&k), format!("\n{k}"));
    let closed = a.hochschild_differential(&k).map_err(input_error)?;
    r.check(
        "closed",
        match closed.first_nonzero() {
            None => Ok(format!("through arity {}", closed.arity())),
            Some((inputs, output, power, _)) => {
                Err(format!("d of the class is nonzero on {inputs:?} -> {output} at q^{power}"))
            }
        },
    );
    let report = is_coboundary(&a, &k, a.qorder()).map_err(input_error)?;
    r.field("equation_arity", json!(report.equation_arity), report.equation_arity);
    r.field("valid_arity", json!(report.valid_arity), report.valid_arity);
    match &report.outcome {
        Coboundary::Exact { beta } => {
            r.field("class", json!("exact"), "exact");
            r.field("primitive", cochain_to_json(beta), format!("\n{beta}"));
        }
        Coboundary::Obstructed { order, residual } => {
            r.field("class", json!("obstructed"), format!("obstructed at q^{order}"));
            r.field("obstructed_order", json!(order), order);
            r.field("obstruction", cochain_to_json(residual), format!("\n{residual}"));
        }
    }
    Ok(r)
}

fn ainfty_trivialize(args: &AlgebraArgs) -> Result<Report, CliError> {
    let mut r = Report::new("ainfty trivialize");
    let a = load(args)?;
    describe(&mut r, &a);
    let k = a.kaledin_representative().map_err(input_error)?;
    let report = is_coboundary(&a, &k, a.qorder()).map_err(input_error)?;
    let beta = match &report.outcome {
        Coboundary::Exact { beta } => beta,
        Coboundary::Obstructed { order, .. } => {
            return Err(CliError::Mismatch(format!("the Kaledin class is obstructed at q^{order}; no trivialization")))
        }
    };
    let g = gauge_trivialize(&a, &beta.neg()).map_err(input_error)?;
    r.field("steps", json!(g.steps), g.steps);
    r.check(
        "trivial",
        if g.is_trivial() {
            Ok("connection is d/dq and the structure is q-constant".into())
        } else {
            Err("gauge iteration left a nontrivial connection".into())
        },
    );
    let structure = serde_json::to_value(AlgebraFile::from_structure(&g.structure)).expect("algebra files serialize");
    r.field("structure", structure, format!("\n{}", g.structure.mu()));
    r.field("morphism", cochain_to_json(g.morphism.map()), format!("\n{}", g.morphism.map()));
    Ok(r)
}
