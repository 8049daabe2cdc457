//! Command-line surface: JSON in, JSON out, with optional table rendering.
//! Exit codes: 0 success, 2 malformed input, 3 violated mathematical
//! precondition.

use crate::blaschke::construct_two_point;
use crate::boundary::phi_family_at;
use crate::jsonio::{cx_to_value, parse_cx};
use crate::membership::{linfrac_membership, make_context};
use crate::moebius::{
    classify, compose, curvature_at, krein_adjoint, parabolic, translation_number, Mobius,
};
use crate::numerics::{composition_matrix, export_matrix, operator_norm, tail_norm, AnalyticMap};
use crate::symbols::{
    essential_norm_grid, essential_spectrum, joint_essential_spectrum, psi_of_element,
    spectrum_distance, table2_symbol, AlgebraElement, SymbolMatrix, TableRow,
};
use crate::{Cx, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "copcalc",
    about = "Calculus of linear-fractional composition operators: map algebra, \
             symbol matrices, membership verdicts, finite products and oracles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Grid resolution for norm/spectrum sampling (COPCALC_GRID overrides
    /// the default).
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Table,
}

/// A linear-fractional map given by coefficients or by the boundary-tangent
/// family.
#[derive(Debug, Args)]
pub struct MapArg {
    /// Coefficient form: {"a":[re,im],"b":..,"c":..,"d":..}.
    #[arg(long)]
    pub map: Option<String>,
    /// Family selector (only "phi" is defined).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub zeta: Option<String>,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long)]
    pub sprime: Option<f64>,
    #[arg(long)]
    pub d: Option<String>,
}

impl MapArg {
    pub fn resolve(&self) -> Result<Mobius> {
        if let Some(raw) = &self.map {
            return Ok(serde_json::from_str(raw)?);
        }
        match self.family.as_deref() {
            Some("phi") => {
                let eta = parse_cx(self.eta.as_deref().ok_or_else(miss("eta"))?)?;
                let zeta = self
                    .zeta
                    .as_deref()
                    .map(parse_cx)
                    .transpose()?
                    .unwrap_or(Cx::new(1.0, 0.0));
                let sprime = self.sprime.ok_or_else(miss("sprime"))?;
                let d = parse_cx(self.d.as_deref().ok_or_else(miss("d"))?)?;
                phi_family_at(zeta, eta, sprime, d)
            }
            Some(other) => Err(Error::Validation(format!("unknown family '{other}'"))),
            None => Err(Error::Validation(
                "provide --map or --family with its parameters".into(),
            )),
        }
    }
}

fn miss(name: &'static str) -> impl Fn() -> Error {
    move || Error::Validation(format!("missing --{name}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fixed points, conjugacy kind and disk-geometry flags of a map.
    Classify(MapArg),
    /// Compose maps left to right: the first listed is applied last.
    Compose {
        /// Coefficient-form maps, outermost first.
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Krein adjoint of a map.
    Adjoint(MapArg),
    /// The parabolic self-map with a given boundary fixed point and
    /// translation number.
    Parabolic {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        a: String,
        /// Accept translation numbers with negative real part.
        #[arg(long)]
        allow_negative: bool,
    },
    /// Recover (gamma, a) from a parabolic map.
    Translation(MapArg),
    /// Curvature of the boundary image at map(alpha).
    Curvature {
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        alpha: String,
    },
    /// Derived context (zeta, eta, s, b, c, sigma) of a generating map.
    Context(MapArg),
    /// Membership verdict for a linear-fractional candidate.
    Membership {
        /// Generating map (coefficient form).
        #[arg(long)]
        phi: String,
        /// Candidate map (coefficient form).
        #[arg(long)]
        psi: String,
    },
    /// Symbol matrix of a functional-calculus element or a classified row.
    Symbol(SymbolArg),
    /// Essential norm of a symbol.
    Essnorm(SymbolArg),
    /// Sampled essential spectrum of a symbol, with an optional distance
    /// query.
    Essspec {
        #[command(flatten)]
        symbol: SymbolArg,
        /// Query point: distance of this value to the sampled spectrum.
        #[arg(long)]
        query: Option<String>,
    },
    /// Sampled joint-spectrum curve (t^{a_1}, ..., t^{a_k}).
    Jointspec {
        #[arg(long = "a", required = true)]
        exponents: Vec<String>,
    },
    /// Two-point finite product with prescribed boundary data.
    Blaschke {
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
    },
    /// Finite section of a composition operator: norms and optional export.
    Matrix {
        #[command(flatten)]
        map: MapArg,
        #[arg(long, default_value_t = 256)]
        n: usize,
        /// Tail cut points to report.
        #[arg(long = "tail")]
        tails: Vec<usize>,
        /// Export path for the binary section (sidecar JSON written next to
        /// it).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run the acceptance suite ("all" or a 1-based criterion number).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

/// Symbol input: either a functional-calculus element with an endpoint, or
/// a table row with its parameter and context scales.
#[derive(Debug, Args)]
pub struct SymbolArg {
    /// Element JSON: {"c":..,"f":[..],"g":[..],"p":[..],"q":[..]}.
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long)]
    pub s: Option<f64>,
    /// Table row tag: a, b, c or d.
    #[arg(long)]
    pub row: Option<String>,
    /// Translation parameter of the row.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
}

impl SymbolArg {
    pub fn resolve(&self) -> Result<SymbolMatrix> {
        if let Some(raw) = &self.element {
            let elem: AlgebraElement = serde_json::from_str(raw)?;
            let s = self.s.ok_or_else(miss("s"))?;
            return psi_of_element(&elem, s);
        }
        if let Some(row) = &self.row {
            let row = match row.as_str() {
                "a" => TableRow::A,
                "b" => TableRow::B,
                "c" => TableRow::C,
                "d" => TableRow::D,
                other => return Err(Error::Validation(format!("unknown row '{other}'"))),
            };
            let a = parse_cx(self.a.as_deref().ok_or_else(miss("a"))?)?;
            let s = self.s.ok_or_else(miss("s"))?;
            let b = self.b.ok_or_else(miss("b"))?;
            let c = self.c.unwrap_or(b / s);
            return table2_symbol(row, a, s, b, c);
        }
        Err(Error::Validation(
            "provide --element with --s, or --row with --a/--s/--b".into(),
        ))
    }
}

fn grid_default(cli_grid: Option<usize>) -> usize {
    cli_grid
        .or_else(|| {
            std::env::var("COPCALC_GRID")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(4096)
}

fn emit(output: Output, value: serde_json::Value) {
    match output {
        Output::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Output::Table => print_table(&value, 0),
    }
}

fn print_table(v: &serde_json::Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) => {
                        println!("{pad}{k}:");
                        print_table(val, indent + 1);
                    }
                    serde_json::Value::Array(a) if a.len() > 8 => {
                        println!("{pad}{k}: [{} entries]", a.len());
                    }
                    _ => println!("{pad}{k}: {val}"),
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                2
            } else {
                3
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let grid = grid_default(cli.grid_n);
    match &cli.command {
        Command::Classify(arg) => {
            let m = arg.resolve()?;
            emit(cli.output, serde_json::to_value(classify(&m))?);
        }
        Command::Compose { maps } => {
            let parsed: Vec<Mobius> = maps
                .iter()
                .map(|raw| serde_json::from_str(raw).map_err(Error::from))
                .collect::<Result<_>>()?;
            let mut acc = parsed[0];
            for m in &parsed[1..] {
                acc = compose(&acc, m)?;
            }
            emit(cli.output, serde_json::to_value(acc)?);
        }
        Command::Adjoint(arg) => {
            let m = arg.resolve()?;
            emit(cli.output, serde_json::to_value(krein_adjoint(&m))?);
        }
        Command::Parabolic {
            gamma,
            a,
            allow_negative,
        } => {
            let m = parabolic(parse_cx(gamma)?, parse_cx(a)?, *allow_negative)?;
            emit(cli.output, serde_json::to_value(m)?);
        }
        Command::Translation(arg) => {
            let (gamma, a) = translation_number(&arg.resolve()?)?;
            emit(
                cli.output,
                serde_json::json!({ "gamma": cx_to_value(gamma), "a": cx_to_value(a) }),
            );
        }
        Command::Curvature { map, alpha } => {
            let v = curvature_at(&map.resolve()?, parse_cx(alpha)?)?;
            emit(cli.output, serde_json::json!({ "value": v }));
        }
        Command::Context(arg) => {
            let ctx = make_context(&arg.resolve()?)?;
            emit(cli.output, serde_json::to_value(ctx)?);
        }
        Command::Membership { phi, psi } => {
            let ctx = make_context(&serde_json::from_str::<Mobius>(phi)?)?;
            let verdict = linfrac_membership(&ctx, &serde_json::from_str::<Mobius>(psi)?)?;
            emit(cli.output, serde_json::to_value(verdict)?);
        }
        Command::Symbol(arg) => {
            emit(cli.output, serde_json::to_value(arg.resolve()?)?);
        }
        Command::Essnorm(arg) => {
            let m = arg.resolve()?;
            emit(
                cli.output,
                serde_json::json!({ "value": essential_norm_grid(&m, grid) }),
            );
        }
        Command::Essspec { symbol, query } => {
            let m = symbol.resolve()?;
            let samples = essential_spectrum(&m, grid);
            let mut obj = serde_json::json!({
                "samples": samples.iter().map(|&z| cx_to_value(z)).collect::<Vec<_>>(),
            });
            if let Some(q) = query {
                let z = parse_cx(q)?;
                obj["query"] = cx_to_value(z);
                obj["distance"] = serde_json::json!(spectrum_distance(&samples, z));
            }
            emit(cli.output, obj);
        }
        Command::Jointspec { exponents } => {
            let a_list: Vec<Cx> = exponents
                .iter()
                .map(|s| parse_cx(s))
                .collect::<Result<_>>()?;
            let pts = joint_essential_spectrum(&a_list, grid.min(1024))?;
            let rows: Vec<Vec<serde_json::Value>> = pts
                .iter()
                .map(|tuple| tuple.iter().map(|&z| cx_to_value(z)).collect())
                .collect();
            emit(cli.output, serde_json::json!({ "points": rows }));
        }
        Command::Blaschke { zeta, eta, t1, t2 } => {
            let b = construct_two_point(parse_cx(zeta)?, parse_cx(eta)?, *t1, *t2)?;
            emit(cli.output, serde_json::to_value(b)?);
        }
        Command::Matrix { map, n, tails, out } => {
            let section = composition_matrix(&AnalyticMap::Mobius(map.resolve()?), *n)?;
            let mut tail_report = Vec::new();
            for &t in tails {
                tail_report.push(serde_json::json!({ "cut": t, "norm": tail_norm(&section, t)? }));
            }
            if let Some(path) = out {
                export_matrix(&section, path)?;
            }
            emit(
                cli.output,
                serde_json::json!({
                    "n": n,
                    "operator_norm": operator_norm(&section),
                    "tails": tail_report,
                    "exported": out.is_some(),
                }),
            );
        }
        Command::Verify { suite } => {
            let reports = match suite.as_str() {
                "all" => crate::verify::run_all(cli.seed)?,
                num => {
                    let idx: usize = num
                        .parse()
                        .map_err(|_| Error::Validation(format!("unknown suite '{num}'")))?;
                    let all = crate::verify::run_all(cli.seed)?;
                    let r = all
                        .into_iter()
                        .nth(idx.wrapping_sub(1))
                        .ok_or_else(|| Error::Validation(format!("no criterion {idx}")))?;
                    vec![r]
                }
            };
            let failed = reports.iter().filter(|r| !r.passed).count();
            match cli.output {
                Output::Json => {
                    println!("{}", serde_json::to_string_pretty(&reports)?);
                }
                Output::Table => {
                    for r in &reports {
                        println!(
                            "{} {} — {}",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.detail
                        );
                    }
                }
            }
            if failed > 0 {
                eprintln!("{failed} criterion(s) failed");
                return Ok(1);
            }
        }
    }
    Ok(0)
}
