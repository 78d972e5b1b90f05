//! Command-line front end for the `unireal` library.
//!
//! [`run`] is the whole program; the binary only forwards process arguments
//! and standard streams to it, which keeps every subcommand testable in-process.

use std::io::{Read, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use unireal::arith::{parse_rational, render_rational};
use unireal::oracle::cross_check_report;
use unireal::{
    barrier_cone, classify_report, conjugate, correspondence_check, lipschitz, monotone, opt_over,
    parse_document, parse_function, parse_polyhedron, parse_set, render_function, render_set,
    seq_limit, seq_limsup_liminf, subdifferential, support_function, to_classical, to_unified,
    ClassicalFn, Error, ExtFn, Extremum, IntervalSet, PairVerdict, Payload, PiecewiseFn, Rational,
    Scalarization, Side,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "unireal",
    version,
    about = "Exact extended real-valued functions with nu"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a function at a rational point.
    Eval {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Classify a function and check every property.
    Report {
        file: String,
        #[arg(long)]
        json: bool,
        /// Recheck every verdict against the grid oracle; exit 3 on disagreement.
        #[arg(long)]
        cross_check: bool,
    },
    /// One-sided limits of a function at a point, or limits of a sequence.
    Limits {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the scalarization functional of a polyhedron along a direction.
    Scalarize {
        file: String,
        /// Direction, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// Evaluation point, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        /// Base point of a line restriction, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<String>,
        /// Direction of a line restriction, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        dir: Option<String>,
    },
    /// Fenchel conjugate of a function.
    Conjugate { file: String },
    /// Subdifferential of a function at a point.
    Subdiff {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Support function of a set.
    Support { file: String },
    /// Barrier cone of a set.
    Barrier { file: String },
    /// Check monotonicity with respect to a cone.
    Monotone {
        file: String,
        /// Cone, either a set file or an inline set such as `[0, +inf)`.
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        strict: bool,
        /// Region; defaults to the domain.
        #[arg(long, allow_hyphen_values = true)]
        on: Option<String>,
    },
    /// Check the Lipschitz property on a region.
    Lipschitz {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        on: String,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: Option<String>,
    },
    /// Move between the classical and the unified conventions.
    Bridge(BridgeArgs),
    /// Exact infimum or supremum over a region.
    Optimize {
        file: String,
        #[arg(long, conflicts_with = "sup", required_unless_present = "sup")]
        inf: bool,
        #[arg(long)]
        sup: bool,
        #[arg(long, allow_hyphen_values = true)]
        on: Option<String>,
    },
}

#[derive(Args, Debug)]
struct BridgeArgs {
    #[command(subcommand)]
    direction: BridgeCommand,
}

#[derive(Subcommand, Debug)]
enum BridgeCommand {
    /// Read a classical function (+inf off its domain) and rewrite it with nu.
    ToUnified { file: String },
    /// Rewrite nu as +inf; fails if the function attains +inf.
    ToClassical { file: String },
    /// Itemised comparison of a classical function and its rewrite.
    Compare {
        file: String,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Precondition(String),
    Inconsistent(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Precondition(_) => EXIT_PRECONDITION,
            Failure::Inconsistent(_) => EXIT_INCONSISTENT,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Precondition(m) | Failure::Inconsistent(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Precondition(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, file: &str) -> Result<String, Failure> {
        if file == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(s)
        } else {
            std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{file}: {e}")))
        }
    }

    fn function(&mut self, file: &str) -> Result<(String, PiecewiseFn), Failure> {
        let text = self.read(file)?;
        Ok(parse_function(&text).map_err(|e| located(file, e))?)
    }

    /// A set given as a file, `-`, or inline items separated by `;`.
    fn set(&mut self, arg: &str) -> Result<IntervalSet, Failure> {
        let text = if arg == "-" || Path::new(arg).is_file() {
            self.read(arg)?
        } else {
            inline_set(arg)
        };
        Ok(parse_set(&text).map_err(|e| located(arg, e))?.1)
    }

    fn print(&mut self, s: &str) -> Outcome {
        self.out
            .write_all(s.as_bytes())
            .map_err(|e| Failure::Precondition(format!("write: {e}")))
    }

    fn line(&mut self, s: &str) -> Outcome {
        self.print(&format!("{s}\n"))
    }
}

fn located(file: &str, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{file}:{m}")),
        other => other,
    }
}

fn inline_set(arg: &str) -> String {
    let mut text = String::from("set inline\n");
    for item in arg.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if item.starts_with(['[', '(']) {
            text.push_str(&format!("interval {item}\n"));
        } else {
            text.push_str(&format!("point {item}\n"));
        }
    }
    text
}

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s.trim()).ok_or_else(|| Failure::Input(format!("invalid rational `{s}`")))
}

fn vector(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').map(rational).collect()
}

fn pair_line(v: &PairVerdict) -> String {
    match v {
        PairVerdict::Holds(Some(l)) => format!("holds  L = {}", render_rational(l)),
        PairVerdict::Holds(None) => "holds".into(),
        PairVerdict::Fails(a, b) if a == b => {
            format!("fails  x = {} (value not real)", render_rational(a))
        }
        PairVerdict::Fails(a, b) => {
            format!(
                "fails  x1 = {}, x2 = {}",
                render_rational(a),
                render_rational(b)
            )
        }
        PairVerdict::Unknown => "unknown".into(),
    }
}

fn execute(cmd: Command, io: &mut Io) -> Outcome {
    match cmd {
        Command::Eval { file, at } => {
            let (_, f) = io.function(&file)?;
            let x = rational(&at)?;
            io.line(&f.eval(&x).to_string())
        }
        Command::Report {
            file,
            json,
            cross_check,
        } => {
            let (name, f) = io.function(&file)?;
            let report = classify_report(&f);
            if json {
                let text = serde_json::to_string_pretty(&report.to_json(&name))
                    .expect("report serialises");
                io.line(&text)?;
            } else {
                io.line(&format!("function {name}"))?;
                io.print(&report.to_string())?;
            }
            if cross_check {
                let mut problems: Vec<String> = cross_check_report(&f, &report)
                    .into_iter()
                    .map(|d| format!("{}: {}", d.property, d.detail))
                    .collect();
                problems.extend(
                    report
                        .lattice_violations()
                        .into_iter()
                        .map(|r| format!("broken implication {r}")),
                );
                if !problems.is_empty() {
                    return Err(Failure::Inconsistent(format!(
                        "cross-check disagreement:\n{}",
                        problems.join("\n")
                    )));
                }
            }
            Ok(())
        }
        Command::Limits { file, at, json } => limits(io, &file, at.as_deref(), json),
        Command::Scalarize {
            file,
            k,
            at,
            from,
            dir,
        } => {
            let text = io.read(&file)?;
            let (name, p) = parse_polyhedron(&text).map_err(|e| located(&file, e))?;
            let s = Scalarization::new(p, vector(&k)?)?;
            if let Some(at) = at {
                return io.line(&s.eval(&vector(&at)?)?.to_string());
            }
            let (x0, d) = match (from, dir) {
                (Some(a), Some(b)) => (vector(&a)?, vector(&b)?),
                (None, None) if s.dim() == 1 => (
                    vec![Rational::from_integer(0.into())],
                    vec![Rational::from_integer(1.into())],
                ),
                _ => {
                    return Err(Failure::Input(
                        "give --at, or both --from and --dir for a line restriction".into(),
                    ))
                }
            };
            let line = s.restrict_to_line(&x0, &d)?;
            io.print(&render_function(&format!("{name}_line"), &line))
        }
        Command::Conjugate { file } => {
            let (name, f) = io.function(&file)?;
            io.print(&render_function(&format!("{name}_conj"), &conjugate(&f)))
        }
        Command::Subdiff { file, at } => {
            let (_, f) = io.function(&file)?;
            let x = rational(&at)?;
            io.line(&subdifferential(&f, &x).to_string())
        }
        Command::Support { file } => {
            let a = io.set(&file)?;
            io.print(&render_function("support", &support_function(&a)))
        }
        Command::Barrier { file } => {
            let a = io.set(&file)?;
            io.print(&render_set("barrier", &barrier_cone(&a)))
        }
        Command::Monotone {
            file,
            b,
            strict,
            on,
        } => {
            let (_, f) = io.function(&file)?;
            let cone = io.set(&b)?;
            let region = match on {
                Some(s) => io.set(&s)?,
                None => f.dom(),
            };
            let v = monotone(&f, &cone, &region, strict)?;
            io.line(&pair_line(&v))
        }
        Command::Lipschitz { file, on, l } => {
            let (_, f) = io.function(&file)?;
            let region = io.set(&on)?;
            let l = l.as_deref().map(rational).transpose()?;
            let v = lipschitz(&f, &region, l.as_ref())?;
            io.line(&pair_line(&v))
        }
        Command::Bridge(args) => bridge(io, args.direction),
        Command::Optimize { file, inf, on, .. } => {
            let (_, f) = io.function(&file)?;
            let region = match on {
                Some(s) => io.set(&s)?,
                None => IntervalSet::all(),
            };
            let which = if inf { Extremum::Inf } else { Extremum::Sup };
            let v = opt_over(&ExtFn::Pwa(f), &region, which)?;
            io.line(&v.to_string())
        }
    }
}

fn limits(io: &mut Io, file: &str, at: Option<&str>, as_json: bool) -> Outcome {
    let text = io.read(file)?;
    let doc = parse_document(&text).map_err(|e| located(file, e))?;
    match (&doc.payload, at) {
        (Payload::Sequence(s), _) => {
            let (limsup, liminf, cluster) = seq_limsup_liminf(s);
            let lim = seq_limit(s);
            if as_json {
                let v = json!({
                    "limit": lim.to_string(),
                    "limsup": limsup.to_string(),
                    "liminf": liminf.to_string(),
                    "cluster_points": cluster.to_string(),
                });
                io.line(&v.to_string())
            } else {
                io.line(&format!("limit     {lim}"))?;
                io.line(&format!("limsup    {limsup}"))?;
                io.line(&format!("liminf    {liminf}"))?;
                io.line(&format!("clusters  {cluster}"))
            }
        }
        (Payload::Function(f), Some(at)) => {
            let (left, right) = match at.trim() {
                "+inf" => (f.limit_at_infinity(true), f.limit_at_infinity(true)),
                "-inf" => (f.limit_at_infinity(false), f.limit_at_infinity(false)),
                other => {
                    let x = rational(other)?;
                    (
                        f.one_sided_limit(&x, Side::Left),
                        f.one_sided_limit(&x, Side::Right),
                    )
                }
            };
            if as_json {
                io.line(&json!({"left": left.to_string(), "right": right.to_string()}).to_string())
            } else {
                io.line(&format!("left   {left}"))?;
                io.line(&format!("right  {right}"))
            }
        }
        (Payload::Function(_), None) => Err(Failure::Input(
            "limits of a function need --at <x|+inf|-inf>".into(),
        )),
        _ => Err(Failure::Input(format!(
            "{file}: limits expects a function or a sequence, found a {}",
            doc.kind().keyword()
        ))),
    }
}

fn bridge(io: &mut Io, cmd: BridgeCommand) -> Outcome {
    match cmd {
        BridgeCommand::ToUnified { file } => {
            let (name, f) = io.function(&file)?;
            let c = ClassicalFn::new(f)?;
            io.print(&render_function(&name, &to_unified(&c)))
        }
        BridgeCommand::ToClassical { file } => {
            let (name, f) = io.function(&file)?;
            let c = to_classical(&f)?;
            io.print(&render_function(&name, c.as_pwa()))
        }
        BridgeCommand::Compare { file, json } => {
            let (name, f) = io.function(&file)?;
            let c = ClassicalFn::new(f)?;
            let r = correspondence_check(&c);
            if json {
                let mut v = r.to_json();
                v["name"] = json!(name);
                io.line(&serde_json::to_string_pretty(&v).expect("report serialises"))
            } else {
                let yes = |b: bool| if b { "equal" } else { "differ" };
                io.line(&format!("function {name}"))?;
                io.line(&format!("dom                {}", yes(r.dom_equal)))?;
                io.line(&format!("proper             {}", yes(r.proper_equal)))?;
                io.line(&format!(
                    "finite-valued      {}",
                    yes(r.finite_valued_equal)
                ))?;
                io.line(&format!(
                    "epigraph           {} ({} grid points)",
                    yes(r.epi_mismatches.is_empty()),
                    r.epi_grid_size
                ))?;
                io.line(&format!(
                    "lsc                {}",
                    yes(r.lsc_mismatches.is_empty())
                ))?;
                io.line(&format!("convex             {}", yes(r.convex_equal)))?;
                for (label, row) in [
                    ("on dom", &r.bounds_on_dom),
                    ("on empty", &r.bounds_on_empty),
                    ("on R", &r.bounds_on_all),
                ] {
                    io.line(&format!(
                        "inf/sup {label:<10} classical ({}, {})  unified ({}, {})",
                        row.classical.0, row.classical.1, row.unified.0, row.unified.1
                    ))?;
                }
                io.line(&format!("dom_- boundary     {}", r.boundary))?;
                let pts: Vec<String> = r
                    .continuity_discrepancies
                    .iter()
                    .map(render_rational)
                    .collect();
                io.line(&format!("continuity differs {}", pts.join(", ")))?;
                io.line(&format!("consistent         {}", r.consistent()))
            }
        }
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
/// Returns the process exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { stdin, out };
    match execute(cli.command, &mut io) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
