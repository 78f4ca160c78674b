//! Workbench command line. Five subcommands cover the pipeline: `point`
//! (state and metric), `omega` (duality solve), `spectrum` (action on
//! two-forms), `sweep` (coefficient curves as CSV), and `acceptance`
//! (the full checklist).
//!
//! Angles accept decimal radians or symbolic text such as `2pi/3`,
//! `-pi/3`, or `0.5pi`, both inline and inside `--point-file` JSON.

mod angle;
mod commands;
mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use buresforms::chart::ChartPoint;

use crate::commands::{usage, Failure, OmegaSource};

#[derive(Parser)]
#[command(
    name = "buresforms",
    version,
    about = "Exterior-calculus workbench for the eight-parameter state family"
)]
struct Cli {
    /// Emit the full run report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the state, its spectrum, and the metric at a point.
    Point(PointArgs),
    /// Solve the constraint system for a distinguished four-form.
    Omega(OmegaArgs),
    /// Eigenvalues of the induced endomorphism on two-forms.
    Spectrum(SpectrumArgs),
    /// Sweep one coordinate and write the tracked coefficient as CSV.
    Sweep(SweepArgs),
    /// Run every acceptance criterion and report pass/fail lines.
    Acceptance,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    point: PointFlags,
}

#[derive(Args)]
struct OmegaArgs {
    #[command(flatten)]
    point: PointFlags,
    /// Branch sign of the constraint system: +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    sign: String,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    point: PointFlags,
    /// Branch sign passed to the solve (and, for solve-here, the action).
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    sign: String,
    /// Where the four-form comes from.
    #[arg(long, value_enum, default_value = "solve-here")]
    source: OmegaSource,
}

#[derive(Args)]
struct SweepArgs {
    /// Figure number 1..10, or 'theta2' for the experimental sweep.
    #[arg(long)]
    figure: String,
    /// Directory the CSV file is written into.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

/// A chart point, given either as a JSON file or as eight inline angles.
#[derive(Args)]
struct PointFlags {
    /// JSON file with keys alpha, tau, a, beta, b, theta, theta1, theta2.
    #[arg(long, value_name = "FILE")]
    point_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta2: Option<String>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum AngleValue {
    Number(f64),
    Text(String),
}

impl AngleValue {
    fn radians(&self) -> Result<f64, String> {
        match self {
            AngleValue::Number(v) if v.is_finite() => Ok(*v),
            AngleValue::Number(_) => Err("angle must be finite".into()),
            AngleValue::Text(s) => angle::parse_angle(s),
        }
    }
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct PointFile {
    alpha: AngleValue,
    tau: AngleValue,
    a: AngleValue,
    beta: AngleValue,
    b: AngleValue,
    theta: AngleValue,
    theta1: AngleValue,
    theta2: AngleValue,
}

impl PointFile {
    fn coords(&self) -> Result<[f64; 8], Failure> {
        let fields = [
            ("alpha", &self.alpha),
            ("tau", &self.tau),
            ("a", &self.a),
            ("beta", &self.beta),
            ("b", &self.b),
            ("theta", &self.theta),
            ("theta1", &self.theta1),
            ("theta2", &self.theta2),
        ];
        let mut coords = [0.0f64; 8];
        for (k, (label, value)) in fields.iter().enumerate() {
            coords[k] = value
                .radians()
                .map_err(|e| usage(format!("point file field {label}: {e}")))?;
        }
        Ok(coords)
    }
}

impl PointFlags {
    fn inline(&self) -> [(&'static str, Option<&String>); 8] {
        [
            ("alpha", self.alpha.as_ref()),
            ("tau", self.tau.as_ref()),
            ("a", self.a.as_ref()),
            ("beta", self.beta.as_ref()),
            ("b", self.b.as_ref()),
            ("theta", self.theta.as_ref()),
            ("theta1", self.theta1.as_ref()),
            ("theta2", self.theta2.as_ref()),
        ]
    }

    /// Resolves to a point, or `None` when nothing was given at all.
    fn resolve_optional(&self) -> Result<Option<(ChartPoint, serde_json::Value)>, Failure> {
        let inline = self.inline();
        let given = inline.iter().filter(|(_, v)| v.is_some()).count();
        if let Some(path) = &self.point_file {
            if given > 0 {
                return Err(usage("--point-file conflicts with inline angle flags"));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let file: PointFile = serde_json::from_str(&text)
                .map_err(|e| usage(format!("invalid point file: {e}")))?;
            let coords = file.coords()?;
            return Ok(Some(described(coords)));
        }
        if given == 0 {
            return Ok(None);
        }
        if given < 8 {
            let missing: Vec<&str> = inline
                .iter()
                .filter(|(_, v)| v.is_none())
                .map(|(l, _)| *l)
                .collect();
            return Err(usage(format!(
                "incomplete point: missing --{}",
                missing.join(", --")
            )));
        }
        let mut coords = [0.0f64; 8];
        for (k, (label, value)) in inline.iter().enumerate() {
            let text = value.expect("counted above");
            coords[k] = angle::parse_angle(text)
                .map_err(|e| usage(format!("--{label}: {e}")))?;
        }
        Ok(Some(described(coords)))
    }

    fn resolve_required(&self) -> Result<(ChartPoint, serde_json::Value), Failure> {
        self.resolve_optional()?.ok_or_else(|| {
            usage("a point is required: pass --point-file or all eight angle flags")
        })
    }
}

fn described(coords: [f64; 8]) -> (ChartPoint, serde_json::Value) {
    let point = ChartPoint { coords };
    let value = json!({
        "alpha": coords[0],
        "tau": coords[1],
        "a": coords[2],
        "beta": coords[3],
        "b": coords[4],
        "theta": coords[5],
        "theta1": coords[6],
        "theta2": coords[7],
    });
    (point, value)
}

fn parse_sign(text: &str) -> Result<i8, Failure> {
    match text.trim() {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(usage(format!("--sign takes +1 or -1, got {other:?}"))),
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Point(args) => {
            let (point, described) = args.point.resolve_required()?;
            commands::cmd_point(point, json!({ "point": described }), cli.json)
        }
        Command::Omega(args) => {
            let (point, described) = args.point.resolve_required()?;
            let sign = parse_sign(&args.sign)?;
            commands::cmd_omega(
                point,
                sign,
                json!({ "point": described, "sign": sign }),
                cli.json,
            )
        }
        Command::Spectrum(args) => {
            let resolved = args.point.resolve_optional()?;
            let sign = parse_sign(&args.sign)?;
            let (point, described) = match resolved {
                Some((p, d)) => (Some(p), Some(d)),
                None => (None, None),
            };
            commands::cmd_spectrum(
                point,
                sign,
                args.source,
                json!({
                    "point": described,
                    "sign": sign,
                    "source": args.source.label(),
                }),
                cli.json,
            )
        }
        Command::Sweep(args) => commands::cmd_sweep(&args.figure, &args.out_dir, cli.json),
        Command::Acceptance => commands::cmd_acceptance(cli.json),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}
