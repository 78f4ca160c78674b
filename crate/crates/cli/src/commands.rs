//! Command implementations. Each command assembles a [`RunReport`],
//! prints it as text or JSON, and returns the process exit code.
//!
//! Exit codes: 0 success, 1 golden/acceptance failure, 2 invalid or
//! degenerate state, 3 solver failure, 64 usage error. Sweeps follow
//! their own grid rule: exit 0 while at least 90% of the grid solved,
//! regardless of golden outcomes, which stay visible in the report.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use buresforms::chart::{ChartPoint, CMat3, COORD_LABELS};
use buresforms::duality::solve_dual_form;
use buresforms::error::Error;
use buresforms::exterior::basis_indices;
use buresforms::goldens;
use buresforms::metric::{bures_metric, MetricTensor};
use buresforms::spectral::{
    build_endomorphism, cluster_multiplicities, endomorphism_eigenvalues, singlet_octet_pattern,
};
use buresforms::sweeps::{self, TrackedCoefficient};
use buresforms::{acceptance, chart};

use crate::report::{print_checks, GoldenCheck, RunReport};

/// A terminal failure with its process exit code.
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 64,
        message: message.into(),
    }
}

fn from_core(err: Error) -> Failure {
    let code = match &err {
        Error::DegenerateState(_) | Error::InvalidMetric(_) => 2,
        Error::InvalidArgument(_) => 64,
        _ => 3,
    };
    Failure {
        code,
        message: err.to_string(),
    }
}

/// Which stored point, if any, the given coordinates reproduce.
fn known_point(point: &ChartPoint) -> Option<&'static str> {
    let candidates = [
        ("first-fixture", goldens::first_point()),
        ("second-fixture", goldens::second_point()),
        ("transfer-point", goldens::transfer_point()),
    ];
    for (name, p) in candidates {
        if point
            .coords
            .iter()
            .zip(&p.coords)
            .all(|(a, b)| (a - b).abs() < 1e-12)
        {
            return Some(name);
        }
    }
    None
}

fn matrix3_json(m: &CMat3) -> Vec<Vec<[f64; 2]>> {
    (0..3)
        .map(|r| (0..3).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn max_norm(m: &CMat3) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn emit<T: Serialize>(report: &RunReport<T>, as_json: bool, text: impl FnOnce()) {
    if as_json {
        println!("{}", report.to_json());
    } else {
        text();
        if !report.golden_checks.is_empty() {
            println!("golden checks:");
            print_checks(&report.golden_checks);
        }
        println!("wall time: {:.1} ms", report.wall_time_ms);
    }
}

fn exit_for_checks<T: Serialize>(report: &RunReport<T>) -> i32 {
    if report.all_checks_passed() {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// point
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PointOutputs {
    known_point: Option<&'static str>,
    state: Vec<Vec<[f64; 2]>>,
    eigenvalues_slot_order: [f64; 3],
    eigenvalues_descending: [f64; 3],
    metric: Vec<Vec<f64>>,
    metric_determinant: f64,
    metric_sqrt_determinant: f64,
    metric_condition_number: f64,
}

pub fn cmd_point(point: ChartPoint, inputs: serde_json::Value, as_json: bool) -> Result<i32, Failure> {
    let start = Instant::now();
    let (rho, frame) = chart::density_from_angles(&point).map_err(from_core)?;
    let metric = bures_metric(&point).map_err(from_core)?;

    let eig = nalgebra::SymmetricEigen::new(metric.g);
    let (mut emin, mut emax) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in eig.eigenvalues.iter() {
        emin = emin.min(*v);
        emax = emax.max(*v);
    }

    let mut descending = frame.eigenvalues;
    descending.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let fixture = known_point(&point);
    let outputs = PointOutputs {
        known_point: fixture,
        state: matrix3_json(&rho),
        eigenvalues_slot_order: frame.eigenvalues,
        eigenvalues_descending: descending,
        metric: (0..8)
            .map(|r| (0..8).map(|c| metric.g[(r, c)]).collect())
            .collect(),
        metric_determinant: metric.sqrt_det * metric.sqrt_det,
        metric_sqrt_determinant: metric.sqrt_det,
        metric_condition_number: emax / emin,
    };

    let mut report = RunReport::new("point", inputs, outputs);
    report.tolerances = json!({"state_entry_abs": 1e-10, "eigenvalue_abs": 1e-12});
    match fixture {
        Some(name @ "first-fixture") | Some(name @ "second-fixture") => {
            let (table_state, table_eigs) = if name == "first-fixture" {
                (goldens::first_state(), goldens::FIRST_EIGENVALUES)
            } else {
                (goldens::second_state(), goldens::SECOND_EIGENVALUES)
            };
            report.golden_checks.push(GoldenCheck::absolute(
                "state max entry deviation",
                format!("tabulated {name} state, all nine entries"),
                max_norm(&(rho - table_state)),
                0.0,
                1e-10,
            ));
            for (k, expected) in table_eigs.iter().enumerate() {
                report.golden_checks.push(GoldenCheck::absolute(
                    format!("eigenvalue {k} (descending)"),
                    format!("tabulated {name} spectrum"),
                    descending[k],
                    *expected,
                    1e-12,
                ));
            }
        }
        _ => {}
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    emit(&report, as_json, || {
        if let Some(name) = fixture {
            println!("recognized stored point: {name}");
        }
        println!("state (rows, re+im i):");
        for r in 0..3 {
            let cells: Vec<String> = (0..3)
                .map(|c| format!("{:+.6}{:+.6}i", rho[(r, c)].re, rho[(r, c)].im))
                .collect();
            println!("  {}", cells.join("  "));
        }
        println!(
            "eigenvalues (descending): {:.12} {:.12} {:.12}",
            descending[0], descending[1], descending[2]
        );
        println!("metric (8x8):");
        for r in 0..8 {
            let cells: Vec<String> = (0..8).map(|c| format!("{:+.6e}", metric.g[(r, c)])).collect();
            println!("  {}", cells.join(" "));
        }
        println!("det g = {:.12e}", metric.sqrt_det * metric.sqrt_det);
        println!("sqrt(det g) = {:.12e}", metric.sqrt_det);
        println!("condition number = {:.6e}", emax / emin);
    });
    Ok(exit_for_checks(&report))
}

// ---------------------------------------------------------------------------
// omega
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CoefficientEntry {
    indices: [u8; 4],
    value: f64,
}

#[derive(Serialize)]
struct OmegaOutputs {
    known_point: Option<&'static str>,
    sign: i8,
    pinned_indices: Vec<[u8; 4]>,
    coefficients: Vec<CoefficientEntry>,
}

fn one_based(idx: &[u8]) -> [u8; 4] {
    [idx[0] + 1, idx[1] + 1, idx[2] + 1, idx[3] + 1]
}

pub fn cmd_omega(
    point: ChartPoint,
    sign: i8,
    inputs: serde_json::Value,
    as_json: bool,
) -> Result<i32, Failure> {
    let start = Instant::now();
    let metric = bures_metric(&point).map_err(from_core)?;
    let sol = solve_dual_form(&metric, sign).map_err(from_core)?;

    let coefficients: Vec<CoefficientEntry> = basis_indices(4)
        .iter()
        .zip(sol.omega.coeffs())
        .map(|(idx, v)| CoefficientEntry {
            indices: one_based(idx),
            value: *v,
        })
        .collect();
    let fixture = known_point(&point);
    let outputs = OmegaOutputs {
        known_point: fixture,
        sign,
        pinned_indices: goldens::PINNED_UNIT_INDICES
            .iter()
            .map(|i| one_based(i))
            .collect(),
        coefficients,
    };

    let mut report = RunReport::new("omega", inputs, outputs);
    report.residuals = json!({"duality_constraints_max": sol.residual});
    report.tolerances = json!({
        "coefficient_abs": 1e-9,
        "residual_abs": 1e-9,
        "branch_separation_floor": 1e-6,
    });
    if matches!(fixture, Some("first-fixture") | Some("second-fixture")) {
        let name = fixture.unwrap();
        let table = if name == "first-fixture" {
            goldens::first_point_four_form_table(sign)
        } else {
            goldens::second_point_four_form_table(sign)
        };
        for (idx, expected) in table {
            let label = one_based(&idx).map(|d| d.to_string()).join("");
            report.golden_checks.push(GoldenCheck::absolute(
                format!("coefficient ({label})"),
                format!("tabulated {name} four-form, branch {sign:+}"),
                sol.omega.coeff(&idx),
                expected,
                1e-9,
            ));
        }
        for idx in goldens::PINNED_UNIT_INDICES {
            let label = one_based(&idx).map(|d| d.to_string()).join("");
            report.golden_checks.push(GoldenCheck::absolute(
                format!("pinned coefficient ({label})"),
                "pin convention: unit coefficients away from the first coordinate",
                sol.omega.coeff(&idx),
                1.0,
                0.0,
            ));
        }
        report.golden_checks.push(GoldenCheck::absolute(
            "duality constraint residual",
            "all seventy constraints of the linear system",
            sol.residual,
            0.0,
            1e-9,
        ));
        // the opposite branch must be genuinely different
        let other = solve_dual_form(&metric, -sign).map_err(from_core)?;
        let mut diff = 0.0f64;
        let mut sum = 0.0f64;
        for (a, b) in sol.omega.coeffs().iter().zip(other.omega.coeffs()) {
            diff = diff.max((a - b).abs());
            sum = sum.max((a + b).abs());
        }
        report.golden_checks.push(GoldenCheck::floor(
            "separation from the opposite branch",
            "the two branches differ beyond sign at both stored fixtures",
            diff.min(sum),
            0.0,
            1e-6,
        ));
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    emit(&report, as_json, || {
        if let Some(name) = fixture {
            println!("recognized stored point: {name}");
        }
        println!("branch sign: {sign:+}");
        println!("duality residual: {:.3e}", sol.residual);
        println!("four-form coefficients (1-based index quadruples):");
        for (idx, v) in basis_indices(4).iter().zip(sol.omega.coeffs()) {
            let label = one_based(idx).map(|d| d.to_string()).join("");
            println!("  {label}  {v:+.12e}");
        }
    });
    Ok(exit_for_checks(&report))
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
pub enum OmegaSource {
    /// Solve the duality system at the evaluation point itself.
    SolveHere,
    /// Solve at the first stored fixture, then evaluate here.
    FixtureQ1,
    /// Solve at the second stored fixture, then evaluate here.
    FixtureQ2,
    /// The flat 14-term calibration under the Euclidean metric.
    Cayley,
}

impl OmegaSource {
    pub fn label(self) -> &'static str {
        match self {
            OmegaSource::SolveHere => "solve-here",
            OmegaSource::FixtureQ1 => "fixture-q1",
            OmegaSource::FixtureQ2 => "fixture-q2",
            OmegaSource::Cayley => "cayley",
        }
    }
}

#[derive(Serialize)]
struct SpectrumOutputs {
    source: &'static str,
    sign: i8,
    known_point: Option<&'static str>,
    eigenvalues: Vec<f64>,
    eigenvalues_scaled: Option<Vec<f64>>,
    scale: Option<f64>,
    clusters: Vec<(f64, usize)>,
    eigenvalue_sum: f64,
}

pub fn cmd_spectrum(
    point: Option<ChartPoint>,
    sign: i8,
    source: OmegaSource,
    inputs: serde_json::Value,
    as_json: bool,
) -> Result<i32, Failure> {
    let start = Instant::now();

    let (metric, omega, action_sign, scaled_output) = match source {
        OmegaSource::Cayley => (
            MetricTensor::euclidean(),
            goldens::calibration_four_form(),
            1i8,
            false,
        ),
        OmegaSource::SolveHere => {
            let p = point.ok_or_else(|| usage("spectrum with --source solve-here needs a point"))?;
            let m = bures_metric(&p).map_err(from_core)?;
            let sol = solve_dual_form(&m, sign).map_err(from_core)?;
            (m, sol.omega, sign, true)
        }
        OmegaSource::FixtureQ1 | OmegaSource::FixtureQ2 => {
            let p = point.ok_or_else(|| usage("spectrum with a fixture source needs a point"))?;
            let fixture_point = if source == OmegaSource::FixtureQ1 {
                goldens::first_point()
            } else {
                goldens::second_point()
            };
            let mf = bures_metric(&fixture_point).map_err(from_core)?;
            let sol = solve_dual_form(&mf, sign).map_err(from_core)?;
            let m = bures_metric(&p).map_err(from_core)?;
            (m, sol.omega, 1i8, true)
        }
    };

    let endo = build_endomorphism(&omega, &metric, action_sign).map_err(from_core)?;
    let raw = endomorphism_eigenvalues(&endo, &metric).map_err(from_core)?;
    let scaled: Option<Vec<f64>> = scaled_output.then(|| {
        raw.iter()
            .map(|v| v / goldens::TABULATED_EIGENVALUE_SCALE)
            .collect()
    });
    let display = scaled.as_deref().unwrap_or(&raw);
    let cluster_tol = if scaled_output { 1e-6 } else { 1e-8 };
    let clusters = cluster_multiplicities(display, cluster_tol);
    let sum: f64 = display.iter().sum();

    let fixture = point.as_ref().and_then(known_point);
    let outputs = SpectrumOutputs {
        source: source.label(),
        sign,
        known_point: fixture,
        eigenvalues: raw.clone(),
        eigenvalues_scaled: scaled.clone(),
        scale: scaled_output.then_some(goldens::TABULATED_EIGENVALUE_SCALE),
        clusters: clusters.clone(),
        eigenvalue_sum: sum,
    };

    let mut report = RunReport::new("spectrum", inputs, outputs);
    report.residuals = json!({"eigenvalue_sum": sum});
    report.tolerances = json!({
        "eigenvalue_rel": 1e-4,
        "sum_abs": 1e-8,
        "flat_benchmark_abs": 1e-10,
        "distinctness_floor": 1e-6,
    });

    match source {
        OmegaSource::Cayley => {
            report.golden_checks.push(GoldenCheck::absolute(
                "largest flat eigenvalue",
                "flat calibration spectrum value +1",
                clusters.first().map(|c| c.0).unwrap_or(f64::NAN),
                1.0,
                1e-10,
            ));
            report.golden_checks.push(GoldenCheck::absolute(
                "largest flat multiplicity",
                "flat calibration multiplicity twenty-one",
                clusters.first().map(|c| c.1 as f64).unwrap_or(f64::NAN),
                21.0,
                0.0,
            ));
            report.golden_checks.push(GoldenCheck::absolute(
                "smallest flat eigenvalue",
                "flat calibration spectrum value -3",
                clusters.last().map(|c| c.0).unwrap_or(f64::NAN),
                -3.0,
                1e-10,
            ));
            report.golden_checks.push(GoldenCheck::absolute(
                "smallest flat multiplicity",
                "flat calibration multiplicity seven",
                clusters.last().map(|c| c.1 as f64).unwrap_or(f64::NAN),
                7.0,
                0.0,
            ));
        }
        OmegaSource::SolveHere => {
            let table = match fixture {
                Some("first-fixture") => Some(goldens::FIRST_SPECTRUM),
                Some("second-fixture") => Some(goldens::SECOND_SPECTRUM),
                _ => None,
            };
            if let (Some(table), Some(scaled)) = (table, scaled.as_ref()) {
                match singlet_octet_pattern(scaled, 1e-6) {
                    Ok(pattern) => {
                        for (k, (got, want)) in pattern
                            .singlets
                            .iter()
                            .zip(&table.singlets)
                            .enumerate()
                        {
                            report.golden_checks.push(GoldenCheck::relative(
                                format!("singlet {k}"),
                                "tabulated spectrum, singlet entries",
                                *got,
                                *want,
                                1e-4,
                            ));
                        }
                        for (k, (got, want)) in
                            pattern.octets.iter().zip(&table.octets).enumerate()
                        {
                            report.golden_checks.push(GoldenCheck::relative(
                                format!("octet magnitude {k}"),
                                "tabulated spectrum, eightfold entries",
                                *got,
                                *want,
                                1e-4,
                            ));
                        }
                    }
                    Err(e) => {
                        report.golden_checks.push(GoldenCheck::absolute(
                            "multiplicity pattern",
                            format!("four singlets and three paired octets ({e})"),
                            f64::NAN,
                            0.0,
                            0.0,
                        ));
                    }
                }
                report.golden_checks.push(GoldenCheck::absolute(
                    "eigenvalue sum",
                    "the action on two-forms is traceless",
                    sum,
                    0.0,
                    1e-8,
                ));
            }
        }
        OmegaSource::FixtureQ1 => {
            if fixture == Some("transfer-point") {
                if let Some(scaled) = scaled.as_ref() {
                    let pair = goldens::transfer_leading_pair(sign);
                    report.golden_checks.push(GoldenCheck::relative(
                        "largest transferred eigenvalue",
                        format!("tabulated transfer pair, branch {sign:+}"),
                        scaled[0],
                        pair[0],
                        1e-4,
                    ));
                    report.golden_checks.push(GoldenCheck::relative(
                        "most negative transferred eigenvalue",
                        format!("tabulated transfer pair, branch {sign:+}"),
                        scaled[27],
                        pair[1],
                        1e-4,
                    ));
                    let min_gap = scaled
                        .windows(2)
                        .map(|w| (w[0] - w[1]).abs())
                        .fold(f64::INFINITY, f64::min);
                    report.golden_checks.push(GoldenCheck::floor(
                        "eigenvalue distinctness",
                        "twenty-eight distinct values away from the defining point",
                        min_gap,
                        0.0,
                        1e-6,
                    ));
                }
            }
        }
        OmegaSource::FixtureQ2 => {}
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    emit(&report, as_json, || {
        println!("source: {}  branch sign: {sign:+}", source.label());
        if let Some(name) = fixture {
            println!("recognized stored point: {name}");
        }
        match scaled.as_ref() {
            Some(s) => {
                println!(
                    "eigenvalues (descending, tabulated normalization 1/{}):",
                    goldens::TABULATED_EIGENVALUE_SCALE
                );
                for v in s {
                    println!("  {v:+.6}");
                }
            }
            None => {
                println!("eigenvalues (descending):");
                for v in &raw {
                    println!("  {v:+.6}");
                }
            }
        }
        println!("clusters (value x multiplicity):");
        for (v, n) in &clusters {
            println!("  {v:+.6} x {n}");
        }
        println!("eigenvalue sum: {sum:+.3e}");
    });
    Ok(exit_for_checks(&report))
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SweepOutputs {
    figure: String,
    coordinate: &'static str,
    target: &'static str,
    grid_points: usize,
    failures: usize,
    success_fraction: f64,
    max_computed: f64,
    argmax_angle: f64,
    refined_max: Option<f64>,
    refined_argmax: Option<f64>,
    max_closed_form_deviation: Option<f64>,
    csv_path: String,
    warnings: Vec<String>,
}

fn figure_plan(figure: &str) -> Result<(String, TrackedCoefficient, usize), Failure> {
    if figure.eq_ignore_ascii_case("theta2") {
        // experimental: the eigenvalue-angle sweep has no tabulated curve
        return Ok(("fig_theta2.csv".into(), TrackedCoefficient::Leading, 7));
    }
    let n: u32 = figure
        .parse()
        .map_err(|_| usage(format!("--figure takes 1..10 or 'theta2', got {figure:?}")))?;
    if !(1..=10).contains(&n) {
        return Err(usage(format!("--figure takes 1..10 or 'theta2', got {n}")));
    }
    let coords = [1usize, 3, 4, 5, 6];
    let target = if n <= 5 {
        TrackedCoefficient::Leading
    } else {
        TrackedCoefficient::Trailing
    };
    Ok((
        format!("fig{n:02}.csv"),
        target,
        coords[((n - 1) % 5) as usize],
    ))
}

pub fn cmd_sweep(figure: &str, out_dir: &Path, as_json: bool) -> Result<i32, Failure> {
    let start = Instant::now();
    let (csv_name, target, coord) = figure_plan(figure)?;
    let sweep = sweeps::coefficient_sweep(coord, target).map_err(from_core)?;

    let csv_path = out_dir.join(&csv_name);
    let mut writer = csv::Writer::from_path(&csv_path)
        .map_err(|e| usage(format!("cannot write {}: {e}", csv_path.display())))?;
    writer
        .write_record(["angle", "computed", "closed_form", "deviation"])
        .map_err(|e| usage(format!("csv error: {e}")))?;
    let fmt = |v: f64| format!("{v}");
    let fmt_opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
    let mut warnings = Vec::new();
    for row in &sweep.rows {
        if !row.computed.is_finite() {
            warnings.push(format!(
                "angle {:.6}: solver failed, recorded as NaN",
                row.angle
            ));
        }
        writer
            .write_record([
                fmt(row.angle),
                fmt(row.computed),
                fmt_opt(row.closed_form),
                fmt_opt(row.deviation),
            ])
            .map_err(|e| usage(format!("csv error: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| usage(format!("csv error: {e}")))?;

    let best = sweep.max_row();
    let (max_computed, argmax_angle) = best
        .map(|r| (r.computed, r.angle))
        .unwrap_or((f64::NAN, f64::NAN));
    // refined maximum only where a tabulated maximum exists to compare
    let refined = if target == TrackedCoefficient::Leading && coord != 7 {
        sweeps::refined_maximum(&goldens::second_point(), coord, target).ok()
    } else {
        None
    };

    let outputs = SweepOutputs {
        figure: figure.to_string(),
        coordinate: COORD_LABELS[coord],
        target: target.label(),
        grid_points: sweep.rows.len(),
        failures: sweep.failures,
        success_fraction: sweep.success_fraction(),
        max_computed,
        argmax_angle,
        refined_max: refined.map(|(_, v)| v),
        refined_argmax: refined.map(|(a, _)| a),
        max_closed_form_deviation: sweep.max_deviation(),
        csv_path: csv_path.display().to_string(),
        warnings: warnings.clone(),
    };

    let mut report = RunReport::new("sweep", json!({"figure": figure, "out_dir": out_dir.display().to_string()}), outputs);
    report.residuals = json!({"max_closed_form_deviation": sweep.max_deviation()});
    report.tolerances = json!({
        "curve_abs": 1e-8,
        "grid_maximum_abs": 1e-6,
        "refined_maximum_abs": 1e-3,
        "success_fraction_floor": 0.9,
    });

    // curve agreement where a tabulated closed form exists; the leading
    // curve along the fifth coordinate is a preserved tabulation defect
    // and its red check is expected
    if let Some(dev) = sweep.max_deviation() {
        let anchor = if target == TrackedCoefficient::Leading && coord == 4 {
            "tabulated closed form for this curve is inconsistent with its \
             own tabulated maximum; preserved as printed, failure expected"
        } else {
            "tabulated closed-form curve on the full grid"
        };
        report.golden_checks.push(GoldenCheck::absolute(
            "max closed-form deviation",
            anchor,
            dev,
            0.0,
            1e-8,
        ));
    }
    if target == TrackedCoefficient::Leading {
        if let Some(printed) = goldens::PRINTED_SWEEP_MAXIMA
            .iter()
            .find(|(c, _)| *c == coord)
            .map(|(_, v)| *v)
        {
            if coord == 3 {
                report.golden_checks.push(GoldenCheck::absolute(
                    "grid maximum",
                    "tabulated maximum; the grid passes through the base point",
                    max_computed,
                    printed,
                    1e-6,
                ));
            } else if let Some((_, value)) = refined {
                report.golden_checks.push(GoldenCheck::absolute(
                    "refined curve maximum",
                    "tabulated maximum, read as the maximum curve value",
                    value,
                    printed,
                    1e-3,
                ));
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    emit(&report, as_json, || {
        println!(
            "figure {figure}: {} coefficient along {}",
            target.label(),
            COORD_LABELS[coord]
        );
        println!(
            "grid {} points, {} failures (success fraction {:.3})",
            sweep.rows.len(),
            sweep.failures,
            sweep.success_fraction()
        );
        for w in &warnings {
            println!("warning: {w}");
        }
        println!("max computed value {max_computed:.6} at angle {argmax_angle:.6}");
        if let Some((a, v)) = refined {
            println!("refined maximum {v:.6} at angle {a:.6}");
        }
        if let Some(dev) = sweep.max_deviation() {
            println!("max deviation from the tabulated curve: {dev:.3e}");
        }
        println!("csv written to {}", csv_path.display());
    });

    // grid-based exit rule: golden outcomes stay in the report
    Ok(if sweep.success_fraction() >= 0.9 { 0 } else { 3 })
}

// ---------------------------------------------------------------------------
// acceptance
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AcceptanceCheck {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct AcceptanceCriterion {
    index: usize,
    title: &'static str,
    passed: bool,
    checks: Vec<AcceptanceCheck>,
}

#[derive(Serialize)]
struct AcceptanceOutputs {
    criteria: Vec<AcceptanceCriterion>,
    criteria_passed: usize,
    criteria_total: usize,
}

pub fn cmd_acceptance(as_json: bool) -> Result<i32, Failure> {
    let start = Instant::now();
    let results = acceptance::run_all();
    let criteria: Vec<AcceptanceCriterion> = results
        .iter()
        .map(|r| AcceptanceCriterion {
            index: r.index,
            title: r.title,
            passed: r.passed(),
            checks: r
                .checks
                .iter()
                .map(|c| AcceptanceCheck {
                    name: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        })
        .collect();
    let passed = criteria.iter().filter(|c| c.passed).count();
    let total = criteria.len();
    let all_passed = passed == total;

    let outputs = AcceptanceOutputs {
        criteria,
        criteria_passed: passed,
        criteria_total: total,
    };
    let mut report = RunReport::new("acceptance", json!({}), outputs);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;

    emit(&report, as_json, || {
        for r in &results {
            println!("{}", r.render());
        }
        println!("criteria passed: {passed}/{total}");
    });
    Ok(if all_passed { 0 } else { 1 })
}
