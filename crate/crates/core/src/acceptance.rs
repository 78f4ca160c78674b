//! The acceptance report: every externally certified property of the
//! library, organized as eleven criteria with named sub-checks and
//! explicit numeric bounds.
//!
//! Runners never panic on computational failure; any internal error
//! becomes a failed check line carrying the error text, so the report
//! always covers all criteria. One known defect of the tabulated
//! material is preserved faithfully (the closed form checked by
//! criterion 9 for the leading coefficient along the fifth coordinate;
//! see the `sweeps` module notes), so that sub-check fails by design
//! rather than being silently patched.

use nalgebra::DMatrix;

use crate::chart::{self, CMat3, ChartPoint};
use crate::connection;
use crate::duality;
use crate::error::Result;
use crate::exterior::{self, PForm};
use crate::goldens;
use crate::metric::{self, MetricTensor};
use crate::reference;
use crate::spectral;
use crate::sweeps::{self, TrackedCoefficient};

/// One named sub-check with its outcome and a diagnostic detail.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub index: usize,
    pub title: &'static str,
    pub checks: Vec<CheckLine>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One-line verdict, e.g. `criterion 04: PASS (10/10) dual ...`.
    pub fn summary_line(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        format!(
            "criterion {:02}: {} ({}/{}) {}",
            self.index,
            if self.passed() { "PASS" } else { "FAIL" },
            ok,
            self.checks.len(),
            self.title
        )
    }

    /// Full block: the summary line plus one line per sub-check.
    pub fn render(&self) -> String {
        let mut out = self.summary_line();
        for c in &self.checks {
            out.push_str(&format!(
                "\n  [{}] {}: {}",
                if c.passed { " ok " } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out
    }
}

/// Accumulator for a criterion's sub-checks.
struct Checks {
    lines: Vec<CheckLine>,
}

impl Checks {
    fn new() -> Self {
        Checks { lines: Vec::new() }
    }

    /// value must not exceed limit.
    fn bound(&mut self, name: impl Into<String>, value: f64, limit: f64) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed: value.is_finite() && value <= limit,
            detail: format!("{value:.3e} (bound {limit:.1e})"),
        });
    }

    /// value must exceed floor.
    fn above(&mut self, name: impl Into<String>, value: f64, floor: f64) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed: value.is_finite() && value > floor,
            detail: format!("{value:.3e} (must exceed {floor:.1e})"),
        });
    }

    fn is_true(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Informational line; never fails.
    fn info(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        });
    }

    /// A computation the criterion needs could not run.
    fn error(&mut self, name: impl Into<String>, err: impl std::fmt::Display) {
        self.lines.push(CheckLine {
            name: name.into(),
            passed: false,
            detail: format!("could not evaluate: {err}"),
        });
    }
}

fn max_norm(m: &CMat3) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn fixtures() -> [(&'static str, ChartPoint, CMat3); 2] {
    [
        ("first", goldens::first_point(), goldens::first_state()),
        ("second", goldens::second_point(), goldens::second_state()),
    ]
}

/// Branch spectrum at `point_metric`, scaled to the tabulated
/// normalization, descending.
fn scaled_branch_spectrum(m: &MetricTensor, sign: i8) -> Result<Vec<f64>> {
    let sol = duality::solve_dual_form(m, sign)?;
    let endo = spectral::build_endomorphism(&sol.omega, m, sign)?;
    let eigs = spectral::endomorphism_eigenvalues(&endo, m)?;
    Ok(eigs
        .into_iter()
        .map(|e| e / goldens::TABULATED_EIGENVALUE_SCALE)
        .collect())
}

fn criterion_1() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, golden) in fixtures() {
        match chart::density_from_angles(&point) {
            Ok((rho, _)) => {
                let dev = max_norm(&(rho - golden));
                c.bound(format!("{label} fixture reproduced entrywise"), dev, 1e-10);
            }
            Err(e) => c.error(format!("{label} fixture reproduced entrywise"), e),
        }
    }
    CriterionResult {
        index: 1,
        title: "chart coordinates reproduce the fixture states",
        checks: c.lines,
    }
}

fn criterion_2() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, _) in fixtures() {
        match metric::bures_metric(&point) {
            Ok(m) => {
                c.is_true(
                    format!("{label}: metric symmetric positive-definite"),
                    true,
                    "factorization succeeded during construction",
                );
                let inv_dev = (m.g * m.g_inv - metric::Mat8::identity()).abs().max();
                c.bound(format!("{label}: inverse consistency"), inv_dev, 1e-10);
                let mut shift_dev = 0.0f64;
                for (coord, delta) in [(0usize, 0.4), (0, -0.3), (2, 0.4), (2, -0.3)] {
                    let mut p = point;
                    p.coords[coord] += delta;
                    match metric::bures_metric(&p) {
                        Ok(shifted) => {
                            shift_dev = shift_dev.max((m.g - shifted.g).abs().max());
                        }
                        Err(e) => c.error(format!("{label}: shifted metric"), e),
                    }
                }
                c.bound(
                    format!("{label}: invariance under first/third coordinate shifts"),
                    shift_dev,
                    1e-10,
                );
                match chart::chart_derivatives(&point) {
                    Ok(d) => {
                        let mut fisher_dev = 0.0f64;
                        for ci in [6usize, 7] {
                            for cj in [6usize, 7] {
                                let mut fisher = 0.0;
                                for a in 0..3 {
                                    fisher += d.d_eigenvalues[ci][a] * d.d_eigenvalues[cj][a]
                                        / d.eigenvalues[a];
                                }
                                fisher_dev =
                                    fisher_dev.max((m.g[(ci, cj)] - 0.25 * fisher).abs());
                            }
                        }
                        c.bound(
                            format!("{label}: eigenvalue block is quarter-Fisher"),
                            fisher_dev,
                            1e-10,
                        );
                    }
                    Err(e) => c.error(format!("{label}: eigenvalue block"), e),
                }
            }
            Err(e) => c.error(format!("{label}: metric construction"), e),
        }
    }
    CriterionResult {
        index: 2,
        title: "metric validity, shift invariance, and eigenvalue block",
        checks: c.lines,
    }
}

fn criterion_3() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, _) in fixtures() {
        let run = || -> Result<(f64, (usize, usize))> {
            let m = metric::bures_metric(&point)?;
            let star = exterior::star_matrix(&m, 4)?;
            let n = star.nrows();
            let dev = (&star * &star - DMatrix::<f64>::identity(n, n)).abs().max();
            let dims = duality::branch_multiplicities(&m)?;
            Ok((dev, dims))
        };
        match run() {
            Ok((dev, dims)) => {
                c.bound(format!("{label}: star squares to identity on four-forms"), dev, 1e-10);
                c.is_true(
                    format!("{label}: branch eigenspaces are 35 + 35"),
                    dims == (35, 35),
                    format!("dimensions {dims:?}"),
                );
            }
            Err(e) => c.error(format!("{label}: star involution"), e),
        }
    }
    CriterionResult {
        index: 3,
        title: "Hodge star involution and even eigenspace split",
        checks: c.lines,
    }
}

fn criterion_4() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, _) in fixtures() {
        let table_for = |sign: i8| -> Vec<([u8; 4], f64)> {
            if label == "first" {
                goldens::first_point_four_form_table(sign)
            } else {
                goldens::second_point_four_form_table(sign)
            }
        };
        let m = match metric::bures_metric(&point) {
            Ok(m) => m,
            Err(e) => {
                c.error(format!("{label}: metric"), e);
                continue;
            }
        };
        let mut solutions = Vec::new();
        for sign in [1i8, -1] {
            match duality::solve_dual_form(&m, sign) {
                Ok(sol) => {
                    c.bound(
                        format!("{label} branch {sign:+}: constraint residual"),
                        sol.residual,
                        1e-9,
                    );
                    let mut table_dev = 0.0f64;
                    for (idx, expected) in table_for(sign) {
                        let got = sol.omega.coeff(&idx);
                        table_dev = table_dev.max((got - expected).abs());
                    }
                    c.bound(
                        format!("{label} branch {sign:+}: tabulated coefficients"),
                        table_dev,
                        1e-9,
                    );
                    let pins_exact = goldens::PINNED_UNIT_INDICES
                        .iter()
                        .all(|idx| sol.omega.coeff(idx) == 1.0);
                    c.is_true(
                        format!("{label} branch {sign:+}: pinned coefficients exactly one"),
                        pins_exact,
                        "both tabulated pin positions",
                    );
                    solutions.push(sol);
                }
                Err(e) => c.error(format!("{label} branch {sign:+}: solve"), e),
            }
        }
        if solutions.len() == 2 {
            c.is_true(
                format!("{label}: branches are not equal up to sign"),
                !duality::is_pm_equal(&solutions[0].omega, &solutions[1].omega, 1e-6),
                "compared coefficientwise at 1e-6",
            );
        }
    }
    CriterionResult {
        index: 4,
        title: "dual four-forms match the tabulated coefficients",
        checks: c.lines,
    }
}

fn criterion_5() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, _) in fixtures() {
        let table = if label == "first" {
            goldens::FIRST_SPECTRUM
        } else {
            goldens::SECOND_SPECTRUM
        };
        let run = || -> Result<(Vec<f64>, Vec<f64>)> {
            let m = metric::bures_metric(&point)?;
            let plus = scaled_branch_spectrum(&m, 1)?;
            let minus = scaled_branch_spectrum(&m, -1)?;
            Ok((plus, minus))
        };
        match run() {
            Ok((plus, minus)) => {
                let expected = table.expand();
                let mut rel = 0.0f64;
                for (got, want) in plus.iter().zip(&expected) {
                    rel = rel.max((got - want).abs() / want.abs());
                }
                c.bound(
                    format!("{label}: positive-branch spectrum vs table (relative)"),
                    rel,
                    1e-4,
                );
                match spectral::singlet_octet_pattern(&plus, 1e-6) {
                    Ok(_) => c.is_true(
                        format!("{label}: four singlets and three opposite-sign octets"),
                        true,
                        "multiplicity pattern 4x1 + 6x4 with paired quartets",
                    ),
                    Err(e) => c.error(format!("{label}: multiplicity pattern"), e),
                }
                let sum: f64 = plus.iter().sum();
                c.bound(format!("{label}: spectrum sums to zero"), sum.abs(), 1e-8);
                let mut branch_dev = 0.0f64;
                for (p, q) in plus.iter().zip(&minus) {
                    branch_dev = branch_dev.max((p - q).abs());
                }
                c.bound(
                    format!("{label}: negative branch has the same multiset"),
                    branch_dev,
                    1e-8,
                );
            }
            Err(e) => c.error(format!("{label}: spectra"), e),
        }
    }
    CriterionResult {
        index: 5,
        title: "endomorphism spectra match the tabulated eigenvalues",
        checks: c.lines,
    }
}

fn criterion_6() -> CriterionResult {
    let mut c = Checks::new();
    let run = || -> Result<spectral::SpectrumPattern> {
        let m = metric::bures_metric(&goldens::first_point())?;
        let eigs = scaled_branch_spectrum(&m, 1)?;
        spectral::singlet_octet_pattern(&eigs, 1e-6)
    };
    match run() {
        Ok(pattern) => {
            let quartic: Vec<f64> = goldens::SINGLET_QUARTIC.iter().map(|v| *v as f64).collect();
            let mut worst = 0.0f64;
            for s in pattern.singlets {
                worst = worst.max(spectral::scaled_polynomial_residual(&quartic, s));
            }
            c.bound("singlets satisfy the quartic (scaled residual)", worst, 1e-4);

            let mut sextic = vec![0.0f64; 7];
            for (k, v) in goldens::OCTET_SEXTIC_EVEN.iter().enumerate() {
                sextic[2 * k] = *v as f64;
            }
            let mut worst = 0.0f64;
            for o in pattern.octets {
                worst = worst.max(spectral::scaled_polynomial_residual(&sextic, o));
                worst = worst.max(spectral::scaled_polynomial_residual(&sextic, -o));
            }
            c.bound("octets satisfy the sextic (scaled residual)", worst, 1e-4);

            let radical = goldens::largest_octet_squared_radical();
            let squared = pattern.octets[0] * pattern.octets[0];
            c.bound(
                "radical closed form equals the squared largest octet (relative)",
                (radical - squared).abs() / squared,
                1e-5,
            );
            c.bound(
                "radical interior cosine matches its tabulated rounding",
                (goldens::radical_cosine() - goldens::PRINTED_RADICAL_COSINE).abs(),
                1e-5,
            );
        }
        Err(e) => c.error("first-fixture spectrum pattern", e),
    }
    CriterionResult {
        index: 6,
        title: "characteristic polynomials and the radical closed form",
        checks: c.lines,
    }
}

fn criterion_7() -> CriterionResult {
    let mut c = Checks::new();
    let mut run = || -> Result<()> {
        let m1 = metric::bures_metric(&goldens::first_point())?;
        let mt = metric::bures_metric(&goldens::transfer_point())?;
        for sign in [-1i8, 1] {
            let sol = duality::solve_dual_form(&m1, sign)?;
            let endo = spectral::build_endomorphism(&sol.omega, &mt, 1)?;
            let eigs: Vec<f64> = spectral::endomorphism_eigenvalues(&endo, &mt)?
                .into_iter()
                .map(|e| e / goldens::TABULATED_EIGENVALUE_SCALE)
                .collect();
            let pair = goldens::transfer_leading_pair(sign);
            c.bound(
                format!("branch {sign:+}: largest transferred eigenvalue (relative)"),
                (eigs[0] - pair[0]).abs() / pair[0].abs(),
                1e-4,
            );
            c.bound(
                format!("branch {sign:+}: most negative transferred eigenvalue (relative)"),
                (eigs[27] - pair[1]).abs() / pair[1].abs(),
                1e-4,
            );
            let min_gap = eigs
                .windows(2)
                .map(|w| (w[0] - w[1]).abs())
                .fold(f64::INFINITY, f64::min);
            c.above(
                format!("branch {sign:+}: all 28 transferred eigenvalues distinct"),
                min_gap,
                1e-6,
            );
        }
        Ok(())
    };
    if let Err(e) = run() {
        c.error("transfer computation", e);
    }
    CriterionResult {
        index: 7,
        title: "first-fixture forms transported to the transfer point",
        checks: c.lines,
    }
}

fn criterion_8() -> CriterionResult {
    let mut c = Checks::new();
    let mut run = || -> Result<()> {
        let m = MetricTensor::euclidean();
        let omega = goldens::calibration_four_form();
        let endo = spectral::build_endomorphism(&omega, &m, 1)?;
        let n = endo.nrows();
        let id = DMatrix::<f64>::identity(n, n);
        let poly_dev = (&endo * &endo + &endo * 2.0 - &id * 3.0).abs().max();
        c.bound("flat calibration satisfies (M - I)(M + 3I) = 0", poly_dev, 1e-10);
        let eigs = spectral::endomorphism_eigenvalues(&endo, &m)?;
        let clusters = spectral::cluster_multiplicities(&eigs, 1e-8);
        let shape_ok = clusters.len() == 2
            && clusters[0].1 == 21
            && clusters[1].1 == 7
            && (clusters[0].0 - 1.0).abs() <= 1e-10
            && (clusters[1].0 + 3.0).abs() <= 1e-10;
        c.is_true(
            "spectrum is +1 (x21) and -3 (x7)",
            shape_ok,
            format!("clusters {clusters:?}"),
        );
        Ok(())
    };
    if let Err(e) = run() {
        c.error("flat benchmark", e);
    }
    CriterionResult {
        index: 8,
        title: "flat-space calibration benchmark",
        checks: c.lines,
    }
}

fn criterion_9() -> CriterionResult {
    let mut c = Checks::new();
    let coord_names = ["", "second", "", "fourth", "fifth", "sixth", "seventh", ""];

    // the nine curves certified at 1e-8 (the leading/fifth-coordinate
    // form is tabulated inconsistently; its failure here is expected
    // and documented rather than patched)
    let curve_list: [(TrackedCoefficient, usize); 9] = [
        (TrackedCoefficient::Leading, 1),
        (TrackedCoefficient::Leading, 4),
        (TrackedCoefficient::Leading, 5),
        (TrackedCoefficient::Leading, 6),
        (TrackedCoefficient::Trailing, 1),
        (TrackedCoefficient::Trailing, 3),
        (TrackedCoefficient::Trailing, 4),
        (TrackedCoefficient::Trailing, 5),
        (TrackedCoefficient::Trailing, 6),
    ];
    for (target, coord) in curve_list {
        let name = format!(
            "{} coefficient vs closed form along the {} coordinate",
            target.label(),
            coord_names[coord]
        );
        match sweeps::coefficient_sweep(coord, target) {
            Ok(sweep) => match sweep.max_deviation() {
                Some(dev) => {
                    if target == TrackedCoefficient::Leading && coord == 4 && dev > 1e-8 {
                        c.is_true(
                            name,
                            false,
                            format!(
                                "{dev:.3e} (bound 1.0e-8); known defect: the tabulated closed \
                                 form disagrees with the recomputed curve, whose maximum \
                                 matches the separately tabulated value"
                            ),
                        );
                    } else {
                        c.bound(name, dev, 1e-8);
                    }
                }
                None => c.is_true(name, false, "no comparable grid rows"),
            },
            Err(e) => c.error(name, e),
        }
    }

    // corrected fourth-coordinate form for the leading coefficient,
    // with the as-tabulated denominator logged
    match sweeps::coefficient_sweep(3, TrackedCoefficient::Leading) {
        Ok(sweep) => {
            let dev = sweep.max_deviation().unwrap_or(f64::INFINITY);
            c.bound(
                "leading coefficient along the fourth coordinate (corrected denominator 896)",
                dev,
                1e-8,
            );
            let printed_dev = sweep
                .rows
                .iter()
                .filter(|r| r.computed.is_finite())
                .map(|r| (r.computed - sweeps::leading_beta_as_printed(r.angle)).abs())
                .fold(0.0f64, f64::max);
            c.info(
                "as-tabulated denominator 996 logged",
                format!("would deviate by up to {printed_dev:.3e}"),
            );
            if let Some(row) = sweep.max_row() {
                c.bound(
                    "fourth-coordinate sweep maximum equals the base value",
                    (row.computed - goldens::PRINTED_BASE_LEADING).abs(),
                    1e-6,
                );
            }
        }
        Err(e) => c.error("leading coefficient along the fourth coordinate", e),
    }

    // base values at the second fixture
    match sweeps::coefficient_at(&goldens::second_point(), TrackedCoefficient::Leading) {
        Ok(v) => c.bound(
            "leading base coefficient matches its tabulated rounding",
            (v - goldens::PRINTED_BASE_LEADING).abs(),
            1e-6,
        ),
        Err(e) => c.error("leading base coefficient", e),
    }
    match sweeps::coefficient_at(&goldens::second_point(), TrackedCoefficient::Trailing) {
        Ok(v) => c.bound(
            "trailing base coefficient matches its tabulated rounding",
            (v - goldens::PRINTED_BASE_TRAILING).abs(),
            1e-4,
        ),
        Err(e) => c.error("trailing base coefficient", e),
    }

    // tabulated sweep maxima, read as maximum curve values
    for (coord, printed) in goldens::PRINTED_SWEEP_MAXIMA {
        if coord == 3 {
            continue; // handled above: the grid passes through the base point
        }
        match sweeps::refined_maximum(&goldens::second_point(), coord, TrackedCoefficient::Leading)
        {
            Ok((angle, value)) => c.is_true(
                format!(
                    "leading-curve maximum along the {} coordinate",
                    coord_names[coord]
                ),
                (value - printed).abs() <= 1e-3,
                format!(
                    "{value:.6} at angle {angle:.4} vs tabulated {printed} (bound 1.0e-3; \
                     tabulated figure maxima are read as maximum curve values)"
                ),
            ),
            Err(e) => c.error(format!("curve maximum along coordinate {coord}"), e),
        }
    }

    // spectrum response to sweeps: flat along the fourth coordinate,
    // moving along the second, fifth, and sixth
    let spectrum_at = |point: &ChartPoint| -> Result<Vec<f64>> {
        let m = metric::bures_metric(point)?;
        scaled_branch_spectrum(&m, 1)
    };
    match spectrum_at(&goldens::second_point()) {
        Ok(base_spec) => {
            for (coord, must_move) in [(3usize, false), (1, true), (4, true), (5, true)] {
                let run = || -> Result<f64> {
                    let grid = sweeps::sweep_grid(coord)?;
                    let mut max_delta = 0.0f64;
                    for k in [0usize, 13, 26, 39] {
                        let mut p = goldens::second_point();
                        p.coords[coord] = grid[k];
                        let shifted = spectrum_at(&p)?;
                        for (s, b) in shifted.iter().zip(&base_spec) {
                            max_delta = max_delta.max((s - b).abs());
                        }
                    }
                    Ok(max_delta)
                };
                let name = format!(
                    "spectrum {} under the {} coordinate",
                    if must_move { "moves" } else { "is invariant" },
                    coord_names[coord]
                );
                match run() {
                    Ok(delta) => {
                        if must_move {
                            c.above(name, delta, 1e-3);
                        } else {
                            c.bound(name, delta, 1e-8);
                        }
                    }
                    Err(e) => c.error(name, e),
                }
            }
        }
        Err(e) => c.error("base spectrum for sweep comparison", e),
    }

    CriterionResult {
        index: 9,
        title: "coefficient sweeps, maxima, and spectrum response",
        checks: c.lines,
    }
}

fn criterion_10() -> CriterionResult {
    let mut c = Checks::new();
    for (label, point, _) in fixtures() {
        match connection::gauge_potential(&point) {
            Ok(gp) => {
                let rho = gp.amplitude * gp.amplitude;
                let mut defining = 0.0f64;
                let mut anti_herm = 0.0f64;
                for mu in 0..8 {
                    let a = gp.potentials[mu];
                    let s = gp.amplitude * gp.amplitude_partials[mu]
                        - gp.amplitude_partials[mu] * gp.amplitude;
                    defining = defining.max(max_norm(&(rho * a + a * rho - s)));
                    anti_herm = anti_herm.max(max_norm(&(a + a.adjoint())));
                }
                c.bound(
                    format!("{label}: defining equation residual, all directions"),
                    defining,
                    1e-10,
                );
                c.bound(
                    format!("{label}: potentials anti-Hermitian"),
                    anti_herm,
                    1e-10,
                );
                let flat = max_norm(&gp.potentials[6]).max(max_norm(&gp.potentials[7]));
                c.bound(
                    format!("{label}: eigenvalue-direction potentials vanish"),
                    flat,
                    1e-12,
                );
            }
            Err(e) => c.error(format!("{label}: potentials"), e),
        }
    }
    let point = goldens::second_point();
    for (mu, nu) in [(1usize, 3usize), (0, 4)] {
        let run = || -> Result<(f64, f64, f64)> {
            let f = connection::curvature(&point, mu, nu, 1e-3)?;
            let g = connection::curvature(&point, nu, mu, 1e-3)?;
            let ratio = connection::richardson_ratio(&point, mu, nu, 1e-3)?;
            Ok((
                max_norm(&(f + g)),
                max_norm(&(f + f.adjoint())),
                ratio,
            ))
        };
        match run() {
            Ok((antisym, anti_herm, ratio)) => {
                c.bound(
                    format!("curvature ({mu},{nu}) antisymmetric in its indices"),
                    antisym,
                    1e-9,
                );
                c.bound(
                    format!("curvature ({mu},{nu}) anti-Hermitian"),
                    anti_herm,
                    1e-9,
                );
                c.is_true(
                    format!("curvature ({mu},{nu}) stencil converges at second order"),
                    (3.5..=4.5).contains(&ratio),
                    format!("step-halving ratio {ratio:.3} (expected within [3.5, 4.5])"),
                );
            }
            Err(e) => c.error(format!("curvature ({mu},{nu})"), e),
        }
    }
    CriterionResult {
        index: 10,
        title: "gauge potential and curvature",
        checks: c.lines,
    }
}

fn criterion_11() -> CriterionResult {
    let mut c = Checks::new();

    // wedge: exhaustive over all basis pairs of all degrees
    let mut pairs = 0usize;
    let mut mismatches = 0usize;
    for p in 0..=8usize {
        for q in 0..=8usize {
            for a_idx in exterior::basis_indices(p) {
                let a = PForm::basis(a_idx);
                for b_idx in exterior::basis_indices(q) {
                    let b = PForm::basis(b_idx);
                    let w = exterior::wedge(&a, &b);
                    pairs += 1;
                    match reference::wedge_basis_oracle(a_idx, b_idx) {
                        None => {
                            if w.max_abs() != 0.0 {
                                mismatches += 1;
                            }
                        }
                        Some((sorted, sign)) => {
                            if p + q > 8 {
                                if w.max_abs() != 0.0 {
                                    mismatches += 1;
                                }
                            } else if (w.coeff(&sorted) - sign).abs() != 0.0
                                || w.coeffs().iter().map(|v| v.abs()).sum::<f64>() != 1.0
                            {
                                mismatches += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    c.is_true(
        "wedge agrees with the parity oracle on every basis pair",
        mismatches == 0,
        format!("{pairs} pairs checked, {mismatches} mismatches"),
    );

    // hodge star vs the permutation-sum oracle on 100 forms
    let run_star = || -> Result<f64> {
        let metrics = [
            MetricTensor::euclidean(),
            metric::bures_metric(&goldens::first_point())?,
            metric::bures_metric(&goldens::second_point())?,
        ];
        let mut rng = reference::SplitMix64(0x0bb5_e55e);
        let mut worst = 0.0f64;
        for k in 0..100 {
            let degree = if k % 2 == 0 { 2 } else { 4 };
            let form = rng.next_form(degree);
            let m = &metrics[k % 3];
            let fast = exterior::hodge_star(&form, m)?;
            let slow = reference::hodge_star_permutation_sum(&form, m)?;
            for (f, s) in fast.coeffs().iter().zip(slow.coeffs()) {
                worst = worst.max((f - s).abs());
            }
        }
        Ok(worst)
    };
    match run_star() {
        Ok(worst) => c.bound("hodge star vs permutation-sum oracle (100 forms)", worst, 1e-10),
        Err(e) => c.error("hodge star oracle comparison", e),
    }

    // eigenbasis half-sum inverse vs the dense 9x9 oracle on 100 inputs
    let run_syl = || -> Result<f64> {
        let mut rng = reference::SplitMix64(0x5eed_cafe);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let rho = rng.next_density();
            let s = rng.next_hermitian();
            let fast = connection::sylvester_solve(&rho, &s)?;
            let slow = reference::sylvester_dense_solve(&rho, &s)?;
            worst = worst.max(max_norm(&(fast - slow)));
        }
        Ok(worst)
    };
    match run_syl() {
        Ok(worst) => c.bound("half-sum inverse vs dense oracle (100 inputs)", worst, 1e-10),
        Err(e) => c.error("half-sum oracle comparison", e),
    }

    CriterionResult {
        index: 11,
        title: "independent oracles for wedge, star, and half-sum inverse",
        checks: c.lines,
    }
}

/// Runs one criterion by its 1-based index (panics outside 1..=11).
pub fn run(index: usize) -> CriterionResult {
    match index {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(),
        _ => panic!("acceptance criteria are numbered 1 through 11"),
    }
}

/// Runs the full report in order.
pub fn run_all() -> Vec<CriterionResult> {
    (1..=11).map(run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_accumulator_formats_bounds() {
        let mut c = Checks::new();
        c.bound("ok line", 1e-12, 1e-10);
        c.bound("bad line", 1e-9, 1e-10);
        c.above("floor line", 0.5, 1e-3);
        assert!(c.lines[0].passed);
        assert!(!c.lines[1].passed);
        assert!(c.lines[2].passed);
    }

    #[test]
    fn render_includes_every_check() {
        let result = CriterionResult {
            index: 3,
            title: "demo",
            checks: vec![
                CheckLine {
                    name: "a".into(),
                    passed: true,
                    detail: "fine".into(),
                },
                CheckLine {
                    name: "b".into(),
                    passed: false,
                    detail: "broken".into(),
                },
            ],
        };
        let text = result.render();
        assert!(text.contains("criterion 03: FAIL (1/2) demo"));
        assert!(text.contains("[ ok ] a: fine"));
        assert!(text.contains("[FAIL] b: broken"));
    }

    #[test]
    fn nan_values_fail_bounds() {
        let mut c = Checks::new();
        c.bound("nan", f64::NAN, 1e-10);
        c.above("nan floor", f64::NAN, 1e-3);
        assert!(!c.lines[0].passed);
        assert!(!c.lines[1].passed);
    }
}
