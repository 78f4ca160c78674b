//! The machine-readable run report: versioned schema, stable field
//! order, per-check tolerances and reference anchors. The only field
//! allowed to vary between identical runs is the wall time.

use serde::Serialize;

/// How a golden check compares its computed value against the target.
#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// |computed - expected| <= tolerance
    Absolute,
    /// |computed - expected| <= tolerance * |expected|
    Relative,
    /// computed - expected must exceed tolerance (a separation check)
    Floor,
}

/// One golden comparison with its tolerance and its anchor in the
/// original tabulation.
#[derive(Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub anchor: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl GoldenCheck {
    pub fn absolute(
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        GoldenCheck {
            name: name.into(),
            anchor: anchor.into(),
            computed,
            expected,
            tolerance,
            bound: Bound::Absolute,
            passed: computed.is_finite() && (computed - expected).abs() <= tolerance,
        }
    }

    pub fn relative(
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        GoldenCheck {
            name: name.into(),
            anchor: anchor.into(),
            computed,
            expected,
            tolerance,
            bound: Bound::Relative,
            passed: computed.is_finite()
                && (computed - expected).abs() <= tolerance * expected.abs(),
        }
    }

    pub fn floor(
        name: impl Into<String>,
        anchor: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        GoldenCheck {
            name: name.into(),
            anchor: anchor.into(),
            computed,
            expected,
            tolerance,
            bound: Bound::Floor,
            passed: computed.is_finite() && computed - expected > tolerance,
        }
    }
}

/// Complete report for one command invocation.
#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub inputs: serde_json::Value,
    pub outputs: T,
    pub residuals: serde_json::Value,
    pub tolerances: serde_json::Value,
    pub golden_checks: Vec<GoldenCheck>,
    pub wall_time_ms: f64,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: &'static str, inputs: serde_json::Value, outputs: T) -> Self {
        RunReport {
            schema: 1,
            command,
            inputs,
            outputs,
            residuals: serde_json::json!({}),
            tolerances: serde_json::json!({}),
            golden_checks: Vec::new(),
            wall_time_ms: 0.0,
        }
    }

    pub fn all_checks_passed(&self) -> bool {
        self.golden_checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Text rendering of the golden-check lines shared by all commands.
pub fn print_checks(checks: &[GoldenCheck]) {
    for c in checks {
        let relation = match c.bound {
            Bound::Absolute => format!("vs {} (abs tol {:.1e})", c.expected, c.tolerance),
            Bound::Relative => format!("vs {} (rel tol {:.1e})", c.expected, c.tolerance),
            Bound::Floor => format!("must exceed {} by {:.1e}", c.expected, c.tolerance),
        };
        println!(
            "  [{}] {}: {:.9} {} [{}]",
            if c.passed { " ok " } else { "FAIL" },
            c.name,
            c.computed,
            relation,
            c.anchor
        );
    }
}
