//! The eight-coordinate chart on 3x3 density matrices.
//!
//! A state is factored as rho = U D U* with U a product of six Gell-Mann
//! exponentials in the first six coordinates and D a diagonal eigenvalue
//! matrix in the last two. The exact factor sequence is not hard-coded by
//! convention: it is recovered by [`calibrate_parameterization`], which
//! searches a finite family of candidate sequences for the unique one
//! reproducing both reference density matrices, and the survivor is baked
//! in as [`CALIBRATED_SEQUENCE`]. All coordinate partials of rho are
//! analytic (product rule over the factor sequence), never finite
//! differences.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// 3x3 complex matrix, the working type for states and frames.
pub type CMat3 = Matrix3<Complex64>;

/// Coordinate labels in storage order. The first six parameterize the
/// unitary factor; the last two parameterize the eigenvalues.
pub const COORD_LABELS: [&str; 8] = [
    "alpha", "tau", "a", "beta", "b", "theta", "theta1", "theta2",
];

/// Number of coordinates feeding the unitary factor.
pub const EULER_COORDS: usize = 6;

/// Default nondegeneracy gap: eigenvalues of D must stay positive and
/// pairwise distinct beyond this threshold.
pub const DEFAULT_EIGENVALUE_GAP: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of the chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    /// Coordinates in [`COORD_LABELS`] order, radians.
    pub coords: [f64; 8],
}

#[allow(clippy::too_many_arguments)]
impl ChartPoint {
    pub const fn new(
        alpha: f64,
        tau: f64,
        a: f64,
        beta: f64,
        b: f64,
        theta: f64,
        theta1: f64,
        theta2: f64,
    ) -> Self {
        ChartPoint {
            coords: [alpha, tau, a, beta, b, theta, theta1, theta2],
        }
    }

    pub const fn from_coords(coords: [f64; 8]) -> Self {
        ChartPoint { coords }
    }

    pub fn alpha(&self) -> f64 {
        self.coords[0]
    }
    pub fn tau(&self) -> f64 {
        self.coords[1]
    }
    pub fn a(&self) -> f64 {
        self.coords[2]
    }
    pub fn beta(&self) -> f64 {
        self.coords[3]
    }
    pub fn b(&self) -> f64 {
        self.coords[4]
    }
    pub fn theta(&self) -> f64 {
        self.coords[5]
    }
    pub fn theta1(&self) -> f64 {
        self.coords[6]
    }
    pub fn theta2(&self) -> f64 {
        self.coords[7]
    }

    /// Canonical coordinate ranges. These are documentation metadata, not a
    /// hard constraint: the chart covers points outside them (the first
    /// reference point does), so violations only produce warnings.
    pub fn canonical_ranges() -> [(f64, f64); 8] {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
        let theta1_max = (1.0 / 3.0f64.sqrt()).acos();
        [
            (0.0, PI),
            (0.0, PI),
            (0.0, PI),
            (0.0, FRAC_PI_2),
            (0.0, FRAC_PI_2),
            (0.0, FRAC_PI_2),
            (0.0, theta1_max),
            (0.0, FRAC_PI_4),
        ]
    }

    /// One warning line per coordinate lying outside its canonical range.
    pub fn range_warnings(&self) -> Vec<String> {
        let ranges = Self::canonical_ranges();
        let mut out = Vec::new();
        for (k, &(lo, hi)) in ranges.iter().enumerate() {
            let v = self.coords[k];
            if !(lo..=hi).contains(&v) {
                out.push(format!(
                    "{} = {v:.6} outside canonical range [{lo:.6}, {hi:.6}]",
                    COORD_LABELS[k]
                ));
            }
        }
        out
    }

    /// Validates finiteness and the eigenvalue nondegeneracy guard.
    pub fn validate(&self, gap: f64) -> Result<()> {
        if self.coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument(
                "chart point has a non-finite coordinate".into(),
            ));
        }
        let triple = base_eigenvalue_triple(self.theta1(), self.theta2());
        check_nondegenerate(&triple, gap)
    }
}

/// The eight standard Gell-Mann generators (Hermitian, traceless,
/// Tr(g_i g_j) = 2 delta_ij), indexed 1..=8 as `gell_mann()[k-1]`.
pub fn gell_mann() -> [CMat3; 8] {
    let i = Complex64::new(0.0, 1.0);
    let r = |x: f64| Complex64::new(x, 0.0);
    let s3 = 3.0f64.sqrt();
    [
        CMat3::new(ZERO, ONE, ZERO, ONE, ZERO, ZERO, ZERO, ZERO, ZERO),
        CMat3::new(ZERO, -i, ZERO, i, ZERO, ZERO, ZERO, ZERO, ZERO),
        CMat3::new(ONE, ZERO, ZERO, ZERO, -ONE, ZERO, ZERO, ZERO, ZERO),
        CMat3::new(ZERO, ZERO, ONE, ZERO, ZERO, ZERO, ONE, ZERO, ZERO),
        CMat3::new(ZERO, ZERO, -i, ZERO, ZERO, ZERO, i, ZERO, ZERO),
        CMat3::new(ZERO, ZERO, ZERO, ZERO, ZERO, ONE, ZERO, ONE, ZERO),
        CMat3::new(ZERO, ZERO, ZERO, ZERO, ZERO, -i, ZERO, i, ZERO),
        CMat3::new(
            r(1.0 / s3),
            ZERO,
            ZERO,
            ZERO,
            r(1.0 / s3),
            ZERO,
            ZERO,
            ZERO,
            r(-2.0 / s3),
        ),
    ]
}

/// Closed-form exp(i g_k x) for the generators used by the factor sequence.
///
/// Each supported generator exponentiates to a plane rotation or a diagonal
/// phase, so no series or eigendecomposition is involved.
pub fn exp_i_generator(k: u8, x: f64) -> Result<CMat3> {
    let (c, s) = (x.cos(), x.sin());
    let rc = Complex64::new(c, 0.0);
    let rs = Complex64::new(s, 0.0);
    match k {
        2 => Ok(CMat3::new(rc, rs, ZERO, -rs, rc, ZERO, ZERO, ZERO, ONE)),
        3 => Ok(CMat3::new(
            Complex64::new(c, s),
            ZERO,
            ZERO,
            ZERO,
            Complex64::new(c, -s),
            ZERO,
            ZERO,
            ZERO,
            ONE,
        )),
        5 => Ok(CMat3::new(rc, ZERO, rs, ZERO, ONE, ZERO, -rs, ZERO, rc)),
        _ => Err(Error::InvalidArgument(format!(
            "no closed-form exponential wired for generator {k}"
        ))),
    }
}

/// The angle fed to one factor: either a single coordinate or a difference
/// of two coordinates (both indices into [`COORD_LABELS`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorAngle {
    Coord(usize),
    Diff(usize, usize),
}

impl FactorAngle {
    fn value(&self, point: &ChartPoint) -> f64 {
        match *self {
            FactorAngle::Coord(c) => point.coords[c],
            FactorAngle::Diff(m, d) => point.coords[m] - point.coords[d],
        }
    }

    /// d(angle)/d(coordinate c).
    fn derivative(&self, c: usize) -> f64 {
        match *self {
            FactorAngle::Coord(k) => {
                if k == c {
                    1.0
                } else {
                    0.0
                }
            }
            FactorAngle::Diff(m, d) => {
                let mut w = 0.0;
                if m == c {
                    w += 1.0;
                }
                if d == c {
                    w -= 1.0;
                }
                w
            }
        }
    }

    fn label(&self) -> String {
        match *self {
            FactorAngle::Coord(c) => COORD_LABELS[c].to_string(),
            FactorAngle::Diff(m, d) => format!("{}-{}", COORD_LABELS[m], COORD_LABELS[d]),
        }
    }
}

/// One unitary factor exp(sign * i * g_generator * angle).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub generator: u8,
    pub angle: FactorAngle,
    pub sign: i8,
}

/// A complete chart convention: six unitary factors (left to right) plus
/// the eigenvalue slot permutation for D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSequence {
    pub factors: [Factor; 6],
    /// `eigenvalues[slot] = base_triple[slot_perm[slot]]`.
    pub slot_perm: [usize; 3],
}

impl GeneratorSequence {
    /// The unitary factor U at a point.
    pub fn unitary(&self, point: &ChartPoint) -> CMat3 {
        let mut u = CMat3::identity();
        for f in &self.factors {
            let angle = f.sign as f64 * f.angle.value(point);
            u *= exp_i_generator(f.generator, angle).expect("calibrated generator");
        }
        u
    }

    /// Eigenvalues of D at a point, in slot order.
    pub fn eigenvalues(&self, point: &ChartPoint) -> [f64; 3] {
        let t = base_eigenvalue_triple(point.theta1(), point.theta2());
        [
            t[self.slot_perm[0]],
            t[self.slot_perm[1]],
            t[self.slot_perm[2]],
        ]
    }

    /// Human-readable factor summary, e.g. for calibration reports.
    pub fn describe(&self) -> String {
        let factors: Vec<String> = self
            .factors
            .iter()
            .map(|f| {
                let s = if f.sign >= 0 { "+" } else { "-" };
                format!("exp({s}i g{} {})", f.generator, f.angle.label())
            })
            .collect();
        format!(
            "{} | slots ({},{},{})",
            factors.join(" "),
            self.slot_perm[0],
            self.slot_perm[1],
            self.slot_perm[2]
        )
    }
}

/// The calibrated factor sequence: the unique survivor of
/// [`calibrate_parameterization`] over the reference fixtures, baked in so
/// every chart operation agrees with the calibration without re-searching.
pub const CALIBRATED_SEQUENCE: GeneratorSequence = GeneratorSequence {
    factors: [
        Factor {
            generator: 3,
            angle: FactorAngle::Coord(0),
            sign: 1,
        },
        Factor {
            generator: 2,
            angle: FactorAngle::Coord(3),
            sign: 1,
        },
        Factor {
            generator: 3,
            angle: FactorAngle::Diff(1, 2),
            sign: 1,
        },
        Factor {
            generator: 5,
            angle: FactorAngle::Coord(5),
            sign: 1,
        },
        Factor {
            generator: 3,
            angle: FactorAngle::Coord(2),
            sign: 1,
        },
        Factor {
            generator: 2,
            angle: FactorAngle::Coord(4),
            sign: 1,
        },
    ],
    slot_perm: [0, 1, 2],
};

/// Unpermuted eigenvalue triple (cos^2 t1, sin^2 t1 cos^2 t2, sin^2 t1 sin^2 t2).
pub fn base_eigenvalue_triple(theta1: f64, theta2: f64) -> [f64; 3] {
    let (s1, c1) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    [c1 * c1, s1 * s1 * c2 * c2, s1 * s1 * s2 * s2]
}

fn check_nondegenerate(triple: &[f64; 3], gap: f64) -> Result<()> {
    for (k, &v) in triple.iter().enumerate() {
        if v < gap {
            return Err(Error::DegenerateState(format!(
                "eigenvalue {k} = {v:.3e} below gap {gap:.1e}"
            )));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if (triple[i] - triple[j]).abs() < gap {
            return Err(Error::DegenerateState(format!(
                "eigenvalues {i} and {j} within {:.3e} of each other (gap {gap:.1e})",
                (triple[i] - triple[j]).abs()
            )));
        }
    }
    Ok(())
}

/// Eigenvalues of D under the calibrated slot permutation, guarded against
/// degeneracy at the default gap.
pub fn eigenvalues_from_angles(theta1: f64, theta2: f64) -> Result<[f64; 3]> {
    let t = base_eigenvalue_triple(theta1, theta2);
    check_nondegenerate(&t, DEFAULT_EIGENVALUE_GAP)?;
    let p = CALIBRATED_SEQUENCE.slot_perm;
    Ok([t[p[0]], t[p[1]], t[p[2]]])
}

/// Spectral data of a chart point: the unitary frame and the eigenvalues.
#[derive(Debug, Clone)]
pub struct SpectralFrame {
    pub unitary: CMat3,
    pub eigenvalues: [f64; 3],
}

/// Builds rho = U D U* from the calibrated sequence.
pub fn density_from_angles(point: &ChartPoint) -> Result<(CMat3, SpectralFrame)> {
    point.validate(DEFAULT_EIGENVALUE_GAP)?;
    let unitary = CALIBRATED_SEQUENCE.unitary(point);
    let eigenvalues = CALIBRATED_SEQUENCE.eigenvalues(point);
    let d = CMat3::from_diagonal(&nalgebra::Vector3::new(
        Complex64::new(eigenvalues[0], 0.0),
        Complex64::new(eigenvalues[1], 0.0),
        Complex64::new(eigenvalues[2], 0.0),
    ));
    let rho = unitary * d * unitary.adjoint();
    Ok((
        rho,
        SpectralFrame {
            unitary,
            eigenvalues,
        },
    ))
}

/// A chart point's frame together with first derivatives of the frame:
/// d(U)/dx_i for the six unitary coordinates and d(eigenvalues)/dx_i for
/// the two eigenvalue coordinates (each zero on the other block).
#[derive(Debug, Clone)]
pub struct ChartDerivatives {
    pub unitary: CMat3,
    pub eigenvalues: [f64; 3],
    pub d_unitary: [CMat3; 8],
    pub d_eigenvalues: [[f64; 3]; 8],
}

/// Analytic first derivatives of the calibrated frame by the product rule:
/// each factor differentiates to (d angle/dx) * i g_k * factor.
pub fn chart_derivatives(point: &ChartPoint) -> Result<ChartDerivatives> {
    point.validate(DEFAULT_EIGENVALUE_GAP)?;
    let seq = &CALIBRATED_SEQUENCE;
    let generators = gell_mann();
    let i = Complex64::new(0.0, 1.0);

    // factor matrices and prefix/suffix products
    let mut factors = [CMat3::identity(); 6];
    for (j, f) in seq.factors.iter().enumerate() {
        let angle = f.sign as f64 * f.angle.value(point);
        factors[j] = exp_i_generator(f.generator, angle)?;
    }
    let mut prefix = [CMat3::identity(); 7]; // prefix[j] = F_0 .. F_{j-1}
    for j in 0..6 {
        prefix[j + 1] = prefix[j] * factors[j];
    }
    let mut suffix = [CMat3::identity(); 7]; // suffix[j] = F_j .. F_5
    for j in (0..6).rev() {
        suffix[j] = factors[j] * suffix[j + 1];
    }
    let unitary = prefix[6];

    let mut d_unitary = [CMat3::zeros(); 8];
    for (j, f) in seq.factors.iter().enumerate() {
        let g = generators[(f.generator - 1) as usize];
        for (c, du) in d_unitary.iter_mut().enumerate().take(EULER_COORDS) {
            let w = f.sign as f64 * f.angle.derivative(c);
            if w != 0.0 {
                *du += (prefix[j] * g * suffix[j]).map(|z| z * i * w);
            }
        }
    }

    // eigenvalue derivatives (base triple then slot permutation)
    let (s1, c1) = point.theta1().sin_cos();
    let (s2, c2) = point.theta2().sin_cos();
    let sin_2t1 = 2.0 * s1 * c1;
    let sin_2t2 = 2.0 * s2 * c2;
    let dt1 = [-sin_2t1, sin_2t1 * c2 * c2, sin_2t1 * s2 * s2];
    let dt2 = [0.0, -s1 * s1 * sin_2t2, s1 * s1 * sin_2t2];
    let p = seq.slot_perm;
    let mut d_eigenvalues = [[0.0; 3]; 8];
    d_eigenvalues[6] = [dt1[p[0]], dt1[p[1]], dt1[p[2]]];
    d_eigenvalues[7] = [dt2[p[0]], dt2[p[1]], dt2[p[2]]];

    Ok(ChartDerivatives {
        unitary,
        eigenvalues: seq.eigenvalues(point),
        d_unitary,
        d_eigenvalues,
    })
}

/// Analytic coordinate partials of rho: for the unitary coordinates
/// d(rho) = dU D U* + (dU D U*)*, for the eigenvalue coordinates U dD U*.
pub fn rho_partials(point: &ChartPoint) -> Result<[CMat3; 8]> {
    let d = chart_derivatives(point)?;
    let dmat = CMat3::from_diagonal(&nalgebra::Vector3::new(
        Complex64::new(d.eigenvalues[0], 0.0),
        Complex64::new(d.eigenvalues[1], 0.0),
        Complex64::new(d.eigenvalues[2], 0.0),
    ));
    let u_adj = d.unitary.adjoint();
    let mut out = [CMat3::zeros(); 8];
    for (c, slot) in out.iter_mut().enumerate() {
        if c < EULER_COORDS {
            let half = d.d_unitary[c] * dmat * u_adj;
            *slot = half + half.adjoint();
        } else {
            let dd = CMat3::from_diagonal(&nalgebra::Vector3::new(
                Complex64::new(d.d_eigenvalues[c][0], 0.0),
                Complex64::new(d.d_eigenvalues[c][1], 0.0),
                Complex64::new(d.d_eigenvalues[c][2], 0.0),
            ));
            *slot = d.unitary * dd * u_adj;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Calibration search
// ---------------------------------------------------------------------------

/// Matching tolerance for a calibration candidate, entrywise on both fixtures.
pub const CALIBRATION_TOL: f64 = 1e-10;

fn distinct_orderings() -> Vec<[u8; 6]> {
    use itertools::Itertools;
    let mut set: Vec<[u8; 6]> = [3u8, 2, 3, 5, 3, 2]
        .iter()
        .copied()
        .permutations(6)
        .map(|v| [v[0], v[1], v[2], v[3], v[4], v[5]])
        .collect();
    set.sort_unstable();
    set.dedup();
    set
}

fn permutations_of<const N: usize>(items: [usize; N]) -> Vec<[usize; N]> {
    use itertools::Itertools;
    items
        .iter()
        .copied()
        .permutations(N)
        .map(|v| {
            let mut arr = [0usize; N];
            arr.copy_from_slice(&v);
            arr
        })
        .collect()
}

struct FixtureTarget {
    point: ChartPoint,
    rho: CMat3,
    base_triple: [f64; 3],
}

/// Max entrywise deviation of U D U* from the fixture target.
fn candidate_deviation(seq: &GeneratorSequence, target: &FixtureTarget) -> f64 {
    let u = seq.unitary(&target.point);
    let t = &target.base_triple;
    let d = CMat3::from_diagonal(&nalgebra::Vector3::new(
        Complex64::new(t[seq.slot_perm[0]], 0.0),
        Complex64::new(t[seq.slot_perm[1]], 0.0),
        Complex64::new(t[seq.slot_perm[2]], 0.0),
    ));
    let rho = u * d * u.adjoint();
    (rho - target.rho)
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()))
}

/// Deviation of a candidate unitary from diagonalizing both fixtures, with
/// the slot permutation optimized out; cheap pre-stage for the search loop.
fn best_slot_deviation(
    u1: &CMat3,
    u2: &CMat3,
    targets: &[FixtureTarget; 2],
    slot_perms: &[[usize; 3]],
) -> (f64, [usize; 3]) {
    let h1 = u1.adjoint() * targets[0].rho * u1;
    let h2 = u2.adjoint() * targets[1].rho * u2;
    let mut best = (f64::INFINITY, [0usize; 3]);
    for &sp in slot_perms {
        let mut dev = 0.0f64;
        for r in 0..3 {
            for c in 0..3 {
                let t1 = if r == c {
                    Complex64::new(targets[0].base_triple[sp[r]], 0.0)
                } else {
                    ZERO
                };
                let t2 = if r == c {
                    Complex64::new(targets[1].base_triple[sp[r]], 0.0)
                } else {
                    ZERO
                };
                dev = dev.max((h1[(r, c)] - t1).norm()).max((h2[(r, c)] - t2).norm());
            }
        }
        if dev < best.0 {
            best = (dev, sp);
        }
    }
    best
}

struct SearchState {
    winners: Vec<GeneratorSequence>,
    best_dev: f64,
    best_desc: String,
}

impl SearchState {
    fn new() -> Self {
        SearchState {
            winners: Vec::new(),
            best_dev: f64::INFINITY,
            best_desc: String::new(),
        }
    }

    fn visit(
        &mut self,
        factors: [Factor; 6],
        targets: &[FixtureTarget; 2],
        slot_perms: &[[usize; 3]],
    ) {
        let seq_nop = GeneratorSequence {
            factors,
            slot_perm: [0, 1, 2],
        };
        let u1 = seq_nop.unitary(&targets[0].point);
        let u2 = seq_nop.unitary(&targets[1].point);
        let (dev, sp) = best_slot_deviation(&u1, &u2, targets, slot_perms);
        if dev < self.best_dev {
            self.best_dev = dev;
            let best = GeneratorSequence {
                factors,
                slot_perm: sp,
            };
            self.best_desc = best.describe();
        }
        if dev < CALIBRATION_TOL {
            self.winners.push(GeneratorSequence {
                factors,
                slot_perm: sp,
            });
        }
    }
}

/// Functional fingerprint used to merge equivalent survivors: the density
/// matrices produced at a fixed probe set.
fn functional_fingerprint(seq: &GeneratorSequence) -> Vec<Complex64> {
    let probes = [
        ChartPoint::new(0.31, 0.87, 1.13, 0.43, 0.59, 0.71, 0.67, 0.53),
        ChartPoint::new(1.91, 0.23, 0.41, 1.07, 1.31, 0.19, 0.83, 0.37),
        ChartPoint::new(0.11, 2.03, 0.67, 0.29, 0.97, 1.21, 0.41, 0.61),
    ];
    let mut out = Vec::with_capacity(27);
    for p in &probes {
        let u = seq.unitary(p);
        let t = base_eigenvalue_triple(p.theta1(), p.theta2());
        let d = CMat3::from_diagonal(&nalgebra::Vector3::new(
            Complex64::new(t[seq.slot_perm[0]], 0.0),
            Complex64::new(t[seq.slot_perm[1]], 0.0),
            Complex64::new(t[seq.slot_perm[2]], 0.0),
        ));
        let rho = u * d * u.adjoint();
        out.extend(rho.iter().copied());
    }
    out
}

/// Structure signature of a candidate: everything except the concrete
/// plain-angle assignment and signs. Ties between classes are only ever
/// broken within one structure.
fn structure_key(s: &GeneratorSequence) -> ([u8; 6], [bool; 6], [usize; 3]) {
    let mut gens = [0u8; 6];
    let mut is_diff = [false; 6];
    for (k, f) in s.factors.iter().enumerate() {
        gens[k] = f.generator;
        is_diff[k] = matches!(f.angle, FactorAngle::Diff(..));
    }
    (gens, is_diff, s.slot_perm)
}

/// Sort key preferring angle assignments closest to storage order.
fn angle_sort_key(s: &GeneratorSequence) -> Vec<(u8, usize, usize)> {
    s.factors
        .iter()
        .map(|f| match f.angle {
            FactorAngle::Coord(c) => (0u8, c, 0usize),
            FactorAngle::Diff(m, d) => (1u8, m, d),
        })
        .collect()
}

/// Searches the candidate family for the factor sequence reproducing both
/// fixtures entrywise to [`CALIBRATION_TOL`].
///
/// The family is searched in three widening stages, each exhausted before
/// the next is opened:
///   1. the 60 distinct generator orderings of (g3, g2, g3, g5, g3, g2) on
///      the six unitary coordinates in storage order, with per-factor
///      exponent signs and all 6 eigenvalue slot permutations;
///   2. the same orderings with the coordinates assigned by an arbitrary
///      bijection and a global exponent sign;
///   3. stage 2 widened so that one g3 factor carries a difference angle
///      x_m - x_d, where x_m is the coordinate left out of the bijection
///      and x_d one of the five assigned coordinates (both orientations).
///
/// Survivors are merged up to functional equivalence (identical density
/// maps on a probe set). Classes the fixture pair cannot separate at all
/// (same structure, angle assignments swapped where the fixture angles
/// coincide or differ by a commuting half turn) are resolved canonically
/// toward storage order; otherwise exactly one class must remain.
pub fn calibrate_parameterization(
    fixtures: &[(ChartPoint, CMat3); 2],
) -> Result<GeneratorSequence> {
    for (k, (point, rho)) in fixtures.iter().enumerate() {
        let herm_dev = (rho - rho.adjoint())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        let trace_dev = (rho.trace() - ONE).norm();
        if herm_dev > 1e-12 || trace_dev > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "fixture {k} is not a density matrix (hermiticity {herm_dev:.1e}, trace {trace_dev:.1e})"
            )));
        }
        point.validate(DEFAULT_EIGENVALUE_GAP)?;
    }
    let targets = [
        FixtureTarget {
            point: fixtures[0].0,
            rho: fixtures[0].1,
            base_triple: base_eigenvalue_triple(fixtures[0].0.theta1(), fixtures[0].0.theta2()),
        },
        FixtureTarget {
            point: fixtures[1].0,
            rho: fixtures[1].1,
            base_triple: base_eigenvalue_triple(fixtures[1].0.theta1(), fixtures[1].0.theta2()),
        },
    ];

    let orderings = distinct_orderings();
    let slot_perms = permutations_of([0usize, 1, 2]);
    let coord_perms = permutations_of([0usize, 1, 2, 3, 4, 5]);
    let mut state = SearchState::new();

    // Stage 1: storage-order coordinates, per-factor signs.
    for gens in &orderings {
        for sign_bits in 0u32..64 {
            let mut factors = [Factor {
                generator: 0,
                angle: FactorAngle::Coord(0),
                sign: 1,
            }; 6];
            for j in 0..6 {
                factors[j] = Factor {
                    generator: gens[j],
                    angle: FactorAngle::Coord(j),
                    sign: if sign_bits >> j & 1 == 0 { 1 } else { -1 },
                };
            }
            state.visit(factors, &targets, &slot_perms);
        }
    }

    // Stage 2: arbitrary coordinate bijection, global sign.
    if state.winners.is_empty() {
        for gens in &orderings {
            for cp in &coord_perms {
                for &sign in &[1i8, -1] {
                    let mut factors = [Factor {
                        generator: 0,
                        angle: FactorAngle::Coord(0),
                        sign: 1,
                    }; 6];
                    for j in 0..6 {
                        factors[j] = Factor {
                            generator: gens[j],
                            angle: FactorAngle::Coord(cp[j]),
                            sign,
                        };
                    }
                    state.visit(factors, &targets, &slot_perms);
                }
            }
        }
    }

    // Stage 3: one g3 factor takes a two-coordinate difference angle.
    if state.winners.is_empty() {
        let five_perms = permutations_of([0usize, 1, 2, 3, 4]);
        for gens in &orderings {
            let g3_slots: Vec<usize> =
                (0..6).filter(|&j| gens[j] == 3).collect();
            for &diff_slot in &g3_slots {
                let plain_slots: Vec<usize> =
                    (0..6).filter(|&j| j != diff_slot).collect();
                for missing in 0..EULER_COORDS {
                    let remaining: Vec<usize> =
                        (0..EULER_COORDS).filter(|&c| c != missing).collect();
                    for assignment in &five_perms {
                        for &sub in &remaining {
                            for &orient in &[1i8, -1] {
                                for &sign in &[1i8, -1] {
                                    let mut factors = [Factor {
                                        generator: 0,
                                        angle: FactorAngle::Coord(0),
                                        sign: 1,
                                    }; 6];
                                    for (k, &slot) in plain_slots.iter().enumerate() {
                                        factors[slot] = Factor {
                                            generator: gens[slot],
                                            angle: FactorAngle::Coord(
                                                remaining[assignment[k]],
                                            ),
                                            sign,
                                        };
                                    }
                                    let diff = if orient == 1 {
                                        FactorAngle::Diff(missing, sub)
                                    } else {
                                        FactorAngle::Diff(sub, missing)
                                    };
                                    factors[diff_slot] = Factor {
                                        generator: 3,
                                        angle: diff,
                                        sign,
                                    };
                                    state.visit(factors, &targets, &slot_perms);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    if state.winners.is_empty() {
        return Err(Error::CalibrationFailure(format!(
            "no candidate matched both fixtures to {CALIBRATION_TOL:.1e}; nearest candidate deviated by {:.3e}: {}",
            state.best_dev, state.best_desc
        )));
    }

    // Merge functionally equivalent survivors.
    let mut classes: Vec<(Vec<Complex64>, GeneratorSequence)> = Vec::new();
    for w in &state.winners {
        let fp = functional_fingerprint(w);
        let known = classes.iter().any(|(cfp, _)| {
            cfp.iter()
                .zip(&fp)
                .all(|(a, b)| (a - b).norm() < CALIBRATION_TOL)
        });
        if !known {
            classes.push((fp, w.clone()));
        }
    }
    if classes.len() > 1 {
        // Every class here matched both fixtures to CALIBRATION_TOL, so the
        // fixture pair itself cannot separate them. The reference fixtures
        // have such a blind spot: their angles satisfy beta = alpha at one
        // point and beta = alpha + pi at the other, where the extra
        // half-turn phases of the leading g3/g2 pair commute through the
        // 2x2 block and cancel, hiding a swap of those two angles. Ties of
        // that shape (identical generators, diff slots, and slot
        // permutation, differing only in angle assignment) are resolved
        // canonically toward storage order; the choice is certified by the
        // downstream tabulated quantities, which separate the classes at
        // metric level. Structurally different survivors stay an error.
        let key0 = structure_key(&classes[0].1);
        if classes.iter().all(|(_, s)| structure_key(s) == key0) {
            classes.sort_by_key(|(_, s)| angle_sort_key(s));
        } else {
            let descs: Vec<String> = classes
                .iter()
                .map(|(_, s)| {
                    let dev = candidate_deviation(s, &targets[0])
                        .max(candidate_deviation(s, &targets[1]));
                    format!("{} (max deviation {dev:.3e})", s.describe())
                })
                .collect();
            return Err(Error::CalibrationFailure(format!(
                "{} functionally distinct candidates matched both fixtures: {}",
                classes.len(),
                descs.join("; ")
            )));
        }
    }

    // Canonical representative: fewest negative signs, then first found.
    let neg_count = |s: &GeneratorSequence| {
        s.factors.iter().filter(|f| f.sign < 0).count()
    };
    let fp = &classes[0].0;
    let mut canonical = classes[0].1.clone();
    for w in &state.winners {
        let wfp = functional_fingerprint(w);
        let same = wfp
            .iter()
            .zip(fp)
            .all(|(a, b)| (a - b).norm() < CALIBRATION_TOL);
        if same && neg_count(w) < neg_count(&canonical) {
            canonical = w.clone();
        }
    }
    Ok(canonical)
}
