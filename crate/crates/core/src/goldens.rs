//! Tabulated reference values backing the golden tests and the
//! acceptance report: fixture chart points and their density matrices,
//! the printed coefficients of the dual four-forms, endomorphism
//! spectra, characteristic-polynomial coefficients, and the radical
//! closed form for one squared octet eigenvalue.
//!
//! Two conventions of the tabulation need translation:
//!
//! * Spectra are quoted in a normalization that differs from this
//!   library's raw eigenvalues by the constant factor 720 = 6!
//!   ([`TABULATED_EIGENVALUE_SCALE`]); raw values divided by the scale
//!   match the tables. The flat-metric benchmark spectrum {1, -3} is
//!   unscaled; the factor applies only to the curved fixture tables.
//! * Four-form tables are keyed here by the branch sign this library's
//!   solver assigns under its fixed orientation convention (positive
//!   top-degree orientation, positive root of det g). The original
//!   tabulation labels the two branches at the first fixture point in
//!   the opposite order; the assignment used here was established
//!   numerically and is locked in by the golden tests.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::chart::{ChartPoint, CMat3};
use crate::exterior::PForm;

/// Ratio between this library's raw endomorphism eigenvalues and the
/// tabulated values (720 = 6!).
pub const TABULATED_EIGENVALUE_SCALE: f64 = 720.0;

/// e^{i pi q}
fn phase(q: f64) -> Complex64 {
    Complex64::new(0.0, PI * q).exp()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// First fixture point, in storage order
/// (alpha, tau, a, beta, b, theta, theta1, theta2).
pub fn first_point() -> ChartPoint {
    ChartPoint::new(
        -PI / 3.0,
        2.0 * PI / 3.0,
        3.0 * PI / 4.0,
        2.0 * PI / 3.0,
        -2.0 * PI / 3.0,
        -2.0 * PI / 3.0,
        -2.0 * PI / 3.0,
        -PI / 3.0,
    )
}

/// Second fixture point.
pub fn second_point() -> ChartPoint {
    ChartPoint::new(
        PI / 4.0,
        3.0 * PI / 4.0,
        2.0 * PI / 3.0,
        PI / 4.0,
        PI / 4.0,
        PI / 3.0,
        PI / 4.0,
        PI / 6.0,
    )
}

/// Point at which the two four-forms fitted at the first fixture are
/// re-applied to a different geometry.
pub fn transfer_point() -> ChartPoint {
    ChartPoint::new(
        2.0 * PI / 3.0,
        2.0 * PI / 3.0,
        5.0 * PI / 6.0,
        PI / 4.0,
        PI / 3.0,
        PI / 6.0,
        PI / 4.0,
        PI / 6.0,
    )
}

/// Eigenvalues of the first fixture state (descending).
pub const FIRST_EIGENVALUES: [f64; 3] = [9.0 / 16.0, 1.0 / 4.0, 3.0 / 16.0];

/// Eigenvalues of the second fixture state (descending).
pub const SECOND_EIGENVALUES: [f64; 3] = [1.0 / 2.0, 3.0 / 8.0, 1.0 / 8.0];

/// Exact density matrix at [`first_point`].
pub fn first_state() -> CMat3 {
    let s3 = 3.0_f64.sqrt();
    let mut m = CMat3::zeros();
    m[(0, 0)] = c(307.0 / 1024.0, 0.0);
    m[(0, 1)] = c(25.0 * s3, 59.0) * c(-3.0 / 2048.0, 0.0);
    m[(0, 2)] = phase(5.0 / 12.0) * c(51.0, 29.0 * s3) / c(1024.0, 0.0);
    m[(1, 0)] = c(25.0 * s3, -59.0) * c(-3.0 / 2048.0, 0.0);
    m[(1, 1)] = c(417.0 / 1024.0, 0.0);
    m[(1, 2)] = phase(1.0 / 12.0) * c(25.0 * s3, 21.0) * c(-3.0 / 1024.0, 0.0);
    m[(2, 0)] = phase(11.0 / 12.0) * c(9.0, 20.0 * s3) / c(512.0, 0.0);
    m[(2, 1)] = phase(3.0 / 4.0) * c(24.0, s3) * c(3.0 / 512.0, 0.0);
    m[(2, 2)] = c(75.0 / 256.0, 0.0);
    m
}

/// Exact density matrix at [`second_point`].
///
/// The tabulated (0,2) entry is garbled (it parses to a number of
/// magnitude sqrt(3), incompatible with a unit-trace positive matrix
/// and with Hermiticity against the intact (2,0) entry); it is
/// reconstructed here as the conjugate of (2,0). The reconstruction is
/// confirmed by the chart reproducing every other entry exactly.
pub fn second_state() -> CMat3 {
    let s2 = 2.0_f64.sqrt();
    let s3 = 3.0_f64.sqrt();
    let mut m = CMat3::zeros();
    m[(0, 0)] = c(41.0 / 128.0, 0.0);
    m[(0, 1)] = c(-1.0 / 32.0, 15.0 / 128.0);
    m[(1, 0)] = c(-1.0 / 32.0, -15.0 / 128.0);
    m[(1, 1)] = c(41.0 / 128.0, 0.0);
    m[(1, 2)] = c(-3.0 / 128.0, -7.0 / 128.0) * (phase(5.0 / 12.0) + phase(3.0 / 4.0));
    m[(2, 0)] = c(3.0 / 128.0, 7.0 / 128.0) * (phase(1.0 / 4.0) + phase(7.0 / 12.0));
    m[(2, 1)] = c(1.0 / 64.0, 5.0 / 128.0) * c(s3, -3.0) / c(s2, 0.0);
    m[(2, 2)] = c(23.0 / 64.0, 0.0);
    m[(0, 2)] = m[(2, 0)].conj();
    m
}

/// Multi-indices (0-based, increasing) of the two pinned coefficients,
/// fixed to exactly 1 in every solved four-form.
pub const PINNED_UNIT_INDICES: [[u8; 4]; 2] = [[1, 2, 3, 4], [4, 5, 6, 7]];

/// Tabulated four-form coefficients at the first fixture point, keyed
/// by solver branch sign. Indices are 0-based increasing multi-indices.
pub fn first_point_four_form_table(sign: i8) -> Vec<([u8; 4], f64)> {
    match sign {
        1 => vec![
            ([0, 1, 2, 3], 6975.0 / 23296.0),
            ([0, 1, 2, 4], -14187.0 / 127232.0),
            ([0, 4, 6, 7], -647.0 / 71.0),
            ([0, 5, 6, 7], 58745.0 / 284.0),
        ],
        -1 => vec![
            ([0, 1, 2, 3], 378375.0 / 1654016.0),
            ([0, 1, 2, 4], -14037.0 / 127232.0),
            ([0, 4, 6, 7], 601.0 / 71.0),
            ([0, 5, 6, 7], -59079.0 / 284.0),
        ],
        _ => panic!("branch sign must be +1 or -1"),
    }
}

/// Tabulated four-form coefficients at the second fixture point, keyed
/// by solver branch sign.
pub fn second_point_four_form_table(sign: i8) -> Vec<([u8; 4], f64)> {
    let s3 = 3.0_f64.sqrt();
    let s6 = 6.0_f64.sqrt();
    match sign {
        1 => vec![
            ([0, 1, 2, 3], (448.0 + 128.0 * s3 + 27.0 * s6) / 896.0),
            ([0, 5, 6, 7], (-3.0 + 224.0 * s6) / 6.0),
        ],
        -1 => vec![
            ([0, 1, 2, 3], (448.0 + 128.0 * s3 - 27.0 * s6) / 896.0),
            ([0, 5, 6, 7], (-3.0 - 224.0 * s6) / 6.0),
        ],
        _ => panic!("branch sign must be +1 or -1"),
    }
}

/// Leading coefficient of the positive-branch four-form at the second
/// fixture point: (448 + 128 sqrt(3) + 27 sqrt(6)) / 896.
pub fn base_leading_coefficient() -> f64 {
    (448.0 + 128.0 * 3.0_f64.sqrt() + 27.0 * 6.0_f64.sqrt()) / 896.0
}

/// Trailing tabulated coefficient of the positive-branch four-form at
/// the second fixture point: (-3 + 224 sqrt(6)) / 6.
pub fn base_trailing_coefficient() -> f64 {
    (-3.0 + 224.0 * 6.0_f64.sqrt()) / 6.0
}

/// Rounded tabulated value of [`base_leading_coefficient`].
pub const PRINTED_BASE_LEADING: f64 = 0.821249;

/// Rounded tabulated value of [`base_trailing_coefficient`].
pub const PRINTED_BASE_TRAILING: f64 = 90.9476;

/// A 28-value spectrum quoted as four singlets plus three octets; each
/// octet value occurs with both signs, four times each.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumTable {
    pub singlets: [f64; 4],
    pub octets: [f64; 3],
}

impl SpectrumTable {
    /// The full 28-entry multiset, descending.
    pub fn expand(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.singlets.to_vec();
        for &o in &self.octets {
            for _ in 0..4 {
                all.push(o);
                all.push(-o);
            }
        }
        all.sort_by(|x, y| y.partial_cmp(x).unwrap());
        all
    }
}

/// Tabulated spectrum at the first fixture point (tabulated scale).
pub const FIRST_SPECTRUM: SpectrumTable = SpectrumTable {
    singlets: [6.15149, -6.06045, 4.07107, -4.16211],
    octets: [5.11128, 0.994689, 0.0455182],
};

/// Tabulated spectrum at the second fixture point (tabulated scale).
/// The smallest octet is tabulated unsigned; the +/- split follows the
/// same pattern as every other octet.
pub const SECOND_SPECTRUM: SpectrumTable = SpectrumTable {
    singlets: [2.68934, -2.60397, 1.6078, -1.69317],
    octets: [2.14857, 0.498082, 0.0426838],
};

/// Largest positive and most negative tabulated eigenvalues at the
/// transfer point, keyed by the solver branch sign (at the first
/// fixture point) of the four-form being transported. Both entries use
/// the plain endomorphism (positive application sign).
pub fn transfer_leading_pair(sign: i8) -> [f64; 2] {
    match sign {
        -1 => [9.83657, -9.73817],
        1 => [9.66359, -9.59167],
        _ => panic!("branch sign must be +1 or -1"),
    }
}

/// Coefficients (ascending powers 0..=4) of the quartic satisfied by
/// the four singlet eigenvalues at the first fixture point, in the
/// tabulated eigenvalue scale.
pub const SINGLET_QUARTIC: [i128; 5] = [
    17_848_517_231_861_271_296,
    -718_875 * 72_767_012_864,
    -718_875 * 2_131_611_323_040,
    0,
    718_875 * 39_304_490_625,
];

/// Coefficients (ascending even powers 0, 2, 4, 6) of the sextic
/// satisfied by the six octet eigenvalues at the first fixture point,
/// in the tabulated eigenvalue scale.
pub const OCTET_SEXTIC_EVEN: [i128; 4] = [
    82_734_971_267_961_585_664,
    -18_225 * 2_195_802_859_754_043_904,
    18_225 * 291_144_375 * 7_894_856_752,
    -18_225 * 291_144_375 * 291_144_375,
];

/// Arctangent argument inside the radical form, with the tabulated
/// integers kept at their full printed length.
#[allow(clippy::excessive_precision)]
fn radical_inner() -> f64 {
    19_986_057.0 * (2.578_347_878_135_971_155_593_830_457_010_697_31e35_f64).sqrt()
        / 1.010_948_556_292_702_483_236_467_32e26_f64
}

/// Closed radical form for the square of the largest octet eigenvalue
/// at the first fixture point (tabulated scale), together with the
/// rounded value of its interior cosine.
pub fn largest_octet_squared_radical() -> f64 {
    16.0 * (493_428_547.0 + 2.0 * (217_739_666_231_788_507.0_f64).sqrt() * radical_cosine())
        / 873_433_125.0
}

/// Rounded tabulated value of the cosine inside
/// [`largest_octet_squared_radical`].
pub const PRINTED_RADICAL_COSINE: f64 = 0.999444;

/// The cosine term of [`largest_octet_squared_radical`], exposed for
/// direct comparison with its rounded tabulated value.
pub fn radical_cosine() -> f64 {
    (radical_inner().atan() / 3.0).cos()
}

/// The standard self-dual calibration four-form on flat eight-space:
/// fourteen unit-coefficient terms.
pub fn calibration_four_form() -> PForm {
    let terms: [(i8, [u8; 4]); 14] = [
        (1, [0, 1, 2, 3]),
        (1, [0, 1, 4, 7]),
        (-1, [0, 1, 5, 6]),
        (1, [0, 2, 4, 6]),
        (1, [0, 2, 5, 7]),
        (-1, [0, 3, 4, 5]),
        (1, [0, 3, 6, 7]),
        (1, [1, 2, 4, 5]),
        (-1, [1, 2, 6, 7]),
        (1, [1, 3, 4, 6]),
        (1, [1, 3, 5, 7]),
        (-1, [2, 3, 4, 7]),
        (1, [2, 3, 5, 6]),
        (1, [4, 5, 6, 7]),
    ];
    let mut form = PForm::zero(4);
    for (coeff, idx) in terms {
        form.set_coeff(&idx, coeff as f64);
    }
    form
}

/// Tabulated maxima of the five coefficient sweeps, keyed by the swept
/// coordinate's storage index. The second-coordinate maximum coincides
/// with [`PRINTED_BASE_LEADING`] because that grid passes through the
/// base point.
pub const PRINTED_SWEEP_MAXIMA: [(usize, f64); 5] = [
    (1, 0.821472),
    (3, 0.821249),
    (4, 0.83522),
    (5, 1.04598),
    (6, 1.38035),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn hermitian_unit_trace(m: &CMat3) {
        let dev = (m - m.adjoint())
            .iter()
            .fold(0.0f64, |acc, z| acc.max(z.norm()));
        assert!(dev < 1e-15, "not Hermitian: {dev:.2e}");
        assert!((m.trace().re - 1.0).abs() < 1e-15);
        assert!(m.trace().im.abs() < 1e-15);
    }

    fn sorted_eigenvalues(m: &CMat3) -> [f64; 3] {
        let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(*m)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        [ev[0], ev[1], ev[2]]
    }

    #[test]
    fn fixture_states_are_valid_densities() {
        for (state, expected) in [
            (first_state(), FIRST_EIGENVALUES),
            (second_state(), SECOND_EIGENVALUES),
        ] {
            hermitian_unit_trace(&state);
            let ev = sorted_eigenvalues(&state);
            for k in 0..3 {
                assert!(
                    (ev[k] - expected[k]).abs() < 1e-14,
                    "eigenvalue {k}: {} vs {}",
                    ev[k],
                    expected[k]
                );
            }
        }
    }

    #[test]
    fn spectra_are_traceless_at_table_precision() {
        for table in [FIRST_SPECTRUM, SECOND_SPECTRUM] {
            let sum: f64 = table.expand().iter().sum();
            assert!(sum.abs() < 1e-4, "spectrum sum {sum:.2e}");
            assert_eq!(table.expand().len(), 28);
        }
    }

    #[test]
    fn calibration_form_has_fourteen_unit_terms() {
        let form = calibration_four_form();
        let nonzero: Vec<f64> = form
            .coeffs()
            .iter()
            .copied()
            .filter(|c| *c != 0.0)
            .collect();
        assert_eq!(nonzero.len(), 14);
        assert!(nonzero.iter().all(|c| c.abs() == 1.0));
    }

    #[test]
    fn branch_tables_differ_between_signs() {
        let plus = first_point_four_form_table(1);
        let minus = first_point_four_form_table(-1);
        for (p, m) in plus.iter().zip(minus.iter()) {
            assert_eq!(p.0, m.0);
            assert!((p.1 - m.1).abs() > 1e-3);
        }
    }

    #[test]
    fn radical_matches_square_of_largest_octet() {
        let val = largest_octet_squared_radical();
        let expected = FIRST_SPECTRUM.octets[0] * FIRST_SPECTRUM.octets[0];
        assert!(
            (val - expected).abs() / expected < 1e-5,
            "radical {val} vs octet^2 {expected}"
        );
        assert!((radical_cosine() - PRINTED_RADICAL_COSINE).abs() < 1e-5);
    }
}
