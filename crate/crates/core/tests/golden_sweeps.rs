//! Golden tests for the coefficient sweeps: every tabulated closed-form
//! curve is reproduced on the full grid, the known defects of the
//! original tabulation are pinned down quantitatively, and the tabulated
//! curve maxima are recovered.

use buresforms::goldens;
use buresforms::sweeps::{
    coefficient_at, coefficient_sweep, leading_beta_as_printed, refined_maximum,
    TrackedCoefficient,
};

#[test]
fn nine_tabulated_curves_hold_on_the_full_grid() {
    let cases = [
        (TrackedCoefficient::Leading, 1usize),
        (TrackedCoefficient::Leading, 4),
        (TrackedCoefficient::Leading, 5),
        (TrackedCoefficient::Leading, 6),
        (TrackedCoefficient::Trailing, 1),
        (TrackedCoefficient::Trailing, 3),
        (TrackedCoefficient::Trailing, 4),
        (TrackedCoefficient::Trailing, 5),
        (TrackedCoefficient::Trailing, 6),
    ];
    for (target, coord) in cases {
        if target == TrackedCoefficient::Leading && coord == 4 {
            continue; // known tabulation defect, pinned separately below
        }
        let sweep = coefficient_sweep(coord, target).unwrap();
        assert_eq!(sweep.failures, 0, "{} along {coord}", target.label());
        let dev = sweep.max_deviation().unwrap();
        assert!(
            dev < 1e-8,
            "{} along coordinate {coord}: max deviation {dev:.3e}",
            target.label()
        );
    }
}

#[test]
fn tabulated_leading_curve_along_the_fifth_coordinate_is_inconsistent() {
    // the tabulated closed form for this curve disagrees with the
    // recomputed coefficient by far more than solver error, while the
    // recomputed curve's maximum does match the separately tabulated
    // maximum; the defect is preserved, not patched
    let sweep = coefficient_sweep(4, TrackedCoefficient::Leading).unwrap();
    assert_eq!(sweep.failures, 0);
    let dev = sweep.max_deviation().unwrap();
    assert!(dev > 1e-3, "defect vanished: max deviation {dev:.3e}");
    assert!(dev < 1e-1, "defect grew: max deviation {dev:.3e}");
}

#[test]
fn corrected_denominator_beats_the_printed_one() {
    let sweep = coefficient_sweep(3, TrackedCoefficient::Leading).unwrap();
    let corrected = sweep.max_deviation().unwrap();
    assert!(corrected < 1e-8, "corrected form deviates {corrected:.3e}");
    let printed = sweep
        .rows
        .iter()
        .map(|r| (r.computed - leading_beta_as_printed(r.angle)).abs())
        .fold(0.0f64, f64::max);
    assert!(printed > 1e-3, "printed form deviates only {printed:.3e}");
}

#[test]
fn base_coefficients_match_their_tabulated_roundings() {
    let leading = coefficient_at(&goldens::second_point(), TrackedCoefficient::Leading).unwrap();
    assert!((leading - goldens::PRINTED_BASE_LEADING).abs() < 1e-6);
    let trailing = coefficient_at(&goldens::second_point(), TrackedCoefficient::Trailing).unwrap();
    assert!((trailing - goldens::PRINTED_BASE_TRAILING).abs() < 1e-4);
    // the closed-form values agree with the solver to machine precision
    assert!((leading - goldens::base_leading_coefficient()).abs() < 1e-10);
    assert!((trailing - goldens::base_trailing_coefficient()).abs() < 1e-10);
}

#[test]
fn fourth_coordinate_sweep_peaks_at_the_base_value() {
    let sweep = coefficient_sweep(3, TrackedCoefficient::Leading).unwrap();
    let best = sweep.max_row().unwrap();
    assert!((best.computed - goldens::PRINTED_BASE_LEADING).abs() < 1e-6);
}

#[test]
fn tabulated_sweep_maxima_are_recovered() {
    for (coord, printed) in goldens::PRINTED_SWEEP_MAXIMA {
        if coord == 3 {
            continue; // the grid passes through the base point, tested above
        }
        let (angle, value) =
            refined_maximum(&goldens::second_point(), coord, TrackedCoefficient::Leading).unwrap();
        assert!(
            (value - printed).abs() < 1e-3,
            "coordinate {coord}: maximum {value:.6} at {angle:.4} vs tabulated {printed}"
        );
    }
}

#[test]
fn eigenvalue_angle_sweep_records_its_boundary_pole() {
    // no closed form is tabulated for the last coordinate. The first
    // grid row sits nearest the theta2 -> 0 boundary, where the
    // smallest state eigenvalue (about 5e-5) squeezes the metric so
    // hard that the constraint system loses numerical rank; the solver
    // refuses it and the sweep records a NaN row, leaving the grid
    // well above the 90% success threshold.
    let sweep = coefficient_sweep(7, TrackedCoefficient::Leading).unwrap();
    assert_eq!(sweep.failures, 1);
    assert!(sweep.max_deviation().is_none());
    assert!(sweep.success_fraction() > 0.9);
    for (k, row) in sweep.rows.iter().enumerate() {
        if k == 0 {
            assert!(row.computed.is_nan(), "boundary row should be the pole");
        } else {
            assert!(row.computed.is_finite(), "row {k} unexpectedly failed");
        }
    }
}
