//! Golden tests for the constrained duality solver: tabulated four-form
//! coefficients at both fixtures, pin conventions, residuals, and the
//! branch split.

use buresforms::duality::{branch_multiplicities, is_pm_equal, solve_dual_form};
use buresforms::goldens;
use buresforms::metric::bures_metric;

#[test]
fn first_fixture_tabulated_coefficients_both_branches() {
    let m = bures_metric(&goldens::first_point()).unwrap();
    for sign in [1i8, -1] {
        let sol = solve_dual_form(&m, sign).unwrap();
        assert!(sol.residual < 1e-9, "branch {sign:+} residual {:.3e}", sol.residual);
        for (idx, expected) in goldens::first_point_four_form_table(sign) {
            let got = sol.omega.coeff(&idx);
            assert!(
                (got - expected).abs() < 1e-9,
                "branch {sign:+} coefficient {idx:?}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn second_fixture_tabulated_coefficients_both_branches() {
    let m = bures_metric(&goldens::second_point()).unwrap();
    for sign in [1i8, -1] {
        let sol = solve_dual_form(&m, sign).unwrap();
        assert!(sol.residual < 1e-9);
        for (idx, expected) in goldens::second_point_four_form_table(sign) {
            let got = sol.omega.coeff(&idx);
            assert!(
                (got - expected).abs() < 1e-9,
                "branch {sign:+} coefficient {idx:?}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn pinned_coefficients_are_exactly_one() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let m = bures_metric(&point).unwrap();
        for sign in [1i8, -1] {
            let sol = solve_dual_form(&m, sign).unwrap();
            for idx in goldens::PINNED_UNIT_INDICES {
                assert_eq!(sol.omega.coeff(&idx), 1.0);
            }
        }
    }
}

#[test]
fn branches_are_distinct_up_to_sign() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let m = bures_metric(&point).unwrap();
        let plus = solve_dual_form(&m, 1).unwrap();
        let minus = solve_dual_form(&m, -1).unwrap();
        assert!(!is_pm_equal(&plus.omega, &minus.omega, 1e-6));
    }
}

#[test]
fn even_eigenspaces_split_as_35_plus_35() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let m = bures_metric(&point).unwrap();
        assert_eq!(branch_multiplicities(&m).unwrap(), (35, 35));
    }
}

#[test]
fn solver_rejects_invalid_sign() {
    let m = bures_metric(&goldens::first_point()).unwrap();
    assert!(solve_dual_form(&m, 0).is_err());
    assert!(solve_dual_form(&m, 2).is_err());
}
