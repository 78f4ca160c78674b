//! Solving the (anti-)self-duality constraint for four-forms.
//!
//! On the eight-dimensional chart the Hodge star maps four-forms to
//! four-forms and squares to the identity, splitting the 70-dimensional
//! space into +1 and -1 eigenspaces of dimension 35 each. The solver
//! fixes the 35 free coefficients of a branch by pinning every basis
//! coefficient whose multi-index omits the first coordinate to exactly
//! one, then solves the resulting square system for the remaining 35.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::exterior::{self, PForm};
use crate::metric::MetricTensor;

/// Relative singular-value threshold for the rank of the duality
/// constraint matrix.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// One solved branch of the duality constraint.
#[derive(Debug, Clone)]
pub struct FourFormSolution {
    /// The solved four-form, satisfying star(omega) = sign * omega.
    pub omega: PForm,
    /// Branch sign: +1 self-dual, -1 anti-self-dual.
    pub sign: i8,
    /// Basis positions whose coefficients were pinned to one.
    pub pinned: Vec<usize>,
    /// max |(star - sign I) omega| over all 70 basis coefficients.
    pub residual: f64,
}

/// Positions of the four-form basis split by whether the multi-index
/// contains the first coordinate: (containing, omitting).
fn partition_positions() -> (Vec<usize>, Vec<usize>) {
    let mut with0 = Vec::with_capacity(35);
    let mut without0 = Vec::with_capacity(35);
    for (pos, idx) in exterior::basis_indices(4).iter().enumerate() {
        if idx[0] == 0 {
            with0.push(pos);
        } else {
            without0.push(pos);
        }
    }
    (with0, without0)
}

/// Solves star(omega) = sign * omega under the pinning convention.
pub fn solve_dual_form(metric: &MetricTensor, sign: i8) -> Result<FourFormSolution> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!(
            "branch sign must be +1 or -1, got {sign}"
        )));
    }
    let star = exterior::star_matrix(metric, 4)?;
    let n = star.nrows();
    let m = &star - DMatrix::<f64>::identity(n, n) * (sign as f64);

    // The constraint matrix must annihilate exactly a 35-dimensional
    // space; anything else means the branch split degenerated.
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    let rank = sv.iter().filter(|s| **s > RANK_THRESHOLD * smax).count();
    if rank != n / 2 {
        return Err(Error::DegenerateDuality(format!(
            "constraint rank {rank}, expected {}",
            n / 2
        )));
    }

    let (with0, without0) = partition_positions();
    let half = with0.len();

    // Square subsystem on the rows indexed by the unknown positions:
    // A u = -B 1, with A the unknown columns and B the pinned columns.
    let mut a = DMatrix::<f64>::zeros(half, half);
    let mut rhs = DVector::<f64>::zeros(half);
    for (r, &row) in with0.iter().enumerate() {
        for (c, &col) in with0.iter().enumerate() {
            a[(r, c)] = m[(row, col)];
        }
        let mut s = 0.0;
        for &col in &without0 {
            s -= m[(row, col)];
        }
        rhs[r] = s;
    }
    let lu = a.clone().lu();
    let mut u = lu.solve(&rhs).ok_or_else(|| {
        Error::PinConventionFailure(
            "pinned square subsystem is singular; the pinning convention \
             does not parameterize this branch here"
                .into(),
        )
    })?;
    // One pass of iterative refinement on the square subsystem.
    let correction = lu.solve(&(&rhs - &a * &u));
    if let Some(du) = correction {
        u += du;
    }

    let mut omega = PForm::zero(4);
    for (k, &pos) in with0.iter().enumerate() {
        omega.coeffs_mut()[pos] = u[k];
    }
    for &pos in &without0 {
        omega.coeffs_mut()[pos] = 1.0;
    }

    let full = &m * DVector::from_column_slice(omega.coeffs());
    let residual = full.abs().max();

    Ok(FourFormSolution {
        omega,
        sign,
        pinned: without0,
        residual,
    })
}

/// Whether two forms agree up to an overall sign, coefficientwise
/// within `tol`.
pub fn is_pm_equal(a: &PForm, b: &PForm, tol: f64) -> bool {
    if a.degree() != b.degree() {
        return false;
    }
    let mut diff = 0.0f64;
    let mut sum = 0.0f64;
    for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
        diff = diff.max((x - y).abs());
        sum = sum.max((x + y).abs());
    }
    diff <= tol || sum <= tol
}

/// Eigenspace dimensions (+1 branch, -1 branch) of the Hodge star on
/// four-forms, via the rank of star -/+ I.
pub fn branch_multiplicities(metric: &MetricTensor) -> Result<(usize, usize)> {
    let star = exterior::star_matrix(metric, 4)?;
    let n = star.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut dims = [0usize; 2];
    for (k, sgn) in [1.0f64, -1.0].iter().enumerate() {
        let m = &star - &id * *sgn;
        let sv = m.svd(false, false).singular_values;
        let smax = sv.max();
        let rank = sv.iter().filter(|s| **s > RANK_THRESHOLD * smax).count();
        dims[k] = n - rank;
    }
    Ok((dims[0], dims[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldens;
    use crate::metric::bures_metric;

    #[test]
    fn partition_splits_the_basis_in_half() {
        let (with0, without0) = partition_positions();
        assert_eq!(with0.len(), 35);
        assert_eq!(without0.len(), 35);
        // lexicographic ordering puts every index containing the first
        // coordinate ahead of every index omitting it
        assert_eq!(with0, (0..35).collect::<Vec<_>>());
        assert_eq!(without0, (35..70).collect::<Vec<_>>());
    }

    #[test]
    fn solved_branches_satisfy_duality_and_pins() {
        let metric = bures_metric(&goldens::first_point()).unwrap();
        for sign in [1i8, -1] {
            let sol = solve_dual_form(&metric, sign).unwrap();
            assert!(sol.residual < 1e-9, "residual {:.2e}", sol.residual);
            for &pos in &sol.pinned {
                assert_eq!(sol.omega.coeffs()[pos], 1.0);
            }
            let starred = exterior::hodge_star(&sol.omega, &metric).unwrap();
            let mut dev = 0.0f64;
            for (s, o) in starred.coeffs().iter().zip(sol.omega.coeffs()) {
                dev = dev.max((s - (sign as f64) * o).abs());
            }
            assert!(dev < 1e-9, "duality deviation {dev:.2e}");
        }
    }

    #[test]
    fn branches_are_not_sign_related() {
        for point in [goldens::first_point(), goldens::second_point()] {
            let metric = bures_metric(&point).unwrap();
            let plus = solve_dual_form(&metric, 1).unwrap();
            let minus = solve_dual_form(&metric, -1).unwrap();
            assert!(!is_pm_equal(&plus.omega, &minus.omega, 1e-6));
        }
    }

    #[test]
    fn star_eigenspaces_split_evenly() {
        let metric = bures_metric(&goldens::second_point()).unwrap();
        assert_eq!(branch_multiplicities(&metric).unwrap(), (35, 35));
    }

    #[test]
    fn rejects_invalid_sign() {
        let metric = MetricTensor::euclidean();
        assert!(matches!(
            solve_dual_form(&metric, 0),
            Err(Error::InvalidArgument(_))
        ));
    }
}
