//! The 8x8 Riemannian metric on the state chart, its inverse and
//! determinant, the induced inner product on two-forms, and the
//! polynomial-coefficient fit for the superoperator (L+R)^-1.
//!
//! The primary route is spectral: rotate each coordinate partial of rho
//! into the eigenframe, where left-plus-right multiplication by rho acts
//! entrywise as lambda_a + lambda_b. The polynomial route ([`fit_aij`])
//! re-derives the same operator as a quadratic polynomial in rho per
//! point, which is exactly representable by Cayley-Hamilton; it serves as
//! an independent cross-check, not as the primary path.

use nalgebra::{Cholesky, DMatrix, SMatrix};
use num_complex::Complex64;

use crate::chart::{self, ChartPoint, CMat3};
use crate::error::{Error, Result};
use crate::exterior;

/// Minimum admissible eigenvalue-pair sum lambda_a + lambda_b.
pub const EIGENVALUE_SUM_FLOOR: f64 = 1e-12;

pub type Mat8 = SMatrix<f64, 8, 8>;

/// A validated metric at a point: the tensor, its inverse, and the
/// positive square root of its determinant.
#[derive(Debug, Clone)]
pub struct MetricTensor {
    pub g: Mat8,
    pub g_inv: Mat8,
    pub sqrt_det: f64,
}

impl MetricTensor {
    /// Validates symmetry and positive-definiteness, then derives the
    /// inverse and the positive root of the determinant.
    pub fn from_matrix(g: Mat8) -> Result<Self> {
        let asym = (g - g.transpose()).abs().max();
        if asym > 1e-12 {
            return Err(Error::InvalidMetric(format!(
                "metric asymmetric by {asym:.3e}"
            )));
        }
        let chol = Cholesky::new(g).ok_or_else(|| {
            Error::InvalidMetric("metric is not positive-definite".into())
        })?;
        // det g = det(L)^2, so the product of Cholesky diagonals is the
        // positive root by construction.
        let sqrt_det: f64 = chol.l_dirty().diagonal().iter().product();
        if !(sqrt_det.is_finite() && sqrt_det > 0.0) {
            return Err(Error::InvalidMetric(format!(
                "sqrt(det g) = {sqrt_det:.3e} is not a positive real"
            )));
        }
        // The Cholesky inverse of a symmetric matrix carries rounding-level
        // asymmetry; enforce the exact invariant so downstream minor
        // determinants agree under index transposition.
        let g_inv = chol.inverse();
        let g_inv = (g_inv + g_inv.transpose()) * 0.5;
        Ok(MetricTensor { g, g_inv, sqrt_det })
    }

    /// The flat orthonormal metric.
    pub fn euclidean() -> Self {
        MetricTensor {
            g: Mat8::identity(),
            g_inv: Mat8::identity(),
            sqrt_det: 1.0,
        }
    }
}

/// The metric tensor at a chart point via the spectral route:
/// g_ij = (1/2) sum_{a,b} Re[(drho'_i)_{ab} (drho'_j)_{ba}] / (lambda_a + lambda_b)
/// with drho' the partials rotated into the eigenframe.
pub fn bures_metric(point: &ChartPoint) -> Result<MetricTensor> {
    let (_, frame) = chart::density_from_angles(point)?;
    let partials = chart::rho_partials(point)?;
    let u_adj = frame.unitary.adjoint();
    let rotated: Vec<CMat3> = partials
        .iter()
        .map(|p| u_adj * p * frame.unitary)
        .collect();
    let lam = frame.eigenvalues;
    for a in 0..3 {
        for b in 0..3 {
            if lam[a] + lam[b] < EIGENVALUE_SUM_FLOOR {
                return Err(Error::DegenerateState(format!(
                    "eigenvalue pair sum {:.3e} below {EIGENVALUE_SUM_FLOOR:.1e}",
                    lam[a] + lam[b]
                )));
            }
        }
    }
    let mut g = Mat8::zeros();
    for i in 0..8 {
        for j in i..8 {
            let mut acc = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    acc += (rotated[i][(a, b)] * rotated[j][(b, a)]).re
                        / (lam[a] + lam[b]);
                }
            }
            g[(i, j)] = 0.5 * acc;
            g[(j, i)] = g[(i, j)];
        }
    }
    MetricTensor::from_matrix(g)
}

/// The metric-induced Gram matrix on the 28-dimensional two-form space:
/// G2[(ij),(kl)] = g^ik g^jl - g^il g^jk over lexicographic pairs
/// (symmetric by construction), validated positive-definite.
pub fn gram_on_two_forms(metric: &MetricTensor) -> Result<DMatrix<f64>> {
    let g2 = exterior::gram_matrix(metric, 2)?;
    if Cholesky::new(g2.clone()).is_none() {
        return Err(Error::InvalidGram(
            "two-form Gram is not positive-definite".into(),
        ));
    }
    Ok(g2)
}

/// Solves rho X + X rho = S in the eigenbasis of rho (entrywise division
/// by lambda_a + lambda_b after rotation).
fn halving_solution(frame_u: &CMat3, lam: &[f64; 3], s: &CMat3) -> CMat3 {
    let sp = frame_u.adjoint() * s * frame_u;
    let mut xp = CMat3::zeros();
    for a in 0..3 {
        for b in 0..3 {
            xp[(a, b)] = sp[(a, b)] / Complex64::new(lam[a] + lam[b], 0.0);
        }
    }
    frame_u * xp * frame_u.adjoint()
}

/// Result of [`fit_aij`]: symmetric coefficients and the worst-case fit
/// residual over the Hermitian basis.
#[derive(Debug, Clone)]
pub struct AijFit {
    pub a: SMatrix<f64, 3, 3>,
    pub residual: f64,
}

/// Fits symmetric coefficients a_ij so that
/// sum_{i,j} a_ij rho^{i-1} S rho^{j-1} = X, with X the solution of
/// rho X + X rho = S, across the 9-dimensional space of Hermitian S.
///
/// By Cayley-Hamilton the operator (L+R)^-1 is exactly a quadratic
/// polynomial in left/right multiplication by rho at a nondegenerate
/// state, so the residual is at double-precision scale. The isotropic
/// normalization: at rho = I/3, X = (3/2) S, so the half-weighted
/// operator (1/2) sum a_ij rho^{i-1} S rho^{j-1} halves S to (3/4) S.
pub fn fit_aij(rho: &CMat3) -> Result<AijFit> {
    // eigendecomposition of the Hermitian state
    let herm_dev = (rho - rho.adjoint())
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    if herm_dev > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "state not Hermitian (deviation {herm_dev:.3e})"
        )));
    }
    let se = nalgebra::SymmetricEigen::new(*rho);
    let lam = [
        se.eigenvalues[0],
        se.eigenvalues[1],
        se.eigenvalues[2],
    ];
    let u = se.eigenvectors;
    for a in 0..3 {
        if lam[a] < 1e-10 {
            return Err(Error::DegenerateState(format!(
                "state eigenvalue {:.3e} too small for the polynomial fit",
                lam[a]
            )));
        }
        for b in 0..3 {
            if lam[a] + lam[b] < EIGENVALUE_SUM_FLOOR {
                return Err(Error::DegenerateState(
                    "eigenvalue pair sum vanishes".into(),
                ));
            }
        }
    }

    // Hermitian basis: 3 diagonal units, 3 real-symmetric pairs,
    // 3 imaginary-antisymmetric pairs.
    let mut basis: Vec<CMat3> = Vec::with_capacity(9);
    for k in 0..3 {
        let mut m = CMat3::zeros();
        m[(k, k)] = Complex64::new(1.0, 0.0);
        basis.push(m);
    }
    for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let mut m = CMat3::zeros();
        m[(p, q)] = Complex64::new(1.0, 0.0);
        m[(q, p)] = Complex64::new(1.0, 0.0);
        basis.push(m);
        let mut m = CMat3::zeros();
        m[(p, q)] = Complex64::new(0.0, -1.0);
        m[(q, p)] = Complex64::new(0.0, 1.0);
        basis.push(m);
    }

    // powers of rho
    let id = CMat3::identity();
    let powers = [id, *rho, rho * rho];

    // Unknowns: the 6 independent a_ij (i <= j). Row space: for each basis
    // S, the complex 3x3 equation gives 18 real rows.
    let monomials: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
    let mut design = DMatrix::<f64>::zeros(9 * 18, 6);
    let mut rhs = DMatrix::<f64>::zeros(9 * 18, 1);
    for (k, s) in basis.iter().enumerate() {
        let x = halving_solution(&u, &lam, s);
        for (m, &(i, j)) in monomials.iter().enumerate() {
            let term = if i == j {
                powers[i] * s * powers[j]
            } else {
                powers[i] * s * powers[j] + powers[j] * s * powers[i]
            };
            for r in 0..3 {
                for c in 0..3 {
                    let row = k * 18 + (r * 3 + c) * 2;
                    design[(row, m)] = term[(r, c)].re;
                    design[(row + 1, m)] = term[(r, c)].im;
                }
            }
        }
        for r in 0..3 {
            for c in 0..3 {
                let row = k * 18 + (r * 3 + c) * 2;
                rhs[(row, 0)] = x[(r, c)].re;
                rhs[(row + 1, 0)] = x[(r, c)].im;
            }
        }
    }

    // The design can be rank-deficient at special states (all powers of
    // an isotropic rho act as scalars), but the system stays consistent;
    // the minimal-norm solution is a valid representative. What must be
    // guarded is the residual, not the condition number.
    let svd = design.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if smax <= 0.0 {
        return Err(Error::IllConditioned("fit design vanishes".into()));
    }
    let sol = svd
        .solve(&rhs, smax * 1e-12)
        .map_err(|e| Error::IllConditioned(format!("fit solve failed: {e}")))?;
    let resid = (&design * &sol - &rhs).abs().max();
    if resid > 1e-8 {
        return Err(Error::IllConditioned(format!(
            "fit residual {resid:.3e} too large"
        )));
    }

    let mut a = SMatrix::<f64, 3, 3>::zeros();
    for (m, &(i, j)) in monomials.iter().enumerate() {
        a[(i, j)] = sol[(m, 0)];
        a[(j, i)] = sol[(m, 0)];
    }
    Ok(AijFit { a, residual: resid })
}

/// Applies the fitted polynomial operator: sum a_ij rho^{i-1} S rho^{j-1}.
pub fn apply_aij(a: &SMatrix<f64, 3, 3>, rho: &CMat3, s: &CMat3) -> CMat3 {
    let id = CMat3::identity();
    let powers = [id, *rho, rho * rho];
    let mut out = CMat3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            out += (powers[i] * s * powers[j]).map(|z| z * Complex64::new(a[(i, j)], 0.0));
        }
    }
    out
}

/// Metric via the fitted polynomial route:
/// g_ij = (1/2) Tr[ drho_i * (sum a_ab rho^{a-1} drho_j rho^{b-1}) ].
pub fn metric_via_aij(point: &ChartPoint) -> Result<Mat8> {
    let (rho, _) = chart::density_from_angles(point)?;
    let partials = chart::rho_partials(point)?;
    let fit = fit_aij(&rho)?;
    let mut g = Mat8::zeros();
    let images: Vec<CMat3> = partials
        .iter()
        .map(|p| apply_aij(&fit.a, &rho, p))
        .collect();
    for i in 0..8 {
        for j in i..8 {
            let tr = (partials[i] * images[j]).trace();
            g[(i, j)] = 0.5 * tr.re;
            g[(j, i)] = g[(i, j)];
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sample_point() -> ChartPoint {
        ChartPoint::new(0.3, 0.9, 1.2, 0.4, 0.6, 0.8, 0.7, 0.5)
    }

    #[test]
    fn metric_is_symmetric_positive_definite() {
        let m = bures_metric(&sample_point()).unwrap();
        assert!((m.g - m.g.transpose()).abs().max() < 1e-12);
        assert!((m.g * m.g_inv - Mat8::identity()).abs().max() < 1e-10);
        assert!(m.sqrt_det > 0.0);
        for i in 0..8 {
            assert!(m.g[(i, i)] > 0.0);
        }
    }

    #[test]
    fn metric_ignores_first_and_third_coordinate_shifts() {
        let base = bures_metric(&sample_point()).unwrap();
        for idx in [0usize, 2] {
            let mut p = sample_point();
            p.coords[idx] += 0.3;
            let shifted = bures_metric(&p).unwrap();
            assert!(
                (base.g - shifted.g).abs().max() < 1e-10,
                "coordinate {idx} shift moved the metric"
            );
        }
    }

    #[test]
    fn eigenvalue_block_is_quarter_fisher() {
        let p = sample_point();
        let m = bures_metric(&p).unwrap();
        let d = chart::chart_derivatives(&p).unwrap();
        for (bi, ci) in [(0usize, 6usize), (1, 7)] {
            for (bj, cj) in [(0usize, 6usize), (1, 7)] {
                let _ = (bi, bj);
                let mut fisher = 0.0;
                for a in 0..3 {
                    fisher += d.d_eigenvalues[ci][a] * d.d_eigenvalues[cj][a]
                        / d.eigenvalues[a];
                }
                assert_abs_diff_eq!(m.g[(ci, cj)], 0.25 * fisher, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn euclidean_two_form_gram_is_identity() {
        let g2 = gram_on_two_forms(&MetricTensor::euclidean()).unwrap();
        assert!((g2 - DMatrix::<f64>::identity(28, 28)).abs().max() < 1e-14);
    }

    #[test]
    fn isotropic_state_fit_halves_to_three_quarters() {
        let rho = CMat3::identity().map(|z| z / Complex64::new(3.0, 0.0));
        let fit = fit_aij(&rho).unwrap();
        assert!(fit.residual < 1e-12);
        let mut s = CMat3::zeros();
        s[(0, 1)] = Complex64::new(1.0, 0.5);
        s[(1, 0)] = Complex64::new(1.0, -0.5);
        s[(2, 2)] = Complex64::new(-0.7, 0.0);
        let image = apply_aij(&fit.a, &rho, &s);
        // full operator: X = (3/2) S; half-weighted form: (3/4) S
        let dev = (image - s.map(|z| z * Complex64::new(1.5, 0.0)))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(dev < 1e-12, "isotropic fit deviates by {dev:.2e}");
    }

    #[test]
    fn fitted_route_matches_spectral_route() {
        let p = sample_point();
        let spectral = bures_metric(&p).unwrap();
        let fitted = metric_via_aij(&p).unwrap();
        assert!(
            (spectral.g - fitted).abs().max() < 1e-8,
            "routes disagree by {:.2e}",
            (spectral.g - fitted).abs().max()
        );
    }
}
