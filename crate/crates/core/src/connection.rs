//! The gauge potential carried by purifications of the state family and
//! its curvature.
//!
//! Each state rho has amplitude W = U D^{1/2} U^dag (the Hermitian
//! square root). The potential A_mu in each coordinate direction is the
//! solution of rho A + A rho = W dW - dW W, an anti-Hermitian traceless
//! matrix; the two eigenvalue coordinates carry a vanishing potential.
//! Curvature components are formed with second-order central
//! differences of A plus the commutator term, with a step-halving
//! (Richardson) diagnostic confirming the stencil order.

use num_complex::Complex64;

use crate::chart::{self, ChartPoint, CMat3, EULER_COORDS};
use crate::error::{Error, Result};
use crate::metric::EIGENVALUE_SUM_FLOOR;

/// Solves rho X + X rho = S for Hermitian rho via its eigenbasis.
pub fn sylvester_solve(rho: &CMat3, s: &CMat3) -> Result<CMat3> {
    let herm_dev = (rho - rho.adjoint())
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    if herm_dev > 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "coefficient matrix not Hermitian (deviation {herm_dev:.3e})"
        )));
    }
    let se = nalgebra::SymmetricEigen::new(*rho);
    let u = se.eigenvectors;
    let lam = se.eigenvalues;
    for a in 0..3 {
        for b in 0..3 {
            if lam[a] + lam[b] < EIGENVALUE_SUM_FLOOR {
                return Err(Error::DegenerateState(format!(
                    "eigenvalue pair sum {:.3e} too small for the half-sum inverse",
                    lam[a] + lam[b]
                )));
            }
        }
    }
    let sp = u.adjoint() * s * u;
    let mut xp = CMat3::zeros();
    for a in 0..3 {
        for b in 0..3 {
            xp[(a, b)] = sp[(a, b)] / Complex64::new(lam[a] + lam[b], 0.0);
        }
    }
    Ok(u * xp * u.adjoint())
}

/// The amplitude and the eight potential components at a chart point.
#[derive(Debug, Clone)]
pub struct GaugePotential {
    /// Hermitian amplitude W with W^2 = rho.
    pub amplitude: CMat3,
    /// dW along each coordinate.
    pub amplitude_partials: [CMat3; 8],
    /// Potential A_mu along each coordinate.
    pub potentials: [CMat3; 8],
}

/// Computes W, its coordinate partials, and the potential components.
pub fn gauge_potential(point: &ChartPoint) -> Result<GaugePotential> {
    let d = chart::chart_derivatives(point)?;
    let u = d.unitary;
    let lam = d.eigenvalues;
    let sqrt_lam: Vec<f64> = lam.iter().map(|l| l.sqrt()).collect();
    let mut root = CMat3::zeros();
    for a in 0..3 {
        root[(a, a)] = Complex64::new(sqrt_lam[a], 0.0);
    }
    let w = u * root * u.adjoint();

    let mut amplitude_partials = [CMat3::zeros(); 8];
    let mut potentials = [CMat3::zeros(); 8];
    for mu in 0..8 {
        // dW = dU D^{1/2} U^dag + h.c. + U d(D^{1/2}) U^dag; the first
        // piece vanishes for eigenvalue coordinates, the last for the
        // unitary coordinates.
        let mut t = CMat3::zeros();
        if mu < EULER_COORDS {
            let mm = d.d_unitary[mu] * root * u.adjoint();
            t += mm + mm.adjoint();
        } else {
            let mut droot = CMat3::zeros();
            for a in 0..3 {
                droot[(a, a)] =
                    Complex64::new(d.d_eigenvalues[mu][a] / (2.0 * sqrt_lam[a]), 0.0);
            }
            t += u * droot * u.adjoint();
        }
        amplitude_partials[mu] = t;

        let s = w * t - t * w;
        // solve rho A + A rho = S directly in the eigenframe
        let sp = u.adjoint() * s * u;
        let mut ap = CMat3::zeros();
        for a in 0..3 {
            for b in 0..3 {
                ap[(a, b)] = sp[(a, b)] / Complex64::new(lam[a] + lam[b], 0.0);
            }
        }
        potentials[mu] = u * ap * u.adjoint();
    }
    Ok(GaugePotential {
        amplitude: w,
        amplitude_partials,
        potentials,
    })
}

fn potentials_at(point: &ChartPoint) -> Result<[CMat3; 8]> {
    Ok(gauge_potential(point)?.potentials)
}

/// Curvature component F_{mu nu} = d_mu A_nu - d_nu A_mu + [A_mu, A_nu]
/// with second-order central differences of step `step`.
pub fn curvature(point: &ChartPoint, mu: usize, nu: usize, step: f64) -> Result<CMat3> {
    if mu >= 8 || nu >= 8 {
        return Err(Error::InvalidArgument(format!(
            "coordinate indices must be below 8, got ({mu}, {nu})"
        )));
    }
    if mu == nu {
        return Err(Error::InvalidArgument(format!(
            "curvature component ({mu}, {nu}) is identically zero; \
             pass two distinct coordinate indices"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive and finite, got {step}"
        )));
    }
    let displaced = |coord: usize, delta: f64| -> Result<[CMat3; 8]> {
        let mut p = *point;
        p.coords[coord] += delta;
        potentials_at(&p).map_err(|e| {
            Error::Stencil(format!(
                "potential evaluation failed {delta:+.3e} along coordinate {coord}: {e}"
            ))
        })
    };
    let a_nu_plus = displaced(mu, step)?;
    let a_nu_minus = displaced(mu, -step)?;
    let a_mu_plus = displaced(nu, step)?;
    let a_mu_minus = displaced(nu, -step)?;
    let here = potentials_at(point)?;
    let inv2h = Complex64::new(1.0 / (2.0 * step), 0.0);
    let d_mu_a_nu = (a_nu_plus[nu] - a_nu_minus[nu]).map(|z| z * inv2h);
    let d_nu_a_mu = (a_mu_plus[mu] - a_mu_minus[mu]).map(|z| z * inv2h);
    let commutator = here[mu] * here[nu] - here[nu] * here[mu];
    Ok(d_mu_a_nu - d_nu_a_mu + commutator)
}

/// Step-halving convergence ratio |F(h) - F(h/2)| / |F(h/2) - F(h/4)|;
/// a second-order stencil gives values near 4.
pub fn richardson_ratio(point: &ChartPoint, mu: usize, nu: usize, step: f64) -> Result<f64> {
    let f1 = curvature(point, mu, nu, step)?;
    let f2 = curvature(point, mu, nu, step / 2.0)?;
    let f3 = curvature(point, mu, nu, step / 4.0)?;
    let max_abs = |m: &CMat3| m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let d12 = max_abs(&(f1 - f2));
    let d23 = max_abs(&(f2 - f3));
    if d23 == 0.0 {
        return Err(Error::Stencil(
            "step-halving differences vanished; the component is constant \
             at this resolution"
                .into(),
        ));
    }
    Ok(d12 / d23)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldens;

    fn max_norm(m: &CMat3) -> f64 {
        m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
    }

    #[test]
    fn sylvester_solution_satisfies_the_equation() {
        let rho = goldens::first_state();
        let mut s = CMat3::zeros();
        s[(0, 1)] = Complex64::new(0.3, -0.2);
        s[(1, 0)] = Complex64::new(0.3, 0.2);
        s[(2, 2)] = Complex64::new(-0.5, 0.0);
        let x = sylvester_solve(&rho, &s).unwrap();
        let dev = max_norm(&(rho * x + x * rho - s));
        assert!(dev < 1e-14, "residual {dev:.2e}");
    }

    #[test]
    fn potentials_are_anti_hermitian_traceless_and_flat_in_eigenvalue_coords() {
        for point in [goldens::first_point(), goldens::second_point()] {
            let gp = gauge_potential(&point).unwrap();
            let rho = gp.amplitude * gp.amplitude;
            for mu in 0..8 {
                let a = gp.potentials[mu];
                assert!(max_norm(&(a + a.adjoint())) < 1e-12, "A_{mu} not anti-Hermitian");
                assert!(a.trace().norm() < 1e-12, "A_{mu} has a trace");
                let s = gp.amplitude * gp.amplitude_partials[mu]
                    - gp.amplitude_partials[mu] * gp.amplitude;
                let dev = max_norm(&(rho * a + a * rho - s));
                assert!(dev < 1e-12, "defining equation residual {dev:.2e}");
            }
            assert!(max_norm(&gp.potentials[6]) < 1e-13);
            assert!(max_norm(&gp.potentials[7]) < 1e-13);
        }
    }

    #[test]
    fn amplitude_squares_to_the_state() {
        let point = goldens::second_point();
        let gp = gauge_potential(&point).unwrap();
        let (rho, _) = chart::density_from_angles(&point).unwrap();
        assert!(max_norm(&(gp.amplitude * gp.amplitude - rho)) < 1e-13);
    }

    #[test]
    fn curvature_stencil_converges_at_second_order() {
        let point = goldens::second_point();
        let ratio = richardson_ratio(&point, 1, 3, 1e-3).unwrap();
        assert!(
            (3.5..=4.5).contains(&ratio),
            "step-halving ratio {ratio:.3} outside [3.5, 4.5]"
        );
    }

    #[test]
    fn curvature_is_antisymmetric_and_anti_hermitian() {
        let point = goldens::second_point();
        let f = curvature(&point, 0, 4, 1e-3).unwrap();
        let g = curvature(&point, 4, 0, 1e-3).unwrap();
        assert!(max_norm(&(f + g)) < 1e-9);
        assert!(max_norm(&(f + f.adjoint())) < 1e-9);
    }
}
