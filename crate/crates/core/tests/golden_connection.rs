//! Golden tests for the gauge potential and curvature: structural
//! identities at both fixtures and second-order convergence of the
//! curvature stencil.

use buresforms::chart::CMat3;
use buresforms::connection::{curvature, gauge_potential, richardson_ratio};
use buresforms::goldens;
use num_complex::Complex64;

fn max_norm(m: &CMat3) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

#[test]
fn amplitude_squares_to_the_state() {
    for (point, state) in [
        (goldens::first_point(), goldens::first_state()),
        (goldens::second_point(), goldens::second_state()),
    ] {
        let gp = gauge_potential(&point).unwrap();
        assert!(max_norm(&(gp.amplitude * gp.amplitude - state)) < 1e-10);
    }
}

#[test]
fn potentials_solve_the_defining_equation() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let gp = gauge_potential(&point).unwrap();
        let rho = gp.amplitude * gp.amplitude;
        for mu in 0..8 {
            let a = gp.potentials[mu];
            let s = gp.amplitude * gp.amplitude_partials[mu]
                - gp.amplitude_partials[mu] * gp.amplitude;
            assert!(
                max_norm(&(rho * a + a * rho - s)) < 1e-10,
                "direction {mu}"
            );
        }
    }
}

#[test]
fn potentials_are_anti_hermitian_and_traceless() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let gp = gauge_potential(&point).unwrap();
        for mu in 0..8 {
            let a = gp.potentials[mu];
            assert!(max_norm(&(a + a.adjoint())) < 1e-10, "direction {mu}");
            assert!(a.trace().norm() < 1e-10, "direction {mu}");
        }
    }
}

#[test]
fn eigenvalue_direction_potentials_vanish() {
    for point in [goldens::first_point(), goldens::second_point()] {
        let gp = gauge_potential(&point).unwrap();
        assert!(max_norm(&gp.potentials[6]) < 1e-12);
        assert!(max_norm(&gp.potentials[7]) < 1e-12);
    }
}

#[test]
fn curvature_is_antisymmetric_and_anti_hermitian() {
    let point = goldens::second_point();
    for (mu, nu) in [(1usize, 3usize), (5, 6), (0, 4)] {
        let f = curvature(&point, mu, nu, 1e-3).unwrap();
        let g = curvature(&point, nu, mu, 1e-3).unwrap();
        assert!(max_norm(&(f + g)) < 1e-9, "pair ({mu},{nu})");
        assert!(max_norm(&(f + f.adjoint())) < 1e-9, "pair ({mu},{nu})");
        let tr: Complex64 = f.trace();
        assert!(tr.norm() < 1e-9, "pair ({mu},{nu}) trace {tr}");
    }
}

#[test]
fn curvature_stencil_converges_at_second_order() {
    let point = goldens::second_point();
    for (mu, nu) in [(1usize, 3usize), (5, 6), (0, 4)] {
        let ratio = richardson_ratio(&point, mu, nu, 1e-3).unwrap();
        assert!(
            (3.5..=4.5).contains(&ratio),
            "pair ({mu},{nu}): step-halving ratio {ratio:.3}"
        );
    }
}

#[test]
fn curvature_rejects_bad_arguments() {
    let point = goldens::second_point();
    assert!(curvature(&point, 3, 3, 1e-3).is_err());
    assert!(curvature(&point, 0, 9, 1e-3).is_err());
    assert!(curvature(&point, 0, 1, 0.0).is_err());
}
