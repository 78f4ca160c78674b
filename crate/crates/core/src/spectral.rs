//! The endomorphism of two-forms induced by a fixed four-form, and the
//! analysis of its spectrum.
//!
//! For a four-form Omega the map F -> sign * star(Omega ^ F) sends
//! two-forms to two-forms. It is self-adjoint with respect to the
//! metric inner product on two-forms, so its eigenvalues are real; they
//! are extracted by a Cholesky change of basis that turns the matrix
//! symmetric. Characteristic-polynomial membership is certified with a
//! compensated Horner evaluation and a coefficient-scaled residual.

use nalgebra::{Cholesky, DMatrix};

use crate::error::{Error, Result};
use crate::exterior::{self, PForm};
use crate::metric::{self, MetricTensor};

/// Matrix of F -> sign * star(omega ^ F) on the 28-dimensional
/// two-form space, in the coordinate basis.
pub fn build_endomorphism(
    omega: &PForm,
    metric: &MetricTensor,
    sign: i8,
) -> Result<DMatrix<f64>> {
    if omega.degree() != 4 {
        return Err(Error::InvalidArgument(format!(
            "expected a four-form, got degree {}",
            omega.degree()
        )));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!(
            "application sign must be +1 or -1, got {sign}"
        )));
    }
    let basis2 = exterior::basis_indices(2);
    let n = basis2.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let e_k = PForm::basis(&basis2[k]);
        let image = exterior::hodge_star(&exterior::wedge(omega, &e_k), metric)?;
        for (j, v) in image.coeffs().iter().enumerate() {
            m[(j, k)] = (sign as f64) * v;
        }
    }
    Ok(m)
}

/// Eigenvalues (descending) of an endomorphism self-adjoint with
/// respect to the two-form inner product, via the congruence
/// K = L^T M L^{-T} with G = L L^T the two-form Gram matrix.
pub fn endomorphism_eigenvalues(
    m: &DMatrix<f64>,
    metric: &MetricTensor,
) -> Result<Vec<f64>> {
    let gram = metric::gram_on_two_forms(metric)?;
    let chol = Cholesky::new(gram).ok_or_else(|| {
        Error::InvalidGram("two-form Gram lost positive-definiteness".into())
    })?;
    let l = chol.l();
    let lt = l.transpose();
    // K = L^T M L^{-T}: solve K L^T = L^T M for K via the transposed
    // triangular system.
    let rhs = &lt * m;
    let k_t = l
        .clone()
        .lu()
        .solve(&rhs.transpose())
        .ok_or_else(|| Error::InvalidGram("Cholesky factor not invertible".into()))?;
    let k = k_t.transpose();
    let scale = k.abs().max().max(1.0);
    let asym = (&k - k.transpose()).abs().max();
    if asym > 1e-8 * scale {
        return Err(Error::PatternMismatch(format!(
            "endomorphism not self-adjoint: relative asymmetry {:.3e}",
            asym / scale
        )));
    }
    let sym = (&k + k.transpose()) * 0.5;
    let mut eigs: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(eigs)
}

/// Groups a descending eigenvalue list into clusters whose neighbors
/// lie within `tol`; returns (cluster mean, multiplicity) pairs.
pub fn cluster_multiplicities(eigs: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut clusters: Vec<(f64, usize)> = Vec::new();
    let mut start = 0;
    while start < eigs.len() {
        let mut end = start + 1;
        while end < eigs.len() && (eigs[end - 1] - eigs[end]).abs() <= tol {
            end += 1;
        }
        let mean = eigs[start..end].iter().sum::<f64>() / (end - start) as f64;
        clusters.push((mean, end - start));
        start = end;
    }
    clusters
}

/// A 28-eigenvalue spectrum resolved into four singlets and three
/// octets (each octet a +/- pair of quartets).
#[derive(Debug, Clone)]
pub struct SpectrumPattern {
    /// The four isolated eigenvalues, descending.
    pub singlets: [f64; 4],
    /// The three positive octet magnitudes, descending.
    pub octets: [f64; 3],
}

/// Resolves a descending 28-value spectrum into the singlet/octet
/// pattern, or reports how it deviates.
pub fn singlet_octet_pattern(eigs: &[f64], tol: f64) -> Result<SpectrumPattern> {
    if eigs.len() != 28 {
        return Err(Error::PatternMismatch(format!(
            "expected 28 eigenvalues, got {}",
            eigs.len()
        )));
    }
    let clusters = cluster_multiplicities(eigs, tol);
    let sizes: Vec<usize> = clusters.iter().map(|c| c.1).collect();
    let mut sorted_sizes = sizes.clone();
    sorted_sizes.sort_unstable();
    if sorted_sizes != [1, 1, 1, 1, 4, 4, 4, 4, 4, 4] {
        return Err(Error::PatternMismatch(format!(
            "cluster sizes {sizes:?}, expected four singlets and six quartets"
        )));
    }
    let mut singlets: Vec<f64> = clusters
        .iter()
        .filter(|c| c.1 == 1)
        .map(|c| c.0)
        .collect();
    singlets.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut quartets: Vec<f64> = clusters
        .iter()
        .filter(|c| c.1 == 4)
        .map(|c| c.0)
        .collect();
    quartets.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // quartets must pair off as +/- values
    let mut octets = [0.0f64; 3];
    for k in 0..3 {
        let plus = quartets[k];
        let minus = quartets[5 - k];
        if (plus + minus).abs() > tol * 10.0 {
            return Err(Error::PatternMismatch(format!(
                "quartet values {plus} and {minus} are not an opposite-sign pair"
            )));
        }
        octets[k] = 0.5 * (plus - minus);
    }
    Ok(SpectrumPattern {
        singlets: [singlets[0], singlets[1], singlets[2], singlets[3]],
        octets,
    })
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

/// Evaluates a polynomial (ascending coefficients) with a compensated
/// Horner scheme, accurate as if computed in doubled precision.
pub fn compensated_horner(coeffs_ascending: &[f64], x: f64) -> f64 {
    let mut s = 0.0f64;
    let mut c = 0.0f64;
    for &a in coeffs_ascending.iter().rev() {
        let (p, pe) = two_prod(s, x);
        let (q, qe) = two_sum(p, a);
        s = q;
        c = c * x + (pe + qe);
    }
    s + c
}

/// |p(lambda)| scaled by max|coeff| * max(1, |lambda|)^degree: a
/// dimensionless certificate that lambda is a root.
pub fn scaled_polynomial_residual(coeffs_ascending: &[f64], lambda: f64) -> f64 {
    let value = compensated_horner(coeffs_ascending, lambda);
    let max_coeff = coeffs_ascending
        .iter()
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let degree = coeffs_ascending.len().saturating_sub(1) as i32;
    value.abs() / (max_coeff * lambda.abs().max(1.0).powi(degree))
}
