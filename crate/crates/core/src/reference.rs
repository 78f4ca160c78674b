//! Slow, independent reference implementations used to cross-check the
//! fast paths, plus a tiny deterministic generator for reproducible
//! randomized checks.
//!
//! Nothing here is meant for production use: the Hodge star is the
//! literal permutation sum over all index tuples, and the half-sum
//! inverse is a dense 9x9 linear solve. Their value is that they share
//! no code or algebraic shortcuts with the main implementations.

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::chart::CMat3;
use crate::error::{Error, Result};
use crate::exterior::{self, PForm, DIM};
use crate::metric::MetricTensor;

/// Parity of an index sequence by explicit bubble counting; `None` if
/// any index repeats.
pub fn bubble_parity(seq: &[u8]) -> Option<f64> {
    let mut v = seq.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Wedge of two basis elements by brute force: concatenate, reject
/// repeats, sort with explicit parity. Returns (sorted index, sign).
pub fn wedge_basis_oracle(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, f64)> {
    let mut concat: Vec<u8> = a.to_vec();
    concat.extend_from_slice(b);
    let sign = bubble_parity(&concat)?;
    concat.sort_unstable();
    Some((concat, sign))
}

/// Antisymmetric extension of a form's coefficients to an arbitrary
/// index tuple.
fn coefficient_at_tuple(form: &PForm, tuple: &[u8]) -> f64 {
    match bubble_parity(tuple) {
        None => 0.0,
        Some(sign) => {
            let mut sorted = tuple.to_vec();
            sorted.sort_unstable();
            sign * form.coeff(&sorted)
        }
    }
}

/// Hodge star as the literal tensor-calculus permutation sum
/// (star alpha)_J = sqrt(g)/p! * sum over tuples i, permutations j of
/// the complement of J, of g^{i1 j1} ... g^{ip jp} eps_{j,J} alpha_i.
pub fn hodge_star_permutation_sum(form: &PForm, metric: &MetricTensor) -> Result<PForm> {
    let p = form.degree();
    if p > 5 {
        return Err(Error::InvalidArgument(format!(
            "permutation-sum oracle supports degrees up to 5, got {p} \
             (the tuple sum grows as 8^p * p!)"
        )));
    }
    let out_degree = DIM - p;
    let mut out = PForm::zero(out_degree);
    let factorial: f64 = (1..=p.max(1)).product::<usize>() as f64;
    for (pos, j_out) in exterior::basis_indices(out_degree).iter().enumerate() {
        let complement: Vec<u8> = (0..DIM as u8).filter(|k| !j_out.contains(k)).collect();
        let mut total = 0.0;
        for perm in complement.iter().copied().permutations(p) {
            let mut full: Vec<u8> = perm.clone();
            full.extend_from_slice(j_out);
            let eps = match bubble_parity(&full) {
                Some(s) => s,
                None => continue,
            };
            // sum over all p-tuples of upper indices
            let mut tuple = vec![0u8; p];
            loop {
                let alpha = coefficient_at_tuple(form, &tuple);
                if alpha != 0.0 {
                    let mut prod = 1.0;
                    for (k, &jk) in perm.iter().enumerate() {
                        prod *= metric.g_inv[(tuple[k] as usize, jk as usize)];
                    }
                    total += eps * prod * alpha;
                }
                // odometer increment
                let mut k = p;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    tuple[k] += 1;
                    if (tuple[k] as usize) < DIM {
                        break;
                    }
                    tuple[k] = 0;
                }
                if tuple.iter().all(|&t| t == 0) {
                    break;
                }
            }
        }
        out.coeffs_mut()[pos] = metric.sqrt_det * total / factorial;
    }
    Ok(out)
}

/// Solves rho X + X rho = S as the dense 9x9 system
/// (I (x) rho + rho^T (x) I) vec(X) = vec(S), column-major.
pub fn sylvester_dense_solve(rho: &CMat3, s: &CMat3) -> Result<CMat3> {
    let to_dyn = |m: &CMat3| {
        DMatrix::<Complex64>::from_fn(3, 3, |r, c| m[(r, c)])
    };
    let id = DMatrix::<Complex64>::identity(3, 3);
    let rho_d = to_dyn(rho);
    let system = id.kronecker(&rho_d) + rho_d.transpose().kronecker(&id);
    let mut rhs = DMatrix::<Complex64>::zeros(9, 1);
    for c in 0..3 {
        for r in 0..3 {
            rhs[(c * 3 + r, 0)] = s[(r, c)];
        }
    }
    let sol = system
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::DegenerateState("dense half-sum system singular".into()))?;
    let mut x = CMat3::zeros();
    for c in 0..3 {
        for r in 0..3 {
            x[(r, c)] = sol[(c * 3 + r, 0)];
        }
    }
    Ok(x)
}

/// Deterministic splitmix64 generator for reproducible test inputs.
#[derive(Debug, Clone)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1].
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
    }

    /// A random p-form with coefficients in [-1, 1].
    pub fn next_form(&mut self, degree: usize) -> PForm {
        let mut form = PForm::zero(degree);
        for c in form.coeffs_mut() {
            *c = self.next_unit();
        }
        form
    }

    /// A random Hermitian 3x3 matrix with entries of unit scale.
    pub fn next_hermitian(&mut self) -> CMat3 {
        let mut m = CMat3::zeros();
        for r in 0..3 {
            m[(r, r)] = Complex64::new(self.next_unit(), 0.0);
            for c in r + 1..3 {
                let z = Complex64::new(self.next_unit(), self.next_unit());
                m[(r, c)] = z;
                m[(c, r)] = z.conj();
            }
        }
        m
    }

    /// A random Hermitian positive-definite matrix with unit trace and
    /// eigenvalues bounded away from zero.
    pub fn next_density(&mut self) -> CMat3 {
        let h = self.next_hermitian();
        let m = h * h.adjoint() + CMat3::identity() * Complex64::new(0.3, 0.0);
        let tr = m.trace().re;
        m.map(|z| z / Complex64::new(tr, 0.0))
    }
}
