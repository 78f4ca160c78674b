//! Exterior algebra over an 8-dimensional cotangent space.
//!
//! Forms are stored densely over the lexicographic basis of increasing
//! multi-indices; at the ambient dimension 8 the largest coefficient vector
//! has C(8,4) = 70 entries, so sparsity machinery would cost more than it
//! saves. The Hodge star contracts over complementary index pairs rather
//! than summing 8! permutations; the permutation-sum form survives only as
//! a test oracle.
//!
//! Orientation is fixed by declaring the parity of the identity arrangement
//! of the eight coordinates positive, with the coordinate order of
//! [`crate::chart::COORD_LABELS`].

use std::collections::HashMap;
use std::sync::LazyLock;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::metric::MetricTensor;

/// Ambient (co)tangent dimension.
pub const DIM: usize = 8;

/// Binomial coefficient with the usual conventions (0 for k > n).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

struct BasisTable {
    /// Increasing multi-indices in lexicographic order.
    indices: Vec<Vec<u8>>,
    /// Position of each multi-index in `indices`.
    rank: HashMap<Vec<u8>, usize>,
}

fn increasing_subsets(n: u8, p: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(binomial(n as usize, p));
    let mut current = Vec::with_capacity(p);
    fn recur(start: u8, n: u8, p: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if current.len() == p {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            recur(i + 1, n, p, current, out);
            current.pop();
        }
    }
    recur(0, n, p, &mut current, &mut out);
    out
}

static BASES: LazyLock<Vec<BasisTable>> = LazyLock::new(|| {
    (0..=DIM)
        .map(|p| {
            let indices = increasing_subsets(DIM as u8, p);
            let rank = indices
                .iter()
                .enumerate()
                .map(|(i, ix)| (ix.clone(), i))
                .collect();
            BasisTable { indices, rank }
        })
        .collect()
});

/// The lexicographically ordered increasing multi-indices of degree `p`.
pub fn basis_indices(p: usize) -> &'static [Vec<u8>] {
    &BASES[p].indices
}

/// Position of a sorted multi-index within the degree-`p` basis.
pub fn basis_position(indices: &[u8]) -> usize {
    BASES[indices.len()].rank[indices]
}

/// Parity sign of the concatenation of two disjoint sorted index lists,
/// i.e. (-1)^inversions when sorting `(a, b)` into increasing order.
pub fn concat_parity(a: &[u8], b: &[u8]) -> f64 {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A real-coefficient alternating form of fixed degree over the
/// lexicographic basis. Degrees above [`DIM`] carry an empty coefficient
/// vector (the zero form), which keeps wedge products total.
#[derive(Debug, Clone, PartialEq)]
pub struct PForm {
    degree: usize,
    coeffs: Vec<f64>,
}

impl PForm {
    /// The zero form of the given degree.
    pub fn zero(degree: usize) -> Self {
        let len = if degree <= DIM {
            binomial(DIM, degree)
        } else {
            0
        };
        PForm {
            degree,
            coeffs: vec![0.0; len],
        }
    }

    /// A form from raw lexicographic coefficients.
    pub fn from_coeffs(degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let expected = if degree <= DIM {
            binomial(DIM, degree)
        } else {
            0
        };
        if coeffs.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "degree {degree} expects {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(PForm { degree, coeffs })
    }

    /// The basis form with a single unit coefficient on `indices`.
    pub fn basis(indices: &[u8]) -> Self {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let mut form = PForm::zero(sorted.len());
        form.coeffs[basis_position(&sorted)] = 1.0;
        form
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Coefficient on a (sorted) multi-index.
    pub fn coeff(&self, indices: &[u8]) -> f64 {
        self.coeffs[basis_position(indices)]
    }

    pub fn set_coeff(&mut self, indices: &[u8], value: f64) {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        self.coeffs[basis_position(&sorted)] = value;
    }

    pub fn scale(&self, factor: f64) -> Self {
        PForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &PForm) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidArgument(format!(
                "cannot add degree {} to degree {}",
                self.degree, other.degree
            )));
        }
        Ok(PForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Wedge product in the coefficient-merge normalization: on basis forms,
/// e_I ^ e_J = sign(I,J) e_{sort(I u J)} with no combinatorial prefactor.
pub fn wedge(a: &PForm, b: &PForm) -> PForm {
    let degree = a.degree + b.degree;
    let mut out = PForm::zero(degree);
    if degree > DIM {
        return out;
    }
    let a_basis = basis_indices(a.degree);
    let b_basis = basis_indices(b.degree);
    let mut merged = Vec::with_capacity(degree);
    for (ia, idx_a) in a_basis.iter().enumerate() {
        let ca = a.coeffs[ia];
        if ca == 0.0 {
            continue;
        }
        'next_b: for (ib, idx_b) in b_basis.iter().enumerate() {
            let cb = b.coeffs[ib];
            if cb == 0.0 {
                continue;
            }
            for x in idx_a.iter() {
                if idx_b.contains(x) {
                    continue 'next_b;
                }
            }
            let sign = concat_parity(idx_a, idx_b);
            merged.clear();
            merged.extend_from_slice(idx_a);
            merged.extend_from_slice(idx_b);
            merged.sort_unstable();
            out.coeffs[basis_position(&merged)] += sign * ca * cb;
        }
    }
    out
}

fn minor_det(g_inv: &nalgebra::SMatrix<f64, 8, 8>, rows: &[u8], cols: &[u8]) -> f64 {
    let p = rows.len();
    debug_assert_eq!(p, cols.len());
    match p {
        0 => 1.0,
        1 => g_inv[(rows[0] as usize, cols[0] as usize)],
        2 => {
            let m = |i: usize, j: usize| g_inv[(rows[i] as usize, cols[j] as usize)];
            m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
        }
        3 => {
            let m = |i: usize, j: usize| g_inv[(rows[i] as usize, cols[j] as usize)];
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        }
        _ => {
            let dm = DMatrix::from_fn(p, p, |i, j| {
                g_inv[(rows[i] as usize, cols[j] as usize)]
            });
            dm.determinant()
        }
    }
}

/// Metric Hodge star on a degree-`p` form, producing degree `8-p`.
///
/// For an output multi-index J with complement C (both increasing), the
/// coefficient is sqrt(det g) * sign(C,J) * sum_I det(g_inv[I,C]) alpha_I,
/// which is the complementary-pair contraction of the textbook definition
/// (the permutation-sum test oracle) with the positive root of det g.
pub fn hodge_star(form: &PForm, metric: &MetricTensor) -> Result<PForm> {
    let p = form.degree;
    if p > DIM {
        return Err(Error::InvalidArgument(format!(
            "cannot star a degree-{p} form in dimension {DIM}"
        )));
    }
    let q = DIM - p;
    let mut out = PForm::zero(q);
    let out_basis = basis_indices(q);
    let in_basis = basis_indices(p);
    for (jpos, j_idx) in out_basis.iter().enumerate() {
        // complement of the output index set, increasing
        let mut complement = Vec::with_capacity(p);
        let mut it = j_idx.iter().peekable();
        for k in 0..DIM as u8 {
            if it.peek() == Some(&&k) {
                it.next();
            } else {
                complement.push(k);
            }
        }
        let sign = concat_parity(&complement, j_idx);
        let mut acc = 0.0;
        for (ipos, i_idx) in in_basis.iter().enumerate() {
            let c = form.coeffs[ipos];
            if c != 0.0 {
                acc += minor_det(&metric.g_inv, i_idx, &complement) * c;
            }
        }
        out.coeffs[jpos] = metric.sqrt_det * sign * acc;
    }
    Ok(out)
}

/// Matrix of [`hodge_star`] on the degree-`p` basis: column k is the star of
/// the k-th lexicographic basis form, expressed over the degree-(8-p) basis.
pub fn star_matrix(metric: &MetricTensor, p: usize) -> Result<DMatrix<f64>> {
    if p > DIM {
        return Err(Error::InvalidArgument(format!(
            "cannot star degree {p} in dimension {DIM}"
        )));
    }
    let q = DIM - p;
    let rows = binomial(DIM, q);
    let cols = binomial(DIM, p);
    let out_basis = basis_indices(q);
    let in_basis = basis_indices(p);
    let mut m = DMatrix::zeros(rows, cols);
    for (jpos, j_idx) in out_basis.iter().enumerate() {
        let mut complement = Vec::with_capacity(p);
        let mut it = j_idx.iter().peekable();
        for k in 0..DIM as u8 {
            if it.peek() == Some(&&k) {
                it.next();
            } else {
                complement.push(k);
            }
        }
        let sign = concat_parity(&complement, j_idx);
        for (ipos, i_idx) in in_basis.iter().enumerate() {
            m[(jpos, ipos)] =
                metric.sqrt_det * sign * minor_det(&metric.g_inv, i_idx, &complement);
        }
    }
    Ok(m)
}

/// Gram matrix of the metric-induced inner product on degree-`p` forms:
/// G_p[J,K] = det(g_inv[J,K]) over lexicographic multi-indices.
pub fn gram_matrix(metric: &MetricTensor, p: usize) -> Result<DMatrix<f64>> {
    if p > DIM {
        return Err(Error::InvalidArgument(format!(
            "no degree-{p} forms in dimension {DIM}"
        )));
    }
    let basis = basis_indices(p);
    let n = basis.len();
    let mut g = DMatrix::zeros(n, n);
    // Transposed index pairs give the same minor mathematically but not in
    // float evaluation order, so fill one triangle and mirror it.
    for (i, idx_i) in basis.iter().enumerate() {
        for (j, idx_j) in basis.iter().enumerate().skip(i) {
            g[(i, j)] = minor_det(&metric.g_inv, idx_i, idx_j);
            g[(j, i)] = g[(i, j)];
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::MetricTensor;
    use approx::assert_abs_diff_eq;

    #[test]
    fn basis_sizes_follow_binomials() {
        for p in 0..=DIM {
            assert_eq!(basis_indices(p).len(), binomial(DIM, p));
        }
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(8, 2), 28);
    }

    #[test]
    fn basis_position_roundtrips() {
        for p in 0..=DIM {
            for (k, idx) in basis_indices(p).iter().enumerate() {
                assert_eq!(basis_position(idx), k);
            }
        }
    }

    #[test]
    fn wedge_of_basis_forms_signs() {
        let a = PForm::basis(&[0, 1]);
        let b = PForm::basis(&[2, 3]);
        let w = wedge(&a, &b);
        assert_abs_diff_eq!(w.coeff(&[0, 1, 2, 3]), 1.0);
        // swapping two-forms leaves the sign unchanged (even-degree commute)
        let w2 = wedge(&b, &a);
        assert_abs_diff_eq!(w2.coeff(&[0, 1, 2, 3]), 1.0);
        // an odd pair anticommutes
        let x = PForm::basis(&[1]);
        let y = PForm::basis(&[0]);
        assert_abs_diff_eq!(wedge(&x, &y).coeff(&[0, 1]), -1.0);
    }

    #[test]
    fn wedge_with_shared_index_vanishes() {
        let a = PForm::basis(&[0, 1]);
        let b = PForm::basis(&[1, 2]);
        assert_eq!(wedge(&a, &b).max_abs(), 0.0);
    }

    #[test]
    fn wedge_past_top_degree_is_zero() {
        let a = PForm::basis(&[0, 1, 2, 3, 4]);
        let b = PForm::basis(&[5, 6, 7]);
        let top = wedge(&a, &b);
        assert_eq!(top.degree(), 8);
        assert_abs_diff_eq!(top.coeff(&[0, 1, 2, 3, 4, 5, 6, 7]), 1.0);
        let past = wedge(&top, &PForm::basis(&[0]));
        assert_eq!(past.degree(), 9);
        assert_eq!(past.coeffs().len(), 0);
    }

    #[test]
    fn euclidean_star_sends_1234_to_5678() {
        let metric = MetricTensor::euclidean();
        let form = PForm::basis(&[0, 1, 2, 3]);
        let starred = hodge_star(&form, &metric).unwrap();
        assert_abs_diff_eq!(starred.coeff(&[4, 5, 6, 7]), 1.0);
        assert_abs_diff_eq!(
            starred.coeffs().iter().map(|c| c * c).sum::<f64>(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn euclidean_star_matrix_is_signed_permutation() {
        let metric = MetricTensor::euclidean();
        let m = star_matrix(&metric, 4).unwrap();
        for col in 0..70 {
            let nonzero: Vec<f64> = m
                .column(col)
                .iter()
                .copied()
                .filter(|v| v.abs() > 1e-14)
                .collect();
            assert_eq!(nonzero.len(), 1);
            assert_abs_diff_eq!(nonzero[0].abs(), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn euclidean_gram_is_identity() {
        let metric = MetricTensor::euclidean();
        for p in [2usize, 4] {
            let g = gram_matrix(&metric, p).unwrap();
            let n = binomial(DIM, p);
            assert_abs_diff_eq!(
                (g - DMatrix::<f64>::identity(n, n)).abs().max(),
                0.0,
                epsilon = 1e-14
            );
        }
    }
}
