//! Numeric eigenvalues of dense operators and multiset bookkeeping.

use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Scalar;

fn to_nalgebra<F: Scalar>(m: &Matrix<F>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_c64())
}

fn is_hermitian(m: &DMatrix<Complex64>, tol: f64) -> bool {
    let scale = m
        .iter()
        .map(|x| x.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    (0..m.nrows()).all(|i| (0..i + 1).all(|j| (m[(i, j)] - m[(j, i)].conj()).norm() <= tol * scale))
}

/// All eigenvalues with algebraic multiplicity, via the symmetric solver for
/// Hermitian input and a complex Schur form otherwise.
pub fn eigenvalues<F: Scalar>(m: &Matrix<F>) -> Result<Vec<Complex64>> {
    if m.rows() != m.cols() {
        return Err(Error::PowerMismatch {
            outer_domain: m.cols(),
            inner_codomain: m.rows(),
        });
    }
    let a = to_nalgebra(m);
    if is_hermitian(&a, 1e-13) {
        let eig = SymmetricEigen::new(a);
        return Ok(eig
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect());
    }
    let schur = Schur::try_new(a, 1e-13, 200_000).ok_or_else(|| Error::Inconsistent {
        module: "spectrum",
        detail: "Schur iteration did not converge".into(),
    })?;
    let (_, t) = schur.unpack();
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Deterministic order: by modulus, then by argument.
pub fn sort_eigenvalues(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.arg().total_cmp(&b.arg()))
    });
}

/// Groups eigenvalues whose difference is within `tol` relative to their size.
pub fn cluster(values: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted = values.to_vec();
    sort_eigenvalues(&mut sorted);
    let mut groups: Vec<(Complex64, usize, Complex64)> = Vec::new();
    for v in sorted {
        let found = groups
            .iter_mut()
            .find(|(rep, _, _)| (v - *rep).norm() <= tol * v.norm().max(rep.norm()));
        match found {
            Some((_, count, sum)) => {
                *count += 1;
                *sum += v;
            }
            None => groups.push((v, 1, v)),
        }
    }
    groups
        .into_iter()
        .map(|(_, count, sum)| (sum / count as f64, count))
        .collect()
}

/// Moduli grouped with multiplicities, in increasing order.
pub fn cluster_moduli(values: &[Complex64], tol: f64) -> Vec<(f64, usize)> {
    let mut moduli: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    moduli.sort_by(f64::total_cmp);
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for m in moduli {
        match groups.last_mut() {
            Some((rep, count)) if (m - *rep).abs() <= tol * m.max(*rep) => *count += 1,
            _ => groups.push((m, 1)),
        }
    }
    groups
}

/// Largest pairwise distance between two eigenvalue multisets after sorting
/// both the same way, relative to the largest modulus present.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    sort_eigenvalues(&mut a);
    sort_eigenvalues(&mut b);
    let scale = a
        .iter()
        .chain(&b)
        .map(|x| x.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    Some(
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
            / scale,
    )
}

/// Operator norm (largest singular value) by power iteration on the smaller
/// of `AᴴA` and `AAᴴ`.
pub fn operator_norm(m: &Matrix<Complex64>) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    let a = to_nalgebra(m);
    let ata = if m.rows() < m.cols() {
        &a * a.adjoint()
    } else {
        a.adjoint() * &a
    };
    let mut v = nalgebra::DVector::from_fn(ata.nrows(), |i, _| {
        Complex64::new(1.0 + (i as f64) * 1e-3, 0.5)
    });
    let mut estimate = 0.0;
    for _ in 0..500 {
        let w = &ata * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let next = norm / v.norm();
        v = w / Complex64::new(norm, 0.0);
        if (next - estimate).abs() <= 1e-14 * next {
            estimate = next;
            break;
        }
        estimate = next;
    }
    estimate.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn symmetric_and_general_spectra() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { c(2.0, 0.0) } else { c(1.0, 0.0) });
        let mut v = eigenvalues(&m).unwrap();
        sort_eigenvalues(&mut v);
        assert!((v[0] - c(1.0, 0.0)).norm() < 1e-12 && (v[1] - c(3.0, 0.0)).norm() < 1e-12);
        // rotation by 90 degrees: eigenvalues ±i
        let r = Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c(-1.0, 0.0),
            (1, 0) => c(1.0, 0.0),
            _ => c(0.0, 0.0),
        });
        let v = eigenvalues(&r).unwrap();
        assert!(v
            .iter()
            .all(|x| (x.norm() - 1.0).abs() < 1e-12 && x.re.abs() < 1e-12));
        // non-normal upper triangular
        let t = Matrix::from_fn(3, 3, |i, j| {
            if i <= j {
                c((i + j + 1) as f64, 0.5)
            } else {
                c(0.0, 0.0)
            }
        });
        let mut v = eigenvalues(&t).unwrap();
        sort_eigenvalues(&mut v);
        assert!((v[0] - c(1.0, 0.5)).norm() < 1e-10 && (v[2] - c(5.0, 0.5)).norm() < 1e-10);
    }

    #[test]
    fn clustering() {
        let vals = [c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(-0.25, 0.0), c(1.0, 0.0)];
        let groups = cluster(&vals, 1e-9);
        assert_eq!(groups.iter().map(|g| g.1).collect::<Vec<_>>(), vec![1, 3]);
        let moduli = cluster_moduli(&vals, 1e-9);
        assert_eq!(moduli.len(), 2);
        assert!(
            multiset_distance(
                &vals,
                &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-0.25, 0.0)]
            )
            .unwrap()
                < 1e-11
        );
        assert!(multiset_distance(&vals, &vals[..3]).is_none());
    }

    #[test]
    fn power_iteration_norm() {
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { c(3.0, 0.0) } else { c(0.0, 0.0) });
        assert!((operator_norm(&m) - 3.0).abs() < 1e-12);
        let m = Matrix::from_fn(2, 2, |i, j| {
            if (i, j) == (0, 1) {
                c(0.0, 2.0)
            } else {
                c(0.0, 0.0)
            }
        });
        assert!((operator_norm(&m) - 2.0).abs() < 1e-12);
        assert_eq!(operator_norm(&Matrix::zeros(2, 2)), 0.0);
    }
}
