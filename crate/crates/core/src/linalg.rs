//! Dense linear algebra: exact elimination over [`Scalar`] and a Jacobi
//! eigensolver for symmetric floating matrices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix of scalars.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn weight(s: &Scalar) -> usize {
    s.numer().degree().unwrap_or(0) + s.denom().degree().unwrap_or(0)
}

/// Solve `A X = B` exactly. Pivots are chosen over the whole remaining
/// block by smallest total degree. Singular `A` is reported as a
/// degenerate modulus.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) || b.len() != n {
        return Err(Error::ShapeMismatch("solve needs a square system".into()));
    }
    let m = b.first().map_or(0, Vec::len);
    let mut a = a.clone();
    let mut b = b.clone();
    let mut col_perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if !v.is_zero() {
                    let w = weight(v);
                    if best.is_none_or(|(bw, _, _)| w < bw) {
                        best = Some((w, i, j));
                    }
                }
            }
        }
        let (_, pi, pj) = best.ok_or(Error::DegenerateModulus)?;
        a.swap(k, pi);
        b.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        col_perm.swap(k, pj);
        let inv = a[k][k].recip()?;
        for j in k..n {
            a[k][j] = &a[k][j] * &inv;
        }
        for j in 0..m {
            b[k][j] = &b[k][j] * &inv;
        }
        let (pivot_a, pivot_b) = (a[k].clone(), b[k].clone());
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in k..n {
                if !pivot_a[j].is_zero() {
                    a[i][j] = &a[i][j] - &(&factor * &pivot_a[j]);
                }
            }
            for j in 0..m {
                if !pivot_b[j].is_zero() {
                    b[i][j] = &b[i][j] - &(&factor * &pivot_b[j]);
                }
            }
        }
    }
    // row k of b now holds the unknown for column col_perm[k]
    let mut x = alloc::vec![Vec::new(); n];
    for (k, row) in b.into_iter().enumerate() {
        x[col_perm[k]] = row;
    }
    Ok(x)
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    solve(a, &identity(a.len()))
}

pub fn evaluate(a: &Matrix, delta: f64) -> Result<Vec<Vec<f64>>> {
    a.iter().map(|row| row.iter().map(|s| s.evaluate(delta)).collect()).collect()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
/// ascending.
pub fn symmetric_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let scale: f64 = m.iter().flatten().map(|v| v * v).sum::<f64>();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| m[i][j] * m[i][j]).sum();
        if off <= 1e-30 * scale.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[p][q] == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Poly;

    fn s(c: &[i64]) -> Scalar {
        Scalar::from_poly(Poly::from_i64s(c))
    }

    #[test]
    fn inverse_of_meander_matrix() {
        // [[d^2, d], [d, d^2]]
        let g = alloc::vec![alloc::vec![s(&[0, 0, 1]), s(&[0, 1])], alloc::vec![s(&[0, 1]), s(&[0, 0, 1])]];
        let inv = inverse(&g).unwrap();
        assert_eq!(mul(&g, &inv), identity(2));
        assert_eq!(mul(&inv, &g), identity(2));
    }

    #[test]
    fn singular_system() {
        let g = alloc::vec![alloc::vec![s(&[1]), s(&[2])], alloc::vec![s(&[2]), s(&[4])]];
        assert_eq!(inverse(&g), Err(Error::DegenerateModulus));
    }

    #[test]
    fn pivoting_needs_column_swaps() {
        let g = alloc::vec![
            alloc::vec![Scalar::zero(), s(&[0, 1]), s(&[1])],
            alloc::vec![s(&[1]), Scalar::zero(), s(&[0, 0, 1])],
            alloc::vec![s(&[1, 1]), s(&[1]), Scalar::zero()],
        ];
        let inv = inverse(&g).unwrap();
        assert_eq!(mul(&g, &inv), identity(3));
    }

    #[test]
    fn jacobi_matches_closed_form() {
        let eig = symmetric_eigenvalues(&[alloc::vec![2.0, 1.0], alloc::vec![1.0, 2.0]]);
        assert!((eig[0] - 1.0).abs() < 1e-12 && (eig[1] - 3.0).abs() < 1e-12);
        let eig = symmetric_eigenvalues(&[
            alloc::vec![4.0, 1.0, 0.0],
            alloc::vec![1.0, 3.0, 1.0],
            alloc::vec![0.0, 1.0, 2.0],
        ]);
        // eigenvalues 3 and 3 ± sqrt(3)
        let r3 = libm::sqrt(3.0);
        for (got, want) in eig.iter().zip([3.0 - r3, 3.0, 3.0 + r3]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
