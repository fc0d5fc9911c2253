//! Gaussian elimination over a field: rank, kernels, linear solves.

use super::matrix::{Field, Matrix};

/// Reduced row echelon form together with the pivot column of each nonzero row.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !a[(i, col)].is_negligible()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = T::one() / a[(row, col)].clone();
        a.scale_row(row, &inv);
        for i in 0..a.rows() {
            if i != row && !a[(i, col)].is_negligible() {
                let f = -a[(i, col)].clone();
                a.add_row_multiple(i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of `{ v : m v = 0 }`, one vector per free column.
pub fn kernel_basis<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![T::zero(); n];
            v[free] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            v
        })
        .collect()
}

/// Rank and kernel basis in one call.
pub fn rat_kernel_rank<T: Field>(m: &Matrix<T>) -> (usize, Vec<Vec<T>>) {
    let kernel = kernel_basis(m);
    (m.cols() - kernel.len(), kernel)
}

/// Some solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert_eq!(b.len(), m.rows());
    let aug = Matrix::from_fn(m.rows(), m.cols() + 1, |i, j| if j < m.cols() { m[(i, j)].clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![T::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols())].clone();
    }
    Some(x)
}

/// Vectors of `candidates` that extend `base` to a basis of `span(base ∪ candidates)`.
///
/// The returned vectors are taken verbatim from `candidates`, in order.
pub fn complement_in<T: Field>(base: &[Vec<T>], candidates: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    let mut all: Vec<Vec<T>> = base.to_vec();
    all.extend(candidates.iter().cloned());
    if all.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_columns(&all, dim);
    let (_, pivots) = rref(&m);
    pivots.into_iter().filter(|&p| p >= base.len()).map(|p| candidates[p - base.len()].clone()).collect()
}

/// Matrix with the given vectors as columns, or an empty `dim x 0` matrix.
pub fn columns<T: Field>(vs: &[Vec<T>], dim: usize) -> Matrix<T> {
    Matrix::from_columns(vs, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::rat_matrix;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rat_kernel_rank(&rat_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn single_row_kernel() {
        let m = rat_matrix(&[vec![1, -1]]);
        let (r, k) = rat_kernel_rank(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn triangle_incidence() {
        // edges 01, 12, 02 as rows, vertex columns; d0 f = f(head) - f(tail)
        let m = rat_matrix(&[vec![-1, 1, 0], vec![0, -1, 1], vec![-1, 0, 1]]);
        let (r, k) = rat_kernel_rank(&m);
        assert_eq!(r, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(m.mul_vec(&k[0]), vec![q(0); 3]);
        // cokernel side: the cycle (1, 1, -1) is killed by the transpose
        let (rt, kt) = rat_kernel_rank(&m.transpose());
        assert_eq!(rt, 2);
        assert_eq!(kt.len(), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = rat_matrix(&[vec![1, 2], vec![2, 4]]);
        assert!(solve(&m, &[q(1), q(3)]).is_none());
        let x = solve(&m, &[q(3), q(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3), q(6)]);
    }

    #[test]
    fn complement_picks_new_directions() {
        let base = vec![vec![q(1), q(1), q(0)]];
        let cands = vec![vec![q(2), q(2), q(0)], vec![q(0), q(1), q(0)], vec![q(1), q(0), q(0)]];
        let c = complement_in(&base, &cands, 3);
        assert_eq!(c, vec![vec![q(0), q(1), q(0)]]);
    }

    #[test]
    fn floating_point_instantiation() {
        let m: Matrix<f64> = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(kernel_basis(&m).len(), 2);
    }
}
