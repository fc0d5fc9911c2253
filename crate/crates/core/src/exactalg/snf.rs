//! Smith normal form over a Euclidean ring of integers.

use num_integer::Integer;
use num_traits::Signed;

use super::matrix::{Matrix, Scalar};

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal with
/// non-negative entries forming a divisibility chain.
#[derive(Debug, Clone)]
pub struct SmithForm<T> {
    pub d: Matrix<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar + Integer + Signed> SmithForm<T> {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn invariants(&self) -> Vec<T> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|x| !x.is_zero()).count()
    }
}

pub fn smith_normal_form<T: Scalar + Integer + Signed>(m: &Matrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);

    for t in 0..rows.min(cols) {
        if !move_min_pivot(&mut a, &mut u, &mut v, t) {
            break;
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                move_min_pivot(&mut a, &mut u, &mut v, t);
                continue;
            }
            // pivot must divide the whole remaining block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            let neg = -T::one();
            a.scale_row(t, &neg);
            u.scale_row(t, &neg);
        }
    }
    SmithForm { d: a, u, v }
}

/// Bring the smallest nonzero entry of the trailing block to `(t, t)`.
fn move_min_pivot<T: Scalar + Integer + Signed>(a: &mut Matrix<T>, u: &mut Matrix<T>, v: &mut Matrix<T>, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    let Some((i, j)) = best else { return false };
    a.swap_rows(t, i);
    u.swap_rows(t, i);
    a.swap_cols(t, j);
    v.swap_cols(t, j);
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::int_matrix;
    use num_bigint::BigInt;

    fn check(m: &Matrix<BigInt>) -> SmithForm<BigInt> {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&int_matrix(&[vec![1, 0], vec![0, 1]]));
        assert!(s.d.is_identity());
    }

    #[test]
    fn diag_two_three() {
        let s = check(&int_matrix(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.invariants(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&int_matrix(&[vec![0, 0, 0], vec![0, 0, 0]]));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn works_on_machine_integers() {
        let m: Matrix<i64> = Matrix::from_rows(vec![vec![4, 6], vec![6, 9], vec![2, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(&(&s.u * &m) * &s.v, s.d);
        assert_eq!(s.invariants(), vec![1, 0]);
    }
}
