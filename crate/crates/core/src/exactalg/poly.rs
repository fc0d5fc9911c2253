//! Dense univariate polynomials, characteristic polynomials and Newton's identities.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Field, Matrix, Scalar};
use crate::error::{Error, Result};

/// Coefficients are stored lowest degree first; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    /// `t^n - 1`
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut c = vec![T::zero(); n + 1];
        c[0] = -T::one();
        c[n] = c[n].clone() + T::one();
        Poly::new(c)
    }

    pub fn monomial(coeff: T, degree: usize) -> Self {
        let mut c = vec![T::zero(); degree + 1];
        c[degree] = coeff;
        Poly::new(c)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(M)` by Horner's scheme.
    pub fn eval_matrix(&self, m: &Matrix<T>) -> Matrix<T> {
        assert!(m.is_square());
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let cur = acc[(i, i)].clone();
                acc[(i, i)] = cur + c.clone();
            }
        }
        acc
    }

    /// Division by a monic divisor; works over any ring.
    pub fn div_rem_monic(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let Some(sd) = self.degree() else { return (Poly::zero(), Poly::zero()) };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient by a monic divisor, if it divides.
    pub fn exact_div_monic(&self, divisor: &Poly<T>) -> Option<Poly<T>> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// `p(t^k)`
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * k] = x.clone();
        }
        Poly::new(c)
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let lead = divisor.leading().expect("division by zero polynomial").clone();
        let inv = T::one() / lead.clone();
        let monic = divisor.map(|c| c.clone() * inv.clone());
        let (q, r) = self.div_rem_monic(&monic);
        (q.map(|c| c.clone() * inv.clone()), r)
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<T: Scalar + fmt::Display + Signed> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

/// Characteristic polynomial `det(t I - M)` by the Faddeev-LeVerrier recursion.
pub fn charpoly_exact<T: Field>(m: &Matrix<T>) -> Poly<T> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    // coefficients c_n = 1, c_{n-k} = -(1/k) tr(M M_k), M_{k+1} = M M_k + c_{n-k} I
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut mk = Matrix::identity(n);
    for k in 1..=n {
        let am = m * &mk;
        let ck = -am.trace() / from_usize::<T>(k);
        coeffs[n - k] = ck.clone();
        mk = am;
        for i in 0..n {
            let cur = mk[(i, i)].clone();
            mk[(i, i)] = cur + ck.clone();
        }
    }
    Poly::new(coeffs)
}

fn from_usize<T: Scalar>(k: usize) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut k = k;
    // binary expansion keeps this cheap for big-number scalars
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        k >>= 1;
    }
    acc
}

/// Monic degree-`dim` polynomial whose roots have the given power sums.
///
/// `traces[k-1]` is the k-th power sum. Newton's identities
/// `k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i` are solved in exact
/// arithmetic. With `require_integral`, a non-integral elementary symmetric
/// function is reported as inconsistent data.
pub fn charpoly_from_traces(traces: &[BigRational], dim: usize, require_integral: bool) -> Result<Poly<BigRational>> {
    if traces.len() < dim {
        return Err(Error::Inconsistent(format!("need {dim} power sums, got {}", traces.len())));
    }
    let mut e: Vec<BigRational> = Vec::with_capacity(dim + 1);
    e.push(BigRational::one());
    for k in 1..=dim {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let ek = acc / BigRational::from_integer(BigInt::from(k));
        if require_integral && !ek.is_integer() {
            return Err(Error::Inconsistent(format!("elementary symmetric function e_{k} = {ek} is not integral")));
        }
        e.push(ek);
    }
    // t^dim - e1 t^{dim-1} + e2 t^{dim-2} - ...
    let mut coeffs = vec![BigRational::zero(); dim + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[dim - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Ok(Poly::new(coeffs))
}

/// Integer power sums variant of [`charpoly_from_traces`] that stays in `BigInt`.
///
/// Each step divides exactly by `k`; a nonzero remainder means the traces are
/// not power sums of algebraic integers.
pub fn charpoly_from_int_traces(traces: &[BigInt], dim: usize) -> Result<Poly<BigInt>> {
    if traces.len() < dim {
        return Err(Error::Inconsistent(format!("need {dim} power sums, got {}", traces.len())));
    }
    let mut e: Vec<BigInt> = Vec::with_capacity(dim + 1);
    e.push(BigInt::one());
    for k in 1..=dim {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &traces[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let kk = BigInt::from(k);
        if !(&acc % &kk).is_zero() {
            return Err(Error::Inconsistent(format!("elementary symmetric function e_{k} is not integral")));
        }
        e.push(acc / kk);
    }
    let mut coeffs = vec![BigInt::zero(); dim + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[dim - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Ok(Poly::new(coeffs))
}

/// Integer polynomial from a rational one, if every coefficient is integral.
pub fn to_integer_poly(p: &Poly<BigRational>) -> Option<Poly<BigInt>> {
    p.coeffs().iter().all(|c| c.is_integer()).then(|| p.map(|c| c.to_integer()))
}

pub fn to_rational_poly(p: &Poly<BigInt>) -> Poly<BigRational> {
    p.map(|c| BigRational::from_integer(c.clone()))
}

/// Small-integer coefficients helper, lowest degree first.
pub fn int_poly(coeffs: &[i64]) -> Poly<BigInt> {
    Poly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
}

pub fn rat_poly(coeffs: &[i64]) -> Poly<BigRational> {
    Poly::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

/// Coefficient vector as machine integers, when they fit.
pub fn small_coeffs(p: &Poly<BigInt>) -> Option<Vec<i64>> {
    p.coeffs().iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::rat_matrix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn charpoly_sixth_root_companion() {
        let p = charpoly_exact(&rat_matrix(&[vec![0, -1], vec![1, 1]]));
        assert_eq!(p, rat_poly(&[1, -1, 1]));
    }

    #[test]
    fn charpoly_identity() {
        let p = charpoly_exact(&rat_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(p, rat_poly(&[-1, 3, -3, 1]));
    }

    #[test]
    fn traces_of_involution() {
        let p = charpoly_from_traces(&[q(0), q(2)], 2, true).unwrap();
        assert_eq!(p, rat_poly(&[-1, 0, 1]));
    }

    #[test]
    fn traces_of_order_six_rotation() {
        let tr: Vec<_> = [1, -1, -2, -1, 1, 2].iter().map(|&x| q(x)).collect();
        let p = charpoly_from_traces(&tr, 2, true).unwrap();
        assert_eq!(p, rat_poly(&[1, -1, 1]));
    }

    #[test]
    fn traces_of_identity() {
        let tr = vec![q(4); 4];
        let p = charpoly_from_traces(&tr, 4, true).unwrap();
        assert_eq!(p, rat_poly(&[1, -4, 6, -4, 1]));
        let pi = charpoly_from_int_traces(&vec![BigInt::from(4); 4], 4).unwrap();
        assert_eq!(pi, int_poly(&[1, -4, 6, -4, 1]));
    }

    #[test]
    fn non_integral_traces_rejected() {
        // power sums (1, 0) give e2 = 1/2
        assert!(charpoly_from_traces(&[q(1), q(0)], 2, true).is_err());
        assert!(charpoly_from_traces(&[q(1), q(0)], 2, false).is_ok());
        assert!(charpoly_from_int_traces(&[BigInt::from(1), BigInt::from(0)], 2).is_err());
    }

    #[test]
    fn division_and_display() {
        let p = int_poly(&[-1, 0, 0, 0, 0, 0, 1]);
        let d = int_poly(&[-1, 0, 0, 1]);
        let (qq, r) = p.div_rem_monic(&d);
        assert!(r.is_zero());
        assert_eq!(qq, int_poly(&[1, 0, 0, 1]));
        assert_eq!(format!("{}", int_poly(&[1, -1, 1])), "t^2 - t + 1");
        assert_eq!(format!("{}", int_poly(&[-2, 0, 3])), "3t^2 - 2");
    }

    #[test]
    fn matrix_evaluation_cayley_hamilton() {
        let m = rat_matrix(&[vec![2, 1, 0], vec![0, 2, 0], vec![1, 0, 3]]);
        let p = charpoly_exact(&m);
        assert!(p.eval_matrix(&m).is_zero());
    }
}
