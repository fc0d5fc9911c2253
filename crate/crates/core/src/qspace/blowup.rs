//! Weighted blow-ups at the origin of `X(d; A)` in dimensions 2 and 3.

use num_integer::Integer;

use super::quotient::{bezout_inverse, QuotientType};
use crate::error::{Error, Result};

/// One affine chart of a weighted blow-up.
#[derive(Debug, Clone)]
pub struct Chart {
    pub omega: Vec<i64>,
    /// `U_i / mu_d` with the chart group stacked on the original one.
    pub raw: QuotientType,
    /// Closed-form presentation of the chart.
    pub target: QuotientType,
    pub normalized: QuotientType,
    /// Powers taking the raw chart coordinates to the normalized ones.
    pub rescale: Vec<i64>,
    /// Row `i` holds the exponents of the old coordinate `x_i` in the chart coordinates.
    pub substitution: Vec<Vec<i64>>,
    pub exceptional_coordinate: usize,
}

impl Chart {
    /// Exponents of the pulled-back monomial `x^m` in raw chart coordinates.
    pub fn pull_back(&self, m: &[i64]) -> Vec<i64> {
        let n = self.substitution.len();
        (0..n).map(|j| (0..n).map(|i| self.substitution[i][j] * m[i]).sum()).collect()
    }

    /// Pulled-back monomial in normalized coordinates, if the rescaling divides it.
    pub fn pull_back_normalized(&self, m: &[i64]) -> Option<Vec<i64>> {
        let raw = self.pull_back(m);
        raw.iter().zip(&self.rescale).map(|(x, k)| (x % k == 0).then_some(x / k)).collect()
    }
}

/// A singular line along a coordinate axis of the exceptional divisor.
#[derive(Debug, Clone)]
pub struct AxisLine {
    /// The coordinate that vanishes on the line.
    pub axis: usize,
    /// Transversal type; the line is `C x transversal` generically.
    pub transversal: QuotientType,
}

#[derive(Debug, Clone)]
pub struct Exceptional {
    pub omega: Vec<i64>,
    /// Normalized types at the chart origins.
    pub origins: Vec<QuotientType>,
    pub axis_lines: Vec<AxisLine>,
}

#[derive(Debug, Clone)]
pub struct Blowup {
    pub charts: Vec<Chart>,
    pub exceptional: Exceptional,
}

fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |a, b| a.gcd(b))
}

fn check_omega(omega: &[i64]) -> Result<()> {
    if omega.iter().any(|&w| w < 1) {
        return Err(Error::Validation(format!("weights {omega:?} must be positive")));
    }
    if gcd_all(omega) != 1 {
        return Err(Error::Validation(format!("weights {omega:?} are not coprime")));
    }
    Ok(())
}

/// Cyclic presentation `(d; a)` of a normalized type, smooth spaces as `(1; 0, ..., 0)`.
fn cyclic_data(t: &QuotientType, n: usize) -> Result<(i64, Vec<i64>)> {
    if t.ncoords() != n {
        return Err(Error::Validation(format!("expected a type on {n} coordinates, got {t}")));
    }
    if !t.is_normalized() {
        return Err(Error::Validation(format!("{t} is not normalized")));
    }
    let c = t.canonical();
    match c.orders() {
        [] => Ok((1, vec![0; n])),
        [d] => Ok((*d, c.weights()[0].clone())),
        _ => Err(Error::Validation(format!("{t} is not cyclic"))),
    }
}

/// Chart `i` of the `omega`-blow-up of `C^{n}`: `x_i = y_i^{w_i}`, `x_j = y_i^{w_j} y_j`.
fn substitution(omega: &[i64], i: usize) -> Vec<Vec<i64>> {
    let n = omega.len();
    (0..n)
        .map(|r| {
            let mut row = vec![0; n];
            row[i] = omega[r];
            if r != i {
                row[r] = 1;
            }
            row
        })
        .collect()
}

/// The smooth chart `X(w_i; w_0, .., -1, .., w_n)` stacked with `(w_i d; w_i a - a_i w)`.
fn raw_chart(d: i64, a: &[i64], omega: &[i64], i: usize) -> QuotientType {
    let n = omega.len();
    let first: Vec<i64> = (0..n).map(|j| if j == i { -1 } else { omega[j] }).collect();
    let second: Vec<i64> = (0..n).map(|j| if j == i { a[i] } else { omega[i] * a[j] - a[i] * omega[j] }).collect();
    QuotientType::new(vec![omega[i], omega[i] * d], vec![first, second], n).expect("well-formed chart")
}

fn make_chart(raw: QuotientType, target: QuotientType, omega: &[i64], i: usize) -> Result<Chart> {
    let (normalized, rescale) = raw.normalize();
    if normalized != target.normalize().0 {
        return Err(Error::Inconsistent(format!("chart {i}: {target} does not present {raw}")));
    }
    Ok(Chart { omega: omega.to_vec(), raw, target, normalized, rescale, substitution: substitution(omega, i), exceptional_coordinate: i })
}

/// `(p, q)`-blow-up of a normalized `X(d; a, b)`.
pub fn blowup_2d(t: &QuotientType, omega: (i64, i64)) -> Result<Blowup> {
    let (p, q) = omega;
    let w = [p, q];
    check_omega(&w)?;
    let (d, ab) = cyclic_data(t, 2)?;
    let (a, b) = (ab[0], ab[1]);
    let e = d.gcd(&(p * b - q * a));
    let beta = bezout_inverse(a, d);
    let mu = bezout_inverse(b, d);
    let t1 = QuotientType::cyclic(p * d / e, &[1, (-q + beta * p * b) / e])?;
    let t2 = QuotientType::cyclic(q * d / e, &[(-p + mu * q * a) / e, 1])?;
    let c1 = make_chart(raw_chart(d, &ab, &w, 0), t1, &w, 0)?;
    let c2 = make_chart(raw_chart(d, &ab, &w, 1), t2, &w, 1)?;
    let origins = vec![c1.normalized.clone(), c2.normalized.clone()];
    Ok(Blowup { charts: vec![c1, c2], exceptional: Exceptional { omega: w.to_vec(), origins, axis_lines: Vec::new() } })
}

fn axis_lines(omega: &[i64]) -> Vec<AxisLine> {
    let (p, q, r) = (omega[0], omega[1], omega[2]);
    [(0, q.gcd(&r), p), (1, p.gcd(&r), q), (2, p.gcd(&q), r)]
        .into_iter()
        .map(|(axis, g, w)| AxisLine { axis, transversal: if g == 1 { QuotientType::smooth(2) } else { QuotientType::cyc(g, &[w, -1]) } })
        .collect()
}

/// `(p, q, r)`-blow-up of `C^3`.
pub fn blowup_3d_smooth(omega: (i64, i64, i64)) -> Result<Blowup> {
    let w = [omega.0, omega.1, omega.2];
    check_omega(&w)?;
    let mut charts = Vec::new();
    for i in 0..3 {
        let weights: Vec<i64> = (0..3).map(|j| if j == i { -1 } else { w[j] }).collect();
        let target = QuotientType::cyclic(w[i], &weights)?;
        charts.push(make_chart(target.clone(), target, &w, i)?);
    }
    let origins = charts.iter().map(|c| c.normalized.clone()).collect();
    Ok(Blowup { charts, exceptional: Exceptional { omega: w.to_vec(), origins, axis_lines: axis_lines(&w) } })
}

/// Bezout rewrite of chart `i`: with `alpha d + beta a_i = g = gcd(d, a_i)`,
/// `X(w_i d; .., g, .., -w_j g + beta w_i a_j, .. / g; .., 0, .., a_j, ..)`.
fn bezout_chart(d: i64, a: &[i64], omega: &[i64], i: usize) -> QuotientType {
    let n = omega.len();
    let g = d.gcd(&a[i]);
    let beta = bezout_inverse(a[i], d);
    let first: Vec<i64> = (0..n).map(|j| if j == i { g } else { -omega[j] * g + beta * omega[i] * a[j] }).collect();
    let second: Vec<i64> = (0..n).map(|j| if j == i { 0 } else { a[j] }).collect();
    QuotientType::new(vec![omega[i] * d, g], vec![first, second], n).expect("well-formed chart")
}

/// `(p, q, r)`-blow-up of a normalized `X(d; a, b, c)`.
pub fn blowup_3d_quotient(t: &QuotientType, omega: (i64, i64, i64)) -> Result<Blowup> {
    let w = [omega.0, omega.1, omega.2];
    check_omega(&w)?;
    let (d, abc) = cyclic_data(t, 3)?;
    let mut charts = Vec::new();
    for i in 0..3 {
        let raw = raw_chart(d, &abc, &w, i);
        let rewritten = bezout_chart(d, &abc, &w, i);
        if raw != rewritten {
            return Err(Error::Inconsistent(format!("Bezout rewrite of chart {i} changed the group: {raw} vs {rewritten}")));
        }
        charts.push(make_chart(raw, rewritten, &w, i)?);
    }
    let origins = charts.iter().map(|c| c.normalized.clone()).collect();
    let axis_lines = if d == 1 { axis_lines(&w) } else { Vec::new() };
    Ok(Blowup { charts, exceptional: Exceptional { omega: w.to_vec(), origins, axis_lines } })
}

/// Reduced weights of `P^2(p, q, r)` and the coordinate powers realizing the isomorphism.
pub fn simplify_wp2(p: i64, q: i64, r: i64) -> Result<([i64; 3], [i64; 3])> {
    check_omega(&[p, q, r])?;
    let (pq, pr, qr) = (p.gcd(&q), p.gcd(&r), q.gcd(&r));
    Ok(([p / (pr * pq), q / (pq * qr), r / (pr * qr)], [qr, pr, pq]))
}

/// Whether every chart accepts the pull-back of `x^m`, raw and normalized.
pub fn charts_accept(b: &Blowup, m: &[i64]) -> bool {
    b.charts.iter().all(|c| {
        let raw = c.pull_back(m);
        c.raw.is_invariant(&raw) && c.pull_back_normalized(m).is_some_and(|n| c.normalized.is_invariant(&n))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_3_12_uniform() {
        let b = blowup_2d(&QuotientType::cyc(3, &[1, 2]), (1, 1)).unwrap();
        assert_eq!(b.charts[0].target, QuotientType::cyc(3, &[1, 1]));
        assert_eq!(b.charts[1].target, QuotientType::cyc(3, &[1, 1]));
        assert_eq!(b.charts[0].normalized, QuotientType::cyc(3, &[1, 1]));
    }

    #[test]
    fn smooth_plane_23() {
        let b = blowup_2d(&QuotientType::smooth(2), (2, 3)).unwrap();
        assert_eq!(b.charts[0].target, QuotientType::cyc(2, &[1, -3]));
        assert_eq!(b.charts[0].normalized, QuotientType::cyc(2, &[1, 1]));
        assert_eq!(b.charts[1].normalized, QuotientType::cyc(3, &[1, 1]));
    }

    #[test]
    fn two_branch_second_step() {
        // X(q; -1, p) at (p, q, r, s) = (2, 3, 4, 1) with weights (s, qr - ps)
        let b = blowup_2d(&QuotientType::cyc(3, &[-1, 2]), (1, 10)).unwrap();
        assert_eq!(b.charts[0].target, QuotientType::cyc(1, &[1, -2]));
        assert!(b.charts[0].normalized.is_smooth());
        assert_eq!(b.charts[1].target, QuotientType::cyc(10, &[-7, 1]));
        assert!(charts_accept(&b, &[2, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(blowup_2d(&QuotientType::smooth(2), (2, 4)).is_err());
        assert!(blowup_2d(&QuotientType::cyc(4, &[2, 1]), (1, 1)).is_err());
        assert!(blowup_3d_smooth((2, 4, 6)).is_err());
    }

    #[test]
    fn smooth_3d_charts() {
        let b = blowup_3d_smooth((2, 3, 5)).unwrap();
        assert_eq!(b.charts[0].target, QuotientType::cyc(2, &[-1, 3, 5]));
        assert_eq!(b.charts[1].target, QuotientType::cyc(3, &[2, -1, 5]));
        assert_eq!(b.charts[2].target, QuotientType::cyc(5, &[2, 3, -1]));
        let b = blowup_3d_smooth((1, 1, 1)).unwrap();
        assert!(b.charts.iter().all(|c| c.normalized.is_smooth()));
        let b = blowup_3d_smooth((2, 4, 3)).unwrap();
        assert_eq!(b.exceptional.axis_lines[2].transversal, QuotientType::cyc(2, &[3, -1]));
    }

    #[test]
    fn quotient_3d_charts() {
        let b = blowup_3d_quotient(&QuotientType::cyc(2, &[1, 1, 1]), (1, 1, 1)).unwrap();
        assert!(b.charts[0].normalized.is_smooth());
        let s = blowup_3d_quotient(&QuotientType::smooth(3), (2, 3, 5)).unwrap();
        let t = blowup_3d_smooth((2, 3, 5)).unwrap();
        for (x, y) in s.charts.iter().zip(&t.charts) {
            assert_eq!(x.normalized, y.normalized);
        }
        let b = blowup_3d_quotient(&QuotientType::cyc(3, &[1, 1, 2]), (1, 1, 1)).unwrap();
        assert!(charts_accept(&b, &[1, 1, 2]));
    }

    #[test]
    fn wp2() {
        assert_eq!(simplify_wp2(1, 1, 1).unwrap(), ([1, 1, 1], [1, 1, 1]));
        assert_eq!(simplify_wp2(2, 3, 5).unwrap(), ([2, 3, 5], [1, 1, 1]));
        assert_eq!(simplify_wp2(6, 10, 15).unwrap(), ([1, 1, 1], [5, 3, 2]));
    }
}
