//! Abelian quotient types `X(d; A)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{rref, smith_normal_form, Matrix};

/// `C^{n+1}` modulo the diagonal action of the group generated by the rows
/// `a_i / d_i` of `(Q/Z)^{n+1}`.
#[derive(Clone)]
pub struct QuotientType {
    d: Vec<i64>,
    a: Vec<Vec<i64>>,
    ncoords: usize,
}

impl QuotientType {
    pub fn new(d: Vec<i64>, a: Vec<Vec<i64>>, ncoords: usize) -> Result<Self> {
        if d.len() != a.len() {
            return Err(Error::Validation(format!("{} orders for {} weight rows", d.len(), a.len())));
        }
        if ncoords == 0 {
            return Err(Error::Validation("a quotient type needs at least one coordinate".into()));
        }
        for (i, (di, row)) in d.iter().zip(&a).enumerate() {
            if *di < 1 {
                return Err(Error::Validation(format!("order d_{i} = {di} must be positive")));
            }
            if row.len() != ncoords {
                return Err(Error::Validation(format!("weight row {i} has {} entries, expected {ncoords}", row.len())));
            }
        }
        Ok(QuotientType { d, a, ncoords })
    }

    /// Cyclic type `X(d; a_0, ..., a_n)`.
    pub fn cyclic(d: i64, weights: &[i64]) -> Result<Self> {
        Self::new(vec![d], vec![weights.to_vec()], weights.len())
    }

    /// Unwrapping constructor for literals known to be well formed.
    pub fn cyc(d: i64, weights: &[i64]) -> Self {
        Self::cyclic(d, weights).expect("well-formed cyclic type")
    }

    pub fn smooth(ncoords: usize) -> Self {
        QuotientType { d: Vec::new(), a: Vec::new(), ncoords }
    }

    pub fn orders(&self) -> &[i64] {
        &self.d
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn ncoords(&self) -> usize {
        self.ncoords
    }

    /// Least common multiple of the orders.
    pub fn exponent_bound(&self) -> i64 {
        self.d.iter().fold(1, |acc, x| acc.lcm(x))
    }

    /// Integer lattice `L` with `G = L / D Z^{n+1}` for `D` = [`Self::exponent_bound`].
    fn lattice(&self, drop: Option<usize>) -> (Matrix<BigInt>, i64) {
        let big_d = self.exponent_bound();
        let cols: Vec<usize> = (0..self.ncoords).filter(|&j| Some(j) != drop).collect();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (di, row) in self.d.iter().zip(&self.a) {
            let f = big_d / di;
            rows.push(cols.iter().map(|&j| BigInt::from(f * row[j])).collect());
        }
        for k in 0..cols.len() {
            let mut r = vec![BigInt::zero(); cols.len()];
            r[k] = BigInt::from(big_d);
            rows.push(r);
        }
        (Matrix::from_rows_with_cols(rows, cols.len()), big_d)
    }

    fn lattice_order(m: &Matrix<BigInt>, big_d: i64) -> u64 {
        if m.cols() == 0 {
            return 1;
        }
        let s = smith_normal_form(m);
        let det: BigInt = s.invariants().into_iter().product();
        let full = BigInt::from(big_d).pow(m.cols() as u32);
        (full / det).to_u64().expect("group order fits in u64")
    }

    /// Order of the represented subgroup of `(Q/Z)^{n+1}`.
    pub fn order(&self) -> u64 {
        let (m, big_d) = self.lattice(None);
        Self::lattice_order(&m, big_d)
    }

    /// Order of the subgroup of elements supported on coordinate `j` only.
    pub fn reflection_order(&self, j: usize) -> u64 {
        let (m, big_d) = self.lattice(Some(j));
        self.order() / Self::lattice_order(&m, big_d)
    }

    pub fn is_smooth(&self) -> bool {
        self.order() == 1
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.ncoords).all(|j| self.reflection_order(j) == 1)
    }

    /// All group elements as numerators over [`Self::exponent_bound`].
    ///
    /// Intended for small groups; panics above `limit` elements.
    pub fn elements(&self, limit: usize) -> Vec<Vec<i64>> {
        let big_d = self.exponent_bound();
        let gens: Vec<Vec<i64>> = self
            .d
            .iter()
            .zip(&self.a)
            .map(|(di, row)| row.iter().map(|x| (x * (big_d / di)).rem_euclid(big_d)).collect())
            .collect();
        let zero = vec![0; self.ncoords];
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(g) = frontier.pop() {
            for h in &gens {
                let s: Vec<i64> = g.iter().zip(h).map(|(x, y)| (x + y).rem_euclid(big_d)).collect();
                if seen.insert(s.clone()) {
                    assert!(seen.len() <= limit, "group larger than {limit}");
                    frontier.push(s);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// `d_i | sum_j a_ij m_j` for every row.
    pub fn is_invariant(&self, m: &[i64]) -> bool {
        assert_eq!(m.len(), self.ncoords);
        self.d.iter().zip(&self.a).all(|(di, row)| dot(row, m).rem_euclid(*di) == 0)
    }

    /// Same group, as lattices.
    pub fn same_group(&self, other: &QuotientType) -> bool {
        if self.ncoords != other.ncoords {
            return false;
        }
        let n = self.order();
        if n != other.order() {
            return false;
        }
        let mut d = self.d.clone();
        d.extend(&other.d);
        let mut a = self.a.clone();
        a.extend(other.a.iter().cloned());
        QuotientType { d, a, ncoords: self.ncoords }.order() == n
    }

    /// Multiplies coordinate `j` of every group element by `k`, i.e. passes to `x_j^k`.
    pub fn rescale_coordinate(&self, j: usize, k: i64) -> QuotientType {
        let mut out = self.clone();
        for row in &mut out.a {
            row[j] *= k;
        }
        out.reduced()
    }

    /// Entries reduced modulo their row order, trivial rows dropped.
    fn reduced(&self) -> QuotientType {
        let mut d = Vec::new();
        let mut a = Vec::new();
        for (di, row) in self.d.iter().zip(&self.a) {
            let r: Vec<i64> = row.iter().map(|x| x.rem_euclid(*di)).collect();
            if *di > 1 && r.iter().any(|x| *x != 0) {
                d.push(*di);
                a.push(r);
            }
        }
        QuotientType { d, a, ncoords: self.ncoords }
    }

    /// Invariant-factor presentation `X(d_1; w_1) x ... ` with `d_1 | d_2 | ...`.
    pub fn canonical(&self) -> QuotientType {
        let (m, big_d) = self.lattice(None);
        let s = smith_normal_form(&m);
        let vinv = unimodular_inverse(&s.v);
        let mut d: Vec<i64> = Vec::new();
        let mut a: Vec<Vec<i64>> = Vec::new();
        for (i, si) in s.invariants().iter().enumerate() {
            let si = si.to_i64().expect("invariant fits in i64");
            let di = big_d / si;
            if di > 1 {
                d.push(di);
                a.push(vinv.row(i).iter().map(|x| x.to_i64().unwrap().rem_euclid(di)).collect());
            }
        }
        if d.len() == 1 {
            a[0] = minimal_generator(d[0], &a[0]);
        }
        let mut order: Vec<usize> = (0..d.len()).collect();
        order.sort_by_key(|&i| d[i]);
        QuotientType { d: order.iter().map(|&i| d[i]).collect(), a: order.iter().map(|&i| a[i].clone()).collect(), ncoords: self.ncoords }
    }

    /// Removes reflection subgroups coordinate by coordinate until none remain.
    ///
    /// Returns the normalized type and the powers `k_j` with `x_j -> x_j^{k_j}`.
    pub fn normalize(&self) -> (QuotientType, Vec<i64>) {
        let mut t = self.reduced();
        let mut rescale = vec![1i64; self.ncoords];
        loop {
            let mut changed = false;
            for (j, kj) in rescale.iter_mut().enumerate() {
                let k = t.reflection_order(j) as i64;
                if k > 1 {
                    t = t.rescale_coordinate(j, k);
                    *kj *= k;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (t.canonical(), rescale)
    }

    /// Multiplicity of the germ `x^m` on this space.
    ///
    /// `gcd(m_0, ..., m_n, C_0/d_0, ..., C_r/d_r)` with `C_i = sum_j a_ij m_j`.
    /// When a single exponent is nonzero the value `m / lcm(d_i / gcd(d_i, a_ij))`
    /// is computed too and both must agree.
    pub fn multiplicity(&self, m: &[i64]) -> Result<i64> {
        if m.len() != self.ncoords {
            return Err(Error::Validation(format!("germ has {} exponents for {} coordinates", m.len(), self.ncoords)));
        }
        if m.iter().any(|&x| x < 0) || m.iter().all(|&x| x == 0) {
            return Err(Error::Validation(format!("germ exponents {m:?} must be non-negative and not all zero")));
        }
        if !self.is_invariant(m) {
            return Err(Error::Validation(format!("germ {m:?} is not invariant on {self}")));
        }
        let mut g = m.iter().fold(0i64, |acc, x| acc.gcd(x));
        for (di, row) in self.d.iter().zip(&self.a) {
            g = g.gcd(&(dot(row, m) / di));
        }
        let nonzero: Vec<usize> = (0..m.len()).filter(|&j| m[j] != 0).collect();
        if let [j] = nonzero[..] {
            let l = self.d.iter().zip(&self.a).fold(1i64, |acc, (di, row)| acc.lcm(&(di / di.gcd(&row[j]))));
            if m[j] % l != 0 || m[j] / l != g {
                return Err(Error::Inconsistent(format!("multiplicity formulas disagree on {self} for {m:?}: {g} vs {}/{l}", m[j])));
            }
        }
        Ok(g)
    }

    /// Multiplicity from the group elements directly: the number of orbits of
    /// the `l` factors of `t^l - x^m` with `l = gcd(m)`.
    pub fn multiplicity_by_enumeration(&self, m: &[i64], limit: usize) -> i64 {
        let l = m.iter().fold(0i64, |acc, x| acc.gcd(x));
        let big_d = self.exponent_bound();
        // the subgroup of Z/l generated by the values sum_j g_j (m_j / l)
        let mut sub: BTreeSet<i64> = BTreeSet::new();
        for g in self.elements(limit) {
            let num: i64 = g.iter().zip(m).map(|(x, y)| x * (y / l)).sum();
            let v = num * l;
            assert_eq!(v % big_d, 0, "germ not invariant");
            sub.insert((v / big_d).rem_euclid(l));
        }
        l / sub.len() as i64
    }

    /// Parses `"d:a,b,c"` rows separated by `/`; `"1:0,0"` or `"smooth:3"` for smooth space.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix("smooth:") {
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate count in {s:?}")))?;
            return Ok(Self::smooth(n));
        }
        let mut d = Vec::new();
        let mut a = Vec::new();
        for row in s.split('/') {
            let (di, ws) = row.split_once(':').ok_or_else(|| Error::Parse(format!("row {row:?} lacks ':'")))?;
            d.push(di.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad order {di:?}")))?);
            let w: std::result::Result<Vec<i64>, _> = ws.split(',').map(|x| x.trim().parse::<i64>()).collect();
            a.push(w.map_err(|_| Error::Parse(format!("bad weights {ws:?}")))?);
        }
        let n = a[0].len();
        Self::new(d, a, n)
    }

    /// Compact form accepted by [`QuotientType::parse`].
    pub fn to_compact(&self) -> String {
        if self.d.is_empty() {
            return format!("smooth:{}", self.ncoords);
        }
        self.d
            .iter()
            .zip(&self.a)
            .map(|(di, row)| format!("{di}:{}", row.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join("/")
    }
}

impl PartialEq for QuotientType {
    fn eq(&self, other: &Self) -> bool {
        self.same_group(other)
    }
}

impl Eq for QuotientType {}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_empty() {
            return write!(f, "C^{}", self.ncoords);
        }
        let rows: Vec<String> = self
            .d
            .iter()
            .zip(&self.a)
            .map(|(di, row)| format!("{di}; {}", row.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "X({})", rows.join(" | "))
    }
}

impl fmt::Debug for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lexicographically smallest `u * a mod d` over units `u`.
fn minimal_generator(d: i64, a: &[i64]) -> Vec<i64> {
    (1..d)
        .filter(|u| u.gcd(&d) == 1)
        .map(|u| a.iter().map(|x| (x * u).rem_euclid(d)).collect::<Vec<i64>>())
        .min()
        .unwrap_or_else(|| a.to_vec())
}

fn unimodular_inverse(v: &Matrix<BigInt>) -> Matrix<BigInt> {
    let n = v.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            BigRational::from_integer(v[(i, j)].clone())
        } else if j - n == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let (r, _) = rref(&aug);
    Matrix::from_fn(n, n, |i, j| {
        let x = &r[(i, j + n)];
        debug_assert!(x.is_integer());
        x.to_integer()
    })
}

/// Canonical Bezout coefficient: the least `beta >= 0` with `beta * a = gcd(d, a) mod d`.
pub fn bezout_inverse(a: i64, d: i64) -> i64 {
    if d == 1 {
        return 0;
    }
    let g = a.gcd(&d);
    (0..d).find(|b| (b * a - g).rem_euclid(d) == 0).expect("gcd is attained")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(QuotientType::cyc(2, &[1, 1]).order(), 2);
        assert_eq!(QuotientType::cyc(4, &[2, 1]).order(), 4);
        assert_eq!(QuotientType::cyc(6, &[2, 4]).order(), 3);
        assert_eq!(QuotientType::smooth(2).order(), 1);
        let two = QuotientType::new(vec![10, 10], vec![vec![1, -3], vec![-4, 2]], 2).unwrap();
        assert_eq!(two.order() as usize, two.elements(10_000).len());
    }

    #[test]
    fn invariance() {
        let t = QuotientType::cyc(2, &[1, 1]);
        assert!(t.is_invariant(&[1, 1]));
        assert!(!t.is_invariant(&[1, 0]));
        let two = QuotientType::new(vec![10, 10], vec![vec![1, -3], vec![-4, 2]], 2).unwrap();
        assert!(two.is_invariant(&[8, 6]));
    }

    #[test]
    fn normalize_examples() {
        let (t, k) = QuotientType::cyc(2, &[1, 1]).normalize();
        assert_eq!(t, QuotientType::cyc(2, &[1, 1]));
        assert_eq!(k, vec![1, 1]);

        let (t, k) = QuotientType::cyc(2, &[1, 0]).normalize();
        assert!(t.is_smooth());
        assert_eq!(k, vec![2, 1]);

        let (t, k) = QuotientType::cyc(4, &[2, 1]).normalize();
        assert_eq!(t, QuotientType::cyc(2, &[1, 1]));
        assert_eq!(k, vec![1, 2]);
        assert_eq!(t.orders(), &[2]);
        assert_eq!(t.weights(), &[vec![1, 1]]);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(QuotientType::smooth(1).multiplicity(&[7]).unwrap(), 7);
        assert_eq!(QuotientType::cyc(2, &[1, 1]).multiplicity(&[2, 2]).unwrap(), 2);
        let two = QuotientType::new(vec![10, 10], vec![vec![1, -3], vec![-4, 2]], 2).unwrap();
        assert_eq!(two.multiplicity(&[8, 6]).unwrap(), 1);
        assert!(QuotientType::cyc(2, &[1, 1]).multiplicity(&[1, 0]).is_err());
    }

    #[test]
    fn enumeration_agrees() {
        let t = QuotientType::cyc(2, &[1, 1]);
        assert_eq!(t.multiplicity_by_enumeration(&[2, 2], 100), 2);
        let two = QuotientType::new(vec![10, 10], vec![vec![1, -3], vec![-4, 2]], 2).unwrap();
        assert_eq!(two.multiplicity_by_enumeration(&[8, 6], 1000), 1);
    }

    #[test]
    fn parse_and_print() {
        let t = QuotientType::parse("10:1,-3/10:-4,2").unwrap();
        assert_eq!(t.orders(), &[10, 10]);
        assert_eq!(t.to_compact(), "10:1,-3/10:-4,2");
        assert_eq!(format!("{}", QuotientType::cyc(3, &[1, 2])), "X(3; 1, 2)");
        assert!(QuotientType::parse("3:1,x").is_err());
    }

    #[test]
    fn canonical_cyclic_is_minimal() {
        let t = QuotientType::cyc(5, &[3, 1]).canonical();
        assert_eq!(t.weights(), &[vec![1, 2]]);
    }
}
