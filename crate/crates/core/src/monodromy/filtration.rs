//! Weight filtration of a nilpotent operator and Jordan block bookkeeping.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{charpoly_exact, cyclo_factor, cyclotomic, divisors, euler_phi, poly::to_integer_poly, rank, CycloProduct, Matrix};

/// Counts of Jordan blocks keyed by `(eigenvalue order d, block size l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct JordanSpectrum(pub BTreeMap<(u64, usize), u64>);

impl JordanSpectrum {
    /// `sum l phi(d) count`.
    pub fn dimension(&self) -> u64 {
        self.0.iter().map(|(&(d, l), &c)| l as u64 * euler_phi(d) * c).sum()
    }

    pub fn count(&self, d: u64, l: usize) -> u64 {
        self.0.get(&(d, l)).copied().unwrap_or(0)
    }

    pub fn max_block(&self) -> usize {
        self.0.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Polynomial whose roots are the eigenvalues of the size-`l` blocks.
    pub fn block_polynomial(&self, l: usize) -> CycloProduct {
        CycloProduct::from_phi_exponents(self.0.iter().filter(|(k, _)| k.1 == l).map(|(k, &c)| (k.0, c as i64)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    /// `dim gr^W_level`.
    pub graded: BTreeMap<i64, usize>,
    /// `dim W_level`.
    pub filtration: BTreeMap<i64, usize>,
    /// `J_l`: number of Jordan blocks of size `l`.
    pub blocks: BTreeMap<usize, usize>,
}

fn rank_powers(m: &Matrix<BigRational>, upto: usize) -> Vec<usize> {
    let mut ranks = vec![m.rows()];
    let mut p = Matrix::identity(m.rows());
    for _ in 0..upto {
        p = &p * m;
        ranks.push(rank(&p));
    }
    ranks
}

/// Block counts from ranks of powers: `r_{l-1} - 2 r_l + r_{l+1}`.
fn blocks_from_ranks(r: &[usize]) -> BTreeMap<usize, i64> {
    (1..r.len() - 1)
        .map(|l| (l, r[l - 1] as i64 - 2 * r[l] as i64 + r[l + 1] as i64))
        .filter(|&(_, c)| c != 0)
        .collect()
}

/// Weight filtration of a nilpotent `nmat` centred at `k`.
pub fn weight_filtration(nmat: &Matrix<BigRational>, k: i64) -> Result<WeightFiltration> {
    let dim = nmat.rows();
    let r = rank_powers(nmat, dim + 1);
    if r[dim] != 0 {
        return Err(Error::Validation("operator is not nilpotent".into()));
    }
    let mut blocks = BTreeMap::new();
    let mut graded: BTreeMap<i64, usize> = BTreeMap::new();
    for (l, c) in blocks_from_ranks(&r) {
        let c = c as usize;
        blocks.insert(l, c);
        // a block of size l fills the levels k-l+1, k-l+3, .., k+l-1
        for i in 0..l as i64 {
            *graded.entry(k - l as i64 + 1 + 2 * i).or_default() += c;
        }
    }
    let mut filtration = BTreeMap::new();
    let mut acc = 0;
    for (&level, &d) in &graded {
        acc += d;
        filtration.insert(level, acc);
    }
    Ok(WeightFiltration { graded, filtration, blocks })
}

impl WeightFiltration {
    pub fn graded_dim(&self, level: i64) -> usize {
        self.graded.get(&level).copied().unwrap_or(0)
    }

    /// `J_l = dim gr_{k-l+1} - dim gr_{k-l-1}`.
    pub fn j_from_graded(&self, k: i64, l: usize) -> i64 {
        self.graded_dim(k - l as i64 + 1) as i64 - self.graded_dim(k - l as i64 - 1) as i64
    }
}

/// Jordan spectrum of an operator whose eigenvalues are `e`-th roots of unity.
pub fn jordan_blocks_matrix(m: &Matrix<BigRational>, e: u64) -> Result<JordanSpectrum> {
    let dim = m.rows();
    let cp = to_integer_poly(&charpoly_exact(m)).ok_or_else(|| Error::Inconsistent("non-integral characteristic polynomial".into()))?;
    let factors = cyclo_factor(&cp, e)?;
    let mut out = BTreeMap::new();
    for d in divisors(e) {
        let mult = factors.phi_exponent(d);
        if mult <= 0 {
            continue;
        }
        let phi = cyclotomic(d).map(|c| BigRational::from_integer(BigInt::clone(c)));
        let a = phi.eval_matrix(m);
        let r = rank_powers(&a, mult as usize + 1);
        let f = euler_phi(d) as i64;
        for (l, c) in blocks_from_ranks(&r) {
            if c % f != 0 || c < 0 {
                return Err(Error::Inconsistent(format!("rank data for order {d} is not a multiple of phi({d})")));
            }
            out.insert((d, l), (c / f) as u64);
        }
    }
    let spec = JordanSpectrum(out);
    debug_assert_eq!(spec.dimension(), dim as u64);
    Ok(spec)
}

/// Characteristic polynomials `Delta_l` of the graded pieces for `l >= 0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedCharData {
    pub levels: BTreeMap<usize, CycloProduct>,
}

impl GradedCharData {
    pub fn get(&self, l: usize) -> CycloProduct {
        self.levels.get(&l).cloned().unwrap_or_else(CycloProduct::one)
    }
}

/// Block polynomials `B_l = Delta_{l-1} / Delta_{l+1}` and the resulting spectrum.
pub fn jordan_from_graded(g: &GradedCharData) -> Result<(BTreeMap<usize, CycloProduct>, JordanSpectrum)> {
    let top = g.levels.keys().max().copied().unwrap_or(0);
    let mut polys = BTreeMap::new();
    let mut spec = BTreeMap::new();
    for l in 1..=top + 1 {
        let b = &g.get(l - 1) / &g.get(l + 1);
        if !b.is_polynomial() {
            return Err(Error::Inconsistent(format!("size-{l} block polynomial {b} has negative exponents")));
        }
        for (&d, &c) in b.phi_exponents() {
            if c > 0 {
                spec.insert((d, l), c as u64);
            }
        }
        if !b.is_one() {
            polys.insert(l, b);
        }
    }
    Ok((polys, JordanSpectrum(spec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_matrix;

    #[test]
    fn single_block() {
        let n = rat_matrix(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let w = weight_filtration(&n, 1).unwrap();
        assert_eq!(w.graded, BTreeMap::from([(-1, 1), (1, 1), (3, 1)]));
        assert_eq!(w.blocks, BTreeMap::from([(3, 1)]));
        assert_eq!(w.j_from_graded(1, 3), 1);
    }

    #[test]
    fn zero_operator() {
        let w = weight_filtration(&Matrix::zeros(5, 5), 0).unwrap();
        assert_eq!(w.graded, BTreeMap::from([(0, 5)]));
        assert_eq!(w.blocks, BTreeMap::from([(1, 5)]));
        assert!(weight_filtration(&Matrix::identity(2), 0).is_err());
    }

    #[test]
    fn matrices() {
        let c6 = rat_matrix(&[vec![0, -1], vec![1, 1]]);
        assert_eq!(jordan_blocks_matrix(&c6, 6).unwrap().0, BTreeMap::from([((6, 1), 1)]));
        assert_eq!(jordan_blocks_matrix(&Matrix::identity(4), 1).unwrap().0, BTreeMap::from([((1, 1), 4)]));
        let j = rat_matrix(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(jordan_blocks_matrix(&j, 1).unwrap().0, BTreeMap::from([((1, 2), 1)]));
    }

    #[test]
    fn graded() {
        let d = CycloProduct::from_phi_exponents([(6, 1)]);
        let g = GradedCharData { levels: BTreeMap::from([(0, d.clone())]) };
        let (polys, spec) = jordan_from_graded(&g).unwrap();
        assert_eq!(polys, BTreeMap::from([(1, d)]));
        assert_eq!(spec.block_polynomial(2), CycloProduct::one());
        let bad = GradedCharData { levels: BTreeMap::from([(2, CycloProduct::t_minus_one_pow(1, 1))]) };
        assert!(jordan_from_graded(&bad).is_err());
    }
}
