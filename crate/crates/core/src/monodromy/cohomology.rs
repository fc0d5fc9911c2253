//! Deck action on the cohomology of the dual complex.

use num_rational::BigRational;

use super::acampo::perm_charpoly;
use crate::error::{Error, Result};
use crate::exactalg::{charpoly_exact, complement_in, cyclo_factor, kernel_basis, poly::to_integer_poly, solve, CycloProduct, Matrix};
use crate::semistable::SemistableComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restrict {
    /// Only cells of the exceptional part `D_+`.
    Exceptional,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CohomologyMode {
    /// Kernel modulo image with the induced deck matrix.
    Exact,
    /// Assumes `H^q = 0` for `0 < q < n` and uses the equivariant Euler characteristic.
    Vanishing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCohomology {
    /// `Delta_{H^q}` for `q = 0..=n`.
    pub h: Vec<CycloProduct>,
    pub dims: Vec<usize>,
    /// Characteristic polynomials on the cochain groups.
    pub cochains: Vec<CycloProduct>,
}

fn to_cyclo(m: &Matrix<BigRational>, e: i64) -> Result<CycloProduct> {
    let p = to_integer_poly(&charpoly_exact(m)).ok_or_else(|| Error::Inconsistent("deck action has a non-integral characteristic polynomial".into()))?;
    cyclo_factor(&p, e as u64)
}

fn exact_h(k: &SemistableComplex, q: usize) -> Result<(CycloProduct, usize)> {
    let dim = k.count(q);
    if dim == 0 {
        return Ok((CycloProduct::one(), 0));
    }
    let cocycles = if q < k.n { kernel_basis(&k.coboundary(q)) } else { (0..dim).map(|i| Matrix::<BigRational>::one_hot(dim, i)).collect() };
    let coboundaries: Vec<Vec<BigRational>> = if q == 0 {
        Vec::new()
    } else {
        let d = k.coboundary(q - 1);
        let cols: Vec<Vec<BigRational>> = (0..d.cols()).map(|j| d.column(j)).collect();
        complement_in(&[], &cols, dim)
    };
    let h = complement_in(&coboundaries, &cocycles, dim);
    if h.is_empty() {
        return Ok((CycloProduct::one(), 0));
    }
    let mut basis = coboundaries.clone();
    basis.extend(h.iter().cloned());
    let frame = Matrix::from_columns(&basis, dim);
    let deck = k.deck_matrix(q);
    let off = coboundaries.len();
    let mut induced = Matrix::zeros(h.len(), h.len());
    for (j, v) in h.iter().enumerate() {
        let image = deck.mul_vec(v);
        let x = solve(&frame, &image).ok_or_else(|| Error::Inconsistent(format!("deck action does not preserve cocycles in degree {q}")))?;
        for i in 0..h.len() {
            induced[(i, j)] = x[off + i].clone();
        }
    }
    Ok((to_cyclo(&induced, k.e)?, h.len()))
}

pub fn complex_cohomology_action(k: &SemistableComplex, restrict: Restrict, mode: CohomologyMode) -> Result<ComplexCohomology> {
    let restricted;
    let k = match restrict {
        Restrict::Exceptional => {
            restricted = k.restrict_exceptional();
            &restricted
        }
        Restrict::All => k,
    };
    let n = k.n;
    let cochains: Vec<CycloProduct> = (0..=n).map(|q| perm_charpoly(&k.deck[q])).collect();
    let (h0, d0) = exact_h(k, 0)?;
    let mut h = vec![h0];
    let mut dims = vec![d0];
    match mode {
        CohomologyMode::Exact => {
            for q in 1..=n {
                let (hq, dq) = exact_h(k, q)?;
                h.push(hq);
                dims.push(dq);
            }
        }
        CohomologyMode::Vanishing => {
            let mut euler = CycloProduct::one();
            for (q, c) in cochains.iter().enumerate() {
                euler = if q % 2 == 0 { &euler * c } else { &euler / c };
            }
            euler = &euler / &h[0];
            let top = if n % 2 == 0 { euler } else { euler.inverse() };
            if !top.is_polynomial() {
                return Err(Error::Inconsistent(format!("vanishing hypothesis gives a non-polynomial H^{n}: {top}")));
            }
            for _ in 1..n {
                h.push(CycloProduct::one());
                dims.push(0);
            }
            dims.push(top.degree() as usize);
            h.push(top);
        }
    }
    Ok(ComplexCohomology { h, dims, cochains })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semistable::{build_dual_complex, LevelB, LevelBEdge, LevelBVertex};
    use crate::strata::{gen_two_branch, validate};
    use num_integer::Integer;

    fn banana(m: i64) -> SemistableComplex {
        let v = |name: &str| LevelBVertex { name: name.into(), copies: 1, genus: None, exceptional: true };
        LevelB { n: 1, e: None, vertices: vec![v("A"), v("B")], edges: vec![LevelBEdge { ends: [0, 1], orbit: m }] }.build().unwrap()
    }

    #[test]
    fn banana_graph() {
        for m in 1..7 {
            let c = complex_cohomology_action(&banana(m), Restrict::All, CohomologyMode::Exact).unwrap();
            let want = &CycloProduct::t_minus_one_pow(m as u64, 1) / &CycloProduct::t_minus_one_pow(1, 1);
            assert_eq!(c.h[1], want);
            assert_eq!(c.h[0], CycloProduct::t_minus_one_pow(1, 1));
            let v = complex_cohomology_action(&banana(m), Restrict::All, CohomologyMode::Vanishing).unwrap();
            assert_eq!(v, c);
        }
    }

    #[test]
    fn two_branch_h1() {
        for (p, q, r, s) in [(2, 3, 4, 1), (2, 1, 5, 2), (4, 1, 9, 2), (3, 1, 10, 3), (6, 1, 25, 4)] {
            let sd = gen_two_branch(p, q, r, s).unwrap();
            let k = build_dual_complex(&validate(sd).unwrap()).unwrap();
            let c = complex_cohomology_action(&k, Restrict::Exceptional, CohomologyMode::Exact).unwrap();
            let g = p.gcd(&s) as u64;
            assert_eq!(c.h[1], &CycloProduct::t_minus_one_pow(g, 1) / &CycloProduct::t_minus_one_pow(1, 1));
        }
    }

    #[test]
    fn tree() {
        let v = |name: &str| LevelBVertex { name: name.into(), copies: 1, genus: None, exceptional: true };
        let k = LevelB {
            n: 1,
            e: None,
            vertices: vec![v("A"), v("B"), v("C")],
            edges: vec![LevelBEdge { ends: [0, 1], orbit: 1 }, LevelBEdge { ends: [1, 2], orbit: 1 }],
        }
        .build()
        .unwrap();
        let c = complex_cohomology_action(&k, Restrict::All, CohomologyMode::Exact).unwrap();
        assert!(c.h[1].is_one());
        assert_eq!(c.dims, vec![1, 0]);
        assert_eq!(c.h[0], CycloProduct::t_minus_one_pow(1, 1));
    }
}
