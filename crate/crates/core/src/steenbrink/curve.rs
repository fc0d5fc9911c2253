//! The spectral sequence for curves: full `E_1` page and graded pieces.

use std::collections::BTreeMap;

use num_rational::BigRational;


use super::page::{Arrow, ArrowKind, E1Entry, E1Page};
use super::report::{GradedPiece, MHSReport, SymbolicCyclo};
use crate::error::{Error, Result};
use crate::exactalg::{charpoly_exact, cyclo_factor, kernel_basis, poly::to_integer_poly, rank, solve, CycloProduct, Matrix};
use crate::monodromy::{acampo_charpoly, complex_cohomology_action, cyclic_cover_curve, jordan_from_graded, perm_charpoly, CohomologyMode, CurveCover, GradedCharData, Restrict};
use crate::semistable::{build_dual_complex, component_count, SemistableComplex};
use crate::strata::{ComponentId, ValidatedDivisor};

/// Preimage of each exceptional curve as a cyclic cover of the component.
pub fn exceptional_covers(v: &ValidatedDivisor) -> Result<Vec<(ComponentId, CurveCover)>> {
    let mut out = Vec::new();
    for id in v.exceptional_ids() {
        let generic: Vec<i64> = v.strata().filter(|(_, s, _)| s.components == [id] && s.dim == 1).map(|(_, _, m)| m).collect();
        let [sheets] = generic[..] else {
            return Err(Error::Validation(format!("component {id} needs exactly one generic stratum")));
        };
        let mut fibers = Vec::new();
        for (_, s, m) in v.strata().filter(|(_, s, _)| s.contains(id) && s.dim == 0) {
            fibers.extend(std::iter::repeat_n(m, s.euler as usize));
        }
        let base: i64 = v.strata().filter(|(_, s, _)| s.contains(id)).map(|(_, s, _)| s.euler).sum();
        out.push((id, cyclic_cover_curve(sheets, &fibers, base, component_count(v, id)?)?));
    }
    Ok(out)
}

/// `^0 delta: H^0(D^[1]) -> H^2(D_+^[0])`, rows indexed by exceptional vertices.
pub fn gysin_curve(k: &SemistableComplex) -> (Matrix<BigRational>, Vec<usize>) {
    let rows: Vec<usize> = (0..k.count(0)).filter(|&i| k.cells[0][i].exceptional).collect();
    let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(r, &i)| (i, r)).collect();
    let mut m: Matrix<BigRational> = Matrix::zeros(rows.len(), k.count(1));
    for (e, faces) in k.boundary[1].iter().enumerate() {
        for &(f, s) in faces {
            if let Some(&r) = index.get(&f) {
                m[(r, e)] = BigRational::from_integer(s.into());
            }
        }
    }
    (m, rows)
}

fn restricted_action(deck: &Matrix<BigRational>, basis: &[Vec<BigRational>], e: i64) -> Result<CycloProduct> {
    if basis.is_empty() {
        return Ok(CycloProduct::one());
    }
    let dim = deck.rows();
    let frame = Matrix::from_columns(basis, dim);
    let mut induced: Matrix<BigRational> = Matrix::zeros(basis.len(), basis.len());
    for (j, v) in basis.iter().enumerate() {
        let x = solve(&frame, &deck.mul_vec(v)).ok_or_else(|| Error::Inconsistent("subspace is not deck invariant".into()))?;
        for (i, xi) in x.into_iter().enumerate() {
            induced[(i, j)] = xi;
        }
    }
    let p = to_integer_poly(&charpoly_exact(&induced)).ok_or_else(|| Error::Inconsistent("non-integral characteristic polynomial".into()))?;
    cyclo_factor(&p, e as u64)
}

fn perm_on(k: &SemistableComplex, q: usize, keep: impl Fn(usize) -> bool) -> CycloProduct {
    let idx: Vec<usize> = (0..k.count(q)).filter(|&i| keep(i)).collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    perm_charpoly(&idx.iter().map(|i| pos[&k.deck[q][*i]]).collect::<Vec<_>>())
}

pub fn e1_curve(v: &ValidatedDivisor, k: &SemistableComplex) -> Result<E1Page> {
    if k.n != 1 {
        return Err(Error::Validation("curve page needs n = 1".into()));
    }
    let exc = |i: usize| k.cells[0][i].exceptional;
    let mut genus = 0;
    for c in k.cells[0].iter().filter(|c| c.exceptional) {
        genus += c.genus.ok_or_else(|| Error::Validation(format!("vertex {} has no genus", c.name)))?;
    }
    let h1 = exceptional_covers(v)?.iter().fold(CycloProduct::one(), |acc, (_, c)| &acc * &c.h1);
    let plus = k.restrict_exceptional();
    let (gysin, _) = gysin_curve(k);
    let nv = plus.count(0);
    let entries = vec![
        E1Entry::new(0, 0, 0, "H^0(D+^[0])", nv, perm_on(k, 0, exc)),
        E1Entry::new(0, 1, 1, "H^0(D+^[1])", plus.count(1), perm_charpoly(&plus.deck[1])),
        E1Entry::new(1, 0, 0, "H^1(D+^[0])", 2 * genus as usize, h1),
        E1Entry::new(2, 0, 0, "H^2(D+^[0])", nv, perm_on(k, 0, exc)),
        E1Entry::new(2, -1, 0, "H^0(D^[1])", k.count(1), perm_charpoly(&k.deck[1])),
    ];
    let arrows = vec![
        Arrow { from: (0, 0), to: (0, 1), kind: ArrowKind::MayerVietoris(0), rank: Some(rank(&plus.coboundary(0))) },
        Arrow { from: (2, -1), to: (2, 0), kind: ArrowKind::Gysin(0), rank: Some(rank(&gysin)) },
    ];
    Ok(E1Page { n: 1, entries, arrows })
}

/// Graded pieces `gr_0, gr_1, gr_2` of `H^1(F)` with their monodromy.
pub fn mhs_curve(v: &ValidatedDivisor) -> Result<MHSReport> {
    if v.n() != 1 {
        return Err(Error::Validation("curve report needs n = 1".into()));
    }
    let delta = acampo_charpoly(v)?;
    let k = build_dual_complex(v)?;
    k.check()?;
    let h = complex_cohomology_action(&k, Restrict::Exceptional, CohomologyMode::Exact)?;
    let (gr0, d0) = (h.h[1].clone(), h.dims[1]);

    let (gysin, _) = gysin_curve(&k);
    let kernel = kernel_basis(&gysin);
    let gr2 = restricted_action(&k.deck_matrix(1), &kernel, k.e)?;
    let d2 = kernel.len();

    let covers = exceptional_covers(v)?;
    let gr1_covers = covers.iter().fold(CycloProduct::one(), |acc, (_, c)| &acc * &c.h1);
    let genus: i64 = covers.iter().map(|(_, c)| c.genus * c.components).sum();
    let gr1 = &delta / &(&gr0 * &gr2);
    if !gr1.is_polynomial() {
        return Err(Error::Inconsistent(format!("gr_1 characteristic polynomial {gr1} is not a polynomial")));
    }
    if gr1 != gr1_covers || gr1.degree() != 2 * genus {
        return Err(Error::Inconsistent(format!("gr_1 from Delta(t) is {gr1}, covers give {gr1_covers} on genus {genus}")));
    }
    let d1 = 2 * genus as usize;
    // Delta_l = gr^{!=1}_{1-l} (+) gr^{1}_{2-l}
    let gr = [&gr0, &gr1, &gr2];
    let part = |w: i64, unipotent: bool| -> CycloProduct {
        if !(0..=2).contains(&w) {
            return CycloProduct::one();
        }
        let g = gr[w as usize];
        if unipotent {
            g.unipotent_part()
        } else {
            g.non_unipotent_part()
        }
    };
    let levels: BTreeMap<usize, CycloProduct> = (0..=3usize).map(|l| (l, &part(1 - l as i64, false) * &part(2 - l as i64, true))).collect();
    let (blocks, spec) = jordan_from_graded(&GradedCharData { levels })?;
    let graded = vec![
        GradedPiece { weight: 0, dim: Some(d0), delta: Some(SymbolicCyclo::known(gr0)), hodge: None },
        GradedPiece { weight: 1, dim: Some(d1), delta: Some(SymbolicCyclo::known(gr1)), hodge: Some((genus as usize, genus as usize)) },
        GradedPiece { weight: 2, dim: Some(d2), delta: Some(SymbolicCyclo::known(gr2)), hodge: None },
    ];
    if (d0 + d1 + d2) as i64 != delta.degree() {
        return Err(Error::Inconsistent(format!("graded dimensions {d0} + {d1} + {d2} differ from deg Delta = {}", delta.degree())));
    }
    Ok(MHSReport {
        n: 1,
        delta,
        graded,
        block_polynomials: blocks.into_iter().map(|(l, p)| (l, SymbolicCyclo::known(p))).collect(),
        jordan: Some(spec),
        notes: Vec::new(),
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{gen_one_branch, gen_two_branch, validate};
    use num_integer::Integer;

    #[test]
    fn cusp_page() {
        let v = validate(gen_one_branch(2, 3).unwrap()).unwrap();
        let k = build_dual_complex(&v).unwrap();
        let page = e1_curve(&v, &k).unwrap();
        let dims: Vec<usize> = page.entries.iter().map(|e| e.dim.unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 2, 1, 1]);
        assert_eq!(page.arrows[1].rank, Some(1));
        assert_eq!(page.euler_characteristic(), Some(1 - 2));
        let r = mhs_curve(&v).unwrap();
        assert_eq!(r.dims(), vec![Some(0), Some(2), Some(0)]);
        assert_eq!(r.delta_of(1).unwrap().known, CycloProduct::from_phi_exponents([(6, 1)]));
        assert!(r.block_polynomials.get(&2).is_none());
    }

    #[test]
    fn two_branch_report() {
        for (p, q, r, s) in [(2i64, 3i64, 4i64, 1i64), (2, 1, 5, 2), (3, 1, 10, 3), (4, 1, 9, 2)] {
            let v = validate(gen_two_branch(p, q, r, s).unwrap()).unwrap();
            let rep = mhs_curve(&v).unwrap();
            let g = p.gcd(&s);
            let g1 = ((p - 1) * (q + s) - g + 1) / 2;
            let g2 = ((s - 1) * (p + r) - g + 1) / 2;
            assert_eq!(rep.dims(), vec![Some(g as usize - 1), Some(2 * (g1 + g2) as usize), Some(g as usize)]);
            let gr0 = &CycloProduct::t_minus_one_pow(g as u64, 1) / &CycloProduct::t_minus_one_pow(1, 1);
            assert_eq!(rep.delta_of(0).unwrap().known, gr0);
            assert_eq!(rep.block_polynomials.get(&2).map(|b| b.known.clone()).unwrap_or_default(), gr0);
            let k = build_dual_complex(&v).unwrap();
            let page = e1_curve(&v, &k).unwrap();
            assert_eq!(page.euler_characteristic(), Some(1 - rep.delta.degree()));
        }
    }
}
