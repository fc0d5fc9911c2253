//! The spectral sequence for surfaces: page layout, weights 0, 1 and 4.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::page::{Arrow, ArrowKind, E1Entry, E1Page};
use super::report::{GradedPiece, MHSReport, SymbolicCyclo};
use super::solver::column_exact_solver;
use crate::error::{Error, Result};
use crate::exactalg::{rank, CycloProduct, Matrix};
use crate::monodromy::{acampo_charpoly, complex_cohomology_action, cyclic_cover_curve, perm_charpoly, CohomologyMode, CurveCover, Restrict};
use crate::semistable::{build_dual_complex, closure_gcd, component_count, SemistableComplex};
use crate::strata::{ComponentId, ValidatedDivisor};

/// Data about the covering surfaces that the strata do not determine.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceAux {
    /// `Delta_{H^1}` of the preimage of an exceptional component, by name, as
    /// `{m: e}` exponents of `(t^m - 1)`; `null` keeps it symbolic. Unlisted
    /// components have `H^1 = 0`.
    #[serde(default)]
    pub h1: BTreeMap<String, Option<BTreeMap<u64, i64>>>,
    /// Betti numbers `b_0..b_4` of the preimage of a component, by name.
    #[serde(default)]
    pub betti: BTreeMap<String, [i64; 5]>,
}

impl SurfaceAux {
    pub fn symbol(name: &str) -> String {
        format!("Delta_H1[{name}]")
    }

    /// `Delta_{H^1}` of the preimage of `name`.
    pub fn h1_of(&self, name: &str) -> SymbolicCyclo {
        match self.h1.get(name) {
            None => SymbolicCyclo::default(),
            Some(None) => SymbolicCyclo::symbol(&Self::symbol(name), 1),
            Some(Some(e)) => SymbolicCyclo::known(CycloProduct::from_exponents(e.iter().map(|(&m, &x)| (m, x)))),
        }
    }
}

/// A double curve `E_i ∩ E_j` with the cover of it.
#[derive(Debug, Clone)]
pub struct DoubleCurve {
    pub components: Vec<ComponentId>,
    pub exceptional: bool,
    pub cover: CurveCover,
}

/// Covers of the double curves, assuming each is connected; `exceptional_only` skips those on the strict transform.
pub fn double_curve_covers(v: &ValidatedDivisor, exceptional_only: bool) -> Result<Vec<DoubleCurve>> {
    let pairs: BTreeSet<Vec<ComponentId>> = v
        .strata()
        .filter(|(_, s, _)| s.components.len() == 2 && s.dim == 1)
        .filter(|(_, s, _)| !exceptional_only || s.components.iter().all(|&i| v.is_exceptional(i)))
        .map(|(_, s, _)| s.components.clone())
        .collect();
    let mut out = Vec::new();
    for ids in pairs {
        let generic: Vec<i64> = v.strata().filter(|(_, s, _)| s.components == ids && s.dim == 1).map(|(_, _, m)| m).collect();
        let [sheets] = generic[..] else {
            return Err(Error::Validation(format!("double curve {ids:?} needs exactly one generic stratum")));
        };
        let contains = |s: &crate::strata::Stratum| ids.iter().all(|i| s.contains(*i));
        let mut fibers = Vec::new();
        for (_, s, m) in v.strata().filter(|(_, s, _)| contains(s) && s.dim == 0) {
            fibers.extend(std::iter::repeat_n(m, s.euler as usize));
        }
        let base: i64 = v.strata().filter(|(_, s, _)| contains(s)).map(|(_, s, _)| s.euler).sum();
        let cover = cyclic_cover_curve(sheets, &fibers, base, closure_gcd(v, &ids))?;
        out.push(DoubleCurve { exceptional: ids.iter().all(|&i| v.is_exceptional(i)), components: ids, cover });
    }
    Ok(out)
}

fn restricted_perm(k: &SemistableComplex, q: usize, keep: impl Fn(usize) -> bool) -> CycloProduct {
    let idx: Vec<usize> = (0..k.count(q)).filter(|&i| keep(i)).collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    perm_charpoly(&idx.iter().map(|i| pos[&k.deck[q][*i]]).collect::<Vec<_>>())
}

/// Incidence of `q`-cells into `(q-1)`-cells, restricted to the kept target cells.
fn incidence(k: &SemistableComplex, q: usize, target: impl Fn(usize) -> bool) -> Matrix<BigRational> {
    let rows: Vec<usize> = (0..k.count(q - 1)).filter(|&i| target(i)).collect();
    let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, &b)| (b, a)).collect();
    let mut m: Matrix<BigRational> = Matrix::zeros(rows.len(), k.count(q));
    for (c, faces) in k.boundary[q].iter().enumerate() {
        for &(f, s) in faces {
            if let Some(&r) = pos.get(&f) {
                m[(r, c)] = BigRational::from_integer(s.into());
            }
        }
    }
    m
}

/// Betti numbers of the preimage of each exceptional component.
fn surface_betti(v: &ValidatedDivisor, aux: &SurfaceAux) -> Result<BTreeMap<ComponentId, [i64; 5]>> {
    let mut out = BTreeMap::new();
    let mut missing = Vec::new();
    for id in v.exceptional_ids() {
        let c = v.component(id)?;
        if let Some(b) = aux.betti.get(&c.name) {
            out.insert(id, *b);
            continue;
        }
        let h1 = aux.h1_of(&c.name);
        if !h1.is_concrete() {
            missing.push(c.name.clone());
            continue;
        }
        let b0 = component_count(v, id)?;
        let b1 = h1.known.degree();
        let chi: i64 = v.strata().filter(|(_, s, _)| s.contains(id)).map(|(_, s, m)| m * s.euler).sum();
        out.insert(id, [b0, b1, chi - 2 * b0 + 2 * b1, b1, b0]);
    }
    if !missing.is_empty() {
        return Err(Error::Validation(format!("Betti numbers needed for the preimages of {}", missing.join(", "))));
    }
    Ok(out)
}

pub fn e1_surface(v: &ValidatedDivisor, k: &SemistableComplex, aux: &SurfaceAux) -> Result<E1Page> {
    if k.n != 2 {
        return Err(Error::Validation("surface page needs n = 2".into()));
    }
    let betti = surface_betti(v, aux)?;
    for (id, b) in &betti {
        let declared = component_count(v, *id)?;
        if b[0] != declared || b[4] != declared {
            return Err(Error::Inconsistent(format!("component {id}: b_0 = {}, b_4 = {} but the preimage has {declared} pieces", b[0], b[4])));
        }
    }
    let curves = double_curve_covers(v, false)?;
    let sum_b = |i: usize| betti.values().map(|b| b[i] as usize).sum::<usize>();
    let curve_h1 = |plus: bool| -> (usize, CycloProduct) {
        let sel = curves.iter().filter(|c| !plus || c.exceptional);
        let dim = sel.clone().map(|c| (2 * c.cover.genus * c.cover.components) as usize).sum();
        (dim, sel.fold(CycloProduct::one(), |acc, c| &acc * &c.cover.h1))
    };
    let exc0 = |i: usize| k.cells[0][i].exceptional;
    let exc1 = |i: usize| k.cells[1][i].exceptional;
    let exc2 = |i: usize| k.cells[2][i].exceptional;
    let compact1 = |i: usize| k.cells[1][i].compact;
    let count = |q: usize, f: &dyn Fn(usize) -> bool| (0..k.count(q)).filter(|&i| f(i)).count();
    let unknown = |p, q, layer, label: &str, dim: usize| E1Entry { p, q, layer, label: label.to_string(), dim: Some(dim), delta: None };

    let (h1_all, d1_all) = curve_h1(false);
    let (h1_plus, d1_plus) = curve_h1(true);
    let mut entries = vec![
        E1Entry::new(0, 0, 0, "H^0(D+^[0])", count(0, &exc0), restricted_perm(k, 0, exc0)),
        unknown(1, 0, 0, "H^1(D+^[0])", sum_b(1)),
        unknown(2, 0, 0, "H^2(D+^[0])", sum_b(2)),
        unknown(3, 0, 0, "H^3(D+^[0])", sum_b(3)),
        E1Entry::new(4, 0, 0, "H^4(D+^[0])", count(0, &exc0), restricted_perm(k, 0, exc0)),
        E1Entry::new(2, -1, 0, "H^0(D^[1])", count(1, &compact1), restricted_perm(k, 1, compact1)),
        E1Entry::new(3, -1, 0, "H^1(D^[1])", h1_all, d1_all),
        E1Entry::new(4, -1, 0, "H^2(D^[1])", count(1, &compact1), restricted_perm(k, 1, compact1)),
        E1Entry::new(4, -2, 0, "H^0(D^[2])", k.count(2), perm_charpoly(&k.deck[2])),
        E1Entry::new(0, 1, 1, "H^0(D+^[1])", count(1, &exc1), restricted_perm(k, 1, exc1)),
        E1Entry::new(1, 1, 1, "H^1(D+^[1])", h1_plus, d1_plus),
        E1Entry::new(2, 1, 1, "H^2(D+^[1])", count(1, &exc1), restricted_perm(k, 1, exc1)),
        E1Entry::new(2, 0, 1, "H^0(D^[2])", k.count(2), perm_charpoly(&k.deck[2])),
        E1Entry::new(0, 2, 2, "H^0(D+^[2])", count(2, &exc2), restricted_perm(k, 2, exc2)),
    ];
    // H^1 of the surfaces is known exactly when every symbol is resolved
    let h1_surf = v.exceptional_ids().iter().try_fold(SymbolicCyclo::default(), |acc, &id| Ok::<_, Error>(acc.mul(&aux.h1_of(&v.component(id)?.name))))?;
    if h1_surf.is_concrete() {
        entries[1].delta = Some(h1_surf.known.clone());
        entries[3].delta = Some(h1_surf.known);
    }
    let plus = k.restrict_exceptional();
    let arrows = vec![
        Arrow { from: (0, 0), to: (0, 1), kind: ArrowKind::MayerVietoris(0), rank: Some(rank(&plus.coboundary(0))) },
        Arrow { from: (0, 1), to: (0, 2), kind: ArrowKind::MayerVietoris(1), rank: Some(rank(&plus.coboundary(1))) },
        Arrow { from: (4, -2), to: (4, -1), kind: ArrowKind::Gysin(0), rank: Some(rank(&incidence(k, 2, compact1))) },
        Arrow { from: (4, -1), to: (4, 0), kind: ArrowKind::Gysin(0), rank: Some(rank(&incidence(k, 1, exc0))) },
    ];
    Ok(E1Page { n: 2, entries, arrows })
}

/// Weights 0, 1 and 4 of `H^2(F)`; weights 2 and 3 are left open.
pub fn mhs_surface_partial(v: &ValidatedDivisor, aux: &SurfaceAux) -> Result<MHSReport> {
    if v.n() != 2 {
        return Err(Error::Validation("surface report needs n = 2".into()));
    }
    let delta = acampo_charpoly(v)?;
    let k = build_dual_complex(v)?;
    k.check()?;
    let h = complex_cohomology_action(&k, Restrict::Exceptional, CohomologyMode::Exact)?;
    let (gr0, d0) = (h.h[2].clone(), h.dims[2]);

    // fifth column: 0 -> gr_4 -> H^0(D^[2]) -> H^2(D^[1]) -> H^4(D+^[0]) -> 0
    let compact1 = |i: usize| k.cells[1][i].compact;
    let exc0 = |i: usize| k.cells[0][i].exceptional;
    let t2 = k.count(2) as i64;
    let c1 = (0..k.count(1)).filter(|&i| compact1(i)).count() as i64;
    let s0 = (0..k.count(0)).filter(|&i| exc0(i)).count() as i64;
    let d4 = column_exact_solver(&[None, Some(t2), Some(c1), Some(s0)])? as usize;
    let gr4 = &(&perm_charpoly(&k.deck[2]) * &restricted_perm(&k, 0, exc0)) / &restricted_perm(&k, 1, compact1);
    if !gr4.is_polynomial() || gr4.degree() != d4 as i64 {
        return Err(Error::Inconsistent(format!("gr_4 characteristic polynomial {gr4} does not match dimension {d4}")));
    }
    if gr0 != gr4.non_unipotent_part() {
        return Err(Error::Inconsistent(format!("gr_0 = {gr0} differs from the non-unipotent part of gr_4 = {gr4}")));
    }

    // second column: 0 -> H^1(D+^[0]) -> H^1(D+^[1]) -> gr_1 -> 0
    let curves = double_curve_covers(v, true)?;
    let h1_curves = curves.iter().filter(|c| c.exceptional).fold(CycloProduct::one(), |acc, c| &acc * &c.cover.h1);
    let mut h1_surf = SymbolicCyclo::default();
    for id in v.exceptional_ids() {
        h1_surf = h1_surf.mul(&aux.h1_of(&v.component(id)?.name));
    }
    let gr1 = SymbolicCyclo::known(h1_curves).div(&h1_surf);
    let d1 = if gr1.is_concrete() {
        if !gr1.known.is_polynomial() {
            return Err(Error::Inconsistent(format!("gr_1 characteristic polynomial {gr1} is not a polynomial")));
        }
        Some(gr1.known.degree() as usize)
    } else {
        None
    };

    let mut blocks = BTreeMap::new();
    if !gr4.non_unipotent_part().is_one() {
        blocks.insert(3, SymbolicCyclo::known(gr4.non_unipotent_part()));
    }
    let mut notes = vec!["weights 2 and 3 need the maps between covering surfaces and are not computed".to_string()];
    if gr1.is_concrete() {
        let b2 = &gr1.known.non_unipotent_part() * &gr4.unipotent_part();
        if !b2.is_one() {
            blocks.insert(2, SymbolicCyclo::known(b2));
        }
    } else {
        notes.push("size-2 blocks: the non-unipotent part of gr_1 and the unipotent part of gr_4".to_string());
    }
    let graded = vec![
        GradedPiece { weight: 0, dim: Some(d0), delta: Some(SymbolicCyclo::known(gr0)), hodge: None },
        GradedPiece { weight: 1, dim: d1, delta: Some(gr1), hodge: None },
        GradedPiece { weight: 2, dim: None, delta: None, hodge: None },
        GradedPiece { weight: 3, dim: None, delta: None, hodge: None },
        GradedPiece { weight: 4, dim: Some(d4), delta: Some(SymbolicCyclo::known(gr4)), hodge: None },
    ];
    Ok(MHSReport { n: 2, delta, graded, block_polynomials: blocks, jordan: None, notes })
}
