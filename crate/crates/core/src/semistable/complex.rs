//! The dual complex of the semistable reduction with its deck action.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::covering::{closure_gcd, component_count, component_euler, exponent};
use crate::error::{Error, Result};
use crate::exactalg::Matrix;
use crate::strata::{ComponentId, Role, ValidatedDivisor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub name: String,
    /// Divisor components meeting in this cell, in id order.
    pub components: Vec<ComponentId>,
    /// Deck orbit; copies of one family are permuted cyclically.
    pub family: usize,
    pub copy: usize,
    pub family_size: usize,
    /// Lies in some compact component.
    pub compact: bool,
    /// Every component is exceptional, i.e. the cell belongs to the complex of `D_+`.
    pub exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct SemistableComplex {
    pub n: usize,
    pub e: i64,
    /// Cells by dimension.
    pub cells: Vec<Vec<Cell>>,
    /// `boundary[q][c]` lists the `(q-1)`-faces of cell `c` with signs.
    pub boundary: Vec<Vec<Vec<(usize, i64)>>>,
    /// `deck[q][c]` is the image of cell `c` under the deck generator.
    pub deck: Vec<Vec<usize>>,
}

struct Builder {
    cells: Vec<Vec<Cell>>,
    boundary: Vec<Vec<Vec<(usize, i64)>>>,
    families: usize,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder { cells: vec![Vec::new(); n + 1], boundary: vec![Vec::new(); n + 1], families: 0 }
    }

    /// Adds `size` copies; `faces(s)` gives the boundary of copy `s`. Returns the first index.
    #[allow(clippy::too_many_arguments)]
    fn family(
        &mut self,
        dim: usize,
        name: &str,
        components: &[ComponentId],
        size: usize,
        compact: bool,
        exceptional: bool,
        genus: Option<i64>,
        stratum: Option<usize>,
        faces: impl Fn(usize) -> Vec<(usize, i64)>,
    ) -> usize {
        let first = self.cells[dim].len();
        let family = self.families;
        self.families += 1;
        for copy in 0..size {
            self.cells[dim].push(Cell {
                name: name.to_string(),
                components: components.to_vec(),
                family,
                copy,
                family_size: size,
                compact,
                exceptional,
                genus,
                stratum,
            });
            self.boundary[dim].push(faces(copy));
        }
        first
    }

    fn finish(self, n: usize, e: i64) -> SemistableComplex {
        let deck = self
            .cells
            .iter()
            .map(|cs| {
                cs.iter()
                    .enumerate()
                    .map(|(i, c)| i - c.copy + (c.copy + 1) % c.family_size)
                    .collect()
            })
            .collect();
        SemistableComplex { n, e, cells: self.cells, boundary: self.boundary, deck }
    }
}

/// Builds the complex from a validated divisor (`n <= 2`).
pub fn build_dual_complex(v: &ValidatedDivisor) -> Result<SemistableComplex> {
    let n = v.n();
    let mut b = Builder::new(n);
    // vertex families by component
    let mut vertex: BTreeMap<ComponentId, (usize, i64)> = BTreeMap::new();
    for c in &v.sd.components {
        let count = component_count(v, c.id)?;
        let genus = if n == 1 { component_euler(v, c.id)?.genus } else { None };
        let first = b.family(0, &c.name, &[c.id], count as usize, c.compact, c.role == Role::Exceptional, genus, None, |_| Vec::new());
        vertex.insert(c.id, (first, count));
    }
    let is_exc = |ids: &[ComponentId]| ids.iter().all(|&i| v.is_exceptional(i));
    let is_compact = |ids: &[ComponentId]| ids.iter().any(|&i| v.component(i).map(|c| c.compact).unwrap_or(false));
    let name = |ids: &[ComponentId]| ids.iter().map(|&i| v.component(i).map(|c| c.name.clone()).unwrap_or_default()).collect::<Vec<_>>().join("^");

    let check_divides = |c: i64, m: i64, what: &str| -> Result<()> {
        if c == 0 || m % c != 0 {
            return Err(Error::Validation(format!("{what}: component count {c} does not divide fiber count {m}")));
        }
        Ok(())
    };

    let mut edge_family: BTreeMap<Vec<ComponentId>, (usize, i64)> = BTreeMap::new();
    let mut edge_orbits: BTreeMap<(ComponentId, ComponentId), usize> = BTreeMap::new();
    let edge_faces = |vertex: &BTreeMap<ComponentId, (usize, i64)>, ids: &[ComponentId], s: usize| -> Vec<(usize, i64)> {
        let (t0, c0) = vertex[&ids[0]];
        let (h0, c1) = vertex[&ids[1]];
        vec![(h0 + s % c1 as usize, 1), (t0 + s % c0 as usize, -1)]
    };
    if n == 1 {
        for (idx, s, m) in v.strata() {
            if s.components.len() != 2 {
                continue;
            }
            let ids = s.components.clone();
            for &i in &ids {
                check_divides(vertex[&i].1, m, &format!("stratum {idx}"))?;
            }
            for _ in 0..s.euler {
                *edge_orbits.entry((ids[0], ids[1])).or_default() += 1;
                let vx = vertex.clone();
                let ids2 = ids.clone();
                b.family(1, &name(&ids), &ids, m as usize, is_compact(&ids), is_exc(&ids), None, Some(idx), move |c| edge_faces(&vx, &ids2, c));
            }
        }
        for ((i, j), count) in &edge_orbits {
            if *count > 1 && vertex[i].1 > 1 && vertex[j].1 > 1 {
                return Err(Error::Validation(format!(
                    "{count} edge orbits join components {i} and {j} which both have several preimages; relative attachment is undetermined"
                )));
            }
        }
    } else {
        // one edge family per double curve, one 2-cell family per triple point
        let pairs: BTreeSet<Vec<ComponentId>> = v.strata().filter(|(_, s, _)| s.components.len() == 2 && s.dim == 1).map(|(_, s, _)| s.components.clone()).collect();
        for ids in pairs {
            let c = closure_gcd(v, &ids);
            for &i in &ids {
                check_divides(vertex[&i].1, c, &format!("double curve {ids:?}"))?;
            }
            let vx = vertex.clone();
            let ids2 = ids.clone();
            let first = b.family(1, &name(&ids), &ids, c as usize, is_compact(&ids), is_exc(&ids), None, None, move |s| edge_faces(&vx, &ids2, s));
            edge_family.insert(ids, (first, c));
        }
        for (idx, s, m) in v.strata() {
            if s.components.len() != 3 {
                continue;
            }
            let ids = s.components.clone();
            let sub = |a: usize, bb: usize| vec![ids[a], ids[bb]];
            let faces: Vec<(usize, i64, i64)> = [(sub(1, 2), 1i64), (sub(0, 2), -1), (sub(0, 1), 1)]
                .into_iter()
                .map(|(pair, sign)| {
                    edge_family
                        .get(&pair)
                        .map(|&(f, c)| (f, c, sign))
                        .ok_or_else(|| Error::Validation(format!("triple point stratum {idx}: double curve {pair:?} missing")))
                })
                .collect::<Result<_>>()?;
            for &(_, c, _) in &faces {
                check_divides(c, m, &format!("stratum {idx}"))?;
            }
            for _ in 0..s.euler {
                let f2 = faces.clone();
                b.family(2, &name(&ids), &ids, m as usize, is_compact(&ids), is_exc(&ids), None, Some(idx), move |cp| {
                    f2.iter().map(|&(f, c, sign)| (f + cp % c as usize, sign)).collect()
                });
            }
        }
    }
    Ok(b.finish(n, exponent(v)))
}

impl SemistableComplex {
    pub fn count(&self, q: usize) -> usize {
        self.cells.get(q).map_or(0, Vec::len)
    }

    /// Subcomplex of cells all of whose components are exceptional.
    pub fn restrict_exceptional(&self) -> SemistableComplex {
        let keep: Vec<Vec<usize>> = self.cells.iter().map(|cs| (0..cs.len()).filter(|&i| cs[i].exceptional).collect()).collect();
        let index: Vec<BTreeMap<usize, usize>> = keep.iter().map(|k| k.iter().enumerate().map(|(new, &old)| (old, new)).collect()).collect();
        let cells = keep.iter().enumerate().map(|(q, k)| k.iter().map(|&i| self.cells[q][i].clone()).collect()).collect();
        let boundary = keep
            .iter()
            .enumerate()
            .map(|(q, k)| {
                k.iter()
                    .map(|&i| {
                        self.boundary[q][i]
                            .iter()
                            .map(|&(f, s)| (*index[q - 1].get(&f).expect("faces of exceptional cells are exceptional"), s))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let deck = keep.iter().enumerate().map(|(q, k)| k.iter().map(|&i| index[q][&self.deck[q][i]]).collect()).collect();
        SemistableComplex { n: self.n, e: self.e, cells, boundary, deck }
    }

    /// Matrix of `delta: C^q -> C^{q+1}`.
    pub fn coboundary(&self, q: usize) -> Matrix<BigRational> {
        let rows = self.count(q + 1);
        let cols = self.count(q);
        let mut m: Matrix<BigRational> = Matrix::zeros(rows, cols);
        if rows > 0 {
            for (r, faces) in self.boundary[q + 1].iter().enumerate() {
                for &(f, s) in faces {
                    let cur: BigRational = m[(r, f)].clone();
                    m[(r, f)] = cur + BigRational::from_integer(BigInt::from(s));
                }
            }
        }
        m
    }

    /// Deck generator on `C^q`: the basis cochain of `c` goes to that of `deck(c)`.
    pub fn deck_matrix(&self, q: usize) -> Matrix<BigRational> {
        let n = self.count(q);
        let mut m: Matrix<BigRational> = Matrix::zeros(n, n);
        for (c, &img) in self.deck[q].iter().enumerate() {
            m[(img, c)] = BigRational::one();
        }
        m
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(q, cs)| if q % 2 == 0 { cs.len() as i64 } else { -(cs.len() as i64) }).sum()
    }

    /// Checks that deck orbits divide `e`, incidence equivariance and `delta^2 = 0`.
    pub fn check(&self) -> Result<()> {
        for (q, perm) in self.deck.iter().enumerate() {
            for (c, cell) in self.cells[q].iter().enumerate() {
                let mut x = perm[c];
                let mut orbit = 1;
                while x != c && orbit <= perm.len() {
                    x = perm[x];
                    orbit += 1;
                }
                if x != c || orbit != cell.family_size || self.e % orbit as i64 != 0 {
                    return Err(Error::Inconsistent(format!("deck orbit of cell {} in dimension {q} has length {orbit}, not dividing e = {}", cell.name, self.e)));
                }
            }
            if q >= 1 {
                for c in 0..self.count(q) {
                    let mut image: Vec<(usize, i64)> = self.boundary[q][c].iter().map(|&(f, s)| (self.deck[q - 1][f], s)).collect();
                    let mut target = self.boundary[q][perm[c]].clone();
                    image.sort_unstable();
                    target.sort_unstable();
                    if image != target {
                        return Err(Error::Inconsistent(format!("deck action does not commute with the boundary of cell {c} in dimension {q}")));
                    }
                }
            }
        }
        for q in 0..self.n.saturating_sub(1) {
            let d2 = &self.coboundary(q + 1) * &self.coboundary(q);
            if !d2.is_zero() {
                return Err(Error::Inconsistent(format!("coboundary squares to a nonzero map in degree {q}")));
            }
        }
        Ok(())
    }

    /// Number of independent cycles of the 1-skeleton.
    pub fn graph_cycles(&self) -> usize {
        let m = self.coboundary(0);
        let rank = crate::exactalg::rank(&m);
        self.count(1) - rank
    }

    /// Graphviz rendering; vertices carry genus labels, deck orbits share a color.
    pub fn to_dot(&self) -> String {
        const PALETTE: &[&str] = &["black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan4", "magenta", "gold4"];
        let mut s = String::from("graph semistable {\n  node [shape=circle];\n");
        for (i, c) in self.cells[0].iter().enumerate() {
            let genus = c.genus.map(|g| format!("\\ng={g}")).unwrap_or_default();
            let style = if c.compact { "solid" } else { "dashed" };
            let _ = writeln!(s, "  v{i} [label=\"{}[{}]{genus}\", style={style}, color={}];", c.name, c.copy, PALETTE[c.family % PALETTE.len()]);
        }
        if self.n >= 1 {
            for (i, c) in self.cells[1].iter().enumerate() {
                let (mut head, mut tail) = (0, 0);
                for &(f, sgn) in &self.boundary[1][i] {
                    if sgn > 0 {
                        head = f;
                    } else {
                        tail = f;
                    }
                }
                let _ = writeln!(s, "  v{tail} -- v{head} [label=\"{}[{}]\", color={}];", c.name, c.copy, PALETTE[c.family % PALETTE.len()]);
            }
        }
        if self.n >= 2 {
            for c in &self.cells[2] {
                let _ = writeln!(s, "  // 2-cell {}[{}]", c.name, c.copy);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Dual graph given directly: vertex families and edge orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelB {
    #[serde(default = "one")]
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    pub vertices: Vec<LevelBVertex>,
    pub edges: Vec<LevelBEdge>,
}

fn one() -> u32 {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelBVertex {
    pub name: String,
    #[serde(default = "one_i64")]
    pub copies: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default = "yes")]
    pub exceptional: bool,
}

fn one_i64() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelBEdge {
    /// Vertex indices.
    pub ends: [usize; 2],
    /// Orbit size of the deck action.
    pub orbit: i64,
}

impl LevelB {
    pub fn build(&self) -> Result<SemistableComplex> {
        if self.n != 1 {
            return Err(Error::Validation("direct dual-complex input supports curves only".into()));
        }
        let mut b = Builder::new(1);
        let mut starts = Vec::new();
        for (i, vx) in self.vertices.iter().enumerate() {
            if vx.copies < 1 {
                return Err(Error::Validation(format!("/vertices/{i}: copies must be positive")));
            }
            starts.push(b.family(0, &vx.name, &[i as ComponentId], vx.copies as usize, vx.exceptional, vx.exceptional, vx.genus, None, |_| Vec::new()));
        }
        let mut e = 1i64;
        for (k, ed) in self.edges.iter().enumerate() {
            let [a, c] = ed.ends;
            if a >= self.vertices.len() || c >= self.vertices.len() {
                return Err(Error::Validation(format!("/edges/{k}: vertex index out of range")));
            }
            if a == c {
                return Err(Error::Validation(format!("/edges/{k}: loops are not allowed")));
            }
            let (t, h) = (a.min(c), a.max(c));
            let (ct, ch) = (self.vertices[t].copies, self.vertices[h].copies);
            if ed.orbit < 1 || ed.orbit % ct != 0 || ed.orbit % ch != 0 {
                return Err(Error::Validation(format!("/edges/{k}: orbit size {} must be a positive multiple of both vertex copy counts", ed.orbit)));
            }
            e = e.lcm(&ed.orbit);
            let exc = self.vertices[t].exceptional && self.vertices[h].exceptional;
            let name = format!("{}^{}", self.vertices[t].name, self.vertices[h].name);
            let (st, sh) = (starts[t], starts[h]);
            b.family(1, &name, &[t as ComponentId, h as ComponentId], ed.orbit as usize, exc, exc, None, None, move |s| {
                vec![(sh + s % ch as usize, 1), (st + s % ct as usize, -1)]
            });
        }
        for vx in &self.vertices {
            e = e.lcm(&vx.copies);
        }
        let e = match self.e {
            Some(x) if x % e == 0 => x,
            Some(x) => return Err(Error::Validation(format!("e = {x} is not a multiple of the orbit sizes ({e})"))),
            None => e,
        };
        Ok(b.finish(1, e))
    }
}

/// Chain of `k` exceptional curves of the multi-branch curve `prod (x^{p_i} + y^{q_i})`.
///
/// `D_i` and `D_{i+1}` are joined by `e_i = gcd(p_1 + .. + p_i, q_{i+1} + .. + q_k)` edges
/// forming one deck orbit; each `D_i` also meets its strict branch.
pub fn gen_multibranch(params: &[(i64, i64)]) -> Result<LevelB> {
    if params.len() < 2 || params.iter().any(|&(p, q)| p < 1 || q < 1) {
        return Err(Error::Validation("multibranch needs at least two positive pairs".into()));
    }
    let k = params.len();
    let mut vertices: Vec<LevelBVertex> = (0..k).map(|i| LevelBVertex { name: format!("D{}", i + 1), copies: 1, genus: None, exceptional: true }).collect();
    vertices.extend((0..k).map(|i| LevelBVertex { name: format!("C{}", i + 1), copies: 1, genus: Some(0), exceptional: false }));
    let mut edges = Vec::new();
    for i in 0..k - 1 {
        edges.push(LevelBEdge { ends: [i, i + 1], orbit: multibranch_gap(params, i + 1) });
    }
    for i in 0..k {
        edges.push(LevelBEdge { ends: [i, k + i], orbit: 1 });
    }
    Ok(LevelB { n: 1, e: None, vertices, edges })
}

/// `e_i = gcd(p_1 + .. + p_i, q_{i+1} + .. + q_k)` for `1 <= i < k`.
pub fn multibranch_gap(params: &[(i64, i64)], i: usize) -> i64 {
    let ps: i64 = params[..i].iter().map(|x| x.0).sum();
    let qs: i64 = params[i..].iter().map(|x| x.1).sum();
    ps.gcd(&qs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{gen_one_branch, gen_two_branch, gen_yls_cusp, gen_yls_two_branch, validate};

    #[test]
    fn two_branch_graph() {
        for (p, q, r, s) in [(2, 3, 4, 1), (2, 1, 5, 2), (4, 1, 9, 2), (3, 1, 10, 3)] {
            let sd = gen_two_branch(p, q, r, s).unwrap();
            let k = build_dual_complex(&validate(sd).unwrap()).unwrap();
            k.check().unwrap();
            let g = p.gcd(&s) as usize;
            assert_eq!(k.count(0), 4);
            assert_eq!(k.count(1), g + 2);
            assert_eq!(k.graph_cycles(), g - 1);
        }
    }

    #[test]
    fn cusp_graph() {
        let k = build_dual_complex(&validate(gen_one_branch(2, 3).unwrap()).unwrap()).unwrap();
        assert_eq!((k.count(0), k.count(1), k.graph_cycles()), (2, 1, 0));
        assert_eq!(k.cells[0][0].genus, Some(1));
        let plus = k.restrict_exceptional();
        assert_eq!((plus.count(0), plus.count(1)), (1, 0));
    }

    #[test]
    fn surfaces_build() {
        for sd in [gen_yls_cusp(2, 3, 1, 6).unwrap(), gen_yls_cusp(2, 3, 6, 7).unwrap(), gen_yls_two_branch(2, 3, 4, 1, 2, 12).unwrap()] {
            let k = build_dual_complex(&validate(sd).unwrap()).unwrap();
            k.check().unwrap();
            assert!(k.count(2) > 0);
        }
    }

    #[test]
    fn multibranch_chain() {
        let lb = gen_multibranch(&[(2, 3), (4, 5), (6, 7)]).unwrap();
        let k = lb.build().unwrap();
        k.check().unwrap();
        assert_eq!(k.count(1), (multibranch_gap(&[(2, 3), (4, 5), (6, 7)], 1) + multibranch_gap(&[(2, 3), (4, 5), (6, 7)], 2) + 3) as usize);
        let json = serde_json::to_string(&lb).unwrap();
        assert_eq!(serde_json::from_str::<LevelB>(&json).unwrap(), lb);
    }

    #[test]
    fn ambiguous_attachment_rejected() {
        let lb = LevelB {
            n: 1,
            e: None,
            vertices: vec![
                LevelBVertex { name: "A".into(), copies: 2, genus: None, exceptional: true },
                LevelBVertex { name: "B".into(), copies: 2, genus: None, exceptional: true },
            ],
            edges: vec![LevelBEdge { ends: [0, 1], orbit: 2 }],
        };
        assert!(lb.build().is_ok());
        let lb = LevelB { edges: vec![LevelBEdge { ends: [0, 1], orbit: 3 }], ..lb };
        assert!(lb.build().is_err());
    }
}
