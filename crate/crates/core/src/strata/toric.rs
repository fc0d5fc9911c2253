//! Yomdin-Lê surfaces `f_m + z^{m+k}` whose tangent cone has one singular point.
//!
//! Near the singular point the total transform after blowing up the origin is
//! `z^m (g(x, y) + z^k)` with `z = 0` the first exceptional divisor. The
//! remaining resolution is toric: a simplicial fan refining the positive
//! orthant, with the dual vertex of the Newton polyhedron of `g + z^k`
//! attached to each maximal cone.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::generators::{component, stratum};
use super::model::{Component, ComponentId, Role, Stratum, StratifiedDivisor};
use crate::error::{Error, Result};
use crate::exactalg::{smith_normal_form, Matrix};

const STRICT: ComponentId = 0;
const E0: ComponentId = 1;

type V3 = [i64; 3];

fn dot3(a: &V3, b: &V3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn sub3(a: &V3, b: &V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: &V3, b: &V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn gcd3(a: &V3) -> i64 {
    a[0].gcd(&a[1]).gcd(&a[2])
}

/// Local toric data near the singular point of the tangent cone.
pub struct ToricModel {
    pub rays: Vec<V3>,
    /// Divisor carried by each ray; `None` for the coordinate planes `x = 0`, `y = 0`.
    pub ray_component: Vec<Option<ComponentId>>,
    /// Maximal cones with their dual Newton vertex.
    pub cones: Vec<([usize; 3], V3)>,
    /// Order of the first exceptional divisor.
    pub m: i64,
}

impl ToricModel {
    /// Multiplicity of the divisor of a ray: `<v, (0,0,m)> + min <v, u>`.
    pub fn ray_multiplicity(&self, i: usize) -> i64 {
        let v = &self.rays[i];
        v[2] * self.m + self.cones.iter().map(|(_, u)| dot3(v, u)).min().unwrap()
    }

    fn containing(&self, face: &[usize]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&c| face.iter().all(|r| self.cones[c].0.contains(r))).collect()
    }

    fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for (rays, _) in &self.cones {
            for mask in 1u32..8 {
                let mut f: Vec<usize> = (0..3).filter(|b| mask & (1 << b) != 0).map(|b| rays[b]).collect();
                f.sort_unstable();
                out.insert(f);
            }
        }
        out
    }

    /// Generators of `{ lambda : sum lambda_i v_i in Z^3 }` as `(order, weights)`.
    fn local_group(&self, face: &[usize]) -> Vec<(i64, Vec<i64>)> {
        let m = Matrix::from_fn(3, face.len(), |i, j| BigInt::from(self.rays[face[j]][i]));
        let s = smith_normal_form(&m);
        s.invariants()
            .iter()
            .enumerate()
            .map(|(i, si)| {
                let d = si.to_i64().expect("small invariant");
                assert!(d > 0, "rays of a cone must be independent");
                (d, (0..face.len()).map(|r| s.v[(r, i)].to_i64().unwrap().rem_euclid(d)).collect())
            })
            .filter(|(d, _)| *d > 1)
            .collect()
    }

    fn lattice_area(&self, ray: usize) -> i64 {
        let mut verts: Vec<V3> = self.containing(&[ray]).into_iter().map(|c| self.cones[c].1).collect();
        verts.sort_unstable();
        verts.dedup();
        assert_eq!(verts.len(), 3, "face dual to a divisor ray must be a triangle");
        let w = &self.rays[ray];
        let c = cross(&sub3(&verts[1], &verts[0]), &sub3(&verts[2], &verts[0]));
        let num = dot3(&c, w).abs();
        let den = dot3(w, w);
        assert_eq!(num % den, 0, "non-integral lattice area");
        num / den
    }

    fn edge_points(&self, face: &[usize]) -> i64 {
        let cs = self.containing(face);
        assert_eq!(cs.len(), 2, "an inner 2-cone lies in two maximal cones");
        gcd3(&sub3(&self.cones[cs[0]].1, &self.cones[cs[1]].1))
    }
}

/// Local type on three coordinates: listed components first (by id), then
/// the remaining rays of the face, then zero columns.
fn layout(model: &ToricModel, face: &[usize], with_strict: bool) -> (Vec<ComponentId>, Vec<i64>, Vec<Vec<i64>>) {
    let mut divisor: Vec<(ComponentId, usize)> = face.iter().filter_map(|&r| model.ray_component[r].map(|c| (c, r))).collect();
    divisor.sort_unstable();
    let mut ids: Vec<ComponentId> = divisor.iter().map(|(c, _)| *c).collect();
    // column position of each face ray
    let mut col_of: Vec<usize> = vec![0; face.len()];
    let mut next = usize::from(with_strict);
    for (_, r) in &divisor {
        col_of[face.iter().position(|x| x == r).unwrap()] = next;
        next += 1;
    }
    for (k, r) in face.iter().enumerate() {
        if model.ray_component[*r].is_none() {
            col_of[k] = next;
            next += 1;
        }
    }
    if with_strict {
        ids.insert(0, STRICT);
    }
    let gens = model.local_group(face);
    let (mut d, mut a) = (Vec::new(), Vec::new());
    for (order, w) in gens {
        let mut row = vec![0i64; 3];
        for (k, x) in w.iter().enumerate() {
            row[col_of[k]] = *x;
        }
        d.push(order);
        a.push(row);
    }
    if d.is_empty() {
        d.push(1);
        a.push(vec![0; 3]);
    }
    (ids, d, a)
}

/// Strata over the torus orbits of the local model, plus the global pieces.
fn assemble(comps: Vec<Component>, model: &ToricModel, chi_curve: i64, branches: i64) -> StratifiedDivisor {
    let mut strata: Vec<Stratum> = Vec::new();
    let mut points_on_e0 = 0;
    for face in model.faces() {
        let divisors: BTreeSet<ComponentId> = face.iter().filter_map(|&r| model.ray_component[r]).collect();
        if divisors.iter().all(|&c| c == E0) {
            continue;
        }
        let (ids, d, a) = layout(model, &face, false);
        match face.len() {
            3 => strata.push(stratum(&comps, &ids, d, a, 1, 0, None)),
            2 => {
                let pts = model.edge_points(&face);
                if divisors.contains(&E0) {
                    points_on_e0 += pts;
                }
                strata.push(stratum(&comps, &ids, d, a, -pts, 1, None));
                if pts > 0 {
                    let (ids, d, a) = layout(model, &face, true);
                    strata.push(stratum(&comps, &ids, d, a, pts, 0, None));
                }
            }
            _ => {
                let lambda = model.lattice_area(face[0]);
                strata.push(stratum(&comps, &ids, d, a, lambda, 2, None));
                let (ids, d, a) = layout(model, &face, true);
                strata.push(stratum(&comps, &ids, d, a, -lambda, 1, None));
            }
        }
    }
    let smooth = || (vec![1], vec![vec![0; 3]]);
    let (d, a) = smooth();
    strata.push(stratum(&comps, &[E0], d, a, 3 - chi_curve, 2, None));
    let (d, a) = smooth();
    strata.push(stratum(&comps, &[STRICT, E0], d, a, chi_curve + branches - 1 - points_on_e0, 1, None));
    let (d, a) = smooth();
    strata.push(stratum(&comps, &[STRICT], d, a, 0, 2, None));
    strata.sort_by(|x, y| (x.components.len(), &x.components, x.dim).cmp(&(y.components.len(), &y.components, y.dim)).then(x.euler.cmp(&y.euler)));
    StratifiedDivisor { n: 2, components: comps, strata, isolated: true }
}

fn base_components(m: i64) -> Vec<Component> {
    let mut strict = component(STRICT, "V", Role::Strict, 1);
    strict.compact = false;
    vec![strict, component(E0, "E0", Role::Exceptional, m)]
}

/// `chi(C) = 3m - m^2 + mu` for a plane curve of degree `m` with total Milnor number `mu`.
fn chi_plane_curve(m: i64, mu: i64) -> i64 {
    3 * m - m * m + mu
}

fn admissible(m: i64, delta: i64, max_exp: i64) -> Result<()> {
    if m < max_exp || 2 * delta > (m - 1) * (m - 2) {
        return Err(Error::Validation(format!("degree {m} too small for the prescribed singular point")));
    }
    Ok(())
}

/// Local model for the cusp `x^q + y^p` (`gcd(p, q) = 1`) in the tangent cone.
pub fn yls_cusp_model(p: i64, q: i64, k: i64, m: i64) -> Result<ToricModel> {
    if p < 2 || q < 2 || k < 1 || p.gcd(&q) != 1 {
        return Err(Error::Validation(format!("yls-cusp needs coprime p, q >= 2 and k >= 1, got ({p}, {q}, {k})")));
    }
    let g = k.gcd(&p) * k.gcd(&q);
    let w = [k * p / g, k * q / g, p * q / g];
    let rays = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], w];
    let cones = vec![([3, 0, 1], [0, 0, k]), ([3, 1, 2], [q, 0, 0]), ([3, 2, 0], [0, p, 0])];
    Ok(ToricModel { rays, ray_component: vec![None, None, Some(E0), Some(2)], cones, m })
}

pub fn gen_yls_cusp(p: i64, q: i64, k: i64, m: i64) -> Result<StratifiedDivisor> {
    let model = yls_cusp_model(p, q, k, m)?;
    let mu = (p - 1) * (q - 1);
    admissible(m, mu / 2, p.max(q))?;
    let mut comps = base_components(m);
    comps.push(component(2, "E1", Role::Exceptional, model.ray_multiplicity(3)));
    Ok(assemble(comps, &model, chi_plane_curve(m, mu), 1))
}

/// Local model for `(x^p + y^q)(x^r + y^s)` with `p/q < r/s`.
pub fn yls_two_branch_model(p: i64, q: i64, r: i64, s: i64, k: i64, m: i64) -> Result<ToricModel> {
    if [p, q, r, s, k].iter().any(|&x| x < 1) || p.gcd(&q) != 1 || r.gcd(&s) != 1 || p * s >= q * r {
        return Err(Error::Validation(format!("yls-two-branch needs gcd(p,q) = gcd(r,s) = 1, p/q < r/s, k >= 1; got ({p}, {q}, {r}, {s}, {k})")));
    }
    let ga = k.gcd(&(p * (q + s)));
    let gb = k.gcd(&(s * (p + r)));
    let wa = [q * k / ga, p * k / ga, p * (q + s) / ga];
    let wb = [s * k / gb, r * k / gb, s * (p + r) / gb];
    let rays = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], wa, wb];
    let cones = vec![
        ([2, 3, 4], [p, s, 0]),
        ([2, 3, 0], [0, q + s, 0]),
        ([2, 4, 1], [p + r, 0, 0]),
        ([0, 3, 4], [0, 0, k]),
        ([0, 4, 1], [0, 0, k]),
    ];
    Ok(ToricModel { rays, ray_component: vec![None, None, Some(E0), Some(2), Some(3)], cones, m })
}

pub fn gen_yls_two_branch(p: i64, q: i64, r: i64, s: i64, k: i64, m: i64) -> Result<StratifiedDivisor> {
    let model = yls_two_branch_model(p, q, r, s, k, m)?;
    let mu = (p - 1) * (q - 1) + (r - 1) * (s - 1) + 2 * p * s - 1;
    admissible(m, (mu + 1) / 2, (p + r).max(q + s))?;
    let mut comps = base_components(m);
    comps.push(component(2, "EA", Role::Exceptional, model.ray_multiplicity(3)));
    comps.push(component(3, "EB", Role::Exceptional, model.ray_multiplicity(4)));
    Ok(assemble(comps, &model, chi_plane_curve(m, mu), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::model::validate;

    #[test]
    fn cusp_multiplicities() {
        let (p, q, k, m) = (2, 3, 1, 6);
        let sd = gen_yls_cusp(p, q, k, m).unwrap();
        assert_eq!(sd.components[2].multiplicity, p * q * (m + k));
        let v = validate(sd).unwrap();
        let find = |ids: &[u32], dim: u32| v.strata().find(|(_, s, _)| s.components == ids && s.dim == dim).map(|(_, s, mm)| (s.euler, mm)).unwrap();
        assert_eq!(find(&[2], 2), (1, 42));
        assert_eq!(find(&[1, 2], 1), (-1, m.gcd(&(p * q))));
        assert_eq!(find(&[2], 0), (1, m + k));
    }

    #[test]
    fn cusp_with_common_factors() {
        let (p, q, k, m) = (2, 3, 6, 7);
        let sd = gen_yls_cusp(p, q, k, m).unwrap();
        let (k1, k2) = (k.gcd(&p), k.gcd(&q));
        assert_eq!(sd.components[2].multiplicity, p * q * (m + k) / (k1 * k2));
        let v = validate(sd).unwrap();
        let e1 = v.strata().find(|(_, s, _)| s.components == [2] && s.dim == 2).unwrap();
        assert_eq!(e1.1.euler, k1 * k2);
        let lines: Vec<(i64, i64)> = v.strata().filter(|(_, s, _)| s.components == [2] && s.dim == 1).map(|(_, s, mm)| (s.euler, mm)).collect();
        assert!(lines.contains(&(-k1, p * (m + k) / k1)));
        assert!(lines.contains(&(-k2, q * (m + k) / k2)));
    }

    #[test]
    fn fixed_point_multiplicity_is_gcd_of_exponent() {
        let model = yls_two_branch_model(2, 3, 4, 1, 3, 9).unwrap();
        let sd = gen_yls_two_branch(2, 3, 4, 1, 3, 9).unwrap();
        let v = validate(sd).unwrap();
        for (rays, u) in &model.cones {
            let face = {
                let mut f = rays.to_vec();
                f.sort_unstable();
                f
            };
            let (ids, _, _) = layout(&model, &face, false);
            if ids.iter().all(|&c| c == E0) {
                continue;
            }
            let expect = gcd3(&[u[0], u[1], u[2] + model.m]);
            let got = v.strata().find(|(_, s, _)| s.components == ids && s.dim == 0 && s.euler == 1 && !s.contains(STRICT)).unwrap().2;
            assert_eq!(got, expect, "cone {rays:?}");
        }
    }

    #[test]
    fn rejects_small_degree() {
        assert!(gen_yls_cusp(2, 3, 1, 2).is_err());
        assert!(gen_yls_cusp(2, 4, 1, 6).is_err());
    }
}
