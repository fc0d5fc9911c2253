//! Covering data of the semistable reduction over each stratum.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::strata::{ComponentId, ValidatedDivisor};

/// Least common multiple of the component multiplicities.
pub fn exponent(v: &ValidatedDivisor) -> i64 {
    v.sd.components.iter().fold(1, |acc, c| acc.lcm(&c.multiplicity))
}

/// Number of connected components of the preimage of `E_i`.
pub fn component_count(v: &ValidatedDivisor, id: ComponentId) -> Result<i64> {
    v.component(id)?;
    Ok(v.strata().filter(|(_, s, _)| s.contains(id)).fold(0, |acc, (_, _, m)| acc.gcd(&m)))
}

/// Gcd of `m` over the strata whose component set contains `ids`.
pub fn closure_gcd(v: &ValidatedDivisor, ids: &[ComponentId]) -> i64 {
    v.strata().filter(|(_, s, _)| ids.iter().all(|i| s.contains(*i))).fold(0, |acc, (_, _, m)| acc.gcd(&m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEuler {
    pub id: ComponentId,
    /// Connected components of the preimage.
    pub count: i64,
    /// Euler characteristic of each connected component.
    pub euler: i64,
    /// Genus of each connected component, for compact curves.
    pub genus: Option<i64>,
}

/// `sum_{S containing i} m(S) chi(S) / c_i`.
pub fn component_euler(v: &ValidatedDivisor, id: ComponentId) -> Result<ComponentEuler> {
    let c = component_count(v, id)?;
    let total: i64 = v.strata().filter(|(_, s, _)| s.contains(id)).map(|(_, s, m)| m * s.euler).sum();
    if total % c != 0 {
        return Err(Error::Inconsistent(format!("component {id}: Euler sum {total} not divisible by {c} components")));
    }
    let euler = total / c;
    let comp = v.component(id)?;
    let genus = if v.n() == 1 && comp.compact {
        if (2 - euler) % 2 != 0 || euler > 2 {
            return Err(Error::Inconsistent(format!("component {id}: Euler characteristic {euler} gives no genus")));
        }
        Some((2 - euler) / 2)
    } else {
        None
    };
    Ok(ComponentEuler { id, count: c, euler, genus })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiemannHurwitz {
    pub sheets: i64,
    /// `(fiber cardinality, number of such points)` over the special points.
    pub fibers: Vec<(i64, i64)>,
    pub base_euler: i64,
    /// `N chi(base) - sum (N - r)` over all special points.
    pub predicted: i64,
    /// Total Euler characteristic from the stratum sum.
    pub actual: i64,
}

impl RiemannHurwitz {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

/// Riemann-Hurwitz for the preimage of a curve component (`n = 1`).
pub fn riemann_hurwitz_check(v: &ValidatedDivisor, id: ComponentId) -> Result<RiemannHurwitz> {
    if v.n() != 1 {
        return Err(Error::Validation("Riemann-Hurwitz check applies to curves".into()));
    }
    let comp = v.component(id)?;
    let generic: Vec<i64> = v.strata().filter(|(_, s, _)| s.components == [id] && s.dim == 1).map(|(_, _, m)| m).collect();
    let [sheets] = generic[..] else {
        return Err(Error::Validation(format!("component {id} needs exactly one generic stratum")));
    };
    let fibers: Vec<(i64, i64)> = v.strata().filter(|(_, s, _)| s.contains(id) && s.dim == 0).map(|(_, s, m)| (m, s.euler)).collect();
    let base_euler = comp.ambient_euler.unwrap_or(2);
    let predicted = sheets * base_euler - fibers.iter().map(|(r, k)| k * (sheets - r)).sum::<i64>();
    let e = component_euler(v, id)?;
    Ok(RiemannHurwitz { sheets, fibers, base_euler, predicted, actual: e.count * e.euler })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{gen_one_branch, gen_two_branch, validate};

    #[test]
    fn cusp_data() {
        let v = validate(gen_one_branch(2, 3).unwrap()).unwrap();
        assert_eq!(exponent(&v), 6);
        assert_eq!(component_count(&v, 0).unwrap(), 1);
        let e = component_euler(&v, 0).unwrap();
        assert_eq!((e.euler, e.genus), (0, Some(1)));
        let rh = riemann_hurwitz_check(&v, 0).unwrap();
        assert!(rh.holds());
        assert_eq!(rh.predicted, 0);
    }

    #[test]
    fn two_branch_data() {
        let v = validate(gen_two_branch(2, 3, 4, 1).unwrap()).unwrap();
        assert_eq!(exponent(&v), 24);
        assert_eq!(component_count(&v, 0).unwrap(), 1);
        assert_eq!(component_euler(&v, 0).unwrap().genus, Some(2));
        let rh = riemann_hurwitz_check(&v, 0).unwrap();
        assert_eq!(rh.predicted, -2);
        assert!(rh.holds());
        assert!(component_count(&v, 9).is_err());
    }
}
