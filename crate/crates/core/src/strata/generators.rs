//! Divisors of the two plane-curve families.

use std::collections::BTreeMap;

use num_integer::Integer;

use super::model::{Component, ComponentId, Role, Stratum, StratifiedDivisor};
use crate::error::{Error, Result};

pub(crate) fn component(id: ComponentId, name: &str, role: Role, multiplicity: i64) -> Component {
    Component { id, name: name.to_string(), role, compact: role == Role::Exceptional, multiplicity, ambient_euler: None }
}

/// A stratum whose local multiplicities are read off the component list.
pub(crate) fn stratum(comps: &[Component], ids: &[ComponentId], d: Vec<i64>, a: Vec<Vec<i64>>, euler: i64, dim: u32, label: Option<&str>) -> Stratum {
    let mut ids = ids.to_vec();
    ids.sort_unstable();
    let mult: BTreeMap<ComponentId, i64> =
        ids.iter().map(|id| (*id, comps.iter().find(|c| c.id == *id).expect("known component").multiplicity)).collect();
    Stratum { components: ids, singular_label: label.map(str::to_string), d, a, mult, euler, dim }
}

fn smooth(ncoords: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    (vec![1], vec![vec![0; ncoords]])
}

/// Resolution of `x^p + y^q` by one weighted blow-up.
pub fn gen_one_branch(p: i64, q: i64) -> Result<StratifiedDivisor> {
    if p < 2 || q < 2 {
        return Err(Error::Validation(format!("one-branch needs p, q >= 2, got ({p}, {q})")));
    }
    let g = p.gcd(&q);
    let (p1, q1) = (p / g, q / g);
    let l = p.lcm(&q);
    let comps = vec![component(0, "E", Role::Exceptional, l), component(1, "C", Role::Strict, 1)];
    let (d1, a1) = smooth(2);
    let strata = vec![
        stratum(&comps, &[0], d1.clone(), a1.clone(), -g, 1, None),
        stratum(&comps, &[0], vec![q1], vec![vec![-1, p1]], 1, 0, Some("P1")),
        stratum(&comps, &[0], vec![p1], vec![vec![-1, q1]], 1, 0, Some("P2")),
        stratum(&comps, &[0, 1], d1.clone(), a1.clone(), g, 0, None),
        stratum(&comps, &[1], d1, a1, 0, 1, None),
    ];
    Ok(StratifiedDivisor { n: 1, components: comps, strata, isolated: true })
}

/// Resolution of `(x^p + y^q)(x^r + y^s)` with `p/q < r/s`.
pub fn gen_two_branch(p: i64, q: i64, r: i64, s: i64) -> Result<StratifiedDivisor> {
    if [p, q, r, s].iter().any(|&x| x < 1) {
        return Err(Error::Validation(format!("two-branch parameters must be positive, got ({p}, {q}, {r}, {s})")));
    }
    if p.gcd(&q) != 1 || r.gcd(&s) != 1 {
        return Err(Error::Validation(format!("two-branch needs gcd(p,q) = gcd(r,s) = 1, got ({p}, {q}, {r}, {s})")));
    }
    if p * s >= q * r {
        return Err(Error::Validation(format!("two-branch needs p/q < r/s, got {p}/{q} and {r}/{s}")));
    }
    let k = r * q - p * s;
    let comps = vec![
        component(0, "E1", Role::Exceptional, p * (q + s)),
        component(1, "E2", Role::Exceptional, s * (p + r)),
        component(2, "C1", Role::Strict, 1),
        component(3, "C2", Role::Strict, 1),
    ];
    let (d1, a1) = smooth(2);
    let strata = vec![
        stratum(&comps, &[0], d1.clone(), a1.clone(), -1, 1, None),
        stratum(&comps, &[0], vec![p], vec![vec![-1, q]], 1, 0, Some("P1")),
        stratum(&comps, &[1], d1.clone(), a1.clone(), -1, 1, None),
        stratum(&comps, &[1], vec![s], vec![vec![-1, r]], 1, 0, Some("P2")),
        stratum(&comps, &[0, 1], vec![k, k], vec![vec![s, -q], vec![-r, p]], 1, 0, Some("Q")),
        stratum(&comps, &[0, 2], d1.clone(), a1.clone(), 1, 0, None),
        stratum(&comps, &[1, 3], d1.clone(), a1.clone(), 1, 0, None),
        stratum(&comps, &[2], d1.clone(), a1.clone(), 0, 1, None),
        stratum(&comps, &[3], d1, a1, 0, 1, None),
    ];
    Ok(StratifiedDivisor { n: 1, components: comps, strata, isolated: true })
}
