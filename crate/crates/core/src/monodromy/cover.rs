//! Cyclic branched covers of curves and the induced action on `H^1`.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exactalg::{charpoly_from_int_traces, cyclo_factor, divisors, euler_phi, moebius, CycloProduct};

/// Above this dimension the eigenvalue multiplicities are read off by character inversion.
const NEWTON_LIMIT: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCover {
    /// Euler characteristic of the whole preimage.
    pub euler: i64,
    pub components: i64,
    /// Genus of each connected component.
    pub genus: i64,
    /// Characteristic polynomial of the deck generator on `H^1` of the preimage.
    pub h1: CycloProduct,
}

/// Cover with `sheets` sheets over a closed curve, with fibres of the given
/// cardinalities over the special points, splitting into `components` pieces.
pub fn cyclic_cover_curve(sheets: i64, fibers: &[i64], base_euler: i64, components: i64) -> Result<CurveCover> {
    if sheets < 1 || components < 1 {
        return Err(Error::Validation(format!("invalid cover: {sheets} sheets, {components} components")));
    }
    for &r in fibers {
        if r < 1 || sheets % r != 0 {
            return Err(Error::Validation(format!("fibre size {r} does not divide {sheets} sheets")));
        }
        if r % components != 0 {
            return Err(Error::Validation(format!("{components} components do not divide fibre size {r}")));
        }
    }
    if sheets % components != 0 {
        return Err(Error::Validation(format!("{components} components do not divide {sheets} sheets")));
    }
    // one component, covered by the generator to the power `components`
    let n = sheets / components;
    let rs: Vec<i64> = fibers.iter().map(|r| r / components).collect();
    let chi = n * base_euler - rs.iter().map(|r| n - r).sum::<i64>();
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::Inconsistent(format!("Euler characteristic {chi} of a component gives no genus")));
    }
    let genus = (2 - chi) / 2;
    let lefschetz = |k: i64| if k % n == 0 { chi } else { rs.iter().filter(|&&r| k % r == 0).sum() };
    let dim = (2 * genus) as usize;
    let h1 = if dim <= NEWTON_LIMIT {
        let traces: Vec<BigInt> = (1..=dim as i64).map(|k| BigInt::from(2 - lefschetz(k))).collect();
        cyclo_factor(&charpoly_from_int_traces(&traces, dim)?, n as u64)?
    } else {
        invert_characters(n, dim as i64, |k| 2 - lefschetz(k))?
    };
    let h1 = h1.compose_power(components as u64);
    Ok(CurveCover { euler: chi * components, components, genus, h1 })
}

/// `c_d(j) = sum_{k | gcd(d, j)} mu(d/k) k`.
fn ramanujan(d: u64, j: u64) -> i64 {
    divisors(d.gcd(&j)).into_iter().map(|k| moebius(d / k) * k as i64).sum()
}

/// Cyclotomic exponents of an operator of period `n` from its traces.
///
/// Traces of `phi^j` depend only on `gcd(j, n)`, and `sum_j c_d(j) c_d'(j) = n phi(d)`
/// when `d = d'` and 0 otherwise, which recovers the multiplicity of each `Phi_d`.
pub(crate) fn invert_characters(n: i64, dim: i64, trace: impl Fn(i64) -> i64) -> Result<CycloProduct> {
    let n = n as u64;
    let ds = divisors(n);
    let mut phi = Vec::new();
    let mut total = 0;
    for &d in &ds {
        let s: i64 = ds.iter().map(|&g| {
            let t = if g == n { dim } else { trace(g as i64) };
            euler_phi(n / g) as i64 * t * ramanujan(d, g % n)
        }).sum();
        let q = (n * euler_phi(d)) as i64;
        if s % q != 0 || s < 0 {
            return Err(Error::Inconsistent(format!("traces do not come from an action of order {n}")));
        }
        total += s / q * euler_phi(d) as i64;
        phi.push((d, s / q));
    }
    if total != dim {
        return Err(Error::Inconsistent(format!("character inversion gives dimension {total}, expected {dim}")));
    }
    Ok(CycloProduct::from_phi_exponents(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic() {
        let c = cyclic_cover_curve(6, &[2, 3, 1], 2, 1).unwrap();
        assert_eq!((c.euler, c.genus), (0, 1));
        assert_eq!(c.h1, CycloProduct::from_phi_exponents([(6, 1)]));
    }

    #[test]
    fn trivial_cover() {
        let c = cyclic_cover_curve(1, &[], -2, 1).unwrap();
        assert_eq!(c.genus, 2);
        assert_eq!(c.h1, CycloProduct::t_minus_one_pow(1, 4));
    }

    #[test]
    fn genus_formula() {
        for (p, q, s) in [(2i64, 3i64, 1i64), (4, 3, 2), (6, 5, 4)] {
            let n = p * (q + s);
            let g = p.gcd(&s);
            let c = cyclic_cover_curve(n, &[g, 1, q + s], 2, 1).unwrap();
            assert_eq!(2 * c.genus, (p - 1) * (q + s) - g + 1);
            assert_eq!(c.h1.degree(), 2 * c.genus);
        }
    }

    #[test]
    fn disconnected() {
        // two copies of the elliptic cover, swapped by the generator
        let c = cyclic_cover_curve(12, &[4, 6, 2], 2, 2).unwrap();
        assert_eq!((c.genus, c.euler), (1, 0));
        assert_eq!(c.h1, CycloProduct::from_phi_exponents([(6, 1)]).compose_power(2));
        assert!(cyclic_cover_curve(12, &[4, 3], 2, 2).is_err());
    }

    #[test]
    fn inversion_matches_newton() {
        for (n, fibers) in [(6i64, vec![2i64, 3, 1]), (30, vec![1, 1, 5, 3, 10]), (60, vec![12, 20, 3, 1, 12])] {
            let chi = 2 * n - fibers.iter().map(|r| n - r).sum::<i64>();
            let lef = |k: i64| if k % n == 0 { chi } else { fibers.iter().filter(|&&r| k % r == 0).sum() };
            let a = invert_characters(n, 2 - chi, |k| 2 - lef(k)).unwrap();
            let b = cyclic_cover_curve(n, &fibers, 2, 1).unwrap().h1;
            assert_eq!(a, b);
        }
    }
}
