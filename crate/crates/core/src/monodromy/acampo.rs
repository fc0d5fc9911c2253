//! Characteristic polynomial of the Milnor fibre monodromy from the strata.

use crate::error::{Error, Result};
use crate::exactalg::CycloProduct;
use crate::strata::ValidatedDivisor;

/// `(t-1)^{(-1)^{n+1}} prod_S (t^{m(S)} - 1)^{(-1)^n chi(S)}` over strata lying on
/// a single exceptional component.
pub fn acampo_charpoly(v: &ValidatedDivisor) -> Result<CycloProduct> {
    if !v.sd.isolated {
        return Err(Error::Validation("the divisor does not resolve an isolated singularity".into()));
    }
    let n = v.n();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut out = CycloProduct::t_minus_one_pow(1, -sign);
    for (_, s, m) in v.strata() {
        if let [id] = s.components[..] {
            if v.is_exceptional(id) {
                out = &out * &CycloProduct::t_minus_one_pow(m as u64, sign * s.euler);
            }
        }
    }
    Ok(out)
}

/// `prod (t^{|orbit|} - 1)` over the orbits of a permutation.
pub fn perm_charpoly(perm: &[usize]) -> CycloProduct {
    let mut seen = vec![false; perm.len()];
    let mut out = CycloProduct::one();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out = &out * &CycloProduct::t_minus_one_pow(len, 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::{gen_one_branch, gen_two_branch, validate};

    #[test]
    fn cusp() {
        let d = acampo_charpoly(&validate(gen_one_branch(2, 3).unwrap()).unwrap()).unwrap();
        assert_eq!(d.to_poly().unwrap().to_string(), "t^2 - t + 1");
        assert_eq!(d, CycloProduct::from_phi_exponents([(6, 1)]));
    }

    #[test]
    fn two_branch_display() {
        let (p, q, r, s) = (2i64, 3i64, 4i64, 1i64);
        let d = acampo_charpoly(&validate(gen_two_branch(p, q, r, s).unwrap()).unwrap()).unwrap();
        let u = |m: i64, e: i64| CycloProduct::t_minus_one_pow(m as u64, e);
        let want = [u(1, 1), u(p * (q + s), 1), u(s * (p + r), 1), u(q + s, -1), u(p + r, -1)].into_iter().product::<CycloProduct>();
        assert_eq!(d, want);
    }

    #[test]
    fn permutations() {
        assert_eq!(perm_charpoly(&[0, 1, 2]), CycloProduct::t_minus_one_pow(1, 3));
        assert_eq!(perm_charpoly(&[1, 2, 3, 0]), CycloProduct::t_minus_one_pow(4, 1));
        assert_eq!(perm_charpoly(&[1, 0, 3, 2]), CycloProduct::t_minus_one_pow(2, 2));
        assert!(perm_charpoly(&[]).is_one());
    }
}
