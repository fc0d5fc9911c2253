//! Products of cyclotomic factors `prod (t^m - 1)^{e_m}` with integer exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Stored by cyclotomic exponents `Phi_d -> c_d`, which makes equality structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloProduct {
    phi: BTreeMap<u64, i64>,
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn moebius(mut n: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

static CYCLO_CACHE: Mutex<BTreeMap<u64, Poly<BigInt>>> = Mutex::new(BTreeMap::new());

/// The cyclotomic polynomial `Phi_d`.
pub fn cyclotomic(d: u64) -> Poly<BigInt> {
    assert!(d > 0);
    if let Some(p) = CYCLO_CACHE.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = Poly::t_pow_minus_one(d as usize);
    for k in divisors(d) {
        if k != d {
            p = p.exact_div_monic(&cyclotomic(k)).expect("Phi_k divides t^d - 1");
        }
    }
    CYCLO_CACHE.lock().unwrap().insert(d, p.clone());
    p
}

impl CycloProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `(t^m - 1)^e`
    pub fn t_minus_one_pow(m: u64, e: i64) -> Self {
        assert!(m > 0, "t^0 - 1 is not a valid factor");
        let mut r = Self::one();
        for d in divisors(m) {
            r.add_phi(d, e);
        }
        r
    }

    /// Product of `(t^m - 1)^{e_m}` over the given pairs.
    pub fn from_exponents<I: IntoIterator<Item = (u64, i64)>>(it: I) -> Self {
        let mut r = Self::one();
        for (m, e) in it {
            r = &r * &Self::t_minus_one_pow(m, e);
        }
        r
    }

    /// Product of `Phi_d^{c_d}`.
    pub fn from_phi_exponents<I: IntoIterator<Item = (u64, i64)>>(it: I) -> Self {
        let mut r = Self::one();
        for (d, c) in it {
            assert!(d > 0);
            r.add_phi(d, c);
        }
        r
    }

    fn add_phi(&mut self, d: u64, c: i64) {
        let e = self.phi.entry(d).or_insert(0);
        *e += c;
        if *e == 0 {
            self.phi.remove(&d);
        }
    }

    pub fn phi_exponents(&self) -> &BTreeMap<u64, i64> {
        &self.phi
    }

    /// Same as [`CycloProduct::phi_exponents`], owned.
    pub fn canonical(&self) -> BTreeMap<u64, i64> {
        self.phi.clone()
    }

    pub fn phi_exponent(&self, d: u64) -> i64 {
        self.phi.get(&d).copied().unwrap_or(0)
    }

    /// Exponents `e_m` with `self = prod (t^m - 1)^{e_m}`.
    pub fn exponents(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        let Some(&max) = self.phi.keys().next_back() else { return out };
        // e_m = sum_{m | d} mu(d/m) c_d
        for m in 1..=max {
            let mut e = 0;
            for (&d, &c) in self.phi.range(m..) {
                if d % m == 0 {
                    e += moebius(d / m) * c;
                }
            }
            if e != 0 {
                out.insert(m, e);
            }
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.phi.values().all(|&c| c >= 0)
    }

    /// Degree of numerator minus degree of denominator.
    pub fn degree(&self) -> i64 {
        self.phi.iter().map(|(&d, &c)| euler_phi(d) as i64 * c).sum()
    }

    pub fn pow(&self, k: i64) -> Self {
        CycloProduct { phi: self.phi.iter().filter(|_| k != 0).map(|(&d, &c)| (d, c * k)).collect() }
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// Factors with eigenvalue one, i.e. the power of `Phi_1`.
    pub fn unipotent_part(&self) -> Self {
        Self::from_phi_exponents([(1, self.phi_exponent(1))])
    }

    pub fn non_unipotent_part(&self) -> Self {
        self / &self.unipotent_part()
    }

    /// Substitution `t -> t^k`.
    pub fn compose_power(&self, k: u64) -> Self {
        Self::from_exponents(self.exponents().into_iter().map(|(m, e)| (m * k, e)))
    }

    pub fn to_poly(&self) -> Result<Poly<BigInt>> {
        if !self.is_polynomial() {
            return Err(Error::Inconsistent(format!("{self} is not a polynomial")));
        }
        let mut p = Poly::one();
        for (&d, &c) in &self.phi {
            let f = cyclotomic(d);
            for _ in 0..c {
                p = &p * &f;
            }
        }
        Ok(p)
    }

    /// Factor a monic integer polynomial whose roots are roots of unity.
    pub fn from_poly(p: &Poly<BigInt>) -> Result<Self> {
        cyclo_factor_any(p)
    }
}

/// Write `p` as a product of cyclotomic polynomials, or fail if it is not one.
pub fn cyclo_factor_any(p: &Poly<BigInt>) -> Result<CycloProduct> {
    if !p.is_monic() {
        return Err(Error::Inconsistent(format!("{p} is not monic")));
    }
    let mut rest = p.clone();
    let mut out = CycloProduct::one();
    let mut d = 1u64;
    while rest.degree().unwrap() > 0 {
        let deg = rest.degree().unwrap() as u64;
        // Phi_d has degree phi(d) >= sqrt(d/2), so d is bounded by 2 deg^2
        if d > 2 * deg * deg + 2 {
            return Err(Error::Inconsistent(format!("{p} has a non-cyclotomic factor")));
        }
        if euler_phi(d) <= deg {
            let f = cyclotomic(d);
            while let Some(q) = rest.exact_div_monic(&f) {
                rest = q;
                out.add_phi(d, 1);
            }
        }
        d += 1;
    }
    if !rest.coeff(0).is_one() {
        return Err(Error::Inconsistent(format!("{p} has a non-cyclotomic factor")));
    }
    Ok(out)
}

/// Cyclotomic factorization restricted to divisors of `n`; faster when the order is known.
pub fn cyclo_factor(p: &Poly<BigInt>, n: u64) -> Result<CycloProduct> {
    if !p.is_monic() {
        return Err(Error::Inconsistent(format!("{p} is not monic")));
    }
    let mut rest = p.clone();
    let mut out = CycloProduct::one();
    for d in divisors(n) {
        if euler_phi(d) as usize > rest.degree().unwrap() {
            continue;
        }
        let f = cyclotomic(d);
        while rest.degree().unwrap() >= f.degree().unwrap() {
            match rest.exact_div_monic(&f) {
                Some(q) => {
                    rest = q;
                    out.add_phi(d, 1);
                }
                None => break,
            }
        }
    }
    if rest.degree() != Some(0) || !rest.coeff(0).is_one() {
        return Err(Error::Inconsistent(format!("characteristic polynomial has roots that are not {n}-th roots of unity")));
    }
    Ok(out)
}

impl std::ops::Mul for &CycloProduct {
    type Output = CycloProduct;

    fn mul(self, rhs: &CycloProduct) -> CycloProduct {
        let mut r = self.clone();
        for (&d, &c) in &rhs.phi {
            r.add_phi(d, c);
        }
        r
    }
}

impl std::ops::Div for &CycloProduct {
    type Output = CycloProduct;

    fn div(self, rhs: &CycloProduct) -> CycloProduct {
        self * &rhs.inverse()
    }
}

impl std::iter::Product for CycloProduct {
    fn product<I: Iterator<Item = CycloProduct>>(iter: I) -> Self {
        iter.fold(CycloProduct::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for CycloProduct {
    /// Printed as `(t^m - 1)^e` factors; `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex = self.exponents();
        if ex.is_empty() {
            return write!(f, "1");
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (m, e) in ex {
            let base = if m == 1 { "(t - 1)".to_string() } else { format!("(t^{m} - 1)") };
            let s = if e.abs() == 1 { base } else { format!("{base}^{}", e.abs()) };
            if e > 0 {
                num.push(s)
            } else {
                den.push(s)
            }
        }
        let num = if num.is_empty() { "1".to_string() } else { num.join("") };
        match den.len() {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/{}", den[0]),
            _ => write!(f, "{num}/({})", den.join("")),
        }
    }
}

impl fmt::Debug for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloProduct({self})")
    }
}
