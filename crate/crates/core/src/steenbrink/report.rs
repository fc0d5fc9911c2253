//! Graded pieces of the limit mixed Hodge structure and their rendering.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::exactalg::CycloProduct;
use crate::monodromy::JordanSpectrum;

/// A cyclotomic product times integer powers of named unknown polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymbolicCyclo {
    pub known: CycloProduct,
    /// Symbol name -> exponent.
    pub symbols: BTreeMap<String, i64>,
}

impl SymbolicCyclo {
    pub fn known(c: CycloProduct) -> Self {
        SymbolicCyclo { known: c, symbols: BTreeMap::new() }
    }

    pub fn symbol(name: &str, e: i64) -> Self {
        SymbolicCyclo { known: CycloProduct::one(), symbols: BTreeMap::from([(name.to_string(), e)]) }
    }

    pub fn is_concrete(&self) -> bool {
        self.symbols.values().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &SymbolicCyclo) -> SymbolicCyclo {
        let mut symbols = self.symbols.clone();
        for (k, e) in &other.symbols {
            *symbols.entry(k.clone()).or_default() += e;
        }
        symbols.retain(|_, e| *e != 0);
        SymbolicCyclo { known: &self.known * &other.known, symbols }
    }

    pub fn inverse(&self) -> SymbolicCyclo {
        SymbolicCyclo { known: self.known.inverse(), symbols: self.symbols.iter().map(|(k, e)| (k.clone(), -e)).collect() }
    }

    pub fn div(&self, other: &SymbolicCyclo) -> SymbolicCyclo {
        self.mul(&other.inverse())
    }

    /// Replaces each symbol by a concrete value.
    pub fn substitute(&self, values: &BTreeMap<String, CycloProduct>) -> SymbolicCyclo {
        let mut out = SymbolicCyclo::known(self.known.clone());
        for (k, &e) in &self.symbols {
            match values.get(k) {
                Some(v) => out.known = &out.known * &v.pow(e),
                None => {
                    out.symbols.insert(k.clone(), e);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut v = cyclo_json(&self.known);
        if !self.symbols.is_empty() {
            v["symbols"] = json!(self.symbols);
        }
        v
    }
}

impl fmt::Display for SymbolicCyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.known)?;
        for (k, e) in &self.symbols {
            match e {
                1 => write!(f, " * {k}")?,
                -1 => write!(f, " / {k}")?,
                e if *e > 0 => write!(f, " * {k}^{e}")?,
                e => write!(f, " / {k}^{}", -e)?,
            }
        }
        Ok(())
    }
}

/// `{"phi": {d: c}, "exponents": {m: e}, "factored": ...}`.
pub fn cyclo_json(c: &CycloProduct) -> Value {
    let phi: Map<String, Value> = c.phi_exponents().iter().map(|(d, e)| (d.to_string(), json!(e))).collect();
    let exps: Map<String, Value> = c.exponents().iter().map(|(d, e)| (d.to_string(), json!(e))).collect();
    json!({ "phi": phi, "exponents": exps, "factored": c.to_string(), "degree": c.degree() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub weight: usize,
    pub dim: Option<usize>,
    pub delta: Option<SymbolicCyclo>,
    /// `(h^{p,q}, h^{q,p})` where known.
    pub hodge: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MHSReport {
    pub n: usize,
    pub delta: CycloProduct,
    pub graded: Vec<GradedPiece>,
    pub block_polynomials: BTreeMap<usize, SymbolicCyclo>,
    pub jordan: Option<JordanSpectrum>,
    pub notes: Vec<String>,
}

impl MHSReport {
    pub fn piece(&self, weight: usize) -> Option<&GradedPiece> {
        self.graded.iter().find(|g| g.weight == weight)
    }

    pub fn dims(&self) -> Vec<Option<usize>> {
        (0..=2 * self.n).map(|w| self.piece(w).and_then(|g| g.dim)).collect()
    }

    pub fn delta_of(&self, weight: usize) -> Option<&SymbolicCyclo> {
        self.piece(weight).and_then(|g| g.delta.as_ref())
    }

    pub fn to_json(&self) -> Value {
        let graded: Vec<Value> = self
            .graded
            .iter()
            .map(|g| {
                let mut v = json!({ "weight": g.weight, "dim": g.dim });
                if let Some(d) = &g.delta {
                    v["delta"] = d.to_json();
                }
                if let Some((a, b)) = g.hodge {
                    v["hodge"] = json!([a, b]);
                }
                v
            })
            .collect();
        let blocks: Map<String, Value> = self.block_polynomials.iter().map(|(l, p)| (l.to_string(), p.to_json())).collect();
        let mut v = json!({
            "n": self.n,
            "total_dim": self.delta.degree(),
            "delta": cyclo_json(&self.delta),
            "graded": graded,
            "block_polynomials": blocks,
        });
        if let Some(j) = &self.jordan {
            let spec: Vec<Value> = j.0.iter().map(|(&(d, l), &c)| json!({ "order": d, "size": l, "count": c })).collect();
            v["jordan"] = Value::Array(spec);
        }
        if !self.notes.is_empty() {
            v["notes"] = json!(self.notes);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("H^{}(F), dim {}\nDelta(t) = {}\n", self.n, self.delta.degree(), self.delta);
        for g in &self.graded {
            let dim = g.dim.map_or("?".to_string(), |d| d.to_string());
            let delta = g.delta.as_ref().map_or("?".to_string(), |d| d.to_string());
            s += &format!("gr_{}  dim {:>4}  Delta = {}", g.weight, dim, delta);
            if let Some((a, b)) = g.hodge {
                s += &format!("  hodge ({a}, {b})");
            }
            s.push('\n');
        }
        for (l, p) in &self.block_polynomials {
            s += &format!("blocks of size {l}: {p}\n");
        }
        for n in &self.notes {
            s += &format!("note: {n}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbols_cancel() {
        let a = SymbolicCyclo::symbol("D0", -1).mul(&SymbolicCyclo::known(CycloProduct::t_minus_one_pow(2, 1)));
        assert!(!a.is_concrete());
        assert!(a.div(&SymbolicCyclo::symbol("D0", -1)).is_concrete());
        let v = BTreeMap::from([("D0".to_string(), CycloProduct::t_minus_one_pow(1, 1))]);
        assert_eq!(a.substitute(&v).known, &CycloProduct::t_minus_one_pow(2, 1) / &CycloProduct::t_minus_one_pow(1, 1));
        assert_eq!(a.to_string(), "(t^2 - 1) / D0");
    }
}
