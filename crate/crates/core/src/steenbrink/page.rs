//! `E_1` pages: named cohomology groups placed at `(p, q)` with their differentials.

use serde_json::{json, Value};

use super::report::cyclo_json;
use crate::exactalg::CycloProduct;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Entry {
    pub p: i64,
    pub q: i64,
    /// The summand `^k E_1`.
    pub layer: usize,
    pub label: String,
    pub dim: Option<usize>,
    pub delta: Option<CycloProduct>,
}

impl E1Entry {
    pub fn new(p: i64, q: i64, layer: usize, label: &str, dim: usize, delta: CycloProduct) -> Self {
        E1Entry { p, q, layer, label: label.to_string(), dim: Some(dim), delta: Some(delta) }
    }

    /// Weight of the pure Hodge structure.
    pub fn weight(&self) -> i64 {
        self.p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowKind {
    /// `^k delta` inside one layer.
    Gysin(usize),
    /// `^{k,k+1} delta` between layers.
    MayerVietoris(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub kind: ArrowKind,
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Page {
    pub n: usize,
    pub entries: Vec<E1Entry>,
    pub arrows: Vec<Arrow>,
}

impl E1Page {
    /// Total dimension at `(p, q)`, summed over layers.
    pub fn dim(&self, p: i64, q: i64) -> Option<usize> {
        self.entries.iter().filter(|e| e.p == p && e.q == q).map(|e| e.dim).sum()
    }

    pub fn entry(&self, label: &str) -> Option<&E1Entry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// `sum (-1)^{p+q} dim E_1^{p,q}` when every dimension is known.
    pub fn euler_characteristic(&self) -> Option<i64> {
        self.entries.iter().map(|e| e.dim.map(|d| if (e.p + e.q) % 2 == 0 { d as i64 } else { -(d as i64) })).sum()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let mut v = json!({ "p": e.p, "q": e.q, "layer": e.layer, "space": e.label, "dim": e.dim, "weight": e.weight() });
                if let Some(d) = &e.delta {
                    v["delta"] = cyclo_json(d);
                }
                v
            })
            .collect();
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| {
                let (kind, k) = match a.kind {
                    ArrowKind::Gysin(k) => ("gysin", k),
                    ArrowKind::MayerVietoris(k) => ("mayer-vietoris", k),
                };
                json!({ "from": [a.from.0, a.from.1], "to": [a.to.0, a.to.1], "kind": kind, "layer": k, "rank": a.rank })
            })
            .collect();
        json!({ "n": self.n, "entries": entries, "arrows": arrows })
    }
}
