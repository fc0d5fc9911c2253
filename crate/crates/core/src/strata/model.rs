//! Stratified Q-normal-crossing divisors: data model, validation, JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::qspace::QuotientType;

pub type ComponentId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Exceptional,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: ComponentId,
    pub name: String,
    pub role: Role,
    pub compact: bool,
    pub multiplicity: i64,
    /// Euler characteristic of the whole component, when it is checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_euler: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub components: Vec<ComponentId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singular_label: Option<String>,
    pub d: Vec<i64>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
    pub mult: BTreeMap<ComponentId, i64>,
    /// Euler characteristic; the number of points for 0-dimensional strata.
    pub euler: i64,
    pub dim: u32,
}

impl Stratum {
    pub fn local_type(&self, ncoords: usize) -> Result<QuotientType> {
        QuotientType::new(self.d.clone(), self.a.clone(), ncoords)
    }

    /// Exponents of the local germ: the stratum's components in id order, then zeros.
    pub fn germ(&self, ncoords: usize) -> Vec<i64> {
        let mut m: Vec<i64> = self.components.iter().map(|c| self.mult.get(c).copied().unwrap_or(0)).collect();
        m.resize(ncoords, 0);
        m
    }

    pub fn contains(&self, id: ComponentId) -> bool {
        self.components.contains(&id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedDivisor {
    pub n: u32,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    /// Whether the divisor resolves an isolated singularity.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub isolated: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

/// A divisor that passed [`validate`], with the multiplicity `m(S)` of every stratum.
#[derive(Debug, Clone)]
pub struct ValidatedDivisor {
    pub sd: StratifiedDivisor,
    pub m: Vec<i64>,
}

impl ValidatedDivisor {
    pub fn n(&self) -> usize {
        self.sd.n as usize
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component> {
        self.sd.components.iter().find(|c| c.id == id).ok_or_else(|| Error::Validation(format!("unknown component {id}")))
    }

    /// `(index, stratum, m)` triples.
    pub fn strata(&self) -> impl Iterator<Item = (usize, &Stratum, i64)> {
        self.sd.strata.iter().zip(&self.m).enumerate().map(|(i, (s, &m))| (i, s, m))
    }

    pub fn exceptional_ids(&self) -> Vec<ComponentId> {
        self.sd.components.iter().filter(|c| c.role == Role::Exceptional).map(|c| c.id).collect()
    }

    pub fn is_exceptional(&self, id: ComponentId) -> bool {
        self.sd.components.iter().any(|c| c.id == id && c.role == Role::Exceptional)
    }
}

/// Every violation found, one message per problem, prefixed by its location.
pub fn violations(sd: &StratifiedDivisor) -> (Vec<String>, Vec<i64>) {
    let mut errs = Vec::new();
    let mut ms = Vec::new();
    let n = sd.n as usize;
    if !(1..=2).contains(&n) {
        errs.push(format!("n = {n}: only curves (1) and surfaces (2) are supported"));
    }
    let ncoords = n + 1;
    let mut ids = BTreeSet::new();
    for (k, c) in sd.components.iter().enumerate() {
        if !ids.insert(c.id) {
            errs.push(format!("/components/{k}: duplicate id {}", c.id));
        }
        if c.multiplicity < 1 {
            errs.push(format!("/components/{k}: multiplicity {} must be positive", c.multiplicity));
        }
    }
    let mut sets: BTreeSet<Vec<ComponentId>> = BTreeSet::new();
    for s in &sd.strata {
        sets.insert(s.components.clone());
    }
    for (k, s) in sd.strata.iter().enumerate() {
        let at = format!("/strata/{k}");
        let before = errs.len();
        if s.components.is_empty() {
            errs.push(format!("{at}: empty component set"));
        }
        if s.components.windows(2).any(|w| w[0] >= w[1]) {
            errs.push(format!("{at}: component ids must be strictly increasing"));
        }
        for id in &s.components {
            if !ids.contains(id) {
                errs.push(format!("{at}: unknown component {id}"));
            }
        }
        if s.components.len() > ncoords {
            errs.push(format!("{at}: {} components exceed {ncoords} local coordinates", s.components.len()));
        } else if s.dim as usize > ncoords - s.components.len() {
            errs.push(format!("{at}: dimension {} too large for {} components", s.dim, s.components.len()));
        }
        let keys: BTreeSet<ComponentId> = s.mult.keys().copied().collect();
        if keys != s.components.iter().copied().collect() {
            errs.push(format!("{at}: local multiplicities must be given exactly for the stratum's components"));
        }
        for (id, m) in &s.mult {
            if let Some(c) = sd.components.iter().find(|c| c.id == *id) {
                if c.multiplicity != *m {
                    errs.push(format!("{at}: local multiplicity {m} of component {id} differs from declared {}", c.multiplicity));
                }
            }
        }
        if s.dim == 0 && s.euler < 1 {
            errs.push(format!("{at}: a 0-dimensional stratum needs a positive point count, got {}", s.euler));
        }
        // closure: every sub-intersection must be present
        if s.components.len() >= 2 {
            for drop in 0..s.components.len() {
                let sub: Vec<ComponentId> = s.components.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &c)| c).collect();
                if !sets.contains(&sub) {
                    errs.push(format!("{at}: intersection {sub:?} is not declared"));
                }
            }
        }
        let mut m = 0;
        if errs.len() == before {
            match s.local_type(ncoords) {
                Err(e) => errs.push(format!("{at}: {e}")),
                Ok(t) => match t.multiplicity(&s.germ(ncoords)) {
                    Ok(v) => m = v,
                    Err(e) => errs.push(format!("{at}: {e}")),
                },
            }
        }
        ms.push(m);
    }
    for c in &sd.components {
        let expected = match (c.ambient_euler, n, c.role, c.compact) {
            (Some(x), _, _, _) => Some(x),
            (None, 1, Role::Exceptional, true) => Some(2),
            _ => None,
        };
        if let Some(x) = expected {
            let sum: i64 = sd.strata.iter().filter(|s| s.contains(c.id)).map(|s| s.euler).sum();
            if sum != x {
                errs.push(format!("/components/{}: strata Euler characteristics sum to {sum}, expected {x}", c.id));
            }
        }
    }
    (errs, ms)
}

pub fn validate(sd: StratifiedDivisor) -> Result<ValidatedDivisor> {
    let (errs, m) = violations(&sd);
    if errs.is_empty() {
        Ok(ValidatedDivisor { sd, m })
    } else {
        Err(Error::Validation(errs.join("; ")))
    }
}

const TOP_KEYS: &[&str] = &["n", "components", "strata", "isolated"];
const COMPONENT_KEYS: &[&str] = &["id", "name", "role", "compact", "multiplicity", "ambient_euler"];
const STRATUM_KEYS: &[&str] = &["components", "singular_label", "d", "A", "mult", "euler", "dim"];

fn unknown_keys(v: &Value, allowed: &[&str], at: &str, out: &mut Vec<String>) {
    if let Some(obj) = v.as_object() {
        for k in obj.keys() {
            if !allowed.contains(&k.as_str()) {
                out.push(format!("{at}/{k}: unknown field"));
            }
        }
    }
}

/// Rejects fields outside the schema.
pub fn check_schema(v: &Value) -> Result<()> {
    let mut errs = Vec::new();
    unknown_keys(v, TOP_KEYS, "", &mut errs);
    for (key, allowed) in [("components", COMPONENT_KEYS), ("strata", STRATUM_KEYS)] {
        if let Some(items) = v.get(key).and_then(Value::as_array) {
            for (i, item) in items.iter().enumerate() {
                unknown_keys(item, allowed, &format!("/{key}/{i}"), &mut errs);
            }
        }
    }
    if errs.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(errs.join("; ")))
    }
}

pub fn from_json_value(v: Value, strict: bool) -> Result<StratifiedDivisor> {
    if strict {
        check_schema(&v)?;
    }
    serde_json::from_value(v).map_err(|e| Error::Validation(format!("schema: {e}")))
}

pub fn from_json_str(s: &str, strict: bool) -> Result<StratifiedDivisor> {
    from_json_value(serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?, strict)
}

pub fn load(path: &Path, strict: bool) -> Result<StratifiedDivisor> {
    from_json_str(&std::fs::read_to_string(path)?, strict)
}

pub fn to_json_string(sd: &StratifiedDivisor) -> String {
    serde_json::to_string_pretty(sd).expect("serializable") + "\n"
}

pub fn save(sd: &StratifiedDivisor, path: &Path) -> Result<()> {
    std::fs::write(path, to_json_string(sd))?;
    Ok(())
}
