//! Dimension bookkeeping along exact sequences.

use crate::error::{Error, Result};

/// The one unknown term of an exact sequence `0 -> a_0 -> .. -> a_k -> 0`.
pub fn column_exact_solver(seq: &[Option<i64>]) -> Result<i64> {
    let unknown: Vec<usize> = seq.iter().enumerate().filter(|(_, x)| x.is_none()).map(|(i, _)| i).collect();
    let [j] = unknown[..] else {
        return Err(Error::Validation(format!("exact sequence needs exactly one unknown, found {}", unknown.len())));
    };
    let alt: i64 = seq.iter().enumerate().filter_map(|(i, x)| x.map(|x| if i % 2 == 0 { x } else { -x })).sum();
    let x = if j % 2 == 0 { -alt } else { alt };
    if x < 0 {
        return Err(Error::Inconsistent(format!("exact sequence forces a negative dimension {x}")));
    }
    Ok(x)
}
