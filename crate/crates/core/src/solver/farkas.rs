//! Brute-force decision of the balanced-combination / separating-hyperplane
//! dichotomy for small integer vectors.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FarkasResult {
    /// `Σ n_j v_j = 0` with `0 ≤ n_j ≤ K`, not all zero.
    Balanced { coefficients: Vec<i64> },
    /// `hᵀ v_j ≥ 1` for every `j`, `|h_i| ≤ K`.
    Hyperplane { h: Vec<i64> },
}

/// `(a·d)^(d+1)`, or `None` on overflow.
pub fn farkas_k_checked(a: u64, d: u32) -> Option<u64> {
    a.checked_mul(d as u64)?.checked_pow(d + 1)
}

/// Largest number of candidate vectors either search may visit.
pub const FARKAS_BUDGET: u128 = 50_000_000;

pub fn is_balanced(vectors: &[Vec<i64>], n: &[i64]) -> bool {
    if n.iter().all(|&x| x == 0) || n.iter().any(|&x| x < 0) {
        return false;
    }
    let d = vectors.first().map_or(0, Vec::len);
    (0..d).all(|i| vectors.iter().zip(n).map(|(v, &c)| v[i] * c).sum::<i64>() == 0)
}

pub fn separates(vectors: &[Vec<i64>], h: &[i64]) -> bool {
    vectors.iter().all(|v| v.iter().zip(h).map(|(a, b)| a * b).sum::<i64>() >= 1)
}

fn odometer(x: &mut [i64], lo: i64, hi: i64) -> bool {
    for e in x.iter_mut() {
        if *e < hi {
            *e += 1;
            return true;
        }
        *e = lo;
    }
    false
}

/// Returns whichever certificate exists, searching coefficient and normal
/// vectors inside the box of radius `K = (a·d)^(d+1)`.
pub fn farkas_decide(vectors: &[Vec<i64>], a: i64, d: usize) -> Result<FarkasResult> {
    if vectors.is_empty() {
        return Err(Error::InvalidArgument("need at least one vector".into()));
    }
    if a < 1 || d < 1 {
        return Err(Error::InvalidArgument("a and d must be positive".into()));
    }
    for v in vectors {
        if v.len() != d {
            return Err(Error::InvalidArgument(format!("vector {v:?} does not have dimension {d}")));
        }
        if v.iter().any(|&x| x.abs() > a) {
            return Err(Error::InvalidArgument(format!("vector {v:?} has an entry outside [-{a}, {a}]")));
        }
    }
    let k = farkas_k_checked(a as u64, d as u32)
        .filter(|&k| k <= i64::MAX as u64 / 4)
        .ok_or_else(|| Error::Budget("K overflows".into()))? as i64;
    let l = vectors.len() as u32;
    let bal = (k as u128 + 1).checked_pow(l).unwrap_or(u128::MAX);
    let hyp = (2 * k as u128 + 1).checked_pow(d as u32).unwrap_or(u128::MAX);
    if bal > FARKAS_BUDGET || hyp > FARKAS_BUDGET {
        return Err(Error::Budget(format!("K = {k} gives {bal} balance candidates and {hyp} hyperplanes")));
    }
    let mut n = vec![0i64; vectors.len()];
    while odometer(&mut n, 0, k) {
        if is_balanced(vectors, &n) {
            return Ok(FarkasResult::Balanced { coefficients: n });
        }
    }
    let mut h = vec![-k; d];
    loop {
        if separates(vectors, &h) {
            return Ok(FarkasResult::Hyperplane { h });
        }
        if !odometer(&mut h, -k, k) {
            break;
        }
    }
    Err(Error::Budget("no certificate inside the K box".into()))
}
