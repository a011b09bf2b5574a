use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pos(x: u64, what: &str) -> Result<()> {
    if x == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// `2(m+d)(a·d)^(2d+3)`: the polymer-size bound for stable configurations of
/// a TBN with `d` domain names, `m` monomer types and at most `a` domains of
/// one name per monomer.
pub fn polymer_size_bound(d: u64, m: u64, a: u64) -> Result<BigUint> {
    pos(d, "d")?;
    pos(m, "m")?;
    pos(a, "a")?;
    let e = u32::try_from(2 * d + 3).map_err(|_| Error::InvalidArgument("d too large".into()))?;
    Ok(BigUint::from(2u32) * BigUint::from(m + d) * BigUint::from(a * d).pow(e))
}

/// `(a·d)^(d+1)`.
pub fn farkas_k(a: u64, d: u64) -> Result<BigUint> {
    pos(a, "a")?;
    pos(d, "d")?;
    let e = u32::try_from(d + 1).map_err(|_| Error::InvalidArgument("d too large".into()))?;
    Ok(BigUint::from(a * d).pow(e))
}

/// `1 + l·Σ_{j=1}^{d−1} (l−1)^{j−1}`.
pub fn acyclic_bound_sum(d: u64, l: u64) -> Result<BigUint> {
    pos(d, "d")?;
    pos(l, "l")?;
    let mut s = BigUint::zero();
    let mut p = BigUint::one();
    for _ in 1..d {
        s += &p;
        p *= BigUint::from(l - 1);
    }
    Ok(BigUint::one() + BigUint::from(l) * s)
}

/// `1 + l·((l−1)^d − l + 1)/(l² − 3l + 2)`, defined for `l ≥ 3`.
pub fn acyclic_bound_closed(d: u64, l: u64) -> Result<BigUint> {
    pos(d, "d")?;
    if l < 3 {
        return Err(Error::InvalidArgument("closed form needs l >= 3".into()));
    }
    let e = u32::try_from(d).map_err(|_| Error::InvalidArgument("d too large".into()))?;
    let num = BigUint::from(l - 1).pow(e) + BigUint::one() - BigUint::from(l);
    let den = BigUint::from(l * l + 2 - 3 * l);
    debug_assert!((&num % &den).is_zero());
    Ok(BigUint::one() + BigUint::from(l) * num / den)
}

/// Maximum size of a stable polymer whose binding graph is acyclic, with `d`
/// domain names and at most `l` domains per monomer.
pub fn acyclic_bound(d: u64, l: u64) -> Result<BigUint> {
    if l >= 3 {
        acyclic_bound_closed(d, l)
    } else {
        acyclic_bound_sum(d, l)
    }
}
