//! Generators for the standard TBN constructions and closed-form bounds.

mod bounds;
mod gates;
mod rewire;

pub use bounds::{acyclic_bound, acyclic_bound_closed, acyclic_bound_sum, farkas_k, polymer_size_bound};
pub use gates::{gen_and_gate_basic, gen_and_tree, untriggered_gate_config, TreeSpec, AND2_INTERMEDIATES};
pub use rewire::{gen_rewire_chain, tree_rewire_split};

use crate::error::{Error, Result};
use crate::model::{Collection, Configuration, Domain, Monomer, MonomerType, Site, Tbn};

pub(crate) fn mono(name: &str, doms: &[(&str, bool, usize)]) -> MonomerType {
    let mut ds = Vec::new();
    for &(n, st, k) in doms {
        for _ in 0..k {
            ds.push(Domain { name: n.to_string(), starred: st });
        }
    }
    MonomerType::new(name, ds).expect("generator monomers are valid")
}

/// Builds a TBN from `(type, count)` pairs, dropping zero counts.
pub(crate) fn assemble(types: Vec<(MonomerType, u32)>) -> (Tbn, Collection) {
    let types: Vec<(MonomerType, u32)> = types.into_iter().filter(|t| t.1 > 0).collect();
    let tbn = Tbn::new(types.iter().map(|t| t.0.clone()).collect()).expect("generator names are unique");
    let mut c = Collection::zeros(&tbn);
    for (t, n) in &types {
        c.counts[tbn.monomer_index(&t.name).unwrap()] = *n;
    }
    (tbn, c)
}

/// `m1={a,b}`, `m2={a*,b*}`, `m3={a}`, `m4={b}`, one copy each.
pub fn gen_fig1() -> (Tbn, Collection) {
    assemble(vec![
        (mono("m1", &[("a", false, 1), ("b", false, 1)]), 1),
        (mono("m2", &[("a", true, 1), ("b", true, 1)]), 1),
        (mono("m3", &[("a", false, 1)]), 1),
        (mono("m4", &[("b", false, 1)]), 1),
    ])
}

/// Translator cascade with `k` layers of redundancy `n`. Layer `i` has `n`
/// fuels `F{i}={x_i}` and `n` gates `G{i}={x_i*, x_{i+1}}`; the terminator
/// gadget is `TERM={n·x_{k+1}}` and `TERMC={n·x_{k+1}*}`; the input is
/// `IN={n·x_1}`.
pub fn gen_translator(n: u32, k: u32, input_present: bool) -> Result<(Tbn, Collection)> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("translator needs n >= 1 and k >= 1".into()));
    }
    let x = |i: u32| format!("x{i}");
    let nn = n as usize;
    let mut types = Vec::new();
    for i in 1..=k {
        types.push((mono(&format!("F{i}"), &[(&x(i), false, 1)]), n));
        types.push((mono(&format!("G{i}"), &[(&x(i), true, 1), (&x(i + 1), false, 1)]), n));
    }
    types.push((mono("TERM", &[(&x(k + 1), false, nn)]), 1));
    types.push((mono("TERMC", &[(&x(k + 1), true, nn)]), 1));
    types.push((mono("IN", &[(&x(1), false, nn)]), u32::from(input_present)));
    Ok(assemble(types))
}

/// Intended configurations of the input-free translator: output 0 pairs every
/// fuel with a gate and binds the terminator gadget (`S = nk+1`); output 1
/// lets `TERMC` take the last layer's gates, freeing `TERM` (`S = n(k−1)+2`).
pub fn intended_translator_config(n: u32, k: u32, output: u8) -> Result<Configuration> {
    if output > 1 {
        return Err(Error::InvalidArgument("output must be 0 or 1".into()));
    }
    let (tbn, c) = gen_translator(n, k, false)?;
    let base = Configuration::unbonded(&tbn, &c);
    let ms: Vec<Monomer> = base.monomers().to_vec();
    let find = |name: &str, copy: usize| -> usize {
        ms.iter().enumerate().filter(|(_, m)| m.type_name == name).nth(copy).map(|(i, _)| i).unwrap()
    };
    let slot = |i: usize, st: bool, occ: usize| -> usize {
        ms[i].domains.iter().enumerate().filter(|(_, d)| d.starred == st).nth(occ).map(|(s, _)| s).unwrap()
    };
    let mut bonds = Vec::new();
    let term = find("TERM", 0);
    let termc = find("TERMC", 0);
    for i in 1..=k {
        for j in 0..n as usize {
            let f = find(&format!("F{i}"), j);
            let g = find(&format!("G{i}"), j);
            bonds.push((Site::new(f, slot(f, false, 0)), Site::new(g, slot(g, true, 0))));
            if output == 1 && i == k {
                bonds.push((Site::new(g, slot(g, false, 0)), Site::new(termc, slot(termc, true, j))));
            } else if output == 0 && i == k {
                bonds.push((Site::new(term, slot(term, false, j)), Site::new(termc, slot(termc, true, j))));
            }
        }
    }
    Configuration::new(ms.clone(), bonds)
}

/// Tree polymer: `m1={k·d1}`, `m_j={d_{j−1}*, k·d_j}`, `m_n={d_{n−1}*}` with
/// `k^{j−1}` copies of `m_j`. Its unique saturated configuration is a single
/// polymer of `(k^n−1)/(k−1)` monomers (`n` when `k=1`).
pub fn gen_tree_polymer(n: u32, k: u32) -> Result<(Tbn, Collection)> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidArgument("tree polymer needs n >= 2 and k >= 1".into()));
    }
    let d = |j: u32| format!("d{j}");
    let kk = k as usize;
    let mut types = Vec::new();
    for j in 1..=n {
        let mut doms: Vec<(String, bool, usize)> = Vec::new();
        if j > 1 {
            doms.push((d(j - 1), true, 1));
        }
        if j < n {
            doms.push((d(j), false, kk));
        }
        let doms: Vec<(&str, bool, usize)> = doms.iter().map(|(a, b, c)| (a.as_str(), *b, *c)).collect();
        let count = k.checked_pow(j - 1).ok_or_else(|| Error::InvalidArgument("count overflows".into()))?;
        types.push((mono(&format!("m{j}"), &doms), count));
    }
    Ok(assemble(types))
}
