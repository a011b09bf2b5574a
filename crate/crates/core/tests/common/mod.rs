#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use tbn_core::solver::{enumerate_configurations, Filter};
use tbn_core::{Collection, Configuration, Domain, Monomer, MonomerType, Site, Tbn};

pub const NAMES: [&str; 3] = ["a", "b", "c"];

/// Monomer `T<i>` has the listed `(name index, starred)` domains and count.
pub type Shape = Vec<(Vec<(usize, bool)>, u32)>;

pub fn build(shape: &Shape) -> (Tbn, Collection) {
    let types: Vec<MonomerType> = shape
        .iter()
        .enumerate()
        .map(|(i, (doms, _))| {
            let ds = doms.iter().map(|&(n, s)| Domain::new(NAMES[n], s).unwrap()).collect();
            MonomerType::new(format!("T{i}"), ds).unwrap()
        })
        .collect();
    let tbn = Tbn::new(types).unwrap();
    let c = Collection::new(shape.iter().map(|x| x.1).collect());
    (tbn, c)
}

pub fn arb_shape(max_types: usize, names: usize, max_doms: usize, max_count: u32) -> impl Strategy<Value = Shape> {
    prop::collection::vec(
        (prop::collection::vec((0..names, any::<bool>()), 1..=max_doms), 1..=max_count),
        1..=max_types,
    )
}

pub fn random_shape<R: Rng>(rng: &mut R, max_types: usize, names: usize, max_doms: usize, max_count: u32) -> Shape {
    let t = rng.gen_range(1..=max_types);
    (0..t)
        .map(|_| {
            let nd = rng.gen_range(1..=max_doms);
            let doms = (0..nd).map(|_| (rng.gen_range(0..names), rng.gen_bool(0.5))).collect();
            (doms, rng.gen_range(1..=max_count))
        })
        .collect()
}

pub fn instances(shape: &Shape) -> usize {
    shape.iter().map(|(d, n)| d.len() * *n as usize).sum()
}

/// A saturated configuration: for each name, a random maximum matching
/// between its primary and complement instances.
pub fn random_saturated<R: Rng>(tbn: &Tbn, c: &Collection, rng: &mut R) -> Configuration {
    let base = Configuration::unbonded(tbn, c);
    let mut bonds = Vec::new();
    for name in tbn.domains() {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for (i, m) in base.monomers().iter().enumerate() {
            for (s, d) in m.domains.iter().enumerate() {
                if &d.name == name {
                    if d.starred {
                        q.push(Site::new(i, s));
                    } else {
                        p.push(Site::new(i, s));
                    }
                }
            }
        }
        p.shuffle(rng);
        q.shuffle(rng);
        bonds.extend(p.into_iter().zip(q));
    }
    Configuration::new(base.monomers().to_vec(), bonds).unwrap()
}

/// Brute-force maximum entropy over saturated configurations.
pub fn oracle_stable_entropy(tbn: &Tbn, c: &Collection) -> usize {
    enumerate_configurations(tbn, c, Filter::Saturated, None, usize::MAX)
        .unwrap()
        .iter()
        .map(|a| a.entropy())
        .max()
        .unwrap()
}

pub fn monomers_of(tbn: &Tbn, c: &Collection) -> Vec<Monomer> {
    Configuration::unbonded(tbn, c).monomers().to_vec()
}
