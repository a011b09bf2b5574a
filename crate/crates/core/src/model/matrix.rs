use std::collections::BTreeSet;

use crate::model::config::Configuration;
use crate::model::types::{Collection, Domain, MonomerType, Tbn};

/// `M = M⁺ − M⁻`, rows indexed by [`Tbn::domains`], columns by [`Tbn::monomers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomerMatrix {
    pub m_plus: Vec<Vec<i64>>,
    pub m_minus: Vec<Vec<i64>>,
    pub m: Vec<Vec<i64>>,
}

impl MonomerMatrix {
    pub fn rows(&self) -> usize {
        self.m.len()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.m.iter().map(|r| r[j]).collect()
    }

    /// `M·c`.
    pub fn apply(&self, c: &[u32]) -> Vec<i64> {
        self.m.iter().map(|r| r.iter().zip(c).map(|(a, &x)| a * x as i64).sum()).collect()
    }
}

pub fn monomer_matrix(tbn: &Tbn) -> MonomerMatrix {
    let (d, m) = (tbn.domains().len(), tbn.monomers().len());
    let mut plus = vec![vec![0i64; m]; d];
    let mut minus = vec![vec![0i64; m]; d];
    for (j, t) in tbn.monomers().iter().enumerate() {
        for dom in t.domains() {
            let i = tbn.domain_index(&dom.name).expect("domain declared");
            if dom.starred {
                minus[i][j] += 1;
            } else {
                plus[i][j] += 1;
            }
        }
    }
    let mm = plus.iter().zip(&minus).map(|(p, q)| p.iter().zip(q).map(|(a, b)| a - b).collect()).collect();
    MonomerMatrix { m_plus: plus, m_minus: minus, m: mm }
}

/// `M·c`, one entry per domain name.
pub fn excess_vector(tbn: &Tbn, c: &Collection) -> Vec<i64> {
    monomer_matrix(tbn).apply(&c.counts)
}

/// Domain names whose primary/complement roles are swapped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relabeling {
    pub flipped: BTreeSet<String>,
}

impl Relabeling {
    pub fn domain(&self, d: &Domain) -> Domain {
        if self.flipped.contains(&d.name) {
            d.complement()
        } else {
            d.clone()
        }
    }

    pub fn tbn(&self, tbn: &Tbn) -> Tbn {
        let ms = tbn
            .monomers()
            .iter()
            .map(|t| {
                MonomerType::new(t.name.clone(), t.domains().iter().map(|d| self.domain(d)).collect())
                    .expect("relabeling keeps monomers nonempty")
            })
            .collect();
        Tbn::with_domains(ms, tbn.domains().iter().cloned()).expect("relabeling keeps names unique")
    }

    /// Renames domains; each monomer's slots are re-sorted and bonds follow them.
    pub fn configuration(&self, a: &Configuration) -> Configuration {
        use crate::model::config::{Monomer, Site};
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let monomers = a
            .monomers()
            .iter()
            .map(|m| {
                let ds: Vec<Domain> = m.domains.iter().map(|d| self.domain(d)).collect();
                let mut order: Vec<usize> = (0..ds.len()).collect();
                order.sort_by(|&x, &y| ds[x].cmp(&ds[y]).then(x.cmp(&y)));
                let mut inv = vec![0; ds.len()];
                for (new, &old) in order.iter().enumerate() {
                    inv[old] = new;
                }
                perms.push(inv);
                Monomer { type_name: m.type_name.clone(), domains: order.iter().map(|&k| ds[k].clone()).collect() }
            })
            .collect();
        let mv = |s: Site| Site::new(s.monomer, perms[s.monomer][s.slot]);
        let bonds = a.bonds().iter().map(|&(x, y)| (mv(x), mv(y))).collect();
        Configuration::new(monomers, bonds).expect("relabeling preserves complementarity")
    }
}

/// Flips exactly the rows of negative excess; zero rows stay.
pub fn relabel_nonnegative(tbn: &Tbn, c: &Collection) -> (Tbn, Relabeling) {
    let ex = excess_vector(tbn, c);
    let flipped = tbn.domains().iter().zip(&ex).filter(|(_, &e)| e < 0).map(|(d, _)| d.clone()).collect();
    let r = Relabeling { flipped };
    (r.tbn(tbn), r)
}
