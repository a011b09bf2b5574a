use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::types::{Collection, Domain, MonomerType, Tbn};

/// One monomer instance inside a configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomer {
    pub type_name: String,
    pub domains: Vec<Domain>,
}

impl Monomer {
    pub fn of(t: &MonomerType) -> Self {
        Monomer { type_name: t.name.clone(), domains: t.domains().to_vec() }
    }
}

/// A domain instance: slot `slot` of monomer instance `monomer`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub monomer: usize,
    pub slot: usize,
}

impl Site {
    pub fn new(monomer: usize, slot: usize) -> Self {
        Site { monomer, slot }
    }
}

/// Which polarity of a name to remove in [`Configuration::excise`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    PrimaryOnly,
    ComplementOnly,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigMetrics {
    pub enthalpy: usize,
    pub entropy: usize,
    pub saturated: bool,
    pub polymer_sizes: Vec<usize>,
}

/// Monomer instances plus a matching on their domain instances. Each bond is
/// stored as `(primary site, complement site)`; bonds are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    monomers: Vec<Monomer>,
    bonds: Vec<(Site, Site)>,
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nx = self.0[y];
            self.0[y] = r;
            y = nx;
        }
        r
    }
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl Configuration {
    pub fn new(monomers: Vec<Monomer>, bonds: Vec<(Site, Site)>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidConfiguration(m));
        for m in &monomers {
            if m.domains.is_empty() {
                return bad(format!("monomer instance of `{}` has no domains", m.type_name));
            }
        }
        let mut used = BTreeSet::new();
        let mut norm = Vec::with_capacity(bonds.len());
        for (a, b) in bonds {
            let da = monomers.get(a.monomer).and_then(|m| m.domains.get(a.slot));
            let db = monomers.get(b.monomer).and_then(|m| m.domains.get(b.slot));
            let (Some(da), Some(db)) = (da, db) else {
                return bad(format!("bond references a missing slot {a:?}/{b:?}"));
            };
            if !da.binds(db) {
                return bad(format!("bond joins non-complementary domains {da} and {db}"));
            }
            if !used.insert(a) || !used.insert(b) {
                return bad("a domain instance appears in two bonds".into());
            }
            norm.push(if da.starred { (b, a) } else { (a, b) });
        }
        norm.sort();
        Ok(Configuration { monomers, bonds: norm })
    }

    /// The bond-free configuration of a collection: instances ordered by type,
    /// then copy.
    pub fn unbonded(tbn: &Tbn, c: &Collection) -> Self {
        let mut monomers = Vec::new();
        for (t, &n) in tbn.monomers().iter().zip(&c.counts) {
            for _ in 0..n {
                monomers.push(Monomer::of(t));
            }
        }
        Configuration { monomers, bonds: Vec::new() }
    }

    pub fn monomers(&self) -> &[Monomer] {
        &self.monomers
    }

    pub fn bonds(&self) -> &[(Site, Site)] {
        &self.bonds
    }

    pub fn len(&self) -> usize {
        self.monomers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomers.is_empty()
    }

    pub fn domain(&self, s: Site) -> &Domain {
        &self.monomers[s.monomer].domains[s.slot]
    }

    /// `TYPE#k` labels, `k` counting earlier instances of the same type.
    pub fn instance_labels(&self) -> Vec<String> {
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        self.monomers
            .iter()
            .map(|m| {
                let k = seen.entry(&m.type_name).or_insert(0);
                let s = format!("{}#{}", m.type_name, k);
                *k += 1;
                s
            })
            .collect()
    }

    pub fn bound_sites(&self) -> BTreeSet<Site> {
        self.bonds.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    pub fn enthalpy(&self) -> usize {
        self.bonds.len()
    }

    /// Connected components of the monomer graph, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut dsu = Dsu::new(self.monomers.len());
        for &(a, b) in &self.bonds {
            dsu.union(a.monomer, b.monomer);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.monomers.len() {
            let r = dsu.find(i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    pub fn entropy(&self) -> usize {
        self.components().len()
    }

    /// Per-name totals of unbound primaries and complements.
    fn unbound_totals(&self) -> BTreeMap<&str, (usize, usize)> {
        let bound = self.bound_sites();
        let mut t: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for (i, m) in self.monomers.iter().enumerate() {
            for (s, d) in m.domains.iter().enumerate() {
                if bound.contains(&Site::new(i, s)) {
                    continue;
                }
                let e = t.entry(&d.name).or_default();
                if d.starred {
                    e.1 += 1;
                } else {
                    e.0 += 1;
                }
            }
        }
        t
    }

    /// No name has both an unbound primary and an unbound complement.
    pub fn is_saturated(&self) -> bool {
        self.unbound_totals().values().all(|&(p, q)| p == 0 || q == 0)
    }

    pub fn metrics(&self) -> ConfigMetrics {
        let comps = self.components();
        ConfigMetrics {
            enthalpy: self.bonds.len(),
            entropy: comps.len(),
            saturated: self.is_saturated(),
            polymer_sizes: comps.iter().map(Vec::len).collect(),
        }
    }

    /// The sub-configuration induced by the given instances (in the given order).
    pub fn restrict(&self, members: &[usize]) -> Configuration {
        let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let monomers = members.iter().map(|&i| self.monomers[i].clone()).collect();
        let mut bonds: Vec<(Site, Site)> = self
            .bonds
            .iter()
            .filter_map(|&(a, b)| {
                let (pa, pb) = (pos.get(&a.monomer)?, pos.get(&b.monomer)?);
                Some((Site::new(*pa, a.slot), Site::new(*pb, b.slot)))
            })
            .collect();
        bonds.sort();
        Configuration { monomers, bonds }
    }

    /// Connected components as standalone configurations, ordered by smallest member.
    pub fn polymers(&self) -> Vec<Configuration> {
        self.components().iter().map(|c| self.restrict(c)).collect()
    }

    /// Disjoint union (no cross bonds).
    pub fn union(parts: &[Configuration]) -> Configuration {
        let mut monomers = Vec::new();
        let mut bonds = Vec::new();
        for p in parts {
            let off = monomers.len();
            monomers.extend(p.monomers.iter().cloned());
            bonds.extend(
                p.bonds.iter().map(|&(a, b)| (Site::new(a.monomer + off, a.slot), Site::new(b.monomer + off, b.slot))),
            );
        }
        bonds.sort();
        Configuration { monomers, bonds }
    }

    /// Removes the selected domain instances and their bonds; monomers left
    /// without domains disappear.
    pub fn excise(&self, names: &BTreeSet<String>, side: Side) -> Configuration {
        let drop = |d: &Domain| {
            names.contains(&d.name)
                && match side {
                    Side::Both => true,
                    Side::PrimaryOnly => !d.starred,
                    Side::ComplementOnly => d.starred,
                }
        };
        let mut slot_map: BTreeMap<Site, Site> = BTreeMap::new();
        let mut monomers = Vec::new();
        for (i, m) in self.monomers.iter().enumerate() {
            let mut doms = Vec::new();
            for (s, d) in m.domains.iter().enumerate() {
                if !drop(d) {
                    slot_map.insert(Site::new(i, s), Site::new(monomers.len(), doms.len()));
                    doms.push(d.clone());
                }
            }
            if !doms.is_empty() {
                monomers.push(Monomer { type_name: m.type_name.clone(), domains: doms });
            }
        }
        let mut bonds: Vec<(Site, Site)> = self
            .bonds
            .iter()
            .filter_map(|(a, b)| Some((*slot_map.get(a)?, *slot_map.get(b)?)))
            .collect();
        bonds.sort();
        Configuration { monomers, bonds }
    }

    /// The collection of this configuration, matched to `tbn` by type name.
    pub fn collection(&self, tbn: &Tbn) -> Result<Collection> {
        let mut c = Collection::zeros(tbn);
        for m in &self.monomers {
            let i = tbn.monomer_index(&m.type_name).ok_or_else(|| Error::UnknownMonomer(m.type_name.clone()))?;
            if tbn.monomers()[i].domains() != m.domains.as_slice() {
                return Err(Error::InvalidConfiguration(format!(
                    "instance of `{}` does not match its type's domains",
                    m.type_name
                )));
            }
            c.counts[i] += 1;
        }
        Ok(c)
    }

    /// A TBN and collection read off the instances themselves. Instances that
    /// share a type name but differ in domains (e.g. after excision) get
    /// `name~k` suffixes.
    pub fn derive_tbn(&self) -> Result<(Tbn, Collection, Configuration)> {
        let mut variants: BTreeMap<&str, Vec<&Vec<Domain>>> = BTreeMap::new();
        for m in &self.monomers {
            let v = variants.entry(&m.type_name).or_default();
            if !v.contains(&&m.domains) {
                v.push(&m.domains);
            }
        }
        let rename = |m: &Monomer| -> String {
            let v = &variants[m.type_name.as_str()];
            if v.len() == 1 {
                m.type_name.clone()
            } else {
                let k = v.iter().position(|d| **d == m.domains).unwrap();
                format!("{}~{}", m.type_name, k)
            }
        };
        let mut types: BTreeMap<String, MonomerType> = BTreeMap::new();
        let mut renamed = self.clone();
        for (i, m) in self.monomers.iter().enumerate() {
            let n = rename(m);
            if !types.contains_key(&n) {
                types.insert(n.clone(), MonomerType::new(n.clone(), m.domains.clone())?);
            }
            renamed.monomers[i].type_name = n;
        }
        let tbn = Tbn::new(types.into_values().collect())?;
        let c = renamed.collection(&tbn)?;
        Ok((tbn, c, renamed))
    }

    /// The instance attached to `s` by a bond, if any.
    pub fn partner(&self, s: Site) -> Option<Site> {
        self.bonds.iter().find_map(|&(a, b)| {
            if a == s {
                Some(b)
            } else if b == s {
                Some(a)
            } else {
                None
            }
        })
    }

    /// True when instance `i` has no bond to any other instance.
    pub fn is_free(&self, i: usize) -> bool {
        self.bonds.iter().all(|&(a, b)| (a.monomer != i && b.monomer != i) || a.monomer == b.monomer)
    }
}
