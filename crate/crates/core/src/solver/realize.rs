//! Turning multisets of monomer instances into concrete saturated matchings.

use std::collections::BTreeMap;

use crate::model::{Configuration, Monomer, Site};

/// Free slots of one instance, per (name, starred).
type Caps = BTreeMap<(String, bool), Vec<usize>>;

fn caps_of(m: &Monomer) -> Caps {
    let mut c: Caps = BTreeMap::new();
    for (s, d) in m.domains.iter().enumerate() {
        c.entry((d.name.clone(), d.starred)).or_default().push(s);
    }
    c
}

const CONNECT_BUDGET: usize = 1_000_000;

/// Finds bonds forming a spanning tree over `monomers` (each bond joins two
/// different instances), or `None` if no such tree exists within the search
/// budget.
///
/// The tree grows from instance 0. Each step takes an open slot class
/// (instance in the tree, name, polarity) and either bonds one of its slots
/// to an instance outside the tree or closes the class for good; every
/// spanning tree is reached this way, since the partial tree is always a
/// subtree of it.
pub(crate) fn spanning_tree(monomers: &[Monomer]) -> Option<Vec<(Site, Site)>> {
    let n = monomers.len();
    if n <= 1 {
        return Some(Vec::new());
    }
    struct Search {
        caps: Vec<Caps>,
        in_tree: Vec<bool>,
        bonds: Vec<(Site, Site)>,
        budget: usize,
    }

    impl Search {
        /// Outside instances that could take a bond from class `(name, st)`,
        /// one per distinct remaining capacity.
        fn targets(&self, name: &str, st: bool) -> Vec<usize> {
            let mut out: Vec<usize> = Vec::new();
            for v in 0..self.caps.len() {
                if self.in_tree[v] {
                    continue;
                }
                let ok = self.caps[v].get(&(name.to_string(), !st)).is_some_and(|x| !x.is_empty());
                if ok && !out.iter().any(|&w| self.caps[w] == self.caps[v]) {
                    out.push(v);
                }
            }
            out
        }

        fn grow(&mut self) -> bool {
            if self.in_tree.iter().all(|&b| b) {
                return true;
            }
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            // The open class with the fewest targets. Classes without any
            // stay that way, as the outside only shrinks.
            let mut pick: Option<(usize, String, bool, Vec<usize>)> = None;
            for u in 0..self.caps.len() {
                if !self.in_tree[u] {
                    continue;
                }
                for ((name, st), slots) in &self.caps[u] {
                    if slots.is_empty() {
                        continue;
                    }
                    let t = self.targets(name, *st);
                    if !t.is_empty() && pick.as_ref().map_or(true, |p| t.len() < p.3.len()) {
                        pick = Some((u, name.clone(), *st, t));
                    }
                }
            }
            let Some((u, name, st, targets)) = pick else { return false };
            let key = (name.clone(), st);
            for v in targets {
                let su = self.caps[u].get_mut(&key).unwrap().pop().unwrap();
                let sv = self.caps[v].get_mut(&(name.clone(), !st)).unwrap().pop().unwrap();
                self.in_tree[v] = true;
                self.bonds.push((Site::new(u, su), Site::new(v, sv)));
                if self.grow() {
                    return true;
                }
                self.bonds.pop();
                self.in_tree[v] = false;
                self.caps[v].get_mut(&(name.clone(), !st)).unwrap().push(sv);
                self.caps[u].get_mut(&key).unwrap().push(su);
                if self.budget == 0 {
                    return false;
                }
            }
            // No further tree bonds from this class.
            let parked = std::mem::take(self.caps[u].get_mut(&key).unwrap());
            let found = self.grow();
            *self.caps[u].get_mut(&key).unwrap() = parked;
            found
        }
    }

    let mut search = Search {
        caps: monomers.iter().map(caps_of).collect(),
        in_tree: vec![false; n],
        bonds: Vec::new(),
        budget: CONNECT_BUDGET,
    };
    search.in_tree[0] = true;
    if search.grow() {
        Some(search.bonds)
    } else {
        None
    }
}

/// Pairs every remaining free primary with a free complement of the same
/// name, in slot order, on top of `bonds`.
pub(crate) fn saturate(monomers: &[Monomer], mut bonds: Vec<(Site, Site)>) -> Vec<(Site, Site)> {
    let used: std::collections::BTreeSet<Site> = bonds.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut free: BTreeMap<(&str, bool), Vec<Site>> = BTreeMap::new();
    for (i, m) in monomers.iter().enumerate() {
        for (s, d) in m.domains.iter().enumerate() {
            let site = Site::new(i, s);
            if !used.contains(&site) {
                free.entry((&d.name, d.starred)).or_default().push(site);
            }
        }
    }
    let names: Vec<&str> = free.keys().map(|k| k.0).collect();
    for name in names {
        let (Some(p), Some(q)) = (free.get(&(name, false)), free.get(&(name, true))) else { continue };
        for (a, b) in p.iter().zip(q) {
            bonds.push((*a, *b));
        }
        free.remove(&(name, false));
    }
    bonds
}

/// A saturated configuration of `monomers`, connected whenever a spanning
/// tree of bonds can be found.
pub(crate) fn realize_part(monomers: Vec<Monomer>) -> Configuration {
    let tree = spanning_tree(&monomers).unwrap_or_default();
    let bonds = saturate(&monomers, tree);
    Configuration::new(monomers, bonds).expect("realization produces a valid matching")
}

/// Whether `monomers` admit a connected saturated configuration.
pub(crate) fn connectable(monomers: &[Monomer]) -> bool {
    spanning_tree(monomers).is_some()
}
