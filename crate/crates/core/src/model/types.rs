use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binding site: primary `a` or its complement `a*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Domain {
    pub name: String,
    pub starred: bool,
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '*' || c == '#' || c == ':' || c == '.')
}

impl Domain {
    pub fn new(name: impl Into<String>, starred: bool) -> Result<Self> {
        let name = name.into();
        if !valid_identifier(&name) {
            return Err(Error::InvalidArgument(format!("bad domain name `{name}`")));
        }
        Ok(Domain { name, starred })
    }

    pub fn primary(name: impl Into<String>) -> Self {
        Domain { name: name.into(), starred: false }
    }

    pub fn star(name: impl Into<String>) -> Self {
        Domain { name: name.into(), starred: true }
    }

    pub fn complement(&self) -> Self {
        Domain { name: self.name.clone(), starred: !self.starred }
    }

    pub fn binds(&self, other: &Domain) -> bool {
        self.name == other.name && self.starred != other.starred
    }

    /// Parses `a` or `a*`.
    pub fn parse(s: &str) -> Result<Self> {
        let (name, starred) = match s.strip_suffix('*') {
            Some(n) => (n, true),
            None => (s, false),
        };
        Domain::new(name, starred)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.starred { "*" } else { "" })
    }
}

/// A named nonempty multiset of domains. Domains are kept sorted so that
/// equality ignores order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomerType {
    pub name: String,
    domains: Vec<Domain>,
}

impl MonomerType {
    pub fn new(name: impl Into<String>, mut domains: Vec<Domain>) -> Result<Self> {
        let name = name.into();
        if !valid_identifier(&name) {
            return Err(Error::InvalidArgument(format!("bad monomer name `{name}`")));
        }
        if domains.is_empty() {
            return Err(Error::EmptyMonomer(name));
        }
        domains.sort();
        Ok(MonomerType { name, domains })
    }

    /// Convenience constructor from whitespace-separated domain text, e.g. `"a b* b*"`.
    pub fn parse(name: &str, doms: &str) -> Result<Self> {
        let ds = doms.split_whitespace().map(Domain::parse).collect::<Result<Vec<_>>>()?;
        MonomerType::new(name, ds)
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn count(&self, name: &str, starred: bool) -> usize {
        self.domains.iter().filter(|d| d.name == name && d.starred == starred).count()
    }
}

/// A TBN `(D, M)`: primary domain names and monomer types, both sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tbn {
    domains: Vec<String>,
    monomers: Vec<MonomerType>,
}

impl Tbn {
    pub fn new(monomers: Vec<MonomerType>) -> Result<Self> {
        Tbn::with_domains(monomers, std::iter::empty::<String>())
    }

    /// Like [`Tbn::new`] but also declares domain names no monomer uses.
    pub fn with_domains<I, S>(mut monomers: Vec<MonomerType>, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        monomers.sort_by(|a, b| a.name.cmp(&b.name));
        for w in monomers.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateMonomer(w[0].name.clone()));
            }
        }
        let mut names: BTreeSet<String> = extra.into_iter().map(Into::into).collect();
        for m in &monomers {
            for d in m.domains() {
                names.insert(d.name.clone());
            }
        }
        Ok(Tbn { domains: names.into_iter().collect(), monomers })
    }

    pub fn domains(&self) -> &[String] {
        &self.domains
    }

    pub fn monomers(&self) -> &[MonomerType] {
        &self.monomers
    }

    pub fn monomer_index(&self, name: &str) -> Option<usize> {
        self.monomers.binary_search_by(|m| m.name.as_str().cmp(name)).ok()
    }

    pub fn domain_index(&self, name: &str) -> Option<usize> {
        self.domains.binary_search_by(|d| d.as_str().cmp(name)).ok()
    }

    pub fn monomer(&self, name: &str) -> Result<&MonomerType> {
        self.monomer_index(name)
            .map(|i| &self.monomers[i])
            .ok_or_else(|| Error::UnknownMonomer(name.to_string()))
    }
}

/// Count vector `c ∈ N^M`, aligned with [`Tbn::monomers`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Collection {
    pub counts: Vec<u32>,
}

impl Collection {
    pub fn new(counts: Vec<u32>) -> Self {
        Collection { counts }
    }

    pub fn zeros(tbn: &Tbn) -> Self {
        Collection { counts: vec![0; tbn.monomers().len()] }
    }

    pub fn ones(tbn: &Tbn) -> Self {
        Collection { counts: vec![1; tbn.monomers().len()] }
    }

    pub fn from_pairs(tbn: &Tbn, pairs: &[(&str, u32)]) -> Result<Self> {
        let mut c = Collection::zeros(tbn);
        for (name, n) in pairs {
            let i = tbn.monomer_index(name).ok_or_else(|| Error::UnknownMonomer(name.to_string()))?;
            c.counts[i] += n;
        }
        Ok(c)
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().map(|&x| x as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&x| x == 0)
    }

    pub fn check(&self, tbn: &Tbn) -> Result<()> {
        if self.counts.len() != tbn.monomers().len() {
            return Err(Error::InvalidArgument(format!(
                "collection has {} entries but the TBN has {} monomer types",
                self.counts.len(),
                tbn.monomers().len()
            )));
        }
        Ok(())
    }

    /// Named nonzero entries, in TBN order.
    pub fn pairs(&self, tbn: &Tbn) -> Vec<(String, u32)> {
        tbn.monomers()
            .iter()
            .zip(&self.counts)
            .filter(|(_, &n)| n > 0)
            .map(|(m, &n)| (m.name.clone(), n))
            .collect()
    }

    pub fn add(&self, other: &Collection) -> Collection {
        Collection { counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect() }
    }
}

/// Total primary and complement instances of every domain name in `c`.
pub(crate) fn domain_totals(tbn: &Tbn, c: &Collection) -> BTreeMap<String, (u64, u64)> {
    let mut t: BTreeMap<String, (u64, u64)> = tbn.domains().iter().map(|d| (d.clone(), (0, 0))).collect();
    for (m, &n) in tbn.monomers().iter().zip(&c.counts) {
        for d in m.domains() {
            let e = t.get_mut(&d.name).expect("domain declared");
            if d.starred {
                e.1 += n as u64;
            } else {
                e.0 += n as u64;
            }
        }
    }
    t
}

/// Σ_d min(#d, #d*): the number of bonds in every saturated configuration of `c`.
pub fn max_bond_count(tbn: &Tbn, c: &Collection) -> u64 {
    domain_totals(tbn, c).values().map(|&(p, q)| p.min(q)).sum()
}
