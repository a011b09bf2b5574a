//! Exact stable-entropy computation and derived analyses.

mod enumerate;
mod farkas;
mod partition;
mod realize;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use enumerate::{enum_cap, enumerate_configurations, Filter, DEFAULT_ENUM_CAP};
pub use farkas::{farkas_decide, farkas_k_checked, is_balanced, separates, FarkasResult, FARKAS_BUDGET};
pub(crate) use realize::{connectable, realize_part};

use crate::error::{Error, Result};
use crate::model::{
    config_to_json, monomer_matrix, relabel_nonnegative, Collection, ConfigJson, Configuration, Monomer, Relabeling,
    Tbn,
};
use partition::{Partitioner, Problem, INFEASIBLE};

/// Parts `c_1 + … + c_S = c`, each of nonnegative excess under the solver's
/// relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionWitness {
    pub parts: Vec<Collection>,
}

#[derive(Debug, Clone)]
pub struct StableResult {
    pub stable_entropy: u32,
    pub witness: PartitionWitness,
    /// A stable configuration assembled from the witness.
    pub config: Configuration,
    pub relabeling: Relabeling,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessJson {
    pub stable_entropy: u32,
    pub parts: Vec<Vec<(String, u32)>>,
    pub configuration: ConfigJson,
}

impl StableResult {
    pub fn to_json(&self, tbn: &Tbn) -> WitnessJson {
        WitnessJson {
            stable_entropy: self.stable_entropy,
            parts: self.witness.parts.iter().map(|p| p.pairs(tbn)).collect(),
            configuration: config_to_json(&self.config),
        }
    }
}

struct Setup {
    relabeling: Relabeling,
    pb: Problem,
}

fn setup(tbn: &Tbn, c: &Collection) -> Result<Setup> {
    c.check(tbn)?;
    let (rt, relabeling) = relabel_nonnegative(tbn, c);
    let pb = Problem::new(monomer_matrix(&rt).m, tbn.monomers().len());
    Ok(Setup { relabeling, pb })
}

fn part_monomers(tbn: &Tbn, p: &[u32]) -> Vec<Monomer> {
    let mut out = Vec::new();
    for (t, &n) in tbn.monomers().iter().zip(p) {
        for _ in 0..n {
            out.push(Monomer::of(t));
        }
    }
    out
}

fn realize(tbn: &Tbn, parts: &[Vec<u32>]) -> Configuration {
    let cfgs: Vec<Configuration> = parts.iter().map(|p| realize_part(part_monomers(tbn, p))).collect();
    Configuration::union(&cfgs)
}

fn witness(parts: &[Vec<u32>]) -> PartitionWitness {
    PartitionWitness { parts: parts.iter().map(|p| Collection::new(p.clone())).collect() }
}

/// The maximum entropy over saturated configurations of `c`, a witness
/// partition and a concrete stable configuration.
pub fn stable_entropy(tbn: &Tbn, c: &Collection) -> Result<StableResult> {
    let st = setup(tbn, c)?;
    if c.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let mut part = Partitioner::new(&st.pb, None);
    let s = part.best(&c.counts);
    let parts = part.parts(&c.counts);
    Ok(StableResult {
        stable_entropy: s,
        config: realize(tbn, &parts),
        witness: witness(&parts),
        relabeling: st.relabeling,
    })
}

/// Saturated and entropy-maximal.
pub fn is_stable(tbn: &Tbn, a: &Configuration) -> Result<bool> {
    let c = a.collection(tbn)?;
    if !a.is_saturated() {
        return Ok(false);
    }
    if c.is_empty() {
        return Ok(true);
    }
    Ok(a.entropy() as u32 == stable_entropy(tbn, &c)?.stable_entropy)
}

/// A constraint on the configurations considered by
/// [`constrained_max_entropy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputPredicate {
    /// Some instance of the monomer type is bound to no other monomer.
    MonomerFree(String),
    /// Some polymer carries at least `k` primary instances of the domain.
    Colocated(String, u32),
    /// The listed instances (a multiset of types) lie in one polymer.
    Together(Vec<String>),
}

impl FromStr for OutputPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad predicate `{s}`; expected free:<m>, coloc:<d>:<k> or together:<m>,<m>,..."));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "free" if !rest.is_empty() => Ok(OutputPredicate::MonomerFree(rest.to_string())),
            "coloc" => {
                let (d, k) = rest.split_once(':').ok_or_else(bad)?;
                Ok(OutputPredicate::Colocated(d.to_string(), k.parse().map_err(|_| bad())?))
            }
            "together" => {
                let ms: Vec<String> = rest.split(',').filter(|x| !x.is_empty()).map(String::from).collect();
                if ms.is_empty() {
                    return Err(bad());
                }
                Ok(OutputPredicate::Together(ms))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for OutputPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputPredicate::MonomerFree(m) => write!(f, "free:{m}"),
            OutputPredicate::Colocated(d, k) => write!(f, "coloc:{d}:{k}"),
            OutputPredicate::Together(ms) => write!(f, "together:{}", ms.join(",")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstrainedResult {
    pub entropy: u32,
    pub witness: PartitionWitness,
    pub config: Configuration,
}

fn monomer_idx(tbn: &Tbn, name: &str) -> Result<usize> {
    tbn.monomer_index(name).ok_or_else(|| Error::UnknownMonomer(name.to_string()))
}

/// Maximum entropy over saturated configurations satisfying `pred`.
pub fn constrained_max_entropy(tbn: &Tbn, c: &Collection, pred: &OutputPredicate) -> Result<ConstrainedResult> {
    let st = setup(tbn, c)?;
    if c.is_empty() {
        return Err(Error::EmptyCollection);
    }
    let pb = &st.pb;
    let n = c.counts.len();
    let parts: Vec<Vec<u32>> = match pred {
        OutputPredicate::MonomerFree(name) => {
            let o = monomer_idx(tbn, name)?;
            if c.counts[o] == 0 || !pb.nonneg[o] {
                return Err(Error::Infeasible);
            }
            let mut single = vec![0u32; n];
            single[o] = 1;
            let mut rest = c.counts.clone();
            rest[o] -= 1;
            if !pb.nonneg_excess(&rest) {
                return Err(Error::Infeasible);
            }
            let mut out = vec![single];
            out.extend(Partitioner::new(pb, None).parts(&rest));
            out
        }
        OutputPredicate::Colocated(dom, k) => {
            let di = tbn.domain_index(dom).ok_or_else(|| Error::UnknownDomain(dom.clone()))?;
            let coeff: Vec<u32> = tbn.monomers().iter().map(|m| m.count(&tbn.domains()[di], false) as u32).collect();
            anchored(tbn, c, pb, &vec![0; n], &|p: &[u32]| p.iter().zip(&coeff).map(|(a, b)| a * b).sum::<u32>() >= *k)?
        }
        OutputPredicate::Together(ms) => {
            let mut lower = vec![0u32; n];
            for m in ms {
                lower[monomer_idx(tbn, m)?] += 1;
            }
            if lower.iter().zip(&c.counts).any(|(l, c)| l > c) {
                return Err(Error::Infeasible);
            }
            anchored(tbn, c, pb, &lower, &|_| true)?
        }
    };
    Ok(ConstrainedResult { entropy: parts.len() as u32, config: realize(tbn, &parts), witness: witness(&parts) })
}

/// Best partition in which one designated part satisfies `lower`/`accept`
/// and admits a connected realization.
fn anchored(
    tbn: &Tbn,
    c: &Collection,
    pb: &Problem,
    lower: &[u32],
    accept: &dyn Fn(&[u32]) -> bool,
) -> Result<Vec<Vec<u32>>> {
    let order: Vec<usize> = (0..pb.ntypes()).collect();
    let mut part = Partitioner::new(pb, None);
    let mut conn: HashMap<Vec<u32>, bool> = HashMap::new();
    let ub = pb.upper_bound(&c.counts);
    let mut best: Option<(u32, Vec<u32>)> = None;
    let mut rest = c.counts.clone();
    pb.for_each_part(&c.counts, lower, &order, None, &mut |p| {
        if !accept(p) {
            return true;
        }
        for j in 0..rest.len() {
            rest[j] = c.counts[j] - p[j];
        }
        let cur = best.as_ref().map_or(0, |b| b.0);
        if 1 + pb.upper_bound(&rest) <= cur {
            return true;
        }
        let val = 1 + part.best(&rest);
        if val <= cur {
            return true;
        }
        let ok = *conn.entry(p.to_vec()).or_insert_with(|| connectable(&part_monomers(tbn, p)));
        if ok {
            best = Some((val, p.to_vec()));
        }
        best.as_ref().map_or(0, |b| b.0) < ub
    });
    let (_, p) = best.ok_or(Error::Infeasible)?;
    let rest: Vec<u32> = c.counts.iter().zip(&p).map(|(a, b)| a - b).collect();
    let mut out = vec![p];
    out.extend(part.parts(&rest));
    Ok(out)
}

/// `S*(c)` minus the constrained maximum; `Err(Infeasible)` when no
/// saturated configuration satisfies `pred`.
pub fn distance_to_stability(tbn: &Tbn, c: &Collection, pred: &OutputPredicate) -> Result<u32> {
    let s = stable_entropy(tbn, c)?.stable_entropy;
    let m = constrained_max_entropy(tbn, c, pred)?.entropy;
    Ok(s - m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Weak,
    Strong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Output {
    Zero,
    One,
    Indeterminate,
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Output::Zero => "0",
            Output::One => "1",
            Output::Indeterminate => "indeterminate",
        })
    }
}

/// Whether some stable configuration leaves an instance of `o` free.
pub fn some_stable_has_free(tbn: &Tbn, c: &Collection, o: &str) -> Result<bool> {
    let s = stable_entropy(tbn, c)?.stable_entropy;
    match constrained_max_entropy(tbn, c, &OutputPredicate::MonomerFree(o.to_string())) {
        Ok(r) => Ok(r.entropy == s),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether some stable configuration binds every instance of `o`.
pub fn some_stable_has_bound(tbn: &Tbn, c: &Collection, o: &str) -> Result<bool> {
    let st = setup(tbn, c)?;
    let oi = monomer_idx(tbn, o)?;
    let s = Partitioner::new(&st.pb, None).best(&c.counts);
    let f = Partitioner::new(&st.pb, Some(oi)).best(&c.counts);
    Ok(f != INFEASIBLE && f == s)
}

/// Output under the weak (some stable configuration frees `o`) or strong
/// (every stable configuration agrees) convention.
pub fn evaluate_output(tbn: &Tbn, c: &Collection, o: &str, conv: Convention) -> Result<Output> {
    let oi = monomer_idx(tbn, o)?;
    if c.counts.get(oi).copied().unwrap_or(0) == 0 {
        return Err(Error::InvalidArgument(format!("monomer `{o}` does not occur in the collection")));
    }
    let free = some_stable_has_free(tbn, c, o)?;
    Ok(match conv {
        Convention::Weak => {
            if free {
                Output::One
            } else {
                Output::Zero
            }
        }
        Convention::Strong => match (free, some_stable_has_bound(tbn, c, o)?) {
            (true, false) => Output::One,
            (false, _) => Output::Zero,
            (true, true) => Output::Indeterminate,
        },
    })
}

/// Two nonzero collections of nonnegative excess summing to `c`, if any.
pub fn find_split(tbn: &Tbn, c: &Collection) -> Result<Option<(Collection, Collection)>> {
    if c.is_empty() {
        return Ok(None);
    }
    let st = setup(tbn, c)?;
    let mut part = Partitioner::new(&st.pb, None);
    if part.best(&c.counts) < 2 {
        return Ok(None);
    }
    let parts = part.parts(&c.counts);
    let c1 = parts[0].clone();
    let c2: Vec<u32> = c.counts.iter().zip(&c1).map(|(a, b)| a - b).collect();
    debug_assert!(st.pb.nonneg_excess(&c1) && st.pb.nonneg_excess(&c2));
    Ok(Some((Collection::new(c1), Collection::new(c2))))
}

/// Checks the split hypotheses: nonzero parts summing to `c`, each with
/// nonnegative excess under the relabeling of `c`.
pub fn verify_split(tbn: &Tbn, c: &Collection, c1: &Collection, c2: &Collection) -> bool {
    let Ok(st) = setup(tbn, c) else { return false };
    c1.add(c2) == *c && !c1.is_empty() && !c2.is_empty() && st.pb.nonneg_excess(&c1.counts) && st.pb.nonneg_excess(&c2.counts)
}

/// Whether every part of `w` has nonnegative excess under the relabeling of
/// `c` and the parts sum to `c`.
pub fn verify_witness(tbn: &Tbn, c: &Collection, w: &PartitionWitness) -> bool {
    let Ok(st) = setup(tbn, c) else { return false };
    let mut sum = Collection::zeros(tbn);
    for p in &w.parts {
        if p.is_empty() || !st.pb.nonneg_excess(&p.counts) {
            return false;
        }
        sum = sum.add(p);
    }
    sum == *c
}
