//! Abstract tile assembly: simulation, binary-counter tile sets and the
//! reading of assemblies as TBN configurations.

mod counter;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use counter::{check_counter_stability, column_values, counter_bit, gen_counter, CounterReport, Variant};

use crate::error::{Error, Result};
use crate::model::{Configuration, Domain, Monomer, MonomerType, Site, Tbn};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Glue {
    pub label: String,
    pub strength: u32,
    /// Explicit TBN polarity; when absent, north/east are primary and
    /// south/west starred.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<bool>,
}

impl Glue {
    pub fn new(label: impl Into<String>, strength: u32) -> Self {
        Glue { label: label.into(), strength, star: None }
    }

    fn matches(&self, other: &Glue) -> bool {
        self.label == other.label && self.strength == other.strength && self.strength > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileType {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<Glue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Glue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Glue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Glue>,
}

impl TileType {
    pub fn new(name: impl Into<String>) -> Self {
        TileType { name: name.into(), n: None, e: None, s: None, w: None }
    }

    /// Glues in N, E, S, W order.
    pub fn sides(&self) -> [Option<&Glue>; 4] {
        [self.n.as_ref(), self.e.as_ref(), self.s.as_ref(), self.w.as_ref()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileSystem {
    pub tiles: Vec<TileType>,
    pub seed: String,
    pub temperature: u32,
}

impl TileSystem {
    pub fn validate(&self) -> Result<()> {
        if self.temperature == 0 {
            return Err(Error::InvalidArgument("temperature must be positive".into()));
        }
        let mut names = BTreeSet::new();
        for t in &self.tiles {
            if !names.insert(&t.name) {
                return Err(Error::InvalidArgument(format!("duplicate tile type `{}`", t.name)));
            }
        }
        if !names.contains(&self.seed) {
            return Err(Error::InvalidArgument(format!("seed `{}` is not a tile type", self.seed)));
        }
        Ok(())
    }

    pub fn tile(&self, name: &str) -> Option<&TileType> {
        self.tiles.iter().find(|t| t.name == name)
    }
}

/// Unit offsets of the N, E, S, W neighbours; `y` grows northwards.
const DIRS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    /// `(x, y) → tile type name`.
    pub placements: BTreeMap<(i64, i64), String>,
    /// Attachment order, seed first.
    pub order: Vec<(i64, i64)>,
    pub terminal: bool,
}

impl Assembly {
    pub fn bounds(&self) -> Option<((i64, i64), (i64, i64))> {
        let xs = self.placements.keys().map(|p| p.0);
        let ys = self.placements.keys().map(|p| p.1);
        Some(((xs.clone().min()?, ys.clone().min()?), (xs.max()?, ys.max()?)))
    }

    /// Whether the placements fill a `rows × cols` rectangle with the seed
    /// at its south-west corner.
    pub fn is_rectangle(&self, rows: usize, cols: usize) -> bool {
        self.placements.len() == rows * cols
            && (0..cols as i64).all(|x| (0..rows as i64).all(|y| self.placements.contains_key(&(x, y))))
    }

    /// Grid of tile names, north row first; empty cells are `.`.
    pub fn ascii(&self) -> String {
        let Some(((x0, y0), (x1, y1))) = self.bounds() else { return String::new() };
        let w = self.placements.values().map(String::len).max().unwrap_or(1);
        let mut s = String::new();
        for y in (y0..=y1).rev() {
            let row: Vec<String> = (x0..=x1)
                .map(|x| format!("{:w$}", self.placements.get(&(x, y)).map_or(".", String::as_str)))
                .collect();
            s.push_str(row.join(" ").trim_end());
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// First attachable frontier site in (row, column) order, tile types in name order.
    DeterministicScan,
    SeededRandom(u64),
}

fn binding_strength(sys: &TileSystem, idx: &BTreeMap<&str, usize>, placed: &BTreeMap<(i64, i64), String>, t: &TileType, at: (i64, i64)) -> u32 {
    let mut total = 0;
    for (side, (dx, dy)) in DIRS.iter().enumerate() {
        let Some(g) = t.sides()[side] else { continue };
        let Some(nb) = placed.get(&(at.0 + dx, at.1 + dy)) else { continue };
        let other = &sys.tiles[idx[nb.as_str()]];
        if let Some(h) = other.sides()[(side + 2) % 4] {
            if g.matches(h) {
                total += g.strength;
            }
        }
    }
    total
}

/// Tile types (in name order) that can attach at `at`.
pub fn attachable(sys: &TileSystem, a: &Assembly, at: (i64, i64)) -> Vec<String> {
    let idx: BTreeMap<&str, usize> = sys.tiles.iter().enumerate().map(|(i, t)| (t.name.as_str(), i)).collect();
    let mut names: Vec<&TileType> = sys.tiles.iter().collect();
    names.sort_by(|a, b| a.name.cmp(&b.name));
    names
        .into_iter()
        .filter(|t| binding_strength(sys, &idx, &a.placements, t, at) >= sys.temperature)
        .map(|t| t.name.clone())
        .collect()
}

fn frontier(a: &Assembly) -> BTreeSet<(i64, i64)> {
    let mut f = BTreeSet::new();
    for &(x, y) in a.placements.keys() {
        for (dx, dy) in DIRS {
            let p = (x + dx, y + dy);
            if !a.placements.contains_key(&p) {
                // (row, column) ordering
                f.insert((p.1, p.0));
            }
        }
    }
    f.into_iter().map(|(y, x)| (x, y)).collect::<Vec<_>>().into_iter().collect()
}

fn sites_row_major(a: &Assembly) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = frontier(a).into_iter().collect();
    v.sort_by_key(|&(x, y)| (y, x));
    v
}

/// Grows from the seed at the origin until no tile can attach or
/// `max_steps` attachments have happened.
pub fn simulate(sys: &TileSystem, policy: Policy, max_steps: usize) -> Result<Assembly> {
    sys.validate()?;
    let mut a = Assembly { placements: BTreeMap::new(), order: vec![(0, 0)], terminal: false };
    a.placements.insert((0, 0), sys.seed.clone());
    let mut rng = match policy {
        Policy::SeededRandom(s) => Some(ChaCha8Rng::seed_from_u64(s)),
        Policy::DeterministicScan => None,
    };
    for _ in 0..max_steps {
        let sites = sites_row_major(&a);
        let pick = match rng.as_mut() {
            None => sites.iter().find_map(|&p| attachable(sys, &a, p).into_iter().next().map(|t| (p, t))),
            Some(r) => {
                let all: Vec<((i64, i64), String)> =
                    sites.iter().flat_map(|&p| attachable(sys, &a, p).into_iter().map(move |t| (p, t))).collect();
                all.choose(r).cloned()
            }
        };
        match pick {
            Some((p, t)) => {
                a.placements.insert(p, t);
                a.order.push(p);
            }
            None => {
                a.terminal = true;
                return Ok(a);
            }
        }
    }
    a.terminal = sites_row_major(&a).iter().all(|&p| attachable(sys, &a, p).is_empty());
    Ok(a)
}

/// Re-plays the recorded attachment order, checking the temperature
/// threshold at every step.
pub fn replay_ok(sys: &TileSystem, a: &Assembly) -> bool {
    let idx: BTreeMap<&str, usize> = sys.tiles.iter().enumerate().map(|(i, t)| (t.name.as_str(), i)).collect();
    let mut placed = BTreeMap::new();
    for (k, p) in a.order.iter().enumerate() {
        let Some(name) = a.placements.get(p) else { return false };
        let Some(&ti) = idx.get(name.as_str()) else { return false };
        if k == 0 {
            if *p != (0, 0) || *name != sys.seed {
                return false;
            }
        } else if binding_strength(sys, &idx, &placed, &sys.tiles[ti], *p) < sys.temperature {
            return false;
        }
        placed.insert(*p, name.clone());
    }
    placed.len() == a.placements.len()
}

/// Largest number of distinct tile types attachable at one site over every
/// prefix of the recorded order; 1 means each attachment was forced.
pub fn max_choices(sys: &TileSystem, a: &Assembly) -> usize {
    let mut part = Assembly { placements: BTreeMap::new(), order: Vec::new(), terminal: false };
    let mut best = 0;
    for p in &a.order {
        part.placements.insert(*p, a.placements[p].clone());
        for s in frontier(&part) {
            best = best.max(attachable(sys, &part, s).len());
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InterpretOptions {
    /// Map a strength-`s` glue to `s` copies of its domain.
    pub strength_as_copies: bool,
}

/// Reads an assembly as a TBN configuration: one monomer type per tile type,
/// one instance per placement, one bond per matched adjacent glue pair.
pub fn atam_to_tbn(sys: &TileSystem, a: &Assembly, opts: InterpretOptions) -> Result<(Tbn, Configuration)> {
    // per tile type: domain list and side -> slots
    let mut layouts: BTreeMap<&str, (Vec<Domain>, [Vec<usize>; 4])> = BTreeMap::new();
    let used: BTreeSet<&str> = a.placements.values().map(String::as_str).collect();
    for t in &sys.tiles {
        if !used.contains(t.name.as_str()) {
            continue;
        }
        let mut tagged: Vec<(Domain, usize)> = Vec::new();
        for (side, g) in t.sides().iter().enumerate() {
            let Some(g) = g else { continue };
            let star = g.star.unwrap_or(side >= 2);
            let copies = if opts.strength_as_copies { g.strength.max(1) } else { 1 };
            for _ in 0..copies {
                tagged.push((Domain::new(g.label.clone(), star)?, side));
            }
        }
        if tagged.is_empty() {
            return Err(Error::InvalidArgument(format!("tile type `{}` has no glues", t.name)));
        }
        let mut order: Vec<usize> = (0..tagged.len()).collect();
        order.sort_by(|&x, &y| tagged[x].0.cmp(&tagged[y].0).then(x.cmp(&y)));
        let mut slots: [Vec<usize>; 4] = Default::default();
        let mut doms = Vec::new();
        for (slot, &k) in order.iter().enumerate() {
            slots[tagged[k].1].push(slot);
            doms.push(tagged[k].0.clone());
        }
        layouts.insert(&t.name, (doms, slots));
    }
    let types: Vec<MonomerType> =
        layouts.iter().map(|(n, (d, _))| MonomerType::new(*n, d.clone())).collect::<Result<_>>()?;
    let tbn = Tbn::new(types)?;

    let pos: Vec<(i64, i64)> = a.placements.keys().copied().collect();
    let index: BTreeMap<(i64, i64), usize> = pos.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let monomers: Vec<Monomer> = pos
        .iter()
        .map(|p| {
            let n = a.placements[p].as_str();
            Monomer { type_name: n.to_string(), domains: layouts[n].0.clone() }
        })
        .collect();
    let mut bonds = Vec::new();
    for (i, p) in pos.iter().enumerate() {
        let ti = sys.tile(&a.placements[p]).expect("placed tile exists");
        // east (side 1) and north (side 0) neighbours
        for side in [0usize, 1] {
            let (dx, dy) = DIRS[side];
            let Some(&j) = index.get(&(p.0 + dx, p.1 + dy)) else { continue };
            let tj = sys.tile(&a.placements[&pos[j]]).expect("placed tile exists");
            let (Some(g), Some(h)) = (ti.sides()[side], tj.sides()[side + 2]) else { continue };
            if !g.matches(h) {
                continue;
            }
            let (sg, sh) = (g.star.unwrap_or(false), h.star.unwrap_or(true));
            if sg == sh {
                return Err(Error::InvalidArgument(format!(
                    "matched glue `{}` between {:?} and {:?} has the same polarity on both sides",
                    g.label, p, pos[j]
                )));
            }
            let si = &layouts[ti.name.as_str()].1[side];
            let sj = &layouts[tj.name.as_str()].1[side + 2];
            for (x, y) in si.iter().zip(sj) {
                bonds.push((Site::new(i, *x), Site::new(j, *y)));
            }
        }
    }
    Ok((tbn, Configuration::new(monomers, bonds)?))
}
