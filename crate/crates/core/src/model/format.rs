//! Text, JSON and DOT formats for TBNs and configurations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::config::{Configuration, Monomer, Site};
use crate::model::types::{Collection, Domain, MonomerType, Tbn};

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Whitespace tokens of one line with 1-based columns; `#` starts a comment
/// only at the beginning of a token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            if ch == '#' {
                return out;
            }
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses the `.tbn` format; monomers without a `count` line get count 1.
pub fn parse_tbn(text: &str) -> Result<(Tbn, Collection)> {
    let mut monomers: Vec<(MonomerType, usize)> = Vec::new();
    let mut counts: Vec<(String, u32, usize, usize)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(line);
        let Some(&(col, kw)) = toks.first() else { continue };
        match kw {
            "monomer" => {
                let Some(&(ncol, raw)) = toks.get(1) else {
                    return Err(perr(ln, col, "expected a monomer name"));
                };
                let (name, rest) = if let Some(n) = raw.strip_suffix(':') {
                    (n, &toks[2..])
                } else if toks.get(2).map(|t| t.1) == Some(":") {
                    (raw, &toks[3..])
                } else if let Some((n, d)) = raw.split_once(':') {
                    // `monomer X:a b`
                    let mut ds = vec![Domain::parse(d).map_err(|e| perr(ln, ncol, e.to_string()))?];
                    for &(c, t) in &toks[2..] {
                        ds.push(Domain::parse(t).map_err(|e| perr(ln, c, e.to_string()))?);
                    }
                    let t = MonomerType::new(n, ds).map_err(|e| perr(ln, ncol, e.to_string()))?;
                    monomers.push((t, ln));
                    continue;
                } else {
                    return Err(perr(ln, ncol, "expected `:` after the monomer name"));
                };
                if name.is_empty() {
                    return Err(perr(ln, ncol, "empty monomer name"));
                }
                let mut ds = Vec::new();
                for &(c, t) in rest {
                    ds.push(Domain::parse(t).map_err(|e| perr(ln, c, e.to_string()))?);
                }
                let t = MonomerType::new(name, ds).map_err(|e| match e {
                    Error::EmptyMonomer(_) => perr(ln, ncol, format!("monomer `{name}` has no domains")),
                    other => perr(ln, ncol, other.to_string()),
                })?;
                if monomers.iter().any(|(m, _)| m.name == t.name) {
                    return Err(perr(ln, ncol, format!("duplicate monomer name `{name}`")));
                }
                monomers.push((t, ln));
            }
            "count" => {
                if toks.len() != 3 {
                    return Err(perr(ln, col, "expected `count <name> <n>`"));
                }
                let n: u32 = toks[2].1.parse().map_err(|_| perr(ln, toks[2].0, "count must be a nonnegative integer"))?;
                if counts.iter().any(|c| c.0 == toks[1].1) {
                    return Err(perr(ln, toks[1].0, format!("duplicate count for `{}`", toks[1].1)));
                }
                counts.push((toks[1].1.to_string(), n, ln, toks[1].0));
            }
            other => return Err(perr(ln, col, format!("unknown directive `{other}`"))),
        }
    }
    let tbn = Tbn::new(monomers.into_iter().map(|(m, _)| m).collect())?;
    let mut c = Collection::ones(&tbn);
    for (name, n, ln, col) in counts {
        let i = tbn.monomer_index(&name).ok_or_else(|| perr(ln, col, format!("unknown monomer `{name}`")))?;
        c.counts[i] = n;
    }
    Ok((tbn, c))
}

pub fn write_tbn(tbn: &Tbn, c: &Collection) -> String {
    let mut s = String::new();
    for m in tbn.monomers() {
        let ds: Vec<String> = m.domains().iter().map(|d| d.to_string()).collect();
        s.push_str(&format!("monomer {}: {}\n", m.name, ds.join(" ")));
    }
    for (m, n) in tbn.monomers().iter().zip(&c.counts) {
        s.push_str(&format!("count {} {}\n", m.name, n));
    }
    s
}

/// Parses `.cfg` text against the monomer types of `tbn`.
pub fn parse_cfg(text: &str, tbn: &Tbn) -> Result<Configuration> {
    let mut monomers: Vec<Monomer> = Vec::new();
    let mut ids: BTreeMap<(String, usize), usize> = BTreeMap::new();
    let mut next: BTreeMap<String, usize> = BTreeMap::new();
    let mut bonds: Vec<(Site, Site)> = Vec::new();
    let mut in_block: Option<(usize, usize)> = None;

    let declare = |tok: &str, ln: usize, col: usize, monomers: &mut Vec<Monomer>, ids: &mut BTreeMap<(String, usize), usize>, next: &mut BTreeMap<String, usize>| -> Result<()> {
        let (name, inst) = match tok.split_once('#') {
            Some((n, i)) => (n, Some(i.parse::<usize>().map_err(|_| perr(ln, col, format!("bad instance number in `{tok}`")))?)),
            None => (tok, None),
        };
        let t = tbn.monomer(name).map_err(|_| perr(ln, col, format!("unknown monomer `{name}`")))?;
        let k = match inst {
            Some(k) => k,
            None => {
                let mut k = *next.get(name).unwrap_or(&0);
                while ids.contains_key(&(name.to_string(), k)) {
                    k += 1;
                }
                k
            }
        };
        if ids.insert((name.to_string(), k), monomers.len()).is_some() {
            return Err(perr(ln, col, format!("instance `{name}#{k}` declared twice")));
        }
        next.insert(name.to_string(), k + 1);
        monomers.push(Monomer::of(t));
        Ok(())
    };

    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let toks = tokens(line);
        let mut i = 0;
        while i < toks.len() {
            let (col, t) = toks[i];
            if in_block.is_some() {
                if t == "}" {
                    in_block = None;
                } else if let Some(body) = t.strip_suffix('}') {
                    declare(body, ln, col, &mut monomers, &mut ids, &mut next)?;
                    in_block = None;
                } else {
                    declare(t, ln, col, &mut monomers, &mut ids, &mut next)?;
                }
                i += 1;
                continue;
            }
            match t {
                "polymer" => {
                    match toks.get(i + 1) {
                        Some(&(_, "{")) => i += 2,
                        _ => return Err(perr(ln, col, "expected `{` after `polymer`")),
                    }
                    in_block = Some((ln, col));
                }
                "polymer{" => {
                    in_block = Some((ln, col));
                    i += 1;
                }
                "bond" => {
                    if toks.len() != i + 3 {
                        return Err(perr(ln, col, "expected `bond <m>#<i>.<slot> <m>#<j>.<slot>`"));
                    }
                    let site = |k: usize| -> Result<Site> {
                        let (c, tok) = toks[i + k];
                        let (inst, slot) = tok.rsplit_once('.').ok_or_else(|| perr(ln, c, "expected `<m>#<i>.<slot>`"))?;
                        let slot: usize = slot.parse().map_err(|_| perr(ln, c, "bad slot index"))?;
                        let (name, k) = match inst.split_once('#') {
                            Some((n, k)) => (n, k.parse::<usize>().map_err(|_| perr(ln, c, "bad instance number"))?),
                            None => (inst, 0),
                        };
                        let m = *ids.get(&(name.to_string(), k)).ok_or_else(|| perr(ln, c, format!("undeclared instance `{inst}`")))?;
                        if slot >= monomers[m].domains.len() {
                            return Err(perr(ln, c, format!("slot {slot} out of range for `{inst}`")));
                        }
                        Ok(Site::new(m, slot))
                    };
                    let a = site(1)?;
                    let b = site(2)?;
                    bonds.push((a, b));
                    i += 3;
                }
                other => return Err(perr(ln, col, format!("unexpected token `{other}`"))),
            }
        }
    }
    if let Some((ln, col)) = in_block {
        return Err(perr(ln, col, "unterminated polymer block"));
    }
    Configuration::new(monomers, bonds).map_err(|e| perr(0, 0, e.to_string()))
}

pub fn write_cfg(a: &Configuration) -> String {
    let labels = a.instance_labels();
    let mut s = String::new();
    for comp in a.components() {
        let names: Vec<&str> = comp.iter().map(|&i| labels[i].as_str()).collect();
        s.push_str(&format!("polymer {{ {} }}\n", names.join(" ")));
    }
    for &(p, q) in a.bonds() {
        s.push_str(&format!("bond {}.{} {}.{}\n", labels[p.monomer], p.slot, labels[q.monomer], q.slot));
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MonomerJson {
    pub name: String,
    pub domains: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TbnJson {
    pub domains: Vec<String>,
    pub monomers: Vec<MonomerJson>,
    pub counts: BTreeMap<String, u32>,
}

pub fn tbn_to_json(tbn: &Tbn, c: &Collection) -> TbnJson {
    TbnJson {
        domains: tbn.domains().to_vec(),
        monomers: tbn
            .monomers()
            .iter()
            .map(|m| MonomerJson { name: m.name.clone(), domains: m.domains().iter().map(|d| d.to_string()).collect() })
            .collect(),
        counts: tbn.monomers().iter().zip(&c.counts).map(|(m, &n)| (m.name.clone(), n)).collect(),
    }
}

pub fn tbn_from_json(j: &TbnJson) -> Result<(Tbn, Collection)> {
    let ms = j
        .monomers
        .iter()
        .map(|m| MonomerType::new(m.name.clone(), m.domains.iter().map(|d| Domain::parse(d)).collect::<Result<_>>()?))
        .collect::<Result<Vec<_>>>()?;
    let tbn = Tbn::with_domains(ms, j.domains.iter().cloned())?;
    let mut c = Collection::ones(&tbn);
    for (name, &n) in &j.counts {
        let i = tbn.monomer_index(name).ok_or_else(|| Error::UnknownMonomer(name.clone()))?;
        c.counts[i] = n;
    }
    Ok((tbn, c))
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceJson {
    pub id: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub domains: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigJson {
    pub monomers: Vec<InstanceJson>,
    /// Pairs of `<id>.<slot>` references.
    pub bonds: Vec<[String; 2]>,
}

pub fn config_to_json(a: &Configuration) -> ConfigJson {
    let labels = a.instance_labels();
    ConfigJson {
        monomers: a
            .monomers()
            .iter()
            .zip(&labels)
            .map(|(m, id)| InstanceJson {
                id: id.clone(),
                type_name: m.type_name.clone(),
                domains: m.domains.iter().map(|d| d.to_string()).collect(),
            })
            .collect(),
        bonds: a
            .bonds()
            .iter()
            .map(|&(p, q)| [format!("{}.{}", labels[p.monomer], p.slot), format!("{}.{}", labels[q.monomer], q.slot)])
            .collect(),
    }
}

pub fn config_from_json(j: &ConfigJson) -> Result<Configuration> {
    let mut ids = BTreeMap::new();
    let mut monomers = Vec::new();
    for (i, m) in j.monomers.iter().enumerate() {
        let mut ds = m.domains.iter().map(|d| Domain::parse(d)).collect::<Result<Vec<_>>>()?;
        ds.sort();
        monomers.push(Monomer { type_name: m.type_name.clone(), domains: ds });
        if ids.insert(m.id.clone(), i).is_some() {
            return Err(Error::InvalidConfiguration(format!("duplicate instance id `{}`", m.id)));
        }
    }
    let site = |r: &str| -> Result<Site> {
        let (id, slot) = r.rsplit_once('.').ok_or_else(|| Error::InvalidConfiguration(format!("bad site `{r}`")))?;
        let m = *ids.get(id).ok_or_else(|| Error::InvalidConfiguration(format!("unknown instance `{id}`")))?;
        let s = slot.parse().map_err(|_| Error::InvalidConfiguration(format!("bad slot in `{r}`")))?;
        Ok(Site::new(m, s))
    };
    let bonds = j.bonds.iter().map(|[a, b]| Ok((site(a)?, site(b)?))).collect::<Result<Vec<_>>>()?;
    Configuration::new(monomers, bonds)
}

/// Undirected DOT graph: one node per instance, one edge per bond (self-bonds become loops).
pub fn to_dot(a: &Configuration) -> String {
    let labels = a.instance_labels();
    let mut s = String::from("graph configuration {\n");
    for (i, l) in labels.iter().enumerate() {
        s.push_str(&format!("  m{i} [label=\"{l}\"];\n"));
    }
    for &(p, q) in a.bonds() {
        s.push_str(&format!("  m{} -- m{} [label=\"{}\"];\n", p.monomer, q.monomer, a.domain(p).name));
    }
    s.push_str("}\n");
    s
}
