//! Brute-force enumeration of configurations, used as an oracle.
//!
//! Bonds of one name are described by a count matrix between instances
//! holding the primary and instances holding the complement; concrete slots
//! are then filled in order. This already identifies configurations that
//! differ only by permuting identical slots; the remaining symmetry is
//! removed with [`canonical_form`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{canonical_form, Collection, Configuration, Site, Tbn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    All,
    Saturated,
    Stable,
}

pub const DEFAULT_ENUM_CAP: usize = 24;

/// The enumeration cap: `TBN_ENUM_CAP` if set, else [`DEFAULT_ENUM_CAP`].
pub fn enum_cap() -> usize {
    std::env::var("TBN_ENUM_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_ENUM_CAP)
}

type Cells = Vec<(usize, usize, usize)>;

fn matrices(p: &[(usize, usize)], q: &[(usize, usize)], exact: Option<usize>) -> Vec<Cells> {
    let cells: Vec<(usize, usize)> = (0..p.len()).flat_map(|i| (0..q.len()).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut row = p.iter().map(|x| x.1).collect::<Vec<_>>();
    let mut col = q.iter().map(|x| x.1).collect::<Vec<_>>();
    let mut cur: Cells = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        p: &[(usize, usize)],
        q: &[(usize, usize)],
        row: &mut [usize],
        col: &mut [usize],
        total: usize,
        exact: Option<usize>,
        cur: &mut Cells,
        out: &mut Vec<Cells>,
    ) {
        if let Some(e) = exact {
            if total > e {
                return;
            }
        }
        if k == cells.len() {
            if exact.map_or(true, |e| e == total) {
                out.push(cur.clone());
            }
            return;
        }
        let (i, j) = cells[k];
        let max = row[i].min(col[j]);
        for v in 0..=max {
            row[i] -= v;
            col[j] -= v;
            if v > 0 {
                cur.push((p[i].0, q[j].0, v));
            }
            rec(k + 1, cells, p, q, row, col, total + v, exact, cur, out);
            if v > 0 {
                cur.pop();
            }
            row[i] += v;
            col[j] += v;
        }
    }
    rec(0, &cells, p, q, &mut row, &mut col, 0, exact, &mut cur, &mut out);
    out
}

/// All distinct configurations of `c` (up to [`canonical_form`]) passing
/// `filter`, ordered by canonical key, truncated to `limit`.
pub fn enumerate_configurations(
    tbn: &Tbn,
    c: &Collection,
    filter: Filter,
    limit: Option<usize>,
    cap: usize,
) -> Result<Vec<Configuration>> {
    c.check(tbn)?;
    let base = Configuration::unbonded(tbn, c);
    let instances: usize = base.monomers().iter().map(|m| m.domains.len()).sum();
    if instances > cap {
        return Err(Error::CapExceeded { instances, cap });
    }
    let mut per_name: Vec<(String, Vec<Cells>)> = Vec::new();
    for name in tbn.domains() {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for (i, m) in base.monomers().iter().enumerate() {
            let a = m.domains.iter().filter(|d| &d.name == name && !d.starred).count();
            let b = m.domains.iter().filter(|d| &d.name == name && d.starred).count();
            if a > 0 {
                p.push((i, a));
            }
            if b > 0 {
                q.push((i, b));
            }
        }
        let exact = match filter {
            Filter::All => None,
            _ => Some(p.iter().map(|x| x.1).sum::<usize>().min(q.iter().map(|x| x.1).sum())),
        };
        per_name.push((name.clone(), matrices(&p, &q, exact)));
    }

    let mut found: BTreeMap<String, Configuration> = BTreeMap::new();
    let mut choice = vec![0usize; per_name.len()];
    loop {
        let mut bonds: Vec<(Site, Site)> = Vec::new();
        for (k, (name, ms)) in per_name.iter().enumerate() {
            let mut next_p: BTreeMap<usize, usize> = BTreeMap::new();
            let mut next_q: BTreeMap<usize, usize> = BTreeMap::new();
            for &(u, v, cnt) in &ms[choice[k]] {
                for _ in 0..cnt {
                    let su = slot(&base, u, name, false, next_p.entry(u).or_insert(0));
                    let sv = slot(&base, v, name, true, next_q.entry(v).or_insert(0));
                    bonds.push((Site::new(u, su), Site::new(v, sv)));
                }
            }
        }
        let cfg = Configuration::new(base.monomers().to_vec(), bonds).expect("enumerated matching is valid");
        found.entry(canonical_form(&cfg)).or_insert(cfg);
        // odometer
        let mut k = 0;
        while k < per_name.len() {
            choice[k] += 1;
            if choice[k] < per_name[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == per_name.len() {
            break;
        }
    }
    let mut out: Vec<Configuration> = found.into_values().collect();
    if filter == Filter::Stable {
        let best = out.iter().map(|a| a.entropy()).max().unwrap_or(0);
        out.retain(|a| a.entropy() == best);
    }
    if let Some(l) = limit {
        out.truncate(l);
    }
    Ok(out)
}

/// The `k`-th slot of `name`/`starred` on instance `i`, advancing `k`.
fn slot(a: &Configuration, i: usize, name: &str, starred: bool, k: &mut usize) -> usize {
    let s = a.monomers()[i]
        .domains
        .iter()
        .enumerate()
        .filter(|(_, d)| d.name == name && d.starred == starred)
        .nth(*k)
        .map(|(s, _)| s)
        .expect("count matrix respects capacities");
    *k += 1;
    s
}
