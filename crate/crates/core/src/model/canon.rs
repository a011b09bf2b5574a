//! Canonical keys for configurations up to permutation of identical
//! instances and identical slots.
//!
//! A configuration is viewed as a multigraph on monomer instances: node labels
//! carry the type, its domain multiset and the names of self-bonds; edges carry
//! the domain name and point from the primary holder to the complement holder.
//! Each connected component is canonized by individualization–refinement, and
//! the key is the sorted list of component encodings.

use std::collections::BTreeMap;

use crate::model::config::Configuration;

struct Graph {
    labels: Vec<String>,
    // (neighbour, name id, 0 = outgoing / 1 = incoming)
    adj: Vec<Vec<(usize, u32, u8)>>,
    names: Vec<String>,
}

fn rank<T: Ord + Clone>(items: &[T]) -> (Vec<u32>, usize) {
    let mut sorted: Vec<T> = items.to_vec();
    sorted.sort();
    sorted.dedup();
    let r = items.iter().map(|x| sorted.binary_search(x).unwrap() as u32).collect();
    (r, sorted.len())
}

impl Graph {
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut count = {
            let mut c = colors.clone();
            c.sort();
            c.dedup();
            c.len()
        };
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32, u8)>)> = (0..self.labels.len())
                .map(|v| {
                    let mut s: Vec<(u32, u32, u8)> = self.adj[v].iter().map(|&(w, n, d)| (colors[w], n, d)).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let (nc, k) = rank(&sigs);
            colors = nc;
            if k == count {
                return colors;
            }
            count = k;
        }
    }

    fn encode(&self, colors: &[u32]) -> String {
        let n = self.labels.len();
        let mut order = vec![0usize; n];
        for v in 0..n {
            order[colors[v] as usize] = v;
        }
        let mut s = String::new();
        for &v in &order {
            s.push_str(&self.labels[v]);
            s.push(';');
        }
        let mut edges: Vec<(u32, u32, &str)> = Vec::new();
        for v in 0..n {
            for &(w, name, d) in &self.adj[v] {
                if d == 0 {
                    edges.push((colors[v], colors[w], &self.names[name as usize]));
                }
            }
        }
        edges.sort_unstable();
        s.push('|');
        for (a, b, nm) in edges {
            s.push_str(&format!("{a}>{b}:{nm},"));
        }
        s
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        if self.labels[u] != self.labels[v] {
            return false;
        }
        let mut nu: Vec<(usize, u32, u8)> = self.adj[u].iter().filter(|e| e.0 != v).cloned().collect();
        let mut nv: Vec<(usize, u32, u8)> = self.adj[v].iter().filter(|e| e.0 != u).cloned().collect();
        nu.sort_unstable();
        nv.sort_unstable();
        if nu != nv {
            return false;
        }
        let mut between: Vec<(u32, u8)> = self.adj[u].iter().filter(|e| e.0 == v).map(|e| (e.1, e.2)).collect();
        let mut rev: Vec<(u32, u8)> = between.iter().map(|&(n, d)| (n, 1 - d)).collect();
        between.sort_unstable();
        rev.sort_unstable();
        between == rev
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<String>) {
        let n = self.labels.len();
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            cells.entry(colors[v]).or_default().push(v);
        }
        let Some(cell) = cells.values().filter(|c| c.len() > 1).min_by_key(|c| c.len()).cloned() else {
            let e = self.encode(&colors);
            if best.as_ref().map_or(true, |b| e < *b) {
                *best = Some(e);
            }
            return;
        };
        let mut reps: Vec<usize> = Vec::new();
        for &v in &cell {
            if !reps.iter().any(|&r| self.twins(r, v)) {
                reps.push(v);
            }
        }
        for v in reps {
            let ind: Vec<(u32, bool)> = (0..n).map(|w| (colors[w], w != v)).collect();
            let (c, _) = rank(&ind);
            self.search(self.refine(c), best);
        }
    }
}

fn component_graph(a: &Configuration, members: &[usize]) -> Graph {
    let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut names: Vec<String> = Vec::new();
    let mut self_loops: Vec<Vec<&str>> = vec![Vec::new(); members.len()];
    let mut adj = vec![Vec::new(); members.len()];
    for &(p, q) in a.bonds() {
        let (Some(&u), Some(&v)) = (pos.get(&p.monomer), pos.get(&q.monomer)) else {
            continue;
        };
        let name = &a.domain(p).name;
        if u == v {
            self_loops[u].push(name);
            continue;
        }
        let id = match names.iter().position(|x| x == name) {
            Some(i) => i,
            None => {
                names.push(name.clone());
                names.len() - 1
            }
        } as u32;
        adj[u].push((v, id, 0u8));
        adj[v].push((u, id, 1u8));
    }
    // Name ids must not depend on instance order: renumber by sorted name.
    let (remap, _) = rank(&names);
    for l in adj.iter_mut() {
        for e in l.iter_mut() {
            e.1 = remap[e.1 as usize];
        }
    }
    let mut sorted_names = names.clone();
    sorted_names.sort();
    let labels = members
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let m = &a.monomers()[i];
            let ds: Vec<String> = m.domains.iter().map(|d| d.to_string()).collect();
            let mut sl = self_loops[k].clone();
            sl.sort_unstable();
            format!("{}[{}/{}]", m.type_name, ds.join(" "), sl.join(" "))
        })
        .collect();
    Graph { labels, adj, names: sorted_names }
}

/// Canonical key of one connected set of instances.
pub fn component_key(a: &Configuration, members: &[usize]) -> String {
    let g = component_graph(a, members);
    let (init, _) = rank(&g.labels);
    let colors = g.refine(init);
    let mut best = None;
    g.search(colors, &mut best);
    best.unwrap_or_default()
}

/// Equal keys iff the configurations agree up to permuting identical
/// instances and identical slots.
pub fn canonical_form(a: &Configuration) -> String {
    let mut keys: Vec<String> = a.components().iter().map(|c| component_key(a, c)).collect();
    keys.sort();
    keys.join("\n")
}
