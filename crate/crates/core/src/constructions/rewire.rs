use crate::error::{Error, Result};
use crate::model::{Collection, Configuration, Dsu, Monomer, MonomerType, Site, Tbn, Domain};

/// For an acyclic saturated configuration, looks for a simple path of the
/// binding graph that crosses two bonds of the same name in the same
/// primary/complement direction. Exchanging the partners of those two bonds
/// keeps every bond and cuts off the stretch between them, so `S` grows by
/// one and `H` is unchanged.
pub fn tree_rewire_split(a: &Configuration) -> Result<Option<Configuration>> {
    if !a.is_saturated() {
        return Err(Error::InvalidArgument("configuration is not saturated".into()));
    }
    let n = a.len();
    let mut dsu = Dsu::new(n);
    // (neighbour, bond index, true if walking primary -> complement)
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); n];
    for (k, &(p, q)) in a.bonds().iter().enumerate() {
        if p.monomer == q.monomer {
            continue;
        }
        if !dsu.union(p.monomer, q.monomer) {
            return Err(Error::InvalidArgument("binding graph is not acyclic".into()));
        }
        adj[p.monomer].push((q.monomer, k, true));
        adj[q.monomer].push((p.monomer, k, false));
    }
    for s in 0..n {
        // depth-first walk keeping the current path's oriented bonds
        let mut stack: Vec<(usize, usize, usize)> = vec![(s, usize::MAX, 0)];
        let mut path: Vec<(usize, bool)> = Vec::new();
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let (w, k, dir) = adj[v][*next];
                *next += 1;
                if w == parent {
                    continue;
                }
                let name = &a.domain(a.bonds()[k].0).name;
                if let Some(&(k0, _)) =
                    path.iter().find(|&&(k0, d0)| d0 == dir && &a.domain(a.bonds()[k0].0).name == name)
                {
                    return Ok(Some(exchange(a, k0, k)));
                }
                path.push((k, dir));
                stack.push((w, v, 0));
            } else {
                stack.pop();
                path.pop();
            }
        }
    }
    Ok(None)
}

fn exchange(a: &Configuration, k1: usize, k2: usize) -> Configuration {
    let mut bonds = a.bonds().to_vec();
    let (p1, q1) = bonds[k1];
    let (p2, q2) = bonds[k2];
    bonds[k1] = (p1, q2);
    bonds[k2] = (p2, q1);
    Configuration::new(a.monomers().to_vec(), bonds).expect("exchange keeps a valid matching")
}

/// A chain of `len ≥ 2` monomers bonded head to tail, cycling through `d`
/// domain names `y0..y{d-1}`: `{y0}`, `{y0*, y1}`, `{y1*, y2}`, …, `{y_last*}`.
/// Once the chain has more than `d` bonds a name repeats with the same
/// orientation.
pub fn gen_rewire_chain(d: usize, len: usize) -> Result<(Tbn, Collection, Configuration)> {
    if d == 0 || len < 2 {
        return Err(Error::InvalidArgument("need d >= 1 and len >= 2".into()));
    }
    let y = |i: usize| format!("y{}", i % d);
    let mut monos = Vec::new();
    for i in 0..len {
        let mut ds = Vec::new();
        if i > 0 {
            ds.push(Domain::star(y(i - 1)));
        }
        if i + 1 < len {
            ds.push(Domain::primary(y(i)));
        }
        monos.push(MonomerType::new(format!("c{i:03}"), ds)?);
    }
    let tbn = Tbn::new(monos.clone())?;
    let c = Collection::ones(&tbn);
    let inst: Vec<Monomer> = monos.iter().map(Monomer::of).collect();
    let mut bonds = Vec::new();
    for i in 0..len - 1 {
        let ps = inst[i].domains.iter().position(|x| !x.starred).unwrap();
        let qs = inst[i + 1].domains.iter().position(|x| x.starred).unwrap();
        bonds.push((Site::new(i, ps), Site::new(i + 1, qs)));
    }
    Ok((tbn, c, Configuration::new(inst, bonds)?))
}
