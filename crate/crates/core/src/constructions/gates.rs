//! Boolean gates: the two-input gate with single-copy monomers and
//! redundant AND gates composed into trees.

use crate::constructions::{assemble, mono};
use crate::error::{Error, Result};
use crate::model::{Collection, Configuration, Monomer, Site, Tbn};

/// Intermediate monomers of the single-copy gate, as `name: domains`.
pub const AND2_INTERMEDIATES: &[(&str, &str)] =
    &[("P1", "a* c* e"), ("P2", "b* d* f"), ("Q1", "a c"), ("Q2", "b"), ("Q3", "d"), ("K", "e* f*")];

/// Gate with inputs `I1={a,b}`, `I2={c,d}` and output `O={e,f}`. Without
/// inputs, `P1`/`P2` hold the output-side domains and `K` binds `O`; with
/// both inputs, `P1`/`P2` can be taken by the inputs while `Q1..Q3` pair up
/// and `K` absorbs `P1`/`P2`'s `e,f`, freeing `O` at no entropy cost.
pub fn gen_and_gate_basic(input1_present: bool, input2_present: bool) -> (Tbn, Collection) {
    let mut types = vec![
        (mono("I1", &[("a", false, 1), ("b", false, 1)]), u32::from(input1_present)),
        (mono("I2", &[("c", false, 1), ("d", false, 1)]), u32::from(input2_present)),
        (mono("O", &[("e", false, 1), ("f", false, 1)]), 1),
    ];
    for (name, doms) in AND2_INTERMEDIATES {
        let t = crate::model::MonomerType::parse(name, doms).expect("static monomers");
        types.push((t, 1));
    }
    assemble(types)
}

/// A full binary tree of AND gates of depth `k` with redundancy `n`.
///
/// Gates are numbered heap-style (root 1, children `2g`, `2g+1`). Gate `g`
/// has inputs `u`, `v` (the outputs `w{2g}`, `w{2g+1}` of its children, or
/// leaf input names `in{2g}`, `in{2g+1}`), output `w{g}` and internal names
/// `a{g}`, `b{g}`. Its monomers are `n` carriers `{u*, v*, w}` — one of them
/// with an extra `a`, one with `a*` — `n` fuels `{u, v}`, and the three
/// internal monomers `{a,b}`, `{a*,b*}`, `{b}`. The root output feeds the
/// terminator gadget `TERM={n·w1}`, `TERMC={n·w1*}`; leaf input `j` is the
/// monomer `IN{j}={n·in{j}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    pub depth: u32,
    pub n: u32,
    /// Leaf inputs from left to right, `2^depth` entries (twice as many when
    /// `or_roots` is set).
    pub inputs: Vec<bool>,
    /// Two AND trees whose roots share output `w1`, giving an OR of ANDs.
    pub or_roots: bool,
}

impl TreeSpec {
    pub fn new(depth: u32, n: u32, inputs: Vec<bool>) -> Self {
        TreeSpec { depth, n, inputs, or_roots: false }
    }

    fn leaves(&self) -> usize {
        (1usize << self.depth) * if self.or_roots { 2 } else { 1 }
    }

    fn check(&self) -> Result<()> {
        if self.depth < 1 || self.n < 2 {
            return Err(Error::InvalidArgument("AND tree needs depth >= 1 and n >= 2".into()));
        }
        if self.depth > 12 {
            return Err(Error::InvalidArgument("AND tree depth too large".into()));
        }
        if self.inputs.len() != self.leaves() {
            return Err(Error::InvalidArgument(format!(
                "expected {} input flags, got {}",
                self.leaves(),
                self.inputs.len()
            )));
        }
        Ok(())
    }

    /// Gate ids and, for each, (u, v, w) domain names. With `or_roots` the
    /// two roots are gates 2 and 3, both writing `w1`.
    /// Largest gate id.
    fn last_gate(&self) -> usize {
        if self.or_roots {
            (2usize << self.depth) - 1
        } else {
            (1usize << self.depth) - 1
        }
    }

    /// Gate ids with their (u, v, w) domain names. With `or_roots` the two
    /// roots are gates 2 and 3, both writing `w1`.
    fn gates(&self) -> Vec<(usize, String, String, String)> {
        let last = self.last_gate();
        let first = if self.or_roots { 2 } else { 1 };
        let name_in = |j: usize| if j > last { format!("in{j}") } else { format!("w{j}") };
        (first..=last)
            .map(|g| {
                let w = if self.or_roots && g <= 3 { "w1".to_string() } else { format!("w{g}") };
                (g, name_in(2 * g), name_in(2 * g + 1), w)
            })
            .collect()
    }

    fn input_ids(&self) -> Vec<usize> {
        let last = self.last_gate();
        (last + 1..=2 * last + 1).collect()
    }
}

pub fn gen_and_tree(spec: &TreeSpec) -> Result<(Tbn, Collection)> {
    spec.check()?;
    let n = spec.n as usize;
    let mut types = Vec::new();
    for (g, u, v, w) in spec.gates() {
        let (a, b) = (format!("a{g}"), format!("b{g}"));
        types.push((mono(&format!("P{g}"), &[(&u, true, 1), (&v, true, 1), (&w, false, 1)]), spec.n - 2));
        types.push((mono(&format!("P{g}a"), &[(&u, true, 1), (&v, true, 1), (&w, false, 1), (&a, false, 1)]), 1));
        types.push((mono(&format!("P{g}b"), &[(&u, true, 1), (&v, true, 1), (&w, false, 1), (&a, true, 1)]), 1));
        types.push((mono(&format!("Q{g}"), &[(&u, false, 1), (&v, false, 1)]), spec.n));
        types.push((mono(&format!("R{g}a"), &[(&a, false, 1), (&b, false, 1)]), 1));
        types.push((mono(&format!("R{g}b"), &[(&a, true, 1), (&b, true, 1)]), 1));
        types.push((mono(&format!("R{g}c"), &[(&b, false, 1)]), 1));
    }
    for (j, present) in spec.input_ids().into_iter().zip(&spec.inputs) {
        types.push((mono(&format!("IN{j}"), &[(&format!("in{j}"), false, n)]), u32::from(*present)));
    }
    types.push((mono("TERM", &[("w1", false, n)]), 1));
    types.push((mono("TERMC", &[("w1", true, n)]), 1));
    Ok(assemble(types))
}

/// Every gate untriggered: each carrier bound to a fuel, the two marked
/// carriers joined by their `a` bond, `{a,b}`–`{a*,b*}` paired, `{b}` free,
/// and the terminator gadget closed. Each gate contributes `n+1` polymers.
pub fn untriggered_gate_config(spec: &TreeSpec) -> Result<Configuration> {
    let (tbn, c) = gen_and_tree(spec)?;
    let base = Configuration::unbonded(&tbn, &c);
    let ms: Vec<Monomer> = base.monomers().to_vec();
    let find = |name: &str, copy: usize| -> usize {
        ms.iter().enumerate().filter(|(_, m)| m.type_name == name).nth(copy).map(|(i, _)| i).unwrap()
    };
    let slot = |i: usize, dom: &str, st: bool, occ: usize| -> Site {
        let s = ms[i]
            .domains
            .iter()
            .enumerate()
            .filter(|(_, d)| d.name == dom && d.starred == st)
            .nth(occ)
            .map(|(s, _)| s)
            .unwrap();
        Site::new(i, s)
    };
    let mut bonds = Vec::new();
    for (g, u, v, _) in spec.gates() {
        let mut carriers: Vec<usize> = (0..spec.n as usize - 2).map(|j| find(&format!("P{g}"), j)).collect();
        let pa = find(&format!("P{g}a"), 0);
        let pb = find(&format!("P{g}b"), 0);
        carriers.push(pa);
        carriers.push(pb);
        for (j, &p) in carriers.iter().enumerate() {
            let q = find(&format!("Q{g}"), j);
            bonds.push((slot(q, &u, false, 0), slot(p, &u, true, 0)));
            bonds.push((slot(q, &v, false, 0), slot(p, &v, true, 0)));
        }
        let (a, b) = (format!("a{g}"), format!("b{g}"));
        bonds.push((slot(pa, &a, false, 0), slot(pb, &a, true, 0)));
        let ra = find(&format!("R{g}a"), 0);
        let rb = find(&format!("R{g}b"), 0);
        bonds.push((slot(ra, &a, false, 0), slot(rb, &a, true, 0)));
        bonds.push((slot(ra, &b, false, 0), slot(rb, &b, true, 0)));
    }
    let term = find("TERM", 0);
    let termc = find("TERMC", 0);
    for j in 0..spec.n as usize {
        bonds.push((slot(term, "w1", false, j), slot(termc, "w1", true, j)));
    }
    Configuration::new(ms.clone(), bonds)
}
