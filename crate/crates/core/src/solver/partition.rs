//! Maximum partitions of a count vector into parts of nonnegative excess.
//!
//! After relabeling so that `M·c ≥ 0`, the stable entropy of `c` is the
//! largest number of nonzero parts `c = Σ c_i` with every `M·c_i ≥ 0`.
//! `best(r)` is computed by memoized recursion: the part containing one
//! instance of the first present deficient type (the pivot) is chosen, and
//! the rest is solved recursively. Once only nonnegative columns remain the
//! answer is immediate. Candidate parts are enumerated coordinate by
//! coordinate with interval propagation on every row, and parts that could
//! shed a supplying instance are skipped, since splitting it off would give
//! one more part.

use std::collections::HashMap;

/// Relabeled monomer matrix with per-type search orders.
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub m: Vec<Vec<i64>>,
    pub cols: Vec<Vec<(usize, i64)>>,
    pub nonneg: Vec<bool>,
    /// Doubled weights `2·w_j` with `w·q ≥ 1` for every nonzero `q` of
    /// nonnegative excess; `w·r` bounds the number of parts of `r`.
    weights: Vec<u32>,
    orders: Vec<Vec<usize>>,
}

impl Problem {
    pub fn new(m: Vec<Vec<i64>>, ntypes: usize) -> Self {
        let cols: Vec<Vec<(usize, i64)>> = (0..ntypes)
            .map(|j| m.iter().enumerate().filter(|(_, r)| r[j] != 0).map(|(i, r)| (i, r[j])).collect())
            .collect();
        let nonneg: Vec<bool> = cols.iter().map(|c| c.iter().all(|&(_, a)| a >= 0)).collect();
        // A nonnegative column weighs 1. A negative column weighs 0 if one of
        // its deficient rows is supplied only by nonnegative columns (any part
        // holding it holds one of those), and 1/2 otherwise.
        let weights = (0..ntypes)
            .map(|j| {
                if nonneg[j] {
                    return 2;
                }
                let covered = cols[j].iter().any(|&(i, a)| {
                    a < 0 && (0..ntypes).all(|t| m[i][t] <= 0 || nonneg[t])
                });
                if covered {
                    0
                } else {
                    1
                }
            })
            .collect();
        // Breadth-first from each type through shared rows, so that rows get
        // pinned down early in the enumeration.
        let orders = (0..ntypes)
            .map(|s| {
                let mut seen = vec![false; ntypes];
                let mut out = vec![s];
                seen[s] = true;
                let mut k = 0;
                while k < out.len() {
                    let j = out[k];
                    k += 1;
                    for &(i, _) in &cols[j] {
                        for (t, row) in m[i].iter().enumerate() {
                            if *row != 0 && !seen[t] {
                                seen[t] = true;
                                out.push(t);
                            }
                        }
                    }
                }
                out.extend((0..ntypes).filter(|&t| !seen[t]));
                // Deficient types first: afterwards, supplying types can be
                // capped by what is still missing.
                let (mut neg, pos): (Vec<usize>, Vec<usize>) =
                    out.into_iter().partition(|&t| t == s || !nonneg[t]);
                neg.extend(pos);
                neg
            })
            .collect();
        Problem { m, cols, nonneg, weights, orders }
    }

    pub fn ntypes(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, c: &[u32]) -> Vec<i64> {
        let mut out = vec![0i64; self.m.len()];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, a) in col {
                out[i] += a * c[j] as i64;
            }
        }
        out
    }

    pub fn nonneg_excess(&self, c: &[u32]) -> bool {
        self.apply(c).iter().all(|&x| x >= 0)
    }

    /// Upper bound on the number of parts of `r`.
    pub fn upper_bound(&self, r: &[u32]) -> u32 {
        r.iter().zip(&self.weights).map(|(&x, &w)| x * w).sum::<u32>() / 2
    }

    /// Calls `f(p)` for every `p ≤ r` with `lower ≤ p`, `0 ≤ M·p ≤ M·r`,
    /// `p ≠ 0`, visiting types in `order`. `f` returns false to stop.
    ///
    /// With `cap_supply`, a nonnegative column `j` outside `exempt` and not
    /// forced by `lower` is only taken as often as some row it supplies
    /// still falls short, so that dropping one copy would break that row.
    /// Types must then be ordered deficient-first.
    pub fn for_each_part(
        &self,
        r: &[u32],
        lower: &[u32],
        order: &[usize],
        cap_supply: Option<&[usize]>,
        f: &mut dyn FnMut(&[u32]) -> bool,
    ) {
        let hi = self.apply(r);
        let d = self.m.len();
        let types: Vec<usize> = order.iter().copied().filter(|&j| r[j] > 0).collect();
        let t = types.len();
        let mut sufmin = vec![vec![0i64; d]; t + 1];
        let mut sufmax = vec![vec![0i64; d]; t + 1];
        for pos in (0..t).rev() {
            let j = types[pos];
            sufmin[pos] = sufmin[pos + 1].clone();
            sufmax[pos] = sufmax[pos + 1].clone();
            for &(i, a) in &self.cols[j] {
                let lo_c = a.min(0) * r[j] as i64 + a.max(0) * lower[j] as i64;
                let hi_c = a.max(0) * r[j] as i64 + a.min(0) * lower[j] as i64;
                sufmin[pos][i] += lo_c;
                sufmax[pos][i] += hi_c;
            }
        }
        let mut s = vec![0i64; d];
        let mut p = vec![0u32; r.len()];
        struct Ctx<'a> {
            pb: &'a Problem,
            types: Vec<usize>,
            r: &'a [u32],
            lower: &'a [u32],
            hi: Vec<i64>,
            sufmin: Vec<Vec<i64>>,
            sufmax: Vec<Vec<i64>>,
            cap_supply: Option<&'a [usize]>,
        }
        fn rec(cx: &Ctx, pos: usize, s: &mut Vec<i64>, p: &mut Vec<u32>, f: &mut dyn FnMut(&[u32]) -> bool) -> bool {
            if pos == cx.types.len() {
                if p.iter().any(|&x| x > 0) {
                    return f(p);
                }
                return true;
            }
            let j = cx.types[pos];
            let (mut lo, mut hi) = (cx.lower[j] as i64, cx.r[j] as i64);
            for &(i, a) in &cx.pb.cols[j] {
                // 0 ≤ s_i + a·v + rest ≤ hi_i for some rest in [sufmin, sufmax]
                let need_lo = -s[i] - cx.sufmax[pos + 1][i];
                let need_hi = cx.hi[i] - s[i] - cx.sufmin[pos + 1][i];
                if a > 0 {
                    lo = lo.max(div_ceil(need_lo, a));
                    hi = hi.min(div_floor(need_hi, a));
                } else {
                    lo = lo.max(div_ceil(need_hi, a));
                    hi = hi.min(div_floor(need_lo, a));
                }
                if lo > hi {
                    return true;
                }
            }
            if let Some(exempt) = cx.cap_supply {
                if cx.pb.nonneg[j] && cx.lower[j] == 0 && !exempt.contains(&j) {
                    let cap = cx.pb.cols[j]
                        .iter()
                        .filter(|&&(i, a)| a > 0 && s[i] < 0)
                        .map(|&(i, a)| div_ceil(-s[i], a))
                        .max()
                        .unwrap_or(0);
                    hi = hi.min(cap);
                    if lo > hi {
                        return true;
                    }
                }
            }
            for v in lo..=hi {
                p[j] = v as u32;
                for &(i, a) in &cx.pb.cols[j] {
                    s[i] += a * v;
                }
                let go = rec(cx, pos + 1, s, p, f);
                for &(i, a) in &cx.pb.cols[j] {
                    s[i] -= a * v;
                }
                if !go {
                    p[j] = 0;
                    return false;
                }
            }
            p[j] = 0;
            true
        }
        let cx = Ctx { pb: self, types, r, lower, hi, sufmin, sufmax, cap_supply };
        rec(&cx, 0, &mut s, &mut p, f);
    }

    pub fn order_from(&self, pivot: usize) -> &[usize] {
        &self.orders[pivot]
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// Memoized maximum partition search. With `forbid = Some(o)` the singleton
/// part `{o}` is disallowed.
pub(crate) struct Partitioner<'a> {
    pb: &'a Problem,
    forbid: Option<usize>,
    memo: HashMap<Vec<u32>, (u32, Vec<u32>)>,
}

pub(crate) const INFEASIBLE: u32 = 0;

impl<'a> Partitioner<'a> {
    pub fn new(pb: &'a Problem, forbid: Option<usize>) -> Self {
        Partitioner { pb, forbid, memo: HashMap::new() }
    }

    fn is_forbidden(&self, p: &[u32]) -> bool {
        match self.forbid {
            Some(o) => p[o] == 1 && p.iter().sum::<u32>() == 1,
            None => false,
        }
    }

    /// Only nonnegative columns remain: singletons, except that a forbidden
    /// instance joins some other one.
    fn all_supplying(&mut self, r: &[u32]) -> u32 {
        let total: u32 = r.iter().sum();
        let mut choice = vec![0u32; r.len()];
        let best = match self.forbid {
            Some(o) if r[o] > 0 => {
                // Copies of o pair up among themselves; a lone copy joins
                // another instance.
                let k = r[o];
                let m = total - k;
                match (k, m) {
                    (1, 0) => INFEASIBLE,
                    (1, _) => {
                        choice[o] = 1;
                        choice[(0..r.len()).find(|&j| j != o && r[j] > 0).unwrap()] = 1;
                        m
                    }
                    (3, 0) => {
                        choice[o] = 3;
                        1
                    }
                    _ => {
                        choice[o] = 2;
                        m + k / 2
                    }
                }
            }
            _ => {
                choice[r.iter().position(|&x| x > 0).unwrap()] = 1;
                total
            }
        };
        self.memo.insert(r.to_vec(), (best, choice));
        best
    }

    /// A part that splits into an allowed singleton and a rest, both of
    /// nonnegative excess, never occurs in a maximum partition.
    fn splits_off_singleton(&self, p: &[u32]) -> bool {
        let pb = self.pb;
        let total: u32 = p.iter().sum();
        if total < 2 {
            return false;
        }
        let mp = pb.apply(p);
        (0..p.len()).any(|j| {
            let rest_forbidden = match self.forbid {
                Some(o) => total == 2 && o != j && p[o] == 1,
                None => false,
            };
            p[j] > 0
                && pb.nonneg[j]
                && Some(j) != self.forbid
                && !rest_forbidden
                && pb.cols[j].iter().all(|&(i, a)| mp[i] - a >= 0)
        })
    }

    /// Maximum number of parts of `r` (which must have `M·r ≥ 0`), or
    /// [`INFEASIBLE`] when every partition uses a forbidden part.
    pub fn best(&mut self, r: &[u32]) -> u32 {
        if r.iter().all(|&x| x == 0) {
            return 0;
        }
        if let Some(v) = self.memo.get(r) {
            return v.0;
        }
        let pb = self.pb;
        let Some(pivot) = (0..r.len()).find(|&j| r[j] > 0 && !pb.nonneg[j]) else {
            return self.all_supplying(r);
        };
        let mut lower = vec![0u32; r.len()];
        lower[pivot] = 1;
        let ub = pb.upper_bound(r);
        let mut best = INFEASIBLE;
        let mut choice: Vec<u32> = Vec::new();
        let mut rest = r.to_vec();
        let exempt: Vec<usize> = self.forbid.into_iter().collect();
        pb.for_each_part(r, &lower, pb.order_from(pivot), Some(&exempt), &mut |p| {
            if self.is_forbidden(p) || self.splits_off_singleton(p) {
                return true;
            }
            for j in 0..r.len() {
                rest[j] = r[j] - p[j];
            }
            let val = if rest.iter().all(|&x| x == 0) {
                1
            } else {
                if 1 + pb.upper_bound(&rest) <= best {
                    return true;
                }
                let b = self.best(&rest);
                if b == INFEASIBLE {
                    return true;
                }
                b + 1
            };
            if val > best {
                best = val;
                choice = p.to_vec();
            }
            best < ub
        });
        self.memo.insert(r.to_vec(), (best, choice));
        best
    }

    /// The parts realizing `best(r)`.
    pub fn parts(&mut self, r: &[u32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = r.to_vec();
        while cur.iter().any(|&x| x > 0) {
            if self.best(&cur) == INFEASIBLE {
                break;
            }
            let p = self.memo[&cur].1.clone();
            for j in 0..cur.len() {
                cur[j] -= p[j];
            }
            out.push(p);
        }
        out
    }
}
