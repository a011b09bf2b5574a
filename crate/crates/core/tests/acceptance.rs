//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Slow cases (depth-2 AND trees, the k = 4 counter) run only when
//! `TBN_SLOW=1` is set; without it they are reported as skipped.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbn_core::atam::{check_counter_stability, column_values, gen_counter, simulate, Policy, Variant};
use tbn_core::constructions::*;
use tbn_core::solver::*;
use tbn_core::*;

/// Outcome of one criterion; `Err` carries the reason it is skipped.
type Outcome = std::result::Result<String, String>;

fn free(m: &str) -> OutputPredicate {
    OutputPredicate::MonomerFree(m.into())
}

fn slow_enabled() -> bool {
    std::env::var("TBN_SLOW").is_ok_and(|v| v == "1")
}

fn c1_fig1() -> Outcome {
    let (tbn, c) = gen_fig1();
    let all = enumerate_configurations(&tbn, &c, Filter::All, None, DEFAULT_ENUM_CAP).unwrap();
    let sat = enumerate_configurations(&tbn, &c, Filter::Saturated, None, DEFAULT_ENUM_CAP).unwrap();
    let stable = enumerate_configurations(&tbn, &c, Filter::Stable, None, DEFAULT_ENUM_CAP).unwrap();
    assert_eq!((all.len(), sat.len(), stable.len()), (9, 4, 1));
    assert_eq!((stable[0].entropy(), stable[0].enthalpy()), (3, 2));
    let r = stable_entropy(&tbn, &c).unwrap();
    assert_eq!(r.stable_entropy, 3);
    assert_eq!(r.config.enthalpy(), 2);
    Ok("9 configurations, 4 saturated, 1 stable (S=3, H=2)".into())
}

fn c2_translator() -> Outcome {
    for n in 1..=4u32 {
        for k in 1..=3u32 {
            let (tbn, c) = gen_translator(n, k, false).unwrap();
            assert_eq!(stable_entropy(&tbn, &c).unwrap().stable_entropy, n * k + 1, "n={n} k={k}");
            let r = constrained_max_entropy(&tbn, &c, &free("TERM")).unwrap();
            assert_eq!(r.entropy, n * (k - 1) + 2, "n={n} k={k}");
            assert_eq!(distance_to_stability(&tbn, &c, &free("TERM")).unwrap(), n - 1, "n={n} k={k}");
        }
    }
    Ok("S* = nk+1, constrained = n(k-1)+2, distance = n-1 for n<=4, k<=3".into())
}

/// Random collection with at most `max_monomers` monomer instances and
/// at most `cap` domain instances.
fn random_small<R: Rng>(rng: &mut R, max_monomers: u32, cap: usize) -> common::Shape {
    loop {
        let s = common::random_shape(rng, 4, 3, 3, 3);
        let monomers: u32 = s.iter().map(|x| x.1).sum();
        if monomers <= max_monomers && common::instances(&s) <= cap {
            return s;
        }
    }
}

fn c3_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..200 {
        let shape = random_small(&mut rng, 10, DEFAULT_ENUM_CAP);
        let (tbn, c) = common::build(&shape);
        let want = common::oracle_stable_entropy(&tbn, &c);
        let got = stable_entropy(&tbn, &c).unwrap();
        assert_eq!(got.stable_entropy as usize, want, "case {i}: {}", write_tbn(&tbn, &c));
        assert!(verify_witness(&tbn, &c, &got.witness));
    }
    Ok("200 random TBNs agree with brute force".into())
}

fn c4_and_gates() -> Outcome {
    for n in 2..=5u32 {
        let (tbn, c) = gen_and_tree(&TreeSpec::new(1, n, vec![true, false])).unwrap();
        assert_eq!(distance_to_stability(&tbn, &c, &free("TERM")).unwrap(), n - 2, "n={n}");
    }
    if !slow_enabled() {
        return Err("single gate distance = n-2 for n in 2..=5; depth-2 trees need TBN_SLOW=1".into());
    }
    for n in 3..=4u32 {
        for inputs in [vec![true, true, true, false], vec![false, true, true, true]] {
            let (tbn, c) = gen_and_tree(&TreeSpec::new(2, n, inputs)).unwrap();
            let d = distance_to_stability(&tbn, &c, &free("TERM")).unwrap();
            assert!(d as i64 >= n as i64 - 5);
            assert_eq!(d, n - 2, "depth 2, n={n}");
        }
    }
    Ok("single gate distance = n-2 (n=2..5); depth-2 distance = n-2 >= n-5 (n=3,4)".into())
}

fn c5_tree_polymer() -> Outcome {
    for n in 2..=4u32 {
        for k in 1..=3u32 {
            let (tbn, c) = gen_tree_polymer(n, k).unwrap();
            let size = if k == 1 { n as u64 } else { (k.pow(n) as u64 - 1) / (k as u64 - 1) };
            assert_eq!(c.size(), size);
            let r = stable_entropy(&tbn, &c).unwrap();
            assert_eq!(r.stable_entropy, 1, "n={n} k={k}");
            assert_eq!(r.config.len() as u64, size);
            let domains: usize = tbn.monomers().iter().zip(&c.counts).map(|(t, &x)| t.domains().len() * x as usize).sum();
            if domains <= DEFAULT_ENUM_CAP {
                let sat = enumerate_configurations(&tbn, &c, Filter::Saturated, None, DEFAULT_ENUM_CAP).unwrap();
                assert_eq!(sat.len(), 1, "n={n} k={k}");
            }
        }
    }
    assert_eq!(gen_tree_polymer(4, 2).unwrap().1.size(), 15);
    Ok("S* = 1 with polymer size (k^n-1)/(k-1); unique saturated configuration within the cap".into())
}

fn c6_bounds() -> Outcome {
    let b = |d, m, a| polymer_size_bound(d, m, a).unwrap();
    assert_eq!(b(1, 1, 1), BigUint::from(4u32));
    assert_eq!(b(1, 2, 1), BigUint::from(6u32));
    assert_eq!(b(2, 2, 1), BigUint::from(1024u32));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut tested, mut splits) = (0, 0);
    while tested < 100 {
        // d <= 2 names, m <= 3 types, at most 2 copies of a domain per type
        let shape = random_small(&mut rng, 10, 14);
        if shape.len() > 3 || shape.iter().any(|(ds, _)| ds.iter().any(|&(n, _)| n > 1)) {
            continue;
        }
        let (tbn, c) = common::build(&shape);
        let a = tbn
            .monomers()
            .iter()
            .flat_map(|t| tbn.domains().iter().flat_map(move |n| [t.count(n, false), t.count(n, true)]))
            .max()
            .unwrap() as u64;
        if a > 2 {
            continue;
        }
        tested += 1;
        let bound = polymer_size_bound(tbn.domains().len() as u64, tbn.monomers().len() as u64, a).unwrap();
        for cfg in enumerate_configurations(&tbn, &c, Filter::Stable, None, DEFAULT_ENUM_CAP).unwrap() {
            for p in cfg.polymers() {
                assert!(BigUint::from(p.len()) <= bound);
            }
        }
        let s = stable_entropy(&tbn, &c).unwrap().stable_entropy;
        match find_split(&tbn, &c).unwrap() {
            Some((c1, c2)) => {
                assert!(s > 1);
                assert!(verify_split(&tbn, &c, &c1, &c2));
                splits += 1;
            }
            None => assert_eq!(s, 1),
        }
    }
    Ok(format!("spot values 4/6/1024; 100 random TBNs within the bound; {splits} verified splits"))
}

/// All vector lists of length 1..=l with entries in [-a, a].
fn lists(a: i64, l: usize) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Vec<i64>>> = vec![vec![]];
    for _ in 0..l {
        layer = layer
            .iter()
            .flat_map(|p| {
                (-a..=a).map(move |x| {
                    let mut q = p.clone();
                    q.push(vec![x]);
                    q
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn c7_farkas() -> Outcome {
    let mut count = 0;
    for a in 1..=2i64 {
        let k = farkas_k_checked(a as u64, 1).unwrap() as i64;
        for vs in lists(a, 3) {
            // whether each certificate kind exists, by exhaustive search
            let hyp = (-k..=k).any(|h| separates(&vs, &[h]));
            let bal = {
                let mut n = vec![0i64; vs.len()];
                let mut found = false;
                'outer: loop {
                    let mut i = 0;
                    while i < n.len() && n[i] == k {
                        n[i] = 0;
                        i += 1;
                    }
                    if i == n.len() {
                        break 'outer;
                    }
                    n[i] += 1;
                    if is_balanced(&vs, &n) {
                        found = true;
                        break;
                    }
                }
                found
            };
            assert!(bal != hyp, "{vs:?}");
            match farkas_decide(&vs, a, 1).unwrap() {
                FarkasResult::Balanced { coefficients } => {
                    assert!(bal);
                    assert!(coefficients.iter().all(|&n| (0..=k).contains(&n)));
                    assert!(is_balanced(&vs, &coefficients));
                }
                FarkasResult::Hyperplane { h } => {
                    assert!(hyp);
                    assert!(h.iter().all(|x| x.abs() <= k));
                    assert!(separates(&vs, &h));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} inputs, exactly one certificate each"))
}

fn c8_excision() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let shape = common::random_shape(&mut rng, 4, 3, 3, 3);
        let (tbn, c) = common::build(&shape);
        let a = common::random_saturated(&tbn, &c, &mut rng);
        assert!(a.is_saturated());
        let name = common::NAMES[rng.gen_range(0..3)].to_string();
        let side = if rng.gen_bool(0.5) { Side::PrimaryOnly } else { Side::ComplementOnly };
        let e = a.excise(&BTreeSet::from([name]), side);
        assert!(e.is_saturated());
    }
    Ok("100 random saturated configurations stay saturated".into())
}

fn c9_acyclic() -> Outcome {
    assert_eq!(acyclic_bound(2, 3).unwrap(), BigUint::from(4u32));
    for l in 3..=5u64 {
        for d in 1..=4u64 {
            assert_eq!(acyclic_bound_closed(d, l).unwrap(), acyclic_bound_sum(d, l).unwrap());
        }
    }
    let (tbn, _, a) = gen_rewire_chain(2, 7).unwrap();
    let b = tree_rewire_split(&a).unwrap().expect("split");
    assert!(b.is_saturated());
    assert_eq!(b.enthalpy(), a.enthalpy());
    assert!(b.entropy() > a.entropy());
    assert!(!is_stable(&tbn, &a).unwrap());
    Ok(format!("bound(2,3)=4; closed form = sum; rewiring S {} -> {}", a.entropy(), b.entropy()))
}

fn c10_counter() -> Outcome {
    for v in [Variant::Plain, Variant::Indexed] {
        for k in 1..=3usize {
            let a = simulate(&gen_counter(k, v).unwrap(), Policy::DeterministicScan, 1_000_000).unwrap();
            assert!(a.terminal && a.is_rectangle(k, (1 << k) + 1));
            let want: Vec<Option<u64>> = (0..1u64 << k).map(Some).chain([None]).collect();
            assert_eq!(column_values(&a, k), want);
        }
    }
    for k in 2..=3 {
        let p = check_counter_stability(k, Variant::Plain, false).unwrap();
        assert!(!p.stable && p.stable_entropy >= 2 && p.witness.config.is_saturated());
        let i = check_counter_stability(k, Variant::Indexed, false).unwrap();
        assert!(i.stable && i.stable_entropy == 1);
    }
    if !slow_enabled() {
        return Err("k<=3 rectangles and verdicts hold; k=4 needs TBN_SLOW=1".into());
    }
    let r = check_counter_stability(4, Variant::Indexed, true).unwrap();
    assert!(r.stable && r.stable_entropy == 1);
    Ok("k<=3 rectangles and bits; plain unstable, indexed stable for k=2,3; indexed k=4 stable".into())
}

fn c11_energy() -> Outcome {
    let p = EnergyParams { l: 5.0, c: 1.0, ..EnergyParams::default() };
    let g = gibbs(2, 4, 3, &p).unwrap();
    assert!((g - (-13.04)).abs() <= 1e-9, "{g}");
    let z = gibbs(0, 4, 4, &p).unwrap();
    assert!(z.abs() <= 1e-9);
    let (tbn, c) = gen_fig1();
    let r = stable_entropy(&tbn, &c).unwrap();
    let g2 = gibbs_free_energy(&r.config.metrics(), c.size() as usize, &p).unwrap();
    assert!((g2 - (-13.04)).abs() <= 1e-9);
    Ok(format!("dG = {g:.2} kcal/mol; reference point {z}"))
}

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 11] = [
        (1, "fig1 regression", secs(1), c1_fig1),
        (2, "translator formulas", secs(60), c2_translator),
        (3, "oracle equivalence", secs(300), c3_oracle),
        (4, "AND gate leak distance", secs(1800), c4_and_gates),
        (5, "tree polymers", secs(120), c5_tree_polymer),
        (6, "polymer size bound", secs(300), c6_bounds),
        (7, "farkas dichotomy", secs(60), c7_farkas),
        (8, "excision", secs(60), c8_excision),
        (9, "acyclic bound and rewiring", secs(60), c9_acyclic),
        (10, "aTAM counter", secs(1800), c10_counter),
        (11, "free energy", secs(1), c11_energy),
    ];
    let only: Option<u32> = std::env::var("TBN_CRITERION").ok().and_then(|s| s.parse().ok());
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let t = Instant::now();
        let r = panic::catch_unwind(AssertUnwindSafe(f));
        let dt = t.elapsed();
        let line = match r {
            Ok(Ok(msg)) if dt <= limit => format!("PASS  {msg}"),
            Ok(Ok(_)) => {
                failed += 1;
                format!("FAIL  took {dt:.1?}, limit {limit:?}")
            }
            Ok(Err(msg)) => format!("PASS  {msg} (slow part skipped)"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL  {msg}")
            }
        };
        println!("criterion {id:>2} {name:<28} [{dt:>9.2?}] {line}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
