use tbn_core::atam::{
    atam_to_tbn, check_counter_stability, column_values, gen_counter, max_choices, replay_ok, simulate, Glue,
    InterpretOptions, Policy, TileSystem, TileType, Variant,
};
use tbn_core::solver::verify_split;

const VARIANTS: [Variant; 2] = [Variant::Plain, Variant::Indexed];

#[test]
fn counter_fills_rectangle_and_counts() {
    for v in VARIANTS {
        for k in 1..=4usize {
            let sys = gen_counter(k, v).unwrap();
            let a = simulate(&sys, Policy::DeterministicScan, 1_000_000).unwrap();
            assert!(a.terminal, "{v:?} k={k}");
            assert!(a.is_rectangle(k, (1 << k) + 1), "{v:?} k={k}\n{}", a.ascii());
            let cols = column_values(&a, k);
            let want: Vec<Option<u64>> = (0..1u64 << k).map(Some).chain([None]).collect();
            assert_eq!(cols, want, "{v:?} k={k}");
        }
    }
}

#[test]
fn counter_is_directed() {
    for v in VARIANTS {
        for k in 1..=3usize {
            let sys = gen_counter(k, v).unwrap();
            let det = simulate(&sys, Policy::DeterministicScan, 1_000_000).unwrap();
            assert!(replay_ok(&sys, &det));
            assert_eq!(max_choices(&sys, &det), 1, "{v:?} k={k}");
            for seed in 0..5 {
                let r = simulate(&sys, Policy::SeededRandom(seed), 1_000_000).unwrap();
                assert!(r.terminal);
                assert!(replay_ok(&sys, &r));
                assert_eq!(r.placements, det.placements, "{v:?} k={k} seed={seed}");
            }
        }
    }
}

#[test]
fn assembly_reads_as_saturated_configuration() {
    for v in VARIANTS {
        for k in 1..=3usize {
            let sys = gen_counter(k, v).unwrap();
            let a = simulate(&sys, Policy::DeterministicScan, 1_000_000).unwrap();
            let (tbn, cfg) = atam_to_tbn(&sys, &a, InterpretOptions::default()).unwrap();
            assert_eq!(cfg.monomers().len(), a.placements.len());
            // every adjacent pair in a counter rectangle shares one glue
            let rows = k;
            let cols = (1usize << k) + 1;
            let adjacent = rows * (cols - 1) + cols * (rows - 1);
            assert_eq!(cfg.bonds().len(), adjacent, "{v:?} k={k}");
            assert_eq!(cfg.entropy(), 1);
            assert!(cfg.is_saturated(), "{v:?} k={k}");
            let used: std::collections::BTreeSet<&String> = a.placements.values().collect();
            assert_eq!(tbn.monomers().len(), used.len());
        }
    }
}

#[test]
fn strength_as_copies_doubles_domains() {
    let sys = gen_counter(2, Variant::Indexed).unwrap();
    let a = simulate(&sys, Policy::DeterministicScan, 1_000_000).unwrap();
    let (_, one) = atam_to_tbn(&sys, &a, InterpretOptions::default()).unwrap();
    let (_, two) = atam_to_tbn(&sys, &a, InterpretOptions { strength_as_copies: true }).unwrap();
    let doms = |c: &tbn_core::Configuration| c.monomers().iter().map(|m| m.domains.len()).sum::<usize>();
    assert!(doms(&two) > doms(&one));
    assert!(two.is_saturated());
    assert_eq!(two.entropy(), 1);
}

#[test]
fn plain_counter_is_unstable() {
    for k in 2..=3 {
        let r = check_counter_stability(k, Variant::Plain, false).unwrap();
        assert!(!r.stable, "k={k}");
        assert!(r.stable_entropy >= 2);
        assert!(r.witness.config.is_saturated());
        assert_eq!(r.witness.config.entropy() as u32, r.stable_entropy);
        assert!(!r.self_saturating.is_empty(), "k={k}");
        let (p, q) = r.split.expect("split");
        assert!(!p.is_empty() && !q.is_empty());
        let c = r.configuration.collection(&r.tbn).unwrap();
        let to_counts = |v: &[(String, u32)]| {
            let mut x = vec![0u32; r.tbn.monomers().len()];
            for (name, n) in v {
                x[r.tbn.monomer_index(name).unwrap()] = *n;
            }
            tbn_core::Collection::new(x)
        };
        assert!(verify_split(&r.tbn, &c, &to_counts(&p), &to_counts(&q)));
    }
}

#[test]
fn indexed_counter_is_stable() {
    for k in 2..=3 {
        let r = check_counter_stability(k, Variant::Indexed, false).unwrap();
        assert!(r.stable, "k={k}");
        assert_eq!(r.stable_entropy, 1);
        assert!(r.split.is_none());
        assert!(r.self_saturating.is_empty());
    }
}

#[test]
fn large_counter_needs_opt_in() {
    assert!(check_counter_stability(4, Variant::Indexed, false).is_err());
}

#[test]
fn seed_only_system() {
    let mut seed = TileType::new("s");
    seed.e = Some(Glue::new("x", 1));
    let sys = TileSystem { tiles: vec![seed], seed: "s".into(), temperature: 2 };
    let a = simulate(&sys, Policy::DeterministicScan, 10).unwrap();
    assert!(a.terminal);
    assert_eq!(a.placements.len(), 1);
    let (tbn, cfg) = atam_to_tbn(&sys, &a, InterpretOptions::default()).unwrap();
    assert_eq!(tbn.monomers().len(), 1);
    assert_eq!(cfg.entropy(), 1);
    assert!(cfg.bonds().is_empty());
}

#[test]
fn invalid_systems_rejected() {
    let t = TileType::new("s");
    let sys = TileSystem { tiles: vec![t.clone()], seed: "missing".into(), temperature: 2 };
    assert!(sys.validate().is_err());
    let sys = TileSystem { tiles: vec![t.clone(), t], seed: "s".into(), temperature: 2 };
    assert!(sys.validate().is_err());
    assert!(gen_counter(0, Variant::Plain).is_err());
}

#[test]
fn tile_system_json_roundtrip() {
    let sys = gen_counter(2, Variant::Plain).unwrap();
    let s = serde_json::to_string(&sys).unwrap();
    let back: TileSystem = serde_json::from_str(&s).unwrap();
    assert_eq!(back, sys);
}
