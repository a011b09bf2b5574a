//! `tbn`: command-line front end.
//!
//! Exit codes: 0 success, 1 negative analysis result (unstable, output 0,
//! non-terminal assembly), 2 usage or input errors.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use tbn_core::atam::{
    atam_to_tbn, check_counter_stability, gen_counter, simulate, Assembly, InterpretOptions, Policy, TileSystem,
    Variant,
};
use tbn_core::constructions::*;
use tbn_core::solver::*;
use tbn_core::*;

#[derive(Parser)]
#[command(name = "tbn", version, about = "Thermodynamic binding networks: stability analysis and constructions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering of the resulting configuration to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<String>,
    /// Solver threads; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a generated network as `.tbn` text.
    Gen {
        #[arg(value_enum)]
        which: GenKind,
        #[command(flatten)]
        p: GenParams,
        /// Also write the intended configuration (`.cfg`) to this path.
        #[arg(long, value_name = "PATH")]
        cfg: Option<String>,
    },
    /// Stable entropy of a network, with a witness partition.
    Solve {
        /// A `.tbn` file, `-` for stdin, or a generator name.
        source: String,
        #[command(flatten)]
        p: GenParams,
    },
    /// Check whether a configuration is saturated and stable.
    Check {
        /// The `.tbn` file (or `-`, or a generator name).
        source: String,
        /// The `.cfg` file.
        cfg: String,
        #[command(flatten)]
        p: GenParams,
    },
    /// Distance to stability for an output predicate.
    Dist {
        source: String,
        /// `free:M`, `coloc:D:K` or `together:M1,M2,...`.
        #[arg(long)]
        predicate: String,
        #[command(flatten)]
        p: GenParams,
    },
    /// List configurations by brute force (capped by TBN_ENUM_CAP).
    Enumerate {
        source: String,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        p: GenParams,
    },
    /// Tile assembly: simulate, read as a TBN configuration, check stability.
    Atam {
        #[command(subcommand)]
        cmd: AtamCmd,
    },
    /// Evaluate a size bound.
    Bound {
        #[arg(value_enum, default_value_t = BoundKind::Polymer)]
        kind: BoundKind,
        /// Number of domain names.
        #[arg(long, default_value_t = 1)]
        d: u64,
        /// Number of monomer types.
        #[arg(long, default_value_t = 1)]
        m: u64,
        /// Largest domain multiplicity in a monomer type.
        #[arg(long, default_value_t = 1)]
        a: u64,
        /// Domain-name path length for the acyclic bound.
        #[arg(long, default_value_t = 3)]
        l: u64,
    },
    /// Free energy of a configuration, or of given H, size and S.
    Energy {
        /// A `.tbn` source; uses its stable configuration unless `--cfg` is given.
        source: Option<String>,
        #[arg(long, value_name = "PATH")]
        cfg: Option<String>,
        #[arg(long, value_name = "H")]
        h: Option<usize>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, value_name = "S")]
        s: Option<usize>,
        /// Bases per domain.
        #[arg(long, default_value_t = 1.0)]
        l: f64,
        /// Effective molarity.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[command(flatten)]
        p: GenParams,
    },
}

#[derive(Subcommand)]
enum AtamCmd {
    /// Grow the terminal assembly; prints an ASCII grid.
    Simulate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = PolicyArg::Scan)]
        policy: PolicyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: usize,
    },
    /// Print the terminal assembly as `.tbn` text.
    Interpret {
        #[command(flatten)]
        sys: SystemArgs,
        /// Also write the assembly's configuration to this path.
        #[arg(long, value_name = "PATH")]
        cfg: Option<String>,
        #[arg(long)]
        strength_as_copies: bool,
    },
    /// Decide whether the terminal assembly is a stable configuration.
    Check {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        strength_as_copies: bool,
        /// Allow counters beyond the default size guard.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Args)]
struct SystemArgs {
    /// Tile system JSON file or `-`; omit to use `--counter`.
    system: Option<String>,
    /// Use the built-in binary counter with this many rows.
    #[arg(long, value_name = "K")]
    counter: Option<usize>,
    #[arg(long, value_enum, default_value_t = VariantArg::Indexed)]
    variant: VariantArg,
}

#[derive(Args, Clone, Default)]
struct GenParams {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    depth: Option<u32>,
    /// Input presence bits, e.g. `1101` (leftmost is input 1).
    #[arg(long)]
    inputs: Option<String>,
    /// Translator: the input strand is present.
    #[arg(long)]
    input: bool,
    /// AND trees: join the outputs of the two subtrees below the root (OR).
    #[arg(long)]
    or_roots: bool,
    /// Intended output for the translator configuration (0 or 1).
    #[arg(long, default_value_t = 0)]
    output: u8,
    /// Counter variant.
    #[arg(long, value_enum, default_value_t = VariantArg::Indexed)]
    variant: VariantArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Fig1,
    And2,
    Translator,
    Andtree,
    Treepoly,
    Counter,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Saturated,
    Stable,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Polymer,
    Acyclic,
    #[value(name = "farkasK")]
    FarkasK,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum VariantArg {
    Plain,
    #[default]
    Indexed,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Indexed => Variant::Indexed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Scan,
    Random,
}

/// Error with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(2, e.to_string())
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(2, e.to_string())
    }
}

type Out = std::result::Result<(u8, String), Fail>;

fn read_input(path: &str) -> std::result::Result<String, Fail> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Fail(2, format!("{path}: {e}")))
    }
}

fn need<T>(v: Option<T>, flag: &str) -> std::result::Result<T, Fail> {
    v.ok_or_else(|| Fail(2, format!("missing --{flag}")))
}

fn bits(s: &str) -> std::result::Result<Vec<bool>, Fail> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Fail(2, format!("--inputs must be a string of 0s and 1s, got `{s}`"))),
        })
        .collect()
}

fn tree_spec(p: &GenParams) -> std::result::Result<TreeSpec, Fail> {
    let depth = p.depth.unwrap_or(1);
    let n = need(p.n, "n")?;
    let mut width = 1usize << depth.min(20);
    if p.or_roots {
        width *= 2;
    }
    let inputs = match &p.inputs {
        Some(s) => bits(s)?,
        None => vec![true; width],
    };
    let mut spec = TreeSpec::new(depth, n, inputs);
    spec.or_roots = p.or_roots;
    Ok(spec)
}

fn and2_inputs(p: &GenParams) -> std::result::Result<(bool, bool), Fail> {
    match p.inputs.as_deref().map(bits).transpose()?.as_deref() {
        None => Ok((true, true)),
        Some([a, b]) => Ok((*a, *b)),
        Some(_) => Err(Fail(2, "and2 takes exactly two input bits".into())),
    }
}

/// Generates a network; the configuration is the intended one, if any.
fn generate(kind: GenKind, p: &GenParams) -> std::result::Result<(Tbn, Collection, Option<Configuration>), Fail> {
    Ok(match kind {
        GenKind::Fig1 => {
            let (t, c) = gen_fig1();
            (t, c, None)
        }
        GenKind::And2 => {
            let (a, b) = and2_inputs(p)?;
            let (t, c) = gen_and_gate_basic(a, b);
            (t, c, None)
        }
        GenKind::Translator => {
            let (n, k) = (need(p.n, "n")?, need(p.k, "k")?);
            let (t, c) = gen_translator(n, k, p.input)?;
            let cfg = if p.input { None } else { Some(intended_translator_config(n, k, p.output)?) };
            (t, c, cfg)
        }
        GenKind::Andtree => {
            let spec = tree_spec(p)?;
            let (t, c) = gen_and_tree(&spec)?;
            (t, c, Some(untriggered_gate_config(&spec)?))
        }
        GenKind::Treepoly => {
            let (t, c) = gen_tree_polymer(need(p.n, "n")?, need(p.k, "k")?)?;
            (t, c, None)
        }
        GenKind::Counter => {
            let k = need(p.k, "k")? as usize;
            let sys = gen_counter(k, p.variant.into())?;
            let a = simulate(&sys, Policy::DeterministicScan, 1_000_000)?;
            let (t, cfg) = atam_to_tbn(&sys, &a, InterpretOptions::default())?;
            let c = cfg.collection(&t)?;
            (t, c, Some(cfg))
        }
    })
}

/// A `.tbn` path, `-`, or a generator name.
fn load(source: &str, p: &GenParams) -> std::result::Result<(Tbn, Collection), Fail> {
    if let Ok(kind) = GenKind::from_str(source, true) {
        if !std::path::Path::new(source).exists() {
            let (t, c, _) = generate(kind, p)?;
            return Ok((t, c));
        }
    }
    Ok(parse_tbn(&read_input(source)?)?)
}

fn write_dot(path: &Option<String>, a: &Configuration) -> std::result::Result<(), Fail> {
    if let Some(p) = path {
        fs::write(p, to_dot(a)).map_err(|e| Fail(2, format!("{p}: {e}")))?;
    }
    Ok(())
}

fn pairs_text(v: &[(String, u32)]) -> String {
    v.iter().map(|(n, k)| format!("{n} x{k}")).collect::<Vec<_>>().join(", ")
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn load_system(s: &SystemArgs) -> std::result::Result<TileSystem, Fail> {
    match (&s.system, s.counter) {
        (Some(path), None) => {
            let sys: TileSystem = serde_json::from_str(&read_input(path)?).map_err(|e| Fail(2, format!("{path}: {e}")))?;
            sys.validate()?;
            Ok(sys)
        }
        (None, Some(k)) => Ok(gen_counter(k, s.variant.into())?),
        _ => Err(Fail(2, "give either a tile system file or --counter K".into())),
    }
}

fn terminal(sys: &TileSystem) -> std::result::Result<Assembly, Fail> {
    let a = simulate(sys, Policy::DeterministicScan, 1_000_000)?;
    if !a.terminal {
        return Err(Fail(1, "assembly is not terminal after 1000000 steps".into()));
    }
    Ok(a)
}

fn run(cli: Cli) -> Out {
    let json = cli.json;
    match cli.cmd {
        Cmd::Gen { which, p, cfg } => {
            if matches!(which, GenKind::Counter) && json {
                let sys = gen_counter(need(p.k, "k")? as usize, p.variant.into())?;
                return Ok((0, serde_json::to_string_pretty(&sys).expect("json") + "\n"));
            }
            let (t, c, a) = generate(which, &p)?;
            if let Some(path) = cfg {
                let a = a.as_ref().ok_or_else(|| Fail(2, "this generator has no intended configuration".into()))?;
                fs::write(&path, write_cfg(a)).map_err(|e| Fail(2, format!("{path}: {e}")))?;
            }
            if let Some(a) = &a {
                write_dot(&cli.dot, a)?;
            }
            let out = if json { pretty(serde_json::to_value(tbn_to_json(&t, &c)).expect("json")) } else { write_tbn(&t, &c) };
            Ok((0, out))
        }
        Cmd::Solve { source, p } => {
            let (t, c) = load(&source, &p)?;
            let r = stable_entropy(&t, &c)?;
            write_dot(&cli.dot, &r.config)?;
            if json {
                return Ok((0, pretty(serde_json::to_value(r.to_json(&t)).expect("json"))));
            }
            let mut s = format!("stable_entropy: {}\n", r.stable_entropy);
            for (i, part) in r.witness.parts.iter().enumerate() {
                s.push_str(&format!("part {}: {}\n", i + 1, pairs_text(&part.pairs(&t))));
            }
            Ok((0, s))
        }
        Cmd::Check { source, cfg, p } => {
            let (t, c) = load(&source, &p)?;
            let a = parse_cfg(&read_input(&cfg)?, &t)?;
            if a.collection(&t)? != c {
                return Err(Fail(2, "configuration does not use the network's collection".into()));
            }
            write_dot(&cli.dot, &a)?;
            let saturated = a.is_saturated();
            let best = stable_entropy(&t, &c)?.stable_entropy;
            let stable = saturated && a.entropy() as u32 == best;
            let code = if stable { 0 } else { 1 };
            let out = if json {
                pretty(json!({
                    "saturated": saturated,
                    "enthalpy": a.enthalpy(),
                    "entropy": a.entropy(),
                    "stable_entropy": best,
                    "stable": stable,
                }))
            } else {
                format!(
                    "saturated: {saturated}\nenthalpy: {}\nentropy: {}\nstable_entropy: {best}\nstable: {stable}\n",
                    a.enthalpy(),
                    a.entropy()
                )
            };
            Ok((code, out))
        }
        Cmd::Dist { source, predicate, p } => {
            let (t, c) = load(&source, &p)?;
            let pred: OutputPredicate = predicate.parse()?;
            let best = stable_entropy(&t, &c)?;
            let r = constrained_max_entropy(&t, &c, &pred)?;
            write_dot(&cli.dot, &r.config)?;
            let d = best.stable_entropy - r.entropy;
            if json {
                return Ok((
                    0,
                    pretty(json!({
                        "predicate": pred.to_string(),
                        "stable_entropy": best.stable_entropy,
                        "constrained_entropy": r.entropy,
                        "distance": d,
                        "parts": r.witness.parts.iter().map(|p| p.pairs(&t)).collect::<Vec<_>>(),
                        "configuration": config_to_json(&r.config),
                    })),
                ));
            }
            Ok((0, format!("{d}\n")))
        }
        Cmd::Enumerate { source, filter, limit, p } => {
            let (t, c) = load(&source, &p)?;
            let f = match filter {
                FilterArg::All => Filter::All,
                FilterArg::Saturated => Filter::Saturated,
                FilterArg::Stable => Filter::Stable,
            };
            let all = enumerate_configurations(&t, &c, f, limit, enum_cap())?;
            if let Some(a) = all.first() {
                write_dot(&cli.dot, a)?;
            }
            if json {
                let v: Vec<_> = all.iter().map(config_to_json).collect();
                return Ok((0, pretty(json!({ "count": all.len(), "configurations": v }))));
            }
            let mut s = format!("count: {}\n", all.len());
            for a in &all {
                s.push_str(&format!("# H={} S={} saturated={}\n", a.enthalpy(), a.entropy(), a.is_saturated()));
                s.push_str(&write_cfg(a));
            }
            Ok((0, s))
        }
        Cmd::Atam { cmd } => run_atam(cmd, json, &cli.dot),
        Cmd::Bound { kind, d, m, a, l } => {
            let v = match kind {
                BoundKind::Polymer => polymer_size_bound(d, m, a)?,
                BoundKind::Acyclic => acyclic_bound(d, l)?,
                BoundKind::FarkasK => farkas_k(a, d)?,
            };
            if json {
                return Ok((0, pretty(json!({ "bound": v.to_string() }))));
            }
            Ok((0, format!("{v}\n")))
        }
        Cmd::Energy { source, cfg, h, size, s, l, c: molarity, p } => {
            let params = EnergyParams { l, c: molarity, ..EnergyParams::default() };
            let (h, size, s) = match (source, h, size, s) {
                (None, Some(h), Some(size), Some(s)) => (h, size, s),
                (Some(src), None, None, None) => {
                    let (t, coll) = load(&src, &p)?;
                    let a = match cfg {
                        Some(path) => parse_cfg(&read_input(&path)?, &t)?,
                        None => stable_entropy(&t, &coll)?.config,
                    };
                    write_dot(&cli.dot, &a)?;
                    (a.enthalpy(), a.len(), a.entropy())
                }
                _ => return Err(Fail(2, "give a network source or all of --h, --size and --s".into())),
            };
            let g = gibbs(h, size, s, &params)?;
            if json {
                return Ok((0, pretty(json!({ "enthalpy": h, "size": size, "entropy": s, "delta_g": g }))));
            }
            Ok((0, format!("{g:.2}\n")))
        }
    }
}

fn run_atam(cmd: AtamCmd, json: bool, dot: &Option<String>) -> Out {
    match cmd {
        AtamCmd::Simulate { sys, policy, seed, max_steps } => {
            let system = load_system(&sys)?;
            let pol = match policy {
                PolicyArg::Scan => Policy::DeterministicScan,
                PolicyArg::Random => Policy::SeededRandom(seed),
            };
            let a = simulate(&system, pol, max_steps)?;
            let code = if a.terminal { 0 } else { 1 };
            if json {
                return Ok((code, serde_json::to_string_pretty(&a).expect("json") + "\n"));
            }
            Ok((code, a.ascii()))
        }
        AtamCmd::Interpret { sys, cfg, strength_as_copies } => {
            let system = load_system(&sys)?;
            let a = terminal(&system)?;
            let (t, conf) = atam_to_tbn(&system, &a, InterpretOptions { strength_as_copies })?;
            write_dot(dot, &conf)?;
            if let Some(path) = cfg {
                fs::write(&path, write_cfg(&conf)).map_err(|e| Fail(2, format!("{path}: {e}")))?;
            }
            let c = conf.collection(&t)?;
            if json {
                return Ok((
                    0,
                    pretty(json!({
                        "tbn": tbn_to_json(&t, &c),
                        "configuration": config_to_json(&conf),
                    })),
                ));
            }
            Ok((0, write_tbn(&t, &c)))
        }
        AtamCmd::Check { sys, strength_as_copies, allow_large } => {
            // the built-in counter goes through its guarded report
            if let (None, Some(k), false) = (&sys.system, sys.counter, strength_as_copies) {
                let r = check_counter_stability(k, sys.variant.into(), allow_large)?;
                write_dot(dot, &r.witness.config)?;
                let split = r.split.as_ref().map(|(p, q)| json!([p, q]));
                let out = if json {
                    pretty(json!({
                        "stable": r.stable,
                        "entropy": r.configuration.entropy(),
                        "stable_entropy": r.stable_entropy,
                        "split": split,
                        "self_saturating": r.self_saturating,
                        "witness": r.witness.to_json(&r.tbn),
                    }))
                } else {
                    let mut s = format!("stable: {}\nstable_entropy: {}\n", r.stable, r.stable_entropy);
                    if let Some((p, q)) = &r.split {
                        s.push_str(&format!("split: [{}] | [{}]\n", pairs_text(p), pairs_text(q)));
                    }
                    if !r.self_saturating.is_empty() {
                        s.push_str(&format!("self_saturating: {}\n", r.self_saturating.join(", ")));
                    }
                    s
                };
                return Ok((if r.stable { 0 } else { 1 }, out));
            }
            let system = load_system(&sys)?;
            let a = terminal(&system)?;
            let (t, conf) = atam_to_tbn(&system, &a, InterpretOptions { strength_as_copies })?;
            let c = conf.collection(&t)?;
            let r = stable_entropy(&t, &c)?;
            write_dot(dot, &r.config)?;
            let stable = conf.is_saturated() && conf.entropy() as u32 == r.stable_entropy;
            let out = if json {
                pretty(json!({ "stable": stable, "entropy": conf.entropy(), "witness": r.to_json(&t) }))
            } else {
                format!("stable: {stable}\nstable_entropy: {}\n", r.stable_entropy)
            };
            Ok((if stable { 0 } else { 1 }, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((code, out)) => {
            let mut so = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = so.write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("tbn: {msg}");
            ExitCode::from(code)
        }
    }
}
