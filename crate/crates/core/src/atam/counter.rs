//! Temperature-2 binary counters that grow column by column.
//!
//! Column 0 is a hard-coded seed column holding 0. A column whose value is
//! even is followed by a *copy* column that starts at the top (strength-2
//! glue), copies bits downward and sets the least significant bit; the
//! downward signal remembers whether every bit seen so far is 1, so the
//! bottom tile of the all-ones column starts the *halt* column instead of
//! the next one. A column whose value is odd is followed by a *carry* column
//! that starts at the bottom and propagates the carry upward, and whose top
//! tile starts the next copy column. The terminal assembly is a
//! `k × (2^k + 1)` rectangle.
//!
//! In the `Plain` variant, horizontal labels only distinguish the bottom,
//! middle and top rows and the halt column reuses one label vertically, so
//! tiles can bind to themselves. In the `Indexed` variant every label
//! carries its row.

use crate::atam::{atam_to_tbn, simulate, Assembly, Glue, InterpretOptions, Policy, TileSystem, TileType};
use crate::error::{Error, Result};
use crate::model::{monomer_matrix, Configuration, Tbn};
use crate::solver::{find_split, stable_entropy, StableResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Indexed,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "indexed" => Ok(Variant::Indexed),
            _ => Err(Error::InvalidArgument(format!("unknown counter variant `{s}`"))),
        }
    }
}

struct Labels {
    k: usize,
    v: Variant,
}

impl Labels {
    fn class(&self, row: usize) -> &'static str {
        if row == 0 {
            "B"
        } else if row + 1 == self.k {
            "T"
        } else {
            "M"
        }
    }

    /// Bit glue between columns on `row`.
    fn h(&self, bit: u8, row: usize) -> Glue {
        match self.v {
            Variant::Plain => Glue::new(format!("h{}{bit}", self.class(row)), 1),
            Variant::Indexed => Glue::new(format!("h{bit}_{row}"), 1),
        }
    }

    /// Vertical glue between `row` and `row + 1`.
    fn vert(&self, base: &str, row: usize, strength: u32) -> Glue {
        match self.v {
            Variant::Plain => Glue::new(base, strength),
            Variant::Indexed => Glue::new(format!("{base}_{row}"), strength),
        }
    }

    fn halt_vert(&self, row: usize) -> Glue {
        match self.v {
            Variant::Plain => Glue::new("halt", 1),
            Variant::Indexed => Glue::new(format!("z_{row}"), 1),
        }
    }

    fn suffix(&self, row: usize) -> String {
        match self.v {
            Variant::Plain => self.class(row).to_string(),
            Variant::Indexed => format!("_{row}"),
        }
    }
}

fn tile(name: String, n: Option<Glue>, e: Option<Glue>, s: Option<Glue>, w: Option<Glue>) -> TileType {
    TileType { name, n, e, s, w }
}

/// Binary counter on `k ≥ 1` rows at temperature 2.
pub fn gen_counter(k: usize, variant: Variant) -> Result<TileSystem> {
    if k == 0 || k > 16 {
        return Err(Error::InvalidArgument("counter needs 1 <= k <= 16".into()));
    }
    let l = Labels { k, v: variant };
    let top = k - 1;
    let halt = || Glue::new("halt", 2);
    let cs = |b: u8| Glue::new(format!("cs{b}"), 2);
    let cb = || Glue::new("cb1", 2);
    let mut tiles = Vec::new();

    // seed column, value 0; its vertical glues are always row specific
    for row in 0..k {
        let name = if row == 0 { "seed".to_string() } else { format!("S_{row}") };
        let n = (row < top).then(|| Glue::new(format!("s_{row}"), 2));
        let s = (row > 0).then(|| Glue::new(format!("s_{}", row - 1), 2));
        let e = if row == top { cs(0) } else { l.h(0, row) };
        tiles.push(tile(name, n, Some(e), s, None));
    }

    if k == 1 {
        tiles.push(tile("CB1".into(), None, Some(halt()), None, Some(cs(0))));
        tiles.push(tile("HB".into(), None, None, None, Some(halt())));
        return Ok(TileSystem { tiles, seed: "seed".into(), temperature: 2 });
    }

    let rows_mid: Vec<usize> = match variant {
        Variant::Plain if k > 2 => vec![1],
        Variant::Plain => vec![],
        Variant::Indexed => (1..top).collect(),
    };

    // copy columns: top
    for b in 0..2u8 {
        tiles.push(tile(
            format!("CT{b}{}", l.suffix(top)),
            None,
            Some(l.h(b, top)),
            Some(l.vert(&format!("d{b}"), top - 1, 1)),
            Some(cs(b)),
        ));
    }
    // copy columns: middle
    for &row in &rows_mid {
        for a in 0..2u8 {
            for b in 0..2u8 {
                tiles.push(tile(
                    format!("CM{a}{b}{}", l.suffix(row)),
                    Some(l.vert(&format!("d{a}"), row, 1)),
                    Some(l.h(b, row)),
                    Some(l.vert(&format!("d{}", a & b), row - 1, 1)),
                    Some(l.h(b, row)),
                ));
            }
        }
    }
    // copy columns: bottom sets the low bit; all ones above means halt next
    for a in 0..2u8 {
        tiles.push(tile(
            format!("CB{a}{}", l.suffix(0)),
            Some(l.vert(&format!("d{a}"), 0, 1)),
            Some(if a == 1 { halt() } else { cb() }),
            None,
            Some(l.h(0, 0)),
        ));
    }
    // carry columns
    tiles.push(tile(format!("KB{}", l.suffix(0)), Some(l.vert("c1", 0, 1)), Some(l.h(0, 0)), None, Some(cb())));
    for &row in &rows_mid {
        for b in 0..2u8 {
            for c in 0..2u8 {
                tiles.push(tile(
                    format!("KM{b}{c}{}", l.suffix(row)),
                    Some(l.vert(&format!("c{}", b & c), row, 1)),
                    Some(l.h(b ^ c, row)),
                    Some(l.vert(&format!("c{c}"), row - 1, 1)),
                    Some(l.h(b, row)),
                ));
            }
        }
    }
    for b in 0..2u8 {
        for c in 0..2u8 {
            if b & c == 1 {
                continue;
            }
            tiles.push(tile(
                format!("KT{b}{c}{}", l.suffix(top)),
                None,
                Some(cs(b ^ c)),
                Some(l.vert(&format!("c{c}"), top - 1, 1)),
                Some(l.h(b, top)),
            ));
        }
    }
    // halt column: no outgoing glues to the east
    tiles.push(tile(format!("HB{}", l.suffix(0)), Some(l.halt_vert(0)), None, None, Some(halt())));
    for &row in &rows_mid {
        tiles.push(tile(
            format!("HM{}", l.suffix(row)),
            Some(l.halt_vert(row)),
            None,
            Some(l.halt_vert(row - 1)),
            Some(l.h(1, row)),
        ));
    }
    tiles.push(tile(format!("HT{}", l.suffix(top)), None, None, Some(l.halt_vert(top - 1)), Some(l.h(1, top))));
    tiles.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(TileSystem { tiles, seed: "seed".into(), temperature: 2 })
}

/// The bit a counter tile writes, `None` for halt tiles.
pub fn counter_bit(tile: &str) -> Option<u8> {
    let digits: Vec<u8> = tile.chars().skip(2).take_while(|c| c.is_ascii_digit()).map(|c| c as u8 - b'0').collect();
    match &tile[..tile.len().min(2)] {
        "se" | "S_" => Some(0),
        "CT" => digits.first().copied(),
        "CM" => digits.get(1).copied(),
        "CB" => Some(1),
        "KB" => Some(0),
        "KM" | "KT" => Some(digits[0] ^ digits[1]),
        _ => None,
    }
}

/// Integer written in each column (LSB on row 0); `None` for the halt column.
pub fn column_values(a: &Assembly, k: usize) -> Vec<Option<u64>> {
    let Some((_, (x1, _))) = a.bounds() else { return Vec::new() };
    (0..=x1)
        .map(|x| {
            let mut v = 0u64;
            for y in 0..k as i64 {
                let b = counter_bit(a.placements.get(&(x, y))?)?;
                v |= (b as u64) << y;
            }
            Some(v)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CounterReport {
    pub assembly: Assembly,
    pub tbn: Tbn,
    pub configuration: Configuration,
    pub stable: bool,
    pub stable_entropy: u32,
    /// A stable configuration of the assembly's monomers.
    pub witness: StableResult,
    /// Present when the assembly is not stable: a split into two parts of
    /// nonnegative excess, as `(tile, count)` lists.
    pub split: Option<(Vec<(String, u32)>, Vec<(String, u32)>)>,
    /// Tile types whose domains cancel, so a single tile can bind only to itself.
    pub self_saturating: Vec<String>,
}

/// Largest `k` checked without `allow_large`.
pub const COUNTER_GUARD: usize = 3;

/// Simulates the counter, reads the terminal assembly as a configuration
/// and decides whether it is stable.
pub fn check_counter_stability(k: usize, variant: Variant, allow_large: bool) -> Result<CounterReport> {
    if k > COUNTER_GUARD && !allow_large {
        return Err(Error::Budget(format!("k = {k} exceeds the guard k <= {COUNTER_GUARD}")));
    }
    let sys = gen_counter(k, variant)?;
    let assembly = simulate(&sys, Policy::DeterministicScan, 1_000_000)?;
    let (tbn, configuration) = atam_to_tbn(&sys, &assembly, InterpretOptions::default())?;
    let c = configuration.collection(&tbn)?;
    let witness = stable_entropy(&tbn, &c)?;
    let s = configuration.entropy() as u32;
    let stable = configuration.is_saturated() && witness.stable_entropy == s;
    let split = if witness.stable_entropy > 1 {
        find_split(&tbn, &c)?.map(|(a, b)| (a.pairs(&tbn), b.pairs(&tbn)))
    } else {
        None
    };
    let mm = monomer_matrix(&tbn);
    let self_saturating = tbn
        .monomers()
        .iter()
        .enumerate()
        .filter(|(j, _)| mm.column(*j).iter().all(|&x| x == 0))
        .map(|(_, m)| m.name.clone())
        .collect();
    Ok(CounterReport {
        stable_entropy: witness.stable_entropy,
        assembly,
        tbn,
        configuration,
        stable,
        witness,
        split,
        self_saturating,
    })
}
