use crate::error::{Error, Result};
use crate::model::config::ConfigMetrics;

/// Constants of the linear free-energy model, energies in kcal/mol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    /// Bases per domain.
    pub l: f64,
    /// Effective molarity.
    pub c: f64,
    pub dg_bp: f64,
    pub dg_assoc: f64,
    pub rt: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        EnergyParams { l: 1.0, c: 1.0, dg_bp: -1.5, dg_assoc: 1.96, rt: 0.593 }
    }
}

/// `ΔG = (ΔG°bp·l)·H + (ΔG°assoc + RT·ln(1/C))·(size − S)`.
pub fn gibbs(h: usize, size: usize, s: usize, p: &EnergyParams) -> Result<f64> {
    if !(p.c > 0.0) {
        return Err(Error::InvalidArgument("effective molarity C must be positive".into()));
    }
    if !(p.l >= 1.0) {
        return Err(Error::InvalidArgument("bases per domain l must be at least 1".into()));
    }
    let assoc = p.dg_assoc + p.rt * (1.0 / p.c).ln();
    Ok(p.dg_bp * p.l * h as f64 + assoc * (size as f64 - s as f64))
}

pub fn gibbs_free_energy(m: &ConfigMetrics, size: usize, p: &EnergyParams) -> Result<f64> {
    gibbs(m.enthalpy, size, m.entropy, p)
}
