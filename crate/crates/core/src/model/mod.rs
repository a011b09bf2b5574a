//! Domains, monomers, collections and configurations.

mod canon;
mod config;
mod energy;
mod format;
mod matrix;
mod types;

pub use canon::{canonical_form, component_key};
pub use config::{ConfigMetrics, Configuration, Monomer, Side, Site};
pub(crate) use config::Dsu;

pub use energy::{gibbs, gibbs_free_energy, EnergyParams};
pub use format::{
    config_from_json, config_to_json, parse_cfg, parse_tbn, tbn_from_json, tbn_to_json, to_dot, write_cfg,
    write_tbn, ConfigJson, InstanceJson, MonomerJson, TbnJson,
};
pub use matrix::{excess_vector, monomer_matrix, relabel_nonnegative, MonomerMatrix, Relabeling};
pub use types::{max_bond_count, Collection, Domain, MonomerType, Tbn};
