//! Exact analysis of thermodynamic binding networks (TBNs).
//!
//! A TBN is a set of monomer types, each a multiset of binding domains. A
//! configuration of a collection of monomers is *saturated* when no
//! complementary pair of domains is left unbound, and *stable* when, among
//! saturated configurations, it has the most polymers. This crate provides
//! the model ([`model`]), an exact stability solver ([`solver`]), generators
//! for the standard constructions ([`constructions`]) and a tile-assembly
//! simulator whose assemblies can be read as TBN configurations ([`atam`]).

pub mod error;
pub mod model;
pub mod solver;
pub mod constructions;
pub mod atam;

pub use error::{Error, Result};
pub use model::*;
