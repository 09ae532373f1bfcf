//! Optimal single-copy measurements for the hidden subgroup problem.
//!
//! Given a small finite group `G`, this crate builds the hidden subgroup
//! states `ρ_H = |G|⁻¹ Σ_{h∈H} D_R(h)` for every subgroup `H`, and constructs
//! three measurements for telling them apart:
//!
//! - the pretty good measurement ([`measure::pgm`]),
//! - Ip's recursive measurement ([`measure::ip_measurement`]),
//! - the optimal measurement for priors that are constant on conjugacy
//!   classes of subgroups ([`measure::optimal_measurement`]), assembled from
//!   characters, central projectors and subgroup projectors.
//!
//! [`verify`] checks POVM validity and the Holevo–Yuen–Kennedy–Lax
//! conditions numerically, so every optimality claim is certified rather than
//! assumed.
//!
//! ```
//! use hsp_core::{group::Builder, lattice::SubgroupLattice, chartable::CharacterTable};
//! use hsp_core::measure::{hsp_ensemble, optimal_measurement, Prior};
//! use hsp_core::verify::success_probability;
//!
//! let g = Builder::default().cyclic(2).unwrap();
//! let lat = SubgroupLattice::enumerate(&g).unwrap();
//! let ct = CharacterTable::compute(&g).unwrap();
//! let prior = Prior::uniform(&lat);
//! let (_, povm) = optimal_measurement(&g, &lat, &ct, &prior).unwrap();
//! let states = hsp_ensemble(&g, &lat, &prior).unwrap();
//! let p = success_probability(&povm, &states).unwrap();
//! assert!((p - 0.75).abs() < 1e-12);
//! ```

pub mod chartable;
pub mod cli;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod measure;
pub mod verify;

pub use error::{Error, Result};
