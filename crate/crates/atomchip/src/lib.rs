//! Design-budget calculator and small-scale gate simulator for a
//! waveguide-chip neutral-atom quantum processor.
//!
//! The crate models the full stack of an integrated atom-photon junction
//! device: shot-noise-limited readout through the guided mode, the two-beam
//! waveguide dipole trap and its loading from a magnetic-trap cloud, Rydberg
//! blockade scaling laws, collective-qubit gate budgets with a time-domain
//! pulse simulator, and the decoherence bookkeeping that ties them together.
//! [`report::assemble_report`] runs the whole pipeline against a
//! [`config::ScenarioConfig`] and checks every computed figure against its
//! reference design target.
//!
//! Conventions: SI units throughout; every frequency stored internally is
//! angular (rad/s) while configuration and reports speak ordinary frequency
//! (Hz), converted exactly once at the boundary ([`units`]).

pub mod budget;
pub mod config;
pub mod constants;
pub mod detection;
pub mod error;
pub mod gates;
pub mod report;
pub mod rydberg;
pub mod species;
pub mod sweep;
pub mod traps;
pub mod units;

pub use config::{Scenario, ScenarioConfig};
pub use error::{Error, Result};
pub use report::{assemble_report, DesignReport};
pub use species::{load_species, resolve_species, AtomSpecies};
