//! Frequency-domain simulator for bistatic backscatter links.
//!
//! A scenario places carrier generators, tags, receivers and interferers in
//! space. The [`engine`] turns it into per-receiver spectra, SINR and error
//! rates, and simulates packet delivery over time. [`experiments`] drives
//! range sweeps and seeded simulation runs on top of that.
//!
//! ```
//! use backscatter_sim::engine::expected_link;
//! use backscatter_sim::scenario::presets;
//!
//! let s = presets::get("fig3-mono-bi").unwrap();
//! let link = s.resolve_link(&Default::default()).unwrap();
//! let e = expected_link(&s, &link, 0.0).unwrap();
//! assert!(e.prr > 0.99);
//! ```
//!
//! The guide in `book/` covers the scenario format and the CLI.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod phy;
pub mod rfmath;
pub mod scenario;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
pub mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/scenarios.md")]
pub mod book_scenarios {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/link-model.md")]
pub mod book_link_model {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/simulation.md")]
pub mod book_simulation {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod book_experiments {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod book_cli {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/presets.md")]
pub mod book_presets {}
