//! Scenario documents: the node roster, geometry, obstacles and run
//! parameters a simulation is built from.
//!
//! Documents are JSON with a required `schema_version` of 1. Loading is
//! strict (unknown fields are errors) and resolves every default, so a
//! loaded [`Scenario`] never depends on implicit values.

mod doc;
mod geometry;
mod load;
mod model;
mod overrides;
pub mod presets;

pub use doc::SCHEMA_VERSION;
pub use geometry::{crossings, obstacle_loss};
pub use load::{load_scenario, load_scenario_file, load_scenario_value, load_with_overrides, parse_document};
pub use model::*;
pub use overrides::{apply_overrides, lookup, Override};

use crate::error::Result;

impl Scenario {
    /// Returns a copy with one field changed, addressed by dotted path
    /// against the resolved form. The result is re-validated.
    pub fn with_override(&self, ov: &Override) -> Result<Scenario> {
        let resolved = self.to_json_value();
        let mut doc = resolved.clone();
        apply_overrides(&mut doc, &resolved, std::slice::from_ref(ov))?;
        load_scenario_value(doc)
    }
}
