//! Scenario presets shipped with the crate.

use super::{load_scenario, Scenario};
use crate::error::{Error, Result};

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        const PRESETS: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../presets/", $name, ".json")))),*
        ];
    };
}

presets!(
    "fig3-mono-bi",
    "fig5-throughwall",
    "fig6-roomtoroom",
    "fig7-outdoor-24",
    "fig7-outdoor-868",
    "fig8-fast",
    "fig10-river-868",
    "fig11-floors-868",
    "fig13-unison",
    "fig14-avoidance",
    "parking-mobile-reader",
    "concrete-embedded",
);

/// Alternative names accepted by [`get`].
pub const ALIASES: &[(&str, &str)] = &[
    ("fig4-outdoor-24", "fig7-outdoor-24"),
    ("fig12-unison", "fig13-unison"),
    ("fig13-avoidance", "fig14-avoidance"),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(n, _)| *n)
}

fn canonical(name: &str) -> &str {
    let name = name.strip_suffix(".json").unwrap_or(name);
    ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, target)| target)
}

/// Raw JSON text of a preset. Accepts aliases and a trailing `.json`.
pub fn source(name: &str) -> Option<&'static str> {
    let name = canonical(name);
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn get(name: &str) -> Result<Scenario> {
    let text = source(name).ok_or_else(|| Error::UnknownPreset(name.into()))?;
    load_scenario(text)
}
