use serde::Serialize;

use super::sweep::{apply_parameter, CARRIER_TAG_DISTANCE};
use crate::engine::backscatter_power;
use crate::error::{Error, Result};
use crate::scenario::{ExperimentSpec, Link, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfilePoint {
    /// Tag distance from the carrier generator.
    pub distance_m: f64,
    pub power_dbm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalProfile {
    pub bistatic: Vec<ProfilePoint>,
    pub monostatic: Vec<ProfilePoint>,
}

impl SignalProfile {
    pub fn minimum_index(&self) -> Option<usize> {
        self.bistatic
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.power_dbm.total_cmp(&b.1.power_dbm))
            .map(|(i, _)| i)
    }
}

/// `n` evenly spaced points on `[a, b]`, endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Backscatter power as the tag slides along the segment from the carrier
/// generator to the receiver, `margin_m` short of either end. The optional
/// monostatic curve puts the receiver at the carrier and moves the tag to
/// each distance in `monostatic`.
pub fn signal_profile(
    s: &Scenario,
    link: &Link,
    samples: usize,
    margin_m: f64,
    monostatic: &[f64],
) -> Result<SignalProfile> {
    let cg = s.node(&link.carrier).map(|n| n.position);
    let rx = s.node(&link.receiver).map(|n| n.position);
    let (Some(cg), Some(rx)) = (cg, rx) else {
        return Err(Error::Sweep("link endpoints missing".into()));
    };
    let length = ((rx[0] - cg[0]).powi(2) + (rx[1] - cg[1]).powi(2) + (rx[2] - cg[2]).powi(2)).sqrt();
    if !(margin_m > 0.0 && 2.0 * margin_m < length) {
        return Err(Error::Sweep(format!(
            "margin {margin_m} m does not fit a {length} m carrier-receiver segment"
        )));
    }

    // Tag on the segment itself, bearing from carrier toward receiver.
    let mut on_line = s.clone();
    on_line.node_mut(&link.tag).expect("resolved link").position = rx;
    let bistatic = linspace(margin_m, length - margin_m, samples)
        .into_iter()
        .map(|d| {
            let t = apply_parameter(&on_line, link, CARRIER_TAG_DISTANCE, d)?;
            Ok(ProfilePoint {
                distance_m: d,
                power_dbm: backscatter_power(&t, link)?.dbm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut mono = on_line.clone();
    mono.node_mut(&link.receiver).expect("resolved link").position = cg;
    let monostatic = monostatic
        .iter()
        .map(|&d| {
            let t = apply_parameter(&mono, link, CARRIER_TAG_DISTANCE, d)?;
            Ok(ProfilePoint {
                distance_m: d,
                power_dbm: backscatter_power(&t, link)?.dbm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SignalProfile { bistatic, monostatic })
}

/// Runs the signal profile described by the scenario's experiment block.
pub fn profile_from_scenario(s: &Scenario) -> Result<SignalProfile> {
    let Some(ExperimentSpec::SignalProfile {
        link,
        samples,
        margin_m,
        monostatic,
    }) = &s.experiment
    else {
        return Err(Error::Sweep(format!(
            "scenario `{}` does not describe a signal profile",
            s.name
        )));
    };
    let link = s.resolve_link(link)?;
    let mono = monostatic.as_ref().map(|g| g.values()).unwrap_or_default();
    signal_profile(s, &link, *samples as usize, *margin_m, &mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::presets;

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.5, 19.5, 101);
        assert_eq!(v.len(), 101);
        assert_eq!(v[0], 0.5);
        assert_eq!(v[100], 19.5);
        assert!((v[50] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn u_shape_with_maxima_at_the_ends() {
        let p = profile_from_scenario(&presets::get("fig3-mono-bi").unwrap()).unwrap();
        let b = &p.bistatic;
        assert_eq!(p.minimum_index(), Some(50));
        assert!(b[0].power_dbm > b[1].power_dbm);
        assert!(b[100].power_dbm > b[99].power_dbm);
        // Mirror-symmetric about the midpoint.
        for i in 0..50 {
            assert!((b[i].power_dbm - b[100 - i].power_dbm).abs() < 1e-9);
        }
    }

    #[test]
    fn monostatic_decays_monotonically() {
        let p = profile_from_scenario(&presets::get("fig3-mono-bi").unwrap()).unwrap();
        assert!(p.monostatic.len() > 2);
        for w in p.monostatic.windows(2) {
            assert!(w[1].power_dbm < w[0].power_dbm);
        }
    }
}
