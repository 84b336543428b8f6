use serde::Serialize;

use super::sweep::{apply_parameter, CARRIER_TAG_DISTANCE, TAG_RECEIVER_DISTANCE};
use crate::engine::{backscatter_power, expected_link};
use crate::error::{Error, Result};
use crate::scenario::{Link, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// Decoded product at or above the receiver's sensitivity.
    Sensitivity,
    /// Expected BER at or below the threshold.
    BerThreshold(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// Tag stays where it is; the receiver moves away from it.
    FixedTagCarrier,
    /// Carrier, tag and receiver on a line with `d1 = d2 = d`.
    Equidistant,
    /// Receiver at the carrier generator (monostatic reader); the tag moves.
    Colocated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeOutcome {
    Range(f64),
    /// The criterion fails already at the minimum distance.
    NoRange,
    /// Still met at the search ceiling.
    Unbounded,
}

impl RangeOutcome {
    pub fn meters(self) -> Option<f64> {
        match self {
            RangeOutcome::Range(d) => Some(d),
            _ => None,
        }
    }
}

const MIN_DISTANCE: f64 = 1.0;
const MAX_DISTANCE: f64 = 1e7;
const RESOLUTION: f64 = 1.0;

fn arrange(s: &Scenario, link: &Link, geometry: Geometry, d: f64) -> Result<Scenario> {
    match geometry {
        Geometry::FixedTagCarrier => apply_parameter(s, link, TAG_RECEIVER_DISTANCE, d),
        Geometry::Equidistant => {
            let t = apply_parameter(s, link, CARRIER_TAG_DISTANCE, d)?;
            // Receiver beyond the tag, on the far side from the carrier.
            let cg = t.node(&link.carrier).expect("resolved link").position;
            let tag = t.node(&link.tag).expect("resolved link").position;
            let mut out = t.clone();
            out.node_mut(&link.receiver).expect("resolved link").position =
                [2.0 * tag[0] - cg[0], 2.0 * tag[1] - cg[1], 2.0 * tag[2] - cg[2]];
            Ok(out)
        }
        Geometry::Colocated => {
            let mut out = apply_parameter(s, link, CARRIER_TAG_DISTANCE, d)?;
            let cg = out.node(&link.carrier).expect("resolved link").position;
            out.node_mut(&link.receiver).expect("resolved link").position = cg;
            Ok(out)
        }
    }
}

fn meets(s: &Scenario, link: &Link, criterion: Criterion) -> Result<bool> {
    match criterion {
        Criterion::Sensitivity => {
            let rx = s.receiver(&link.receiver).expect("resolved link");
            Ok(backscatter_power(s, link)? >= rx.profile.sensitivity)
        }
        Criterion::BerThreshold(thr) => Ok(expected_link(s, link, 0.0)?.ber <= thr),
    }
}

/// Largest distance, to 1 m, at which `criterion` holds.
///
/// The distance is `d2` for [`Geometry::FixedTagCarrier`] and `d1 = d2` for
/// the other two. The search doubles from 1 m until the criterion fails,
/// then bisects, so it assumes the criterion is monotone in distance (true
/// for free space and exponents of 2 or more without obstacles).
///
/// The monostatic geometry supports only [`Criterion::Sensitivity`]: a
/// co-located carrier has no finite path loss to its own receiver.
pub fn max_range_search(s: &Scenario, link: &Link, criterion: Criterion, geometry: Geometry) -> Result<RangeOutcome> {
    if geometry == Geometry::Colocated && criterion != Criterion::Sensitivity {
        return Err(Error::Sweep(
            "monostatic search supports the sensitivity criterion only".into(),
        ));
    }
    let test = |d: f64| -> Result<bool> { meets(&arrange(s, link, geometry, d)?, link, criterion) };
    if !test(MIN_DISTANCE)? {
        return Ok(RangeOutcome::NoRange);
    }
    let (mut lo, mut hi) = (MIN_DISTANCE, 2.0 * MIN_DISTANCE);
    while test(hi)? {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_DISTANCE {
            return Ok(RangeOutcome::Unbounded);
        }
    }
    while hi - lo > RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if test(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RangeOutcome::Range(lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::{run_sweep, SweepSpec};
    use crate::scenario::{load_scenario, presets};

    fn free_space() -> (Scenario, Link) {
        let s = load_scenario(
            r#"{ "schema_version": 1, "name": "fs", "nodes": [
                { "role": "carrier_generator", "id": "cg", "position": [0, 0, 1], "center_hz": 2440e6 },
                { "role": "tag", "id": "tag", "position": [1, 0, 1] },
                { "role": "receiver", "id": "rx", "position": [10, 0, 1] } ] }"#,
        )
        .unwrap();
        let link = s.resolve_link(&Default::default()).unwrap();
        (s, link)
    }

    #[test]
    fn sensitivity_boundary_is_bracketed() {
        let (s, link) = free_space();
        let d = max_range_search(&s, &link, Criterion::Sensitivity, Geometry::FixedTagCarrier)
            .unwrap()
            .meters()
            .unwrap();
        let sens = s.receiver("rx").unwrap().profile.sensitivity;
        let at = |d: f64| backscatter_power(&arrange(&s, &link, Geometry::FixedTagCarrier, d).unwrap(), &link).unwrap();
        assert!(at(d) >= sens);
        assert!(at(d + RESOLUTION) < sens);
    }

    #[test]
    fn impossible_criterion_has_no_range() {
        let (s, link) = free_space();
        let s = s
            .with_override(&crate::scenario::Override::new("nodes.cg.tx_power_dbm", -150.0))
            .unwrap();
        let out = max_range_search(&s, &link, Criterion::BerThreshold(1e-2), Geometry::FixedTagCarrier).unwrap();
        assert_eq!(out, RangeOutcome::NoRange);
    }

    #[test]
    fn monostatic_rejects_ber_criterion() {
        let (s, link) = free_space();
        assert!(max_range_search(&s, &link, Criterion::BerThreshold(1e-2), Geometry::Colocated).is_err());
    }

    #[test]
    fn agrees_with_sweep_crossing() {
        let s = presets::get("fig7-outdoor-24").unwrap();
        let (_, spec) = SweepSpec::from_scenario(&s).unwrap().remove(0);
        let swept = run_sweep(&spec).unwrap().max_range.unwrap();
        // The sweep moves the receiver from the carrier; the search from the
        // tag. With d1 = 1 m on the same line the two differ by exactly 1 m.
        let searched = max_range_search(
            &spec.scenario,
            &spec.link,
            Criterion::BerThreshold(1e-2),
            Geometry::FixedTagCarrier,
        )
        .unwrap()
        .meters()
        .unwrap()
            + 1.0;
        assert!((swept - searched).abs() <= 1.0 + RESOLUTION, "{swept} vs {searched}");
    }
}
