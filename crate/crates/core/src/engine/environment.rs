use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::Result;
use crate::phy::{carson_bandwidth, mixing_products, shifted_ambient, Origin, SpectralComponent};
use crate::rfmath::{bistatic_received_power, path_loss, Distance, FrequencyHz, Gain, PowerDbm};
use crate::scenario::{obstacle_loss, NodeId, Position, Scenario, Tag};

/// A spectral component together with the node that emitted it and, for
/// backscatter, the tag that shifted it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourcedComponent {
    pub component: SpectralComponent,
    pub source: NodeId,
    pub tag: Option<NodeId>,
}

/// Everything one receiver's antenna sees at one instant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReceiverSpectrum {
    pub receiver: NodeId,
    pub tuned: FrequencyHz,
    pub components: Vec<SourcedComponent>,
}

/// Run-time deviations from the scenario as loaded: retuned carriers and
/// receivers, and interferers whose duty-cycle draw came up silent.
#[derive(Debug, Clone, Default)]
pub struct Conditions {
    pub carrier_centers: HashMap<NodeId, FrequencyHz>,
    pub receiver_tuning: HashMap<NodeId, FrequencyHz>,
    pub muted: HashSet<NodeId>,
}

pub(crate) fn distance(a: &Position, b: &Position) -> Distance {
    Distance(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt())
}

struct Emitter<'a> {
    id: &'a NodeId,
    position: &'a Position,
    center: FrequencyHz,
    bandwidth_hz: f64,
    tx_power: PowerDbm,
    antenna_gain: Gain,
    origin: Origin,
}

fn emitters<'a>(s: &'a Scenario, t: f64, cond: &Conditions) -> Vec<Emitter<'a>> {
    let mut out = Vec::new();
    for (n, c) in s.carriers() {
        if !crate::scenario::in_windows(&c.on_intervals, t) {
            continue;
        }
        out.push(Emitter {
            id: &n.id,
            position: &n.position,
            center: cond.carrier_centers.get(&n.id).copied().unwrap_or(c.center),
            bandwidth_hz: 0.0,
            tx_power: c.tx_power,
            antenna_gain: c.antenna_gain,
            origin: Origin::Carrier,
        });
    }
    for (n, i) in s.interferers() {
        if !i.is_on(t) || cond.muted.contains(&n.id) {
            continue;
        }
        out.push(Emitter {
            id: &n.id,
            position: &n.position,
            center: i.center_at(t),
            bandwidth_hz: i.bandwidth_hz,
            tx_power: i.tx_power,
            antenna_gain: Gain(0.0),
            origin: Origin::Interference,
        });
    }
    out
}

/// Power of one mixing product (before the per-product split) arriving at a
/// receiver at `rx` with antenna gain `g_r`.
///
/// Follows the bistatic budget through the tag, subtracts obstacles on both
/// legs and never lets the result exceed what reaches the tag times `K`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn reflected_power(
    s: &Scenario,
    tx_pos: &Position,
    tx_power: PowerDbm,
    g_t: Gain,
    f: FrequencyHz,
    tag_pos: &Position,
    tag: &Tag,
    rx_pos: &Position,
    g_r: Gain,
) -> Result<PowerDbm> {
    let n = s.path_loss_exponent;
    let d1 = distance(tx_pos, tag_pos);
    let d2 = distance(tag_pos, rx_pos);
    let leg1 = obstacle_loss(tx_pos, tag_pos, &s.obstacles).db();
    let leg2 = obstacle_loss(tag_pos, rx_pos, &s.obstacles).db();
    let incident = tx_power.dbm() + g_t.db() - path_loss(d1, f, n)? - leg1;
    let p = bistatic_received_power(tx_power, g_t, g_r, tag.k_factor, f, d1, d2, n)?.dbm() - leg1 - leg2;
    Ok(PowerDbm(p.min(incident + tag.k_factor.db())))
}

/// Spectral components at every receiver at time `t`, with every
/// interferer that is scheduled on at `t` treated as transmitting.
pub fn spectral_environment(s: &Scenario, t: f64) -> Result<Vec<ReceiverSpectrum>> {
    spectral_environment_with(s, t, &Conditions::default())
}

pub fn spectral_environment_with(s: &Scenario, t: f64, cond: &Conditions) -> Result<Vec<ReceiverSpectrum>> {
    let n = s.path_loss_exponent;
    let split = Gain(s.propagation.per_product_loss_db);
    let sources = emitters(s, t, cond);
    let mut out = Vec::new();

    for (rn, r) in s.receivers() {
        let mut components = Vec::new();
        for e in &sources {
            let d = distance(e.position, &rn.position);
            let p = e.tx_power.dbm() + e.antenna_gain.db() + r.antenna_gain.db()
                - path_loss(d, e.center, n)?
                - obstacle_loss(e.position, &rn.position, &s.obstacles).db();
            components.push(SourcedComponent {
                component: SpectralComponent {
                    center: e.center,
                    bandwidth_hz: e.bandwidth_hz,
                    power: PowerDbm(p),
                    origin: e.origin,
                },
                source: e.id.clone(),
                tag: None,
            });
        }

        for (tn, tag) in s.tags() {
            for e in &sources {
                let p = reflected_power(
                    s,
                    e.position,
                    e.tx_power,
                    e.antenna_gain,
                    e.center,
                    &tn.position,
                    tag,
                    &rn.position,
                    r.antenna_gain,
                )?;
                let (upper, lower) = match e.origin {
                    Origin::Carrier => {
                        let base = SpectralComponent {
                            center: e.center,
                            bandwidth_hz: carson_bandwidth(tag.fsk_deviation_hz, tag.bitrate_bps),
                            power: p,
                            origin: Origin::Carrier,
                        };
                        mixing_products(&base, tag.delta_f_hz, split)?
                    }
                    _ => {
                        let base = SpectralComponent {
                            center: e.center,
                            bandwidth_hz: e.bandwidth_hz,
                            power: p - split,
                            origin: e.origin,
                        };
                        shifted_ambient(&base, tag.delta_f_hz)?
                    }
                };
                for c in [upper, lower] {
                    components.push(SourcedComponent {
                        component: c,
                        source: e.id.clone(),
                        tag: Some(tn.id.clone()),
                    });
                }
            }
        }

        out.push(ReceiverSpectrum {
            receiver: rn.id.clone(),
            tuned: cond.receiver_tuning.get(&rn.id).copied().unwrap_or(r.tuned),
            components,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::load_scenario;

    fn scenario(extra_nodes: &str) -> Scenario {
        load_scenario(&format!(
            r#"{{
                "schema_version": 1, "name": "t",
                "nodes": [
                    {{ "role": "carrier_generator", "id": "cg", "position": [0, 0, 1], "center_hz": 2440e6 }},
                    {{ "role": "receiver", "id": "rx", "position": [10, 0, 1] }}
                    {extra_nodes}
                ]
            }}"#
        ))
        .unwrap()
    }

    #[test]
    fn carrier_only() {
        let env = spectral_environment(&scenario(""), 0.0).unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env[0].components.len(), 1);
        assert_eq!(env[0].components[0].component.origin, Origin::Carrier);
    }

    #[test]
    fn carrier_and_tag_give_three_components() {
        let s = scenario(r#", { "role": "tag", "id": "tag", "position": [1, 0, 1], "delta_f_hz": 2e6 }"#);
        let env = spectral_environment(&s, 0.0).unwrap();
        let origins: Vec<_> = env[0].components.iter().map(|c| c.component.origin).collect();
        assert_eq!(
            origins,
            [
                Origin::Carrier,
                Origin::BackscatterUpper,
                Origin::BackscatterLowerMirror
            ]
        );
        let up = &env[0].components[1].component;
        assert_eq!(up.center, FrequencyHz(2442e6));
        assert_eq!(env[0].components[2].component.center, FrequencyHz(2438e6));
    }

    #[test]
    fn silent_interferer_never_appears() {
        let s = scenario(
            r#", { "role": "interferer", "id": "w", "position": [5, 5, 1], "center_hz": 2442e6, "duty_cycle": 0 }"#,
        );
        for t in [0.0, 10.0, 59.0] {
            let env = spectral_environment(&s, t).unwrap();
            assert!(env[0].components.iter().all(|c| c.source != "w"));
        }
    }

    #[test]
    fn interferer_follows_schedule() {
        let s = scenario(
            r#", { "role": "interferer", "id": "w", "position": [5, 5, 1], "center_hz": 2412e6,
                   "on_intervals": [[10, 40]], "hop_schedule": [[20, 2442e6]] }"#,
        );
        let find = |t: f64| {
            spectral_environment(&s, t).unwrap()[0]
                .components
                .iter()
                .find(|c| c.source == "w")
                .map(|c| c.component.center)
        };
        assert_eq!(find(5.0), None);
        assert_eq!(find(10.0), Some(FrequencyHz(2412e6)));
        assert_eq!(find(25.0), Some(FrequencyHz(2442e6)));
        assert_eq!(find(40.0), None);
    }
}
