//! On-disk document shape. Optional fields here are resolved into the
//! concrete types of [`super::model`] by the loader.

use serde::{Deserialize, Serialize};

use super::model::*;
use crate::phy::Band;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ScenarioDoc {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub band: Option<Band>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_loss_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time_step_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub packet: PacketSpec,
    #[serde(default)]
    pub propagation: Propagation,
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub obstacles: Vec<ObstacleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub avoidance: Option<AvoidanceConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub(crate) enum NodeDoc {
    CarrierGenerator(CarrierGeneratorDoc),
    Tag(TagDoc),
    Receiver(ReceiverDoc),
    Interferer(InterfererDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct CarrierGeneratorDoc {
    pub id: String,
    pub position: Position,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tx_power_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna_gain_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub on_intervals: Vec<TimeWindow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct TagDoc {
    pub id: String,
    pub position: Position,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_f_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_factor_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fsk_deviation_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bitrate_bps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_draw_uw: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ReceiverDoc {
    pub id: String,
    pub position: Position,
    /// Preset name or inline profile object; parsed by the loader.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuned_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna_gain_db: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct InterfererDoc {
    pub id: String,
    pub position: Position,
    pub center_hz: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tx_power_dbm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duty_cycle: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hop_schedule: Vec<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub on_intervals: Vec<TimeWindow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub(crate) enum ObstacleDoc {
    Wall(WallDoc),
    Floor(FloorDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct WallDoc {
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub z_range: (f64, f64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attenuation_db: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FloorDoc {
    pub min: [f64; 2],
    pub max: [f64; 2],
    pub height: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attenuation_db: Option<f64>,
}

impl From<Node> for NodeDoc {
    fn from(n: Node) -> Self {
        let Node { id, position, kind } = n;
        match kind {
            NodeKind::CarrierGenerator(c) => NodeDoc::CarrierGenerator(CarrierGeneratorDoc {
                id,
                position,
                tx_power_dbm: Some(c.tx_power.dbm()),
                center_hz: Some(c.center.hz()),
                antenna_gain_db: Some(c.antenna_gain.db()),
                on_intervals: c.on_intervals,
            }),
            NodeKind::Tag(t) => NodeDoc::Tag(TagDoc {
                id,
                position,
                delta_f_hz: Some(t.delta_f_hz),
                k_factor_db: Some(t.k_factor.db()),
                fsk_deviation_hz: Some(t.fsk_deviation_hz),
                bitrate_bps: Some(t.bitrate_bps),
                power_draw_uw: Some(t.power_draw_uw),
            }),
            NodeKind::Receiver(r) => NodeDoc::Receiver(ReceiverDoc {
                id,
                position,
                profile: Some(serde_json::to_value(&r.profile).expect("profile serializes")),
                tuned_hz: Some(r.tuned.hz()),
                antenna_gain_db: Some(r.antenna_gain.db()),
            }),
            NodeKind::Interferer(i) => NodeDoc::Interferer(InterfererDoc {
                id,
                position,
                center_hz: i.center.hz(),
                bandwidth_hz: Some(i.bandwidth_hz),
                tx_power_dbm: Some(i.tx_power.dbm()),
                duty_cycle: Some(i.duty_cycle),
                hop_schedule: i.hop_schedule.iter().map(|&(t, f)| (t, f.hz())).collect(),
                on_intervals: i.on_intervals,
            }),
        }
    }
}

impl From<Obstacle> for ObstacleDoc {
    fn from(o: Obstacle) -> Self {
        let attenuation_db = Some(o.attenuation.db());
        match o.geometry {
            ObstacleGeometry::Wall { from, to, z_range } => ObstacleDoc::Wall(WallDoc {
                from,
                to,
                z_range,
                attenuation_db,
            }),
            ObstacleGeometry::Floor { min, max, height } => ObstacleDoc::Floor(FloorDoc {
                min,
                max,
                height,
                attenuation_db,
            }),
        }
    }
}

impl From<Scenario> for ScenarioDoc {
    fn from(s: Scenario) -> Self {
        ScenarioDoc {
            schema_version: SCHEMA_VERSION,
            name: s.name,
            description: Some(s.description),
            band: Some(s.band),
            path_loss_exponent: Some(s.path_loss_exponent),
            duration_s: Some(s.duration_s),
            time_step_s: Some(s.time_step_s),
            seed: Some(s.seed),
            packet: s.packet,
            propagation: s.propagation,
            nodes: s.nodes.into_iter().map(Into::into).collect(),
            obstacles: s.obstacles.into_iter().map(Into::into).collect(),
            avoidance: s.avoidance,
            experiment: s.experiment,
        }
    }
}
