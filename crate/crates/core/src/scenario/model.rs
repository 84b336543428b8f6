//! Resolved, validated scenario types.
//!
//! Everything in here is concrete: defaults have already been filled in by
//! [`super::load_scenario`], and serializing a [`Scenario`] produces a
//! document that loads back to an equal value.

use serde::{Deserialize, Serialize};

use super::doc::{NodeDoc, ObstacleDoc, ScenarioDoc};
use crate::phy::{Band, BerModel, RadioProfile};
use crate::rfmath::{FrequencyHz, Gain, PowerDbm};

pub type NodeId = String;

/// `[x, y, z]` in meters; `z` is height.
pub type Position = [f64; 3];

/// Half-open `[start, end)` interval in simulated seconds.
pub type TimeWindow = (f64, f64);

pub fn in_windows(windows: &[TimeWindow], t: f64) -> bool {
    windows.is_empty() || windows.iter().any(|&(a, b)| a <= t && t < b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CarrierGenerator {
    pub tx_power: PowerDbm,
    pub center: FrequencyHz,
    pub antenna_gain: Gain,
    /// Empty means always on.
    pub on_intervals: Vec<TimeWindow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tag {
    pub delta_f_hz: f64,
    pub k_factor: Gain,
    pub fsk_deviation_hz: f64,
    pub bitrate_bps: f64,
    /// Bookkeeping only.
    pub power_draw_uw: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Receiver {
    pub profile: RadioProfile,
    pub tuned: FrequencyHz,
    pub antenna_gain: Gain,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Interferer {
    pub center: FrequencyHz,
    pub bandwidth_hz: f64,
    pub tx_power: PowerDbm,
    pub duty_cycle: f64,
    /// `(time, center)` retunes, sorted by time.
    pub hop_schedule: Vec<(f64, FrequencyHz)>,
    pub on_intervals: Vec<TimeWindow>,
}

impl Interferer {
    pub fn center_at(&self, t: f64) -> FrequencyHz {
        self.hop_schedule
            .iter()
            .take_while(|(at, _)| *at <= t)
            .last()
            .map_or(self.center, |&(_, f)| f)
    }

    pub fn is_on(&self, t: f64) -> bool {
        self.duty_cycle > 0.0 && in_windows(&self.on_intervals, t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    CarrierGenerator(CarrierGenerator),
    Tag(Tag),
    Receiver(Receiver),
    Interferer(Interferer),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "NodeDoc")]
pub struct Node {
    pub id: NodeId,
    pub position: Position,
    pub kind: NodeKind,
}

impl Node {
    pub fn role(&self) -> &'static str {
        match self.kind {
            NodeKind::CarrierGenerator(_) => "carrier_generator",
            NodeKind::Tag(_) => "tag",
            NodeKind::Receiver(_) => "receiver",
            NodeKind::Interferer(_) => "interferer",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstacleKind {
    Wall,
    Floor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObstacleGeometry {
    /// Vertical plane over the footprint segment `from → to`, spanning
    /// `z_range` in height.
    Wall {
        from: [f64; 2],
        to: [f64; 2],
        z_range: (f64, f64),
    },
    /// Horizontal plane at `height` over the rectangle `min..max`.
    Floor { min: [f64; 2], max: [f64; 2], height: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "ObstacleDoc")]
pub struct Obstacle {
    pub attenuation: Gain,
    pub geometry: ObstacleGeometry,
}

impl Obstacle {
    pub fn kind(&self) -> ObstacleKind {
        match self.geometry {
            ObstacleGeometry::Wall { .. } => ObstacleKind::Wall,
            ObstacleGeometry::Floor { .. } => ObstacleKind::Floor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrawMode {
    /// One Bernoulli draw per packet with probability `1 − PER`.
    #[default]
    PerPacket,
    /// One draw per bit; yields measured bit error counts.
    PerBit,
}

fn default_payload_bytes() -> u32 {
    64
}
fn default_gap() -> f64 {
    0.25
}
fn default_window() -> u32 {
    20
}
fn default_tx_probability() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    #[serde(default = "default_payload_bytes")]
    pub payload_bytes: u32,
    #[serde(default = "default_gap")]
    pub inter_packet_gap_s: f64,
    /// Packets per PRR window (also the avoidance protocol's window).
    #[serde(default = "default_window")]
    pub window_packets: u32,
    #[serde(default)]
    pub draw: DrawMode,
    /// Slotted-ALOHA collisions between tags.
    #[serde(default)]
    pub collisions: bool,
    /// Per-slot transmit probability of each tag when `collisions` is set.
    #[serde(default = "default_tx_probability")]
    pub transmit_probability: f64,
}

impl Default for PacketSpec {
    fn default() -> Self {
        PacketSpec {
            payload_bytes: default_payload_bytes(),
            inter_packet_gap_s: default_gap(),
            window_packets: default_window(),
            draw: DrawMode::default(),
            collisions: false,
            transmit_probability: default_tx_probability(),
        }
    }
}

impl PacketSpec {
    pub fn payload_bits(&self) -> u32 {
        self.payload_bytes * 8
    }
}

fn default_wall_db() -> f64 {
    3.0
}
fn default_floor_db() -> f64 {
    15.0
}
fn default_product_loss_db() -> f64 {
    3.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Propagation {
    /// Used for walls that do not carry their own attenuation.
    #[serde(default = "default_wall_db")]
    pub wall_attenuation_db: f64,
    #[serde(default = "default_floor_db")]
    pub floor_attenuation_db: f64,
    /// Power lost into each of the two mixing products at the tag.
    #[serde(default = "default_product_loss_db")]
    pub per_product_loss_db: f64,
    #[serde(default)]
    pub ber_model: BerModel,
}

impl Default for Propagation {
    fn default() -> Self {
        Propagation {
            wall_attenuation_db: default_wall_db(),
            floor_attenuation_db: default_floor_db(),
            per_product_loss_db: default_product_loss_db(),
            ber_model: BerModel::default(),
        }
    }
}

fn default_threshold() -> f64 {
    0.5
}
fn default_latency() -> u32 {
    1
}

/// Receiver-driven carrier hopping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AvoidanceConfig {
    pub carrier: NodeId,
    pub receiver: NodeId,
    /// Carrier frequencies visited round-robin. Must contain the carrier's
    /// starting frequency.
    pub channels_hz: Vec<f64>,
    #[serde(default = "default_threshold")]
    pub prr_threshold: f64,
    #[serde(default = "default_latency")]
    pub hop_latency_windows: u32,
}

/// Which tag, receiver and carrier an experiment looks at. Unset entries
/// resolve to the first node of that role when the scenario is loaded.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSelector {
    #[serde(default)]
    pub tag: Option<NodeId>,
    #[serde(default)]
    pub receiver: Option<NodeId>,
    #[serde(default)]
    pub carrier: Option<NodeId>,
}

/// Resolved link endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub tag: NodeId,
    pub receiver: NodeId,
    pub carrier: NodeId,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    /// Grid points; a range includes `stop` when it lands on the step.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Grid::Values(v) => v.clone(),
            Grid::Range { start, stop, step } => {
                if !(*step > 0.0) || stop < start {
                    return Vec::new();
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    /// Expected BER from the link budget; no sampling noise.
    #[default]
    Analytic,
    /// Measured BER/PRR from seeded simulation runs.
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    #[default]
    None,
    /// Max range strictly decreases along the series.
    Decreasing,
    Increasing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    ReceiverPrr,
    AggregatePrr,
    HopCommands,
}

/// A pass/fail bound on a simulation output, evaluated by the experiment runner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub metric: Metric,
    #[serde(default)]
    pub receiver: Option<NodeId>,
    /// Only windows that start inside this interval are considered.
    #[serde(default)]
    pub interval: Option<TimeWindow>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
}

fn default_replications() -> u32 {
    3
}
fn default_one() -> u32 {
    1
}
fn default_ber_threshold() -> f64 {
    1e-2
}
fn default_samples() -> u32 {
    101
}
fn default_margin() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExperimentSpec {
    /// BER against a swept parameter, optionally repeated for each value of
    /// a second parameter.
    RangeSweep {
        #[serde(default)]
        link: LinkSelector,
        parameter: String,
        grid: Grid,
        #[serde(default)]
        series: Option<Series>,
        #[serde(default = "default_replications")]
        replications: u32,
        #[serde(default = "default_ber_threshold")]
        ber_threshold: f64,
        #[serde(default)]
        mode: SweepMode,
        #[serde(default)]
        expect: Trend,
    },
    /// Seeded packet-level simulation.
    Simulate {
        #[serde(default = "default_one")]
        replications: u32,
        #[serde(default)]
        checks: Vec<Check>,
    },
    /// Received backscatter power as the tag moves between carrier generator
    /// and receiver.
    SignalProfile {
        #[serde(default)]
        link: LinkSelector,
        #[serde(default = "default_samples")]
        samples: u32,
        #[serde(default = "default_margin")]
        margin_m: f64,
        /// Tag distances for the co-located (monostatic) comparison curve.
        #[serde(default)]
        monostatic: Option<Grid>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "ScenarioDoc")]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub band: Band,
    pub path_loss_exponent: f64,
    pub duration_s: f64,
    pub time_step_s: f64,
    pub seed: u64,
    pub packet: PacketSpec,
    pub propagation: Propagation,
    pub nodes: Vec<Node>,
    pub obstacles: Vec<Obstacle>,
    pub avoidance: Option<AvoidanceConfig>,
    pub experiment: Option<ExperimentSpec>,
}

impl Scenario {
    pub fn node(&self, id: &str) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn node_mut(&mut self, id: &str) -> Option<&mut Node> {
        self.nodes.iter_mut().find(|n| n.id == id)
    }

    pub fn carriers(&self) -> impl Iterator<Item = (&Node, &CarrierGenerator)> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::CarrierGenerator(c) => Some((n, c)),
            _ => None,
        })
    }

    pub fn tags(&self) -> impl Iterator<Item = (&Node, &Tag)> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::Tag(t) => Some((n, t)),
            _ => None,
        })
    }

    pub fn receivers(&self) -> impl Iterator<Item = (&Node, &Receiver)> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::Receiver(r) => Some((n, r)),
            _ => None,
        })
    }

    pub fn interferers(&self) -> impl Iterator<Item = (&Node, &Interferer)> {
        self.nodes.iter().filter_map(|n| match &n.kind {
            NodeKind::Interferer(i) => Some((n, i)),
            _ => None,
        })
    }

    pub fn receiver(&self, id: &str) -> Option<&Receiver> {
        match &self.node(id)?.kind {
            NodeKind::Receiver(r) => Some(r),
            _ => None,
        }
    }

    pub fn tag(&self, id: &str) -> Option<&Tag> {
        match &self.node(id)?.kind {
            NodeKind::Tag(t) => Some(t),
            _ => None,
        }
    }

    pub fn carrier(&self, id: &str) -> Option<&CarrierGenerator> {
        match &self.node(id)?.kind {
            NodeKind::CarrierGenerator(c) => Some(c),
            _ => None,
        }
    }

    /// Fills unset selector entries with the first node of each role.
    pub fn resolve_link(&self, sel: &LinkSelector) -> crate::Result<Link> {
        let pick = |want: &Option<NodeId>, role: &'static str, field: &str| -> crate::Result<NodeId> {
            match want {
                Some(id) => match self.node(id) {
                    Some(n) if n.role() == role => Ok(id.clone()),
                    Some(n) => Err(crate::Error::schema(
                        format!("experiment.link.{field}"),
                        format!("`{id}` is a {}, expected a {role}", n.role()),
                    )),
                    None => Err(crate::Error::schema(
                        format!("experiment.link.{field}"),
                        format!("no node with id `{id}`"),
                    )),
                },
                None => self
                    .nodes
                    .iter()
                    .find(|n| n.role() == role)
                    .map(|n| n.id.clone())
                    .ok_or_else(|| {
                        crate::Error::schema(format!("experiment.link.{field}"), format!("scenario has no {role}"))
                    }),
            }
        };
        Ok(Link {
            tag: pick(&sel.tag, "tag", "tag")?,
            receiver: pick(&sel.receiver, "receiver", "receiver")?,
            carrier: pick(&sel.carrier, "carrier_generator", "carrier")?,
        })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("scenario serializes")
    }
}
