//! Receiver-side protocols: Unison aggregation and carrier hopping.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::AvoidanceConfig;

/// A packet counts as received when any receiver decoded it. An empty set of
/// outcomes counts as lost.
pub fn unison_aggregate(outcomes: &[bool]) -> bool {
    outcomes.iter().any(|&ok| ok)
}

/// Instruction from the receiver to the carrier generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopCommand {
    pub from_hz: f64,
    pub to_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidanceState {
    pub window_size: u32,
    pub prr_threshold: f64,
    pub channel_list: Vec<f64>,
    pub current_index: usize,
    pub pending_hop: bool,
    /// Windows between a command and the retune.
    pub hop_latency: u32,
    pub windows_until_retune: u32,
    pub target_index: usize,
}

impl AvoidanceState {
    pub fn new(cfg: &AvoidanceConfig, window_size: u32, start_hz: f64) -> Result<Self> {
        if cfg.channels_hz.is_empty() {
            return Err(Error::schema("avoidance.channels_hz", "must not be empty"));
        }
        if !(cfg.prr_threshold > 0.0 && cfg.prr_threshold < 1.0) {
            return Err(Error::schema("avoidance.prr_threshold", "must lie in (0, 1)"));
        }
        let current_index = cfg
            .channels_hz
            .iter()
            .position(|&f| f == start_hz)
            .ok_or_else(|| Error::schema("avoidance.channels_hz", "must contain the starting channel"))?;
        Ok(AvoidanceState {
            window_size,
            prr_threshold: cfg.prr_threshold,
            channel_list: cfg.channels_hz.clone(),
            current_index,
            pending_hop: false,
            hop_latency: cfg.hop_latency_windows,
            windows_until_retune: 0,
            target_index: current_index,
        })
    }

    pub fn current_channel(&self) -> f64 {
        self.channel_list[self.current_index]
    }
}

/// Advances the protocol by one window.
///
/// A window below threshold with no hop in flight produces a command to the
/// next channel in round-robin order. The carrier and receiver move after
/// `hop_latency` further windows; windows observed in between do not trigger
/// new commands. With a single channel there is nowhere to go and no command
/// is issued.
pub fn avoidance_step(state: &AvoidanceState, window_prr: f64) -> (AvoidanceState, Option<HopCommand>) {
    let mut next = state.clone();
    if next.pending_hop {
        next.windows_until_retune = next.windows_until_retune.saturating_sub(1);
        if next.windows_until_retune == 0 {
            next.current_index = next.target_index;
            next.pending_hop = false;
        }
        return (next, None);
    }
    if window_prr < next.prr_threshold && next.channel_list.len() > 1 {
        let to = (next.current_index + 1) % next.channel_list.len();
        let cmd = HopCommand {
            from_hz: next.channel_list[next.current_index],
            to_hz: next.channel_list[to],
        };
        if next.hop_latency == 0 {
            next.current_index = to;
            next.target_index = to;
        } else {
            next.pending_hop = true;
            next.windows_until_retune = next.hop_latency;
            next.target_index = to;
        }
        return (next, Some(cmd));
    }
    (next, None)
}
