use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::scenario::{NodeId, TimeWindow};

/// Statistics of one receiver (or the Unison aggregate) over one window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowStats {
    pub t_start: f64,
    pub t_end: f64,
    pub channel_hz: Option<f64>,
    /// Mean SINR over the window's packets; `None` when nothing was heard.
    pub snr_db: Option<f64>,
    pub ber: f64,
    pub prr: f64,
    pub packets: u32,
    pub received: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReceiverSeries {
    pub receiver: NodeId,
    pub windows: Vec<WindowStats>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    HopCommand {
        carrier: NodeId,
        receiver: NodeId,
        from_hz: f64,
        to_hz: f64,
    },
    Retune {
        carrier: NodeId,
        receiver: NodeId,
        carrier_hz: f64,
        tuned_hz: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event {
    pub time: f64,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl Event {
    fn receiver(&self) -> &str {
        match &self.kind {
            EventKind::HopCommand { receiver, .. } | EventKind::Retune { receiver, .. } => receiver,
        }
    }

    fn label(&self) -> String {
        match &self.kind {
            EventKind::HopCommand { from_hz, to_hz, .. } => format!("hop_command {from_hz}->{to_hz}"),
            EventKind::Retune { carrier_hz, .. } => format!("retune {carrier_hz}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub scenario: String,
    pub seed: u64,
    pub duration_s: f64,
    pub window_s: f64,
    pub receivers: Vec<ReceiverSeries>,
    /// Packet counted as received when any receiver decoded it.
    pub aggregate: Vec<WindowStats>,
    pub events: Vec<Event>,
}

fn in_interval(w: &WindowStats, interval: Option<TimeWindow>) -> bool {
    interval.is_none_or(|(a, b)| a <= w.t_start && w.t_start < b)
}

fn pooled_prr<'a>(windows: impl Iterator<Item = &'a WindowStats>) -> Option<f64> {
    let (p, r) = windows.fold((0u64, 0u64), |(p, r), w| (p + w.packets as u64, r + w.received as u64));
    (p > 0).then(|| r as f64 / p as f64)
}

impl SimReport {
    pub fn series(&self, receiver: &str) -> Option<&ReceiverSeries> {
        self.receivers.iter().find(|s| s.receiver == receiver)
    }

    /// Packet reception ratio pooled over the windows starting in `interval`.
    pub fn receiver_prr(&self, receiver: &str, interval: Option<TimeWindow>) -> Option<f64> {
        pooled_prr(
            self.series(receiver)?
                .windows
                .iter()
                .filter(|w| in_interval(w, interval)),
        )
    }

    pub fn aggregate_prr(&self, interval: Option<TimeWindow>) -> Option<f64> {
        pooled_prr(self.aggregate.iter().filter(|w| in_interval(w, interval)))
    }

    pub fn hop_commands(&self, interval: Option<TimeWindow>) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::HopCommand { .. }))
            .filter(|e| interval.is_none_or(|(a, b)| a <= e.time && e.time < b))
            .count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per receiver per window, followed by the aggregate row.
    /// Events are attached to the row of the window in which they fired.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,receiver_id,channel,snr_db,ber,prr,event\n");
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let n = self.aggregate.len();
        for i in 0..n {
            for s in &self.receivers {
                let Some(w) = s.windows.get(i) else { continue };
                let events: Vec<String> = self
                    .events
                    .iter()
                    .filter(|e| e.receiver() == s.receiver && w.t_start < e.time && e.time <= w.t_end)
                    .map(Event::label)
                    .collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    w.t_start,
                    s.receiver,
                    opt(w.channel_hz),
                    opt(w.snr_db),
                    w.ber,
                    w.prr,
                    events.join(";")
                );
            }
            let w = &self.aggregate[i];
            let _ = writeln!(out, "{},unison,,,{},{},", w.t_start, w.ber, w.prr);
        }
        out
    }
}
