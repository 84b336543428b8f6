use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::environment::{spectral_environment_with, Conditions};
use super::link::{sinr, LinkState};
use super::protocol::{avoidance_step, unison_aggregate, AvoidanceState};
use super::report::{Event, EventKind, ReceiverSeries, SimReport, WindowStats};
use crate::error::{Error, Result};
use crate::phy::packet_error_rate;
use crate::rfmath::FrequencyHz;
use crate::scenario::{DrawMode, NodeId, Scenario};

#[derive(Default, Clone)]
struct Acc {
    packets: u32,
    received: u32,
    ber_sum: f64,
    sinr_mw_sum: f64,
    heard: u32,
    bit_errors: u64,
    bits: u64,
}

impl Acc {
    fn add(&mut self, state: Option<&LinkState>, ok: bool, errors: u64, bits: u64) {
        self.packets += 1;
        self.received += ok as u32;
        self.bit_errors += errors;
        self.bits += bits;
        if let Some(s) = state {
            self.ber_sum += s.effective_ber();
            if s.sinr_db.is_finite() {
                self.sinr_mw_sum += 10f64.powf(s.sinr_db / 10.0);
                self.heard += 1;
            }
        }
    }

    fn finish(&mut self, t_start: f64, t_end: f64, channel_hz: Option<f64>, per_bit: bool) -> WindowStats {
        let w = WindowStats {
            t_start,
            t_end,
            channel_hz,
            snr_db: (self.heard > 0).then(|| 10.0 * (self.sinr_mw_sum / self.heard as f64).log10()),
            ber: if self.packets == 0 {
                0.5
            } else if per_bit {
                self.bit_errors as f64 / self.bits.max(1) as f64
            } else {
                self.ber_sum / self.packets as f64
            },
            prr: if self.packets == 0 {
                0.0
            } else {
                self.received as f64 / self.packets as f64
            },
            packets: self.packets,
            received: self.received,
        };
        *self = Acc::default();
        w
    }
}

/// Environment time for a packet slot. Slot times are multiples of the
/// inter-packet gap; the small bias keeps `k·gap` that lands on a schedule
/// boundary from rounding to the step just before it.
fn snap(t: f64, step: f64) -> f64 {
    ((t / step) + 1e-9).floor() * step
}

pub fn simulate(s: &Scenario) -> Result<SimReport> {
    simulate_with_seed(s, s.seed)
}

/// Packet-level simulation.
///
/// Every tag transmits one packet per inter-packet gap. Each receiver
/// decodes it with the success probability of its current link state.
/// Random draws per slot happen in a fixed order (interferer duty cycles,
/// then tag transmit decisions, then decoding outcomes in node order) from
/// a single ChaCha8 stream, so the report is a pure function of scenario
/// and seed.
pub fn simulate_with_seed(s: &Scenario, seed: u64) -> Result<SimReport> {
    let tags: Vec<NodeId> = s.tags().map(|(n, _)| n.id.clone()).collect();
    let receivers: Vec<NodeId> = s.receivers().map(|(n, _)| n.id.clone()).collect();
    if tags.is_empty() || receivers.is_empty() {
        return Err(Error::schema(
            "nodes",
            "simulation needs at least one tag and one receiver",
        ));
    }
    let gap = s.packet.inter_packet_gap_s;
    let slots = ((s.duration_s / gap) - 1e-9).ceil().max(0.0) as u64;
    let window = s.packet.window_packets.max(1) as u64;
    let window_s = window as f64 * gap;
    let bits = s.packet.payload_bits();
    let per_bit = s.packet.draw == DrawMode::PerBit;
    let model = s.propagation.ber_model;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cond = Conditions::default();

    let mut avoidance = match &s.avoidance {
        Some(cfg) => {
            let carrier = s
                .carrier(&cfg.carrier)
                .ok_or_else(|| Error::schema("avoidance.carrier", "not a carrier generator"))?;
            let rx = s
                .receiver(&cfg.receiver)
                .ok_or_else(|| Error::schema("avoidance.receiver", "not a receiver"))?;
            let offset = rx.tuned.hz() - carrier.center.hz();
            Some((
                cfg,
                AvoidanceState::new(cfg, s.packet.window_packets, carrier.center.hz())?,
                offset,
            ))
        }
        None => None,
    };

    let mut accs = vec![Acc::default(); receivers.len()];
    let mut agg = Acc::default();
    let mut series: Vec<ReceiverSeries> = receivers
        .iter()
        .map(|r| ReceiverSeries {
            receiver: r.clone(),
            windows: Vec::new(),
        })
        .collect();
    let mut aggregate = Vec::new();
    let mut events = Vec::new();
    let mut window_start = 0.0;

    for k in 0..slots {
        let t = k as f64 * gap;
        let t_env = snap(t, s.time_step_s);

        cond.muted.clear();
        for (n, i) in s.interferers() {
            let u: f64 = rng.random();
            if i.is_on(t_env) && u >= i.duty_cycle {
                cond.muted.insert(n.id.clone());
            }
        }

        let transmitting: Vec<bool> = if s.packet.collisions {
            tags.iter()
                .map(|_| rng.random::<f64>() < s.packet.transmit_probability)
                .collect()
        } else {
            vec![true; tags.len()]
        };
        let collided = transmitting.iter().filter(|&&x| x).count() > 1 && s.packet.collisions;

        let env = spectral_environment_with(s, t_env, &cond)?;
        for (ti, tag) in tags.iter().enumerate() {
            if !transmitting[ti] {
                continue;
            }
            let mut outcomes = Vec::with_capacity(receivers.len());
            for (ri, spectrum) in env.iter().enumerate() {
                let state = sinr(spectrum, s, tag, model)?;
                let p = state.effective_ber();
                let (ok, errors, nbits) = if per_bit {
                    let errors = (0..bits).filter(|_| rng.random::<f64>() < p).count() as u64;
                    (errors == 0 && !collided, errors, bits as u64)
                } else {
                    let success = 1.0 - packet_error_rate(p, bits)?;
                    (rng.random::<f64>() < success && !collided, 0, 0)
                };
                accs[ri].add(Some(&state), ok, errors, nbits);
                outcomes.push(ok);
            }
            let ok = unison_aggregate(&outcomes);
            agg.add(None, ok, 0, 0);
        }

        let last = k + 1 == slots;
        if (k + 1) % window == 0 || last {
            let t_end = if last { s.duration_s } else { (k + 1) as f64 * gap };
            for (ri, r) in receivers.iter().enumerate() {
                let (_, rx) = s.receivers().nth(ri).expect("receiver index");
                let tuned = cond.receiver_tuning.get(r).copied().unwrap_or(rx.tuned);
                series[ri]
                    .windows
                    .push(accs[ri].finish(window_start, t_end, Some(tuned.hz()), per_bit));
            }
            let mut w = agg.finish(window_start, t_end, None, per_bit);
            w.ber = series
                .iter()
                .map(|s| s.windows.last().map_or(0.5, |w| w.ber))
                .fold(f64::INFINITY, f64::min);
            aggregate.push(w);

            if let Some((cfg, state, offset)) = avoidance.as_mut() {
                let ri = receivers
                    .iter()
                    .position(|r| *r == cfg.receiver)
                    .expect("validated receiver");
                let prr = series[ri].windows.last().map_or(0.0, |w| w.prr);
                let before = state.current_index;
                let (next, cmd) = avoidance_step(state, prr);
                if let Some(cmd) = cmd {
                    events.push(Event {
                        time: t_end,
                        kind: EventKind::HopCommand {
                            carrier: cfg.carrier.clone(),
                            receiver: cfg.receiver.clone(),
                            from_hz: cmd.from_hz,
                            to_hz: cmd.to_hz,
                        },
                    });
                }
                if next.current_index != before {
                    let f = next.current_channel();
                    cond.carrier_centers.insert(cfg.carrier.clone(), FrequencyHz(f));
                    cond.receiver_tuning
                        .insert(cfg.receiver.clone(), FrequencyHz(f + *offset));
                    events.push(Event {
                        time: t_end,
                        kind: EventKind::Retune {
                            carrier: cfg.carrier.clone(),
                            receiver: cfg.receiver.clone(),
                            carrier_hz: f,
                            tuned_hz: f + *offset,
                        },
                    });
                }
                *state = next;
            }
            window_start = t_end;
        }
    }

    Ok(SimReport {
        scenario: s.name.clone(),
        seed,
        duration_s: s.duration_s,
        window_s,
        receivers: series,
        aggregate,
        events,
    })
}
