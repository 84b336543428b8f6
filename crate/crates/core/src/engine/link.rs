use serde::Serialize;

use super::environment::{reflected_power, spectral_environment_with, Conditions, ReceiverSpectrum};
use crate::error::{Error, Result};
use crate::phy::{packet_error_rate, received_power, snr_per_bit, BerModel, Origin};
use crate::rfmath::{noise_floor, Gain, PowerDbm};
use crate::scenario::{Link, NodeId, Scenario};

/// Link quality of one tag as seen by one receiver.
///
/// `sinr_db` is `signal / (noise + residual_carrier + interference)` in
/// linear units, and `ber` is the error model evaluated at the SNR per bit
/// derived from it. Below the receiver's sensitivity the radio does not
/// synchronise at all, which [`LinkState::effective_ber`] accounts for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkState {
    pub tag: NodeId,
    pub receiver: NodeId,
    pub carrier: Option<NodeId>,
    pub signal: PowerDbm,
    pub residual_carrier: PowerDbm,
    pub interference: PowerDbm,
    pub noise: PowerDbm,
    pub sinr_db: f64,
    pub ber: f64,
    pub above_sensitivity: bool,
}

impl LinkState {
    pub fn effective_ber(&self) -> f64 {
        if self.above_sensitivity {
            self.ber
        } else {
            0.5
        }
    }

    pub fn packet_success(&self, payload_bits: u32) -> Result<f64> {
        Ok(1.0 - packet_error_rate(self.effective_ber(), payload_bits)?)
    }
}

/// SINR of `tag`'s upper mixing product at the receiver described by
/// `spectrum`.
///
/// The decoded component is the strongest upper product of `tag` whose
/// center lies inside the receiver passband. Every other component is
/// passed through the receiver's selectivity: carriers are booked as
/// residual carrier, everything else as interference.
pub fn sinr(spectrum: &ReceiverSpectrum, scenario: &Scenario, tag: &str, model: BerModel) -> Result<LinkState> {
    let receiver = scenario
        .receiver(&spectrum.receiver)
        .ok_or_else(|| Error::schema("nodes", format!("`{}` is not a receiver", spectrum.receiver)))?;
    let profile = &receiver.profile;
    let tuned = spectrum.tuned.hz();
    let half = profile.rx_bandwidth_hz / 2.0;

    let wanted = spectrum
        .components
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.component.origin == Origin::BackscatterUpper
                && c.tag.as_deref() == Some(tag)
                && (c.component.center.hz() - tuned).abs() <= half
        })
        .max_by(|a, b| a.1.component.power.dbm().total_cmp(&b.1.component.power.dbm()))
        .map(|(i, _)| i);

    let mut carrier_mw = 0.0;
    let mut interference_mw = 0.0;
    for (i, c) in spectrum.components.iter().enumerate() {
        if Some(i) == wanted {
            continue;
        }
        let p = received_power(&c.component, tuned, profile.rx_bandwidth_hz, &profile.rejection).to_mw();
        if c.component.origin == Origin::Carrier {
            carrier_mw += p;
        } else {
            interference_mw += p;
        }
    }
    let noise = noise_floor(profile.rx_bandwidth_hz, profile.noise_figure)?;

    let (signal, carrier, sinr_db, ber) = match wanted {
        None => (PowerDbm::SILENT, None, f64::NEG_INFINITY, 0.5),
        Some(i) => {
            let c = &spectrum.components[i];
            let sinr = c.component.power.to_mw() / (noise.to_mw() + carrier_mw + interference_mw);
            let ber = model.ber(snr_per_bit(sinr, profile))?;
            (c.component.power, Some(c.source.clone()), 10.0 * sinr.log10(), ber)
        }
    };
    Ok(LinkState {
        tag: tag.into(),
        receiver: spectrum.receiver.clone(),
        carrier,
        signal,
        residual_carrier: PowerDbm::from_mw(carrier_mw),
        interference: PowerDbm::from_mw(interference_mw),
        noise,
        sinr_db,
        above_sensitivity: signal >= profile.sensitivity,
        ber,
    })
}

fn spectrum_for(s: &Scenario, receiver: &str, t: f64, cond: &Conditions) -> Result<ReceiverSpectrum> {
    spectral_environment_with(s, t, cond)?
        .into_iter()
        .find(|r| r.receiver == receiver)
        .ok_or_else(|| Error::schema("nodes", format!("`{receiver}` is not a receiver")))
}

/// Link state at time `t` with every scheduled interferer transmitting.
pub fn link_state(s: &Scenario, link: &Link, t: f64) -> Result<LinkState> {
    let spectrum = spectrum_for(s, &link.receiver, t, &Conditions::default())?;
    sinr(&spectrum, s, &link.tag, s.propagation.ber_model)
}

/// Expected BER and packet success probability at time `t`, averaged over
/// the on/off states of duty-cycled interferers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expectation {
    pub ber: f64,
    pub prr: f64,
}

const MAX_DUTY_CYCLED: usize = 12;

pub fn expected_link(s: &Scenario, link: &Link, t: f64) -> Result<Expectation> {
    let cycled: Vec<(&NodeId, f64)> = s
        .interferers()
        .filter(|(_, i)| i.is_on(t) && i.duty_cycle < 1.0)
        .map(|(n, i)| (&n.id, i.duty_cycle))
        .collect();
    if cycled.len() > MAX_DUTY_CYCLED {
        return Err(Error::Sweep(format!(
            "analytic evaluation supports at most {MAX_DUTY_CYCLED} duty-cycled interferers"
        )));
    }
    let bits = s.packet.payload_bits();
    let mut ber = 0.0;
    let mut prr = 0.0;
    for mask in 0u32..(1 << cycled.len()) {
        let mut cond = Conditions::default();
        let mut weight = 1.0;
        for (k, (id, duty)) in cycled.iter().enumerate() {
            if mask & (1 << k) != 0 {
                weight *= duty;
            } else {
                weight *= 1.0 - duty;
                cond.muted.insert((*id).clone());
            }
        }
        if weight == 0.0 {
            continue;
        }
        let spectrum = spectrum_for(s, &link.receiver, t, &cond)?;
        let state = sinr(&spectrum, s, &link.tag, s.propagation.ber_model)?;
        ber += weight * state.effective_ber();
        prr += weight * state.packet_success(bits)?;
    }
    Ok(Expectation { ber, prr })
}

/// Power of the decoded backscatter product for `link` from the scenario
/// geometry alone; carrier and receiver may coincide.
pub fn backscatter_power(s: &Scenario, link: &Link) -> Result<PowerDbm> {
    let missing = |id: &str| Error::schema("nodes", format!("no node `{id}` with the expected role"));
    let cg = s.node(&link.carrier).ok_or_else(|| missing(&link.carrier))?;
    let carrier = s.carrier(&link.carrier).ok_or_else(|| missing(&link.carrier))?;
    let tn = s.node(&link.tag).ok_or_else(|| missing(&link.tag))?;
    let tag = s.tag(&link.tag).ok_or_else(|| missing(&link.tag))?;
    let rn = s.node(&link.receiver).ok_or_else(|| missing(&link.receiver))?;
    let rx = s.receiver(&link.receiver).ok_or_else(|| missing(&link.receiver))?;
    let p = reflected_power(
        s,
        &cg.position,
        carrier.tx_power,
        carrier.antenna_gain,
        carrier.center,
        &tn.position,
        tag,
        &rn.position,
        rx.antenna_gain,
    )?;
    Ok(p - Gain(s.propagation.per_product_loss_db))
}
