use std::collections::HashMap;
use std::path::Path;

use serde_json::Value;

use super::doc::{
    CarrierGeneratorDoc, FloorDoc, InterfererDoc, NodeDoc, ObstacleDoc, ReceiverDoc, ScenarioDoc, TagDoc, WallDoc,
    SCHEMA_VERSION,
};
use super::model::*;
use super::overrides::{apply_overrides, Override};
use crate::error::{Error, Result};
use crate::phy::{Band, RadioProfile, LOREA_24};
use crate::rfmath::{FrequencyHz, Gain, PowerDbm};

const SUB_GHZ: f64 = 1e9;

/// Parses JSON text into a raw document value without validating it.
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        Error::schema(
            "(document)",
            format!("not valid JSON at line {} column {}: {e}", e.line(), e.column()),
        )
    })
}

/// Loads and validates a scenario from JSON text.
pub fn load_scenario(text: &str) -> Result<Scenario> {
    load_scenario_value(parse_document(text)?)
}

pub fn load_scenario_file(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_scenario(&text)
}

/// Loads a scenario after applying `path=value` overrides to the raw
/// document. Every override path must name a field of the resolved scenario.
pub fn load_with_overrides(text: &str, overrides: &[Override]) -> Result<Scenario> {
    let mut doc = parse_document(text)?;
    if overrides.is_empty() {
        return load_scenario_value(doc);
    }
    let resolved = load_scenario_value(doc.clone())?.to_json_value();
    apply_overrides(&mut doc, &resolved, overrides)?;
    load_scenario_value(doc)
}

pub fn load_scenario_value(value: Value) -> Result<Scenario> {
    match value.get("schema_version") {
        None => {
            return Err(Error::schema(
                "schema_version",
                format!("missing; expected {SCHEMA_VERSION}"),
            ))
        }
        Some(v) if v.as_u64() != Some(SCHEMA_VERSION as u64) => {
            return Err(Error::schema(
                "schema_version",
                format!("unsupported version {v}; expected {SCHEMA_VERSION}"),
            ))
        }
        Some(_) => {}
    }
    let doc: ScenarioDoc = match serde_path_to_error::deserialize(&value) {
        Ok(doc) => doc,
        Err(e) => {
            let path = e.path().to_string();
            if let Some(err) = refine(&value, &path) {
                return Err(err);
            }
            let path = if path == "." { "(document)".into() } else { path };
            return Err(Error::schema(path, e.into_inner().to_string()));
        }
    };
    resolve(doc)
}

fn element_error<T: serde::de::DeserializeOwned>(at: &str, v: Value) -> Option<Error> {
    let e = serde_path_to_error::deserialize::<_, T>(v).err()?;
    let inner = e.path().to_string();
    let path = if inner == "." {
        at.to_string()
    } else {
        format!("{at}.{inner}")
    };
    Some(Error::schema(path, e.into_inner().to_string()))
}

/// Tagged node and obstacle entries are buffered before deserialization,
/// which hides the failing field from the path tracker. Re-parse the
/// offending element on its own to recover the full path.
fn refine(value: &Value, path: &str) -> Option<Error> {
    let (list, tag) = [("nodes", "role"), ("obstacles", "kind")]
        .into_iter()
        .find(|(list, _)| path.starts_with(&format!("{list}[")))?;
    let i: usize = path
        .strip_prefix(list)?
        .strip_prefix('[')?
        .strip_suffix(']')?
        .parse()
        .ok()?;
    let mut element = value.get(list)?.get(i)?.as_object()?.clone();
    let variant = element.remove(tag)?;
    let rest = Value::Object(element);
    match (list, variant.as_str()?) {
        ("nodes", "carrier_generator") => element_error::<CarrierGeneratorDoc>(path, rest),
        ("nodes", "tag") => element_error::<TagDoc>(path, rest),
        ("nodes", "receiver") => element_error::<ReceiverDoc>(path, rest),
        ("nodes", "interferer") => element_error::<InterfererDoc>(path, rest),
        ("obstacles", "wall") => element_error::<WallDoc>(path, rest),
        ("obstacles", "floor") => element_error::<FloorDoc>(path, rest),
        _ => None,
    }
}

fn finite(path: impl FnOnce() -> String, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::schema(path(), format!("must be finite (got {v})")))
    }
}

fn positive(path: impl FnOnce() -> String, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::schema(path(), format!("must be positive (got {v})")))
    }
}

fn check_position(path: String, p: &Position) -> Result<()> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::schema(path, "coordinates must be finite"))
    }
}

fn check_windows(path: String, w: &[TimeWindow]) -> Result<()> {
    let mut prev_end = f64::NEG_INFINITY;
    for (k, &(a, b)) in w.iter().enumerate() {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::schema(format!("{path}[{k}]"), "needs start < end"));
        }
        if a < prev_end {
            return Err(Error::schema(
                format!("{path}[{k}]"),
                "intervals must be sorted and non-overlapping",
            ));
        }
        prev_end = b;
    }
    Ok(())
}

fn parse_profile(path: &str, v: Option<&Value>) -> Result<RadioProfile> {
    let profile = match v {
        None => RadioProfile::preset(LOREA_24).expect("shipped profile"),
        Some(Value::String(name)) => {
            RadioProfile::preset(name).ok_or_else(|| Error::schema(path, format!("unknown radio profile `{name}`")))?
        }
        Some(other) => serde_path_to_error::deserialize::<_, RadioProfile>(other.clone())
            .map_err(|e| Error::schema(format!("{path}.{}", e.path()), e.into_inner().to_string()))?,
    };
    profile.validate().map_err(|e| match e {
        Error::Schema { path: field, message } => Error::schema(format!("{path}.{field}"), message),
        other => other,
    })?;
    Ok(profile)
}

fn node_id(n: &NodeDoc) -> &str {
    match n {
        NodeDoc::CarrierGenerator(CarrierGeneratorDoc { id, .. })
        | NodeDoc::Tag(TagDoc { id, .. })
        | NodeDoc::Receiver(ReceiverDoc { id, .. })
        | NodeDoc::Interferer(InterfererDoc { id, .. }) => id,
    }
}

fn resolve(doc: ScenarioDoc) -> Result<Scenario> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (i, n) in doc.nodes.iter().enumerate() {
        let id = node_id(n);
        if id.is_empty() {
            return Err(Error::schema(format!("nodes[{i}].id"), "must not be empty"));
        }
        if let Some(j) = seen.insert(id, i) {
            return Err(Error::schema(
                format!("nodes[{i}].id"),
                format!("duplicate id `{id}`, first used at nodes[{j}].id"),
            ));
        }
    }

    // Receiver profiles first: the first one supplies defaults for the rest
    // of the document.
    let mut profiles: HashMap<usize, RadioProfile> = HashMap::new();
    for (i, n) in doc.nodes.iter().enumerate() {
        if let NodeDoc::Receiver(ReceiverDoc { profile, .. }) = n {
            profiles.insert(i, parse_profile(&format!("nodes[{i}].profile"), profile.as_ref())?);
        }
    }
    let reference = doc
        .nodes
        .iter()
        .enumerate()
        .find_map(|(i, _)| profiles.get(&i).cloned())
        .unwrap_or_else(|| RadioProfile::preset(LOREA_24).expect("shipped profile"));
    let sub_ghz = reference.band_center.hz() < SUB_GHZ;

    let first_carrier_center = doc.nodes.iter().find_map(|n| match n {
        NodeDoc::CarrierGenerator(CarrierGeneratorDoc { center_hz, .. }) => {
            Some(center_hz.unwrap_or(reference.band_center.hz()))
        }
        _ => None,
    });
    let first_tag_offset = doc.nodes.iter().find_map(|n| match n {
        NodeDoc::Tag(TagDoc { delta_f_hz, .. }) => Some(delta_f_hz.unwrap_or(reference.intermediate_freq_hz)),
        _ => None,
    });

    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.into_iter().enumerate() {
        let at = |field: &str| format!("nodes[{i}].{field}");
        let node = match n {
            NodeDoc::CarrierGenerator(CarrierGeneratorDoc {
                id,
                position,
                tx_power_dbm,
                center_hz,
                antenna_gain_db,
                on_intervals,
            }) => {
                check_position(at("position"), &position)?;
                check_windows(at("on_intervals"), &on_intervals)?;
                let tx = tx_power_dbm.unwrap_or(if sub_ghz { 28.0 } else { 26.0 });
                let center = center_hz.unwrap_or(reference.band_center.hz());
                Node {
                    id,
                    position,
                    kind: NodeKind::CarrierGenerator(CarrierGenerator {
                        tx_power: PowerDbm(finite(|| at("tx_power_dbm"), tx)?),
                        center: FrequencyHz(positive(|| at("center_hz"), center)?),
                        antenna_gain: Gain(finite(|| at("antenna_gain_db"), antenna_gain_db.unwrap_or(0.0))?),
                        on_intervals,
                    }),
                }
            }
            NodeDoc::Tag(TagDoc {
                id,
                position,
                delta_f_hz,
                k_factor_db,
                fsk_deviation_hz,
                bitrate_bps,
                power_draw_uw,
            }) => {
                check_position(at("position"), &position)?;
                let k = finite(|| at("k_factor_db"), k_factor_db.unwrap_or(-3.0))?;
                if k > 0.0 {
                    return Err(Error::schema(at("k_factor_db"), "a passive tag cannot add power"));
                }
                let draw = power_draw_uw.unwrap_or(if sub_ghz { 70.0 } else { 650.0 });
                if !(draw >= 0.0) {
                    return Err(Error::schema(at("power_draw_uw"), "must be non-negative"));
                }
                let dev = fsk_deviation_hz.unwrap_or(reference.fsk_deviation_hz);
                if !(dev >= 0.0) {
                    return Err(Error::schema(at("fsk_deviation_hz"), "must be non-negative"));
                }
                Node {
                    id,
                    position,
                    kind: NodeKind::Tag(Tag {
                        delta_f_hz: positive(
                            || at("delta_f_hz"),
                            delta_f_hz.unwrap_or(reference.intermediate_freq_hz),
                        )?,
                        k_factor: Gain(k),
                        fsk_deviation_hz: dev,
                        bitrate_bps: positive(|| at("bitrate_bps"), bitrate_bps.unwrap_or(reference.bitrate_bps))?,
                        power_draw_uw: draw,
                    }),
                }
            }
            NodeDoc::Receiver(ReceiverDoc {
                id,
                position,
                profile: _,
                tuned_hz,
                antenna_gain_db,
            }) => {
                check_position(at("position"), &position)?;
                let profile = profiles.remove(&i).expect("parsed above");
                let tuned = tuned_hz.unwrap_or_else(|| match (first_carrier_center, first_tag_offset) {
                    (Some(c), Some(df)) => c + df,
                    (Some(c), None) => c + profile.intermediate_freq_hz,
                    _ => profile.band_center.hz() + profile.intermediate_freq_hz,
                });
                Node {
                    id,
                    position,
                    kind: NodeKind::Receiver(Receiver {
                        profile,
                        tuned: FrequencyHz(positive(|| at("tuned_hz"), tuned)?),
                        antenna_gain: Gain(finite(|| at("antenna_gain_db"), antenna_gain_db.unwrap_or(0.0))?),
                    }),
                }
            }
            NodeDoc::Interferer(InterfererDoc {
                id,
                position,
                center_hz,
                bandwidth_hz,
                tx_power_dbm,
                duty_cycle,
                hop_schedule,
                on_intervals,
            }) => {
                check_position(at("position"), &position)?;
                check_windows(at("on_intervals"), &on_intervals)?;
                let duty = duty_cycle.unwrap_or(1.0);
                if !(0.0..=1.0).contains(&duty) {
                    return Err(Error::schema(at("duty_cycle"), "must lie in [0, 1]"));
                }
                let mut last = f64::NEG_INFINITY;
                let mut hops = Vec::with_capacity(hop_schedule.len());
                for (k, &(t, f)) in hop_schedule.iter().enumerate() {
                    if !(t.is_finite() && t >= last) {
                        return Err(Error::schema(
                            format!("nodes[{i}].hop_schedule[{k}]"),
                            "times must be finite and non-decreasing",
                        ));
                    }
                    last = t;
                    hops.push((t, FrequencyHz(positive(|| format!("nodes[{i}].hop_schedule[{k}]"), f)?)));
                }
                Node {
                    id,
                    position,
                    kind: NodeKind::Interferer(Interferer {
                        center: FrequencyHz(positive(|| at("center_hz"), center_hz)?),
                        bandwidth_hz: {
                            let b = bandwidth_hz.unwrap_or(22e6);
                            if !(b >= 0.0 && b.is_finite()) {
                                return Err(Error::schema(at("bandwidth_hz"), "must be non-negative"));
                            }
                            b
                        },
                        tx_power: PowerDbm(finite(|| at("tx_power_dbm"), tx_power_dbm.unwrap_or(20.0))?),
                        duty_cycle: duty,
                        hop_schedule: hops,
                        on_intervals,
                    }),
                }
            }
        };
        nodes.push(node);
    }

    let band = match doc.band {
        Some(b) => Band::new(b.low, b.high).map_err(|e| Error::schema("band", e.to_string()))?,
        None if sub_ghz => Band::srd_868(),
        None => Band::ism_2400(),
    };

    let exponent = doc.path_loss_exponent.unwrap_or(2.0);
    if !(exponent >= 2.0 && exponent.is_finite()) {
        return Err(Error::schema(
            "path_loss_exponent",
            format!("must be at least 2 (got {exponent})"),
        ));
    }
    let duration_s = positive(|| "duration_s".into(), doc.duration_s.unwrap_or(60.0))?;
    let time_step_s = positive(|| "time_step_s".into(), doc.time_step_s.unwrap_or(0.05))?;
    if time_step_s > duration_s {
        return Err(Error::schema("time_step_s", "must not exceed duration_s"));
    }

    let packet = doc.packet;
    if packet.payload_bytes == 0 {
        return Err(Error::schema("packet.payload_bytes", "must be at least 1"));
    }
    positive(|| "packet.inter_packet_gap_s".into(), packet.inter_packet_gap_s)?;
    if packet.window_packets == 0 {
        return Err(Error::schema("packet.window_packets", "must be at least 1"));
    }
    if !(0.0..=1.0).contains(&packet.transmit_probability) {
        return Err(Error::schema("packet.transmit_probability", "must lie in [0, 1]"));
    }

    let prop = doc.propagation;
    for (name, v) in [
        ("propagation.wall_attenuation_db", prop.wall_attenuation_db),
        ("propagation.floor_attenuation_db", prop.floor_attenuation_db),
        ("propagation.per_product_loss_db", prop.per_product_loss_db),
    ] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::schema(name, "must be a non-negative loss in dB"));
        }
    }

    let mut obstacles = Vec::with_capacity(doc.obstacles.len());
    for (i, o) in doc.obstacles.into_iter().enumerate() {
        let at = |field: &str| format!("obstacles[{i}].{field}");
        let (geometry, att, default) = match o {
            ObstacleDoc::Wall(WallDoc {
                from,
                to,
                z_range,
                attenuation_db,
            }) => {
                if from == to {
                    return Err(Error::schema(at("to"), "wall footprint has zero length"));
                }
                if !(z_range.0 < z_range.1) {
                    return Err(Error::schema(at("z_range"), "needs low < high"));
                }
                (
                    ObstacleGeometry::Wall { from, to, z_range },
                    attenuation_db,
                    prop.wall_attenuation_db,
                )
            }
            ObstacleDoc::Floor(FloorDoc {
                min,
                max,
                height,
                attenuation_db,
            }) => {
                if !(min[0] < max[0] && min[1] < max[1]) {
                    return Err(Error::schema(at("max"), "must exceed min in both axes"));
                }
                finite(|| at("height"), height)?;
                (
                    ObstacleGeometry::Floor { min, max, height },
                    attenuation_db,
                    prop.floor_attenuation_db,
                )
            }
        };
        let att = att.unwrap_or(default);
        if !(att >= 0.0 && att.is_finite()) {
            return Err(Error::schema(at("attenuation_db"), "must be a non-negative loss in dB"));
        }
        obstacles.push(Obstacle {
            attenuation: Gain(att),
            geometry,
        });
    }

    let mut scenario = Scenario {
        name: doc.name,
        description: doc.description.unwrap_or_default(),
        band,
        path_loss_exponent: exponent,
        duration_s,
        time_step_s,
        seed: doc.seed.unwrap_or(1),
        packet,
        propagation: prop,
        nodes,
        obstacles,
        avoidance: None,
        experiment: None,
    };

    if let Some(av) = doc.avoidance {
        let Some(carrier) = scenario.carrier(&av.carrier) else {
            return Err(Error::schema(
                "avoidance.carrier",
                format!("`{}` is not a carrier_generator", av.carrier),
            ));
        };
        if scenario.receiver(&av.receiver).is_none() {
            return Err(Error::schema(
                "avoidance.receiver",
                format!("`{}` is not a receiver", av.receiver),
            ));
        }
        if av.channels_hz.is_empty() {
            return Err(Error::schema("avoidance.channels_hz", "must not be empty"));
        }
        if !av.channels_hz.iter().any(|&f| f == carrier.center.hz()) {
            return Err(Error::schema(
                "avoidance.channels_hz",
                format!("must contain the carrier's center {}", carrier.center),
            ));
        }
        if !(av.prr_threshold > 0.0 && av.prr_threshold < 1.0) {
            return Err(Error::schema("avoidance.prr_threshold", "must lie in (0, 1)"));
        }
        scenario.avoidance = Some(av);
    }

    if let Some(mut ex) = doc.experiment {
        resolve_experiment(&scenario, &mut ex)?;
        scenario.experiment = Some(ex);
    }
    Ok(scenario)
}

fn resolve_experiment(s: &Scenario, ex: &mut ExperimentSpec) -> Result<()> {
    let fill = |sel: &mut LinkSelector| -> Result<()> {
        let link = s.resolve_link(sel)?;
        *sel = LinkSelector {
            tag: Some(link.tag),
            receiver: Some(link.receiver),
            carrier: Some(link.carrier),
        };
        Ok(())
    };
    match ex {
        ExperimentSpec::RangeSweep {
            link,
            grid,
            series,
            replications,
            ber_threshold,
            ..
        } => {
            fill(link)?;
            let values = grid.values();
            if values.is_empty() {
                return Err(Error::schema("experiment.grid", "sweep grid is empty"));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::schema("experiment.grid", "values must be finite"));
            }
            if let Some(series) = series {
                if series.values.is_empty() {
                    return Err(Error::schema("experiment.series.values", "must not be empty"));
                }
            }
            if *replications == 0 {
                return Err(Error::schema("experiment.replications", "must be at least 1"));
            }
            if !(*ber_threshold > 0.0 && *ber_threshold < 0.5) {
                return Err(Error::schema("experiment.ber_threshold", "must lie in (0, 0.5)"));
            }
        }
        ExperimentSpec::Simulate { replications, checks } => {
            if *replications == 0 {
                return Err(Error::schema("experiment.replications", "must be at least 1"));
            }
            for (i, c) in checks.iter().enumerate() {
                if let Some(r) = &c.receiver {
                    if s.receiver(r).is_none() {
                        return Err(Error::schema(
                            format!("experiment.checks[{i}].receiver"),
                            format!("`{r}` is not a receiver"),
                        ));
                    }
                }
                if c.metric == Metric::ReceiverPrr && c.receiver.is_none() {
                    return Err(Error::schema(
                        format!("experiment.checks[{i}].receiver"),
                        "receiver_prr needs a receiver",
                    ));
                }
                if c.min.is_none() && c.max.is_none() {
                    return Err(Error::schema(format!("experiment.checks[{i}]"), "needs min or max"));
                }
            }
        }
        ExperimentSpec::SignalProfile {
            link,
            samples,
            margin_m,
            monostatic,
        } => {
            fill(link)?;
            if *samples < 2 {
                return Err(Error::schema("experiment.samples", "must be at least 2"));
            }
            if !(*margin_m > 0.0) {
                return Err(Error::schema("experiment.margin_m", "must be positive"));
            }
            if let Some(g) = monostatic {
                if g.values().iter().any(|&d| !(d > 0.0)) || g.values().is_empty() {
                    return Err(Error::schema("experiment.monostatic", "needs positive distances"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "name": "minimal",
        "nodes": [
            { "role": "carrier_generator", "id": "cg", "position": [0, 0, 1] },
            { "role": "tag", "id": "tag", "position": [1, 0, 1] },
            { "role": "receiver", "id": "rx", "position": [10, 0, 1] }
        ]
    }"#;

    fn schema_path(e: Error) -> String {
        match e {
            Error::Schema { path, .. } => path,
            other => panic!("expected schema error, got {other}"),
        }
    }

    #[test]
    fn minimal_document_gets_defaults() {
        let s = load_scenario(MINIMAL).unwrap();
        let rx = s.receiver("rx").unwrap();
        assert_eq!(rx.profile, RadioProfile::preset(LOREA_24).unwrap());
        assert_eq!(rx.tuned, FrequencyHz(2.442e9));
        let cg = s.carrier("cg").unwrap();
        assert_eq!(cg.tx_power, PowerDbm(26.0));
        let tag = s.tag("tag").unwrap();
        assert_eq!(tag.k_factor, Gain(-3.0));
        assert_eq!(tag.power_draw_uw, 650.0);
        assert_eq!(tag.delta_f_hz, 2e6);
        assert_eq!(s.band, Band::ism_2400());
        assert_eq!(s.path_loss_exponent, 2.0);
        assert_eq!(s.packet.payload_bytes, 64);
    }

    #[test]
    fn sub_ghz_defaults_follow_the_receiver_profile() {
        let text = MINIMAL.replace(
            r#""id": "rx", "position": [10, 0, 1]"#,
            r#""id": "rx", "position": [10, 0, 1], "profile": "LoRea-868""#,
        );
        let s = load_scenario(&text).unwrap();
        assert_eq!(s.tag("tag").unwrap().power_draw_uw, 70.0);
        assert_eq!(s.carrier("cg").unwrap().tx_power, PowerDbm(28.0));
        assert_eq!(s.receiver("rx").unwrap().tuned, FrequencyHz(868.1e6));
        assert_eq!(s.band, Band::srd_868());
    }

    #[test]
    fn round_trip_is_exact() {
        let s = load_scenario(MINIMAL).unwrap();
        let again = load_scenario(&serde_json::to_string_pretty(&s).unwrap()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn duplicate_ids_name_both_locations() {
        let text = MINIMAL.replace(r#""id": "tag""#, r#""id": "cg""#);
        let err = load_scenario(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("nodes[1].id") && msg.contains("nodes[0].id"), "{msg}");
    }

    #[test]
    fn strict_schema() {
        let text = MINIMAL.replace(r#""name": "minimal","#, r#""name": "minimal", "colour": "red","#);
        let err = load_scenario(&text).unwrap_err();
        assert!(err.to_string().contains("colour"));

        let text = MINIMAL.replace(r#""schema_version": 1,"#, "");
        assert_eq!(schema_path(load_scenario(&text).unwrap_err()), "schema_version");
        let text = MINIMAL.replace(r#""schema_version": 1"#, r#""schema_version": 2"#);
        assert_eq!(schema_path(load_scenario(&text).unwrap_err()), "schema_version");

        let text = MINIMAL.replace("[10, 0, 1]", "[10, 0]");
        assert!(schema_path(load_scenario(&text).unwrap_err()).starts_with("nodes[2]"));

        assert_eq!(schema_path(load_scenario("{").unwrap_err()), "(document)");
    }

    #[test]
    fn invariants_are_checked() {
        let bad = [
            (
                r#""position": [1, 0, 1] }"#,
                r#""position": [1, 0, 1], "k_factor_db": 3 }"#,
                "nodes[1].k_factor_db",
            ),
            (
                r#""name": "minimal","#,
                r#""name": "minimal", "time_step_s": 0,"#,
                "time_step_s",
            ),
            (
                r#""name": "minimal","#,
                r#""name": "minimal", "duration_s": 1, "time_step_s": 2,"#,
                "time_step_s",
            ),
            (
                r#""name": "minimal","#,
                r#""name": "minimal", "path_loss_exponent": 1.5,"#,
                "path_loss_exponent",
            ),
            (
                r#""id": "rx", "position": [10, 0, 1]"#,
                r#""id": "rx", "position": [10, 0, 1], "profile": "nope""#,
                "nodes[2].profile",
            ),
        ];
        for (from, to, path) in bad {
            let text = MINIMAL.replace(from, to);
            assert_ne!(text, MINIMAL);
            assert_eq!(schema_path(load_scenario(&text).unwrap_err()), path);
        }
    }

    #[test]
    fn interferer_windows_and_duty() {
        let text = MINIMAL.replace(
            r#"{ "role": "tag""#,
            r#"{ "role": "interferer", "id": "w", "position": [5, 5, 1], "center_hz": 2412e6,
                 "duty_cycle": 1.5 },
               { "role": "tag""#,
        );
        assert_eq!(schema_path(load_scenario(&text).unwrap_err()), "nodes[1].duty_cycle");
        let text = text.replace(r#""duty_cycle": 1.5"#, r#""on_intervals": [[10, 20], [15, 30]]"#);
        assert_eq!(
            schema_path(load_scenario(&text).unwrap_err()),
            "nodes[1].on_intervals[1]"
        );
    }

    #[test]
    fn overrides_match_editing_the_document() {
        let edited = MINIMAL.replace(r#""name": "minimal","#, r#""name": "minimal", "seed": 9,"#);
        let via_override = load_with_overrides(MINIMAL, &["seed=9".parse().unwrap()]).unwrap();
        assert_eq!(via_override, load_scenario(&edited).unwrap());

        let s = load_with_overrides(MINIMAL, &["nodes.rx.profile.bitrate_bps=197000".parse().unwrap()]).unwrap();
        assert_eq!(s.receiver("rx").unwrap().profile.bitrate_bps, 197e3);

        let err = load_with_overrides(MINIMAL, &["nodes.rx.colour=1".parse().unwrap()]).unwrap_err();
        assert!(matches!(err, Error::Override { .. }));
    }
}
