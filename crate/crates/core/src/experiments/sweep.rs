use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{expected_link, simulate_with_seed};
use crate::error::{Error, Result};
use crate::scenario::{ExperimentSpec, Link, NodeId, Override, Position, Scenario, SweepMode};

/// Geometric sweep parameters. Anything else is treated as a dotted scenario
/// path and applied as an override.
pub const CARRIER_TAG_DISTANCE: &str = "carrier_tag_distance";
pub const TAG_RECEIVER_DISTANCE: &str = "tag_receiver_distance";
pub const CARRIER_RECEIVER_DISTANCE: &str = "carrier_receiver_distance";

fn direction(from: &Position, to: &Position) -> [f64; 3] {
    let d = [to[0] - from[0], to[1] - from[1], to[2] - from[2]];
    let len = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if len > 0.0 {
        [d[0] / len, d[1] / len, d[2] / len]
    } else {
        [1.0, 0.0, 0.0]
    }
}

fn position(s: &Scenario, id: &NodeId) -> Result<Position> {
    s.node(id)
        .map(|n| n.position)
        .ok_or_else(|| Error::Sweep(format!("no node `{id}`")))
}

/// Places `mover` at `distance` from `anchor`, keeping its bearing.
fn place(s: &mut Scenario, anchor: &NodeId, mover: &NodeId, distance: f64) -> Result<()> {
    if !(distance >= 0.0 && distance.is_finite()) {
        return Err(Error::Sweep(format!(
            "distance {distance} must be finite and non-negative"
        )));
    }
    let a = position(s, anchor)?;
    let u = direction(&a, &position(s, mover)?);
    let node = s.node_mut(mover).expect("checked above");
    node.position = [a[0] + distance * u[0], a[1] + distance * u[1], a[2] + distance * u[2]];
    Ok(())
}

/// Returns a copy of `s` with `parameter` set to `value`.
pub fn apply_parameter(s: &Scenario, link: &Link, parameter: &str, value: f64) -> Result<Scenario> {
    let mut out = s.clone();
    match parameter {
        CARRIER_TAG_DISTANCE => place(&mut out, &link.carrier, &link.tag, value)?,
        TAG_RECEIVER_DISTANCE => place(&mut out, &link.tag, &link.receiver, value)?,
        CARRIER_RECEIVER_DISTANCE => place(&mut out, &link.carrier, &link.receiver, value)?,
        path => out = s.with_override(&Override::new(path, value))?,
    }
    Ok(out)
}

/// One BER-against-parameter curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    pub link: Link,
    pub parameter: String,
    pub grid: Vec<f64>,
    pub replications: u32,
    pub seed: u64,
    pub ber_threshold: f64,
    pub mode: SweepMode,
}

impl SweepSpec {
    /// The range sweeps described by the scenario's experiment block, one per
    /// series value (or a single one without a series).
    pub fn from_scenario(s: &Scenario) -> Result<Vec<(Option<f64>, SweepSpec)>> {
        let Some(ExperimentSpec::RangeSweep {
            link,
            parameter,
            grid,
            series,
            replications,
            ber_threshold,
            mode,
            ..
        }) = &s.experiment
        else {
            return Err(Error::Sweep(format!(
                "scenario `{}` does not describe a range sweep",
                s.name
            )));
        };
        let link = s.resolve_link(link)?;
        let spec = |scenario: Scenario| SweepSpec {
            scenario,
            link: link.clone(),
            parameter: parameter.clone(),
            grid: grid.values(),
            replications: *replications,
            seed: s.seed,
            ber_threshold: *ber_threshold,
            mode: *mode,
        };
        match series {
            None => Ok(vec![(None, spec(s.clone()))]),
            Some(series) => series
                .values
                .iter()
                .map(|&v| Ok((Some(v), spec(apply_parameter(s, &link, &series.parameter, v)?))))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub value: f64,
    pub mean_ber: f64,
    pub std_ber: f64,
    pub prr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeResult {
    pub parameter: String,
    pub ber_threshold: f64,
    pub points: Vec<GridPoint>,
    /// Largest grid value whose mean BER meets the threshold.
    pub max_range: Option<f64>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn evaluate(spec: &SweepSpec, value: f64) -> Result<GridPoint> {
    let s = apply_parameter(&spec.scenario, &spec.link, &spec.parameter, value)?;
    match spec.mode {
        // Replications would all return the same expectation.
        SweepMode::Analytic => {
            let e = expected_link(&s, &spec.link, 0.0)?;
            Ok(GridPoint {
                value,
                mean_ber: e.ber,
                std_ber: 0.0,
                prr: e.prr,
            })
        }
        SweepMode::MonteCarlo => {
            let mut bers = Vec::new();
            let mut prrs = Vec::new();
            for r in 0..spec.replications {
                let report = simulate_with_seed(&s, spec.seed.wrapping_add(r as u64))?;
                let series = report.series(&spec.link.receiver).expect("receiver in report");
                let packets: u32 = series.windows.iter().map(|w| w.packets).sum();
                let ber = series.windows.iter().map(|w| w.ber * w.packets as f64).sum::<f64>() / packets.max(1) as f64;
                bers.push(ber);
                prrs.push(report.receiver_prr(&spec.link.receiver, None).unwrap_or(0.0));
            }
            let (mean_ber, std_ber) = mean_std(&bers);
            Ok(GridPoint {
                value,
                mean_ber,
                std_ber,
                prr: mean_std(&prrs).0,
            })
        }
    }
}

/// Evaluates every grid point (in parallel) and finds the largest value that
/// meets the BER threshold.
pub fn run_sweep(spec: &SweepSpec) -> Result<RangeResult> {
    if spec.grid.is_empty() {
        return Err(Error::Sweep("grid is empty".into()));
    }
    if spec.replications == 0 {
        return Err(Error::Sweep("replications must be at least 1".into()));
    }
    let points = spec
        .grid
        .par_iter()
        .map(|&v| evaluate(spec, v))
        .collect::<Result<Vec<_>>>()?;
    let max_range = points
        .iter()
        .filter(|p| p.mean_ber <= spec.ber_threshold)
        .map(|p| p.value)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    Ok(RangeResult {
        parameter: spec.parameter.clone(),
        ber_threshold: spec.ber_threshold,
        points,
        max_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::presets;

    fn first(name: &str) -> SweepSpec {
        SweepSpec::from_scenario(&presets::get(name).unwrap())
            .unwrap()
            .remove(0)
            .1
    }

    #[test]
    fn empty_grid_is_rejected() {
        let mut spec = first("fig7-outdoor-24");
        spec.grid.clear();
        assert!(matches!(run_sweep(&spec), Err(Error::Sweep(_))));
    }

    #[test]
    fn geometric_parameters_move_nodes() {
        let s = presets::get("fig7-outdoor-24").unwrap();
        let link = s.resolve_link(&Default::default()).unwrap();
        let t = apply_parameter(&s, &link, CARRIER_TAG_DISTANCE, 6.0).unwrap();
        let r = apply_parameter(&t, &link, CARRIER_RECEIVER_DISTANCE, 100.0).unwrap();
        let cg = r.node("cg").unwrap().position;
        let tag = r.node("tag").unwrap().position;
        let rx = r.node("rx").unwrap().position;
        assert!((tag[0] - cg[0] - 6.0).abs() < 1e-9);
        assert!((rx[0] - cg[0] - 100.0).abs() < 1e-9);
        let r = apply_parameter(&t, &link, TAG_RECEIVER_DISTANCE, 10.0).unwrap();
        assert!((r.node("rx").unwrap().position[0] - tag[0] - 10.0).abs() < 1e-9);
    }

    #[test]
    fn dotted_paths_are_overrides() {
        let s = presets::get("fig11-floors-868").unwrap();
        let link = s.resolve_link(&Default::default()).unwrap();
        let t = apply_parameter(&s, &link, "nodes.rx.position.2", 7.5).unwrap();
        assert_eq!(t.node("rx").unwrap().position[2], 7.5);
        assert!(apply_parameter(&s, &link, "nodes.rx.nothing", 1.0).is_err());
    }

    #[test]
    fn sweep_is_reproducible() {
        let mut spec = first("fig7-outdoor-24");
        spec.grid.truncate(40);
        assert_eq!(run_sweep(&spec).unwrap(), run_sweep(&spec).unwrap());
    }

    #[test]
    fn monte_carlo_tracks_analytic_at_the_extremes() {
        let mut spec = first("fig7-outdoor-24");
        spec.grid = vec![30.0, 390.0];
        spec.scenario.duration_s = 10.0;
        let analytic = run_sweep(&spec).unwrap();
        spec.mode = SweepMode::MonteCarlo;
        let mc = run_sweep(&spec).unwrap();
        for (a, m) in analytic.points.iter().zip(&mc.points) {
            assert!((a.prr - m.prr).abs() < 0.1, "{a:?} {m:?}");
        }
    }
}
