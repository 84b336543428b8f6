use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::profile::{profile_from_scenario, SignalProfile};
use super::sweep::{run_sweep, RangeResult, SweepSpec};
use crate::engine::{simulate_with_seed, SimReport};
use crate::error::{Error, Result};
use crate::scenario::{Check, ExperimentSpec, Metric, Scenario, Trend};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Both,
}

impl Format {
    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
    fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCurve {
    pub series_value: Option<f64>,
    pub result: RangeResult,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentData {
    RangeSweep {
        series_parameter: Option<String>,
        curves: Vec<SeriesCurve>,
    },
    Simulate {
        runs: Vec<SimReport>,
    },
    SignalProfile(SignalProfile),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub scenario: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    pub data: ExperimentData,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// CSV for the experiment. Simulations with several runs produce one
    /// CSV per run, in run order.
    pub fn to_csv(&self) -> Vec<String> {
        let fmt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        match &self.data {
            ExperimentData::RangeSweep { curves, .. } => {
                let mut out = String::from("series_value,grid_value,mean_ber,std_ber,prr\n");
                for c in curves {
                    for p in &c.result.points {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{}",
                            fmt(c.series_value),
                            p.value,
                            p.mean_ber,
                            p.std_ber,
                            p.prr
                        );
                    }
                }
                vec![out]
            }
            ExperimentData::Simulate { runs } => runs.iter().map(SimReport::to_csv).collect(),
            ExperimentData::SignalProfile(p) => {
                let mut out = String::from("curve,distance_m,power_dbm\n");
                for (name, pts) in [("bistatic", &p.bistatic), ("monostatic", &p.monostatic)] {
                    for q in pts {
                        let _ = writeln!(out, "{name},{},{}", q.distance_m, q.power_dbm);
                    }
                }
                vec![out]
            }
        }
    }
}

fn check_value(report: &SimReport, check: &Check) -> Option<f64> {
    match check.metric {
        Metric::ReceiverPrr => report.receiver_prr(check.receiver.as_deref()?, check.interval),
        Metric::AggregatePrr => report.aggregate_prr(check.interval),
        Metric::HopCommands => Some(report.hop_commands(check.interval) as f64),
    }
}

fn evaluate_check(runs: &[SimReport], check: &Check) -> Verdict {
    let mut failures = Vec::new();
    let mut values = Vec::new();
    for r in runs {
        match check_value(r, check) {
            Some(v) => {
                values.push(format!("{v}"));
                if check.min.is_some_and(|m| v < m) || check.max.is_some_and(|m| v > m) {
                    failures.push(r.seed);
                }
            }
            None => {
                values.push("n/a".into());
                failures.push(r.seed);
            }
        }
    }
    let bounds = match (check.min, check.max) {
        (Some(a), Some(b)) => format!("in [{a}, {b}]"),
        (Some(a), None) => format!(">= {a}"),
        (None, Some(b)) => format!("<= {b}"),
        (None, None) => "any".into(),
    };
    Verdict {
        name: check.name.clone(),
        passed: failures.is_empty(),
        detail: format!("want {bounds}; got {} over seeds", values.join(", ")),
    }
}

fn trend_verdict(trend: Trend, curves: &[SeriesCurve]) -> Option<Verdict> {
    let want = match trend {
        Trend::None => return None,
        Trend::Decreasing => "decreasing",
        Trend::Increasing => "increasing",
    };
    let ranges: Vec<Option<f64>> = curves.iter().map(|c| c.result.max_range).collect();
    let passed = ranges.iter().all(Option::is_some)
        && ranges.windows(2).all(|w| match (w[0], w[1], trend) {
            (Some(a), Some(b), Trend::Decreasing) => b < a,
            (Some(a), Some(b), Trend::Increasing) => b > a,
            _ => false,
        });
    let shown: Vec<String> = ranges
        .iter()
        .map(|r| r.map(|x| x.to_string()).unwrap_or_else(|| "none".into()))
        .collect();
    Some(Verdict {
        name: format!("max range {want} along series"),
        passed,
        detail: format!("max ranges: {}", shown.join(", ")),
    })
}

/// Runs the experiment embedded in `s` with base seed `seed`.
pub fn run_experiment(s: &Scenario, seed: u64) -> Result<ExperimentReport> {
    let Some(experiment) = &s.experiment else {
        return Err(Error::Sweep(format!("scenario `{}` has no experiment block", s.name)));
    };
    let mut s = s.clone();
    s.seed = seed;
    let (verdicts, data) = match experiment {
        ExperimentSpec::RangeSweep { series, expect, .. } => {
            let curves = SweepSpec::from_scenario(&s)?
                .into_iter()
                .map(|(v, spec)| {
                    Ok(SeriesCurve {
                        series_value: v,
                        result: run_sweep(&spec)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let verdicts = trend_verdict(*expect, &curves).into_iter().collect();
            (
                verdicts,
                ExperimentData::RangeSweep {
                    series_parameter: series.as_ref().map(|x| x.parameter.clone()),
                    curves,
                },
            )
        }
        ExperimentSpec::Simulate { replications, checks } => {
            let runs = (0..*replications as u64)
                .map(|r| simulate_with_seed(&s, seed.wrapping_add(r)))
                .collect::<Result<Vec<_>>>()?;
            let verdicts = checks.iter().map(|c| evaluate_check(&runs, c)).collect();
            (verdicts, ExperimentData::Simulate { runs })
        }
        ExperimentSpec::SignalProfile { .. } => {
            let p = profile_from_scenario(&s)?;
            let mut verdicts = Vec::new();
            if let Some(i) = p.minimum_index() {
                let mid = p.bistatic.len() / 2;
                verdicts.push(Verdict {
                    name: "bistatic minimum at midpoint".into(),
                    passed: i == mid,
                    detail: format!("minimum at sample {i}, midpoint {mid}"),
                });
            }
            if p.monostatic.len() > 1 {
                let dec = p.monostatic.windows(2).all(|w| w[1].power_dbm < w[0].power_dbm);
                verdicts.push(Verdict {
                    name: "monostatic strictly decreasing".into(),
                    passed: dec,
                    detail: format!("{} samples", p.monostatic.len()),
                });
            }
            (verdicts, ExperimentData::SignalProfile(p))
        }
    };
    Ok(ExperimentReport {
        scenario: s.name.clone(),
        seed,
        verdicts,
        data,
    })
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn timestamp() -> String {
    chrono::Utc::now().format("%Y%m%dT%H%M%SZ").to_string()
}

/// Writes `<stem>-<timestamp>-<seed>.{csv,json}` files into `dir` and returns
/// their paths. Extra CSVs (one per additional simulation run) are named
/// after that run's seed.
pub fn write_outputs(
    dir: &Path,
    stem: &str,
    stamp: &str,
    seed: u64,
    format: Format,
    json: &str,
    csvs: &[String],
) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if format.csv() {
        for (i, csv) in csvs.iter().enumerate() {
            let p = dir.join(format!("{stem}-{stamp}-{}.csv", seed.wrapping_add(i as u64)));
            write_atomic(&p, csv)?;
            written.push(p);
        }
    }
    if format.json() {
        let p = dir.join(format!("{stem}-{stamp}-{seed}.json"));
        write_atomic(&p, json)?;
        written.push(p);
    }
    Ok(written)
}
