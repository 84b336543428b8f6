//! The `backsim` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::simulate_with_seed;
use crate::error::{Error, Result};
use crate::experiments::{run_experiment, timestamp, write_outputs, Format};
use crate::scenario::{load_with_overrides, presets, ExperimentSpec, Grid, Override, Scenario};

#[derive(Parser, Debug)]
#[command(name = "backsim", version, about = "Bistatic backscatter link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a scenario and print it with every default filled in.
    Validate(Target),
    /// Run the packet-level simulation of a scenario.
    Run(Target),
    /// Run a range sweep, optionally replacing the swept parameter and grid.
    Sweep {
        #[command(flatten)]
        target: Target,
        /// Parameter to sweep: a geometric distance name or a dotted path.
        #[arg(long)]
        parameter: Option<String>,
        /// Comma-separated values or START:STOP:STEP.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Run the experiment described in a scenario or preset.
    Experiment(Target),
    /// List the bundled presets.
    ListPresets,
}

#[derive(Args, Debug)]
struct Target {
    /// Scenario file, or the name of a bundled preset.
    scenario: String,
    /// Override a scenario field, e.g. `--set nodes.tag.position.0=3`.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for reports.
    #[arg(long, env = "BACKSIM_OUT_DIR", default_value = ".")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Both => Format::Both,
        }
    }
}

fn load(target: &Target) -> Result<Scenario> {
    let overrides = target
        .overrides
        .iter()
        .map(|s| s.parse::<Override>())
        .collect::<Result<Vec<_>>>()?;
    let path = Path::new(&target.scenario);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?
    } else {
        presets::source(&target.scenario)
            .ok_or_else(|| Error::UnknownPreset(target.scenario.clone()))?
            .to_string()
    };
    let mut s = load_with_overrides(&text, &overrides)?;
    if let Some(seed) = target.seed {
        s.seed = seed;
    }
    Ok(s)
}

fn stem(target: &Target, s: &Scenario) -> String {
    let path = Path::new(&target.scenario);
    if path.is_file() {
        path.file_stem()
            .map(|x| x.to_string_lossy().into_owned())
            .unwrap_or_else(|| s.name.clone())
    } else {
        target.scenario.trim_end_matches(".json").to_string()
    }
}

fn parse_grid(spec: &str) -> Result<Grid> {
    let bad = |m: &str| Error::Sweep(format!("grid `{spec}`: {m}"));
    let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => Ok(Grid::Range {
            start: num(a)?,
            stop: num(b)?,
            step: num(c)?,
        }),
        [list] => Ok(Grid::Values(list.split(',').map(num).collect::<Result<_>>()?)),
        _ => Err(bad("expected a,b,c or START:STOP:STEP")),
    }
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn say(args: std::fmt::Arguments) {
    let _ = writeln!(std::io::stdout(), "{args}");
}

fn report_files(files: &[PathBuf]) {
    for f in files {
        say(format_args!("wrote {}", f.display()));
    }
}

fn experiment(target: &Target, s: &Scenario) -> Result<()> {
    let report = run_experiment(s, s.seed)?;
    for v in &report.verdicts {
        say(format_args!(
            "{} {}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            v.name,
            v.detail
        ));
    }
    let files = write_outputs(
        &target.out,
        &stem(target, s),
        &timestamp(),
        s.seed,
        target.format.into(),
        &report.to_json()?,
        &report.to_csv(),
    )?;
    report_files(&files);
    Ok(())
}

fn execute(command: &Command) -> Result<()> {
    match command {
        Command::Validate(t) => {
            let s = load(t)?;
            say(format_args!("{}", serde_json::to_string_pretty(&s)?));
        }
        Command::Run(t) => {
            let s = load(t)?;
            let report = simulate_with_seed(&s, s.seed)?;
            let files = write_outputs(
                &t.out,
                &stem(t, &s),
                &timestamp(),
                s.seed,
                t.format.into(),
                &report.to_json()?,
                &[report.to_csv()],
            )?;
            report_files(&files);
        }
        Command::Sweep {
            target,
            parameter,
            grid,
        } => {
            let mut s = load(target)?;
            match &mut s.experiment {
                Some(ExperimentSpec::RangeSweep {
                    parameter: p, grid: g, ..
                }) => {
                    if let Some(parameter) = parameter {
                        *p = parameter.clone();
                    }
                    if let Some(grid) = grid {
                        *g = parse_grid(grid)?;
                    }
                }
                _ => {
                    let (Some(parameter), Some(grid)) = (parameter, grid) else {
                        return Err(Error::Sweep(
                            "scenario has no range sweep; pass --parameter and --grid".into(),
                        ));
                    };
                    s.experiment = Some(ExperimentSpec::RangeSweep {
                        link: Default::default(),
                        parameter: parameter.clone(),
                        grid: parse_grid(grid)?,
                        series: None,
                        replications: 3,
                        ber_threshold: 1e-2,
                        mode: Default::default(),
                        expect: Default::default(),
                    });
                }
            }
            experiment(target, &s)?;
        }
        Command::Experiment(t) => {
            let s = load(t)?;
            experiment(t, &s)?;
        }
        Command::ListPresets => {
            for name in presets::names() {
                say(format_args!("{name}"));
            }
        }
    }
    Ok(())
}

fn describe(command: &Command) -> (&'static str, Option<&str>) {
    match command {
        Command::Validate(t) => ("validate", Some(&t.scenario)),
        Command::Run(t) => ("run", Some(&t.scenario)),
        Command::Sweep { target, .. } => ("sweep", Some(&target.scenario)),
        Command::Experiment(t) => ("experiment", Some(&t.scenario)),
        Command::ListPresets => ("list-presets", None),
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code: 0 on success, 1 for invalid input, 2 for failures
/// while running.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            let (sub, target) = describe(&cli.command);
            match target {
                Some(t) => eprintln!("backsim {sub}: {t}: {e}"),
                None => eprintln!("backsim {sub}: {e}"),
            }
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("1,2,3").unwrap(), Grid::Values(vec![1.0, 2.0, 3.0]));
        assert_eq!(
            parse_grid("10:20:5").unwrap(),
            Grid::Range {
                start: 10.0,
                stop: 20.0,
                step: 5.0
            }
        );
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["backsim", "list-presets"]), 0);
        assert_eq!(run(["backsim", "validate", "no-such-thing"]), 1);
        assert_eq!(run(["backsim", "validate", "fig7-outdoor-24", "--set", "sead=1"]), 1);
        assert_eq!(run(["backsim", "frobnicate"]), 1);
    }
}
