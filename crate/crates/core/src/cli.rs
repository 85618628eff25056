//! Commands behind the `qtcat` binary.
//!
//! [`execute`] turns a parsed [`RunConfig`] into an [`Outcome`] without
//! touching the terminal, so commands can be tested in-process; [`run`]
//! writes the outcome and returns the exit code.
//!
//! Exit codes: 0 ok, 1 a requested check failed, 2 usage or invalid input,
//! 3 enumeration budget exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use crate::continuous::ContinuousPath;
use crate::error::{Error, Result};
use crate::measure::{
    convergence_report, density_n4_cell_integrals, ehrhart_check, exact_density_n4,
    polytope_volume, sample_area_polytope, MapChoice,
};
use crate::poly::{qt_catalan_area_bounce, qt_catalan_dinv_area, PolynomialDocument};
use crate::verify::{run_checks, Kernels, Level};
use crate::DEFAULT_BUDGET;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Grid resolution written as `WxH`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub cells_x: usize,
    pub cells_y: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (w, h) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected WxH, got {s:?}"))?;
        let parse = |v: &str| match v.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(format!("grid sizes must be positive integers, got {s:?}")),
        };
        Ok(Grid {
            cells_x: parse(w)?,
            cells_y: parse(h)?,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qtcat",
    version,
    about = "q,t-Catalan polynomials, continuous Dyck paths and their measures"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "CATALAN_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Maximum number of paths or lattice points to visit.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Both q,t-Catalan polynomials of C_n^(m) with agreement and symmetry verdicts.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Statistics of a continuous Dyck path given by its area vector, e.g. "0,3/5,1.2,0.5".
    Stats {
        #[arg(allow_hyphen_values = true)]
        area_vector: String,
        /// Also report normalized m-statistics (the path must be 1/m-integral).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: Option<u32>,
    },
    /// Monte Carlo histogram of the q,t-Catalan measure.
    Measure {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value = "60x60")]
        grid: Grid,
        #[arg(long, default_value = "dinv-area")]
        map: MapChoice,
    },
    /// Distances from normalized discrete measures to the limit measure.
    Converge {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, required = true, value_delimiter = ',', num_args = 1..,
              value_parser = clap::value_parser!(u32).range(1..))]
        m_list: Vec<u32>,
        /// Monte Carlo samples for the limit measure when no exact density is known.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value = "60x60")]
        grid: Grid,
    },
    /// Lattice points of A_n with coordinates in (1/m)Z against C_n^(m).
    Ehrhart {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Worked examples and oracle equivalences.
    Verify {
        #[arg(default_value = "fast")]
        level: Level,
    },
}

/// What a command produced. `main` is written to `--out` when given and to
/// stdout otherwise; `side` goes to stdout when `main` went to a file and to
/// stderr otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub main: String,
    pub side: String,
    pub passed: bool,
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct PolyOutput {
    n: u32,
    m: u32,
    dinv_area: PolynomialDocument,
    area_bounce: PolynomialDocument,
    definitions_agree: bool,
    symmetric: bool,
    value_at_1_1: String,
}

pub fn cmd_poly(n: u32, m: u32, format: Format, budget: u64) -> Result<Outcome> {
    let da = qt_catalan_dinv_area(n as usize, m, budget)?;
    let ab = qt_catalan_area_bounce(n as usize, m, budget)?;
    let agree = da == ab;
    let symmetric = da.is_symmetric();
    let verdict = PolyOutput {
        n,
        m,
        dinv_area: da.document(n, m),
        area_bounce: ab.document(n, m),
        definitions_agree: agree,
        symmetric,
        value_at_1_1: da.eval_one().to_string(),
    };
    let (main, side) = match format {
        Format::Json => (to_json(&verdict), String::new()),
        Format::Csv => (
            da.to_csv(),
            format!(
                "definitions_agree={agree} symmetric={symmetric} value_at_1_1={}\n",
                verdict.value_at_1_1
            ),
        ),
    };
    Ok(Outcome {
        main,
        side,
        passed: agree && symmetric,
    })
}

#[derive(Serialize)]
struct TransformOutput {
    area_vector: Vec<String>,
    area: String,
    dinv: String,
    bounce: String,
}

#[derive(Serialize)]
struct NormalizedOutput {
    m: u32,
    area: String,
    dinv: String,
    bounce: String,
    bounce_vector: Vec<String>,
}

#[derive(Serialize)]
struct StatsOutput {
    area_vector: Vec<String>,
    area: String,
    dinv: String,
    bounce_vector: Vec<String>,
    bounce: String,
    transform: TransformOutput,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<NormalizedOutput>,
}

pub fn cmd_stats(area_vector: &str, m: Option<u32>) -> Result<Outcome> {
    let p = ContinuousPath::parse(area_vector)?;
    let b = p.bounce_vector()?;
    let t = p.transform()?;
    let normalized = match m {
        Some(m) => {
            let s = p.normalized_m_stats(m)?;
            Some(NormalizedOutput {
                m,
                area: s.area.to_string(),
                dinv: s.dinv.to_string(),
                bounce: s.bounce.to_string(),
                bounce_vector: rationals(&p.normalized_m_bounce_vector(m)?),
            })
        }
        None => None,
    };
    let out = StatsOutput {
        area_vector: rationals(p.area_vector()),
        area: p.area().to_string(),
        dinv: p.dinv().to_string(),
        bounce_vector: rationals(b.values()),
        bounce: b.sum().to_string(),
        transform: TransformOutput {
            area_vector: rationals(t.area_vector()),
            area: t.area().to_string(),
            dinv: t.dinv().to_string(),
            bounce: t.bounce()?.to_string(),
        },
        normalized,
    };
    Ok(Outcome {
        main: to_json(&out),
        side: String::new(),
        passed: true,
    })
}

#[derive(Serialize)]
struct MeasureSummary {
    n: u32,
    samples: u64,
    seed: u64,
    map: MapChoice,
    grid: [usize; 2],
    /// `vol(A_n)` as an exact rational; every sample carries `vol / samples`.
    volume: String,
    total_weight: f64,
    binned_weight: f64,
    symmetry_deviation: f64,
    acceptance_ratio: f64,
    /// L1 distance to the binned exact density, height 4 only.
    l1_to_exact: Option<f64>,
    density_at_center: Option<f64>,
}

pub fn cmd_measure(n: u32, samples: u64, seed: u64, grid: Grid, map: MapChoice) -> Result<Outcome> {
    let count = usize::try_from(samples).map_err(|_| Error::Argument("too many samples".into()))?;
    let batch = sample_area_polytope(n as usize, count, seed)?;
    let h = batch.pushforward(map, grid.cells_x, grid.cells_y);
    let symmetry_deviation = if grid.cells_x == grid.cells_y {
        h.symmetry_deviation()
    } else {
        f64::NAN
    };
    let (l1_to_exact, density_at_center) = if n == 4 {
        let exact = density_n4_cell_integrals(h.bounds, grid.cells_x, grid.cells_y);
        (
            Some(h.l1_distance(&exact)),
            Some(exact_density_n4(2.0, 2.0)),
        )
    } else {
        (None, None)
    };
    let summary = MeasureSummary {
        n,
        samples,
        seed,
        map,
        grid: [grid.cells_x, grid.cells_y],
        volume: polytope_volume(n).to_string(),
        total_weight: h.total_weight,
        binned_weight: h.binned_weight(),
        symmetry_deviation,
        acceptance_ratio: batch.acceptance_ratio(),
        l1_to_exact,
        density_at_center,
    };
    Ok(Outcome {
        main: h.to_csv(),
        side: to_json(&summary),
        passed: true,
    })
}

pub fn cmd_converge(
    n: u32,
    m_list: &[u32],
    samples: u64,
    seed: u64,
    grid: Grid,
    budget: u64,
) -> Result<Outcome> {
    let count = usize::try_from(samples).map_err(|_| Error::Argument("too many samples".into()))?;
    let rep = convergence_report(n, m_list, grid.cells_x, grid.cells_y, count, seed, budget)?;
    Ok(Outcome {
        main: rep.to_json() + "\n",
        side: String::new(),
        passed: true,
    })
}

pub fn cmd_ehrhart(n: u32, m: u32, budget: u64) -> Result<Outcome> {
    let rep = ehrhart_check(n, m, budget)?;
    Ok(Outcome {
        main: to_json(&rep),
        side: String::new(),
        passed: rep.pass,
    })
}

pub fn cmd_verify(level: Level) -> Outcome {
    let rep = run_checks(level, &Kernels::default());
    Outcome {
        main: rep.log(),
        side: String::new(),
        passed: rep.passed(),
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let json_only = |name: &str| -> Result<()> {
        if cfg.format == Format::Csv {
            return Err(Error::Argument(format!("{name} only writes JSON")));
        }
        Ok(())
    };
    match &cfg.command {
        Command::Poly { n, m } => cmd_poly(*n, *m, cfg.format, cfg.budget),
        Command::Stats { area_vector, m } => {
            json_only("stats")?;
            cmd_stats(area_vector, *m)
        }
        Command::Measure {
            n,
            samples,
            grid,
            map,
        } => cmd_measure(*n, *samples, cfg.seed, *grid, *map),
        Command::Converge {
            n,
            m_list,
            samples,
            grid,
        } => {
            json_only("converge")?;
            cmd_converge(*n, m_list, *samples, cfg.seed, *grid, cfg.budget)
        }
        Command::Ehrhart { n, m } => {
            json_only("ehrhart")?;
            cmd_ehrhart(*n, *m, cfg.budget)
        }
        Command::Verify { level } => Ok(cmd_verify(*level)),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Runs a parsed command, writes its output and returns the exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    let outcome = match execute(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let written = match &cfg.out {
        Some(path) => fs::write(path, &outcome.main)
            .and_then(|_| stdout.lock().write_all(outcome.side.as_bytes())),
        None => stdout
            .lock()
            .write_all(outcome.main.as_bytes())
            .and_then(|_| stderr.lock().write_all(outcome.side.as_bytes())),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if outcome.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("qtcat").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(
            "60x40".parse::<Grid>().unwrap(),
            Grid {
                cells_x: 60,
                cells_y: 40
            }
        );
        assert!("60".parse::<Grid>().is_err());
        assert!("0x5".parse::<Grid>().is_err());
    }

    #[test]
    fn poly_small_cases() {
        let out = execute(&parse(&["poly", "--n", "2"])).unwrap();
        assert!(out.passed);
        let v: serde_json::Value = serde_json::from_str(&out.main).unwrap();
        assert_eq!(v["value_at_1_1"], "2");
        assert_eq!(v["symmetric"], true);
        let out = execute(&parse(&["poly", "--n", "4", "--format", "csv"])).unwrap();
        assert!(out.side.contains("value_at_1_1=14"));
    }

    #[test]
    fn poly_budget() {
        let err =
            execute(&parse(&["poly", "--n", "6", "--m", "3", "--budget", "100"])).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_BUDGET);
    }

    #[test]
    fn stats_invalid_input_names_inequality() {
        let err = execute(&parse(&["stats", "0,2,0"])).unwrap_err();
        assert_eq!(exit_code(&err), EXIT_USAGE);
        assert!(err.to_string().contains("a_1 <= a_0 + 1 violated"), "{err}");
    }

    #[test]
    fn stats_with_m() {
        let out = execute(&parse(&["stats", "0,1,1", "--m", "3"])).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.main).unwrap();
        assert_eq!(v["normalized"]["area"], "2");
        assert_eq!(v["normalized"]["dinv"], "1");
        assert_eq!(v["normalized"]["bounce"], "2/3");
        assert!(execute(&parse(&["stats", "0,0.5", "--m", "3"])).is_err());
    }

    #[test]
    fn json_only_commands_reject_csv() {
        assert!(execute(&parse(&["stats", "0,1", "--format", "csv"])).is_err());
    }

    #[test]
    fn missing_m_list_is_a_usage_error() {
        let err = RunConfig::try_parse_from(["qtcat", "converge", "--n", "4"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn measure_n2_segment() {
        let out = execute(&parse(&[
            "measure",
            "--n",
            "2",
            "--samples",
            "1000",
            "--grid",
            "10x10",
        ]))
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.side).unwrap();
        assert!((v["binned_weight"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(v["volume"], "1");
    }
}
