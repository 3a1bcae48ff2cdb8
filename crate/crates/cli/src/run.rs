//! Command execution.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use orthoglide::explorer::{contour_data, singularity_free_volume, SampleRegion, VolumeExplorer};
use orthoglide::qaxis::table1_landmarks;
use orthoglide::synthesis::{design, scale};
use orthoglide::{DesignResultF64, DexterityBound, Error, Geometry, LengthUnit, Strategy};

use crate::args::{CommandConfig, ExploreConfig, Format, SynthesizeConfig, TablesConfig, VerifyConfig};
use crate::report::{self, LandmarkReport, VolumeReport};
use crate::verify::run_checks;
use crate::{parse_args, CliError, RunConfig};

pub const THREADS_VAR: &str = "ORTHOGLIDE_THREADS";

/// Text for stdout plus files to write once the command has succeeded.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub files: Vec<(PathBuf, String)>,
    /// Names of checks that exceeded their tolerance.
    pub failed: Vec<String>,
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match &config.command {
        CommandConfig::Synthesize(c) => synthesize(c),
        CommandConfig::Verify(c) => verify(c),
        CommandConfig::Explore(c) => explore(c),
        CommandConfig::Contour(c) => {
            let csv = report::contour_csv(&contour_data::<f64>(c.grid)?);
            Ok(match &c.output {
                Some(path) => Outcome { files: vec![(path.clone(), csv)], ..Default::default() },
                None => Outcome { stdout: csv, ..Default::default() },
            })
        }
        CommandConfig::Tables(c) => tables(c),
    }
}

/// Runs the designs requested by `c`, skipping inapplicable strategies
/// when all of them were requested.
pub fn synthesize_designs(c: &SynthesizeConfig) -> Result<Vec<DesignResultF64>, CliError> {
    let mut out = Vec::new();
    for &s in &c.strategies {
        match design(s, &c.bound) {
            Ok(d) => out.push(scale(&d, c.cube_edge, c.unit)?),
            Err(Error::NotApplicable(_)) if c.all => {}
            Err(e @ Error::NotApplicable(_)) => return Err(CliError::Usage(e.to_string())),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

fn synthesize(c: &SynthesizeConfig) -> Result<Outcome, CliError> {
    let designs = synthesize_designs(c)?;
    let json = report::designs_json(&designs)?;
    let mut stdout = match c.format {
        Format::Text => {
            let mut s = format!("bound: {}\ncube edge: {}{}\n", c.bound, c.cube_edge, c.unit.suffix());
            s.push_str(&report::designs_text(&designs));
            s
        }
        Format::Json => json.clone(),
        Format::Csv => report::designs_csv(&designs),
    };
    if c.all && designs.len() < c.strategies.len() && c.format == Format::Text {
        stdout.push_str("strategy 3 skipped: it needs a two-sided transmission factor bound\n");
    }
    let files = c.json.iter().map(|p| (p.clone(), json.clone())).collect();
    Ok(Outcome { stdout, files, failed: Vec::new() })
}

fn verify(c: &VerifyConfig) -> Result<Outcome, CliError> {
    let checks = run_checks(c);
    let stdout = match c.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&checks)?),
        _ => {
            let mut s = String::new();
            for k in &checks {
                let _ = writeln!(
                    s,
                    "{} {:<52} worst {:.3e} (tol {:.0e})  {}",
                    if k.passed { "PASS" } else { "FAIL" },
                    k.name,
                    k.worst,
                    k.tolerance,
                    k.detail
                );
            }
            s
        }
    };
    let failed = checks.iter().filter(|k| !k.passed).map(|k| k.name.to_string()).collect();
    Ok(Outcome { stdout, files: Vec::new(), failed })
}

pub fn explore_reports(c: &ExploreConfig) -> Result<Vec<VolumeReport>, CliError> {
    let mut rows = Vec::new();
    if c.volume {
        let ex = VolumeExplorer::<f64>::new(c.rays, c.tol, c.clipping)?;
        for b in &c.bounds {
            rows.push(VolumeReport::rays(&b.label, &ex.dextrous_volume(&b.bound)?));
        }
    }
    if c.singularity_free {
        rows.push(VolumeReport::monte_carlo(&singularity_free_volume::<f64>(c.samples, c.seed, SampleRegion::Ball)?));
    }
    Ok(rows)
}

fn explore(c: &ExploreConfig) -> Result<Outcome, CliError> {
    let rows = explore_reports(c)?;
    let body = match c.format {
        Format::Text => report::volumes_text(&rows),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows)?),
        Format::Csv => report::volumes_csv(&rows),
    };
    Ok(match &c.output {
        Some(path) => Outcome { files: vec![(path.clone(), body)], ..Default::default() },
        None => Outcome { stdout: body, ..Default::default() },
    })
}

fn unit_cube_designs() -> Result<Vec<DesignResultF64>, CliError> {
    synthesize_designs(&SynthesizeConfig {
        cube_edge: 1.0,
        unit: LengthUnit::Normalized,
        bound: DexterityBound::SymmetricFactor(0.5),
        strategies: Strategy::ALL.to_vec(),
        all: true,
        format: Format::Text,
        json: None,
    })
}

fn tables(c: &TablesConfig) -> Result<Outcome, CliError> {
    let landmarks = table1_landmarks(&Geometry::<f64>::unit());
    let designs = unit_cube_designs()?;
    let stdout = match c.format {
        Format::Json => {
            let rows: Vec<LandmarkReport> = landmarks.iter().map(LandmarkReport::from).collect();
            let reports: Vec<report::DesignReport> = designs.iter().map(report::DesignReport::from).collect();
            format!("{}\n", serde_json::to_string_pretty(&serde_json::json!({ "landmarks": rows, "designs": reports }))?)
        }
        _ => format!(
            "Q-axis landmarks (L = 1)\n{}\nUnit cube designs, 0.5 <= mu <= 2\n{}",
            report::landmarks_text(&landmarks),
            report::designs_text(&designs)
        ),
    };
    Ok(Outcome { stdout, ..Default::default() })
}

fn thread_count() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

fn partial_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

/// Writes every file through a temporary sibling; on failure none of the
/// outputs are left behind.
fn write_all(files: &[(PathBuf, String)]) -> Result<(), CliError> {
    let mut staged = Vec::new();
    let result = files.iter().try_for_each(|(path, body)| {
        let tmp = partial_path(path);
        fs::write(&tmp, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
        staged.push((tmp, path.clone()));
        Ok(())
    });
    let result = result.and_then(|()| {
        staged.iter().try_for_each(|(tmp, path)| {
            fs::rename(tmp, path).map_err(|source| CliError::Io { path: path.clone(), source })
        })
    });
    if result.is_err() {
        for (tmp, path) in &staged {
            let _ = fs::remove_file(tmp);
            let _ = fs::remove_file(path);
        }
    }
    result
}

fn run_with_pool(config: &RunConfig) -> Result<Outcome, CliError> {
    match thread_count()? {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?;
            pool.install(|| run(config))
        }
        None => run(config),
    }
}

/// Parses, runs and reports; returns the process exit status.
pub fn execute<S: AsRef<str>>(argv: &[S]) -> i32 {
    let config = match parse_args(argv.iter().map(|s| s.as_ref().to_string())) {
        Ok(c) => c,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            return CliError::Clap(e).exit_code();
        }
        Err(e) => {
            eprintln!("orthoglide: {e}");
            return e.exit_code();
        }
    };
    let outcome = match run_with_pool(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("orthoglide: {e}");
            return e.exit_code();
        }
    };
    print!("{}", outcome.stdout);
    if !outcome.failed.is_empty() {
        let e = CliError::Verification(outcome.failed.join(", "));
        eprintln!("orthoglide: {e}");
        return e.exit_code();
    }
    match write_all(&outcome.files) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("orthoglide: {e}");
            e.exit_code()
        }
    }
}
