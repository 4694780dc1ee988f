use std::fs;
use std::path::{Path, PathBuf};

use newsort_core::harness::{generate_keys, run_sweep, write_sweep, Provenance, SweepConfig};
use newsort_core::regression::{dependence_verdict, polyfit, select_degree, FitError, FitReport, Verdict};
use newsort_core::reproduce::{fixture_check, live_check, paper_table, scale_invariance_check, CheckResult, Status};
use newsort_core::rng::{Distribution, Family};
use newsort_core::sort::{verify_keys, Algorithm};
use newsort_core::KeyMode;

use crate::table::{read_keys, read_xy, write_keys};
use crate::{plot, Failure, Finish};

/// Highest degree `fit --auto` considers.
const AUTO_MAX_DEGREE: usize = 4;

/// Optional cap on parallel trials from `NEWSORT_THREADS`.
fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var("NEWSORT_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure(format!(
                "NEWSORT_THREADS must be a positive integer, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse_params(params: &[String]) -> Result<Vec<(&str, f64)>, Failure> {
    params
        .iter()
        .map(|p| {
            let (name, value) = p
                .split_once('=')
                .ok_or_else(|| Failure(format!("parameter `{p}` is not name=value")))?;
            let v = value
                .trim()
                .parse::<f64>()
                .map_err(|_| Failure(format!("parameter `{name}`: bad number `{value}`")))?;
            Ok((name.trim(), v))
        })
        .collect()
}

pub fn generate(
    dist: &str,
    params: &[String],
    n: usize,
    seed: u64,
    mode: KeyMode,
    out: Option<&Path>,
) -> Result<Finish, Failure> {
    let family: Family = dist.parse()?;
    let dist = Distribution::from_params(family, &parse_params(params)?)?;
    let text = write_keys(&generate_keys(&dist, n, seed, mode), true);
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Finish::Ok)
}

fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or("keys".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.{suffix}.csv"))
}

pub fn sort(
    input: &Path,
    algorithm: Algorithm,
    mode: KeyMode,
    out: Option<PathBuf>,
    stats_out: Option<PathBuf>,
) -> Result<Finish, Failure> {
    let file = read_keys(input, mode)?;
    let (sorted, stats) = algorithm.sort_keys(&file.keys);
    assert!(
        verify_keys(&file.keys, &sorted),
        "{algorithm} returned an unsorted output"
    );
    let out = out.unwrap_or_else(|| sibling(input, "sorted"));
    let stats_out = stats_out.unwrap_or_else(|| sibling(input, "stats"));
    write(&out, &write_keys(&sorted, file.has_header))?;
    write(
        &stats_out,
        &format!(
            "comparisons,writes,max_depth,elapsed_ns\n{},{},{},{}\n",
            stats.comparisons, stats.writes, stats.max_depth, stats.elapsed_ns
        ),
    )?;
    Ok(Finish::Ok)
}

pub fn sweep(config: &Path, out_dir: &Path) -> Result<Finish, Failure> {
    let text = fs::read_to_string(config).map_err(|e| Failure(format!("{}: {e}", config.display())))?;
    let config = SweepConfig::parse(&text).map_err(|e| Failure(format!("{}: {e}", config.display())))?;
    let table = run_sweep(&config, thread_cap()?)?;
    for path in write_sweep(&table, out_dir, &Provenance::capture())? {
        println!("wrote {}", path.display());
    }
    Ok(Finish::Ok)
}

pub fn fit(
    input: &Path,
    xcol: &str,
    ycol: &str,
    degree: Option<usize>,
    report: Option<&Path>,
) -> Result<Finish, Failure> {
    let (xs, ys) = read_xy(input, xcol, ycol)?;
    let flat_constant = FitReport {
        fit: None,
        verdict: Some(Verdict::Flat { r_squared: None }),
    };
    let result = match degree {
        Some(d) => match polyfit(&xs, &ys, d) {
            Ok(fit) => FitReport {
                fit: Some(fit),
                verdict: None,
            },
            Err(FitError::ZeroVariance) => flat_constant,
            Err(e) => return Err(e.into()),
        },
        None => {
            let verdict = dependence_verdict(&xs, &ys, AUTO_MAX_DEGREE)?;
            match select_degree(&xs, &ys, AUTO_MAX_DEGREE) {
                Ok((_, fit)) => FitReport {
                    fit: Some(fit),
                    verdict: Some(verdict),
                },
                Err(FitError::ZeroVariance) => flat_constant,
                Err(e) => return Err(e.into()),
            }
        }
    };
    let text = match report {
        Some(path) if path.extension().is_some_and(|e| e == "csv") => result.to_csv(),
        _ => result.to_text(),
    };
    match report {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    let negative = result.verdict.is_some_and(|v| v.is_flat());
    Ok(if negative { Finish::Negative } else { Finish::Ok })
}

pub fn reproduce(ids: &[usize], seed: u64, out_dir: Option<&Path>, fixture_only: bool) -> Result<Finish, Failure> {
    let threads = if fixture_only { None } else { thread_cap()? };
    let provenance = Provenance::capture();
    let mut results: Vec<CheckResult> = Vec::new();
    for &id in ids {
        let table = paper_table(id)?;
        let mut emit = |r: CheckResult| {
            println!("{r}");
            results.push(r);
        };
        emit(fixture_check(table));
        if fixture_only {
            continue;
        }
        let sweep = run_sweep(&table.sweep_config(seed, KeyMode::Int), threads)?;
        if let Some(dir) = out_dir {
            write_sweep(&sweep, &dir.join(format!("table{id}")), &provenance)?;
        }
        emit(live_check(table, &sweep));
        // theta only scales the variates, so real-mode counts must not move
        if table.family == Family::ContinuousUniform {
            emit(scale_invariance_check(table, seed, threads)?);
        }
    }
    let failed = results.iter().filter(|r| r.status == Status::Fail).count();
    let summary = format!(
        "{} checks: {} pass, {} fail, {} informational",
        results.len(),
        results.iter().filter(|r| r.status == Status::Pass).count(),
        failed,
        results.iter().filter(|r| r.status == Status::Info).count()
    );
    println!("{summary}");
    if let Some(dir) = out_dir {
        let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
        text.push_str(&summary);
        text.push_str(&format!("\nseed={seed}\n\n# provenance\n{}", provenance.to_text()));
        write(&dir.join("report.txt"), &text)?;
    }
    Ok(if failed == 0 { Finish::Ok } else { Finish::Negative })
}

pub fn plot(input: &Path, xcol: &str, ycol: &str, fit: Option<&Path>, out: &Path) -> Result<Finish, Failure> {
    let (xs, ys) = read_xy(input, xcol, ycol)?;
    if xs.is_empty() {
        return Err(Failure(format!("{}: no data rows to plot", input.display())));
    }
    let coefficients = match fit {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            FitReport::parse(&text)?.fit.map(|f| f.coefficients)
        }
        None => None,
    };
    write(out, &plot::render(&xs, &ys, coefficients.as_deref(), xcol, ycol))?;
    Ok(Finish::Ok)
}
