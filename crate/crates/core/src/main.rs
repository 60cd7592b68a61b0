//! `page-entropy`: command-line surface for the exact, Monte-Carlo,
//! spectral-density, and asymptotic average-entanglement-entropy machinery.
//!
//! Conventions: stdout carries data (JSON object or CSV with a header row,
//! floats at 17 significant digits), stderr carries logs, error objects, and
//! one run-manifest JSON line per invocation. Deterministic payloads never
//! include timestamps, so fixed-seed runs diff clean. Exit codes: 0 success,
//! 1 numeric-consistency failure, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use page_entropy::asympt::{avg_entropy_expansion, convergence_table, GeometrySpec};
use page_entropy::density::{density_vs_sphere_check, SpectrumFunctional};
use page_entropy::entropy::BernoulliTable;
use page_entropy::error::Error;
use page_entropy::manifest::RunManifest;
use page_entropy::mc::mc_average_entropy;
use page_entropy::page::{
    page_average_entropy_rational, page_consistency, ConsistencyReport, PageParams,
};
use serde_json::{json, Map, Value};
use std::collections::HashMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "page-entropy",
    version,
    about = "Average entanglement entropy of random bipartite pure states: exact, Monte-Carlo, spectral-density, and asymptotic computations",
    after_help = "Seed resolution order: --seed flag, then `seed` in --config, then the \
                  PAGE_ENTROPY_SEED environment variable, then 0."
)]
struct Cli {
    /// Output format for stdout data.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Optional key=value config file mirroring the flags; flags win.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form average entropy with its I1/I2 decomposition and residuals.
    Exact(ExactArgs),
    /// Monte-Carlo estimate over uniform pure states.
    Mc(McArgs),
    /// Simplex quadrature of a spectrum functional against sphere Monte Carlo.
    DensityCheck(DensityArgs),
    /// Exact-vs-asymptote convergence table for line-bundle dimension growth.
    Asympt(AsymptArgs),
    /// Reduced-scale invariant suite; exits non-zero on any failure.
    Selftest,
}

#[derive(Debug, Args)]
struct ExactArgs {
    /// Smaller factor dimension m ≥ 1.
    m: u64,
    /// Larger factor dimension n ≥ m.
    n: u64,
    /// Also emit the exact rational value (requires m·n ≤ 10⁴).
    #[arg(long)]
    rational: bool,
    /// Also emit the entropy converted to bits.
    #[arg(long)]
    bits: bool,
}

#[derive(Debug, Args)]
struct McArgs {
    m: u64,
    n: u64,
    /// Number of samples (≥ 100).
    #[arg(long)]
    samples: Option<u64>,
    /// RNG seed; see the seed resolution order in --help.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; does not affect the numbers, only the wall clock.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Debug, Args)]
struct DensityArgs {
    m: u64,
    n: u64,
    /// Gauss–Legendre nodes per axis (≥ 8).
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Functional of the Schmidt probability vector.
    #[arg(short = 'f', long)]
    functional: Option<String>,
}

#[derive(Debug, Args)]
struct AsymptArgs {
    /// First geometry, `proj:d` or `poly:d:V[,c_{d-1},...,c_0]`.
    #[arg(long)]
    geom1: Option<String>,
    /// Second geometry, same grammar.
    #[arg(long)]
    geom2: Option<String>,
    /// Comma-separated list of bundle powers N.
    #[arg(long = "n-list")]
    n_list: Option<String>,
    /// Euler–Maclaurin order for the per-row expansion columns.
    #[arg(long)]
    order: Option<u32>,
}

/// Key=value configuration file; `#` starts a comment.
fn load_config(path: &std::path::Path) -> Result<HashMap<String, String>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "config {} line {}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn config_parse<T: std::str::FromStr>(
    cfg: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, Error> {
    match cfg.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            Error::Config(format!("config key '{key}': cannot parse value '{raw}'"))
        }),
    }
}

fn seed_from_env() -> Result<Option<u64>, Error> {
    match std::env::var("PAGE_ENTROPY_SEED") {
        Err(_) => Ok(None),
        Ok(raw) => raw.parse::<u64>().map(Some).map_err(|_| {
            Error::Config(format!(
                "PAGE_ENTROPY_SEED is set to '{raw}', which is not a 64-bit unsigned integer"
            ))
        }),
    }
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit_manifest(manifest: &RunManifest) {
    eprintln!("{}", manifest.to_json_line());
}

fn print_json(value: &Value) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{value}").expect("stdout write failed");
}

fn print_csv(header: &[&str], rows: &[Vec<String>]) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", header.join(",")).expect("stdout write failed");
    for row in rows {
        writeln!(out, "{}", row.join(",")).expect("stdout write failed");
    }
}

fn error_exit(err: &Error) -> ExitCode {
    let kind = match err {
        Error::Invalid(_) => "invalid",
        Error::Domain(_) => "domain",
        Error::NoConvergence(_) => "no_convergence",
        Error::Consistency { .. } => "consistency",
        Error::Config(_) => "config",
    };
    let obj = json!({"error": {"kind": kind, "message": err.to_string()}});
    eprintln!("{obj}");
    match err {
        Error::Consistency { .. } | Error::NoConvergence(_) => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run_exact(args: &ExactArgs, cfg: &HashMap<String, String>, format: Format) -> Result<(), Error> {
    let start = Instant::now();
    let rational = args.rational || config_parse::<bool>(cfg, "rational")?.unwrap_or(false);
    let bits = args.bits || config_parse::<bool>(cfg, "bits")?.unwrap_or(false);
    let params = PageParams::new(args.m, args.n)?;
    let report: ConsistencyReport = page_consistency(params)?;
    let rational_str = if rational {
        Some(page_average_entropy_rational(params)?.to_string())
    } else {
        None
    };

    match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!("exact"));
            obj.insert("m".into(), json!(report.m));
            obj.insert("n".into(), json!(report.n));
            obj.insert("entropy".into(), json!(report.entropy));
            obj.insert(
                "entropy_plus_variant".into(),
                json!(report.entropy_plus_variant),
            );
            obj.insert("i1".into(), json!(report.i1));
            obj.insert("i2".into(), json!(report.i2));
            obj.insert("i2_laguerre".into(), json!(report.i2_laguerre));
            obj.insert(
                "residual_identity".into(),
                json!(report.residual_identity),
            );
            obj.insert(
                "residual_laguerre".into(),
                json!(report.residual_laguerre),
            );
            if bits {
                obj.insert(
                    "entropy_bits".into(),
                    json!(report.entropy / std::f64::consts::LN_2),
                );
            }
            if let Some(r) = &rational_str {
                obj.insert("entropy_rational".into(), json!(r));
            }
            print_json(&Value::Object(obj));
        }
        Format::Csv => {
            let mut header = vec![
                "m",
                "n",
                "entropy",
                "entropy_plus_variant",
                "i1",
                "i2",
                "i2_laguerre",
                "residual_identity",
                "residual_laguerre",
            ];
            let mut row = vec![
                report.m.to_string(),
                report.n.to_string(),
                fmt_f64(report.entropy),
                fmt_f64(report.entropy_plus_variant),
                fmt_f64(report.i1),
                fmt_f64(report.i2),
                fmt_f64(report.i2_laguerre),
                fmt_f64(report.residual_identity),
                fmt_f64(report.residual_laguerre),
            ];
            if bits {
                header.push("entropy_bits");
                row.push(fmt_f64(report.entropy / std::f64::consts::LN_2));
            }
            if let Some(r) = &rational_str {
                header.push("entropy_rational");
                row.push(r.clone());
            }
            print_csv(&header, &[row]);
        }
    }
    emit_manifest(&RunManifest::deterministic(
        "exact",
        json!({"m": args.m, "n": args.n, "rational": rational, "bits": bits}),
        start.elapsed().as_secs_f64(),
    ));
    Ok(())
}

fn resolve_seed(flag: Option<u64>, cfg: &HashMap<String, String>) -> Result<u64, Error> {
    Ok(match flag {
        Some(s) => s,
        None => match config_parse::<u64>(cfg, "seed")? {
            Some(s) => s,
            None => seed_from_env()?.unwrap_or(0),
        },
    })
}

fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> Result<T, Error> + Send,
) -> Result<T, Error> {
    match workers {
        None => f(),
        Some(w) => {
            if w == 0 {
                return Err(Error::Config("--workers must be ≥ 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
            pool.install(f)
        }
    }
}

fn run_mc(args: &McArgs, cfg: &HashMap<String, String>, format: Format) -> Result<(), Error> {
    let start = Instant::now();
    let samples = match args.samples {
        Some(s) => s,
        None => config_parse::<u64>(cfg, "samples")?.unwrap_or(100_000),
    };
    let seed = resolve_seed(args.seed, cfg)?;
    let workers = match args.workers {
        Some(w) => Some(w),
        None => config_parse::<usize>(cfg, "workers")?,
    };
    let params = PageParams::new(args.m, args.n)?;
    let est = with_workers(workers, move || mc_average_entropy(params, samples, seed))?;

    match format {
        Format::Json => print_json(&json!({
            "command": "mc",
            "m": args.m,
            "n": args.n,
            "samples": est.samples,
            "seed": est.seed,
            "mean": est.mean,
            "std_error": est.std_error,
        })),
        Format::Csv => print_csv(
            &["m", "n", "samples", "seed", "mean", "std_error"],
            &[vec![
                args.m.to_string(),
                args.n.to_string(),
                est.samples.to_string(),
                est.seed.to_string(),
                fmt_f64(est.mean),
                fmt_f64(est.std_error),
            ]],
        ),
    }
    emit_manifest(&RunManifest::seeded(
        "mc",
        json!({"m": args.m, "n": args.n, "samples": samples, "workers": workers}),
        seed,
        start.elapsed().as_secs_f64(),
    ));
    Ok(())
}

fn run_density(
    args: &DensityArgs,
    cfg: &HashMap<String, String>,
    format: Format,
) -> Result<(), Error> {
    let start = Instant::now();
    let resolution = match args.resolution {
        Some(r) => r,
        None => config_parse::<usize>(cfg, "resolution")?.unwrap_or(48),
    };
    let samples = match args.samples {
        Some(s) => s,
        None => config_parse::<u64>(cfg, "samples")?.unwrap_or(100_000),
    };
    let seed = resolve_seed(args.seed, cfg)?;
    let functional: SpectrumFunctional = match &args.functional {
        Some(name) => name.parse()?,
        None => match cfg.get("functional") {
            Some(name) => name.parse()?,
            None => SpectrumFunctional::Entropy,
        },
    };
    let params = PageParams::new(args.m, args.n)?;
    let report = density_vs_sphere_check(params, functional, samples, seed, resolution)?;

    match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v.as_object_mut()
                .unwrap()
                .insert("command".into(), json!("density-check"));
            print_json(&v);
        }
        Format::Csv => print_csv(
            &[
                "m",
                "n",
                "functional",
                "quadrature",
                "quadrature_convergence",
                "quadrature_converged",
                "mc_mean",
                "mc_std_error",
                "mc_samples",
                "seed",
                "z_score",
                "pass",
            ],
            &[vec![
                report.m.to_string(),
                report.n.to_string(),
                report.functional.clone(),
                fmt_f64(report.quadrature),
                fmt_f64(report.quadrature_convergence),
                report.quadrature_converged.to_string(),
                fmt_f64(report.mc_mean),
                fmt_f64(report.mc_std_error),
                report.mc_samples.to_string(),
                report.seed.to_string(),
                fmt_f64(report.z_score),
                report.pass.to_string(),
            ]],
        ),
    }
    emit_manifest(&RunManifest::seeded(
        "density-check",
        json!({
            "m": args.m, "n": args.n, "resolution": resolution,
            "samples": samples, "functional": functional.name(),
        }),
        seed,
        start.elapsed().as_secs_f64(),
    ));
    if !report.pass {
        return Err(Error::Consistency {
            m: args.m,
            n: args.n,
            residual_identity: report.z_score,
            residual_laguerre: 0.0,
        });
    }
    Ok(())
}

fn parse_n_list(raw: &str) -> Result<Vec<u64>, Error> {
    raw.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("--n-list token '{tok}' is not an integer")))
        })
        .collect()
}

fn run_asympt(args: &AsymptArgs, cfg: &HashMap<String, String>, format: Format) -> Result<(), Error> {
    let start = Instant::now();
    let geom1_raw = args
        .geom1
        .clone()
        .or_else(|| cfg.get("geom1").cloned())
        .ok_or_else(|| Error::Config("--geom1 is required".into()))?;
    let geom2_raw = args
        .geom2
        .clone()
        .or_else(|| cfg.get("geom2").cloned())
        .ok_or_else(|| Error::Config("--geom2 is required".into()))?;
    let n_list_raw = args
        .n_list
        .clone()
        .or_else(|| cfg.get("n-list").cloned())
        .ok_or_else(|| Error::Config("--n-list is required".into()))?;
    let order = match args.order {
        Some(p) => p,
        None => config_parse::<u32>(cfg, "order")?.unwrap_or(2),
    };

    let geom1 = GeometrySpec::parse(&geom1_raw)?;
    let geom2 = GeometrySpec::parse(&geom2_raw)?;
    let n_list = parse_n_list(&n_list_raw)?;
    let table = convergence_table(&geom1, &geom2, &n_list)?;

    if !table.volume_check[0] {
        eprintln!("warning: dim(N)/N^d deviates from the declared volume of --geom1 by more than 10% at the largest N");
    }
    if !table.volume_check[1] {
        eprintln!("warning: dim(N)/N^d deviates from the declared volume of --geom2 by more than 10% at the largest N");
    }

    // Per-row Euler–Maclaurin columns at the requested order (m ≥ 2 rows only).
    let em_for = |m: u64, n_dim: u64| -> Option<(f64, f64)> {
        if m < 2 {
            return None;
        }
        let p = PageParams::new(m, n_dim).ok()?;
        let em = avg_entropy_expansion(p, order).ok()?;
        Some((em.value, em.remainder_bound))
    };

    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| match row {
                    Ok(r) => {
                        let em = em_for(r.m, r.n_dim);
                        json!({
                            "N": r.n_param,
                            "m": r.m,
                            "n": r.n_dim,
                            "exact": r.exact,
                            "asymptote": r.asymptote,
                            "diff": r.diff,
                            "n_diff": r.n_times_diff,
                            "em_value": em.map(|e| e.0),
                            "em_bound": em.map(|e| e.1),
                            "row_swapped": r.row_swapped,
                        })
                    }
                    Err(msg) => json!({"error": msg}),
                })
                .collect();
            print_json(&json!({
                "command": "asympt",
                "geom1": geom1.to_string(),
                "geom2": geom2.to_string(),
                "order": order,
                "volume_check": table.volume_check,
                "rows": rows,
            }));
        }
        Format::Csv => {
            let header = [
                "N",
                "m",
                "n",
                "exact",
                "asymptote",
                "diff",
                "n_diff",
                "em_value",
                "em_bound",
                "row_swapped",
                "error",
            ];
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .zip(&n_list)
                .map(|(row, &n)| match row {
                    Ok(r) => {
                        let em = em_for(r.m, r.n_dim);
                        vec![
                            r.n_param.to_string(),
                            r.m.to_string(),
                            r.n_dim.to_string(),
                            fmt_f64(r.exact),
                            fmt_f64(r.asymptote),
                            fmt_f64(r.diff),
                            fmt_f64(r.n_times_diff),
                            em.map(|e| fmt_f64(e.0)).unwrap_or_default(),
                            em.map(|e| fmt_f64(e.1)).unwrap_or_default(),
                            r.row_swapped.to_string(),
                            String::new(),
                        ]
                    }
                    Err(msg) => {
                        let mut row = vec![n.to_string()];
                        row.extend(std::iter::repeat(String::new()).take(9));
                        row.push(format!("\"{}\"", msg.replace('"', "'")));
                        row
                    }
                })
                .collect();
            print_csv(&header, &rows);
        }
    }
    emit_manifest(&RunManifest::deterministic(
        "asympt",
        json!({
            "geom1": geom1.to_string(), "geom2": geom2.to_string(),
            "n_list": n_list, "order": order,
        }),
        start.elapsed().as_secs_f64(),
    ));
    Ok(())
}

fn run_selftest() -> Result<(), Error> {
    let start = Instant::now();
    let mut failures = 0u32;
    let mut check = |name: &str, outcome: Result<(), String>| match outcome {
        Ok(()) => println!("PASS {name}"),
        Err(msg) => {
            failures += 1;
            println!("FAIL {name}: {msg}");
        }
    };

    check(
        "bernoulli-table-recurrence",
        BernoulliTable::new().self_check().map_err(|e| e.to_string()),
    );

    check("digamma-harmonic-identity", {
        (|| {
            for n in [1u64, 10, 1000, 100_000] {
                let h = page_entropy::entropy::harmonic_range(1, n).map_err(|e| e.to_string())?;
                let psi =
                    page_entropy::entropy::digamma(n as f64 + 1.0).map_err(|e| e.to_string())?;
                let gamma = page_entropy::entropy::EULER_GAMMA;
                if (psi - (h - gamma)).abs() > 1e-12 {
                    return Err(format!("N = {n}"));
                }
            }
            Ok(())
        })()
    });

    check("laguerre-orthogonality", {
        (|| {
            use page_entropy::laguerre::{
                gauss_laguerre_quadrature, laguerre_eval, laguerre_norm, LaguerreParams,
            };
            for alpha in [0.0, 1.0] {
                for j in 0..=4usize {
                    for k in 0..=4usize {
                        let val = gauss_laguerre_quadrature(
                            |x| {
                                laguerre_eval(LaguerreParams { k: j, alpha }, x).unwrap()
                                    * laguerre_eval(LaguerreParams { k, alpha }, x).unwrap()
                            },
                            alpha,
                            64,
                        )
                        .map_err(|e| e.to_string())?;
                        if j == k {
                            let norm = laguerre_norm(k, alpha).map_err(|e| e.to_string())?;
                            if ((val - norm) / norm).abs() > 1e-8 {
                                return Err(format!("diagonal ({k}, α={alpha})"));
                            }
                        } else if val.abs() > 1e-8 {
                            return Err(format!("offdiag ({j},{k}, α={alpha})"));
                        }
                    }
                }
            }
            Ok(())
        })()
    });

    check("page-consistency-grid", {
        (|| {
            for m in 1..=12u64 {
                for n in m..=12 {
                    page_consistency(PageParams::new(m, n).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                }
            }
            Ok(())
        })()
    });

    check("euler-maclaurin-bound", {
        (|| {
            for p in [2u32, 4] {
                for m in 2..=48u64 {
                    for n in (m..=48).step_by(5) {
                        let params = PageParams::new(m, n).map_err(|e| e.to_string())?;
                        let em = avg_entropy_expansion(params, p).map_err(|e| e.to_string())?;
                        let exact = page_entropy::page::page_average_entropy(params)
                            .map_err(|e| e.to_string())?;
                        if (em.value - exact).abs() > em.remainder_bound {
                            return Err(format!("({m},{n}) p={p}"));
                        }
                    }
                }
            }
            Ok(())
        })()
    });

    check("canonical-svd-invariants", {
        (|| {
            use page_entropy::mc::{sample_state, RngStreamSpec};
            use page_entropy::svd::canonical_svd;
            for stream in 0..8u64 {
                let params = PageParams::new(3, 5).map_err(|e| e.to_string())?;
                let a = sample_state(params, RngStreamSpec::new(7, stream));
                let svd = canonical_svd(&a).map_err(|e| e.to_string())?;
                if svd.reconstruction_residual(&a) > 1e-10 {
                    return Err(format!("reconstruction, stream {stream}"));
                }
                if svd.u.unitarity_residual() > 1e-10 || svd.v.unitarity_residual() > 1e-10 {
                    return Err(format!("unitarity, stream {stream}"));
                }
            }
            Ok(())
        })()
    });

    check("mc-closed-form-2x2", {
        (|| {
            let params = PageParams::new(2, 2).map_err(|e| e.to_string())?;
            let est = mc_average_entropy(params, 20_000, 13).map_err(|e| e.to_string())?;
            let z = (est.mean - 1.0 / 3.0).abs() / est.std_error;
            if z > 6.0 {
                return Err(format!("z = {z:.2}"));
            }
            Ok(())
        })()
    });

    check("mc-worker-determinism", {
        (|| {
            let params = PageParams::new(2, 3).map_err(|e| e.to_string())?;
            let run = |threads: usize| {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| e.to_string())?;
                pool.install(|| mc_average_entropy(params, 10_000, 5).map_err(|e| e.to_string()))
            };
            let a = run(1)?;
            let b = run(2)?;
            if a.mean.to_bits() != b.mean.to_bits() {
                return Err("worker counts disagree".into());
            }
            Ok(())
        })()
    });

    check("density-quadrature-2x2", {
        (|| {
            use page_entropy::density::simplex_expectation;
            let params = PageParams::new(2, 2).map_err(|e| e.to_string())?;
            let unit = simplex_expectation(|_| 1.0, params, 32).map_err(|e| e.to_string())?;
            if (unit.value - 1.0).abs() > 1e-12 {
                return Err("normalization".into());
            }
            let ent = simplex_expectation(
                page_entropy::entropy::shannon_entropy_unchecked,
                params,
                48,
            )
            .map_err(|e| e.to_string())?;
            if (ent.value - 1.0 / 3.0).abs() > 1e-6 {
                return Err(format!("entropy {}", ent.value));
            }
            Ok(())
        })()
    });

    check("asymptote-bracket-p1", {
        (|| {
            let p1 = GeometrySpec::projective(1).map_err(|e| e.to_string())?;
            let table = convergence_table(&p1, &p1, &[10, 20, 40, 80, 160, 320])
                .map_err(|e| e.to_string())?;
            for row in &table.rows {
                let row = row.as_ref().map_err(|e| e.clone())?;
                if row.n_times_diff.abs() > 2.0 {
                    return Err(format!("N = {}", row.n_param));
                }
            }
            Ok(())
        })()
    });

    let status = if failures == 0 { "PASS" } else { "FAIL" };
    println!(
        "selftest {status}: {} checks, {failures} failed, {:.1}s",
        10,
        start.elapsed().as_secs_f64()
    );
    emit_manifest(&RunManifest::deterministic(
        "selftest",
        json!({}),
        start.elapsed().as_secs_f64(),
    ));
    if failures > 0 {
        return Err(Error::Consistency {
            m: 0,
            n: 0,
            residual_identity: failures as f64,
            residual_laguerre: 0.0,
        });
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(map) => map,
            Err(e) => return error_exit(&e),
        },
        None => HashMap::new(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.get("format").map(String::as_str) {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => {
                return error_exit(&Error::Config(format!(
                    "config key 'format': expected json or csv, got '{other}'"
                )))
            }
            None => Format::Json,
        },
    };

    let outcome = match &cli.command {
        Command::Exact(args) => run_exact(args, &cfg, format),
        Command::Mc(args) => run_mc(args, &cfg, format),
        Command::DensityCheck(args) => run_density(args, &cfg, format),
        Command::Asympt(args) => run_asympt(args, &cfg, format),
        Command::Selftest => run_selftest(),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => error_exit(&e),
    }
}
