//! Command line front end: load a model file, dispatch a subcommand, emit a
//! JSON report (or CSV for the counting streams).
//!
//! Exit codes: 0 success, 2 validation failure, 3 enumeration bound
//! exceeded. Errors are reported as machine-readable JSON on stdout.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use torsor_core::arith::{count_kummer_at, count_quadratic_at, decade_checkpoints, fit_growth};
use torsor_core::catalog::mu_model;
use torsor_core::cohomology::{
    enumerate_cocycles_bounded, h1_classes_bounded, torsor_set, Cocycle,
};
use torsor_core::error::{Error, Result};
use torsor_core::gamma::{g_star, twist};
use torsor_core::heights::{
    invariants_of, malle_index_function, parse_rational, regular_index_function,
    unit_counting_function, CountingFunction, Rational, SaturationClaim,
};
use torsor_core::model::{load_model, spec_from_model, Model};
use torsor_core::structure::{
    build_tower_bounded, is_hypersolvable_bounded, is_semicommutative_bounded,
    lower_bound_exponent_bounded,
};

#[derive(Parser)]
#[command(name = "torsor-lab")]
#[command(about = "Finite group-scheme models: H1, twists, invariants, deciders, counts")]
struct Cli {
    /// Omit the timestamp so identical runs emit identical bytes.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate cocycles and their coboundary classes.
    H1 {
        #[arg(long)]
        model: PathBuf,
    },
    /// Inspect one cocycle's torsor and its connectedness.
    Connected {
        #[arg(long)]
        model: PathBuf,
        /// Index into the h1 cocycle enumeration.
        #[arg(long)]
        cocycle: usize,
    },
    /// Growth invariants of a counting function on the model.
    Invariants {
        #[arg(long)]
        model: PathBuf,
        /// natural | regular | path to a JSON values file
        #[arg(long, default_value = "regular")]
        counting: String,
    },
    /// The certified lower-bound growth exponent.
    Exponent {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value = "regular")]
        counting: String,
    },
    /// Decide semicommutativity and print a witness tower.
    Semicommutative {
        #[arg(long)]
        model: PathBuf,
        /// Also build and verify the reconstruction tower.
        #[arg(long)]
        tower: bool,
    },
    /// Decide the existence of a stable chain with cyclic quotients.
    Hypersolvable {
        #[arg(long)]
        model: PathBuf,
    },
    /// Twist the model by one of its cocycles and emit the twisted model.
    Twist {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        cocycle: usize,
    },
    /// Arithmetic counts over the rationals.
    Count {
        #[command(subcommand)]
        family: CountFamily,
    },
    /// Fit a growth law to a checkpoint CSV.
    Fit {
        #[arg(long)]
        csv: PathBuf,
        /// connected | total
        #[arg(long, default_value = "connected")]
        column: String,
    },
}

#[derive(Subcommand)]
enum CountFamily {
    /// Quadratic classes ordered by absolute discriminant.
    Quadratic {
        /// Height bound; accepts 1e7 style exponents.
        #[arg(long)]
        bound: String,
        /// Write checkpoint counts as CSV (columns B,total,connected).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Kummer classes for the m-th roots of unity, radical height.
    Kummer {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let mut envelope = Map::new();
            envelope.insert("command".into(), json!(command_name(&cli.command)));
            if !cli.no_timestamp {
                let now = SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0);
                envelope.insert("generated_at".into(), json!(now));
            }
            envelope.insert("result".into(), report);
            let text = serde_json::to_string_pretty(&Value::Object(envelope))
                .expect("reports serialize");
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error writing {}: {e}", path.display());
                        std::process::exit(2);
                    }
                }
                None => println!("{text}"),
            }
        }
        Err(error) => {
            let body = json!({
                "error": {
                    "kind": error.kind(),
                    "message": error.to_string(),
                }
            });
            println!("{}", serde_json::to_string_pretty(&body).expect("errors serialize"));
            std::process::exit(error.exit_code());
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::H1 { .. } => "h1",
        Command::Connected { .. } => "connected",
        Command::Invariants { .. } => "invariants",
        Command::Exponent { .. } => "exponent",
        Command::Semicommutative { .. } => "semicommutative",
        Command::Hypersolvable { .. } => "hypersolvable",
        Command::Twist { .. } => "twist",
        Command::Count { .. } => "count",
        Command::Fit { .. } => "fit",
    }
}

/// TORSOR_LAB_BOUND overrides every enumeration bound at once.
fn bound_or(default: u64) -> u64 {
    std::env::var("TORSOR_LAB_BOUND")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::H1 { model } => {
            let model = load_model(model)?;
            let h1 = h1_classes_bounded(
                &model.gg,
                bound_or(torsor_core::cohomology::DEFAULT_COCYCLE_SPACE),
            )?;
            let classes: Vec<Value> = h1
                .classes
                .iter()
                .enumerate()
                .map(|(i, class)| {
                    json!({
                        "index": i,
                        "size": class.len(),
                        "representative": h1.representative(i).values(),
                        "members": class,
                    })
                })
                .collect();
            Ok(json!({
                "cocycles": h1.cocycles.len(),
                "class_count": h1.classes.len(),
                "basepoint_class": h1.basepoint_class,
                "classes": classes,
            }))
        }
        Command::Connected { model, cocycle } => {
            let model = load_model(model)?;
            let x = cocycle_by_index(&model, *cocycle)?;
            let torsor = torsor_set(&model.gg, &x);
            Ok(json!({
                "cocycle": x.values(),
                "connected": torsor.is_transitive(),
                "orbit_sizes": torsor.orbit_sizes(),
            }))
        }
        Command::Invariants { model, counting } => {
            let model = load_model(model)?;
            let c = counting_function(&model, counting)?;
            let inv = invariants_of(&c)?;
            Ok(json!({
                "a": inv.a.to_string(),
                "b_points": inv.b_points,
                "b_orbits": inv.b_orbits,
                "min_value": inv.min_value.to_string(),
                "minimizing_classes": inv.minimizing_points,
            }))
        }
        Command::Exponent { model, counting } => {
            let model = load_model(model)?;
            let c = counting_function(&model, counting)?;
            let bound = bound_or(torsor_core::structure::DEFAULT_DECIDER_BOUND);
            let (a, decomposition) = lower_bound_exponent_bounded(&model.gg, &c, bound)?;
            Ok(json!({
                "exponent": a.to_string(),
                "kernel": decomposition.kernel.members(),
                "complement": decomposition.complement.members(),
            }))
        }
        Command::Semicommutative { model, tower } => {
            let model = load_model(model)?;
            let bound = bound_or(torsor_core::structure::DEFAULT_DECIDER_BOUND);
            let witness = is_semicommutative_bounded(&model.gg, bound)?;
            let mut report = json!({
                "semicommutative": witness.is_some(),
                "witness": witness
                    .as_ref()
                    .map(|w| w.tower.iter().map(|s| s.members().to_vec()).collect::<Vec<_>>()),
            });
            if *tower && witness.is_some() {
                let t = build_tower_bounded(&model.gg, bound)?;
                report["tower_steps"] = json!(t
                    .steps
                    .iter()
                    .map(|step| {
                        json!({
                            "kernel_order": step.kernel.group().order(),
                            "base_order": step.base.group().order(),
                            "collapsed_order": step.collapsed.len(),
                            "result_order": step.result.group().order(),
                        })
                    })
                    .collect::<Vec<_>>());
            }
            Ok(report)
        }
        Command::Hypersolvable { model } => {
            let model = load_model(model)?;
            let bound = bound_or(torsor_core::structure::DEFAULT_DECIDER_BOUND);
            let chain = is_hypersolvable_bounded(&model.gg, bound)?;
            Ok(json!({
                "hypersolvable": chain.is_some(),
                "chain": chain
                    .as_ref()
                    .map(|c| c.chain.iter().map(|s| s.members().to_vec()).collect::<Vec<_>>()),
                "quotient_orders": chain.as_ref().map(|c| c.quotient_orders.clone()),
            }))
        }
        Command::Twist { model, cocycle } => {
            let loaded = load_model(model)?;
            let sigma = cocycle_by_index(&loaded, *cocycle)?;
            let twisted = twist(&loaded.gg, sigma.values())?;
            let star_preserved = g_star(&twisted) == g_star(&loaded.gg);
            let twisted_model = Model {
                gg: twisted,
                group_perms: None,
                places: loaded.places.clone(),
            };
            let spec = spec_from_model(&twisted_model);
            Ok(json!({
                "sigma": sigma.values(),
                "g_star_preserved": star_preserved,
                "twisted_model": serde_json::to_value(&spec)
                    .map_err(|e| Error::Invalid(e.to_string()))?,
            }))
        }
        Command::Count { family } => match family {
            CountFamily::Quadratic { bound, csv } => {
                let bound = parse_bound(bound)?;
                let report = count_quadratic_at(&decade_checkpoints(bound));
                if let Some(path) = csv {
                    write_csv(path, &report)?;
                }
                let claim = quadratic_claim()?;
                Ok(count_report_json("quadratic", None, &report, &claim))
            }
            CountFamily::Kummer { m, bound, csv } => {
                let bound = parse_bound(bound)?;
                let report = count_kummer_at(*m, &decade_checkpoints(bound))?;
                if let Some(path) = csv {
                    write_csv(path, &report)?;
                }
                let claim = kummer_claim(*m)?;
                Ok(count_report_json("kummer", Some(*m), &report, &claim))
            }
        },
        Command::Fit { csv, column } => {
            let samples = read_csv_samples(csv, column)?;
            let fit = fit_growth(&samples)?;
            Ok(json!({
                "alpha_hat": fit.alpha_hat,
                "beta_hat": fit.beta_hat,
                "intercept": fit.intercept,
                "residuals": fit.residuals,
                "samples": fit.samples,
                "column": column,
            }))
        }
    }
}

fn cocycle_by_index(model: &Model, index: usize) -> Result<Cocycle> {
    let cocycles = enumerate_cocycles_bounded(
        &model.gg,
        bound_or(torsor_core::cohomology::DEFAULT_COCYCLE_SPACE),
    )?;
    cocycles.get(index).cloned().ok_or_else(|| {
        Error::Invalid(format!(
            "cocycle index {index} out of range (only {} cocycles)",
            cocycles.len()
        ))
    })
}

fn counting_function(model: &Model, selector: &str) -> Result<CountingFunction> {
    match selector {
        "regular" => regular_index_function(&model.gg),
        "unit" => unit_counting_function(&model.gg),
        "natural" => {
            let perms = model.group_perms.as_ref().ok_or_else(|| {
                Error::Invalid(
                    "the natural counting function needs a model given by \
                     permutation_generators"
                        .into(),
                )
            })?;
            malle_index_function(&model.gg, &perms.perms)
        }
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Invalid(format!("reading counting file {path}: {e}")))?;
            let parsed: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Invalid(format!("counting file {path}: {e}")))?;
            let values = parsed
                .get("values")
                .and_then(|v| v.as_array())
                .ok_or_else(|| {
                    Error::Invalid(format!("counting file {path} needs a \"values\" array"))
                })?;
            let rationals: Vec<Rational> = values
                .iter()
                .map(|v| {
                    v.as_str()
                        .ok_or_else(|| Error::Invalid("counting values must be strings".into()))
                        .and_then(parse_rational)
                })
                .collect::<Result<_>>()?;
            CountingFunction::new(g_star(&model.gg), rationals)
        }
    }
}

fn parse_bound(text: &str) -> Result<u64> {
    if let Ok(n) = text.parse::<u64>() {
        return Ok(n);
    }
    let as_float: f64 = text
        .parse()
        .map_err(|_| Error::Invalid(format!("bad bound {text}")))?;
    if !as_float.is_finite() || as_float < 1.0 || as_float > 1e15 {
        return Err(Error::Invalid(format!("bound {text} out of range")));
    }
    Ok(as_float.round() as u64)
}

fn write_csv(path: &Path, report: &torsor_core::arith::CountReport) -> Result<()> {
    std::fs::write(path, report.to_csv())
        .map_err(|e| Error::Invalid(format!("writing {}: {e}", path.display())))
}

fn read_csv_samples(path: &Path, column: &str) -> Result<Vec<(u64, u64)>> {
    let col = match column {
        "connected" => 2,
        "total" => 1,
        other => return Err(Error::Invalid(format!("unknown column {other}"))),
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("reading {}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.starts_with('B') {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 3 {
            return Err(Error::Invalid(format!("malformed CSV line {}", i + 1)));
        }
        let b = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad B on line {}", i + 1)))?;
        let n = fields[col]
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad count on line {}", i + 1)))?;
        samples.push((b, n));
    }
    Ok(samples)
}

fn count_report_json(
    kind: &str,
    m: Option<u64>,
    report: &torsor_core::arith::CountReport,
    claim: &SaturationClaim,
) -> Value {
    let checkpoints: Vec<Value> = report
        .checkpoints
        .iter()
        .map(|c| json!({"B": c.b, "total": c.total, "connected": c.connected}))
        .collect();
    let mut out = json!({
        "kind": kind,
        "bound": report.bound,
        "total": report.final_total(),
        "connected": report.final_connected(),
        "checkpoints": checkpoints,
        // the expected growth exponents, recorded alongside the counts but
        // never decided here
        "saturation_claim": {
            "alpha": claim.alpha.to_string(),
            "beta": claim.beta.to_string(),
            "decided": false,
        },
    });
    if let Some(m) = m {
        out["m"] = json!(m);
    }
    out
}

/// The claim for the quadratic family: the discriminant height of the
/// order-two constant scheme.
fn quadratic_claim() -> Result<SaturationClaim> {
    let gg = mu_model(2)?;
    let c = regular_index_function(&gg)?;
    Ok(SaturationClaim::from_invariants(&invariants_of(&c)?))
}

/// The claim for the Kummer family: weight one off the basepoint, matching
/// the radical height.
fn kummer_claim(m: u64) -> Result<SaturationClaim> {
    if !matches!(m, 2 | 3 | 5) {
        return Err(Error::UnsupportedModulus { m });
    }
    let gg = mu_model(m as usize)?;
    let c = unit_counting_function(&gg)?;
    Ok(SaturationClaim::from_invariants(&invariants_of(&c)?))
}
