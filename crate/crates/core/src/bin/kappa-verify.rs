use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use kappa_core::cli::{run, ConfigBuilder};
use kappa_core::error::Error;

/// Verifies the classical, quantum group, quantum algebra and duality
/// layers of a κ-deformation for a given metric.
#[derive(Parser, Debug)]
#[command(name = "kappa-verify", version)]
struct Args {
    /// Run specification file (`key = value` lines).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Suppress the text summary.
    #[arg(long, short)]
    quiet: bool,

    #[arg(long)]
    n: Option<String>,
    /// Matrix literal such as `[[0,1],[1,0]]`, or `minkowski` / `light-cone`.
    #[arg(long)]
    metric: Option<String>,
    /// poincare | weyl
    #[arg(long)]
    deformation: Option<String>,
    /// classical | group | algebra | duality | all
    #[arg(long)]
    layer: Option<String>,
    /// λ-truncation order N.
    #[arg(long)]
    order: Option<String>,
    /// Pairing degree cap d.
    #[arg(long)]
    degree: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Report path; `--json` takes precedence.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn execute(args: Args) -> Result<i32, Error> {
    let mut builder = match &args.spec {
        Some(path) => ConfigBuilder::from_spec(&std::fs::read_to_string(path)?)?,
        None => ConfigBuilder::default(),
    };
    let flags = [
        ("n", &args.n),
        ("metric", &args.metric),
        ("deformation", &args.deformation),
        ("layer", &args.layer),
        ("order", &args.order),
        ("degree", &args.degree),
        ("samples", &args.samples),
        ("seed", &args.seed),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            builder.set(key, v.as_str())?;
        }
    }
    if let Some(p) = &args.output {
        builder.set("output", p.to_string_lossy())?;
    }
    let cfg = builder.build()?;
    let report = run(&cfg)?;
    if !args.quiet {
        print!("{}", report.render_text());
    }
    if let Some(path) = args.json.as_ref().or(cfg.output.as_ref()) {
        std::fs::write(path, report.to_json())?;
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
