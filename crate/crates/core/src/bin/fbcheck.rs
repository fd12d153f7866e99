use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use freebound::catalog;
use freebound::config::RunConfig;
use freebound::error::Error;
use freebound::report::{render, Format, Report};
use freebound::suites::{refine, verify_entry};

#[derive(Parser)]
#[command(name = "fbcheck", about = "Numerical checks for free-boundary CMC hypersurfaces in space-form balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites; exit 1 if any applicable check fails.
    Verify(RunArgs),
    /// Like verify, but always exits 0 once the report is written.
    Report(RunArgs),
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Rerun one check over a resolution ladder and print observed orders.
    /// Takes exactly one `--entry`.
    Refine {
        #[arg(long)]
        check: String,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256")]
        resolutions: Vec<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, default_value = "text")]
        format: String,
    },
}

#[derive(Args, Clone, Default)]
struct RunArgs {
    /// Catalog entry (repeatable or comma-separated); default: all.
    #[arg(long, value_delimiter = ',')]
    entry: Vec<String>,
    /// Suite (repeatable or comma-separated); default: all.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long = "grid-3d")]
    grid_3d: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long = "tol-scale")]
    tol_scale: Option<f64>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<String>,
    /// Flat key=value file with the same keys; flags win.
    #[arg(long)]
    config: Option<String>,
}

impl RunArgs {
    fn resolve(&self, default_format: Format) -> Result<RunConfig, Error> {
        let mut cfg = RunConfig {
            format: default_format,
            ..RunConfig::default()
        };
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read config '{path}': {e}")))?;
            cfg.apply(&RunConfig::parse_file(&text)?)?;
        }
        let mut set = |key: &str, value: Option<String>| match value {
            Some(v) => cfg.set(key, &v),
            None => Ok(()),
        };
        let join = |v: &[String]| (!v.is_empty()).then(|| v.join(","));
        set("entry", join(&self.entry))?;
        set("suite", join(&self.suite))?;
        set("resolution", self.resolution.map(|v| v.to_string()))?;
        set("grid-3d", self.grid_3d.map(|v| v.to_string()))?;
        set("order", self.order.map(|v| v.to_string()))?;
        set("tol-scale", self.tol_scale.map(|v| v.to_string()))?;
        set("format", self.format.clone())?;
        set("seed", self.seed.map(|v| v.to_string()))?;
        set("out", self.out.clone())?;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Usage(format!("cannot write '{path}': {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_suites(cfg: &RunConfig) -> Result<Vec<Report>, Error> {
    let ids = if cfg.entries.is_empty() {
        catalog::entry_ids()
    } else {
        cfg.entries.clone()
    };
    let entries = ids.iter().map(|id| catalog::entry(id)).collect::<Result<Vec<_>, _>>()?;
    Ok(entries.par_iter().map(|e| verify_entry(e, cfg)).collect())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Verify(args) => {
            let cfg = args.resolve(Format::Text)?;
            let reports = run_suites(&cfg)?;
            emit(&render(&reports, cfg.format), cfg.out.as_deref())?;
            let ok = reports.iter().all(Report::passed);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Report(args) => {
            let cfg = args.resolve(Format::Json)?;
            let reports = run_suites(&cfg)?;
            emit(&render(&reports, cfg.format), cfg.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog {
            action: CatalogAction::List { format },
        } => {
            let entries = catalog::all_entries()?;
            let text = match Format::parse(&format)? {
                Format::Json => {
                    let rows: Vec<_> = entries
                        .iter()
                        .map(|e| serde_json::json!({"id": e.id, "n": e.n(), "description": e.description, "meta": e.meta}))
                        .collect();
                    serde_json::to_string_pretty(&rows).expect("catalog serializes") + "\n"
                }
                Format::Csv => {
                    let mut s = String::from("id,n,c,description\n");
                    for e in &entries {
                        s += &format!("{},{},{},\"{}\"\n", e.id, e.n(), e.model().curvature(), e.description);
                    }
                    s
                }
                Format::Text => entries
                    .iter()
                    .map(|e| format!("{:<24} {}\n", e.id, e.description))
                    .collect(),
            };
            emit(&text, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Refine {
            check,
            resolutions,
            run,
        } => {
            if resolutions.iter().any(|&r| r < 16) {
                return Err(Error::Usage("resolution must be at least 16".into()));
            }
            let cfg = run.resolve(Format::Text)?;
            let [entry] = cfg.entries.as_slice() else {
                return Err(Error::Usage("refine needs exactly one --entry".into()));
            };
            let e = catalog::entry(entry)?;
            let rows = refine(&e, &check, &resolutions, &cfg)?;
            let text = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "entry": entry, "check": check, "rows": rows
                }))
                .expect("rows serialize")
                    + "\n",
                Format::Csv => {
                    let mut s = String::from("resolution,value,order\n");
                    for r in &rows {
                        s += &format!("{},{:e},{}\n", r.resolution, r.value, r.order.map_or(String::new(), |o| format!("{o:.4}")));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("{entry} {check}\n");
                    for r in &rows {
                        s += &format!(
                            "  {:>5} {:>12.4e} {}\n",
                            r.resolution,
                            r.value,
                            r.order.map_or(String::from("     -"), |o| format!("{o:6.3}"))
                        );
                    }
                    s
                }
            };
            emit(&text, cfg.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(Error::Usage(msg)) => {
            eprintln!("fbcheck: {msg}");
            ExitCode::from(2)
        }
        Err(e) if e.is_hypothesis() => {
            eprintln!("fbcheck: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("fbcheck: {e}");
            ExitCode::from(1)
        }
    }
}
