use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use flagcsc::job::{emit, parse_config, run_batch, Format};
use flagcsc::Error;

/// Classify invariant constant-scalar-curvature Kähler metrics on negative
/// line bundles over flag varieties.
///
/// Exit status: 0 success, 2 configuration error, 3 weight outside the
/// admissible domain, 4 internal inconsistency.
#[derive(Parser, Debug)]
#[command(name = "flagcsc", version)]
struct Cli {
    /// JSON job file (a job object, an array of jobs, or {"jobs": [...]}); `-` reads stdin.
    config: PathBuf,
    /// Output format. `csv` writes the sample table of a single job.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for batch input.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Print wall-clock time to stderr. Reports never contain timing.
    #[arg(long)]
    timing: bool,
}

fn read_config(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn main_inner(cli: &Cli) -> Result<i32, Error> {
    let start = Instant::now();
    let format: Format = cli.format.parse()?;
    let text = read_config(&cli.config)?;
    let (jobs, batch) = parse_config(&text)?;
    if format == Format::Csv && batch {
        return Err(Error::UnsupportedFormat("csv output takes a single job".into()));
    }
    let results = run_batch(&jobs, cli.jobs.max(1));
    let (body, code) = emit(&results, batch, format)?;
    match &cli.out {
        Some(p) => std::fs::write(p, body)?,
        None => print!("{body}"),
    }
    if cli.timing {
        eprintln!("elapsed: {:.3} s over {} job(s)", start.elapsed().as_secs_f64(), jobs.len());
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("flagcsc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
