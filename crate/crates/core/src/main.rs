use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use glider::cli::{exit_code, run, Command, Session};

/// Exact computations with glider fragments over chains of normal subgroups.
#[derive(Parser, Debug)]
#[command(name = "glider", version)]
struct Args {
    #[arg(value_parser = Command::ALL)]
    command: String,
    /// Session file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Write the report as JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict stage-wise commands to one stage.
    #[arg(long)]
    stage: Option<usize>,
    /// Point for `evaluate`, coordinates separated by ':' (e.g. "1:0,1").
    #[arg(long)]
    point: Option<String>,
    /// Run sequentially even when built with the parallel feature.
    #[arg(long)]
    sequential: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.sequential {
        glider::par::set_parallel(false);
    }
    let outcome = Session::load(&args.spec).and_then(|mut s| {
        if args.stage.is_some() {
            s.spec.options.stage = args.stage;
        }
        if let Some(p) = &args.point {
            s.spec.options.point = Some(p.split(':').map(str::to_string).collect());
        }
        run(&s, args.command.parse()?)
    });
    match &outcome {
        Ok(report) => {
            print!("{}", report.to_text());
            if let Some(path) = &args.out {
                if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&outcome) as u8)
}
