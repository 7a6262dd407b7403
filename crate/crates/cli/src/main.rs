use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jacobi_cli::commands::{self, finish, Input};
use jacobi_cli::{Format, Output, RunConfig};

#[derive(Parser, Debug)]
#[command(author, version, about = "Checks Jacobi, Poisson and contact structures given by structure files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(clap::Args, Debug)]
struct Source {
    /// Structure file.
    #[arg(required_unless_present = "example", conflicts_with = "example")]
    file: Option<PathBuf>,
    /// Registry entry to use instead of a file.
    #[arg(long)]
    example: Option<String>,
}

impl Source {
    fn input(&self) -> Input {
        match (&self.file, &self.example) {
            (Some(p), _) => Input::File(p.clone()),
            (None, Some(n)) => Input::Example(n.clone()),
            (None, None) => unreachable!("clap requires one of them"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi identities, contact defect and singular locus of a structure.
    CheckJacobi {
        #[command(flatten)]
        source: Source,
    },
    /// Pushforward relations and preconditions of a contact resolution.
    CheckResolution { source: PathBuf, target: PathBuf, map: PathBuf },
    /// Homogeneous Poisson structure on one more dimension.
    Poissonify {
        #[command(flatten)]
        source: Source,
        /// Slice back at t = 0 and compare with the input.
        #[arg(long)]
        slice_roundtrip: bool,
        /// Write the emitted structure file here instead of printing it.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solves the polynomial family for f and checks the result.
    Family {
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lists the registry, or runs its expected verdicts.
    Examples {
        #[arg(long)]
        run_all: bool,
        #[arg(long)]
        example: Option<String>,
    },
}

fn emit(out: &mut Output, path: Option<&PathBuf>) {
    let Some(path) = path else { return };
    let Some(text) = out.emitted.take() else { return };
    if let Err(e) = fs::write(path, text) {
        out.summary.push(format!("error: {}: {e}", path.display()));
        out.exit_code = out.exit_code.max(2);
    } else {
        out.value("written", path.display().to_string());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let out = match &cli.command {
        Command::CheckJacobi { source } => finish("check-jacobi", commands::check_jacobi(&source.input(), cfg)),
        Command::CheckResolution { source, target, map } => {
            finish("check-resolution", commands::check_resolution(source, target, map, cfg))
        }
        Command::Poissonify { source, slice_roundtrip, output } => {
            let mut out = finish("poissonify", commands::poissonify_cmd(&source.input(), *slice_roundtrip, cfg));
            emit(&mut out, output.as_ref());
            out
        }
        Command::Family { f, n, m, output } => {
            let mut out = finish("family", commands::family(f, *n, *m, cfg));
            emit(&mut out, output.as_ref());
            out
        }
        Command::Examples { run_all, example } => {
            finish("examples", commands::examples(*run_all, example.as_deref(), cfg))
        }
    };
    let mut text = out.render(cfg.format);
    if cfg.format == Format::Text {
        if let Some(file) = &out.emitted {
            text.push_str("---\n");
            text.push_str(file);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    ExitCode::from(out.exit_code)
}
