use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use curvekit_cli::export::{self, Format, Object};
use curvekit_cli::report::write_atomic;
use curvekit_cli::{curve_tool, run_suite, Config, Overrides, Suite};

/// Exit status for command-line usage errors.
const USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "curvekit", version, about = "Curves on punctured spheres: verification suites, graph export, curve tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its report.
    Verify {
        /// core, farey, rigidset, detectors, supports or all
        suite: Suite,
        /// Upper end of the puncture range swept by the suite.
        #[arg(long)]
        b: Option<usize>,
        /// Weight bound of enumerated curve windows.
        #[arg(long)]
        window: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; certificates go to `<stem>.certs/` next to it.
        #[arg(long)]
        report: Option<PathBuf>,
        /// TOML file with default knobs; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "n-w")]
        n_w: Option<usize>,
        #[arg(long = "max-den")]
        max_den: Option<i64>,
        #[arg(long = "word-len")]
        word_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long = "chain-bound")]
        chain_bound: Option<usize>,
    },
    /// Export a graph as DOT or JSON.
    Export {
        /// rigid-set, farey-ball, octagon or heptagon
        object: Object,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Puncture count of the rigid set.
        #[arg(long, default_value_t = 7)]
        b: usize,
        /// Largest numerator or denominator in the Farey ball.
        #[arg(long, default_value_t = 5)]
        height: i64,
    },
    /// Curve operations on JSON input; `@file` reads an argument from disk.
    Curve {
        #[command(subcommand)]
        op: CurveOp,
    },
}

#[derive(Subcommand)]
enum CurveOp {
    Intersect { a: String, c: String },
    Separation { curve: String },
    Classify { curve: String },
    ApplyWord { word: String, curve: String },
}

fn set_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CURVEKIT_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("CURVEKIT_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("CURVEKIT_THREADS must be at least 1".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Verify { suite, b, window, seed, report, config, n_w, max_den, word_len, samples, chain_bound } => {
            let flags = Overrides { b, window, n_w, max_den, word_len, samples, seed, chain_bound };
            let cfg = Config::load(config.as_deref(), &flags)?;
            let r = run_suite(suite, &cfg);
            eprint!("{}", r.summary());
            match report {
                Some(p) => r.write(&p)?,
                None => print!("{}", r.to_json()),
            }
            Ok(r.exit_code() as u8)
        }
        Command::Export { object, format, out, b, height } => {
            let text = export::render(&export::graph(object, b, height)?, format);
            match out {
                Some(p) => write_atomic(&p, text.as_bytes()).with_context(|| format!("exporting {object}"))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Curve { op } => {
            let arg = curve_tool::read_arg;
            let v = match op {
                CurveOp::Intersect { a, c } => curve_tool::intersect(&arg(&a)?, &arg(&c)?)?,
                CurveOp::Separation { curve } => curve_tool::separation_of(&arg(&curve)?)?,
                CurveOp::Classify { curve } => curve_tool::classify_curve(&arg(&curve)?)?,
                CurveOp::ApplyWord { word, curve } => curve_tool::apply(&arg(&word)?, &arg(&curve)?)?,
            };
            println!("{}", serde_json::to_string(&v)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = set_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
