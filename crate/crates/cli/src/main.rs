//! Benchmark driver for the plaintext–ciphertext matrix product engines.
//!
//! Sweeps a grid of matrix sizes and entry widths, runs the selected engines
//! in one of three modes (count, time, verify), and writes one CSV/JSON row
//! per outcome. Exit codes: 0 success, 1 runtime or verification failure,
//! 2 configuration error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use pcmm_core::bench::{
    emit_csv, emit_json, run_experiment, speedup_summary, Algo, BenchError, ExperimentSpec, Mode,
    ResultRow, Scheme,
};

#[derive(Parser)]
#[command(
    name = "pcmm-bench",
    version,
    about = "Benchmark plaintext-ciphertext matrix multiplication over additively homomorphic encryption"
)]
struct Cli {
    /// Engines to run: "all" or a comma list of schoolbook, strassen, proposed.
    #[arg(long, default_value = "all")]
    algo: String,

    /// Encryption scheme: ec-elgamal or paillier.
    #[arg(long, default_value = "ec-elgamal")]
    scheme: String,

    /// Comma list of square matrix sizes.
    #[arg(long, default_value = "8,16,32,64,128,256,512")]
    n: String,

    /// Comma list of plaintext entry bit-widths.
    #[arg(long, default_value = "4,8,12,16")]
    t: String,

    /// Master seed; every row records the sub-seed derived from it.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Trials per grid cell. Defaults by mode: count 1000, time 10, verify 5.
    #[arg(long)]
    trials: Option<u64>,

    /// Compression levels used by the proposed engine.
    #[arg(long, default_value_t = 4)]
    iters: u32,

    /// count (closed-form/sampled operation counts, no encryption),
    /// time (wall-clock live runs), or verify (decrypt and check live runs).
    #[arg(long, default_value = "count")]
    mode: String,

    /// Write CSV to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also emit JSON: next to --out as <out>.json, or to stdout in place of
    /// the CSV when no --out is given.
    #[arg(long)]
    json: bool,

    /// Live modes refuse matrix sizes above this cap to avoid runaway runs.
    #[arg(long, default_value_t = 64)]
    max_encrypted_n: u64,
}

fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>, BenchError>
where
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.push(
            part.parse::<T>()
                .map_err(|e| BenchError::BadParam(format!("bad {what} entry {part:?}: {e}")))?,
        );
    }
    if out.is_empty() {
        return Err(BenchError::BadParam(format!("empty {what} list")));
    }
    Ok(out)
}

fn parse_algos(raw: &str) -> Result<Vec<Algo>, BenchError> {
    if raw.trim() == "all" {
        return Ok(Algo::ALL.to_vec());
    }
    let mut out: Vec<Algo> = Vec::new();
    for algo in parse_list::<Algo>(raw, "algo")? {
        if !out.contains(&algo) {
            out.push(algo);
        }
    }
    Ok(out)
}

fn write_file(path: &std::path::Path, content: &str) -> Result<(), BenchError> {
    std::fs::write(path, content)
        .map_err(|e| BenchError::BadParam(format!("cannot write {}: {e}", path.display())))
}

fn report(cli: &Cli, spec: &ExperimentSpec, rows: &[ResultRow]) -> Result<(), BenchError> {
    let csv = emit_csv(rows)?;
    let json = if cli.json { Some(emit_json(rows)?) } else { None };
    let table = if spec.algos.len() >= 2 {
        speedup_summary(rows)
    } else {
        None
    };

    match &cli.out {
        Some(path) => {
            write_file(path, &csv)?;
            eprintln!("wrote {} rows to {}", rows.len(), path.display());
            if let Some(json) = json {
                let mut json_path = OsString::from(path.as_os_str());
                json_path.push(".json");
                let json_path = PathBuf::from(json_path);
                write_file(&json_path, &json)?;
                eprintln!("wrote json to {}", json_path.display());
            }
            if let Some(table) = table {
                print!("{table}");
            }
        }
        None => {
            match json {
                Some(json) => println!("{json}"),
                None => print!("{csv}"),
            }
            if let Some(table) = table {
                eprint!("{table}");
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, BenchError> {
    let mode: Mode = cli.mode.parse()?;
    let spec = ExperimentSpec {
        algos: parse_algos(&cli.algo)?,
        scheme: Scheme::from_str(&cli.scheme)?,
        ns: parse_list(&cli.n, "n")?,
        ts: parse_list(&cli.t, "t")?,
        trials: cli.trials.unwrap_or(match mode {
            Mode::Count => 1000,
            Mode::Time => 10,
            Mode::Verify => 5,
        }),
        seed: cli.seed,
        iters: cli.iters,
        mode,
        max_encrypted_n: cli.max_encrypted_n,
    };
    let rows = run_experiment(&spec)?;
    report(cli, &spec, &rows)?;

    if mode == Mode::Verify {
        let failures = rows.iter().filter(|r| r.verified == Some(false)).count();
        eprintln!("verify: {} rows, {} failures", rows.len(), failures);
        if failures > 0 {
            return Ok(1);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                BenchError::BadParam(_)
                | BenchError::StrassenShape(_)
                | BenchError::TooLargeForLiveMode { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
