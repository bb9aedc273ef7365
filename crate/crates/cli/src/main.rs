use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slidesum::bench::{self, AlgoChoice, BenchConfig, Kind, OpChoice, CSV_HEADER};
use slidesum::{verify, HarnessError};

/// Sliding-window sum kernels: conformance checks and benchmarks.
///
/// Exit codes: 0 success, 1 verification failure, 2 configuration error,
/// 3 I/O error.
#[derive(Parser)]
#[command(name = "slidesum", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the conformance grids against the brute-force oracles.
    Verify(VerifyArgs),
    /// Time kernels on one configuration; optionally append CSV rows.
    Bench(BenchArgs),
    /// Convolution speedup sweep across filter widths (CSV + stdout table).
    Sweep(SweepArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Deliberately corrupt the slide kernel's output; verification must
    /// then fail (harness self-test).
    #[arg(long)]
    inject_fault: bool,
    /// Print only failures and the final summary.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Algorithms to time (repeatable); defaults to all whose preconditions
    /// the configuration satisfies.
    #[arg(long, value_enum, value_delimiter = ',')]
    algo: Vec<AlgoChoice>,
    #[arg(long, value_enum, default_value = "add")]
    op: OpChoice,
    #[arg(long, value_enum, default_value = "f32")]
    kind: Kind,
    /// Input length.
    #[arg(long, default_value_t = 1 << 22)]
    n: usize,
    /// Window / filter width (repeatable).
    #[arg(long = "w", value_delimiter = ',', default_values_t = [5usize])]
    w: Vec<usize>,
    /// Lane-block width P (4, 8, 16, or 32); defaults to the native SIMD
    /// width for the element kind.
    #[arg(long)]
    lanes: Option<usize>,
    #[arg(long, default_value_t = 1)]
    dilation: usize,
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Number of filters in the generated bank (conv only).
    #[arg(long, default_value_t = 1)]
    filters: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    warmup: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Raw little-endian input file of the selected kind (exactly N
    /// elements); defaults to the seeded generator.
    #[arg(long)]
    input: Option<PathBuf>,
    /// CSV file to append records to.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl BenchArgs {
    fn into_config(self, op_override: Option<OpChoice>) -> BenchConfig {
        BenchConfig {
            algos: self.algo,
            op: op_override.unwrap_or(self.op),
            kind: self.kind,
            n: self.n,
            ws: self.w,
            lanes: self.lanes,
            dilation: self.dilation,
            stride: self.stride,
            filters: self.filters,
            reps: self.reps,
            warmup: self.warmup,
            seed: self.seed,
            input: self.input,
            out: self.out,
        }
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "f32")]
    kind: Kind,
    #[arg(long, default_value_t = 1 << 22)]
    n: usize,
    /// Filter widths to sweep (repeatable).
    #[arg(long = "w", value_delimiter = ',', default_values_t = [3usize, 5, 11, 17, 21, 29, 37, 49, 51])]
    w: Vec<usize>,
    #[arg(long)]
    lanes: Option<usize>,
    #[arg(long, default_value_t = 1)]
    dilation: usize,
    #[arg(long, default_value_t = 1)]
    stride: usize,
    #[arg(long, default_value_t = 1)]
    filters: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    warmup: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    input: Option<PathBuf>,
    /// CSV file to append the per-width records to.
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.cmd {
        Cmd::Verify(args) => {
            let quiet = args.quiet;
            let mut sink = |line: &str| {
                if !quiet || line.starts_with("FAIL") {
                    println!("{line}");
                }
            };
            let report = verify::run_verify(args.inject_fault, &mut sink);
            println!("verify: {} checks, {} failures", report.checked, report.failed);
            if report.failed > 0 {
                return Err(HarnessError::VerifyFailed {
                    failed: report.failed,
                    checked: report.checked,
                });
            }
            Ok(())
        }
        Cmd::Bench(args) => {
            let cfg = args.into_config(None);
            let records = bench::run_bench(&cfg)?;
            println!("{CSV_HEADER}");
            for r in &records {
                println!("{}", r.csv_row());
            }
            Ok(())
        }
        Cmd::Sweep(args) => {
            let cfg = BenchConfig {
                algos: Vec::new(),
                op: OpChoice::Conv,
                kind: args.kind,
                n: args.n,
                ws: args.w,
                lanes: args.lanes,
                dilation: args.dilation,
                stride: args.stride,
                filters: args.filters,
                reps: args.reps,
                warmup: args.warmup,
                seed: args.seed,
                input: args.input,
                out: Some(args.out.clone()),
            };
            let (_, rows) = bench::run_sweep(&cfg)?;
            println!(
                "# sweep op=conv kind={} N={} P={} dilation={} stride={} filters={} reps={} seed={} out={}",
                cfg.kind.name(),
                cfg.n,
                cfg.lanes.unwrap_or_else(|| bench::native_lanes(cfg.kind)),
                cfg.dilation,
                cfg.stride,
                cfg.filters,
                cfg.reps,
                cfg.seed,
                args.out.display(),
            );
            println!("w,speedup_sliding,speedup_gemm");
            for row in &rows {
                println!("{},{:.4},{:.4}", row.w, row.speedup_sliding, row.speedup_gemm);
            }
            Ok(())
        }
    }
}
