//! Timing harness and CSV emission.
//!
//! Timing wraps the full kernel call (including its output allocation) with
//! a monotonic clock; ns/element divides by the output length. Best-of-reps
//! is the headline number, the median is reported alongside. Speedups are
//! measured against the naive baseline run in the same process with the same
//! rep count: `naive_sliding_sum` for sliding-sum operators, `conv1d_naive`
//! for convolution.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use slidesum_core::baseline::{conv1d_gemm, conv1d_naive};
use slidesum_core::nn::{
    conv1d_gamma, conv1d_sliding, ConvProblem, FilterBank, Padding, SlidingAlgo, WindowSpec,
};
use slidesum_core::sliding::{
    naive_sliding_sum, ping_pong, scalar_input, vector_input, vector_slide, SlidingProblem,
};
use slidesum_core::{Add, Max, Min, Operator, Real, ScanMode};

use crate::gen::{self, checksum, Fnv1a, LeBytes};
use crate::HarnessError;

/// Normative CSV schema; every row the harness writes follows it.
pub const CSV_HEADER: &str =
    "algo,op,kind,N,w,P,dilation,reps,best_ns_per_elem,median_ns_per_elem,speedup_vs_naive,checksum";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[clap(rename_all = "snake_case")]
pub enum Kind {
    I64,
    F32,
    F64,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::I64 => "i64",
            Kind::F32 => "f32",
            Kind::F64 => "f64",
        }
    }

    pub fn elem_size(self) -> usize {
        match self {
            Kind::F32 => 4,
            Kind::I64 | Kind::F64 => 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[clap(rename_all = "snake_case")]
pub enum OpChoice {
    Add,
    Min,
    Max,
    /// Sliding sum over (ratio, value) pairs with the non-commutative
    /// combine; requires `--kind f64`.
    Gamma,
    /// 1-D convolution against a generated filter bank.
    Conv,
}

impl OpChoice {
    pub fn name(self) -> &'static str {
        match self {
            OpChoice::Add => "add",
            OpChoice::Min => "min",
            OpChoice::Max => "max",
            OpChoice::Gamma => "gamma",
            OpChoice::Conv => "conv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[clap(rename_all = "snake_case")]
pub enum AlgoChoice {
    Naive,
    ScalarInput,
    /// Block kernel, sequential within-block combines.
    VectorInput,
    /// Block kernel, tree within-block combines (sliding sums only).
    VectorInputTree,
    PingPong,
    VectorSlide,
    /// Per-window pair-reduction reference (convolution only).
    GammaScan,
    /// im2col + blocked matrix multiply (convolution only).
    Gemm,
}

impl AlgoChoice {
    pub fn name(self) -> &'static str {
        match self {
            AlgoChoice::Naive => "naive",
            AlgoChoice::ScalarInput => "scalar_input",
            AlgoChoice::VectorInput => "vector_input",
            AlgoChoice::VectorInputTree => "vector_input_tree",
            AlgoChoice::PingPong => "ping_pong",
            AlgoChoice::VectorSlide => "vector_slide",
            AlgoChoice::GammaScan => "gamma_scan",
            AlgoChoice::Gemm => "gemm",
        }
    }

    fn fits_sliding(self, w: usize, p: usize) -> bool {
        match self {
            AlgoChoice::Naive | AlgoChoice::VectorSlide => true,
            AlgoChoice::ScalarInput | AlgoChoice::VectorInput | AlgoChoice::VectorInputTree => {
                w < p
            }
            AlgoChoice::PingPong => w <= p,
            AlgoChoice::GammaScan | AlgoChoice::Gemm => false,
        }
    }

    fn fits_conv(self, w: usize, p: usize) -> bool {
        match self {
            AlgoChoice::Naive
            | AlgoChoice::VectorSlide
            | AlgoChoice::GammaScan
            | AlgoChoice::Gemm => true,
            AlgoChoice::ScalarInput | AlgoChoice::VectorInput => w < p,
            AlgoChoice::PingPong => w <= p,
            AlgoChoice::VectorInputTree => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    /// Empty means every algorithm whose preconditions the configuration
    /// satisfies.
    pub algos: Vec<AlgoChoice>,
    pub op: OpChoice,
    pub kind: Kind,
    pub n: usize,
    pub ws: Vec<usize>,
    /// `None` picks the native SIMD width for the element kind.
    pub lanes: Option<usize>,
    pub dilation: usize,
    pub stride: usize,
    pub filters: usize,
    pub reps: usize,
    pub warmup: usize,
    pub seed: u64,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algos: Vec::new(),
            op: OpChoice::Add,
            kind: Kind::F32,
            n: 1 << 22,
            ws: vec![5],
            lanes: None,
            dilation: 1,
            stride: 1,
            filters: 1,
            reps: 5,
            warmup: 1,
            seed: 42,
            input: None,
            out: None,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if self.reps < 1 {
            return bad("reps must be at least 1".into());
        }
        if self.n < 1 || self.dilation < 1 || self.stride < 1 || self.filters < 1 {
            return bad("N, dilation, stride, and filters must be positive".into());
        }
        if self.ws.is_empty() {
            return bad("at least one window width (--w) is required".into());
        }
        if self.ws.iter().any(|&w| w < 1) {
            return bad("window widths must be positive".into());
        }
        if let Some(p) = self.lanes {
            if ![4, 8, 16, 32].contains(&p) {
                return bad(format!("lane width {p} not supported (use 4, 8, 16, or 32)"));
            }
        }
        match self.op {
            OpChoice::Gamma => {
                if self.kind != Kind::F64 {
                    return bad("--op gamma requires --kind f64".into());
                }
                if self.input.is_some() {
                    return bad("--op gamma generates paired data; --input is not supported".into());
                }
            }
            OpChoice::Conv => {
                if self.kind == Kind::I64 {
                    return bad("--op conv requires a float kind (f32 or f64)".into());
                }
            }
            _ => {}
        }
        for &a in &self.algos {
            let ok = match self.op {
                OpChoice::Conv => matches!(
                    a,
                    AlgoChoice::Naive
                        | AlgoChoice::ScalarInput
                        | AlgoChoice::VectorInput
                        | AlgoChoice::PingPong
                        | AlgoChoice::VectorSlide
                        | AlgoChoice::GammaScan
                        | AlgoChoice::Gemm
                ),
                _ => matches!(
                    a,
                    AlgoChoice::Naive
                        | AlgoChoice::ScalarInput
                        | AlgoChoice::VectorInput
                        | AlgoChoice::VectorInputTree
                        | AlgoChoice::PingPong
                        | AlgoChoice::VectorSlide
                ),
            };
            if !ok {
                return bad(format!(
                    "algorithm {} does not apply to --op {}",
                    a.name(),
                    self.op.name()
                ));
            }
        }
        Ok(())
    }

    fn lanes_for(&self) -> usize {
        self.lanes.unwrap_or_else(|| native_lanes(self.kind))
    }
}

/// Native SIMD lane count for the element kind: widest vector register the
/// CPU offers divided by the element size, floored at 4 lanes.
pub fn native_lanes(kind: Kind) -> usize {
    let vector_bytes = {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("avx512f") {
                64
            } else if std::arch::is_x86_feature_detected!("avx2") {
                32
            } else {
                16
            }
        }
        #[cfg(not(target_arch = "x86_64"))]
        {
            16
        }
    };
    (vector_bytes / kind.elem_size()).max(4)
}

/// One CSV row.
#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub algo: &'static str,
    pub op: &'static str,
    pub kind: &'static str,
    pub n: usize,
    pub w: usize,
    pub p: usize,
    pub dilation: usize,
    pub reps: usize,
    pub best_ns_per_elem: f64,
    pub median_ns_per_elem: f64,
    pub speedup_vs_naive: f64,
    pub checksum: u64,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.4},{:.4},{:.4},{:016x}",
            self.algo,
            self.op,
            self.kind,
            self.n,
            self.w,
            self.p,
            self.dilation,
            self.reps,
            self.best_ns_per_elem,
            self.median_ns_per_elem,
            self.speedup_vs_naive,
            self.checksum
        )
    }
}

/// Appends records to `path`, writing the header first when the file is new
/// or empty.
pub fn append_csv(path: &Path, records: &[BenchRecord]) -> Result<(), HarnessError> {
    let io = |source: std::io::Error| HarnessError::Io { path: path.to_owned(), source };
    let need_header = match std::fs::metadata(path) {
        Ok(m) => m.len() == 0,
        Err(_) => true,
    };
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    let mut buf = String::new();
    if need_header {
        buf.push_str(CSV_HEADER);
        buf.push('\n');
    }
    for r in records {
        buf.push_str(&r.csv_row());
        buf.push('\n');
    }
    file.write_all(buf.as_bytes()).map_err(io)
}

/// Times `f` with `warmup` discarded calls then `reps` measured ones.
/// Returns (best ns, median ns, last output); median is the upper middle
/// element for even rep counts.
pub fn time_ns<T>(reps: usize, warmup: usize, mut f: impl FnMut() -> T) -> (f64, f64, T) {
    assert!(reps >= 1);
    for _ in 0..warmup {
        std::hint::black_box(f());
    }
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps {
        let t0 = Instant::now();
        let out = std::hint::black_box(f());
        times.push(t0.elapsed().as_nanos() as f64);
        last = Some(out);
    }
    times.sort_by(f64::total_cmp);
    (times[0], times[reps / 2], last.unwrap())
}

struct Timed {
    best_ns: f64,
    median_ns: f64,
    checksum: u64,
    out_len: usize,
}

/// Runs every configured benchmark cell and appends the rows to the
/// configured CSV file, if any.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, HarnessError> {
    cfg.validate()?;
    let p = cfg.lanes_for();
    let mut records = Vec::new();
    for &w in &cfg.ws {
        let recs = match cfg.op {
            OpChoice::Conv => match cfg.kind {
                Kind::F32 => bench_conv::<f32>(cfg, w, p, &load_or_gen_f32(cfg)?)?,
                Kind::F64 => bench_conv::<f64>(cfg, w, p, &load_or_gen_f64(cfg)?)?,
                Kind::I64 => unreachable!("rejected by validate"),
            },
            OpChoice::Gamma => {
                let xs = gen::gen_pairs(cfg.seed, cfg.n);
                bench_sliding(cfg, w, p, &xs, &slidesum_core::operators::Gamma)?
            }
            OpChoice::Add => match cfg.kind {
                Kind::I64 => bench_sliding(cfg, w, p, &load_or_gen_i64(cfg)?, &Add)?,
                Kind::F32 => bench_sliding(cfg, w, p, &load_or_gen_f32(cfg)?, &Add)?,
                Kind::F64 => bench_sliding(cfg, w, p, &load_or_gen_f64(cfg)?, &Add)?,
            },
            OpChoice::Min => match cfg.kind {
                Kind::I64 => bench_sliding(cfg, w, p, &load_or_gen_i64(cfg)?, &Min)?,
                Kind::F32 => bench_sliding(cfg, w, p, &load_or_gen_f32(cfg)?, &Min)?,
                Kind::F64 => bench_sliding(cfg, w, p, &load_or_gen_f64(cfg)?, &Min)?,
            },
            OpChoice::Max => match cfg.kind {
                Kind::I64 => bench_sliding(cfg, w, p, &load_or_gen_i64(cfg)?, &Max)?,
                Kind::F32 => bench_sliding(cfg, w, p, &load_or_gen_f32(cfg)?, &Max)?,
                Kind::F64 => bench_sliding(cfg, w, p, &load_or_gen_f64(cfg)?, &Max)?,
            },
        };
        records.extend(recs);
    }
    if let Some(out) = &cfg.out {
        append_csv(out, &records)?;
    }
    Ok(records)
}

/// One sweep summary line: convolution speedups at a single filter width.
#[derive(Clone, Copy, Debug)]
pub struct SweepRow {
    pub w: usize,
    pub speedup_sliding: f64,
    pub speedup_gemm: f64,
}

/// Filter-width sweep: for each `w`, times naive convolution, the slide
/// kernel, and the im2col+GEMM path; the CSV gets one slide-kernel record
/// per width, the summary carries both speedup columns.
pub fn run_sweep(cfg: &BenchConfig) -> Result<(Vec<BenchRecord>, Vec<SweepRow>), HarnessError> {
    if cfg.op != OpChoice::Conv {
        return Err(HarnessError::Config("sweep always benchmarks --op conv".into()));
    }
    cfg.validate()?;
    let p = cfg.lanes_for();
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for &w in &cfg.ws {
        let (slide, gemm) = match cfg.kind {
            Kind::F32 => sweep_cell::<f32>(cfg, w, p, &load_or_gen_f32(cfg)?)?,
            Kind::F64 => sweep_cell::<f64>(cfg, w, p, &load_or_gen_f64(cfg)?)?,
            Kind::I64 => unreachable!("rejected by validate"),
        };
        rows.push(SweepRow {
            w,
            speedup_sliding: slide.speedup_vs_naive,
            speedup_gemm: gemm.speedup_vs_naive,
        });
        records.push(slide);
    }
    if let Some(out) = &cfg.out {
        append_csv(out, &records)?;
    }
    Ok((records, rows))
}

fn bench_sliding<T, O>(
    cfg: &BenchConfig,
    w: usize,
    p: usize,
    xs: &[T],
    op: &O,
) -> Result<Vec<BenchRecord>, HarnessError>
where
    T: Copy + LeBytes,
    O: Operator<T>,
{
    let problem =
        SlidingProblem::new(xs, w).map_err(|e| HarnessError::Config(e.to_string()))?;
    let algos = select_algos(cfg, w, p, false)?;
    let (naive_best, naive_median, naive_out) =
        time_ns(cfg.reps, cfg.warmup, || naive_sliding_sum(op, &problem));
    let naive_sum = checksum(&naive_out);
    let out_len = naive_out.len().max(1);
    drop(naive_out);
    let mut records = Vec::new();
    for algo in algos {
        let t = if algo == AlgoChoice::Naive {
            Timed { best_ns: naive_best, median_ns: naive_median, checksum: naive_sum, out_len }
        } else {
            match p {
                4 => sliding_cell::<4, T, O>(algo, op, &problem, cfg)?,
                8 => sliding_cell::<8, T, O>(algo, op, &problem, cfg)?,
                16 => sliding_cell::<16, T, O>(algo, op, &problem, cfg)?,
                32 => sliding_cell::<32, T, O>(algo, op, &problem, cfg)?,
                other => {
                    return Err(HarnessError::Config(format!(
                        "lane width {other} not supported (use 4, 8, 16, or 32)"
                    )))
                }
            }
        };
        records.push(BenchRecord {
            algo: algo.name(),
            op: cfg.op.name(),
            kind: cfg.kind.name(),
            n: cfg.n,
            w,
            p,
            dilation: cfg.dilation,
            reps: cfg.reps,
            best_ns_per_elem: t.best_ns / t.out_len as f64,
            median_ns_per_elem: t.median_ns / t.out_len as f64,
            speedup_vs_naive: naive_best / t.best_ns,
            checksum: t.checksum,
        });
    }
    Ok(records)
}

fn sliding_cell<const P: usize, T, O>(
    algo: AlgoChoice,
    op: &O,
    problem: &SlidingProblem<'_, T>,
    cfg: &BenchConfig,
) -> Result<Timed, HarnessError>
where
    T: Copy + LeBytes,
    O: Operator<T>,
{
    let cfgerr = |e: slidesum_core::sliding::SlidingError| HarnessError::Config(e.to_string());
    let (best_ns, median_ns, out) = match algo {
        AlgoChoice::ScalarInput => {
            scalar_input::<P, _, _>(op, problem).map_err(cfgerr)?;
            time_ns(cfg.reps, cfg.warmup, || scalar_input::<P, _, _>(op, problem).unwrap())
        }
        AlgoChoice::VectorInput => {
            vector_input::<P, _, _>(op, problem, ScanMode::Sequential).map_err(cfgerr)?;
            time_ns(cfg.reps, cfg.warmup, || {
                vector_input::<P, _, _>(op, problem, ScanMode::Sequential).unwrap()
            })
        }
        AlgoChoice::VectorInputTree => {
            vector_input::<P, _, _>(op, problem, ScanMode::Tree).map_err(cfgerr)?;
            time_ns(cfg.reps, cfg.warmup, || {
                vector_input::<P, _, _>(op, problem, ScanMode::Tree).unwrap()
            })
        }
        AlgoChoice::PingPong => {
            ping_pong::<P, _, _>(op, problem).map_err(cfgerr)?;
            time_ns(cfg.reps, cfg.warmup, || ping_pong::<P, _, _>(op, problem).unwrap())
        }
        AlgoChoice::VectorSlide => {
            time_ns(cfg.reps, cfg.warmup, || vector_slide::<P, _, _>(op, problem))
        }
        _ => unreachable!("filtered by select_algos"),
    };
    Ok(Timed {
        best_ns,
        median_ns,
        checksum: checksum(&out),
        out_len: out.len().max(1),
    })
}

fn bench_conv<F>(
    cfg: &BenchConfig,
    w: usize,
    p: usize,
    xs: &[F],
) -> Result<Vec<BenchRecord>, HarnessError>
where
    F: Real + LeBytes + ConvFilters,
{
    let problem = conv_problem::<F>(cfg, w, xs)?;
    let algos = select_algos(cfg, w, p, true)?;
    let (naive_best, naive_median, naive_out) =
        time_ns(cfg.reps, cfg.warmup, || conv1d_naive(&problem.problem()));
    let naive_sum = checksum_nested(&naive_out);
    let out_len = total_len(&naive_out);
    drop(naive_out);
    let mut records = Vec::new();
    for algo in algos {
        let t = if algo == AlgoChoice::Naive {
            Timed { best_ns: naive_best, median_ns: naive_median, checksum: naive_sum, out_len }
        } else {
            conv_cell::<F>(algo, &problem, p, cfg)?
        };
        records.push(BenchRecord {
            algo: algo.name(),
            op: cfg.op.name(),
            kind: cfg.kind.name(),
            n: cfg.n,
            w,
            p,
            dilation: cfg.dilation,
            reps: cfg.reps,
            best_ns_per_elem: t.best_ns / t.out_len as f64,
            median_ns_per_elem: t.median_ns / t.out_len as f64,
            speedup_vs_naive: naive_best / t.best_ns,
            checksum: t.checksum,
        });
    }
    Ok(records)
}

fn sweep_cell<F>(
    cfg: &BenchConfig,
    w: usize,
    p: usize,
    xs: &[F],
) -> Result<(BenchRecord, BenchRecord), HarnessError>
where
    F: Real + LeBytes + ConvFilters,
{
    let problem = conv_problem::<F>(cfg, w, xs)?;
    let (naive_best, _, naive_out) =
        time_ns(cfg.reps, cfg.warmup, || conv1d_naive(&problem.problem()));
    drop(naive_out);
    let cell = |algo: AlgoChoice| -> Result<BenchRecord, HarnessError> {
        let t = conv_cell::<F>(algo, &problem, p, cfg)?;
        Ok(BenchRecord {
            algo: algo.name(),
            op: "conv",
            kind: cfg.kind.name(),
            n: cfg.n,
            w,
            p,
            dilation: cfg.dilation,
            reps: cfg.reps,
            best_ns_per_elem: t.best_ns / t.out_len as f64,
            median_ns_per_elem: t.median_ns / t.out_len as f64,
            speedup_vs_naive: naive_best / t.best_ns,
            checksum: t.checksum,
        })
    };
    Ok((cell(AlgoChoice::VectorSlide)?, cell(AlgoChoice::Gemm)?))
}

/// Owns the generated filter bank so the borrowed `ConvProblem` can be
/// rebuilt per timing call.
struct OwnedConv<'a, F> {
    xs: &'a [F],
    bank: FilterBank<F>,
    spec: WindowSpec,
}

impl<'a, F: Real> OwnedConv<'a, F> {
    fn problem(&self) -> ConvProblem<'_, F> {
        ConvProblem::new(self.xs, &self.bank, self.spec).expect("validated at construction")
    }
}

fn conv_problem<'a, F>(
    cfg: &BenchConfig,
    w: usize,
    xs: &'a [F],
) -> Result<OwnedConv<'a, F>, HarnessError>
where
    F: Real + ConvFilters,
{
    let cfgerr = |e: slidesum_core::nn::NnError| HarnessError::Config(e.to_string());
    let spec = WindowSpec::new(w, cfg.stride, cfg.dilation, Padding::Valid).map_err(cfgerr)?;
    let bank = FilterBank::new(F::gen_filters(cfg.seed ^ 0x5EED, cfg.filters, w)).map_err(cfgerr)?;
    let oc = OwnedConv { xs, bank, spec };
    ConvProblem::new(oc.xs, &oc.bank, oc.spec).map_err(cfgerr)?;
    Ok(oc)
}

fn conv_cell<F>(
    algo: AlgoChoice,
    oc: &OwnedConv<'_, F>,
    p: usize,
    cfg: &BenchConfig,
) -> Result<Timed, HarnessError>
where
    F: Real + LeBytes,
{
    let cfgerr = |e: slidesum_core::nn::NnError| HarnessError::Config(e.to_string());
    let sliding = |algo: SlidingAlgo| -> Result<(f64, f64, Vec<Vec<F>>), HarnessError> {
        let run = |p_const: usize| -> Result<(f64, f64, Vec<Vec<F>>), HarnessError> {
            macro_rules! with_p {
                ($P:literal) => {{
                    conv1d_sliding::<$P, F>(&oc.problem(), algo).map_err(cfgerr)?;
                    Ok(time_ns(cfg.reps, cfg.warmup, || {
                        conv1d_sliding::<$P, F>(&oc.problem(), algo).unwrap()
                    }))
                }};
            }
            match p_const {
                4 => with_p!(4),
                8 => with_p!(8),
                16 => with_p!(16),
                32 => with_p!(32),
                other => Err(HarnessError::Config(format!(
                    "lane width {other} not supported (use 4, 8, 16, or 32)"
                ))),
            }
        };
        run(p)
    };
    let (best_ns, median_ns, out) = match algo {
        AlgoChoice::ScalarInput => sliding(SlidingAlgo::ScalarInput)?,
        AlgoChoice::VectorInput => sliding(SlidingAlgo::VectorInput)?,
        AlgoChoice::PingPong => sliding(SlidingAlgo::PingPong)?,
        AlgoChoice::VectorSlide => sliding(SlidingAlgo::VectorSlide)?,
        AlgoChoice::GammaScan => {
            time_ns(cfg.reps, cfg.warmup, || {
                conv1d_gamma(&oc.problem(), ScanMode::Sequential).unwrap()
            })
        }
        AlgoChoice::Gemm => {
            conv1d_gemm(&oc.problem()).map_err(cfgerr)?;
            time_ns(cfg.reps, cfg.warmup, || conv1d_gemm(&oc.problem()).unwrap())
        }
        _ => unreachable!("filtered by select_algos"),
    };
    Ok(Timed {
        best_ns,
        median_ns,
        checksum: checksum_nested(&out),
        out_len: total_len(&out).max(1),
    })
}

fn select_algos(
    cfg: &BenchConfig,
    w: usize,
    p: usize,
    conv: bool,
) -> Result<Vec<AlgoChoice>, HarnessError> {
    let fits = |a: AlgoChoice| if conv { a.fits_conv(w, p) } else { a.fits_sliding(w, p) };
    if cfg.algos.is_empty() {
        let all = if conv {
            vec![
                AlgoChoice::ScalarInput,
                AlgoChoice::VectorInput,
                AlgoChoice::PingPong,
                AlgoChoice::VectorSlide,
                AlgoChoice::GammaScan,
                AlgoChoice::Gemm,
            ]
        } else {
            vec![
                AlgoChoice::ScalarInput,
                AlgoChoice::VectorInput,
                AlgoChoice::VectorInputTree,
                AlgoChoice::PingPong,
                AlgoChoice::VectorSlide,
            ]
        };
        Ok(all.into_iter().filter(|&a| fits(a)).collect())
    } else {
        for &a in &cfg.algos {
            if !fits(a) {
                return Err(HarnessError::Config(format!(
                    "algorithm {} does not support w={w} at P={p}",
                    a.name()
                )));
            }
        }
        Ok(cfg.algos.clone())
    }
}

fn total_len<F>(out: &[Vec<F>]) -> usize {
    out.iter().map(Vec::len).sum()
}

fn checksum_nested<F: LeBytes>(out: &[Vec<F>]) -> u64 {
    let mut h = Fnv1a::new();
    for row in out {
        for v in row {
            v.feed(&mut h);
        }
    }
    h.finish()
}

/// Per-kind filter generation for convolution benches.
pub trait ConvFilters: Sized {
    fn gen_filters(seed: u64, count: usize, w: usize) -> Vec<Vec<Self>>;
}

impl ConvFilters for f32 {
    fn gen_filters(seed: u64, count: usize, w: usize) -> Vec<Vec<f32>> {
        gen::gen_filters_f32(seed, count, w)
    }
}

impl ConvFilters for f64 {
    fn gen_filters(seed: u64, count: usize, w: usize) -> Vec<Vec<f64>> {
        gen::gen_filters_f64(seed, count, w)
    }
}

fn load_raw<T>(
    path: &Path,
    n: usize,
    elem_size: usize,
    kind: &str,
    decode: impl Fn(&[u8]) -> T,
) -> Result<Vec<T>, HarnessError> {
    let bytes = std::fs::read(path).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })?;
    if bytes.len() != n * elem_size {
        return Err(HarnessError::Config(format!(
            "{}: holds {} bytes but N={n} {kind} needs exactly {}",
            path.display(),
            bytes.len(),
            n * elem_size
        )));
    }
    Ok(bytes.chunks_exact(elem_size).map(decode).collect())
}

pub fn load_or_gen_f32(cfg: &BenchConfig) -> Result<Vec<f32>, HarnessError> {
    match &cfg.input {
        Some(path) => load_raw(path, cfg.n, 4, "f32", |b| {
            f32::from_le_bytes(b.try_into().unwrap())
        }),
        None => Ok(gen::gen_f32(cfg.seed, cfg.n)),
    }
}

pub fn load_or_gen_f64(cfg: &BenchConfig) -> Result<Vec<f64>, HarnessError> {
    match &cfg.input {
        Some(path) => load_raw(path, cfg.n, 8, "f64", |b| {
            f64::from_le_bytes(b.try_into().unwrap())
        }),
        None => Ok(gen::gen_f64(cfg.seed, cfg.n)),
    }
}

pub fn load_or_gen_i64(cfg: &BenchConfig) -> Result<Vec<i64>, HarnessError> {
    match &cfg.input {
        Some(path) => load_raw(path, cfg.n, 8, "i64", |b| {
            i64::from_le_bytes(b.try_into().unwrap())
        }),
        None => Ok(gen::gen_i64(cfg.seed, cfg.n)),
    }
}
