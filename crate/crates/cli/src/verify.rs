//! Conformance grids: every fast path against its brute-force oracle.
//!
//! Each grid prints one line per cell through the caller's sink and tallies
//! into a [`VerifyReport`]; the binary turns a nonzero failure count into
//! exit code 1. The grids are also what the acceptance tests call, so the
//! CLI and the test suite cannot drift apart.
//!
//! Tolerances: integer and min/max comparisons are exact. Float sums use a
//! relative bound (1e-5 for f32, 1e-12 for f64) with a small absolute floor
//! to absorb cancellation near zero (1e-5 / 1e-13, scaled up where the pair
//! operator's ratio scaling warrants it). Filter coefficients for the
//! convolution grid are drawn away from the denormal range, with small
//! values squashed to exact zero: that keeps the pair-reduction path well
//! conditioned while still exercising its zero-masking, and matches the
//! documented conditioning contract of `dot_scan`.

use slidesum_core::baseline::{conv1d_gemm, conv1d_naive, im2col};
use slidesum_core::nn::{
    avg_pool, conv1d_gamma, conv1d_sliding, dot_scan, max_pool, min_pool, ConvProblem,
    FilterBank, Padding, SlidingAlgo, WindowSpec,
};
use slidesum_core::operators::Gamma;
use slidesum_core::sliding::{
    naive_sliding_sum, ping_pong, scalar_input, vector_input, vector_slide, SlidingProblem,
};
use slidesum_core::tolerance::within;
use slidesum_core::{Add, GammaPair, Max, Min, Operator, Real, ScanMode};

use crate::gen::{self, SplitMix64};

pub struct VerifyReport {
    pub checked: usize,
    pub failed: usize,
}

/// Tallies results and forwards one line per cell to the sink.
pub struct Reporter<'a> {
    checked: usize,
    failed: usize,
    sink: &'a mut dyn FnMut(&str),
}

impl<'a> Reporter<'a> {
    pub fn new(sink: &'a mut dyn FnMut(&str)) -> Self {
        Reporter { checked: 0, failed: 0, sink }
    }

    fn pass(&mut self, line: &str) {
        self.checked += 1;
        (self.sink)(&format!("ok   {line}"));
    }

    fn fail(&mut self, line: &str) {
        self.checked += 1;
        self.failed += 1;
        (self.sink)(&format!("FAIL {line}"));
    }

    fn check(&mut self, result: Result<String, String>) {
        match result {
            Ok(line) => self.pass(&line),
            Err(line) => self.fail(&line),
        }
    }

    pub fn report(self) -> VerifyReport {
        VerifyReport { checked: self.checked, failed: self.failed }
    }
}

/// Runs every grid. `inject_fault` corrupts the slide kernel's output in the
/// sliding grid (drops the first element, appends identity: the signature of
/// an off-by-one slide offset) so a correct harness must report failures;
/// it exists to prove the harness can fail.
pub fn run_verify(inject_fault: bool, sink: &mut dyn FnMut(&str)) -> VerifyReport {
    let mut r = Reporter::new(sink);
    sliding_grid(inject_fault, &mut r);
    dot_grid(10_000, &mut r);
    nn_grid(&mut r);
    pooling_grid(&mut r);
    footprint_grid(&mut r);
    r.report()
}

fn cell_seed(tag: u64, n: usize, w: usize, p: usize) -> u64 {
    (tag << 48) ^ ((p as u64) << 32) ^ ((w as u64) << 20) ^ n as u64
}

/// Oracle equivalence for all four algorithms over
/// operators {add,min,max: i64; add: f32, f64; pair: f64}
/// x N in {w, w+1, 37, 1024, 100003} x w in {1,2,3,5,7,P-1,P,P+1,2P+3}
/// x P in {4,8,16}, preconditions permitting.
pub fn sliding_grid(inject_fault: bool, r: &mut Reporter<'_>) {
    for p in [4usize, 8, 16] {
        let mut ws = vec![1, 2, 3, 5, 7, p - 1, p, p + 1, 2 * p + 3];
        ws.sort_unstable();
        ws.dedup();
        for w in ws {
            let mut ns = vec![w, w + 1, 37, 1024, 100_003];
            ns.sort_unstable();
            ns.dedup();
            ns.retain(|&n| n >= w);
            for n in ns {
                match p {
                    4 => sliding_cells::<4>(inject_fault, r, n, w),
                    8 => sliding_cells::<8>(inject_fault, r, n, w),
                    16 => sliding_cells::<16>(inject_fault, r, n, w),
                    _ => unreachable!(),
                }
            }
        }
    }
}

fn sliding_cells<const P: usize>(inject: bool, r: &mut Reporter<'_>, n: usize, w: usize) {
    let xi = gen::gen_i64(cell_seed(1, n, w, P), n);
    sliding_check::<P, _, _>(r, &Add, "add", "i64", &xi, w, &|a, b| a == b, inject);
    sliding_check::<P, _, _>(r, &Min, "min", "i64", &xi, w, &|a, b| a == b, inject);
    sliding_check::<P, _, _>(r, &Max, "max", "i64", &xi, w, &|a, b| a == b, inject);
    let xf = gen::gen_f32(cell_seed(2, n, w, P), n);
    sliding_check::<P, _, _>(
        r,
        &Add,
        "add",
        "f32",
        &xf,
        w,
        &|a, b| within(a as f64, b as f64, 1e-5, 1e-5),
        inject,
    );
    let xd = gen::gen_f64(cell_seed(3, n, w, P), n);
    sliding_check::<P, _, _>(
        r,
        &Add,
        "add",
        "f64",
        &xd,
        w,
        &|a, b| within(a, b, 1e-12, 1e-13),
        inject,
    );
    let xg = gen::gen_pairs(cell_seed(4, n, w, P), n);
    sliding_check::<P, _, _>(
        r,
        &Gamma,
        "gamma",
        "f64",
        &xg,
        w,
        &|a: GammaPair<f64>, b: GammaPair<f64>| {
            within(a.u, b.u, 1e-12, 1e-13) && within(a.v, b.v, 1e-12, 1e-11)
        },
        inject,
    );
}

#[allow(clippy::too_many_arguments)]
fn sliding_check<const P: usize, T, O>(
    r: &mut Reporter<'_>,
    op: &O,
    op_name: &str,
    kind: &str,
    xs: &[T],
    w: usize,
    eq: &dyn Fn(T, T) -> bool,
    inject: bool,
) where
    T: Copy + core::fmt::Debug,
    O: Operator<T>,
{
    let n = xs.len();
    let p = SlidingProblem::new(xs, w).expect("grid guarantees w <= N");
    let want = naive_sliding_sum(op, &p);
    let mut algos: Vec<&'static str> = Vec::new();
    let compare = |name: &str, got: &[T]| -> Result<(), String> {
        if got.len() != want.len() {
            return Err(format!("algo={name} got {} outputs, want {}", got.len(), want.len()));
        }
        for i in 0..want.len() {
            if !eq(got[i], want[i]) {
                return Err(format!("algo={name} i={i} got={:?} want={:?}", got[i], want[i]));
            }
        }
        Ok(())
    };
    let mut outcome: Result<(), String> = Ok(());
    if w < P {
        outcome = outcome
            .and_then(|()| {
                algos.push("scalar_input");
                compare("scalar_input", &scalar_input::<P, _, _>(op, &p).unwrap())
            })
            .and_then(|()| {
                algos.push("vector_input");
                compare(
                    "vector_input",
                    &vector_input::<P, _, _>(op, &p, ScanMode::Sequential).unwrap(),
                )
            })
            .and_then(|()| {
                algos.push("vector_input_tree");
                compare(
                    "vector_input_tree",
                    &vector_input::<P, _, _>(op, &p, ScanMode::Tree).unwrap(),
                )
            });
    }
    if w <= P {
        outcome = outcome.and_then(|()| {
            algos.push("ping_pong");
            compare("ping_pong", &ping_pong::<P, _, _>(op, &p).unwrap())
        });
    }
    outcome = outcome.and_then(|()| {
        algos.push("vector_slide");
        let mut got = vector_slide::<P, _, _>(op, &p);
        if inject {
            got.remove(0);
            got.push(op.identity());
        }
        compare("vector_slide", &got)
    });
    let head = format!("op={op_name} kind={kind} N={n} w={w} P={P}");
    r.check(match outcome {
        Ok(()) => Ok(format!("{head} algos={}", algos.join(","))),
        Err(detail) => Err(format!("{head} {detail}")),
    });
}

/// Dot products as pair reductions against direct summation: random vector
/// pairs, length <= 256, roughly a quarter of the coefficients exactly zero.
/// Also asserts the masking identity exactly: entries of `b` under a zero
/// coefficient cannot influence the result in either scan mode.
pub fn dot_grid(rounds: usize, r: &mut Reporter<'_>) {
    let chunk = 1_000;
    let mut rng = SplitMix64::new(0xD07);
    let mut done = 0;
    while done < rounds {
        let batch = chunk.min(rounds - done);
        let mut outcome: Result<(), String> = Ok(());
        for round in done..done + batch {
            let m = 1 + (rng.next_u64() % 256) as usize;
            // Uniform on [-2, 2); |c| < 0.5 (a quarter of the mass) squashes
            // to exact zero, the rest stays in +/-[0.5, 2).
            let a: Vec<f64> = (0..m)
                .map(|_| {
                    let c = rng.next_f64() * 2.0;
                    if c.abs() < 0.5 {
                        0.0
                    } else {
                        c
                    }
                })
                .collect();
            let b: Vec<f64> = (0..m).map(|_| rng.next_f64()).collect();
            let direct: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
            let mut garbled = b.clone();
            for i in 0..m {
                if a[i] == 0.0 {
                    garbled[i] = 1e300;
                }
            }
            for mode in [ScanMode::Sequential, ScanMode::Tree] {
                let got = dot_scan(&a, &b, mode).unwrap();
                if !within(got, direct, 1e-10, 1e-12) {
                    outcome = Err(format!(
                        "round={round} mode={mode:?} M={m} got={got} want={direct}"
                    ));
                    break;
                }
                let masked = dot_scan(&a, &garbled, mode).unwrap();
                if masked.to_bits() != got.to_bits() {
                    outcome = Err(format!(
                        "round={round} mode={mode:?} M={m} masked positions leaked: {masked} vs {got}"
                    ));
                    break;
                }
            }
            if outcome.is_err() {
                break;
            }
        }
        done += batch;
        let head = format!("dot_scan rounds={}..{done} modes=sequential,tree", done - batch);
        r.check(match outcome {
            Ok(()) => Ok(head),
            Err(detail) => Err(format!("{head} {detail}")),
        });
    }
}

/// Filter coefficients with small magnitudes squashed to exact zero: keeps
/// ratio chains bounded while exercising the masking path.
fn conditioned_filters_f32(seed: u64, count: usize, w: usize) -> Vec<Vec<f32>> {
    gen::gen_filters_f32(seed, count, w)
        .into_iter()
        .map(|f| f.into_iter().map(|c| if c.abs() < 0.125 { 0.0 } else { c }).collect())
        .collect()
}

fn conditioned_filters_f64(seed: u64, count: usize, w: usize) -> Vec<Vec<f64>> {
    gen::gen_filters_f64(seed, count, w)
        .into_iter()
        .map(|f| f.into_iter().map(|c| if c.abs() < 0.125 { 0.0 } else { c }).collect())
        .collect()
}

/// Convolution equivalence: the four sliding instantiations, the pair
/// reduction (both scan modes), and the im2col+GEMM path all against the
/// naive triple loop, over the geometry grid (dilation up to 8, stride 2,
/// zero padding, filter banks of 1 and 4). GEMM must match naive bit for
/// bit; everything else within kind tolerance.
pub fn nn_grid(r: &mut Reporter<'_>) {
    const P: usize = 16;
    for n in [16usize, 1024, 65536] {
        for w in [1usize, 3, 5, 11, 17, 29, 49, 51] {
            for dilation in [1usize, 2, 4, 8] {
                for stride in [1usize, 2] {
                    let extent = (w - 1) * dilation + 1;
                    for pad in [
                        Padding::Valid,
                        Padding::Zeros { left: extent / 2, right: extent.div_ceil(2) },
                    ] {
                        for filters in [1usize, 4] {
                            let Ok(spec) = WindowSpec::new(w, stride, dilation, pad) else {
                                continue;
                            };
                            if spec.output_len(n).is_err() {
                                continue;
                            }
                            let seed = cell_seed(5, n, w, dilation * 2 + stride) ^ filters as u64;
                            nn_cell::<P, f32>(
                                r,
                                "f32",
                                &gen::gen_f32(seed, n),
                                conditioned_filters_f32(seed ^ 0xF1, filters, w),
                                spec,
                                (1e-5, 1e-4),
                                (1e-5, 1e-4),
                            );
                            nn_cell::<P, f64>(
                                r,
                                "f64",
                                &gen::gen_f64(seed, n),
                                conditioned_filters_f64(seed ^ 0xF2, filters, w),
                                spec,
                                (1e-12, 1e-13),
                                (1e-10, 1e-12),
                            );
                        }
                    }
                }
            }
        }
    }
}

fn nn_cell<const P: usize, F: Real>(
    r: &mut Reporter<'_>,
    kind: &str,
    xs: &[F],
    filters: Vec<Vec<F>>,
    spec: WindowSpec,
    tol_sliding: (f64, f64),
    tol_gamma: (f64, f64),
) {
    let nf = filters.len();
    let bank = FilterBank::new(filters).expect("grid filters are valid");
    let problem = ConvProblem::new(xs, &bank, spec).expect("grid cell is valid");
    let want = conv1d_naive(&problem);
    let compare = |name: &str, got: &[Vec<F>], tol: (f64, f64)| -> Result<(), String> {
        for f in 0..nf {
            if got[f].len() != want[f].len() {
                return Err(format!(
                    "algo={name} filter={f} got {} outputs, want {}",
                    got[f].len(),
                    want[f].len()
                ));
            }
            for i in 0..want[f].len() {
                let (g, w_) = (got[f][i].to_f64(), want[f][i].to_f64());
                if !within(g, w_, tol.0, tol.1) {
                    return Err(format!("algo={name} filter={f} i={i} got={g} want={w_}"));
                }
            }
        }
        Ok(())
    };
    let mut outcome: Result<(), String> = Ok(());
    let mut algos: Vec<&'static str> = Vec::new();
    let sliding_set: &[(SlidingAlgo, &'static str, bool)] = &[
        (SlidingAlgo::ScalarInput, "scalar_input", spec.w < P),
        (SlidingAlgo::VectorInput, "vector_input", spec.w < P),
        (SlidingAlgo::PingPong, "ping_pong", spec.w <= P),
        (SlidingAlgo::VectorSlide, "vector_slide", true),
    ];
    for &(algo, name, fits) in sliding_set {
        if !fits {
            continue;
        }
        outcome = outcome.and_then(|()| {
            algos.push(name);
            compare(name, &conv1d_sliding::<P, F>(&problem, algo).unwrap(), tol_sliding)
        });
    }
    for (mode, name) in [(ScanMode::Sequential, "gamma_seq"), (ScanMode::Tree, "gamma_tree")] {
        outcome = outcome.and_then(|()| {
            algos.push(name);
            compare(name, &conv1d_gamma(&problem, mode).unwrap(), tol_gamma)
        });
    }
    outcome = outcome.and_then(|()| {
        algos.push("gemm");
        let got = conv1d_gemm(&problem).unwrap();
        for f in 0..nf {
            for i in 0..want[f].len() {
                if got[f][i].to_f64().to_bits() != want[f][i].to_f64().to_bits() {
                    return Err(format!(
                        "algo=gemm filter={f} i={i} not bit-identical: {} vs {}",
                        got[f][i].to_f64(),
                        want[f][i].to_f64()
                    ));
                }
            }
        }
        Ok(())
    });
    let head = format!(
        "op=conv kind={kind} N={} w={} P={P} d={} s={} pad={:?} F={nf}",
        xs.len(),
        spec.w,
        spec.dilation,
        spec.stride,
        spec.padding
    );
    r.check(match outcome {
        Ok(()) => Ok(format!("{head} algos={}", algos.join(","))),
        Err(detail) => Err(format!("{head} {detail}")),
    });
}

/// Pooling against a direct window loop over the explicitly padded input.
pub fn pooling_grid(r: &mut Reporter<'_>) {
    for n in [8usize, 64, 1000] {
        for w in [1usize, 2, 3, 7, 16] {
            for stride in [1usize, 2, 3] {
                for dilation in [1usize, 2] {
                    for pad in [
                        Padding::Valid,
                        Padding::Zeros { left: 1 + w / 2, right: w / 2 },
                    ] {
                        let Ok(spec) = WindowSpec::new(w, stride, dilation, pad) else {
                            continue;
                        };
                        if spec.output_len(n).is_err() {
                            continue;
                        }
                        pooling_cell(r, n, &spec);
                    }
                }
            }
        }
    }
}

fn brute_pool<T: Copy>(
    xs: &[T],
    spec: &WindowSpec,
    pad: T,
    fold: impl Fn(T, T) -> T,
) -> Vec<T> {
    let (left, right) = match spec.padding {
        Padding::Valid => (0, 0),
        Padding::Zeros { left, right } => (left, right),
    };
    let mut padded = vec![pad; left];
    padded.extend_from_slice(xs);
    padded.extend(std::iter::repeat(pad).take(right));
    let out_len = spec.output_len(xs.len()).unwrap();
    (0..out_len)
        .map(|q| {
            let mut acc = padded[q * spec.stride];
            for k in 1..spec.w {
                acc = fold(acc, padded[q * spec.stride + k * spec.dilation]);
            }
            acc
        })
        .collect()
}

fn pooling_cell(r: &mut Reporter<'_>, n: usize, spec: &WindowSpec) {
    let xi = gen::gen_i64(cell_seed(6, n, spec.w, spec.stride), n);
    let xd = gen::gen_f64(cell_seed(7, n, spec.w, spec.stride), n);
    let mut outcome: Result<(), String> = Ok(());
    let max_want = brute_pool(&xi, spec, i64::MIN, |a, b| a.max(b));
    if max_pool(&xi, spec).unwrap() != max_want {
        outcome = Err("max_pool i64 mismatch".into());
    }
    let min_want = brute_pool(&xi, spec, i64::MAX, |a, b| a.min(b));
    if outcome.is_ok() && min_pool(&xi, spec).unwrap() != min_want {
        outcome = Err("min_pool i64 mismatch".into());
    }
    if outcome.is_ok() {
        let sum_want = brute_pool(&xd, spec, 0.0f64, |a, b| a + b);
        let got = avg_pool(&xd, spec).unwrap();
        for i in 0..got.len() {
            if !within(got[i], sum_want[i] / spec.w as f64, 1e-12, 1e-13) {
                outcome = Err(format!(
                    "avg_pool f64 i={i} got={} want={}",
                    got[i],
                    sum_want[i] / spec.w as f64
                ));
                break;
            }
        }
    }
    let head = format!(
        "pool N={n} w={} s={} d={} pad={:?} ops=max,min,avg",
        spec.w, spec.stride, spec.dilation, spec.padding
    );
    r.check(match outcome {
        Ok(()) => Ok(head),
        Err(detail) => Err(format!("{head} {detail}")),
    });
}

/// The lowered matrix must occupy exactly `w * output_len * elem_size`
/// bytes: the footprint the sliding kernels avoid.
pub fn footprint_grid(r: &mut Reporter<'_>) {
    for n in [16usize, 1024, 4096] {
        for w in [1usize, 5, 51] {
            for stride in [1usize, 2] {
                let pad = Padding::Zeros { left: w / 2, right: w / 2 };
                let Ok(spec) = WindowSpec::new(w, stride, 1, pad) else { continue };
                let Ok(out_len) = spec.output_len(n) else { continue };
                let xf = gen::gen_f32(cell_seed(8, n, w, stride), n);
                let m32 = im2col(&xf, &spec).unwrap();
                let xd = gen::gen_f64(cell_seed(9, n, w, stride), n);
                let m64 = im2col(&xd, &spec).unwrap();
                let head =
                    format!("im2col N={n} w={w} s={stride} out_len={out_len} kinds=f32,f64");
                if m32.footprint_bytes() != w * out_len * 4 {
                    r.fail(&format!(
                        "{head} f32 footprint {} != {}",
                        m32.footprint_bytes(),
                        w * out_len * 4
                    ));
                } else if m64.footprint_bytes() != w * out_len * 8 {
                    r.fail(&format!(
                        "{head} f64 footprint {} != {}",
                        m64.footprint_bytes(),
                        w * out_len * 8
                    ));
                } else {
                    r.pass(&head);
                }
            }
        }
    }
}
