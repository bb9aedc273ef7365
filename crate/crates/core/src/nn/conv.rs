//! Dense 1-D convolution (cross-correlation) kernels.
//!
//! [`conv1d_sliding`] instantiates a sliding block kernel with a
//! position-weighted combine: where the plain kernels fold identical lanes
//! with `(+)`, step `k` here multiplies the slid lanes by coefficient `a_k`
//! and accumulates, so the block structure and cost model of the chosen
//! algorithm carry over unchanged. Dilation runs as independent dense phases
//! and stride subsamples the dense result, exactly as in pooling.
//!
//! [`conv1d_gamma`] is the reduction-form reference: each output window is a
//! dot product evaluated as a gamma-pair reduction (the `u` ratio factors are
//! precomputed once per filter, only the `v` values change per window). It
//! exists to validate the sliding kernels against a structurally different
//! evaluation, not to be fast.

use alloc::vec;
use alloc::vec::Vec;

use crate::nn::{padded, ConvProblem, NnError};
use crate::operators::{gamma_from, Gamma, GammaPair, Real};
use crate::scan::{reduce, ScanMode};

/// Which block formulation evaluates the windows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlidingAlgo {
    /// One element per step; needs `w < P`.
    ScalarInput,
    /// One block per iteration; needs `w < P`.
    VectorInput,
    /// Two alternating blocks; needs `w <= P`.
    PingPong,
    /// Slide-based; any `w`.
    VectorSlide,
}

/// Cross-correlates the input with every filter in the bank.
///
/// Output is one `Vec` per filter, each of length
/// [`ConvProblem::output_len`]. Accumulation happens in the element type
/// `F`; the f64-accumulating reference lives in the baseline module.
pub fn conv1d_sliding<const P: usize, F: Real>(
    p: &ConvProblem<'_, F>,
    algo: SlidingAlgo,
) -> Result<Vec<Vec<F>>, NnError> {
    let spec = p.spec();
    let w = spec.w;
    let fits = match algo {
        SlidingAlgo::ScalarInput | SlidingAlgo::VectorInput => w < P,
        SlidingAlgo::PingPong => w <= P,
        SlidingAlgo::VectorSlide => true,
    };
    if !fits {
        return Err(NnError::LaneWidthTooSmall { window: w, lanes: P });
    }
    let seq = padded(p.input(), &spec, F::ZERO);
    let out_len = p.output_len();
    let mut outs = Vec::with_capacity(p.bank().len());
    for f in 0..p.bank().len() {
        let wts = oriented(p.bank().filter(f), p.flip());
        let dense = dense_conv::<P, F>(&seq, &wts, spec.dilation, algo);
        outs.push(subsample(dense, spec.stride, out_len));
    }
    Ok(outs)
}

/// Reduction-form reference: per-window gamma-pair evaluation, see
/// [`crate::nn::dot_scan`]. Coefficients follow the same conditioning rule
/// (exact zeros fine, near-denormals not).
pub fn conv1d_gamma<F: Real>(
    p: &ConvProblem<'_, F>,
    mode: ScanMode,
) -> Result<Vec<Vec<F>>, NnError> {
    let spec = p.spec();
    let w = spec.w;
    let seq = padded(p.input(), &spec, F::ZERO);
    let out_len = p.output_len();
    let mut outs = Vec::with_capacity(p.bank().len());
    for f in 0..p.bank().len() {
        let wts = oriented(p.bank().filter(f), p.flip());
        // The u factors depend only on the filter; windows differ in v alone.
        let mut gs: Vec<GammaPair<F>> = (0..=w)
            .map(|i| {
                let prev = if i > 0 { wts[i - 1] } else { F::ZERO };
                let cf = if i < w { wts[i] } else { F::ZERO };
                gamma_from(cf, F::ZERO, i, w, prev)
            })
            .collect();
        let zero: Vec<bool> = wts.iter().map(|&c| c == F::ZERO).collect();
        let mut out = Vec::with_capacity(out_len);
        for q in 0..out_len {
            let base = q * spec.stride;
            for i in 0..w {
                gs[i].v = if zero[i] {
                    F::ZERO
                } else {
                    seq[base + i * spec.dilation]
                };
            }
            out.push(reduce(&Gamma, &gs, mode).expect("sequence is nonempty").v);
        }
        outs.push(out);
    }
    Ok(outs)
}

fn oriented<F: Real>(wts: &[F], flip: bool) -> Vec<F> {
    let mut wts = wts.to_vec();
    if flip {
        wts.reverse();
    }
    wts
}

fn subsample<F: Copy>(dense: Vec<F>, stride: usize, out_len: usize) -> Vec<F> {
    if stride == 1 {
        let mut dense = dense;
        dense.truncate(out_len);
        return dense;
    }
    (0..out_len).map(|q| dense[q * stride]).collect()
}

/// Dense dilated cross-correlation via per-phase dense kernels.
fn dense_conv<const P: usize, F: Real>(
    seq: &[F],
    wts: &[F],
    dilation: usize,
    algo: SlidingAlgo,
) -> Vec<F> {
    if dilation == 1 {
        return dense_conv_unit::<P, F>(seq, wts, algo);
    }
    let w = wts.len();
    let extent = (w - 1) * dilation + 1;
    let dense_len = seq.len() - extent + 1;
    let mut dense = vec![F::ZERO; dense_len];
    for r in 0..dilation.min(dense_len) {
        let phase: Vec<F> = seq[r..].iter().step_by(dilation).copied().collect();
        if phase.len() < w {
            continue;
        }
        for (j, v) in dense_conv_unit::<P, F>(&phase, wts, algo)
            .into_iter()
            .enumerate()
        {
            dense[r + j * dilation] = v;
        }
    }
    dense
}

fn dense_conv_unit<const P: usize, F: Real>(seq: &[F], wts: &[F], algo: SlidingAlgo) -> Vec<F> {
    match algo {
        SlidingAlgo::ScalarInput => conv_scalar_input::<P, F>(seq, wts),
        SlidingAlgo::VectorInput => conv_vector_input::<P, F>(seq, wts),
        SlidingAlgo::PingPong => conv_ping_pong::<P, F>(seq, wts),
        SlidingAlgo::VectorSlide => conv_vector_slide::<P, F>(seq, wts),
    }
}

#[inline]
fn load<const P: usize, F: Real>(seq: &[F], at: usize) -> [F; P] {
    let mut b = [F::ZERO; P];
    if at < seq.len() {
        let take = (seq.len() - at).min(P);
        b[..take].copy_from_slice(&seq[at..at + take]);
    }
    b
}

/// Weighted form of the one-element-per-step kernel: each incoming element is
/// broadcast against the reversed filter (lane `t` completes `t` steps from
/// now, so it takes coefficient `w - 1 - t`), accumulated, and the block
/// shifts down one lane per step.
fn conv_scalar_input<const P: usize, F: Real>(seq: &[F], wts: &[F]) -> Vec<F> {
    let w = wts.len();
    let mut out = Vec::with_capacity(seq.len() - w + 1);
    let mut wrev = [F::ZERO; P];
    for t in 0..w {
        wrev[t] = wts[w - 1 - t];
    }
    let mut y = [F::ZERO; P];
    for (i, &x) in seq.iter().enumerate() {
        for t in 0..P {
            y[t] = y[t] + wrev[t] * x;
        }
        if i + 1 >= w {
            out.push(y[0]);
        }
        for t in 0..P - 1 {
            y[t] = y[t + 1];
        }
        y[P - 1] = F::ZERO;
    }
    out
}

/// Weighted block kernel: per block, the clipped window sums take shifted
/// copies of the block scaled by the matching coefficient; the suffix carry
/// does the same with the leading coefficients.
fn conv_vector_input<const P: usize, F: Real>(seq: &[F], wts: &[F]) -> Vec<F> {
    let w = wts.len();
    let n_out = seq.len() - w + 1;
    let mut out = Vec::with_capacity(n_out);
    let mut y = [F::ZERO; P];
    for t in 0..w.saturating_sub(1) {
        let mut acc = F::ZERO;
        for j in t..w - 1 {
            acc = acc + wts[j - t] * seq[j];
        }
        y[t] = acc;
    }
    let mut at = w - 1;
    while out.len() < n_out {
        let x = load::<P, F>(seq, at);
        let mut acc = [F::ZERO; P];
        for s in (0..w).rev() {
            let cf = wts[w - 1 - s];
            for t in s..P {
                acc[t] = acc[t] + cf * x[t - s];
            }
        }
        for t in 0..P {
            acc[t] = y[t] + acc[t];
        }
        push_upto(&mut out, &acc, P, n_out);
        let mut carry = [F::ZERO; P];
        for (k, &cf) in wts.iter().enumerate().take(w - 1).map(|(k, c)| (k + 1, c)) {
            for s in 0..P - k {
                carry[s] = carry[s] + cf * x[s + k];
            }
        }
        for t in 0..P {
            y[t] = if t < w { carry[t + P - w] } else { F::ZERO };
        }
        at += P;
    }
    out
}

/// Weighted two-block kernel: the resident block's windowed sums emit
/// `P - w + 1` finished outputs, its spill lanes complete against the
/// incoming block.
fn conv_ping_pong<const P: usize, F: Real>(seq: &[F], wts: &[F]) -> Vec<F> {
    let w = wts.len();
    let n_out = seq.len() - w + 1;
    let mut out = Vec::with_capacity(n_out);
    let mut base = 0usize;
    while out.len() < n_out {
        let yb = load::<P, F>(seq, base);
        let xb = load::<P, F>(seq, base + P);
        let mut y1 = [F::ZERO; P];
        for (k, &cf) in wts.iter().enumerate() {
            for t in 0..P - k {
                y1[t] = y1[t] + cf * yb[t + k];
            }
        }
        push_upto(&mut out, &y1, P - w + 1, n_out);
        if out.len() >= n_out {
            break;
        }
        let mut o2 = [F::ZERO; P];
        for t in 0..w.saturating_sub(1) {
            o2[t] = y1[t + P - w + 1];
        }
        for s in (0..w).rev() {
            let cf = wts[w - 1 - s];
            for t in s..P {
                o2[t] = o2[t] + cf * xb[t - s];
            }
        }
        push_upto(&mut out, &o2, P, n_out);
        base += 2 * P - w + 1;
    }
    out
}

/// Weighted slide kernel and the throughput path: each output block is
/// `sum_k a_k * seq[q0 + k ..]`, i.e. one shifted fused step per
/// coefficient, with the accumulator resident across the whole filter.
fn conv_vector_slide<const P: usize, F: Real>(seq: &[F], wts: &[F]) -> Vec<F> {
    let w = wts.len();
    let n_out = seq.len() - w + 1;
    let mut out = vec![F::ZERO; n_out];
    let full = n_out / P;
    for b in 0..full {
        let q0 = b * P;
        let mut acc = [F::ZERO; P];
        for (k, &cf) in wts.iter().enumerate() {
            let src = &seq[q0 + k..q0 + k + P];
            for t in 0..P {
                acc[t] = acc[t] + cf * src[t];
            }
        }
        out[q0..q0 + P].copy_from_slice(&acc);
    }
    let rem = n_out % P;
    if rem > 0 {
        let q0 = full * P;
        let mut acc = [F::ZERO; P];
        for (k, &cf) in wts.iter().enumerate() {
            let src = &seq[q0 + k..];
            let take = src.len().min(P);
            for t in 0..take {
                acc[t] = acc[t] + cf * src[t];
            }
        }
        out[q0..].copy_from_slice(&acc[..rem]);
    }
    out
}

#[inline]
fn push_upto<F: Copy>(out: &mut Vec<F>, lanes: &[F], count: usize, n_out: usize) {
    let take = count.min(n_out - out.len());
    out.extend_from_slice(&lanes[..take]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{FilterBank, Padding, WindowSpec};
    use crate::tolerance::{close_f64, first_mismatch_f64};

    const ALGOS: [SlidingAlgo; 4] = [
        SlidingAlgo::ScalarInput,
        SlidingAlgo::VectorInput,
        SlidingAlgo::PingPong,
        SlidingAlgo::VectorSlide,
    ];

    fn brute(xs: &[f64], wts: &[f64], spec: &WindowSpec, flip: bool) -> Vec<f64> {
        let wts = oriented(wts, flip);
        let seq = padded(xs, spec, 0.0);
        let out_len = spec.output_len(xs.len()).unwrap();
        (0..out_len)
            .map(|q| {
                (0..spec.w)
                    .map(|k| wts[k] * seq[q * spec.stride + k * spec.dilation])
                    .sum()
            })
            .collect()
    }

    #[test]
    fn edge_detect_example() {
        let bank = FilterBank::single(vec![1.0f64, 0.0, -1.0]).unwrap();
        let spec = WindowSpec::plain(3).unwrap();
        let xs = [1.0, 2.0, 3.0, 4.0];
        let p = ConvProblem::new(&xs, &bank, spec).unwrap();
        for algo in ALGOS {
            let out = conv1d_sliding::<8, f64>(&p, algo).unwrap();
            assert_eq!(out, vec![vec![-2.0, -2.0]], "{algo:?}");
        }
    }

    #[test]
    fn dilated_example() {
        let bank = FilterBank::single(vec![1.0f64, 1.0]).unwrap();
        let spec = WindowSpec::new(2, 1, 2, Padding::Valid).unwrap();
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let p = ConvProblem::new(&xs, &bank, spec).unwrap();
        for algo in ALGOS {
            let out = conv1d_sliding::<8, f64>(&p, algo).unwrap();
            assert_eq!(out, vec![vec![4.0, 6.0, 8.0]], "{algo:?}");
        }
    }

    #[test]
    fn gamma_reference_example() {
        let bank = FilterBank::single(vec![2.0f64, 0.0, 4.0]).unwrap();
        let spec = WindowSpec::plain(3).unwrap();
        let xs = [1.0, 5.0, 7.0, 9.0];
        let p = ConvProblem::new(&xs, &bank, spec).unwrap();
        for mode in [ScanMode::Sequential, ScanMode::Tree] {
            let out = conv1d_gamma(&p, mode).unwrap();
            assert_eq!(out.len(), 1);
            assert!(close_f64(out[0][0], 30.0), "{mode:?}: {:?}", out[0]);
            assert!(close_f64(out[0][1], 46.0), "{mode:?}: {:?}", out[0]);
        }
    }

    #[test]
    fn flip_reverses_filter_orientation() {
        let bank = FilterBank::single(vec![1.0f64, 0.0, -1.0]).unwrap();
        let spec = WindowSpec::plain(3).unwrap();
        let xs = [1.0, 2.0, 3.0, 4.0];
        let p = ConvProblem::new(&xs, &bank, spec).unwrap().flipped(true);
        let out = conv1d_sliding::<8, f64>(&p, SlidingAlgo::VectorSlide).unwrap();
        assert_eq!(out, vec![vec![2.0, 2.0]]);
        let out = conv1d_gamma(&p, ScanMode::Sequential).unwrap();
        assert_eq!(out, vec![vec![2.0, 2.0]]);
    }

    #[test]
    fn lane_preconditions() {
        let bank = FilterBank::single(vec![1.0f64; 8]).unwrap();
        let spec = WindowSpec::plain(8).unwrap();
        let xs = [0.0f64; 32];
        let p = ConvProblem::new(&xs, &bank, spec).unwrap();
        for algo in [SlidingAlgo::ScalarInput, SlidingAlgo::VectorInput] {
            assert_eq!(
                conv1d_sliding::<8, f64>(&p, algo).unwrap_err(),
                NnError::LaneWidthTooSmall { window: 8, lanes: 8 },
                "{algo:?}"
            );
        }
        assert!(conv1d_sliding::<8, f64>(&p, SlidingAlgo::PingPong).is_ok());
        assert!(conv1d_sliding::<8, f64>(&p, SlidingAlgo::VectorSlide).is_ok());
    }

    #[test]
    fn algos_match_brute_force_over_geometry_grid() {
        let mut state = 0xABCDu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let xs: Vec<f64> = (0..97).map(|_| next()).collect();
        for w in [1usize, 2, 3, 5, 7] {
            for dilation in [1usize, 2, 4] {
                for stride in [1usize, 2] {
                    for pad in [Padding::Valid, Padding::Zeros { left: 2, right: 1 }] {
                        let spec = WindowSpec::new(w, stride, dilation, pad).unwrap();
                        if spec.output_len(xs.len()).is_err() {
                            continue;
                        }
                        let filters: Vec<Vec<f64>> = (0..2)
                            .map(|_| (0..w).map(|_| next()).collect())
                            .collect();
                        let bank = FilterBank::new(filters).unwrap();
                        let p = ConvProblem::new(&xs, &bank, spec).unwrap();
                        for algo in ALGOS {
                            let out = conv1d_sliding::<8, f64>(&p, algo).unwrap();
                            for (f, got) in out.iter().enumerate() {
                                let expect = brute(&xs, bank.filter(f), &spec, false);
                                assert_eq!(
                                    first_mismatch_f64(got, &expect),
                                    None,
                                    "{algo:?} w={w} d={dilation} s={stride} {pad:?} f={f}"
                                );
                            }
                        }
                        let out = conv1d_gamma(&p, ScanMode::Tree).unwrap();
                        for (f, got) in out.iter().enumerate() {
                            let expect = brute(&xs, bank.filter(f), &spec, false);
                            assert_eq!(
                                first_mismatch_f64(got, &expect),
                                None,
                                "gamma w={w} d={dilation} s={stride} {pad:?} f={f}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn convolution_is_linear_in_the_input() {
        let bank = FilterBank::single(vec![0.5f64, -1.0, 2.0, 0.25]).unwrap();
        let spec = WindowSpec::new(4, 1, 1, Padding::Zeros { left: 3, right: 3 }).unwrap();
        let a: Vec<f64> = (0..40).map(|i| ((i * 37) % 19) as f64 - 9.0).collect();
        let b: Vec<f64> = (0..40).map(|i| ((i * 11) % 23) as f64 * 0.5 - 5.0).collect();
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 3.0 * x + y).collect();
        let run = |xs: &[f64]| {
            let p = ConvProblem::new(xs, &bank, spec).unwrap();
            conv1d_sliding::<8, f64>(&p, SlidingAlgo::VectorSlide).unwrap().remove(0)
        };
        let (ca, cb, cs) = (run(&a), run(&b), run(&sum));
        for i in 0..cs.len() {
            assert!(close_f64(cs[i], 3.0 * ca[i] + cb[i]), "i = {i}");
        }
    }
}
