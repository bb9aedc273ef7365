//! Sliding-window sums `output[i] = x_i (+) x_{i+1} (+) ... (+) x_{i+w-1}`
//! for `i` in `[0, N - w]`, over any [`Operator`].
//!
//! [`naive_sliding_sum`] is the brute-force evaluation and the conformance
//! oracle for everything else in this module. The block kernels trade the
//! `O(N * w)` scalar work for per-block lane parallelism:
//!
//! * [`scalar_input`]: consumes one element per step, one block combine per
//!   output; suits streaming inputs. Requires `w < P`.
//! * [`vector_input`]: consumes `P` elements per iteration, computing
//!   prefix-clipped window sums inside the block and carrying suffix partials
//!   into the next block. Requires `w < P`. In [`ScanMode::Tree`] the
//!   per-block sums use logarithmic-depth scans.
//! * [`ping_pong`]: two resident blocks alternate roles so each iteration
//!   emits `2P - w + 1` outputs from `2w - 1` block combines instead of
//!   `P` per `2w - 2`. Requires `w <= P`.
//! * [`vector_slide`]: keeps a short history ring and forms each shifted
//!   operand with [`LaneBlock::slide`]; `w - 1` slide+combine steps per `P`
//!   outputs, any `w`.
//!
//! All kernels combine window elements strictly in input order (they
//! reassociate, never commute), so non-commutative operators such as
//! [`crate::operators::Gamma`] produce oracle-identical results up to float
//! reassociation error. Out-of-range loads are padded with the operator
//! identity and clipped from the output.
//!
//! Concurrency contract: the kernels are pure functions; disjoint output
//! ranges may be computed concurrently by giving each worker its input range
//! extended by `w - 1` trailing elements of overlap.

mod block;

pub use block::LaneBlock;

use alloc::vec::Vec;
use core::fmt;

use crate::counter::{Instrument, NoInstrument};
use crate::operators::Operator;
use crate::scan::{
    ceil_log2, inclusive_tree_in, reduce_tree, suffix_scan_counted, suffix_tree_in, ScanMode,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlidingError {
    /// `w == 0`; a window must cover at least one element.
    ZeroWindow,
    /// `w > N`; no complete window fits in the input.
    WindowExceedsInput { len: usize, window: usize },
    /// The kernel requires more lanes than `P` for this window; use
    /// [`vector_slide`], which accepts any `w`.
    LaneWidthTooSmall { window: usize, lanes: usize },
}

impl fmt::Display for SlidingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlidingError::ZeroWindow => write!(f, "window width must be at least 1"),
            SlidingError::WindowExceedsInput { len, window } => {
                write!(f, "window {window} exceeds input length {len}")
            }
            SlidingError::LaneWidthTooSmall { window, lanes } => {
                write!(f, "window {window} needs more than {lanes} lanes for this kernel")
            }
        }
    }
}

impl core::error::Error for SlidingError {}

/// A validated sliding-window instance: input slice plus window width.
#[derive(Clone, Copy, Debug)]
pub struct SlidingProblem<'a, T> {
    xs: &'a [T],
    w: usize,
}

impl<'a, T> SlidingProblem<'a, T> {
    pub fn new(xs: &'a [T], w: usize) -> Result<Self, SlidingError> {
        if w == 0 {
            return Err(SlidingError::ZeroWindow);
        }
        if w > xs.len() {
            return Err(SlidingError::WindowExceedsInput {
                len: xs.len(),
                window: w,
            });
        }
        Ok(SlidingProblem { xs, w })
    }

    #[inline]
    pub fn input(&self) -> &'a [T] {
        self.xs
    }

    #[inline]
    pub fn window(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn output_len(&self) -> usize {
        self.xs.len() - self.w + 1
    }
}

/// Brute-force oracle: every window folded left to right, no block tricks.
pub fn naive_sliding_sum<T: Copy, O: Operator<T>>(op: &O, p: &SlidingProblem<'_, T>) -> Vec<T> {
    let (xs, w) = (p.input(), p.window());
    let mut out = Vec::with_capacity(p.output_len());
    for i in 0..p.output_len() {
        let mut acc = xs[i];
        for &x in &xs[i + 1..i + w] {
            acc = op.combine(acc, x);
        }
        out.push(acc);
    }
    out
}

/// One element in, one output out, one block combine per step.
///
/// The accumulator block keeps lane `t` holding the partial window that will
/// complete `t` steps from now. Each incoming element is broadcast into lanes
/// `[0, w)`, combined in, and the finished lane 0 extracted before the block
/// shifts down by one.
pub fn scalar_input<const P: usize, T: Copy, O: Operator<T>>(
    op: &O,
    p: &SlidingProblem<'_, T>,
) -> Result<Vec<T>, SlidingError> {
    scalar_input_counted::<P, _, _, _>(op, p, &NoInstrument)
}

pub fn scalar_input_counted<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    p: &SlidingProblem<'_, T>,
    c: &C,
) -> Result<Vec<T>, SlidingError> {
    let (xs, w) = (p.input(), p.window());
    if w >= P {
        return Err(SlidingError::LaneWidthTooSmall { window: w, lanes: P });
    }
    let id = op.identity();
    let mut out = Vec::with_capacity(p.output_len());
    // Lane t starts as x_t (+) ... (+) x_{w-2}: everything output t needs
    // from before the element that will complete it.
    let mut y = LaneBlock::<T, P>::filled(id);
    let init = suffix_scan_counted(op, &xs[..w - 1], ScanMode::Sequential, c);
    for (t, v) in init.into_iter().enumerate() {
        y.set_lane(t, v);
    }
    for &x in &xs[w - 1..] {
        let xb = LaneBlock::<T, P>::broadcast_window(x, w, id);
        y = y.combine(op, &xb, c);
        out.push(y.lane(0));
        y = y.shift_left(1, id);
    }
    Ok(out)
}

/// Block-at-a-time kernel: `P` outputs per iteration.
///
/// Per block `X` it forms `X1[t] = x[max(0, t-w+1)] (+) ... (+) x[t]`
/// (windows clipped at the block head) and combines with the carry block `Y`
/// holding the suffix partials of the previous block, so
/// `output[t] = Y[t] (+) X1[t]`. The next carry comes from the suffix sums of
/// the last `w - 1` lanes of `X`, aligned by a left shift of `P - w`.
pub fn vector_input<const P: usize, T: Copy, O: Operator<T>>(
    op: &O,
    p: &SlidingProblem<'_, T>,
    mode: ScanMode,
) -> Result<Vec<T>, SlidingError> {
    vector_input_counted::<P, _, _, _>(op, p, mode, &NoInstrument)
}

pub fn vector_input_counted<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    p: &SlidingProblem<'_, T>,
    mode: ScanMode,
    c: &C,
) -> Result<Vec<T>, SlidingError> {
    let (xs, w) = (p.input(), p.window());
    if w >= P {
        return Err(SlidingError::LaneWidthTooSmall { window: w, lanes: P });
    }
    let id = op.identity();
    let n_out = p.output_len();
    let mut out = Vec::with_capacity(n_out);
    let mut y = LaneBlock::<T, P>::filled(id);
    let init = suffix_scan_counted(op, &xs[..w - 1], mode, c);
    for (t, v) in init.into_iter().enumerate() {
        y.set_lane(t, v);
    }
    let mut at = w - 1;
    while out.len() < n_out {
        let x = load_block::<T, P>(xs, at, id);
        let (x1, y1) = match mode {
            ScanMode::Sequential => windowed_sums_seq(op, &x, w, c),
            ScanMode::Tree => windowed_sums_tree(op, &x, w, c),
        };
        let o = y.combine(op, &x1, c);
        emit_lanes(&mut out, o.lanes(), P, n_out);
        y = y1.shift_left(P - w, id);
        at += P;
    }
    Ok(out)
}

/// Pinned cost model for [`vector_input`] in [`ScanMode::Sequential`], in
/// block combines.
///
/// Each of the `ceil((N - w + 1) / P)` iterations performs `w - 1` combines
/// for the clipped window sums, `w - 2` for the suffix carry (none for
/// `w <= 2`), and one to merge the carry, i.e. `max(2w - 2, 1)` in total.
pub fn vector_input_block_ops(n: usize, w: usize, p: usize) -> u64 {
    let iterations = (n - w + 1).div_ceil(p) as u64;
    iterations * (2 * w as u64).saturating_sub(2).max(1)
}

/// Two-block kernel emitting `2P - w + 1` outputs per iteration.
///
/// The resident block's windowed sums yield `P - w + 1` complete outputs
/// directly; its suffix partials, shifted down, complete against the
/// prefix-clipped sums of the incoming block, which then becomes the
/// resident block of the next iteration.
pub fn ping_pong<const P: usize, T: Copy, O: Operator<T>>(
    op: &O,
    p: &SlidingProblem<'_, T>,
) -> Result<Vec<T>, SlidingError> {
    ping_pong_counted::<P, _, _, _>(op, p, &NoInstrument)
}

pub fn ping_pong_counted<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    p: &SlidingProblem<'_, T>,
    c: &C,
) -> Result<Vec<T>, SlidingError> {
    let (xs, w) = (p.input(), p.window());
    if w > P {
        return Err(SlidingError::LaneWidthTooSmall { window: w, lanes: P });
    }
    let id = op.identity();
    let n_out = p.output_len();
    let mut out = Vec::with_capacity(n_out);
    let mut base = 0usize;
    while out.len() < n_out {
        let yb = load_block::<T, P>(xs, base, id);
        let xb = load_block::<T, P>(xs, base + P, id);
        // Windowed sums anchored at each lane; lanes past P - w are suffix
        // partials that spill into the incoming block.
        let mut y1 = yb;
        for k in 1..w {
            y1 = y1.combine(op, &yb.shift_left(k, id), c);
        }
        emit_lanes(&mut out, y1.lanes(), P - w + 1, n_out);
        if out.len() >= n_out {
            break;
        }
        let z = y1.shift_left(P - w + 1, id);
        let mut x1 = xb.shift_right(w - 1, id);
        for k in (0..w - 1).rev() {
            x1 = x1.combine(op, &xb.shift_right(k, id), c);
        }
        let o2 = z.combine(op, &x1, c);
        emit_lanes(&mut out, o2.lanes(), P, n_out);
        base += 2 * P - w + 1;
    }
    Ok(out)
}

/// History-ring kernel: any `w`, `w - 1` slide+combine steps per `P` outputs.
///
/// The ring holds the current block plus `ceil((w - 1) / P)` predecessors.
/// The operand at window distance `k` is lanes `[mP - k, mP - k + P)` of the
/// adjacent ring pair `m = ceil(k / P)` blocks back, i.e. one
/// [`LaneBlock::slide`] per step. Lanes accumulate earliest element first.
pub fn vector_slide<const P: usize, T: Copy, O: Operator<T>>(
    op: &O,
    p: &SlidingProblem<'_, T>,
) -> Vec<T> {
    vector_slide_counted::<P, _, _, _>(op, p, &NoInstrument)
}

pub fn vector_slide_counted<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    p: &SlidingProblem<'_, T>,
    c: &C,
) -> Vec<T> {
    let (xs, w) = (p.input(), p.window());
    let id = op.identity();
    let n_out = p.output_len();
    let mut out = Vec::with_capacity(n_out);
    let hist = (w - 1).div_ceil(P);
    let mut ring: Vec<LaneBlock<T, P>> = alloc::vec![LaneBlock::filled(id); hist + 1];
    let mut base = 0usize;
    while out.len() < n_out {
        ring.rotate_left(1);
        let last = ring.len() - 1;
        ring[last] = load_block::<T, P>(xs, base, id);
        // Lane t of this iteration finishes output base + t - w + 1; blocks
        // whose lanes all precede output 0 only feed the ring.
        if base + P >= w {
            let mut acc = slide_at(&ring, w - 1);
            for k in (0..w - 1).rev() {
                acc = acc.combine(op, &slide_at(&ring, k), c);
            }
            let skip = (w - 1).saturating_sub(base);
            let lanes = acc.lanes();
            for (t, &v) in lanes.iter().enumerate().skip(skip) {
                let q = base + t + 1 - w;
                if q >= n_out {
                    break;
                }
                debug_assert_eq!(q, out.len());
                out.push(v);
            }
        }
        base += P;
    }
    out
}

/// Operand at window distance `k` behind the newest ring block.
#[inline]
fn slide_at<T: Copy, const P: usize>(ring: &[LaneBlock<T, P>], k: usize) -> LaneBlock<T, P> {
    let last = ring.len() - 1;
    if k == 0 {
        return ring[last];
    }
    let m = k.div_ceil(P);
    LaneBlock::slide(&ring[last - m], &ring[last - m + 1], m * P - k)
}

#[inline]
fn load_block<T: Copy, const P: usize>(xs: &[T], at: usize, fill: T) -> LaneBlock<T, P> {
    if at >= xs.len() {
        LaneBlock::filled(fill)
    } else {
        LaneBlock::from_slice(&xs[at..], fill)
    }
}

#[inline]
fn emit_lanes<T: Copy>(out: &mut Vec<T>, lanes: &[T], count: usize, n_out: usize) {
    let take = count.min(n_out - out.len());
    out.extend_from_slice(&lanes[..take]);
}

/// Clipped window sums and suffix carry of one block, sequential shape.
///
/// `x1` accumulates the right-shifted copies of `x` largest shift first, so
/// every lane sees its window in input order; shifted-in identities realize
/// the clipping at the block head. `y1` accumulates left-shifted copies,
/// producing at lane `s` the sum of lanes `(s, min(s + w - 1, P - 1)]`, which
/// after the caller's `P - w` left shift is exactly the carry the next block
/// needs.
fn windowed_sums_seq<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    x: &LaneBlock<T, P>,
    w: usize,
    c: &C,
) -> (LaneBlock<T, P>, LaneBlock<T, P>) {
    let id = op.identity();
    let mut x1 = x.shift_right(w - 1, id);
    for k in (0..w - 1).rev() {
        x1 = x1.combine(op, &x.shift_right(k, id), c);
    }
    let mut y1 = if w >= 2 {
        x.shift_left(1, id)
    } else {
        LaneBlock::filled(id)
    };
    for k in 2..w {
        y1 = y1.combine(op, &x.shift_left(k, id), c);
    }
    (x1, y1)
}

/// As [`windowed_sums_seq`] but with logarithmic-depth evaluation: one tree
/// scan for the clipped head lanes, one balanced reduce per interior lane,
/// one tree scan for the suffix carry. No combine sits deeper than
/// `ceil(log2 w)` levels.
fn windowed_sums_tree<const P: usize, T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    x: &LaneBlock<T, P>,
    w: usize,
    c: &C,
) -> (LaneBlock<T, P>, LaneBlock<T, P>) {
    let id = op.identity();
    let lanes = x.lanes();
    let mut scratch = [id; P];

    let mut x1 = LaneBlock::filled(id);
    let mut head = [id; P];
    head[..w - 1].copy_from_slice(&lanes[..w - 1]);
    inclusive_tree_in(op, &mut head[..w - 1], &mut scratch, c);
    for (t, &v) in head.iter().enumerate().take(w - 1) {
        x1.set_lane(t, v);
    }
    for t in w - 1..P {
        x1.set_lane(t, reduce_tree(op, &lanes[t + 1 - w..=t], c));
    }

    let mut y1 = LaneBlock::filled(id);
    let mut tail = [id; P];
    if w >= 2 {
        tail[..w - 1].copy_from_slice(&lanes[P - w + 1..]);
        suffix_tree_in(op, &mut tail[..w - 1], &mut scratch, c);
        for (t, &v) in tail.iter().enumerate().take(w - 1) {
            y1.set_lane(P - w + t, v);
        }
    }
    (x1, y1)
}

/// Upper bound asserted for the per-block scan depth of
/// [`vector_input`] in [`ScanMode::Tree`].
pub fn tree_level_bound(w: usize) -> u32 {
    ceil_log2(w) + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counter::OpCounter;
    use crate::operators::{Add, Gamma, GammaPair, Max, Min};
    use crate::tolerance::{close_f32, close_f64};

    fn problem<T>(xs: &[T], w: usize) -> SlidingProblem<'_, T> {
        SlidingProblem::new(xs, w).unwrap()
    }

    #[test]
    fn naive_oracle_hand_checked() {
        let xs = [3i64, 1, 4, 1, 5];
        assert_eq!(naive_sliding_sum(&Add, &problem(&xs, 2)), [4, 5, 5, 6]);
        assert_eq!(naive_sliding_sum(&Add, &problem(&xs, 5)), [14]);
        assert_eq!(naive_sliding_sum(&Min, &problem(&xs, 3)), [1, 1, 1]);
        assert_eq!(naive_sliding_sum(&Max, &problem(&xs, 1)), xs);
    }

    #[test]
    fn problem_validation() {
        assert_eq!(
            SlidingProblem::<i64>::new(&[1, 2], 0).unwrap_err(),
            SlidingError::ZeroWindow
        );
        assert_eq!(
            SlidingProblem::new(&[1, 2], 3).unwrap_err(),
            SlidingError::WindowExceedsInput { len: 2, window: 3 }
        );
    }

    #[test]
    fn scalar_input_add_example() {
        let xs = [1i64, 2, 3, 4, 5];
        let out = scalar_input::<8, _, _>(&Add, &problem(&xs, 3)).unwrap();
        assert_eq!(out, [6, 9, 12]);
    }

    #[test]
    fn scalar_input_min_constant() {
        let xs = [2i64, 2, 2, 2];
        let out = scalar_input::<4, _, _>(&Min, &problem(&xs, 2)).unwrap();
        assert_eq!(out, [2, 2, 2]);
    }

    #[test]
    fn scalar_input_rejects_wide_windows() {
        let xs = [1i64; 10];
        let err = scalar_input::<4, _, _>(&Add, &problem(&xs, 4)).unwrap_err();
        assert_eq!(
            err,
            SlidingError::LaneWidthTooSmall { window: 4, lanes: 4 }
        );
    }

    #[test]
    fn scalar_input_one_block_combine_per_output() {
        let xs: Vec<i64> = (0..57).collect();
        for w in [1usize, 2, 3, 5, 7] {
            let c = OpCounter::new();
            let out = scalar_input_counted::<8, _, _, _>(&Add, &problem(&xs, w), &c).unwrap();
            assert_eq!(c.block_op_count(), out.len() as u64, "w = {w}");
        }
    }

    #[test]
    fn vector_input_matches_oracle_exactly_for_ints() {
        let xs: Vec<i64> = (0..16).collect();
        let p = problem(&xs, 4);
        let expect = naive_sliding_sum(&Add, &p);
        for mode in [ScanMode::Sequential, ScanMode::Tree] {
            let got = vector_input::<8, _, _>(&Add, &p, mode).unwrap();
            assert_eq!(got, expect, "{mode:?}");
        }
    }

    #[test]
    fn vector_input_gamma_pairs_match_oracle() {
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let xs: Vec<GammaPair<f64>> = (0..41)
            .map(|_| GammaPair::new(0.5 + 1.5 * next(), 2.0 * next() - 1.0))
            .collect();
        let p = problem(&xs, 3);
        let expect = naive_sliding_sum(&Gamma, &p);
        for mode in [ScanMode::Sequential, ScanMode::Tree] {
            let got = vector_input::<8, _, _>(&Gamma, &p, mode).unwrap();
            for (g, e) in got.iter().zip(expect.iter()) {
                assert!(close_f64(g.u, e.u), "{mode:?}: {g:?} vs {e:?}");
                assert!(close_f64(g.v, e.v), "{mode:?}: {g:?} vs {e:?}");
            }
        }
    }

    #[test]
    fn vector_input_sequential_block_op_count_is_pinned() {
        for (n, w) in [(64usize, 4usize), (37, 3), (100, 7), (8, 1)] {
            let xs: Vec<i64> = (0..n as i64).collect();
            let c = OpCounter::new();
            vector_input_counted::<8, _, _, _>(&Add, &problem(&xs, w), ScanMode::Sequential, &c)
                .unwrap();
            assert_eq!(
                c.block_op_count(),
                vector_input_block_ops(n, w, 8),
                "n = {n}, w = {w}"
            );
        }
    }

    #[test]
    fn vector_input_tree_depth_within_bound() {
        let xs: Vec<i64> = (0..200).collect();
        for w in [1usize, 2, 3, 5, 7] {
            let c = OpCounter::new();
            vector_input_counted::<8, _, _, _>(&Add, &problem(&xs, w), ScanMode::Tree, &c)
                .unwrap();
            assert!(
                c.level_count() <= tree_level_bound(w),
                "w = {w}: {} levels",
                c.level_count()
            );
        }
    }

    #[test]
    fn ping_pong_add_example() {
        let xs: Vec<i64> = (1..=12).collect();
        let out = ping_pong::<4, _, _>(&Add, &problem(&xs, 3)).unwrap();
        assert_eq!(out, [6, 9, 12, 15, 18, 21, 24, 27, 30, 33]);
    }

    #[test]
    fn ping_pong_max_random() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64) - (1 << 30)
        };
        let xs: Vec<i64> = (0..10007).map(|_| next()).collect();
        let p = problem(&xs, 5);
        assert_eq!(
            ping_pong::<8, _, _>(&Max, &p).unwrap(),
            naive_sliding_sum(&Max, &p)
        );
    }

    #[test]
    fn ping_pong_window_equal_to_lanes() {
        let xs: Vec<i64> = (0..21).collect();
        let p = problem(&xs, 4);
        assert_eq!(
            ping_pong::<4, _, _>(&Add, &p).unwrap(),
            naive_sliding_sum(&Add, &p)
        );
        assert!(ping_pong::<4, _, _>(&Add, &problem(&xs, 5)).is_err());
    }

    #[test]
    fn vector_slide_add_example() {
        let xs: Vec<i64> = (1..=8).collect();
        let out = vector_slide::<4, _, _>(&Add, &problem(&xs, 2));
        assert_eq!(out, [3, 5, 7, 9, 11, 13, 15]);
    }

    #[test]
    fn vector_slide_window_wider_than_two_blocks() {
        let mut state = 3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 40) as f32 / (1u32 << 24) as f32 * 2.0 - 1.0
        };
        let xs: Vec<f32> = (0..300).map(|_| next()).collect();
        let p = problem(&xs, 19);
        let expect = naive_sliding_sum(&Add, &p);
        let got = vector_slide::<8, _, _>(&Add, &p);
        assert_eq!(got.len(), expect.len());
        for (i, (&g, &e)) in got.iter().zip(expect.iter()).enumerate() {
            assert!(close_f32(g, e), "output {i}: {g} vs {e}");
        }
    }

    #[test]
    fn vector_slide_degenerate_windows() {
        let xs = [5i64, 6, 7];
        assert_eq!(vector_slide::<4, _, _>(&Add, &problem(&xs, 1)), xs);
        assert_eq!(vector_slide::<4, _, _>(&Add, &problem(&xs, 3)), [18]);
        let xs = [5i64, 6, 7, 8];
        assert_eq!(vector_slide::<4, _, _>(&Add, &problem(&xs, 3)), [18, 21]);
    }

    #[test]
    fn vector_slide_counts_combines_per_block() {
        let xs: Vec<i64> = (0..64).collect();
        let c = OpCounter::new();
        vector_slide_counted::<8, _, _, _>(&Add, &problem(&xs, 5), &c);
        // 60 outputs over 8 emitting blocks, 4 combines each.
        assert_eq!(c.block_op_count(), 8 * 4);
    }

    #[test]
    fn single_output_edges() {
        for n_w in [(1usize, 1usize), (4, 4), (5, 4)] {
            let xs: Vec<i64> = (1..=n_w.0 as i64).collect();
            let p = problem(&xs, n_w.1);
            let expect = naive_sliding_sum(&Add, &p);
            assert_eq!(ping_pong::<4, _, _>(&Add, &p).unwrap(), expect);
            assert_eq!(vector_slide::<4, _, _>(&Add, &p), expect);
            if n_w.1 < 4 {
                assert_eq!(
                    vector_input::<4, _, _>(&Add, &p, ScanMode::Sequential).unwrap(),
                    expect
                );
            }
        }
    }
}
