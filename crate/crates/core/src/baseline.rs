//! Reference paths the fast kernels are judged against.
//!
//! [`conv1d_naive`] is the conformance baseline: a direct triple loop that
//! accumulates every window in f64, tap order ascending. [`im2col`] plus
//! [`gemm_blocked`] is the lowering most frameworks use; the multiply keeps
//! the same f64 accumulation order (k ascending within and across blocks), so
//! [`conv1d_gemm`] reproduces the naive output bit for bit and the two only
//! differ in memory traffic.

use alloc::vec;
use alloc::vec::Vec;

use crate::nn::{padded, ConvProblem, NnError, WindowSpec};
use crate::operators::Real;

/// Dense row-major matrix, the shape im2col produces: one row per output
/// position, one column per filter tap.
#[derive(Clone, Debug, PartialEq)]
pub struct ColMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Copy> ColMatrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "shape does not match data length");
        ColMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> F {
        self.data[r * self.cols + c]
    }

    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    /// Bytes held by the materialized matrix: `rows * cols * size_of::<F>()`.
    /// This is the extra working-set cost of the lowering, the quantity the
    /// sliding kernels avoid.
    pub fn footprint_bytes(&self) -> usize {
        self.data.len() * core::mem::size_of::<F>()
    }
}

/// Direct convolution: for every filter and output position, fold the taps
/// left to right into an f64 accumulator. Slow on purpose; everything else
/// in the crate must match it.
pub fn conv1d_naive<F: Real>(p: &ConvProblem<'_, F>) -> Vec<Vec<F>> {
    let spec = p.spec();
    let seq = padded(p.input(), &spec, F::ZERO);
    let out_len = p.output_len();
    let mut outs = Vec::with_capacity(p.bank().len());
    for f in 0..p.bank().len() {
        let wts = p.bank().filter(f);
        let mut out = Vec::with_capacity(out_len);
        for q in 0..out_len {
            let mut acc = 0.0f64;
            for k in 0..spec.w {
                let cf = if p.flip() { wts[spec.w - 1 - k] } else { wts[k] };
                acc += cf.to_f64() * seq[q * spec.stride + k * spec.dilation].to_f64();
            }
            out.push(F::from_f64(acc));
        }
        outs.push(out);
    }
    outs
}

/// Materializes every window as a matrix row: entry `(q, k)` is
/// `input[q * stride + k * dilation]` after padding.
pub fn im2col<F: Real>(xs: &[F], spec: &WindowSpec) -> Result<ColMatrix<F>, NnError> {
    let out_len = spec.output_len(xs.len())?;
    let seq = padded(xs, spec, F::ZERO);
    let mut data = Vec::with_capacity(out_len * spec.w);
    for q in 0..out_len {
        for k in 0..spec.w {
            data.push(seq[q * spec.stride + k * spec.dilation]);
        }
    }
    Ok(ColMatrix::new(out_len, spec.w, data))
}

/// Blocked scalar matrix multiply with a resident f64 accumulator per cell.
/// The k loop ascends within each block and blocks ascend, so the summation
/// order per output equals the naive tap loop.
pub fn gemm_blocked<F: Real>(a: &ColMatrix<F>, b: &ColMatrix<F>) -> ColMatrix<F> {
    assert_eq!(a.cols, b.rows, "inner dimensions must agree");
    const MB: usize = 64;
    const KB: usize = 64;
    let mut acc = vec![0.0f64; a.rows * b.cols];
    for i0 in (0..a.rows).step_by(MB) {
        let i1 = (i0 + MB).min(a.rows);
        for k0 in (0..a.cols).step_by(KB) {
            let k1 = (k0 + KB).min(a.cols);
            for i in i0..i1 {
                for j in 0..b.cols {
                    let mut s = acc[i * b.cols + j];
                    for k in k0..k1 {
                        s += a.at(i, k).to_f64() * b.at(k, j).to_f64();
                    }
                    acc[i * b.cols + j] = s;
                }
            }
        }
    }
    let data = acc.into_iter().map(F::from_f64).collect();
    ColMatrix::new(a.rows, b.cols, data)
}

/// Convolution by lowering: im2col, then one multiply against the filter
/// bank laid out as a `w x filters` matrix. Bit-identical to
/// [`conv1d_naive`].
pub fn conv1d_gemm<F: Real>(p: &ConvProblem<'_, F>) -> Result<Vec<Vec<F>>, NnError> {
    let spec = p.spec();
    let cm = im2col(p.input(), &spec)?;
    let nf = p.bank().len();
    let mut bdata = Vec::with_capacity(spec.w * nf);
    for k in 0..spec.w {
        for f in 0..nf {
            let wts = p.bank().filter(f);
            bdata.push(if p.flip() { wts[spec.w - 1 - k] } else { wts[k] });
        }
    }
    let b = ColMatrix::new(spec.w, nf, bdata);
    let c = gemm_blocked(&cm, &b);
    let mut outs = vec![Vec::with_capacity(c.rows); nf];
    for q in 0..c.rows {
        for (f, out) in outs.iter_mut().enumerate() {
            out.push(c.at(q, f));
        }
    }
    Ok(outs)
}
