//! Pooling as sliding reductions.
//!
//! Max/min pooling pad with the operator identity (`-inf`/`+inf` or the
//! integer extremes), so padded positions can never win. Average pooling is
//! the sliding add-sum divided by the window width; padded positions count as
//! zeros and the divisor is always `w`.

use alloc::vec;
use alloc::vec::Vec;

use crate::nn::{padded, NnError, WindowSpec};
use crate::operators::{Add, Max, Min, Operator, Real};
use crate::sliding::{vector_slide, SlidingProblem};

/// Lane count used by the pooling kernels; any conformant width works.
const POOL_LANES: usize = 8;

pub fn avg_pool<T: Real>(xs: &[T], spec: &WindowSpec) -> Result<Vec<T>, NnError>
where
    Add: Operator<T>,
{
    let mut out = pool_with(&Add, xs, spec)?;
    let inv_w = T::ONE / T::from_f64(spec.w as f64);
    for v in &mut out {
        *v = *v * inv_w;
    }
    Ok(out)
}

pub fn max_pool<T: Copy>(xs: &[T], spec: &WindowSpec) -> Result<Vec<T>, NnError>
where
    Max: Operator<T>,
{
    pool_with(&Max, xs, spec)
}

pub fn min_pool<T: Copy>(xs: &[T], spec: &WindowSpec) -> Result<Vec<T>, NnError>
where
    Min: Operator<T>,
{
    pool_with(&Min, xs, spec)
}

fn pool_with<T: Copy, O: Operator<T>>(
    op: &O,
    xs: &[T],
    spec: &WindowSpec,
) -> Result<Vec<T>, NnError> {
    let out_len = spec.output_len(xs.len())?;
    let padded = padded(xs, spec, op.identity());
    let dense = dilated_sliding(op, &padded, spec.w, spec.dilation);
    if spec.stride == 1 {
        let mut dense = dense;
        dense.truncate(out_len);
        return Ok(dense);
    }
    Ok((0..out_len).map(|q| dense[q * spec.stride]).collect())
}

/// Dense (stride-1) dilated window sums: `dense[i] = xs[i] (+) xs[i + d] (+)
/// ... (+) xs[i + (w-1)d]`. Every `d`-th element forms an independent phase
/// whose plain sliding sums land `d` apart in the output.
fn dilated_sliding<T: Copy, O: Operator<T>>(op: &O, xs: &[T], w: usize, d: usize) -> Vec<T> {
    if d == 1 {
        let p = SlidingProblem::new(xs, w).expect("extent validated by caller");
        return vector_slide::<POOL_LANES, _, _>(op, &p);
    }
    let extent = (w - 1) * d + 1;
    let dense_len = xs.len() - extent + 1;
    let mut dense = vec![op.identity(); dense_len];
    for r in 0..d.min(dense_len) {
        let phase: Vec<T> = xs[r..].iter().step_by(d).copied().collect();
        if phase.len() < w {
            continue;
        }
        let p = SlidingProblem::new(&phase, w).expect("length checked above");
        for (j, v) in vector_slide::<POOL_LANES, _, _>(op, &p).into_iter().enumerate() {
            let i = r + j * d;
            debug_assert!(i < dense_len);
            dense[i] = v;
        }
    }
    dense
}
