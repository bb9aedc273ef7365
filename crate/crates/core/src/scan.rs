//! Reductions and prefix/suffix scans in two evaluation shapes.
//!
//! [`ScanMode::Sequential`] is the plain left-to-right fold. [`ScanMode::Tree`]
//! reassociates into balanced form: reduce splits at the largest power of two
//! below `n` (so the left subtree is always full), scans run log-stepped
//! doubling passes. Both shapes combine the same operands in the same order,
//! only the parenthesization differs, so exact operators agree bit for bit
//! across modes and floats agree within tolerance. Operands are never
//! swapped, which keeps non-commutative operators correct.

use alloc::vec::Vec;
use core::fmt;

use crate::counter::{Instrument, NoInstrument};
use crate::operators::Operator;

/// Evaluation shape for reductions and scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Left-to-right fold; dependency chain of depth `n - 1`.
    Sequential,
    /// Balanced reassociation; dependency depth `ceil(log2 n)`.
    Tree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanError {
    /// Reduction of an empty sequence has no defined value.
    EmptyInput,
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::EmptyInput => write!(f, "reduce of an empty sequence"),
        }
    }
}

impl core::error::Error for ScanError {}

/// `ceil(log2 n)` for `n >= 1`.
#[inline]
pub(crate) fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Combines all elements into one value.
pub fn reduce<T: Copy, O: Operator<T>>(op: &O, xs: &[T], mode: ScanMode) -> Result<T, ScanError> {
    reduce_counted(op, xs, mode, &NoInstrument)
}

/// [`reduce`] reporting every combine to `c`.
pub fn reduce_counted<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    xs: &[T],
    mode: ScanMode,
    c: &C,
) -> Result<T, ScanError> {
    if xs.is_empty() {
        return Err(ScanError::EmptyInput);
    }
    Ok(match mode {
        ScanMode::Sequential => {
            let mut acc = xs[0];
            for (i, &x) in xs.iter().enumerate().skip(1) {
                acc = op.combine(acc, x);
                c.combine_at(i as u32);
            }
            acc
        }
        ScanMode::Tree => reduce_tree(op, xs, c),
    })
}

pub(crate) fn reduce_tree<T: Copy, O: Operator<T>, C: Instrument>(op: &O, xs: &[T], c: &C) -> T {
    let n = xs.len();
    if n == 1 {
        return xs[0];
    }
    // Largest power of two strictly inside [1, n); for n a power of two this
    // is n / 2. Keeps the left subtree full and the total depth ceil(log2 n).
    let split = n.next_power_of_two() / 2;
    let left = reduce_tree(op, &xs[..split], c);
    let right = reduce_tree(op, &xs[split..], c);
    c.combine_at(ceil_log2(n));
    op.combine(left, right)
}

/// `out[i] = xs[0] (+) ... (+) xs[i]`. Empty input yields an empty output.
pub fn inclusive_scan<T: Copy, O: Operator<T>>(op: &O, xs: &[T], mode: ScanMode) -> Vec<T> {
    inclusive_scan_counted(op, xs, mode, &NoInstrument)
}

pub fn inclusive_scan_counted<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    xs: &[T],
    mode: ScanMode,
    c: &C,
) -> Vec<T> {
    let mut out = xs.to_vec();
    match mode {
        ScanMode::Sequential => {
            for i in 1..out.len() {
                out[i] = op.combine(out[i - 1], xs[i]);
                c.combine_at(i as u32);
            }
        }
        ScanMode::Tree => {
            let mut scratch = xs.to_vec();
            inclusive_tree_in(op, &mut out, &mut scratch, c);
        }
    }
    out
}

/// `out[0] = identity`, `out[i] = xs[0] (+) ... (+) xs[i-1]`.
pub fn exclusive_scan<T: Copy, O: Operator<T>>(op: &O, xs: &[T], mode: ScanMode) -> Vec<T> {
    exclusive_scan_counted(op, xs, mode, &NoInstrument)
}

pub fn exclusive_scan_counted<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    xs: &[T],
    mode: ScanMode,
    c: &C,
) -> Vec<T> {
    let mut out = inclusive_scan_counted(op, xs, mode, c);
    // Shift right by one; the last inclusive prefix drops off.
    for i in (1..out.len()).rev() {
        out[i] = out[i - 1];
    }
    if let Some(first) = out.first_mut() {
        *first = op.identity();
    }
    out
}

/// `out[i] = xs[i] (+) ... (+) xs[n-1]`.
pub fn suffix_scan<T: Copy, O: Operator<T>>(op: &O, xs: &[T], mode: ScanMode) -> Vec<T> {
    suffix_scan_counted(op, xs, mode, &NoInstrument)
}

pub fn suffix_scan_counted<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    xs: &[T],
    mode: ScanMode,
    c: &C,
) -> Vec<T> {
    let mut out = xs.to_vec();
    match mode {
        ScanMode::Sequential => {
            let n = out.len();
            for i in (0..n.saturating_sub(1)).rev() {
                out[i] = op.combine(xs[i], out[i + 1]);
                c.combine_at((n - 1 - i) as u32);
            }
        }
        ScanMode::Tree => {
            let mut scratch = xs.to_vec();
            suffix_tree_in(op, &mut out, &mut scratch, c);
        }
    }
    out
}

/// Doubling-pass inclusive scan; `ceil(log2 n)` levels of in-order combines.
pub(crate) fn inclusive_tree_in<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    data: &mut [T],
    scratch: &mut [T],
    c: &C,
) {
    let n = data.len();
    debug_assert!(scratch.len() >= n);
    for level in 1..=ceil_log2(n) {
        let offset = 1usize << (level - 1);
        scratch[..offset].copy_from_slice(&data[..offset]);
        for i in offset..n {
            scratch[i] = op.combine(data[i - offset], data[i]);
            c.combine_at(level);
        }
        data[..n].copy_from_slice(&scratch[..n]);
    }
}

/// Mirror of [`inclusive_tree_in`] accumulating toward the front.
pub(crate) fn suffix_tree_in<T: Copy, O: Operator<T>, C: Instrument>(
    op: &O,
    data: &mut [T],
    scratch: &mut [T],
    c: &C,
) {
    let n = data.len();
    debug_assert!(scratch.len() >= n);
    for level in 1..=ceil_log2(n) {
        let offset = 1usize << (level - 1);
        for i in 0..n - offset {
            scratch[i] = op.combine(data[i], data[i + offset]);
            c.combine_at(level);
        }
        scratch[n - offset..n].copy_from_slice(&data[n - offset..n]);
        data[..n].copy_from_slice(&scratch[..n]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counter::OpCounter;
    use crate::operators::{gamma_from, Add, Gamma, GammaPair, Min};

    #[test]
    fn scan_examples() {
        let xs = [1i64, 2, 3];
        assert_eq!(inclusive_scan(&Add, &xs, ScanMode::Sequential), [1, 3, 6]);
        assert_eq!(exclusive_scan(&Add, &xs, ScanMode::Sequential), [0, 1, 3]);
        assert_eq!(suffix_scan(&Add, &xs, ScanMode::Sequential), [6, 5, 3]);
        assert_eq!(inclusive_scan(&Add, &xs, ScanMode::Tree), [1, 3, 6]);
        assert_eq!(exclusive_scan(&Add, &xs, ScanMode::Tree), [0, 1, 3]);
        assert_eq!(suffix_scan(&Add, &xs, ScanMode::Tree), [6, 5, 3]);
    }

    #[test]
    fn reduce_of_empty_errors() {
        let r = reduce(&Add, &[] as &[i64], ScanMode::Sequential);
        assert_eq!(r, Err(ScanError::EmptyInput));
        let r = reduce(&Add, &[] as &[i64], ScanMode::Tree);
        assert_eq!(r, Err(ScanError::EmptyInput));
    }

    #[test]
    fn reduce_min_both_modes() {
        let xs = [5i64, -3, 9, 0, 2];
        assert_eq!(reduce(&Min, &xs, ScanMode::Sequential), Ok(-3));
        assert_eq!(reduce(&Min, &xs, ScanMode::Tree), Ok(-3));
        assert_eq!(reduce(&Min, &xs[..1], ScanMode::Tree), Ok(5));
    }

    #[test]
    fn gamma_sequence_reduces_to_dot_product_in_both_modes() {
        // a = [2, 0, 4], b = [1, 5, 7]: dot product 2*1 + 0*5 + 4*7 = 30.
        let a = [2.0f64, 0.0, 4.0];
        let b = [1.0f64, 5.0, 7.0];
        let mut gs: Vec<GammaPair<f64>> = Vec::new();
        for i in 0..=3 {
            let prev = if i > 0 { a[i - 1] } else { 0.0 };
            let (c, v) = if i < 3 { (a[i], b[i]) } else { (0.0, 0.0) };
            gs.push(gamma_from(c, v, i, 3, prev));
        }
        let seq = reduce(&Gamma, &gs, ScanMode::Sequential).unwrap();
        let tree = reduce(&Gamma, &gs, ScanMode::Tree).unwrap();
        assert_eq!(seq.v, 30.0);
        assert_eq!(tree.v, 30.0);
        assert_eq!(seq.u, 2.0);
        assert_eq!(tree.u, 2.0);
    }

    #[test]
    fn modes_agree_for_exact_operators() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64) - (1 << 30)
        };
        for n in [1usize, 2, 3, 7, 64, 65, 1000] {
            let xs: Vec<i64> = (0..n).map(|_| next()).collect();
            assert_eq!(
                reduce(&Add, &xs, ScanMode::Sequential),
                reduce(&Add, &xs, ScanMode::Tree),
            );
            assert_eq!(
                inclusive_scan(&Add, &xs, ScanMode::Sequential),
                inclusive_scan(&Add, &xs, ScanMode::Tree),
            );
            assert_eq!(
                exclusive_scan(&Add, &xs, ScanMode::Sequential),
                exclusive_scan(&Add, &xs, ScanMode::Tree),
            );
            assert_eq!(
                suffix_scan(&Add, &xs, ScanMode::Sequential),
                suffix_scan(&Add, &xs, ScanMode::Tree),
            );
        }
    }

    #[test]
    fn suffix_matches_reversed_inclusive_for_commutative_op() {
        let xs = [4i64, -1, 7, 0, 3, 3];
        let mut rev: Vec<i64> = xs.to_vec();
        rev.reverse();
        let mut inc = inclusive_scan(&Add, &rev, ScanMode::Sequential);
        inc.reverse();
        assert_eq!(suffix_scan(&Add, &xs, ScanMode::Sequential), inc);
    }

    #[test]
    fn tree_reduce_combine_and_level_counts() {
        for n in [1usize, 2, 3, 4, 5, 6, 7, 8, 9, 1000] {
            let xs: Vec<i64> = (0..n as i64).collect();
            let c = OpCounter::new();
            reduce_counted(&Add, &xs, ScanMode::Tree, &c).unwrap();
            assert_eq!(c.combine_count(), (n - 1) as u64, "n = {n}");
            assert_eq!(c.level_count(), ceil_log2(n), "n = {n}");
        }
    }

    #[test]
    fn sequential_reduce_has_chain_depth() {
        let xs: Vec<i64> = (0..10).collect();
        let c = OpCounter::new();
        reduce_counted(&Add, &xs, ScanMode::Sequential, &c).unwrap();
        assert_eq!(c.combine_count(), 9);
        assert_eq!(c.level_count(), 9);
    }

    #[test]
    fn tree_scan_level_counts() {
        let xs: Vec<i64> = (0..37).collect();
        let c = OpCounter::new();
        inclusive_scan_counted(&Add, &xs, ScanMode::Tree, &c);
        assert_eq!(c.level_count(), 6); // ceil(log2 37)
        let c = OpCounter::new();
        suffix_scan_counted(&Add, &xs, ScanMode::Tree, &c);
        assert_eq!(c.level_count(), 6);
    }
}
