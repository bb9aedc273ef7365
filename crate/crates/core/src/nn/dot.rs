//! Dot products as pure reductions over gamma pairs.

use alloc::vec::Vec;

use crate::nn::NnError;
use crate::operators::{gamma_from, Gamma, GammaPair, Real};
use crate::scan::{reduce, ScanMode};

/// The gamma sequence of `sum(a_i * b_i)`: `len + 1` pairs whose in-order
/// reduction carries the dot product in its `v` component.
pub(crate) fn gamma_sequence<F: Real>(a: &[F], b: &[F]) -> Vec<GammaPair<F>> {
    let m = a.len();
    let mut gs = Vec::with_capacity(m + 1);
    let mut prev = F::ZERO;
    for i in 0..m {
        gs.push(gamma_from(a[i], b[i], i, m, prev));
        prev = a[i];
    }
    gs.push(gamma_from(F::ZERO, F::ZERO, m, m, prev));
    gs
}

/// Evaluates `sum(a_i * b_i)` by reducing the gamma sequence of `(a, b)`.
///
/// In [`ScanMode::Tree`] the reduction is balanced, demonstrating that the
/// dot product needs only `ceil(log2(len + 1))` dependent steps. Coefficient
/// conditioning follows [`gamma_from`]: zeros are fine (they are masked),
/// near-denormal coefficients are not.
pub fn dot_scan<F: Real>(a: &[F], b: &[F], mode: ScanMode) -> Result<F, NnError> {
    if a.len() != b.len() {
        return Err(NnError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    if a.is_empty() {
        return Err(NnError::EmptyInput);
    }
    let gs = gamma_sequence(a, b);
    Ok(reduce(&Gamma, &gs, mode).expect("sequence is nonempty").v)
}
