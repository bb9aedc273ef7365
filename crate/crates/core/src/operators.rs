//! The operator set the sliding and scan kernels are generic over.
//!
//! An [`Operator`] is an associative binary combine with an identity element.
//! Associativity is the only algebraic law the kernels rely on: they
//! reassociate freely (sequential folds, balanced trees, per-block splits)
//! but never swap operands, so non-commutative operators are fully supported.
//!
//! Besides plain `add`/`min`/`max` this module defines the pair operator
//! [`Gamma`] that expresses a dot product as a pure reduction. Each term of
//! `sum(a_i * b_i)` becomes a [`GammaPair`] `(u_i, v_i)` built by
//! [`gamma_from`]; combining the pairs left to right telescopes the `u`
//! ratios so that the `v` component of the full reduction equals the dot
//! product. Zero coefficients would break the ratios, so they are masked to
//! `(alpha_i, beta_i) = (1, 0)`, which leaves the per-term products
//! `alpha_i * beta_i = a_i * b_i` unchanged.

use core::fmt;

/// Scalar float plumbing shared by the NN and baseline paths.
///
/// Implemented for `f32` and `f64` only; everything stays in `core`.
pub trait Real:
    Copy
    + PartialOrd
    + fmt::Debug
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<Output = Self>
    + core::ops::Div<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
    const INFINITY: Self;
    const NEG_INFINITY: Self;

    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    fn is_finite(self) -> bool;
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;
            const INFINITY: Self = <$t>::INFINITY;
            const NEG_INFINITY: Self = <$t>::NEG_INFINITY;

            #[inline(always)]
            fn from_f64(v: f64) -> Self {
                v as $t
            }
            #[inline(always)]
            fn to_f64(self) -> f64 {
                self as f64
            }
            #[inline(always)]
            fn abs(self) -> Self {
                <$t>::abs(self)
            }
            #[inline(always)]
            fn is_finite(self) -> bool {
                <$t>::is_finite(self)
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// An associative combine with identity over element type `T`.
///
/// Laws required of every implementation:
///
/// * associativity: `combine(combine(a, b), c) == combine(a, combine(b, c))`
///   (bit-exact when `IS_EXACT`, within float tolerance otherwise);
/// * identity: `combine(identity(), a) == a == combine(a, identity())`.
///
/// Commutativity is *not* required; callers that would need it must check
/// `IS_COMMUTATIVE`.
pub trait Operator<T: Copy>: Copy {
    /// Stable short name for reports.
    const NAME: &'static str;
    /// Whether operands may be swapped without changing the result.
    const IS_COMMUTATIVE: bool;
    /// Whether any reassociation yields bit-identical results.
    const IS_EXACT: bool;

    fn identity(&self) -> T;
    fn combine(&self, a: T, b: T) -> T;
}

/// Addition. Exact for `i64`, reassociation-sensitive for floats.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Add;

impl Operator<i64> for Add {
    const NAME: &'static str = "add";
    const IS_COMMUTATIVE: bool = true;
    const IS_EXACT: bool = true;

    #[inline(always)]
    fn identity(&self) -> i64 {
        0
    }
    #[inline(always)]
    fn combine(&self, a: i64, b: i64) -> i64 {
        a + b
    }
}

macro_rules! impl_add_float {
    ($t:ty) => {
        impl Operator<$t> for Add {
            const NAME: &'static str = "add";
            const IS_COMMUTATIVE: bool = true;
            const IS_EXACT: bool = false;

            #[inline(always)]
            fn identity(&self) -> $t {
                0.0
            }
            #[inline(always)]
            fn combine(&self, a: $t, b: $t) -> $t {
                a + b
            }
        }
    };
}

impl_add_float!(f32);
impl_add_float!(f64);

/// Minimum. Identity is the largest representable value, so identity-padded
/// lanes can never win.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Min;

impl Operator<i64> for Min {
    const NAME: &'static str = "min";
    const IS_COMMUTATIVE: bool = true;
    const IS_EXACT: bool = true;

    #[inline(always)]
    fn identity(&self) -> i64 {
        i64::MAX
    }
    #[inline(always)]
    fn combine(&self, a: i64, b: i64) -> i64 {
        a.min(b)
    }
}

macro_rules! impl_min_float {
    ($t:ty) => {
        impl Operator<$t> for Min {
            const NAME: &'static str = "min";
            const IS_COMMUTATIVE: bool = true;
            const IS_EXACT: bool = true;

            #[inline(always)]
            fn identity(&self) -> $t {
                <$t>::INFINITY
            }
            #[inline(always)]
            fn combine(&self, a: $t, b: $t) -> $t {
                a.min(b)
            }
        }
    };
}

impl_min_float!(f32);
impl_min_float!(f64);

/// Maximum. Identity is the smallest representable value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Max;

impl Operator<i64> for Max {
    const NAME: &'static str = "max";
    const IS_COMMUTATIVE: bool = true;
    const IS_EXACT: bool = true;

    #[inline(always)]
    fn identity(&self) -> i64 {
        i64::MIN
    }
    #[inline(always)]
    fn combine(&self, a: i64, b: i64) -> i64 {
        a.max(b)
    }
}

macro_rules! impl_max_float {
    ($t:ty) => {
        impl Operator<$t> for Max {
            const NAME: &'static str = "max";
            const IS_COMMUTATIVE: bool = true;
            const IS_EXACT: bool = true;

            #[inline(always)]
            fn identity(&self) -> $t {
                <$t>::NEG_INFINITY
            }
            #[inline(always)]
            fn combine(&self, a: $t, b: $t) -> $t {
                a.max(b)
            }
        }
    };
}

impl_max_float!(f32);
impl_max_float!(f64);

/// One term of a dot product rewritten for reduction, see [`gamma_from`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GammaPair<F> {
    pub u: F,
    pub v: F,
}

impl<F: Real> GammaPair<F> {
    pub const IDENTITY: Self = GammaPair {
        u: F::ONE,
        v: F::ZERO,
    };

    pub fn new(u: F, v: F) -> Self {
        GammaPair { u, v }
    }
}

/// The pair combine `(u_i, v_i) (+) (u_j, v_j) = (u_i*u_j, u_j*v_i + v_j)`.
///
/// Associative but **not** commutative; one multiply plus one
/// multiply-accumulate per component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gamma;

impl<F: Real> Operator<GammaPair<F>> for Gamma {
    const NAME: &'static str = "gamma";
    const IS_COMMUTATIVE: bool = false;
    const IS_EXACT: bool = false;

    #[inline(always)]
    fn identity(&self) -> GammaPair<F> {
        GammaPair::IDENTITY
    }

    #[inline(always)]
    fn combine(&self, a: GammaPair<F>, b: GammaPair<F>) -> GammaPair<F> {
        GammaPair {
            u: a.u * b.u,
            v: b.u * a.v + b.v,
        }
    }
}

/// Masked coefficient: zero coefficients contribute `alpha = 1` so the ratio
/// chain stays defined, and force `beta = 0` so the term still vanishes.
#[inline]
fn alpha<F: Real>(coeff: F) -> F {
    if coeff == F::ZERO {
        F::ONE
    } else {
        coeff
    }
}

/// Builds the `index`-th pair of the gamma sequence for a dot product of
/// length `len`.
///
/// For coefficients `a_0..a_{len-1}` and values `b_0..b_{len-1}` the sequence
/// has `len + 1` pairs:
///
/// * `gamma_0 = (1, beta_0)`,
/// * `gamma_i = (alpha_{i-1} / alpha_i, beta_i)` for `0 < i < len`,
/// * `gamma_len = (alpha_{len-1}, 0)`,
///
/// where `alpha`/`beta` are the masked coefficient and value of that
/// position. `coeff`/`value` are `a_index`/`b_index` (ignored at
/// `index == len`, where the position is past the data); `prev_coeff` is the
/// raw `a_{index-1}` (ignored at `index == 0`). Reducing the sequence with
/// [`Gamma`] in order yields the dot product in the `v` component.
///
/// The ratio chain divides by every interior `alpha_i`, so coefficients are
/// expected to be either exactly zero or of reasonable magnitude; callers
/// that accept arbitrary input should keep coefficients away from the
/// denormal range.
///
/// Panics if `index > len` or `len == 0`.
pub fn gamma_from<F: Real>(
    coeff: F,
    value: F,
    index: usize,
    len: usize,
    prev_coeff: F,
) -> GammaPair<F> {
    assert!(len >= 1, "gamma sequence needs at least one term");
    assert!(index <= len, "gamma index {index} out of range 0..={len}");
    if index == len {
        return GammaPair::new(alpha(prev_coeff), F::ZERO);
    }
    let beta = if coeff == F::ZERO { F::ZERO } else { value };
    if index == 0 {
        GammaPair::new(F::ONE, beta)
    } else {
        GammaPair::new(alpha(prev_coeff) / alpha(coeff), beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_samples() {
        let add = Add;
        assert_eq!(Operator::<i64>::combine(&add, 0, 7), 7);
        assert_eq!(Operator::<f64>::combine(&add, 0.0, -3.5), -3.5);
        let min = Min;
        assert_eq!(Operator::<i64>::combine(&min, i64::MAX, 42), 42);
        assert_eq!(Operator::<f32>::combine(&min, f32::INFINITY, 1.5), 1.5);
        let max = Max;
        assert_eq!(Operator::<i64>::combine(&max, i64::MIN, -42), -42);
        assert_eq!(
            Operator::<f64>::combine(&max, f64::NEG_INFINITY, -1.5),
            -1.5
        );
    }

    #[test]
    fn gamma_combine_examples() {
        let g = Gamma;
        let r = g.combine(GammaPair::new(1.0, 1.0), GammaPair::new(2.0, 0.0));
        assert_eq!(r, GammaPair::new(2.0, 2.0));
        let r = g.combine(GammaPair::new(2.0, 2.0), GammaPair::new(0.25, 7.0));
        assert_eq!(r, GammaPair::new(0.5, 7.5));
    }

    #[test]
    fn gamma_identity_both_sides() {
        let g = Gamma;
        let id: GammaPair<f64> = g.identity();
        let x = GammaPair::new(0.75, -2.0);
        assert_eq!(g.combine(id, x), x);
        assert_eq!(g.combine(x, id), x);
    }

    #[test]
    fn gamma_is_not_commutative() {
        let g = Gamma;
        let a = GammaPair::new(1.0, 1.0);
        let b = GammaPair::new(2.0, 0.0);
        assert_eq!(g.combine(a, b), GammaPair::new(2.0, 2.0));
        assert_eq!(g.combine(b, a), GammaPair::new(2.0, 1.0));
        assert_ne!(g.combine(a, b), g.combine(b, a));
    }

    #[test]
    fn gamma_from_examples() {
        // a = [2, 0, 4], b = [1, 5, 7], len 3.
        assert_eq!(gamma_from(2.0, 1.0, 0, 3, 0.0), GammaPair::new(1.0, 1.0));
        assert_eq!(gamma_from(0.0, 5.0, 1, 3, 2.0), GammaPair::new(2.0, 0.0));
        assert_eq!(gamma_from(4.0, 7.0, 2, 3, 0.0), GammaPair::new(0.25, 7.0));
        assert_eq!(gamma_from(0.0, 0.0, 3, 3, 4.0), GammaPair::new(4.0, 0.0));
    }

    #[test]
    fn gamma_from_masks_zero_prev() {
        // a zero at position i-1 enters the ratio as alpha = 1.
        assert_eq!(gamma_from(4.0, 7.0, 2, 3, 0.0), GammaPair::new(0.25, 7.0));
        // Trailing pair with a zero last coefficient.
        assert_eq!(gamma_from(0.0, 0.0, 2, 2, 0.0), GammaPair::new(1.0, 0.0));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn gamma_from_rejects_index_past_len() {
        gamma_from(1.0f64, 1.0, 4, 3, 1.0);
    }

    #[test]
    fn dot_product_recovered_by_left_fold() {
        let a = [2.0f64, 0.0, 4.0];
        let b = [1.0f64, 5.0, 7.0];
        let g = Gamma;
        let mut acc: GammaPair<f64> = g.identity();
        let mut prev = 0.0;
        for i in 0..=3 {
            let (c, v) = if i < 3 { (a[i], b[i]) } else { (0.0, 0.0) };
            acc = g.combine(acc, gamma_from(c, v, i, 3, prev));
            if i < 3 {
                prev = a[i];
            }
        }
        assert_eq!(acc.v, 30.0);
        assert_eq!(acc.u, 2.0);
    }

    #[test]
    fn masking_preserves_termwise_products_exactly() {
        // sum(alpha_i * beta_i) == sum(a_i * b_i) term by term and in total,
        // evaluated in the same left-to-right order.
        let a = [0.0f64, -1.5, 0.0, 2.25, 0.5, 0.0];
        let b = [3.0f64, -2.0, 5.5, 0.125, -4.0, 7.0];
        let mut masked_sum = 0.0;
        let mut plain_sum = 0.0;
        for i in 0..a.len() {
            let al = alpha(a[i]);
            let be = if a[i] == 0.0 { 0.0 } else { b[i] };
            assert_eq!(al * be, a[i] * b[i]);
            masked_sum += al * be;
            plain_sum += a[i] * b[i];
        }
        assert_eq!(masked_sum, plain_sum);
    }
}
