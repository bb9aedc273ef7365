//! Pooling and dense 1-D convolution built on the sliding kernels.
//!
//! [`WindowSpec`] carries the shared geometry: window width, stride,
//! dilation, and padding. A dilated window touches
//! `extent = (w - 1) * dilation + 1` consecutive positions; the output length
//! over a padded input of length `L` is `(L - extent) / stride + 1`.
//!
//! Dilation is evaluated as `dilation` independent dense phases (every
//! `dilation`-th element forms one phase; a dilated window over the input is
//! a dense window over one phase), stride by subsampling the dense output.

mod conv;
mod dot;
mod pool;

pub use conv::{conv1d_gamma, conv1d_sliding, SlidingAlgo};
pub use dot::dot_scan;
pub use pool::{avg_pool, max_pool, min_pool};

use alloc::borrow::Cow;
use alloc::vec::Vec;
use core::fmt;

use crate::operators::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Padding {
    /// No padding; windows must fit entirely in the input.
    Valid,
    /// Logical zero padding on each side. Pooling substitutes the value that
    /// is neutral for its reduction (so padding never wins a min/max and
    /// counts as zero toward an average, whose divisor stays `w`).
    Zeros { left: usize, right: usize },
}

impl Padding {
    fn amounts(&self) -> (usize, usize) {
        match *self {
            Padding::Valid => (0, 0),
            Padding::Zeros { left, right } => (left, right),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NnError {
    ZeroWindow,
    ZeroStride,
    ZeroDilation,
    /// The dilated window does not fit in the padded input.
    ExtentExceedsInput { extent: usize, padded_len: usize },
    EmptyFilterBank,
    FilterLengthMismatch { expected: usize, got: usize },
    NonFiniteCoefficient,
    /// Filter bank width differs from the window spec.
    WindowMismatch { spec: usize, bank: usize },
    /// Dot product operands differ in length.
    LengthMismatch { a: usize, b: usize },
    EmptyInput,
    /// The chosen kernel needs more lanes than configured; `VectorSlide`
    /// accepts any window.
    LaneWidthTooSmall { window: usize, lanes: usize },
}

impl fmt::Display for NnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NnError::ZeroWindow => write!(f, "window width must be at least 1"),
            NnError::ZeroStride => write!(f, "stride must be at least 1"),
            NnError::ZeroDilation => write!(f, "dilation must be at least 1"),
            NnError::ExtentExceedsInput { extent, padded_len } => write!(
                f,
                "dilated window extent {extent} exceeds padded input length {padded_len}"
            ),
            NnError::EmptyFilterBank => write!(f, "filter bank has no filters"),
            NnError::FilterLengthMismatch { expected, got } => {
                write!(f, "filter length {got} differs from bank width {expected}")
            }
            NnError::NonFiniteCoefficient => write!(f, "filter coefficients must be finite"),
            NnError::WindowMismatch { spec, bank } => {
                write!(f, "window spec width {spec} differs from filter width {bank}")
            }
            NnError::LengthMismatch { a, b } => {
                write!(f, "operand lengths differ: {a} vs {b}")
            }
            NnError::EmptyInput => write!(f, "input must not be empty"),
            NnError::LaneWidthTooSmall { window, lanes } => {
                write!(f, "window {window} needs more than {lanes} lanes for this kernel")
            }
        }
    }
}

impl core::error::Error for NnError {}

/// Window geometry shared by pooling and convolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    pub w: usize,
    pub stride: usize,
    pub dilation: usize,
    pub padding: Padding,
}

impl WindowSpec {
    pub fn new(w: usize, stride: usize, dilation: usize, padding: Padding) -> Result<Self, NnError> {
        if w == 0 {
            return Err(NnError::ZeroWindow);
        }
        if stride == 0 {
            return Err(NnError::ZeroStride);
        }
        if dilation == 0 {
            return Err(NnError::ZeroDilation);
        }
        Ok(WindowSpec {
            w,
            stride,
            dilation,
            padding,
        })
    }

    /// Unit stride and dilation, no padding.
    pub fn plain(w: usize) -> Result<Self, NnError> {
        WindowSpec::new(w, 1, 1, Padding::Valid)
    }

    /// Number of consecutive input positions one window touches.
    pub fn extent(&self) -> usize {
        (self.w - 1) * self.dilation + 1
    }

    pub fn padded_len(&self, input_len: usize) -> usize {
        let (l, r) = self.padding.amounts();
        input_len + l + r
    }

    /// Output length over `input_len` elements, or an error when no window
    /// fits.
    pub fn output_len(&self, input_len: usize) -> Result<usize, NnError> {
        let padded = self.padded_len(input_len);
        let extent = self.extent();
        if extent > padded {
            return Err(NnError::ExtentExceedsInput {
                extent,
                padded_len: padded,
            });
        }
        Ok((padded - extent) / self.stride + 1)
    }
}

/// `F` filters of equal width, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterBank<F> {
    width: usize,
    coeffs: Vec<F>,
}

impl<F: Real> FilterBank<F> {
    pub fn new(filters: Vec<Vec<F>>) -> Result<Self, NnError> {
        let width = match filters.first() {
            None => return Err(NnError::EmptyFilterBank),
            Some(first) if first.is_empty() => return Err(NnError::ZeroWindow),
            Some(first) => first.len(),
        };
        let mut coeffs = Vec::with_capacity(width * filters.len());
        for filter in &filters {
            if filter.len() != width {
                return Err(NnError::FilterLengthMismatch {
                    expected: width,
                    got: filter.len(),
                });
            }
            if filter.iter().any(|c| !c.is_finite()) {
                return Err(NnError::NonFiniteCoefficient);
            }
            coeffs.extend_from_slice(filter);
        }
        Ok(FilterBank { width, coeffs })
    }

    pub fn single(coeffs: Vec<F>) -> Result<Self, NnError> {
        FilterBank::new(alloc::vec![coeffs])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of filters.
    pub fn len(&self) -> usize {
        self.coeffs.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        false // validated nonempty at construction
    }

    pub fn filter(&self, i: usize) -> &[F] {
        &self.coeffs[i * self.width..(i + 1) * self.width]
    }
}

/// A validated convolution instance.
///
/// The default orientation is cross-correlation (`output[q] = sum_k
/// filter[k] * input[q*stride + k*dilation]`, indices into the padded
/// input). `flipped(true)` reverses each filter first, giving the true
/// convolution orientation.
#[derive(Clone, Debug)]
pub struct ConvProblem<'a, F> {
    input: &'a [F],
    bank: &'a FilterBank<F>,
    spec: WindowSpec,
    flip: bool,
}

impl<'a, F: Real> ConvProblem<'a, F> {
    pub fn new(
        input: &'a [F],
        bank: &'a FilterBank<F>,
        spec: WindowSpec,
    ) -> Result<Self, NnError> {
        if spec.w != bank.width() {
            return Err(NnError::WindowMismatch {
                spec: spec.w,
                bank: bank.width(),
            });
        }
        spec.output_len(input.len())?;
        Ok(ConvProblem {
            input,
            bank,
            spec,
            flip: false,
        })
    }

    pub fn flipped(mut self, flip: bool) -> Self {
        self.flip = flip;
        self
    }

    pub fn input(&self) -> &'a [F] {
        self.input
    }

    pub fn bank(&self) -> &'a FilterBank<F> {
        self.bank
    }

    pub fn spec(&self) -> WindowSpec {
        self.spec
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    pub fn output_len(&self) -> usize {
        // Validated in the constructor.
        self.spec.output_len(self.input.len()).unwrap_or(0)
    }
}

/// Input with the spec's padding materialized; borrows when there is none.
pub(crate) fn padded<'a, T: Copy>(xs: &'a [T], spec: &WindowSpec, pad: T) -> Cow<'a, [T]> {
    let (l, r) = spec.padding.amounts();
    if l == 0 && r == 0 {
        return Cow::Borrowed(xs);
    }
    let mut buf = Vec::with_capacity(xs.len() + l + r);
    buf.resize(l, pad);
    buf.extend_from_slice(xs);
    buf.resize(xs.len() + l + r, pad);
    Cow::Owned(buf)
}
