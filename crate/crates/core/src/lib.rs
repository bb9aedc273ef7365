//! Sliding-window sums over arbitrary associative operators, evaluated with
//! vector-friendly block algorithms, plus the NN primitives (pooling and 1-D
//! convolution) that fall out of them.
//!
//! The crate is organized around one problem: given `x_0..x_{N-1}` and a
//! window of width `w`, produce `output[i] = x_i (+) ... (+) x_{i+w-1}` for an
//! associative `(+)` with an identity. [`sliding`] holds four block
//! formulations of that loop together with the brute-force oracle they are
//! all checked against. [`operators`] supplies the operator set, including a
//! non-commutative pair operator that turns a dot product into a pure
//! reduction. [`nn`] instantiates the sliding machinery as average/min/max
//! pooling and dense 1-D convolution; [`baseline`] holds the deliberately
//! simple reference paths (naive convolution and im2col + blocked GEMM) used
//! for conformance and speedup reporting.
//!
//! Everything here is `no_std` + `alloc`; timing, file formats, and the CLI
//! live in the companion `slidesum` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod baseline;
pub mod counter;
pub mod nn;
pub mod operators;
pub mod scan;
pub mod sliding;
pub mod tolerance;

pub use counter::{Instrument, NoInstrument, OpCounter};
pub use operators::{Add, GammaPair, Max, Min, Operator, Real};
pub use scan::ScanMode;
pub use sliding::{LaneBlock, SlidingProblem};
