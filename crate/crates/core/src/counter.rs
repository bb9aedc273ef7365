//! Operation accounting for the scan and sliding kernels.
//!
//! The complexity claims of the block algorithms are stated in terms of
//! element combines, combine tree depth, and whole-block combines. Kernels
//! accept any [`Instrument`]; production call sites pass [`NoInstrument`]
//! (which compiles to nothing), tests pass an [`OpCounter`] and assert the
//! counts.

use core::cell::Cell;

/// Receiver for combine events emitted by the kernels.
///
/// `level` is the depth of the result in the dependency tree of the
/// surrounding reduction: a sequential fold reports levels `1, 2, 3, ...`
/// while a balanced tree reduce of `n` elements never reports more than
/// `ceil(log2 n)`.
pub trait Instrument {
    /// One element-level combine at the given tree depth.
    #[inline(always)]
    fn combine_at(&self, level: u32) {
        let _ = level;
    }

    /// One whole-block (all lanes at once) combine.
    #[inline(always)]
    fn block_combine(&self) {}
}

/// Instrument that records nothing. Optimizes out entirely.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoInstrument;

impl Instrument for NoInstrument {}

/// Counter of combines, maximum tree depth, and block-level combines.
#[derive(Debug, Default)]
pub struct OpCounter {
    combines: Cell<u64>,
    max_level: Cell<u32>,
    block_combines: Cell<u64>,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Element combines observed since the last reset.
    pub fn combine_count(&self) -> u64 {
        self.combines.get()
    }

    /// Deepest dependency level observed since the last reset.
    pub fn level_count(&self) -> u32 {
        self.max_level.get()
    }

    /// Block combines observed since the last reset.
    pub fn block_op_count(&self) -> u64 {
        self.block_combines.get()
    }

    pub fn reset(&self) {
        self.combines.set(0);
        self.max_level.set(0);
        self.block_combines.set(0);
    }
}

impl Instrument for OpCounter {
    #[inline]
    fn combine_at(&self, level: u32) {
        self.combines.set(self.combines.get() + 1);
        if level > self.max_level.get() {
            self.max_level.set(level);
        }
    }

    #[inline]
    fn block_combine(&self) {
        self.block_combines.set(self.block_combines.get() + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counter_tracks_and_resets() {
        let c = OpCounter::new();
        c.combine_at(3);
        c.combine_at(1);
        c.block_combine();
        assert_eq!(c.combine_count(), 2);
        assert_eq!(c.level_count(), 3);
        assert_eq!(c.block_op_count(), 1);
        c.reset();
        assert_eq!(c.combine_count(), 0);
        assert_eq!(c.level_count(), 0);
        assert_eq!(c.block_op_count(), 0);
    }
}
