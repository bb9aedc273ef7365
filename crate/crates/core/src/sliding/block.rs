//! Portable model of a `P`-lane vector register.
//!
//! `P` is a compile-time power of two; the array form lets the compiler map
//! lane loops onto whatever vector width the target has while keeping the
//! semantics exact and platform-independent. All lane movement fills vacated
//! positions with a caller-supplied value, which the sliding kernels always
//! set to the operator identity.

use crate::counter::Instrument;
use crate::operators::Operator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LaneBlock<T, const P: usize> {
    lanes: [T; P],
}

impl<T: Copy, const P: usize> LaneBlock<T, P> {
    const LANES_POW2: () = assert!(P.is_power_of_two(), "lane count must be a power of two");

    /// All lanes set to `v`.
    #[inline]
    pub fn filled(v: T) -> Self {
        let () = Self::LANES_POW2;
        LaneBlock { lanes: [v; P] }
    }

    /// First `min(xs.len(), P)` lanes from the front of `xs`, rest `fill`.
    #[inline]
    pub fn from_slice(xs: &[T], fill: T) -> Self {
        let mut lanes = [fill; P];
        let take = xs.len().min(P);
        lanes[..take].copy_from_slice(&xs[..take]);
        LaneBlock { lanes }
    }

    /// `x` in lanes `[0, w)`, `fill` elsewhere. `w` saturates at `P`.
    #[inline]
    pub fn broadcast_window(x: T, w: usize, fill: T) -> Self {
        let mut lanes = [fill; P];
        for lane in lanes.iter_mut().take(w) {
            *lane = x;
        }
        LaneBlock { lanes }
    }

    #[inline]
    pub fn lanes(&self) -> &[T; P] {
        &self.lanes
    }

    #[inline]
    pub fn lane(&self, i: usize) -> T {
        self.lanes[i]
    }

    #[inline]
    pub fn set_lane(&mut self, i: usize, v: T) {
        self.lanes[i] = v;
    }

    /// Lane-wise combine; reports one block op to `c`.
    #[inline]
    pub fn combine<O: Operator<T>, C: Instrument>(&self, op: &O, rhs: &Self, c: &C) -> Self {
        let mut lanes = self.lanes;
        for (lane, &r) in lanes.iter_mut().zip(rhs.lanes.iter()) {
            *lane = op.combine(*lane, r);
        }
        c.block_combine();
        LaneBlock { lanes }
    }

    /// Lanes move toward index 0 by `k`; the vacated tail becomes `fill`.
    #[inline]
    pub fn shift_left(&self, k: usize, fill: T) -> Self {
        let mut lanes = [fill; P];
        for i in 0..P.saturating_sub(k) {
            lanes[i] = self.lanes[i + k];
        }
        LaneBlock { lanes }
    }

    /// Lanes move away from index 0 by `k`; the vacated head becomes `fill`.
    #[inline]
    pub fn shift_right(&self, k: usize, fill: T) -> Self {
        let mut lanes = [fill; P];
        for i in k..P {
            lanes[i] = self.lanes[i - k];
        }
        LaneBlock { lanes }
    }

    /// Lanes `[offset, offset + P)` of the concatenation `lo ++ hi`.
    ///
    /// `offset = 0` returns `lo`, `offset = P` returns `hi`. This is the
    /// portable form of the two-register extract that hardware exposes as a
    /// single instruction (`EXT`, `vslide*`, two-source permutes).
    ///
    /// Panics if `offset > P`.
    #[inline]
    pub fn slide(lo: &Self, hi: &Self, offset: usize) -> Self {
        assert!(offset <= P, "slide offset {offset} out of range 0..={P}");
        let mut lanes = lo.lanes;
        for (t, lane) in lanes.iter_mut().enumerate() {
            let j = offset + t;
            *lane = if j < P {
                lo.lanes[j]
            } else {
                hi.lanes[j - P]
            };
        }
        LaneBlock { lanes }
    }
}

impl<T: Copy, const P: usize> From<[T; P]> for LaneBlock<T, P> {
    fn from(lanes: [T; P]) -> Self {
        LaneBlock { lanes }
    }
}
