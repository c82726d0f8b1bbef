//! Live operation counters shared by every instrumented engine.

/// Tally of the group and modular operations an engine performed.
///
/// Point additions and doublings cost one unit each in the equivalent-
/// additions model; a width-`w` scalar multiplication contributes `w` of
/// each plus one entry in `ecsm_calls`. Modular multiplications and
/// squarings are tallied separately so integer-scheme runs can be mapped
/// onto the same unit scale (see [`crate::cost`]).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpCounter {
    /// Curve point additions, including those with an identity operand.
    pub point_adds: u64,
    /// Curve point doublings, including those reached when an addition's
    /// operands coincide.
    pub point_doubles: u64,
    /// Declared bit-width of every scalar multiplication, in call order.
    pub ecsm_calls: Vec<u32>,
    /// Modular multiplications.
    pub mod_muls: u64,
    /// Modular squarings.
    pub mod_sqrs: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of scalar multiplications recorded so far.
    pub fn ecsm_count(&self) -> u64 {
        self.ecsm_calls.len() as u64
    }

    /// Record one width-`width` scalar multiplication without running a
    /// ladder. The ladder costs exactly `width` additions plus `width`
    /// doublings, so the tallies are identical to a live run at that width.
    pub fn record_ecsm(&mut self, width: u32) {
        self.ecsm_calls.push(width);
        self.point_adds += u64::from(width);
        self.point_doubles += u64::from(width);
    }

    /// Fold `other` into `self`. Merging is associative, so counters from
    /// independently instrumented phases (or parallel workers) combine into
    /// the same totals regardless of grouping.
    pub fn merge(&mut self, other: &OpCounter) {
        self.point_adds += other.point_adds;
        self.point_doubles += other.point_doubles;
        self.ecsm_calls.extend_from_slice(&other.ecsm_calls);
        self.mod_muls += other.mod_muls;
        self.mod_sqrs += other.mod_sqrs;
    }
}
