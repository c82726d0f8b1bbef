//! Analytic operation-count model and counter summaries.
//!
//! Everything is expressed in a single unit: one elliptic-curve point
//! addition (a doubling costs the same). A scalar multiplication by a `t`-bit
//! scalar runs a ladder of `t` additions and `t` doublings, so one ciphertext
//! scalar multiplication (two component ladders) costs `4t` units and one
//! ciphertext addition (two component point additions) costs `2`.
//!
//! Modular-arithmetic schemes map onto the same scale by the analogous rule:
//! a `t`-bit ciphertext exponentiation is `t` multiplications plus `t`
//! squarings against `2` per ciphertext addition, i.e. every modular
//! multiplication or squaring counts `2` units. Both back ends therefore
//! price out to the same formulas below.

use crate::compress::IterationCounts;
use crate::counter::OpCounter;

/// A live elliptic-curve counter folded into equivalent-addition units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivCount {
    /// All point work: additions plus doublings.
    pub total: u64,
    /// The share attributable to scalar-multiplication ladders (`2w` per
    /// recorded ladder of width `w`).
    pub from_ecsms: u64,
    /// The remainder: point work done by ciphertext additions.
    pub from_ct_adds: u64,
}

/// Fold an elliptic-curve counter into equivalent additions.
pub fn counter_to_equiv(ctr: &OpCounter) -> EquivCount {
    let total = ctr.point_adds + ctr.point_doubles;
    let from_ecsms = ctr.ecsm_calls.iter().map(|&w| 2 * u64::from(w)).sum();
    EquivCount {
        total,
        from_ecsms,
        from_ct_adds: total - from_ecsms,
    }
}

/// Fold a modular-arithmetic counter into the same unit scale: two units per
/// modular multiplication or squaring.
pub fn paillier_equiv(ctr: &OpCounter) -> u64 {
    2 * (ctr.mod_muls + ctr.mod_sqrs)
}

/// Schoolbook plaintext-vector x ciphertext inner product: `n` scalar
/// multiplications at `4t` each (the `n-1` additions are part of them here
/// only when folded into matrices; the bare vector product is `4nt`).
pub fn schoolbook_vector_equiv(n: u64, t: u32) -> u64 {
    4 * n * u64::from(t)
}

/// Schoolbook square matrix product: `n^3` scalar multiplications plus
/// `n^2 (n-1)` ciphertext additions.
pub fn schoolbook_matrix_equiv(n: u64, t: u32) -> u64 {
    n * n * n * 4 * u64::from(t) + 2 * n * n * (n - 1)
}

/// Schoolbook rectangular product `(m x n) * (n x l)`.
pub fn schoolbook_matrix_equiv_rect(m: u64, n: u64, l: u64, t: u32) -> u64 {
    m * l * n * 4 * u64::from(t) + 2 * m * l * (n - 1)
}

/// Number of scalar multiplications in the seven-product recursion:
/// `7^(log2 n)`.
pub fn strassen_mult_count(n: u64) -> u64 {
    assert!(n.is_power_of_two(), "recursion needs a power of two");
    7u64.pow(n.trailing_zeros())
}

/// Ciphertext additions in the seven-product recursion:
/// `A(n) = 7 A(n/2) + 13 (n/2)^2`, `A(1) = 0`.
pub fn strassen_ct_adds(n: u64) -> u64 {
    assert!(n.is_power_of_two(), "recursion needs a power of two");
    if n == 1 {
        0
    } else {
        let h = n / 2;
        7 * strassen_ct_adds(h) + 13 * h * h
    }
}

/// Seven-product square matrix cost in equivalent additions.
pub fn strassen_matrix_equiv(n: u64, t: u32) -> u64 {
    strassen_mult_count(n) * 4 * u64::from(t) + 2 * strassen_ct_adds(n)
}

/// Compression-based vector product cost for one compressed column.
pub fn proposed_vector_equiv(counts: &IterationCounts, t: u32) -> u64 {
    4 * u64::from(t) * counts.mult_count + 2 * counts.add_count
}

/// Compression-based matrix cost: each column's compressed product is reused
/// across the `l` output columns, then the `n` outer products are summed with
/// `m l (n-1)` ciphertext additions.
pub fn proposed_matrix_equiv(per_column: &[IterationCounts], t: u32, m: u64, l: u64) -> u64 {
    let n = per_column.len() as u64;
    let per_col: u64 = per_column
        .iter()
        .map(|c| l * proposed_vector_equiv(c, t))
        .sum();
    per_col + 2 * m * l * (n - 1)
}
