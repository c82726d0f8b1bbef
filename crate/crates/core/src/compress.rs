//! Column compression for plaintext–ciphertext products.
//!
//! Multiplying a ciphertext by every entry of a plaintext column wastes work
//! whenever entries repeat — and after sorting, consecutive differences of
//! bounded values repeat heavily. Compression therefore iterates: stable
//! sort, deduplicate, then replace the surviving values by their consecutive
//! differences, keeping a per-level position map. After `N` levels only the
//! final handful of values is multiplied by the ciphertext; everything else
//! is rebuilt with ciphertext additions by replaying the levels backwards
//! (prefix sums undo the differences, gathers undo the sort/dedup).
//!
//! Zero entries never reach the multiply stage: they are stripped up front
//! and their products are the free additive identity. Every level therefore
//! holds strictly positive values, and the deduplicated vectors are strictly
//! increasing, so no level reintroduces a zero.
//!
//! Cost accounting, fixed by [`IterationCounts`]: the final level's length
//! `n_N` is the multiplication count, and each backward prefix sum spends
//! exactly one addition per element — the scan is seeded with the additive
//! identity — for a total of `n_1 + ... + n_{N-1}` additions.

use thiserror::Error;

use crate::ahe::Ahe;
use crate::counter::OpCounter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompressError {
    #[error("cannot compress an empty column")]
    EmptyColumn,
    #[error("level count must be in 1..=8, got {0}")]
    BadLevelCount(u32),
}

/// Operation counts implied by one column's compression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationCounts {
    /// Deduplicated length `n_w` after each level, in level order.
    pub levels: Vec<u32>,
    /// Plaintext–ciphertext multiplications: the final level's length. Zero
    /// only for an all-zero column.
    pub mult_count: u64,
    /// Ciphertext additions spent reconstructing: `sum of n_w for w < N`.
    pub add_count: u64,
}

/// A column reduced to its final-level values plus the trail needed to
/// rebuild the full column from their products.
#[derive(Debug, Clone)]
pub struct CompressedColumn {
    original_len: usize,
    /// Positions of the original column's nonzero entries, in order.
    nonzero_idx: Vec<u32>,
    /// For each level, the map from pre-sort element position to the index
    /// of its value in that level's deduplicated vector.
    level_maps: Vec<Vec<u32>>,
    /// Final-level values (strictly increasing, all nonzero).
    values: Vec<u64>,
    counts: IterationCounts,
}

/// Run `levels` rounds of sort/dedup/difference over a column.
pub fn compress(column: &[u64], levels: u32) -> Result<CompressedColumn, CompressError> {
    if column.is_empty() {
        return Err(CompressError::EmptyColumn);
    }
    if !(1..=8).contains(&levels) {
        return Err(CompressError::BadLevelCount(levels));
    }

    let mut nonzero_idx = Vec::new();
    let mut cur: Vec<u64> = Vec::new();
    for (i, &v) in column.iter().enumerate() {
        if v != 0 {
            nonzero_idx.push(u32::try_from(i).expect("column length fits u32"));
            cur.push(v);
        }
    }

    let mut level_lens = Vec::with_capacity(levels as usize);
    let mut level_maps = Vec::with_capacity(levels as usize);
    for w in 1..=levels {
        let mut order: Vec<u32> = (0..cur.len() as u32).collect();
        order.sort_by_key(|&i| cur[i as usize]);
        let mut deduped: Vec<u64> = Vec::new();
        let mut map = vec![0u32; cur.len()];
        for &pos in &order {
            let v = cur[pos as usize];
            if deduped.last() != Some(&v) {
                deduped.push(v);
            }
            map[pos as usize] = (deduped.len() - 1) as u32;
        }
        level_lens.push(deduped.len() as u32);
        level_maps.push(map);
        if w != levels {
            for i in (1..deduped.len()).rev() {
                deduped[i] -= deduped[i - 1];
            }
        }
        cur = deduped;
    }

    let add_count = level_lens[..level_lens.len() - 1]
        .iter()
        .map(|&n| u64::from(n))
        .sum();
    let mult_count = u64::from(*level_lens.last().expect("at least one level"));
    Ok(CompressedColumn {
        original_len: column.len(),
        nonzero_idx,
        level_maps,
        values: cur,
        counts: IterationCounts {
            levels: level_lens,
            mult_count,
            add_count,
        },
    })
}

impl CompressedColumn {
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    /// The values that actually get multiplied by a ciphertext.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn counts(&self) -> &IterationCounts {
        &self.counts
    }

    /// Walk the trail backwards: prefix-sum each level below the last, then
    /// gather through that level's position map; finally scatter around the
    /// original zeros. `products` must hold one item per final-level value.
    fn reconstruct<T: Clone, Z, A>(&self, products: Vec<T>, mut zero: Z, mut add: A) -> Vec<T>
    where
        Z: FnMut() -> T,
        A: FnMut(&T, &T) -> T,
    {
        assert_eq!(products.len(), self.values.len(), "one product per value");
        let mut cur = products;
        for (w, map) in self.level_maps.iter().enumerate().rev() {
            if w != self.level_maps.len() - 1 {
                let mut acc = zero();
                for slot in cur.iter_mut() {
                    acc = add(&acc, slot);
                    *slot = acc.clone();
                }
            }
            cur = map.iter().map(|&d| cur[d as usize].clone()).collect();
        }
        let mut out = vec![zero(); self.original_len];
        for (slot, &idx) in self.nonzero_idx.iter().enumerate() {
            out[idx as usize] = cur[slot].clone();
        }
        out
    }
}

/// Plaintext vector–scalar product through the compression trail. The
/// arithmetic mirrors the encrypted path exactly, so this doubles as its
/// oracle.
pub fn vs_mul_plain(col: &CompressedColumn, c: u64) -> Vec<u64> {
    let products: Vec<u64> = col
        .values
        .iter()
        .map(|&v| {
            u64::try_from(u128::from(v) * u128::from(c)).expect("product fits u64")
        })
        .collect();
    col.reconstruct(products, || 0u64, |a, b| a.checked_add(*b).expect("sum fits u64"))
}

/// Encrypted vector–scalar product: multiply the ciphertext by each
/// final-level value (billed at `width`), then rebuild the column with
/// counted ciphertext additions. The counter gains exactly
/// `2 * mult_count` ladder records and `add_count` ciphertext additions.
pub fn vs_mul_encrypted<E: Ahe>(
    engine: &E,
    ctr: &mut OpCounter,
    col: &CompressedColumn,
    ct: &E::Ciphertext,
    width: u32,
) -> Vec<E::Ciphertext> {
    let products: Vec<E::Ciphertext> = col
        .values
        .iter()
        .map(|&v| {
            let s = i64::try_from(v).expect("column entry fits i64");
            engine.ct_scalar_mul(ctr, s, width, ct)
        })
        .collect();
    col.reconstruct(products, || engine.zero(), |a, b| engine.ct_add(ctr, a, b))
}
