//! Littlewood-Richardson coefficients.
//!
//! `c^ν_{λμ}` counts LR skew tableaux of shape `ν/λ` and content `μ`: the
//! cells labelled `r` form a horizontal strip of size `μ_r`, and the reverse
//! reading word (rows top to bottom, each row right to left) is a lattice word.
//! Products are computed without any box restriction and cached process-wide;
//! callers filter the result to their box.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::partition::Partition;

/// Expansion `σ_λ σ_μ = Σ c^ν σ_ν`, sorted by `ν`.
pub type LrExpansion = Arc<Vec<(Partition, BigInt)>>;

fn cache() -> &'static Mutex<HashMap<(Partition, Partition), LrExpansion>> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), LrExpansion>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn key(a: &Partition, b: &Partition) -> (Partition, Partition) {
    if a >= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Full (unrestricted) Littlewood-Richardson product of two Schur classes.
pub fn lr_product(a: &Partition, b: &Partition) -> LrExpansion {
    let key = key(a, b);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    // Enumerate with the longer partition as the base shape: fewer labels to place.
    let (base, content) = if key.0.len() >= key.1.len() {
        (&key.0, &key.1)
    } else {
        (&key.1, &key.0)
    };
    let result = Arc::new(compute(base, content));
    cache().lock().unwrap().entry(key).or_insert(result).clone()
}

/// A single coefficient `c^ν_{λμ}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> BigInt {
    lr_product(lambda, mu)
        .iter()
        .find(|(p, _)| p == nu)
        .map(|(_, c)| c.clone())
        .unwrap_or_default()
}

/// Entries currently cached, sorted for deterministic persistence.
pub fn cache_snapshot() -> Vec<((Partition, Partition), LrExpansion)> {
    let mut v: Vec<_> = cache()
        .lock()
        .unwrap()
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// Pre-populates the cache, e.g. from disk. Existing entries win.
pub fn cache_seed(
    entries: impl IntoIterator<Item = (Partition, Partition, Vec<(Partition, BigInt)>)>,
) {
    let mut c = cache().lock().unwrap();
    for (a, b, expansion) in entries {
        c.entry(key(&a, &b)).or_insert_with(|| Arc::new(expansion));
    }
}

fn compute(base: &Partition, content: &Partition) -> Vec<(Partition, BigInt)> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::new();
    let shape = base.parts().to_vec();
    place_label(&shape, content.parts(), 0, &[], &mut acc);
    acc.into_iter().map(|(p, c)| (p, BigInt::from(c))).collect()
}

/// Places the strip for label index `r` (content part `content[r]`), then recurses.
/// `prev` holds the per-row counts of label `r - 1`.
fn place_label(
    shape: &[usize],
    content: &[usize],
    r: usize,
    prev: &[usize],
    acc: &mut BTreeMap<Partition, u64>,
) {
    if r == content.len() {
        *acc.entry(Partition::from_sorted(shape.to_vec()))
            .or_insert(0) += 1;
        return;
    }
    let mut added = vec![0usize; shape.len() + 1];
    strip_rows(
        shape, content, r, prev, 0, content[r], 0, 0, &mut added, acc,
    );
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    shape: &[usize],
    content: &[usize],
    r: usize,
    prev: &[usize],
    row: usize,
    remaining: usize,
    placed_so_far: usize,
    prev_above: usize,
    added: &mut Vec<usize>,
    acc: &mut BTreeMap<Partition, u64>,
) {
    if remaining == 0 {
        let mut next: Vec<usize> = shape.to_vec();
        next.push(0);
        for (i, a) in added.iter().enumerate() {
            next[i] += a;
        }
        while next.last() == Some(&0) {
            next.pop();
        }
        let counts = added.clone();
        place_label(&next, content, r + 1, &counts, acc);
        return;
    }
    if row > shape.len() {
        return;
    }
    let cur = shape.get(row).copied().unwrap_or(0);
    // horizontal strip: stay weakly below the old row above
    let room = if row == 0 {
        remaining
    } else {
        shape[row - 1] - cur
    };
    // lattice: labels r in rows <= row may not outnumber labels r-1 in rows < row
    let lattice_cap = if r == 0 {
        remaining
    } else {
        prev_above.saturating_sub(placed_so_far)
    };
    let max_here = room.min(remaining).min(lattice_cap);
    let prev_here = prev.get(row).copied().unwrap_or(0);
    for a in (0..=max_here).rev() {
        added[row] = a;
        strip_rows(
            shape,
            content,
            r,
            prev,
            row + 1,
            remaining - a,
            placed_so_far + a,
            prev_above + prev_here,
            added,
            acc,
        );
    }
    added[row] = 0;
}
