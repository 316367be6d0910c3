//! Structural bounds on the Cookie Monster number and the set predicates
//! that make some of them tight.
//!
//! For a set of `k` jars with largest value `s_k`, the number of moves
//! needed to empty it always lies between `floor(log2 k) + 1` and `k`. The
//! binary strategy gives the independent ceiling `floor(log2 s_k) + 1`, and
//! flattening the set against its smallest jar gives
//! `2 + floor(log2 (s_k - s_1))`.

use crate::error::Error;
use crate::jar::JarSet;

/// Information-theoretic floor: `floor(log2 k) + 1`, or 0 for no jars.
///
/// Each move at best distinguishes jar subsets by whether they were touched,
/// and `n` moves separate at most `2^n - 1` distinct nonzero values.
pub fn lower_bound(set: &JarSet) -> usize {
    match set.len() {
        0 => 0,
        k => (k as u64).ilog2() as usize + 1,
    }
}

/// One move per jar: `k`.
pub fn upper_bound_trivial(set: &JarSet) -> usize {
    set.len()
}

/// Binary strategy ceiling: `floor(log2 s_k) + 1`.
///
/// Taking `2^i` from every jar whose count has bit `i` set clears all jars
/// in one pass over the bits of `s_k`.
pub fn upper_bound_binary(set: &JarSet) -> Result<usize, Error> {
    set.max_value()
        .map(|m| m.ilog2() as usize + 1)
        .ok_or(Error::EmptySet {
            op: "upper_bound_binary",
        })
}

/// Flattening ceiling for `k >= 2` jars: `2 + floor(log2 (s_k - s_1))`.
///
/// One move takes `s_1` from every jar, leaving values at most
/// `s_k - s_1`; the binary strategy finishes from there.
pub fn upper_bound_diameter(set: &JarSet) -> Result<usize, Error> {
    if set.len() < 2 {
        return Err(Error::TooFewJars {
            op: "upper_bound_diameter",
            need: 2,
            got: set.len(),
        });
    }
    let diameter = set.max_value().unwrap() - set.min_value().unwrap();
    Ok(2 + diameter.ilog2() as usize)
}

/// True when every jar beyond the first exceeds the sum of all smaller
/// jars. Such sets cannot share moves between jars, so they need exactly
/// `k` moves.
pub fn is_superincreasing(set: &JarSet) -> bool {
    let mut sum: u128 = 0;
    for (i, v) in set.iter().enumerate() {
        if i > 0 && u128::from(v) <= sum {
            return false;
        }
        sum += u128::from(v);
    }
    true
}

/// True when the set contains every power of two up to its largest jar.
/// The empty set qualifies vacuously.
pub fn is_two_powerful(set: &JarSet) -> bool {
    let Some(max) = set.max_value() else {
        return true;
    };
    let mut p: u64 = 1;
    while p <= max {
        if !set.contains(p) {
            return false;
        }
        match p.checked_mul(2) {
            Some(next) => p = next,
            None => break,
        }
    }
    true
}

/// Exact Cookie Monster number of a two-powerful set:
/// `floor(log2 s_k) + 1`, or 0 for no jars.
///
/// The binary strategy needs that many moves, and no fewer suffice because
/// the set's `floor(log2 s_k) + 1` powers of two are superincreasing and a
/// superset never gets cheaper than its subsets.
pub fn cm_two_powerful(set: &JarSet) -> Result<usize, Error> {
    if !is_two_powerful(set) {
        return Err(Error::NotTwoPowerful);
    }
    Ok(set.max_value().map_or(0, |m| m.ilog2() as usize + 1))
}
