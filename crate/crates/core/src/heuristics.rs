//! Greedy step rules played to completion: none is optimal in general, but
//! each makes progress every move and serves as a cheap upper bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jar::{apply_move, JarSet, Move, MovePlan};

/// Jar-count cap for [`emja_step`], which enumerates every subset of jars.
pub const DEFAULT_EMJA_MAX_JARS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Empty the Most Jars: maximize the drop in distinct jar count.
    Emja,
    /// Take the Cake: maximize cookies removed in one move.
    Tca,
    /// Binary: strip the highest power of two from every jar that holds it.
    Ba,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algorithm::Emja => "emja",
            Algorithm::Tca => "tca",
            Algorithm::Ba => "ba",
        };
        f.write_str(name)
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "emja" => Ok(Algorithm::Emja),
            "tca" => Ok(Algorithm::Tca),
            "ba" => Ok(Algorithm::Ba),
            other => Err(format!(
                "unknown algorithm `{other}` (expected emja, tca, or ba)"
            )),
        }
    }
}

/// Knobs for [`run_heuristic_with`].
#[derive(Debug, Clone, Copy)]
pub struct HeuristicOptions {
    /// Overrides the jar-count cap on EMJA's subset enumeration.
    pub emja_max_jars: usize,
}

impl Default for HeuristicOptions {
    fn default() -> HeuristicOptions {
        HeuristicOptions {
            emja_max_jars: DEFAULT_EMJA_MAX_JARS,
        }
    }
}

/// A heuristic played from some starting set until no jars remain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeuristicRun {
    pub algorithm: Algorithm,
    pub plan: MovePlan,
    pub move_count: usize,
    /// Cookies removed by each move: amount times jars targeted.
    pub cookies_removed: Vec<u128>,
}

/// One EMJA move: over every non-empty subset of jars and every candidate
/// amount, pick the move that removes the most distinct values from the
/// state.
///
/// Candidate amounts for a subset `T` are the differences `t - v` with `t`
/// in `T`, `v` a jar value or zero, and `0 < t - v <= min(T)`. These are
/// complete: touched jars keep their pairwise differences, so the distinct
/// count only drops when a touched jar lands on zero or on an untouched
/// value, which happens exactly at those amounts. Ties prefer more cookies
/// removed, then the larger amount, then the lexicographically smallest
/// target list.
pub fn emja_step(set: &JarSet) -> Result<Move, Error> {
    emja_step_limited(set, DEFAULT_EMJA_MAX_JARS)
}

/// [`emja_step`] with an explicit jar-count cap. Cost grows as `2^k`.
pub fn emja_step_limited(set: &JarSet, max_jars: usize) -> Result<Move, Error> {
    if set.is_empty() {
        return Err(Error::EmptySet { op: "emja_step" });
    }
    let k = set.len();
    if k > max_jars {
        return Err(Error::TooManyJars {
            op: "emja_step",
            limit: max_jars,
            got: k,
        });
    }

    let values = set.values();
    // (reduction, cookies removed, amount) maximized, then targets minimized.
    let mut best: Option<(usize, u128, u64, Vec<u64>)> = None;
    let mut subset: Vec<u64> = Vec::with_capacity(k);
    let mut candidates: Vec<u64> = Vec::new();

    for mask in 1u64..(1 << k) {
        subset.clear();
        for (i, &v) in values.iter().enumerate() {
            if mask & (1 << i) != 0 {
                subset.push(v);
            }
        }
        let min_targeted = subset[0];

        candidates.clear();
        for &t in &subset {
            if t <= min_targeted {
                candidates.push(t);
            }
            // Differences t - v within (0, min(T)] need v in [t - min(T), t).
            let from = values.partition_point(|&v| v < t - min_targeted);
            for &v in &values[from..] {
                if v >= t {
                    break;
                }
                candidates.push(t - v);
            }
        }
        candidates.sort_unstable();
        candidates.dedup();

        for &amount in &candidates {
            let mut after = k - subset.len();
            for &t in &subset {
                let w = t - amount;
                if w == 0 {
                    continue;
                }
                // Survivor; colliding with an untouched value adds nothing.
                if set.contains(w) && !subset.contains(&w) {
                    continue;
                }
                after += 1;
            }
            let reduction = k - after;
            let removed = u128::from(amount) * subset.len() as u128;
            let better = match &best {
                None => true,
                Some((r, c, a, targets)) => {
                    (reduction, removed, amount) > (*r, *c, *a)
                        || ((reduction, removed, amount) == (*r, *c, *a) && subset < *targets)
                }
            };
            if better {
                best = Some((reduction, removed, amount, subset.clone()));
            }
        }
    }

    let (_, _, amount, targets) = best.expect("a single-jar emptying move always exists");
    Ok(Move { amount, targets })
}

/// One TCA move: the amount is a jar value `a` maximizing `a` times the
/// number of jars of at least `a`; targets are all such jars. Ties prefer
/// the larger amount.
pub fn tca_step(set: &JarSet) -> Result<Move, Error> {
    if set.is_empty() {
        return Err(Error::EmptySet { op: "tca_step" });
    }
    let values = set.values();
    let k = values.len();
    let mut best: Option<(u128, u64, usize)> = None;
    for (i, &a) in values.iter().enumerate() {
        let removed = u128::from(a) * (k - i) as u128;
        if best.is_none_or(|(r, b, _)| (removed, a) > (r, b)) {
            best = Some((removed, a, i));
        }
    }
    let (_, amount, index) = best.unwrap();
    Ok(Move {
        amount,
        targets: values[index..].to_vec(),
    })
}

/// One binary-strategy move: with `m = floor(log2 s_k)`, take `2^m` from
/// every jar of at least `2^m`.
pub fn ba_step(set: &JarSet) -> Result<Move, Error> {
    let max = set.max_value().ok_or(Error::EmptySet { op: "ba_step" })?;
    let amount = 1u64 << max.ilog2();
    let targets: Vec<u64> = set.iter().filter(|&v| v >= amount).collect();
    Ok(Move { amount, targets })
}

/// Plays `algorithm` from `set` until empty.
pub fn run_heuristic(set: &JarSet, algorithm: Algorithm) -> Result<HeuristicRun, Error> {
    run_heuristic_with(set, algorithm, &HeuristicOptions::default())
}

/// [`run_heuristic`] with explicit options.
///
/// Terminates on any input: EMJA lowers the distinct count every move, and
/// TCA and BA lower the cookie total every move.
pub fn run_heuristic_with(
    set: &JarSet,
    algorithm: Algorithm,
    options: &HeuristicOptions,
) -> Result<HeuristicRun, Error> {
    let mut state = set.clone();
    let mut plan = MovePlan::new();
    let mut cookies_removed = Vec::new();

    while !state.is_empty() {
        let mv = match algorithm {
            Algorithm::Emja => emja_step_limited(&state, options.emja_max_jars)?,
            Algorithm::Tca => tca_step(&state)?,
            Algorithm::Ba => ba_step(&state)?,
        };
        cookies_removed.push(u128::from(mv.amount) * mv.targets.len() as u128);
        state = apply_move(&state, &mv).map_err(Error::InvalidMove)?;
        plan.push(mv);
    }

    Ok(HeuristicRun {
        algorithm,
        move_count: plan.len(),
        plan,
        cookies_removed,
    })
}
