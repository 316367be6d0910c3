//! Exact Cookie Monster numbers by two independent routes.
//!
//! [`cm_exact`] searches for a minimal multiset of move amounts such that
//! every jar is a sub-multiset sum of it. Emptying in `n` moves and covering
//! with `n` amounts are the same thing: moves commute, each jar ends up
//! expressed as the sum of the amounts that touched it, and conversely any
//! covering multiset replays as a valid plan in nonincreasing amount order.
//!
//! [`cm_bfs`] plays the game outright: breadth-first search over canonical
//! states expanding every legal move. It exists to disagree with `cm_exact`
//! if either is wrong, so the two share no search logic.

use std::collections::HashSet;

use serde::Serialize;

use crate::bounds::{lower_bound, upper_bound_binary, upper_bound_trivial};
use crate::error::Error;
use crate::jar::{Certificate, JarSet, Move, MovePlan};

/// Default cap on cover-search nodes (candidate amount placements).
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Limits for the breadth-first oracle, which holds every visited state in
/// memory and expands every legal move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsCaps {
    /// Maximum number of distinct states to visit.
    pub max_states: usize,
    /// Largest jar count accepted.
    pub max_jars: usize,
    /// Largest jar value accepted.
    pub max_value: u64,
}

impl Default for BfsCaps {
    fn default() -> BfsCaps {
        BfsCaps {
            max_states: 1_000_000,
            max_jars: 6,
            max_value: 40,
        }
    }
}

/// Output of [`cm_exact`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    /// The Cookie Monster number: minimum moves to empty the set.
    pub cm: usize,
    /// Minimal amounts with one sub-multiset assignment per jar.
    pub certificate: Certificate,
    /// Candidate placements examined across all deepening levels.
    pub nodes_explored: u64,
}

/// True when `value` is a sub-multiset sum of `amounts`.
///
/// Order-independent: the achievable-sum set is folded over the amounts with
/// sums capped at `value`.
pub fn representable(value: u64, amounts: &[u64]) -> bool {
    if value == 0 {
        return true;
    }
    let mut sums: Vec<u64> = vec![0];
    for &a in amounts {
        if a == 0 || a > value {
            continue;
        }
        sums = merge_shifted(&sums, a, value);
        if sums.binary_search(&value).is_ok() {
            return true;
        }
    }
    false
}

// Sorted distinct union of `sums` and `sums + shift`, dropping entries above
// `cap`.
fn merge_shifted(sums: &[u64], shift: u64, cap: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(sums.len() * 2);
    let mut i = 0;
    let mut j = 0;
    while i < sums.len() || j < sums.len() {
        let left = sums.get(i).copied();
        let right = if j < sums.len() {
            match sums[j].checked_add(shift) {
                Some(v) if v <= cap => Some(v),
                _ => {
                    j += 1;
                    continue;
                }
            }
        } else {
            None
        };
        let next = match (left, right) {
            (Some(l), Some(r)) => {
                if l <= r {
                    i += 1;
                    if l == r {
                        j += 1;
                    }
                    l
                } else {
                    j += 1;
                    r
                }
            }
            (Some(l), None) => {
                i += 1;
                l
            }
            (None, Some(r)) => {
                j += 1;
                r
            }
            (None, None) => break,
        };
        out.push(next);
    }
    out
}

enum LevelOutcome {
    Found(Vec<u64>),
    Exhausted,
    BudgetOut,
}

struct LevelSearch<'a> {
    jars: &'a [u64],
    size: usize,
    budget: u64,
    nodes: u64,
}

impl LevelSearch<'_> {
    // Every jar must be expressible as one achievable prefix sum plus at
    // most `slots` future amounts, each no larger than `last`.
    fn all_jars_feasible(&self, sums: &[u64], slots: usize, last: u64) -> bool {
        let headroom = (slots as u128) * u128::from(last);
        self.jars.iter().all(|&v| {
            let best = match sums.binary_search(&v) {
                Ok(_) => return true,
                Err(0) => return false,
                Err(i) => sums[i - 1],
            };
            u128::from(v - best) <= headroom
        })
    }

    // Depth-first over nonincreasing amount prefixes, candidates ascending,
    // so the first full cover found is the lexicographically smallest.
    fn descend(&mut self, chosen: &mut Vec<u64>, sums: &[u64], sum_chosen: u64) -> LevelOutcome {
        if chosen.len() == self.size {
            return LevelOutcome::Found(chosen.clone());
        }
        let slots = (self.size - chosen.len()) as u64;
        let max_jar = *self.jars.last().unwrap();
        let need = max_jar.saturating_sub(sum_chosen);
        let low = need.div_ceil(slots).max(1);
        let high = chosen.last().copied().unwrap_or(max_jar);
        for a in low..=high {
            self.nodes += 1;
            if self.nodes >= self.budget {
                return LevelOutcome::BudgetOut;
            }
            let next_sums = merge_shifted(sums, a, max_jar);
            if !self.all_jars_feasible(&next_sums, slots as usize - 1, a) {
                continue;
            }
            chosen.push(a);
            match self.descend(chosen, &next_sums, sum_chosen + a) {
                LevelOutcome::Exhausted => {
                    chosen.pop();
                }
                found_or_out => return found_or_out,
            }
        }
        LevelOutcome::Exhausted
    }
}

/// Minimum number of moves to empty `set`, with a certificate.
///
/// Iterative deepening on the number of amounts, starting at the larger of
/// the information-theoretic floor and the greedy chain bound (jars that
/// each exceed the sum of the chain before them force one move apiece), and
/// stopping no later than
/// `min(k, floor(log2 s_k) + 1)`, where a cover always exists. Within a
/// level, candidates run over `1..=s_k` in nonincreasing prefixes; a prefix
/// dies when some jar cannot reach any achievable sum with the remaining
/// slots. Ties resolve to the lexicographically smallest amount multiset
/// viewed in nonincreasing order.
///
/// `budget` caps candidate placements across all levels (default
/// [`DEFAULT_NODE_BUDGET`]); exceeding it reports the bounds proven so far.
pub fn cm_exact(set: &JarSet, budget: Option<u64>) -> Result<ExactResult, Error> {
    let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
    if set.is_empty() {
        return Ok(ExactResult {
            cm: 0,
            certificate: Certificate {
                amounts: Vec::new(),
                assignments: Default::default(),
            },
            nodes_explored: 0,
        });
    }

    let jars = set.values();
    let start = lower_bound(set).max(chain_lower_bound(jars));
    let stop = upper_bound_trivial(set).min(upper_bound_binary(set).expect("set is non-empty"));
    let mut nodes: u64 = 0;

    for size in start..=stop {
        let mut search = LevelSearch {
            jars,
            size,
            budget: budget - nodes,
            nodes: 0,
        };
        let outcome = search.descend(&mut Vec::with_capacity(size), &[0], 0);
        nodes += search.nodes;
        match outcome {
            LevelOutcome::Found(amounts) => {
                let certificate = build_certificate(jars, &amounts);
                return Ok(ExactResult {
                    cm: size,
                    certificate,
                    nodes_explored: nodes,
                });
            }
            LevelOutcome::Exhausted => continue,
            LevelOutcome::BudgetOut => {
                return Err(Error::NodeBudgetExhausted {
                    budget,
                    nodes,
                    lower: size,
                    upper: stop,
                })
            }
        }
    }
    unreachable!("a cover of size min(k, floor(log2 max) + 1) always exists")
}

// Greedily collects jars that each exceed the sum of the jars collected
// before them. Restricting any cover to such a chain shows no amount can
// serve two chain members, so the chain length is a valid lower bound on the
// answer and lets the deepening skip levels that cannot succeed. Greedy
// construction keeps this sound regardless of whether the chain is longest.
fn chain_lower_bound(jars: &[u64]) -> usize {
    let mut sum: u128 = 0;
    let mut links = 0;
    for &v in jars {
        if u128::from(v) > sum {
            links += 1;
            sum += u128::from(v);
        }
    }
    links
}

// Assigns each jar the greedy sub-multiset of `amounts`: scanning amounts in
// the search's nonincreasing order, take one whenever the rest of the list
// can still finish the jar. Deterministic given the amounts.
fn build_certificate(jars: &[u64], amounts: &[u64]) -> Certificate {
    let assignments = jars
        .iter()
        .map(|&jar| {
            let mut picked = Vec::new();
            let mut rest = jar;
            for (i, &a) in amounts.iter().enumerate() {
                if rest == 0 {
                    break;
                }
                if a <= rest && representable(rest - a, &amounts[i + 1..]) {
                    picked.push(a);
                    rest -= a;
                }
            }
            debug_assert_eq!(rest, 0, "search admitted an uncoverable jar");
            (jar, picked)
        })
        .collect();
    Certificate {
        amounts: amounts.to_vec(),
        assignments,
    }
}

/// Turns a valid certificate into a concrete plan, one move per amount in
/// nonincreasing order, each targeting the current values of the jars whose
/// assignment still owes that amount.
///
/// When earlier moves make two jars collide, their remaining assignments are
/// unified (equal-sum tails can stand in for each other), so a move never
/// needs to split jars that share a value. Minimal certificates always
/// replay; a certificate with an amount no jar ever uses is rejected.
pub fn plan_from_certificate(set: &JarSet, cert: &Certificate) -> Result<MovePlan, Error> {
    cert.validate(set)?;

    let mut amounts = cert.amounts.clone();
    amounts.sort_unstable_by(|a, b| b.cmp(a));

    // Per original jar: remaining value and amounts still owed.
    let mut remaining: Vec<u64> = set.values().to_vec();
    let mut owed: Vec<Vec<u64>> = set
        .iter()
        .map(|v| {
            let mut tail = cert.assignments[&v].clone();
            tail.sort_unstable_by(|a, b| b.cmp(a));
            tail
        })
        .collect();

    let mut plan = MovePlan::with_capacity(amounts.len());
    for &amount in &amounts {
        // Jars sharing a value must agree on their remaining amounts; the
        // tails have equal sums, so adopt the first jar's tail.
        for i in 0..remaining.len() {
            for j in (i + 1)..remaining.len() {
                if remaining[i] > 0 && remaining[i] == remaining[j] && owed[i] != owed[j] {
                    owed[j] = owed[i].clone();
                }
            }
        }
        let mut targets: Vec<u64> = Vec::new();
        for (rem, tail) in remaining.iter().zip(&owed) {
            if *rem > 0 && tail.contains(&amount) {
                targets.push(*rem);
            }
        }
        targets.sort_unstable();
        targets.dedup();
        if targets.is_empty() {
            return Err(Error::InvalidCertificate(format!(
                "amount {amount} is never used once collisions are unified"
            )));
        }
        for (rem, tail) in remaining.iter_mut().zip(owed.iter_mut()) {
            if *rem > 0 && targets.binary_search(rem).is_ok() {
                let at = tail
                    .iter()
                    .position(|&a| a == amount)
                    .expect("unified jars at a targeted value owe the amount");
                tail.remove(at);
                *rem -= amount;
            }
        }
        plan.push(Move::new(amount, targets));
    }
    debug_assert!(remaining.iter().all(|&r| r == 0));
    Ok(plan)
}

/// Cookie Monster number by direct play: level-order search over canonical
/// states (sorted distinct values, zeros dropped), expanding every legal
/// move, i.e. every non-empty subset of values paired with every amount from
/// 1 to the subset's minimum.
///
/// Exponential in every direction; the caps keep it honest. Defaults accept
/// up to 6 jars of up to 40 cookies.
pub fn cm_bfs(set: &JarSet, caps: BfsCaps) -> Result<usize, Error> {
    if set.is_empty() {
        return Ok(0);
    }
    // Subset masks live in a u64, so 63 jars is a hard ceiling.
    let jar_limit = caps.max_jars.min(63);
    if set.len() > jar_limit {
        return Err(Error::TooManyJars {
            op: "cm_bfs",
            limit: jar_limit,
            got: set.len(),
        });
    }
    let max = set.max_value().unwrap();
    if max > caps.max_value {
        return Err(Error::ValueCapExceeded {
            op: "cm_bfs",
            limit: caps.max_value,
            got: max,
        });
    }

    let start: Box<[u64]> = set.values().into();
    let mut visited: HashSet<Box<[u64]>> = HashSet::new();
    visited.insert(start.clone());
    let mut frontier: Vec<Box<[u64]>> = vec![start];
    let mut depth = 0;
    let mut scratch: Vec<u64> = Vec::with_capacity(set.len());

    while !frontier.is_empty() {
        depth += 1;
        let mut next_frontier: Vec<Box<[u64]>> = Vec::new();
        for state in &frontier {
            let n = state.len();
            for mask in 1u64..(1 << n) {
                let lowest = mask.trailing_zeros() as usize;
                let min_targeted = state[lowest];
                for amount in 1..=min_targeted {
                    scratch.clear();
                    for (i, &v) in state.iter().enumerate() {
                        let w = if mask & (1 << i) != 0 { v - amount } else { v };
                        if w > 0 {
                            scratch.push(w);
                        }
                    }
                    scratch.sort_unstable();
                    scratch.dedup();
                    if scratch.is_empty() {
                        return Ok(depth);
                    }
                    if !visited.contains(scratch.as_slice()) {
                        if visited.len() >= caps.max_states {
                            return Err(Error::StateCapExceeded {
                                cap: caps.max_states,
                            });
                        }
                        let stored: Box<[u64]> = scratch.as_slice().into();
                        visited.insert(stored.clone());
                        next_frontier.push(stored);
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    unreachable!("every non-empty state has a successor chain to the empty state")
}
