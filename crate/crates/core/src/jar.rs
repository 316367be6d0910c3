//! Jar sets, moves, plans, and plan verification.
//!
//! A game state is a set of jars identified by their distinct cookie counts.
//! Jars holding equal counts are indistinguishable, so applying a move
//! collapses duplicates and drops emptied jars.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, MoveError};

/// A set of cookie jars with pairwise distinct positive cookie counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct JarSet {
    // Invariant: strictly increasing, every value >= 1.
    values: Vec<u64>,
}

impl JarSet {
    /// Builds a jar set from arbitrary values. Duplicates collapse into a
    /// single jar; a zero value is rejected.
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<JarSet, Error> {
        let mut values: Vec<u64> = values.into_iter().collect();
        if values.contains(&0) {
            return Err(Error::ZeroJarValue);
        }
        values.sort_unstable();
        values.dedup();
        Ok(JarSet { values })
    }

    /// The state with no jars, i.e. the goal of the game.
    pub const fn empty() -> JarSet {
        JarSet { values: Vec::new() }
    }

    /// Number of jars, written `k` throughout the crate.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cookie counts in strictly increasing order.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Largest jar value, if any. Named to avoid clashing with `Ord::max`.
    pub fn max_value(&self) -> Option<u64> {
        self.values.last().copied()
    }

    /// Smallest jar value, if any. Named to avoid clashing with `Ord::min`.
    pub fn min_value(&self) -> Option<u64> {
        self.values.first().copied()
    }

    pub fn contains(&self, value: u64) -> bool {
        self.values.binary_search(&value).is_ok()
    }

    /// Total cookies across all jars.
    pub fn total(&self) -> u128 {
        self.values.iter().map(|&v| u128::from(v)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.iter().copied()
    }
}

impl<'de> Deserialize<'de> for JarSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<u64>::deserialize(deserializer)?;
        JarSet::new(values).map_err(D::Error::custom)
    }
}

impl fmt::Display for JarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// One move: take `amount` cookies from every jar named in `targets`.
///
/// Targets name jar *values* in the state the move applies to, not
/// positions. When earlier moves have made two original jars equal, a single
/// target names them both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub amount: u64,
    pub targets: Vec<u64>,
}

impl Move {
    /// Builds a move with sorted, deduplicated targets.
    pub fn new(amount: u64, targets: impl IntoIterator<Item = u64>) -> Move {
        let mut targets: Vec<u64> = targets.into_iter().collect();
        targets.sort_unstable();
        targets.dedup();
        Move { amount, targets }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "take {} from ", self.amount)?;
        write!(f, "{{")?;
        for (i, t) in self.targets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

/// A sequence of moves intended to empty a jar set.
pub type MovePlan = Vec<Move>;

/// Witness that `amounts` suffice to empty a jar set: every jar value is the
/// sum of its assigned sub-multiset of `amounts`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Move amounts in nonincreasing order, one entry per move.
    pub amounts: Vec<u64>,
    /// For each original jar value, the amounts of the moves that touch it.
    pub assignments: BTreeMap<u64, Vec<u64>>,
}

impl Certificate {
    pub fn move_count(&self) -> usize {
        self.amounts.len()
    }

    /// Checks this certificate against a jar set: every jar must carry an
    /// assignment that sums exactly to its value and draws from `amounts`
    /// within multiplicity.
    pub fn validate(&self, set: &JarSet) -> Result<(), Error> {
        if self.assignments.len() != set.len() {
            return Err(Error::InvalidCertificate(format!(
                "{} assignments for {} jars",
                self.assignments.len(),
                set.len()
            )));
        }
        for v in set.iter() {
            let assigned = self
                .assignments
                .get(&v)
                .ok_or_else(|| Error::InvalidCertificate(format!("jar {v} has no assignment")))?;
            let total: u128 = assigned.iter().map(|&a| u128::from(a)).sum();
            if total != u128::from(v) {
                return Err(Error::InvalidCertificate(format!(
                    "assignment for jar {v} sums to {total}"
                )));
            }
            let mut pool = self.amounts.clone();
            for a in assigned {
                match pool.iter().position(|p| p == a) {
                    Some(i) => {
                        pool.swap_remove(i);
                    }
                    None => {
                        return Err(Error::InvalidCertificate(format!(
                            "assignment for jar {v} uses amount {a} beyond its multiplicity"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Applies one move to a state, collapsing duplicates and dropping empties.
pub fn apply_move(set: &JarSet, mv: &Move) -> Result<JarSet, MoveError> {
    if mv.amount == 0 {
        return Err(MoveError::ZeroAmount);
    }
    let mut targets = mv.targets.clone();
    targets.sort_unstable();
    targets.dedup();
    if targets.is_empty() {
        return Err(MoveError::EmptyTargets);
    }
    for &t in &targets {
        if !set.contains(t) {
            return Err(MoveError::UnknownTarget(t));
        }
        if mv.amount > t {
            return Err(MoveError::Overdraw {
                target: t,
                amount: mv.amount,
            });
        }
    }
    let mut next: Vec<u64> = Vec::with_capacity(set.len());
    for v in set.iter() {
        let w = if targets.binary_search(&v).is_ok() {
            v - mv.amount
        } else {
            v
        };
        if w > 0 {
            next.push(w);
        }
    }
    next.sort_unstable();
    next.dedup();
    Ok(JarSet { values: next })
}

/// Result of checking a plan against a starting state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanVerdict {
    /// The plan empties the set; the certificate records which move amounts
    /// touched each original jar.
    Valid(Certificate),
    /// A move could not be applied.
    InvalidMove { index: usize, error: MoveError },
    /// All moves applied but jars remain.
    Unfinished { remaining: JarSet },
}

impl PlanVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PlanVerdict::Valid(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            PlanVerdict::Valid(cert) => Some(cert),
            _ => None,
        }
    }
}

/// Replays a plan from `set` and reports whether it empties every jar.
///
/// Original jars are tracked through value collisions: once two jars hold
/// equal counts they are one jar, and a move naming that value touches the
/// original jars behind it.
pub fn verify_plan(set: &JarSet, plan: &[Move]) -> PlanVerdict {
    let mut state = set.clone();
    let mut remaining: Vec<u64> = set.values().to_vec();
    let mut touched: Vec<Vec<u64>> = vec![Vec::new(); set.len()];

    for (index, mv) in plan.iter().enumerate() {
        let next = match apply_move(&state, mv) {
            Ok(next) => next,
            Err(error) => return PlanVerdict::InvalidMove { index, error },
        };
        let mut targets = mv.targets.clone();
        targets.sort_unstable();
        targets.dedup();
        for (rem, hits) in remaining.iter_mut().zip(touched.iter_mut()) {
            if *rem > 0 && targets.binary_search(rem).is_ok() {
                *rem -= mv.amount;
                hits.push(mv.amount);
            }
        }
        state = next;
    }

    if !state.is_empty() {
        return PlanVerdict::Unfinished { remaining: state };
    }

    let mut amounts: Vec<u64> = plan.iter().map(|m| m.amount).collect();
    amounts.sort_unstable_by(|a, b| b.cmp(a));
    let assignments = set
        .iter()
        .zip(touched)
        .map(|(v, mut hits)| {
            hits.sort_unstable_by(|a, b| b.cmp(a));
            (v, hits)
        })
        .collect();
    PlanVerdict::Valid(Certificate {
        amounts,
        assignments,
    })
}

/// Multiplies every jar by `factor`. The game is invariant under this map:
/// scaling a set does not change its Cookie Monster number.
pub fn scale(set: &JarSet, factor: u64) -> Result<JarSet, Error> {
    if factor == 0 {
        return Err(Error::ZeroScale);
    }
    let values = set
        .iter()
        .map(|v| v.checked_mul(factor).ok_or(Error::Overflow { op: "scale" }))
        .collect::<Result<Vec<u64>, Error>>()?;
    Ok(JarSet { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jars(values: &[u64]) -> JarSet {
        JarSet::new(values.iter().copied()).unwrap()
    }

    #[test]
    fn new_sorts_and_collapses_duplicates() {
        let s = JarSet::new([3, 1, 1, 7]).unwrap();
        assert_eq!(s.values(), &[1, 3, 7]);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn new_rejects_zero() {
        assert_eq!(JarSet::new([1, 0, 2]), Err(Error::ZeroJarValue));
    }

    #[test]
    fn empty_set_basics() {
        let s = JarSet::empty();
        assert!(s.is_empty());
        assert_eq!(s.max_value(), None);
        assert_eq!(s.total(), 0);
    }

    #[test]
    fn apply_move_merges_collisions_and_drops_empties() {
        let s = jars(&[1, 3, 4, 7]);
        let next = apply_move(&s, &Move::new(4, [4, 7])).unwrap();
        assert_eq!(next.values(), &[1, 3]);
    }

    #[test]
    fn apply_move_rejects_overdraw() {
        let s = jars(&[2, 5]);
        assert_eq!(
            apply_move(&s, &Move::new(3, [2])),
            Err(MoveError::Overdraw {
                target: 2,
                amount: 3
            })
        );
    }

    #[test]
    fn apply_move_rejects_unknown_target() {
        let s = jars(&[2, 5]);
        assert_eq!(
            apply_move(&s, &Move::new(1, [4])),
            Err(MoveError::UnknownTarget(4))
        );
    }

    #[test]
    fn apply_move_rejects_degenerate_moves() {
        let s = jars(&[2, 5]);
        assert_eq!(
            apply_move(&s, &Move::new(0, [2])),
            Err(MoveError::ZeroAmount)
        );
        assert_eq!(
            apply_move(&s, &Move::new(1, [])),
            Err(MoveError::EmptyTargets)
        );
    }

    #[test]
    fn verify_plan_accepts_a_two_move_solution() {
        // {1, 2}: take 1 from both jars, then 1 from the survivor.
        let s = jars(&[1, 2]);
        let plan = vec![Move::new(1, [1, 2]), Move::new(1, [1])];
        let verdict = verify_plan(&s, &plan);
        let cert = verdict.certificate().expect("plan should be valid");
        assert_eq!(cert.amounts, vec![1, 1]);
        assert_eq!(cert.assignments[&1], vec![1]);
        assert_eq!(cert.assignments[&2], vec![1, 1]);
        cert.validate(&s).unwrap();
    }

    #[test]
    fn verify_plan_tracks_original_jars_through_collisions() {
        // {1, 2, 3, 5, 8}: 5 from {5, 8} sends 8 to 3, merging with the
        // untouched 3; the later move naming 3 touches both originals.
        let s = jars(&[1, 2, 3, 5, 8]);
        let plan = vec![
            Move::new(5, [5, 8]),
            Move::new(2, [2, 3]),
            Move::new(1, [1]),
        ];
        let verdict = verify_plan(&s, &plan);
        let cert = verdict.certificate().expect("plan should be valid");
        assert_eq!(cert.assignments[&8], vec![5, 2, 1]);
        assert_eq!(cert.assignments[&3], vec![2, 1]);
        assert_eq!(cert.assignments[&5], vec![5]);
        cert.validate(&s).unwrap();
    }

    #[test]
    fn verify_plan_reports_offending_move_index() {
        let s = jars(&[1, 2]);
        let plan = vec![Move::new(1, [1, 2]), Move::new(2, [1])];
        assert_eq!(
            verify_plan(&s, &plan),
            PlanVerdict::InvalidMove {
                index: 1,
                error: MoveError::Overdraw {
                    target: 1,
                    amount: 2
                }
            }
        );
    }

    #[test]
    fn verify_plan_reports_leftover_jars() {
        let s = jars(&[1, 2]);
        let plan = vec![Move::new(1, [1])];
        assert_eq!(
            verify_plan(&s, &plan),
            PlanVerdict::Unfinished {
                remaining: jars(&[2])
            }
        );
    }

    #[test]
    fn empty_plan_empties_empty_set() {
        assert!(verify_plan(&JarSet::empty(), &[]).is_valid());
    }

    #[test]
    fn scale_multiplies_values() {
        assert_eq!(scale(&jars(&[1, 2, 3]), 2).unwrap(), jars(&[2, 4, 6]));
        assert_eq!(scale(&jars(&[1]), 0), Err(Error::ZeroScale));
        assert_eq!(
            scale(&jars(&[u64::MAX]), 2),
            Err(Error::Overflow { op: "scale" })
        );
    }

    #[test]
    fn jarset_display() {
        assert_eq!(jars(&[1, 2, 3]).to_string(), "{1, 2, 3}");
        assert_eq!(JarSet::empty().to_string(), "{}");
    }

    #[test]
    fn jarset_deserialize_enforces_invariants() {
        let s: JarSet = serde_json::from_str("[3, 1, 1]").unwrap();
        assert_eq!(s.values(), &[1, 3]);
        assert!(serde_json::from_str::<JarSet>("[0, 1]").is_err());
    }

    #[test]
    fn certificate_validate_rejects_multiplicity_abuse() {
        let s = jars(&[2, 4]);
        let cert = Certificate {
            amounts: vec![2],
            assignments: [(2, vec![2]), (4, vec![2, 2])].into_iter().collect(),
        };
        assert!(cert.validate(&s).is_err());
    }
}
