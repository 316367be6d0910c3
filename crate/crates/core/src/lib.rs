//! Solvers, bounds, and constructions for the Cookie Monster problem.
//!
//! The Cookie Monster faces `k` jars holding distinct positive cookie
//! counts. Each move he picks any subset of jars and removes the same
//! number of cookies from each. The Cookie Monster number of a set is the
//! minimum number of moves that empties every jar.
//!
//! The crate provides:
//!
//! * a data model for states, moves, and plans, with replay-based plan
//!   verification ([`jar`]);
//! * structural lower and upper bounds and the predicates that make some of
//!   them exact ([`bounds`]);
//! * two independent exact solvers, a minimal-cover search with
//!   certificates and a breadth-first oracle over game states ([`exact`]);
//! * three greedy heuristics played to completion ([`heuristics`]);
//! * jar-set families with known or prescribed cost: n-nacci sets, their
//!   super generalization, two-powerful sets, and a greedy sequence whose
//!   cost-to-size ratio tracks any target in `[0, 1]` ([`sequences`]).
//!
//! ```
//! use cookie_monster::{cm_exact, plan_from_certificate, verify_plan, JarSet};
//!
//! let set = JarSet::new([1, 2, 3, 5, 8])?;
//! let result = cm_exact(&set, None)?;
//! assert_eq!(result.cm, 3);
//!
//! let plan = plan_from_certificate(&set, &result.certificate)?;
//! assert!(verify_plan(&set, &plan).is_valid());
//! # Ok::<(), cookie_monster::Error>(())
//! ```

pub mod bounds;
pub mod error;
pub mod exact;
pub mod heuristics;
pub mod jar;
pub mod sequences;

pub use bounds::{
    cm_two_powerful, is_superincreasing, is_two_powerful, lower_bound, upper_bound_binary,
    upper_bound_diameter, upper_bound_trivial,
};
pub use error::{Error, MoveError};
pub use exact::{
    cm_bfs, cm_exact, plan_from_certificate, representable, BfsCaps, ExactResult,
    DEFAULT_NODE_BUDGET,
};
pub use heuristics::{
    ba_step, emja_step, emja_step_limited, run_heuristic, run_heuristic_with, tca_step, Algorithm,
    HeuristicOptions, HeuristicRun, DEFAULT_EMJA_MAX_JARS,
};
pub use jar::{apply_move, scale, verify_plan, Certificate, JarSet, Move, MovePlan, PlanVerdict};
pub use sequences::{
    build_ratio_sequence, check_fibonacci_identity, check_nacci_inequalities,
    construct_set_with_cm, is_super_nacci, super_nacci_lower_bound, NacciFamily, RatioTrajectory,
    SeqTerm, TargetRatio,
};
