//! Acceptance gate: twelve independently checkable correctness and
//! performance criteria covering the exact solver, its brute-force oracle,
//! bounds, heuristics, sequence families, ratio trajectories, and CLI
//! determinism. Each test prints one pass/fail line (run with
//! `--nocapture` to see them all).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use cookie_monster::{
    apply_move, ba_step, build_ratio_sequence, check_fibonacci_identity, check_nacci_inequalities,
    cm_bfs, cm_exact, cm_two_powerful, emja_step, is_super_nacci, is_superincreasing,
    is_two_powerful, lower_bound, run_heuristic, super_nacci_lower_bound, tca_step,
    upper_bound_binary, upper_bound_diameter, upper_bound_trivial, verify_plan, Algorithm, BfsCaps,
    Certificate, JarSet, Move, NacciFamily, TargetRatio,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed for the shared 500-instance random corpus (criteria 4 and 8).
const CORPUS_SEED: u64 = 42;
/// Seed for the randomized halves of criteria 5, 7, and 11.
const SAMPLING_SEED: u64 = 7;

fn criterion(number: u8, body: impl FnOnce() -> Result<String, String>) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(detail)) => println!("criterion {number}: PASS — {detail}"),
        Ok(Err(detail)) => {
            println!("criterion {number}: FAIL — {detail}");
            panic!("criterion {number} failed: {detail}");
        }
        Err(panic) => {
            let detail = panic
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| panic.downcast_ref::<&str>().copied())
                .unwrap_or("panicked");
            println!("criterion {number}: FAIL — {detail}");
            std::panic::resume_unwind(panic);
        }
    }
}

fn jars(values: &[u64]) -> JarSet {
    JarSet::new(values.iter().copied()).expect("test values are positive and distinct")
}

fn exact(set: &JarSet) -> Result<usize, String> {
    cm_exact(set, None)
        .map(|result| result.cm)
        .map_err(|err| format!("exact solver failed on {set}: {err}"))
}

/// 500 random instances with 1..=6 jars and values in 1..=40, fixed seed.
fn corpus() -> Vec<JarSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    (0..500)
        .map(|_| {
            let k = rng.gen_range(1..=6usize);
            let picks = rand::seq::index::sample(&mut rng, 40, k);
            JarSet::new(picks.iter().map(|i| i as u64 + 1))
                .expect("sampled values are distinct and positive")
        })
        .collect()
}

fn check_family_closed_form(
    order: usize,
    k_range: std::ops::RangeInclusive<usize>,
) -> Result<(), String> {
    let family = NacciFamily::new(order).map_err(|err| err.to_string())?;
    for k in k_range {
        let set = family.set(k).map_err(|err| err.to_string())?;
        let want = if k == 0 {
            0
        } else {
            (order - 1) * k / order + 1
        };
        if family.cm(k) != want {
            return Err(format!(
                "order {order}, k={k}: closed form returned {}, want {want}",
                family.cm(k)
            ));
        }
        let got = exact(&set)?;
        if got != want {
            return Err(format!(
                "order {order}, k={k} ({set}): solver found {got}, closed form says {want}"
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_01_fibonacci_closed_form() {
    criterion(1, || {
        let started = Instant::now();
        check_family_closed_form(2, 2..=9)?;
        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(10) {
            return Err(format!("took {elapsed:.2?}, budget is 10 s"));
        }
        Ok(format!(
            "Fibonacci sets need floor(k/2)+1 moves for k=2..=9 ({elapsed:.2?})"
        ))
    });
}

#[test]
fn criterion_02_tribonacci_closed_form() {
    criterion(2, || {
        let started = Instant::now();
        check_family_closed_form(3, 2..=7)?;
        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(30) {
            return Err(format!("took {elapsed:.2?}, budget is 30 s"));
        }
        Ok(format!(
            "Tribonacci sets need floor(2k/3)+1 moves for k=2..=7 ({elapsed:.2?})"
        ))
    });
}

#[test]
fn criterion_03_nacci_closed_form() {
    criterion(3, || {
        let started = Instant::now();
        check_family_closed_form(4, 0..=6)?;
        check_family_closed_form(5, 0..=6)?;
        Ok(format!(
            "4-nacci and 5-nacci sets need floor((n-1)k/n)+1 moves for k<=6 ({:.2?})",
            started.elapsed()
        ))
    });
}

#[test]
fn criterion_04_bounds_sandwich() {
    criterion(4, || {
        let sets = corpus();
        let total = sets.len();
        for set in sets {
            let cm = exact(&set)?;
            let mut upper = upper_bound_trivial(&set)
                .min(upper_bound_binary(&set).map_err(|err| err.to_string())?);
            if set.len() >= 2 {
                upper = upper.min(upper_bound_diameter(&set).map_err(|err| err.to_string())?);
            }
            if lower_bound(&set) > cm || cm > upper {
                return Err(format!(
                    "{set}: cm {cm} escapes [{}, {upper}]",
                    lower_bound(&set)
                ));
            }
        }
        Ok(format!(
            "{total} random instances: floor(log2 k)+1 <= cm <= min(k, floor(log2 max)+1, 2+floor(log2 diameter)), zero violations"
        ))
    });
}

#[test]
fn criterion_05_oracle_agreement() {
    criterion(5, || {
        let started = Instant::now();
        let mut checked = 0usize;

        // Every jar set with at most 4 jars and values at most 15.
        for mask in 1u32..(1 << 15) {
            let k = mask.count_ones();
            if k > 4 {
                continue;
            }
            let set = JarSet::new((0..15).filter(|b| mask & (1 << b) != 0).map(|b| b + 1))
                .expect("mask values are distinct and positive");
            compare_solvers(&set)?;
            checked += 1;
        }

        // Random larger instances, sized to stay within the oracle's caps.
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..100 {
            let picks = rand::seq::index::sample(&mut rng, 25, 5);
            let set = JarSet::new(picks.iter().map(|i| i as u64 + 1)).expect("distinct values");
            compare_solvers(&set)?;
            checked += 1;
        }
        for _ in 0..100 {
            let picks = rand::seq::index::sample(&mut rng, 18, 6);
            let set = JarSet::new(picks.iter().map(|i| i as u64 + 1)).expect("distinct values");
            compare_solvers(&set)?;
            checked += 1;
        }

        Ok(format!(
            "cover search agrees with breadth-first oracle on {checked} instances \
             (all k<=4 values<=15, plus 200 random k=5..6) ({:.2?})",
            started.elapsed()
        ))
    });
}

fn compare_solvers(set: &JarSet) -> Result<(), String> {
    let fast = exact(set)?;
    let slow =
        cm_bfs(set, BfsCaps::default()).map_err(|err| format!("oracle failed on {set}: {err}"))?;
    if fast != slow {
        return Err(format!("{set}: cover search {fast} != oracle {slow}"));
    }
    Ok(())
}

#[test]
fn criterion_06_superincreasing_subsets() {
    criterion(6, || {
        for mask in 1u32..32 {
            let set = JarSet::new((0..5).filter(|b| mask & (1 << b) != 0).map(|b| 1u64 << b))
                .expect("powers of two are distinct");
            if !is_superincreasing(&set) {
                return Err(format!("{set} should be superincreasing"));
            }
            let got = exact(&set)?;
            if got != set.len() {
                return Err(format!(
                    "{set}: cm {got}, want one move per jar ({})",
                    set.len()
                ));
            }
        }
        Ok("all 31 non-empty subsets of {1,2,4,8,16} need exactly one move per jar".into())
    });
}

#[test]
fn criterion_07_two_powerful_sets() {
    criterion(7, || {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..100 {
            let max: u64 = 1 << rng.gen_range(0..=5u32);
            let mut values: Vec<u64> = (0..=max.ilog2()).map(|e| 1u64 << e).collect();
            for v in 3..max {
                if !v.is_power_of_two() && rng.gen_bool(0.4) {
                    values.push(v);
                }
            }
            let set = jars(&values);
            if !is_two_powerful(&set) {
                return Err(format!("{set} should be two-powerful"));
            }
            let want = cm_two_powerful(&set).map_err(|err| err.to_string())?;
            if want != max.ilog2() as usize + 1 {
                return Err(format!(
                    "{set}: structural count {want} != floor(log2 {max})+1"
                ));
            }
            let got = exact(&set)?;
            if got != want {
                return Err(format!("{set}: cm {got}, structural count {want}"));
            }
        }
        Ok("100 random two-powerful sets (max <= 32) all need floor(log2 max)+1 moves".into())
    });
}

#[test]
fn criterion_08_heuristic_soundness() {
    criterion(8, || {
        let mut strict_losses = [0usize; 3];
        let sets = corpus();
        let total = sets.len();
        for set in sets {
            let best = exact(&set)?;
            for (i, algorithm) in [Algorithm::Emja, Algorithm::Tca, Algorithm::Ba]
                .into_iter()
                .enumerate()
            {
                let run = run_heuristic(&set, algorithm)
                    .map_err(|err| format!("{algorithm} failed on {set}: {err}"))?;
                if !verify_plan(&set, &run.plan).is_valid() {
                    return Err(format!("{algorithm} produced an invalid plan on {set}"));
                }
                if run.move_count < best {
                    return Err(format!(
                        "{algorithm} claims {} moves on {set}, below the exact {best}",
                        run.move_count
                    ));
                }
                if run.move_count > best {
                    strict_losses[i] += 1;
                }
            }
        }
        for (algorithm, losses) in ["emja", "tca", "ba"].iter().zip(strict_losses) {
            if losses == 0 {
                return Err(format!(
                    "{algorithm} was optimal on the whole corpus; expected at least one strict loss"
                ));
            }
        }
        Ok(format!(
            "{total} instances: every heuristic plan verifies and never beats exact; \
             strict losses emja {} / tca {} / ba {}",
            strict_losses[0], strict_losses[1], strict_losses[2]
        ))
    });
}

#[test]
fn criterion_09_worked_example_moves() {
    criterion(9, || {
        let set = jars(&[1, 3, 4, 7]);
        let mv = emja_step(&set).map_err(|err| err.to_string())?;
        let after = apply_move(&set, &mv).map_err(|err| err.to_string())?;
        if set.len() - after.len() != 2 {
            return Err(format!(
                "emja on {set} chose {mv}, reducing {} -> {} distinct jars instead of by 2",
                set.len(),
                after.len()
            ));
        }

        let set = jars(&[4, 7, 14, 19, 20]);
        let mv = tca_step(&set).map_err(|err| err.to_string())?;
        let removed = mv.amount as usize * mv.targets.len();
        if removed != 42 {
            return Err(format!("tca on {set} removes {removed} cookies, want 42"));
        }

        let set = jars(&[8, 9, 16, 18]);
        let mv = ba_step(&set).map_err(|err| err.to_string())?;
        if mv != Move::new(16, [16, 18]) {
            return Err(format!(
                "ba on {set} chose {mv}, want take 16 from {{16, 18}}"
            ));
        }

        Ok(
            "emja reduces {1,3,4,7} by 2 jars; tca takes 42 from {4,7,14,19,20}; \
            ba takes 16 from {16, 18}"
                .into(),
        )
    });
}

#[test]
fn criterion_10_ratio_convergence() {
    criterion(10, || {
        let started = Instant::now();

        for (num, den) in [(3, 10), (1, 2), (3, 4)] {
            let target = TargetRatio::new(num, den).map_err(|err| err.to_string())?;
            let trajectory = build_ratio_sequence(target, 500);
            if !trajectory.never_below_target() {
                return Err(format!("target {num}/{den}: some prefix ratio fell below"));
            }
            let goal = target.as_f64();
            for (i, &ratio) in trajectory.ratios.iter().enumerate().take(500).skip(199) {
                if (ratio - goal).abs() >= 0.05 {
                    return Err(format!(
                        "target {num}/{den}: ratio {ratio:.4} at k={} strays past 0.05",
                        i + 1
                    ));
                }
            }
        }

        let ones = build_ratio_sequence(TargetRatio::new(1, 1).unwrap(), 500);
        for (i, term) in ones.terms.iter().enumerate() {
            if !term.is_power_of_two() || term.exponent as usize != i || term.offset != 0 {
                return Err(format!("target 1: term {} is {term}, want 2^{i}", i + 1));
            }
        }

        let naturals = build_ratio_sequence(TargetRatio::new(0, 1).unwrap(), 500);
        for (i, term) in naturals.terms.iter().enumerate() {
            if term.value() != Some(i as u64 + 1) {
                return Err(format!(
                    "target 0: term {} is {term}, want {}",
                    i + 1,
                    i + 1
                ));
            }
        }

        let elapsed = started.elapsed();
        if elapsed >= Duration::from_secs(5) {
            return Err(format!("took {elapsed:.2?}, budget is 5 s"));
        }
        Ok(format!(
            "ratios for 3/10, 1/2, 3/4 stay >= target and within 0.05 on k=200..=500; \
             target 1 gives powers of two, target 0 the naturals ({elapsed:.2?})"
        ))
    });
}

#[test]
fn criterion_11_sequence_inequalities() {
    criterion(11, || {
        if !check_fibonacci_identity(30).map_err(|err| err.to_string())? {
            return Err("Fibonacci prefix-sum identity failed below k=30".into());
        }
        for order in 2..=8 {
            if !check_nacci_inequalities(order, 20).map_err(|err| err.to_string())? {
                return Err(format!(
                    "order-{order} growth inequalities failed below k=20"
                ));
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..50 {
            let order = rng.gen_range(2..=4usize);
            let k = rng.gen_range((order + 1).max(4)..=6);
            let mut values: Vec<u64> = Vec::with_capacity(k);
            let mut next = rng.gen_range(1..=2u64);
            for _ in 0..order.min(k) {
                values.push(next);
                next += rng.gen_range(1..=2u64);
            }
            while values.len() < k {
                let window: u64 = values[values.len() - order..].iter().sum();
                values.push(window + rng.gen_range(0..=2u64));
            }
            let set = jars(&values);
            if !is_super_nacci(&set, order).map_err(|err| err.to_string())? {
                return Err(format!("{set} should be super-{order}-nacci"));
            }
            let bound = super_nacci_lower_bound(&set, order).map_err(|err| err.to_string())?;
            let cm = exact(&set)?;
            if bound > cm {
                return Err(format!("{set}: lower bound {bound} exceeds cm {cm}"));
            }
        }
        Ok(
            "Fibonacci identity holds to k=30; growth inequalities hold for orders 2..=8 to k=20; \
             50 random super-n-nacci sets never beat their lower bound"
                .into(),
        )
    });
}

#[test]
fn criterion_12_determinism() {
    criterion(12, || {
        let bench = |seed: &str| {
            Command::new(env!("CARGO_BIN_EXE_cmsolver"))
                .args(["bench", "--seed", seed])
                .output()
                .map_err(|err| format!("bench run failed: {err}"))
        };
        let first = bench("42")?;
        let second = bench("42")?;
        if !first.status.success() || !second.status.success() {
            return Err("bench --seed 42 did not exit cleanly".into());
        }
        if first.stdout != second.stdout {
            return Err("two runs of bench --seed 42 differ".into());
        }

        let solve = || {
            Command::new(env!("CARGO_BIN_EXE_cmsolver"))
                .args(["solve", "1,2,3,5,8"])
                .output()
                .map_err(|err| format!("solve run failed: {err}"))
        };
        if solve()?.stdout != solve()?.stdout {
            return Err("two solve runs emitted different certificates".into());
        }

        // The same instances solved concurrently on varying thread counts
        // must produce identical certificates.
        let instances = [
            jars(&[1, 3, 4, 7]),
            jars(&[1, 2, 3, 5, 8]),
            jars(&[3, 6, 7, 9, 11, 14]),
        ];
        let reference: Vec<Certificate> = instances
            .iter()
            .map(|set| cm_exact(set, None).map(|r| r.certificate))
            .collect::<Result<_, _>>()
            .map_err(|err| err.to_string())?;
        for threads in [2, 4, 8] {
            let mut all: Vec<Vec<Certificate>> = Vec::new();
            std::thread::scope(|scope| {
                let handles: Vec<_> = (0..threads)
                    .map(|_| {
                        scope.spawn(|| {
                            instances
                                .iter()
                                .map(|set| cm_exact(set, None).map(|r| r.certificate))
                                .collect::<Result<Vec<_>, _>>()
                        })
                    })
                    .collect();
                for handle in handles {
                    all.push(
                        handle
                            .join()
                            .expect("solver thread panicked")
                            .expect("solver failed"),
                    );
                }
            });
            if all.iter().any(|got| *got != reference) {
                return Err(format!("certificates diverged with {threads} threads"));
            }
        }

        Ok(
            "bench --seed 42 is byte-identical across runs; solve certificates are identical \
            across runs and across 2/4/8 concurrent threads"
                .into(),
        )
    });
}
