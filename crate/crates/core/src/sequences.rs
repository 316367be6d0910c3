//! Jar-set families with known Cookie Monster numbers: n-step Fibonacci
//! ("n-nacci") sets, their "super" generalization, two-powerful sets of
//! prescribed cost, and a greedy construction whose cost-to-size ratio
//! tracks a chosen target.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::jar::JarSet;

/// The n-step Fibonacci recurrence: order - 1 zeros, two ones, then each
/// term the sum of the previous `order` terms.
///
/// The jar sets drawn from it start at index `order`, so their first
/// `order` members are 1, 2, 4, ..., 2^(order-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NacciFamily {
    order: usize,
}

impl NacciFamily {
    /// Requires `order >= 2`; order 2 is Fibonacci, order 3 Tribonacci.
    pub fn new(order: usize) -> Result<NacciFamily, Error> {
        if order < 2 {
            return Err(Error::OrderTooSmall);
        }
        Ok(NacciFamily { order })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Terms from index 0, e.g. 0, 0, 1, 1, 2, 4, 7, ... for order 3.
    pub fn terms(&self, len: usize) -> Result<Vec<u64>, Error> {
        let mut terms: Vec<u64> = Vec::with_capacity(len);
        // Window sum of the previous `order` terms, maintained checked.
        let mut window: u128 = 0;
        for i in 0..len {
            let term = if i < self.order - 1 {
                0
            } else if i <= self.order {
                1
            } else {
                u64::try_from(window).map_err(|_| Error::Overflow { op: "nacci term" })?
            };
            window += u128::from(term);
            if i >= self.order {
                window -= u128::from(terms[i - self.order]);
            }
            terms.push(term);
        }
        Ok(terms)
    }

    /// The k-jar set starting at index `order`: 1, 2, 4, ..., then sums.
    pub fn set(&self, k: usize) -> Result<JarSet, Error> {
        let terms = self.terms(self.order + k)?;
        JarSet::new(terms[self.order..].iter().copied())
    }

    /// Exact Cookie Monster number of [`NacciFamily::set`]:
    /// `floor((order - 1) * k / order) + 1`, or 0 when `k = 0`.
    pub fn cm(&self, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        (self.order - 1) * k / self.order + 1
    }
}

/// Verifies the growth inequalities that make n-nacci sets expensive, for
/// every start `k` in `order - 1 ..= k_max` and every gap `j` in
/// `1 ..= order - 1`:
///
/// `N[k + j] - (N[k + 1] + ... + N[k + j - 1]) > N[1] + ... + N[k - 1]`
///
/// The `j = 1` case says each term beats the sum of everything two steps
/// back; the `j = order - 1` case is the tightest. Starts below
/// `order - 1` are skipped: there the left side still sits in the leading
/// zeros of the sequence and the inequality is vacuously false.
pub fn check_nacci_inequalities(order: usize, k_max: usize) -> Result<bool, Error> {
    let family = NacciFamily::new(order)?;
    let terms = family.terms(k_max + order)?;
    let prefix: Vec<u128> = {
        let mut acc = 0u128;
        let mut out = vec![0u128];
        for &t in &terms {
            acc += u128::from(t);
            out.push(acc);
        }
        out
    };
    // Sum of terms[a..=b] via prefix sums.
    let range_sum = |a: usize, b: usize| -> u128 {
        if a > b {
            0
        } else {
            prefix[b + 1] - prefix[a]
        }
    };

    for k in (order - 1).max(1)..=k_max {
        let tail = range_sum(1, k - 1);
        for j in 1..order {
            let lhs = u128::from(terms[k + j]);
            let inner = range_sum(k + 1, k + j - 1);
            if lhs < inner || lhs - inner <= tail {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verifies `F[k + 1] - 1 = F[1] + ... + F[k - 1]` for every `k` up to
/// `k_max`, with `F` the order-2 terms (F[1] = F[2] = 1).
pub fn check_fibonacci_identity(k_max: usize) -> Result<bool, Error> {
    let terms = NacciFamily::new(2)?.terms(k_max + 2)?;
    let mut tail: u128 = 0;
    for k in 1..=k_max {
        if u128::from(terms[k + 1]) - 1 != tail {
            return Ok(false);
        }
        tail += u128::from(terms[k]);
    }
    Ok(true)
}

/// True when every jar with at least `order` predecessors is at least the
/// sum of those `order` predecessors (equality allowed). Every n-nacci set
/// qualifies, as does anything that grows faster.
pub fn is_super_nacci(set: &JarSet, order: usize) -> Result<bool, Error> {
    if order < 2 {
        return Err(Error::OrderTooSmall);
    }
    let values = set.values();
    for i in order..values.len() {
        let window: u128 = values[i - order..i].iter().map(|&v| u128::from(v)).sum();
        if u128::from(values[i]) < window {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lower bound for super-n-nacci sets:
/// `floor((order - 1) * k / order) + 1`, or 0 for no jars.
///
/// Fails unless [`is_super_nacci`] holds.
pub fn super_nacci_lower_bound(set: &JarSet, order: usize) -> Result<usize, Error> {
    if !is_super_nacci(set, order)? {
        return Err(Error::NotSuperNacci { order });
    }
    let k = set.len();
    if k == 0 {
        return Ok(0);
    }
    Ok((order - 1) * k / order + 1)
}

/// Builds a `k`-jar set whose Cookie Monster number is exactly `m`: all
/// powers of two below `2^m` plus the `k - m` smallest non-powers below
/// `2^m`. Requires `m <= k < 2^m`, which is also exactly when enough
/// non-powers exist.
pub fn construct_set_with_cm(k: usize, m: usize) -> Result<JarSet, Error> {
    if m > k {
        return Err(Error::ConstraintViolated(format!(
            "m <= k violated (m = {m}, k = {k})"
        )));
    }
    if m >= 64 {
        return Err(Error::Overflow {
            op: "construct_set_with_cm",
        });
    }
    if (k as u128) >= (1u128 << m) {
        return Err(Error::ConstraintViolated(format!(
            "k < 2^m violated (k = {k}, m = {m})"
        )));
    }
    let mut values: Vec<u64> = (0..m).map(|i| 1u64 << i).collect();
    let mut filler: u64 = 3;
    while values.len() < k {
        if !filler.is_power_of_two() {
            values.push(filler);
        }
        filler += 1;
    }
    JarSet::new(values)
}

/// A target ratio `num / den` in `[0, 1]`, kept exact so admission
/// decisions at equality are never lost to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TargetRatio {
    num: u64,
    den: u64,
}

impl TargetRatio {
    pub fn new(num: u64, den: u64) -> Result<TargetRatio, Error> {
        if den == 0 {
            return Err(Error::InvalidRatio("denominator is zero".into()));
        }
        if num > den {
            return Err(Error::InvalidRatio(format!("{num}/{den} exceeds 1")));
        }
        if num == 0 {
            return Ok(TargetRatio { num: 0, den: 1 });
        }
        let g = gcd(num, den);
        Ok(TargetRatio {
            num: num / g,
            den: den / g,
        })
    }

    /// Converts a float in `[0, 1]` by flooring at denominator 10^12. The
    /// stored ratio is within 10^-12 below the float, so values that were
    /// meant to sit exactly on an admission boundary still admit.
    pub fn from_f64(r: f64) -> Result<TargetRatio, Error> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::InvalidRatio(format!("{r} is outside [0, 1]")));
        }
        const DEN: u64 = 1_000_000_000_000;
        TargetRatio::new((r * DEN as f64).floor() as u64, DEN)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for TargetRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One term of the ratio construction, stored as `2^exponent + offset` with
/// `offset < 2^exponent` (or 1 itself as `2^0 + 0`). Terms beyond `u64`
/// keep their exact exponent form; only rendering to a plain integer can
/// fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqTerm {
    pub exponent: u32,
    pub offset: u64,
}

impl SeqTerm {
    pub fn value(&self) -> Option<u64> {
        if self.exponent >= 64 {
            return None;
        }
        1u64.checked_shl(self.exponent)?.checked_add(self.offset)
    }

    pub fn is_power_of_two(&self) -> bool {
        self.offset == 0
    }
}

impl fmt::Display for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None if self.offset == 0 => write!(f, "2^{}", self.exponent),
            None => write!(f, "2^{}+{}", self.exponent, self.offset),
        }
    }
}

impl Serialize for SeqTerm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.value() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.collect_str(self),
        }
    }
}

/// Output of [`build_ratio_sequence`].
#[derive(Debug, Clone, Serialize)]
pub struct RatioTrajectory {
    pub target: TargetRatio,
    /// The constructed increasing sequence.
    pub terms: Vec<SeqTerm>,
    /// Cookie Monster number of each prefix. Every prefix contains all
    /// powers of two up to its largest term, so this is the closed form
    /// `floor(log2 s_k) + 1`.
    pub cms: Vec<usize>,
    /// `cms[i] / (i + 1)`: the cost-to-size ratio after each term.
    pub ratios: Vec<f64>,
    /// 1-based positions of the powers of two within `terms`.
    pub power_indices: Vec<usize>,
}

impl RatioTrajectory {
    /// Exact check that no prefix ratio falls below the target.
    pub fn never_below_target(&self) -> bool {
        self.cms.iter().enumerate().all(|(i, &cm)| {
            cm as u128 * u128::from(self.target.den)
                >= u128::from(self.target.num) * (i as u128 + 1)
        })
    }
}

/// Greedily builds an increasing sequence whose prefix ratios CM/k stay at
/// or above `target` and converge to it.
///
/// Naturals are processed in order. Powers of two are always admitted; a
/// non-power `c` is admitted exactly when the ratio after admission,
/// `(floor(log2 c) + 1) / (k + 1)`, is still at least the target. Every
/// prefix keeps all powers of two below its maximum, so each prefix cost is
/// the two-powerful closed form. Runs of consecutive skips are jumped in
/// one step, which keeps construction cheap even when terms outgrow `u64`.
///
/// A target of 1 yields exactly the powers of two; a target of 0 yields
/// every natural number.
pub fn build_ratio_sequence(target: TargetRatio, count: usize) -> RatioTrajectory {
    let mut trajectory = RatioTrajectory {
        target,
        terms: Vec::with_capacity(count),
        cms: Vec::with_capacity(count),
        ratios: Vec::with_capacity(count),
        power_indices: Vec::new(),
    };
    let admit = |term: SeqTerm, traj: &mut RatioTrajectory| {
        let cm = term.exponent as usize + 1;
        traj.terms.push(term);
        traj.cms.push(cm);
        let k = traj.terms.len();
        if term.is_power_of_two() {
            traj.power_indices.push(k);
        }
        traj.ratios.push(cm as f64 / k as f64);
    };

    let mut exponent: u32 = 0;
    while trajectory.terms.len() < count {
        admit(
            SeqTerm {
                exponent,
                offset: 0,
            },
            &mut trajectory,
        );
        if trajectory.terms.len() == count {
            break;
        }

        // Non-powers strictly between 2^e and 2^(e+1): there are 2^e - 1.
        let available: u64 = if exponent >= 63 {
            u64::MAX
        } else {
            (1u64 << exponent) - 1
        };
        let k = trajectory.terms.len() as u64;
        let cm_if_admitted = u128::from(exponent) + 1;
        // Admission for prefix size k': cm * den >= num * k', i.e.
        // k' <= floor(cm * den / num).
        let admissible = if target.num == 0 {
            u64::MAX
        } else {
            let limit = cm_if_admitted * u128::from(target.den) / u128::from(target.num);
            u64::try_from(limit.saturating_sub(u128::from(k))).unwrap_or(u64::MAX)
        };
        let take = available.min(admissible).min(count as u64 - k);
        for offset in 1..=take {
            admit(SeqTerm { exponent, offset }, &mut trajectory);
        }
        exponent += 1;
    }
    trajectory
}
