//! Output structures and rendering. Every report renders as JSON (default,
//! pretty-printed with stable key order), CSV (header row first), or text.

use std::fmt::Write as _;

use cookie_monster::{Algorithm, Certificate, JarSet, MovePlan, SeqTerm};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn json<T: Serialize>(report: &T) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize to JSON");
    out.push('\n');
    out
}

fn join_space(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
pub struct SolveReport {
    pub instance: JarSet,
    pub cm: usize,
    pub certificate: Option<Certificate>,
    pub plan: Option<MovePlan>,
}

impl SolveReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => format!(
                "instance,cm\n{},{}\n",
                join_space(self.instance.values()),
                self.cm
            ),
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "instance: {}", self.instance);
                let _ = writeln!(out, "cm: {}", self.cm);
                if let Some(cert) = &self.certificate {
                    let _ = writeln!(out, "amounts: {}", join_space(&cert.amounts));
                }
                if let Some(plan) = &self.plan {
                    let _ = writeln!(out, "plan:");
                    for mv in plan {
                        let _ = writeln!(out, "  {mv}");
                    }
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct HeuristicReport {
    pub instance: JarSet,
    pub algorithm: Algorithm,
    pub move_count: usize,
    pub cookies_removed: Vec<u128>,
    pub plan: MovePlan,
}

impl HeuristicReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => format!(
                "instance,algorithm,move_count\n{},{},{}\n",
                join_space(self.instance.values()),
                self.algorithm,
                self.move_count
            ),
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "instance: {}", self.instance);
                let _ = writeln!(out, "algorithm: {}", self.algorithm);
                let _ = writeln!(out, "moves: {}", self.move_count);
                let _ = writeln!(out, "plan:");
                for (mv, removed) in self.plan.iter().zip(&self.cookies_removed) {
                    let _ = writeln!(out, "  {mv} (removes {removed})");
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct BoundsReport {
    pub instance: JarSet,
    pub lower: usize,
    pub upper_trivial: usize,
    pub upper_binary: usize,
    pub upper_diameter: Option<usize>,
    pub superincreasing: bool,
    pub two_powerful: bool,
    pub cm_if_two_powerful: Option<usize>,
}

impl BoundsReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let diameter = self
                    .upper_diameter
                    .map(|d| d.to_string())
                    .unwrap_or_default();
                format!(
                    "instance,lower,upper_trivial,upper_binary,upper_diameter,superincreasing,two_powerful\n{},{},{},{},{},{},{}\n",
                    join_space(self.instance.values()),
                    self.lower,
                    self.upper_trivial,
                    self.upper_binary,
                    diameter,
                    self.superincreasing,
                    self.two_powerful,
                )
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "instance: {}", self.instance);
                let _ = writeln!(out, "lower bound: {}", self.lower);
                let _ = writeln!(
                    out,
                    "upper bound (one move per jar): {}",
                    self.upper_trivial
                );
                let _ = writeln!(out, "upper bound (binary): {}", self.upper_binary);
                match self.upper_diameter {
                    Some(d) => {
                        let _ = writeln!(out, "upper bound (diameter): {d}");
                    }
                    None => {
                        let _ = writeln!(out, "upper bound (diameter): n/a (needs two jars)");
                    }
                }
                let _ = writeln!(out, "superincreasing: {}", self.superincreasing);
                let _ = writeln!(out, "two-powerful: {}", self.two_powerful);
                if let Some(cm) = self.cm_if_two_powerful {
                    let _ = writeln!(out, "exact count from two-powerful structure: {cm}");
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct SeqReport {
    pub family: String,
    pub k: usize,
    pub cm: usize,
    pub set: JarSet,
}

impl SeqReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => format!(
                "family,k,cm,set\n{},{},{},{}\n",
                self.family,
                self.k,
                self.cm,
                join_space(self.set.values())
            ),
            Format::Text => format!(
                "family: {}\nk: {}\ncm: {}\nset: {}\n",
                self.family, self.k, self.cm, self.set
            ),
        }
    }
}

#[derive(Serialize)]
pub struct RatioRow {
    pub k: usize,
    pub s_k: SeqTerm,
    pub cm: usize,
    pub ratio: f64,
}

#[derive(Serialize)]
pub struct RatioReport {
    pub target: String,
    pub rows: Vec<RatioRow>,
}

impl RatioReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = String::from("k,s_k,cm,ratio\n");
                for row in &self.rows {
                    let _ = writeln!(out, "{},{},{},{}", row.k, row.s_k, row.cm, row.ratio);
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "target ratio: {}", self.target);
                for row in &self.rows {
                    let _ = writeln!(
                        out,
                        "k={:<4} s_k={:<12} cm={:<4} ratio={:.6}",
                        row.k,
                        row.s_k.to_string(),
                        row.cm,
                        row.ratio
                    );
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct BenchResults {
    pub exact: usize,
    pub emja: usize,
    pub tca: usize,
    pub ba: usize,
    pub lower: usize,
    pub upper_trivial: usize,
    pub upper_binary: usize,
    pub upper_diameter: Option<usize>,
}

#[derive(Serialize)]
pub struct BenchTiming {
    pub exact_us: u64,
    pub emja_us: u64,
    pub tca_us: u64,
    pub ba_us: u64,
}

/// One benchmarked instance: the jar set, every solver's answer, optional
/// wall-clock timings, and the seed of the generator run that produced it.
#[derive(Serialize)]
pub struct RunRecord {
    pub instance: JarSet,
    pub results: BenchResults,
    pub timing: Option<BenchTiming>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub count: usize,
    pub max_k: usize,
    pub max_value: u64,
    pub records: Vec<RunRecord>,
}

impl BenchReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out =
                    String::from("instance,k,exact,emja,tca,ba,lower,upper_trivial,upper_binary,upper_diameter\n");
                for record in &self.records {
                    let r = &record.results;
                    let diameter = r.upper_diameter.map(|d| d.to_string()).unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{},{}",
                        join_space(record.instance.values()),
                        record.instance.len(),
                        r.exact,
                        r.emja,
                        r.tca,
                        r.ba,
                        r.lower,
                        r.upper_trivial,
                        r.upper_binary,
                        diameter,
                    );
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "bench: {} instances, k in [2, {}], values in [1, {}], seed {}",
                    self.count, self.max_k, self.max_value, self.seed
                );
                for record in &self.records {
                    let r = &record.results;
                    let _ = writeln!(
                        out,
                        "{}: exact={} emja={} tca={} ba={} bounds=[{}, {}]",
                        record.instance,
                        r.exact,
                        r.emja,
                        r.tca,
                        r.ba,
                        r.lower,
                        r.upper_trivial
                            .min(r.upper_binary)
                            .min(r.upper_diameter.unwrap_or(usize::MAX)),
                    );
                }
                out
            }
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub instance: JarSet,
    pub moves: usize,
    pub valid: bool,
    pub reason: Option<String>,
    pub certificate: Option<Certificate>,
}

impl VerifyReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => format!(
                "instance,moves,valid\n{},{},{}\n",
                join_space(self.instance.values()),
                self.moves,
                self.valid
            ),
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "instance: {}", self.instance);
                let _ = writeln!(out, "moves: {}", self.moves);
                let _ = writeln!(out, "valid: {}", self.valid);
                if let Some(reason) = &self.reason {
                    let _ = writeln!(out, "reason: {reason}");
                }
                out
            }
        }
    }
}
