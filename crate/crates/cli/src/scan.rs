//! Exhaustive scans over families of F-cyclic F-crystals.
//!
//! Crystals are enumerated in canonical order (rank, then permutations in
//! lexicographic one-line order, then slope vectors lexicographically),
//! evaluated in parallel, and collected back in that same order.

use fcrystal_core::{FCyclicCrystal, Permutation};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::Limits;
use crate::report::join;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// r-cycles, slopes in {0,1}
    CircularDieudonne,
    /// all permutations, slopes in {0,1}
    AllDieudonne,
    /// r-cycles, slopes in {0..slope-max}
    CircularFcrystal,
    /// all permutations, slopes in {0..slope-max}
    AllFcrystal,
}

impl Family {
    pub fn circular_only(self) -> bool {
        matches!(self, Family::CircularDieudonne | Family::CircularFcrystal)
    }

    pub fn slope_max(self, requested: u32) -> u32 {
        match self {
            Family::CircularDieudonne | Family::AllDieudonne => 1,
            _ => requested,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Check {
    /// Δγ nonincreasing; γ strictly increasing up to stabilization
    Monotone,
    /// Δγ strictly decreasing on [1, stabilization] where a theorem requires it
    Strict,
    /// γ(i)·j < γ(j)·i for i > j ≥ 1
    Ratio,
    /// minimal ⟺ stabilization ≤ 1
    Minimal,
    All,
}

/// Which property checks count as violations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSet {
    pub monotone: bool,
    pub strict: bool,
    pub ratio: bool,
    pub minimal: bool,
}

impl CheckSet {
    pub fn all() -> Self {
        CheckSet {
            monotone: true,
            strict: true,
            ratio: true,
            minimal: true,
        }
    }

    pub fn from_checks(checks: &[Check]) -> Self {
        if checks.is_empty() {
            return Self::all();
        }
        let mut set = CheckSet::default();
        for c in checks {
            match c {
                Check::Monotone => set.monotone = true,
                Check::Strict => set.strict = true,
                Check::Ratio => set.ratio = true,
                Check::Minimal => set.minimal = true,
                Check::All => set = Self::all(),
            }
        }
        set
    }
}

/// All permutations of `1..=r` in lexicographic one-line order.
pub fn permutations(r: usize, circular_only: bool) -> Vec<Permutation> {
    (1..=r)
        .permutations(r)
        .map(|images| Permutation::from_images(&images).expect("a permutation"))
        .filter(|p| !circular_only || p.is_full_cycle())
        .collect()
}

/// All slope vectors in `{0..=max}^r`, lexicographically.
pub fn slope_vectors(r: usize, max: u32) -> Vec<Vec<u32>> {
    (0..r).map(|_| 0..=max).multi_cartesian_product().collect()
}

pub fn family_size(family: Family, r: usize, slope_max: u32) -> u64 {
    let perms: u64 = if family.circular_only() {
        (1..r as u64).product()
    } else {
        (1..=r as u64).product()
    };
    perms.saturating_mul(u64::from(family.slope_max(slope_max) + 1).saturating_pow(r as u32))
}

pub fn enumerate(family: Family, r: usize, slope_max: u32) -> Vec<FCyclicCrystal> {
    let slopes = slope_vectors(r, family.slope_max(slope_max));
    permutations(r, family.circular_only())
        .into_iter()
        .flat_map(|pi| {
            slopes
                .iter()
                .map(move |e| FCyclicCrystal::new(pi.clone(), e.clone()).expect("r slopes"))
        })
        .collect()
}

/// Runs `f` on every item in parallel on `jobs` workers (all cores when
/// `None`) and returns results in input order.
pub fn par_map<T, R, F>(items: &[T], jobs: Option<usize>, f: F) -> Result<Vec<R>, CliError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(&f).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub perm: String,
    pub slopes: Vec<u32>,
    pub dieudonne: bool,
    pub f_circular: bool,
    /// `γ(0..=m_max)`
    pub gamma: Vec<u64>,
    /// `Δγ(1..=m_max)`
    pub delta: Vec<u64>,
    pub stabilization: usize,
    pub ordinary: Option<bool>,
    pub minimal: Option<bool>,
    pub nonincreasing: bool,
    pub strict_decreasing: bool,
    pub strict_required: bool,
    pub ratio_ok: bool,
    /// Stabilization ≥ 2 and Δγ constant on `[1, stabilization]`.
    pub constant_delta: bool,
    /// Properties were evaluated on `γ(0..=checked_through)`.
    pub checked_through: usize,
    pub violations: Vec<&'static str>,
}

/// Evaluates one crystal. Levels up to `max(m_max, stabilization + 1)` are
/// used for the checks; `gamma`/`delta` are reported up to `m_max`.
pub fn evaluate(c: &FCyclicCrystal, m_max: usize, checks: CheckSet) -> ScanRecord {
    let mono = c.delta_monotonicity_report(m_max);
    let top = mono.checked_through;
    let t = c.gamma_table(top);
    let stab = mono.stabilization;
    let g = &t.gamma;
    let dieudonne = c.is_dieudonne();
    let nonordinary = dieudonne && t.ordinary == Some(false);

    let increasing = (1..=stab.min(top)).all(|n| g[n] > g[n - 1]);
    let constant_after = (stab.max(1)..=top).all(|n| g[n] == g[stab]);
    let ratio_ok = (1..=top)
        .flat_map(|j| (j + 1..=top).map(move |i| (i, j)))
        .all(|(i, j)| g[j] == 0 || g[i] * (j as u64) < g[j] * (i as u64));
    let first_step_strict = top < 2 || t.delta_at(2) < t.delta_at(1);
    let minimal = dieudonne.then(|| c.is_minimal().expect("Dieudonné"));
    let constant_delta = stab >= 2 && (1..=stab).all(|n| t.delta_at(n) == t.delta_at(1));

    let mut violations = Vec::new();
    if checks.monotone && nonordinary {
        if !mono.nonincreasing {
            violations.push("nonincreasing");
        }
        if !(increasing && constant_after) {
            violations.push("gamma-shape");
        }
    }
    if checks.strict {
        if mono.strict_required && !mono.strict_through_stabilization {
            violations.push("strict");
        }
        if nonordinary && !first_step_strict {
            violations.push("first-step");
        }
    }
    if checks.ratio && nonordinary && !ratio_ok {
        violations.push("ratio");
    }
    if checks.minimal && minimal.is_some_and(|mi| mi != (stab <= 1)) {
        violations.push("minimal");
    }

    ScanRecord {
        perm: c.permutation().to_string(),
        slopes: c.slopes().to_vec(),
        dieudonne,
        f_circular: c.is_f_circular(),
        gamma: g[..=m_max].to_vec(),
        delta: t.delta[..m_max].to_vec(),
        stabilization: stab,
        ordinary: t.ordinary,
        minimal,
        nonincreasing: mono.nonincreasing,
        strict_decreasing: mono.strict_through_stabilization,
        strict_required: mono.strict_required,
        ratio_ok,
        constant_delta,
        checked_through: top,
        violations,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ViolationCounts {
    pub nonincreasing: u64,
    pub gamma_shape: u64,
    pub strict: u64,
    pub first_step: u64,
    pub ratio: u64,
    pub minimal: u64,
}

impl ViolationCounts {
    pub fn total(&self) -> u64 {
        self.nonincreasing + self.gamma_shape + self.strict + self.first_step + self.ratio + self.minimal
    }

    fn add(&mut self, name: &str) {
        match name {
            "nonincreasing" => self.nonincreasing += 1,
            "gamma-shape" => self.gamma_shape += 1,
            "strict" => self.strict += 1,
            "first-step" => self.first_step += 1,
            "ratio" => self.ratio += 1,
            "minimal" => self.minimal += 1,
            other => unreachable!("unknown violation {other}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub records: u64,
    pub dieudonne: u64,
    pub nonordinary_dieudonne: u64,
    pub strict_required: u64,
    pub constant_delta: u64,
    pub violations: ViolationCounts,
}

impl ScanSummary {
    pub fn of(records: &[ScanRecord]) -> Self {
        let mut s = ScanSummary::default();
        for r in records {
            s.records += 1;
            s.dieudonne += u64::from(r.dieudonne);
            s.nonordinary_dieudonne += u64::from(r.ordinary == Some(false));
            s.strict_required += u64::from(r.strict_required);
            s.constant_delta += u64::from(r.constant_delta);
            for v in &r.violations {
                s.violations.add(v);
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub family: Family,
    pub ranks: Vec<usize>,
    pub slope_max: u32,
    pub m_max: usize,
    pub checks: CheckSet,
    pub jobs: Option<usize>,
}

pub fn run(spec: &ScanSpec, limits: &Limits) -> Result<Vec<ScanRecord>, CliError> {
    limits.check_m(spec.m_max)?;
    let mut total = 0u64;
    for &r in &spec.ranks {
        limits.check_r(r)?;
        total = total.saturating_add(family_size(spec.family, r, spec.slope_max));
    }
    limits.check_records(total)?;
    let crystals: Vec<FCyclicCrystal> = spec
        .ranks
        .iter()
        .flat_map(|&r| enumerate(spec.family, r, spec.slope_max))
        .collect();
    for c in &crystals {
        limits.check_expansion(c.expansion_length())?;
    }
    par_map(&crystals, spec.jobs, |c| evaluate(c, spec.m_max, spec.checks))
}

/// Flat CSV row for a [`ScanRecord`]; list fields are space-separated.
#[derive(Serialize)]
pub struct ScanCsvRow<'a> {
    perm: &'a str,
    slopes: String,
    dieudonne: bool,
    f_circular: bool,
    gamma: String,
    delta: String,
    stabilization: usize,
    ordinary: Option<bool>,
    minimal: Option<bool>,
    nonincreasing: bool,
    strict_decreasing: bool,
    strict_required: bool,
    ratio_ok: bool,
    constant_delta: bool,
    violations: String,
}

impl<'a> From<&'a ScanRecord> for ScanCsvRow<'a> {
    fn from(r: &'a ScanRecord) -> Self {
        let spaced = |s: String| s.replace(',', " ");
        ScanCsvRow {
            perm: &r.perm,
            slopes: spaced(join(&r.slopes)),
            dieudonne: r.dieudonne,
            f_circular: r.f_circular,
            gamma: spaced(join(&r.gamma)),
            delta: spaced(join(&r.delta)),
            stabilization: r.stabilization,
            ordinary: r.ordinary,
            minimal: r.minimal,
            nonincreasing: r.nonincreasing,
            strict_decreasing: r.strict_decreasing,
            strict_required: r.strict_required,
            ratio_ok: r.ratio_ok,
            constant_delta: r.constant_delta,
            violations: r.violations.join(" "),
        }
    }
}
