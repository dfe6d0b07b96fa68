//! F-cyclic F-crystals `M_π` and their level-`m` invariants.
//!
//! `M_π` has basis `v_1, .., v_r` and Frobenius `φ(v_i) = p^{e_i} v_{π(i)}`.
//! Each orbit `O` of `π × π` on `{1..r}²` contributes the circular sequence
//! `ε_O = (e_{i_1} - e_{j_1}, .., e_{i_s} - e_{j_s})`, and
//!
//! ```text
//! γ(m) = Σ_O Σ_{λ=1}^{m} a_λ(ε̃_O)
//! b(m) = Σ_O max(0, m - λ(ε̃_O)) · |O|      (orbits with a circular level)
//! ```
//!
//! where `ε̃_O` is the `±1` normalization. `|O|` is always the length of the
//! orbit itself, never of its normalization.

use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;

use crate::circseq::{CircularSeq, NormalizedSeq, SegmentCensus};
use crate::digraph::{oracle_counts, ComponentStats};
use crate::error::Error;
use crate::permutation::{Orbit, Permutation};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FCyclicCrystal {
    pi: Permutation,
    slopes: Vec<u32>,
}

/// Everything the formulas need about one orbit, at a fixed level cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub orbit: Orbit,
    pub epsilon: CircularSeq,
    pub normalized: NormalizedSeq,
    pub census: SegmentCensus,
    /// Circular level; `None` when the slope differences do not sum to zero.
    pub level: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaReport {
    pub m_max: usize,
    /// `γ(0), .., γ(m_max)`.
    pub gamma: Vec<u64>,
    /// `Δγ(n) = γ(n) - γ(n-1)` for `n = 1..=m_max`.
    pub delta: Vec<u64>,
    /// `b(1), .., b(m_max)`.
    pub b: Vec<u64>,
    /// Smallest `n` with `γ` constant from `n` on. May exceed `m_max`.
    pub stabilization: usize,
    /// Set for Dieudonné inputs, where the stabilization level is the
    /// isomorphism number.
    pub stabilization_is_isomorphism_number: bool,
    /// `γ(1) = 0`; only defined for Dieudonné inputs.
    pub ordinary: Option<bool>,
    pub per_orbit: Vec<OrbitData>,
}

impl GammaReport {
    /// `Δγ(n)` for `1 ≤ n ≤ m_max`.
    pub fn delta_at(&self, n: usize) -> u64 {
        self.delta[n - 1]
    }

    /// `b(m)` for `1 ≤ m ≤ m_max`.
    pub fn b_at(&self, m: usize) -> u64 {
        self.b[m - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMismatch {
    pub orbit_index: usize,
    pub m: usize,
    pub formula_linear: u64,
    pub formula_circular: u64,
    pub oracle: ComponentStats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    /// Number of (orbit, level) pairs compared.
    pub checked: u64,
    pub mismatches: Vec<OrbitMismatch>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// `Δγ(n+1) ≤ Δγ(n)` for every checked `n`.
    pub nonincreasing: bool,
    /// `Δγ(n) > Δγ(n+1)` for `1 ≤ n ≤ stabilization`.
    pub strict_through_stabilization: bool,
    /// Strictness is a theorem for this input: nonordinary Dieudonné module
    /// whose permutation is a single cycle of length at least 2.
    pub strict_required: bool,
    /// First `n` at which a required property fails.
    pub first_violation: Option<usize>,
    pub stabilization: usize,
    /// Deltas were compared for `n` up to this level.
    pub checked_through: usize,
}

/// Newton slope of one cycle of `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSlope {
    pub cycle: Vec<usize>,
    pub slope: Ratio<u64>,
    pub multiplicity: usize,
}

impl FCyclicCrystal {
    pub fn new(pi: Permutation, slopes: Vec<u32>) -> Result<Self> {
        if slopes.len() != pi.size() {
            return Err(Error::SlopeCount {
                expected: pi.size(),
                found: slopes.len(),
            });
        }
        Ok(FCyclicCrystal { pi, slopes })
    }

    pub fn rank(&self) -> usize {
        self.pi.size()
    }

    pub fn permutation(&self) -> &Permutation {
        &self.pi
    }

    pub fn slopes(&self) -> &[u32] {
        &self.slopes
    }

    pub fn is_dieudonne(&self) -> bool {
        self.slopes.iter().all(|&e| e <= 1)
    }

    pub fn is_f_circular(&self) -> bool {
        self.pi.is_full_cycle()
    }

    /// `(codimension, dimension)` = number of slopes equal to 0 and to 1, for
    /// Dieudonné inputs.
    pub fn codim_dim(&self) -> Option<(usize, usize)> {
        self.is_dieudonne().then(|| {
            let d = self.slopes.iter().filter(|&&e| e == 1).count();
            (self.rank() - d, d)
        })
    }

    fn slope(&self, i: usize) -> i64 {
        i64::from(self.slopes[i - 1])
    }

    /// `ε_O`: slope differences along the orbit.
    pub fn orbit_epsilon(&self, orbit: &Orbit) -> CircularSeq {
        let entries = orbit
            .points()
            .iter()
            .map(|&(i, j)| self.slope(i) - self.slope(j))
            .collect();
        CircularSeq::new(entries).expect("orbits are nonempty")
    }

    fn epsilons(&self) -> Vec<(Orbit, CircularSeq)> {
        self.pi
            .product_orbits()
            .into_iter()
            .map(|o| {
                let e = self.orbit_epsilon(&o);
                (o, e)
            })
            .collect()
    }

    /// Per-orbit data with the census capped at level `m`.
    pub fn orbit_data(&self, m: usize) -> Vec<OrbitData> {
        self.epsilons()
            .into_iter()
            .map(|(orbit, epsilon)| {
                let normalized = epsilon.normalize(m);
                let census = normalized.segment_census(m);
                let level = epsilon.circular_level();
                OrbitData {
                    orbit,
                    epsilon,
                    normalized,
                    census,
                    level,
                }
            })
            .collect()
    }

    /// `γ(m)`, with `γ(0) = 0`.
    pub fn gamma(&self, m: usize) -> u64 {
        if m == 0 {
            return 0;
        }
        self.epsilons().iter().map(|(_, e)| e.linear_count(m)).sum()
    }

    /// `b(m)`: `p^{b(m)}` is the number of connected components of the
    /// level-`m` endomorphism scheme.
    pub fn endo_exponent(&self, m: usize) -> u64 {
        self.epsilons()
            .iter()
            .map(|(o, e)| e.circular_count(m) * o.len() as u64)
            .sum()
    }

    /// Total length `Σ_O Σ_t |ε_O[t]|` of the unclamped `±1` expansions. Time
    /// and memory of [`stabilization`](Self::stabilization) are linear in it.
    pub fn expansion_length(&self) -> u64 {
        self.epsilons()
            .iter()
            .flat_map(|(_, e)| e.entries().iter().map(|x| x.unsigned_abs()))
            .sum()
    }

    /// Largest free-segment level over all orbits (0 if there is none).
    pub fn stabilization(&self) -> usize {
        self.epsilons()
            .iter()
            .map(|(_, e)| e.max_segment_level())
            .max()
            .unwrap_or(0)
    }

    pub fn gamma_table(&self, m_max: usize) -> GammaReport {
        let per_orbit = self.orbit_data(m_max);
        let mut gamma = vec![0u64; m_max + 1];
        let mut b = vec![0u64; m_max];
        for od in &per_orbit {
            for m in 1..=m_max {
                gamma[m] += od.census.total_up_to(m);
                if let Some(level) = od.level {
                    b[m - 1] += (m as u64).saturating_sub(level) * od.orbit.len() as u64;
                }
            }
        }
        let delta = gamma.windows(2).map(|w| w[1] - w[0]).collect();
        let stabilization = per_orbit
            .iter()
            .map(|od| od.epsilon.max_segment_level())
            .max()
            .unwrap_or(0);
        let dieudonne = self.is_dieudonne();
        let ordinary = (dieudonne && m_max >= 1).then(|| gamma[1] == 0);
        GammaReport {
            m_max,
            gamma,
            delta,
            b,
            stabilization,
            stabilization_is_isomorphism_number: dieudonne,
            ordinary,
            per_orbit,
        }
    }

    /// Total digit vertices of the level-`m_max` digraph, `r² · m_max`.
    pub fn oracle_vertex_count(&self, m_max: usize) -> u64 {
        (self.rank() as u64).pow(2) * m_max as u64
    }

    /// Sum of the oracle census over all orbits at level `m`.
    pub fn oracle_totals(&self, m: usize) -> Result<ComponentStats> {
        let mut total = ComponentStats::default();
        for (_, e) in self.epsilons() {
            total += oracle_counts(&e, m)?;
        }
        Ok(total)
    }

    /// Compares the closed formulas against the digraph oracle for every
    /// orbit and every `1 ≤ m ≤ m_max`. Also checks `w = c · |O|` on the
    /// oracle side.
    pub fn verify_formula_vs_oracle(
        &self,
        m_max: usize,
        vertex_budget: u64,
    ) -> Result<VerificationReport> {
        let vertices = self.oracle_vertex_count(m_max);
        if vertices > vertex_budget {
            return Err(Error::ResourceLimit {
                what: "oracle vertices",
                value: vertices,
                limit: vertex_budget,
            });
        }
        let mut report = VerificationReport::default();
        for (idx, (orbit, eps)) in self.epsilons().into_iter().enumerate() {
            for m in 1..=m_max {
                let oracle = oracle_counts(&eps, m)?;
                let formula_linear = eps.linear_count(m);
                let formula_circular = eps.circular_count(m);
                report.checked += 1;
                if oracle.free_linear != formula_linear
                    || oracle.circular != formula_circular
                    || oracle.circular_edges != oracle.circular * orbit.len() as u64
                {
                    report.mismatches.push(OrbitMismatch {
                        orbit_index: idx,
                        m,
                        formula_linear,
                        formula_circular,
                        oracle,
                    });
                }
            }
        }
        Ok(report)
    }

    /// Checks that `Δγ` is nonincreasing, and strictly decreasing through
    /// the stabilization level. The table is extended to
    /// `stabilization + 1` when `m_max` is shorter.
    pub fn delta_monotonicity_report(&self, m_max: usize) -> MonotonicityReport {
        let stabilization = self.stabilization();
        let top = m_max.max(stabilization + 1).max(1);
        let table = self.gamma_table(top);
        let d = |n: usize| table.delta_at(n);

        let increase = (1..top).find(|&n| d(n + 1) > d(n));
        let non_strict = (1..=stabilization.min(top - 1)).find(|&n| d(n) <= d(n + 1));
        let strict_required = self.is_dieudonne()
            && self.rank() >= 2
            && self.is_f_circular()
            && table.ordinary == Some(false);
        let first_violation = match (increase, strict_required) {
            (Some(n), _) => Some(n),
            (None, true) => non_strict,
            (None, false) => None,
        };
        MonotonicityReport {
            nonincreasing: increase.is_none(),
            strict_through_stabilization: non_strict.is_none(),
            strict_required,
            first_violation,
            stabilization,
            checked_through: top,
        }
    }

    /// One Newton slope per cycle of `π`: the mean Hodge slope on the cycle.
    pub fn newton_slopes(&self) -> Vec<NewtonSlope> {
        self.pi
            .cycles()
            .into_iter()
            .map(|cycle| {
                let sum: u64 = cycle.iter().map(|&i| u64::from(self.slopes[i - 1])).sum();
                let len = cycle.len();
                NewtonSlope {
                    slope: Ratio::new(sum, len as u64),
                    multiplicity: len,
                    cycle,
                }
            })
            .collect()
    }

    /// Minimality test for Dieudonné inputs: on each cycle `C` of slope
    /// `λ_C`, every accumulated exponent `Σ_{u<q} e_{π^u(i)}` must be
    /// `⌊qλ_C⌋` or `⌊qλ_C⌋ + 1`. Both sides grow by `Σ_C e` per turn, so
    /// `q ≤ |C|` suffices.
    pub fn is_minimal(&self) -> Result<bool> {
        if !self.is_dieudonne() {
            return Err(Error::NotDieudonne);
        }
        for cycle in self.pi.cycles() {
            let len = cycle.len() as u64;
            let total: u64 = cycle.iter().map(|&i| u64::from(self.slopes[i - 1])).sum();
            for &start in &cycle {
                let mut acc = 0u64;
                let mut cur = start;
                for q in 1..=len {
                    acc += u64::from(self.slopes[cur - 1]);
                    cur = self.pi.apply(cur);
                    let floor = q * total / len;
                    if acc != floor && acc != floor + 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// The direct summands `M_{π_i}`, one per cycle of `π`, each relabelled
    /// onto `{1..|π_i|}` in increasing order of the original points.
    pub fn cycle_summands(&self) -> Vec<FCyclicCrystal> {
        self.pi
            .cycles()
            .into_iter()
            .map(|cycle| {
                let mut points = cycle.clone();
                points.sort_unstable();
                let local = |v: usize| points.binary_search(&v).expect("point on cycle") + 1;
                let relabelled: Vec<usize> = cycle.iter().map(|&v| local(v)).collect();
                let pi = Permutation::from_cycles(points.len(), &[relabelled])
                    .expect("relabelled cycle is a permutation");
                let slopes = points.iter().map(|&v| self.slopes[v - 1]).collect();
                FCyclicCrystal { pi, slopes }
            })
            .collect()
    }
}
