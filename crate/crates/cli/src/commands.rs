//! One function per subcommand. Each returns the rendered report and
//! whether a property violation (exit code 1) was found.

use std::fmt::Write as _;
use std::path::Path;

use fcrystal_core::{oracle_counts, CircularSeq, ComponentStats, FCyclicCrystal, LevelDigraph, Ratio};
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::CliError;
use crate::input::{JobSpec, Levels, Limits};
use crate::output::write_atomic;
use crate::report::{join, schema, to_csv, to_json, CrystalEcho, Format, OrbitRecord};
use crate::scan::{self, family_size, par_map, Family, ScanRecord, ScanSpec, ScanSummary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub violation: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            violation: false,
        }
    }
}

fn crystal_line(c: &FCyclicCrystal) -> String {
    format!("r = {}, π = {}, E = ({})", c.rank(), c.permutation(), join(c.slopes()))
}

fn dump_digraphs<'a>(
    path: &Path,
    graphs: impl IntoIterator<Item = (String, &'a CircularSeq)>,
    m: usize,
) -> Result<(), CliError> {
    let mut dot = String::new();
    for (name, seq) in graphs {
        let g = LevelDigraph::build(seq, m)?.propagate_zeros()?;
        g.write_dot(&name, &mut dot).expect("writing to a String");
    }
    write_atomic(path, dot.as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------- gamma

#[derive(Serialize)]
struct GammaDoc {
    schema: String,
    input: CrystalEcho,
    m_max: usize,
    gamma: Vec<u64>,
    delta: Vec<u64>,
    b: Vec<u64>,
    stabilization: usize,
    stabilization_is_isomorphism_number: bool,
    ordinary: Option<bool>,
    orbits: Vec<OrbitRecord>,
}

#[derive(Serialize)]
struct GammaRow {
    m: usize,
    gamma: u64,
    delta: Option<u64>,
    b: Option<u64>,
}

/// `γ(0..=m)`, `Δγ`, `b`, stabilization and the per-orbit census.
pub fn gamma(job: &JobSpec, dump: Option<&Path>) -> Result<Outcome, CliError> {
    let c = &job.crystal;
    let m_max = job.m_hi;
    let t = c.gamma_table(m_max);
    if let Some(path) = dump {
        job.limits.check_vertices(c.oracle_vertex_count(m_max))?;
        let names = t.per_orbit.iter().enumerate().map(|(k, od)| (format!("orbit {}", k + 1), &od.epsilon));
        dump_digraphs(path, names, m_max)?;
    }
    let output = match job.format {
        Format::Json => to_json(&GammaDoc {
            schema: schema("gamma"),
            input: c.into(),
            m_max,
            gamma: t.gamma.clone(),
            delta: t.delta.clone(),
            b: t.b.clone(),
            stabilization: t.stabilization,
            stabilization_is_isomorphism_number: t.stabilization_is_isomorphism_number,
            ordinary: t.ordinary,
            orbits: t.per_orbit.iter().map(OrbitRecord::from).collect(),
        })?,
        Format::Csv => to_csv((0..=m_max).map(|m| GammaRow {
            m,
            gamma: t.gamma[m],
            delta: (m > 0).then(|| t.delta_at(m)),
            b: (m > 0).then(|| t.b_at(m)),
        }))?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{}", crystal_line(c)).unwrap();
            writeln!(s, "γ = {}", join(&t.gamma)).unwrap();
            writeln!(s, "Δγ = {}", join(&t.delta)).unwrap();
            writeln!(s, "b = {}", join(&t.b)).unwrap();
            let label = if t.stabilization_is_isomorphism_number {
                " (isomorphism number)"
            } else {
                " (not Dieudonné: not claimed to be the isomorphism number)"
            };
            writeln!(s, "stabilization = {}{label}", t.stabilization).unwrap();
            match t.ordinary {
                Some(true) => writeln!(s, "ordinary").unwrap(),
                Some(false) => writeln!(s, "nonordinary").unwrap(),
                None => {}
            }
            writeln!(s, "orbits:").unwrap();
            for (k, od) in t.per_orbit.iter().enumerate() {
                let census: Vec<String> = od.census.iter().map(|(l, n)| format!("a{l}={n}")).collect();
                let level = od.level.map_or("none".to_string(), |l| l.to_string());
                writeln!(
                    s,
                    "  #{} |O| = {} ε = ({}) λ = {} census: {}",
                    k + 1,
                    od.orbit.len(),
                    join(od.epsilon.entries()),
                    level,
                    if census.is_empty() { "-".to_string() } else { census.join(" ") }
                )
                .unwrap();
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}

// ----------------------------------------------------------------- endo

#[derive(Serialize)]
struct EndoRow {
    m: usize,
    b: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_pow_b: Option<String>,
}

#[derive(Serialize)]
struct EndoDoc {
    schema: String,
    input: CrystalEcho,
    prime: Option<u64>,
    rows: Vec<EndoRow>,
}

/// `b(m)` on the requested range, and `p^b` when a prime is given.
pub fn endo(job: &JobSpec) -> Result<Outcome, CliError> {
    let c = &job.crystal;
    let rows: Vec<EndoRow> = (job.m_lo..=job.m_hi)
        .map(|m| {
            let b = c.endo_exponent(m);
            let p_pow_b = job.prime.map(|p| {
                let exp = u32::try_from(b).expect("b is bounded by r²·m");
                BigUint::from(p).pow(exp).to_string()
            });
            EndoRow { m, b, p_pow_b }
        })
        .collect();
    let output = match job.format {
        Format::Json => to_json(&EndoDoc {
            schema: schema("endo"),
            input: c.into(),
            prime: job.prime,
            rows,
        })?,
        Format::Csv => to_csv(&rows)?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{}", crystal_line(c)).unwrap();
            for row in &rows {
                write!(s, "m = {}: b = {}", row.m, row.b).unwrap();
                if let Some(pb) = &row.p_pow_b {
                    write!(s, ", p^b = {pb}").unwrap();
                }
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}

// --------------------------------------------------------------- verify

#[derive(Serialize)]
struct SeqRow {
    m: usize,
    oracle_linear: u64,
    oracle_circular: u64,
    oracle_circular_edges: u64,
    formula_linear: u64,
    formula_circular: u64,
    matches: bool,
}

#[derive(Serialize)]
struct SeqDoc {
    schema: String,
    seq: Vec<i64>,
    rows: Vec<SeqRow>,
    mismatches: usize,
}

/// Oracle against formula for one raw circular sequence.
pub fn verify_seq(
    seq: &CircularSeq,
    levels: Levels,
    format: Format,
    limits: &Limits,
    dump: Option<&Path>,
) -> Result<Outcome, CliError> {
    let (lo, hi) = levels.range(limits)?;
    limits.check_vertices(seq.len() as u64 * hi as u64)?;
    let rows = (lo..=hi)
        .map(|m| {
            let o: ComponentStats = oracle_counts(seq, m)?;
            let (fl, fc) = (seq.linear_count(m), seq.circular_count(m));
            Ok(SeqRow {
                m,
                oracle_linear: o.free_linear,
                oracle_circular: o.circular,
                oracle_circular_edges: o.circular_edges,
                formula_linear: fl,
                formula_circular: fc,
                matches: o.free_linear == fl
                    && o.circular == fc
                    && o.circular_edges == o.circular * seq.len() as u64,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    if let Some(path) = dump {
        dump_digraphs(path, [("seq".to_string(), seq)], hi)?;
    }
    let mismatches = rows.iter().filter(|r| !r.matches).count();
    let output = match format {
        Format::Json => to_json(&SeqDoc {
            schema: schema("verify-seq"),
            seq: seq.entries().to_vec(),
            rows,
            mismatches,
        })?,
        Format::Csv => to_csv(&rows)?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "ε = ({})", join(seq.entries())).unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "m = {}: ℓ={}, c={}, w={} (oracle); ℓ={}, c={} (formula); {}",
                    r.m,
                    r.oracle_linear,
                    r.oracle_circular,
                    r.oracle_circular_edges,
                    r.formula_linear,
                    r.formula_circular,
                    if r.matches { "matches" } else { "MISMATCH" }
                )
                .unwrap();
            }
            writeln!(s, "{mismatches} mismatches").unwrap();
            s
        }
    };
    Ok(Outcome {
        output,
        violation: mismatches > 0,
    })
}

#[derive(Clone, Debug, Serialize)]
struct CrystalCheck {
    perm: String,
    slopes: Vec<u32>,
    checked: u64,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct VerifyDoc {
    schema: String,
    m_max: usize,
    crystals: usize,
    checked: u64,
    mismatches: u64,
    failing: Vec<CrystalCheck>,
}

#[derive(Serialize)]
struct VerifyCsvRow<'a> {
    perm: &'a str,
    slopes: String,
    checked: u64,
    mismatches: usize,
}

fn check_crystal(c: &FCyclicCrystal, m_max: usize, limits: &Limits) -> Result<CrystalCheck, CliError> {
    let report = c.verify_formula_vs_oracle(m_max, limits.vertex_budget)?;
    Ok(CrystalCheck {
        perm: c.permutation().to_string(),
        slopes: c.slopes().to_vec(),
        checked: report.checked,
        mismatches: report
            .mismatches
            .iter()
            .map(|x| {
                format!(
                    "orbit {} m={}: formula ℓ={} c={}, oracle ℓ={} c={} w={}",
                    x.orbit_index + 1,
                    x.m,
                    x.formula_linear,
                    x.formula_circular,
                    x.oracle.free_linear,
                    x.oracle.circular,
                    x.oracle.circular_edges
                )
            })
            .collect(),
    })
}

fn render_checks(results: &[CrystalCheck], m_max: usize, format: Format) -> Result<Outcome, CliError> {
    let checked: u64 = results.iter().map(|r| r.checked).sum();
    let mismatches: u64 = results.iter().map(|r| r.mismatches.len() as u64).sum();
    let output = match format {
        Format::Json => to_json(&VerifyDoc {
            schema: schema("verify"),
            m_max,
            crystals: results.len(),
            checked,
            mismatches,
            failing: results.iter().filter(|r| !r.mismatches.is_empty()).cloned().collect(),
        })?,
        Format::Csv => to_csv(results.iter().map(|r| VerifyCsvRow {
            perm: &r.perm,
            slopes: join(&r.slopes).replace(',', " "),
            checked: r.checked,
            mismatches: r.mismatches.len(),
        }))?,
        Format::Text => {
            let mut s = String::new();
            for r in results.iter().filter(|r| !r.mismatches.is_empty()) {
                for x in &r.mismatches {
                    writeln!(s, "π = {}, E = ({}): {x}", r.perm, join(&r.slopes)).unwrap();
                }
            }
            writeln!(
                s,
                "checked {} crystals, {checked} (orbit, m) pairs for m ≤ {m_max}: {mismatches} mismatches",
                results.len()
            )
            .unwrap();
            s
        }
    };
    Ok(Outcome {
        output,
        violation: mismatches > 0,
    })
}

/// Oracle against formula for one crystal, every orbit, `m ≤ m_max`.
pub fn verify_crystal(job: &JobSpec) -> Result<Outcome, CliError> {
    job.limits.check_vertices(job.crystal.oracle_vertex_count(job.m_hi))?;
    let result = check_crystal(&job.crystal, job.m_hi, &job.limits)?;
    render_checks(&[result], job.m_hi, job.format)
}

/// Oracle against formula over all permutations of rank `1..=r_max` and
/// all slopes in `{0..=slope_max}^r`.
pub fn verify_family(
    r_max: usize,
    slope_max: u32,
    m_max: usize,
    format: Format,
    limits: &Limits,
    jobs: Option<usize>,
) -> Result<Outcome, CliError> {
    limits.check_r(r_max)?;
    limits.check_m(m_max)?;
    limits.check_vertices((r_max * r_max * m_max) as u64)?;
    let total: u64 = (1..=r_max).map(|r| family_size(Family::AllFcrystal, r, slope_max)).sum();
    limits.check_records(total)?;
    let crystals: Vec<FCyclicCrystal> = (1..=r_max)
        .flat_map(|r| scan::enumerate(Family::AllFcrystal, r, slope_max))
        .collect();
    let results = par_map(&crystals, jobs, |c| check_crystal(c, m_max, limits))?
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    render_checks(&results, m_max, format)
}

// ----------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanDoc<'a> {
    schema: String,
    family: Family,
    ranks: &'a [usize],
    slope_max: u32,
    m_max: usize,
    checks: scan::CheckSet,
    summary: &'a ScanSummary,
    records: &'a [ScanRecord],
}

pub fn scan(spec: &ScanSpec, format: Format, limits: &Limits) -> Result<Outcome, CliError> {
    let records = scan::run(spec, limits)?;
    let summary = ScanSummary::of(&records);
    let output = match format {
        Format::Json => to_json(&ScanDoc {
            schema: schema("scan"),
            family: spec.family,
            ranks: &spec.ranks,
            slope_max: spec.family.slope_max(spec.slope_max),
            m_max: spec.m_max,
            checks: spec.checks,
            summary: &summary,
            records: &records,
        })?,
        Format::Csv => to_csv(records.iter().map(scan::ScanCsvRow::from))?,
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                let mut flags = Vec::new();
                if r.constant_delta {
                    flags.push("constant-Δγ".to_string());
                }
                if let Some(m) = r.minimal {
                    flags.push(format!("minimal={m}"));
                }
                if !r.violations.is_empty() {
                    flags.push(format!("VIOLATES {}", r.violations.join(",")));
                }
                writeln!(
                    s,
                    "π = {}, E = ({}): γ = {}; Δγ = {}; stabilization = {}{}{}",
                    r.perm,
                    join(&r.slopes),
                    join(&r.gamma),
                    join(&r.delta),
                    r.stabilization,
                    if flags.is_empty() { "" } else { "; " },
                    flags.join(" ")
                )
                .unwrap();
            }
            let v = &summary.violations;
            writeln!(
                s,
                "{} records ({} Dieudonné, {} nonordinary Dieudonné, {} strictness required, {} constant-Δγ)",
                summary.records,
                summary.dieudonne,
                summary.nonordinary_dieudonne,
                summary.strict_required,
                summary.constant_delta
            )
            .unwrap();
            writeln!(
                s,
                "violations: nonincreasing={} gamma-shape={} strict={} first-step={} ratio={} minimal={}",
                v.nonincreasing, v.gamma_shape, v.strict, v.first_step, v.ratio, v.minimal
            )
            .unwrap();
            writeln!(s, "{} strictness violations", v.strict + v.first_step).unwrap();
            writeln!(s, "{} violations in total", v.total()).unwrap();
            s
        }
    };
    Ok(Outcome {
        output,
        violation: summary.violations.total() > 0,
    })
}

// -------------------------------------------------------------- minimal

#[derive(Serialize)]
struct SlopeRecord {
    cycle: Vec<usize>,
    slope: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct MinimalDoc {
    schema: String,
    input: CrystalEcho,
    minimal: bool,
    stabilization: usize,
    cross_check: bool,
    newton_slopes: Vec<SlopeRecord>,
}

#[derive(Serialize)]
struct MinimalCsvRow {
    perm: String,
    slopes: String,
    minimal: bool,
    stabilization: usize,
    cross_check: bool,
    newton_slopes: String,
}

/// Minimality verdict, Newton slopes, and the cross-check
/// `minimal ⟺ stabilization ≤ 1`.
pub fn minimal(job: &JobSpec) -> Result<Outcome, CliError> {
    let c = &job.crystal;
    let minimal = c.is_minimal()?;
    let stabilization = c.stabilization();
    let cross_check = minimal == (stabilization <= 1);
    let slopes: Vec<SlopeRecord> = c
        .newton_slopes()
        .into_iter()
        .map(|n| SlopeRecord {
            cycle: n.cycle,
            slope: n.slope.to_string(),
            multiplicity: n.multiplicity,
        })
        .collect();
    let mut all: Vec<Ratio<u64>> = c
        .newton_slopes()
        .iter()
        .flat_map(|n| std::iter::repeat_n(n.slope, n.multiplicity))
        .collect();
    all.sort();
    let slope_list = join(&all);
    let output = match job.format {
        Format::Json => to_json(&MinimalDoc {
            schema: schema("minimal"),
            input: c.into(),
            minimal,
            stabilization,
            cross_check,
            newton_slopes: slopes,
        })?,
        Format::Csv => to_csv([MinimalCsvRow {
            perm: c.permutation().to_string(),
            slopes: join(c.slopes()).replace(',', " "),
            minimal,
            stabilization,
            cross_check,
            newton_slopes: slope_list.replace(',', " "),
        }])?,
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{}", crystal_line(c)).unwrap();
            writeln!(s, "minimal = {minimal}").unwrap();
            writeln!(s, "Newton slopes = {{{slope_list}}}").unwrap();
            for n in &slopes {
                let cycle: Vec<String> = n.cycle.iter().map(usize::to_string).collect();
                writeln!(s, "  cycle ({}): slope {} × {}", cycle.join(" "), n.slope, n.multiplicity).unwrap();
            }
            writeln!(s, "stabilization = {stabilization}").unwrap();
            writeln!(
                s,
                "cross-check (minimal ⟺ stabilization ≤ 1): {}",
                if cross_check { "ok" } else { "FAILED" }
            )
            .unwrap();
            s
        }
    };
    Ok(Outcome {
        output,
        violation: !cross_check,
    })
}
