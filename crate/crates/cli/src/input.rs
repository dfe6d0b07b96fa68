//! Parsing of command-line values and the guard rails every job passes.

use fcrystal_core::{CircularSeq, FCyclicCrystal, Permutation};

use crate::error::CliError;
use crate::report::Format;

/// Resource guard rails. Every limit can be raised from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_r: usize,
    pub max_m: usize,
    /// Oracle digraph vertices per job (`r² · m`), and the cap on the total
    /// `±1` expansion length used for the stabilization level.
    pub vertex_budget: u64,
    /// Crystals enumerated by one scan or exhaustive verification.
    pub max_records: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_r: 8,
            max_m: 16,
            vertex_budget: 10_000_000,
            max_records: 2_000_000,
        }
    }
}

impl Limits {
    pub fn check_r(&self, r: usize) -> Result<(), CliError> {
        if r == 0 {
            return Err(CliError::invalid("rank r must be at least 1"));
        }
        limit("r", r as u64, self.max_r as u64, "--max-r")
    }

    pub fn check_m(&self, m: usize) -> Result<(), CliError> {
        if m == 0 {
            return Err(CliError::invalid("level m must be at least 1"));
        }
        limit("m", m as u64, self.max_m as u64, "--max-m")
    }

    pub fn check_vertices(&self, vertices: u64) -> Result<(), CliError> {
        limit("oracle vertices", vertices, self.vertex_budget, "--vertex-budget")
    }

    pub fn check_expansion(&self, length: u64) -> Result<(), CliError> {
        limit("expansion length", length, self.vertex_budget, "--vertex-budget")
    }

    pub fn check_records(&self, records: u64) -> Result<(), CliError> {
        limit("records", records, self.max_records, "--max-records")
    }
}

fn limit(what: &'static str, value: u64, limit: u64, flag: &'static str) -> Result<(), CliError> {
    if value > limit {
        return Err(CliError::Resource {
            what,
            value,
            limit,
            flag,
        });
    }
    Ok(())
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

/// Comma- or whitespace-separated nonnegative slopes.
pub fn parse_slopes(text: &str) -> Result<Vec<u32>, CliError> {
    split_list(text)
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| CliError::invalid(format!("bad Hodge slope {t:?}")))
        })
        .collect()
}

/// A raw circular sequence, e.g. `"3,0,-1,-2"`.
pub fn parse_seq(text: &str) -> Result<CircularSeq, CliError> {
    let entries = split_list(text)
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CliError::invalid(format!("bad sequence entry {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CircularSeq::new(entries)?)
}

/// Crystal as typed on the command line.
#[derive(Clone, Debug, Default)]
pub struct CrystalInput {
    pub r: Option<usize>,
    pub perm: Option<String>,
    pub slopes: Option<String>,
}

impl CrystalInput {
    pub fn is_empty(&self) -> bool {
        self.r.is_none() && self.perm.is_none() && self.slopes.is_none()
    }

    /// Builds the crystal. `r` defaults to the number of slopes; a missing
    /// permutation is an error.
    pub fn build(&self, limits: &Limits) -> Result<FCyclicCrystal, CliError> {
        let slopes = match &self.slopes {
            Some(s) => parse_slopes(s)?,
            None => return Err(CliError::invalid("--slopes is required")),
        };
        let r = self.r.unwrap_or(slopes.len());
        limits.check_r(r)?;
        let perm = self
            .perm
            .as_deref()
            .ok_or_else(|| CliError::invalid("--perm is required"))?;
        let pi = Permutation::parse(perm, r)?;
        let crystal = FCyclicCrystal::new(pi, slopes)?;
        limits.check_expansion(crystal.expansion_length())?;
        Ok(crystal)
    }
}

/// `--m` / `--m-max` as given.
#[derive(Clone, Copy, Debug, Default)]
pub struct Levels {
    pub m: Option<usize>,
    pub m_max: Option<usize>,
}

impl Levels {
    /// The range of levels a command reports on. `--m` alone selects a single
    /// level, `--m-max` the range `1..=m_max`.
    pub fn range(&self, limits: &Limits) -> Result<(usize, usize), CliError> {
        let (lo, hi) = match (self.m, self.m_max) {
            (Some(_), Some(_)) => return Err(CliError::invalid("give --m or --m-max, not both")),
            (Some(m), None) => (m, m),
            (None, Some(hi)) => (1, hi),
            (None, None) => return Err(CliError::invalid("--m or --m-max is required")),
        };
        limits.check_m(hi)?;
        if lo == 0 {
            return Err(CliError::invalid("level m must be at least 1"));
        }
        Ok((lo, hi))
    }
}

/// A validated single-crystal job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub crystal: FCyclicCrystal,
    pub m_lo: usize,
    pub m_hi: usize,
    pub format: Format,
    pub prime: Option<u64>,
    pub limits: Limits,
}

impl JobSpec {
    pub fn new(
        input: &CrystalInput,
        levels: Levels,
        format: Format,
        prime: Option<u64>,
        limits: Limits,
    ) -> Result<Self, CliError> {
        let crystal = input.build(&limits)?;
        let (m_lo, m_hi) = levels.range(&limits)?;
        if let Some(p) = prime {
            if !is_prime(p) {
                return Err(CliError::invalid(format!("{p} is not a prime")));
            }
        }
        Ok(JobSpec {
            crystal,
            m_lo,
            m_hi,
            format,
            prime,
            limits,
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes_accept_commas_and_spaces() {
        assert_eq!(parse_slopes("0,1, 2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_slopes("0 4").unwrap(), vec![0, 4]);
        assert!(parse_slopes("0,-1").is_err());
    }

    #[test]
    fn seq_accepts_negative_entries() {
        assert_eq!(parse_seq("3,0,-1,-2").unwrap().entries(), &[3, 0, -1, -2]);
        assert!(parse_seq("").is_err());
        assert!(parse_seq("1,x").is_err());
    }

    #[test]
    fn guard_rails() {
        let limits = Limits::default();
        assert!(limits.check_r(8).is_ok());
        assert_eq!(limits.check_r(9).unwrap_err().exit_code(), crate::EXIT_RESOURCE);
        assert_eq!(limits.check_m(0).unwrap_err().exit_code(), crate::EXIT_INVALID);
        assert_eq!(limits.check_m(17).unwrap_err().exit_code(), crate::EXIT_RESOURCE);
    }

    #[test]
    fn levels() {
        let l = Limits::default();
        let lv = |m, m_max| Levels { m, m_max }.range(&l);
        assert_eq!(lv(Some(3), None).unwrap(), (3, 3));
        assert_eq!(lv(None, Some(6)).unwrap(), (1, 6));
        assert!(lv(Some(1), Some(2)).is_err());
        assert!(lv(None, None).is_err());
    }

    #[test]
    fn primes() {
        let got: Vec<u64> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(got, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
