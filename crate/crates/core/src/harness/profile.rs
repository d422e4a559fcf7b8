use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Corpus sizes and seeds for a verification run, read from `key = value`
/// lines. Blank lines and `#` comments are ignored.
///
/// ```
/// use spectralcut::harness::Profile;
///
/// let p: Profile = "nmax_exhaustive = 7\nsamples_per_cell = 20 # small\n".parse().unwrap();
/// assert_eq!((p.nmax_exhaustive, p.samples_per_cell), (7, 20));
/// assert_eq!(p.seed, Profile::default().seed);
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    /// Largest order for exhaustive enumeration (at most 10).
    pub nmax_exhaustive: usize,
    /// Random graphs per `(n, d)` cell.
    pub samples_per_cell: usize,
    pub seed: u64,
    /// Largest degree for the extremal family.
    pub dmax_extremal: usize,
    pub nmax_random: usize,
    pub dmin_random: usize,
    pub dmax_random: usize,
}

impl Default for Profile {
    fn default() -> Profile {
        Profile {
            nmax_exhaustive: 10,
            samples_per_cell: 10_000,
            seed: 1,
            dmax_extremal: 12,
            nmax_random: 60,
            dmin_random: 3,
            dmax_random: 8,
        }
    }
}

impl Profile {
    /// A profile that finishes in a few seconds.
    pub fn smoke() -> Profile {
        Profile {
            nmax_exhaustive: 7,
            samples_per_cell: 3,
            nmax_random: 16,
            dmax_extremal: 8,
            ..Profile::default()
        }
    }

    fn validate(self) -> Result<Profile> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.nmax_exhaustive > super::MAX_ENUMERATION_ORDER {
            return bad(format!("nmax_exhaustive must be at most {}", super::MAX_ENUMERATION_ORDER));
        }
        if self.dmin_random > self.dmax_random {
            return bad("dmin_random exceeds dmax_random".into());
        }
        if self.dmin_random < 1 {
            return bad("dmin_random must be at least 1".into());
        }
        Ok(self)
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Profile> {
        let mut p = Profile::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: idx + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| parse_err(format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let number: u64 = value
                .parse()
                .map_err(|_| parse_err(format!("{key}: {value:?} is not a non-negative integer")))?;
            let size = || {
                usize::try_from(number).map_err(|_| parse_err(format!("{key}: {number} is too large")))
            };
            match key {
                "nmax_exhaustive" => p.nmax_exhaustive = size()?,
                "samples_per_cell" => p.samples_per_cell = size()?,
                "seed" => p.seed = number,
                "dmax_extremal" => p.dmax_extremal = size()?,
                "nmax_random" => p.nmax_random = size()?,
                "dmin_random" => p.dmin_random = size()?,
                "dmax_random" => p.dmax_random = size()?,
                _ => return Err(parse_err(format!("unknown key {key:?}"))),
            }
        }
        p.validate()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nmax_exhaustive = {}", self.nmax_exhaustive)?;
        writeln!(f, "samples_per_cell = {}", self.samples_per_cell)?;
        writeln!(f, "seed = {}", self.seed)?;
        writeln!(f, "dmax_extremal = {}", self.dmax_extremal)?;
        writeln!(f, "nmax_random = {}", self.nmax_random)?;
        writeln!(f, "dmin_random = {}", self.dmin_random)?;
        writeln!(f, "dmax_random = {}", self.dmax_random)
    }
}
