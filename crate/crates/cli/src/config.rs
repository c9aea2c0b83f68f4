use std::ops::RangeInclusive;

use wps_core::enumeration::DEFAULT_CAP;
use wps_core::{CurveKind, CurveModel, Error, Field, Result, WeightVector};

/// Environment variable overriding the default enumeration cap.
pub const CAP_ENV: &str = "WPS_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Validated inputs shared by the counting commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub field: Field,
    pub curve: CurveModel,
    pub weights: WeightVector,
    pub d: RangeInclusive<u64>,
    pub format: Format,
    pub cap: u128,
}

impl RunConfig {
    pub fn require_genus0(&self, command: &str) -> Result<()> {
        if *self.curve.kind() != CurveKind::Genus0 {
            return Err(Error::BadSpec(format!("`{command}` enumerates points and needs --curve genus0")));
        }
        Ok(())
    }
}

pub fn parse_field(q: &str, modulus: Option<&str>) -> Result<Field> {
    match modulus {
        Some(m) => Field::parse_spec(&format!("{q}:modulus={m}")),
        None => Field::parse_spec(q),
    }
}

/// "3" or an inclusive range "0..2".
pub fn parse_d_range(s: &str) -> Result<RangeInclusive<u64>> {
    let bad = || Error::BadSpec(format!("bad degree range {s:?}; expected N or A..B"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let d = num(s)?;
            Ok(d..=d)
        }
    }
}

/// Flag first, then the environment, then the built-in default.
pub fn resolve_cap(flag: Option<u128>) -> Result<u128> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| Error::BadSpec(format!("{CAP_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}
