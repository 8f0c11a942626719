//! Reachability analytics built on fastest-duration queries: eccentricity,
//! coverage within a duration budget, and the duration needed to cover a
//! percentage of the vertices. The source counts as covered at duration 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::esdg::Esdg;
use crate::fpd::{fastest_duration, FpdOptions};
use crate::graph::VertexId;
use crate::time::{to_option, Timestamp};

/// A percentage in `(0, 100]`, kept as an exact decimal fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Percent {
    numerator: u64,
    scale: u64,
}

impl Percent {
    pub fn new(whole: u64) -> Result<Self> {
        Self::from_fraction(whole, 1)
    }

    fn from_fraction(numerator: u64, scale: u64) -> Result<Self> {
        if numerator == 0 || numerator > 100 * scale {
            return Err(Error::InvalidArgument(
                "percentage must be in (0, 100]".into(),
            ));
        }
        Ok(Percent { numerator, scale })
    }

    /// `⌈p·n/100⌉`: how many vertices must be covered out of `n`.
    pub fn required_count(&self, n: usize) -> usize {
        let num = self.numerator as u128 * n as u128;
        num.div_ceil(100 * self.scale as u128) as usize
    }
}

impl FromStr for Percent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid percentage {s:?}"));
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
        if int.is_empty() || !digits(int) || !digits(frac) || frac.len() > 6 || s.ends_with('.') {
            return Err(bad());
        }
        let scale = 10u64.pow(frac.len() as u32);
        let int: u64 = int.parse().map_err(|_| bad())?;
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let numerator = int
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(bad)?;
        Self::from_fraction(numerator, scale)
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.scale.ilog10() as usize;
        if digits == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(
                f,
                "{}.{:0digits$}",
                self.numerator / self.scale,
                self.numerator % self.scale
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport<T> {
    pub source: VertexId,
    pub eccentricity: Option<T>,
    pub k: Option<T>,
    pub coverage_count: Option<usize>,
    pub percent: Option<Percent>,
    pub coverage_time: Option<T>,
}

fn journeys<T: Timestamp>(esdg: &Esdg<T>, source: VertexId) -> Result<Vec<T>> {
    Ok(fastest_duration(esdg, source, FpdOptions::default())?.journey)
}

fn eccentricity_of<T: Timestamp>(journey: &[T]) -> Option<T> {
    journey
        .iter()
        .try_fold(T::zero(), |acc, &j| to_option(j).map(|j| acc.max(j)))
}

fn coverage_time_of<T: Timestamp>(journey: &[T], p: Percent) -> Option<T> {
    let need = p.required_count(journey.len());
    let mut finite: Vec<T> = journey
        .iter()
        .copied()
        .filter(|j| j.is_reachable())
        .collect();
    if need == 0 {
        return Some(T::zero());
    }
    if finite.len() < need {
        return None;
    }
    finite.sort_unstable();
    Some(finite[need - 1])
}

/// Longest fastest journey from `source`, or `None` if some vertex is unreachable.
pub fn eccentricity<T: Timestamp>(esdg: &Esdg<T>, source: VertexId) -> Result<Option<T>> {
    Ok(eccentricity_of(&journeys(esdg, source)?))
}

/// Number of vertices (source included) whose fastest journey is at most `k`.
///
/// Runs the fastest-duration search with `k` as horizon, which stops expanding
/// nodes once their journey exceeds `k`.
pub fn coverage_count<T: Timestamp>(esdg: &Esdg<T>, source: VertexId, k: T) -> Result<usize> {
    let opts = FpdOptions {
        horizon: Some(k),
        ..FpdOptions::default()
    };
    let r = fastest_duration(esdg, source, opts)?;
    Ok(r.journey.iter().filter(|&&j| j <= k).count())
}

/// Same count as [`coverage_count`], from a full unbounded search.
pub fn coverage_count_unbounded<T: Timestamp>(
    esdg: &Esdg<T>,
    source: VertexId,
    k: T,
) -> Result<usize> {
    Ok(journeys(esdg, source)?.iter().filter(|&&j| j <= k).count())
}

/// Smallest duration within which `p` percent of the vertices are covered.
pub fn coverage_time<T: Timestamp>(
    esdg: &Esdg<T>,
    source: VertexId,
    p: Percent,
) -> Result<Option<T>> {
    Ok(coverage_time_of(&journeys(esdg, source)?, p))
}

/// Eccentricity plus whichever of the count and time queries were asked for,
/// from a single fastest-duration search.
pub fn coverage_report<T: Timestamp>(
    esdg: &Esdg<T>,
    source: VertexId,
    k: Option<T>,
    percent: Option<Percent>,
) -> Result<CoverageReport<T>> {
    let journey = journeys(esdg, source)?;
    Ok(CoverageReport {
        source,
        eccentricity: eccentricity_of(&journey),
        k,
        coverage_count: k.map(|k| journey.iter().filter(|&&j| j <= k).count()),
        percent,
        coverage_time: percent.and_then(|p| coverage_time_of(&journey, p)),
    })
}
