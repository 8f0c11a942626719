use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Bounded, NumCast, PrimInt, Unsigned};

/// Largest admissible arrival time unless a graph is built with a custom bound.
pub const DEFAULT_MAX_TIME: u64 = (1 << 31) - 1;

/// Integer time representation used for departures, arrivals and durations.
///
/// The maximum value of the type is reserved as the unreachable sentinel, so
/// every valid time compares strictly below it.
pub trait Timestamp:
    PrimInt + Unsigned + Bounded + NumCast + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    const UNREACHABLE: Self;

    fn from_u64(value: u64) -> Option<Self> {
        <Self as NumCast>::from(value)
    }

    fn as_u64(self) -> u64 {
        self.to_u64().expect("unsigned time fits in u64")
    }

    fn is_reachable(self) -> bool {
        self != Self::UNREACHABLE
    }
}

impl Timestamp for u32 {
    const UNREACHABLE: Self = u32::MAX;
}

impl Timestamp for u64 {
    const UNREACHABLE: Self = u64::MAX;
}

/// Renders a time or duration, using `inf` for the unreachable sentinel.
pub fn format_time<T: Timestamp>(value: T) -> String {
    if value.is_reachable() {
        value.to_string()
    } else {
        "inf".to_string()
    }
}

pub(crate) fn to_option<T: Timestamp>(value: T) -> Option<T> {
    value.is_reachable().then_some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_formats_as_inf() {
        assert_eq!(format_time(u32::UNREACHABLE), "inf");
        assert_eq!(format_time(12u32), "12");
        assert_eq!(format_time(u64::MAX), "inf");
    }

    #[test]
    fn default_max_fits_both_widths() {
        assert!(u32::from_u64(DEFAULT_MAX_TIME).is_some());
        assert!((DEFAULT_MAX_TIME as u32) < u32::UNREACHABLE);
        assert_eq!(u32::from_u64(1 << 40), None);
    }
}
