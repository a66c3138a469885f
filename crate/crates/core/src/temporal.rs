//! Calendar arithmetic for series periods: gaps between members, the
//! tolerance band of an estimated period, and the next scheduled date.

use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, Days, Months, NaiveDate};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemporalError {
    #[error("invalid date '{0}' (expected YYYY-MM-DD)")]
    InvalidDate(String),
    #[error("fewer than two anchored members; the measured period is undefined")]
    FewerThanTwoAnchors,
    #[error("no anchored member to schedule from")]
    NoAnchor,
    #[error("series has no estimated time period")]
    NoEstimatedPeriod,
    #[error("a zero-length period never advances")]
    ZeroPeriod,
    #[error("date arithmetic overflowed")]
    Overflow,
}

/// A proleptic Gregorian calendar date.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Instant(NaiveDate);

impl Instant {
    pub fn from_ymd(year: i32, month: u32, day: u32) -> Option<Self> {
        NaiveDate::from_ymd_opt(year, month, day).map(Instant)
    }

    pub fn year(&self) -> i32 {
        self.0.year()
    }

    pub fn month(&self) -> u32 {
        self.0.month()
    }

    pub fn day(&self) -> u32 {
        self.0.day()
    }

    /// Adds `n` copies of `period`. Months and years clamp the day of month
    /// (2020-02-29 + 1 year = 2021-02-28).
    pub fn add_period(self, period: TimePeriod, n: u32) -> Result<Instant, TemporalError> {
        let count = u64::from(period.value) * u64::from(n);
        let date = match period.unit {
            TimeUnit::Day => self.0.checked_add_days(Days::new(count)),
            TimeUnit::Week => count.checked_mul(7).and_then(|d| self.0.checked_add_days(Days::new(d))),
            TimeUnit::Month => u32::try_from(count)
                .ok()
                .and_then(|m| self.0.checked_add_months(Months::new(m))),
            TimeUnit::Year => u32::try_from(count)
                .ok()
                .and_then(|y| y.checked_mul(12))
                .and_then(|m| self.0.checked_add_months(Months::new(m))),
        };
        date.map(Instant).ok_or(TemporalError::Overflow)
    }
}

impl FromStr for Instant {
    type Err = TemporalError;

    /// `YYYY-MM-DD`, as in the lexical form of `xsd:date` without a zone.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let shaped = bytes.len() == 10
            && bytes[4] == b'-'
            && bytes[7] == b'-'
            && bytes
                .iter()
                .enumerate()
                .all(|(i, b)| i == 4 || i == 7 || b.is_ascii_digit());
        if !shaped {
            return Err(TemporalError::InvalidDate(s.to_string()));
        }
        NaiveDate::parse_from_str(s, "%Y-%m-%d")
            .map(Instant)
            .map_err(|_| TemporalError::InvalidDate(s.to_string()))
    }
}

impl fmt::Display for Instant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format("%Y-%m-%d"))
    }
}

impl Serialize for Instant {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Signed number of days from `a` to `b`.
pub fn days_between(a: Instant, b: Instant) -> i64 {
    (b.0 - a.0).num_days()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeUnit {
    Day,
    Week,
    Month,
    Year,
}

impl TimeUnit {
    /// Mean length in days.
    pub fn days(self) -> f64 {
        match self {
            TimeUnit::Day => 1.0,
            TimeUnit::Week => 7.0,
            TimeUnit::Month => 30.44,
            TimeUnit::Year => 365.25,
        }
    }

    pub fn finer(self) -> Option<TimeUnit> {
        match self {
            TimeUnit::Day => None,
            TimeUnit::Week => Some(TimeUnit::Day),
            TimeUnit::Month => Some(TimeUnit::Week),
            TimeUnit::Year => Some(TimeUnit::Month),
        }
    }

    /// Recognizes a unit from the local name of its IRI (`ex:year`,
    /// `ex:Months`, `.../unit#day`), case-insensitively.
    pub fn from_iri(iri: &str) -> Option<TimeUnit> {
        let local = iri.rsplit(['#', '/', ':']).next().unwrap_or(iri).to_ascii_lowercase();
        let local = local.strip_suffix('s').unwrap_or(&local);
        match local {
            "day" => Some(TimeUnit::Day),
            "week" => Some(TimeUnit::Week),
            "month" => Some(TimeUnit::Month),
            "year" => Some(TimeUnit::Year),
            _ => None,
        }
    }
}

impl fmt::Display for TimeUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeUnit::Day => "day",
            TimeUnit::Week => "week",
            TimeUnit::Month => "month",
            TimeUnit::Year => "year",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TimePeriod {
    pub value: u32,
    pub unit: TimeUnit,
}

impl TimePeriod {
    pub fn new(value: u32, unit: TimeUnit) -> Self {
        TimePeriod { value, unit }
    }

    pub fn in_days(&self) -> f64 {
        f64::from(self.value) * self.unit.days()
    }
}

impl fmt::Display for TimePeriod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)?;
        if self.value != 1 {
            f.write_str("s")?;
        }
        Ok(())
    }
}

/// How wide the accepted band around an estimated period is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BandMode {
    /// One next-finer unit either side ("yearly" = 11 to 13 months).
    #[default]
    Approximate,
    /// The estimated length only.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodBand {
    pub low_days: i64,
    pub high_days: i64,
}

impl PeriodBand {
    pub fn contains(&self, days: i64) -> bool {
        self.low_days <= days && days <= self.high_days
    }
}

fn round_half_up(x: f64) -> i64 {
    (x + 0.5).floor() as i64
}

/// Days accepted as matching `estimated`.
///
/// The band for one unit is the unit's mean length plus or minus one
/// next-finer unit, each end rounded half-up; a value of `k` scales both
/// ends by `k`. One year gives 335..=396 days.
pub fn period_band(estimated: TimePeriod, mode: BandMode) -> PeriodBand {
    let unit_days = estimated.unit.days();
    let slack = match mode {
        BandMode::Approximate => estimated.unit.finer().map_or(0.0, TimeUnit::days),
        BandMode::Strict => 0.0,
    };
    let k = i64::from(estimated.value);
    PeriodBand {
        low_days: k * round_half_up(unit_days - slack),
        high_days: k * round_half_up(unit_days + slack),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodAssessment {
    /// Mean gap between consecutive anchors, rounded half-up.
    pub measured_days: i64,
    pub measured: TimePeriod,
    pub band: Option<PeriodBand>,
    pub within_band: Option<bool>,
}

/// The unit a measured period is reported in: one step finer than the
/// estimated unit, or days when nothing is estimated.
fn reporting_unit(estimated: Option<TimePeriod>) -> TimeUnit {
    estimated
        .map(|p| p.unit.finer().unwrap_or(TimeUnit::Day))
        .unwrap_or(TimeUnit::Day)
}

/// Averages the gaps between consecutive anchors (taken in date order) and
/// compares the result with the band of `estimated`, if any.
pub fn measure_period(
    anchors: &[Instant],
    estimated: Option<TimePeriod>,
    mode: BandMode,
) -> Result<PeriodAssessment, TemporalError> {
    if anchors.len() < 2 {
        return Err(TemporalError::FewerThanTwoAnchors);
    }
    let mut sorted = anchors.to_vec();
    sorted.sort();
    let total: i64 = sorted.windows(2).map(|w| days_between(w[0], w[1])).sum();
    let gaps = (sorted.len() - 1) as f64;
    let measured_days = round_half_up(total as f64 / gaps);
    let unit = reporting_unit(estimated);
    let value = round_half_up(measured_days as f64 / unit.days()).max(0);
    let measured = TimePeriod::new(u32::try_from(value).map_err(|_| TemporalError::Overflow)?, unit);
    let band = estimated.filter(|p| p.value >= 1).map(|p| period_band(p, mode));
    Ok(PeriodAssessment {
        measured_days,
        measured,
        band,
        within_band: band.map(|b| b.contains(measured_days)),
    })
}

/// First date `last + k * period` (k >= 1) that is not before `today`.
///
/// Multiples are taken from `last` itself, so clamped month ends do not
/// drift across repeated additions.
pub fn next_after(last: Instant, period: TimePeriod, today: Instant) -> Result<Instant, TemporalError> {
    if period.value == 0 {
        return Err(TemporalError::ZeroPeriod);
    }
    let first = last.add_period(period, 1)?;
    if first >= today {
        return Ok(first);
    }
    // jump close to `today` and walk forward from there
    let max_unit_days: i64 = match period.unit {
        TimeUnit::Day => 1,
        TimeUnit::Week => 7,
        TimeUnit::Month => 31,
        TimeUnit::Year => 366,
    };
    let span = days_between(last, today);
    let mut k = u32::try_from((span / (max_unit_days * i64::from(period.value))).max(1))
        .map_err(|_| TemporalError::Overflow)?;
    loop {
        let candidate = last.add_period(period, k)?;
        if candidate >= today {
            return Ok(candidate);
        }
        k = k.checked_add(1).ok_or(TemporalError::Overflow)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Instant {
        s.parse().unwrap()
    }

    /// Day-by-day calendar walk, independent of chrono.
    fn enumerate_days(a: (i32, u32, u32), b: (i32, u32, u32)) -> i64 {
        fn leap(y: i32) -> bool {
            (y % 4 == 0 && y % 100 != 0) || y % 400 == 0
        }
        fn month_len(y: i32, m: u32) -> u32 {
            match m {
                1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
                4 | 6 | 9 | 11 => 30,
                _ if leap(y) => 29,
                _ => 28,
            }
        }
        let (mut cur, end, sign) = if a <= b { (a, b, 1) } else { (b, a, -1) };
        let mut n = 0;
        while cur != end {
            let (y, m, dd) = cur;
            cur = if dd < month_len(y, m) {
                (y, m, dd + 1)
            } else if m < 12 {
                (y, m + 1, 1)
            } else {
                (y + 1, 1, 1)
            };
            n += 1;
        }
        sign * n
    }

    #[test]
    fn days_between_examples() {
        assert_eq!(days_between(d("2019-07-02"), d("2019-07-02")), 0);
        assert_eq!(days_between(d("2019-01-01"), d("2020-01-01")), 365);
        let oracle = enumerate_days((2009, 10, 25), (2010, 11, 8));
        assert_eq!(oracle, 379);
        assert_eq!(days_between(d("2009-10-25"), d("2010-11-08")), oracle);
    }

    #[test]
    fn parse_rejects_malformed_dates() {
        for bad in ["2019-13-01", "2019-02-30", "19-01-01", "2019/01/01", "2019-01-01Z", ""] {
            assert!(bad.parse::<Instant>().is_err(), "{bad}");
        }
        assert_eq!(d("2020-02-29").to_string(), "2020-02-29");
    }

    #[test]
    fn band_examples() {
        let year = period_band(TimePeriod::new(1, TimeUnit::Year), BandMode::Approximate);
        assert_eq!((year.low_days, year.high_days), (335, 396));
        let day = period_band(TimePeriod::new(1, TimeUnit::Day), BandMode::Approximate);
        assert_eq!((day.low_days, day.high_days), (1, 1));
        let two = period_band(TimePeriod::new(2, TimeUnit::Year), BandMode::Approximate);
        assert_eq!((two.low_days, two.high_days), (670, 792));
        let strict = period_band(TimePeriod::new(1, TimeUnit::Year), BandMode::Strict);
        assert_eq!((strict.low_days, strict.high_days), (365, 365));
    }

    #[test]
    fn yearly_band_is_eleven_to_thirteen_months() {
        let b = period_band(TimePeriod::new(1, TimeUnit::Year), BandMode::Approximate);
        assert!((b.low_days as f64 - 11.0 * 30.44).abs() <= 1.0);
        assert!((b.high_days as f64 - 13.0 * 30.44).abs() <= 1.0);
    }

    #[test]
    fn wop_measured_period() {
        let anchors = [d("2009-10-25"), d("2010-11-08"), d("2012-11-12")];
        let gaps: Vec<i64> = vec![
            enumerate_days((2009, 10, 25), (2010, 11, 8)),
            enumerate_days((2010, 11, 8), (2012, 11, 12)),
        ];
        assert_eq!(gaps, vec![379, 735]);
        let a = measure_period(
            &anchors,
            Some(TimePeriod::new(1, TimeUnit::Year)),
            BandMode::Approximate,
        )
        .unwrap();
        assert_eq!(a.measured_days, 557);
        assert_eq!(a.measured, TimePeriod::new(18, TimeUnit::Month));
        assert_eq!(
            a.band,
            Some(PeriodBand {
                low_days: 335,
                high_days: 396
            })
        );
        assert_eq!(a.within_band, Some(false));
    }

    #[test]
    fn exact_year_is_within_band() {
        let a = measure_period(
            &[d("2018-03-01"), d("2019-03-01")],
            Some(TimePeriod::new(1, TimeUnit::Year)),
            BandMode::Approximate,
        )
        .unwrap();
        assert_eq!(a.measured_days, 365);
        assert_eq!(a.within_band, Some(true));
    }

    #[test]
    fn one_anchor_is_undefined() {
        assert_eq!(
            measure_period(&[d("2018-03-01")], None, BandMode::Approximate),
            Err(TemporalError::FewerThanTwoAnchors)
        );
    }

    #[test]
    fn next_after_examples() {
        let year = TimePeriod::new(1, TimeUnit::Year);
        assert_eq!(
            next_after(d("2012-11-12"), year, d("2013-01-01")).unwrap(),
            d("2013-11-12")
        );
        assert_eq!(
            next_after(d("2020-02-29"), year, d("2020-03-01")).unwrap(),
            d("2021-02-28")
        );
        assert_eq!(
            next_after(d("2012-11-12"), year, d("2020-06-01")).unwrap(),
            d("2020-11-12")
        );
        assert_eq!(
            next_after(d("2020-02-29"), year, d("2024-01-01")).unwrap(),
            d("2024-02-29")
        );
        assert_eq!(
            next_after(d("2020-01-31"), TimePeriod::new(1, TimeUnit::Month), d("2020-02-01")).unwrap(),
            d("2020-02-29")
        );
        assert_eq!(
            next_after(d("2020-01-01"), TimePeriod::new(0, TimeUnit::Day), d("2020-02-01")),
            Err(TemporalError::ZeroPeriod)
        );
    }

    #[test]
    fn unit_from_iri() {
        assert_eq!(TimeUnit::from_iri("http://ex.org/year"), Some(TimeUnit::Year));
        assert_eq!(TimeUnit::from_iri("http://ex.org/u#Months"), Some(TimeUnit::Month));
        assert_eq!(TimeUnit::from_iri("http://ex.org/fortnight"), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn instant() -> impl Strategy<Value = Instant> {
            (1900i32..2100, 1u32..=12, 1u32..=28).prop_map(|(y, m, d)| Instant::from_ymd(y, m, d).unwrap())
        }

        fn period() -> impl Strategy<Value = TimePeriod> {
            (
                1u32..4,
                prop_oneof![
                    Just(TimeUnit::Day),
                    Just(TimeUnit::Week),
                    Just(TimeUnit::Month),
                    Just(TimeUnit::Year)
                ],
            )
                .prop_map(|(v, u)| TimePeriod::new(v, u))
        }

        proptest! {
            #[test]
            fn antisymmetric_and_additive(a in instant(), b in instant(), c in instant()) {
                prop_assert_eq!(days_between(a, b), -days_between(b, a));
                prop_assert_eq!(days_between(a, c), days_between(a, b) + days_between(b, c));
            }

            #[test]
            fn matches_calendar_walk(a in instant(), b in instant()) {
                prop_assume!((a.year() - b.year()).abs() < 30);
                prop_assert_eq!(
                    days_between(a, b),
                    enumerate_days((a.year(), a.month(), a.day()), (b.year(), b.month(), b.day()))
                );
            }

            #[test]
            fn band_scales_linearly(k in 1u32..20, unit in prop_oneof![
                Just(TimeUnit::Day), Just(TimeUnit::Week), Just(TimeUnit::Month), Just(TimeUnit::Year)
            ]) {
                let one = period_band(TimePeriod::new(1, unit), BandMode::Approximate);
                let many = period_band(TimePeriod::new(k, unit), BandMode::Approximate);
                prop_assert!((many.low_days - i64::from(k) * one.low_days).abs() <= 1);
                prop_assert!((many.high_days - i64::from(k) * one.high_days).abs() <= 1);
            }

            #[test]
            fn next_is_never_before_today(last in instant(), today in instant(), p in period()) {
                let next = next_after(last, p, today).unwrap();
                prop_assert!(next >= today);
                prop_assert!(next > last);
            }

            #[test]
            fn measurement_ignores_listing_order(mut v in proptest::collection::vec(instant(), 2..8), seed in any::<u64>()) {
                let est = Some(TimePeriod::new(1, TimeUnit::Year));
                let a = measure_period(&v, est, BandMode::Approximate).unwrap();
                let n = v.len();
                v.rotate_left((seed as usize) % n);
                v.reverse();
                prop_assert_eq!(a, measure_period(&v, est, BandMode::Approximate).unwrap());
            }
        }
    }
}
