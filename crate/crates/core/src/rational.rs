//! Exact scores in units of 1/12.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

/// A rational number with denominator dividing 12, stored as its numerator
/// over 12.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational12(pub i64);

impl Rational12 {
    pub const ZERO: Rational12 = Rational12(0);
    pub const ONE: Rational12 = Rational12(12);

    pub const fn int(v: i64) -> Self {
        Rational12(12 * v)
    }

    /// `num / den`; panics when `den` does not divide 12.
    pub const fn frac(num: i64, den: i64) -> Self {
        assert!(den > 0 && 12 % den == 0, "denominator must divide 12");
        Rational12(num * (12 / den))
    }

    pub const fn numerator12(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 12 == 0
    }

    /// Reduced `(numerator, denominator)`.
    pub fn reduced(self) -> (i64, i64) {
        let g = gcd(self.0.unsigned_abs(), 12) as i64;
        (self.0 / g, 12 / g)
    }

    /// Halves the value; panics when the result leaves the 1/12 grid.
    pub fn half(self) -> Self {
        assert!(self.0 % 2 == 0, "half of {self} is not a multiple of 1/12");
        Rational12(self.0 / 2)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for Rational12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.reduced();
        if q == 1 {
            write!(f, "{p}")
        } else {
            write!(f, "{p}/{q}")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot read {0:?} as a multiple of 1/12")]
pub struct ParseRationalError(String);

impl FromStr for Rational12 {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| err())?;
        let q: i64 = q.parse().map_err(|_| err())?;
        if q <= 0 || (12 * p) % q != 0 {
            return Err(err());
        }
        Ok(Rational12(12 * p / q))
    }
}

impl Serialize for Rational12 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational12 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rational12 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Rational12(self.0 + o.0)
    }
}

impl Sub for Rational12 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Rational12(self.0 - o.0)
    }
}

impl Neg for Rational12 {
    type Output = Self;
    fn neg(self) -> Self {
        Rational12(-self.0)
    }
}

impl Mul<i64> for Rational12 {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Rational12(self.0 * k)
    }
}

impl Mul<Rational12> for i64 {
    type Output = Rational12;
    fn mul(self, r: Rational12) -> Rational12 {
        Rational12(self * r.0)
    }
}

impl AddAssign for Rational12 {
    fn add_assign(&mut self, o: Self) {
        self.0 += o.0;
    }
}

impl SubAssign for Rational12 {
    fn sub_assign(&mut self, o: Self) {
        self.0 -= o.0;
    }
}

impl Sum for Rational12 {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        Rational12(iter.map(|r| r.0).sum())
    }
}

impl From<i64> for Rational12 {
    fn from(v: i64) -> Self {
        Rational12::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_with_small_denominators() {
        assert_eq!(Rational12::frac(2, 3), Rational12(8));
        assert_eq!(Rational12::frac(1, 4), Rational12(3));
        assert_eq!(Rational12::frac(-3, 2), Rational12(-18));
        assert_eq!(Rational12::frac(2, 3) * 3, Rational12::int(2));
        assert_eq!(Rational12::frac(1, 4) * 4, Rational12::ONE);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for (s, v) in [("9/2", 54), ("-1/2", -6), ("0", 0), ("2/3", 8), ("-7", -84)] {
            assert_eq!(Rational12(v).to_string(), s);
            assert_eq!(s.parse::<Rational12>().unwrap(), Rational12(v));
        }
        assert!("1/5".parse::<Rational12>().is_err());
        assert_eq!("6/4".parse::<Rational12>().unwrap(), Rational12::frac(3, 2));
    }

    #[test]
    #[should_panic(expected = "denominator must divide 12")]
    fn rejects_fifths() {
        let _ = Rational12::frac(1, 5);
    }
}
