//! Elements of Q/Z.
//!
//! A value `p/q` stands for the root of unity `exp(2πi p/q)`, so products of
//! roots of unity become sums here and inverses become negations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;

/// A reduced fraction in `[0, 1)`: `0 <= num < den`, `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QZ {
    num: i64,
    den: i64,
}

impl QZ {
    pub const ZERO: QZ = QZ { num: 0, den: 1 };
    pub const HALF: QZ = QZ { num: 1, den: 2 };

    /// Builds `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> QZ {
        assert!(den != 0, "zero denominator");
        Self::reduce(num as i128, den as i128)
    }

    fn reduce(num: i128, den: i128) -> QZ {
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        num /= g;
        den /= g;
        QZ {
            num: num as i64,
            den: den as i64,
        }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn scale(self, k: i64) -> QZ {
        Self::reduce(self.num as i128 * k as i128, self.den as i128)
    }

    /// Representative of `self` in `(1/modulus) Z / Z`, as an integer in
    /// `[0, modulus)`. `None` if the denominator does not divide `modulus`.
    pub fn to_residue(self, modulus: u64) -> Option<u64> {
        let m = modulus as i64;
        if m % self.den != 0 {
            return None;
        }
        Some((self.num * (m / self.den)) as u64)
    }

    pub fn from_residue(r: u64, modulus: u64) -> QZ {
        Self::reduce(r as i128, modulus as i128)
    }

    /// Readable label for the root of unity, e.g. `1`, `-1`, `i`, `exp(2πi·1/3)`.
    pub fn root_of_unity_label(self) -> String {
        match (self.num, self.den) {
            (0, 1) => "1".into(),
            (1, 2) => "-1".into(),
            (1, 4) => "i".into(),
            (3, 4) => "-i".into(),
            (p, q) => format!("exp(2πi·{p}/{q})"),
        }
    }
}

impl Default for QZ {
    fn default() -> Self {
        QZ::ZERO
    }
}

impl Add for QZ {
    type Output = QZ;
    fn add(self, rhs: QZ) -> QZ {
        let den = (self.den as i128).lcm(&(rhs.den as i128));
        let num = self.num as i128 * (den / self.den as i128) + rhs.num as i128 * (den / rhs.den as i128);
        Self::reduce(num, den)
    }
}

impl Neg for QZ {
    type Output = QZ;
    fn neg(self) -> QZ {
        Self::reduce(-(self.num as i128), self.den as i128)
    }
}

impl Sub for QZ {
    type Output = QZ;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: QZ) -> QZ {
        self + (-rhs)
    }
}

impl AddAssign for QZ {
    fn add_assign(&mut self, rhs: QZ) {
        *self = *self + rhs;
    }
}

impl SubAssign for QZ {
    fn sub_assign(&mut self, rhs: QZ) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for QZ {
    fn sum<I: Iterator<Item = QZ>>(iter: I) -> QZ {
        iter.fold(QZ::ZERO, |a, b| a + b)
    }
}

/// Ordered by the rational value in `[0, 1)`.
impl Ord for QZ {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for QZ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Accepts `"p/q"` or an integer `"p"` (which is `0` in Q/Z).
/// Anything that is not a rational number is rejected: only torsion values
/// of the multiplicative group can be represented.
impl FromStr for QZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<QZ, Error> {
        let bad = || Error::Parse(format!("not a rational value in Q/Z: {s:?}"));
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: i64 = p.parse().map_err(|_| bad())?;
        let q: i64 = q.parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        Ok(QZ::new(p, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(QZ::new(3, 4) + QZ::new(1, 2), QZ::new(1, 4));
        assert_eq!(QZ::new(-1, 2), QZ::HALF);
        assert_eq!(QZ::new(5, -10), QZ::HALF);
        assert_eq!(QZ::new(7, 7), QZ::ZERO);
        assert_eq!(QZ::ZERO.den(), 1);
        assert_eq!(QZ::new(6, 8).num(), 3);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/2".parse::<QZ>().unwrap(), QZ::HALF);
        assert_eq!(" -1/4 ".parse::<QZ>().unwrap(), QZ::new(3, 4));
        assert_eq!("3".parse::<QZ>().unwrap(), QZ::ZERO);
        assert!("0.5".parse::<QZ>().is_err());
        assert!("pi".parse::<QZ>().is_err());
        assert!("1/0".parse::<QZ>().is_err());
        assert_eq!(QZ::new(3, 4).to_string(), "3/4");
        assert_eq!(QZ::ZERO.to_string(), "0");
    }

    #[test]
    fn residues() {
        assert_eq!(QZ::new(1, 4).to_residue(8), Some(2));
        assert_eq!(QZ::new(1, 3).to_residue(8), None);
        assert_eq!(QZ::from_residue(6, 8), QZ::new(3, 4));
        assert_eq!(QZ::HALF.root_of_unity_label(), "-1");
        assert_eq!(QZ::new(1, 4).root_of_unity_label(), "i");
    }

    fn qz() -> impl Strategy<Value = QZ> {
        (-50i64..50, 1i64..24).prop_map(|(p, q)| QZ::new(p, q))
    }

    proptest! {
        #[test]
        fn group_laws(a in qz(), b in qz(), c in qz()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a + (-a), QZ::ZERO);
            prop_assert_eq!(a - b + b, a);
            prop_assert!(a.num() >= 0 && a.num() < a.den());
            prop_assert_eq!(a.num().gcd(&a.den()), 1);
        }

        #[test]
        fn scaling_is_repeated_addition(a in qz(), k in 0i64..12) {
            let sum: QZ = std::iter::repeat_n(a, k as usize).sum();
            prop_assert_eq!(a.scale(k), sum);
        }
    }
}
