//! Exact residues of rationals modulo 1.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of Q/Z, stored as the reduced fraction `num/den` with
/// `0 <= num < den`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: BigInt,
    den: BigInt,
}

impl QmodZ {
    pub fn zero() -> Self {
        QmodZ {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    /// Residue of `num/den` mod 1. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let mut num = num.into();
        let mut den = den.into();
        assert!(!den.is_zero(), "QmodZ with zero denominator");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        num = num.mod_floor(&den);
        let g = num.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num /= &g;
            den /= &g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        QmodZ { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `k * self` reduced mod 1.
    pub fn int_scale(&self, k: impl Into<BigInt>) -> Self {
        QmodZ::new(k.into() * &self.num, self.den.clone())
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        QmodZ::zero()
    }
}

impl Add for &QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        if self.den == rhs.den {
            return QmodZ::new(&self.num + &rhs.num, self.den.clone());
        }
        QmodZ::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        &self + &rhs
    }
}

impl AddAssign<&QmodZ> for QmodZ {
    fn add_assign(&mut self, rhs: &QmodZ) {
        *self = &*self + rhs;
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-&self.num, self.den.clone())
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        -&self
    }
}

impl Sub for &QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        self + &(-rhs)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        &self - &rhs
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QmodZ({}/{})", self.num, self.den)
    }
}

/// Parses `a/b` or a bare integer; the result is reduced mod 1.
impl FromStr for QmodZ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a fraction: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(QmodZ::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(QmodZ::new(n, 1))
            }
        }
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
