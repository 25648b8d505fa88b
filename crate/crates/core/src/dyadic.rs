//! Exact dyadic rationals `num / 2^exp`.
//!
//! Every distance, coordinate and carrier point in this crate is a dyadic
//! rational, so all comparisons are decidable and no rounding ever happens.
//! Values are kept in canonical form: either `num` is odd or `exp == 0`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseDyadicError {
    #[error("empty dyadic literal")]
    Empty,
    #[error("invalid numerator `{0}`")]
    Numerator(String),
    #[error("invalid denominator `{0}`: expected `2^q` or a power of two")]
    Denominator(String),
}

impl Dyadic {
    /// Builds `num / 2^exp` and reduces it.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Self::zero();
        }
        let twos = num.trailing_zeros().unwrap_or(0).min(u64::from(exp)) as u32;
        if twos > 0 {
            num >>= twos;
            exp -= twos;
        }
        Dyadic { num, exp }
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic {
            num: BigInt::from(n),
            exp: 0,
        }
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: k,
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn half(&self) -> Self {
        self.scale_pow2(-1)
    }

    /// Multiplies by `2^k` (k may be negative).
    pub fn scale_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            let k = k as u64;
            if k <= u64::from(self.exp) {
                Dyadic {
                    num: self.num.clone(),
                    exp: self.exp - k as u32,
                }
            } else {
                Dyadic {
                    num: &self.num << (k - u64::from(self.exp)),
                    exp: 0,
                }
            }
        } else {
            let shift = u32::try_from(-k).expect("shift fits in u32");
            Dyadic::new(self.num.clone(), self.exp + shift)
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    pub fn abs_diff(&self, other: &Self) -> Self {
        (self - other).abs()
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Exact quotient, if it is itself dyadic (the odd part of the divisor
    /// must divide the dividend's numerator).
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        // (a / 2^p) / (odd * 2^t / 2^q) = (a / odd) * 2^(q - p - t)
        let twos = other.num.trailing_zeros().unwrap_or(0);
        let odd = &other.num >> twos;
        let (quot, rem) = self.num.div_rem(&odd);
        if !rem.is_zero() {
            return None;
        }
        let k = i64::from(other.exp) - i64::from(self.exp) - twos as i64;
        Some(Dyadic::new(quot, 0).scale_pow2(k))
    }

    /// Is this `2^k` for some integer `k`, and if so which `k`.
    pub fn log2_exact(&self) -> Option<i64> {
        if !self.num.is_positive() {
            return None;
        }
        let bits = self.num.bits();
        if self.num != BigInt::one() << (bits - 1) {
            return None;
        }
        Some(bits as i64 - 1 - i64::from(self.exp))
    }

    /// `self · 2^k` as a machine integer, if it is a non-negative integer
    /// that fits.
    pub fn to_units(&self, k: u32) -> Option<u64> {
        if self.exp > k {
            return None;
        }
        (&self.num << (k - self.exp)).to_u64()
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        let n = self.num.to_f64().unwrap_or(f64::NAN);
        n / 2f64.powi(self.exp as i32)
    }

    fn cmp_values(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_values(other)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &'a Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp);
        let b = &rhs.num << (e - rhs.exp);
        Dyadic::new(a + b, e)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &'a Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        let a = &self.num << (e - self.exp);
        let b = &rhs.num << (e - rhs.exp);
        Dyadic::new(a - b, e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &'a Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Dyadic {
    type Err = ParseDyadicError;

    /// Accepts `n`, `n/2^q` and `n/d` with `d` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseDyadicError::Empty);
        }
        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num_text
            .parse()
            .map_err(|_| ParseDyadicError::Numerator(num_text.to_string()))?;
        let exp = match den_text {
            None => 0,
            Some(d) => parse_denominator(d)?,
        };
        Ok(Dyadic::new(num, exp))
    }
}

fn parse_denominator(d: &str) -> Result<u32, ParseDyadicError> {
    let bad = || ParseDyadicError::Denominator(d.to_string());
    if let Some(q) = d.strip_prefix("2^") {
        return q.parse::<u32>().map_err(|_| bad());
    }
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    let bits = den.bits();
    if den != BigInt::one() << (bits - 1) {
        return Err(bad());
    }
    u32::try_from(bits - 1).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn make_reduces() {
        let x = Dyadic::new(4, 3);
        assert_eq!(x.numerator(), &BigInt::from(1));
        assert_eq!(x.exponent(), 1);
        let z = Dyadic::new(0, 5);
        assert_eq!(z.numerator(), &BigInt::from(0));
        assert_eq!(z.exponent(), 0);
        let y = Dyadic::new(3, 2);
        assert_eq!(y.numerator(), &BigInt::from(3));
        assert_eq!(y.exponent(), 2);
    }

    #[test]
    fn text_form() {
        assert_eq!(Dyadic::new(3, 2).to_string(), "3/2^2");
        assert_eq!(Dyadic::new(8, 3).to_string(), "1");
        assert_eq!(Dyadic::zero().to_string(), "0");
        assert_eq!(d("3/2^2"), Dyadic::new(3, 2));
        assert_eq!(d("6/2^3"), Dyadic::new(3, 2));
        assert_eq!(d("3/8"), Dyadic::new(3, 3));
        assert_eq!(d("1"), Dyadic::one());
        assert_eq!(d("-5/2^1"), Dyadic::new(-5, 1));
        assert!("3/6".parse::<Dyadic>().is_err());
        assert!("x/2^2".parse::<Dyadic>().is_err());
        assert!("".parse::<Dyadic>().is_err());
        assert!("1/2^-1".parse::<Dyadic>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(d("1/2^2") + d("1/2^2"), d("1/2"));
        assert_eq!(d("1") - d("1/2^3"), d("7/2^3"));
        assert_eq!(d("3/2^3").scale_pow2(2), d("3/2"));
        assert_eq!(d("3/2^3").scale_pow2(5), d("12"));
        assert_eq!(d("1").half().half(), d("1/2^2"));
        assert_eq!(d("2").half(), d("1"));
        assert_eq!(d("3/2^2").to_units(4), Some(12));
        assert_eq!(d("3/2^2").to_units(1), None);
        assert_eq!(d("-1").to_units(0), None);
        assert_eq!(d("12").scale_pow2(-3), d("3/2"));
        assert_eq!(d("3/2^2") * d("4"), d("3"));
        assert!(d("1/2^2") < d("1/2"));
        assert!(d("-1/2") < d("0"));
        assert_eq!(d("1/2").min(d("1/2^3")), d("1/2^3"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(d("1/2^3").checked_div(&d("1/2^6")), Some(d("8")));
        assert_eq!(d("3/2^2").checked_div(&d("3/2^4")), Some(d("4")));
        assert_eq!(
            d("1/2").checked_div(&d("1/2^3").scale_pow2(1)),
            Some(d("2"))
        );
        assert_eq!(d("1").checked_div(&d("3")), None);
        assert_eq!(d("6").checked_div(&d("3/2")), Some(d("4")));
        assert_eq!(d("1").checked_div(&Dyadic::zero()), None);
    }

    #[test]
    fn log2() {
        assert_eq!(d("8").log2_exact(), Some(3));
        assert_eq!(d("1/2^5").log2_exact(), Some(-5));
        assert_eq!(d("3/2").log2_exact(), None);
        assert_eq!(d("0").log2_exact(), None);
    }
}
