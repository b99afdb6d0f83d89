//! The move probability `p ∈ (0, 1]`, kept both as a float and as an exact
//! rational, and the scalar types the exact solvers run over.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Probability {
    exact: BigRational,
    value: f64,
    fraction: bool,
}

impl Probability {
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        Self::from_rational(BigRational::new(num.into(), den.into()), true)
    }

    pub fn from_f64(p: f64) -> Result<Self> {
        let exact = BigRational::from_float(p)
            .ok_or_else(|| Error::invalid(format!("p = {p} is not finite")))?;
        let mut out = Self::from_rational(exact, false)?;
        out.value = p;
        Ok(out)
    }

    fn from_rational(exact: BigRational, fraction: bool) -> Result<Self> {
        if !exact.is_positive() || exact > BigRational::one() {
            return Err(Error::invalid(format!("p = {exact} must lie in (0, 1]")));
        }
        let value = ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
        Ok(Probability {
            exact,
            value,
            fraction,
        })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> &BigRational {
        &self.exact
    }

    /// True when given as `a/b`; such inputs select exact rational mode.
    pub fn is_fraction(&self) -> bool {
        self.fraction
    }

    pub fn is_one(&self) -> bool {
        self.exact.is_one()
    }
}

impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: BigInt = a
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad numerator in {s:?}")))?;
            let den: BigInt = b
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::invalid("zero denominator"));
            }
            return Self::from_rational(BigRational::new(num, den), true);
        }
        // decimals are read exactly: "0.25" is 25/100, not the nearest double
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits = format!("{int}{frac}");
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::invalid(format!("cannot parse probability {s:?}")));
        }
        let num: BigInt = digits.parse().expect("checked digits");
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let exact = BigRational::new(num, den);
        let mut out = Self::from_rational(exact, false)?;
        out.value = s.parse().expect("checked decimal");
        Ok(out)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.fraction {
            write!(f, "{}", self.exact)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

/// Scalars the exact solvers can run over.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
{
    fn from_probability(p: &Probability) -> Self;
    fn from_u64(k: u64) -> Self;
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    fn from_probability(p: &Probability) -> Self {
        p.value()
    }
    fn from_u64(k: u64) -> Self {
        k as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_probability(p: &Probability) -> Self {
        p.exact().clone()
    }
    fn from_u64(k: u64) -> Self {
        BigRational::from_integer(k.into())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `weights[s] = p^s (1-p)^(k-s)` for `s = 0..=k`.
pub(crate) fn subset_weights<S: Scalar>(p: &S, k: usize) -> Vec<S> {
    let q = S::one() - p.clone();
    let mut pp = vec![S::one(); k + 1];
    let mut qq = vec![S::one(); k + 1];
    for s in 1..=k {
        pp[s] = pp[s - 1].clone() * p.clone();
        qq[s] = qq[s - 1].clone() * q.clone();
    }
    (0..=k).map(|s| pp[s].clone() * qq[k - s].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let p: Probability = "1/2".parse().unwrap();
        assert!(p.is_fraction());
        assert_eq!(p.value(), 0.5);
        let q: Probability = "0.25".parse().unwrap();
        assert!(!q.is_fraction());
        assert_eq!(q.exact(), &BigRational::new(1.into(), 4.into()));
        assert!("0".parse::<Probability>().is_err());
        assert!("0/3".parse::<Probability>().is_err());
        assert!("3/2".parse::<Probability>().is_err());
        assert!("1.5".parse::<Probability>().is_err());
        assert!("abc".parse::<Probability>().is_err());
        assert!("1".parse::<Probability>().unwrap().is_one());
        assert_eq!(p.to_string(), "1/2");
    }

    #[test]
    fn weights_sum_to_one() {
        let p = BigRational::new(1.into(), 3.into());
        for k in 0..8 {
            let w = subset_weights(&p, k);
            let total: BigRational = (0..=k)
                .map(|s| w[s].clone() * BigRational::from_integer(binom(k, s).into()))
                .fold(BigRational::zero(), |a, b| a + b);
            assert!(total.is_one());
        }
    }

    fn binom(n: usize, k: usize) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
    }
}
