//! Scalar field abstraction shared by every algebraic routine.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{NumRef, Signed, ToPrimitive, Zero};

/// A field the combinatorial and series code can run over.
///
/// Exact types compare with `==`; floating types compare within a relative tolerance.
pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + NumRef + Signed + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn from_biguint(n: &BigUint) -> Self {
        Self::from_bigint(&BigInt::from_biguint(Sign::Plus, n.clone()))
    }

    /// Real `k`-th root when it exists in the field.
    fn nth_root(&self, k: u32) -> Option<Self>;

    fn is_exact() -> bool;

    fn close_to(&self, other: &Self) -> bool;

    fn to_f64(&self) -> f64;

    /// Canonical text form used by the JSON layer.
    fn to_repr(&self) -> String;

    fn parse_repr(s: &str) -> Option<Self>;

    fn is_close_to_zero(&self) -> bool {
        self.close_to(&Self::zero())
    }
}

fn bigint_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn nth_root(&self, k: u32) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let num = bigint_root(self.numer(), k)?;
        let den = bigint_root(self.denom(), k)?;
        Some(BigRational::new(num, den))
    }

    fn is_exact() -> bool {
        true
    }

    fn close_to(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_repr(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_repr(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().ok()?;
                let q: BigInt = q.trim().parse().ok()?;
                (!q.is_zero()).then(|| BigRational::new(p, q))
            }
            None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn from_bigint(n: &BigInt) -> Self {
                ToPrimitive::to_f64(n).unwrap_or(f64::NAN) as $t
            }

            fn nth_root(&self, k: u32) -> Option<Self> {
                if k == 0 || (*self < 0.0 && k % 2 == 0) {
                    return None;
                }
                let r = self.abs().powf(1.0 / k as $t);
                Some(if *self < 0.0 { -r } else { r })
            }

            fn is_exact() -> bool {
                false
            }

            fn close_to(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $tol * scale
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn to_repr(&self) -> String {
                format!("{:e}", self)
            }

            fn parse_repr(s: &str) -> Option<Self> {
                let s = s.trim();
                if let Some((p, q)) = s.split_once('/') {
                    let p: $t = p.trim().parse().ok()?;
                    let q: $t = q.trim().parse().ok()?;
                    return (q != 0.0).then(|| p / q);
                }
                s.parse().ok()
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Integer power with a non-negative exponent.
pub fn powi<T: Scalar>(x: &T, e: usize) -> T {
    num_traits::pow(x.clone(), e)
}

/// Converts a count into the scalar field.
pub fn from_count<T: Scalar>(n: u64) -> T {
    if n <= i64::MAX as u64 {
        T::from_int(n as i64)
    } else {
        T::from_biguint(&BigUint::from(n))
    }
}

/// Rational value `p/q` in the exact field.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational as a fixed-point decimal string with `digits` places, rounding half away from zero.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer();
    let neg = rounded.is_negative();
    let mag = rounded.abs();
    let int_part = &mag / &scale;
    let frac_part = &mag % &scale;
    let sign = if neg && !mag.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

/// Integer `k`-th root of `n` when `n` is a perfect `k`-th power.
pub fn integer_root(n: u64, k: u32) -> Option<u64> {
    if k == 0 {
        return None;
    }
    let r = n.nth_root(k);
    (r.checked_pow(k) == Some(n)).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        assert_eq!(rat(4, 9).nth_root(2), Some(rat(2, 3)));
        assert_eq!(rat(-8, 27).nth_root(3), Some(rat(-2, 3)));
        assert_eq!(rat(2, 1).nth_root(2), None);
        assert_eq!(rat(-4, 1).nth_root(2), None);
    }

    #[test]
    fn float_roots_and_tolerance() {
        let r = 8.0f64.nth_root(3).unwrap();
        assert!(r.close_to(&2.0));
        assert!(!1.0f64.close_to(&1.001));
    }

    #[test]
    fn repr_round_trip() {
        let x = rat(-6, 4);
        assert_eq!(x.to_repr(), "-3/2");
        assert_eq!(BigRational::parse_repr("-3/2"), Some(x));
        assert_eq!(BigRational::parse_repr("5"), Some(rat(5, 1)));
        assert_eq!(BigRational::parse_repr("1/0"), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal_string(&rat(-2, 3), 3), "-0.667");
        assert_eq!(decimal_string(&rat(5, 1), 2), "5.00");
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(81, 4), Some(3));
        assert_eq!(integer_root(80, 4), None);
    }
}
