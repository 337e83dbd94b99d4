//! Numeric abstraction shared by the optimization and separation kernels.
//!
//! The dynamic programs are written once against [`Scalar`] and instantiated
//! with exact rationals (the default everywhere correctness is asserted) or
//! with `f64` (LP-callback style inputs where speed matters).

use num::rational::BigRational;
use num::traits::ToPrimitive;
use num::{BigInt, Signed, Zero};

/// Minimal arithmetic surface needed by the kernels: ordered, clonable
/// numbers with addition, subtraction and a conversion from exact rationals.
pub trait Scalar: Clone + PartialOrd + std::fmt::Debug {
    fn zero() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact constants (constraint coefficients, right-hand sides) converted
    /// into this numeric domain.
    fn from_rational(r: &BigRational) -> Self;
    /// Default separation tolerance: zero for exact types, `1e-6` for floats.
    fn default_tolerance() -> Self;
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn default_tolerance() -> Self {
        Zero::zero()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
    fn default_tolerance() -> Self {
        1e-6
    }
}

/// Lossy conversion used only on the float path.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-f64-range rationals only arise from pathological inputs;
        // saturate with the right sign rather than panic.
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn rational_from_i64(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `3`, `-5`, `1/2`, `-7/3`; the format accepted by
/// [`parse_rational`].
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses an integer, a `num/den` fraction, or a plain decimal like `-0.25`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int: BigInt = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = if negative { -frac } else { frac };
        return Some(BigRational::new(int * &scale + frac, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "3", "-5", "1/2", "-7/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_rational("0.5").unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(parse_rational("-0.25").unwrap(), parse_rational("-1/4").unwrap());
        assert_eq!(parse_rational("2.").is_none(), true);
        assert!(parse_rational("1/0").is_none());
    }

    #[test]
    fn float_tolerance_is_loose_rational_is_exact() {
        assert_eq!(<BigRational as Scalar>::default_tolerance(), rational_from_i64(0));
        assert!(<f64 as Scalar>::default_tolerance() > 0.0);
    }
}
