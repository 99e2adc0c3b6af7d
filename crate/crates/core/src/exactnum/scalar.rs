use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact element of the Gaussian rationals `Q(i)`.
///
/// Almost every quantity in this crate is real; the imaginary part only shows
/// up for complex-conjugate parameter pairs, so real operands take a fast path.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Complex<BigRational>);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn i() -> Self {
        Scalar(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics on `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::real(rat(n, d))
    }

    pub fn real(re: BigRational) -> Self {
        Scalar(Complex::new(re, BigRational::zero()))
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.re.is_one() && self.0.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    /// `|z|^2`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.0.re * &self.0.re + &self.0.im * &self.0.im
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Scalar::real(self.0.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(Scalar(Complex::new(&self.0.re / &n, -&self.0.im / &n)))
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.checked_inv()?)
    }

    /// Integer power; negative exponents invert (panics on `0^-k`).
    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ordering of two real scalars; `None` if either is non-real.
    pub fn partial_cmp_real(&self, other: &Self) -> Option<Ordering> {
        if self.is_real() && other.is_real() {
            Some(self.0.re.cmp(&other.0.re))
        } else {
            None
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.0.re.is_positive()
    }

    pub fn is_negative_real(&self) -> bool {
        self.is_real() && self.0.re.is_negative()
    }

    /// Absolute value of a real scalar; modulus is not rational in general.
    pub fn abs_real(&self) -> Result<Self> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        Ok(Scalar::real(self.0.re.abs()))
    }

    /// Exact square root of a nonnegative rational perfect square.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if !self.is_real() || self.0.re.is_negative() {
            return None;
        }
        let n = self.0.re.numer();
        let d = self.0.re.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Scalar::real(BigRational::new(rn, rd)))
        } else {
            None
        }
    }

    /// Real part as `f64` (lossy, for reporting only).
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0.re)
    }

    pub fn is_integer(&self) -> bool {
        self.is_real() && self.0.re.is_integer()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerator and denominator: shift both down to f64 range first.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0) as usize;
    let shift_d = (db - 60).max(0) as usize;
    let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::real(r)
    }
}

fn add_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_real() && b.is_real() {
        return Scalar::real(&a.0.re + &b.0.re);
    }
    Scalar(&a.0 + &b.0)
}

fn sub_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_real() && b.is_real() {
        return Scalar::real(&a.0.re - &b.0.re);
    }
    Scalar(&a.0 - &b.0)
}

fn mul_ref(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_zero() || b.is_zero() {
        return Scalar::zero();
    }
    match (a.is_real(), b.is_real()) {
        (true, true) => Scalar::real(&a.0.re * &b.0.re),
        (true, false) => Scalar(Complex::new(&a.0.re * &b.0.re, &a.0.re * &b.0.im)),
        (false, true) => Scalar(Complex::new(&a.0.re * &b.0.re, &a.0.im * &b.0.re)),
        (false, false) => Scalar(&a.0 * &b.0),
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, |a: &Scalar, b: &Scalar| a.checked_div(b).expect("division by zero"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.is_real() && rhs.is_real() {
            self.0.re += &rhs.0.re;
        } else {
            self.0 = &self.0 + &rhs.0;
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.is_real() && rhs.is_real() {
            self.0.re -= &rhs.0.re;
        } else {
            self.0 = &self.0 - &rhs.0;
        }
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_ref(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| &a * &b)
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// `p/q` for reals, `p/q+r/s*i` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", fmt_ratio(&self.0.re));
        }
        let im = &self.0.im;
        let sign = if im.is_negative() { "-" } else { "+" };
        if self.0.re.is_zero() {
            let s = if im.is_negative() { "-" } else { "" };
            return write!(f, "{}{}*i", s, fmt_ratio(&im.abs()));
        }
        write!(f, "{}{}{}*i", fmt_ratio(&self.0.re), sign, fmt_ratio(&im.abs()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        // Terminating decimals are exact rationals.
        let neg = ip.trim_start().starts_with('-');
        let ip_digits = ip.trim().trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_digits.is_empty() {
            BigInt::zero()
        } else {
            ip_digits.parse().map_err(|_| bad())?
        };
        if !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac: BigInt = if fp.is_empty() { BigInt::zero() } else { fp.parse().map_err(|_| bad())? };
        let mag = BigRational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, decimals, `r/s*i` and `p/q±r/s*i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(body) = t.strip_suffix("*i").or_else(|| t.strip_suffix('i')) {
            // Split at the last sign that is not at position 0.
            let split = body
                .char_indices()
                .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
                .map(|(k, _)| k)
                .next_back();
            let (re, im) = match split {
                Some(k) => (parse_ratio(&body[..k])?, &body[k..]),
                None => (BigRational::zero(), body),
            };
            let im = match im {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_ratio(other.trim_start_matches('+'))?,
            };
            return Ok(Scalar::complex(re, im));
        }
        Ok(Scalar::real(parse_ratio(&t)?))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for `Scalar::frac`.
pub fn qq(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations() {
        let a = qq(3, 4);
        let b = qq(-5, 6);
        assert_eq!(&a + &b, qq(-1, 12));
        assert_eq!(&a * &b, qq(-5, 8));
        assert_eq!(&a / &b, qq(-9, 10));
        assert_eq!(a.pow(-2), qq(16, 9));
        assert!(Scalar::zero().checked_inv().is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let z: Scalar = "1/2+3/4*i".parse().unwrap();
        let w = z.conj();
        assert_eq!(&z * &w, Scalar::real(z.norm_sqr()));
        assert_eq!(&z * &z.inv(), Scalar::one());
        assert_eq!(Scalar::i().pow(2), Scalar::from_int(-1));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-7", "3/5", "1/2+3/4*i", "-1/3-2*i", "5/7*i", "-1*i"] {
            let z: Scalar = s.parse().unwrap();
            let back: Scalar = z.to_string().parse().unwrap();
            assert_eq!(z, back, "{s}");
        }
        assert_eq!(qq(1, 2).to_string(), "1/2");
        assert_eq!("0.125".parse::<Scalar>().unwrap(), qq(1, 8));
        assert_eq!("-1.5".parse::<Scalar>().unwrap(), qq(-3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(qq(9, 4).sqrt_exact(), Some(qq(3, 2)));
        assert_eq!(qq(1, 2).sqrt_exact(), None);
        assert_eq!(qq(-1, 4).sqrt_exact(), None);
    }

    #[test]
    fn serde_as_string() {
        let z = qq(-3, 8);
        let j = serde_json::to_string(&z).unwrap();
        assert_eq!(j, "\"-3/8\"");
        let back: Scalar = serde_json::from_str(&j).unwrap();
        assert_eq!(back, z);
    }

    #[test]
    fn huge_ratio_to_f64() {
        let big = Scalar::from_int(2).pow(2000) / Scalar::from_int(3).pow(1200);
        let expect = 2000.0 * 2f64.ln() - 1200.0 * 3f64.ln();
        assert!((big.to_f64().ln() - expect).abs() < 1e-9);
    }
}
