use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;

/// Binary floating point number `mant * 2^exp` with a fixed significand width.
///
/// Every result is rounded to nearest, ties to even. Operands must share the
/// same precision; mixing precisions is a programming error and panics.
#[derive(Clone)]
pub struct Approx {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_to(mant: BigInt, exp: i64, sticky: bool, prec: u32) -> Approx {
    if mant.is_zero() {
        return Approx::zero(prec);
    }
    let neg = mant.is_negative();
    let mut m = mant.abs();
    let mut e = exp;
    let bits = m.bits();
    if bits > prec as u64 {
        let k = (bits - prec as u64) as usize;
        let q = &m >> k;
        let rem = &m - (&q << k);
        let half = BigInt::one() << (k - 1);
        let up = match rem.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => sticky || q.is_odd(),
        };
        m = if up { q + 1 } else { q };
        e += k as i64;
        if m.bits() > prec as u64 {
            m >>= 1;
            e += 1;
        }
    } else if bits < prec as u64 {
        let k = (prec as u64 - bits) as usize;
        m <<= k;
        e -= k as i64;
    }
    Approx { mant: if neg { -m } else { m }, exp: e, prec }
}

impl Approx {
    pub fn zero(prec: u32) -> Self {
        assert!(prec >= 8, "precision too small");
        Approx { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Approx::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        round_to(BigInt::from(n), 0, false, prec)
    }

    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        if r.is_zero() {
            return Approx::zero(prec);
        }
        let n = r.numer().abs();
        let d = r.denom().clone();
        let s = prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (q, rem) = if s >= 0 {
            (&n << s as usize).div_rem(&d)
        } else {
            n.div_rem(&(&d << (-s) as usize))
        };
        let q = if r.is_negative() { -q } else { q };
        round_to(q, -s, !rem.is_zero(), prec)
    }

    pub fn from_scalar(x: &Scalar, prec: u32) -> Result<Self> {
        if !x.is_real() {
            return Err(Error::NotReal(x.to_string()));
        }
        Ok(Approx::from_ratio(x.re(), prec))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        let r = BigRational::from_float(v).expect("finite float");
        Approx::from_ratio(&r, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Approx { mant: self.mant.abs(), ..self.clone() }
    }

    /// Exact rational value of this float.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        top * 2f64.powf((self.exp + shift) as f64)
    }

    /// `floor(log2 |x|)`; panics on zero.
    pub fn log2_floor(&self) -> i64 {
        assert!(!self.is_zero());
        self.mant.bits() as i64 - 1 + self.exp
    }

    fn check(&self, other: &Approx) {
        if self.prec != other.prec {
            panic!("{}", Error::PrecisionMismatch(self.prec, other.prec));
        }
    }

    pub fn checked_div(&self, rhs: &Approx) -> Result<Approx> {
        self.check(rhs);
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Approx::zero(self.prec));
        }
        let n = self.mant.abs();
        let d = rhs.mant.abs();
        let s = self.prec as i64 + 2 + d.bits() as i64 - n.bits() as i64;
        let (q, rem) = if s >= 0 {
            (&n << s as usize).div_rem(&d)
        } else {
            n.div_rem(&(&d << (-s) as usize))
        };
        let neg = self.mant.is_negative() != rhs.mant.is_negative();
        Ok(round_to(if neg { -q } else { q }, self.exp - rhs.exp - s, !rem.is_zero(), self.prec))
    }

    pub fn powi(&self, e: i64) -> Approx {
        if e < 0 {
            return Approx::one(self.prec).checked_div(&self.powi(-e)).expect("zero to negative power");
        }
        let mut acc = Approx::one(self.prec);
        let mut base = self.clone();
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

    /// Scientific-notation decimal string with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let digits = digits.max(1);
        let v = self.to_ratio().abs();
        let ten = BigInt::from(10);
        let mut e10 = ((self.log2_floor() as f64) * std::f64::consts::LOG10_2).floor() as i64;
        let lo = ten.pow(digits as u32 - 1);
        let hi = ten.pow(digits as u32);
        let n = loop {
            let k = digits as i64 - 1 - e10;
            let scaled = if k >= 0 {
                &v * BigRational::from_integer(ten.pow(k as u32))
            } else {
                &v / BigRational::from_integer(ten.pow((-k) as u32))
            };
            let n = scaled.round().to_integer();
            if n >= hi {
                e10 += 1;
            } else if n < lo {
                e10 -= 1;
            } else {
                break n;
            }
        };
        let s = n.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        let tail = tail.trim_end_matches('0');
        if s.len() == 1 {
            format!("{sign}{head}e{e10}")
        } else if tail.is_empty() {
            format!("{sign}{head}.0e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Digits needed to pin down the value at this precision.
    pub fn default_digits(&self) -> usize {
        ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    pub fn parse_decimal(s: &str, prec: u32) -> Result<Approx> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a decimal number: {t:?}"));
        let (mantissa, e10) = match t.find(['e', 'E']) {
            Some(k) => (&t[..k], t[k + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (t, 0),
        };
        let m: Scalar = mantissa.parse().map_err(|_| bad())?;
        let r = m.re().clone() * BigRational::from_integer(BigInt::from(10)).pow(e10 as i32);
        Ok(Approx::from_ratio(&r, prec))
    }
}

impl PartialEq for Approx {
    fn eq(&self, other: &Self) -> bool {
        self.check(other);
        self.mant == other.mant && self.exp == other.exp
    }
}

impl PartialOrd for Approx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.check(other);
        let d = self - other;
        Some(match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        })
    }
}

fn add_impl(a: &Approx, b: &Approx) -> Approx {
    a.check(b);
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let top_a = a.log2_floor();
    let top_b = b.log2_floor();
    // A summand below a quarter ulp of the other cannot move the rounded result.
    if top_a - top_b > a.prec as i64 + 3 {
        return a.clone();
    }
    if top_b - top_a > b.prec as i64 + 3 {
        return b.clone();
    }
    let e = a.exp.min(b.exp);
    let ma = &a.mant << (a.exp - e) as usize;
    let mb = &b.mant << (b.exp - e) as usize;
    round_to(ma + mb, e, false, a.prec)
}

impl Add for &Approx {
    type Output = Approx;
    fn add(self, rhs: &Approx) -> Approx {
        add_impl(self, rhs)
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        add_impl(&self, &rhs)
    }
}

impl Sub for &Approx {
    type Output = Approx;
    fn sub(self, rhs: &Approx) -> Approx {
        add_impl(self, &-rhs)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        add_impl(&self, &-&rhs)
    }
}

impl Mul for &Approx {
    type Output = Approx;
    fn mul(self, rhs: &Approx) -> Approx {
        self.check(rhs);
        round_to(&self.mant * &rhs.mant, self.exp + rhs.exp, false, self.prec)
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        &self * &rhs
    }
}

impl Div for &Approx {
    type Output = Approx;
    fn div(self, rhs: &Approx) -> Approx {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Div for Approx {
    type Output = Approx;
    fn div(self, rhs: Approx) -> Approx {
        &self / &rhs
    }
}

impl Neg for &Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        -&self
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.default_digits());
        write!(f, "{}", self.to_decimal(digits))
    }
}

impl fmt::Debug for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}b]", self.to_decimal(self.default_digits()), self.prec)
    }
}

#[derive(Serialize, Deserialize)]
struct ApproxRepr {
    decimal: String,
    precision_bits: u32,
}

impl Serialize for Approx {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ApproxRepr { decimal: self.to_decimal(self.default_digits()), precision_bits: self.prec }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Approx {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ApproxRepr::deserialize(d)?;
        Approx::parse_decimal(&r.decimal, r.precision_bits).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::scalar::qq;

    const P: u32 = DEFAULT_PRECISION;

    fn ap(n: i64, d: i64) -> Approx {
        Approx::from_scalar(&qq(n, d), P).unwrap()
    }

    fn rel_err(a: &Approx, exact: &Scalar) -> f64 {
        let diff = Scalar::real(a.to_ratio()) - exact;
        (diff / exact).to_f64().abs()
    }

    #[test]
    fn rounding_is_within_half_ulp() {
        for (n, d) in [(1, 3), (-2, 7), (22, 7), (1, 1 << 40), (123456789, 1000)] {
            let x = ap(n, d);
            assert!(rel_err(&x, &qq(n, d)) <= 2f64.powi(-(P as i32)));
        }
        assert_eq!(ap(3, 4).to_ratio(), qq(3, 4).re().clone());
    }

    #[test]
    fn arithmetic_tracks_exact_values() {
        let (a, b) = (ap(1, 3), ap(-5, 11));
        let cases = [
            (&a + &b, &qq(1, 3) + &qq(-5, 11)),
            (&a - &b, &qq(1, 3) - &qq(-5, 11)),
            (&a * &b, &qq(1, 3) * &qq(-5, 11)),
            (&a / &b, &qq(1, 3) / &qq(-5, 11)),
        ];
        for (x, e) in cases {
            assert!(rel_err(&x, &e) < 1e-37, "{x:?} vs {e}");
        }
        let p = ap(3, 2).powi(-7);
        assert!(rel_err(&p, &qq(3, 2).pow(-7)) < 1e-36);
    }

    #[test]
    fn cancellation_and_tiny_addends() {
        let one = Approx::one(P);
        let tiny = ap(1, 1).powi(1) / Approx::from_int(2, P).powi(400);
        assert_eq!(&(&one + &tiny) - &one, Approx::zero(P));
        let x = ap(7, 9);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn ordering_and_sign() {
        assert!(ap(1, 3) < ap(1, 2));
        assert!(ap(-1, 3) > ap(-1, 2));
        assert!(ap(-1, 3).abs() == ap(1, 3));
    }

    #[test]
    #[should_panic(expected = "precision mismatch")]
    fn mixed_precision_panics() {
        let _ = &Approx::one(64) + &Approx::one(128);
    }

    #[test]
    fn decimal_roundtrip() {
        let x = ap(-22, 7);
        let s = x.to_decimal(x.default_digits());
        assert!(s.starts_with("-3.142857142857142857142857142857142857"));
        let back = Approx::parse_decimal(&s, P).unwrap();
        assert!(rel_err(&back, &qq(-22, 7)) < 1e-38);
        assert_eq!(ap(1, 1000).to_decimal(3), "1.0e-3");
        assert_eq!(Approx::from_int(5, P).to_decimal(1), "5e0");
        let j = serde_json::to_string(&x).unwrap();
        let y: Approx = serde_json::from_str(&j).unwrap();
        assert!(rel_err(&y, &qq(-22, 7)) < 1e-38);
    }

    #[test]
    fn f64_conversion() {
        assert!((ap(1, 3).to_f64() - 1.0 / 3.0).abs() < 1e-16);
        let big = Approx::from_int(2, P).powi(-1100);
        assert_eq!(big.to_f64(), 0.0);
        assert_eq!(big.log2_floor(), -1100);
    }
}
