//! Exact scalars: the rationals and the Gaussian rationals.
//!
//! Both fields are exact, so equality is decidable and no tolerance ever
//! enters a comparison. `Rational` stands in for the real case and
//! `GaussianRational` for the complex case.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Which computable field a scalar type models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldKind {
    /// ℚ, the proxy for the real case.
    #[serde(rename = "q")]
    Rational,
    /// ℚ(i), the proxy for the complex case.
    #[serde(rename = "qi")]
    Gaussian,
}

impl FieldKind {
    pub fn tag(self) -> &'static str {
        match self {
            FieldKind::Rational => "q",
            FieldKind::Gaussian => "qi",
        }
    }
}

/// Element of an exact field.
///
/// Implementations must keep values in a canonical form so that `==` is
/// field equality.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Sign for ordered fields; `None` when the field carries no ordering.
    fn sign(&self) -> Option<Ordering>;

    /// Canonical string form used in all JSON I/O.
    fn to_canonical_string(&self) -> String;
    fn parse_canonical(s: &str) -> Result<Self>;

    /// Draws an element from a fixed pool of small values.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Image under a ring homomorphism to ℤ/mℤ for a prime m ≡ 1 mod 4,
    /// with i sent to `sqrt_minus_one`. `None` when a denominator vanishes
    /// mod m.
    fn residue(&self, m: u64, sqrt_minus_one: u64) -> Option<u64>;
}

/// ℚ with arbitrary precision.
pub type Rational = BigRational;

const POOL: [(i64, i64); 9] = [
    (-2, 1),
    (-1, 1),
    (-1, 2),
    (0, 1),
    (1, 3),
    (1, 2),
    (1, 1),
    (2, 1),
    (3, 1),
];

fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int_residue(v: &BigInt, m: u64) -> u64 {
    let r = v % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    r.try_into().expect("residue fits in u64")
}

/// a·b⁻¹ mod m.
fn rational_residue(q: &Rational, m: u64) -> Option<u64> {
    let d = int_residue(q.denom(), m);
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_residue(q.numer(), m), pow_mod(d, m - 2, m), m))
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

impl Scalar for Rational {
    const KIND: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_frac(num: i64, den: i64) -> Self {
        rational(num, den)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn sign(&self) -> Option<Ordering> {
        Some(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }
    fn to_canonical_string(&self) -> String {
        rational_string(self)
    }
    fn parse_canonical(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let (n, d) = POOL[rng.gen_range(0..POOL.len())];
        rational(n, d)
    }
    fn residue(&self, m: u64, _sqrt_minus_one: u64) -> Option<u64> {
        rational_residue(self, m)
    }
}

/// a + b·i with a, b rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn i() -> Self {
        Self::new(Zero::zero(), One::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sq();
        assert!(!Zero::is_zero(&n), "division by zero in Q(i)");
        let num = self * rhs.conj();
        Self::new(num.re / n.clone(), num.im / n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Scalar for GaussianRational {
    const KIND: FieldKind = FieldKind::Gaussian;

    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn from_i64(v: i64) -> Self {
        Self::new(Rational::from_i64(v), Zero::zero())
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Self::new(rational(num, den), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn sign(&self) -> Option<Ordering> {
        None
    }
    fn to_canonical_string(&self) -> String {
        if self.im.is_negative() {
            format!("{}-{} i", rational_string(&self.re), rational_string(&-self.im.clone()))
        } else {
            format!("{}+{} i", rational_string(&self.re), rational_string(&self.im))
        }
    }
    fn parse_canonical(s: &str) -> Result<Self> {
        let t = s.trim();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::new(parse_rational(t)?, Zero::zero()));
        };
        let body = body.trim_end();
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(at) => {
                let re = parse_rational(&body[..at])?;
                let (sign, rest) = body[at..].split_at(1);
                let rest = rest.trim();
                let mut im = if rest.is_empty() {
                    One::one()
                } else {
                    parse_rational(rest)?
                };
                if sign == "-" {
                    im = -im;
                }
                Ok(Self::new(re, im))
            }
            None => {
                let im = match body.trim() {
                    "" | "+" => One::one(),
                    "-" => -<Rational as One>::one(),
                    other => parse_rational(other)?,
                };
                Ok(Self::new(Zero::zero(), im))
            }
        }
    }
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re = Rational::sample(rng);
        // keep roughly half of the draws off the real axis
        let im = if rng.gen_bool(0.5) {
            Rational::sample(rng)
        } else {
            Zero::zero()
        };
        Self::new(re, im)
    }
    fn residue(&self, m: u64, sqrt_minus_one: u64) -> Option<u64> {
        let re = rational_residue(&self.re, m)?;
        let im = rational_residue(&self.im, m)?;
        Some(((re as u128 + im as u128 * sqrt_minus_one as u128) % m as u128) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        let q = Rational::from_frac(-6, 4);
        assert_eq!(q.to_canonical_string(), "-3/2");
        assert_eq!(Rational::parse_canonical("-3/2").unwrap(), q);
        assert_eq!(Rational::parse_canonical("5").unwrap(), Rational::from_i64(5));
        assert_eq!(<Rational as Scalar>::one().to_canonical_string(), "1/1");
        assert!(Rational::parse_canonical("1/0").is_err());
        assert!(Rational::parse_canonical("x").is_err());
    }

    #[test]
    fn gaussian_strings() {
        let z = GaussianRational::new(Rational::from_frac(1, 2), Rational::from_frac(-3, 4));
        let s = z.to_canonical_string();
        assert_eq!(s, "1/2-3/4 i");
        assert_eq!(GaussianRational::parse_canonical(&s).unwrap(), z);
        let w = GaussianRational::parse_canonical("-1/1+2/3 i").unwrap();
        assert_eq!(
            w,
            GaussianRational::new(Rational::from_i64(-1), Rational::from_frac(2, 3))
        );
        assert_eq!(GaussianRational::parse_canonical("i").unwrap(), GaussianRational::i());
        assert_eq!(
            GaussianRational::parse_canonical("-2/1").unwrap(),
            GaussianRational::from_i64(-2)
        );
    }

    #[test]
    fn gaussian_field_ops() {
        let i = GaussianRational::i();
        assert_eq!(i.clone() * i.clone(), -GaussianRational::one());
        let z = GaussianRational::new(Rational::from_i64(3), Rational::from_i64(-4));
        let q = z.clone() / z.clone();
        assert!(q.is_one());
        assert_eq!((GaussianRational::one() / z.clone()) * z, GaussianRational::one());
    }

    #[test]
    fn reduced_denominators() {
        let q = Rational::from_frac(4, -8);
        assert_eq!(*q.denom(), BigInt::from(2));
        assert_eq!(*q.numer(), BigInt::from(-1));
    }
}
