//! Exact scalar fields.
//!
//! A [`Field`] is a small context object that owns the arithmetic for its
//! element type. The rationals are the default field; prime fields exist so
//! that closure computations (and test oracles) can run over `F_p`.

use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Presentation scalars. Residues of a prime field are stored as their
/// canonical integer representative.
pub type Scalar = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("rational"),
            FieldSpec::Prime(p) => write!(f, "prime {p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + fmt::Debug + PartialEq + Eq;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Maps a presentation scalar into the field. `None` when the scalar has no
    /// image (a denominator divisible by the characteristic).
    fn from_scalar(&self, s: &Scalar) -> Option<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The field of rational numbers with arbitrary-precision entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_scalar(&self, s: &Scalar) -> Option<BigRational> {
        Some(s.clone())
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        a.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// `F_p` with a runtime modulus. The modulus must be prime; see [`is_prime`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Option<Self> {
        if is_prime(p) && p < (1u64 << 32) {
            Some(PrimeField { p })
        } else {
            None
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_scalar(&self, s: &Scalar) -> Option<u64> {
        let num = self.reduce_int(s.numer());
        let den = self.reduce_int(s.denom());
        self.div(&num, &den)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    Empty,
    Malformed(String),
    ZeroDenominator,
}

impl fmt::Display for ScalarParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarParseError::Empty => f.write_str("empty scalar"),
            ScalarParseError::Malformed(s) => write!(f, "malformed scalar `{s}`"),
            ScalarParseError::ZeroDenominator => f.write_str("zero denominator"),
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt, ScalarParseError> {
    let digits = s
        .strip_prefix('-')
        .or_else(|| s.strip_prefix('+'))
        .unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ScalarParseError::Malformed(s.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| ScalarParseError::Malformed(s.to_string()))
}

/// Parses `n`, `-n` or `a/b` with `b > 0`. The result is always reduced.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ScalarParseError::Empty);
    }
    match text.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(text)?)),
        Some((n, d)) => {
            let num = parse_int(n)?;
            if d.starts_with('-') || d.starts_with('+') {
                return Err(ScalarParseError::Malformed(text.to_string()));
            }
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(ScalarParseError::ZeroDenominator);
            }
            Ok(BigRational::new(num, den))
        }
    }
}

/// Canonical text form: `n` for integers, `a/b` with `b > 0` and `gcd(a, b) = 1`.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        let mut out = s.numer().to_string();
        out.push('/');
        out.push_str(&s.denom().abs().to_string());
        out
    }
}

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
