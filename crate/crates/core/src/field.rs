//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// The field a presentation is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientField {
    Rational,
    Prime(u32),
}

impl CoefficientField {
    /// Builds the prime field of characteristic `p`, rejecting composites.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(CoefficientField::Prime(p as u32))
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        match self {
            CoefficientField::Rational => Coeff::Rational(BigRational::from_integer(n.into())),
            CoefficientField::Prime(p) => Coeff::Modular { value: n.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Coeff {
        match self {
            CoefficientField::Rational => Coeff::Rational(BigRational::from_integer(n.clone())),
            CoefficientField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Coeff::Modular { value: r.to_u32().unwrap_or(0), modulus: p }
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Coeff, FieldError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.from_bigint(num).mul(&d.inv()?))
    }

    pub fn name(self) -> String {
        match self {
            CoefficientField::Rational => "rational".to_string(),
            CoefficientField::Prime(p) => format!("prime({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Arithmetic between elements of different fields panics:
/// polynomials check field agreement before combining coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Coeff {
    pub fn field(&self) -> CoefficientField {
        match self {
            Coeff::Rational(_) => CoefficientField::Rational,
            Coeff::Modular { modulus, .. } => CoefficientField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a + b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) if p == q => {
                Coeff::Modular { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => {
                Coeff::Modular { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(a * b),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) if p == q => {
                Coeff::Modular { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Coeff, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Coeff::Modular { value: acc as u32, modulus: *modulus }
            }
        })
    }

    /// `self / other`.
    pub fn div(&self, other: &Coeff) -> Result<Coeff, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    /// True when the element is printed with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Rational(a) => a.is_negative(),
            Coeff::Modular { .. } => false,
        }
    }
}

/// Rationals print as `a` or `a/b`; prime-field elements as their least
/// nonnegative representative.
impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
