use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

/// Largest prime accepted for `GF(p)`.
pub const MAX_PRIME: u32 = 97;

/// The scalar field of a category: a prime field `GF(p)` or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Field {
    pub fn prime(p: u32) -> Result<Field, LinAlgError> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(LinAlgError::UnsupportedField(format!("GF({p})")));
        }
        Ok(Field::Prime(p))
    }

    pub fn gf2() -> Field {
        Field::Prime(2)
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Prime(p) => FieldElem::Mod {
                p,
                v: n.rem_euclid(i64::from(p)) as u32,
            },
            Field::Rational => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num/den` reduced into the field; fails when `den` vanishes in it.
    pub fn from_fraction(self, num: i64, den: i64) -> Result<FieldElem, LinAlgError> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or(LinAlgError::DivisionByZero)?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(u64::from(p)),
            Field::Rational => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self.order().is_some()
    }

    /// All field elements in increasing residue order (finite fields only).
    pub fn elements(self) -> Result<Vec<FieldElem>, LinAlgError> {
        match self {
            Field::Prime(p) => Ok((0..p).map(|v| FieldElem::Mod { p, v }).collect()),
            Field::Rational => Err(LinAlgError::InfiniteField),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = LinAlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| LinAlgError::UnsupportedField(s.to_string()))?;
        let p: u32 = inner
            .trim()
            .parse()
            .map_err(|_| LinAlgError::UnsupportedField(s.to_string()))?;
        Field::prime(p)
    }
}

/// An exact scalar. Residues are kept reduced, fractions in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElem {
    Mod { p: u32, v: u32 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Mod { p, .. } => Field::Prime(*p),
            FieldElem::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Mod { v, .. } => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Mod { v, .. } => *v == 1,
            FieldElem::Rat(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        match self {
            FieldElem::Mod { p, v } => {
                // Fermat: v^(p-2)
                let (p64, mut base, mut exp, mut acc) = (u64::from(*p), u64::from(*v), p - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p64;
                    }
                    base = base * base % p64;
                    exp >>= 1;
                }
                Some(FieldElem::Mod { p: *p, v: acc as u32 })
            }
            FieldElem::Rat(r) => Some(FieldElem::Rat(r.recip())),
        }
    }

    fn expect_same(&self, other: &FieldElem) {
        assert_eq!(self.field(), other.field(), "field mismatch in scalar arithmetic");
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;

    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.expect_same(rhs);
        match (self, rhs) {
            (FieldElem::Mod { p, v }, FieldElem::Mod { v: w, .. }) => FieldElem::Mod { p: *p, v: (v + w) % p },
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;

    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Mod { p, v } => FieldElem::Mod { p: *p, v: (p - v) % p },
            FieldElem::Rat(a) => FieldElem::Rat(-a),
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;

    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.expect_same(rhs);
        match (self, rhs) {
            (FieldElem::Mod { p, v }, FieldElem::Mod { v: w, .. }) => FieldElem::Mod {
                p: *p,
                v: ((u64::from(*v) * u64::from(*w)) % u64::from(*p)) as u32,
            },
            (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

/// Parses a scalar literal (`3`, `-1`, `2/5`) into `field`.
pub fn parse_scalar(field: Field, s: &str) -> Result<FieldElem, LinAlgError> {
    let s = s.trim();
    let bad = || LinAlgError::BadScalar(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => match field {
            Field::Rational => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(LinAlgError::DivisionByZero);
                }
                Ok(FieldElem::Rat(BigRational::new(n, d)))
            }
            Field::Prime(_) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                field.from_fraction(n, d)
            }
        },
        None => match field {
            Field::Rational => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(FieldElem::Rat(BigRational::from_integer(n)))
            }
            Field::Prime(p) => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                let r = n.mod_floor_u32(p);
                Ok(FieldElem::Mod { p, v: r })
            }
        },
    }
}

trait ModFloorU32 {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloorU32 for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        let m = BigInt::from(p);
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_string().parse().expect("residue fits in u32")
    }
}
