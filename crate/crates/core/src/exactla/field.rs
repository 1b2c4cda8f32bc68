//! Ground fields: prime fields GF(p) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The ground field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u32),
    Rationals,
}

/// A field element, detached from its field.
///
/// Prime-field elements are stored reduced in `0..p`; rationals are kept in
/// canonical form by `num_rational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u32),
    Q(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a != 0);
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

impl Field {
    /// GF(p); rejects non-primes and primes that do not fit the 16-bit fast path.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if p >= 1 << 16 {
            return Err(Error::InvalidArgument(format!(
                "characteristic {p} too large (must be below 65536)"
            )));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p as u64),
            Field::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Fp(0),
            Field::Rationals => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u32),
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num / den`, failing when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &pb) + &pb) % &pb;
                    u32::try_from(r).expect("reduced below p")
                };
                let d = reduce(den);
                if d == 0 {
                    return Err(Error::InvalidArgument(format!("denominator {den} vanishes in GF({p})")));
                }
                let n = reduce(num);
                Ok(Scalar::Fp(((n as u64 * inv_mod(d, *p) as u64) % *p as u64) as u32))
            }
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::InvalidArgument("zero denominator".into()));
                }
                Ok(Scalar::Q(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Parses `n`, `-n` or `n/d`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidArgument(format!("malformed scalar `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }

    pub fn is_member(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Fp(v)) => v < p,
            (Field::Rationals, Scalar::Q(_)) => true,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(((*x as u64 * *y as u64) % *p as u64) as u32),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(inv_mod(*x, *p)),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    /// All elements of a finite field in the order `0, 1, .., p-1`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Fp).collect()),
            Field::Rationals => None,
        }
    }

    /// A random element; over the rationals a small integer of absolute value at most `height`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Field::Rationals => self.from_i64(rng.gen_range(-height..=height)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "QQ"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    /// Symmetric integer representative for GF(p) (`p-1` prints as `-1`), exact value for QQ.
    pub fn to_rational(&self, field: Field) -> BigRational {
        match (self, field) {
            (Scalar::Fp(v), Field::Prime(p)) => {
                let v = *v as i64;
                let p = p as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(BigInt::from(s))
            }
            (Scalar::Fp(v), Field::Rationals) => BigRational::from_integer(BigInt::from(*v)),
            (Scalar::Q(q), _) => q.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else if q.is_negative() {
                    write!(f, "-{}/{}", -q.numer(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(65537).is_err());
    }

    #[test]
    fn inverses_mod_p() {
        let f = Field::prime(7).unwrap();
        for a in 1..7 {
            let x = f.from_i64(a);
            let y = f.inv(&x).unwrap();
            assert!(f.mul(&x, &y).is_one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn parses_fractions() {
        let f = Field::prime(5).unwrap();
        // 1/2 = 3 in GF(5)
        assert_eq!(f.parse_scalar("1/2").unwrap(), Scalar::Fp(3));
        assert_eq!(f.parse_scalar("-1").unwrap(), Scalar::Fp(4));
        assert!(f.parse_scalar("1/5").is_err());
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("2/4").unwrap().to_string(), "1/2");
        assert_eq!(q.parse_scalar("-3/6").unwrap().to_string(), "-1/2");
    }
}
