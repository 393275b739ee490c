use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AbError;

/// Matrix entries. Integers and prime-field residues are stored with denominator 1.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Scalar {
    BigRational::from_integer(v)
}

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, AbError> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(AbError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::PrimeField(p) => *p,
            _ => 0,
        }
    }

    /// Whether `x` is a legal entry for this ring (integral for Z and F_p).
    pub fn admits(&self, x: &Scalar) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers => x.is_integer(),
            Ring::PrimeField(_) => true,
        }
    }

    /// Canonical representative: residues in `[0, p)` over F_p.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            Ring::Integers | Ring::Rationals => x,
            Ring::PrimeField(p) => {
                if x.is_integer() {
                    let p = BigInt::from(*p);
                    big(x.to_integer().mod_floor(&p))
                } else {
                    let p_big = BigInt::from(*p);
                    let num = x.numer().mod_floor(&p_big);
                    let den = x.denom().mod_floor(&p_big);
                    let inv = mod_inverse(&den, &p_big).expect("denominator divisible by p");
                    big((num * inv).mod_floor(&p_big))
                }
            }
        }
    }

    /// Representative of `x` in the cyclic group of the given order (0 = infinite cyclic).
    pub fn reduce(&self, x: Scalar, order: &BigInt) -> Scalar {
        if order.is_zero() {
            return self.normalize(x);
        }
        debug_assert!(x.is_integer());
        big(x.to_integer().mod_floor(order))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    /// Is multiplication by `x` an automorphism of the cyclic group of this order?
    pub fn is_unit(&self, x: &Scalar, order: &BigInt) -> bool {
        if x.is_zero() {
            return false;
        }
        if !order.is_zero() {
            return x.to_integer().gcd(order).is_one();
        }
        match self {
            Ring::Integers => x.abs().is_one(),
            _ => true,
        }
    }

    pub fn unit_inverse(&self, x: &Scalar, order: &BigInt) -> Scalar {
        if !order.is_zero() {
            let inv = mod_inverse(&x.to_integer(), order).expect("not a unit");
            return big(inv);
        }
        match self {
            Ring::Integers => x.clone(),
            Ring::Rationals => x.recip(),
            Ring::PrimeField(p) => {
                let p = BigInt::from(*p);
                big(mod_inverse(&x.to_integer(), &p).expect("zero has no inverse"))
            }
        }
    }

    /// Euclidean size used for pivot selection.
    pub fn size(&self, x: &Scalar) -> BigInt {
        match self {
            Ring::Integers => x.to_integer().abs(),
            _ => {
                if x.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
        }
    }

    /// Euclidean division `a = q*b + r` with `size(r) < size(b)`.
    pub fn div_rem(&self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match self {
            Ring::Integers => {
                let (q, r) = a.to_integer().div_mod_floor(&b.to_integer());
                (big(q), big(r))
            }
            _ => {
                let q = self.mul(a, &self.unit_inverse(b, &BigInt::zero()));
                (q, Scalar::zero())
            }
        }
    }

    pub fn divides(&self, a: &Scalar, b: &Scalar) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        match self {
            Ring::Integers => (b.to_integer() % a.to_integer()).is_zero(),
            _ => true,
        }
    }

    /// Unit `u` such that `u*x` is the preferred associate (positive over Z, one over fields).
    pub fn normalizing_unit(&self, x: &Scalar) -> Scalar {
        if x.is_zero() {
            return Scalar::one();
        }
        match self {
            Ring::Integers => {
                if x.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.unit_inverse(x, &BigInt::zero()),
        }
    }

    /// Order of the cyclic group with relation `d` as an order tag (0 = free).
    pub fn order_of_divisor(&self, d: &Scalar) -> BigInt {
        match self {
            Ring::Integers => d.to_integer().abs(),
            _ => BigInt::zero(),
        }
    }
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.abs().is_one() {
        return None;
    }
    let x = g.x * g.gcd.signum();
    Some(x.mod_floor(m))
}

pub fn to_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}
