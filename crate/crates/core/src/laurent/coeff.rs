//! Coefficient rings for Laurent polynomials.
//!
//! A polynomial is generic over its coefficient type `C: Coefficient`. Each
//! coefficient type names a ring descriptor (`C::Ring`) that knows how to build
//! constants, because some rings (𝔽_p with a runtime prime) cannot produce a
//! zero out of thin air.

use std::fmt::{self, Debug, Display};
use std::ops::{AddAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Runtime tag naming a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingTag {
    Integers,
    PrimeField(u32),
}

impl Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integers => write!(f, "Z"),
            RingTag::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// Ring descriptor: builds constants for its element type.
pub trait CoeffRing: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    type Elem: Coefficient<Ring = Self>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn int(&self, value: i64) -> Self::Elem;
    fn tag(&self) -> RingTag;
}

/// Scalar type usable as a Laurent-polynomial coefficient.
pub trait Coefficient:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Neg<Output = Self>
{
    type Ring: CoeffRing<Elem = Self>;

    fn ring(&self) -> Self::Ring;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn mul_ref(&self, other: &Self) -> Self;

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self += &prod;
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        let prod = a.mul_ref(b);
        *self -= &prod;
    }

    fn is_unit(&self) -> bool;

    /// Exact quotient in the coefficient ring, `None` if `divisor` does not divide.
    fn div_exact(&self, divisor: &Self) -> Option<Self>;

    /// The unit `u` such that `u * self` is the canonical associate
    /// (positive over ℤ, one over a field). `self` must be nonzero.
    fn canonical_unit(&self) -> Self;

    /// True when `self` is negative in the sense used for pretty-printing.
    fn prints_negative(&self) -> bool {
        false
    }

    /// Whether the coefficient ring is a field (so `F[t±]` is Euclidean).
    fn is_field() -> bool;

    /// Multiplicative inverse, if one exists.
    fn try_inverse(&self) -> Option<Self>;
}

// ---------------------------------------------------------------------------
// ℤ

/// The ring of integers, backed by arbitrary-precision `BigInt`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn int(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }

    fn tag(&self) -> RingTag {
        RingTag::Integers
    }
}

impl Coefficient for BigInt {
    type Ring = Integers;

    fn ring(&self) -> Integers {
        Integers
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        Zero::is_zero(&r).then_some(q)
    }

    fn canonical_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn prints_negative(&self) -> bool {
        self.is_negative()
    }

    fn is_field() -> bool {
        false
    }

    fn try_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| self.clone())
    }
}

// ---------------------------------------------------------------------------
// 𝔽_p

/// The prime field 𝔽_p. The prime is checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> crate::Result<Self> {
        if !is_prime(p as u64) {
            return Err(crate::Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, value: &BigInt) -> Fp {
        let m = BigInt::from(self.p);
        let r = value.mod_floor(&m);
        let v: u32 = r.try_into().expect("residue fits in u32");
        Fp { value: v, modulus: self.p }
    }

    pub fn elem(&self, value: u64) -> Fp {
        Fp { value: (value % self.p as u64) as u32, modulus: self.p }
    }
}

impl CoeffRing for PrimeField {
    type Elem = Fp;

    fn zero(&self) -> Fp {
        Fp { value: 0, modulus: self.p }
    }

    fn one(&self) -> Fp {
        Fp { value: 1 % self.p, modulus: self.p }
    }

    fn int(&self, value: i64) -> Fp {
        let v = value.rem_euclid(self.p as i64) as u32;
        Fp { value: v, modulus: self.p }
    }

    fn tag(&self) -> RingTag {
        RingTag::PrimeField(self.p)
    }
}

/// Element of 𝔽_p; carries its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn inverse(&self) -> Fp {
        assert!(self.value != 0, "inverse of zero in F_{}", self.modulus);
        self.pow(self.modulus as u64 - 2)
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp { value: acc as u32, modulus: self.modulus }
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'a> AddAssign<&'a Fp> for Fp {
    fn add_assign(&mut self, rhs: &'a Fp) {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 + rhs.value as u64;
        self.value = (s % self.modulus as u64) as u32;
    }
}

impl<'a> SubAssign<&'a Fp> for Fp {
    fn sub_assign(&mut self, rhs: &'a Fp) {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus as u64;
        self.value = ((self.value as u64 + p - rhs.value as u64) % p) as u32;
    }
}

impl Neg for Fp {
    type Output = Fp;

    fn neg(self) -> Fp {
        let p = self.modulus;
        Fp { value: (p - self.value) % p, modulus: p }
    }
}

impl Coefficient for Fp {
    type Ring = PrimeField;

    fn ring(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn mul_ref(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let v = self.value as u64 * other.value as u64 % self.modulus as u64;
        Fp { value: v as u32, modulus: self.modulus }
    }

    fn is_unit(&self) -> bool {
        self.value != 0
    }

    fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.value == 0 {
            return None;
        }
        Some(self.mul_ref(&divisor.inverse()))
    }

    fn canonical_unit(&self) -> Self {
        self.inverse()
    }

    fn is_field() -> bool {
        true
    }

    fn try_inverse(&self) -> Option<Self> {
        (self.value != 0).then(|| self.inverse())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
