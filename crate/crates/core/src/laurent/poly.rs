use std::fmt::{self, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::coeff::{CoeffRing, Coefficient, Fp, Integers, PrimeField, RingTag};
use crate::{Error, Result};

/// Span degree of a Laurent polynomial: highest minus lowest exponent, with an
/// explicit sentinel for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Degree {
    NegInfinity,
    Finite(u64),
}

impl Degree {
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Outcome of a failed exact division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactDivError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
}

/// A Laurent polynomial `Σ c_k t^(offset + k)` with exact coefficients.
///
/// The stored coefficient vector never has a zero at either end; the zero
/// polynomial has an empty vector and offset 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<C: Coefficient> {
    ring: C::Ring,
    offset: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(ring: &C::Ring) -> Self {
        Self { ring: ring.clone(), offset: 0, coeffs: Vec::new() }
    }

    pub fn one(ring: &C::Ring) -> Self {
        Self::monomial(ring.one(), 0)
    }

    pub fn monomial(coeff: C, exponent: i64) -> Self {
        Self::from_coeffs(&coeff.ring(), exponent, vec![coeff])
    }

    /// `t^k`
    pub fn t_power(ring: &C::Ring, exponent: i64) -> Self {
        Self::monomial(ring.one(), exponent)
    }

    pub fn from_coeffs(ring: &C::Ring, offset: i64, coeffs: Vec<C>) -> Self {
        let mut p = Self { ring: ring.clone(), offset, coeffs };
        p.trim();
        p
    }

    /// Coefficients given as machine integers, lowest exponent first.
    pub fn from_i64s(ring: &C::Ring, offset: i64, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| ring.int(c)).collect();
        Self::from_coeffs(ring, offset, coeffs)
    }

    fn trim(&mut self) {
        let end = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        self.coeffs.truncate(end);
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if start > 0 {
            self.coeffs.drain(..start);
            self.offset += start as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    pub fn ring_tag(&self) -> RingTag {
        self.ring.tag()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c·t^k` with `c` nonzero.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exponent(&self) -> i64 {
        self.offset
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i64 - 1)
    }

    /// Coefficients from the lowest exponent upward.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> C {
        let idx = exponent - self.offset;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            self.ring.zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn trailing(&self) -> Option<&C> {
        self.coeffs.first()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn deg_span(&self) -> Degree {
        if self.is_zero() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() as u64 - 1)
        }
    }

    /// Top coefficient is a unit of the coefficient ring.
    pub fn is_monic(&self) -> Result<bool> {
        self.leading().map(Coefficient::is_unit).ok_or(Error::ZeroPolynomial)
    }

    /// Canonical representative of the unit class `{u·t^k · self}`: lowest
    /// exponent 0 and leading coefficient positive (ℤ) or one (field).
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let u = lead.canonical_unit();
                let coeffs = if u.is_one() {
                    self.coeffs.clone()
                } else {
                    self.coeffs.iter().map(|c| c.mul_ref(&u)).collect()
                };
                Self { ring: self.ring.clone(), offset: 0, coeffs }
            }
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.offset == 0 && self.leading().unwrap().canonical_unit().is_one())
    }

    /// Equality up to multiplication by units `±t^k` (or `c·t^k` over a field).
    pub fn unit_equivalent(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { ring: self.ring.clone(), offset: self.offset + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.mul_ref(c)).collect();
        Self::from_coeffs(&self.ring, self.offset, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `t ↦ t⁻¹`.
    pub fn reflect(&self) -> Self {
        match self.high_exponent() {
            None => self.clone(),
            Some(top) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self { ring: self.ring.clone(), offset: -top, coeffs }
            }
        }
    }

    /// Evaluate coefficient-wise image under a ring map.
    pub fn map_coeffs<D: Coefficient>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let coeffs = self.coeffs.iter().map(f).collect();
        LaurentPoly::from_coeffs(ring, self.offset, coeffs)
    }

    /// `self += other * c * t^k`, the inner step of every elimination routine.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &C, k: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let lo = other.offset + k;
        let hi = other.offset + k + other.coeffs.len() as i64 - 1;
        self.reserve_range(lo, hi);
        let base = (lo - self.offset) as usize;
        for (i, oc) in other.coeffs.iter().enumerate() {
            self.coeffs[base + i].add_mul_assign(oc, c);
        }
        self.trim();
    }

    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.offset = lo;
            self.coeffs = vec![self.ring.zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.offset {
            let extra = (self.offset - lo) as usize;
            let mut v = vec![self.ring.zero(); extra];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.offset = lo;
        }
        let top = self.offset + self.coeffs.len() as i64 - 1;
        if hi > top {
            let extra = (hi - top) as usize;
            self.coeffs.extend(std::iter::repeat_n(self.ring.zero(), extra));
        }
    }

    /// Exact quotient `q` with `self = q · divisor` in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> std::result::Result<Self, ExactDivError> {
        if divisor.is_zero() {
            return Err(ExactDivError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if divisor.is_monomial() {
            let c = &divisor.coeffs[0];
            let mut coeffs = Vec::with_capacity(self.coeffs.len());
            for x in &self.coeffs {
                coeffs.push(x.div_exact(c).ok_or(ExactDivError::NotDivisible)?);
            }
            return Ok(Self::from_coeffs(&self.ring, self.offset - divisor.offset, coeffs));
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return Err(ExactDivError::NotDivisible);
        }
        // Both sides have nonzero constant terms after shifting, so divisibility
        // in the Laurent ring is divisibility of the underlying polynomials.
        let n = self.coeffs.len();
        let m = divisor.coeffs.len();
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ring.zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = &rem[i + m - 1];
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(lead).ok_or(ExactDivError::NotDivisible)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j].sub_mul_assign(&q, d);
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(ExactDivError::NotDivisible);
        }
        Ok(Self::from_coeffs(&self.ring, self.offset - divisor.offset, quot))
    }

    /// Serializable `{offset, coeffs}` form.
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            offset: self.offset,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.to_string().parse().expect("integer literal"))
                .collect(),
        }
    }
}

impl LaurentPoly<BigInt> {
    pub fn reduce_mod(&self, field: &PrimeField) -> LaurentPoly<Fp> {
        self.map_coeffs(field, |c| field.reduce(c))
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigInt>()
                    .map_err(|e| Error::InvalidInput(format!("bad coefficient {n}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(&Integers, json.offset, coeffs))
    }
}

impl LaurentPoly<Fp> {
    pub fn from_json(field: &PrimeField, json: &PolyJson) -> Result<Self> {
        let z = LaurentPoly::<BigInt>::from_json(json)?;
        Ok(z.reduce_mod(field))
    }
}

/// JSON form of a polynomial: lowest exponent plus ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub offset: i64,
    pub coeffs: Vec<serde_json::Number>,
}

// ---------------------------------------------------------------------------
// arithmetic

impl<'a, C: Coefficient> Add<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &self.ring.one(), 0);
        out
    }
}

impl<'a, C: Coefficient> Sub<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &-self.ring.one(), 0);
        out
    }
}

impl<'a, C: Coefficient> Mul<&'a LaurentPoly<C>> for &'a LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: &'a LaurentPoly<C>) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(&self.ring);
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j].add_mul_assign(a, b);
            }
        }
        LaurentPoly::from_coeffs(&self.ring, self.offset + rhs.offset, coeffs)
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(Neg::neg).collect();
        LaurentPoly { ring: self.ring, offset: self.offset, coeffs }
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;

    fn neg(self) -> LaurentPoly<C> {
        -self.clone()
    }
}

/// Descending in `t`, e.g. `2*t^2 - 3*t + 2`.
impl<C: Coefficient> Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + i as i64;
            let negative = c.prints_negative();
            let magnitude = if negative { (-c.clone()).to_string() } else { c.to_string() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit_mag = magnitude == "1";
            match e {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit_mag {
                        write!(f, "{magnitude}*")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
