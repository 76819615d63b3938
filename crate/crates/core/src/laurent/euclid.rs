//! Euclidean structure of `F[t, t⁻¹]` for a field `F`, with the span degree as
//! the Euclidean function. Integer coefficients are rejected at runtime.

use super::coeff::{CoeffRing, Coefficient};
use super::poly::LaurentPoly;
use crate::{Error, Result};

fn require_field<C: Coefficient>(p: &LaurentPoly<C>) -> Result<()> {
    if C::is_field() {
        Ok(())
    } else {
        Err(Error::UnsupportedRing(format!(
            "{} is not a field; Euclidean operations need a prime field",
            p.ring_tag()
        )))
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    /// `(q, r)` with `self = q·divisor + r` and `span(r) < span(divisor)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        require_field(self)?;
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ring = self.ring().clone();
        if self.is_zero() {
            return Ok((Self::zero(&ring), Self::zero(&ring)));
        }
        let shift = divisor.low_exponent();
        let d = divisor.coeffs();
        let m = d.len();
        let n = self.coeffs().len();
        if n < m {
            return Ok((Self::zero(&ring), self.clone()));
        }
        let lead_inv = d[m - 1].try_inverse().expect("nonzero field element");
        let mut rem: Vec<C> = self.coeffs().to_vec();
        let mut quot = vec![ring.zero(); n - m + 1];
        for i in (0..=n - m).rev() {
            let top = &rem[i + m - 1];
            if top.is_zero() {
                continue;
            }
            let q = top.mul_ref(&lead_inv);
            for (j, dc) in d.iter().enumerate() {
                rem[i + j].sub_mul_assign(&q, dc);
            }
            quot[i] = q;
        }
        let q = Self::from_coeffs(&ring, self.low_exponent() - shift, quot);
        let r = Self::from_coeffs(&ring, self.low_exponent(), rem);
        Ok((q, r))
    }

    /// Monic gcd, normalized to lowest exponent 0.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        require_field(self)?;
        let mut a = self.normalized();
        let mut b = other.normalized();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.normalized();
        }
        Ok(a.normalized())
    }

    pub fn lcm(&self, other: &Self) -> Result<Self> {
        require_field(self)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring()));
        }
        let g = self.gcd(other)?;
        let prod = self * other;
        Ok(prod.exact_div(&g).expect("gcd divides the product").normalized())
    }
}

/// Univariate gcd over a prime field, unit-normalized.
pub fn gcd_univariate<C: Coefficient>(f: &LaurentPoly<C>, g: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    f.gcd(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{FpPoly, PrimeField};

    fn fp(p: u32, offset: i64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64s(&PrimeField::new(p).unwrap(), offset, c)
    }

    #[test]
    fn gcd_examples() {
        let g = gcd_univariate(&fp(3, 0, &[-1, 0, 1]), &fp(3, 0, &[-1, 1])).unwrap();
        assert_eq!(g, fp(3, 0, &[2, 1]));
        assert_eq!(g.to_string(), "t + 2");
        let f = fp(5, -2, &[3, 1, 4]);
        assert_eq!(gcd_univariate(&f, &FpPoly::zero(f.ring())).unwrap(), f.normalized());
    }

    #[test]
    fn gcd_rejects_integers() {
        let z = crate::laurent::ZPoly::from_i64s(&crate::laurent::Integers, 0, &[1, 1]);
        assert!(matches!(gcd_univariate(&z, &z), Err(Error::UnsupportedRing(_))));
        let f = fp(7, 0, &[1, 2, 1]);
        assert_eq!(gcd_univariate(&f, &fp(7, 3, &[1, 1])).unwrap(), fp(7, 0, &[1, 1]));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = fp(7, -3, &[1, 5, 0, 2, 6, 3]);
        let b = fp(7, 2, &[4, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.deg_span() < b.deg_span());
    }

    #[test]
    fn lcm_of_coprime_is_product() {
        let a = fp(5, 0, &[1, 1]);
        let b = fp(5, 0, &[2, 1]);
        assert_eq!(a.lcm(&b).unwrap(), (&a * &b).normalized());
    }
}
