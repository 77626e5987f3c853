//! Dense univariate polynomials over GF(p), coefficients in ascending order.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &PrimeField, coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &PrimeField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    pub fn constant(field: &PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - r`
    pub fn linear_root(field: &PrimeField, r: u64) -> Self {
        Self::new(field, vec![field.neg_raw(r % field.modulus()), 1])
    }

    pub fn monomial(field: &PrimeField, deg: usize) -> Self {
        let mut c = vec![0; deg + 1];
        c[deg] = 1;
        Self::new(field, c)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, c)
    }

    pub fn neg(&self) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.neg(a)).collect();
        Poly::new(&self.field, c)
    }

    pub fn scale(&self, s: u64) -> Poly {
        let c = self.coeffs.iter().map(|&a| self.field.mul(a, s)).collect();
        Poly::new(&self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = self.field.add(c[i + j], self.field.mul(a, b));
            }
        }
        Poly::new(&self.field, c)
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let inv_lead = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{self:?} not divisible by {divisor:?}")));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(self.leading())?))
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, i as u64 % f.modulus()))
            .collect();
        Poly::new(f, c)
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic
    /// (or zero when both inputs are zero).
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = f.inv(r0.leading())?;
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        Ok(self.xgcd(other)?.0)
    }

    /// `gcd(f, f') = 1`. Constants count as squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                if d.is_zero() {
                    return false;
                }
                matches!(self.gcd(&d).map(|g| g.degree()), Ok(Some(0)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let f = gf(7);
        let a = Poly::new(&f, vec![1, 2, 3]);
        let b = Poly::new(&f, vec![6, 1]);
        assert_eq!(a.add(&b), Poly::new(&f, vec![0, 3, 3]));
        assert_eq!(a.sub(&a), Poly::zero(&f));
        assert_eq!(a.mul(&b), Poly::new(&f, vec![6, 13 % 7, 20 % 7, 3]));
        assert_eq!(Poly::new(&f, vec![0, 0, 0]).degree(), None);
    }

    #[test]
    fn division_identity() {
        let f = gf(101);
        let a = Poly::new(&f, vec![5, 0, 3, 9, 1, 77, 2]);
        let b = Poly::new(&f, vec![4, 1, 8]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(a.div_rem(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn xgcd_bezout() {
        let f = gf(101);
        let common = Poly::new(&f, vec![3, 1]);
        let a = common.mul(&Poly::new(&f, vec![1, 5, 1]));
        let b = common.mul(&Poly::new(&f, vec![9, 0, 0, 1]));
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(g, common);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn squarefree_detection() {
        let f = gf(7);
        assert!(Poly::new(&f, vec![1, 0, 0, 0, 0, 1]).is_squarefree());
        let sq = Poly::new(&f, vec![1, 1]).mul(&Poly::new(&f, vec![1, 1]));
        assert!(!sq.mul(&Poly::new(&f, vec![2, 0, 1])).is_squarefree());
        // x^7 - x over GF(7) splits into distinct linear factors
        let mut c = vec![0; 8];
        c[7] = 1;
        c[1] = 6;
        assert!(Poly::new(&f, c).is_squarefree());
    }

    #[test]
    fn eval_and_derivative() {
        let f = gf(7);
        let p = Poly::new(&f, vec![1, 0, 0, 0, 0, 1]);
        assert_eq!(p.eval(1), 2);
        assert_eq!(p.derivative(), Poly::new(&f, vec![0, 0, 0, 0, 5]));
    }
}
