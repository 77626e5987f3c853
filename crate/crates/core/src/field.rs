//! Prime fields GF(p) with a shared operation counter.
//!
//! Every addition, subtraction, multiplication, negation and inversion
//! performed through a [`PrimeField`] bumps its counter by one. Bulk kernels
//! (row operations in [`crate::linalg`]) charge the counter once per batch
//! with the exact number of element operations they performed, so counts are
//! identical to element-by-element arithmetic.
//!
//! A `PrimeField` is a cheap handle: clones share the modulus and the
//! counter. Increments are atomic, so a field may be shared across threads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

struct Inner {
    p: u64,
    ops: AtomicU64,
}

#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<Inner>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
    }
}

impl Eq for PrimeField {}

impl PrimeField {
    /// Rejects `p = 2` and composite moduli.
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::UnsupportedCharacteristic(2));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                ops: AtomicU64::new(0),
            }),
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.inner.p
    }

    pub fn op_count(&self) -> u64 {
        self.inner.ops.load(Ordering::Relaxed)
    }

    pub fn reset_count(&self) {
        self.inner.ops.store(0, Ordering::Relaxed);
    }

    /// Adds `n` to the operation counter. Used by bulk kernels.
    #[inline]
    pub(crate) fn charge(&self, n: u64) {
        if n > 0 {
            self.inner.ops.fetch_add(n, Ordering::Relaxed);
        }
    }

    pub fn element(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.inner.p,
            field: self.clone(),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        self.element(self.reduce_i64(v))
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        let p = self.inner.p as i128;
        ((v as i128).rem_euclid(p)) as u64
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    // Uncounted primitives, for kernels that charge in bulk.

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= p {
            s.wrapping_sub(p)
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_add(self.inner.p.wrapping_sub(b))
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if p < (1 << 32) {
            (a * b) % p
        } else {
            ((a as u128 * b as u128) % p as u128) as u64
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.inner.p - a
        }
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let p = self.inner.p as i128;
        let (mut r0, mut r1) = (p, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(p) as u64)
    }

    // Counted scalar arithmetic on canonical representatives.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.charge(1);
        self.add_raw(a, b)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.charge(1);
        self.sub_raw(a, b)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.charge(1);
        self.mul_raw(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.charge(1);
        self.neg_raw(a)
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        self.charge(1);
        self.inv_raw(a).ok_or(Error::DivisionByZero)
    }

    /// Square-and-multiply; each multiplication is counted.
    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.inner.p;
        let mut acc = 1 % self.inner.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(a, (self.inner.p - 1) / 2) == 1
    }

    /// A square root of `a` (Tonelli-Shanks), or `None` for non-residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.inner.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.is_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

/// An element of GF(p), always held as its canonical representative.
#[derive(Clone)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.field.modulus())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    fn with(&self, value: u64) -> Self {
        Self {
            value,
            field: self.field.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = self.field.inv(other.value)?;
        Ok(self.with(self.field.mul(self.value, inv)))
    }
}

// Operator forms panic on mismatched fields; use the `try_*` methods to get
// an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field elements from different fields")
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(
            PrimeField::new(2).unwrap_err(),
            Error::UnsupportedCharacteristic(2)
        );
        assert_eq!(PrimeField::new(9).unwrap_err(), Error::NotPrime(9));
        assert_eq!(PrimeField::new(1).unwrap_err(), Error::NotPrime(1));
        assert!(PrimeField::new(3).is_ok());
        assert!(PrimeField::new(18446744073709551557).is_ok());
    }

    #[test]
    fn add_examples() {
        let f = gf(7);
        assert_eq!((f.element(3) + f.element(5)).value(), 1);
        assert_eq!((f.element(0) + f.element(4)).value(), 4);
        assert_eq!((f.element(6) + f.element(1)).value(), 0);
    }

    #[test]
    fn inv_examples() {
        let f = gf(7);
        assert_eq!(f.element(3).inv().unwrap().value(), 5);
        assert_eq!(f.element(1).inv().unwrap().value(), 1);
        assert_eq!(f.element(6).inv().unwrap().value(), 6);
        assert_eq!(f.element(0).inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn mismatched_moduli() {
        let a = gf(7).element(3);
        let b = gf(11).element(3);
        assert_eq!(a.try_add(&b).unwrap_err(), Error::ModulusMismatch(7, 11));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn counter() {
        let f = gf(101);
        f.element(5).try_add(&f.element(7)).unwrap();
        f.reset_count();
        let _ = f.element(3) + f.element(4);
        assert_eq!(f.op_count(), 1);
        f.reset_count();
        let mut x = f.element(2);
        for _ in 0..9 {
            let before = f.op_count();
            x = &x * &f.element(3);
            assert_eq!(f.op_count(), before + 1);
        }
        assert_eq!(f.op_count(), 9);
        let _ = x.inv().unwrap();
        assert_eq!(f.op_count(), 10);
    }

    #[test]
    fn counter_shared_between_clones() {
        let f = gf(13);
        let g = f.clone();
        g.mul(3, 4);
        assert_eq!(f.op_count(), 1);
    }

    #[test]
    fn exhaustive_gf7_axioms() {
        let f = gf(7);
        let e: Vec<_> = (0..7).map(|v| f.element(v)).collect();
        for a in &e {
            if !a.is_zero() {
                assert_eq!((a * &a.inv().unwrap()).value(), 1);
            }
            assert!((a + &(-a)).is_zero());
            for b in &e {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &e {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }

    #[test]
    fn sqrt_all_residues() {
        for p in [7u64, 13, 17, 101, 97] {
            let f = gf(p);
            for a in 0..p {
                match f.sqrt(a) {
                    Some(r) => assert_eq!(f.mul(r, r), a),
                    None => assert!(!f.is_square(a)),
                }
            }
        }
    }

    #[test]
    fn large_modulus_arithmetic() {
        let p = 18446744073709551557u64;
        let f = gf(p);
        let a = p - 1;
        assert_eq!(f.mul(a, a), 1);
        assert_eq!(f.add(a, a), p - 2);
        let x = f.inv(123456789).unwrap();
        assert_eq!(f.mul(x, 123456789), 1);
    }

    #[test]
    fn primality_small() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn gf101_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
                let f = gf(101);
                let (a, b, c) = (f.element(a), f.element(b), f.element(c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a - &b) + &b, a.clone());
                if !a.is_zero() {
                    prop_assert_eq!((&a * &a.inv().unwrap()).value(), 1);
                }
            }
        }
    }
}
