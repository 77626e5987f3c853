//! Mumford representation and Cantor's algorithm on `y^2 = f(x)`, used as an
//! independent check on the subspace arithmetic, and the bridge from a
//! Mumford pair `(a, b)` to the subspace `W_D`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::jacobian::{equal, JacobianPoint};
use crate::linalg::{Matrix, Subspace};
use crate::poly::Poly;

/// The divisor `div(a, y - b) - deg(a) P_inf`: `a` monic, `deg b < deg a`,
/// `b^2 = f mod a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDivisor {
    pub a: Poly,
    pub b: Poly,
}

/// Text form: coefficient lists in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MumfordFile {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl MumfordDivisor {
    pub fn identity(curve: &HyperellipticCurve) -> Self {
        let f = curve.field();
        Self {
            a: Poly::one(f),
            b: Poly::zero(f),
        }
    }

    /// The class of `P - P_inf` for an affine point `P = (x, y)`.
    pub fn from_point(curve: &HyperellipticCurve, x: u64, y: u64) -> Result<Self> {
        if !curve.is_on_curve(x, y) {
            return Err(Error::InvalidMumford(format!("({x}, {y}) is not on the curve")));
        }
        let f = curve.field();
        Ok(Self {
            a: Poly::linear_root(f, x),
            b: Poly::constant(f, y),
        })
    }

    pub fn new(curve: &HyperellipticCurve, a: Poly, b: Poly) -> Result<Self> {
        let d = Self { a, b };
        d.validate(curve)?;
        Ok(d)
    }

    pub fn is_identity(&self) -> bool {
        self.a.degree() == Some(0)
    }

    pub fn validate(&self, curve: &HyperellipticCurve) -> Result<()> {
        if !self.a.is_monic() {
            return Err(Error::InvalidMumford("a must be monic".into()));
        }
        let da = self.a.degree().unwrap_or(0);
        if !self.b.is_zero() && self.b.degree().unwrap_or(0) >= da {
            return Err(Error::InvalidMumford("deg b must be below deg a".into()));
        }
        if !self.b.mul(&self.b).sub(curve.f()).rem(&self.a)?.is_zero() {
            return Err(Error::InvalidMumford("b^2 != f mod a".into()));
        }
        Ok(())
    }

    pub fn is_reduced(&self, curve: &HyperellipticCurve) -> bool {
        self.a.degree().unwrap_or(0) <= curve.genus() as usize
    }

    pub fn to_file(&self) -> MumfordFile {
        MumfordFile {
            a: self.a.coeffs().to_vec(),
            b: self.b.coeffs().to_vec(),
        }
    }

    pub fn from_file(curve: &HyperellipticCurve, file: &MumfordFile) -> Result<Self> {
        let f = curve.field();
        Self::new(curve, Poly::new(f, file.a.clone()), Poly::new(f, file.b.clone()))
    }
}

/// Composition: the semi-reduced sum of two divisors.
pub fn compose(curve: &HyperellipticCurve, x: &MumfordDivisor, y: &MumfordDivisor) -> Result<MumfordDivisor> {
    let (d1, e1, e2) = x.a.xgcd(&y.a)?;
    let (d, c1, c2) = d1.xgcd(&x.b.add(&y.b))?;
    let s1 = c1.mul(&e1);
    let s2 = c1.mul(&e2);
    let a = x.a.mul(&y.a).div_exact(&d.mul(&d))?;
    let num = s1
        .mul(&x.a)
        .mul(&y.b)
        .add(&s2.mul(&y.a).mul(&x.b))
        .add(&c2.mul(&x.b.mul(&y.b).add(curve.f())));
    let b = num.div_exact(&d)?.rem(&a)?;
    Ok(MumfordDivisor { a, b })
}

/// Reduction to `deg a <= g`.
pub fn reduce(curve: &HyperellipticCurve, x: &MumfordDivisor) -> Result<MumfordDivisor> {
    let g = curve.genus() as usize;
    let mut a = x.a.clone();
    let mut b = x.b.rem(&a)?;
    while a.degree().unwrap_or(0) > g {
        let a2 = curve.f().sub(&b.mul(&b)).div_exact(&a)?.monic()?;
        b = b.neg().rem(&a2)?;
        a = a2;
    }
    Ok(MumfordDivisor { a, b })
}

pub fn cantor_add(curve: &HyperellipticCurve, x: &MumfordDivisor, y: &MumfordDivisor) -> Result<MumfordDivisor> {
    x.validate(curve)?;
    y.validate(curve)?;
    reduce(curve, &compose(curve, x, y)?)
}

pub fn cantor_neg(curve: &HyperellipticCurve, x: &MumfordDivisor) -> Result<MumfordDivisor> {
    x.validate(curve)?;
    Ok(MumfordDivisor {
        a: x.a.clone(),
        b: x.b.neg().rem(&x.a)?,
    })
}

/// `n * x` by double-and-add.
pub fn cantor_mul(curve: &HyperellipticCurve, x: &MumfordDivisor, mut n: u64) -> Result<MumfordDivisor> {
    let mut acc = MumfordDivisor::identity(curve);
    let mut base = x.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = cantor_add(curve, &acc, &base)?;
        }
        base = cantor_add(curve, &base, &base)?;
        n >>= 1;
    }
    Ok(acc)
}

/// Sum of `g` random rational points.
pub fn random_mumford(curve: &HyperellipticCurve, rng: &mut impl Rng) -> Result<MumfordDivisor> {
    let mut acc = MumfordDivisor::identity(curve);
    for _ in 0..curve.genus() {
        let (x, y) = curve.random_rational_point(rng)?;
        acc = cantor_add(curve, &acc, &MumfordDivisor::from_point(curve, x, y)?)?;
    }
    Ok(acc)
}

/// Sections of `H^0(pole_bound * P_inf)` vanishing on the affine divisor of
/// `x` and to order `pad` at `P_inf`.
///
/// `P(x) + Q(x) y` vanishes on that divisor iff `P + Q b = 0 mod a`, and the
/// vanishing order at infinity is the gap between `pole_bound` and its pole
/// order, so the answer is a kernel inside a coordinate prefix.
pub fn mumford_subspace(
    curve: &HyperellipticCurve,
    pole_bound: u32,
    x: &MumfordDivisor,
    pad: u32,
) -> Result<Subspace> {
    let f = curve.field();
    let full = curve.basis(pole_bound);
    if pad > pole_bound {
        return Ok(Subspace::zero(f, full.len()));
    }
    let prefix = curve.basis(pole_bound - pad);
    let k = prefix.len();
    let deg_a = x.a.degree().unwrap_or(0);
    let max_x = prefix.iter().map(|m| m.x_pow).max().unwrap_or(0) as usize;
    // x^i mod a for every power we need
    let mut powers = Vec::with_capacity(max_x + 1);
    let mut r = Poly::one(f).rem(&x.a)?;
    for _ in 0..=max_x {
        powers.push(r.clone());
        r = r.mul(&Poly::monomial(f, 1)).rem(&x.a)?;
    }
    let mut cols = Vec::with_capacity(k);
    for m in &prefix {
        let p = &powers[m.x_pow as usize];
        let v = if m.y_pow == 1 { p.mul(&x.b).rem(&x.a)? } else { p.clone() };
        cols.push((0..deg_a).map(|i| v.coeff(i)).collect::<Vec<u64>>());
    }
    let mut data = vec![0u64; deg_a * k];
    for (j, col) in cols.iter().enumerate() {
        for (i, &c) in col.iter().enumerate() {
            data[i * k + j] = c;
        }
    }
    let kernel = Matrix::new(f, deg_a, k, data)?.kernel();
    let rows: Vec<Vec<u64>> = kernel
        .vectors()
        .map(|v| {
            let mut row = v.to_vec();
            row.resize(full.len(), 0);
            row
        })
        .collect();
    if rows.is_empty() {
        return Ok(Subspace::zero(f, full.len()));
    }
    Subspace::from_rows(f, full.len(), &rows)
}

fn curve_of(c: &CurveModel) -> Result<&HyperellipticCurve> {
    c.hyperelliptic()
        .ok_or_else(|| Error::InvalidCurve("the model carries no curve equation".into()))
}

/// The point `[A - deg(a) P_inf]` for the Mumford divisor `(a, b)`, as
/// `W_D` with `D = A + (d0 - deg a) P_inf`.
pub fn to_subspace(c: &CurveModel, x: &MumfordDivisor) -> Result<JacobianPoint> {
    let curve = curve_of(c)?;
    x.validate(curve)?;
    let deg_a = x.a.degree().unwrap_or(0) as u32;
    if deg_a > c.d0() {
        return Err(Error::Precondition(format!(
            "deg a = {deg_a} exceeds the basepoint degree {}",
            c.d0()
        )));
    }
    let w = mumford_subspace(curve, c.degree_n(), x, c.d0() - deg_a)?;
    JacobianPoint::new(c, w)
}

/// Whether `x` and the Mumford divisor `m` name the same class.
pub fn from_point_eq(c: &CurveModel, x: &JacobianPoint, m: &MumfordDivisor) -> Result<bool> {
    equal(c, x, &to_subspace(c, m)?)
}
