//! The group law on the Jacobian in the large, medium and small models.
//!
//! A point is the class `[D - D0]` of an effective divisor `D` of degree
//! `d0`, stored as `W_D = H^0(L - D)`. There is no reduced form: two points
//! are compared with [`equal`]. Every model implements addflip
//! `(x, y) -> -(x + y)` and negation directly; addition and subtraction are
//! built from them.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveModel, HyperellipticCurve, ModelKind, SectionRing};
use crate::divisor::{
    add_v1, divide_span, flip_span, membership, mul_section, mul_span, DivisorRep, SectionChoice,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

/// The class `[D - D0]`, represented by `W_D` inside `V = H^0(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianPoint {
    kind: ModelKind,
    w: Subspace,
}

impl JacobianPoint {
    /// Wraps `w` after checking it has codimension `d0` in `V`. Does not run
    /// the membership test; see [`membership_point`].
    pub fn new(c: &CurveModel, w: Subspace) -> Result<Self> {
        if w.ambient_dim() != c.dim_v() {
            return Err(Error::AmbientMismatch(w.ambient_dim(), c.dim_v()));
        }
        if w.codim() != c.d0() as usize {
            return Err(Error::DegreeMismatch {
                claimed: c.d0() as usize,
                codim: w.codim(),
            });
        }
        Ok(Self { kind: c.kind(), w })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn w(&self) -> &Subspace {
        &self.w
    }

    pub fn to_divisor(&self, c: &CurveModel) -> Result<DivisorRep> {
        DivisorRep::new(c, c.ambient_m(), c.d0() as usize, self.w.clone())
    }

    pub fn to_file(&self, c: &CurveModel) -> PointFile {
        PointFile {
            kind: self.kind,
            ambient_m: c.ambient_m(),
            degree: c.d0() as usize,
            basis: self.w.basis().to_rows(),
        }
    }

    pub fn from_file(c: &CurveModel, file: &PointFile) -> Result<Self> {
        if file.kind != c.kind() {
            return Err(Error::ModelMismatch(format!(
                "point is for the {} model, curve is {}",
                file.kind,
                c.kind()
            )));
        }
        if file.ambient_m != c.ambient_m() || file.degree != c.d0() as usize {
            return Err(Error::Format("point degree or ambient does not match the curve".into()));
        }
        let m = Matrix::from_rows(c.field(), c.dim_v(), &file.basis)?;
        Self::new(c, Subspace::from_rref(m)?)
    }
}

/// On-disk point: the divisor data plus the model it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFile {
    pub kind: ModelKind,
    pub ambient_m: u32,
    pub degree: usize,
    pub basis: Vec<Vec<u64>>,
}

fn check(c: &CurveModel, x: &JacobianPoint) -> Result<()> {
    if x.kind != c.kind() {
        return Err(Error::ModelMismatch(format!(
            "point is for the {} model, curve is {}",
            x.kind,
            c.kind()
        )));
    }
    if x.w.ambient_dim() != c.dim_v() {
        return Err(Error::AmbientMismatch(x.w.ambient_dim(), c.dim_v()));
    }
    Ok(())
}

fn point(c: &CurveModel, w: Subspace) -> Result<JacobianPoint> {
    JacobianPoint::new(c, w)
}

pub fn zero(c: &CurveModel) -> JacobianPoint {
    JacobianPoint {
        kind: c.kind(),
        w: c.w_d0().clone(),
    }
}

/// Dimension of `W_{D'+E}` where `(f) = D + D'` for the first basis
/// vector `f` of `W_D`: it is 1 when `[D] = [E]` and 0 otherwise.
pub fn equal_dim(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<usize> {
    check(c, x)?;
    check(c, y)?;
    let m = c.ambient_m();
    let f = SectionChoice::First.pick(&x.w)?;
    let t = mul_section(c, m, &f, m, &y.w)?;
    Ok(divide_span(c, &t, m, &x.w, m)?.dim())
}

pub fn equal(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<bool> {
    match equal_dim(c, x, y)? {
        0 => Ok(false),
        1 => Ok(true),
        d => Err(Error::Inconsistent(format!(
            "equality space has dimension {d}; inputs are not points of the Jacobian"
        ))),
    }
}

/// `-(x + y)`.
pub fn addflip(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    check(c, x)?;
    check(c, y)?;
    match c.kind() {
        ModelKind::Large => addflip_large(c, x, y, true),
        ModelKind::Medium => addflip_medium(c, x, y),
        ModelKind::Small => addflip_small(c, x, y),
    }
}

/// Large-model addflip that always adds the divisors through `H^0(2L)`,
/// skipping the intersection shortcut for disjoint supports.
pub fn addflip_general(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    check(c, x)?;
    check(c, y)?;
    if c.kind() != ModelKind::Large {
        return addflip(c, x, y);
    }
    addflip_large(c, x, y, false)
}

fn addflip_large(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint, shortcut: bool) -> Result<JacobianPoint> {
    let d0 = c.d0() as usize;
    let sum = match shortcut {
        true => Some(x.w.intersect(&y.w)?).filter(|w| w.codim() == 2 * d0),
        false => None,
    };
    let sum = match sum {
        Some(w) => w,
        None => add_v1(c, &x.to_divisor(c)?, &y.to_divisor(c)?)?.into_subspace(),
    };
    let f = SectionChoice::First.pick(&sum)?;
    point(c, flip_span(c, 3, &sum, &f)?)
}

fn addflip_medium(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    // H^0(4D0 - D1 - D2), then H^0(3D0 - D1 - D2) by dividing out H^0(D0)
    let t4 = mul_span(c, 2, &x.w, 2, &y.w)?;
    let h3 = divide_span(c, &t4, 1, &c.full_space(1)?, 3)?;
    // (f) = D1 + D2 + E as a section of 3D0
    let f = SectionChoice::First.pick(&h3)?;
    let t5 = mul_section(c, 3, &f, 2, &c.full_space(2)?)?;
    point(c, divide_span(c, &t5, 3, &h3, 2)?)
}

fn addflip_small(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    let t6 = mul_span(c, 3, &x.w, 3, &y.w)?;
    let h3 = divide_span(c, &t6, 3, &c.full_space(3)?, 3)?;
    let h4 = divide_span(c, &t6, 2, &c.full_space(2)?, 4)?;
    let f = SectionChoice::First.pick(&h3)?;
    let t7 = mul_section(c, 3, &f, 4, &c.full_space(4)?)?;
    point(c, divide_span(c, &t7, 4, &h4, 3)?)
}

/// `-x`.
pub fn negate(c: &CurveModel, x: &JacobianPoint) -> Result<JacobianPoint> {
    check(c, x)?;
    match c.kind() {
        ModelKind::Large => {
            // H^0(2D0 - D), then (f) = D + E as a section of 2D0
            let h2 = divide_span(c, &x.w, 1, &c.full_space(1)?, 2)?;
            let f = SectionChoice::First.pick(&h2)?;
            let t5 = mul_section(c, 2, &f, 3, &c.full_space(3)?)?;
            point(c, divide_span(c, &t5, 2, &h2, 3)?)
        }
        ModelKind::Medium => {
            let f = SectionChoice::First.pick(&x.w)?;
            point(c, flip_span(c, 2, &x.w, &f)?)
        }
        ModelKind::Small => {
            // up to H^0(5D0 - D), down to H^0(2D0 - D)
            let t5 = mul_span(c, 2, &c.full_space(2)?, 3, &x.w)?;
            let h2 = divide_span(c, &t5, 3, &c.full_space(3)?, 2)?;
            let f = SectionChoice::First.pick(&h2)?;
            let t6 = mul_section(c, 2, &f, 4, &c.full_space(4)?)?;
            point(c, divide_span(c, &t6, 3, &x.w, 3)?)
        }
    }
}

pub fn add(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    negate(c, &addflip(c, x, y)?)
}

/// `x - y` as `-(-x + y)`, with a single negation.
pub fn sub(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    addflip(c, &negate(c, x)?, y)
}

/// Large-model subtraction that folds the negation of `x` into the
/// following addflip.
pub fn sub_streamlined(c: &CurveModel, x: &JacobianPoint, y: &JacobianPoint) -> Result<JacobianPoint> {
    check(c, x)?;
    check(c, y)?;
    if c.kind() != ModelKind::Large {
        return Err(Error::ModelMismatch("streamlined subtraction is for the large model".into()));
    }
    let h2 = divide_span(c, &x.w, 1, &c.full_space(1)?, 2)?;
    let f = SectionChoice::First.pick(&h2)?;
    // H^0(5D0 - D1 - D1' - D2), then H^0(3D0 - D1' - D2)
    let t5 = mul_section(c, 2, &f, 3, &y.w)?;
    let big = divide_span(c, &t5, 2, &h2, 3)?;
    let g = SectionChoice::First.pick(&big)?;
    point(c, flip_span(c, 3, &big, &g)?)
}

/// Whether `w` (of codimension `d0`) represents a point.
pub fn membership_point(c: &CurveModel, w: &Subspace) -> Result<bool> {
    membership_point_with(c, w, SectionChoice::First)
}

pub fn membership_point_with(c: &CurveModel, w: &Subspace, choice: SectionChoice) -> Result<bool> {
    let d0 = c.d0() as usize;
    if w.ambient_dim() != c.dim_v() {
        return Err(Error::AmbientMismatch(w.ambient_dim(), c.dim_v()));
    }
    if w.codim() != d0 {
        return Err(Error::DegreeMismatch {
            claimed: d0,
            codim: w.codim(),
        });
    }
    match c.kind() {
        ModelKind::Large | ModelKind::Medium => membership(c, c.ambient_m(), w, d0, choice),
        ModelKind::Small => {
            let f = choice.pick(w)?;
            let plus = mul_section(c, 3, &f, 4, &c.full_space(4)?)?;
            let w4 = divide_span(c, &plus, 3, w, 4)?;
            Ok(w4.codim() == 2 * d0)
        }
    }
}

/// `H^0(D1 - D0)` for effective `D1`, `D0` given in the same ambient index
/// `m` (`L = m D0` for the ring's basepoint). Returns its dimension and, if
/// nonzero, `W_E` for an effective `E ~ D1 - D0`. The ring needs the tables
/// `(m, m)` and `(m, 2m)`.
pub fn riemann_roch(
    ring: &SectionRing,
    d1: &DivisorRep,
    d0: &DivisorRep,
    choice: SectionChoice,
) -> Result<(usize, Option<DivisorRep>)> {
    let m = d1.ambient_m();
    if d0.ambient_m() != m {
        return Err(Error::AmbientMismatch(d1.w().ambient_dim(), d0.w().ambient_dim()));
    }
    let n = (m * ring.d0()) as usize;
    let g = ring.genus() as usize;
    for d in [d1.degree(), d0.degree()] {
        if d < 2 * g + 1 || d + 2 * g + 1 > n {
            return Err(Error::Precondition(format!(
                "Riemann-Roch needs degrees in [2g + 1, N - 2g - 1], got {d}"
            )));
        }
    }
    let f = choice.pick(d1.w())?;
    let d1_flip = flip_span(ring, m, d1.w(), &f)?;
    let t = mul_span(ring, m, &d1_flip, m, d0.w())?;
    let w = divide_span(ring, &t, m, &ring.full_space(m)?, m)?;
    if w.is_zero() {
        return Ok((0, None));
    }
    let h = w.vector(0).to_vec();
    let target = mul_section(ring, m, &h, 2 * m, &ring.full_space(2 * m)?)?;
    let e = divide_span(ring, &target, 2 * m, &t, m)?;
    let deg = d1.degree().checked_sub(d0.degree()).ok_or_else(|| {
        Error::Inconsistent("nonzero H^0(D1 - D0) with deg D1 < deg D0".into())
    })?;
    Ok((w.dim(), Some(DivisorRep::new(ring, m, deg, e)?)))
}

/// Moves `W_D` from `H^0(m D0)` to `H^0(n D0)`: up by multiplying with a
/// full auxiliary space, down by dividing one out, or up then down when no
/// single step has the degrees and tables it needs.
pub fn change_ambient(ring: &SectionRing, d: &DivisorRep, n: u32) -> Result<DivisorRep> {
    let m = d.ambient_m();
    if n == m {
        return Ok(d.clone());
    }
    let d0 = ring.d0() as usize;
    let g = ring.genus() as usize;
    let deg = d.degree();
    let can_up = |from: u32, k: u32| {
        ring.has_table(from, k) && k as usize * d0 > 2 * g && (from as usize * d0) > deg + 2 * g
    };
    let can_down = |to: u32, k: u32| ring.has_table(to, k) && k as usize * d0 >= 2 * g;
    if n > m && can_up(m, n - m) {
        let w = mul_span(ring, m, d.w(), n - m, &ring.full_space(n - m)?)?;
        return DivisorRep::new(ring, n, deg, w);
    }
    if n < m && can_down(n, m - n) {
        let w = divide_span(ring, d.w(), m - n, &ring.full_space(m - n)?, n)?;
        return DivisorRep::new(ring, n, deg, w);
    }
    let mids: BTreeSet<u32> = ring.h0_dims().keys().copied().filter(|&t| t > m.max(n)).collect();
    for t in mids {
        if can_up(m, t - m) && can_down(n, t - n) {
            let w = mul_span(ring, m, d.w(), t - m, &ring.full_space(t - m)?)?;
            let w = divide_span(ring, &w, t - n, &ring.full_space(t - n)?, n)?;
            return DivisorRep::new(ring, n, deg, w);
        }
    }
    Err(Error::Precondition(format!(
        "no route from H^0({m}D0) to H^0({n}D0) for a divisor of degree {deg}"
    )))
}

/// A random point supported on `d0` rational points, together with those
/// points. Needs a hyperelliptic model.
pub fn random_point(c: &CurveModel, rng: &mut impl Rng) -> Result<(JacobianPoint, Vec<(u64, u64)>)> {
    let h = c
        .hyperelliptic()
        .ok_or_else(|| Error::InvalidCurve("random points need the curve equation".into()))?;
    let m = c.ambient_m();
    let mut acc = DivisorRep::empty(c, m)?;
    let mut pts = Vec::new();
    for _ in 0..c.d0() {
        let (x, y) = h.random_rational_point(rng)?;
        let wp = DivisorRep::new(c, m, 1, h.point_subspace(c.degree_n(), x, y)?)?;
        let deg = acc.degree() + 1;
        let union = acc.w().intersect(wp.w())?;
        acc = if union.codim() == deg {
            DivisorRep::new(c, m, deg, union)?
        } else {
            add_v1(c, &acc, &wp)?
        };
        pts.push((x, y));
    }
    Ok((JacobianPoint::new(c, acc.into_subspace())?, pts))
}

/// The three models of one hyperelliptic curve over a shared field, with a
/// ring based at `P_inf` (`d0 = 1`, indices are pole orders) used to move
/// points between them.
#[derive(Clone, Debug)]
pub struct ModelAtlas {
    curve: HyperellipticCurve,
    large: CurveModel,
    medium: CurveModel,
    small: CurveModel,
    bridge: SectionRing,
}

impl ModelAtlas {
    pub fn new(curve: &HyperellipticCurve) -> Result<Self> {
        let g = curve.genus();
        let n_large = 6 * g + 3;
        let n_small = 3 * g + 3;
        let bridge = curve.ring(1, &[(n_large, n_large), (n_large, 2 * n_large), (n_small, 3 * g)])?;
        Ok(Self {
            curve: curve.clone(),
            large: curve.model(ModelKind::Large)?,
            medium: curve.model(ModelKind::Medium)?,
            small: curve.model(ModelKind::Small)?,
            bridge,
        })
    }

    pub fn curve(&self) -> &HyperellipticCurve {
        &self.curve
    }

    pub fn model(&self, kind: ModelKind) -> &CurveModel {
        match kind {
            ModelKind::Large => &self.large,
            ModelKind::Medium => &self.medium,
            ModelKind::Small => &self.small,
        }
    }

    /// `W_{k P_inf}` inside `H^0(pole_bound * P_inf)`.
    fn infinity_multiple(&self, pole_bound: u32, k: u32) -> Result<DivisorRep> {
        let dim = self.bridge.dim(pole_bound)?;
        let keep = self.curve.basis(pole_bound - k).len();
        let w = Subspace::coordinate_prefix(self.bridge.field(), dim, keep);
        DivisorRep::new(&self.bridge, pole_bound, k as usize, w)
    }

    /// Re-expresses `x` in the `target` model.
    pub fn convert(&self, x: &JacobianPoint, target: ModelKind) -> Result<JacobianPoint> {
        let source = self.model(x.kind);
        check(source, x)?;
        if x.kind == target {
            return Ok(x.clone());
        }
        let large = match x.kind {
            ModelKind::Large => x.clone(),
            ModelKind::Medium => self.medium_to_large(x)?,
            ModelKind::Small => self.small_to_large(x)?,
        };
        match target {
            ModelKind::Large => Ok(large),
            ModelKind::Medium => self.large_to_medium(&large),
            ModelKind::Small => self.large_to_small(&large),
        }
    }

    // Large and medium share D0 = (2g+1) P_inf; only L changes.
    fn large_to_medium(&self, x: &JacobianPoint) -> Result<JacobianPoint> {
        let c = &self.large;
        let w = divide_span(c, &x.w, 1, &c.full_space(1)?, 2)?;
        JacobianPoint::new(&self.medium, w)
    }

    fn medium_to_large(&self, x: &JacobianPoint) -> Result<JacobianPoint> {
        let c = &self.large;
        let w = mul_span(c, 2, &x.w, 1, &c.full_space(1)?)?;
        JacobianPoint::new(c, w)
    }

    /// `[D - (2g+1) P_inf] = [E - (g+1) P_inf]` with `E ~ D + (g+1) P_inf - (2g+1) P_inf`,
    /// found as a Riemann-Roch space.
    fn large_to_small(&self, x: &JacobianPoint) -> Result<JacobianPoint> {
        let g = self.curve.genus();
        let n = 6 * g + 3;
        let b = &self.bridge;
        let d = DivisorRep::new(b, n, (2 * g + 1) as usize, x.w.clone())?;
        let d1 = add_v1(b, &d, &self.infinity_multiple(n, g + 1)?)?;
        let base = self.infinity_multiple(n, 2 * g + 1)?;
        for attempt in 0..8u64 {
            let choice = match attempt {
                0 => SectionChoice::First,
                k => SectionChoice::Seeded(k),
            };
            if let (_, Some(e)) = riemann_roch(b, &d1, &base, choice)? {
                let e_small = change_ambient(b, &e, 3 * g + 3)?;
                return JacobianPoint::new(&self.small, e_small.into_subspace());
            }
        }
        Err(Error::NotRepresentable((g + 1) as usize))
    }

    /// `[E - (g+1) P_inf] = [(E + g P_inf) - (2g+1) P_inf]`.
    fn small_to_large(&self, x: &JacobianPoint) -> Result<JacobianPoint> {
        let g = self.curve.genus();
        let n = 6 * g + 3;
        let b = &self.bridge;
        let e = DivisorRep::new(b, 3 * g + 3, (g + 1) as usize, x.w.clone())?;
        let e_up = change_ambient(b, &e, n)?;
        let d = add_v1(b, &e_up, &self.infinity_multiple(n, g)?)?;
        JacobianPoint::new(&self.large, d.into_subspace())
    }
}

/// Free-function form of [`ModelAtlas::convert`].
pub fn convert_model(atlas: &ModelAtlas, x: &JacobianPoint, target: ModelKind) -> Result<JacobianPoint> {
    atlas.convert(x, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HyperellipticSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn curve() -> HyperellipticCurve {
        HyperellipticCurve::new(&HyperellipticSpec::new(101, vec![1, 3, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn zero_behaves() {
        for kind in ModelKind::ALL {
            let c = curve().model(kind).unwrap();
            let z = zero(&c);
            assert!(equal(&c, &z, &z).unwrap(), "{kind}");
            assert!(equal(&c, &negate(&c, &z).unwrap(), &z).unwrap(), "{kind}");
            assert!(equal(&c, &addflip(&c, &z, &z).unwrap(), &z).unwrap(), "{kind}");
            assert!(membership_point(&c, c.w_d0()).unwrap(), "{kind}");
        }
    }

    #[test]
    fn basic_identities_each_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in ModelKind::ALL {
            let c = curve().model(kind).unwrap();
            let z = zero(&c);
            for _ in 0..3 {
                let (x, _) = random_point(&c, &mut rng).unwrap();
                let (y, _) = random_point(&c, &mut rng).unwrap();
                assert!(membership_point(&c, x.w()).unwrap());
                assert!(equal(&c, &add(&c, &x, &z).unwrap(), &x).unwrap(), "{kind}");
                assert!(equal(&c, &sub(&c, &x, &x).unwrap(), &z).unwrap(), "{kind}");
                let nx = negate(&c, &x).unwrap();
                assert!(equal(&c, &negate(&c, &nx).unwrap(), &x).unwrap(), "{kind}");
                assert!(equal(&c, &addflip(&c, &x, &z).unwrap(), &nx).unwrap(), "{kind}");
                let a = addflip(&c, &x, &y).unwrap();
                let b = addflip(&c, &y, &x).unwrap();
                assert!(equal(&c, &a, &b).unwrap(), "{kind}");
                assert!(equal(&c, &a, &negate(&c, &add(&c, &x, &y).unwrap()).unwrap()).unwrap());
                assert!(!equal(&c, &x, &nx).unwrap() || equal(&c, &add(&c, &x, &x).unwrap(), &z).unwrap());
            }
        }
    }

    #[test]
    fn streamlined_subtraction_agrees() {
        let c = curve().model(ModelKind::Large).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let (x, _) = random_point(&c, &mut rng).unwrap();
            let (y, _) = random_point(&c, &mut rng).unwrap();
            let s1 = sub(&c, &x, &y).unwrap();
            let s2 = sub_streamlined(&c, &x, &y).unwrap();
            assert!(equal(&c, &s1, &s2).unwrap());
            assert!(equal(&c, &addflip_general(&c, &x, &y).unwrap(), &addflip(&c, &x, &y).unwrap()).unwrap());
        }
    }

    #[test]
    fn conversions_round_trip() {
        let atlas = ModelAtlas::new(&curve()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for kind in ModelKind::ALL {
            let c = atlas.model(kind);
            let z = atlas.convert(&zero(atlas.model(ModelKind::Large)), kind).unwrap();
            assert!(equal(c, &z, &zero(c)).unwrap(), "{kind}");
        }
        let large = atlas.model(ModelKind::Large);
        for _ in 0..3 {
            let (x, _) = random_point(large, &mut rng).unwrap();
            let m = atlas.convert(&x, ModelKind::Medium).unwrap();
            let s = atlas.convert(&m, ModelKind::Small).unwrap();
            assert!(membership_point(atlas.model(ModelKind::Small), s.w()).unwrap());
            let back = atlas.convert(&s, ModelKind::Large).unwrap();
            assert!(equal(large, &x, &back).unwrap());
        }
    }

    #[test]
    fn change_ambient_round_trip() {
        let c = curve().model_with_tables(ModelKind::Large, &[(3, 6)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (x, _) = random_point(&c, &mut rng).unwrap();
        let d = x.to_divisor(&c).unwrap();
        let up = change_ambient(&c, &d, 5).unwrap();
        assert_eq!(up.w().codim(), 5);
        let down = change_ambient(&c, &up, 3).unwrap();
        assert_eq!(down, d);
        let empty = DivisorRep::empty(&c, 3).unwrap();
        assert!(change_ambient(&c, &empty, 2).unwrap().w().is_full());
        assert!(change_ambient(&c, &empty, 5).unwrap().w().is_full());
    }

    #[test]
    fn riemann_roch_identity_case() {
        let c = curve().model_with_tables(ModelKind::Large, &[(3, 6)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (x, _) = random_point(&c, &mut rng).unwrap();
        let d = x.to_divisor(&c).unwrap();
        let (dim, e) = riemann_roch(&c, &d, &d, SectionChoice::First).unwrap();
        assert_eq!(dim, 1);
        assert!(e.unwrap().w().is_full());
    }

    #[test]
    fn point_file_roundtrip() {
        let c = curve().model(ModelKind::Medium).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (x, _) = random_point(&c, &mut rng).unwrap();
        assert_eq!(JacobianPoint::from_file(&c, &x.to_file(&c)).unwrap(), x);
        let l = curve().model(ModelKind::Large).unwrap();
        assert!(matches!(
            JacobianPoint::from_file(&l, &x.to_file(&c)),
            Err(Error::ModelMismatch(_))
        ));
    }

    #[test]
    fn rescaling_gives_identical_point() {
        let c = curve().model(ModelKind::Small).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (x, _) = random_point(&c, &mut rng).unwrap();
        let scalars: Vec<u64> = (0..x.w().dim()).map(|_| rng.gen_range(1..101)).collect();
        let y = JacobianPoint::new(&c, x.w().rescaled(&scalars)).unwrap();
        assert_eq!(x, y);
    }
}
