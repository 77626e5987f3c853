//! Coordinatized section spaces `H^0(m D0)` and multiplication tables.
//!
//! A [`SectionRing`] is everything the divisor algorithms know about a
//! curve: the dimension of each `H^0(m D0)` in a fixed basis and the dense
//! tensors `mul_{mn} : H^0(m D0) x H^0(n D0) -> H^0((m+n) D0)`.
//! A [`CurveModel`] adds the choice of ambient bundle (large, medium or small
//! model) and the subspace representing the zero of the Jacobian.
//!
//! The only builder provided is for odd-degree hyperelliptic curves
//! `y^2 = f(x)` with `D0 = d0 * P_inf`. There the basis of `H^0(M P_inf)` is
//! the monomials `x^i y^e` (`e` in {0, 1}) of pole order `2i + e(2g+1) <= M`,
//! sorted by pole order, so `H^0(M' P_inf)` is always a coordinate prefix of
//! `H^0(M P_inf)` for `M' <= M`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{axpy, Matrix, Subspace};
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// `L = 3 D0`, `d0 >= 2g + 1`.
    Large,
    /// `L = 2 D0`, `d0 >= 2g + 1`.
    Medium,
    /// `L = 3 D0`, `d0 = g + 1`.
    Small,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Large, ModelKind::Medium, ModelKind::Small];

    /// `L = ambient_multiple * D0`.
    pub fn ambient_multiple(self) -> u32 {
        match self {
            ModelKind::Large | ModelKind::Small => 3,
            ModelKind::Medium => 2,
        }
    }

    pub fn default_d0(self, genus: u32) -> u32 {
        match self {
            ModelKind::Large | ModelKind::Medium => 2 * genus + 1,
            ModelKind::Small => genus + 1,
        }
    }

    /// Tables every model of this kind carries.
    pub fn required_tables(self) -> &'static [(u32, u32)] {
        match self {
            ModelKind::Large => &[(3, 3), (2, 1), (3, 2)],
            ModelKind::Medium => &[(2, 2), (3, 1), (3, 2), (2, 3), (2, 1)],
            ModelKind::Small => &[(3, 3), (4, 3), (2, 3), (2, 4), (3, 4), (2, 2), (3, 1)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Large => "large",
            ModelKind::Medium => "medium",
            ModelKind::Small => "small",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "large" => Ok(ModelKind::Large),
            "medium" => Ok(ModelKind::Medium),
            "small" => Ok(ModelKind::Small),
            other => Err(Error::Format(format!("unknown model kind '{other}'"))),
        }
    }
}

/// Dense tensor of `mul_{mn}`: entry `(i, j)` holds the coordinates of the
/// product of basis vectors `t_i` of `H^0(m D0)` and `t_j` of `H^0(n D0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    m: u32,
    n: u32,
    dim_m: usize,
    dim_n: usize,
    dim_out: usize,
    data: Vec<u64>,
}

impl MulTable {
    pub fn new(m: u32, n: u32, dim_m: usize, dim_n: usize, dim_out: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != dim_m * dim_n * dim_out {
            return Err(Error::DimensionMismatch(format!(
                "table ({m},{n}) has {} entries, expected {dim_m}x{dim_n}x{dim_out}",
                data.len()
            )));
        }
        Ok(Self {
            m,
            n,
            dim_m,
            dim_n,
            dim_out,
            data,
        })
    }

    pub fn from_tensor(m: u32, n: u32, tensor: &[Vec<Vec<u64>>]) -> Result<Self> {
        let dim_m = tensor.len();
        let dim_n = tensor.first().map_or(0, |r| r.len());
        let dim_out = tensor.first().and_then(|r| r.first()).map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(dim_m * dim_n * dim_out);
        for row in tensor {
            if row.len() != dim_n {
                return Err(Error::Format(format!("ragged tensor in table ({m},{n})")));
            }
            for v in row {
                if v.len() != dim_out {
                    return Err(Error::Format(format!("ragged tensor in table ({m},{n})")));
                }
                data.extend_from_slice(v);
            }
        }
        Self::new(m, n, dim_m, dim_n, dim_out, data)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.dim_m, self.dim_n, self.dim_out)
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[u64] {
        let off = (i * self.dim_n + j) * self.dim_out;
        &self.data[off..off + self.dim_out]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.dim_m)
            .map(|i| (0..self.dim_n).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }

    /// Mutable access, for tests that corrupt tables on purpose.
    pub fn data_mut(&mut self) -> &mut [u64] {
        &mut self.data
    }
}

/// A table looked up in either order.
#[derive(Clone, Copy)]
pub(crate) struct TableView<'a> {
    table: &'a MulTable,
    transposed: bool,
}

impl<'a> TableView<'a> {
    #[inline]
    pub(crate) fn product(&self, i: usize, j: usize) -> &'a [u64] {
        if self.transposed {
            self.table.product(j, i)
        } else {
            self.table.product(i, j)
        }
    }

    pub(crate) fn dim_left(&self) -> usize {
        if self.transposed {
            self.table.dim_n
        } else {
            self.table.dim_m
        }
    }

    pub(crate) fn dim_right(&self) -> usize {
        if self.transposed {
            self.table.dim_m
        } else {
            self.table.dim_n
        }
    }

    pub(crate) fn dim_out(&self) -> usize {
        self.table.dim_out
    }
}

/// Coordinatized spaces `H^0(m D0)` with their multiplication tables.
#[derive(Clone, Debug)]
pub struct SectionRing {
    field: PrimeField,
    genus: u32,
    d0: u32,
    h0_dims: BTreeMap<u32, usize>,
    tables: BTreeMap<(u32, u32), MulTable>,
}

impl SectionRing {
    pub fn new(
        field: &PrimeField,
        genus: u32,
        d0: u32,
        h0_dims: BTreeMap<u32, usize>,
        tables: Vec<MulTable>,
    ) -> Result<Self> {
        if d0 == 0 {
            return Err(Error::InvalidCurve("d0 must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for t in tables {
            for k in [t.m, t.n, t.m + t.n] {
                if !h0_dims.contains_key(&k) {
                    return Err(Error::MissingSpace(k));
                }
            }
            let expect = (h0_dims[&t.m], h0_dims[&t.n], h0_dims[&(t.m + t.n)]);
            if t.shape() != expect {
                return Err(Error::DimensionMismatch(format!(
                    "table ({},{}) has shape {:?}, dimensions say {:?}",
                    t.m,
                    t.n,
                    t.shape(),
                    expect
                )));
            }
            let p = field.modulus();
            if t.data.iter().any(|&v| v >= p) {
                return Err(Error::Format(format!("table ({},{}) has entries outside [0,{p})", t.m, t.n)));
            }
            map.insert((t.m, t.n), t);
        }
        Ok(Self {
            field: field.clone(),
            genus,
            d0,
            h0_dims,
            tables: map,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn d0(&self) -> u32 {
        self.d0
    }

    pub fn h0_dims(&self) -> &BTreeMap<u32, usize> {
        &self.h0_dims
    }

    pub fn tables(&self) -> impl Iterator<Item = &MulTable> {
        self.tables.values()
    }

    pub fn tables_mut(&mut self) -> impl Iterator<Item = &mut MulTable> {
        self.tables.values_mut()
    }

    /// Stored dimension of `H^0(m D0)`.
    pub fn dim(&self, m: u32) -> Result<usize> {
        self.h0_dims.get(&m).copied().ok_or(Error::MissingSpace(m))
    }

    /// Riemann-Roch dimension `m d0 + 1 - g`, valid for `m d0 >= 2g - 1`.
    pub fn h0_dim(&self, m: u32) -> Result<usize> {
        riemann_roch_dim(self.genus, m * self.d0).ok_or(Error::SpecialRange { m })
    }

    pub fn has_table(&self, m: u32, n: u32) -> bool {
        self.tables.contains_key(&(m, n)) || self.tables.contains_key(&(n, m))
    }

    pub(crate) fn table(&self, m: u32, n: u32) -> Result<TableView<'_>> {
        if let Some(t) = self.tables.get(&(m, n)) {
            return Ok(TableView {
                table: t,
                transposed: false,
            });
        }
        if let Some(t) = self.tables.get(&(n, m)) {
            return Ok(TableView {
                table: t,
                transposed: true,
            });
        }
        Err(Error::MissingTable(m, n))
    }

    pub fn full_space(&self, m: u32) -> Result<Subspace> {
        Ok(Subspace::full(&self.field, self.dim(m)?))
    }

    /// Product of `s` in `H^0(m D0)` and `t` in `H^0(n D0)`.
    pub fn multiply(&self, m: u32, s: &[u64], n: u32, t: &[u64]) -> Result<Vec<u64>> {
        let tab = self.table(m, n)?;
        check_len(s, tab.dim_left())?;
        check_len(t, tab.dim_right())?;
        let mut out = vec![0u64; tab.dim_out()];
        for (i, &si) in s.iter().enumerate() {
            if si == 0 {
                continue;
            }
            for (j, &tj) in t.iter().enumerate() {
                if tj == 0 {
                    continue;
                }
                let c = self.field.mul(si, tj);
                axpy(&self.field, &mut out, c, tab.product(i, j));
            }
        }
        Ok(out)
    }

    /// `s * t_j` for every standard basis vector `t_j` of `H^0(n D0)`.
    /// Costs `O(dim^3)` using only the slices `v_{ij}` for fixed `j`.
    pub fn products_with_basis(&self, m: u32, s: &[u64], n: u32) -> Result<Vec<Vec<u64>>> {
        let tab = self.table(m, n)?;
        check_len(s, tab.dim_left())?;
        let mut out = vec![vec![0u64; tab.dim_out()]; tab.dim_right()];
        for (j, w) in out.iter_mut().enumerate() {
            for (i, &si) in s.iter().enumerate() {
                axpy(&self.field, w, si, tab.product(i, j));
            }
        }
        Ok(out)
    }
}

fn check_len(v: &[u64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in a space of dimension {n}",
            v.len()
        )));
    }
    Ok(())
}

/// `deg + 1 - g` when `deg >= 2g - 1`.
pub fn riemann_roch_dim(genus: u32, deg: u32) -> Option<usize> {
    if deg + 1 >= 2 * genus {
        Some((deg + 1 - genus) as usize)
    } else {
        None
    }
}

/// Curve parameters for `y^2 = f(x)`: the prime and the coefficients of `f`
/// in ascending order of degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticSpec {
    pub p: u64,
    pub f_coeffs: Vec<u64>,
}

impl HyperellipticSpec {
    pub fn new(p: u64, f_coeffs: Vec<u64>) -> Self {
        Self { p, f_coeffs }
    }
}

/// A validated hyperelliptic curve `y^2 = f(x)` with `f` monic, squarefree,
/// of odd degree `2g + 1`.
#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    field: PrimeField,
    f: Poly,
    genus: u32,
}

/// Basis monomial `x^x_pow * y^y_pow` with its pole order at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub x_pow: u32,
    pub y_pow: u32,
    pub pole: u32,
}

impl HyperellipticCurve {
    pub fn new(spec: &HyperellipticSpec) -> Result<Self> {
        let field = PrimeField::new(spec.p)?;
        Self::with_field(&field, &spec.f_coeffs)
    }

    pub fn with_field(field: &PrimeField, f_coeffs: &[u64]) -> Result<Self> {
        let f = Poly::new(field, f_coeffs.to_vec());
        let deg = f
            .degree()
            .ok_or_else(|| Error::InvalidCurve("f is zero".into()))?;
        if deg < 3 || deg % 2 == 0 {
            return Err(Error::InvalidCurve(format!("deg f = {deg} must be odd and at least 3")));
        }
        if !f.is_monic() {
            return Err(Error::InvalidCurve("f must be monic".into()));
        }
        if !f.is_squarefree() {
            return Err(Error::SingularCurve);
        }
        Ok(Self {
            field: field.clone(),
            f,
            genus: (deg as u32 - 1) / 2,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn spec(&self) -> HyperellipticSpec {
        HyperellipticSpec::new(self.field.modulus(), self.f.coeffs().to_vec())
    }

    /// Basis of `H^0(pole_bound * P_inf)` sorted by pole order.
    pub fn basis(&self, pole_bound: u32) -> Vec<Monomial> {
        monomial_basis(self.genus, pole_bound)
    }

    /// Values of the basis of `H^0(pole_bound * P_inf)` at the affine point `(x, y)`.
    pub fn evaluate_basis(&self, pole_bound: u32, x: u64, y: u64) -> Vec<u64> {
        let f = &self.field;
        self.basis(pole_bound)
            .iter()
            .map(|m| {
                let v = f.pow(x, m.x_pow as u64);
                if m.y_pow == 1 {
                    f.mul(v, y)
                } else {
                    v
                }
            })
            .collect()
    }

    /// Sections of `H^0(pole_bound * P_inf)` vanishing at `(x, y)`.
    pub fn point_subspace(&self, pole_bound: u32, x: u64, y: u64) -> Result<Subspace> {
        let row = self.evaluate_basis(pole_bound, x, y);
        Ok(Matrix::from_rows(&self.field, row.len(), &[row])?.kernel())
    }

    pub fn is_on_curve(&self, x: u64, y: u64) -> bool {
        self.field.mul(y, y) == self.f.eval(x)
    }

    /// A random affine rational point: random `x` until `f(x)` is a square,
    /// then a random square root.
    pub fn random_rational_point(&self, rng: &mut impl Rng) -> Result<(u64, u64)> {
        let p = self.field.modulus();
        for _ in 0..(4 * p.min(1 << 16) + 64) {
            let x = rng.gen_range(0..p);
            if let Some(y) = self.field.sqrt(self.f.eval(x)) {
                let y = if rng.gen::<bool>() { self.field.neg(y) } else { y };
                return Ok((x, y));
            }
        }
        Err(Error::NoRationalPoint)
    }

    /// Raw tensor of `H^0(a P_inf) x H^0(b P_inf) -> H^0((a+b) P_inf)`.
    pub fn pole_table(&self, a: u32, b: u32) -> (usize, usize, usize, Vec<u64>) {
        let left = self.basis(a);
        let right = self.basis(b);
        let out = self.basis(a + b);
        let mut index = vec![usize::MAX; (a + b + 1) as usize];
        for (k, mono) in out.iter().enumerate() {
            index[mono.pole as usize] = k;
        }
        let y_shift = 2 * self.genus + 1;
        let dim_out = out.len();
        let mut data = vec![0u64; left.len() * right.len() * dim_out];
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                let v = &mut data[(i * right.len() + j) * dim_out..][..dim_out];
                let xp = l.x_pow + r.x_pow;
                match l.y_pow + r.y_pow {
                    0 => v[index[(2 * xp) as usize]] = 1,
                    1 => v[index[(2 * xp + y_shift) as usize]] = 1,
                    _ => {
                        // y^2 = f(x)
                        for (k, &c) in self.f.coeffs().iter().enumerate() {
                            if c != 0 {
                                v[index[(2 * (xp + k as u32)) as usize]] = c;
                            }
                        }
                    }
                }
            }
        }
        (left.len(), right.len(), dim_out, data)
    }

    /// Section ring with basepoint `d0 * P_inf` carrying the given tables.
    pub fn ring(&self, d0: u32, pairs: &[(u32, u32)]) -> Result<SectionRing> {
        let mut dims = BTreeMap::new();
        let mut tables = Vec::new();
        for &(m, n) in pairs {
            for k in [m, n, m + n] {
                dims.insert(k, self.basis(k * d0).len());
            }
            let (dm, dn, dout, data) = self.pole_table(m * d0, n * d0);
            tables.push(MulTable::new(m, n, dm, dn, dout, data)?);
        }
        SectionRing::new(&self.field, self.genus, d0, dims, tables)
    }

    pub fn model(&self, kind: ModelKind) -> Result<CurveModel> {
        self.model_with_tables(kind, &[])
    }

    /// Model of the given kind carrying extra tables beyond the required
    /// set (for example `(3, 6)` for Riemann-Roch computations in the large
    /// model).
    pub fn model_with_tables(&self, kind: ModelKind, extra: &[(u32, u32)]) -> Result<CurveModel> {
        let d0 = kind.default_d0(self.genus);
        let mut pairs: Vec<(u32, u32)> = kind.required_tables().to_vec();
        for &e in extra {
            if !pairs.contains(&e) {
                pairs.push(e);
            }
        }
        let a = kind.ambient_multiple();
        let mut ring = self.ring(d0, &pairs)?;
        ring.h0_dims.insert(a - 1, self.basis((a - 1) * d0).len());
        // W_{D0} = sections of L with pole order <= N - d0: a coordinate prefix
        let dim_v = ring.dim(a)?;
        let w_d0 = Subspace::coordinate_prefix(&self.field, dim_v, ring.dim(a - 1)?);
        CurveModel::from_parts(ring, kind, w_d0, Some(self.clone()))
    }
}

pub fn monomial_basis(genus: u32, pole_bound: u32) -> Vec<Monomial> {
    let y_pole = 2 * genus + 1;
    let mut out = Vec::new();
    for pole in 0..=pole_bound {
        if pole % 2 == 0 {
            out.push(Monomial {
                x_pow: pole / 2,
                y_pow: 0,
                pole,
            });
        } else if pole >= y_pole {
            out.push(Monomial {
                x_pow: (pole - y_pole) / 2,
                y_pow: 1,
                pole,
            });
        }
    }
    out
}

/// Builds the hyperelliptic model of the requested kind.
pub fn build_hyperelliptic(spec: &HyperellipticSpec, kind: ModelKind) -> Result<CurveModel> {
    HyperellipticCurve::new(spec)?.model(kind)
}

/// A section ring fixed to one of the three Jacobian models.
#[derive(Clone, Debug)]
pub struct CurveModel {
    ring: SectionRing,
    kind: ModelKind,
    w_d0: Subspace,
    hyperelliptic: Option<HyperellipticCurve>,
}

impl Deref for CurveModel {
    type Target = SectionRing;
    fn deref(&self) -> &SectionRing {
        &self.ring
    }
}

impl CurveModel {
    pub fn from_parts(
        ring: SectionRing,
        kind: ModelKind,
        w_d0: Subspace,
        hyperelliptic: Option<HyperellipticCurve>,
    ) -> Result<Self> {
        for &(m, n) in kind.required_tables() {
            if !ring.has_table(m, n) {
                return Err(Error::MissingTable(m, n));
            }
        }
        let a = kind.ambient_multiple();
        let dim_v = ring.dim(a)?;
        if w_d0.ambient_dim() != dim_v {
            return Err(Error::AmbientMismatch(w_d0.ambient_dim(), dim_v));
        }
        if let Some(h) = &hyperelliptic {
            if h.genus != ring.genus || h.field != ring.field {
                return Err(Error::InvalidCurve("hyperelliptic data disagrees with the model".into()));
            }
        }
        Ok(Self {
            ring,
            kind,
            w_d0,
            hyperelliptic,
        })
    }

    pub fn ring(&self) -> &SectionRing {
        &self.ring
    }

    pub fn ring_mut(&mut self) -> &mut SectionRing {
        &mut self.ring
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// `L = ambient_m * D0`.
    pub fn ambient_m(&self) -> u32 {
        self.kind.ambient_multiple()
    }

    /// `N = deg L`.
    pub fn degree_n(&self) -> u32 {
        self.ambient_m() * self.d0
    }

    pub fn dim_v(&self) -> usize {
        self.ring.dim(self.ambient_m()).expect("ambient space present")
    }

    /// `W_{D0}`, the zero of the Jacobian.
    pub fn w_d0(&self) -> &Subspace {
        &self.w_d0
    }

    pub fn hyperelliptic(&self) -> Option<&HyperellipticCurve> {
        self.hyperelliptic.as_ref()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_model(self)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            p: self.field.modulus(),
            genus: self.genus,
            d0: self.d0,
            kind: self.kind,
            h0_dims: self.h0_dims.clone(),
            tables: self
                .tables
                .values()
                .map(|t| TableFile {
                    m: t.m,
                    n: t.n,
                    tensor: t.tensor(),
                })
                .collect(),
            w_d0: self.w_d0.basis().to_rows(),
            f: self.hyperelliptic.as_ref().map(|h| h.f.coeffs().to_vec()),
        }
    }

    pub fn from_file(file: &CurveFile) -> Result<Self> {
        let field = PrimeField::new(file.p)?;
        let tables = file
            .tables
            .iter()
            .map(|t| MulTable::from_tensor(t.m, t.n, &t.tensor))
            .collect::<Result<Vec<_>>>()?;
        let ring = SectionRing::new(&field, file.genus, file.d0, file.h0_dims.clone(), tables)?;
        let dim_v = ring.dim(file.kind.ambient_multiple())?;
        let w_d0 = Subspace::from_rref(Matrix::from_rows(&field, dim_v, &file.w_d0)?)?;
        let hyperelliptic = match &file.f {
            Some(f) => Some(HyperellipticCurve::with_field(&field, f)?),
            None => None,
        };
        Self::from_parts(ring, file.kind, w_d0, hyperelliptic)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// On-disk curve description. Fields serialize in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub p: u64,
    pub genus: u32,
    pub d0: u32,
    pub kind: ModelKind,
    pub h0_dims: BTreeMap<u32, usize>,
    pub tables: Vec<TableFile>,
    pub w_d0: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub m: u32,
    pub n: u32,
    pub tensor: Vec<Vec<Vec<u64>>>,
}

/// Outcome of [`CurveModel::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::Validation(self.failures.join("; ")))
        }
    }
}

fn validate_model(c: &CurveModel) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let g = c.genus;
    let d0 = c.d0;

    for (&m, &dim) in &c.h0_dims {
        if let Some(expect) = riemann_roch_dim(g, m * d0) {
            rep.check(dim == expect, || {
                format!("dim H^0({m}D0) = {dim}, Riemann-Roch gives {expect}")
            });
        }
    }
    rep.check(c.w_d0.codim() == d0 as usize, || {
        format!("W_D0 has codimension {}, expected d0 = {d0}", c.w_d0.codim())
    });

    let field = &c.field;
    for t in c.tables.values() {
        let (m, n) = (t.m, t.n);
        // commutativity within (m,m) and against a stored (n,m)
        if m == n {
            let sym = (0..t.dim_m).all(|i| (0..i).all(|j| t.product(i, j) == t.product(j, i)));
            rep.check(sym, || format!("table ({m},{m}) is not symmetric"));
        } else if let Some(u) = c.tables.get(&(n, m)) {
            let sym = (0..t.dim_m).all(|i| (0..t.dim_n).all(|j| t.product(i, j) == u.product(j, i)));
            rep.check(sym, || format!("tables ({m},{n}) and ({n},{m}) disagree"));
        }
        // surjectivity of mul_{mn} when both degrees are at least 2g + 1
        if m * d0 > 2 * g && n * d0 > 2 * g {
            let rows: Vec<Vec<u64>> = (0..t.dim_m)
                .flat_map(|i| (0..t.dim_n).map(move |j| (i, j)))
                .map(|(i, j)| t.product(i, j).to_vec())
                .collect();
            let rank = Matrix::from_rows(field, t.dim_out, &rows)
                .map(|mat| mat.rank())
                .unwrap_or(0);
            rep.check(rank == t.dim_out, || {
                format!("table ({m},{n}) image has rank {rank}, expected {}", t.dim_out)
            });
        }
    }

    // associativity on random basis triples wherever both bracketings exist
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let indices: Vec<u32> = c.h0_dims.keys().copied().collect();
    for &a in &indices {
        for &b in &indices {
            for &k in &indices {
                let paths = c.has_table(a, b)
                    && c.has_table(a + b, k)
                    && c.has_table(b, k)
                    && c.has_table(a, b + k);
                if !paths {
                    continue;
                }
                let ok = (0..8).all(|_| {
                    let ea = unit(rng.gen_range(0..c.h0_dims[&a]), c.h0_dims[&a]);
                    let eb = unit(rng.gen_range(0..c.h0_dims[&b]), c.h0_dims[&b]);
                    let ek = unit(rng.gen_range(0..c.h0_dims[&k]), c.h0_dims[&k]);
                    let left = c
                        .multiply(a, &ea, b, &eb)
                        .and_then(|ab| c.multiply(a + b, &ab, k, &ek));
                    let right = c
                        .multiply(b, &eb, k, &ek)
                        .and_then(|bk| c.multiply(a, &ea, b + k, &bk));
                    matches!((left, right), (Ok(l), Ok(r)) if l == r)
                });
                rep.check(ok, || format!("associativity fails for ({a},{b},{k})"));
            }
        }
    }

    if let Some(h) = &c.hyperelliptic {
        for t in c.tables.values() {
            let (_, _, _, data) = h.pole_table(t.m * d0, t.n * d0);
            rep.check(data == t.data, || {
                format!("table ({},{}) differs from the curve equation", t.m, t.n)
            });
        }
    }
    rep
}

fn unit(i: usize, n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x5_plus_1() -> HyperellipticSpec {
        HyperellipticSpec::new(7, vec![1, 0, 0, 0, 0, 1])
    }

    #[test]
    fn genus2_dimensions() {
        let spec = x5_plus_1();
        let large = build_hyperelliptic(&spec, ModelKind::Large).unwrap();
        assert_eq!((large.genus(), large.d0(), large.degree_n()), (2, 5, 15));
        assert_eq!(large.dim_v(), 14);
        assert_eq!(large.w_d0().codim(), 5);
        let medium = build_hyperelliptic(&spec, ModelKind::Medium).unwrap();
        assert_eq!(medium.dim_v(), 9);
        assert_eq!(medium.w_d0().dim(), 4);
        let small = build_hyperelliptic(&spec, ModelKind::Small).unwrap();
        assert_eq!((small.d0(), small.degree_n()), (3, 9));
        assert_eq!(small.dim_v(), 8);
    }

    #[test]
    fn h0_dim_formula() {
        let large = build_hyperelliptic(&x5_plus_1(), ModelKind::Large).unwrap();
        assert_eq!(large.h0_dim(1).unwrap(), 4);
        assert_eq!(large.h0_dim(3).unwrap(), 14);
        let small = build_hyperelliptic(&x5_plus_1(), ModelKind::Small).unwrap();
        assert_eq!(small.h0_dim(7).unwrap(), 20);
        // genus 3 small model: d0 = 4 < 2g - 1 = 5
        let g3 = build_hyperelliptic(&HyperellipticSpec::new(11, vec![1, 3, 0, 0, 0, 0, 0, 1]), ModelKind::Small)
            .unwrap();
        assert_eq!(g3.h0_dim(1).unwrap_err(), Error::SpecialRange { m: 1 });
    }

    #[test]
    fn large_dim_v_formulas() {
        // d0 = 2g gives 5g + 1; d0 = 2g + 1 gives 5g + 4
        for g in 1..6u32 {
            assert_eq!(monomial_basis(g, 3 * 2 * g).len() as u32, 5 * g + 1);
            assert_eq!(monomial_basis(g, 3 * (2 * g + 1)).len() as u32, 5 * g + 4);
            assert_eq!(monomial_basis(g, 2 * (2 * g + 1)).len() as u32, 3 * g + 3);
            assert_eq!(monomial_basis(g, 3 * (g + 1)).len() as u32, 2 * g + 4);
        }
    }

    #[test]
    fn basis_pole_orders_sorted_distinct() {
        for g in 1..5 {
            for bound in 0..40 {
                let b = monomial_basis(g, bound);
                assert!(b.windows(2).all(|w| w[0].pole < w[1].pole));
                assert!(b.iter().all(|m| m.pole == 2 * m.x_pow + m.y_pow * (2 * g + 1)));
            }
        }
    }

    #[test]
    fn rejects_bad_curves() {
        let sq = HyperellipticSpec::new(7, vec![0, 0, 1, 0, 0, 1]); // x^2 (x^3 + 1)
        assert_eq!(build_hyperelliptic(&sq, ModelKind::Large).unwrap_err(), Error::SingularCurve);
        let p2 = HyperellipticSpec::new(2, vec![1, 0, 0, 0, 0, 1]);
        assert_eq!(
            build_hyperelliptic(&p2, ModelKind::Large).unwrap_err(),
            Error::UnsupportedCharacteristic(2)
        );
        let even = HyperellipticSpec::new(7, vec![1, 0, 0, 0, 1]);
        assert!(matches!(build_hyperelliptic(&even, ModelKind::Large), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn models_validate() {
        for kind in ModelKind::ALL {
            let c = build_hyperelliptic(&x5_plus_1(), kind).unwrap();
            let rep = c.validate();
            assert!(rep.is_ok(), "{kind}: {:?}", rep.failures);
            for &(m, n) in kind.required_tables() {
                assert!(c.has_table(m, n));
            }
        }
    }

    #[test]
    fn mul33_image_rank_large_gf7() {
        let c = build_hyperelliptic(&x5_plus_1(), ModelKind::Large).unwrap();
        let t = c.table(3, 3).unwrap();
        let rows: Vec<Vec<u64>> = (0..14)
            .flat_map(|i| (0..14).map(move |j| (i, j)))
            .map(|(i, j)| t.product(i, j).to_vec())
            .collect();
        let rank = Matrix::from_rows(c.field(), 29, &rows).unwrap().rank();
        assert_eq!(rank, 29);
        assert_eq!(c.h0_dim(6).unwrap(), 29);
    }

    #[test]
    fn corrupted_table_fails_validation() {
        let mut c = build_hyperelliptic(&x5_plus_1(), ModelKind::Large).unwrap();
        let t = c.ring_mut().tables_mut().next().unwrap();
        let (m, n) = (t.m(), t.n());
        t.data_mut()[7] = (t.data_mut()[7] + 1) % 7;
        let rep = c.validate();
        assert!(!rep.is_ok());
        assert!(rep.failures.iter().any(|f| f.contains(&format!("({m},{n})"))));
    }

    #[test]
    fn y_squared_reduces_to_f() {
        let c = HyperellipticCurve::new(&x5_plus_1()).unwrap();
        // basis of H^0(5 P_inf) = {1, x, x^2, y}; y * y = x^5 + 1
        let (_, _, dout, data) = c.pole_table(5, 5);
        let basis10 = c.basis(10);
        let yy = &data[(3 * 4 + 3) * dout..][..dout];
        let mut expect = vec![0u64; dout];
        let x5 = basis10.iter().position(|m| m.x_pow == 5 && m.y_pow == 0).unwrap();
        expect[0] = 1;
        expect[x5] = 1;
        assert_eq!(yy, &expect[..]);
    }

    #[test]
    fn json_roundtrip() {
        for kind in ModelKind::ALL {
            let c = build_hyperelliptic(&x5_plus_1(), kind).unwrap();
            let s = c.to_json();
            let back = CurveModel::from_json(&s).unwrap();
            assert_eq!(back.to_file(), c.to_file());
            assert_eq!(back.to_json(), s);
        }
    }
}
