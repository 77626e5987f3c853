//! Exact dense linear algebra over GF(p).
//!
//! Subspaces are stored canonically: the basis is the reduced row echelon
//! form of any spanning set with zero rows dropped. Two subspaces are equal
//! exactly when their bases are identical matrices.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn new(field: &PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.modulus();
        if let Some(bad) = data.iter().find(|&&v| v >= p) {
            return Err(Error::Format(format!("entry {bad} not in [0, {p})")));
        }
        Ok(Self {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &PrimeField, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.element(self.entry(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.modulus();
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.entry(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                axpy(&self.field, dst, self.entry(i, k), other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(&self.field, self.row(i), v)).collect())
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form, same shape, zero rows at the bottom.
    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = gauss_jordan(&self.field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// `{x : self * x^T = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        kernel_from_rref(&self.field, &r.data, self.cols, &pivots)
    }

    pub fn random(field: &PrimeField, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let p = field.modulus();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        Self {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }
}

/// `dst += c * src`; charges two operations per entry unless `c = 0`.
#[inline]
pub(crate) fn axpy(field: &PrimeField, dst: &mut [u64], c: u64, src: &[u64]) {
    if c == 0 {
        return;
    }
    debug_assert_eq!(dst.len(), src.len());
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.add_raw(*d, field.mul_raw(c, s));
    }
    field.charge(2 * src.len() as u64);
}

/// `dst -= c * src`.
#[inline]
pub(crate) fn axmy(field: &PrimeField, dst: &mut [u64], c: u64, src: &[u64]) {
    if c == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = field.sub_raw(*d, field.mul_raw(c, s));
    }
    field.charge(2 * src.len() as u64);
}

pub(crate) fn dot(field: &PrimeField, a: &[u64], b: &[u64]) -> u64 {
    let mut acc = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add_raw(acc, field.mul_raw(x, y));
    }
    field.charge(2 * a.len() as u64);
    acc
}

/// In-place Gauss-Jordan elimination of a row-major buffer. Returns the
/// pivot columns; rows at and beyond the rank are left zero.
pub(crate) fn gauss_jordan(field: &PrimeField, data: &mut [u64], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let lead = data[r * cols + c];
        if lead != 1 {
            let inv = field.inv(lead).expect("nonzero pivot");
            for v in &mut data[r * cols + c + 1..(r + 1) * cols] {
                *v = field.mul_raw(*v, inv);
            }
            field.charge((cols - c - 1) as u64);
            data[r * cols + c] = 1;
        }
        let (before, rest) = data.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let prow = &prow[c + 1..];
        for chunk in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
            let factor = chunk[c];
            if factor != 0 {
                axmy(field, &mut chunk[c + 1..], factor, prow);
                chunk[c] = 0;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(field: &PrimeField, rref: &[u64], cols: usize, pivots: &[usize]) -> Subspace {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut data = vec![0u64; free.len() * cols];
    for (k, &fc) in free.iter().enumerate() {
        let v = &mut data[k * cols..(k + 1) * cols];
        v[fc] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let e = rref[r * cols + fc];
            if e != 0 {
                v[pc] = field.neg(e);
            }
        }
    }
    // Vectors are indexed by free columns with identity there; re-echelonize
    // so the stored basis is canonical.
    let m = Matrix {
        field: field.clone(),
        rows: free.len(),
        cols,
        data,
    };
    Subspace::from_spanning(&m)
}

/// A subspace of `GF(p)^n`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(m: &Matrix) -> Self {
        let (mut r, pivots) = m.rref_with_pivots();
        r.rows = pivots.len();
        r.data.truncate(r.rows * r.cols);
        Self {
            ambient_dim: m.cols,
            basis: r,
            pivots,
        }
    }

    pub fn from_rows(field: &PrimeField, ambient_dim: usize, rows: &[Vec<u64>]) -> Result<Self> {
        Ok(Self::from_spanning(&Matrix::from_rows(field, ambient_dim, rows)?))
    }

    /// Builds from an already-canonical basis, verifying canonicity.
    pub fn from_rref(basis: Matrix) -> Result<Self> {
        let s = Self::from_spanning(&basis);
        if s.basis != basis {
            return Err(Error::Format("basis is not in reduced row echelon form".into()));
        }
        Ok(s)
    }

    pub fn full(field: &PrimeField, n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn zero(field: &PrimeField, n: usize) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    /// Span of the first `k` standard basis vectors.
    pub fn coordinate_prefix(field: &PrimeField, n: usize, k: usize) -> Self {
        let k = k.min(n);
        let mut basis = Matrix::zeros(field, k, n);
        for i in 0..k {
            basis.data[i * n + i] = 1;
        }
        Self {
            ambient_dim: n,
            basis,
            pivots: (0..k).collect(),
        }
    }

    /// Uniformly random subspace of the given dimension.
    pub fn random(field: &PrimeField, n: usize, dim: usize, rng: &mut impl Rng) -> Self {
        assert!(dim <= n);
        loop {
            let s = Self::from_spanning(&Matrix::random(field, dim, n, rng));
            if s.dim() == dim {
                return s;
            }
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vector(&self, i: usize) -> &[u64] {
        self.basis.row(i)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.dim()).map(move |i| self.basis.row(i))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.field() != other.field() {
            return Err(Error::ModulusMismatch(
                self.field().modulus(),
                other.field().modulus(),
            ));
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut out = v.to_vec();
        self.reduce_in_place(&mut out);
        out
    }

    pub(crate) fn reduce_in_place(&self, v: &mut [u64]) {
        let field = self.field();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c != 0 {
                axmy(field, &mut v[pc + 1..], c, &self.basis.row(r)[pc + 1..]);
                v[pc] = 0;
            }
        }
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Rows spanning the annihilator: a matrix `M` with `ker M = self`.
    /// Read off the RREF basis directly, one row per non-pivot column.
    pub fn annihilator(&self) -> Matrix {
        let n = self.ambient_dim;
        let field = self.field();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut data = vec![0u64; free.len() * n];
        for (k, &fc) in free.iter().enumerate() {
            let y = &mut data[k * n..(k + 1) * n];
            y[fc] = 1;
            for (r, &pc) in self.pivots.iter().enumerate() {
                let e = self.basis.entry(r, fc);
                if e != 0 {
                    y[pc] = field.neg(e);
                }
            }
        }
        Matrix {
            field: field.clone(),
            rows: free.len(),
            cols: n,
            data,
        }
    }

    /// Largest subspace contained in both, via the kernel of the stacked
    /// annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        Ok(self.annihilator().stack(&other.annihilator())?.kernel())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_spanning(&self.basis.stack(&other.basis)?))
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.vectors().all(|v| self.contains_vector(v)))
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    /// A uniformly random nonzero vector of the subspace.
    pub fn random_vector(&self, rng: &mut impl Rng) -> Option<Vec<u64>> {
        if self.is_zero() {
            return None;
        }
        let p = self.field().modulus();
        loop {
            let mut v = vec![0u64; self.ambient_dim];
            for r in 0..self.dim() {
                axpy(self.field(), &mut v, rng.gen_range(0..p), self.basis.row(r));
            }
            if v.iter().any(|&x| x != 0) {
                return Some(v);
            }
        }
    }

    /// Multiplies every basis vector by its own nonzero scalar and
    /// re-canonicalizes; the result is always the same subspace.
    pub fn rescaled(&self, scalars: &[u64]) -> Subspace {
        let mut m = self.basis.clone();
        for (r, &s) in scalars.iter().enumerate().take(m.rows) {
            let s = s % self.field().modulus();
            if s == 0 {
                continue;
            }
            let cols = m.cols;
            for v in &mut m.data[r * cols..(r + 1) * cols] {
                *v = self.field().mul(*v, s);
            }
        }
        Subspace::from_spanning(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let f = gf(7);
        let id = Matrix::identity(&f, 4);
        assert_eq!(id.rref(), id);
    }

    #[test]
    fn rref_rank_one() {
        let f = gf(7);
        let m = Matrix::from_rows(&f, 2, &[vec![2, 4], vec![1, 2]]).unwrap();
        let s = Subspace::from_spanning(&m);
        assert_eq!(s.basis().to_rows(), vec![vec![1, 2]]);
        assert_eq!(m.rref().to_rows(), vec![vec![1, 2], vec![0, 0]]);
    }

    #[test]
    fn rref_idempotent_random() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let m = Matrix::random(&f, 10, 14, &mut rng);
            let once = m.rref();
            assert_eq!(once.rref(), once);
        }
    }

    #[test]
    fn rref_is_reduced() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut m = Matrix::random(&f, 6, 9, &mut rng);
        // force dependency
        for j in 0..9 {
            let v = f.add(m.entry(0, j), m.entry(1, j));
            m.set(5, j, v);
        }
        let s = Subspace::from_spanning(&m);
        assert_eq!(s.dim(), 5);
        for (r, &pc) in s.pivots().iter().enumerate() {
            assert_eq!(s.basis().entry(r, pc), 1);
            assert!(s.basis().row(r)[..pc].iter().all(|&x| x == 0));
            for r2 in 0..s.dim() {
                if r2 != r {
                    assert_eq!(s.basis().entry(r2, pc), 0);
                }
            }
        }
        assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kernel_examples() {
        let f = gf(7);
        assert_eq!(Matrix::zeros(&f, 5, 5).kernel().dim(), 5);
        assert_eq!(Matrix::identity(&f, 5).kernel().dim(), 0);
    }

    #[test]
    fn kernel_random_verified() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for rank in 0..=6 {
            // rank-r 6x10 matrix as a product of random 6xr and rx10
            let a = Matrix::random(&f, 6, rank, &mut rng);
            let b = Matrix::random(&f, rank, 10, &mut rng);
            let m = a.mul(&b).unwrap();
            let r = m.rank();
            let k = m.kernel();
            assert_eq!(r + k.dim(), 10);
            for v in k.vectors() {
                assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn intersect_and_sum_trivial_cases() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = Subspace::random(&f, 14, 6, &mut rng);
        let full = Subspace::full(&f, 14);
        let zero = Subspace::zero(&f, 14);
        assert_eq!(x.intersect(&full).unwrap(), x);
        assert_eq!(x.intersect(&x).unwrap(), x);
        assert_eq!(x.sum(&zero).unwrap(), x);
        assert_eq!(x.sum(&x).unwrap(), x);
        assert!(full.contains(&x).unwrap());
        assert!(!zero.contains(&x).unwrap());
    }

    #[test]
    fn dimension_formula_random() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (da, db, shared) in [(5, 6, 0), (8, 9, 3), (10, 10, 7), (3, 12, 2)] {
            // build A and B sharing a `shared`-dimensional piece
            let common = Matrix::random(&f, shared, 14, &mut rng);
            let a = Subspace::from_spanning(&common.stack(&Matrix::random(&f, da - shared, 14, &mut rng)).unwrap());
            let b = Subspace::from_spanning(&common.stack(&Matrix::random(&f, db - shared, 14, &mut rng)).unwrap());
            let s = a.sum(&b).unwrap();
            let i = a.intersect(&b).unwrap();
            assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
            assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
            assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
        }
    }

    #[test]
    fn ambient_mismatch_errors() {
        let f = gf(7);
        let a = Subspace::full(&f, 3);
        let b = Subspace::full(&f, 4);
        assert_eq!(a.intersect(&b).unwrap_err(), Error::AmbientMismatch(3, 4));
        assert!(a.sum(&b).is_err());
        assert!(a.contains(&b).is_err());
        assert!(a.equal(&b).is_err());
    }

    #[test]
    fn lines_in_gf7_plane_are_distinct() {
        // the 8 lines through the origin of GF(7)^2
        let f = gf(7);
        let mut lines = vec![Subspace::from_rows(&f, 2, &[vec![0, 1]]).unwrap()];
        for s in 0..7 {
            lines.push(Subspace::from_rows(&f, 2, &[vec![1, s]]).unwrap());
        }
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(lines[i].equal(&lines[j]).unwrap(), i == j);
            }
            // any nonzero multiple spans the same line
            let v = lines[i].vector(0);
            let w: Vec<u64> = v.iter().map(|&x| f.mul(x, 3)).collect();
            assert_eq!(Subspace::from_rows(&f, 2, &[w]).unwrap(), lines[i]);
        }
    }

    #[test]
    fn annihilator_kernel_roundtrip() {
        let f = gf(101);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in 0..=9 {
            let s = Subspace::random(&f, 9, d, &mut rng);
            let ann = s.annihilator();
            assert_eq!(ann.rows(), 9 - d);
            assert_eq!(ann.kernel(), s);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        fn arb_rows(n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
            prop::collection::vec(prop::collection::vec(0u64..13, n), 0..7)
        }

        proptest! {
            #[test]
            fn rref_canonical_under_row_ops(rows in arb_rows(6), seed in any::<u64>()) {
                let f = gf(13);
                let m = Matrix::from_rows(&f, 6, &rows).unwrap();
                let s = Subspace::from_spanning(&m);
                // random invertible recombination plus extra dependent rows
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut mixed = Vec::new();
                for _ in 0..rows.len() + 2 {
                    let mut v = vec![0u64; 6];
                    for r in &rows {
                        axpy(&f, &mut v, rng.gen_range(0..13), r);
                    }
                    mixed.push(v);
                }
                mixed.extend(rows.iter().rev().cloned());
                let t = Subspace::from_rows(&f, 6, &mixed).unwrap();
                prop_assert_eq!(&s, &t);
            }

            #[test]
            fn containment_both_ways_is_equality(a in arb_rows(5), b in arb_rows(5)) {
                let f = gf(13);
                let sa = Subspace::from_rows(&f, 5, &a).unwrap();
                let sb = Subspace::from_rows(&f, 5, &b).unwrap();
                let both = sa.contains(&sb).unwrap() && sb.contains(&sa).unwrap();
                prop_assert_eq!(both, sa.equal(&sb).unwrap());
                let s = sa.sum(&sb).unwrap();
                prop_assert!(s.contains(&sa).unwrap());
                let i = sa.intersect(&sb).unwrap();
                prop_assert_eq!(sa.dim() + sb.dim(), s.dim() + i.dim());
            }

            #[test]
            fn rank_nullity(rows in arb_rows(7)) {
                let f = gf(13);
                let m = Matrix::from_rows(&f, 7, &rows).unwrap();
                prop_assert_eq!(m.rank() + m.kernel().dim(), 7);
            }
        }
    }
}
