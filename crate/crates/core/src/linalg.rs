//! Dense linear algebra over a [`Field`], canonical subspaces, and the
//! exhaustive enumerators (subspaces, GL(n), spans) that the invariant
//! computations are built on.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::Budget;

/// A dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|r| self.row(r)).collect();
        write!(f, "Mat{rows:?}")
    }
}

/// Reduces `data` (row-major, `cols` wide) to reduced row-echelon form in
/// place, drops zero rows and returns the pivot columns.
pub(crate) fn rref_in_place(field: &Field, data: &mut Vec<u32>, cols: usize) -> Vec<usize> {
    if cols == 0 {
        data.clear();
        return Vec::new();
    }
    let rows = data.len() / cols;
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
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("nonzero pivot");
        if inv != 1 {
            for j in c..cols {
                data[r * cols + j] = field.mul(data[r * cols + j], inv);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for j in c..cols {
                let t = field.mul(neg, data[r * cols + j]);
                data[i * cols + j] = field.add(data[i * cols + j], t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    data.truncate(r * cols);
    pivots
}

/// Rank of a row-major block without keeping the reduced form.
pub(crate) fn rank_of(field: &Field, data: &[u32], cols: usize) -> usize {
    let mut d = data.to_vec();
    rref_in_place(field, &mut d, cols).len()
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrices need at least one row and column, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::InvalidElement {
                value: v as u64,
                order: field.order(),
            });
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_raw(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Mat {
        debug_assert_eq!(data.len(), rows * cols);
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Mat::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat::from_raw(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u32> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        Mat::from_raw(&self.field, self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u32; n * m];
        for i in 0..n {
            for t in 0..k {
                let a = self.data[i * k + t];
                if a == 0 {
                    continue;
                }
                for j in 0..m {
                    let b = other.data[t * m + j];
                    if b != 0 {
                        data[i * m + j] = f.add(data[i * m + j], f.mul(a, b));
                    }
                }
            }
        }
        Mat::from_raw(f, n, m, data)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Mat::from_raw(&self.field, self.rows, self.cols, data))
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.field, &self.data, self.cols)
    }

    /// Reduced row-echelon form (zero rows removed) and pivot columns.
    pub fn rref(&self) -> (Vec<u32>, Vec<usize>) {
        let mut d = self.data.clone();
        let piv = rref_in_place(&self.field, &mut d, self.cols);
        (d, piv)
    }

    pub fn rowsp(&self) -> Subspace {
        Subspace::from_data(&self.field, self.cols, self.data.clone())
    }

    pub fn colsp(&self) -> Subspace {
        self.transpose().rowsp()
    }

    /// Right kernel `{x : M x = 0}` as a subspace of F^cols.
    pub fn kernel(&self) -> Subspace {
        self.rowsp().perp()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = vec![0u32; n * 2 * n];
        for r in 0..n {
            aug[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug[r * 2 * n + n + r] = 1;
        }
        let piv = rref_in_place(f, &mut aug, 2 * n);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let data = (0..n)
            .flat_map(|r| aug[r * 2 * n + n..(r + 1) * 2 * n].to_vec())
            .collect();
        Some(Mat::from_raw(f, n, n, data))
    }
}

/// A subspace of F^ℓ held by its reduced row-echelon generator, so equal
/// subspaces have identical representations.
///
/// The ordering is the enumeration order of [`enumerate_subspaces`]:
/// by dimension, then pivot columns, then generator entries.
#[derive(Clone)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    pivots: Vec<usize>,
    /// `dim × ambient`, row-major, RREF.
    data: Vec<u32>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.data == other.data && self.field == other.field
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.data.cmp(&other.data))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.dim()).map(|r| self.row(r)).collect();
        write!(f, "<{rows:?}> in F^{}", self.ambient)
    }
}

impl Subspace {
    /// The span of the rows of `data` (row-major, `ambient` wide).
    pub fn from_data(field: &Field, ambient: usize, mut data: Vec<u32>) -> Subspace {
        debug_assert!(ambient == 0 || data.len() % ambient == 0);
        let pivots = rref_in_place(field, &mut data, ambient);
        Subspace {
            field: field.clone(),
            ambient,
            pivots,
            data,
        }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "vectors must have length {ambient}"
            )));
        }
        if let Some(&v) = vectors.iter().flatten().find(|&&v| !field.contains(v)) {
            return Err(Error::InvalidElement {
                value: v as u64,
                order: field.order(),
            });
        }
        Ok(Subspace::from_data(field, ambient, vectors.concat()))
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            pivots: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            field: field.clone(),
            ambient,
            pivots: (0..ambient).collect(),
            data: Mat::identity(field, ambient).data,
        }
    }

    /// ⟨e_1, ..., e_k⟩.
    pub fn standard(field: &Field, ambient: usize, k: usize) -> Subspace {
        let mut data = vec![0; k * ambient];
        for i in 0..k {
            data[i * ambient + i] = 1;
        }
        Subspace {
            field: field.clone(),
            ambient,
            pivots: (0..k).collect(),
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The canonical generator, row-major.
    pub fn generator(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.dim()).map(move |i| self.row(i))
    }

    /// The canonical generator as a matrix, `None` for the zero subspace.
    pub fn generator_matrix(&self) -> Option<Mat> {
        (self.dim() > 0 && self.ambient > 0)
            .then(|| Mat::from_raw(&self.field, self.dim(), self.ambient, self.data.clone()))
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the generator; zero iff `v` lies in the span.
    pub(crate) fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            let row = &self.data[i * self.ambient..(i + 1) * self.ambient];
            for j in p..self.ambient {
                if row[j] != 0 {
                    v[j] = f.add(v[j], f.mul(neg, row[j]));
                }
            }
        }
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the canonical generator rows, or
    /// `None` when `v` is outside the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.rows().all(|r| self.contains_vector(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut d = self.data.clone();
        d.extend_from_slice(&other.data);
        Ok(Subspace::from_data(&self.field, self.ambient, d))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// Orthogonal complement for the standard dot product. The result may
    /// meet `self` nontrivially; only `dim U + dim U^⊥ = ℓ` is guaranteed.
    pub fn perp(&self) -> Subspace {
        let l = self.ambient;
        let f = &self.field;
        let free: Vec<usize> = (0..l).filter(|c| !self.pivots.contains(c)).collect();
        let mut data = Vec::with_capacity(free.len() * l);
        for &fc in &free {
            let mut v = vec![0u32; l];
            v[fc] = 1;
            for (i, &p) in self.pivots.iter().enumerate() {
                v[p] = f.neg(self.data[i * l + fc]);
            }
            data.extend(v);
        }
        Subspace::from_data(f, l, data)
    }

    /// Image `{v G : v ∈ self}` under a square matrix acting on row vectors.
    pub fn image(&self, g: &Mat) -> Result<Subspace> {
        if g.rows() != self.ambient || g.cols() != self.ambient {
            return Err(Error::DimensionMismatch("map must be square on the ambient space".into()));
        }
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        let m = self.generator_matrix().expect("nonzero").mul(g)?;
        Ok(Subspace::from_data(&self.field, self.ambient, m.into_data()))
    }

    /// Every vector of the subspace, each exactly once.
    pub fn vectors(&self) -> SpanIter {
        SpanIter::new(&self.field, self.ambient, self.rows().map(|r| r.to_vec()).collect())
    }

    pub fn cardinality(&self) -> u128 {
        (self.field.order() as u128).pow(self.dim() as u32)
    }
}

/// Enumerates the F-span of linearly independent rows by walking the
/// F_p-span of `{β row : β in the power basis}` with an odometer, so each
/// step costs one vector addition.
pub struct SpanIter {
    field: Field,
    len: usize,
    basis: Vec<Vec<u32>>,
    digits: Vec<u32>,
    current: Vec<u32>,
    done: bool,
}

impl SpanIter {
    pub fn new(field: &Field, len: usize, rows: Vec<Vec<u32>>) -> SpanIter {
        let powers: Vec<u32> = if field.is_prime_field() {
            vec![1]
        } else {
            (0..field.degree()).map(|i| field.pow(field.alpha(), i as u64)).collect()
        };
        let basis: Vec<Vec<u32>> = rows
            .iter()
            .flat_map(|r| {
                powers
                    .iter()
                    .map(|&b| r.iter().map(|&x| field.mul(b, x)).collect::<Vec<u32>>())
                    .collect::<Vec<_>>()
            })
            .collect();
        SpanIter {
            field: field.clone(),
            len,
            digits: vec![0; basis.len()],
            basis,
            current: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for SpanIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let p = self.field.characteristic();
        let mut i = 0;
        loop {
            if i == self.basis.len() {
                self.done = true;
                break;
            }
            for j in 0..self.len {
                self.current[j] = self.field.add(self.current[j], self.basis[i][j]);
            }
            self.digits[i] += 1;
            if self.digits[i] < p {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Number of `k`-dimensional subspaces of F_q^a, including the boundary
/// cases: 0 when `a < 0`, `b < 0` or `b > a`, and 1 when `b = 0 <= a`.
pub fn gaussian(a: i64, b: i64, q: u64) -> i128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    if b == 0 {
        return 1;
    }
    let q = q as i128;
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..b {
        num *= q.pow((a - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// |GL_n(F_q)| = ∏_{i<n} (q^n − q^i).
pub fn gl_order(n: usize, q: u64) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

/// Iterator over the `k`-dimensional subspaces of F^ℓ in canonical order.
pub struct SubspaceIter {
    field: Field,
    ambient: usize,
    k: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    values: Vec<u32>,
    fresh: bool,
}

impl SubspaceIter {
    fn new(field: &Field, ambient: usize, k: usize) -> SubspaceIter {
        let pivots = (k <= ambient).then(|| (0..k).collect::<Vec<_>>());
        let mut it = SubspaceIter {
            field: field.clone(),
            ambient,
            k,
            pivots,
            free: Vec::new(),
            values: Vec::new(),
            fresh: true,
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            for (r, &p) in piv.iter().enumerate() {
                for c in p + 1..self.ambient {
                    if !piv.contains(&c) {
                        self.free.push((r, c));
                    }
                }
            }
        }
        self.values = vec![0; self.free.len()];
        self.fresh = true;
    }

    fn next_pivots(&mut self) -> bool {
        let Some(piv) = &mut self.pivots else {
            return false;
        };
        let (k, l) = (self.k, self.ambient);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if piv[i] < l - k + i {
                piv[i] += 1;
                for j in i + 1..k {
                    piv[j] = piv[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Subspace {
        let piv = self.pivots.as_ref().expect("active");
        let l = self.ambient;
        let mut data = vec![0u32; self.k * l];
        for (r, &p) in piv.iter().enumerate() {
            data[r * l + p] = 1;
        }
        for (&(r, c), &v) in self.free.iter().zip(&self.values) {
            data[r * l + c] = v;
        }
        Subspace {
            field: self.field.clone(),
            ambient: l,
            pivots: piv.clone(),
            data,
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        self.pivots.as_ref()?;
        if self.fresh {
            self.fresh = false;
            return Some(self.current());
        }
        let q = self.field.order();
        let mut i = self.values.len();
        while i > 0 {
            i -= 1;
            self.values[i] += 1;
            if self.values[i] < q {
                return Some(self.current());
            }
            self.values[i] = 0;
        }
        if self.next_pivots() {
            self.reset_free();
            self.fresh = false;
            Some(self.current())
        } else {
            self.pivots = None;
            None
        }
    }
}

/// All `k`-dimensional subspaces of F^ℓ (or every dimension when `k` is
/// `None`), each once, in increasing [`Subspace`] order.
pub fn enumerate_subspaces(
    field: &Field,
    ambient: usize,
    k: Option<usize>,
    budget: Budget,
) -> Result<Box<dyn Iterator<Item = Subspace>>> {
    let q = field.order() as u64;
    let dims: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=ambient).collect(),
    };
    let count: i128 = dims
        .iter()
        .map(|&d| gaussian(ambient as i64, d as i64, q))
        .sum();
    budget.check("subspace enumeration", count as u128)?;
    let f = field.clone();
    Ok(Box::new(
        dims.into_iter()
            .flat_map(move |d| SubspaceIter::new(&f, ambient, d)),
    ))
}

/// Every invertible n×n matrix over `field`, in lexicographic order of
/// row-major entries.
pub fn enumerate_gl(field: &Field, n: usize, budget: Budget) -> Result<GlIter> {
    if n == 0 {
        return Err(Error::InvalidArgument("GL_0 is not enumerated".into()));
    }
    budget.check("GL enumeration", gl_order(n, field.order() as u64))?;
    Ok(GlIter {
        field: field.clone(),
        n,
        digits: vec![0; n * n],
        done: false,
    })
}

pub struct GlIter {
    field: Field,
    n: usize,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for GlIter {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        let q = self.field.order();
        let n = self.n;
        while !self.done {
            let cand = self.digits.clone();
            let mut i = self.digits.len();
            loop {
                if i == 0 {
                    self.done = true;
                    break;
                }
                i -= 1;
                self.digits[i] += 1;
                if self.digits[i] < q {
                    break;
                }
                self.digits[i] = 0;
            }
            if rank_of(&self.field, &cand, n) == n {
                return Some(Mat::from_raw(&self.field, n, n, cand));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = f2();
        assert_eq!(Mat::zeros(&f, 2, 3).rank(), 0);
        assert_eq!(Mat::new(&f, 2, 3, vec![1, 0, 0, 0, 1, 0]).unwrap().rank(), 2);
        assert_eq!(Mat::new(&f, 2, 3, vec![0, 0, 1, 1, 1, 0]).unwrap().rank(), 2);
        assert_eq!(Mat::new(&f, 2, 2, vec![1, 1, 1, 1]).unwrap().rank(), 1);
    }

    #[test]
    fn row_and_column_spaces() {
        let f = f2();
        let m = Mat::new(&f, 2, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(m.colsp(), Subspace::from_vectors(&f, 2, &[vec![1, 1]]).unwrap());
        assert_eq!(Mat::zeros(&f, 2, 2).rowsp(), Subspace::zero(&f, 2));
        let m = Mat::new(&f, 3, 2, vec![1, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(m.colsp(), Subspace::standard(&f, 3, 2));
        assert_eq!(m.colsp().dim(), m.rank());
    }

    #[test]
    fn perp_examples() {
        let f = f2();
        let u = Subspace::from_vectors(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(u.perp(), u);
        let e1 = Subspace::standard(&f, 2, 1);
        assert_eq!(e1.perp(), Subspace::from_vectors(&f, 2, &[vec![0, 1]]).unwrap());
        assert_eq!(u.sum(&Subspace::zero(&f, 2)).unwrap(), u);
        assert_eq!(u.intersect(&Subspace::full(&f, 2)).unwrap(), u);
        let other = Subspace::zero(&f, 3);
        assert!(u.sum(&other).is_err());
    }

    #[test]
    fn perp_in_char3() {
        let f = f3();
        let u = Subspace::from_vectors(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(u.perp(), Subspace::from_vectors(&f, 2, &[vec![1, 2]]).unwrap());
    }

    #[test]
    fn subspace_counts_match_gaussian() {
        for f in [f2(), f3()] {
            let q = f.order() as u64;
            for l in 0..=4 {
                for k in 0..=l {
                    let all: Vec<Subspace> =
                        enumerate_subspaces(&f, l, Some(k), Budget::DEFAULT).unwrap().collect();
                    assert_eq!(all.len() as i128, gaussian(l as i64, k as i64, q));
                    for w in all.windows(2) {
                        assert!(w[0] < w[1]);
                    }
                    for s in &all {
                        assert_eq!(s.dim(), k);
                    }
                }
            }
        }
        assert_eq!(enumerate_subspaces(&f2(), 2, Some(1), Budget::DEFAULT).unwrap().count(), 3);
        assert_eq!(enumerate_subspaces(&f2(), 4, Some(2), Budget::DEFAULT).unwrap().count(), 35);
        let zero: Vec<_> = enumerate_subspaces(&f2(), 3, Some(0), Budget::DEFAULT).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(&f2(), 3)]);
    }

    #[test]
    fn subspace_budget_is_hard_error() {
        let r = enumerate_subspaces(&f2(), 4, None, Budget(10));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    /// Counts k-subspaces by collecting distinct spans of all k-tuples.
    #[test]
    fn gaussian_against_span_enumeration() {
        let f = f2();
        let vecs: Vec<Vec<u32>> = (0u32..16).map(|x| (0..4).map(|i| (x >> i) & 1).collect()).collect();
        let mut spans = std::collections::HashSet::new();
        for a in &vecs {
            for b in &vecs {
                let s = Subspace::from_vectors(&f, 4, &[a.clone(), b.clone()]).unwrap();
                if s.dim() == 2 {
                    spans.insert(s);
                }
            }
        }
        assert_eq!(spans.len(), 35);
        assert_eq!(gaussian(4, 2, 2), 35);
        assert_eq!(gaussian(3, 1, 2), 7);
        assert_eq!(gaussian(5, 0, 3), 1);
        assert_eq!(gaussian(2, 3, 2), 0);
        assert_eq!(gaussian(-1, 0, 2), 0);
        assert_eq!(gaussian(3, -1, 2), 0);
    }

    #[test]
    fn dimension_formula_exhaustive_f2_cubed() {
        let f = f2();
        let all: Vec<Subspace> = enumerate_subspaces(&f, 3, None, Budget::DEFAULT).unwrap().collect();
        for u in &all {
            for v in &all {
                let s = u.sum(v).unwrap();
                let i = u.intersect(v).unwrap();
                assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
                assert!(s.contains(u).unwrap() && s.contains(v).unwrap());
                assert!(u.contains(&i).unwrap() && v.contains(&i).unwrap());
                // brute-force intersection
                let brute: Vec<Vec<u32>> = u.vectors().filter(|x| v.contains_vector(x)).collect();
                assert_eq!(brute.len() as u128, i.cardinality());
            }
        }
    }

    #[test]
    fn perp_involution_exhaustive() {
        for (f, l) in [(f2(), 4), (f3(), 2)] {
            for u in enumerate_subspaces(&f, l, None, Budget::DEFAULT).unwrap() {
                let p = u.perp();
                assert_eq!(p.dim() + u.dim(), l);
                assert_eq!(p.perp(), u);
                for x in u.vectors() {
                    for y in p.vectors() {
                        let dot = x.iter().zip(&y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                        assert_eq!(dot, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn gl_counts() {
        assert_eq!(enumerate_gl(&f2(), 2, Budget::DEFAULT).unwrap().count(), 6);
        assert_eq!(enumerate_gl(&f2(), 3, Budget::DEFAULT).unwrap().count(), 168);
        assert_eq!(enumerate_gl(&f3(), 1, Budget::DEFAULT).unwrap().count(), 2);
        assert_eq!(enumerate_gl(&f3(), 2, Budget::DEFAULT).unwrap().count(), 48);
        assert_eq!(gl_order(3, 2), 168);
        assert!(enumerate_gl(&f2(), 3, Budget(100)).is_err());
        for g in enumerate_gl(&f3(), 2, Budget::DEFAULT).unwrap() {
            let inv = g.inverse().unwrap();
            assert_eq!(g.mul(&inv).unwrap(), Mat::identity(&f3(), 2));
        }
    }

    #[test]
    fn span_iter_counts_each_vector_once() {
        let f = Field::default_extension(2, 2).unwrap();
        let s = Subspace::from_vectors(&f, 2, &[vec![1, 2]]).unwrap();
        let all: std::collections::HashSet<Vec<u32>> = s.vectors().collect();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|v| s.contains_vector(v)));
    }

    fn arb_rows() -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>)> {
        (prop_oneof![Just(2u32), Just(3u32)], 1usize..5).prop_flat_map(|(p, l)| {
            (Just(p), Just(l), prop::collection::vec(prop::collection::vec(0..p, l), 0..5))
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable((p, l, rows) in arb_rows(), seed in any::<u64>()) {
            let f = Field::prime(p).unwrap();
            let s = Subspace::from_vectors(&f, l, &rows).unwrap();
            // mix the rows: reversed order plus sums of neighbours
            let mut mixed: Vec<Vec<u32>> = rows.iter().rev().cloned().collect();
            if mixed.len() > 1 {
                let k = (seed as usize) % (mixed.len() - 1);
                let extra: Vec<u32> = mixed[k].iter().zip(&mixed[k + 1]).map(|(&a, &b)| f.add(a, b)).collect();
                mixed[k] = extra;
                let c = 1 + (seed as u32 % (p - 1));
                mixed[k + 1] = mixed[k + 1].iter().map(|&x| f.mul(x, c)).collect();
            }
            let t = Subspace::from_vectors(&f, l, &mixed).unwrap();
            prop_assert_eq!(s, t);
        }
    }
}
