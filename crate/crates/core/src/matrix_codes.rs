//! F_q-linear rank-metric codes in Mat_{n×m}(F_q).
//!
//! A code is stored as the canonical subspace of F_q^{nm} spanned by the
//! row-major vectorizations of its codewords; the trace inner product
//! tr(M N^T) is then the standard dot product of vectorizations.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{enumerate_gl, gl_order, rank_of, Mat, SpanIter, Subspace};
use crate::Budget;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixCode {
    n: usize,
    m: usize,
    space: Subspace,
}

impl fmt::Debug for MatrixCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixCode({}x{}, dim {}, {:?})", self.n, self.m, self.dim(), self.space)
    }
}

/// Support of a single matrix: its column space when `n <= m`, its row
/// space otherwise. Always a subspace of F_q^{min(n,m)}.
pub fn support(mat: &Mat) -> Subspace {
    if mat.rows() <= mat.cols() {
        mat.colsp()
    } else {
        mat.rowsp()
    }
}

/// Bound-equality flags together with the invariants they were read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub d_min: usize,
    pub max_rank: usize,
    pub dual_d_min: usize,
    pub is_mrd: bool,
    pub is_optimal_anticode: bool,
    pub is_dually_quasi_mrd: bool,
}

/// A linear isometry of Mat_{n×m}: `M ↦ A M B`, or `M ↦ A M^T B` when
/// `transposed` (square matrices only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub a: Mat,
    pub b: Mat,
    pub transposed: bool,
}

impl Isometry {
    pub fn identity(field: &Field, n: usize, m: usize) -> Isometry {
        Isometry {
            a: Mat::identity(field, n),
            b: Mat::identity(field, m),
            transposed: false,
        }
    }

    pub fn apply(&self, mat: &Mat) -> Result<Mat> {
        let inner = if self.transposed {
            mat.transpose()
        } else {
            mat.clone()
        };
        self.a.mul(&inner)?.mul(&self.b)
    }
}

/// Result of an exhaustive isometry search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSearch {
    pub extension: Option<Isometry>,
    /// Number of global isometries `A M B` / `A M^T B` inspected.
    pub examined: u128,
}

impl MatrixCode {
    /// The span of `generators`, each an `n × m` matrix over `field`.
    pub fn new(field: &Field, n: usize, m: usize, generators: &[Mat]) -> Result<MatrixCode> {
        if n == 0 || m == 0 {
            return Err(Error::DimensionMismatch("n and m must be positive".into()));
        }
        let mut data = Vec::with_capacity(generators.len() * n * m);
        for g in generators {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if (g.rows(), g.cols()) != (n, m) {
                return Err(Error::DimensionMismatch(format!(
                    "generator is {}x{}, expected {n}x{m}",
                    g.rows(),
                    g.cols()
                )));
            }
            data.extend_from_slice(g.data());
        }
        Ok(MatrixCode {
            n,
            m,
            space: Subspace::from_data(field, n * m, data),
        })
    }

    /// Wraps a subspace of F_q^{nm} of row-major vectorizations.
    pub fn from_space(n: usize, m: usize, space: Subspace) -> Result<MatrixCode> {
        if n == 0 || m == 0 || space.ambient() != n * m {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} cannot hold {n}x{m} matrices",
                space.ambient()
            )));
        }
        Ok(MatrixCode { n, m, space })
    }

    pub fn zero(field: &Field, n: usize, m: usize) -> MatrixCode {
        MatrixCode {
            n,
            m,
            space: Subspace::zero(field, n * m),
        }
    }

    pub fn full(field: &Field, n: usize, m: usize) -> MatrixCode {
        MatrixCode {
            n,
            m,
            space: Subspace::full(field, n * m),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn min_nm(&self) -> usize {
        self.n.min(self.m)
    }

    pub fn max_nm(&self) -> usize {
        self.n.max(self.m)
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Dimension over F_q.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn cardinality(&self) -> u128 {
        self.space.cardinality()
    }

    /// The canonical basis as matrices.
    pub fn basis(&self) -> Vec<Mat> {
        self.space
            .rows()
            .map(|r| Mat::from_raw(self.field(), self.n, self.m, r.to_vec()))
            .collect()
    }

    pub fn contains(&self, mat: &Mat) -> bool {
        mat.field() == self.field()
            && (mat.rows(), mat.cols()) == (self.n, self.m)
            && self.space.contains_vector(mat.data())
    }

    /// `self ⊆ other`.
    pub fn is_subcode_of(&self, other: &MatrixCode) -> bool {
        (self.n, self.m) == (other.n, other.m) && other.space.contains(&self.space).unwrap_or(false)
    }

    /// Every codeword, as a row-major vector.
    pub fn codewords(&self, budget: Budget) -> Result<SpanIter> {
        budget.check("codeword enumeration", self.cardinality())?;
        Ok(self.space.vectors())
    }

    /// `A_0, ..., A_{min(n,m)}` by enumeration.
    pub fn weight_distribution(&self, budget: Budget) -> Result<Vec<u128>> {
        let mut dist = vec![0u128; self.min_nm() + 1];
        let f = self.field().clone();
        for w in self.codewords(budget)? {
            dist[rank_of(&f, &w, self.m)] += 1;
        }
        Ok(dist)
    }

    /// Minimum nonzero rank; `min(n,m) + 1` for the zero code.
    pub fn min_distance(&self, budget: Budget) -> Result<usize> {
        let dist = self.weight_distribution(budget)?;
        Ok(min_distance_of(&dist))
    }

    /// Largest rank of a codeword; 0 for the zero code.
    pub fn max_rank(&self, budget: Budget) -> Result<usize> {
        let dist = self.weight_distribution(budget)?;
        Ok(max_rank_of(&dist))
    }

    /// Dual with respect to tr(M N^T).
    pub fn dual(&self) -> MatrixCode {
        MatrixCode {
            n: self.n,
            m: self.m,
            space: self.space.perp(),
        }
    }

    /// `C^T ⊆ Mat_{m×n}`.
    pub fn transpose(&self) -> MatrixCode {
        let t: Vec<u32> = self
            .basis()
            .iter()
            .flat_map(|b| b.transpose().into_data())
            .collect();
        MatrixCode {
            n: self.m,
            m: self.n,
            space: Subspace::from_data(self.field(), self.n * self.m, t),
        }
    }

    /// Sum of the supports of all codewords; the supports of a basis suffice
    /// since `supp(M + N) ⊆ supp(M) + supp(N)`.
    pub fn code_support(&self) -> Subspace {
        let mut acc = Subspace::zero(self.field(), self.min_nm());
        for b in self.basis() {
            acc = acc.sum(&support(&b)).expect("same ambient");
        }
        acc
    }

    /// Subcode cut out by a linear map on codewords: `{M ∈ C : map(M) = 0}`.
    fn kernel_subcode(&self, map: impl Fn(&Mat) -> Vec<u32>) -> MatrixCode {
        let basis = self.basis();
        let l = basis.len();
        if l == 0 {
            return self.clone();
        }
        let images: Vec<Vec<u32>> = basis.iter().map(&map).collect();
        let r = images[0].len();
        if r == 0 {
            return self.clone();
        }
        // c ranges over {c : Σ c_t images_t = 0} = rowsp(W^T)^⊥.
        let mut wt = vec![0u32; r * l];
        for (t, img) in images.iter().enumerate() {
            for (j, &v) in img.iter().enumerate() {
                wt[j * l + t] = v;
            }
        }
        let coeffs = Subspace::from_data(self.field(), l, wt).perp();
        let f = self.field();
        let nm = self.n * self.m;
        let data: Vec<u32> = coeffs
            .rows()
            .flat_map(|c| {
                let mut v = vec![0u32; nm];
                for (t, &ct) in c.iter().enumerate() {
                    if ct == 0 {
                        continue;
                    }
                    for (j, &bj) in basis[t].data().iter().enumerate() {
                        v[j] = f.add(v[j], f.mul(ct, bj));
                    }
                }
                v
            })
            .collect();
        MatrixCode {
            n: self.n,
            m: self.m,
            space: Subspace::from_data(f, nm, data),
        }
    }

    /// `C(V) = {M ∈ C : supp(M) ⊆ V}` for `V ⊆ F_q^{min(n,m)}`.
    pub fn shorten(&self, v: &Subspace) -> Result<MatrixCode> {
        if v.ambient() != self.min_nm() {
            return Err(Error::DimensionMismatch(format!(
                "support space is F^{}, got a subspace of F^{}",
                self.min_nm(),
                v.ambient()
            )));
        }
        if v.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if self.n <= self.m {
            Ok(self.columns_in(v))
        } else {
            Ok(self.rows_in(v))
        }
    }

    /// `C ∩ Mat_V^{colsp} = {M ∈ C : colsp(M) ⊆ V}` for `V ⊆ F_q^n`,
    /// regardless of shape.
    pub fn shorten_colsp(&self, v: &Subspace) -> Result<MatrixCode> {
        if v.ambient() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "column space lives in F^{}, got a subspace of F^{}",
                self.n,
                v.ambient()
            )));
        }
        if v.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.columns_in(v))
    }

    fn columns_in(&self, v: &Subspace) -> MatrixCode {
        // colsp(M) ⊆ V  ⇔  H M = 0 for H spanning V^⊥.
        let h = v.perp();
        let Some(h) = h.generator_matrix() else {
            return self.clone();
        };
        self.kernel_subcode(|mat| h.mul_unchecked(mat).into_data())
    }

    fn rows_in(&self, v: &Subspace) -> MatrixCode {
        // rowsp(M) ⊆ V  ⇔  M H^T = 0 for H spanning V^⊥.
        let h = v.perp();
        let Some(h) = h.generator_matrix() else {
            return self.clone();
        };
        let ht = h.transpose();
        self.kernel_subcode(|mat| mat.mul_unchecked(&ht).into_data())
    }

    pub fn intersect(&self, other: &MatrixCode) -> Result<MatrixCode> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::DimensionMismatch("codes of different shapes".into()));
        }
        Ok(MatrixCode {
            n: self.n,
            m: self.m,
            space: self.space.intersect(&other.space)?,
        })
    }

    pub fn sum(&self, other: &MatrixCode) -> Result<MatrixCode> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::DimensionMismatch("codes of different shapes".into()));
        }
        Ok(MatrixCode {
            n: self.n,
            m: self.m,
            space: self.space.sum(&other.space)?,
        })
    }

    /// Image of the code under a global isometry.
    pub fn map(&self, iso: &Isometry) -> Result<MatrixCode> {
        let images = self
            .basis()
            .iter()
            .map(|b| iso.apply(b))
            .collect::<Result<Vec<_>>>()?;
        MatrixCode::new(self.field(), self.n, self.m, &images)
    }

    pub fn classify(&self, budget: Budget) -> Result<Classification> {
        let dist = self.weight_distribution(budget)?;
        let dual_dist = self.dual().weight_distribution(budget)?;
        let (d, r, dd) = (
            min_distance_of(&dist),
            max_rank_of(&dist),
            min_distance_of(&dual_dist),
        );
        let (mu, big) = (self.min_nm(), self.max_nm());
        Ok(Classification {
            d_min: d,
            max_rank: r,
            dual_d_min: dd,
            is_mrd: self.dim() == big * (mu + 1 - d),
            is_optimal_anticode: self.dim() == big * r,
            is_dually_quasi_mrd: d + dd == mu + 1,
        })
    }
}

pub(crate) fn min_distance_of(dist: &[u128]) -> usize {
    (1..dist.len()).find(|&i| dist[i] > 0).unwrap_or(dist.len())
}

pub(crate) fn max_rank_of(dist: &[u128]) -> usize {
    (0..dist.len()).rev().find(|&i| dist[i] > 0).unwrap_or(0)
}

/// The standard optimal anticode of maximum rank `k`: the matrices whose
/// last `n − k` rows vanish when `n <= m`, or whose last `m − k` columns
/// vanish when `n > m`. `transposed` (square shapes only) returns the
/// transpose of that code.
pub fn standard_anticode(
    field: &Field,
    n: usize,
    m: usize,
    k: usize,
    transposed: bool,
) -> Result<MatrixCode> {
    if n == 0 || m == 0 {
        return Err(Error::DimensionMismatch("n and m must be positive".into()));
    }
    if k > n.min(m) {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds min(n, m) = {}",
            n.min(m)
        )));
    }
    if transposed && n != m {
        return Err(Error::InvalidArgument(
            "the transposed family exists only for square matrices".into(),
        ));
    }
    let mut gens = Vec::new();
    for r in 0..n {
        for c in 0..m {
            let keep = if n <= m { r < k } else { c < k };
            if keep {
                let mut e = Mat::zeros(field, n, m);
                e.set(r, c, 1);
                gens.push(e);
            }
        }
    }
    let code = MatrixCode::new(field, n, m, &gens)?;
    Ok(if transposed { code.transpose() } else { code })
}

/// Searches for an isometry mapping `c` onto `d`. Equal codes get the
/// identity; otherwise candidates are tried in the order (untransposed
/// before transposed, A lexicographic, B lexicographic) and the first hit
/// is returned.
pub fn are_equivalent(c: &MatrixCode, d: &MatrixCode, budget: Budget) -> Result<Option<Isometry>> {
    if c.field() != d.field() {
        return Err(Error::FieldMismatch);
    }
    if (c.n, c.m) != (d.n, d.m) {
        return Err(Error::DimensionMismatch("codes of different shapes".into()));
    }
    let q = c.field().order() as u64;
    let families = if c.n == c.m { 2 } else { 1 };
    budget.check(
        "isometry search",
        gl_order(c.n, q) * gl_order(c.m, q) * families,
    )?;
    if c.dim() != d.dim() {
        return Ok(None);
    }
    if c == d {
        return Ok(Some(Isometry::identity(c.field(), c.n, c.m)));
    }
    let basis = c.basis();
    search_isometries(c, budget, |iso_images| {
        iso_images
            .iter()
            .all(|img| d.space.contains_vector(img.data()))
    }, &basis)
    .map(|(w, _)| w)
}

/// Walks every global isometry of Mat_{n×m} and returns the first whose
/// images of `basis` satisfy `accept`, with the number inspected.
fn search_isometries(
    c: &MatrixCode,
    budget: Budget,
    accept: impl Fn(&[Mat]) -> bool,
    basis: &[Mat],
) -> Result<(Option<Isometry>, u128)> {
    let f = c.field();
    let gl_m: Vec<Mat> = enumerate_gl(f, c.m, budget)?.collect();
    let mut examined = 0u128;
    let families: &[bool] = if c.n == c.m { &[false, true] } else { &[false] };
    for &transposed in families {
        let inner: Vec<Mat> = basis
            .iter()
            .map(|b| if transposed { b.transpose() } else { b.clone() })
            .collect();
        for a in enumerate_gl(f, c.n, budget)? {
            let left: Vec<Mat> = inner.iter().map(|b| a.mul_unchecked(b)).collect();
            for b in &gl_m {
                examined += 1;
                let images: Vec<Mat> = left.iter().map(|x| x.mul_unchecked(b)).collect();
                if accept(&images) {
                    return Ok((
                        Some(Isometry {
                            a,
                            b: b.clone(),
                            transposed,
                        }),
                        examined,
                    ));
                }
            }
        }
    }
    Ok((None, examined))
}

/// Given a linear map `f` on `c`, specified by the images of the canonical
/// basis, decides whether some global isometry restricts to `f`.
pub fn extension_exists(c: &MatrixCode, images: &[Mat], budget: Budget) -> Result<ExtensionSearch> {
    if images.len() != c.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} images for a code of dimension {}",
            images.len(),
            c.dim()
        )));
    }
    for img in images {
        if img.field() != c.field() {
            return Err(Error::FieldMismatch);
        }
        if (img.rows(), img.cols()) != (c.n, c.m) {
            return Err(Error::DimensionMismatch("image has the wrong shape".into()));
        }
    }
    let q = c.field().order() as u64;
    let families = if c.n == c.m { 2 } else { 1 };
    budget.check(
        "isometry search",
        gl_order(c.n, q) * gl_order(c.m, q) * families,
    )?;
    // Walk the graph {(M, f(M))} to confirm f preserves rank on all of C.
    let nm = c.n * c.m;
    budget.check("codeword enumeration", c.cardinality())?;
    let rows: Vec<Vec<u32>> = c
        .basis()
        .iter()
        .zip(images)
        .map(|(b, i)| [b.data(), i.data()].concat())
        .collect();
    let f = c.field();
    for pair in SpanIter::new(f, 2 * nm, rows) {
        let (x, y) = pair.split_at(nm);
        let (rx, ry) = (rank_of(f, x, c.m), rank_of(f, y, c.m));
        if rx != ry {
            return Err(Error::NotIsometry(format!(
                "a codeword of rank {rx} maps to rank {ry}"
            )));
        }
    }
    let basis = c.basis();
    let (extension, examined) = search_isometries(
        c,
        budget,
        |got| got.iter().zip(images).all(|(g, want)| g == want),
        &basis,
    )?;
    Ok(ExtensionSearch {
        extension,
        examined,
    })
}
