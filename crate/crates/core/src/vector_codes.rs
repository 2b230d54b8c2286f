//! F_{q^m}-linear vector rank-metric codes in F_{q^m}^n and their
//! Γ-expansions to matrix codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldBasis};
use crate::linalg::{enumerate_gl, gl_order, Mat, SpanIter, Subspace};
use crate::matrix_codes::MatrixCode;
use crate::Budget;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorCode {
    space: Subspace,
}

impl fmt::Debug for VectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorCode(n {}, dim {}, {:?})", self.n(), self.dim(), self.space)
    }
}

/// Coefficient matrix of `v` in the power basis: row `i` holds the
/// coordinates of `v_i`. This is Γ(v) for Γ = {1, α, ..., α^{m-1}}.
fn coeff_matrix(field: &Field, v: &[u32]) -> Mat {
    let prime = field.prime_subfield();
    let data: Vec<u32> = v.iter().flat_map(|&x| field.coeffs(x)).collect();
    Mat::from_raw(&prime, v.len(), field.degree(), data)
}

/// Dimension over F_q of the span of the entries of `v`.
pub fn rank_weight(field: &Field, v: &[u32]) -> usize {
    if v.is_empty() {
        return 0;
    }
    coeff_matrix(field, v).rank()
}

/// `supp(v) = colsp(Γ(v)) ⊆ F_q^n`, computed with the power basis.
pub fn vector_support(field: &Field, v: &[u32]) -> Subspace {
    coeff_matrix(field, v).colsp()
}

/// Γ(v): the `n × m` matrix over F_q whose row `i` holds the coordinates
/// of `v_i` in `basis`.
pub fn expand_vector(v: &[u32], basis: &FieldBasis) -> Result<Mat> {
    let field = basis.field();
    if v.is_empty() {
        return Err(Error::DimensionMismatch("empty vector".into()));
    }
    if v.iter().any(|&x| !field.contains(x)) {
        return Err(Error::FieldMismatch);
    }
    let data: Vec<u32> = v.iter().flat_map(|&x| basis.coordinates(x)).collect();
    Ok(Mat::from_raw(&field.prime_subfield(), v.len(), field.degree(), data))
}

/// Bound-equality flags of a vector code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VClassification {
    pub d_min: usize,
    pub max_rank: usize,
    pub is_mrd: bool,
    pub is_optimal_vector_anticode: bool,
}

/// `v ↦ α v B` with `α ∈ F_{q^m}^*` and `B ∈ GL_n(F_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VIsometry {
    pub alpha: u32,
    pub b: Mat,
}

impl VIsometry {
    pub fn apply(&self, field: &Field, v: &[u32]) -> Vec<u32> {
        let n = v.len();
        (0..n)
            .map(|j| {
                let s = (0..n).fold(0u32, |acc, i| {
                    let bij = self.b.get(i, j);
                    if bij == 0 {
                        acc
                    } else {
                        field.add(acc, field.mul(v[i], field.from_prime(bij)))
                    }
                });
                field.mul(self.alpha, s)
            })
            .collect()
    }
}

impl VectorCode {
    /// The F_{q^m}-span of `rows`, each of length `n`.
    pub fn new(field: &Field, n: usize, rows: &[Vec<u32>]) -> Result<VectorCode> {
        if n == 0 {
            return Err(Error::DimensionMismatch("n must be positive".into()));
        }
        Ok(VectorCode {
            space: Subspace::from_vectors(field, n, rows)?,
        })
    }

    pub fn from_space(space: Subspace) -> Result<VectorCode> {
        if space.ambient() == 0 {
            return Err(Error::DimensionMismatch("n must be positive".into()));
        }
        Ok(VectorCode { space })
    }

    pub fn zero(field: &Field, n: usize) -> VectorCode {
        VectorCode {
            space: Subspace::zero(field, n),
        }
    }

    pub fn full(field: &Field, n: usize) -> VectorCode {
        VectorCode {
            space: Subspace::full(field, n),
        }
    }

    /// `⟨e_1, ..., e_k⟩`.
    pub fn standard(field: &Field, n: usize, k: usize) -> VectorCode {
        VectorCode {
            space: Subspace::standard(field, n, k),
        }
    }

    pub fn n(&self) -> usize {
        self.space.ambient()
    }

    /// Extension degree of the field of entries over F_q.
    pub fn m(&self) -> usize {
        self.field().degree()
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Dimension over F_{q^m}.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn generators(&self) -> Vec<Vec<u32>> {
        self.space.rows().map(|r| r.to_vec()).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        v.len() == self.n() && v.iter().all(|&x| self.field().contains(x)) && self.space.contains_vector(v)
    }

    pub fn is_subcode_of(&self, other: &VectorCode) -> bool {
        other.space.contains(&self.space).unwrap_or(false)
    }

    pub fn cardinality(&self) -> u128 {
        self.space.cardinality()
    }

    pub fn codewords(&self, budget: Budget) -> Result<SpanIter> {
        budget.check("codeword enumeration", self.cardinality())?;
        Ok(self.space.vectors())
    }

    /// `A_0, ..., A_{min(n,m)}` by enumeration.
    pub fn weight_distribution(&self, budget: Budget) -> Result<Vec<u128>> {
        let mut dist = vec![0u128; self.n().min(self.m()) + 1];
        for v in self.codewords(budget)? {
            dist[rank_weight(self.field(), &v)] += 1;
        }
        Ok(dist)
    }

    /// Minimum nonzero rank weight; `n + 1` for the zero code.
    pub fn min_distance(&self, budget: Budget) -> Result<usize> {
        let dist = self.weight_distribution(budget)?;
        Ok((1..dist.len()).find(|&i| dist[i] > 0).unwrap_or(self.n() + 1))
    }

    pub fn max_rank(&self, budget: Budget) -> Result<usize> {
        let dist = self.weight_distribution(budget)?;
        Ok((0..dist.len()).rev().find(|&i| dist[i] > 0).unwrap_or(0))
    }

    /// Dual with respect to the standard inner product of F_{q^m}^n.
    pub fn dual(&self) -> VectorCode {
        VectorCode {
            space: self.space.perp(),
        }
    }

    pub fn intersect(&self, other: &VectorCode) -> Result<VectorCode> {
        Ok(VectorCode {
            space: self.space.intersect(&other.space)?,
        })
    }

    pub fn sum(&self, other: &VectorCode) -> Result<VectorCode> {
        Ok(VectorCode {
            space: self.space.sum(&other.space)?,
        })
    }

    /// φ(C), applying `x ↦ x^q` entrywise.
    pub fn frobenius(&self) -> VectorCode {
        let f = self.field();
        let rows: Vec<Vec<u32>> = self
            .space
            .rows()
            .map(|r| r.iter().map(|&x| f.frobenius(x)).collect())
            .collect();
        VectorCode {
            space: Subspace::from_vectors(f, self.n(), &rows).expect("same length"),
        }
    }

    /// `D* = D + φ(D) + ... + φ^{m-1}(D)`.
    pub fn frobenius_closure(&self) -> VectorCode {
        let mut acc = self.clone();
        let mut img = self.clone();
        for _ in 1..self.m() {
            img = img.frobenius();
            acc = acc.sum(&img).expect("same ambient");
        }
        acc
    }

    pub fn is_frobenius_fixed(&self) -> bool {
        self.frobenius() == *self
    }

    /// `supp(C) ⊆ F_q^n`: the sum of the supports of a basis, which
    /// suffices because `supp(αv) = supp(v)`.
    pub fn support(&self) -> Subspace {
        let prime = self.field().prime_subfield();
        let mut acc = Subspace::zero(&prime, self.n());
        for r in self.space.rows() {
            acc = acc.sum(&vector_support(self.field(), r)).expect("same ambient");
        }
        acc
    }

    /// Γ(C) ⊆ Mat_{n×m}(F_q), spanned by the expansions of `α^s g_t`.
    pub fn expand(&self, basis: &FieldBasis) -> Result<MatrixCode> {
        let f = self.field();
        if basis.field() != f {
            return Err(Error::FieldMismatch);
        }
        let prime = f.prime_subfield();
        let mut mats = Vec::with_capacity(self.dim() * self.m());
        for g in self.space.rows() {
            let mut scaled = g.to_vec();
            for _ in 0..self.m() {
                mats.push(expand_vector(&scaled, basis)?);
                scaled.iter_mut().for_each(|x| *x = f.mul(f.alpha(), *x));
            }
        }
        MatrixCode::new(&prime, self.n(), self.m(), &mats)
    }

    pub fn classify(&self, budget: Budget) -> Result<VClassification> {
        let dist = self.weight_distribution(budget)?;
        let d = (1..dist.len()).find(|&i| dist[i] > 0).unwrap_or(self.n() + 1);
        let r = (0..dist.len()).rev().find(|&i| dist[i] > 0).unwrap_or(0);
        Ok(VClassification {
            d_min: d,
            max_rank: r,
            is_mrd: self.dim() + d == self.n() + 1,
            is_optimal_vector_anticode: self.dim() == r,
        })
    }

    /// Image under `v ↦ α v B`.
    pub fn map(&self, iso: &VIsometry) -> VectorCode {
        let rows: Vec<Vec<u32>> = self.space.rows().map(|r| iso.apply(self.field(), r)).collect();
        VectorCode {
            space: Subspace::from_vectors(self.field(), self.n(), &rows).expect("same length"),
        }
    }
}

/// Searches `α ∈ F_{q^m}^*` (outer, ascending) and `B ∈ GL_n(F_q)` (inner,
/// lexicographic) for `αCB = D`. Equal codes get the identity.
pub fn v_equivalent(c: &VectorCode, d: &VectorCode, budget: Budget) -> Result<Option<VIsometry>> {
    if c.field() != d.field() {
        return Err(Error::FieldMismatch);
    }
    if c.n() != d.n() {
        return Err(Error::DimensionMismatch("codes of different lengths".into()));
    }
    let f = c.field();
    let prime = f.prime_subfield();
    let units = f.order() as u128 - 1;
    budget.check(
        "vector isometry search",
        units * gl_order(c.n(), prime.order() as u64),
    )?;
    if c.dim() != d.dim() {
        return Ok(None);
    }
    if c == d {
        return Ok(Some(VIsometry {
            alpha: 1,
            b: Mat::identity(&prime, c.n()),
        }));
    }
    let gl: Vec<Mat> = enumerate_gl(&prime, c.n(), budget)?.collect();
    let gens = c.generators();
    for alpha in 1..f.order() {
        for b in &gl {
            let iso = VIsometry {
                alpha,
                b: b.clone(),
            };
            if gens.iter().all(|g| d.space.contains_vector(&iso.apply(f, g))) {
                return Ok(Some(iso));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::enumerate_subspaces;

    fn gf4() -> Field {
        Field::default_extension(2, 2).unwrap()
    }

    fn gf8() -> Field {
        Field::default_extension(2, 3).unwrap()
    }

    #[test]
    fn rank_weights() {
        let f8 = gf8();
        let a = f8.alpha();
        assert_eq!(rank_weight(&f8, &[0, 0]), 0);
        assert_eq!(rank_weight(&f8, &[1, a]), 2);
        assert_eq!(rank_weight(&f8, &[a, a]), 1);
        let f4 = gf4();
        assert_eq!(rank_weight(&f4, &[1, 0, 0]), 1);
    }

    #[test]
    fn rank_weight_is_rank_of_every_expansion() {
        for f in [gf4(), gf8()] {
            let bases = FieldBasis::all(&f, Budget::DEFAULT).unwrap();
            let n = if f.order() == 4 { 2 } else { 1 };
            for v in Subspace::full(&f, n).vectors() {
                for b in &bases {
                    assert_eq!(expand_vector(&v, b).unwrap().rank(), rank_weight(&f, &v));
                }
            }
        }
    }

    #[test]
    fn support_is_basis_independent() {
        let f = gf4();
        let bases = FieldBasis::all(&f, Budget::DEFAULT).unwrap();
        for v in Subspace::full(&f, 2).vectors() {
            let s = vector_support(&f, &v);
            for b in &bases {
                assert_eq!(expand_vector(&v, b).unwrap().colsp(), s);
            }
        }
    }

    #[test]
    fn code_support_matches_enumeration() {
        let f = gf4();
        let prime = f.prime_subfield();
        for s in enumerate_subspaces(&f, 3, None, Budget::DEFAULT).unwrap() {
            let c = VectorCode::from_space(s).unwrap();
            let mut acc = Subspace::zero(&prime, 3);
            for v in c.codewords(Budget::DEFAULT).unwrap() {
                acc = acc.sum(&vector_support(&f, &v)).unwrap();
            }
            assert_eq!(c.support(), acc);
        }
    }

    #[test]
    fn expansion_of_one_alpha() {
        let f = gf8();
        let a = f.alpha();
        let c = VectorCode::new(&f, 2, &[vec![1, a]]).unwrap();
        let g = c.expand(&FieldBasis::power(&f)).unwrap();
        assert_eq!(g.dim(), 3);
        assert_eq!(g.min_distance(Budget::DEFAULT).unwrap(), 2);
        assert_eq!(c.min_distance(Budget::DEFAULT).unwrap(), 2);
        assert!(c.classify(Budget::DEFAULT).unwrap().is_mrd);
        assert_eq!(
            VectorCode::zero(&f, 2).expand(&FieldBasis::power(&f)).unwrap(),
            MatrixCode::zero(&f.prime_subfield(), 2, 3)
        );
    }

    #[test]
    fn expansion_of_gf4_line_is_full_space() {
        let f = gf4();
        let g = VectorCode::full(&f, 1).expand(&FieldBasis::power(&f)).unwrap();
        assert_eq!(g, MatrixCode::full(&f.prime_subfield(), 1, 2));
    }

    #[test]
    fn dual_of_one_alpha() {
        let f = gf8();
        let a = f.alpha();
        let c = VectorCode::new(&f, 2, &[vec![1, a]]).unwrap();
        let a2p1 = f.add(f.mul(a, a), 1);
        assert_eq!(c.dual(), VectorCode::new(&f, 2, &[vec![1, a2p1]]).unwrap());
        assert_eq!(c.dual().dual(), c);
        assert_eq!(VectorCode::zero(&f, 2).dual(), VectorCode::full(&f, 2));
    }

    #[test]
    fn frobenius_closures() {
        let f = gf4();
        let a = f.alpha();
        let d = VectorCode::new(&f, 2, &[vec![1, a]]).unwrap();
        assert_eq!(d.frobenius_closure(), VectorCode::full(&f, 2));
        let e = VectorCode::new(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(e.frobenius_closure(), e);
        assert!(e.is_frobenius_fixed());
        assert!(!d.is_frobenius_fixed());
        let star = d.frobenius_closure();
        assert_eq!(star.frobenius_closure(), star);
    }

    #[test]
    fn classification_examples() {
        let f = gf4();
        let s = VectorCode::standard(&f, 3, 2);
        let cl = s.classify(Budget::DEFAULT).unwrap();
        assert!(cl.is_optimal_vector_anticode);
        let full = VectorCode::full(&f, 3);
        let cl = full.classify(Budget::DEFAULT).unwrap();
        assert!(!cl.is_optimal_vector_anticode);
        assert!(cl.is_mrd);
        let z = VectorCode::zero(&f, 3).classify(Budget::DEFAULT).unwrap();
        assert_eq!(z.d_min, 4);
        assert!(z.is_mrd && z.is_optimal_vector_anticode);
    }

    #[test]
    fn only_trivial_mrd_codes_when_n_exceeds_m() {
        let f = gf4();
        for s in enumerate_subspaces(&f, 3, None, Budget::DEFAULT).unwrap() {
            let c = VectorCode::from_space(s).unwrap();
            let trivial = c.dim() == 0 || c.dim() == 3;
            assert_eq!(c.classify(Budget::DEFAULT).unwrap().is_mrd, trivial, "{c:?}");
        }
    }

    #[test]
    fn equivalence_witnesses() {
        let f = gf4();
        let c = VectorCode::new(&f, 2, &[vec![1, 0]]).unwrap();
        let d = VectorCode::new(&f, 2, &[vec![0, 1]]).unwrap();
        let w = v_equivalent(&c, &c, Budget::DEFAULT).unwrap().unwrap();
        assert_eq!(w.alpha, 1);
        assert_eq!(w.b, Mat::identity(&f.prime_subfield(), 2));
        let w = v_equivalent(&c, &d, Budget::DEFAULT).unwrap().unwrap();
        assert_eq!(w.alpha, 1);
        assert_eq!(w.b.data(), &[0, 1, 1, 0]);
        assert_eq!(c.map(&w), d);
        // (1, α) has rank 2, (1, 0) rank 1
        let e = VectorCode::new(&f, 2, &[vec![1, f.alpha()]]).unwrap();
        assert_eq!(v_equivalent(&c, &e, Budget::DEFAULT).unwrap(), None);
    }
}
