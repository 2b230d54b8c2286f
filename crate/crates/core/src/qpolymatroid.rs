//! q-polymatroids as complete rank tables, and the ones attached to
//! rank-metric codes.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::{enumerate_gl, enumerate_subspaces, Mat, Subspace};
use crate::matrix_codes::MatrixCode;
use crate::Budget;

/// A rank function on every subspace of F_q^ℓ, stored in canonical
/// enumeration order.
#[derive(Clone, PartialEq, Eq)]
pub struct QPolymatroid {
    field: Field,
    ground: usize,
    table: BTreeMap<Subspace, Rational64>,
}

impl fmt::Debug for QPolymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolymatroid(F^{}, {:?})", self.ground, self.table.values().collect::<Vec<_>>())
    }
}

fn r(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

impl QPolymatroid {
    /// Tabulates `rho` over all subspaces of F_q^ℓ and checks (P1)–(P3).
    pub fn new(
        field: &Field,
        ground: usize,
        rho: impl Fn(&Subspace) -> Result<Rational64>,
        budget: Budget,
    ) -> Result<QPolymatroid> {
        let mut table = BTreeMap::new();
        for v in enumerate_subspaces(field, ground, None, budget)? {
            let x = rho(&v)?;
            table.insert(v, x);
        }
        let p = QPolymatroid {
            field: field.clone(),
            ground,
            table,
        };
        p.check_axioms(budget)?;
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// ℓ, the dimension of the ground space.
    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn rank(&self, v: &Subspace) -> Rational64 {
        self.table[v]
    }

    /// ρ of the whole ground space.
    pub fn total(&self) -> Rational64 {
        self.table[&Subspace::full(&self.field, self.ground)]
    }

    /// `(V, ρ(V))` in canonical enumeration order.
    pub fn entries(&self) -> impl Iterator<Item = (&Subspace, Rational64)> {
        self.table.iter().map(|(v, x)| (v, *x))
    }

    /// Verifies (P1) bounds, (P2) monotonicity and (P3) submodularity over
    /// all pairs of subspaces.
    pub fn check_axioms(&self, budget: Budget) -> Result<()> {
        let n = self.table.len() as u128;
        budget.check("q-polymatroid axiom pairs", n * n)?;
        for (v, &x) in &self.table {
            if x < r(0) || x > r(v.dim() as i64) {
                return Err(Error::AxiomViolation(format!("(P1) fails: rho({v:?}) = {x}")));
            }
        }
        for (u, &xu) in &self.table {
            for (v, &xv) in &self.table {
                if xu > xv && v.contains(u)? {
                    return Err(Error::AxiomViolation(format!(
                        "(P2) fails: {u:?} in {v:?} but rho drops from {xu} to {xv}"
                    )));
                }
                let s = self.table[&u.sum(v)?];
                let i = self.table[&u.intersect(v)?];
                if s + i > xu + xv {
                    return Err(Error::AxiomViolation(format!(
                        "(P3) fails for {u:?} and {v:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ρ*(V) = dim V − ρ(F_q^ℓ) + ρ(V^⊥)`.
    pub fn dual(&self) -> QPolymatroid {
        let total = self.total();
        let table = self
            .table
            .keys()
            .map(|v| (v.clone(), r(v.dim() as i64) - total + self.table[&v.perp()]))
            .collect();
        QPolymatroid {
            field: self.field.clone(),
            ground: self.ground,
            table,
        }
    }

    /// `ρ(V) = min(dim V, min − d + 1)`, the rank function of an MRD code of
    /// minimum distance `d` with support space F_q^min.
    pub fn mrd_canonical(field: &Field, mu: usize, d: usize, budget: Budget) -> Result<QPolymatroid> {
        if d == 0 || d > mu + 1 {
            return Err(Error::InvalidArgument(format!("d = {d} outside 1..={}", mu + 1)));
        }
        let cap = (mu + 1 - d) as i64;
        QPolymatroid::new(field, mu, |v| Ok(r((v.dim() as i64).min(cap))), budget)
    }

    /// `ρ(V) = dim(V + ⟨e_1..e_{min−r}⟩) − (min − r)`, the rank function of
    /// a standard optimal anticode of maximum rank `r`.
    pub fn anticode_canonical(field: &Field, mu: usize, rank: usize, budget: Budget) -> Result<QPolymatroid> {
        if rank > mu {
            return Err(Error::InvalidArgument(format!("r = {rank} exceeds {mu}")));
        }
        let e = Subspace::standard(field, mu, mu - rank);
        QPolymatroid::new(
            field,
            mu,
            |v| Ok(r(v.sum(&e)?.dim() as i64 - (mu - rank) as i64)),
            budget,
        )
    }

    fn image_preserves(&self, other: &QPolymatroid, g: &Mat) -> Result<bool> {
        for (v, &x) in &self.table {
            if other.table[&v.image(g)?] != x {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Searches `G ∈ GL_ℓ(F_q)` (lexicographic, identity first when `p = q`)
/// with `ρ_p(V) = ρ_q(V·G)` for every `V`.
pub fn pm_equivalent(p: &QPolymatroid, q: &QPolymatroid, budget: Budget) -> Result<Option<Mat>> {
    if p.field != q.field || p.ground != q.ground {
        return Err(Error::DimensionMismatch("q-polymatroids on different ground spaces".into()));
    }
    if p.ground == 0 {
        return Ok((p == q).then(|| Mat::identity(&p.field, 1)));
    }
    let id = Mat::identity(&p.field, p.ground);
    if p.image_preserves(q, &id)? {
        return Ok(Some(id));
    }
    for g in enumerate_gl(&p.field, p.ground, budget)? {
        if p.image_preserves(q, &g)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// P(C), and P(C^T) as well when the matrices are square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePolymatroid {
    pub n: usize,
    pub m: usize,
    pub p: QPolymatroid,
    pub transposed: Option<QPolymatroid>,
}

impl CodePolymatroid {
    fn big(&self) -> usize {
        self.n.max(self.m)
    }

    fn mu(&self) -> usize {
        self.n.min(self.m)
    }
}

/// `ρ_C(V) = (dim C − dim C(V^⊥)) / max{m,n}` on F_q^{min{m,n}}.
pub fn code_rank_function(c: &MatrixCode, budget: Budget) -> Result<QPolymatroid> {
    let big = c.max_nm() as i64;
    let dim = c.dim() as i64;
    QPolymatroid::new(
        c.field(),
        c.min_nm(),
        |v| Ok(Rational64::new(dim - c.shorten(&v.perp())?.dim() as i64, big)),
        budget,
    )
}

pub fn from_code(c: &MatrixCode, budget: Budget) -> Result<CodePolymatroid> {
    let transposed = if c.n() == c.m() {
        Some(code_rank_function(&c.transpose(), budget)?)
    } else {
        None
    };
    Ok(CodePolymatroid {
        n: c.n(),
        m: c.m(),
        p: code_rank_function(c, budget)?,
        transposed,
    })
}

/// Code invariants read off the q-polymatroid(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovered {
    pub dim: usize,
    pub d_min: usize,
    pub profile: Vec<usize>,
}

fn integral(x: Rational64, what: &str) -> Result<i64> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::NonIntegral(format!("{what} = {x}")))
    }
}

/// `d_i(P) = min − max{dim V : dim C − max·ρ(V) >= i}`.
fn d_profile(p: &QPolymatroid, dim: usize, big: usize, mu: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(dim);
    for i in 1..=dim {
        let mut best = None;
        for (v, x) in p.entries() {
            let left = integral(r(dim as i64) - x * r(big as i64), "dim C(V^perp)")?;
            if left >= i as i64 {
                best = best.max(Some(v.dim()));
            }
        }
        let b = best.expect("V = 0 always qualifies");
        out.push(mu - b);
    }
    Ok(out)
}

pub fn recover(cp: &CodePolymatroid) -> Result<Recovered> {
    let (big, mu) = (cp.big(), cp.mu());
    let dim = integral(cp.p.total() * r(big as i64), "dim C")? as usize;
    let full = Rational64::new(dim as i64, big as i64);
    let delta = (0..=mu)
        .find(|&k| cp.p.entries().filter(|(v, _)| v.dim() == k).all(|(_, x)| x == full))
        .expect("the whole space attains rho(E)");
    let mut profile = d_profile(&cp.p, dim, big, mu)?;
    if let Some(pt) = &cp.transposed {
        let other = d_profile(pt, dim, big, mu)?;
        for (a, b) in profile.iter_mut().zip(other) {
            *a = (*a).min(b);
        }
    }
    Ok(Recovered {
        dim,
        d_min: mu + 1 - delta,
        profile,
    })
}

/// A polynomial in `x, y` with integer coefficients, keyed by
/// `(x exponent, y exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumerator {
    pub terms: BTreeMap<(u32, u32), i128>,
}

impl Enumerator {
    /// `Σ A_i x^i y^{μ−i}`.
    pub fn from_distribution(a: &[u128]) -> Result<Enumerator> {
        let mu = a.len().saturating_sub(1) as u32;
        let mut terms = BTreeMap::new();
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                let c = i128::try_from(ai).map_err(|_| Error::Overflow("enumerator".into()))?;
                terms.insert((i as u32, mu - i as u32), c);
            }
        }
        Ok(Enumerator { terms })
    }
}

impl fmt::Display for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending y exponent, as weight enumerators are usually written
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(xe, ye), _)| (std::cmp::Reverse(ye), xe));
        for (k, (&(xe, ye), &c)) in terms.into_iter().enumerate() {
            let mono = [("x", xe), ("y", ye)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
                .collect::<String>();
            let mag = c.unsigned_abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag}{mono}"),
            };
            match (k, c < 0) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// Shiromoto's formula, for `n <= m`:
/// `W(x,y) = x^{n−ℓ/m} Σ_V (q^m x)^{ρ(E)−ρ(V)} x^{−(dim V − ρ(V))} Π_{i<dim V} (y − q^i x)`,
/// with the product taken inside the sum. Exponents of `x` are tracked as
/// exact rationals; a fractional exponent left after cancellation is an
/// error.
pub fn weight_enumerator(p: &QPolymatroid, n: usize, m: usize) -> Result<Enumerator> {
    if n > m {
        return Err(Error::Inapplicable(format!("the formula needs n <= m, got {n} > {m}")));
    }
    if p.ground() != n {
        return Err(Error::DimensionMismatch(format!(
            "q-polymatroid on F^{}, expected F^{n}",
            p.ground()
        )));
    }
    let q = p.field().order() as i128;
    let total = p.total();
    let ell = total * r(m as i64);
    let ovf = || Error::Overflow("weight enumerator".into());
    let mut acc: BTreeMap<(Rational64, u32), i128> = BTreeMap::new();
    for (v, x) in p.entries() {
        let dv = v.dim();
        let coeff_exp = integral((total - x) * r(m as i64), "power of q")?;
        let coeff = q.checked_pow(coeff_exp as u32).ok_or_else(ovf)?;
        let x_shift = r(n as i64) - ell / r(m as i64) + (total - x) - (r(dv as i64) - x);
        // Π_{i<dv} (y − q^i x), as coefficients of x^t y^{dv−t}
        let mut prod: Vec<i128> = vec![1];
        for i in 0..dv {
            let qi = q.checked_pow(i as u32).ok_or_else(ovf)?;
            let mut next = vec![0i128; prod.len() + 1];
            for (t, &c) in prod.iter().enumerate() {
                next[t] = next[t].checked_add(c).ok_or_else(ovf)?;
                let s = c.checked_mul(qi).ok_or_else(ovf)?;
                next[t + 1] = next[t + 1].checked_sub(s).ok_or_else(ovf)?;
            }
            prod = next;
        }
        for (t, &c) in prod.iter().enumerate() {
            let key = (x_shift + r(t as i64), (dv - t) as u32);
            let e = acc.entry(key).or_insert(0);
            *e = c.checked_mul(coeff).and_then(|y| e.checked_add(y)).ok_or_else(ovf)?;
        }
    }
    let mut terms = BTreeMap::new();
    for ((xe, ye), c) in acc {
        if c == 0 {
            continue;
        }
        let xe = integral(xe, "exponent of x")?;
        if xe < 0 {
            return Err(Error::NonIntegral(format!("negative exponent of x: {xe}")));
        }
        terms.insert((xe as u32, ye), c);
    }
    Ok(Enumerator { terms })
}

/// MRD / optimal-anticode verdicts read off the q-polymatroid(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmCharacterization {
    pub mrd: bool,
    /// The piecewise rank function `min(dim V, min − d + 1)` when MRD.
    pub mrd_form: Option<QPolymatroid>,
    pub anticode: bool,
    /// `r = ρ(F_q^min)` of the member matching the canonical form.
    pub anticode_rank: Option<usize>,
    /// Whether the match was found on P(C^T) rather than P(C).
    pub anticode_via_transpose: bool,
    /// `G` with `ρ(V) = ρ_canonical(V·G)`.
    pub anticode_witness: Option<Mat>,
}

/// MRD iff `ρ_C(V) = dim V` whenever `dim V <= min − d + 1`; optimal
/// anticode iff `ρ(F_q^min)` is an integer `r` and P(C) (or P(C^T) when
/// square) is equivalent to the canonical rank function of rank `r`.
pub fn pm_characterize(cp: &CodePolymatroid, budget: Budget) -> Result<PmCharacterization> {
    let mu = cp.mu();
    let rec = recover(cp)?;
    let cap = mu + 1 - rec.d_min;
    let mrd = cp
        .p
        .entries()
        .filter(|(v, _)| v.dim() <= cap)
        .all(|(v, x)| x == r(v.dim() as i64));
    let mrd_form = if mrd {
        Some(QPolymatroid::mrd_canonical(cp.p.field(), mu, rec.d_min, budget)?)
    } else {
        None
    };
    let mut out = PmCharacterization {
        mrd,
        mrd_form,
        anticode: false,
        anticode_rank: None,
        anticode_via_transpose: false,
        anticode_witness: None,
    };
    let members = std::iter::once((false, &cp.p)).chain(cp.transposed.iter().map(|t| (true, t)));
    for (via_t, p) in members {
        let t = p.total();
        if !t.is_integer() {
            continue;
        }
        let rank = t.to_integer() as usize;
        let canon = QPolymatroid::anticode_canonical(p.field(), mu, rank, budget)?;
        if let Some(g) = pm_equivalent(p, &canon, budget)? {
            out.anticode = true;
            out.anticode_rank = Some(rank);
            out.anticode_via_transpose = via_t;
            out.anticode_witness = Some(g);
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    fn code(n: usize, m: usize, gens: &[&[u32]]) -> MatrixCode {
        let f = f2();
        let mats: Vec<Mat> = gens.iter().map(|g| Mat::new(&f, n, m, g.to_vec()).unwrap()).collect();
        MatrixCode::new(&f, n, m, &mats).unwrap()
    }

    fn equal_columns() -> MatrixCode {
        code(2, 2, &[&[1, 1, 0, 0], &[0, 0, 1, 1]])
    }

    fn mrd_2x3() -> MatrixCode {
        code(2, 3, &[&[1, 0, 0, 0, 1, 0], &[0, 1, 0, 0, 0, 1], &[0, 0, 1, 1, 1, 0]])
    }

    #[test]
    fn equal_columns_tables() {
        let f = f2();
        let cp = from_code(&equal_columns(), Budget::DEFAULT).unwrap();
        for (v, x) in cp.p.entries() {
            assert_eq!(x, Rational64::new(v.dim() as i64, 2));
        }
        let pt = cp.transposed.as_ref().unwrap();
        let diag = Subspace::from_vectors(&f, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(pt.rank(&diag), r(0));
        for v in [vec![1, 0], vec![0, 1]] {
            assert_eq!(pt.rank(&Subspace::from_vectors(&f, 2, &[v]).unwrap()), r(1));
        }
        assert_eq!(pm_equivalent(&cp.p, pt, Budget::DEFAULT).unwrap(), None);
    }

    #[test]
    fn zero_and_full_codes() {
        let f = f2();
        let z = code_rank_function(&MatrixCode::zero(&f, 2, 3), Budget::DEFAULT).unwrap();
        assert!(z.entries().all(|(_, x)| x == r(0)));
        let full = code_rank_function(&MatrixCode::full(&f, 2, 3), Budget::DEFAULT).unwrap();
        assert!(full.entries().all(|(v, x)| x == r(v.dim() as i64)));
        assert_eq!(z.dual(), full);
    }

    #[test]
    fn dual_is_involution_and_matches_dual_code() {
        let c = mrd_2x3();
        let p = code_rank_function(&c, Budget::DEFAULT).unwrap();
        assert_eq!(p.dual().dual(), p);
        assert_eq!(p.dual(), code_rank_function(&c.dual(), Budget::DEFAULT).unwrap());
    }

    #[test]
    fn axioms_are_enforced() {
        let f = f2();
        let bad = QPolymatroid::new(&f, 2, |v| Ok(r(2 * v.dim() as i64)), Budget::DEFAULT);
        assert!(matches!(bad, Err(Error::AxiomViolation(_))));
        let bad = QPolymatroid::new(&f, 2, |v| Ok(r(if v.dim() == 1 { 1 } else { 0 })), Budget::DEFAULT);
        assert!(matches!(bad, Err(Error::AxiomViolation(_))));
    }

    #[test]
    fn recovery_of_examples() {
        let cp = from_code(&mrd_2x3(), Budget::DEFAULT).unwrap();
        let rec = recover(&cp).unwrap();
        assert_eq!(rec, Recovered { dim: 3, d_min: 2, profile: vec![2, 2, 2] });
        let z = from_code(&MatrixCode::zero(&f2(), 2, 3), Budget::DEFAULT).unwrap();
        assert_eq!(recover(&z).unwrap(), Recovered { dim: 0, d_min: 3, profile: vec![] });
        let e = from_code(&equal_columns(), Budget::DEFAULT).unwrap();
        assert_eq!(recover(&e).unwrap().profile, vec![1, 1]);
    }

    #[test]
    fn enumerators() {
        let p = code_rank_function(&mrd_2x3(), Budget::DEFAULT).unwrap();
        let w = weight_enumerator(&p, 2, 3).unwrap();
        assert_eq!(w, Enumerator::from_distribution(&[1, 0, 7]).unwrap());
        assert_eq!(w.to_string(), "y^2 + 7x^2");
        let p = code_rank_function(&MatrixCode::full(&f2(), 1, 2), Budget::DEFAULT).unwrap();
        assert_eq!(weight_enumerator(&p, 1, 2).unwrap().to_string(), "y + 3x");
        let p = code_rank_function(&MatrixCode::zero(&f2(), 2, 3), Budget::DEFAULT).unwrap();
        assert_eq!(weight_enumerator(&p, 2, 3).unwrap().to_string(), "y^2");
        assert!(weight_enumerator(&p, 3, 2).is_err());
    }

    #[test]
    fn characterizations() {
        let cp = from_code(&mrd_2x3(), Budget::DEFAULT).unwrap();
        let ch = pm_characterize(&cp, Budget::DEFAULT).unwrap();
        assert!(ch.mrd && !ch.anticode);
        assert_eq!(ch.mrd_form.unwrap(), cp.p);

        let cp = from_code(&equal_columns(), Budget::DEFAULT).unwrap();
        let ch = pm_characterize(&cp, Budget::DEFAULT).unwrap();
        assert!(ch.anticode && !ch.mrd);
        assert_eq!(ch.anticode_rank, Some(1));
        assert!(ch.anticode_via_transpose);

        let z = from_code(&MatrixCode::zero(&f2(), 2, 3), Budget::DEFAULT).unwrap();
        let ch = pm_characterize(&z, Budget::DEFAULT).unwrap();
        assert!(ch.mrd && ch.anticode);
    }
}
