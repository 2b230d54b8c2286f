//! Generalized weights of matrix and vector rank-metric codes.
//!
//! Every minimization walks subspaces in canonical enumeration order
//! (dimension first, then canonical generator), so the reported witness is
//! the first optimal one in that order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fields::{Field, FieldBasis};
use crate::linalg::{enumerate_subspaces, Subspace};
use crate::matrix_codes::MatrixCode;
use crate::vector_codes::{rank_weight, VectorCode};
use crate::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// `d_i`, via optimal anticodes.
    D,
    /// `δ_i`, via column spaces.
    Delta,
    /// `w_i` of a vector code.
    W,
    /// `w_i(C, D)` or `δ_i(C, D)` for a proper subcode `D`.
    Relative,
}

/// Weights indexed from 1, with one optimal witness subspace per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightProfile {
    pub kind: WeightKind,
    pub values: Vec<usize>,
    pub witnesses: Vec<Subspace>,
}

impl WeightProfile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `i`-th weight, `1 <= i <= len`.
    pub fn get(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.values.len() {
            return Err(Error::InvalidArgument(format!(
                "weight index {i} outside 1..={}",
                self.values.len()
            )));
        }
        Ok(self.values[i - 1])
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// For each `i` in `1..=len`, the first `(dim V, V)` whose score reaches `i`.
fn first_reaching(scored: &[(Subspace, usize)], len: usize, kind: WeightKind) -> WeightProfile {
    let mut values = Vec::with_capacity(len);
    let mut witnesses = Vec::with_capacity(len);
    for i in 1..=len {
        let (v, _) = scored
            .iter()
            .find(|(_, s)| *s >= i)
            .expect("the ambient space always reaches the full dimension");
        values.push(v.dim());
        witnesses.push(v.clone());
    }
    WeightProfile {
        kind,
        values,
        witnesses,
    }
}

/// `d_i(C) = min{dim V : V ⊆ F_q^{min(n,m)}, dim C(V) >= i}`, with
/// `max{dim C(V), dim C^T(V)}` in the square case.
pub fn d_weights(c: &MatrixCode, budget: Budget) -> Result<WeightProfile> {
    let ct = (c.n() == c.m()).then(|| c.transpose());
    let mut scored = Vec::new();
    for v in enumerate_subspaces(c.field(), c.min_nm(), None, budget)? {
        let mut s = c.shorten(&v)?.dim();
        if let Some(ct) = &ct {
            s = s.max(ct.shorten(&v)?.dim());
        }
        scored.push((v, s));
    }
    Ok(first_reaching(&scored, c.dim(), WeightKind::D))
}

/// `δ_i(C, D) = min{dim V : V ⊆ F_q^n, dim(C ∩ Mat_V) − dim(D ∩ Mat_V) >= i}`
/// with `Mat_V` the matrices whose column space lies in `V`. Without `d`
/// this is `δ_i(C) = δ_i(C, 0)`.
pub fn delta_weights(c: &MatrixCode, d: Option<&MatrixCode>, budget: Budget) -> Result<WeightProfile> {
    let kind = if d.is_some() { WeightKind::Relative } else { WeightKind::Delta };
    if let Some(d) = d {
        if !d.is_subcode_of(c) {
            return Err(Error::NotSubcode("D is not contained in C".into()));
        }
        if d.dim() == c.dim() {
            return Err(Error::NotSubcode("D must be a proper subcode of C".into()));
        }
    }
    let mut scored = Vec::new();
    for v in enumerate_subspaces(c.field(), c.n(), None, budget)? {
        let mut s = c.shorten_colsp(&v)?.dim();
        if let Some(d) = d {
            s -= d.shorten_colsp(&v)?.dim();
        }
        scored.push((v, s));
    }
    let len = c.dim() - d.map_or(0, |d| d.dim());
    Ok(first_reaching(&scored, len, kind))
}

/// The four equivalent definitions of `w_i` for vector codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WDefinition {
    /// Largest rank weight in an `i`-dimensional subcode; needs `n <= m`.
    Oggier,
    /// Largest rank weight in the Frobenius closure of an `i`-dimensional
    /// subcode.
    Ducoat,
    /// Smallest support of an `i`-dimensional subcode.
    Support,
    /// Smallest optimal vector anticode meeting `C` in dimension `>= i`;
    /// needs `dim C <= m`.
    Anticode,
}

impl WDefinition {
    pub const ALL: [WDefinition; 4] = [
        WDefinition::Oggier,
        WDefinition::Ducoat,
        WDefinition::Support,
        WDefinition::Anticode,
    ];

    /// Whether the definition applies to a code of length `n` and
    /// dimension `k` over F_{q^m}.
    pub fn applies(self, n: usize, m: usize, k: usize) -> bool {
        match self {
            WDefinition::Oggier => n <= m,
            WDefinition::Anticode => k <= m,
            WDefinition::Ducoat | WDefinition::Support => true,
        }
    }
}

/// All `i`-dimensional F_{q^m}-subcodes of `c`.
fn subcodes(c: &VectorCode, i: usize, budget: Budget) -> Result<Vec<VectorCode>> {
    let f = c.field();
    let gens = c.generators();
    let n = c.n();
    let mut out = Vec::new();
    for s in enumerate_subspaces(f, c.dim(), Some(i), budget)? {
        let rows: Vec<Vec<u32>> = s
            .rows()
            .map(|coef| {
                let mut v = vec![0u32; n];
                for (t, &ct) in coef.iter().enumerate() {
                    if ct != 0 {
                        for (x, &g) in v.iter_mut().zip(&gens[t]) {
                            *x = f.add(*x, f.mul(ct, g));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(VectorCode::new(f, n, &rows)?);
    }
    Ok(out)
}

fn max_rank_weight(d: &VectorCode, budget: Budget) -> Result<usize> {
    let f = d.field().clone();
    Ok(d.codewords(budget)?.map(|v| rank_weight(&f, &v)).max().unwrap_or(0))
}

/// Optimal vector anticodes of F_{q^m}^n, found by enumeration.
pub fn optimal_vector_anticodes(field: &Field, n: usize, budget: Budget) -> Result<Vec<VectorCode>> {
    let mut out = Vec::new();
    for s in enumerate_subspaces(field, n, None, budget)? {
        let a = VectorCode::from_space(s)?;
        if a.classify(budget)?.is_optimal_vector_anticode {
            out.push(a);
        }
    }
    Ok(out)
}

/// `w_i(C)` for `i = 1..=dim C` under the chosen definition.
pub fn w_weights(c: &VectorCode, def: WDefinition, budget: Budget) -> Result<WeightProfile> {
    let (n, m, k) = (c.n(), c.m(), c.dim());
    if !def.applies(n, m, k) {
        return Err(Error::Inapplicable(match def {
            WDefinition::Oggier => format!("the Oggier definition needs n <= m, got n = {n}, m = {m}"),
            _ => format!("the anticode characterization needs dim C <= m, got {k} > {m}"),
        }));
    }
    let mut values = Vec::with_capacity(k);
    let mut witnesses = Vec::with_capacity(k);
    if def == WDefinition::Anticode {
        let anticodes = optimal_vector_anticodes(c.field(), n, budget)?;
        for i in 1..=k {
            let mut best: Option<&VectorCode> = None;
            for a in &anticodes {
                if c.intersect(a)?.dim() >= i && best.is_none_or(|b| a.dim() < b.dim()) {
                    best = Some(a);
                }
            }
            let a = best.ok_or_else(|| {
                Error::Inapplicable(format!("no optimal vector anticode meets C in dimension {i}"))
            })?;
            values.push(a.dim());
            witnesses.push(a.space().clone());
        }
    } else {
        for i in 1..=k {
            let mut best: Option<(usize, Subspace)> = None;
            for d in subcodes(c, i, budget)? {
                let score = match def {
                    WDefinition::Oggier => max_rank_weight(&d, budget)?,
                    WDefinition::Ducoat => max_rank_weight(&d.frobenius_closure(), budget)?,
                    WDefinition::Support => d.support().dim(),
                    WDefinition::Anticode => unreachable!(),
                };
                if best.as_ref().is_none_or(|(b, _)| score < *b) {
                    best = Some((score, d.space().clone()));
                }
            }
            let (v, w) = best.expect("C has subcodes of every dimension up to dim C");
            values.push(v);
            witnesses.push(w);
        }
    }
    Ok(WeightProfile {
        kind: WeightKind::W,
        values,
        witnesses,
    })
}

/// `w_i(C, D)`, minimizing `dim supp(V)` over Frobenius-fixed `V`. These
/// are exactly the spans of subspaces `U ⊆ F_q^n`, and then
/// `dim supp(V) = dim U`.
pub fn relative_w(c: &VectorCode, d: &VectorCode, budget: Budget) -> Result<WeightProfile> {
    if c.field() != d.field() || c.n() != d.n() {
        return Err(Error::DimensionMismatch("C and D live in different spaces".into()));
    }
    if !d.is_subcode_of(c) {
        return Err(Error::NotSubcode("D is not contained in C".into()));
    }
    if d.dim() == c.dim() {
        return Err(Error::NotSubcode("D must be a proper subcode of C".into()));
    }
    let f = c.field();
    let prime = f.prime_subfield();
    let mut scored = Vec::new();
    for u in enumerate_subspaces(&prime, c.n(), None, budget)? {
        let rows: Vec<Vec<u32>> = u
            .rows()
            .map(|r| r.iter().map(|&x| f.from_prime(x)).collect())
            .collect();
        let v = VectorCode::new(f, c.n(), &rows)?;
        let s = c.intersect(&v)?.dim() - d.intersect(&v)?.dim();
        scored.push((u, s));
    }
    Ok(first_reaching(&scored, c.dim() - d.dim(), WeightKind::Relative))
}

/// Families with closed-form generalized weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Mrd,
    Anticode,
    QuasiMrd,
}

/// Closed-form profile of an MRD code or optimal anticode of dimension
/// `k·max{m,n}`, or of a dually quasi-MRD code of dimension
/// `k·max{m,n} + r` with `0 < r < max{m,n}`.
pub fn closed_form_weights(kind: ClosedForm, n: usize, m: usize, dim: usize) -> Result<WeightProfile> {
    let (mu, big) = (n.min(m), n.max(m));
    if n == 0 || m == 0 || dim > n * m {
        return Err(Error::InvalidArgument(format!("no code of dimension {dim} in {n}x{m}")));
    }
    let (k, r) = (dim / big, dim % big);
    let ceil = |i: usize| i.div_ceil(big);
    let values: Vec<usize> = match kind {
        ClosedForm::Mrd | ClosedForm::Anticode if r != 0 => {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} is not a multiple of max(n, m) = {big}"
            )))
        }
        ClosedForm::QuasiMrd if r == 0 => {
            return Err(Error::InvalidArgument(format!(
                "dually quasi-MRD codes have dimension not divisible by {big}"
            )))
        }
        ClosedForm::Mrd => (1..=dim).map(|i| mu - k + ceil(i)).collect(),
        ClosedForm::Anticode => (1..=dim).map(ceil).collect(),
        ClosedForm::QuasiMrd => (1..=dim)
            .map(|i| if i <= r { mu - k } else { mu + 1 + (i - r - 1) / big - k })
            .collect(),
    };
    Ok(WeightProfile {
        kind: WeightKind::D,
        values,
        witnesses: Vec::new(),
    })
}

/// The endpoint conditions characterizing dually quasi-MRD codes of
/// dimension `k·max + r`, `0 < r < max`: `d_1 = min − k` and
/// `d_{r+1} = min + 1 − k`. The second condition is vacuous when
/// `k = 0`, since then `r + 1` exceeds the dimension.
pub fn quasi_mrd_endpoints(profile: &WeightProfile, n: usize, m: usize) -> Result<bool> {
    let (mu, big) = (n.min(m), n.max(m));
    let dim = profile.len();
    let (k, r) = (dim / big, dim % big);
    if r == 0 {
        return Err(Error::InvalidArgument(format!(
            "dimension {dim} is divisible by max(n, m) = {big}"
        )));
    }
    let first = profile.get(1)? == mu - k;
    let second = r + 1 > dim || profile.get(r + 1)? == mu + 1 - k;
    Ok(first && second)
}

/// Outcome of one theorem check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub name: String,
    /// Whether the theorem's hypotheses hold for this input.
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

fn indexed_bridge(
    name: &str,
    applicable: bool,
    w: &WeightProfile,
    m: usize,
    rhs: &WeightProfile,
    rhs_name: &str,
) -> Bridge {
    let mut bad = Vec::new();
    for i in 1..=w.len() {
        for e in 0..m {
            let wi = w.values[i - 1];
            let di = rhs.values[m * i - e - 1];
            if wi != di {
                bad.push(format!("w_{i} = {wi} but {rhs_name}_{} = {di}", m * i - e));
            }
        }
    }
    Bridge {
        name: name.to_string(),
        applicable,
        holds: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("w = {:?}, {rhs_name} = {:?}", w.values, rhs.values)
        } else {
            bad.join("; ")
        },
    }
}

/// `w_i(C) = d_{mi−e}(Γ(C))` for `e = 0..m`, asserted only when `n <= m`.
pub fn bridge_vector(c: &VectorCode, basis: &FieldBasis, budget: Budget) -> Result<Bridge> {
    let w = w_weights(c, WDefinition::Support, budget)?;
    let g = c.expand(basis)?;
    let d = d_weights(&g, budget)?;
    Ok(indexed_bridge(
        "w_i(C) = d_{mi-e}(Gamma(C))",
        c.n() <= c.m(),
        &w,
        c.m(),
        &d,
        "d",
    ))
}

/// `w_i(C, D) = δ_{mi−e}(Γ(C), Γ(D))`, for all `n, m`.
pub fn bridge_relative(c: &VectorCode, d: &VectorCode, basis: &FieldBasis, budget: Budget) -> Result<Bridge> {
    let w = relative_w(c, d, budget)?;
    let (gc, gd) = (c.expand(basis)?, d.expand(basis)?);
    let delta = delta_weights(&gc, Some(&gd), budget)?;
    Ok(indexed_bridge(
        "w_i(C,D) = delta_{mi-e}(Gamma(C),Gamma(D))",
        true,
        &w,
        c.m(),
        &delta,
        "delta",
    ))
}

/// Relations between `d_i` and `δ_i` by shape: equality when `m > n`,
/// `d_i <= δ_i` and `d_i = min(δ_i(C), δ_i(C^T))` when `m = n`, and
/// `d_i = δ_i(C^T)` when `m < n`.
pub fn bridge_matrix(c: &MatrixCode, budget: Budget) -> Result<Vec<Bridge>> {
    let d = d_weights(c, budget)?.values;
    let delta = delta_weights(c, None, budget)?.values;
    let delta_t = delta_weights(&c.transpose(), None, budget)?.values;
    let (n, m) = (c.n(), c.m());
    let check = |name: &str, applicable: bool, ok: &dyn Fn(usize) -> bool| Bridge {
        name: name.to_string(),
        applicable,
        holds: (0..d.len()).all(ok),
        detail: format!("d = {d:?}, delta(C) = {delta:?}, delta(C^T) = {delta_t:?}"),
    };
    Ok(vec![
        check("d_i = delta_i (m > n)", m > n, &|i| d[i] == delta[i]),
        check("d_i <= delta_i (m = n)", m == n, &|i| d[i] <= delta[i]),
        check("d_i = min(delta_i(C), delta_i(C^T)) (m = n)", m == n, &|i| {
            d[i] == delta[i].min(delta_t[i])
        }),
        check("d_i = delta_i(C^T) (m < n)", m < n, &|i| d[i] == delta_t[i]),
    ])
}

/// How the index set of `W̄_{i+ℓ}` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeiIndexing {
    /// `j` ranges over all integers: indices `t ≡ i + ℓ (mod max{m,n})`.
    Residue,
    /// `j >= 0` as in the definition of `W_i`, which leaves `W̄_{i+ℓ}` empty.
    NonNegative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeiRow {
    pub i: usize,
    pub dual_set: BTreeSet<usize>,
    pub predicted: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeiReport {
    pub rows: Vec<WeiRow>,
}

impl WeiReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.dual_set == r.predicted)
    }
}

/// `W_i(C^⊥) = {1..min} \ W̄_{i+ℓ}(C)` for `i = 1..=max{m,n}`.
pub fn wei_duality(c: &MatrixCode, budget: Budget) -> Result<WeiReport> {
    wei_duality_with(c, WeiIndexing::Residue, budget)
}

pub fn wei_duality_with(c: &MatrixCode, indexing: WeiIndexing, budget: Budget) -> Result<WeiReport> {
    let (mu, big) = (c.min_nm(), c.max_nm());
    let d = d_weights(c, budget)?.values;
    let dd = d_weights(&c.dual(), budget)?.values;
    let l = d.len();
    let mut rows = Vec::with_capacity(big);
    for i in 1..=big {
        let dual_set: BTreeSet<usize> = (i..=dd.len()).step_by(big).map(|t| dd[t - 1]).collect();
        let target = i + l;
        let bar: BTreeSet<usize> = (1..=l)
            .filter(|&t| match indexing {
                WeiIndexing::Residue => t % big == target % big,
                WeiIndexing::NonNegative => t >= target && (t - target) % big == 0,
            })
            .map(|t| mu + 1 - d[t - 1])
            .collect();
        let predicted = (1..=mu).filter(|x| !bar.contains(x)).collect();
        rows.push(WeiRow {
            i,
            dual_set,
            predicted,
        });
    }
    Ok(WeiReport { rows })
}
