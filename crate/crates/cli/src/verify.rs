//! Theorem-verification suites. Each suite checks one family of statements
//! against brute-force enumeration over the grid and reports counterexamples.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankmetric::genweights::{
    bridge_matrix, bridge_relative, bridge_vector, closed_form_weights, d_weights, delta_weights,
    quasi_mrd_endpoints, relative_w, w_weights, wei_duality_with, ClosedForm, WDefinition, WeiIndexing,
};
use rankmetric::macwilliams::{
    macwilliams_moments_with, macwilliams_transform, macwilliams_transform_with, mrd_weight_distribution,
    ExponentReading, MomentReading,
};
use rankmetric::qpolymatroid::{from_code, pm_characterize, pm_equivalent, recover, weight_enumerator, Enumerator};
use rankmetric::vector_codes::{expand_vector, vector_support};
use rankmetric::{
    are_equivalent, enumerate_subspaces, extension_exists, gaussian, sample, standard_anticode, v_equivalent,
    Budget, Field, FieldBasis, Isometry, Mat, MatrixCode, Result, Subspace, VectorCode,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::codefile::{Code, CodeFile};
use crate::fixtures;
use crate::grid::Grid;

/// Deliberate misreadings, used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mutant {
    /// Exponent `max·i` instead of `max·ℓ` in the MacWilliams transform.
    MacwilliamsExponent,
    /// `A_ℓ(C^⊥)` instead of `A_j(C^⊥)` in the moment identities.
    MomentIndex,
    /// Nonnegative `j` in the Wei-type duality index set.
    WeiIndex,
}

pub struct Config {
    pub grid: Grid,
    pub budget: Budget,
    pub mutant: Option<Mutant>,
}

const MAX_WITNESSES: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<Value>,
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failed: u64,
    failures: Vec<Value>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: &str, witness: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_WITNESSES {
                self.failures.push(json!({"check": what, "witness": witness()}));
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

struct Context<'a> {
    cfg: &'a Config,
    matrix: Vec<MatrixCode>,
    vector: Vec<VectorCode>,
}

type SuiteFn = fn(&Context, &mut Tally) -> Result<()>;

pub const SUITE_NAMES: &[&str] = &[
    "fields",
    "linalg",
    "bounds",
    "classification",
    "extension",
    "vector",
    "macwilliams",
    "mrd-distribution",
    "genweights",
    "definitions",
    "polymatroid",
    "pm-characterize",
    "readings",
];

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "fields" => fields_suite,
        "linalg" => linalg_suite,
        "bounds" => bounds_suite,
        "classification" => classification_suite,
        "extension" => extension_suite,
        "vector" => vector_suite,
        "macwilliams" => macwilliams_suite,
        "mrd-distribution" => mrd_distribution_suite,
        "genweights" => genweights_suite,
        "definitions" => definitions_suite,
        "polymatroid" => polymatroid_suite,
        "pm-characterize" => pm_characterize_suite,
        "readings" => readings_suite,
        _ => return None,
    })
}

/// Runs the named suites (all when `only` is empty) concurrently and
/// returns their results in the canonical suite order.
pub fn run(cfg: &Config, only: &[String]) -> Result<Vec<SuiteResult>> {
    for name in only {
        if suite_fn(name).is_none() {
            return Err(rankmetric::Error::InvalidArgument(format!(
                "unknown suite {name:?}; available: {}",
                SUITE_NAMES.join(", ")
            )));
        }
    }
    let selected: Vec<&str> = SUITE_NAMES
        .iter()
        .copied()
        .filter(|n| only.is_empty() || only.iter().any(|o| o == n))
        .collect();
    let cx = Context {
        cfg,
        matrix: cfg.grid.matrix_codes(cfg.budget)?,
        vector: cfg.grid.vector_codes(cfg.budget)?,
    };
    let cx = &cx;
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|&name| {
                s.spawn(move || {
                    let mut t = Tally::default();
                    if let Err(e) = suite_fn(name).expect("validated above")(cx, &mut t) {
                        t.failed += 1;
                        t.failures.push(json!({"error": e.to_string()}));
                    }
                    SuiteResult {
                        name: name.to_string(),
                        passed: t.failed == 0,
                        checks: t.checks,
                        failed: t.failed,
                        failures: t.failures,
                        notes: t.notes,
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite panicked"))
            .collect()
    });
    Ok(results)
}

fn code_json(c: &MatrixCode) -> Value {
    serde_json::to_value(CodeFile::from_code(&Code::Matrix(c.clone()))).expect("serializable")
}

fn vcode_json(c: &VectorCode) -> Value {
    serde_json::to_value(CodeFile::from_code(&Code::Vector(c.clone()))).expect("serializable")
}

fn rng(cx: &Context, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cx.cfg.grid.seed.wrapping_mul(0x1000_0000_01B3) ^ tag)
}

fn gf2() -> Field {
    Field::prime(2).expect("2 is prime")
}

fn random_invertible(rng: &mut ChaCha8Rng, f: &Field, n: usize) -> Mat {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..f.order())).collect();
        let m = Mat::new(f, n, n, data).expect("entries in range");
        if m.rank() == n {
            return m;
        }
    }
}

fn random_isometry(rng: &mut ChaCha8Rng, f: &Field, n: usize, m: usize) -> Isometry {
    Isometry {
        a: random_invertible(rng, f, n),
        b: random_invertible(rng, f, m),
        transposed: n == m && rng.gen_bool(0.5),
    }
}

// ---------------------------------------------------------------- fields

/// Remainder of `a` modulo the monic `b`, coefficients ascending, over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * bi) % p) % p;
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..(p as u64).pow(deg as u32)).map(move |mut x| {
        let mut c: Vec<u32> = (0..deg)
            .map(|_| {
                let d = (x % p as u64) as u32;
                x /= p as u64;
                d
            })
            .collect();
        c.push(1);
        c
    })
}

fn fields_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let mut rng = rng(cx, 1);
    for &q in &cx.cfg.grid.qs {
        for e in 2..=cx.cfg.grid.max_ext {
            let f = Field::default_extension(q, e)?;
            let md = f.modulus().to_vec();
            let irreducible = (1..=e / 2).all(|d| monic_polys(q, d).all(|g| poly_rem(&md, &g, q).iter().any(|&c| c != 0)));
            t.check(irreducible, "default modulus is irreducible", || json!({"q": q, "m": e, "modulus": md}));

            if f.order() <= 512 {
                let els: Vec<u32> = f.elements().collect();
                let mut image = BTreeSet::new();
                let mut hom = true;
                for &a in &els {
                    image.insert(f.frobenius(a));
                    for &b in &els {
                        hom &= f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b));
                        hom &= f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b));
                    }
                }
                t.check(hom && image.len() == els.len(), "Frobenius is an automorphism", || json!({"q": q, "m": e}));
                let fixed: Vec<u32> = els.iter().copied().filter(|&a| f.frobenius(a) == a).collect();
                let prime: Vec<u32> = (0..q).map(|c| f.from_prime(c)).collect();
                t.check(fixed == prime, "Frobenius fixes exactly the prime field", || {
                    json!({"q": q, "m": e, "fixed": fixed})
                });
            }

            for _ in 0..64 {
                let (x, y) = (rng.gen_range(0..f.order()), rng.gen_range(0..f.order()));
                let (a, b) = (f.from_prime(rng.gen_range(0..q)), f.from_prime(rng.gen_range(0..q)));
                let lhs = f.trace(f.add(f.mul(a, x), f.mul(b, y)));
                let rhs = f.add(f.mul(a, f.trace(x)), f.mul(b, f.trace(y)));
                t.check(lhs == rhs, "trace is linear over the prime field", || {
                    json!({"q": q, "m": e, "a": a, "b": b, "x": x, "y": y})
                });
            }
        }
    }
    for e in [2, 3] {
        let f = Field::default_extension(2, e)?;
        for basis in FieldBasis::all(&f, cx.cfg.budget)? {
            let dual = basis.orthogonal();
            let ok = basis.elements().iter().enumerate().all(|(i, &g)| {
                dual.elements()
                    .iter()
                    .enumerate()
                    .all(|(j, &h)| f.trace(f.mul(g, h)) == u32::from(i == j))
            });
            t.check(ok, "orthogonal basis satisfies tr(g_i g'_j) = delta_ij", || {
                json!({"field": format!("GF(2^{e})"), "basis": basis.elements(), "orthogonal": dual.elements()})
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- linalg

fn linalg_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let f2 = gf2();
    let all: Vec<Subspace> = enumerate_subspaces(&f2, 3, None, b)?.collect();
    for u in &all {
        for v in &all {
            let ok = u.sum(v)?.dim() + u.intersect(v)?.dim() == u.dim() + v.dim();
            t.check(ok, "dim(U+V) + dim(U∩V) = dim U + dim V", || json!({"U": format!("{u:?}"), "V": format!("{v:?}")}));
        }
    }
    for (q, l) in [(2, 4), (3, 2)] {
        let f = Field::prime(q)?;
        for u in enumerate_subspaces(&f, l, None, b)? {
            let p = u.perp();
            t.check(p.perp() == u && p.dim() == l - u.dim(), "perp is an involution of codimension", || {
                json!({"q": q, "U": format!("{u:?}")})
            });
        }
    }
    for &q in &cx.cfg.grid.qs {
        let f = Field::prime(q)?;
        for l in 0..=4 {
            for k in 0..=l {
                let count = enumerate_subspaces(&f, l, Some(k), b)?.count() as i128;
                let want = gaussian(l as i64, k as i64, q as u64);
                t.check(count == want, "subspace count is the Gaussian coefficient", || {
                    json!({"q": q, "l": l, "k": k, "count": count, "gaussian": want})
                });
            }
        }
    }
    let mut rng = rng(cx, 2);
    for c in cx.matrix.iter().filter(|c| c.dim() > 0).take(500) {
        let s = c.space();
        let g = s.generator_matrix().expect("nonzero subspace");
        let mix = random_invertible(&mut rng, s.field(), s.dim());
        let mixed = mix.mul(&g)?;
        let again = Subspace::from_data(s.field(), s.ambient(), mixed.into_data());
        t.check(&again == s, "RREF is canonical under row mixing", || json!({"space": format!("{s:?}")}));
    }
    Ok(())
}

// ---------------------------------------------------------------- bounds

fn bounds_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    for c in &cx.matrix {
        let (mu, big, k) = (c.min_nm(), c.max_nm(), c.dim());
        let cls = c.classify(b)?;
        let dual = c.dual();
        let dcls = dual.classify(b)?;
        let tcls = c.transpose().classify(b)?;
        let w = || code_json(c);
        t.check(k <= big * (mu + 1 - cls.d_min), "Singleton bound", w);
        t.check(k <= big * cls.max_rank, "Anticode bound", w);
        let s = cls.d_min + dcls.d_min;
        t.check(s <= mu + 2, "d_min + d_min(dual) <= min + 2", w);
        t.check((s == mu + 2) == cls.is_mrd, "equality in d_min + d_min(dual) iff MRD", w);
        let r = cls.max_rank + dcls.max_rank;
        t.check(r >= mu, "maxrk + maxrk(dual) >= min", w);
        t.check((r == mu) == cls.is_optimal_anticode, "equality in maxrk + maxrk(dual) iff optimal anticode", w);
        t.check(cls.d_min <= dcls.max_rank + 1, "d_min <= maxrk(dual) + 1", w);
        t.check(cls.is_mrd == dcls.is_mrd, "MRD iff the dual is MRD", w);
        t.check(
            cls.is_optimal_anticode == dcls.is_optimal_anticode,
            "optimal anticode iff the dual is",
            w,
        );
        t.check(cls.is_mrd == tcls.is_mrd, "MRD iff the transpose is MRD", w);
        t.check(
            cls.is_optimal_anticode == tcls.is_optimal_anticode,
            "optimal anticode iff the transpose is",
            w,
        );
        t.check(dual.dual() == *c && dual.dim() == c.n() * c.m() - k, "dual is an involution", w);
    }
    Ok(())
}

// ---------------------------------------------------------------- classification

fn classification_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let f2 = gf2();
    let full = MatrixCode::full(&f2, 2, 2);
    let mats_v: Vec<MatrixCode> = enumerate_subspaces(&f2, 2, None, b)?
        .map(|v| full.shorten_colsp(&v))
        .collect::<Result<_>>()?;
    let mut anticodes = 0;
    let mut total = 0;
    for s in enumerate_subspaces(&f2, 4, None, b)? {
        total += 1;
        let c = MatrixCode::from_space(2, 2, s)?;
        let cls = c.classify(b)?;
        let trivial = c.dim() == 0 || c.dim() == 4;
        t.check((cls.is_mrd && cls.is_optimal_anticode) == trivial, "MRD and optimal anticode iff trivial", || {
            code_json(&c)
        });
        if cls.is_optimal_anticode {
            anticodes += 1;
            let ct = c.transpose();
            let is_mat_v = mats_v.iter().any(|a| *a == c || *a == ct);
            t.check(is_mat_v, "optimal anticode is Mat(V) or Mat(V)^T", || code_json(&c));
            let std = standard_anticode(&f2, 2, 2, cls.max_rank, false)?;
            let eq = are_equivalent(&c, &std, b)?;
            t.check(eq.is_some(), "optimal anticode is equivalent to a standard one", || code_json(&c));
        }
    }
    t.note(format!("{anticodes} of the {total} codes in Mat_2x2(F_2) are optimal anticodes"));

    let gf4 = Field::default_extension(2, 2)?;
    let (mut vanti, mut missed, mut explained) = (0, 0, 0);
    for s in enumerate_subspaces(&gf4, 3, None, b)?.filter(|s| s.dim() <= 2) {
        let c = VectorCode::from_space(s)?;
        if c.classify(b)?.is_optimal_vector_anticode {
            vanti += 1;
            let std = VectorCode::standard(&gf4, 3, c.dim());
            let eq = v_equivalent(&c, &std, b)?;
            t.check(eq.is_some(), "optimal vector anticode is equivalent to <e_1..e_k>", || vcode_json(&c));
            if eq.is_none() {
                missed += 1;
                if c.dim() == c.m() && c.n() > c.m() && !c.is_frobenius_fixed() {
                    explained += 1;
                }
            }
        }
    }
    t.note(format!("{vanti} optimal vector anticodes of dimension <= 2 in GF(4)^3"));
    if missed > 0 {
        t.note(format!(
            "{missed} of them are not equivalent to <e_1..e_k>; {explained} of those have k = m < n and are not \
             Frobenius-fixed. Every vector of GF(q^m)^n has rank at most m, so any k = m code reaching rank m is \
             an optimal vector anticode, with or without an F_q-basis"
        ));
    }

    // The characterization where its proof applies: n <= m.
    for e in [2, 3] {
        let f = Field::default_extension(2, e)?;
        for s in enumerate_subspaces(&f, 2, None, b)? {
            let c = VectorCode::from_space(s)?;
            let opt = c.classify(b)?.is_optimal_vector_anticode;
            let eq = v_equivalent(&c, &VectorCode::standard(&f, 2, c.dim()), b)?.is_some();
            t.check(
                opt == c.is_frobenius_fixed() && opt == eq,
                "n <= m: optimal vector anticode iff F_q-basis iff standard",
                || vcode_json(&c),
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- extension

/// The map `(A 0) ↦ (A^T 0)` on the canonical basis of `c`.
pub fn transpose_block_images(c: &MatrixCode) -> Result<Vec<Mat>> {
    c.basis()
        .iter()
        .map(|g| {
            let mut out = Mat::zeros(c.field(), 2, 3);
            for r in 0..2 {
                for s in 0..2 {
                    out.set(s, r, g.get(r, s));
                }
            }
            Ok(out)
        })
        .collect()
}

fn extension_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let c = fixtures::matrix("extension_domain");
    let images = transpose_block_images(&c)?;
    let search = extension_exists(&c, &images, cx.cfg.budget)?;
    t.check(search.extension.is_none(), "(A 0) -> (A^T 0) has no global extension", || {
        json!({"extension": format!("{:?}", search.extension)})
    });
    t.check(search.examined == 1008, "every isometry of Mat_2x3(F_2) was examined", || {
        json!({"examined": search.examined.to_string()})
    });
    t.note(format!(
        "(A 0) -> (A^T 0) on Mat_2x3(F_2): rank preserving, no extension among {} isometries A M B",
        search.examined
    ));
    Ok(())
}

// ---------------------------------------------------------------- vector

fn vector_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let gf4 = Field::default_extension(2, 2)?;
    let gf8 = Field::default_extension(2, 3)?;
    let bases4 = FieldBasis::all(&gf4, b)?;
    let bases8 = FieldBasis::all(&gf8, b)?;

    for (f, n, bases) in [(&gf4, 2, &bases4), (&gf8, 1, &bases8)] {
        for v in VectorCode::full(f, n).codewords(b)? {
            for g in bases.iter() {
                let ok = rankmetric::rank_weight(f, &v) == expand_vector(&v, g)?.rank();
                t.check(ok, "rank weight equals the rank of the expansion", || json!({"v": v, "basis": g.elements()}));
            }
        }
    }
    let mut rng = rng(cx, 3);
    for _ in 0..200 {
        let v: Vec<u32> = (0..2).map(|_| rng.gen_range(0..8)).collect();
        for g in &bases8 {
            let ok = rankmetric::rank_weight(&gf8, &v) == expand_vector(&v, g)?.rank();
            t.check(ok, "rank weight equals the rank of the expansion", || json!({"v": v, "basis": g.elements()}));
        }
    }
    for n in 1..=3 {
        for v in VectorCode::full(&gf4, n).codewords(b)? {
            let s = vector_support(&gf4, &v);
            for g in &bases4 {
                let ok = expand_vector(&v, g)?.colsp() == s;
                t.check(ok, "support does not depend on the basis", || json!({"v": v, "basis": g.elements()}));
            }
        }
    }

    for c in &cx.vector {
        let (n, m) = (c.n(), c.m());
        let g = c.expand(&FieldBasis::power(c.field()))?;
        let vc = c.classify(b)?;
        let gc = g.classify(b)?;
        let w = || vcode_json(c);
        t.check(g.dim() == m * c.dim(), "expansion multiplies the dimension by m", w);
        if c.dim() > 0 {
            t.check(gc.d_min == vc.d_min, "expansion preserves d_min", w);
        }
        t.check(gc.max_rank == vc.max_rank, "expansion preserves maxrk", w);
        if n <= m {
            t.check(vc.is_mrd == gc.is_mrd, "n <= m: MRD iff the expansion is", w);
            t.check(
                vc.is_optimal_vector_anticode == gc.is_optimal_anticode,
                "n <= m: optimal vector anticode iff the expansion is an optimal anticode",
                w,
            );
        } else {
            let trivial = c.dim() == 0 || c.dim() == n;
            t.check((vc.is_mrd && gc.is_mrd) == trivial, "n > m: both MRD iff C is 0 or everything", w);
            t.check(
                (vc.is_optimal_vector_anticode && gc.is_optimal_anticode) == (c.dim() == 0),
                "n > m: both optimal anticodes iff C = 0",
                w,
            );
        }
        let bases: &[FieldBasis] = if *c.field() == gf4 {
            &bases4
        } else if *c.field() == gf8 {
            &bases8
        } else {
            &[]
        };
        for basis in bases {
            let lhs = c.expand(basis)?.dual();
            let rhs = c.dual().expand(&basis.orthogonal())?;
            t.check(lhs == rhs, "Gamma(C)^perp = Gamma'(C^perp)", || {
                json!({"code": vcode_json(c), "basis": basis.elements()})
            });
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- macwilliams

fn macwilliams_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let exponent = match cx.cfg.mutant {
        Some(Mutant::MacwilliamsExponent) => ExponentReading::I,
        _ => ExponentReading::Ell,
    };
    let moment = match cx.cfg.mutant {
        Some(Mutant::MomentIndex) => MomentReading::Ell,
        _ => MomentReading::J,
    };
    for c in &cx.matrix {
        let (n, m, q) = (c.n(), c.m(), c.field().order() as u64);
        let a = c.weight_distribution(b)?;
        let dual = c.dual();
        let ad = dual.weight_distribution(b)?;
        let got = macwilliams_transform_with(&a, n, m, q, c.cardinality(), exponent);
        t.check(got.as_ref().ok() == Some(&ad), "transform equals the dual distribution", || {
            json!({
                "code": code_json(c),
                "distribution": a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "expected": ad.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "got": match &got {
                    Ok(v) => json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    Err(e) => json!(e.to_string()),
                },
            })
        });
        let back = macwilliams_transform(&ad, n, m, q, dual.cardinality())?;
        t.check(back == a, "transform is an involution", || code_json(c));
        let flags = macwilliams_moments_with(&a, &ad, n, m, q, c.cardinality(), moment)?;
        t.check(flags.iter().all(|&x| x), "binomial moment identities", || {
            json!({"code": code_json(c), "flags": flags})
        });
    }
    Ok(())
}

fn mrd_distribution_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let (mut mrd, mut quasi) = (0, 0);
    for c in &cx.matrix {
        let cls = c.classify(b)?;
        if !(cls.is_mrd || cls.is_dually_quasi_mrd) {
            continue;
        }
        if cls.is_mrd {
            mrd += 1;
        } else {
            quasi += 1;
        }
        let a = c.weight_distribution(b)?;
        let f = mrd_weight_distribution(c.n(), c.m(), c.field().order() as u64, c.dim(), cls.d_min);
        t.check(f.as_ref().ok() == Some(&a), "closed-form MRD distribution", || {
            json!({"code": code_json(c), "got": format!("{f:?}")})
        });
    }
    let ex = fixtures::matrix("expansion_matrices");
    let f = mrd_weight_distribution(2, 3, 2, ex.dim(), 2)?;
    t.check(f == vec![1, 0, 7], "the 2x3 expansion example has distribution (1, 0, 7)", || json!(format!("{f:?}")));
    t.note(format!("{mrd} MRD and {quasi} dually quasi-MRD codes checked"));
    Ok(())
}

// ---------------------------------------------------------------- genweights

fn genweights_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let indexing = match cx.cfg.mutant {
        Some(Mutant::WeiIndex) => WeiIndexing::NonNegative,
        _ => WeiIndexing::Residue,
    };
    let mut rng = rng(cx, 4);
    let (mut strict, mut nonstrict) = (0u64, 0u64);
    let mut nonstrict_witness = None;
    for c in &cx.matrix {
        let (n, m, k) = (c.n(), c.m(), c.dim());
        let (mu, big) = (c.min_nm(), c.max_nm());
        let cls = c.classify(b)?;
        let d = d_weights(c, b)?;
        let w = || code_json(c);
        if k > 0 {
            t.check(d.values[0] == cls.d_min, "d_1 = d_min", w);
            t.check(d.values[k - 1] <= mu, "d_dim <= min(m, n)", w);
        }
        t.check(d.is_nondecreasing(), "d_i <= d_(i+1)", w);
        for i in 0..k.saturating_sub(big) {
            t.check(d.values[i] <= d.values[i + big], "d_i <= d_(i+max)", w);
            if d.values[i] < d.values[i + big] {
                strict += 1;
            } else {
                nonstrict += 1;
                nonstrict_witness.get_or_insert_with(|| code_json(c));
            }
        }
        if k % big == 0 {
            let mrd = closed_form_weights(ClosedForm::Mrd, n, m, k)?;
            let anti = closed_form_weights(ClosedForm::Anticode, n, m, k)?;
            t.check((d.values == mrd.values) == cls.is_mrd, "MRD profile iff MRD", w);
            t.check((d.values == anti.values) == cls.is_optimal_anticode, "anticode profile iff optimal anticode", w);
        } else {
            t.check(!cls.is_mrd && !cls.is_optimal_anticode, "dimension not divisible by max rules out MRD and anticode", w);
            let ends = quasi_mrd_endpoints(&d, n, m)?;
            t.check(ends == cls.is_dually_quasi_mrd, "quasi-MRD endpoint conditions iff dually quasi-MRD", w);
            if cls.is_dually_quasi_mrd {
                let qf = closed_form_weights(ClosedForm::QuasiMrd, n, m, k)?;
                t.check(d.values == qf.values, "dually quasi-MRD closed-form profile", w);
            }
        }
        for br in bridge_matrix(c, b)? {
            if br.applicable {
                t.check(br.holds, &br.name, || json!({"code": code_json(c), "detail": br.detail}));
            }
        }
        let wei = wei_duality_with(c, indexing, b)?;
        t.check(wei.holds(), "Wei-type duality", || {
            json!({"code": code_json(c), "rows": format!("{:?}", wei.rows)})
        });
        let iso = random_isometry(&mut rng, c.field(), n, m);
        let image = c.map(&iso)?;
        t.check(d_weights(&image, b)?.values == d.values, "d_i is invariant under isometries", w);
    }
    let c = fixtures::matrix("equal_columns_2x2");
    let (dc, dt) = (delta_weights(&c, None, b)?, delta_weights(&c.transpose(), None, b)?);
    t.check(
        dc.get(2)? == 2 && dt.get(2)? == 1 && are_equivalent(&c, &c.transpose(), b)?.is_some(),
        "delta_2 differs on the equivalent codes C and C^T",
        || json!({"delta": dc.values, "delta_T": dt.values}),
    );
    if nonstrict == 0 {
        t.note(format!("d_i < d_(i+max) held strictly in all {strict} cases"));
    } else {
        t.note(format!(
            "d_i = d_(i+max) in {nonstrict} of {} cases, first in {}",
            strict + nonstrict,
            nonstrict_witness.unwrap_or_default()
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- definitions

fn definitions_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let gf4 = Field::default_extension(2, 2)?;
    let gf8 = Field::default_extension(2, 3)?;
    let mut codes: Vec<VectorCode> = enumerate_subspaces(&gf4, 2, None, b)?
        .filter(|s| (1..=2).contains(&s.dim()))
        .map(VectorCode::from_space)
        .collect::<Result<_>>()?;
    let exhaustive = codes.len();
    let mut rng = rng(cx, 5);
    for i in 0..cx.cfg.grid.samples {
        codes.push(sample::vector_code(&mut rng, &gf8, 2, 1 + i % 2)?);
    }
    let bases4 = FieldBasis::all(&gf4, b)?;
    for c in &codes {
        let (n, m, k) = (c.n(), c.m(), c.dim());
        let mut profiles = Vec::new();
        for def in WDefinition::ALL {
            if def.applies(n, m, k) {
                profiles.push((def, w_weights(c, def, b)?.values));
            }
        }
        let agree = profiles.windows(2).all(|p| p[0].1 == p[1].1);
        t.check(agree, "w-profiles agree across definitions", || {
            json!({"code": vcode_json(c), "profiles": format!("{profiles:?}")})
        });
        let bases: Vec<FieldBasis> = if *c.field() == gf4 {
            bases4.clone()
        } else {
            vec![FieldBasis::power(c.field())]
        };
        for basis in &bases {
            let br = bridge_vector(c, basis, b)?;
            t.check(br.applicable && br.holds, &br.name, || {
                json!({"code": vcode_json(c), "basis": basis.elements(), "detail": br.detail})
            });
        }
        if k >= 1 {
            let sub = VectorCode::new(c.field(), n, &c.generators()[..k - 1])?;
            let br = bridge_relative(c, &sub, &FieldBasis::power(c.field()), b)?;
            t.check(br.holds, &br.name, || json!({"code": vcode_json(c), "detail": br.detail}));
        }
    }
    let line = fixtures::vector("gf4_line");
    let w = w_weights(&line, WDefinition::Support, b)?;
    let d = d_weights(&line.expand(&FieldBasis::power(&gf4))?, b)?;
    let br = bridge_vector(&line, &FieldBasis::power(&gf4), b)?;
    t.check(
        w.values == vec![1] && d.values == vec![1, 2] && !br.applicable && !br.holds,
        "<(1,0,0)> in GF(4)^3 has w_1 = 1 but d_2(Gamma(C)) = 2",
        || json!({"w": w.values, "d": d.values}),
    );
    let rel = relative_w(&line, &VectorCode::zero(&gf4, 3), b)?;
    t.check(rel.values == w.values, "w_i(C, 0) = w_i(C)", || json!({"relative": rel.values}));
    t.note(format!(
        "{exhaustive} codes of GF(4)^2 enumerated, {} codes of GF(8)^2 sampled",
        codes.len() - exhaustive
    ));
    Ok(())
}

// ---------------------------------------------------------------- polymatroid

fn polymatroid_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let mut rng = rng(cx, 6);
    for c in &cx.matrix {
        let w = || code_json(c);
        let cp = match from_code(c, b) {
            Ok(cp) => cp,
            Err(e) => {
                t.check(false, "axioms (P1)-(P3)", || json!({"code": code_json(c), "error": e.to_string()}));
                continue;
            }
        };
        t.check(true, "axioms (P1)-(P3)", w);
        t.check(cp.p.dual().dual() == cp.p, "P** = P", w);
        let dual = c.dual();
        let dp = from_code(&dual, b)?;
        t.check(cp.p.dual() == dp.p, "P(C)* = P(C^perp)", w);
        if let (Some(pt), Some(dpt)) = (&cp.transposed, &dp.transposed) {
            t.check(pt.dual() == *dpt, "P(C^T)* = P((C^perp)^T)", w);
        }
        let rec = recover(&cp)?;
        let d = d_weights(c, b)?;
        let cls = c.classify(b)?;
        t.check(
            rec.dim == c.dim() && rec.d_min == cls.d_min && rec.profile == d.values,
            "recover() matches direct computation",
            || json!({"code": code_json(c), "recovered": format!("{rec:?}"), "d": d.values, "d_min": cls.d_min}),
        );
        if c.n() <= c.m() {
            let got = weight_enumerator(&cp.p, c.n(), c.m());
            let want = Enumerator::from_distribution(&c.weight_distribution(b)?)?;
            t.check(got.as_ref().ok() == Some(&want), "Shiromoto enumerator equals enumeration", || {
                json!({"code": code_json(c), "want": want.to_string(), "got": match &got {
                    Ok(e) => e.to_string(),
                    Err(e) => e.to_string(),
                }})
            });
        }
        let iso = random_isometry(&mut rng, c.field(), c.n(), c.m());
        let ip = from_code(&c.map(&iso)?, b)?;
        let direct = pm_equivalent(&cp.p, &ip.p, b)?.is_some();
        let crossed = match (&cp.transposed, &ip.transposed) {
            (Some(a), Some(bt)) => pm_equivalent(&cp.p, bt, b)?.is_some() && pm_equivalent(a, &ip.p, b)?.is_some(),
            _ => false,
        };
        t.check(direct || crossed, "equivalent codes give equivalent q-polymatroids", w);
    }
    let gf4 = Field::default_extension(2, 2)?;
    let bases = FieldBasis::all(&gf4, b)?;
    for c in cx.vector.iter().filter(|c| *c.field() == gf4) {
        let first = from_code(&c.expand(&bases[0])?, b)?;
        for basis in &bases[1..] {
            let other = from_code(&c.expand(basis)?, b)?;
            let ok = pm_equivalent(&first.p, &other.p, b)?.is_some();
            t.check(ok, "P(Gamma(C)) ~ P(Gamma'(C))", || json!({"code": vcode_json(c), "basis": basis.elements()}));
        }
    }
    Ok(())
}

fn pm_characterize_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    for c in &cx.matrix {
        let cp = from_code(c, b)?;
        let ch = pm_characterize(&cp, b)?;
        let cls = c.classify(b)?;
        let w = || code_json(c);
        t.check(ch.mrd == cls.is_mrd, "q-polymatroid MRD test matches classify", w);
        t.check(ch.anticode == cls.is_optimal_anticode, "q-polymatroid anticode test matches classify", w);
        if let Some(form) = &ch.mrd_form {
            t.check(*form == cp.p, "MRD rank function has the piecewise form", w);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- readings

/// Shows that the adopted readings of the ambiguous formulas are the only
/// ones that survive the grid, and reports the value of rho_2 in the 2x2
/// q-polymatroid example that differs from the naive dim V.
fn readings_suite(cx: &Context, t: &mut Tally) -> Result<()> {
    let b = cx.cfg.budget;
    let mut exp_fail = [0u64; 3];
    let mut mom_fail = [0u64; 3];
    let mut wei_fail = [0u64; 2];
    for c in &cx.matrix {
        let (n, m, q) = (c.n(), c.m(), c.field().order() as u64);
        let a = c.weight_distribution(b)?;
        let ad = c.dual().weight_distribution(b)?;
        for (i, r) in ExponentReading::ALL.iter().enumerate() {
            let got = macwilliams_transform_with(&a, n, m, q, c.cardinality(), *r);
            if got.as_ref().ok() != Some(&ad) {
                exp_fail[i] += 1;
            }
        }
        for (i, r) in MomentReading::ALL.iter().enumerate() {
            let flags = macwilliams_moments_with(&a, &ad, n, m, q, c.cardinality(), *r)?;
            if !flags.iter().all(|&x| x) {
                mom_fail[i] += 1;
            }
        }
        for (i, r) in [WeiIndexing::Residue, WeiIndexing::NonNegative].iter().enumerate() {
            if !wei_duality_with(c, *r, b)?.holds() {
                wei_fail[i] += 1;
            }
        }
    }
    let counts = |f: &[u64]| json!(f);
    t.check(exp_fail[0] == 0 && exp_fail[1] > 0 && exp_fail[2] > 0, "exponent max*l is the unique passing reading", || {
        json!({"failures [l, i, j]": counts(&exp_fail)})
    });
    t.check(mom_fail[0] == 0 && mom_fail[1] > 0 && mom_fail[2] > 0, "A_j(C^perp) is the unique passing moment reading", || {
        json!({"failures [j, l, l-j]": counts(&mom_fail)})
    });
    t.check(wei_fail[0] == 0 && wei_fail[1] > 0, "residue indexing is the unique passing Wei reading", || {
        json!({"failures [residue, nonnegative]": counts(&wei_fail)})
    });
    t.note(format!(
        "MacWilliams exponent failures [l, i, j] = {exp_fail:?}; moment failures [j, l, l-j] = {mom_fail:?}; Wei failures [residue, nonnegative] = {wei_fail:?}"
    ));

    let c = fixtures::matrix("equal_columns_2x2");
    let f2 = gf2();
    let cp = from_code(&c, b)?;
    let pt = cp.transposed.as_ref().expect("square code");
    let diag = Subspace::from_vectors(&f2, 2, &[vec![1, 1]])?;
    // unnormalized: max{m,n} * rho
    let rho = pt.rank(&diag);
    let computed = *rho.numer() * 2 / *rho.denom();
    let naive = 1;
    t.check(computed == 0, "rho_2(<(1,1)>) computes to 0", || json!(computed));
    if computed != naive {
        t.note(format!(
            "discrepancy: for C = {{(a a; b b)}}, rho_2(<(1,1)>) = {computed}, not dim V = {naive}: <(1,1)> is self-orthogonal over F_2, so C^T(V^perp) = C^T and rho_2 = 2 - 2 = {computed}"
        ));
    }
    t.check(pm_equivalent(&cp.p, pt, b)?.is_none(), "P(C) and P(C^T) are not equivalent", || json!(null));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(grid: &str, mutant: Option<Mutant>) -> Config {
        Config {
            grid: grid.parse().unwrap(),
            budget: Budget::DEFAULT,
            mutant,
        }
    }

    #[test]
    fn poly_rem_detects_factors() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert_eq!(poly_rem(&[1, 0, 1], &[1, 1], 2), vec![0]);
        assert_eq!(poly_rem(&[1, 1, 0, 1], &[1, 1], 2), vec![1]);
        assert_eq!(monic_polys(3, 1).count(), 3);
    }

    #[test]
    fn small_grid_fails_only_on_vector_anticodes() {
        let results = run(&cfg("q=2;n=2;m=2;ext=2;samples=3", None), &[]).unwrap();
        assert_eq!(results.len(), SUITE_NAMES.len());
        for r in &results {
            if r.name == "classification" {
                assert_eq!(r.failed, 14);
                assert!(r.failures.iter().all(|f| f["check"] == "optimal vector anticode is equivalent to <e_1..e_k>"));
                assert!(r.notes[2].starts_with("14 of them are not equivalent to <e_1..e_k>; 14 of those"));
            } else {
                assert!(r.passed, "{}: {:?}", r.name, r.failures);
            }
        }
    }

    #[test]
    fn exponent_mutant_is_caught() {
        let r = run(&cfg("q=2;n=2;m=2;samples=3", Some(Mutant::MacwilliamsExponent)), &["macwilliams".into()]).unwrap();
        assert!(!r[0].passed);
        assert!(!r[0].failures.is_empty());
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run(&cfg("q=2;n=1;m=1", None), &["nope".into()]).is_err());
    }
}
