//! Exact arithmetic in GF(p) and GF(p^m).
//!
//! A field element is encoded as a `u32` whose base-`p` digits are the
//! ascending coefficients of its polynomial representative, so the element
//! `c_0 + c_1 α + ... + c_{m-1} α^{m-1}` is stored as `Σ c_i p^i`. For a
//! prime field the encoding is the residue itself. Hot loops use the raw
//! encodings through [`Field`]; [`FieldElement`] bundles an encoding with
//! its field for checked arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{enumerate_gl, Mat};
use crate::Budget;

const MAX_ORDER: u64 = 1 << 16;

struct FieldData {
    p: u32,
    degree: usize,
    /// Ascending coefficients, monic, length `degree + 1`.
    modulus: Vec<u32>,
    order: u32,
    /// `exp[i] = g^i` for a primitive element `g`, stored twice over so
    /// that a sum of two logarithms never needs reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// A finite field GF(p^m) given by an explicit monic irreducible modulus.
///
/// Cloning is cheap; equality is structural (same characteristic and modulus).
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(
                f,
                "GF({}^{}) mod {:?}",
                self.0.p, self.0.degree, self.0.modulus
            )
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `b`, coefficients mod `p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = (lead as u64 * bc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    out
}

/// Finds a monic factor of degree `1..=deg/2`, exhaustively.
fn find_factor(modulus: &[u32], p: u32) -> Option<Vec<u32>> {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            let r = poly_trim(poly_rem(modulus, &f, p));
            if r.iter().all(|&c| c == 0) {
                return Some(f);
            }
        }
    }
    None
}

fn default_modulus(p: u32, m: usize) -> Option<Vec<u32>> {
    match (p, m) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        (3, 3) => Some(vec![1, 2, 0, 1]),
        _ => None,
    }
}

impl Field {
    /// The prime field GF(p), `2 <= p <= 251`.
    pub fn prime(p: u32) -> Result<Field> {
        if !(2..=251).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::build(p, vec![0, 1]))
    }

    /// GF(p^m) = GF(p)[α]/(modulus); `modulus` lists ascending coefficients.
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Field> {
        if !(2..=251).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let bad = |reason: &str| Error::BadModulus {
            modulus: modulus.clone(),
            reason: reason.to_string(),
        };
        if modulus.len() < 2 {
            return Err(bad("degree must be at least 1"));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
            return Err(bad(&format!("coefficient {c} is not reduced mod {p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(bad("leading coefficient must be 1"));
        }
        let m = modulus.len() - 1;
        let order = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        if let Some(factor) = find_factor(&modulus, p) {
            return Err(Error::Reducible { modulus, factor });
        }
        Ok(Self::build(p, modulus))
    }

    /// GF(p^m) with the shipped default modulus, or the lexicographically
    /// first monic irreducible polynomial when no default exists.
    pub fn default_extension(p: u32, m: usize) -> Result<Field> {
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        if m == 1 {
            return Field::prime(p);
        }
        if let Some(md) = default_modulus(p, m) {
            return Field::extension(p, md);
        }
        if !(2..=251).contains(&p) || !is_prime(p) {
            return Field::prime(p);
        }
        let order = (p as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::FieldTooLarge(order));
        }
        for idx in 0..order {
            let mut f = Vec::with_capacity(m + 1);
            let mut t = idx;
            for _ in 0..m {
                f.push((t % p as u64) as u32);
                t /= p as u64;
            }
            f.push(1);
            if f[0] != 0 && find_factor(&f, p).is_none() {
                return Field::extension(p, f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build(p: u32, modulus: Vec<u32>) -> Field {
        let degree = modulus.len() - 1;
        let order = p.pow(degree as u32);
        let digits = |mut v: u32| {
            let mut c = vec![0u32; degree];
            for slot in c.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            c
        };
        let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let slow_mul = |a: u32, b: u32| {
            let prod = poly_mul(&digits(a), &digits(b), p);
            let mut r = poly_rem(&prod, &modulus, p);
            r.resize(degree, 0);
            encode(&r)
        };
        // Primitive element by search.
        let n = order - 1;
        let mut exp = Vec::new();
        let mut log = vec![0u32; order as usize];
        if n == 1 {
            exp = vec![1, 1];
        } else {
            for g in 2..order {
                let mut seq = Vec::with_capacity(n as usize);
                let mut x = 1u32;
                let mut ok = true;
                for i in 0..n {
                    if i > 0 && x == 1 {
                        ok = false;
                        break;
                    }
                    seq.push(x);
                    x = slow_mul(x, g);
                }
                if ok && x == 1 {
                    exp = seq;
                    break;
                }
            }
            let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
            exp = doubled;
        }
        for (i, &e) in exp.iter().take(n as usize).enumerate() {
            log[e as usize] = i as u32;
        }
        let add_digits = |a: u32, b: u32| {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            encode(&s)
        };
        let neg: Vec<u32> = (0..order)
            .map(|a| encode(&digits(a).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();
        let add_table = if p != 2 && order <= 256 {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = add_digits(a, b);
                }
            }
            Some(t)
        } else {
            None
        };
        Field(Arc::new(FieldData {
            p,
            degree,
            modulus,
            order,
            exp,
            log,
            add_table,
            neg,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// The prime subfield GF(p).
    pub fn prime_subfield(&self) -> Field {
        Self::build(self.0.p, vec![0, 1])
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The class of the indeterminate, α. For a prime field this is 0 when
    /// read mod x, so callers should only use it for extensions.
    pub fn alpha(&self) -> u32 {
        if self.0.degree == 1 {
            0
        } else {
            self.0.p
        }
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.0.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if d.p == 2 {
            return a ^ b;
        }
        if let Some(t) = &d.add_table {
            return t[(a * d.order + b) as usize];
        }
        if d.degree == 1 {
            return (a + b) % d.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..d.degree {
            out += ((a % d.p + b % d.p) % d.p) * place;
            a /= d.p;
            b /= d.p;
            place *= d.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &*self.0;
        d.exp[(d.log[a as usize] + d.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &*self.0;
        let n = d.order - 1;
        Some(d.exp[((n - d.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        let n = (d.order - 1) as u64;
        d.exp[((d.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `x^p`, the Frobenius automorphism over the prime field.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// Absolute trace to the prime field, `x + x^p + ... + x^{p^{m-1}}`,
    /// returned as an element of this field (a residue `< p`).
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.degree {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    /// Ascending coefficients of `a` over the prime field.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut v = a;
        (0..self.0.degree)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32> {
        let p = self.0.p;
        if coeffs.len() > self.0.degree {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.degree
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidElement {
                value: c as u64,
                order: p,
            });
        }
        Ok(coeffs.iter().rev().fold(0u32, |acc, &d| acc * p + d))
    }

    /// Embeds a residue of the prime field.
    pub fn from_prime(&self, c: u32) -> u32 {
        c % self.0.p
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.order
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.0.order {
            return Err(Error::InvalidElement {
                value: value as u64,
                order: self.0.order,
            });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }
}

/// An element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.field.coeffs(self.value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn arith(&self, other: &FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let value = match op {
            ArithOp::Add => f.add(self.value, other.value),
            ArithOp::Sub => f.sub(self.value, other.value),
            ArithOp::Mul => f.mul(self.value, other.value),
            ArithOp::Div => f.div(self.value, other.value).ok_or(Error::DivisionByZero)?,
        };
        Ok(FieldElement {
            field: f.clone(),
            value,
        })
    }

    pub fn frobenius(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value: self.field.frobenius(self.value),
        }
    }

    /// Trace down to `sub`, which must be this element's field or its prime
    /// subfield. The result is returned as an element of `sub`.
    pub fn trace(&self, sub: &Field) -> Result<FieldElement> {
        if *sub == self.field {
            return Ok(self.clone());
        }
        if !(sub.is_prime_field() && sub.characteristic() == self.field.characteristic()) {
            return Err(Error::NotSubfield);
        }
        Ok(FieldElement {
            field: sub.clone(),
            value: self.field.trace(self.value),
        })
    }
}

/// An ordered basis γ_1..γ_m of GF(p^m) over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldBasis {
    field: Field,
    elements: Vec<u32>,
    /// Inverse of the matrix whose row j holds the coefficients of γ_j;
    /// row-major over GF(p).
    inv_coeffs: Vec<u32>,
}

impl fmt::Debug for FieldBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<u32>> = self.elements.iter().map(|&e| self.field.coeffs(e)).collect();
        f.debug_struct("FieldBasis").field("elements", &cs).finish()
    }
}

impl FieldBasis {
    pub fn new(field: &Field, elements: Vec<u32>) -> Result<FieldBasis> {
        let m = field.degree();
        if elements.len() != m {
            return Err(Error::NotABasis);
        }
        if elements.iter().any(|&e| !field.contains(e)) {
            return Err(Error::NotABasis);
        }
        let prime = field.prime_subfield();
        let data: Vec<u32> = elements.iter().flat_map(|&e| field.coeffs(e)).collect();
        let g = Mat::new(&prime, m, m, data)?;
        let inv = g.inverse().ok_or(Error::NotABasis)?;
        Ok(FieldBasis {
            field: field.clone(),
            elements,
            inv_coeffs: inv.data().to_vec(),
        })
    }

    /// The power basis 1, α, ..., α^{m-1}.
    pub fn power(field: &Field) -> FieldBasis {
        let els: Vec<u32> = (0..field.degree())
            .map(|i| field.from_coeffs(&unit(field.degree(), i)).unwrap())
            .collect();
        FieldBasis::new(field, els).expect("power basis is a basis")
    }

    /// Every ordered basis of the field over its prime subfield.
    pub fn all(field: &Field, budget: Budget) -> Result<Vec<FieldBasis>> {
        let prime = field.prime_subfield();
        let m = field.degree();
        let mut out = Vec::new();
        for g in enumerate_gl(&prime, m, budget)? {
            let els = (0..m)
                .map(|r| field.from_coeffs(g.row(r)))
                .collect::<Result<Vec<_>>>()?;
            out.push(FieldBasis::new(field, els)?);
        }
        Ok(out)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinates of `x` in this basis: `x = Σ c_j γ_j` with `c_j` in GF(p).
    pub fn coordinates(&self, x: u32) -> Vec<u32> {
        let m = self.elements.len();
        let p = self.field.characteristic() as u64;
        let c = self.field.coeffs(x);
        (0..m)
            .map(|j| {
                let s: u64 = (0..m)
                    .map(|k| c[k] as u64 * self.inv_coeffs[k * m + j] as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    /// The unique basis Γ' with tr(γ_i γ'_j) = δ_ij.
    pub fn orthogonal(&self) -> FieldBasis {
        let f = &self.field;
        let m = f.degree();
        let prime = f.prime_subfield();
        let power = FieldBasis::power(f);
        // T[i][k] = tr(γ_i β_k); γ'_j = Σ_k B[j][k] β_k with B = (T^{-1})^T.
        let t: Vec<u32> = (0..m)
            .flat_map(|i| {
                let gi = self.elements[i];
                power
                    .elements
                    .iter()
                    .map(move |&bk| f.trace(f.mul(gi, bk)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let t = Mat::new(&prime, m, m, t).expect("square");
        let tinv = t.inverse().expect("trace form is nondegenerate");
        let els: Vec<u32> = (0..m)
            .map(|j| {
                (0..m).fold(0u32, |acc, k| {
                    let c = tinv.get(k, j);
                    f.add(acc, f.mul(f.from_prime(c), power.elements[k]))
                })
            })
            .collect();
        FieldBasis::new(f, els).expect("dual basis is a basis")
    }
}

fn unit(m: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}
