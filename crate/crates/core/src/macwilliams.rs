//! MacWilliams identities for the rank metric and the weight distribution
//! of MRD and dually quasi-MRD codes, in exact integer arithmetic.

use crate::error::{Error, Result};
use crate::linalg::gaussian;

/// Which summation index multiplies `max{m,n}` in the exponent of the
/// transform. Only [`ExponentReading::Ell`] is correct; the others exist
/// so the regression suite can show that they fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentReading {
    /// `q^{max{m,n}·ℓ + C(i−ℓ, 2)}`
    Ell,
    /// `q^{max{m,n}·i + C(i−ℓ, 2)}`
    I,
    /// `q^{max{m,n}·j + C(i−ℓ, 2)}`
    J,
}

impl ExponentReading {
    pub const ALL: [ExponentReading; 3] = [ExponentReading::Ell, ExponentReading::I, ExponentReading::J];
}

/// Which dual weight enters the right-hand side of the binomial-moment
/// identity. Only [`MomentReading::J`] is correct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentReading {
    /// `A_j(C^⊥)`
    J,
    /// `A_ℓ(C^⊥)`
    Ell,
    /// `A_{ℓ−j}(C^⊥)`
    EllMinusJ,
}

impl MomentReading {
    pub const ALL: [MomentReading; 3] = [MomentReading::J, MomentReading::Ell, MomentReading::EllMinusJ];
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

fn qpow(q: u64, e: u64) -> Result<i128> {
    let e = u32::try_from(e).map_err(|_| overflow("power of q"))?;
    (q as i128).checked_pow(e).ok_or_else(|| overflow("power of q"))
}

fn to_i128(x: u128) -> Result<i128> {
    i128::try_from(x).map_err(|_| overflow("weight distribution"))
}

fn gauss(a: usize, b: usize, q: u64) -> i128 {
    gaussian(a as i64, b as i64, q)
}

fn gauss_i(a: i64, b: i64, q: u64) -> i128 {
    gaussian(a, b, q)
}

fn check_distribution(a: &[u128], mu: usize, size: u128) -> Result<()> {
    if a.len() != mu + 1 {
        return Err(Error::InvalidArgument(format!(
            "distribution has {} entries, expected {}",
            a.len(),
            mu + 1
        )));
    }
    if a[0] != 1 {
        return Err(Error::InvalidArgument("A_0 must be 1".into()));
    }
    let total = a
        .iter()
        .try_fold(0u128, |s, &x| s.checked_add(x))
        .ok_or_else(|| overflow("distribution sum"))?;
    if total != size {
        return Err(Error::InvalidArgument(format!(
            "distribution sums to {total}, not |C| = {size}"
        )));
    }
    Ok(())
}

/// Weight distribution of `C^⊥` from that of `C ⊆ Mat_{n×m}(F_q)`.
pub fn macwilliams_transform(a: &[u128], n: usize, m: usize, q: u64, size: u128) -> Result<Vec<u128>> {
    macwilliams_transform_with(a, n, m, q, size, ExponentReading::Ell)
}

/// [`macwilliams_transform`] under an explicit exponent reading.
pub fn macwilliams_transform_with(
    a: &[u128],
    n: usize,
    m: usize,
    q: u64,
    size: u128,
    reading: ExponentReading,
) -> Result<Vec<u128>> {
    let (mu, big) = (n.min(m), n.max(m));
    check_distribution(a, mu, size)?;
    let size_i = to_i128(size)?;
    let mut out = Vec::with_capacity(mu + 1);
    for i in 0..=mu {
        let mut total: i128 = 0;
        for (j, &aj) in a.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            let mut inner: i128 = 0;
            for l in 0..=mu {
                let g1 = gauss(mu - l, mu - i, q);
                let g2 = gauss(mu - j, l, q);
                if g1 == 0 || g2 == 0 {
                    continue;
                }
                let k = match reading {
                    ExponentReading::Ell => l,
                    ExponentReading::I => i,
                    ExponentReading::J => j,
                };
                // g1 ≠ 0 forces ℓ ≤ i, so C(i−ℓ, 2) is a plain binomial.
                let t = (i - l) as u64;
                let e = (big * k) as u64 + t * t.saturating_sub(1) / 2;
                let sign = if (i - l) % 2 == 0 { 1 } else { -1 };
                let term = qpow(q, e)?
                    .checked_mul(g1)
                    .and_then(|x| x.checked_mul(g2))
                    .and_then(|x| x.checked_mul(sign))
                    .ok_or_else(|| overflow("MacWilliams term"))?;
                inner = inner.checked_add(term).ok_or_else(|| overflow("MacWilliams sum"))?;
            }
            total = inner
                .checked_mul(to_i128(aj)?)
                .and_then(|x| total.checked_add(x))
                .ok_or_else(|| overflow("MacWilliams sum"))?;
        }
        if total % size_i != 0 {
            return Err(Error::NonIntegral(format!(
                "A_{i}(C^⊥) = {total}/{size} is not an integer"
            )));
        }
        let v = total / size_i;
        if v < 0 {
            return Err(Error::NegativeTerm(format!("A_{i}(C^⊥) = {v}")));
        }
        out.push(v as u128);
    }
    Ok(out)
}

/// Checks the binomial-moment identities
/// `q^{max·ℓ} Σ_{i ≤ μ−ℓ} A_i [μ−i, ℓ] = |C| Σ_{j ≤ ℓ} A_j(C^⊥) [μ−j, ℓ−j]`
/// for `ℓ = 0..=μ`, returning one flag per ℓ.
pub fn macwilliams_moments(
    a: &[u128],
    a_dual: &[u128],
    n: usize,
    m: usize,
    q: u64,
    size: u128,
) -> Result<Vec<bool>> {
    macwilliams_moments_with(a, a_dual, n, m, q, size, MomentReading::J)
}

/// [`macwilliams_moments`] under an explicit reading of the dual weight.
pub fn macwilliams_moments_with(
    a: &[u128],
    a_dual: &[u128],
    n: usize,
    m: usize,
    q: u64,
    size: u128,
    reading: MomentReading,
) -> Result<Vec<bool>> {
    let (mu, big) = (n.min(m), n.max(m));
    if a.len() != mu + 1 || a_dual.len() != mu + 1 {
        return Err(Error::InvalidArgument(format!(
            "distributions must have {} entries",
            mu + 1
        )));
    }
    let size_i = to_i128(size)?;
    let mut flags = Vec::with_capacity(mu + 1);
    for l in 0..=mu {
        let mut lhs: i128 = 0;
        for (i, &ai) in a.iter().enumerate().take(mu - l + 1) {
            let t = to_i128(ai)?
                .checked_mul(gauss(mu - i, l, q))
                .ok_or_else(|| overflow("moment"))?;
            lhs = lhs.checked_add(t).ok_or_else(|| overflow("moment"))?;
        }
        lhs = lhs
            .checked_mul(qpow(q, (big * l) as u64)?)
            .ok_or_else(|| overflow("moment"))?;
        let mut rhs: i128 = 0;
        for j in 0..=l {
            let idx = match reading {
                MomentReading::J => j,
                MomentReading::Ell => l,
                MomentReading::EllMinusJ => l - j,
            };
            let t = to_i128(a_dual[idx])?
                .checked_mul(gauss_i((mu - j) as i64, (l - j) as i64, q))
                .ok_or_else(|| overflow("moment"))?;
            rhs = rhs.checked_add(t).ok_or_else(|| overflow("moment"))?;
        }
        rhs = rhs.checked_mul(size_i).ok_or_else(|| overflow("moment"))?;
        flags.push(lhs == rhs);
    }
    Ok(flags)
}

/// Weight distribution of an MRD or dually quasi-MRD code of F_q-dimension
/// `dim` and minimum distance `d` in `Mat_{n×m}(F_q)`.
pub fn mrd_weight_distribution(n: usize, m: usize, q: u64, dim: usize, d: usize) -> Result<Vec<u128>> {
    let (mu, big) = (n.min(m), n.max(m));
    if d == 0 || d > mu + 1 {
        return Err(Error::InvalidArgument(format!(
            "minimum distance {d} outside 1..={}",
            mu + 1
        )));
    }
    if dim > big * (mu + 1 - d) {
        return Err(Error::InvalidArgument(format!(
            "dim {dim} and d {d} violate the Singleton bound in {n}x{m}"
        )));
    }
    let mut out = vec![0u128; mu + 1];
    out[0] = 1;
    for i in d..=mu {
        let mut s: i128 = 0;
        for j in 0..=(i - d) {
            let e = dim as i64 - (big * (mu + j - i)) as i64;
            if e < 0 {
                return Err(Error::InvalidArgument(format!(
                    "no MRD or dually quasi-MRD code has dim {dim} and d {d} in {n}x{m}"
                )));
            }
            let jj = j as u64;
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let t = qpow(q, jj * jj.saturating_sub(1) / 2)?
                .checked_mul(gauss(i, j, q))
                .and_then(|x| x.checked_mul(sign))
                .ok_or_else(|| overflow("MRD term"))?;
            let t = (qpow(q, e as u64)? - 1)
                .checked_mul(t)
                .ok_or_else(|| overflow("MRD term"))?;
            s = s.checked_add(t).ok_or_else(|| overflow("MRD sum"))?;
        }
        let v = s.checked_mul(gauss(mu, i, q)).ok_or_else(|| overflow("MRD term"))?;
        if v < 0 {
            return Err(Error::NegativeTerm(format!("A_{i} = {v}")));
        }
        out[i] = v as u128;
    }
    let total: u128 = out.iter().sum();
    if Some(total) != (q as u128).checked_pow(dim as u32) {
        return Err(Error::InvalidArgument(format!(
            "distribution sums to {total}, not q^{dim}: parameters are not MRD or dually quasi-MRD"
        )));
    }
    Ok(out)
}
