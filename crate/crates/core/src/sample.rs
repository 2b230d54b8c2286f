//! Uniform random subspaces and codes, for property sweeps.

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::linalg::Subspace;
use crate::matrix_codes::MatrixCode;
use crate::vector_codes::VectorCode;

/// A uniformly random `k`-dimensional subspace of F^ambient.
///
/// Rejection sampling on random generator sets; every k-subspace has the
/// same number of ordered bases, so the result is uniform.
pub fn subspace<R: Rng + ?Sized>(rng: &mut R, field: &Field, ambient: usize, k: usize) -> Result<Subspace> {
    if k > ambient {
        return Err(Error::InvalidArgument(format!("no {k}-dimensional subspace of F^{ambient}")));
    }
    let q = field.order();
    loop {
        let data: Vec<u32> = (0..k * ambient).map(|_| rng.gen_range(0..q)).collect();
        let s = Subspace::from_data(field, ambient, data);
        if s.dim() == k {
            return Ok(s);
        }
    }
}

pub fn matrix_code<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, m: usize, k: usize) -> Result<MatrixCode> {
    MatrixCode::from_space(n, m, subspace(rng, field, n * m, k)?)
}

pub fn vector_code<R: Rng + ?Sized>(rng: &mut R, field: &Field, n: usize, k: usize) -> Result<VectorCode> {
    VectorCode::from_space(subspace(rng, field, n, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dimensions_are_exact() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 0..=4 {
            let c = matrix_code(&mut rng, &f, 2, 2, k).unwrap();
            assert_eq!(c.dim(), k);
        }
        assert!(subspace(&mut rng, &f, 2, 3).is_err());
    }

    #[test]
    fn every_line_of_f2_squared_is_hit() {
        let f = Field::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let seen: std::collections::BTreeSet<_> = (0..200).map(|_| subspace(&mut rng, &f, 2, 1).unwrap()).collect();
        assert_eq!(seen.len(), 3);
    }
}
