//! The parameter grid swept by `rml verify`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankmetric::{enumerate_subspaces, gaussian, sample, Budget, Field, MatrixCode, Result, VectorCode};

/// Shapes and sampling density. Written as `q=2,3;n=3;m=3;ext=3;dim=6;samples=20;seed=0`;
/// omitted keys keep their defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub qs: Vec<u32>,
    pub max_n: usize,
    pub max_m: usize,
    /// Largest extension degree for vector codes.
    pub max_ext: usize,
    pub max_dim: usize,
    /// Codes per (q, n, m, dim) cell. Cells with at most this many codes
    /// are enumerated exhaustively instead.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            qs: vec![2, 3],
            max_n: 3,
            max_m: 3,
            max_ext: 3,
            max_dim: 6,
            samples: 20,
            seed: 0,
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Grid, String> {
        let mut g = Grid::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
            let num = |v: &str| v.trim().parse::<u64>().map_err(|e| format!("{k}: {e}"));
            match k.trim() {
                "q" => {
                    g.qs = v
                        .split(',')
                        .map(|x| num(x).map(|x| x as u32))
                        .collect::<std::result::Result<_, _>>()?
                }
                "n" => g.max_n = num(v)? as usize,
                "m" => g.max_m = num(v)? as usize,
                "ext" => g.max_ext = num(v)? as usize,
                "dim" => g.max_dim = num(v)? as usize,
                "samples" => g.samples = num(v)? as usize,
                "seed" => g.seed = num(v)?,
                other => return Err(format!("unknown grid key {other:?}")),
            }
        }
        if g.qs.is_empty() || g.max_n == 0 || g.max_m == 0 {
            return Err("the grid needs at least one q and positive n, m".into());
        }
        Ok(g)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs: Vec<String> = self.qs.iter().map(u32::to_string).collect();
        write!(
            f,
            "q={};n={};m={};ext={};dim={};samples={};seed={}",
            qs.join(","),
            self.max_n,
            self.max_m,
            self.max_ext,
            self.max_dim,
            self.samples,
            self.seed
        )
    }
}

fn cell_rng(seed: u64, tag: u64, cell: [usize; 4]) -> ChaCha8Rng {
    let mut s = seed ^ tag.rotate_left(48);
    for c in cell {
        s = s.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(c as u64 + 1);
    }
    ChaCha8Rng::seed_from_u64(s)
}

/// All `k`-subspaces of F^ambient when there are at most `samples` of
/// them, otherwise `samples` uniform draws.
fn cell(field: &Field, ambient: usize, k: usize, samples: usize, rng: &mut ChaCha8Rng, budget: Budget) -> Result<Vec<rankmetric::Subspace>> {
    let count = gaussian(ambient as i64, k as i64, field.order() as u64);
    if count <= samples as i128 {
        return Ok(enumerate_subspaces(field, ambient, Some(k), budget)?.collect());
    }
    (0..samples).map(|_| sample::subspace(rng, field, ambient, k)).collect()
}

impl Grid {
    /// Matrix codes over GF(q) for every q, `1 <= n, m`, `0 <= dim <= max_dim`.
    pub fn matrix_codes(&self, budget: Budget) -> Result<Vec<MatrixCode>> {
        let mut out = Vec::new();
        for &q in &self.qs {
            let f = Field::prime(q)?;
            for n in 1..=self.max_n {
                for m in 1..=self.max_m {
                    for k in 0..=(n * m).min(self.max_dim) {
                        let mut rng = cell_rng(self.seed, 1, [q as usize, n, m, k]);
                        for s in cell(&f, n * m, k, self.samples, &mut rng, budget)? {
                            out.push(MatrixCode::from_space(n, m, s)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vector codes in GF(q^e)^n for `2 <= e <= max_ext`, `n <= max_n`.
    pub fn vector_codes(&self, budget: Budget) -> Result<Vec<VectorCode>> {
        let mut out = Vec::new();
        for &q in &self.qs {
            for e in 2..=self.max_ext {
                let f = Field::default_extension(q, e)?;
                if (f.order() as u64).pow(self.max_n as u32) > 1 << 16 {
                    continue;
                }
                for n in 1..=self.max_n {
                    for k in 0..=n {
                        let mut rng = cell_rng(self.seed, 2, [q as usize, e, n, k]);
                        for s in cell(&f, n, k, self.samples, &mut rng, budget)? {
                            out.push(VectorCode::from_space(s)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips() {
        let g: Grid = "q=2;n=2;samples=5".parse().unwrap();
        assert_eq!(g.qs, vec![2]);
        assert_eq!(g.max_n, 2);
        assert_eq!(g.to_string().parse::<Grid>().unwrap(), g);
        assert!("q=2;x=1".parse::<Grid>().is_err());
    }

    #[test]
    fn small_cells_are_exhaustive() {
        let g: Grid = "q=2;n=1;m=2;samples=3".parse().unwrap();
        let codes = g.matrix_codes(Budget::DEFAULT).unwrap();
        // 1x1: F_2 has 2 subspaces; 1x2: F_2^2 has 1 + 3 + 1.
        assert_eq!(codes.len(), 7);
    }

    #[test]
    fn sampling_is_deterministic() {
        let g: Grid = "q=3;n=2;m=2;samples=4".parse().unwrap();
        let b = Budget::DEFAULT;
        assert_eq!(g.matrix_codes(b).unwrap(), g.matrix_codes(b).unwrap());
    }
}
