//! Mat_2x2(F_2) against a hand-rolled oracle: matrices are 4-bit masks
//! (row-major, bit 3 = entry (1,1)) and a code is its set of masks.

use std::collections::BTreeSet;

use rankmetric::genweights::d_weights;
use rankmetric::{enumerate_subspaces, Budget, Field, MatrixCode};

const B: Budget = Budget::DEFAULT;

fn rank(x: u8) -> usize {
    let (a, b, c, d) = (x >> 3 & 1, x >> 2 & 1, x >> 1 & 1, x & 1);
    if x == 0 {
        0
    } else if a * d ^ b * c == 1 {
        2
    } else {
        1
    }
}

fn span(gens: &[u8]) -> BTreeSet<u8> {
    let mut s = BTreeSet::from([0u8]);
    for &g in gens {
        let next: Vec<u8> = s.iter().map(|&x| x ^ g).collect();
        s.extend(next);
    }
    s
}

fn masks(c: &MatrixCode) -> BTreeSet<u8> {
    c.codewords(B)
        .unwrap()
        .map(|v| v.iter().fold(0u8, |acc, &e| acc << 1 | e as u8))
        .collect()
}

/// Every subspace of F_2^4 as a set of masks, from brute-force spans.
fn oracle_spaces() -> BTreeSet<BTreeSet<u8>> {
    let mut out = BTreeSet::new();
    for a in 0..16u8 {
        for b in 0..16u8 {
            for c in 0..16u8 {
                for d in 0..16u8 {
                    out.insert(span(&[a, b, c, d]));
                }
            }
        }
    }
    out
}

#[test]
fn classification_agrees_with_brute_force() {
    let f = Field::prime(2).unwrap();
    let oracle = oracle_spaces();
    let mut seen = BTreeSet::new();
    let (mut mrd, mut anti) = (0, 0);
    for s in enumerate_subspaces(&f, 4, None, B).unwrap() {
        let c = MatrixCode::from_space(2, 2, s).unwrap();
        let set = masks(&c);
        assert!(oracle.contains(&set));
        let nonzero: Vec<usize> = set.iter().filter(|&&x| x != 0).map(|&x| rank(x)).collect();
        let d_min = nonzero.iter().copied().min().unwrap_or(3);
        let max_rank = nonzero.iter().copied().max().unwrap_or(0);
        let cls = c.classify(B).unwrap();
        assert_eq!((cls.d_min, cls.max_rank), (d_min, max_rank), "{set:?}");
        // Singleton: dim <= 2(3 - d); Anticode: dim <= 2 maxrk
        let k = c.dim();
        assert_eq!(cls.is_mrd, k == 2 * (3 - d_min), "{set:?}");
        assert_eq!(cls.is_optimal_anticode, k == 2 * max_rank, "{set:?}");
        mrd += cls.is_mrd as usize;
        anti += cls.is_optimal_anticode as usize;
        seen.insert(set);
    }
    assert_eq!(seen, oracle);
    assert_eq!(seen.len(), 67);
    // 0, everything, and the two 2-dim codes whose nonzero words are all
    // invertible (copies of GF(4)).
    assert_eq!(mrd, 4);
    // 0, everything, and Mat(V), Mat(V)^T for the three lines V.
    assert_eq!(anti, 8);
}

#[test]
fn generalized_weights_agree_with_brute_force() {
    // d_i = min dim V over supports V with dim C(V) >= i, using column
    // spaces and row spaces of the 2x2 masks.
    let f = Field::prime(2).unwrap();
    let colsp = |x: u8| -> u8 {
        // columns as 2-bit vectors; return the span as a bitmask of its 4 elements
        let c1 = (x >> 3 & 1) << 1 | (x >> 1 & 1);
        let c2 = (x >> 2 & 1) << 1 | (x & 1);
        span(&[c1, c2]).iter().fold(0u8, |acc, &v| acc | 1 << v)
    };
    let rowsp = |x: u8| -> u8 { span(&[x >> 2, x & 3]).iter().fold(0u8, |acc, &v| acc | 1 << v) };
    // subspaces of F_2^2 as masks: 0, the three lines, everything
    let subs: [(u8, usize); 5] = [(0b0001, 0), (0b0011, 1), (0b0101, 1), (0b1001, 1), (0b1111, 2)];
    for s in enumerate_subspaces(&f, 4, None, B).unwrap() {
        let c = MatrixCode::from_space(2, 2, s).unwrap();
        let set = masks(&c);
        let want: Vec<usize> = (1..=c.dim())
            .map(|i| {
                let mut best = usize::MAX;
                for supp in [&colsp as &dyn Fn(u8) -> u8, &rowsp] {
                    for &(v, dv) in &subs {
                        let inside = set.iter().filter(|&&x| supp(x) & !v == 0).count();
                        if inside >= 1 << i {
                            best = best.min(dv);
                        }
                    }
                }
                best
            })
            .collect();
        assert_eq!(d_weights(&c, B).unwrap().values, want, "{set:?}");
    }
}
