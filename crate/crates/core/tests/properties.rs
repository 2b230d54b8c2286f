use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankmetric::genweights::d_weights;
use rankmetric::macwilliams::macwilliams_transform;
use rankmetric::qpolymatroid::from_code;
use rankmetric::{sample, Budget, Field, Isometry, Mat, MatrixCode};

const B: Budget = Budget::DEFAULT;

fn arb_code() -> impl Strategy<Value = MatrixCode> {
    (prop_oneof![Just(2u32), Just(3u32)], 1usize..=3, 1usize..=3, any::<u64>())
        .prop_flat_map(|(q, n, m, seed)| (Just((q, n, m, seed)), 0..=(n * m).min(6)))
        .prop_map(|((q, n, m, seed), k)| {
            let f = Field::prime(q).unwrap();
            sample::matrix_code(&mut ChaCha8Rng::seed_from_u64(seed), &f, n, m, k).unwrap()
        })
}

fn invertible(f: &Field, n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data: Vec<u32> = (0..n * n).map(|_| rng.gen_range(0..f.order())).collect();
        let m = Mat::new(f, n, n, data).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_is_an_involution(c in arb_code()) {
        let d = c.dual();
        prop_assert_eq!(d.dim(), c.n() * c.m() - c.dim());
        prop_assert_eq!(d.dual(), c);
    }

    #[test]
    fn bounds_hold(c in arb_code()) {
        let cls = c.classify(B).unwrap();
        let (mu, big, k) = (c.min_nm(), c.max_nm(), c.dim());
        prop_assert!(k <= big * (mu + 1 - cls.d_min));
        prop_assert!(k <= big * cls.max_rank);
        prop_assert!(cls.d_min + cls.dual_d_min <= mu + 2);
        prop_assert_eq!(cls.d_min + cls.dual_d_min == mu + 2, cls.is_mrd);
    }

    #[test]
    fn macwilliams_matches_enumeration(c in arb_code()) {
        let a = c.weight_distribution(B).unwrap();
        let q = c.field().order() as u64;
        let got = macwilliams_transform(&a, c.n(), c.m(), q, c.cardinality()).unwrap();
        prop_assert_eq!(got, c.dual().weight_distribution(B).unwrap());
    }

    #[test]
    fn weights_survive_isometries(c in arb_code(), sa in any::<u64>(), sb in any::<u64>()) {
        let iso = Isometry {
            a: invertible(c.field(), c.n(), sa),
            b: invertible(c.field(), c.m(), sb),
            transposed: false,
        };
        let img = c.map(&iso).unwrap();
        prop_assert_eq!(img.weight_distribution(B).unwrap(), c.weight_distribution(B).unwrap());
        prop_assert_eq!(d_weights(&img, B).unwrap().values, d_weights(&c, B).unwrap().values);
    }

    #[test]
    fn polymatroid_duality(c in arb_code()) {
        let p = from_code(&c, B).unwrap();
        let pd = from_code(&c.dual(), B).unwrap();
        prop_assert_eq!(p.p.dual(), pd.p);
    }

    #[test]
    fn square_codes_share_d_with_the_transpose(seed in any::<u64>(), n in 1usize..=3, k in 0usize..=5) {
        let f = Field::prime(2).unwrap();
        let c = sample::matrix_code(&mut ChaCha8Rng::seed_from_u64(seed), &f, n, n, k.min(n * n)).unwrap();
        prop_assert_eq!(d_weights(&c.transpose(), B).unwrap().values, d_weights(&c, B).unwrap().values);
    }

    #[test]
    fn extension_field_arithmetic(p in prop_oneof![Just(2u32), Just(3u32)], m in 2usize..=3, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::default_extension(p, m).unwrap();
        let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        // Frobenius is additive and multiplicative
        let fr = |x| f.pow(x, p as u64);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
    }
}
