use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetahull_core::exactpoly::{int, parse_poly, rat, Rational, UniPoly};
use thetahull_core::quartic::{bitangents, check_quartic, count_t};
use thetahull_core::roots::count_real_roots;
use thetahull_core::trace::quartic_has_real_root;

fn sturm_has_root(cs: &[BigInt; 5]) -> bool {
    let p = UniPoly::new(cs.iter().map(|c| Rational::from_integer(c.clone())).collect());
    count_real_roots(&p) > 0
}

fn check(cs: [BigInt; 5]) -> Result<(), TestCaseError> {
    prop_assume!(cs[4] != BigInt::from(0));
    let refs = [&cs[0], &cs[1], &cs[2], &cs[3], &cs[4]];
    prop_assert_eq!(quartic_has_real_root(refs), sturm_has_root(&cs), "{:?}", cs);
    Ok(())
}

/// Expanded product `k (x^2 + p x + q)(x^2 + r x + t)`, which covers
/// repeated roots and vanishing discriminants far more often than uniform
/// coefficients.
fn factored() -> impl Strategy<Value = [BigInt; 5]> {
    (prop::sample::select(vec![-3i64, -1, 1, 2]), -4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4).prop_map(|(k, p, q, r, t)| {
        [k * q * t, k * (p * t + q * r), k * (q + t + p * r), k * (p + r), k].map(BigInt::from)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn real_root_rule_matches_sturm_on_uniform(cs in prop::array::uniform5(-12i64..=12)) {
        check(cs.map(BigInt::from))?;
    }

    #[test]
    fn real_root_rule_matches_sturm_on_products(cs in factored()) {
        check(cs)?;
    }
}

#[test]
fn totally_real_count_survives_affine_changes() {
    let f = parse_poly("3 - 24*x^2 + 19*x^4 - 24*y^2 + 104*x^2*y^2 + 19*y^4").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = bitangents(&check_quartic(&f).unwrap(), &mut rng).unwrap();
    assert_eq!(base.bitangents.len(), 28);
    assert_eq!(count_t(&base), 4);
    for _ in 0..2 {
        let m = loop {
            let mut e = || rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            let m = [[e(), e(), e()], [e(), e(), e()], [int(0), int(0), int(1)]];
            if &m[0][0] * &m[1][1] != &m[0][1] * &m[1][0] {
                break m;
            }
        };
        let g = f.projective_pullback(&m);
        let set = bitangents(&check_quartic(&g).unwrap(), &mut rng).unwrap();
        assert_eq!(set.bitangents.len(), 28);
        assert_eq!(count_t(&set), 4, "{g}");
    }
}
