use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetahull_core::sepbodies::{
    affinely_independent, facet_oracle, random_separated, strongly_separated, support_functional,
    uniqueness_check, Body, Orientation,
};

fn points_for(n: usize) -> usize {
    match n {
        2 => 40,
        3 => 24,
        _ => 14,
    }
}

#[test]
fn random_instances_match_the_facet_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..30 {
        let n = 2 + k % 3;
        let bodies = random_separated(n, points_for(n), &mut rng);
        let facets = facet_oracle(&bodies).unwrap();
        assert_eq!(facets.len(), 2, "instance {k}");
        let plus = support_functional(&bodies, Orientation::Nonnegative).unwrap();
        let minus = support_functional(&bodies, Orientation::Nonpositive).unwrap();
        assert!(plus.is_valid() && minus.is_valid());
        for c in [&plus, &minus] {
            assert!(facets.iter().any(|f| c.agrees_with(&f.functional)), "instance {k}");
        }
        assert!(!plus.agrees_with(&minus.supporting()));
    }
}

#[test]
fn randomized_restarts_agree_in_three_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bodies = random_separated(3, 24, &mut rng);
    assert!(uniqueness_check(&bodies, Orientation::Nonnegative, 20, 1).unwrap());
    assert!(uniqueness_check(&bodies, Orientation::Nonpositive, 20, 2).unwrap());
}

#[test]
fn one_point_per_body_is_affinely_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let bodies = random_separated(3, 20, &mut rng);
    for _ in 0..1000 {
        let pick: Vec<Vec<f64>> =
            bodies.iter().map(|b| b.points()[rng.gen_range(0..b.len())].clone()).collect();
        assert!(affinely_independent(&pick));
    }
}

fn apply(bodies: &[Body], m: &[Vec<f64>], t: &[f64]) -> Vec<Body> {
    bodies
        .iter()
        .map(|b| {
            b.map(|p| {
                (0..p.len())
                    .map(|r| t[r] + (0..p.len()).map(|c| m[r][c] * p[c]).sum::<f64>())
                    .collect()
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn separation_is_affine_invariant(
        seed in any::<u64>(),
        gap in prop::sample::select(vec![-0.5, 3.0]),
        m in prop::array::uniform4(-1.0f64..1.0),
        t in prop::array::uniform2(-10.0f64..10.0),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Three disks with random centres; some overlapping when `gap` < 0.
        let bodies: Vec<Body> = (0..3)
            .map(|i| {
                let c = [i as f64 * (2.0 + gap) + rng.gen_range(-0.3..0.3), rng.gen_range(-3.0..3.0)];
                Body::new((0..12).map(|k| {
                    let a = k as f64 * std::f64::consts::TAU / 12.0;
                    vec![c[0] + a.cos(), c[1] + a.sin()]
                }).collect()).unwrap()
            })
            .collect();
        let mut mat = vec![vec![1.0 + m[0].abs(), m[1]], vec![m[2], 1.0 + m[3].abs()]];
        if mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] <= 0.1 {
            mat[0][1] = 0.0;
            mat[1][0] = 0.0;
        }
        let before = strongly_separated(&bodies).unwrap().separated;
        let after = strongly_separated(&apply(&bodies, &mat, &t)).unwrap().separated;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn certificates_hold_for_random_instances(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bodies = random_separated(n, n + 8, &mut rng);
        for o in [Orientation::Nonnegative, Orientation::Nonpositive] {
            let c = support_functional(&bodies, o).unwrap();
            prop_assert!(c.is_valid());
            for (t, b) in c.touch.iter().zip(&bodies) {
                prop_assert!(t.weights.iter().all(|w| w.1 >= 0.0 && w.0 < b.len()));
            }
        }
    }
}
