use proptest::prelude::*;
use thetahull_core::exactpoly::{int, parse_poly, rat, resultant, BiPoly, Rational, UniPoly, Var};
use thetahull_core::roots::{complex_roots, count_real_roots};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Random polynomial with terms `x^i y^j`, `i <= dx`, `j <= dy`.
fn bipoly(dx: u32, dy: u32) -> impl Strategy<Value = BiPoly> {
    let slots = ((dx + 1) * (dy + 1)) as usize;
    prop::collection::vec(small_rat(), slots).prop_map(move |cs| {
        BiPoly::from_terms(
            cs.into_iter()
                .enumerate()
                .map(|(k, c)| ((k as u32 % (dx + 1), k as u32 / (dx + 1)), c)),
        )
    })
}

fn nonconstant_in_y(dx: u32, dy: u32) -> impl Strategy<Value = BiPoly> {
    bipoly(dx, dy).prop_filter("positive y-degree", |p| p.degree_in(Var::Y).unwrap_or(0) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn resultant_is_multiplicative(p in nonconstant_in_y(2, 2), q in nonconstant_in_y(1, 2), r in nonconstant_in_y(2, 2)) {
        let pq = &p * &q;
        let lhs = resultant(&pq, &r, Var::Y).unwrap();
        let rhs = resultant(&p, &r, Var::Y).unwrap() * resultant(&q, &r, Var::Y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_with_a_graph_is_substitution(f in nonconstant_in_y(3, 3), a in small_rat(), b in small_rat()) {
        let c = UniPoly::new(vec![b, a]).with_var('x');
        let line = BiPoly::y() - BiPoly::from_uni(&c, Var::X);
        let res = resultant(&f, &line, Var::Y).unwrap();
        let direct = f.substitute_y(&c);
        prop_assert!(res == direct || res == -direct.clone(), "{} vs {}", res, direct);
    }

    #[test]
    fn print_then_parse_is_identity(p in bipoly(3, 3)) {
        let text = p.to_string();
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(back.term_map(), p.term_map());
    }

    #[test]
    fn evaluation_is_additive_and_multiplicative(p in bipoly(2, 2), q in bipoly(2, 2), x in small_rat(), y in small_rat()) {
        prop_assert_eq!((&p + &q).evaluate(&x, &y), p.evaluate(&x, &y) + q.evaluate(&x, &y));
        prop_assert_eq!((&p * &q).evaluate(&x, &y), p.evaluate(&x, &y) * q.evaluate(&x, &y));
    }
}

/// Product of `(x - r)^m` over distinct rational roots, times `x^2 + c`
/// factors with `c > 0`; the number of distinct real roots is known.
fn with_known_roots() -> impl Strategy<Value = (UniPoly, usize)> {
    (
        prop::collection::btree_set(-20i64..=20, 0..=5),
        prop::collection::vec(1u32..=2, 5),
        prop::collection::vec(1i64..=9, 0..=2),
        1i64..=4,
    )
        .prop_filter_map("degree at most 10", |(roots, mults, quads, den)| {
            let mut p = UniPoly::constant(int(1));
            let mut degree = 0;
            for (r, m) in roots.iter().zip(&mults) {
                p = p * UniPoly::linear_root(&rat(*r, den)).pow(*m);
                degree += *m as usize;
            }
            for c in &quads {
                p = p * UniPoly::new(vec![rat(*c, den), int(0), int(1)]);
                degree += 2;
            }
            (1..=10).contains(&degree).then_some((p, roots.len()))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_counts_distinct_real_roots((p, distinct) in with_known_roots()) {
        prop_assert_eq!(count_real_roots(&p), distinct);
    }

    #[test]
    fn complex_roots_pair_and_sum_to_degree(cs in prop::collection::vec(-9i64..=9, 2..=11)) {
        let p = UniPoly::from_i64(&cs);
        prop_assume!(p.degree().unwrap_or(0) >= 1);
        let roots = complex_roots(&p, 1e-10).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, p.degree().unwrap());
        for r in roots.iter().filter(|r| r.im.abs() > 1e-8 * r.z().norm().max(1.0)) {
            let target = r.z().conj();
            let closest = roots
                .iter()
                .map(|o| (o.z() - target).norm())
                .fold(f64::INFINITY, f64::min);
            prop_assert!(closest <= 1e-8 * target.norm().max(1.0), "{:?}", r);
        }
    }
}
