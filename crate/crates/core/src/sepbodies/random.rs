use rand::Rng;

use super::{strongly_separated, Body};

const MAX_TRIES: usize = 100;

/// `n` strongly separated bodies in `R^n`, each `points` samples of a
/// randomly stretched sphere around a perturbed multiple of a unit vector.
///
/// # Panics
/// If `points < n + 1` or no separated instance is found.
pub fn random_separated<R: Rng>(n: usize, points: usize, rng: &mut R) -> Vec<Body> {
    assert!(points > n, "a body needs at least n + 1 points");
    for _ in 0..MAX_TRIES {
        let bodies: Vec<Body> = (0..n).map(|i| blob(n, i, points, rng)).collect();
        if bodies.iter().any(|b| b.points().is_empty()) {
            continue;
        }
        if n == 1 || strongly_separated(&bodies).is_ok_and(|s| s.separated) {
            return bodies;
        }
    }
    panic!("no separated instance after {MAX_TRIES} tries");
}

fn blob<R: Rng>(n: usize, i: usize, points: usize, rng: &mut R) -> Body {
    let centre: Vec<f64> = (0..n)
        .map(|k| if k == i { 4.0 } else { 0.0 } + rng.gen_range(-0.5..0.5))
        .collect();
    let stretch: Vec<Vec<f64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { 1.0 } else { 0.0 } + rng.gen_range(-0.3..0.3))
                .collect()
        })
        .collect();
    loop {
        let pts: Vec<Vec<f64>> = (0..points)
            .map(|_| {
                let d = on_sphere(n, rng);
                (0..n)
                    .map(|r| centre[r] + (0..n).map(|c| stretch[r][c] * d[c]).sum::<f64>())
                    .collect()
            })
            .collect();
        if let Ok(b) = Body::new(pts) {
            return b;
        }
    }
}

fn on_sphere<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (0.1..=1.0).contains(&r) {
            return v.iter().map(|x| x / r).collect();
        }
    }
}
