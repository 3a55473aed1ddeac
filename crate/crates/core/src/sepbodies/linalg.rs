use super::Affine;

const RANK_EPS: f64 = 1e-10;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Determinant of a square matrix given by rows, by partial pivoting.
pub(crate) fn det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    d
}

/// Numerical rank with tolerance relative to the largest entry.
pub(crate) fn rank(mut m: Vec<Vec<f64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let big = m.iter().flatten().fold(0.0f64, |a, &b| a.max(b.abs()));
    if big == 0.0 {
        return 0;
    }
    let eps = RANK_EPS * big;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[p][c].abs() <= eps {
            continue;
        }
        m.swap(p, r);
        for i in r + 1..rows {
            let f = m[i][c] / m[r][c];
            for k in c..cols {
                m[i][k] -= f * m[r][k];
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn affine_rank(points: &[Vec<f64>]) -> usize {
    let Some(p0) = points.first() else { return 0 };
    rank(points[1..].iter().map(|p| sub(p, p0)).collect())
}

/// Whether the points are affinely independent.
pub fn affinely_independent(points: &[Vec<f64>]) -> bool {
    !points.is_empty() && affine_rank(points) == points.len() - 1
}

/// The determinant form of `n` points in `R^n`: the affine functional
/// `x -> det [[1, ..., 1, 1], [v_1, ..., v_n, x]]`.
pub fn det_form(v: &[Vec<f64>]) -> Affine {
    let n = v.len();
    let d: Vec<Vec<f64>> = v[1..].iter().map(|p| sub(p, &v[0])).collect();
    // Columns d_1..d_{n-1}, x - v_1; cofactor expansion along the last column.
    let normal: Vec<f64> = (0..n)
        .map(|k| {
            let m: Vec<Vec<f64>> = (0..n)
                .map(|row| {
                    let mut r: Vec<f64> = d.iter().map(|col| col[row]).collect();
                    r.push(if row == k { 1.0 } else { 0.0 });
                    r
                })
                .collect();
            det(m)
        })
        .collect();
    let offset = -dot(&normal, &v[0]);
    Affine { normal, offset }
}

pub(crate) fn argmin(points: &[Vec<f64>], f: &Affine) -> (f64, usize) {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (f.eval(p), i))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("nonempty body")
}

pub(crate) fn diameter<'a>(points: impl Iterator<Item = &'a Vec<f64>>) -> f64 {
    let mut lo: Vec<f64> = Vec::new();
    let mut hi: Vec<f64> = Vec::new();
    for p in points {
        if lo.is_empty() {
            lo = p.clone();
            hi = p.clone();
        }
        for (k, &c) in p.iter().enumerate() {
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
    }
    norm(&sub(&hi, &lo)).max(f64::MIN_POSITIVE)
}

/// Orthonormal basis `e_1..e_{n-1}` of the complement of `h`, oriented so
/// that `det [e_1, ..., e_{n-1}, h] > 0`.
pub(crate) fn complement_basis(h: &[f64]) -> Vec<Vec<f64>> {
    let n = h.len();
    let hn: Vec<f64> = h.iter().map(|c| c / norm(h)).collect();
    let mut basis: Vec<Vec<f64>> = vec![hn];
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v: Vec<f64> = (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let l = norm(&v);
        if l > 1e-6 {
            basis.push(v.iter().map(|x| x / l).collect());
        }
    }
    let mut e: Vec<Vec<f64>> = basis.split_off(1);
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|row| e.iter().map(|col| col[row]).chain([h[row]]).collect())
        .collect();
    if det(std::mem::take(&mut m)) < 0.0 {
        if let Some(first) = e.first_mut() {
            first.iter_mut().for_each(|x| *x = -*x);
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_form_matches_definition() {
        let v = vec![vec![1.0, 0.0], vec![0.0, 2.0]];
        let l = det_form(&v);
        // det [[1,1,1],[1,0,x],[0,2,y]] = (0-1)(y-0) - (2-0)(x-1)
        for (x, y) in [(0.3, -1.0), (2.0, 5.0)] {
            let direct = -y - 2.0 * (x - 1.0);
            assert!((l.eval(&[x, y]) - direct).abs() < 1e-12);
        }
        assert!(l.eval(&v[0]).abs() < 1e-12 && l.eval(&v[1]).abs() < 1e-12);
        assert_eq!(det_form(&[vec![3.0]]).eval(&[5.0]), 2.0);
    }

    #[test]
    fn complement_is_oriented() {
        for h in [vec![0.0, 0.0, 1.0], vec![1.0, -2.0, 0.5], vec![0.3, 0.4]] {
            let e = complement_basis(&h);
            assert_eq!(e.len(), h.len() - 1);
            for v in &e {
                assert!(dot(v, &h).abs() < 1e-12);
            }
            let n = h.len();
            let m = (0..n).map(|r| e.iter().map(|c| c[r]).chain([h[r]]).collect()).collect();
            assert!(det(m) > 0.0);
        }
    }

    #[test]
    fn independence() {
        assert!(affinely_independent(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]));
        assert!(!affinely_independent(&[vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]]));
    }
}
