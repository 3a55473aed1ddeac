//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thetahull_cli::corpus::{Expected, TABLE};
use thetahull_cli::RowChecks;
use thetahull_core::analysis::{analyze, Analysis, AnalysisOptions};
use thetahull_core::exactpoly::{int, rat, BiPoly, Rational};
use thetahull_core::quartic::{bitangents, check_quartic, count_t};
use thetahull_core::sepbodies::{
    facet_oracle, random_separated, support_functional, uniqueness_check, Orientation,
};
use thetahull_core::thetacount::{
    bounds_table, brute_force_odd_with_signs, brute_force_real_theta, count_odd_with_signs,
    count_real_theta, face_lower_bound, hyperelliptic_oracle, hyperelliptic_totally_real_odd,
    CurveTopology,
};
use thetahull_core::trace::DEFAULT_DUAL_RESOLUTION;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(failures: Vec<String>, summary: String) -> Verdict {
        if failures.is_empty() {
            Verdict { pass: true, detail: summary }
        } else {
            Verdict { pass: false, detail: failures.join("; ") }
        }
    }
}

struct Row {
    analysis: Result<Analysis, String>,
    elapsed: Duration,
}

fn analyze_table() -> Vec<Row> {
    let opts = AnalysisOptions::default();
    TABLE
        .iter()
        .map(|row| {
            let start = Instant::now();
            let analysis = analyze(&row.poly(), &opts).map_err(|e| e.to_string());
            Row { analysis, elapsed: start.elapsed() }
        })
        .collect()
}

fn table_reproduction(rows: &[Row]) -> Verdict {
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (row, r) in TABLE.iter().zip(rows) {
        slowest = slowest.max(r.elapsed);
        if r.elapsed > Duration::from_secs(300) {
            failures.push(format!("row {} took {:.0?}", row.row, r.elapsed));
        }
        match &r.analysis {
            Err(e) => failures.push(format!("row {}: {e}", row.row)),
            Ok(a) => {
                let got = Expected { s: a.report.s, a: a.report.a, t: a.report.t, e: a.report.e };
                if got != row.expected {
                    failures.push(format!("row {}: got {got:?}, expected {:?}", row.row, row.expected));
                }
            }
        }
    }
    Verdict::new(failures, format!("10/10 rows match, slowest {slowest:.1?}"))
}

fn genus_four_bounds() -> Verdict {
    let want = [(1, 0, 0, 0), (1, 1, 0, 8), (2, 1, 0, 16), (3, 0, 0, 24), (3, 1, 8, 32), (4, 1, 32, 64), (5, 0, 80, 120)];
    let got: Vec<(u32, u8, u64, u64)> = match bounds_table(4) {
        Ok(rows) => rows
            .into_iter()
            .map(|r| (r.s, r.a, r.lower.to_u64().unwrap(), r.upper.to_u64().unwrap()))
            .collect(),
        Err(e) => return Verdict::new(vec![e.to_string()], String::new()),
    };
    let failures = if got == want { vec![] } else { vec![format!("got {got:?}")] };
    Verdict::new(failures, "seven intervals match".into())
}

fn counting_oracles() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for g in 1..=6u32 {
        for s in 1..=g + 1 {
            for dividing in [true, false] {
                let Ok(t) = CurveTopology::new(g, s, dividing) else { continue };
                let counts = count_real_theta(&t);
                if brute_force_real_theta(&t).ok().as_ref() != Some(&counts) {
                    failures.push(format!("real counts differ at {t:?}"));
                }
                for bits in 0u32..1 << (s - 1) {
                    let w: Vec<bool> = (0..s - 1).map(|k| bits >> k & 1 == 1).collect();
                    let closed = count_odd_with_signs(&t, &w).ok();
                    let brute = brute_force_odd_with_signs(&t, &w).ok();
                    if closed.is_none() || closed != brute {
                        failures.push(format!("signed counts differ at {t:?} {w:?}"));
                    }
                    if dividing && bits == 0 && closed != Some(BigUint::zero()) {
                        failures.push(format!("all-plus dividing case nonzero at {t:?}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:.1?}"));
    }
    Verdict::new(failures, format!("{cases} sign vectors, {elapsed:.1?}"))
}

fn hyperelliptic_sums() -> Verdict {
    let mut failures = Vec::new();
    let mut cases = 0;
    for g in 2..=12 {
        for r in 0..=g + 1 {
            let closed = hyperelliptic_totally_real_odd(g, r).ok();
            if closed.is_none() || closed != hyperelliptic_oracle(g, r).ok() {
                failures.push(format!("g={g} r={r}"));
            }
            cases += 1;
        }
    }
    Verdict::new(failures, format!("{cases} (g, r) pairs"))
}

/// Entries `p / q` with `|p| <= 3`, `q` in `{1, 2}`; nonsingular linear part.
fn random_affine(rng: &mut ChaCha8Rng) -> [[Rational; 3]; 3] {
    loop {
        let mut e = || rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        let m = [[e(), e(), e()], [e(), e(), e()], [int(0), int(0), int(1)]];
        if &m[0][0] * &m[1][1] != &m[0][1] * &m[1][0] {
            return m;
        }
    }
}

fn bitangent_structure(rows: &[Row]) -> Verdict {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (row, r) in TABLE.iter().zip(rows) {
        let Ok(a) = &r.analysis else {
            failures.push(format!("row {}: no analysis", row.row));
            continue;
        };
        let checks = RowChecks::from_analysis(a);
        for f in checks.failures().into_iter().filter(|f| !f.contains("avoidance") && !f.contains("bound")) {
            failures.push(format!("row {}: {f}", row.row));
        }
        let f: BiPoly = row.poly();
        for _ in 0..5 {
            let g = f.projective_pullback(&random_affine(&mut rng));
            let t = check_quartic(&g)
                .map_err(|e| e.to_string())
                .and_then(|q| bitangents(&q, &mut rng).map_err(|e| e.to_string()));
            match t {
                Ok(set) if count_t(&set) == row.expected.t && set.bitangents.len() == 28 => {}
                Ok(set) => failures.push(format!("row {}: T = {} after {g}", row.row, count_t(&set))),
                Err(e) => failures.push(format!("row {}: {e} after {g}", row.row)),
            }
        }
    }
    Verdict::new(failures, "28 lines, closed, residual <= 1e-8, real lines, T invariant x5".into())
}

fn avoidance(rows: &[Row]) -> Verdict {
    let mut failures = Vec::new();
    for (row, r) in TABLE.iter().zip(rows) {
        let Ok(a) = &r.analysis else {
            failures.push(format!("row {}: no analysis", row.row));
            continue;
        };
        let est = &a.report.avoidance;
        let want = (1usize << (row.expected.s - 1)) - 1 + row.expected.a as usize;
        if est.components != want {
            failures.push(format!("row {}: {} components, expected {want}", row.row, est.components));
        }
        if est.resolution != DEFAULT_DUAL_RESOLUTION || est.counts.get(..2) != Some(&[want, want][..]) {
            failures.push(format!("row {}: counts {:?} not stable at the default resolution", row.row, est.counts));
        }
    }
    Verdict::new(failures, "component counts stable under one doubling".into())
}

fn separated_bodies() -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..100 {
        let n = 2 + k % 3;
        let points = [40, 24, 14][n - 2];
        let bodies = random_separated(n, points, &mut rng);
        let result = (|| -> Result<Vec<String>, String> {
            let facets = facet_oracle(&bodies).map_err(|e| e.to_string())?;
            let plus = support_functional(&bodies, Orientation::Nonnegative).map_err(|e| e.to_string())?;
            let minus = support_functional(&bodies, Orientation::Nonpositive).map_err(|e| e.to_string())?;
            let mut bad = Vec::new();
            for c in [&plus, &minus] {
                if !c.is_valid() {
                    bad.push(format!("{} certificate invalid", c.orientation));
                }
                if !facets.iter().any(|f| c.agrees_with(&f.functional)) {
                    bad.push(format!("{} disagrees with the oracle", c.orientation));
                }
            }
            if plus.agrees_with(&minus.supporting()) {
                bad.push("orientations give the same face".into());
            }
            for o in [Orientation::Nonnegative, Orientation::Nonpositive] {
                if !uniqueness_check(&bodies, o, 20, k as u64).map_err(|e| e.to_string())? {
                    bad.push(format!("{o} restarts disagree"));
                }
            }
            Ok(bad)
        })();
        match result {
            Ok(bad) => failures.extend(bad.into_iter().map(|b| format!("instance {k} (n={n}): {b}"))),
            Err(e) => failures.push(format!("instance {k} (n={n}): {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("took {elapsed:.1?}"));
    }
    Verdict::new(failures, format!("100 instances, {elapsed:.1?}"))
}

fn face_sandwich(rows: &[Row]) -> Verdict {
    let mut failures = Vec::new();
    for (row, r) in TABLE.iter().zip(rows) {
        let Ok(a) = &r.analysis else {
            failures.push(format!("row {}: no analysis", row.row));
            continue;
        };
        let lower = face_lower_bound(&a.report.topology, None).map(|b| b.to_usize().unwrap()).unwrap_or(usize::MAX);
        let e = a.report.e;
        if !(lower <= e && e <= 4) {
            failures.push(format!("row {}: {lower} <= {e} <= 4 fails", row.row));
        }
        let active = match (a.report.s, a.report.topology.dividing) {
            (2, false) => Some(2),
            (3, _) | (4, _) => Some(3),
            _ => None,
        };
        if active.is_some_and(|need| lower < need) {
            failures.push(format!("row {}: lower bound {lower} not active", row.row));
        }
    }
    Verdict::new(failures, "lower <= E <= 4 on all rows".into())
}

fn main() {
    let start = Instant::now();
    let rows = analyze_table();
    let criteria: Vec<(&str, Verdict)> = vec![
        ("reference quartics reproduced", table_reproduction(&rows)),
        ("genus-4 bounds table", genus_four_bounds()),
        ("counting oracles agree", counting_oracles()),
        ("hyperelliptic sums agree", hyperelliptic_sums()),
        ("bitangent structure", bitangent_structure(&rows)),
        ("avoidance components", avoidance(&rows)),
        ("separated bodies suite", separated_bodies()),
        ("face-bound sandwich", face_sandwich(&rows)),
    ];
    let mut all = true;
    for (k, (name, v)) in criteria.iter().enumerate() {
        all &= v.pass;
        println!("{} {}. {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    assert!(all, "acceptance criteria failed");
}
