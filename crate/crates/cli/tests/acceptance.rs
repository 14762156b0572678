//! Acceptance gate. Prints one line per criterion and exits nonzero on any failure.
//!
//! Run with `cargo test -p spinpoly-cli --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinpoly::bell::{bell_system, check_bell, evaluate_bell};
use spinpoly::rational::{int, parse, rat};
use spinpoly::*;
use spinpoly_cli::document::{FacetsResult, GapResult, Report, VerticesResult};

/// Exact-arithmetic criteria need no tolerance; the Monte-Carlo bound is absolute.
const SAMPLE_TOLERANCE: f64 = 0.02;
const SAMPLE_COUNT: u64 = 100_000;
const SEED: u64 = 20_240_601;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

type Failure = Box<dyn std::error::Error>;
type Check = std::result::Result<String, Failure>;

fn cli<T: serde::de::DeserializeOwned>(args: &[&str]) -> std::result::Result<(i32, T), Failure> {
    let out = spinpoly_cli::run(std::iter::once("spinpoly").chain(args.iter().copied()));
    let report: Report = serde_json::from_str(&out.stdout)?;
    let result = report
        .result
        .ok_or_else(|| format!("no result: {:?}", report.error))?;
    Ok((out.code, serde_json::from_value(result)?))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn vertex_fidelity() -> Check {
    let (code, r): (i32, VerticesResult) = cli(&["vertices", "3"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let expected: BTreeSet<Vec<String>> = [
        ["1/1", "1/1", "1/1"],
        ["-1/1", "1/1", "-1/1"],
        ["1/1", "-1/1", "-1/1"],
        ["-1/1", "-1/1", "1/1"],
    ]
    .iter()
    .map(|u| u.iter().map(|s| s.to_string()).collect())
    .collect();
    let got: BTreeSet<Vec<String>> = r.vertices.into_iter().map(|v| v.upper).collect();
    ensure(got == expected && r.count == 4, || format!("got {got:?}"))?;
    Ok("4/4 matrices match".into())
}

fn involution() -> Check {
    let sq = tetrahedron::transform_squared();
    for (i, row) in sq.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            ensure(v == if i == j { 4 } else { 0 }, || {
                format!("A²[{i}][{j}] = {v}")
            })?;
        }
    }
    Ok("A·A = 4·I".into())
}

fn h_representation() -> Check {
    let (code, r): (i32, FacetsResult) = cli(&["facets", "3"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let expected: BTreeSet<(String, Vec<String>)> = [
        ["1", "1", "1"],
        ["-1", "1", "-1"],
        ["1", "-1", "-1"],
        ["-1", "-1", "1"],
    ]
    .iter()
    .map(|n| {
        (
            "1/1".to_string(),
            n.iter().map(|s| format!("{s}/1")).collect(),
        )
    })
    .collect();
    let got: BTreeSet<(String, Vec<String>)> = r
        .halfspaces
        .into_iter()
        .map(|h| (h.offset, h.normal))
        .collect();
    ensure(r.count == 4 && got == expected, || format!("got {got:?}"))?;
    Ok("4 halfspaces equal the Bell system".into())
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    rat(rng.random_range(-bound * q..=bound * q), q)
}

fn barycentric_round_trip() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let two = int(2);
    let mut done = 0;
    while done < 1000 {
        let mut lambda: [Rational; 4] = Default::default();
        for l in lambda.iter_mut().take(3) {
            *l = random_rational(&mut rng, 2, 12);
        }
        lambda[3] = int(1) - &lambda[0] - &lambda[1] - &lambda[2];
        if lambda[3].abs() > two {
            continue;
        }
        let coords = BarycentricCoords::new(lambda)?;
        let composed = compose3(&coords);
        let back = barycentric3(composed.matrix())?;
        ensure(back.components() == coords.components(), || {
            format!("{coords:?} -> {back:?}")
        })?;
        done += 1;
    }
    Ok("1000/1000 exact".into())
}

fn three_way_equivalence() -> Check {
    let grid: Vec<Rational> = (-10..=10).map(|k| rat(k, 10)).collect();
    let mut points = 0;
    let mut inside = 0;
    for a in &grid {
        for b in &grid {
            for c in &grid {
                let sigma = CorrelationMatrix::new(3, vec![a.clone(), b.clone(), c.clone()])?;
                let bell = check_bell(&sigma).is_empty();
                let lambda = barycentric3(&sigma)?.is_convex();
                let lp = membership(&sigma)?.is_feasible();
                ensure(bell == lambda && lambda == lp, || {
                    format!("({a}, {b}, {c}): bell {bell} lambda {lambda} lp {lp}")
                })?;
                points += 1;
                inside += usize::from(bell);
            }
        }
    }
    Ok(format!("{points} points, {inside} inside, 0 disagreements"))
}

fn four_spin_sufficiency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let vertices = extreme_points(4)?;

    for _ in 0..500 {
        let mut raw: Vec<i64> = (0..8).map(|_| rng.random_range(0..=30)).collect();
        if raw.iter().all(|&w| w == 0) {
            raw[0] = 1;
        }
        let total: i64 = raw.iter().sum();
        let mut upper = vec![Rational::zero(); 6];
        for (v, &w) in vertices.iter().zip(&raw) {
            for (u, s) in upper.iter_mut().zip(v.upper()) {
                *u += s * rat(w, total);
            }
        }
        let sigma = CorrelationMatrix::new(4, upper)?;
        ensure(check_bell(&sigma).is_empty(), || {
            format!("hull point fails Bell: {:?}", sigma.upper())
        })?;
    }

    let mut accepted = 0;
    let mut drawn = 0;
    while accepted < 500 {
        drawn += 1;
        ensure(drawn <= 100_000, || "too few Bell-satisfying draws".into())?;
        let upper: Vec<Rational> = (0..6).map(|_| random_rational(&mut rng, 1, 20)).collect();
        let sigma = CorrelationMatrix::new(4, upper)?;
        if !check_bell(&sigma).is_empty() {
            continue;
        }
        ensure(membership(&sigma)?.is_feasible(), || {
            format!("Bell point not in hull: {:?}", sigma.upper())
        })?;
        accepted += 1;
    }

    let (code, r): (i32, FacetsResult) = cli(&["facets", "4"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(r.halfspaces.iter().all(|h| h.bell.is_some()), || {
        "non-Bell facet of C4".into()
    })?;
    let bells = bell_system(4).len();
    Ok(format!(
        "500 hull points pass, 500/{drawn} Bell draws feasible, {} facets ⊆ {bells} Bell",
        r.count
    ))
}

fn simplex_classification() -> Check {
    let mut flags = Vec::new();
    for n in 2..=4 {
        let v = VRepresentation::from_matrices(&extreme_points(n)?)?;
        flags.push(is_simplex(&v)?);
    }
    ensure(flags == [true, true, false], || {
        format!("is_simplex C2..C4 = {flags:?}")
    })?;
    let identity: Vec<u32> = (2..=12).filter(|&n| simplex_count_identity(n)).collect();
    let identity_ok = (2..=12).all(|n| simplex_count_identity(n) == (n == 2 || n == 3));
    ensure(identity_ok, || format!("identity holds for {identity:?}"))?;
    Ok(format!(
        "C2, C3 simplices, C4 not; identity holds for n in {identity:?}"
    ))
}

fn gap_five() -> Check {
    let (code, r): (i32, GapResult) = cli(&["gap", "5"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let sigma = r.matrix.to_matrix()?;
    let system = bell_system(5);
    ensure(system.len() == 40, || {
        format!("{} Bell inequalities", system.len())
    })?;
    for ineq in &system {
        let value = evaluate_bell(ineq, &sigma)?;
        ensure(!value.is_negative(), || {
            format!("{ineq} evaluates to {value}")
        })?;
    }
    let y: Vec<Rational> = r
        .certificate
        .iter()
        .map(|s| parse(s))
        .collect::<Result<_>>()?;
    let sys = membership_system(&sigma)?;
    let verified = FeasibilityResult::Infeasible(y).verify(&sys);
    ensure(verified && r.certificate_verified, || {
        "certificate does not verify".into()
    })?;
    Ok(format!(
        "σ = {:?}, 40 Bell values ≥ 0, certificate verified",
        r.matrix.upper[0]
    ))
}

fn realization_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut matches = 0;
    for trial in 0..100 {
        let n = 3 + trial % 3;
        let vertices = extreme_points(n)?;
        let mut raw: Vec<i64> = (0..vertices.len())
            .map(|_| rng.random_range(0..=12))
            .collect();
        if raw.iter().all(|&w| w == 0) {
            raw[0] = 1;
        }
        let total: i64 = raw.iter().sum();
        let weights: Vec<Rational> = raw.iter().map(|&w| rat(w, total)).collect();
        let dist = realize(&weights, n)?;
        let mut expected = vec![Rational::zero(); pair_count(n)];
        for (v, w) in vertices.iter().zip(&weights) {
            for (e, s) in expected.iter_mut().zip(v.upper()) {
                *e += s * w;
            }
        }
        ensure(
            correlations_of(&dist).upper() == expected.as_slice(),
            || format!("trial {trial} (n = {n})"),
        )?;
        matches += 1;
    }
    Ok(format!("{matches}/100 exact matches"))
}

fn monte_carlo() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let raw: Vec<i64> = (0..4).map(|_| rng.random_range(1..=20)).collect();
        let total: i64 = raw.iter().sum();
        let weights: Vec<Rational> = raw.iter().map(|&w| rat(w, total)).collect();
        let dist = realize(&weights, 3)?;
        let exact = correlations_of(&dist);
        let est = sample_correlations(&dist, SAMPLE_COUNT, SEED + k)?;
        for (s, e) in exact.upper().iter().zip(&est.upper) {
            let err = (num_traits::ToPrimitive::to_f64(s).unwrap() - e).abs();
            worst = worst.max(err);
            ensure(err < SAMPLE_TOLERANCE, || {
                format!("point {k}: |{e} - {s}| = {err}")
            })?;
        }
    }
    Ok(format!(
        "20 points × {SAMPLE_COUNT} draws, max error {worst:.4} < {SAMPLE_TOLERANCE}"
    ))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "vertex fidelity",
            limit: None,
            run: vertex_fidelity,
        },
        Criterion {
            id: 2,
            name: "involution",
            limit: None,
            run: involution,
        },
        Criterion {
            id: 3,
            name: "H-representation of C3",
            limit: secs(1),
            run: h_representation,
        },
        Criterion {
            id: 4,
            name: "barycentric round trip",
            limit: secs(1),
            run: barycentric_round_trip,
        },
        Criterion {
            id: 5,
            name: "three-way equivalence",
            limit: secs(30),
            run: three_way_equivalence,
        },
        Criterion {
            id: 6,
            name: "four-spin sufficiency",
            limit: secs(60),
            run: four_spin_sufficiency,
        },
        Criterion {
            id: 7,
            name: "simplex classification",
            limit: None,
            run: simplex_classification,
        },
        Criterion {
            id: 8,
            name: "five-spin gap",
            limit: secs(10),
            run: gap_five,
        },
        Criterion {
            id: 9,
            name: "realization consistency",
            limit: None,
            run: realization_consistency,
        },
        Criterion {
            id: 10,
            name: "Monte-Carlo sanity",
            limit: secs(30),
            run: monte_carlo,
        },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("exceeded {limit:?}").into()),
            (o, _) => o,
        };
        let limit = c.limit.map_or("none".to_string(), |l| format!("{l:?}"));
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d.to_string())
            }
        };
        println!(
            "[{tag}] {:>2} {:<24} {:>10.3?} (limit {limit}) {detail}",
            c.id, c.name, elapsed
        );
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
