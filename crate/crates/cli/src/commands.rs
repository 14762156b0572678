//! One function per subcommand. Each returns an [`Answer`]; I/O happens in
//! [`crate::run`].

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use spinpoly::bell::evaluate_bell;
use spinpoly::bell::violations;
use spinpoly::gap::GapSource;
use spinpoly::{
    affine_hull_dim, barycentric3, bell_system, bell_transform, extreme_points, facet_enumerate,
    gap_search, is_simplex, membership, moment_vector, realizability, sample_correlations,
    simplex_count_identity, BellInequality, CorrelationMatrix, FeasibilityResult, HalfSpace,
    Realization, SignVector, VRepresentation,
};

use crate::document::*;

pub struct Answer {
    pub status: Status,
    pub result: serde_json::Value,
    /// Full human-readable rendering, used for `--format plain`.
    pub plain: String,
    /// One line for standard error.
    pub summary: String,
}

pub type CommandResult = Result<Answer, String>;

fn answer<T: serde::Serialize>(
    status: Status,
    result: &T,
    plain: String,
    summary: String,
) -> CommandResult {
    let result = serde_json::to_value(result).map_err(|e| e.to_string())?;
    Ok(Answer {
        status,
        result,
        plain,
        summary,
    })
}

fn err(e: spinpoly::Error) -> String {
    e.to_string()
}

pub fn read_matrix(path: &Path) -> Result<CorrelationMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    MatrixDocument::parse(&text)?.to_matrix().map_err(err)
}

fn inequality_entry(b: &BellInequality, value: Option<String>) -> InequalityEntry {
    InequalityEntry {
        triple: b.triple().map(|t| t + 1),
        signs: b.signs(),
        coefficients: b.pair_coefficients(),
        text: b.to_string(),
        value,
    }
}

fn join(v: &[String]) -> String {
    v.join(" ")
}

pub fn vertices(n: usize) -> CommandResult {
    let vertices = extreme_points(n).map_err(err)?;
    let entries: Vec<VertexEntry> = SignVector::classes(n)
        .zip(&vertices)
        .map(|(s, v)| VertexEntry {
            sign: s.entries(),
            upper: rat_strs(v.upper()),
        })
        .collect();
    let mut plain = String::new();
    for (s, e) in SignVector::classes(n).zip(&entries) {
        writeln!(plain, "{s}  {}", join(&e.upper)).unwrap();
    }
    let summary = format!("C_{n} has {} vertices", entries.len());
    let result = VerticesResult {
        n,
        count: entries.len(),
        vertices: entries,
    };
    answer(Status::Ok, &result, plain, summary)
}

pub fn bells(n: usize) -> CommandResult {
    let system = bell_system(n);
    let entries: Vec<_> = system.iter().map(|b| inequality_entry(b, None)).collect();
    let plain = entries.iter().map(|e| format!("{}\n", e.text)).collect();
    let summary = format!("{} Bell inequalities for n = {n}", entries.len());
    let result = BellsResult {
        n,
        count: entries.len(),
        inequalities: entries,
    };
    answer(Status::Ok, &result, plain, summary)
}

pub fn check(sigma: &CorrelationMatrix) -> CommandResult {
    let checked = bell_system(sigma.n()).len();
    let violated: Vec<_> = violations(sigma)
        .iter()
        .map(|(b, v)| inequality_entry(b, Some(rat_str(v))))
        .collect();
    let satisfied = violated.is_empty();
    let mut plain = String::new();
    for v in &violated {
        writeln!(
            plain,
            "violated: {}  (value {})",
            v.text,
            v.value.as_deref().unwrap_or("")
        )
        .unwrap();
    }
    let summary = if satisfied {
        format!("all {checked} Bell inequalities hold")
    } else {
        format!("{} of {checked} Bell inequalities violated", violated.len())
    };
    plain.push_str(&summary);
    plain.push('\n');
    let status = if satisfied {
        Status::Ok
    } else {
        Status::Negative
    };
    let result = CheckResult {
        n: sigma.n(),
        checked,
        satisfied,
        violated,
    };
    answer(status, &result, plain, summary)
}

pub fn member(sigma: &CorrelationMatrix) -> CommandResult {
    let n = sigma.n();
    let (result, plain, summary) = match membership(sigma).map_err(err)? {
        FeasibilityResult::Feasible(w) => (
            MemberResult {
                n,
                member: true,
                weights: Some(rat_strs(&w)),
                certificate: None,
            },
            format!("member\nweights: {}\n", join(&rat_strs(&w))),
            format!("matrix lies in C_{n}"),
        ),
        FeasibilityResult::Infeasible(y) => (
            MemberResult {
                n,
                member: false,
                weights: None,
                certificate: Some(rat_strs(&y)),
            },
            format!("not a member\ncertificate: {}\n", join(&rat_strs(&y))),
            format!("matrix lies outside C_{n} (Farkas certificate attached)"),
        ),
    };
    let status = if result.member {
        Status::Ok
    } else {
        Status::Negative
    };
    answer(status, &result, plain, summary)
}

pub fn realize(sigma: &CorrelationMatrix) -> CommandResult {
    let n = sigma.n();
    match realizability(sigma).map_err(err)? {
        Realization::Realized { distribution, .. } => {
            let atoms: Vec<AtomEntry> = distribution
                .support()
                .map(|(s, w)| AtomEntry {
                    atom: s.entries(),
                    weight: rat_str(w),
                })
                .collect();
            let mut plain = String::new();
            for (s, w) in distribution.support() {
                writeln!(plain, "{s}  {}", rat_str(w)).unwrap();
            }
            let summary = format!("realized by a spin distribution on {} atoms", atoms.len());
            let result = RealizeResult {
                n,
                realizable: true,
                distribution: Some(atoms),
                certificate: None,
            };
            answer(Status::Ok, &result, plain, summary)
        }
        Realization::Infeasible(y) => {
            let plain = format!("not realizable\ncertificate: {}\n", join(&rat_strs(&y)));
            let result = RealizeResult {
                n,
                realizable: false,
                distribution: None,
                certificate: Some(rat_strs(&y)),
            };
            answer(
                Status::Negative,
                &result,
                plain,
                "no spin distribution has these correlations".into(),
            )
        }
    }
}

pub fn barycentric(sigma: &CorrelationMatrix) -> CommandResult {
    let x = moment_vector(sigma).map_err(err)?;
    let y = bell_transform(&x);
    let lambda = barycentric3(sigma).map_err(err)?;
    let member = lambda.is_convex();
    let result = BarycentricResult {
        moment: rat_strs(x.components()),
        bell_values: rat_strs(y.components()),
        lambda: rat_strs(lambda.components()),
        member,
    };
    let plain = format!(
        "x = {}\ny = A x = {}\nlambda = y / 4 = {}\n{}\n",
        join(&result.moment),
        join(&result.bell_values),
        join(&result.lambda),
        if member {
            "inside the tetrahedron"
        } else {
            "outside the tetrahedron"
        }
    );
    let summary = if member {
        "all barycentric coordinates are nonnegative".to_string()
    } else {
        "a barycentric coordinate is negative".to_string()
    };
    answer(
        if member { Status::Ok } else { Status::Negative },
        &result,
        plain,
        summary,
    )
}

fn bell_lookup(n: usize) -> BTreeMap<HalfSpace, BellInequality> {
    bell_system(n)
        .into_iter()
        .map(|b| {
            let (c, a) = b.as_affine(n).expect("system matches order");
            (HalfSpace::new(a, c).expect("nonzero normal"), b)
        })
        .collect()
}

pub fn facets(n: usize) -> CommandResult {
    let v = VRepresentation::from_matrices(&extreme_points(n).map_err(err)?).map_err(err)?;
    let h = facet_enumerate(&v).map_err(err)?;
    let hull_dim = affine_hull_dim(&v).map_err(err)?.dim;
    let lookup = bell_lookup(n);
    let halfspaces: Vec<HalfSpaceEntry> = h
        .halfspaces
        .iter()
        .map(|f| HalfSpaceEntry {
            offset: rat_str(f.offset()),
            normal: rat_strs(f.normal()),
            bell: lookup.get(f).map(ToString::to_string),
        })
        .collect();
    let bell_count = halfspaces.iter().filter(|f| f.bell.is_some()).count();
    let mut plain = String::new();
    for f in &halfspaces {
        writeln!(
            plain,
            "{} + ({}) . s >= 0{}",
            f.offset,
            join(&f.normal),
            f.bell
                .as_ref()
                .map(|b| format!("    [{b}]"))
                .unwrap_or_default()
        )
        .unwrap();
    }
    let summary = format!(
        "{} facets, {bell_count} of them Bell inequalities",
        halfspaces.len()
    );
    let result = FacetsResult {
        n,
        dim: h.dim,
        hull_dim,
        count: halfspaces.len(),
        bell_count,
        halfspaces,
        affine_equalities: h
            .affine_equalities
            .iter()
            .map(|(a, c)| EqualityEntry {
                offset: rat_str(c),
                normal: rat_strs(a),
            })
            .collect(),
    };
    answer(Status::Ok, &result, plain, summary)
}

pub fn simplex_check(n: usize) -> CommandResult {
    let v = VRepresentation::from_matrices(&extreme_points(n).map_err(err)?).map_err(err)?;
    let hull_dim = affine_hull_dim(&v).map_err(err)?.dim;
    let simplex = is_simplex(&v).map_err(err)?;
    let result = SimplexResult {
        n,
        vertices: v.points().len(),
        dim: v.dim(),
        hull_dim,
        is_simplex: simplex,
        count_identity: simplex_count_identity(n as u32),
    };
    let summary = format!(
        "C_{n}: {} vertices, affine dimension {hull_dim}: {}",
        result.vertices,
        if simplex {
            "a simplex"
        } else {
            "not a simplex"
        }
    );
    let plain = format!(
        "{summary}\n2^(n-1) = n(n-1)/2 + 1 holds: {}\n",
        result.count_identity
    );
    answer(
        if simplex {
            Status::Ok
        } else {
            Status::Negative
        },
        &result,
        plain,
        summary,
    )
}

pub fn gap(n: usize, seed: u64) -> CommandResult {
    if n <= 4 {
        return Err(
            "gap needs n >= 5: for n <= 4 the Bell inequalities are necessary and sufficient, so no gap exists"
                .to_string(),
        );
    }
    let w = gap_search(n, seed).map_err(err)?;
    let verified = w.verify().map_err(err)?;
    let min_bell = bell_system(n)
        .iter()
        .map(|b| evaluate_bell(b, &w.matrix).expect("order matches"))
        .min()
        .expect("n >= 5 has inequalities");
    let source = match &w.source {
        GapSource::AllEqual(c) => format!("all-equal {}", rat_str(c)),
        GapSource::Random { seed, attempt } => format!("random seed {seed} attempt {attempt}"),
    };
    let mut matrix = MatrixDocument::from_matrix(&w.matrix);
    matrix.label = Some(format!("Bell-satisfying, outside C_{n}"));
    let plain = format!(
        "matrix ({source}): {}\nsmallest Bell value: {}\ncertificate: {}\nverified: {verified}\n",
        join(&matrix.upper),
        rat_str(&min_bell),
        join(&rat_strs(&w.certificate))
    );
    let summary = format!("found a Bell-satisfying matrix outside C_{n} ({source})");
    let result = GapResult {
        n,
        seed,
        source,
        matrix,
        min_bell_value: rat_str(&min_bell),
        certificate: rat_strs(&w.certificate),
        certificate_verified: verified,
    };
    answer(Status::Ok, &result, plain, summary)
}

pub fn sample(sigma: &CorrelationMatrix, count: u64, seed: u64) -> CommandResult {
    let dist = match realizability(sigma).map_err(err)? {
        Realization::Realized { distribution, .. } => distribution,
        Realization::Infeasible(_) => return realize(sigma),
    };
    let est = sample_correlations(&dist, count, seed).map_err(err)?;
    let exact = rat_strs(sigma.upper());
    let mut plain = String::new();
    for (k, (e, (s, se))) in exact
        .iter()
        .zip(est.upper.iter().zip(&est.std_err))
        .enumerate()
    {
        writeln!(plain, "pair {k}: exact {e}  sampled {s:.6} ± {se:.6}").unwrap();
    }
    let summary = format!("{count} draws with {} seed {seed}", est.rng);
    let result = SampleResult {
        n: est.n,
        count,
        seed,
        rng: est.rng.to_string(),
        exact,
        estimate: est.upper,
        std_err: est.std_err,
    };
    answer(Status::Ok, &result, plain, summary)
}
