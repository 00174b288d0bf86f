mod support;

use std::path::Path;
use std::time::{Duration, Instant};

use nj_core::family::{
    build, closed_form_mismatch, derivative_ladder_holds, random_main, recover_params, validate_main,
    validate_params, FamilyError, FamilyParams,
};
use nj_core::inverter::{compose_factors, decompose_verified, formal_inverse, invert_factor_sequence, verify_inverse};
use nj_core::jacobian::{
    is_nilpotent, is_nilpotent_power, jacobian_matrix, linear_dependence_rank, row_dependence_rank, MapFile,
    NilpotencyMethod, PolynomialMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(path).expect("fixture readable")
}

fn example_map() -> PolynomialMap {
    let file: MapFile = serde_json::from_str(&fixture("example_map.json")).expect("map file");
    PolynomialMap::from_map_file(&file).expect("valid map")
}

fn example_fixture() -> Outcome {
    let h = example_map();
    let methods = NilpotencyMethod::ALL.iter().all(|&m| is_nilpotent(&h, m).unwrap());
    let j = jacobian_matrix(&h);
    let j2 = j.mul(&j);
    let cube_zero = !j2.is_zero() && j2.mul(&j).is_zero();
    let comp_rank = linear_dependence_rank(h.components()).rank;
    let row_rank = row_dependence_rank(&j).rank;
    let params = FamilyParams::from_json(&fixture("example_params.json")).expect("params file");
    let built = build(&params).expect("builds");
    let bytes = |m: &PolynomialMap| serde_json::to_string(&m.to_map_file()).unwrap();
    let identical = bytes(&built) == bytes(&h);
    outcome(
        methods && cube_zero && comp_rank == 3 && row_rank == 3 && identical,
        format!(
            "methods={methods} J^3=0,J^2!=0:{cube_zero} ranks=({comp_rank},{row_rank}) rebuilt={identical}"
        ),
    )
}

fn method_equivalence(corpus: &[PolynomialMap]) -> Outcome {
    let mut disagreements = 0;
    let mut nilpotent = 0;
    let mut members_nilpotent = true;
    for (k, h) in corpus.iter().enumerate() {
        let v = support::verdicts(h);
        if v[0] != v[1] || v[1] != v[2] {
            disagreements += 1;
        }
        nilpotent += usize::from(v[0]);
        members_nilpotent &= k >= 100 || v[0];
    }
    outcome(
        disagreements == 0 && members_nilpotent && corpus.len() >= 200,
        format!("{} maps, {nilpotent} nilpotent, {disagreements} disagreements", corpus.len()),
    )
}

fn recursion(corpus: &[PolynomialMap]) -> Outcome {
    let mismatches = corpus.iter().filter(|h| !support::recursion_matches(h)).count();
    outcome(mismatches == 0, format!("{} maps, {mismatches} mismatches", corpus.len()))
}

fn multi_level(params: &FamilyParams) -> bool {
    match params {
        FamilyParams::Main(m) => m.levels.iter().filter(|l| l.p.degree() >= 2).count() >= 2,
        _ => false,
    }
}

fn soundness(corpus: &[(FamilyParams, PolynomialMap)]) -> Outcome {
    let mut failures = 0;
    for (params, h) in corpus {
        let ok = validate_params(params).is_ok() && is_nilpotent_power(&jacobian_matrix(h)) && support::keller(h);
        failures += usize::from(!ok);
    }
    let multi = corpus.iter().filter(|(p, _)| multi_level(p)).count();
    let dims: std::collections::BTreeSet<usize> = corpus.iter().map(|(p, _)| p.n()).collect();
    outcome(
        failures == 0 && multi > 0 && dims.len() == 4,
        format!("{} params, n in {dims:?}, {multi} with several nonlinear levels, {failures} failures", corpus.len()),
    )
}

fn closed_form(corpus: &[(FamilyParams, PolynomialMap)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut instances: Vec<_> = corpus
        .iter()
        .filter_map(|(p, h)| match p {
            FamilyParams::Main(m) => Some((m.clone(), h.clone())),
            _ => None,
        })
        .collect();
    while instances.len() < corpus.len() + 100 {
        let n = rng.gen_range(3..=6);
        let m = random_main(&mut rng, n, 4);
        if validate_main(&m).is_ok() {
            let h = build(&FamilyParams::Main(m.clone())).unwrap();
            instances.push((m, h));
        }
    }
    let mut failures = 0;
    for (m, h) in &instances {
        let derived = validate_main(m).unwrap();
        let ok = derived.gamma_identities_hold()
            && derivative_ladder_holds(&derived)
            && closed_form_mismatch(h, m, &derived).is_none();
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("{} main-case instances, {failures} failures", instances.len()))
}

fn inversion(corpus: &[(FamilyParams, PolynomialMap)]) -> Outcome {
    let mut failures = Vec::new();
    let mut affine = 0;
    let mut max_inverse_degree = 0;
    for (k, (_, h)) in corpus.iter().enumerate() {
        let f = h.plus_identity();
        let ok = decompose_verified(&f).ok().and_then(|seq| {
            affine += usize::from(!seq.elementary_only());
            let g = compose_factors(&invert_factor_sequence(&seq).ok()?);
            max_inverse_degree = max_inverse_degree.max(g.max_degree());
            let formal = formal_inverse(&f, None).ok()?;
            Some(compose_factors(&seq) == f && verify_inverse(&f, &g) && formal == g)
        });
        if ok != Some(true) {
            failures.push(k);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} maps, {affine} needed affine factors, inverse degree up to {max_inverse_degree}, failures at {failures:?}",
            corpus.len()
        ),
    )
}

fn recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut rebuilt = 0;
    let mut tried = 0;
    while tried < 50 {
        let n = rng.gen_range(3..=6);
        let degree = rng.gen_range(1..=4);
        let m = random_main(&mut rng, n, degree);
        if validate_main(&m).is_err() {
            continue;
        }
        tried += 1;
        let h = build(&FamilyParams::Main(m)).unwrap();
        if recover_params(&h).ok().and_then(|p| build(&p).ok()) == Some(h) {
            rebuilt += 1;
        }
    }
    let outside = [
        vec!["y", "z + y^2", "-y"],
        vec!["y - x^2 + y", "z + 2*x*(y - x^2)", "-(y - x^2)^2"],
        vec!["x*y", "z", "0"],
    ];
    let rejected = outside
        .iter()
        .filter(|c| {
            let h = PolynomialMap::parse(c, 3).unwrap();
            matches!(recover_params(&h), Err(FamilyError::NotInFamily { .. }))
        })
        .count();
    outcome(rebuilt == 50 && rejected == 3, format!("{rebuilt}/50 rebuilt, {rejected}/3 rejected"))
}

fn property_suite() -> Outcome {
    let results = support::polyring_suite(1000);
    let failed: Vec<String> =
        results.iter().filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}"))).collect();
    outcome(
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} properties x 1000 cases", results.len())
        } else {
            failed.join("; ")
        },
    )
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration, bool) {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed < b);
    (result, elapsed, in_budget)
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut lines = Vec::new();
    let mut record = |id: u32, name: &str, (o, elapsed, in_budget): (Outcome, Duration, bool), budget: Option<Duration>| {
        let passed = o.passed && in_budget;
        let limit = budget.map_or(String::new(), |b| format!(" / {:.1}s", b.as_secs_f64()));
        let line = format!(
            "[{}] {id}. {name} ({:.3}s{limit}): {}",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            o.detail
        );
        println!("{line}");
        lines.push((passed, line));
    };

    let budget = Some(Duration::from_millis(100));
    record(1, "example fixture", timed(budget, example_fixture), budget);

    let start = Instant::now();
    let methods = support::method_corpus(SEED);
    let corpus_time = start.elapsed();
    let budget = Some(secs(30));
    let (o, t, _) = timed(None, || method_equivalence(&methods));
    let t = t + corpus_time;
    record(2, "nilpotency methods agree", (o, t, t < secs(30)), budget);
    record(3, "structured recursion equals cofactor determinant", timed(None, || recursion(&methods)), None);

    let start = Instant::now();
    let family = support::family_corpus(SEED + 1, 100);
    let corpus_time = start.elapsed();
    let (o, t, _) = timed(None, || soundness(&family));
    let t = t + corpus_time;
    record(4, "family soundness", (o, t, t < secs(60)), Some(secs(60)));
    record(5, "closed form and derivative ladder", timed(None, || closed_form(&family)), None);
    let budget = Some(secs(120));
    record(6, "inversion round trip", timed(budget, || inversion(&family)), budget);
    record(7, "parameter recovery", timed(None, recovery), None);
    record(8, "polyring property suite", timed(None, property_suite), None);

    let failed: Vec<&String> = lines.iter().filter(|(p, _)| !p).map(|(_, l)| l).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:#?}");
}
