#![allow(dead_code)]

use nj_core::family::{
    build, random_cor1, random_cor2, random_main_bounded, validate_params, FamilyParams,
};
use nj_core::jacobian::{
    det_identity_plus_t, is_nilpotent, jacobian_matrix, structured_char_recursion, NilpotencyMethod,
    PolyMatrix, PolynomialMap,
};
use nj_core::polyring::{leading_term_lex, rat, LexTerm, Monomial, Polynomial, Rational};
use num_traits::Zero;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<(), TestCaseError>;

/// Runs `test` on `cases` inputs drawn deterministically from `strategy`.
pub fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Outcome,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

// ---------------------------------------------------------------------------
// strategies

fn coefficient() -> impl Strategy<Value = Rational> {
    let numer = prop_oneof![3 => -9i64..=9, 1 => any::<i64>()];
    (numer, prop_oneof![3 => Just(1i64), 1 => 1i64..=12])
        .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn exponents(n: usize, max_degree: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=max_degree, n).prop_map(move |mut e| {
        while e.iter().sum::<u32>() > max_degree {
            let i = e.iter().position(|&x| x > 0).expect("positive sum");
            e[i] -= 1;
        }
        e
    })
}

pub fn poly(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((exponents(n, max_degree), coefficient()), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

pub fn polys(count: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = (usize, Vec<Polynomial>)> {
    (1usize..=4).prop_flat_map(move |n| {
        (Just(n), proptest::collection::vec(poly(n, max_degree, max_terms), count))
    })
}

pub fn map(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = PolynomialMap> {
    proptest::collection::vec(poly(n, max_degree, max_terms), n)
        .prop_map(|c| PolynomialMap::new(c).expect("uniform dimension"))
}

// ---------------------------------------------------------------------------
// polyring properties

pub fn ring_axioms((_, p): (usize, Vec<Polynomial>)) -> Outcome {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert!((a + &(-a)).is_zero());
    prop_assert_eq!(&(a - b), &(a + &(-b)));
    prop_assert_eq!(&(a * &Polynomial::one(a.nvars())), a);
    Ok(())
}

pub fn leibniz(((_, p), var): ((usize, Vec<Polynomial>), usize)) -> Outcome {
    let (a, b) = (&p[0], &p[1]);
    let i = var % a.nvars();
    let d = |q: &Polynomial| q.derive(i).expect("variable in range");
    prop_assert_eq!(d(&(a * b)), &(a * &d(b)) + &(b * &d(a)));
    Ok(())
}

pub fn schwarz(((_, p), i, j): ((usize, Vec<Polynomial>), usize, usize)) -> Outcome {
    let a = &p[0];
    let (i, j) = (i % a.nvars(), j % a.nvars());
    let ij = a.derive(i).and_then(|q| q.derive(j)).expect("in range");
    let ji = a.derive(j).and_then(|q| q.derive(i)).expect("in range");
    prop_assert_eq!(ij, ji);
    Ok(())
}

pub fn chain_rule_strategy() -> impl Strategy<Value = (Polynomial, Vec<Polynomial>, usize)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(n, m)| {
        (poly(n, 3, 4), proptest::collection::vec(poly(m, 2, 3), n), 0..m)
    })
}

/// `∂_i p(q) = Σ_j (∂_j p)(q) ∂_i q_j`.
pub fn chain_rule((p, q, i): (Polynomial, Vec<Polynomial>, usize)) -> Outcome {
    let lhs = p.eval_polys(&q).and_then(|c| c.derive(i)).expect("dimensions");
    let mut rhs = Polynomial::zero(q[0].nvars());
    for (j, qj) in q.iter().enumerate() {
        let outer = p.derive(j).and_then(|d| d.eval_polys(&q)).expect("dimensions");
        rhs = &rhs + &(&outer * &qj.derive(i).expect("in range"));
    }
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn substitution_strategy() -> impl Strategy<Value = (Vec<Polynomial>, Vec<(usize, Polynomial)>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            proptest::collection::vec(poly(n, 3, 4), 2),
            proptest::collection::vec((0..n, poly(n, 2, 3)), 1..=n),
        )
    })
}

pub fn substitution_homomorphism((p, mut assign): (Vec<Polynomial>, Vec<(usize, Polynomial)>)) -> Outcome {
    assign.sort_by_key(|(v, _)| *v);
    assign.dedup_by_key(|(v, _)| *v);
    let s = |q: &Polynomial| q.substitute(&assign).expect("valid assignment");
    let (a, b) = (&p[0], &p[1]);
    prop_assert_eq!(s(&(a * b)), &s(a) * &s(b));
    prop_assert_eq!(s(&(a + b)), &s(a) + &s(b));
    Ok(())
}

pub fn roundtrip((_, p): (usize, Vec<Polynomial>)) -> Outcome {
    let printed = p[0].to_string();
    let parsed = Polynomial::parse(&printed, p[0].nvars()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&parsed, &p[0]);
    prop_assert_eq!(parsed.to_string(), printed);
    Ok(())
}

#[derive(Debug, Clone)]
pub struct LexCase {
    pub top_u: (u32, u32),
    pub top_v: (u32, u32),
    pub u: Polynomial,
    pub v: Polynomial,
}

fn nonzero_small() -> impl Strategy<Value = i64> {
    prop_oneof![-7i64..=-1, 1i64..=7]
}

fn dominated(top: (u32, u32), lead: i64, lower: Vec<((u32, u32), i64)>) -> Polynomial {
    let mut terms = vec![(Monomial::from_exponents(&[top.0, top.1]), rat(lead))];
    for ((i, j), c) in lower {
        if LexTerm::new(i, j) < LexTerm::new(top.0, top.1) {
            terms.push((Monomial::from_exponents(&[i, j]), rat(c)));
        }
    }
    Polynomial::from_terms(2, terms)
}

pub fn lex_strategy() -> impl Strategy<Value = LexCase> {
    let lower = || proptest::collection::vec(((0u32..=6, 0u32..=5), nonzero_small()), 0..=4);
    ((1u32..=5, 1u32..=5), (0u32..=5, 1u32..=5), nonzero_small(), nonzero_small(), lower(), lower())
        .prop_filter("i1 j2 - i2 j1 != 0", |((i1, j1), (i2, j2), ..)| i1 * j2 != i2 * j1)
        .prop_map(|(tu, tv, lu, lv, xu, xv)| LexCase { top_u: tu, top_v: tv, u: dominated(tu, lu, xu), v: dominated(tv, lv, xv) })
}

/// The leading term of `u_x v_y - u_y v_x` is `x^{i1+i2-1} y^{j1+j2-1}` with
/// coefficient `lc(u) lc(v) (i1 j2 - i2 j1)`.
pub fn lex_law(case: LexCase) -> Outcome {
    let d = |p: &Polynomial, v| p.derive(v).expect("bivariate");
    let jac = &(&d(&case.u, 0) * &d(&case.v, 1)) - &(&d(&case.u, 1) * &d(&case.v, 0));
    let ((i1, j1), (i2, j2)) = (case.top_u, case.top_v);
    let (term, coeff) = leading_term_lex(&jac).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(term, LexTerm::new(i1 + i2 - 1, j1 + j2 - 1));
    let lc = |p: &Polynomial, t: (u32, u32)| p.coefficient(&Monomial::from_exponents(&[t.0, t.1]));
    let det = i64::from(i1 * j2) - i64::from(i2 * j1);
    prop_assert_eq!(coeff, lc(&case.u, case.top_u) * lc(&case.v, case.top_v) * rat(det));
    Ok(())
}

/// The named polyring properties with their runners.
pub fn polyring_suite(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        ("ring axioms", run(cases, polys(3, 4, 5), ring_axioms)),
        ("leibniz rule", run(cases, (polys(2, 4, 5), 0usize..4), leibniz)),
        ("schwarz symmetry", run(cases, (polys(1, 4, 6), 0usize..4, 0usize..4), schwarz)),
        ("chain rule", run(cases, chain_rule_strategy(), chain_rule)),
        ("substitution homomorphism", run(cases, substitution_strategy(), substitution_homomorphism)),
        ("leading-term law", run(cases, lex_strategy(), lex_law)),
        ("parse/print round trip", run(cases, polys(1, 4, 6), roundtrip)),
    ]
}

// ---------------------------------------------------------------------------
// structured corpora

fn valid<R: Rng>(rng: &mut R, draw: impl Fn(&mut R) -> FamilyParams) -> FamilyParams {
    loop {
        let params = draw(rng);
        if validate_params(&params).is_ok() {
            return params;
        }
    }
}

/// A validated parameter set; main-case towers have degree product at most 8.
pub fn corpus_params<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> FamilyParams {
    match rng.gen_range(0..5) {
        0..=2 => FamilyParams::Main(random_main_bounded(rng, n, max_degree, 8)),
        3 => valid(rng, |r| FamilyParams::Cor1(random_cor1(r, n, max_degree))),
        _ => valid(rng, |r| FamilyParams::Cor2(random_cor2(r, n, max_degree))),
    }
}

/// `count` family members cycling through `n = 3, 4, 5, 6`.
pub fn family_corpus(seed: u64, count: usize) -> Vec<(FamilyParams, PolynomialMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let params = corpus_params(&mut rng, 3 + k % 4, 2 + k % 2);
            let h = build(&params).expect("validated params build");
            (params, h)
        })
        .collect()
}

/// Adds one random term to a random component, keeping the structured shape.
pub fn perturb<R: Rng>(rng: &mut R, h: &PolynomialMap, max_degree: u32) -> PolynomialMap {
    let n = h.dim();
    let i = rng.gen_range(0..n);
    let allowed: Vec<usize> = if i == 0 || i == n - 1 { vec![0, 1] } else { vec![0, 1, i + 1] };
    let mut e = vec![0u32; n];
    for _ in 0..rng.gen_range(1..=max_degree) {
        e[*allowed.choose(rng).expect("nonempty")] += 1;
    }
    let c = rat(*[-2, -1, 1, 2].choose(rng).expect("nonempty"));
    let mut comps = h.components().to_vec();
    comps[i] = &comps[i] + &Polynomial::term(Monomial::from_exponents(&e), c);
    PolynomialMap::new(comps).expect("same dimension")
}

/// 100 family members (n <= 5, degree <= 4) and a perturbation of each.
pub fn method_corpus(seed: u64) -> Vec<PolynomialMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps = Vec::new();
    while maps.len() < 100 {
        let n = 3 + maps.len() % 3;
        let params = corpus_params(&mut rng, n, 2 + maps.len() % 3);
        let h = build(&params).expect("validated params build");
        if h.max_degree() <= 4 {
            maps.push(h);
        }
    }
    let perturbed: Vec<PolynomialMap> = maps.iter().map(|h| perturb(&mut rng, h, 3)).collect();
    maps.extend(perturbed);
    maps
}

/// Determinant by fraction-carrying Gaussian elimination.
pub fn det_numeric(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = rat(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return rat(0);
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// `det(I + T·J)` at a few rational points `(x, T)`, against the polynomial `d`.
pub fn agrees_at_points(j: &PolyMatrix, d: &Polynomial) -> bool {
    let nvars = j.nvars();
    (0..3i64).all(|k| {
        let point: Vec<Rational> = (0..=nvars as i64).map(|i| Rational::new(BigInt::from(2 * i - k + 1), BigInt::from(k + 2))).collect();
        let x = &point[..nvars];
        let t = &point[nvars];
        let m = (0..j.size())
            .map(|a| {
                (0..j.size())
                    .map(|b| {
                        let v = t * j.get(a, b).eval(x);
                        if a == b { v + rat(1) } else { v }
                    })
                    .collect()
            })
            .collect();
        det_numeric(m) == d.eval(&point)
    })
}

pub fn verdicts(h: &PolynomialMap) -> [bool; 3] {
    NilpotencyMethod::ALL.map(|m| is_nilpotent(h, m).expect("structured"))
}

/// The recursion equals the cofactor determinant and a numeric elimination.
pub fn recursion_matches(h: &PolynomialMap) -> bool {
    let recursion = structured_char_recursion(h).expect("structured");
    let j = jacobian_matrix(h);
    recursion == det_identity_plus_t(&j) && agrees_at_points(&j, &recursion)
}

pub fn keller(h: &PolynomialMap) -> bool {
    jacobian_matrix(&h.plus_identity()).determinant().is_one()
}
