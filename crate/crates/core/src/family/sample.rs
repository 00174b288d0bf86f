use rand::seq::SliceRandom;
use rand::Rng;

use crate::polyring::{rat, Monomial, Polynomial, Rational, UniPoly};

use super::error::FamilyError;
use super::nice::NicePoly;
use super::params::{Cor1Params, Cor2Params, FamilyParams, FreeComponent, MainLevel, MainParams};
use super::validate::{validate_main, validate_params};

const COEFF: i64 = 3;
const RETRIES: usize = 100;

fn coeff<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-COEFF..=COEFF))
}

fn nonzero<R: Rng>(rng: &mut R) -> Rational {
    let v = rng.gen_range(1..=COEFF);
    rat(if rng.gen_bool(0.5) { v } else { -v })
}

/// Univariate polynomial of exact degree `deg` (the zero polynomial allowed only for degree 0).
fn uni<R: Rng>(rng: &mut R, deg: usize) -> UniPoly {
    let mut coeffs: Vec<Rational> = (0..deg).map(|_| coeff(rng)).collect();
    coeffs.push(if deg == 0 { coeff(rng) } else { nonzero(rng) });
    UniPoly::from_coeffs(coeffs)
}

fn nice<R: Rng>(rng: &mut R, d: usize) -> NicePoly {
    let mut coeffs: Vec<Rational> = (0..d).map(|_| coeff(rng)).collect();
    coeffs[d - 1] = rat(0);
    coeffs.push(nonzero(rng));
    NicePoly::from_coeffs(coeffs).expect("nice by construction")
}

/// Up to three random terms of total degree `<= max_degree` in the given variables.
fn sparse<R: Rng>(rng: &mut R, n: usize, vars: &[usize], max_degree: u32) -> Polynomial {
    let count = rng.gen_range(0..=3);
    let mut total = Polynomial::zero(n);
    for _ in 0..count {
        let mut exponents = vec![0u32; n];
        let budget = rng.gen_range(0..=max_degree);
        for _ in 0..budget {
            exponents[*vars.choose(rng).expect("nonempty")] += 1;
        }
        total = &total + &Polynomial::term(Monomial::from_exponents(&exponents), nonzero(rng));
    }
    total
}

fn free_vars(n: usize, i: usize) -> Vec<usize> {
    if i < n {
        vec![0, 1, i]
    } else {
        vec![0, 1]
    }
}

fn pick<R: Rng>(rng: &mut R, options: &[usize]) -> usize {
    *options.choose(rng).expect("option list nonempty")
}

/// Main-case parameters whose map has total degree at most `max_degree`
/// (with `max_degree >= 1` bounding every univariate parameter as well).
pub fn random_main<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> MainParams {
    let cap = max_degree.max(1);
    let r = rng.gen_range(3..=n);
    let d: Vec<usize> = (0..r).map(|i| if i < 2 { 2 } else { rng.gen_range(1..=cap) }).collect();
    // b_j is bounded by m - j for every later level m whose c_{m,·} must be constant
    let constrained: Vec<usize> = (2..r).filter(|&m| d[m] >= 2).chain(std::iter::once(r)).collect();
    let b_cap = |j: usize| constrained.iter().filter(|&&m| m > j).map(|&m| m - j).min().expect("r > j");
    let e = rng.gen_range(1..=cap);
    let alphas: Vec<usize> = (0..=b_cap(1)).filter(|&al| al == 0 || e * al * al <= cap).collect();
    let alpha = pick(rng, &alphas);
    let g = e * alpha.max(1);
    let p = uni(rng, e);
    let a = uni(rng, alpha);
    let levels = (2..r)
        .map(|i| {
            let betas: Vec<usize> =
                (0..=b_cap(i)).filter(|&be| d[i] * be.max(1) <= cap && be * g <= cap).collect();
            let beta = pick(rng, &betas);
            MainLevel { i, p: nice(rng, d[i]), b: uni(rng, beta), c: None }
        })
        .collect();
    let free = (r + 1..=n)
        .map(|i| FreeComponent { i, u: sparse(rng, n, &free_vars(n, i), cap as u32) })
        .filter(|f| !f.u.is_zero())
        .collect();
    MainParams { n, p, a, r, levels, b_r: coeff(rng), free }
}

/// A valid [`random_main`] draw with [`MainParams::tower_degree`] at most `max_tower`.
pub fn random_main_bounded<R: Rng>(rng: &mut R, n: usize, max_degree: usize, max_tower: u32) -> MainParams {
    loop {
        let params = random_main(rng, n, max_degree);
        if params.tower_degree() <= max_tower.max(1) && validate_main(&params).is_ok() {
            return params;
        }
    }
}

pub fn random_cor1<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Cor1Params {
    let cap = max_degree.max(1);
    let deg = rng.gen_range(0..=cap);
    let f = uni(rng, deg);
    let free = (3..=n)
        .map(|i| FreeComponent { i, u: sparse(rng, n, &free_vars(n, i), cap as u32) })
        .filter(|f| !f.u.is_zero())
        .collect();
    Cor1Params { n, lambda1: coeff(rng), lambda2: coeff(rng), c1: coeff(rng), c2: coeff(rng), f, free }
}

pub fn random_cor2<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Cor2Params {
    let cap = max_degree.max(1) as u32;
    let r = rng.gen_range(3..=n);
    let mut components = Vec::new();
    for i in 2..=n {
        let u = if i < r {
            let chain = Polynomial::term(
                Monomial::var(n, i).with_exponent(i, rng.gen_range(1..=cap)),
                nonzero(rng),
            );
            &sparse(rng, n, &[0, i], cap) + &chain
        } else if i == r {
            sparse(rng, n, &[0], cap)
        } else {
            sparse(rng, n, &free_vars(n, i), cap)
        };
        if !u.is_zero() {
            components.push(FreeComponent { i, u });
        }
    }
    Cor2Params { n, r, u: coeff(rng), components }
}

/// A validated parameter set: main case half the time, each corollary case a quarter.
pub fn random_params<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Result<FamilyParams, FamilyError> {
    if n < 3 {
        return Err(FamilyError::TooSmall { n });
    }
    let mut last = None;
    for _ in 0..RETRIES {
        let params = match rng.gen_range(0..4) {
            0 | 1 => FamilyParams::Main(random_main(rng, n, max_degree)),
            2 => FamilyParams::Cor1(random_cor1(rng, n, max_degree)),
            _ => FamilyParams::Cor2(random_cor2(rng, n, max_degree)),
        };
        match validate_params(&params) {
            Ok(_) => return Ok(params),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
