use crate::jacobian::PolynomialMap;
use crate::polyring::{Polynomial, UniPoly};

use super::error::FamilyError;
use super::params::{Cor1Params, Cor2Params, FamilyParams, FreeComponent, MainParams};
use super::validate::{combine_powers, validate_cor1, validate_cor2, validate_main, DerivedConstants};

pub fn build(params: &FamilyParams) -> Result<PolynomialMap, FamilyError> {
    match params {
        FamilyParams::Main(m) => build_main(m),
        FamilyParams::Cor1(c) => build_cor1(c),
        FamilyParams::Cor2(c) => build_cor2(c),
    }
}

pub fn build_main(params: &MainParams) -> Result<PolynomialMap, FamilyError> {
    let derived = validate_main(params)?;
    Ok(build_main_with(params, &derived))
}

/// `u = p(y + a)` in `n` variables together with its powers `u^0, ..., u^{max}`.
pub(crate) fn u_powers(p: &UniPoly, a: &UniPoly, n: usize, max: usize) -> Vec<Polynomial> {
    let shift = &Polynomial::var(n, 1) + &a.to_polynomial(n, 0);
    let u = p.compose_poly(&shift);
    let mut powers = vec![Polynomial::one(n), u];
    while powers.len() <= max {
        let next = &powers[powers.len() - 1] * &powers[1];
        powers.push(next);
    }
    powers
}

/// `P(x_{i+1} + b(x)/L)` for level `i` (one-based) in `n` variables.
pub(crate) fn shifted_nice(level: &super::params::MainLevel, n: usize) -> Polynomial {
    let shift = level.b.scale(&level.p.scaled_leading().recip()).to_polynomial(n, 0);
    level.p.poly().compose_poly(&(&Polynomial::var(n, level.i) + &shift))
}

pub(crate) fn build_main_with(params: &MainParams, derived: &DerivedConstants) -> PolynomialMap {
    let (n, r) = (params.n, params.r);
    let powers = u_powers(&params.p, &params.a, n, r - 1);
    let mut components = vec![powers[1].clone()];
    for level in &params.levels {
        let tower = combine_powers(&derived.c[level.i], &powers);
        components.push(&tower + &shifted_nice(level, n));
    }
    let terminal = combine_powers(&derived.c[r], &powers);
    components.push(&terminal + &Polynomial::constant(n, params.b_r.clone()));
    components.extend((r + 1..=n).map(|i| free_or_zero(&params.free, i, n)));
    PolynomialMap::new(components).expect("components share the ambient ring")
}

pub fn build_cor1(params: &Cor1Params) -> Result<PolynomialMap, FamilyError> {
    validate_cor1(params)?;
    let n = params.n;
    let w = &Polynomial::var(n, 0).scale(&params.lambda1) + &Polynomial::var(n, 1).scale(&params.lambda2);
    let fw = params.f.compose_poly(&w);
    let mut components = vec![
        &fw.scale(&params.lambda2) + &Polynomial::constant(n, params.c1.clone()),
        &fw.scale(&-params.lambda1.clone()) + &Polynomial::constant(n, params.c2.clone()),
    ];
    components.extend((3..=n).map(|i| free_or_zero(&params.free, i, n)));
    Ok(PolynomialMap::new(components).expect("components share the ambient ring"))
}

pub fn build_cor2(params: &Cor2Params) -> Result<PolynomialMap, FamilyError> {
    validate_cor2(params)?;
    let n = params.n;
    let mut components = vec![Polynomial::constant(n, params.u.clone())];
    components.extend((2..=n).map(|i| free_or_zero(&params.components, i, n)));
    Ok(PolynomialMap::new(components).expect("components share the ambient ring"))
}

fn free_or_zero(list: &[FreeComponent], i: usize, n: usize) -> Polynomial {
    list.iter().find(|f| f.i == i).map_or_else(|| Polynomial::zero(n), |f| f.u.clone())
}
