use num_traits::Zero;

use crate::jacobian::{linear_dependence_rank, validate_structured_shape, PolynomialMap};
use crate::polyring::{rat, Polynomial, Rational, UniPoly};

use super::build::{build, u_powers};
use super::error::FamilyError;
use super::nice::NicePoly;
use super::params::{Cor1Params, Cor2Params, FamilyParams, FreeComponent, MainLevel, MainParams};
use super::validate::{closed_form_c, combine_powers};

/// Reads family parameters off a structured map and confirms them by an exact
/// rebuild. The case follows the shape: `u2` free of `x3` gives cor1, constant
/// `u` direction (`u_y = 0`) gives cor2, otherwise the main tower.
pub fn recover_params(h: &PolynomialMap) -> Result<FamilyParams, FamilyError> {
    let shape = validate_structured_shape(h)?;
    let params = if shape.u2_x3_zero {
        FamilyParams::Cor1(recover_cor1(h)?)
    } else if shape.u_y_zero {
        FamilyParams::Cor2(Cor2Params {
            n: h.dim(),
            r: shape.r,
            u: h.component(0).constant_term(),
            components: free_list(h, 2),
        })
    } else {
        FamilyParams::Main(recover_main(h, shape.r)?)
    };
    let rebuilt = build(&params).map_err(|e| not_in_family(0, format!("recovered parameters are invalid: {e}")))?;
    if let Some(i) = (0..h.dim()).find(|&i| rebuilt.component(i) != h.component(i)) {
        return Err(not_in_family(
            i + 1,
            format!("rebuild gives {} instead of {}", rebuilt.component(i), h.component(i)),
        ));
    }
    Ok(params)
}

fn not_in_family(component: usize, reason: String) -> FamilyError {
    FamilyError::NotInFamily { component, reason }
}

fn free_list(h: &PolynomialMap, first: usize) -> Vec<FreeComponent> {
    (first..=h.dim())
        .filter(|&i| !h.component(i - 1).is_zero())
        .map(|i| FreeComponent { i, u: h.component(i - 1).clone() })
        .collect()
}

fn recover_cor1(h: &PolynomialMap) -> Result<Cor1Params, FamilyError> {
    let n = h.dim();
    let (u, u2) = (h.component(0), h.component(1));
    let (c1, c2) = (u.constant_term(), u2.constant_term());
    let shifted_u = u - &Polynomial::constant(n, c1.clone());
    let shifted_u2 = u2 - &Polynomial::constant(n, c2.clone());
    let kernel = linear_dependence_rank(&[shifted_u.clone(), shifted_u2.clone()]).kernel;
    let (lambda1, lambda2) = match kernel.len() {
        0 => return Err(not_in_family(2, "u and u2 are affinely independent".into())),
        1 => (kernel[0][0].clone(), kernel[0][1].clone()),
        _ => (Rational::zero(), rat(1)),
    };
    // f(T) from u(0, T/λ2) = λ2 f(T) + c1, or from u2(T/λ1, 0) = -λ1 f(T) + c2
    let f = if !lambda2.is_zero() {
        let at = [Polynomial::zero(1), Polynomial::var(1, 0).scale(&lambda2.recip())];
        univariate_from(&shifted_u, &at)?.scale(&lambda2.recip())
    } else {
        let at = [Polynomial::var(1, 0).scale(&lambda1.recip()), Polynomial::zero(1)];
        univariate_from(&shifted_u2, &at)?.scale(&-lambda1.recip())
    };
    Ok(Cor1Params { n, lambda1, lambda2, c1, c2, f, free: free_list(h, 3) })
}

/// Substitutes univariate values for `x, y` in a polynomial of `k[x, y]`.
fn univariate_from(p: &Polynomial, at: &[Polynomial; 2]) -> Result<UniPoly, FamilyError> {
    let restricted = p
        .restrict_vars(2)
        .map_err(|_| not_in_family(1, format!("{p} is not in k[x, y]")))?;
    let value = restricted.eval_polys(at).expect("two values");
    Ok(UniPoly::from_polynomial(&value, 0).expect("univariate"))
}

fn recover_main(h: &PolynomialMap, r: usize) -> Result<MainParams, FamilyError> {
    let n = h.dim();
    let u = h.component(0);
    let big_n = u.degree_in(1).finite().expect("u involves y");
    let top = u.coeff_in_var(1, big_n).expect("y in range");
    if !top.is_constant() {
        return Err(not_in_family(1, format!("coefficient {top} of y^{big_n} in u is not constant")));
    }
    let p_n = top.constant_term();
    let next = u.coeff_in_var(1, big_n - 1).expect("y in range");
    let a_raw = UniPoly::from_polynomial(&next, 0)
        .ok_or_else(|| not_in_family(1, format!("coefficient {next} of y^{} in u is not in k[x]", big_n - 1)))?;
    let a = a_raw
        .sub(&UniPoly::constant(a_raw.coeff(0)))
        .scale(&(p_n * rat(big_n as i64)).recip());
    let p = {
        let at = [Polynomial::zero(1), Polynomial::var(1, 0)];
        univariate_from(u, &at)?
    };
    let powers = u_powers(&p, &a, n, r - 1);
    let mut b = vec![UniPoly::zero(); r + 1];
    let mut big_l = vec![Rational::zero(); r + 1];
    b[1] = a.clone();
    big_l[1] = rat(1);
    let mut levels = Vec::new();
    for i in 2..r {
        let c = closed_form_c(&b, &big_l, i);
        let rest = h.component(i - 1) - &combine_powers(&c, &powers);
        if let Some(v) = rest.support().into_iter().find(|&v| v != 0 && v != i) {
            return Err(not_in_family(
                i,
                format!("u_{i} minus its u-expansion still depends on x{}", v + 1),
            ));
        }
        let d = rest.degree_in(i).finite().expect("chain variable present");
        let lead = rest.coeff_in_var(i, d).expect("in range");
        if !lead.is_constant() {
            return Err(not_in_family(i, format!("leading x{} coefficient {lead} is not constant", i + 1)));
        }
        let big_li = lead.constant_term() * rat(d as i64);
        let bi = UniPoly::from_polynomial(&rest.coeff_in_var(i, d - 1).expect("in range"), 0)
            .expect("support checked");
        let unshift = &Polynomial::var(n, i) - &bi.scale(&big_li.recip()).to_polynomial(n, 0);
        let plain = rest.substitute(&[(i, unshift)]).expect("in range");
        let pi = UniPoly::from_polynomial(&plain, i)
            .ok_or_else(|| not_in_family(i, format!("P_{i} part {rest} is not a shifted univariate polynomial")))?;
        let pi = NicePoly::new(pi).map_err(|e| not_in_family(i, format!("P_{i} is not nice: {e}")))?;
        b[i] = bi.clone();
        big_l[i] = big_li;
        levels.push(MainLevel { i, p: pi, b: bi, c: None });
    }
    let c_r = closed_form_c(&b, &big_l, r);
    let rest = h.component(r - 1) - &combine_powers(&c_r, &powers);
    if !rest.is_constant() {
        return Err(not_in_family(r, format!("u_{r} minus its u-expansion is {rest}, not a constant")));
    }
    Ok(MainParams { n, p, a, r, levels, b_r: rest.constant_term(), free: free_list(h, r + 1) })
}
