use num_traits::Zero;

use crate::jacobian::PolynomialMap;
use crate::polyring::{Monomial, Polynomial, Rational};

use super::error::InverterError;
use super::factor::invert_matrix;

/// `(deg F)^{n-1}`, the classical degree bound for the inverse of a polynomial automorphism.
pub fn default_degree_bound(f: &PolynomialMap) -> u32 {
    let d = f.max_degree().max(1);
    d.saturating_pow(f.dim().saturating_sub(1) as u32).max(1)
}

/// Inverts `F` degree by degree: writing `F = c + F0` with `F0(0) = 0` and linear
/// part `A`, the homogeneous corrections are `G_{m+1} = -A⁻¹ [F0(G_{≤m})]_{m+1}`.
/// Whenever a correction vanishes the exact identity `F0 ∘ G = X` is tested; the
/// result is `G(X - c)` once it holds, and `G ∘ F = X` is confirmed exactly.
pub fn formal_inverse(f: &PolynomialMap, degree_bound: Option<u32>) -> Result<PolynomialMap, InverterError> {
    let n = f.dim();
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(f));
    let c: Vec<Rational> = f.components().iter().map(Polynomial::constant_term).collect();
    let f0 = PolynomialMap::new(
        f.components().iter().zip(&c).map(|(p, v)| p - &Polynomial::constant(n, v.clone())).collect(),
    )?;
    let linear: Vec<Vec<Rational>> = f0
        .components()
        .iter()
        .map(|p| (0..n).map(|j| p.coefficient(&Monomial::var(n, j))).collect())
        .collect();
    let a_inv = invert_matrix(&linear)?;
    let apply = |m: &[Vec<Rational>], v: &[Polynomial]| -> Vec<Polynomial> {
        m.iter()
            .map(|row| {
                row.iter().zip(v).filter(|(a, _)| !a.is_zero()).fold(Polynomial::zero(n), |acc, (a, p)| &acc + &p.scale(a))
            })
            .collect()
    };
    let identity: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut g = apply(&a_inv, &identity);
    let points: Vec<Vec<Rational>> = (0..2)
        .map(|k| (0..n).map(|i| Rational::from_integer(((3 + 2 * k) * (i + 1) + k + 1).into())).collect())
        .collect();
    let exact = |g: &[Polynomial]| -> bool {
        let at_points = points.iter().all(|pt| {
            let image: Vec<Rational> = g.iter().map(|p| p.eval(pt)).collect();
            f0.components().iter().zip(pt).all(|(p, x)| &p.eval(&image) == x)
        });
        at_points
            && f0.components().iter().zip(&identity).all(|(p, x)| &p.eval_polys(g).expect("dimension") == x)
    };
    let mut closed = exact(&g);
    let mut degree = 1;
    while !closed && degree < bound {
        let next = degree + 1;
        let part: Vec<Polynomial> = f0
            .components()
            .iter()
            .map(|p| p.eval_polys_truncated(&g, next).expect("dimension").homogeneous_part(next))
            .collect();
        let correction = apply(&a_inv, &part);
        if correction.iter().all(Polynomial::is_zero) {
            closed = exact(&g);
        } else {
            for (gi, ci) in g.iter_mut().zip(&correction) {
                *gi = &*gi - ci;
            }
        }
        degree = next;
    }
    if !closed && !exact(&g) {
        return Err(InverterError::NoClosure { bound });
    }
    let g = PolynomialMap::new(g)?;
    let inverse = if c.iter().all(Zero::is_zero) {
        g
    } else {
        let shift: Vec<Polynomial> =
            identity.iter().zip(&c).map(|(x, v)| x - &Polynomial::constant(n, v.clone())).collect();
        g.compose(&PolynomialMap::new(shift)?)?
    };
    // F ∘ G = X already holds by the closure test
    if !inverse.compose(f)?.is_identity() {
        return Err(InverterError::Internal("formal inverse fails G ∘ F = X".into()));
    }
    Ok(inverse)
}

/// `F ∘ G = X` and `G ∘ F = X`, exactly.
pub fn verify_inverse(f: &PolynomialMap, g: &PolynomialMap) -> bool {
    f.dim() == g.dim()
        && f.compose(g).is_ok_and(|m| m.is_identity())
        && g.compose(f).is_ok_and(|m| m.is_identity())
}
