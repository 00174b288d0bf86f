use num_traits::Zero;

use crate::jacobian::PolynomialMap;
use crate::polyring::{rat, Polynomial, Rational};

use super::build::u_powers;
use super::params::MainParams;
use super::validate::DerivedConstants;

/// Expected `u_{s-1+t}` for `1 <= t <= r-s+1`:
/// `Σ_{k=1}^{t} (-1)^k (1/k!) γ_{k,t} b_{s-1+t-k}^{(k)}(x) u^k + l_{s-1+t} x_{s+t} + b_{s-1+t}(x)`.
pub fn closed_form_component(params: &MainParams, derived: &DerivedConstants, t: usize) -> Polynomial {
    let n = params.n;
    let i = derived.s - 1 + t;
    let powers = u_powers(&params.p, &params.a, n, t);
    let mut total = derived.b[i].to_polynomial(n, 0);
    if !derived.l[i].is_zero() {
        total = &total + &Polynomial::var(n, i).scale(&derived.l[i]);
    }
    let mut factorial = Rational::from_integer(1.into());
    for k in 1..=t {
        factorial *= rat(k as i64);
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        let scale = sign * derived.gamma(k, t) / &factorial;
        let coeff = derived.b[i - k].nth_derivative(k).scale(&scale).to_polynomial(n, 0);
        total = &total + &(&coeff * &powers[k]);
    }
    total
}

/// First one-based component index where the closed form fails, if any.
pub fn closed_form_mismatch(h: &PolynomialMap, params: &MainParams, derived: &DerivedConstants) -> Option<usize> {
    (1..=derived.r + 1 - derived.s)
        .map(|t| (derived.s - 1 + t, t))
        .find(|&(i, t)| h.component(i - 1) != &closed_form_component(params, derived, t))
        .map(|(i, _)| i)
}

/// `b_{s-1}^{(r-s+2)} = ⋯ = b_{r-1}^{(2)} = b_r' = 0`
pub fn derivative_ladder_holds(derived: &DerivedConstants) -> bool {
    let r = derived.r;
    (derived.s - 1..=r).all(|j| derived.b[j].nth_derivative(r - j + 1).is_zero())
}
