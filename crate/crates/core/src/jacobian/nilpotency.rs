use std::fmt;
use std::str::FromStr;

use crate::polyring::Polynomial;

use super::map::PolynomialMap;
use super::matrix::PolyMatrix;
use super::shape::{validate_structured_shape, ShapeError};

/// Entry `(i, j)` is `∂H_i/∂x_j`.
pub fn jacobian_matrix(h: &PolynomialMap) -> PolyMatrix {
    let n = h.dim();
    PolyMatrix::from_fn(n, n, |i, j| h.component(i).derive(j).expect("index within dimension"))
}

/// Least `k <= size` with `J^k = 0`, if any.
pub fn nilpotency_index(j: &PolyMatrix) -> Option<usize> {
    let mut power = j.clone();
    for k in 1..=j.size() {
        if power.is_zero() {
            return Some(k);
        }
        if k < j.size() {
            power = power.mul(j);
        }
    }
    None
}

/// `J^n = 0` by exact symbolic matrix products.
pub fn is_nilpotent_power(j: &PolyMatrix) -> bool {
    nilpotency_index(j).is_some()
}

/// `det(I + T·J)` as a polynomial in the entries' variables plus an adjoined
/// last variable `T`.
pub fn det_identity_plus_t(j: &PolyMatrix) -> Polynomial {
    let nvars = j.nvars();
    let t = Polynomial::var(nvars + 1, nvars);
    let m = PolyMatrix::from_fn(j.size(), nvars + 1, |r, c| {
        let scaled = &j.get(r, c).extend_vars(nvars + 1) * &t;
        if r == c {
            &scaled + &Polynomial::one(nvars + 1)
        } else {
            scaled
        }
    });
    m.determinant()
}

/// Coefficients of `T^1, ..., T^n` in `det(I + T·J)`; all vanish iff `J` is nilpotent.
pub fn char_coefficients(j: &PolyMatrix) -> Vec<Polynomial> {
    let nvars = j.nvars();
    let d = det_identity_plus_t(j);
    (1..=j.size() as u32)
        .map(|k| {
            d.coeff_in_var(nvars, k)
                .and_then(|c| c.restrict_vars(nvars))
                .expect("T coefficient is free of T")
        })
        .collect()
}

/// `det(I + T·JH)` for a structured map via the column recursion
/// `d_n = a1 b2 - a2 b1 + Σ_{k=2}^{n-1} (-c2)⋯(-ck)(a1 b_{k+1} - b1 a_{k+1})`,
/// where `a`, `b` are the first two columns and `c_i = T ∂u_i/∂x_{i+1}`.
/// The result has `T` adjoined as the last variable.
pub fn structured_char_recursion(h: &PolynomialMap) -> Result<Polynomial, ShapeError> {
    validate_structured_shape(h)?;
    let n = h.dim();
    let m = n + 1;
    let t = Polynomial::var(m, n);
    let one = Polynomial::one(m);
    let lifted: Vec<Polynomial> = h.components().iter().map(|c| c.extend_vars(m)).collect();
    let d = |i: usize, var: usize| &lifted[i].derive(var).expect("in range") * &t;
    // zero-based: a[i] = δ_{i0} + T ∂_x u_i, b[i] = δ_{i1} + T ∂_y u_i
    let a: Vec<Polynomial> = (0..n).map(|i| if i == 0 { &one + &d(i, 0) } else { d(i, 0) }).collect();
    let b: Vec<Polynomial> = (0..n).map(|i| if i == 1 { &one + &d(i, 1) } else { d(i, 1) }).collect();
    let minor = |k: usize| &(&a[0] * &b[k]) - &(&b[0] * &a[k]);
    let mut total = minor(1);
    let mut chain = one.clone();
    for k in 2..n {
        // component k-1 (zero-based) is u_k, its chain variable is x_{k+1} (zero-based k)
        chain = &chain * &(-d(k - 1, k));
        total = &total + &(&chain * &minor(k));
    }
    Ok(total)
}

/// Residuals of the structured nilpotency system, in order:
/// `u_x + u2_y`, `u_x u2_y - u_y u2_x - u2_{x3} u3_y`, and for `i = 3..n`
/// `u2_{x3}⋯u_{i-1,x_i} (u_x ui_y - u_y ui_x - ui_{x_{i+1}} u_{i+1,y})` with `u_{n+1} = 0`.
pub fn nilpotency_equations(h: &PolynomialMap) -> Result<Vec<Polynomial>, ShapeError> {
    validate_structured_shape(h)?;
    let n = h.dim();
    let u = |i: usize| h.component(i - 1);
    let dx = |i: usize| u(i).derive(0).expect("x");
    let dy = |i: usize| u(i).derive(1).expect("y");
    // ∂u_i/∂x_{i+1}, zero for i = n
    let chain = |i: usize| {
        if i < n {
            u(i).derive(i).expect("chain variable")
        } else {
            Polynomial::zero(n)
        }
    };
    let next_dy = |i: usize| if i < n { dy(i + 1) } else { Polynomial::zero(n) };
    let (ux, uy) = (dx(1), dy(1));
    let mut residuals = vec![&ux + &dy(2)];
    let mut prefix = Polynomial::one(n);
    for i in 2..=n {
        if i >= 3 {
            prefix = &prefix * &chain(i - 1);
        }
        let bracket = &(&ux * &dy(i)) - &(&uy * &dx(i));
        let inner = &bracket - &(&chain(i) * &next_dy(i));
        residuals.push(&prefix * &inner);
    }
    Ok(residuals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[derive(Default)]
pub enum NilpotencyMethod {
    Power,
    #[default]
    Char,
    Equations,
}

impl NilpotencyMethod {
    pub const ALL: [NilpotencyMethod; 3] =
        [NilpotencyMethod::Power, NilpotencyMethod::Char, NilpotencyMethod::Equations];

    pub fn name(self) -> &'static str {
        match self {
            NilpotencyMethod::Power => "power",
            NilpotencyMethod::Char => "char",
            NilpotencyMethod::Equations => "equations",
        }
    }
}


impl fmt::Display for NilpotencyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NilpotencyMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "power" => Ok(NilpotencyMethod::Power),
            "char" => Ok(NilpotencyMethod::Char),
            "equations" => Ok(NilpotencyMethod::Equations),
            other => Err(format!("unknown nilpotency method {other:?}")),
        }
    }
}

/// Nilpotency verdict for `JH` using one method; only `Equations` needs the structured shape.
pub fn is_nilpotent(h: &PolynomialMap, method: NilpotencyMethod) -> Result<bool, ShapeError> {
    match method {
        NilpotencyMethod::Power => Ok(is_nilpotent_power(&jacobian_matrix(h))),
        NilpotencyMethod::Char => {
            Ok(char_coefficients(&jacobian_matrix(h)).iter().all(Polynomial::is_zero))
        }
        NilpotencyMethod::Equations => Ok(nilpotency_equations(h)?.iter().all(Polynomial::is_zero)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> PolynomialMap {
        PolynomialMap::parse(&["y - x^2", "z + 2*x*(y - x^2)", "-(y - x^2)^2"], 3).unwrap()
    }

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn example_jacobian_by_hand() {
        let j = jacobian_matrix(&example());
        let expected = [
            ["-2*x", "1", "0"],
            ["2*y - 6*x^2", "2*x", "1"],
            ["4*x*(y - x^2)", "-2*(y - x^2)", "0"],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                assert_eq!(j.get(i, k), &poly(e, 3), "entry ({i}, {k})");
            }
        }
    }

    #[test]
    fn trivial_jacobians() {
        let id = jacobian_matrix(&PolynomialMap::identity(3));
        assert_eq!(id, PolyMatrix::identity(3, 3));
        assert!(!is_nilpotent_power(&id));
        let constant = PolynomialMap::parse(&["1", "2", "-3"], 3).unwrap();
        assert!(jacobian_matrix(&constant).is_zero());
    }

    #[test]
    fn example_is_nilpotent_with_index_three() {
        let j = jacobian_matrix(&example());
        assert_eq!(nilpotency_index(&j), Some(3));
        assert!(char_coefficients(&j).iter().all(Polynomial::is_zero));
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent() {
        let j = PolyMatrix::from_rows(vec![
            vec![poly("0", 2), poly("x*y", 2), poly("y^3 + 1", 2)],
            vec![poly("0", 2), poly("0", 2), poly("x", 2)],
            vec![poly("0", 2), poly("0", 2), poly("0", 2)],
        ]);
        assert!(is_nilpotent_power(&j));
    }

    #[test]
    fn identity_char_coefficients() {
        // det(I + T I_2) = (1 + T)^2
        let c = char_coefficients(&PolyMatrix::identity(2, 2));
        assert_eq!(c, vec![poly("2", 2), poly("1", 2)]);
    }

    #[test]
    fn recursion_on_example_and_constants() {
        let d = structured_char_recursion(&example()).unwrap();
        assert!(d.is_one());
        let constant = PolynomialMap::parse(&["1", "1", "1"], 3).unwrap();
        assert!(structured_char_recursion(&constant).unwrap().is_one());
    }

    #[test]
    fn example_residuals() {
        let r = nilpotency_equations(&example()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(Polynomial::is_zero));
        assert!(nilpotency_equations(&PolynomialMap::zero(4)).unwrap().iter().all(Polynomial::is_zero));
    }

    #[test]
    fn perturbed_example_detected() {
        let h = PolynomialMap::parse(&["y - x^2", "z + 2*x*(y - x^2) + y", "-(y - x^2)^2"], 3).unwrap();
        let r = nilpotency_equations(&h).unwrap();
        assert_eq!(r[0], poly("1", 3));
        for method in NilpotencyMethod::ALL {
            assert!(!is_nilpotent(&h, method).unwrap(), "{method}");
        }
    }

    #[test]
    fn equations_need_structure() {
        let h = PolynomialMap::parse(&["z", "y", "x"], 3).unwrap();
        assert!(nilpotency_equations(&h).is_err());
        assert!(!is_nilpotent(&h, NilpotencyMethod::Char).unwrap());
    }

    #[test]
    fn residuals_are_signed_char_coefficients() {
        // coefficient of T^k equals (-1)^k times residual k for k >= 2
        let h = PolynomialMap::parse(&["x*y + y^2", "x3*x + y", "x4^2 - x*y", "x^3 + y"], 4).unwrap();
        let residuals = nilpotency_equations(&h).unwrap();
        let coeffs = char_coefficients(&jacobian_matrix(&h));
        assert_eq!(coeffs[0], residuals[0]);
        for k in 2..=4 {
            let signed = if k % 2 == 0 { residuals[k - 1].clone() } else { -&residuals[k - 1] };
            assert_eq!(coeffs[k - 1], signed, "k = {k}");
        }
    }
}
