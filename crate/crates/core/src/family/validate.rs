use num_traits::{One, Zero};

use crate::polyring::{rat, rat_frac, Polynomial, Rational, UniPoly};

use super::error::FamilyError;
use super::params::{Cor1Params, Cor2Params, FamilyParams, FreeComponent, MainParams};

/// Bookkeeping constants of a validated main-case parameter set. Vectors are
/// indexed by the one-based level `i` (slot 0 unused) up to `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedConstants {
    pub r: usize,
    /// Largest `s >= 2` with `d_{s-1} >= 2`.
    pub s: usize,
    /// Number of levels `i < r` with `d_i >= 2`, counting `d_1 = 2`.
    pub n_h: usize,
    /// `d_1 = 2`, `d_i = deg P_i`; `d_r = 0`.
    pub d: Vec<u32>,
    /// `l_1 = 1/2`, `l_i` the leading coefficient of `P_i`, `l_r = 0`.
    pub l: Vec<Rational>,
    /// `L_i = d_i l_i`, so `L_1 = 1`; `L_r = 0`.
    pub big_l: Vec<Rational>,
    /// `b_1 = a`, `b_i` for the levels, `b_r` constant.
    pub b: Vec<UniPoly>,
    /// `c[i][k-1] = c_{i,k}` for `2 <= i <= r`, `1 <= k < i`.
    pub c: Vec<Vec<UniPoly>>,
}

impl DerivedConstants {
    /// `γ_{k,t} = (L_{s-1+t-1} ⋯ L_{s-1+t-k})^{-1}`
    pub fn gamma(&self, k: usize, t: usize) -> Rational {
        assert!(1 <= k && k <= t, "gamma needs 1 <= k <= t");
        let mut product = Rational::one();
        for m in (t - k)..t {
            product *= &self.big_l[self.s - 1 + m];
        }
        product.recip()
    }

    /// `γ_{1,t} = L_{s+t-2}^{-1}` and `γ_{k,t-1} = L_{s+t-2} γ_{k+1,t}` over `1 <= k < t <= r-s+1`.
    pub fn gamma_identities_hold(&self) -> bool {
        let top = self.r + 1 - self.s;
        (1..=top).all(|t| {
            let lt = &self.big_l[self.s + t - 2];
            self.gamma(1, t) == lt.recip() && (1..t).all(|k| self.gamma(k, t - 1) == lt * self.gamma(k + 1, t))
        })
    }
}

/// Closed form `c_{i,k} = (-1)^k/k! · b_{i-k}^{(k)} / (L_{i-1} ⋯ L_{i-k})`.
pub(crate) fn closed_form_c(b: &[UniPoly], big_l: &[Rational], i: usize) -> Vec<UniPoly> {
    let mut out = Vec::with_capacity(i - 1);
    let mut denominator = Rational::one();
    let mut factorial = Rational::one();
    for k in 1..i {
        denominator *= &big_l[i - k];
        factorial *= rat(k as i64);
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        out.push(b[i - k].nth_derivative(k).scale(&(sign / (&factorial * &denominator))));
    }
    out
}

pub fn validate_params(params: &FamilyParams) -> Result<Option<DerivedConstants>, FamilyError> {
    match params {
        FamilyParams::Main(m) => validate_main(m).map(Some),
        FamilyParams::Cor1(c) => validate_cor1(c).map(|_| None),
        FamilyParams::Cor2(c) => validate_cor2(c).map(|_| None),
    }
}

pub fn validate_main(params: &MainParams) -> Result<DerivedConstants, FamilyError> {
    let (n, r) = (params.n, params.r);
    if n < 3 {
        return Err(FamilyError::TooSmall { n });
    }
    if !(3..=n).contains(&r) {
        return Err(FamilyError::RangeR { r, n });
    }
    if params.p.degree().finite().unwrap_or(0) < 1 {
        return Err(FamilyError::ConstantP);
    }
    if params.levels.len() != r - 2 || params.levels.iter().enumerate().any(|(pos, l)| l.i != pos + 2) {
        let (position, found) = params
            .levels
            .iter()
            .enumerate()
            .find(|(pos, l)| l.i != pos + 2)
            .map(|(pos, l)| (pos, l.i))
            .unwrap_or((params.levels.len(), 0));
        return Err(FamilyError::LevelIndex { position, found, last: r - 1 });
    }
    let mut d = vec![0u32; r + 1];
    let mut l = vec![Rational::zero(); r + 1];
    let mut big_l = vec![Rational::zero(); r + 1];
    let mut b = vec![UniPoly::zero(); r + 1];
    let mut c = vec![Vec::new(); r + 1];
    d[1] = 2;
    l[1] = rat_frac(1, 2);
    big_l[1] = Rational::one();
    b[1] = params.a.clone();
    b[r] = UniPoly::constant(params.b_r.clone());
    for level in &params.levels {
        let i = level.i;
        d[i] = level.p.degree();
        l[i] = level.p.leading();
        big_l[i] = level.p.scaled_leading();
        b[i] = level.b.clone();
    }
    for i in 2..=r {
        c[i] = closed_form_c(&b, &big_l, i);
        let declared = if i < r { params.levels[i - 2].c.as_ref() } else { None };
        if let Some(declared) = declared {
            for j in 0..declared.len().max(c[i].len()) {
                let want = c[i].get(j).cloned().unwrap_or_else(UniPoly::zero);
                let got = declared.get(j).cloned().unwrap_or_else(UniPoly::zero);
                if want != got {
                    return Err(FamilyError::DeclaredMismatch {
                        level: i,
                        j: j + 1,
                        declared: got.to_string_in('x'),
                        derived: want.to_string_in('x'),
                    });
                }
            }
        }
    }
    // a level m with d_m >= 2 forces all c_{m,j} constant (for m = 2: a'' = 0)
    for m in 2..r {
        if d[m] < 2 {
            continue;
        }
        if m == 2 {
            let second = params.a.nth_derivative(2);
            if !second.is_zero() {
                return Err(FamilyError::SecondDerivative { d: d[2], second: second.to_string_in('x') });
            }
            continue;
        }
        for (j, cj) in c[m].iter().enumerate() {
            let derivative = cj.derivative();
            if !derivative.is_zero() {
                return Err(FamilyError::DerivativeNonzero {
                    condition: if m + 1 == r { "(c)" } else { "(b)" },
                    level: m,
                    j: j + 1,
                    d: d[m],
                    derivative: derivative.to_string_in('x'),
                });
            }
        }
    }
    for (j, cj) in c[r].iter().enumerate() {
        if !cj.is_constant() {
            return Err(FamilyError::TerminalNotConstant { r, j: j + 1, value: cj.to_string_in('x') });
        }
    }
    check_free_list(n, &params.free, r + 1, |i| free_allowed(n, i))?;
    let s = (2..=r).rev().find(|&s| d[s - 1] >= 2).expect("d_1 = 2");
    let n_h = (1..r).filter(|&i| d[i] >= 2).count();
    Ok(DerivedConstants { r, s, n_h, d, l, big_l, b, c })
}

pub fn validate_cor1(params: &Cor1Params) -> Result<(), FamilyError> {
    let n = params.n;
    if n < 3 {
        return Err(FamilyError::TooSmall { n });
    }
    check_free_list(n, &params.free, 3, |i| free_allowed(n, i))
}

pub fn validate_cor2(params: &Cor2Params) -> Result<(), FamilyError> {
    let (n, r) = (params.n, params.r);
    if n < 3 {
        return Err(FamilyError::TooSmall { n });
    }
    if !(3..=n).contains(&r) {
        return Err(FamilyError::RangeR { r, n });
    }
    check_free_list(n, &params.components, 2, |i| {
        if i < r {
            vec![0, i]
        } else if i == r {
            vec![0]
        } else {
            free_allowed(n, i)
        }
    })?;
    for i in 2..r {
        let chain = params.components.iter().find(|f| f.i == i).is_some_and(|f| f.u.involves(i));
        if !chain {
            return Err(FamilyError::Component { i, reason: format!("u_{i} must depend on x{}", i + 1) });
        }
    }
    Ok(())
}

/// Variables (zero-based) a free component `u_i` may use.
fn free_allowed(n: usize, i: usize) -> Vec<usize> {
    if i < n {
        vec![0, 1, i]
    } else {
        vec![0, 1]
    }
}

fn check_free_list<F: Fn(usize) -> Vec<usize>>(
    n: usize,
    list: &[FreeComponent],
    first: usize,
    allowed: F,
) -> Result<(), FamilyError> {
    let mut seen = vec![false; n + 1];
    for f in list {
        if !(first..=n).contains(&f.i) {
            return Err(FamilyError::FreeComponent {
                i: f.i,
                reason: format!("index must lie in [{first}, {n}]"),
            });
        }
        if std::mem::replace(&mut seen[f.i], true) {
            return Err(FamilyError::FreeComponent { i: f.i, reason: "listed twice".into() });
        }
        if f.u.nvars() != n {
            return Err(FamilyError::FreeComponent { i: f.i, reason: format!("must live in {n} variables") });
        }
        let ok = allowed(f.i);
        if let Some(v) = f.u.support().into_iter().find(|v| !ok.contains(v)) {
            return Err(FamilyError::FreeComponent {
                i: f.i,
                reason: format!("depends on forbidden variable x{}", v + 1),
            });
        }
    }
    Ok(())
}

/// `Σ_k c_k(x) u^k` in the ambient ring of `u`.
pub(crate) fn combine_powers(coeffs: &[UniPoly], powers: &[Polynomial]) -> Polynomial {
    let n = powers[0].nvars();
    let mut total = Polynomial::zero(n);
    for (k, ck) in coeffs.iter().enumerate() {
        if !ck.is_zero() {
            total = &total + &(&ck.to_polynomial(n, 0) * &powers[k + 1]);
        }
    }
    total
}
