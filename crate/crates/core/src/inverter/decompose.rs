use num_traits::Zero;

use crate::family::{recover_params, validate_main, Cor1Params, FamilyError, FamilyParams, MainParams};
use crate::jacobian::{nilpotency_equations, validate_structured_shape, PolynomialMap};
use crate::polyring::{rat, Polynomial, Rational, UniPoly};

use super::error::InverterError;
use super::factor::{compose_factors, Factor, FactorSequence};

/// Running factorization `current = L_k ∘ ⋯ ∘ L_1 ∘ F ∘ R_1 ∘ ⋯ ∘ R_m`.
#[derive(Debug, Clone)]
pub struct DecompositionState {
    pub original: PolynomialMap,
    pub current: PolynomialMap,
    pub left: Vec<Factor>,
    pub right: Vec<Factor>,
    pub steps: usize,
    pub verify: bool,
}

impl DecompositionState {
    pub fn new(f: &PolynomialMap, verify: bool) -> Self {
        DecompositionState {
            original: f.clone(),
            current: f.clone(),
            left: Vec::new(),
            right: Vec::new(),
            steps: 0,
            verify,
        }
    }

    fn n(&self) -> usize {
        self.current.dim()
    }

    pub fn left_multiply(&mut self, factor: Factor) -> Result<(), InverterError> {
        self.current = factor.after(&self.current);
        self.left.push(factor);
        self.step()
    }

    pub fn right_multiply(&mut self, factor: Factor) -> Result<(), InverterError> {
        self.current = factor.before(&self.current);
        self.right.push(factor);
        self.step()
    }

    /// Applies `(x_i + a)` on the left unless `a = 0`.
    fn left_elementary(&mut self, i: usize, a: Polynomial) -> Result<(), InverterError> {
        if a.is_zero() {
            return Ok(());
        }
        self.left_multiply(Factor::elementary(i, a)?)
    }

    fn right_elementary(&mut self, i: usize, a: Polynomial) -> Result<(), InverterError> {
        if a.is_zero() {
            return Ok(());
        }
        self.right_multiply(Factor::elementary(i, a)?)
    }

    /// Makes component `i` the identity by subtracting `current_i - x_i`,
    /// which may only involve coordinates that are already the identity.
    fn left_peel(&mut self, i: usize) -> Result<(), InverterError> {
        let n = self.n();
        let g = self.current.component(i - 1) - &Polynomial::var(n, i - 1);
        if let Some(v) = g.support().into_iter().find(|&v| self.current.component(v) != &Polynomial::var(n, v)) {
            return Err(InverterError::Internal(format!("component {i} still depends on unreduced x{}", v + 1)));
        }
        self.left_elementary(i, -&g)
    }

    fn step(&mut self) -> Result<(), InverterError> {
        self.steps += 1;
        if self.verify && !self.invariant_holds() {
            return Err(InverterError::Internal(format!("bookkeeping invariant broken at step {}", self.steps)));
        }
        Ok(())
    }

    /// `original = L_1⁻¹ ∘ ⋯ ∘ L_k⁻¹ ∘ current ∘ R_m⁻¹ ∘ ⋯ ∘ R_1⁻¹`
    pub fn invariant_holds(&self) -> bool {
        let mut map = self.current.clone();
        for f in self.left.iter().rev() {
            map = f.inverse().expect("invertible").after(&map);
        }
        for f in self.right.iter().rev() {
            map = f.inverse().expect("invertible").before(&map);
        }
        map == self.original
    }

    /// The factor sequence for `original`, once `current` is the identity.
    pub fn finish(self) -> Result<FactorSequence, InverterError> {
        if !self.current.is_identity() {
            return Err(InverterError::Internal(format!("reduction stopped at {}", self.current)));
        }
        let n = self.n();
        let mut factors = Vec::with_capacity(self.left.len() + self.right.len());
        for f in &self.left {
            factors.push(f.inverse()?);
        }
        for f in self.right.iter().rev() {
            factors.push(f.inverse()?);
        }
        FactorSequence::new(n, factors)
    }
}

pub fn decompose(f: &PolynomialMap) -> Result<FactorSequence, InverterError> {
    decompose_with(f, false)
}

/// As [`decompose`], re-checking the bookkeeping invariant after every step.
pub fn decompose_verified(f: &PolynomialMap) -> Result<FactorSequence, InverterError> {
    decompose_with(f, true)
}

pub fn decompose_with(f: &PolynomialMap, verify: bool) -> Result<FactorSequence, InverterError> {
    let h = f.minus_identity();
    validate_structured_shape(&h)?;
    if !nilpotency_equations(&h)?.iter().all(Polynomial::is_zero) {
        return Err(InverterError::NotNilpotent);
    }
    let params = recover_params(&h).map_err(InverterError::OutsideFamily)?;
    let mut state = DecompositionState::new(f, verify);
    match &params {
        FamilyParams::Cor1(p) => reduce_cor1(&mut state, p)?,
        FamilyParams::Cor2(p) => {
            let n = p.n;
            for i in std::iter::once(1).chain((2..=p.r).rev()).chain((p.r + 1..=n).rev()) {
                state.left_peel(i)?;
            }
        }
        FamilyParams::Main(p) => reduce_main(&mut state, p)?,
    }
    let seq = state.finish()?;
    if compose_factors(&seq) != *f {
        return Err(InverterError::Internal("factors do not recompose to F".into()));
    }
    Ok(seq)
}

fn reduce_cor1(state: &mut DecompositionState, p: &Cor1Params) -> Result<(), InverterError> {
    let n = p.n;
    if !p.c1.is_zero() || !p.c2.is_zero() {
        let mut c = vec![Rational::zero(); n];
        c[0] = -p.c1.clone();
        c[1] = -p.c2.clone();
        state.left_multiply(Factor::Translation { c })?;
    }
    if !p.lambda1.is_zero() && !p.lambda2.is_zero() {
        // S = (λ1 x + λ2 y, y, x3, ...); S ∘ F ∘ S⁻¹ has first component x
        let mut m: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect()).collect();
        m[0][0] = p.lambda1.clone();
        m[0][1] = p.lambda2.clone();
        let s = Factor::linear(m)?;
        let s_inv = s.inverse()?;
        state.left_multiply(s)?;
        state.right_multiply(s_inv)?;
    }
    for i in [1, 2] {
        if state.current.component(i - 1) != &Polynomial::var(n, i - 1) {
            state.left_peel(i)?;
        }
    }
    for i in (3..=n).rev() {
        state.left_peel(i)?;
    }
    Ok(())
}

fn reduce_main(state: &mut DecompositionState, params: &MainParams) -> Result<(), InverterError> {
    let n = params.n;
    let derived = validate_main(params).map_err(InverterError::OutsideFamily)?;
    // components beyond r: x_i ↦ x_i - u_i, from x_n down
    for i in (derived.r + 1..=n).rev() {
        let g = state.current.component(i - 1) - &Polynomial::var(n, i - 1);
        state.right_elementary(i, -&g)?;
    }
    let x1 = |q: &UniPoly| q.to_polynomial(n, 0);
    let u = state.current.component(0) - &Polynomial::var(n, 0);
    let f1 = state.current.component(0).clone();
    let mut powers = vec![Polynomial::one(n), u.clone()];
    let mut r = derived.r;
    let (d, l, big_l) = (&derived.d, &derived.l, &derived.big_l);
    let mut b = derived.b.clone();
    let l_at = |i: usize, r: usize| if i == r { Rational::zero() } else { l[i].clone() };
    loop {
        let s = (2..=r).rev().find(|&s| d[s - 1] >= 2).expect("d_1 = 2");
        while powers.len() <= r + 1 {
            let next = &powers[powers.len() - 1] * &u;
            powers.push(next);
        }
        let gamma = |k: usize, t: usize| -> Rational {
            ((t - k)..t).fold(rat(1), |acc, m| acc * &big_l[s - 1 + m]).recip()
        };
        // right factors (x_i - [u_i]) for i = r, ..., s+1
        for i in (s + 1..=r).rev() {
            let mut bracket = Polynomial::zero(n);
            for k in 1..=(i + 1 - s) {
                let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
                let g = sign * gamma(k, i + 1 - s);
                let mut factorial = (1..k).fold(rat(1), |acc, m| acc * rat(m as i64));
                for m in k..=(k + r - i) {
                    factorial *= rat(m as i64);
                    let coeff = b[i - k].nth_derivative(m).scale(&(&g / &factorial));
                    if !coeff.is_zero() {
                        bracket = &bracket + &(&x1(&coeff) * &powers[m]);
                    }
                }
            }
            let mut expected = &(&Polynomial::var(n, i - 1) + &bracket) + &b[i].compose_poly(&f1);
            let li = l_at(i, r);
            if !li.is_zero() {
                expected = &expected + &Polynomial::var(n, i).scale(&li);
            }
            if state.current.component(i - 1) != &expected {
                return Err(InverterError::Internal(format!("step identity fails at component {i}")));
            }
            state.right_elementary(i, -&bracket)?;
        }
        // Taylor expansion of b_{s-1}(F1) stops at u^{r-s+1}
        let mut taylor = x1(&b[s - 1]);
        let mut factorial = rat(1);
        for k in 1..=(r + 1 - s) {
            factorial *= rat(k as i64);
            taylor = &taylor + &(&x1(&b[s - 1].nth_derivative(k).scale(&factorial.recip())) * &powers[k]);
        }
        if taylor != b[s - 1].compose_poly(&f1) {
            return Err(InverterError::Internal(format!("Taylor identity fails for b_{}", s - 1)));
        }
        let inv_l = big_l[s - 1].recip();
        state.left_elementary(s, &x1(&b[s - 1].scale(&inv_l)) - &x1(&b[s]))?;
        for i in s + 1..r {
            state.left_elementary(i, -&x1(&b[i]))?;
        }
        if r > s {
            state.left_elementary(r, -&x1(&b[r]))?;
        }
        for i in (s..r).rev() {
            state.left_elementary(i, -&Polynomial::var(n, i).scale(&l_at(i, r)))?;
        }
        let shift = x1(&b[s - 1].scale(&inv_l));
        if state.current.component(s - 1) != &(&Polynomial::var(n, s - 1) + &shift) {
            return Err(InverterError::Internal(format!("component {s} is not x{s} + b_{}(x)/L", s - 1)));
        }
        state.right_elementary(s, -&shift)?;
        if s == 2 {
            state.left_elementary(1, -&params.p.to_polynomial(n, 1))?;
            return Ok(());
        }
        let level = &params.levels[s - 3];
        state.left_elementary(s - 1, -&level.p.poly().to_polynomial(n, s - 1))?;
        r = s - 1;
        b[r] = UniPoly::zero();
    }
}

impl From<FamilyError> for InverterError {
    fn from(e: FamilyError) -> Self {
        InverterError::OutsideFamily(e)
    }
}
