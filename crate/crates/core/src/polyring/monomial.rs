use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector of a term `x1^e1 ... xn^en`.
///
/// Ordering is pure lex with the variable priority `x2, x1, x3, x4, ...`:
/// restricted to `k[x, y]` this is the "y-degree first, then x-degree"
/// order used for leading terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn with_exponent(&self, index: usize, exponent: u32) -> Monomial {
        let mut m = self.clone();
        m.0[index] = exponent;
        m
    }

    pub(crate) fn resized(&self, nvars: usize) -> Monomial {
        let mut m = self.0.clone();
        m.resize(nvars, 0);
        Monomial(m)
    }

    fn priority(nvars: usize) -> impl Iterator<Item = usize> {
        let head: &'static [usize] = if nvars >= 2 { &[1, 0] } else { &[0] };
        head.iter().copied().chain(2..nvars.max(2))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        for i in Self::priority(self.0.len()) {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
