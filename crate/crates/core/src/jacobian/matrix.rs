use std::fmt;

use crate::polyring::Polynomial;

/// Square matrix of polynomials sharing one ambient ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    size: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let size = rows.len();
        assert!(size > 0, "empty matrix");
        let nvars = rows[0][0].nvars();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            assert_eq!(row.len(), size, "matrix must be square");
            for e in row {
                assert_eq!(e.nvars(), nvars, "entries must share an ambient ring");
                entries.push(e);
            }
        }
        PolyMatrix { size, nvars, entries }
    }

    pub fn identity(size: usize, nvars: usize) -> Self {
        Self::from_fn(size, nvars, |i, j| {
            if i == j {
                Polynomial::one(nvars)
            } else {
                Polynomial::zero(nvars)
            }
        })
    }

    pub fn zero(size: usize, nvars: usize) -> Self {
        Self::from_fn(size, nvars, |_, _| Polynomial::zero(nvars))
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Polynomial>(size: usize, nvars: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entries must share an ambient ring");
                entries.push(e);
            }
        }
        PolyMatrix { size, nvars, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn trace(&self) -> Polynomial {
        (0..self.size).fold(Polynomial::zero(self.nvars), |acc, i| &acc + self.get(i, i))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.size, other.size, "matrix size mismatch");
        assert_eq!(self.nvars, other.nvars, "ambient ring mismatch");
        Self::from_fn(self.size, self.nvars, |i, j| {
            let mut acc = Polynomial::zero(self.nvars);
            for k in 0..self.size {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        Self::from_fn(self.size, self.nvars, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn map_entries<F: FnMut(&Polynomial) -> Polynomial>(&self, mut f: F) -> PolyMatrix {
        let entries: Vec<Polynomial> = self.entries.iter().map(&mut f).collect();
        let nvars = entries[0].nvars();
        PolyMatrix { size: self.size, nvars, entries }
    }

    /// Determinant by Laplace expansion, memoised over the set of used columns.
    pub fn determinant(&self) -> Polynomial {
        let n = self.size;
        assert!(n < 24, "determinant expansion limited to small matrices");
        let mut dp: Vec<Option<Polynomial>> = vec![None; 1 << n];
        dp[0] = Some(Polynomial::one(self.nvars));
        for used in 0usize..(1 << n) {
            let row = used.count_ones() as usize;
            if row == n {
                continue;
            }
            let Some(partial) = dp[used].take() else { continue };
            for col in 0..n {
                if used & (1 << col) != 0 {
                    continue;
                }
                let entry = self.get(row, col);
                if entry.is_zero() {
                    continue;
                }
                let inversions = (used >> (col + 1)).count_ones();
                let mut term = &partial * entry;
                if inversions % 2 == 1 {
                    term = -term;
                }
                let next = used | (1 << col);
                dp[next] = Some(match dp[next].take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        dp[(1 << n) - 1].take().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
