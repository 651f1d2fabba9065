//! Lie brackets as sparse structure-constant tables, Jacobi residuals,
//! and series computations on fully specialized brackets.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{ExactError, RatFunc, Rational};
use crate::linalg::RowSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a fully specialized (parameter-free) bracket")]
    ParametricInput,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Antisymmetric structure-constant table `[X_i, X_j] = Σ C^l_{i,j} X_l`
/// over 1-based basis indices; only `i < j` entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LieBracket {
    dim: usize,
    table: BTreeMap<(usize, usize, usize), RatFunc>,
}

impl LieBracket {
    pub fn new(dim: usize) -> Self {
        LieBracket {
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, l: usize, value: RatFunc) {
        assert!(i >= 1 && j >= 1 && l >= 1 && i <= self.dim && j <= self.dim && l <= self.dim);
        assert_ne!(i, j, "C^l_{{i,i}} is identically zero");
        let (key, value) = if i < j {
            ((i, j, l), value)
        } else {
            ((j, i, l), value.neg())
        };
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn coeff(&self, i: usize, j: usize, l: usize) -> RatFunc {
        if i == j {
            return RatFunc::zero();
        }
        if i < j {
            self.table.get(&(i, j, l)).cloned().unwrap_or_else(RatFunc::zero)
        } else {
            self.table
                .get(&(j, i, l))
                .map(|c| c.neg())
                .unwrap_or_else(RatFunc::zero)
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &RatFunc)> {
        self.table.iter()
    }

    /// Coordinates of `[X_i, X_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.dim];
        for l in 1..=self.dim {
            let c = self.coeff(i, j, l);
            if !c.is_zero() {
                out[l - 1] = c;
            }
        }
        out
    }

    /// Bilinear antisymmetric extension to coordinate vectors.
    pub fn apply(&self, x: &[RatFunc], y: &[RatFunc]) -> Result<Vec<RatFunc>, LieError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LieError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut out = vec![RatFunc::zero(); self.dim];
        for ((i, j, l), c) in &self.table {
            let xi_yj = x[i - 1].mul(&y[j - 1]);
            let xj_yi = x[j - 1].mul(&y[i - 1]);
            let coeff = xi_yj.sub(&xj_yi);
            if !coeff.is_zero() {
                out[l - 1] = out[l - 1].add(&coeff.mul(c));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &LieBracket) -> LieBracket {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&(i, j, l), c) in &other.table {
            let sum = out.coeff(i, j, l).add(c);
            out.set(i, j, l, sum);
        }
        out
    }

    pub fn scale(&self, s: &RatFunc) -> LieBracket {
        let mut out = LieBracket::new(self.dim);
        for (&(i, j, l), c) in &self.table {
            out.set(i, j, l, c.mul(s));
        }
        out
    }

    /// Nonzero coefficients of the Jacobi expression
    /// `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]` for `i<j<k`.
    pub fn jacobi_residuals(&self) -> Vec<((usize, usize, usize, usize), RatFunc)> {
        let mut out = Vec::new();
        let basis = |idx: usize| {
            let mut v = vec![RatFunc::zero(); self.dim];
            v[idx - 1] = RatFunc::one();
            v
        };
        for i in 1..=self.dim {
            for j in (i + 1)..=self.dim {
                for k in (j + 1)..=self.dim {
                    let ij = self.apply(&basis(i), &basis(j)).unwrap();
                    let jk = self.apply(&basis(j), &basis(k)).unwrap();
                    let ki = self.apply(&basis(k), &basis(i)).unwrap();
                    let t1 = self.apply(&ij, &basis(k)).unwrap();
                    let t2 = self.apply(&jk, &basis(i)).unwrap();
                    let t3 = self.apply(&ki, &basis(j)).unwrap();
                    for l in 1..=self.dim {
                        let r = t1[l - 1].add(&t2[l - 1]).add(&t3[l - 1]);
                        if !r.is_zero() {
                            out.push(((i, j, k, l), r));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_parameter_free(&self) -> bool {
        self.table.values().all(|c| c.is_constant())
    }

    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, RatFunc>,
    ) -> Result<LieBracket, ExactError> {
        let mut out = LieBracket::new(self.dim);
        for (&(i, j, l), c) in &self.table {
            out.set(i, j, l, c.substitute(bindings)?);
        }
        Ok(out)
    }

    fn constant_table(&self) -> Result<Vec<((usize, usize, usize), Rational)>, LieError> {
        self.table
            .iter()
            .map(|(&k, c)| {
                c.as_rational()
                    .map(|r| (k, r))
                    .ok_or(LieError::ParametricInput)
            })
            .collect()
    }

    fn apply_rational(
        table: &[((usize, usize, usize), Rational)],
        dim: usize,
        x: &[Rational],
        y: &[Rational],
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for ((i, j, l), c) in table {
            let coeff = &x[i - 1] * &y[j - 1] - &x[j - 1] * &y[i - 1];
            out[l - 1] += &coeff * c;
        }
        out
    }

    /// Dimensions of the lower central or derived series, starting with
    /// the ambient dimension and ending when the sequence stabilizes.
    pub fn series(&self, kind: SeriesKind) -> Result<Vec<usize>, LieError> {
        let table = self.constant_table()?;
        let full = RowSpace::full(self.dim);
        let mut dims = vec![self.dim];
        let mut current = full.clone();
        loop {
            let left = match kind {
                SeriesKind::LowerCentral => &full,
                SeriesKind::Derived => &current,
            };
            let mut products = Vec::new();
            for x in left.basis() {
                for y in current.basis() {
                    products.push(Self::apply_rational(&table, self.dim, x, y));
                }
            }
            let next = RowSpace::from_rows(products, self.dim);
            let d = next.dim();
            if d == *dims.last().unwrap() {
                break;
            }
            dims.push(d);
            if d == 0 {
                break;
            }
            current = next;
        }
        Ok(dims)
    }

    pub fn is_nilpotent(&self) -> Result<bool, LieError> {
        Ok(*self.series(SeriesKind::LowerCentral)?.last().unwrap() == 0)
    }

    pub fn is_solvable(&self) -> Result<bool, LieError> {
        Ok(*self.series(SeriesKind::Derived)?.last().unwrap() == 0)
    }

    /// Restriction to the subalgebra spanned by a subset of basis vectors
    /// (ascending 1-based indices). Returns `None` when a bracket of two
    /// subset elements escapes the subset span.
    pub fn restrict(&self, indices: &[usize]) -> Option<LieBracket> {
        let pos: BTreeMap<usize, usize> = indices
            .iter()
            .enumerate()
            .map(|(p, &i)| (i, p + 1))
            .collect();
        let mut out = LieBracket::new(indices.len());
        for (&(i, j, l), c) in &self.table {
            if !pos.contains_key(&i) || !pos.contains_key(&j) {
                continue;
            }
            match pos.get(&l) {
                Some(&lp) => out.set(pos[&i], pos[&j], lp, c.clone()),
                None => return None,
            }
        }
        Some(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// A linear map in the ambient basis; column `j` is the image of `X_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    dim: usize,
    /// Row-major entries: `matrix[r][c]` is the `X_{r+1}` coordinate of
    /// the image of `X_{c+1}`.
    matrix: Vec<Vec<RatFunc>>,
}

impl LinearMap {
    pub fn zero(dim: usize) -> Self {
        LinearMap {
            dim,
            matrix: vec![vec![RatFunc::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = LinearMap::zero(dim);
        for i in 0..dim {
            m.matrix[i][i] = RatFunc::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &RatFunc {
        &self.matrix[row - 1][col - 1]
    }

    pub fn set(&mut self, row: usize, col: usize, value: RatFunc) {
        self.matrix[row - 1][col - 1] = value;
    }

    pub fn apply(&self, x: &[RatFunc]) -> Result<Vec<RatFunc>, LieError> {
        if x.len() != self.dim {
            return Err(LieError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut out = vec![RatFunc::zero(); self.dim];
        for c in 0..self.dim {
            if x[c].is_zero() {
                continue;
            }
            for r in 0..self.dim {
                if !self.matrix[r][c].is_zero() {
                    out[r] = out[r].add(&self.matrix[r][c].mul(&x[c]));
                }
            }
        }
        Ok(out)
    }

    pub fn column(&self, col: usize) -> Vec<RatFunc> {
        (1..=self.dim).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.dim, other.dim);
        let mut out = LinearMap::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.matrix[r][c] = self.matrix[r][c].add(&other.matrix[r][c]);
            }
        }
        out
    }

    pub fn scale(&self, s: &RatFunc) -> LinearMap {
        let mut out = LinearMap::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.matrix[r][c] = self.matrix[r][c].mul(s);
            }
        }
        out
    }

    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, RatFunc>,
    ) -> Result<LinearMap, ExactError> {
        let mut out = LinearMap::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.matrix[r][c] = self.matrix[r][c].substitute(bindings)?;
            }
        }
        Ok(out)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.dim).all(|r| ((r + 1)..self.dim).all(|c| self.matrix[r][c].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<RatFunc> {
        (1..=self.dim).map(|i| self.get(i, i).clone()).collect()
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.matrix {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn basis_vector(dim: usize, index: usize) -> Vec<RatFunc> {
    let mut v = vec![RatFunc::zero(); dim];
    v[index - 1] = RatFunc::one();
    v
}
