//! Exact linear algebra over ℚ: fraction-free (Bareiss) forward
//! elimination on integerized rows, followed by rational back
//! substitution. Used for subspace spans, ranks and nullspaces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// column indices.
pub fn rref(rows: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    // Integerize each row: scaling a row changes neither the row space
    // nor the solution set of the homogeneous system.
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            assert_eq!(r.len(), cols);
            let mut lcm = BigInt::one();
            for x in &r {
                lcm = lcm.lcm(x.denom());
            }
            let ints: Vec<BigInt> = r
                .iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect();
            let mut gcd = BigInt::zero();
            for x in &ints {
                gcd = gcd.gcd(x);
            }
            if gcd.is_zero() || gcd.is_one() {
                ints
            } else {
                ints.iter().map(|x| x / &gcd).collect()
            }
        })
        .collect();

    // Bareiss one-step fraction-free forward elimination.
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i <= r {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..cols {
                let v = &m[i][j] * &pivot - &factor * &m[r][j];
                debug_assert!((&v % &prev).is_zero());
                m[i][j] = v / &prev;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);

    // Rational back substitution to reduced form.
    let mut out: Vec<Vec<Rational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for k in (0..out.len()).rev() {
        let c = pivots[k];
        let inv = Rational::one() / out[k][c].clone();
        for j in 0..cols {
            out[k][j] *= &inv;
        }
        for i in 0..k {
            let f = out[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..cols {
                let delta = &f * &out[k][j];
                out[i][j] -= delta;
            }
        }
    }
    (out, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    rref(rows, cols).0.len()
}

/// Basis of the solution space of the homogeneous system `rows * x = 0`.
pub fn nullspace(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref(rows, cols);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -reduced[k][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// A subspace of ℚ^n kept in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let (basis, pivots) = rref(rows, cols);
        RowSpace { cols, basis, pivots }
    }

    pub fn full(cols: usize) -> Self {
        let rows = (0..cols)
            .map(|i| {
                let mut v = vec![Rational::zero(); cols];
                v[i] = Rational::one();
                v
            })
            .collect();
        RowSpace::from_rows(rows, cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (k, &c) in self.pivots.iter().enumerate() {
            let f = v[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let delta = &f * &self.basis[k][j];
                v[j] -= delta;
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_rref() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        let (basis, pivots) = rref(rows, 3);
        assert_eq!(basis.len(), 2);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(basis[0], vec![int(1), int(0), int(1)]);
        assert_eq!(basis[1], vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn nullspace_dimension() {
        let rows = vec![v(&[1, 2, 3]), v(&[0, 1, 1])];
        let ns = nullspace(rows.clone(), 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot: Rational = r
                .iter()
                .zip(&ns[0])
                .map(|(a, b)| a * b)
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn rowspace_membership() {
        let s = RowSpace::from_rows(vec![v(&[1, 0, 1]), v(&[0, 1, 0])], 3);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[int(2), rat(1, 3), int(2)]));
        assert!(!s.contains(&v(&[1, 0, 0])));
    }
}
