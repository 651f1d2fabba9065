//! Derivations: residual checks for given maps, the full derivation
//! algebra of a specialized bracket, characteristic nilpotency, and the
//! banded diagonal template used by the `h1` cases.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::catalog::Ideal;
use crate::exact::{int, RatFunc, Rational};
use crate::lie::{basis_vector, LieBracket, LieError, LinearMap};
use crate::linalg::{nullspace, RowSpace};

/// Whether the span of the given 1-based basis indices is an ideal.
pub fn is_ideal(b: &LieBracket, indices: &[usize]) -> bool {
    let inside = |l: usize| indices.contains(&l);
    for x in 1..=b.dim() {
        for &j in indices {
            for l in 1..=b.dim() {
                if !inside(l) && !b.coeff(x, j, l).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Nonzero components of `D[x_i, x_j] - [D x_i, x_j] - [x_i, D x_j]`
/// over basis pairs `i < j`. Empty iff `D` is a derivation.
pub fn derivation_residuals(
    b: &LieBracket,
    d: &LinearMap,
) -> Result<Vec<((usize, usize, usize), RatFunc)>, LieError> {
    if d.dim() != b.dim() {
        return Err(LieError::DimensionMismatch {
            expected: b.dim(),
            got: d.dim(),
        });
    }
    let n = b.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let lhs = d.apply(&b.bracket_basis(i, j))?;
            let t1 = b.apply(&d.column(i), &basis_vector(n, j))?;
            let t2 = b.apply(&basis_vector(n, i), &d.column(j))?;
            for l in 1..=n {
                let r = lhs[l - 1].sub(&t1[l - 1]).sub(&t2[l - 1]);
                if !r.is_zero() {
                    out.push(((i, j, l), r));
                }
            }
        }
    }
    Ok(out)
}

/// Residuals of the diagonal map `X_i -> w_i X_i` on the full algebra.
pub fn diag_derivation_residuals(
    b: &LieBracket,
    weights: &[i64],
) -> Result<Vec<((usize, usize, usize), RatFunc)>, LieError> {
    let mut d = LinearMap::zero(b.dim());
    for (i, &w) in weights.iter().enumerate() {
        d.set(i + 1, i + 1, RatFunc::from_int(w));
    }
    derivation_residuals(b, &d)
}

/// The banded template derivation of the `h1` cases, in the ideal basis
/// `(X_1, X_3, X_4, ..., X_9)`: diagonal `(d1, k d1, (k+1) d1, ...,
/// (k+6) d1)` and subdiagonal bands `-C^{r-c+3}_{2,3}` for `c >= 2`,
/// `r - c >= 2`. The `bindings` map must carry `c523 ... c923`.
pub fn h1_template_derivation(
    k: u32,
    d1: &RatFunc,
    bindings: &BTreeMap<String, RatFunc>,
) -> LinearMap {
    let mut d = LinearMap::zero(8);
    d.set(1, 1, d1.clone());
    for i in 2..=8 {
        d.set(i, i, d1.scale(&int((k + i as u32 - 2) as i64)));
    }
    for c in 2..=6 {
        for r in (c + 2)..=8 {
            let m = r - c + 3;
            let key = format!("c{m}23");
            let value = bindings
                .get(&key)
                .cloned()
                .unwrap_or_else(|| RatFunc::var(&key));
            d.set(r, c, value.neg());
        }
    }
    d
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn mat_comm(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    let n = a.len();
    let mut out = ab;
    for i in 0..n {
        for j in 0..n {
            out[i][j] -= &ba[i][j];
        }
    }
    out
}

fn flatten(m: &[Vec<Rational>]) -> Vec<Rational> {
    m.iter().flatten().cloned().collect()
}

fn unflatten(v: &[Rational], n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect()
}

/// Basis of the derivation algebra of a fully specialized bracket, as
/// `n x n` rational matrices (row `r`, column `c`: the `X_{r+1}`
/// coordinate of the image of `X_{c+1}`).
pub fn derivation_basis(b: &LieBracket) -> Result<Vec<Vec<Vec<Rational>>>, LieError> {
    let n = b.dim();
    let mut constants = BTreeMap::new();
    for (&(i, j, l), c) in b.entries().map(|(k, c)| (k, c)) {
        let value = c.as_rational().ok_or(LieError::ParametricInput)?;
        constants.insert((i, j, l), value);
    }
    let c = |i: usize, j: usize, l: usize| -> Rational {
        if i == j {
            return Rational::zero();
        }
        if i < j {
            constants.get(&(i, j, l)).cloned().unwrap_or_else(Rational::zero)
        } else {
            constants
                .get(&(j, i, l))
                .map(|v| -v)
                .unwrap_or_else(Rational::zero)
        }
    };
    // Unknowns D_{r,c} flattened row-major; one equation per (i<j, l):
    // sum_m C^m_{i,j} D_{l,m} - sum_r C^l_{r,j} D_{r,i}
    //                         - sum_r C^l_{i,r} D_{r,j} = 0.
    let idx = |r: usize, col: usize| (r - 1) * n + (col - 1);
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            for l in 1..=n {
                let mut row = vec![Rational::zero(); n * n];
                for m in 1..=n {
                    row[idx(l, m)] += c(i, j, m);
                }
                for r in 1..=n {
                    row[idx(r, i)] -= c(r, j, l);
                    row[idx(r, j)] -= c(i, r, l);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(nullspace(rows, n * n)
        .into_iter()
        .map(|v| unflatten(&v, n))
        .collect())
}

/// Dimensions of the lower central series of the derivation algebra
/// (as a matrix Lie algebra under the commutator), starting with
/// `dim Der`.
pub fn derivation_series(b: &LieBracket) -> Result<Vec<usize>, LieError> {
    let der = derivation_basis(b)?;
    let n = b.dim();
    let mut dims = vec![der.len()];
    let mut current: Vec<Vec<Vec<Rational>>> = der.clone();
    loop {
        let mut products = Vec::new();
        for a in &der {
            for m in &current {
                products.push(flatten(&mat_comm(a, m)));
            }
        }
        let next = RowSpace::from_rows(products, n * n);
        let d = next.dim();
        if d == *dims.last().unwrap() {
            break;
        }
        dims.push(d);
        if d == 0 {
            break;
        }
        current = next.basis().iter().map(|v| unflatten(v, n)).collect();
    }
    Ok(dims)
}

/// Basis of the space of diagonal derivations `X_i -> w_i X_i` of a
/// fully specialized bracket: the solutions of `w_i + w_j = w_l` over
/// the nonzero structure constants. The degeneration construction
/// needs such a derivation with distinct integer weights, so an empty
/// space certifies that the method cannot apply in this basis.
pub fn diag_derivation_space(b: &LieBracket) -> Vec<Vec<Rational>> {
    let n = b.dim();
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for (&(i, j, l), c) in b.entries() {
        if c.is_zero() {
            continue;
        }
        let mut row = vec![Rational::zero(); n];
        row[i - 1] += &one;
        row[j - 1] += &one;
        row[l - 1] -= &one;
        rows.push(row);
    }
    nullspace(rows, n)
}

/// A Lie algebra is characteristically nilpotent when its derivation
/// algebra is nilpotent (equivalently, every derivation is nilpotent).
pub fn is_char_nilpotent(b: &LieBracket) -> Result<bool, LieError> {
    Ok(*derivation_series(b)?.last().unwrap() == 0)
}

/// Restrict a 9-dimensional bracket to a codimension-one ideal, in the
/// ideal basis. Panics if the span is not closed under the bracket.
pub fn restrict_to_ideal(b: &LieBracket, ideal: Ideal) -> LieBracket {
    b.restrict(&ideal.indices())
        .expect("the span is not a subalgebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn heisenberg() -> LieBracket {
        let mut b = LieBracket::new(3);
        b.set(1, 2, 3, RatFunc::one());
        b
    }

    #[test]
    fn heisenberg_derivations() {
        // Classical fact: Der of the 3-dimensional Heisenberg algebra
        // has dimension 6 and is not nilpotent.
        let b = heisenberg();
        assert_eq!(derivation_basis(&b).unwrap().len(), 6);
        assert!(!is_char_nilpotent(&b).unwrap());
        for d in derivation_basis(&b).unwrap() {
            let mut m = LinearMap::zero(3);
            for r in 1..=3 {
                for c in 1..=3 {
                    m.set(r, c, RatFunc::from_rational(d[r - 1][c - 1].clone()));
                }
            }
            assert!(derivation_residuals(&b, &m).unwrap().is_empty());
        }
    }

    #[test]
    fn abelian_derivations_are_everything() {
        let b = LieBracket::new(2);
        assert_eq!(derivation_basis(&b).unwrap().len(), 4);
        // gl_2 is not nilpotent.
        assert!(!is_char_nilpotent(&b).unwrap());
    }

    #[test]
    fn both_spans_are_ideals_in_every_family() {
        let cat = Catalog::embedded().unwrap();
        for row in &cat.algebras {
            let b = row.bracket();
            assert!(is_ideal(&b, &Ideal::H1.indices()), "{}", row.name);
            assert!(is_ideal(&b, &Ideal::H2.indices()), "{}", row.name);
            // The chain alone makes the full span of X_2..X_9 with X_1
            // adjoined non-abelian, so a non-ideal exists too.
            assert!(!is_ideal(&b, &[1, 2]), "{}", row.name);
        }
    }

    #[test]
    fn catalog_diag_derivations_hold_symbolically() {
        let cat = Catalog::embedded().unwrap();
        for entry in &cat.diag_derivations {
            let row = cat.algebra(&entry.algebra).unwrap();
            let residuals = diag_derivation_residuals(&row.bracket(), &entry.weights).unwrap();
            assert!(
                residuals.is_empty(),
                "{}: first residual {:?}",
                entry.algebra,
                residuals.first()
            );
        }
    }

    #[test]
    fn template_is_a_derivation_for_a_k2_family() {
        // mu9_26 sits in the k = 2 case with d1 = 1.
        let cat = Catalog::embedded().unwrap();
        let row = cat.algebra("mu9_26").unwrap();
        let h1 = restrict_to_ideal(&row.bracket(), Ideal::H1);
        let d = h1_template_derivation(2, &RatFunc::one(), &row.constant_bindings());
        let residuals = derivation_residuals(&h1, &d).unwrap();
        assert!(residuals.is_empty(), "first residual {:?}", residuals.first());
    }

    #[test]
    fn template_band_layout() {
        // With symbolic band entries the template exposes the expected
        // shape: diagonal (d1, 2 d1, 3 d1, ..., 8 d1) for k = 2 and the
        // band -C^{r-c+3}_{2,3}.
        let d = h1_template_derivation(2, &RatFunc::var("d1"), &BTreeMap::new());
        assert_eq!(*d.get(2, 2), crate::exact::parse_expr("2*d1").unwrap());
        assert_eq!(*d.get(8, 8), crate::exact::parse_expr("8*d1").unwrap());
        assert_eq!(*d.get(4, 2), crate::exact::parse_expr("-c523").unwrap());
        assert_eq!(*d.get(8, 2), crate::exact::parse_expr("-c923").unwrap());
        assert_eq!(*d.get(8, 6), crate::exact::parse_expr("-c523").unwrap());
        assert!(d.get(3, 2).is_zero());
        assert!(d.get(5, 4).is_zero());
    }

    #[test]
    fn cn_family_has_nilpotent_derivation_algebra() {
        // mu9_6 is parameter-free and characteristically nilpotent.
        let cat = Catalog::embedded().unwrap();
        let b = cat.algebra("mu9_6").unwrap().bracket();
        assert!(is_char_nilpotent(&b).unwrap());
    }

    #[test]
    fn graded_family_is_not_char_nilpotent() {
        // mu9_37 carries the diagonal derivation (1, 6, 7, ..., 13).
        let cat = Catalog::embedded().unwrap();
        let b = cat.algebra("mu9_37").unwrap().bracket();
        assert!(!is_char_nilpotent(&b).unwrap());
    }
}
