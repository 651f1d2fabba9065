//! Linear deformations `mu_t = mu + t * mu_D`, where `mu_D` pairs the
//! complement of a codimension-one ideal against a derivation of that
//! ideal and vanishes on the ideal itself.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::catalog::Ideal;
use crate::deriv::{derivation_residuals, is_ideal, restrict_to_ideal};
use crate::exact::{ExactError, RatFunc, Rational};
use crate::lie::{LieBracket, LieError, LinearMap};

/// The deformation parameter name used throughout.
pub const T: &str = "t";

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("the span is not an ideal")]
    NotAnIdeal,
    #[error("D is not a derivation of the ideal: residual at {at:?} is {residual}")]
    NotADerivation {
        at: (usize, usize, usize),
        residual: RatFunc,
    },
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// The cocycle bracket `mu_D`: `mu_D(X, z) = D(z)` for `z` in the
/// ideal, `X` the complementary basis vector, and zero on the ideal.
/// `d` is 8x8 in the ideal basis; the result lives on the ambient 9
/// dimensions. No derivation check is performed here.
pub fn build_mu_d(ideal: Ideal, d: &LinearMap) -> LieBracket {
    assert_eq!(d.dim(), 8);
    let indices = ideal.indices();
    let z = ideal.complement();
    let mut out = LieBracket::new(9);
    for (col, &j) in indices.iter().enumerate() {
        for (row, &l) in indices.iter().enumerate() {
            let value = d.get(row + 1, col + 1);
            if !value.is_zero() {
                out.set(z, j, l, value.clone());
            }
        }
    }
    out
}

/// Like [`build_mu_d`], but first checks that the span is an ideal of
/// `b` and that `d` is a derivation of the restricted bracket.
pub fn checked_mu_d(
    b: &LieBracket,
    ideal: Ideal,
    d: &LinearMap,
) -> Result<LieBracket, DeformError> {
    if !is_ideal(b, &ideal.indices()) {
        return Err(DeformError::NotAnIdeal);
    }
    let restricted = restrict_to_ideal(b, ideal);
    let residuals = derivation_residuals(&restricted, d)?;
    if let Some((at, residual)) = residuals.into_iter().next() {
        return Err(DeformError::NotADerivation { at, residual });
    }
    Ok(build_mu_d(ideal, d))
}

/// `mu_t = mu + t * mu_D` with `t` symbolic.
pub fn mu_t(b: &LieBracket, mu_d: &LieBracket) -> LieBracket {
    b.add(&mu_d.scale(&RatFunc::var(T)))
}

/// Jacobi residuals of a bracket split by powers of `t`. A nonzero
/// entry at degree 1 means `mu_D` fails the 2-cocycle condition; at
/// degree 2 it fails the Jacobi identity of `mu_D` itself.
pub fn jacobi_residuals_by_degree(
    b: &LieBracket,
) -> Vec<((usize, usize, usize, usize), u32, RatFunc)> {
    let mut out = Vec::new();
    for (at, residual) in b.jacobi_residuals() {
        match residual.coeffs_in(T) {
            Some(coeffs) => {
                for (deg, c) in coeffs {
                    if !c.is_zero() {
                        out.push((at, deg, c));
                    }
                }
            }
            // A t in the denominator cannot be split by degree; report
            // the residual whole at degree 0.
            None => out.push((at, 0, residual)),
        }
    }
    out
}

/// Specialize a bracket at rational parameter values and decide
/// whether it is solvable but not nilpotent.
pub fn is_solvable_not_nilpotent(
    b: &LieBracket,
    point: &BTreeMap<String, Rational>,
) -> Result<bool, DeformError> {
    let bindings: BTreeMap<String, RatFunc> = point
        .iter()
        .map(|(k, v)| (k.clone(), RatFunc::from_rational(v.clone())))
        .collect();
    let specialized = b.substitute(&bindings).map_err(LieError::Exact)?;
    Ok(specialized.is_solvable()? && !specialized.is_nilpotent()?)
}

/// Convenience: parse an 8x8 matrix of already-validated expressions
/// into a `LinearMap`, substituting the given parameter bindings.
pub fn linear_map_from_rows(
    rows: &[Vec<RatFunc>],
    bindings: &BTreeMap<String, RatFunc>,
) -> Result<LinearMap, ExactError> {
    let dim = rows.len();
    let mut m = LinearMap::zero(dim);
    for (r, row) in rows.iter().enumerate() {
        for (c, value) in row.iter().enumerate() {
            m.set(r + 1, c + 1, value.substitute(bindings)?);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::deriv::h1_template_derivation;
    use crate::exact::int;

    fn mu_t_for(name: &str, ideal: Ideal, d: &LinearMap) -> LieBracket {
        let cat = Catalog::embedded().unwrap();
        let b = cat.algebra(name).unwrap().bracket();
        let mu_d = checked_mu_d(&b, ideal, d).unwrap();
        mu_t(&b, &mu_d)
    }

    #[test]
    fn mu_d_layout_h1() {
        // For h1 the complement is X_2, so mu_D only pairs X_2 against
        // ideal elements.
        let mut d = LinearMap::zero(8);
        d.set(1, 1, RatFunc::one()); // D(X_1) = X_1
        d.set(3, 2, RatFunc::from_int(5)); // D(X_3) = 5 X_4
        let mu_d = build_mu_d(Ideal::H1, &d);
        assert_eq!(mu_d.coeff(2, 1, 1), RatFunc::one());
        assert_eq!(mu_d.coeff(1, 2, 1), RatFunc::from_int(-1));
        assert_eq!(mu_d.coeff(2, 3, 4), RatFunc::from_int(5));
        assert!(mu_d.coeff(1, 3, 4).is_zero());
    }

    #[test]
    fn deformation_of_mu9_26_is_a_lie_bracket() {
        let cat = Catalog::embedded().unwrap();
        let row = cat.algebra("mu9_26").unwrap();
        let d = h1_template_derivation(2, &RatFunc::one(), &row.constant_bindings());
        let def = mu_t_for("mu9_26", Ideal::H1, &d);
        let residuals = jacobi_residuals_by_degree(&def);
        assert!(residuals.is_empty(), "first residual {:?}", residuals.first());
    }

    #[test]
    fn deformation_is_solvable_not_nilpotent() {
        let cat = Catalog::embedded().unwrap();
        let row = cat.algebra("mu9_26").unwrap();
        let d = h1_template_derivation(2, &RatFunc::one(), &row.constant_bindings());
        let def = mu_t_for("mu9_26", Ideal::H1, &d);
        let mut point = BTreeMap::new();
        point.insert("a".to_string(), int(2));
        point.insert("b".to_string(), int(3));
        point.insert("t".to_string(), int(1));
        assert!(is_solvable_not_nilpotent(&def, &point).unwrap());
        // The undeformed algebra is nilpotent, hence rejected.
        let undeformed = row.bracket();
        assert!(!is_solvable_not_nilpotent(&undeformed, &point).unwrap());
    }

    #[test]
    fn non_derivation_is_rejected() {
        let cat = Catalog::embedded().unwrap();
        let b = cat.algebra("mu9_6").unwrap().bracket();
        let mut d = LinearMap::zero(8);
        d.set(1, 2, RatFunc::one()); // maps X_3 onto X_1: not a derivation
        match checked_mu_d(&b, Ideal::H1, &d) {
            Err(DeformError::NotADerivation { .. }) => {}
            other => panic!("expected NotADerivation, got {other:?}"),
        }
    }

    #[test]
    fn cocycle_violation_shows_at_degree_one() {
        // Take a valid mu_D and corrupt one entry: the Jacobi residual
        // of mu + t mu_D must then show a nonzero t-coefficient.
        let cat = Catalog::embedded().unwrap();
        let row = cat.algebra("mu9_26").unwrap();
        let b = row.bracket();
        let d = h1_template_derivation(2, &RatFunc::one(), &row.constant_bindings());
        let mut mu_d = build_mu_d(Ideal::H1, &d);
        mu_d.set(2, 3, 5, RatFunc::from_int(7));
        let residuals = jacobi_residuals_by_degree(&mu_t(&b, &mu_d));
        assert!(residuals.iter().any(|(_, deg, _)| *deg == 1));
    }
}
