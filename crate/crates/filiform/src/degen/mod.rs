//! Degeneration identities: assembling the conjugating families `g_t`
//! and checking `mu_1(g(x), g(y)) = g(mu_t(x, y))` exactly.

pub mod h1;
pub mod h2;

use thiserror::Error;

use crate::exact::{ExactError, RatFunc};
use crate::lie::{basis_vector, LieBracket, LieError, LinearMap};

#[derive(Debug, Error)]
pub enum DegenError {
    #[error("diagonal entries {0} and {1} of D coincide")]
    RepeatedDiagonal(usize, usize),
    #[error("diagonal entry ({0},{0}) of D is not an integer")]
    NonIntegerDiagonal(usize),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Nonzero components of `mu_1(g(X_i), g(X_j)) - g(mu_t(X_i, X_j))`
/// over basis pairs. Empty iff the degeneration identity holds.
pub fn degeneration_residuals(
    mu_1: &LieBracket,
    mu_t: &LieBracket,
    g: &LinearMap,
) -> Result<Vec<((usize, usize, usize), RatFunc)>, LieError> {
    let n = mu_t.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let lhs = mu_1.apply(&g.column(i), &g.column(j))?;
            let rhs = g.apply(&mu_t.apply(&basis_vector(n, i), &basis_vector(n, j))?)?;
            for l in 1..=n {
                let r = lhs[l - 1].sub(&rhs[l - 1]);
                if !r.is_zero() {
                    out.push(((i, j, l), r));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_expr;

    #[test]
    fn identity_conjugation_detects_mismatch() {
        // mu_1 vs mu_t under g = id: residual is exactly (t - 1) times
        // the deformation direction.
        let mut mu_t = LieBracket::new(2);
        mu_t.set(1, 2, 2, parse_expr("t").unwrap());
        let mut mu_1 = LieBracket::new(2);
        mu_1.set(1, 2, 2, RatFunc::one());
        let g = LinearMap::identity(2);
        let res = degeneration_residuals(&mu_1, &mu_t, &g).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(res[0].0, (1, 2, 2));
        assert_eq!(res[0].1, parse_expr("1-t").unwrap());
    }

    #[test]
    fn scaling_conjugates_the_line() {
        // [X1, X2] = t X2 is conjugate to [X1, X2] = X2 by X1 -> t X1.
        let mut mu_t = LieBracket::new(2);
        mu_t.set(1, 2, 2, parse_expr("t").unwrap());
        let mut mu_1 = LieBracket::new(2);
        mu_1.set(1, 2, 2, RatFunc::one());
        let mut g = LinearMap::identity(2);
        g.set(1, 1, parse_expr("t").unwrap());
        let res = degeneration_residuals(&mu_1, &mu_t, &g).unwrap();
        assert!(res.is_empty(), "{res:?}");
    }
}
