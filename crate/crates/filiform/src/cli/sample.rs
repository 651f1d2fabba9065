//! Seeded sampling: admissible parameter specializations for the
//! catalog families and random lower-triangular derivations with
//! distinct integer diagonals.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{rat, RatFunc, Rational};

/// Small rational candidates for parameter values. Chosen so that every
/// family's excluded set (finitely many points per parameter) can be
/// avoided by rejection.
fn pool() -> Vec<Rational> {
    [
        (3, 1),
        (5, 1),
        (7, 1),
        (11, 2),
        (2, 1),
        (-2, 1),
        (1, 2),
        (5, 2),
        (-3, 1),
        (4, 1),
        (-1, 2),
        (7, 3),
        (9, 4),
        (-5, 3),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pool: Vec<Rational>,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: pool(),
        }
    }

    fn draw(&mut self) -> Rational {
        self.pool.choose(&mut self.rng).unwrap().clone()
    }

    /// A specialization of the named parameters under which every
    /// constraint expression stays nonzero (and finite).
    pub fn admissible_point(
        &mut self,
        params: &[String],
        constraints: &[RatFunc],
    ) -> BTreeMap<String, Rational> {
        'attempt: for _ in 0..1000 {
            let point: BTreeMap<String, Rational> =
                params.iter().map(|p| (p.clone(), self.draw())).collect();
            for c in constraints {
                match c.eval(&point) {
                    Ok(v) if !v.is_zero() => {}
                    _ => continue 'attempt,
                }
            }
            return point;
        }
        // The pools are large relative to the excluded sets, so this is
        // unreachable for any catalog the schema accepts.
        unreachable!("no admissible point found in 1000 attempts")
    }

    /// A random 8x8 lower-triangular derivation-shaped matrix with
    /// distinct integer diagonal entries and a sparse subdiagonal.
    pub fn random_lower_triangular(&mut self) -> Vec<Vec<RatFunc>> {
        let mut diag: Vec<i64> = (-9..=9).collect();
        diag.shuffle(&mut self.rng);
        diag.truncate(8);
        let mut d = vec![vec![RatFunc::zero(); 8]; 8];
        for (i, &v) in diag.iter().enumerate() {
            d[i][i] = RatFunc::from_int(v);
        }
        for r in 1..8 {
            for c in 0..r {
                if self.rng.gen_bool(0.3) {
                    d[r][c] = RatFunc::from_rational(self.draw());
                }
            }
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degen::h2::CaseData;
    use crate::exact::parse_expr;

    #[test]
    fn points_respect_constraints() {
        let mut s = Sampler::new(7);
        let params = vec!["a".to_string(), "b".to_string()];
        let constraints = vec![
            parse_expr("a").unwrap(),
            parse_expr("a-1").unwrap(),
            parse_expr("a+1").unwrap(),
            parse_expr("2*a-1").unwrap(),
            parse_expr("b").unwrap(),
        ];
        for _ in 0..50 {
            let p = s.admissible_point(&params, &constraints);
            for c in &constraints {
                assert!(!c.eval(&p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let params = vec!["a".to_string()];
        let a: Vec<_> = {
            let mut s = Sampler::new(42);
            (0..10).map(|_| s.admissible_point(&params, &[])).collect()
        };
        let b: Vec<_> = {
            let mut s = Sampler::new(42);
            (0..10).map(|_| s.admissible_point(&params, &[])).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn random_matrices_are_valid_case_data() {
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let d = s.random_lower_triangular();
            CaseData::new(d).unwrap();
        }
    }
}
