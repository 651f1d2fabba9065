//! Conjugating families for the `h1` cases: the five template
//! matrices and their combination
//! `g = T0 + (t - p0^(k-1))/(k-1) * (p42 T1 + p52 T2 + p62 T3 + p0^(k+1) T4)`.

use std::collections::BTreeMap;

use crate::exact::{int, ExactError, RatFunc};
use crate::lie::LinearMap;

/// The conjugation parameter name of the `h1` cases.
pub const P0: &str = "p0";

fn c(bindings: &BTreeMap<String, RatFunc>, key: &str) -> RatFunc {
    // Missing constants stay symbolic so that residuals caused by an
    // uninterpretable slot remain visible instead of crashing.
    bindings.get(key).cloned().unwrap_or_else(|| RatFunc::var(key))
}

fn p0_pow(e: u32) -> RatFunc {
    RatFunc::var(P0).pow_u32(e)
}

/// The base matrix `T0`: diagonal `(p0, t, p0^k, ..., p0^(k+6))`,
/// the column of `p_{i,2}` coefficients and its `p0`-shifted copies.
pub fn t0(k: u32, p: &BTreeMap<(usize, usize), RatFunc>) -> LinearMap {
    let t = RatFunc::var("t");
    let pc = |r: usize| p.get(&(r, 2)).cloned().unwrap_or_else(|| RatFunc::var(&format!("p{r}2")));
    let mut m = LinearMap::zero(9);
    m.set(1, 1, p0_pow(1));
    m.set(2, 2, t.clone());
    for i in 3..=9 {
        m.set(i, i, p0_pow(k + i as u32 - 3));
    }
    for i in 4..=9 {
        m.set(i, 2, pc(i));
    }
    for i in 5..=9 {
        m.set(i, 3, p0_pow(1).mul(&pc(i - 1)));
    }
    for i in 6..=9 {
        m.set(i, 4, p0_pow(2).mul(&pc(i - 2)));
    }
    // The last columns are printed with mixed powers of t and p0; they
    // are kept verbatim (they agree with the p0-shift pattern exactly
    // when t = p0).
    m.set(7, 5, t.pow_u32(2).mul(&p0_pow(1)).mul(&pc(4)));
    m.set(8, 5, p0_pow(3).mul(&pc(5)));
    m.set(9, 5, p0_pow(3).mul(&pc(6)));
    m.set(8, 6, t.pow_u32(3).mul(&p0_pow(1)).mul(&pc(4)));
    m.set(9, 6, p0_pow(4).mul(&pc(5)));
    m.set(9, 7, t.pow_u32(3).mul(&p0_pow(2)).mul(&pc(4)));
    m
}

pub fn t1(bind: &BTreeMap<String, RatFunc>) -> LinearMap {
    let mut m = LinearMap::zero(9);
    m.set(7, 3, c(bind, "c734"));
    m.set(8, 3, c(bind, "c834"));
    m.set(8, 4, c(bind, "c734").add(&c(bind, "c835")).mul(&p0_pow(1)));
    m.set(9, 3, c(bind, "c934"));
    m.set(9, 4, c(bind, "c834").add(&c(bind, "c935")).mul(&p0_pow(1)));
    m.set(
        9,
        5,
        c(bind, "c734")
            .add(&c(bind, "c835"))
            .add(&c(bind, "c936"))
            .mul(&p0_pow(2)),
    );
    m
}

pub fn t2(bind: &BTreeMap<String, RatFunc>) -> LinearMap {
    let mut m = LinearMap::zero(9);
    m.set(8, 3, c(bind, "c835"));
    m.set(9, 3, c(bind, "c935"));
    m.set(9, 4, c(bind, "c835").add(&c(bind, "c936")).mul(&p0_pow(1)));
    m
}

pub fn t3(bind: &BTreeMap<String, RatFunc>) -> LinearMap {
    let mut m = LinearMap::zero(9);
    m.set(9, 3, c(bind, "c936"));
    m
}

pub fn t4(k: u32, bind: &BTreeMap<String, RatFunc>) -> Result<LinearMap, ExactError> {
    let mut m = LinearMap::zero(9);
    m.set(3, 1, p0_pow(k + 1).inv()?);
    m.set(7, 5, c(bind, "c734"));
    m.set(8, 5, c(bind, "c834"));
    m.set(8, 6, c(bind, "c734").add(&c(bind, "c835")).mul(&p0_pow(1)));
    m.set(9, 5, c(bind, "c934"));
    m.set(9, 6, c(bind, "c834").add(&c(bind, "c935")).mul(&p0_pow(1)));
    m.set(
        9,
        7,
        c(bind, "c734")
            .add(&c(bind, "c835"))
            .add(&c(bind, "c936"))
            .mul(&p0_pow(2)),
    );
    Ok(m)
}

/// Assemble the template conjugating matrix, still carrying both `t`
/// and `p0`; the case's substitution law `t = p0^power` must be
/// applied afterwards.
pub fn assemble_g(
    k: u32,
    bind: &BTreeMap<String, RatFunc>,
    p: &BTreeMap<(usize, usize), RatFunc>,
) -> Result<LinearMap, ExactError> {
    assert!(k >= 2, "the template factor divides by k - 1");
    let correction = t1(bind)
        .scale(&p.get(&(4, 2)).cloned().unwrap_or_else(|| RatFunc::var("p42")))
        .add(&t2(bind).scale(&p.get(&(5, 2)).cloned().unwrap_or_else(|| RatFunc::var("p52"))))
        .add(&t3(bind).scale(&p.get(&(6, 2)).cloned().unwrap_or_else(|| RatFunc::var("p62"))))
        .add(&t4(k, bind)?.scale(&p0_pow(k + 1)));
    let factor = RatFunc::var("t")
        .sub(&p0_pow(k - 1))
        .scale(&(crate::exact::Rational::from_integer(1.into()) / int((k - 1) as i64)));
    Ok(t0(k, p).add(&correction.scale(&factor)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_expr;

    fn sym_p() -> BTreeMap<(usize, usize), RatFunc> {
        (4..=9).map(|r| ((r, 2), RatFunc::var(&format!("p{r}2")))).collect()
    }

    #[test]
    fn t0_layout() {
        let m = t0(3, &sym_p());
        assert_eq!(*m.get(3, 3), parse_expr("p0^3").unwrap());
        assert_eq!(*m.get(9, 9), parse_expr("p0^9").unwrap());
        assert_eq!(*m.get(6, 3), parse_expr("p0*p52").unwrap());
        assert_eq!(*m.get(9, 4), parse_expr("p0^2*p72").unwrap());
        assert_eq!(*m.get(8, 6), parse_expr("t^3*p0*p42").unwrap());
        assert!(m.get(3, 2).is_zero());
        assert!(m.is_lower_triangular());
    }

    #[test]
    fn correction_vanishes_when_t_equals_p0_and_k_is_2() {
        let g = assemble_g(2, &BTreeMap::new(), &sym_p()).unwrap();
        let mut law = BTreeMap::new();
        law.insert("t".to_string(), RatFunc::var(P0));
        let g = g.substitute(&law).unwrap();
        let t0 = t0(2, &sym_p()).substitute(&law).unwrap();
        assert_eq!(g, t0);
    }

    #[test]
    fn correction_is_nontrivial_for_k_3() {
        let g = assemble_g(3, &BTreeMap::new(), &sym_p()).unwrap();
        let mut law = BTreeMap::new();
        law.insert("t".to_string(), RatFunc::var(P0));
        let g = g.substitute(&law).unwrap();
        // (9,3) picks up (p0 - p0^2)/2 * (p42 c934 + p52 c935 + p62 c936).
        let expected = parse_expr(
            "p0*p82 + (p0-p0^2)/2*(p42*c934 + p52*c935 + p62*c936)",
        )
        .unwrap();
        assert_eq!(*g.get(9, 3), expected);
        // (3,1) is the T4 contribution with the p0 powers cancelled.
        assert_eq!(*g.get(3, 1), parse_expr("(p0-p0^2)/2").unwrap());
    }
}
