//! Conjugating families for the `h2` cases. The subdiagonal
//! coefficients `p_{r,s}` of `g_t` are produced twice — by the
//! first-column recurrence and by the closed-form sum over decreasing
//! integer sequences — so each can serve as an oracle for the other.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::DegenError;
use crate::exact::RatFunc;
use crate::lie::LinearMap;

/// Entries of the derivation and the diagonal of `g_t`, abstracted so
/// the same formulas run on concrete case data and on fully symbolic
/// inputs.
pub trait Data {
    /// `d_{i,j}` of the 8x8 derivation matrix, 1-based.
    fn d(&self, i: usize, j: usize) -> RatFunc;
    /// The diagonal entry `p_{s,s}` of `g_t`, for `s` in `1..=9`.
    fn diag(&self, s: usize) -> RatFunc;
}

/// Concrete case data: an 8x8 lower-triangular derivation whose
/// diagonal is integer, giving `g_t` diagonal `(t, t^{d11}, ..., t^{d88})`.
pub struct CaseData {
    d: Vec<Vec<RatFunc>>,
    diag_exp: Vec<i64>,
}

impl CaseData {
    pub fn new(d: Vec<Vec<RatFunc>>) -> Result<Self, DegenError> {
        assert_eq!(d.len(), 8);
        let mut diag_exp = Vec::with_capacity(8);
        for (i, row) in d.iter().enumerate() {
            let value = row[i]
                .as_rational()
                .filter(|v| v.is_integer())
                .and_then(|v| v.to_integer().to_i64())
                .ok_or(DegenError::NonIntegerDiagonal(i + 1))?;
            diag_exp.push(value);
        }
        for i in 0..8 {
            for j in (i + 1)..8 {
                if diag_exp[i] == diag_exp[j] {
                    return Err(DegenError::RepeatedDiagonal(i + 1, j + 1));
                }
            }
        }
        Ok(CaseData { d, diag_exp })
    }
}

impl Data for CaseData {
    fn d(&self, i: usize, j: usize) -> RatFunc {
        self.d[i - 1][j - 1].clone()
    }

    fn diag(&self, s: usize) -> RatFunc {
        if s == 1 {
            RatFunc::var("t")
        } else {
            RatFunc::var("t")
                .pow_i64(self.diag_exp[s - 2])
                .expect("t is not zero")
        }
    }
}

/// Fully symbolic data: `d_{i,j}` are indeterminates `dij` and the
/// diagonal entries are opaque indeterminates `qs`. Both the
/// recurrence and the closed form are linear in the diagonal, so this
/// exercises them at full generality.
pub struct SymbolicData;

impl Data for SymbolicData {
    fn d(&self, i: usize, j: usize) -> RatFunc {
        RatFunc::var(&format!("d{i}{j}"))
    }

    fn diag(&self, s: usize) -> RatFunc {
        RatFunc::var(&format!("q{s}"))
    }
}

/// `Y(i,j) = 1 / (t (d_{i-1,i-1} - d_{j-1,j-1}))`.
pub fn y(data: &impl Data, i: usize, j: usize) -> RatFunc {
    RatFunc::var("t")
        .mul(&data.d(i - 1, i - 1).sub(&data.d(j - 1, j - 1)))
        .inv()
        .expect("distinct diagonal entries")
}

/// The three-case factor `f_z(x,y)` for `x > y`.
pub fn f(data: &impl Data, z: usize, x: usize, y: usize) -> RatFunc {
    let t = RatFunc::var("t");
    let d = data.d(x - 1, y - 1);
    if x - y > 1 {
        t.mul(&d)
    } else if z <= y {
        t.mul(&RatFunc::one().add(&d))
    } else {
        RatFunc::one().add(&t.mul(&d))
    }
}

/// First-column recurrence for `p_{r,s}`, `2 <= s < r <= 9`, solved in
/// order of increasing `r - s`:
/// `p_{r,s} = Y(r,s) [ t d_{r-1,s-1}(p_{r,r} - p_{s,s})
///                    + (p_{r,s+1} - t p_{r-1,s})
///                    + sum_i t (d_{i-1,s-1} p_{r,i} - d_{r-1,i-1} p_{i,s}) ]`.
pub fn p_recurrence(data: &impl Data) -> BTreeMap<(usize, usize), RatFunc> {
    p_recurrence_up_to(data, 7)
}

/// Like [`p_recurrence`], but stopping at `r - s <= max_gap`. Fully
/// symbolic inputs grow very quickly with the gap; tests on symbolic
/// data should cap it.
pub fn p_recurrence_up_to(
    data: &impl Data,
    max_gap: usize,
) -> BTreeMap<(usize, usize), RatFunc> {
    let mut p: BTreeMap<(usize, usize), RatFunc> = BTreeMap::new();
    let at = |p: &BTreeMap<(usize, usize), RatFunc>, r: usize, s: usize| -> RatFunc {
        if r == s {
            data.diag(r)
        } else {
            p[&(r, s)].clone()
        }
    };
    let t = RatFunc::var("t");
    for n in 1..=max_gap.min(7) {
        for s in 2..=(9 - n) {
            let r = s + n;
            let mut acc = t
                .mul(&data.d(r - 1, s - 1))
                .mul(&data.diag(r).sub(&data.diag(s)));
            acc = acc.add(&at(&p, r, s + 1).sub(&t.mul(&at(&p, r - 1, s))));
            for i in (s + 1)..r {
                let term = data
                    .d(i - 1, s - 1)
                    .mul(&at(&p, r, i))
                    .sub(&data.d(r - 1, i - 1).mul(&at(&p, i, s)));
                acc = acc.add(&t.mul(&term));
            }
            p.insert((r, s), acc.mul(&y(data, r, s)));
        }
    }
    p
}

/// Strictly decreasing integer sequences of length `k` from `r` to `s`.
pub fn sequences(r: usize, s: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(r > s && k >= 2);
    let interior: Vec<usize> = ((s + 1)..r).rev().collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; k - 2];
    fn rec(
        interior: &[usize],
        pick: &mut Vec<usize>,
        depth: usize,
        start: usize,
        r: usize,
        s: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == pick.len() {
            let mut seq = Vec::with_capacity(pick.len() + 2);
            seq.push(r);
            seq.extend(pick.iter().map(|&i| interior[i]));
            seq.push(s);
            out.push(seq);
            return;
        }
        for i in start..interior.len() {
            pick[depth] = i;
            rec(interior, pick, depth + 1, i + 1, r, s, out);
        }
    }
    rec(&interior, &mut pick, 0, 0, r, s, &mut out);
    out
}

/// `F_i(a) = p_{a_i,a_i} prod_j f_{a_i}(a_j, a_{j+1}) Y_k(a_i, a_j)`,
/// with `Y_k(a_i, a_i) = Y(a_i, a_k)`.
fn f_i(data: &impl Data, seq: &[usize], i: usize) -> RatFunc {
    let k = seq.len();
    let ai = seq[i];
    let mut acc = data.diag(ai);
    for j in 0..(k - 1) {
        acc = acc.mul(&f(data, ai, seq[j], seq[j + 1]));
        let yk = if seq[j] == ai {
            y(data, ai, seq[k - 1])
        } else {
            y(data, ai, seq[j])
        };
        acc = acc.mul(&yk);
    }
    acc
}

/// Closed form: `p_{r,s} = sum over all decreasing sequences from r to
/// s of sum_i F_i`. Computed independently of the recurrence.
pub fn p_closed_form(data: &impl Data, r: usize, s: usize) -> RatFunc {
    let mut acc = RatFunc::zero();
    for k in 2..=(r - s + 1) {
        for seq in sequences(r, s, k) {
            for i in 0..seq.len() {
                acc = acc.add(&f_i(data, &seq, i));
            }
        }
    }
    acc
}

/// Assemble `g_t` for an `h2` case from the recurrence coefficients.
pub fn assemble_g(case: &CaseData) -> LinearMap {
    let p = p_recurrence(case);
    let mut g = LinearMap::zero(9);
    for s in 1..=9 {
        g.set(s, s, case.diag(s));
    }
    for ((r, s), value) in p {
        g.set(r, s, value);
    }
    g
}

/// Number of decreasing sequences of length `k` from `r` to `s`:
/// `binomial(r - s - 1, k - 2)`.
pub fn sequence_count(r: usize, s: usize, k: usize) -> usize {
    let n = r - s - 1;
    let m = k - 2;
    if m > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..m {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, parse_expr};

    #[test]
    fn sequences_enumerated() {
        assert_eq!(sequences(4, 2, 2), vec![vec![4, 2]]);
        assert_eq!(sequences(4, 2, 3), vec![vec![4, 3, 2]]);
        let s53 = sequences(5, 3, 3);
        assert_eq!(s53, vec![vec![5, 4, 3]]);
        assert_eq!(sequences(9, 2, 8).len(), sequence_count(9, 2, 8));
        for k in 2..=8 {
            assert_eq!(sequences(9, 2, k).len(), sequence_count(9, 2, k));
        }
    }

    #[test]
    fn first_subdiagonal_matches_printed_base_case() {
        // p_{s+1,s} = p_{s+1,s+1}(1 + t d_{s,s-1}) Y(s+1,s)
        //           + p_{s,s} t (1 + d_{s,s-1}) Y(s,s+1).
        let data = SymbolicData;
        let p = p_recurrence_up_to(&data, 1);
        for s in 2..=8 {
            let lhs = p[&(s + 1, s)].clone();
            let d = data.d(s, s - 1);
            let one = RatFunc::one();
            let t = RatFunc::var("t");
            let rhs = data
                .diag(s + 1)
                .mul(&one.add(&t.mul(&d)))
                .mul(&y(&data, s + 1, s))
                .add(
                    &data
                        .diag(s)
                        .mul(&t.mul(&one.add(&d)))
                        .mul(&y(&data, s, s + 1)),
                );
            assert_eq!(lhs, rhs, "s = {s}");
        }
    }

    #[test]
    fn closed_form_matches_recurrence_symbolically_small_gap() {
        let data = SymbolicData;
        let p = p_recurrence_up_to(&data, 3);
        for gap in 1..=3 {
            for s in 2..=(9 - gap) {
                let r = s + gap;
                assert_eq!(
                    p[&(r, s)],
                    p_closed_form(&data, r, s),
                    "mismatch at p_{r}{s}"
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence_on_integer_case() {
        // A generic-looking integer derivation with distinct diagonal.
        let mut d = vec![vec![RatFunc::zero(); 8]; 8];
        let diag = [2i64, 3, 4, 5, 6, 7, 8, 9];
        for (i, &v) in diag.iter().enumerate() {
            d[i][i] = RatFunc::from_int(v);
        }
        d[2][1] = RatFunc::from_int(5);
        d[4][2] = parse_expr("-7/2").unwrap();
        d[6][3] = RatFunc::from_int(1);
        d[7][1] = RatFunc::from_int(4);
        let case = CaseData::new(d).unwrap();
        let p = p_recurrence(&case);
        for (&(r, s), value) in &p {
            assert_eq!(*value, p_closed_form(&case, r, s), "p_{r}{s}");
        }
    }

    #[test]
    fn repeated_diagonal_rejected() {
        let mut d = vec![vec![RatFunc::zero(); 8]; 8];
        for i in 0..8 {
            d[i][i] = RatFunc::from_int(if i == 7 { 2 } else { i as i64 + 2 });
        }
        assert!(matches!(
            CaseData::new(d),
            Err(DegenError::RepeatedDiagonal(1, 8))
        ));
    }

    #[test]
    fn non_integer_diagonal_rejected() {
        let mut d = vec![vec![RatFunc::zero(); 8]; 8];
        for i in 0..8 {
            d[i][i] = RatFunc::from_int(i as i64 + 2);
        }
        d[0][0] = RatFunc::from_rational(crate::exact::rat(1, 2));
        assert!(matches!(
            CaseData::new(d),
            Err(DegenError::NonIntegerDiagonal(1))
        ));
    }

    #[test]
    fn assembled_g_is_lower_triangular_with_monomial_diagonal() {
        let mut d = vec![vec![RatFunc::zero(); 8]; 8];
        for i in 0..8 {
            d[i][i] = RatFunc::from_int(i as i64 + 2);
        }
        d[7][5] = RatFunc::from_int(-2); // the shape of one catalog case
        let case = CaseData::new(d).unwrap();
        let g = assemble_g(&case);
        assert!(g.is_lower_triangular());
        assert_eq!(*g.get(1, 1), RatFunc::var("t"));
        assert_eq!(*g.get(9, 9), parse_expr("t^9").unwrap());
        let mut point = BTreeMap::new();
        point.insert("t".to_string(), int(3));
        // Every entry specializes at t = 3 (no hidden poles).
        for r in 1..=9 {
            for c in 1..=r {
                g.get(r, c).eval(&point).unwrap();
            }
        }
    }
}
