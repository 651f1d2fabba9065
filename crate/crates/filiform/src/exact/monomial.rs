//! Monomials as sparse exponent maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial in dynamically named indeterminates. Zero exponents are
/// never stored, so equality of the maps is equality of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str) -> Self {
        Monomial::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: u32) -> Self {
        let mut exps = BTreeMap::new();
        if exp > 0 {
            exps.insert(name.to_string(), exp);
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.exps.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.exps.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            *exps.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Exact quotient, or `None` when some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let slot = exps.get_mut(v)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
            if *slot == 0 {
                exps.remove(v);
            }
        }
        Some(Monomial { exps })
    }
}

// Lexicographic order on the exponent vectors over the sorted union of
// variable names. This order is multiplicative, which the exact
// division routine relies on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // The earlier variable name has nonzero exponent on one
                    // side only: that side is lex-greater.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_multiplicative() {
        let x = Monomial::var("x");
        let y = Monomial::var("y");
        assert!(x > y); // x earlier in name order, lex-greater
        let xx = x.mul(&x);
        let xy = x.mul(&y);
        assert!(xx > xy); // multiplying x < y preserved: x*x > y*x
        assert!(xy > y.mul(&y));
    }

    #[test]
    fn div_exact_only() {
        let x2y = Monomial::var_pow("x", 2).mul(&Monomial::var("y"));
        let xy = Monomial::var("x").mul(&Monomial::var("y"));
        assert_eq!(x2y.div(&xy), Some(Monomial::var("x")));
        assert_eq!(xy.div(&x2y), None);
    }
}
