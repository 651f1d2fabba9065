//! Rational functions with factored denominators.
//!
//! No multivariate gcd is attempted: denominators are kept as a list of
//! monic factors with multiplicities, and cancellation happens only by
//! trial exact division of the numerator by each factor. Equality is
//! decided by cross-multiplication, independent of the factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{ExactError, Poly, Rational};

#[derive(Debug, Clone, Eq)]
pub struct RatFunc {
    num: Poly,
    /// Monic nonconstant factors, sorted, with positive multiplicities.
    /// The overall rational scale is folded into the numerator.
    den: Vec<(Poly, u32)>,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Vec::new(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        RatFunc::from_poly(Poly::var(name))
    }

    /// Build `num / Π factor^mult` in canonical form.
    pub fn new(num: Poly, factors: Vec<(Poly, u32)>) -> Self {
        let mut num = num;
        let mut merged: BTreeMap<Poly, u32> = BTreeMap::new();
        let mut scale = Rational::one();
        for (fac, mult) in factors {
            assert!(!fac.is_zero(), "zero polynomial as denominator factor");
            if mult == 0 {
                continue;
            }
            if let Some(c) = fac.as_constant() {
                for _ in 0..mult {
                    scale *= &c;
                }
                continue;
            }
            let lc = fac.leading().unwrap().1.clone();
            let monic = fac.scale(&(Rational::one() / &lc));
            for _ in 0..mult {
                scale *= &lc;
            }
            *merged.entry(monic).or_insert(0) += mult;
        }
        if !scale.is_one() {
            num = num.scale(&(Rational::one() / scale));
        }
        if num.is_zero() {
            return RatFunc::zero();
        }
        // Cancel by trial exact division.
        let mut den = Vec::new();
        for (fac, mut mult) in merged {
            while mult > 0 {
                match num.exact_div(&fac) {
                    Some(q) => {
                        num = q;
                        mult -= 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                den.push((fac, mult));
            }
        }
        RatFunc { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn den_expanded(&self) -> Poly {
        let mut d = Poly::one();
        for (fac, mult) in &self.den {
            d = d.mul(&fac.pow(*mult));
        }
        d
    }

    /// The constant value, when there are no indeterminates left.
    pub fn as_rational(&self) -> Option<Rational> {
        if !self.den.is_empty() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn vars(&self) -> Vec<String> {
        let mut vs = self.num.vars();
        for (fac, _) in &self.den {
            for v in fac.vars() {
                if !vs.contains(&v) {
                    vs.push(v);
                }
            }
        }
        vs.sort();
        vs
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Least common denominator over the factor multisets.
        let mut lcd: BTreeMap<Poly, u32> = BTreeMap::new();
        for (fac, mult) in self.den.iter().chain(other.den.iter()) {
            let e = lcd.entry(fac.clone()).or_insert(0);
            *e = (*e).max(*mult);
        }
        let cofactor = |own: &[(Poly, u32)]| -> Poly {
            let mut c = Poly::one();
            for (fac, mult) in &lcd {
                let have = own
                    .iter()
                    .find(|(f, _)| f == fac)
                    .map(|(_, m)| *m)
                    .unwrap_or(0);
                c = c.mul(&fac.pow(mult - have));
            }
            c
        };
        let num = self
            .num
            .mul(&cofactor(&self.den))
            .add(&other.num.mul(&cofactor(&other.den)));
        RatFunc::new(num, lcd.into_iter().collect())
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut factors = self.den.clone();
        factors.extend(other.den.iter().cloned());
        RatFunc::new(self.num.mul(&other.num), factors)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RatFunc::new(self.den_expanded(), vec![(self.num.clone(), 1)]))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow_u32(&self, n: u32) -> RatFunc {
        let mut out = RatFunc::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn pow_i64(&self, n: i64) -> Result<RatFunc, ExactError> {
        if n >= 0 {
            Ok(self.pow_u32(n as u32))
        } else {
            self.inv().map(|f| f.pow_u32((-n) as u32))
        }
    }

    /// Simultaneous exact substitution. Errors when a denominator factor
    /// becomes identically zero under the bindings.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, RatFunc>,
    ) -> Result<RatFunc, ExactError> {
        let mut out = self.num.subst(bindings);
        for (fac, mult) in &self.den {
            let sub = fac.subst(bindings);
            if sub.is_zero() {
                return Err(ExactError::SubstitutionPole {
                    factor: fac.to_string(),
                });
            }
            out = out.div(&sub.pow_u32(*mult)).expect("nonzero divisor");
        }
        Ok(out)
    }

    /// Evaluate at a rational point; every indeterminate must be bound.
    pub fn eval(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, ExactError> {
        fn unbound() -> ExactError {
            ExactError::SubstitutionPole {
                factor: "unbound indeterminate".into(),
            }
        }
        let num = self.num.eval(point).ok_or_else(unbound)?;
        let mut den = Rational::one();
        for (fac, mult) in &self.den {
            let v = fac.eval(point).ok_or_else(unbound)?;
            if v.is_zero() {
                return Err(ExactError::SubstitutionPole {
                    factor: fac.to_string(),
                });
            }
            for _ in 0..*mult {
                den *= &v;
            }
        }
        Ok(num / den)
    }

    /// Split into coefficients of powers of `var`. The denominator must be
    /// free of `var`.
    pub fn coeffs_in(&self, var: &str) -> Option<BTreeMap<u32, RatFunc>> {
        for (fac, _) in &self.den {
            if fac.vars().iter().any(|v| v == var) {
                return None;
            }
        }
        let mut groups: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in self.num.terms() {
            let e = m.exponent(var);
            let rest = m.div(&super::Monomial::var_pow(var, e)).unwrap();
            let entry = groups.entry(e).or_insert_with(Poly::zero);
            *entry = entry.add(&Poly::term(rest, c.clone()));
        }
        Some(
            groups
                .into_iter()
                .map(|(e, p)| (e, RatFunc::new(p, self.den.clone())))
                .collect(),
        )
    }
}

impl PartialEq for RatFunc {
    /// Cross-multiplication equality, independent of the factorization.
    fn eq(&self, other: &Self) -> bool {
        self.num
            .mul(&other.den_expanded())
            .sub(&other.num.mul(&self.den_expanded()))
            .is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/")?;
        let composite = self.den.len() > 1;
        if composite {
            write!(f, "(")?;
        }
        let mut first = true;
        for (fac, mult) in &self.den {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let rendered = fac.to_string();
            // A single-term factor can still render as a product or a
            // power (e.g. `a*b`, `a^2`), which binds wrongly after `/`.
            let needs_parens = fac.num_terms() > 1
                || *mult > 1
                || rendered.contains('*')
                || rendered.contains('^');
            if needs_parens {
                write!(f, "({rendered})")?;
            } else {
                write!(f, "{rendered}")?;
            }
            if *mult > 1 {
                write!(f, "^{mult}")?;
            }
        }
        if composite {
            write!(f, ")")?;
        }
        Ok(())
    }
}
