//! Sparse multivariate polynomials over ℚ with a named, ordered variable
//! list. Used for tensor-product carriers, candidate preimages in (X, Y)
//! and denominator certificates in cover-ratio variables.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use super::{padic_val, PValuationValue, Rat, RatFunc};
use crate::error::Error;

/// Terms map exponent vectors (aligned with `vars`) to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let mut m = MPoly::zero(vars);
        if !c.is_zero() {
            m.terms.insert(alloc::vec![0; m.vars.len()], c);
        }
        m
    }

    pub fn var(vars: &[&str], idx: usize) -> Self {
        let mut m = MPoly::zero(vars);
        let mut e = alloc::vec![0; m.vars.len()];
        e[idx] = 1;
        m.terms.insert(e, Rat::one());
        m
    }

    /// Single term c·x^e.
    pub fn monomial(vars: &[&str], exps: &[u32], c: Rat) -> Self {
        let mut m = MPoly::zero(vars);
        if !c.is_zero() {
            m.terms.insert(exps.to_vec(), c);
        }
        m
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max()
    }

    fn same_vars(&self, other: &MPoly) -> Result<(), Error> {
        if self.vars != other.vars {
            return Err(Error::Rejected(String::from(
                "mixed variable contexts in multivariate arithmetic",
            )));
        }
        Ok(())
    }

    fn insert(terms: &mut BTreeMap<Vec<u32>, Rat>, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    terms.remove(&e);
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.same_vars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert(&mut terms, e.clone(), c.clone());
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly, Error> {
        self.same_vars(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert(&mut terms, e, ca * cb);
            }
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut acc = MPoly::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            Rat::one(),
        );
        for _ in 0..n {
            acc = acc.mul(self).expect("same vars");
        }
        acc
    }

    /// Substitute a rational function for every variable.
    pub fn eval_fun(&self, values: &[RatFunc]) -> Result<RatFunc, Error> {
        if values.len() != self.vars.len() {
            return Err(Error::Rejected(String::from("substitution arity mismatch")));
        }
        let mut acc = RatFunc::zero();
        for (e, c) in &self.terms {
            let mut term = RatFunc::constant(c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = &term * &values[i].pow(exp);
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitute rationals for every variable.
    pub fn eval(&self, values: &[Rat]) -> Result<Rat, Error> {
        if values.len() != self.vars.len() {
            return Err(Error::Rejected(String::from("substitution arity mismatch")));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term *= &values[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Re-express in a new variable context; `map[i]` is the index that the
    /// old variable `i` takes in the new context.
    pub fn map_vars(&self, new_vars: &[&str], map: &[usize]) -> Result<MPoly, Error> {
        if map.len() != self.vars.len() {
            return Err(Error::Rejected(String::from("variable map arity mismatch")));
        }
        let mut out = MPoly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = alloc::vec![0u32; new_vars.len()];
            for (i, &exp) in e.iter().enumerate() {
                ne[map[i]] += exp;
            }
            Self::insert(&mut out.terms, ne, c.clone());
        }
        Ok(out)
    }

    /// Minimum p-adic valuation over all coefficients; `Zero` iff the
    /// polynomial is zero.
    pub fn min_coeff_val(&self, p: u64) -> Result<PValuationValue, Error> {
        let mut best: Option<i64> = None;
        for c in self.terms.values() {
            if let PValuationValue::Exp(v) = padic_val(c, p)? {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
        Ok(best.map_or(PValuationValue::Zero, PValuationValue::Exp))
    }

    /// All coefficients p-integral.
    pub fn is_p_integral(&self, p: u64) -> Result<bool, Error> {
        Ok(self.min_coeff_val(p)?.exp_at_least(0))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_term = e.iter().all(|&x| x == 0);
            if is_const_term || !mag.is_one() {
                write!(f, "{mag}")?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                write!(f, "{}", self.vars[i])?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}
