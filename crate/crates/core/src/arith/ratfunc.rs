//! Elements of ℚ(t) in canonical form: reduced fraction with monic
//! denominator, so equality is structural equality.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{poly_gcd, PValuationValue, Poly, Rat};
use crate::error::Error;

/// A rational function num/den with den ≠ 0, gcd(num, den) = 1 and den
/// monic. The zero element is 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = poly_gcd(&num, &den).expect("den nonzero");
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let (den, lead) = den.monic();
        let num = num.scale(&lead.recip());
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        RatFunc::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_constant() && self.num.coeff(0).is_one() && self.den.is_one()
    }

    /// The polynomial this element is, if its denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// The rational this element is, if it is a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn inv(&self) -> Result<RatFunc, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, Error> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a rational point; errors at poles.
    pub fn eval(&self, x: &Rat) -> Result<Rat, Error> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("denominator vanishes at {x}")));
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitute another rational function for t.
    pub fn eval_fun(&self, x: &RatFunc) -> Result<RatFunc, Error> {
        let d = self.den.eval_fun(x);
        if d.is_zero() {
            return Err(Error::Pole(String::from(
                "denominator vanishes identically under substitution",
            )));
        }
        self.num.eval_fun(x).div(&d)
    }

    /// Additive (t−a)-adic order: ord_a(num) − ord_a(den). Errors on 0.
    pub fn order_at(&self, a: &Rat) -> Result<i64, Error> {
        if self.is_zero() {
            return Err(Error::Rejected(String::from("order of 0 is infinite")));
        }
        let on = self.num.order_at(a)? as i64;
        let od = self.den.order_at(a)? as i64;
        Ok(on - od)
    }

    /// Gauss valuation: content of the numerator minus content of the
    /// denominator; `Zero` iff the element is 0. Well defined on ℚ(t) by
    /// Gauss's lemma.
    pub fn gauss_content(&self, p: u64) -> Result<PValuationValue, Error> {
        let cn = super::content_val(&self.num, p)?;
        let cd = super::content_val(&self.den, p)?;
        match (cn, cd) {
            (PValuationValue::Zero, _) => Ok(PValuationValue::Zero),
            (PValuationValue::Exp(a), PValuationValue::Exp(b)) => Ok(PValuationValue::Exp(a - b)),
            _ => Err(Error::Internal(String::from("denominator was zero"))),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}
