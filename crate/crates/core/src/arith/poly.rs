//! Dense univariate polynomials over ℚ in one distinguished variable t.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{FpPoly, Rat, RatFunc};
use crate::error::Error;

/// Polynomial with rational coefficients indexed by degree; the leading
/// coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// The variable t.
    pub fn var() -> Self {
        Poly {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Coefficients from machine integers, lowest degree first.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| super::rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The constant this polynomial is, if it is one.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Monic associate together with the leading coefficient divided out.
    pub fn monic(&self) -> (Poly, Rat) {
        match self.leading() {
            None => (Poly::zero(), Rat::one()),
            Some(l) => {
                let l = l.clone();
                (self.scale(&l.recip()), l)
            }
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a rational function, e.g. t ↦ 1/(t+1).
    pub fn eval_fun(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &RatFunc::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; errors on zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly), Error> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            if !c.is_zero() {
                quot[k] = c.clone();
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - &(dc * &c);
                    rem[k + i] = v;
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() < dd + 1 {
                break;
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly, Error> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Rejected(String::from("inexact polynomial division")))
        }
    }

    /// Multiplicity of the root `a`; 0 if f(a) ≠ 0. Errors on the zero
    /// polynomial, whose order is infinite.
    pub fn order_at(&self, a: &Rat) -> Result<u32, Error> {
        if self.is_zero() {
            return Err(Error::Rejected(String::from(
                "order of the zero polynomial is infinite",
            )));
        }
        let lin = Poly::from_coeffs(vec![-a.clone(), Rat::one()]);
        let mut f = self.clone();
        let mut ord = 0u32;
        while f.eval(a).is_zero() {
            f = f.div_exact(&lin).expect("root found, division is exact");
            ord += 1;
        }
        Ok(ord)
    }

    /// Reduce coefficientwise mod p; errors unless every coefficient is
    /// p-integral.
    pub fn reduce_mod_p(&self, p: u64) -> Result<FpPoly, Error> {
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(rat_mod_p(c, p)?);
        }
        FpPoly::from_coeffs(p, coeffs)
    }

    fn display_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "{var}")?;
            } else if i > 1 {
                write!(f, "{var}^{i}")?;
            }
        }
        Ok(())
    }
}

/// Reduce a p-integral rational mod p.
pub(crate) fn rat_mod_p(c: &Rat, p: u64) -> Result<u64, Error> {
    use num_bigint::BigInt;
    let pb = BigInt::from(p);
    let den_red = c.denom().modpow(&BigInt::from(p - 2), &pb);
    if (c.denom() % &pb).is_zero() {
        return Err(Error::Rejected(String::from(
            "coefficient is not p-integral",
        )));
    }
    let num_red = num_integer::Integer::mod_floor(c.numer(), &pb);
    let r = num_integer::Integer::mod_floor(&(num_red * den_red), &pb);
    let digits = r.to_u64_digits().1;
    Ok(*digits.first().unwrap_or(&0))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(f, "t")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &coeffs[i + j] + &(a * b);
                coeffs[i + j] = v;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Monic gcd by the Euclidean algorithm; rejects (0, 0).
pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly, Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Rejected(String::from("gcd(0, 0) is undefined")));
    }
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let (_, r) = x.divrem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic().0)
}

/// Extended Euclid: returns (g, u, v) with u·a + v·b = g and g monic.
pub fn poly_ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), Error> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::Rejected(String::from("gcd(0, 0) is undefined")));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let (g, lead) = r0.monic();
    let inv = lead.recip();
    Ok((g, s0.scale(&inv), t0.scale(&inv)))
}

/// Bézout coefficients for a family generating the unit ideal: returns g_i
/// with Σ g_i·f_i = 1 exactly, re-verified by expansion before returning.
pub fn bezout(fs: &[Poly]) -> Result<Vec<Poly>, Error> {
    if fs.is_empty() || fs.iter().all(|f| f.is_zero()) {
        return Err(Error::NoBezout);
    }
    let mut g = fs[0].clone();
    let mut coeffs = vec![Poly::one()];
    for f in &fs[1..] {
        if g.is_zero() && f.is_zero() {
            coeffs.push(Poly::zero());
            continue;
        }
        let (d, u, v) = poly_ext_gcd(&g, f)?;
        for c in &mut coeffs {
            *c = &*c * &u;
        }
        coeffs.push(v);
        g = d;
    }
    let c = match g.as_constant() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::NoBezout),
    };
    let inv = c.recip();
    for co in &mut coeffs {
        *co = co.scale(&inv);
    }
    // self-certifying: expand Σ g_i f_i and demand exactly 1
    let mut total = Poly::zero();
    for (co, f) in coeffs.iter().zip(fs) {
        total = &total + &(co * f);
    }
    if total != Poly::one() {
        return Err(Error::Internal(String::from(
            "Bezout expansion did not reproduce 1",
        )));
    }
    Ok(coeffs)
}

/// Whether a degree-2 polynomial is irreducible over ℚ, i.e. its
/// discriminant is not a rational square.
pub fn irreducible_quadratic_over_q(f: &Poly) -> Result<bool, Error> {
    if f.degree() != Some(2) {
        return Err(Error::Rejected(String::from("degree must be exactly 2")));
    }
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &b * &b - super::rat_int(4) * a * c;
    Ok(!super::rat_is_square(&disc))
}
