//! Polynomials over 𝔽_p. Each value carries its modulus; mixing moduli is a
//! rejected input, never a silent coercion.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Polynomial over 𝔽_p, dense, coefficients in [0, p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn from_coeffs(p: u64, mut coeffs: Vec<u64>) -> Result<Self, Error> {
        if !super::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(FpPoly { p, coeffs })
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn check(&self, other: &FpPoly) -> Result<(), Error> {
        if self.p != other.p {
            Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            coeffs.push((a + b) % self.p);
        }
        FpPoly::from_coeffs(self.p, coeffs)
    }

    pub fn sub(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            coeffs.push((a + self.p - b) % self.p);
        }
        FpPoly::from_coeffs(self.p, coeffs)
    }

    pub fn mul(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpPoly::zero(self.p));
        }
        let mut coeffs = alloc::vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        FpPoly::from_coeffs(self.p, coeffs)
    }

    fn inv_mod(&self, a: u64) -> u64 {
        // Fermat; p is prime and a ≠ 0 mod p
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        result
    }

    pub fn divrem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly), Error> {
        self.check(d)?;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.inv_mod(*d.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() >= dd + 1 {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * lead_inv % self.p;
            quot[k] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + self.p - dc * c % self.p) % self.p;
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((
            FpPoly::from_coeffs(self.p, quot)?,
            FpPoly::from_coeffs(self.p, rem)?,
        ))
    }

    pub fn rem(&self, d: &FpPoly) -> Result<FpPoly, Error> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Rejected(String::from("gcd(0, 0) is undefined")));
        }
        let mut x = self.clone();
        let mut y = other.clone();
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r;
        }
        Ok(x.monic())
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = self.inv_mod(l);
                let coeffs = self.coeffs.iter().map(|&c| c * inv % self.p).collect();
                FpPoly { p: self.p, coeffs }
            }
        }
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 || c != 1 {
                write!(f, "{c}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i == 1 {
                write!(f, "t")?;
            } else if i > 1 {
                write!(f, "t^{i}")?;
            }
        }
        Ok(())
    }
}
