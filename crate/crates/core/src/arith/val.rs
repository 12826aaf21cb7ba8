//! Rank-1 valuation values and p-adic valuations of rationals.

use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use super::{Int, Poly, Rat};
use crate::error::Error;

/// Value of a rank-1 multiplicative valuation: either the valuation of 0 or
/// `p^{-exponent}` encoded by its exponent.
///
/// The order is the multiplicative one, so `Zero` is below everything and a
/// larger exponent means a smaller value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PValuationValue {
    /// Valuation of 0; absorbing for multiplication, minimum of the order.
    Zero,
    /// The value `p^{-n}` for the stored exponent `n`.
    Exp(i64),
}

impl PValuationValue {
    /// The value 1 = p^0.
    pub fn one() -> Self {
        PValuationValue::Exp(0)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PValuationValue::Zero)
    }

    /// Multiplicativity: v(xy) = v(x)v(y), i.e. exponents add.
    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (PValuationValue::Exp(a), PValuationValue::Exp(b)) => PValuationValue::Exp(a + b),
            _ => PValuationValue::Zero,
        }
    }

    /// v(x) ≤ 1, the power-bounded condition.
    pub fn leq_one(&self) -> bool {
        *self <= PValuationValue::one()
    }

    /// Exponent accessor; `None` on the zero value.
    pub fn exponent(&self) -> Option<i64> {
        match self {
            PValuationValue::Zero => None,
            PValuationValue::Exp(n) => Some(*n),
        }
    }

    /// Additive reading: the valuation exponent is ≥ n. The zero element
    /// passes every threshold (it lies in every ideal power).
    pub fn exp_at_least(&self, n: i64) -> bool {
        match self {
            PValuationValue::Zero => true,
            PValuationValue::Exp(e) => *e >= n,
        }
    }
}

impl PartialOrd for PValuationValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PValuationValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use PValuationValue::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            // p^{-a} ≤ p^{-b} iff a ≥ b
            (Exp(a), Exp(b)) => b.cmp(a),
        }
    }
}

impl fmt::Display for PValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PValuationValue::Zero => write!(f, "0"),
            PValuationValue::Exp(n) => write!(f, "p^-{n}"),
        }
    }
}

/// Primality by trial division; every prime this artifact touches is small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a nonzero integer; `Zero` for 0.
pub fn padic_val_int(n: &Int, p: u64) -> PValuationValue {
    if n.is_zero() {
        return PValuationValue::Zero;
    }
    let p = Int::from(p);
    let mut m = n.abs();
    let mut v: i64 = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, &p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    PValuationValue::Exp(v)
}

/// p-adic valuation of a rational: v(num) − v(den); `Zero` iff q = 0.
pub fn padic_val(q: &Rat, p: u64) -> Result<PValuationValue, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if q.is_zero() {
        return Ok(PValuationValue::Zero);
    }
    let vn = padic_val_int(q.numer(), p).exponent().unwrap_or(0);
    let vd = padic_val_int(q.denom(), p).exponent().unwrap_or(0);
    Ok(PValuationValue::Exp(vn - vd))
}

/// Minimum p-adic valuation over the coefficients (the content valuation);
/// `Zero` iff f = 0. Multiplicative by Gauss's lemma.
pub fn content_val(f: &Poly, p: u64) -> Result<PValuationValue, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut best: Option<i64> = None;
    for c in f.coeffs() {
        if let Ok(PValuationValue::Exp(v)) = padic_val(c, p) {
            best = Some(match best {
                None => v,
                Some(b) => b.min(v),
            });
        }
    }
    Ok(match best {
        None => PValuationValue::Zero,
        Some(v) => PValuationValue::Exp(v),
    })
}

/// Whether a rational is a square in ℚ: nonnegative with square numerator
/// and denominator.
pub fn rat_is_square(r: &Rat) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_negative() {
        return false;
    }
    int_is_square(r.numer()) && int_is_square(r.denom())
}

fn int_is_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &(&s * &s) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn padic_val_examples() {
        // 18 = 2·3²
        assert_eq!(padic_val(&rat_int(18), 3).unwrap(), PValuationValue::Exp(2));
        assert_eq!(padic_val(&rat_int(0), 5).unwrap(), PValuationValue::Zero);
        // p/2 for p = 3
        assert_eq!(padic_val(&rat(3, 2), 3).unwrap(), PValuationValue::Exp(1));
        assert_eq!(padic_val(&rat_int(1), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn value_order_is_multiplicative() {
        let zero = PValuationValue::Zero;
        let one = PValuationValue::one();
        let small = PValuationValue::Exp(3); // p^-3
        let big = PValuationValue::Exp(-2); // p^2
        assert!(zero < small && small < one && one < big);
        assert!(small.leq_one() && one.leq_one() && !big.leq_one());
        assert_eq!(small.mul(big), PValuationValue::Exp(1));
        assert_eq!(zero.mul(big), zero);
    }

    #[test]
    fn primality_trial_division() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn square_detection() {
        assert!(rat_is_square(&rat(4, 9)));
        assert!(rat_is_square(&rat_int(0)));
        assert!(!rat_is_square(&rat(-4, 9)));
        assert!(!rat_is_square(&rat(2, 1)));
    }
}
