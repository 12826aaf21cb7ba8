//! Deterministic pseudo-random values for seeded trials.
//!
//! A hand-rolled splitmix64 keeps report bytes identical across platforms
//! and dependency upgrades; trials are seeded per index so parallel and
//! sequential sweeps produce the same stream.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{rat, Poly, Rat};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Independent stream for trial `index` under the same master seed.
    pub fn for_trial(seed: u64, index: u64) -> Self {
        let mut base = SplitMix64::new(seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        base.next_u64();
        base
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, n).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + self.below(span) as i64
    }

    /// Rational with numerator in [−height, height] and denominator in
    /// [1, height] coprime to `avoid_prime` when given.
    pub fn rational(&mut self, height: i64, avoid_prime: Option<u64>) -> Rat {
        let num = self.int_in(-height, height);
        let mut den = self.int_in(1, height);
        if let Some(p) = avoid_prime {
            while den % p as i64 == 0 {
                den = self.int_in(1, height);
            }
        }
        rat(num, den)
    }

    /// Polynomial of degree ≤ max_deg with rational coefficients of the
    /// given height.
    pub fn poly(&mut self, max_deg: usize, height: i64, avoid_prime: Option<u64>) -> Poly {
        let deg = self.below(max_deg as u64 + 1) as usize;
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| self.rational(height, avoid_prime))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Like `poly` but never the zero polynomial.
    pub fn nonzero_poly(&mut self, max_deg: usize, height: i64, avoid_prime: Option<u64>) -> Poly {
        loop {
            let f = self.poly(max_deg, height, avoid_prime);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// A nonzero rational of the given height.
    pub fn nonzero_rational(&mut self, height: i64, avoid_prime: Option<u64>) -> Rat {
        loop {
            let r = self.rational(height, avoid_prime);
            if !r.is_zero() {
                return r;
            }
        }
    }
}
