//! Zariskisation as a certified localization: fractions with explicit
//! `1 + h` denominator certificates, unit and topological-nilpotent
//! decisions, and truncated adic inversion.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::arith::{padic_val, Int, MPoly, PValuationValue, Poly, Rat, RatFunc};
use crate::error::Error;
use crate::fadic::{Carrier, Elem, Family, MultSet, RingPresentation};

/// Certificate that a value lies in the extended ideal of definition
/// I₀A₀[ratio generators]: the value together with its expansion as a
/// polynomial in t and the ratio generators whose coefficients all carry at
/// least one I₀ factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCert {
    pub value: RatFunc,
    pub expansion: MPoly,
}

impl IdealCert {
    /// The zero certificate in the given variable context (variable 0 is t).
    pub fn zero(vars: &[&str]) -> Self {
        IdealCert {
            value: RatFunc::zero(),
            expansion: MPoly::zero(vars),
        }
    }

    /// Certificate over t only: h itself is a polynomial with I₀-divisible
    /// coefficients.
    pub fn from_poly(h: Poly) -> Self {
        let mut expansion = MPoly::zero(&["t"]);
        for (i, c) in h.coeffs().iter().enumerate() {
            expansion = expansion
                .add(&MPoly::monomial(&["t"], &[i as u32], c.clone()))
                .expect("same vars");
        }
        IdealCert {
            value: RatFunc::from_poly(h),
            expansion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &IdealCert) -> Result<IdealCert, Error> {
        Ok(IdealCert {
            value: &self.value + &other.value,
            expansion: self.expansion.add(&other.expansion)?,
        })
    }

    pub fn mul(&self, other: &IdealCert) -> Result<IdealCert, Error> {
        Ok(IdealCert {
            value: &self.value * &other.value,
            expansion: self.expansion.mul(&other.expansion)?,
        })
    }

    /// Certificate for h with (1+h) = (1+h₁)(1+h₂): h = h₁ + h₂ + h₁h₂.
    pub fn combine_one_plus(&self, other: &IdealCert) -> Result<IdealCert, Error> {
        self.add(other)?.add(&self.mul(other)?)
    }

    /// Re-check the decomposition: evaluating the expansion at the ratio
    /// substitutions must reproduce the stored value, and every coefficient
    /// must carry at least `level` powers of p.
    pub fn verify(&self, substitutions: &[RatFunc], p: u64, level: i64) -> Result<(), Error> {
        let evaluated = self.expansion.eval_fun(substitutions)?;
        if evaluated != self.value {
            return Err(Error::Internal(String::from(
                "certificate expansion does not reproduce the stored value",
            )));
        }
        if !self.expansion.min_coeff_val(p)?.exp_at_least(level) {
            return Err(Error::Internal(String::from(
                "certificate coefficients are not divisible by the ideal of definition",
            )));
        }
        Ok(())
    }

    /// Embed a certificate into a larger variable context; `map[i]` is the
    /// new index of old variable i.
    pub fn map_vars(&self, new_vars: &[&str], map: &[usize]) -> Result<IdealCert, Error> {
        Ok(IdealCert {
            value: self.value.clone(),
            expansion: self.expansion.map_vars(new_vars, map)?,
        })
    }
}

/// Element of a Zariskian localization: num / (f^n · (1+h)) with the
/// denominator certificate h in the extended ideal of definition and the
/// exact normal form in the fraction field.
///
/// Equality is normal-form equality; on the catalogued integral domains
/// this matches equality in the localized ring.
#[derive(Debug, Clone)]
pub struct LocElement {
    num: RatFunc,
    inv_base: RatFunc,
    inv_exp: u32,
    one_plus: IdealCert,
    normal: RatFunc,
}

impl LocElement {
    pub fn new(
        num: RatFunc,
        inv_base: RatFunc,
        inv_exp: u32,
        one_plus: IdealCert,
    ) -> Result<Self, Error> {
        let one_plus_h = &RatFunc::one() + &one_plus.value;
        if one_plus_h.is_zero() || inv_base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let den = &inv_base.pow(inv_exp) * &one_plus_h;
        let normal = num.div(&den)?;
        Ok(LocElement {
            num,
            inv_base,
            inv_exp,
            one_plus,
            normal,
        })
    }

    /// Plain carrier element a = a / (1·(1+0)) in the t-only context.
    pub fn from_value(a: RatFunc) -> Self {
        LocElement::new(a, RatFunc::one(), 0, IdealCert::zero(&["t"])).expect("denominator 1")
    }

    /// Same, in an arbitrary certificate variable context.
    pub fn from_value_in(a: RatFunc, vars: &[&str]) -> Self {
        LocElement::new(a, RatFunc::one(), 0, IdealCert::zero(vars)).expect("denominator 1")
    }

    pub fn zero() -> Self {
        LocElement::from_value(RatFunc::zero())
    }

    pub fn num(&self) -> &RatFunc {
        &self.num
    }

    pub fn inv_base(&self) -> &RatFunc {
        &self.inv_base
    }

    pub fn inv_exp(&self) -> u32 {
        self.inv_exp
    }

    pub fn one_plus(&self) -> &IdealCert {
        &self.one_plus
    }

    /// The exact normal form num / (fⁿ(1+h)) in ℚ(t).
    pub fn normal_form(&self) -> &RatFunc {
        &self.normal
    }

    pub fn is_zero(&self) -> bool {
        self.normal.is_zero()
    }

    pub fn neg(&self) -> LocElement {
        LocElement {
            num: -&self.num,
            inv_base: self.inv_base.clone(),
            inv_exp: self.inv_exp,
            one_plus: self.one_plus.clone(),
            normal: -&self.normal,
        }
    }

    fn align_exp(&self, n: u32) -> RatFunc {
        // numerator rescaled to denominator exponent n ≥ self.inv_exp
        &self.num * &self.inv_base.pow(n - self.inv_exp)
    }

    pub fn add(&self, other: &LocElement) -> Result<LocElement, Error> {
        if self.inv_base != other.inv_base {
            return Err(Error::Rejected(String::from(
                "elements localized at different denominators",
            )));
        }
        let n = self.inv_exp.max(other.inv_exp);
        let h = self.one_plus.combine_one_plus(&other.one_plus)?;
        let one = RatFunc::one();
        let num = &(&self.align_exp(n) * &(&one + &other.one_plus.value))
            + &(&other.align_exp(n) * &(&one + &self.one_plus.value));
        LocElement::new(num, self.inv_base.clone(), n, h)
    }

    pub fn sub(&self, other: &LocElement) -> Result<LocElement, Error> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LocElement) -> Result<LocElement, Error> {
        if self.inv_base != other.inv_base {
            return Err(Error::Rejected(String::from(
                "elements localized at different denominators",
            )));
        }
        let h = self.one_plus.combine_one_plus(&other.one_plus)?;
        LocElement::new(
            &self.num * &other.num,
            self.inv_base.clone(),
            self.inv_exp + other.inv_exp,
            h,
        )
    }

    /// Multiply by a carrier element.
    pub fn scale_value(&self, s: &RatFunc) -> Result<LocElement, Error> {
        LocElement::new(
            &self.num * s,
            self.inv_base.clone(),
            self.inv_exp,
            self.one_plus.clone(),
        )
    }
}

impl PartialEq for LocElement {
    fn eq(&self, other: &Self) -> bool {
        self.normal == other.normal
    }
}

impl Eq for LocElement {}

impl fmt::Display for LocElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.normal)
    }
}

/// Zariskisation represented through the open pseudo-subring P = I₀A₀,
/// which has the finite presentation the full ideal of topologically
/// nilpotent elements lacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskisationDescriptor {
    pub base: RingPresentation,
    pub inverted_ideal_gens: Vec<Elem>,
    pub presentation: RingPresentation,
}

impl ZariskisationDescriptor {
    pub fn family(&self) -> Family {
        self.base.family()
    }
}

/// Localize at 1 + I₀A₀; topology generated by the images of I₀ᵏA₀.
pub fn zariskisation(a: &RingPresentation) -> Result<ZariskisationDescriptor, Error> {
    match a.family() {
        Family::Discrete => Ok(ZariskisationDescriptor {
            base: a.clone(),
            inverted_ideal_gens: vec![],
            presentation: a.clone(),
        }),
        Family::Zero => Ok(ZariskisationDescriptor {
            base: a.clone(),
            inverted_ideal_gens: vec![],
            presentation: a.clone(),
        }),
        Family::PolyAdic { .. } | Family::IntAdic { .. } => {
            let gens = a.ideal_of_def.clone();
            let presentation = RingPresentation::new(
                Carrier::Localized(
                    alloc::boxed::Box::new(a.carrier.clone()),
                    MultSet::OnePlusIdeal(gens.clone()),
                ),
                a.ring_of_def.clone(),
                a.ideal_of_def.clone(),
                a.prime,
            )?;
            Ok(ZariskisationDescriptor {
                base: a.clone(),
                inverted_ideal_gens: gens,
                presentation,
            })
        }
        Family::Other => Err(Error::Undecidable(String::from(
            "Zariskisation descriptor outside the catalogued family",
        ))),
    }
}

/// Outcome of a unit decision in the Zariskisation.
#[derive(Debug, Clone)]
pub enum UnitDecision {
    /// Invertible, with a witness whose product with the input is exactly 1.
    Unit { inverse: LocElement },
    /// Not invertible, with reduction-mod-p (or valuation) evidence.
    NotUnit { evidence: String },
}

impl UnitDecision {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitDecision::Unit { .. })
    }
}

/// Decide invertibility of a carrier element in the Zariskisation.
///
/// For the ℚ[t] family, write f = p^v · f̃ with f̃ p-primitive: f is a unit
/// of (1 + pℤ₍ₚ₎[t])⁻¹ℚ[t] iff f ≠ 0 and f̃ mod p is a nonzero constant.
/// Correctness: if f·q/(1+h) = 1 then f·q = 1+h, and contents force
/// content(q) = 0, so reducing mod p gives f̃̄ · q̄ = 1̄ in 𝔽_p[t], making f̃̄
/// a unit, i.e. a nonzero constant; conversely a primitive f̃ with constant
/// reduction c₀ factors as c₀(1 + (f̃−c₀)/c₀) with (f̃−c₀)/c₀ ∈ pℤ₍ₚ₎[t],
/// which the returned witness inverts exactly. Cross-validated in tests
/// against brute-force inverse search of bounded degree.
pub fn is_unit_zar(f: &Elem, z: &ZariskisationDescriptor) -> Result<UnitDecision, Error> {
    let fun = f.as_fun()?;
    if fun.is_zero() {
        return Ok(UnitDecision::NotUnit {
            evidence: String::from("the zero element is never a unit"),
        });
    }
    match z.family() {
        Family::Discrete => {
            // S = {1}: units of the carrier itself
            match fun.as_constant() {
                Some(c) if !c.is_zero() => {
                    let inverse = LocElement::from_value(RatFunc::constant(c.recip()));
                    Ok(UnitDecision::Unit { inverse })
                }
                _ => Ok(UnitDecision::NotUnit {
                    evidence: format!("{fun} is not a nonzero constant of the discrete carrier"),
                }),
            }
        }
        Family::PolyAdic { p, .. } => {
            let poly = f.as_poly()?;
            let c = match poly_content_exp(poly, p)? {
                Some(c) => c,
                None => unreachable!("nonzero checked"),
            };
            let scale = Rat::from_integer(Int::from(p)).pow(-c as i32);
            let prim = poly.scale(&scale);
            let reduced = prim.reduce_mod_p(p)?;
            if !reduced.is_constant() {
                return Ok(UnitDecision::NotUnit {
                    evidence: format!(
                        "p-primitive part reduces to {reduced} mod {p}, which is not a nonzero \
                         constant"
                    ),
                });
            }
            let c0 = prim.coeff(0);
            debug_assert_eq!(padic_val(&c0, p)?, PValuationValue::Exp(0));
            let h = (&prim - &Poly::constant(c0.clone())).scale(&c0.recip());
            let lead = Rat::from_integer(Int::from(p)).pow(c as i32) * &c0;
            let inverse = LocElement::new(
                RatFunc::constant(lead.recip()),
                RatFunc::one(),
                0,
                IdealCert::from_poly(h),
            )?;
            let product = fun * inverse.normal_form();
            if !product.is_one() {
                return Err(Error::Internal(String::from(
                    "unit witness failed exact re-multiplication",
                )));
            }
            Ok(UnitDecision::Unit { inverse })
        }
        Family::IntAdic { p, level } => {
            let c = fun
                .as_constant()
                .ok_or_else(|| Error::Rejected(String::from("expected a constant element")))?;
            if padic_val(&c, p)? != PValuationValue::Exp(0) {
                return Ok(UnitDecision::NotUnit {
                    evidence: format!("p-adic valuation of {c} is nonzero"),
                });
            }
            let inverse = match z.base.carrier {
                Carrier::PLocalInts(_) => LocElement::from_value(RatFunc::constant(c.recip())),
                _ => {
                    // ℤ: solve c·x ≡ 1 mod p^level, h = c·x − 1
                    let modulus = Int::from(p).pow(level as u32);
                    let (g, x, _) = int_ext_gcd(&c.to_integer(), &modulus);
                    debug_assert!(g == Int::from(1) || g == Int::from(-1));
                    let x = if g == Int::from(-1) { -x } else { x };
                    let h = Rat::from_integer(&c.to_integer() * &x - Int::from(1));
                    LocElement::new(
                        RatFunc::constant(Rat::from_integer(x)),
                        RatFunc::one(),
                        0,
                        IdealCert::from_poly(Poly::constant(h)),
                    )?
                }
            };
            let product = fun * inverse.normal_form();
            if !product.is_one() {
                return Err(Error::Internal(String::from(
                    "unit witness failed exact re-multiplication",
                )));
            }
            Ok(UnitDecision::Unit { inverse })
        }
        Family::Zero => Err(Error::Undecidable(String::from(
            "unit decision in the zero ring is vacuous",
        ))),
        Family::Other => Err(Error::Undecidable(String::from(
            "unit decision outside the catalogued family",
        ))),
    }
}

fn poly_content_exp(f: &Poly, p: u64) -> Result<Option<i64>, Error> {
    Ok(crate::arith::content_val(f, p)?.exponent())
}

fn int_ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    use num_traits::One;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Int::one(), Int::zero());
    let (mut t0, mut t1) = (Int::zero(), Int::one());
    while !r1.is_zero() {
        let (q, r) = num_integer::Integer::div_rem(&r0, &r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    (r0, s0, t0)
}

/// Outcome of the Zariskian-ness decision.
#[derive(Debug, Clone)]
pub enum ZariskianDecision {
    /// All of 1 + I₀A₀ is invertible; the discharge argument is recorded.
    Zariskian { justification: String },
    /// An explicit element of 1 + I₀A₀ that is not a unit of the carrier.
    NotZariskian { witness: Elem },
}

impl ZariskianDecision {
    pub fn is_zariskian(&self) -> bool {
        matches!(self, ZariskianDecision::Zariskian { .. })
    }
}

/// Decide whether a presentation is Zariskian: 1 + I₀A₀ ⊆ A^×.
pub fn is_zariskian(a: &RingPresentation) -> Result<ZariskianDecision, Error> {
    match (&a.carrier, a.family()) {
        (_, Family::Zero) => Ok(ZariskianDecision::Zariskian {
            justification: String::from("the zero ring has 1 = 0 invertible"),
        }),
        (_, Family::Discrete) => Ok(ZariskianDecision::Zariskian {
            justification: String::from("ideal of definition is zero, so 1 + I = {1}"),
        }),
        (Carrier::Localized(_, MultSet::OnePlusIdeal(gens)), _) => {
            // a Zariskisation presentation: (1 + y₁/(1+y₂))⁻¹ = (1+y₂)/(1+y₁+y₂)
            if gens == &a.ideal_of_def {
                Ok(ZariskianDecision::Zariskian {
                    justification: String::from(
                        "Zariskisation presentation: 1 + y1/(1+y2) inverts to (1+y2)/(1+y1+y2), \
                         a fraction with denominator again in 1 + I0*A0",
                    ),
                })
            } else {
                Err(Error::Undecidable(String::from(
                    "localized presentation whose multiplicative set is not 1 + I0*A0",
                )))
            }
        }
        (Carrier::PLocalInts(_), Family::IntAdic { p, .. }) => Ok(ZariskianDecision::Zariskian {
            justification: format!(
                "v_{p}(1 + {p}a/b) = 0 for {p} not dividing b, hence invertible in Z_({p})"
            ),
        }),
        (Carrier::Integers, Family::IntAdic { p, .. }) => {
            let witness = Elem::from_int(1 + p as i64);
            Ok(ZariskianDecision::NotZariskian { witness })
        }
        (Carrier::RationalField, Family::PolyAdic { p, .. }) => Ok(ZariskianDecision::Zariskian {
            justification: format!(
                "1 + {p}a/b has p-adic valuation 0, in particular is a nonzero rational"
            ),
        }),
        (Carrier::PolyRingOverQ(_), Family::PolyAdic { p, .. }) => {
            // 1 + p·t lies in 1 + I₀A₀ but is not a unit of ℚ[t]
            let witness = Elem::from_poly(Poly::from_ints(&[1, p as i64]));
            Ok(ZariskianDecision::NotZariskian { witness })
        }
        (Carrier::Localized(_, MultSet::PowersOf(g)), Family::PolyAdic { p, .. }) => {
            // 1 + p·g·t has no factor dividing g, so it is not a unit of A[1/g]
            let g = g.as_poly()?;
            let witness =
                &(&Poly::var() * g).scale(&crate::arith::rat_int(p as i64)) + &Poly::one();
            Ok(ZariskianDecision::NotZariskian {
                witness: Elem::from_poly(witness),
            })
        }
        _ => Err(Error::Undecidable(String::from(
            "Zariskian-ness outside the catalogued family",
        ))),
    }
}

/// Topological nilpotence of a localized element, decided on the numerator
/// of its normal form: (A^Zar)°° = (S_Zar)⁻¹A°°, and on the catalogued
/// domains membership in A°° is a Gauss-content threshold. Representative
/// independence holds because the content is a valuation of the fraction
/// field.
pub fn is_top_nilpotent_zar(x: &LocElement, z: &ZariskisationDescriptor) -> Result<bool, Error> {
    z.base.domain_witness()?;
    match z.family() {
        Family::Zero => Ok(true),
        Family::Discrete => Ok(x.is_zero()),
        Family::PolyAdic { p, .. } | Family::IntAdic { p, .. } => {
            Ok(x.normal_form().gauss_content(p)?.exp_at_least(1))
        }
        Family::Other => Err(Error::Undecidable(String::from(
            "nilpotence outside the catalogued family",
        ))),
    }
}

/// Truncated geometric series with exact residual certificate.
#[derive(Debug, Clone)]
pub struct TruncatedInverse {
    /// s_N = Σ_{k<N} yᵏ.
    pub series: RatFunc,
    /// (1−y)·s_N − 1, equal to −y^N.
    pub residual: RatFunc,
    /// Certified content valuation of the residual (≥ N·content(y)).
    pub residual_level: i64,
}

/// Partial inversion of 1−y for topologically nilpotent y: the degree-N
/// geometric series, with the exact residual −y^N and its certified level.
pub fn truncated_inverse(
    y: &Elem,
    n: u32,
    z: &ZariskisationDescriptor,
) -> Result<TruncatedInverse, Error> {
    if n == 0 {
        return Err(Error::Rejected(String::from("N must be positive")));
    }
    let p = match z.family().prime() {
        Some(p) => p,
        None => {
            return Err(Error::Undecidable(String::from(
                "truncated inversion needs a graded topology",
            )))
        }
    };
    let y = y.as_fun()?;
    let c = y.gauss_content(p)?;
    if !c.exp_at_least(1) {
        return Err(Error::Rejected(format!(
            "y is not topologically nilpotent (content {c})"
        )));
    }
    let mut series = RatFunc::zero();
    let mut power = RatFunc::one();
    for _ in 0..n {
        series = &series + &power;
        power = &power * y;
    }
    // power is now y^N
    let residual = &(&(&RatFunc::one() - y) * &series) - &RatFunc::one();
    if residual != -&power {
        return Err(Error::Internal(String::from(
            "geometric residual is not -y^N",
        )));
    }
    let expected = match c {
        PValuationValue::Exp(e) => e * n as i64,
        PValuationValue::Zero => {
            // y = 0: the residual is 0, every level holds
            return Ok(TruncatedInverse {
                series,
                residual,
                residual_level: i64::MAX,
            });
        }
    };
    if !residual.gauss_content(p)?.exp_at_least(expected) {
        return Err(Error::Internal(String::from(
            "residual misses its certified I0-level",
        )));
    }
    Ok(TruncatedInverse {
        series,
        residual,
        residual_level: expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat, rat_int};
    use crate::rng::SplitMix64;

    fn qt(p: u64) -> RingPresentation {
        RingPresentation::poly_ring_q(p).unwrap()
    }

    fn zar_qt(p: u64) -> ZariskisationDescriptor {
        zariskisation(&qt(p)).unwrap()
    }

    #[test]
    fn zariskisation_descriptors() {
        let z = zar_qt(3);
        assert_eq!(z.inverted_ideal_gens, vec![Elem::from_int(3)]);
        assert!(matches!(
            z.presentation.carrier,
            Carrier::Localized(_, MultSet::OnePlusIdeal(_))
        ));
        // trivial topology: identity localization
        let triv = zariskisation(&RingPresentation::rational_field_trivial()).unwrap();
        assert!(triv.inverted_ideal_gens.is_empty());
        assert_eq!(triv.presentation, triv.base);
        // ℤ with (p): (1 + pℤ)⁻¹ℤ, and 1+p becomes a unit there
        let zi = zariskisation(&RingPresentation::integers(3).unwrap()).unwrap();
        let dec = is_unit_zar(&Elem::from_int(4), &zi).unwrap();
        match dec {
            UnitDecision::Unit { inverse } => {
                let product = inverse.normal_form() * &RatFunc::constant(rat_int(4));
                assert!(product.is_one());
            }
            UnitDecision::NotUnit { .. } => panic!("1+p must invert in the Zariskisation"),
        }
    }

    /// Brute-force oracle: search q̄ over 𝔽_p[t] of degree ≤ 6 with
    /// f̄·q̄ = 1̄; any lift then witnesses a unit, since f·q − 1 has content
    /// ≥ 1.
    fn brute_force_unit(f: &Poly, p: u64) -> bool {
        use crate::arith::FpPoly;
        let c = match crate::arith::content_val(f, p).unwrap() {
            PValuationValue::Exp(c) => c,
            PValuationValue::Zero => return false,
        };
        let scale = Rat::from_integer(Int::from(p)).pow(-c as i32);
        let reduced = f.scale(&scale).reduce_mod_p(p).unwrap();
        let one = FpPoly::from_coeffs(p, alloc::vec![1]).unwrap();
        // enumerate q̄ of degree ≤ 6
        let total = (p as u64).pow(7);
        for code in 0..total {
            let mut digits = alloc::vec![0u64; 7];
            let mut rest = code;
            for d in digits.iter_mut() {
                *d = rest % p;
                rest /= p;
            }
            let q = FpPoly::from_coeffs(p, digits).unwrap();
            if q.is_zero() {
                continue;
            }
            if q.mul(&reduced).unwrap() == one {
                return true;
            }
        }
        false
    }

    #[test]
    fn unit_decision_examples() {
        let z = zar_qt(3);
        // t² − 1 + p is not a unit: mod-p reduction is nonconstant
        let f = Elem::from_poly(parse_poly("t^2 - 1 + 3").unwrap());
        match is_unit_zar(&f, &z).unwrap() {
            UnitDecision::NotUnit { evidence } => assert!(evidence.contains("not a nonzero")),
            _ => panic!("t^2-1+p must not invert"),
        }
        // 1 + p·t is a unit with certificate h = p·t
        let f = Elem::from_poly(parse_poly("1 + 3*t").unwrap());
        match is_unit_zar(&f, &z).unwrap() {
            UnitDecision::Unit { inverse } => {
                assert_eq!(
                    inverse.one_plus().value,
                    RatFunc::from_poly(parse_poly("3*t").unwrap())
                );
                inverse.one_plus().verify(&[RatFunc::var()], 3, 1).unwrap();
            }
            _ => panic!("1+pt must invert"),
        }
        // constants with zero p-valuation invert
        let f = Elem::from_int(7);
        assert!(is_unit_zar(&f, &z).unwrap().is_unit());
    }

    #[test]
    fn unit_decision_matches_brute_force() {
        let z = zar_qt(3);
        let mut rng = SplitMix64::new(1721);
        for _ in 0..60 {
            let f = rng.nonzero_poly(3, 6, None);
            let decided = is_unit_zar(&Elem::from_poly(f.clone()), &z)
                .unwrap()
                .is_unit();
            assert_eq!(decided, brute_force_unit(&f, 3), "disagreement on {f}");
        }
    }

    #[test]
    fn zariskian_decisions() {
        // ℤ with (3) is not Zariskian; witness 1+3 = 4
        match is_zariskian(&RingPresentation::integers(3).unwrap()).unwrap() {
            ZariskianDecision::NotZariskian { witness } => {
                assert_eq!(witness, Elem::from_int(4));
            }
            _ => panic!("Z must not be Zariskian"),
        }
        assert!(is_zariskian(&RingPresentation::p_local_ints(3).unwrap())
            .unwrap()
            .is_zariskian());
        // ℚ[t] itself is not (1 + pt is no unit), its Zariskisation is
        assert!(!is_zariskian(&qt(3)).unwrap().is_zariskian());
        assert!(is_zariskian(&zar_qt(3).presentation)
            .unwrap()
            .is_zariskian());
    }

    #[test]
    fn nilpotence_in_the_localization() {
        let z = zar_qt(3);
        let one_plus_pt = IdealCert::from_poly(parse_poly("3*t").unwrap());
        // p/(1+pt): numerator content 1
        let x = LocElement::new(
            RatFunc::constant(rat_int(3)),
            RatFunc::one(),
            0,
            one_plus_pt.clone(),
        )
        .unwrap();
        assert!(is_top_nilpotent_zar(&x, &z).unwrap());
        // t/(1+pt): content 0
        let x = LocElement::new(RatFunc::var(), RatFunc::one(), 0, one_plus_pt).unwrap();
        assert!(!is_top_nilpotent_zar(&x, &z).unwrap());
        assert!(is_top_nilpotent_zar(&LocElement::zero(), &z).unwrap());
    }

    #[test]
    fn nilpotence_is_representative_independent() {
        let z = zar_qt(3);
        let mut rng = SplitMix64::new(99);
        for _ in 0..500 {
            let a = rng.poly(3, 9, None);
            let h1 = rng.poly(2, 5, Some(3)).scale(&rat_int(3));
            let h2 = rng.poly(2, 5, Some(3)).scale(&rat_int(3));
            let x1 = LocElement::new(
                RatFunc::from_poly(a.clone()),
                RatFunc::one(),
                0,
                IdealCert::from_poly(h1.clone()),
            )
            .unwrap();
            // same value written over the other denominator:
            // a/(1+h1) = a·(1+h2)/((1+h1)(1+h2))
            let num = &RatFunc::from_poly(a) * &(&RatFunc::one() + &RatFunc::from_poly(h2.clone()));
            let cert = IdealCert::from_poly(h1)
                .combine_one_plus(&IdealCert::from_poly(h2))
                .unwrap();
            let x2 = LocElement::new(num, RatFunc::one(), 0, cert).unwrap();
            assert_eq!(x1, x2);
            assert_eq!(
                is_top_nilpotent_zar(&x1, &z).unwrap(),
                is_top_nilpotent_zar(&x2, &z).unwrap()
            );
        }
    }

    #[test]
    fn loc_element_arithmetic_matches_normal_forms() {
        let mut rng = SplitMix64::new(77);
        for _ in 0..1000 {
            let mk = |rng: &mut SplitMix64| {
                let num = RatFunc::from_poly(rng.poly(3, 8, None));
                let h = IdealCert::from_poly(rng.poly(2, 4, Some(3)).scale(&rat_int(3)));
                LocElement::new(num, RatFunc::one(), 0, h).unwrap()
            };
            let a = mk(&mut rng);
            let b = mk(&mut rng);
            let sum = a.add(&b).unwrap();
            assert_eq!(sum.normal_form(), &(a.normal_form() + b.normal_form()));
            let prod = a.mul(&b).unwrap();
            assert_eq!(prod.normal_form(), &(a.normal_form() * b.normal_form()));
            // (a/s)·s = a
            let s = &a.inv_base().pow(a.inv_exp()) * &(&RatFunc::one() + &a.one_plus().value);
            let back = a.scale_value(&s).unwrap();
            assert_eq!(back.normal_form(), &(&s * a.normal_form()));
        }
    }

    #[test]
    fn truncated_inversion_examples() {
        let z3 = zariskisation(&RingPresentation::integers(3).unwrap()).unwrap();
        let out = truncated_inverse(&Elem::from_int(3), 4, &z3).unwrap();
        assert_eq!(out.series, RatFunc::constant(rat_int(40)));
        assert_eq!(out.residual, RatFunc::constant(rat_int(-81)));
        assert_eq!(out.residual_level, 4);

        let z = zar_qt(3);
        let y = Elem::from_poly(parse_poly("3*t").unwrap());
        let out = truncated_inverse(&y, 2, &z).unwrap();
        assert_eq!(
            out.series,
            RatFunc::from_poly(parse_poly("1 + 3*t").unwrap())
        );
        assert_eq!(
            out.residual,
            RatFunc::from_poly(parse_poly("-9*t^2").unwrap())
        );

        let out = truncated_inverse(&Elem::from_int(0), 5, &z).unwrap();
        assert!(out.series.is_one());
        assert!(out.residual.is_zero());

        // rejected: t is not topologically nilpotent
        assert!(matches!(
            truncated_inverse(&Elem::var_t(), 3, &z),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn truncated_residual_grows_linearly() {
        let z = zar_qt(3);
        let y = Elem::from_poly(parse_poly("3*t + 3").unwrap());
        let mut last = 0;
        for n in 2..=10 {
            let out = truncated_inverse(&y, n, &z).unwrap();
            let got = out.residual.gauss_content(3).unwrap().exponent().unwrap();
            assert!(got >= n as i64);
            assert!(got > last);
            last = got;
        }
    }

    #[test]
    fn certificates_reject_tampering() {
        let good = IdealCert::from_poly(parse_poly("3*t").unwrap());
        good.verify(&[RatFunc::var()], 3, 1).unwrap();
        // content too small
        let bad = IdealCert::from_poly(parse_poly("t").unwrap());
        assert!(bad.verify(&[RatFunc::var()], 3, 1).is_err());
        // value/expansion mismatch
        let mut tampered = IdealCert::from_poly(parse_poly("3*t").unwrap());
        tampered.value = RatFunc::constant(rat(3, 1));
        assert!(tampered.verify(&[RatFunc::var()], 3, 1).is_err());
    }
}
