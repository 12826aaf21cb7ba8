//! Finite presentations of f-adic and affinoid rings over the catalogued
//! carrier families, with quotient and tensor constructors, openness
//! decisions and content-based membership tests.
//!
//! A presentation is a carrier constructor tree plus generators of a ring
//! of definition A₀ (over ℤ or ℤ₍ₚ₎) and of an ideal of definition I₀.
//! Operations that are undecidable outside the catalogued families return
//! an explicit `Undecidable` error instead of guessing.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{
    bezout, content_val, is_prime, padic_val, poly_gcd, Int, MPoly, PValuationValue, Poly, Rat,
    RatFunc,
};
use crate::error::Error;

/// Carrier element: a fraction-field element for the univariate families,
/// or a multivariate polynomial for tensor carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elem {
    Fun(RatFunc),
    Multi(MPoly),
}

impl Elem {
    pub fn from_poly(p: Poly) -> Self {
        Elem::Fun(RatFunc::from_poly(p))
    }

    pub fn from_rat(c: Rat) -> Self {
        Elem::Fun(RatFunc::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Elem::from_rat(crate::arith::rat_int(n))
    }

    pub fn var_t() -> Self {
        Elem::Fun(RatFunc::var())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Fun(f) => f.is_zero(),
            Elem::Multi(m) => m.is_zero(),
        }
    }

    pub fn as_fun(&self) -> Result<&RatFunc, Error> {
        match self {
            Elem::Fun(f) => Ok(f),
            Elem::Multi(_) => Err(Error::Undecidable(String::from(
                "element lives in a tensor carrier",
            ))),
        }
    }

    pub fn as_poly(&self) -> Result<&Poly, Error> {
        self.as_fun()?.as_poly().ok_or_else(|| {
            Error::Rejected(String::from("element is not polynomial over the carrier"))
        })
    }

    pub fn add(&self, other: &Elem) -> Result<Elem, Error> {
        match (self, other) {
            (Elem::Fun(a), Elem::Fun(b)) => Ok(Elem::Fun(a + b)),
            (Elem::Multi(a), Elem::Multi(b)) => Ok(Elem::Multi(a.add(b)?)),
            _ => Err(Error::Rejected(String::from("mixed element kinds"))),
        }
    }

    pub fn mul(&self, other: &Elem) -> Result<Elem, Error> {
        match (self, other) {
            (Elem::Fun(a), Elem::Fun(b)) => Ok(Elem::Fun(a * b)),
            (Elem::Multi(a), Elem::Multi(b)) => Ok(Elem::Multi(a.mul(b)?)),
            _ => Err(Error::Rejected(String::from("mixed element kinds"))),
        }
    }

    pub fn sub(&self, other: &Elem) -> Result<Elem, Error> {
        match (self, other) {
            (Elem::Fun(a), Elem::Fun(b)) => Ok(Elem::Fun(a - b)),
            (Elem::Multi(a), Elem::Multi(b)) => Ok(Elem::Multi(a.sub(b)?)),
            _ => Err(Error::Rejected(String::from("mixed element kinds"))),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Fun(x) => write!(f, "{x}"),
            Elem::Multi(m) => write!(f, "{m}"),
        }
    }
}

/// Multiplicative-set descriptor for localized carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultSet {
    /// Powers of a single element: A[1/g].
    PowersOf(Box<Elem>),
    /// 1 + (gens)·A₀, the Zariskian localization set.
    OnePlusIdeal(Vec<Elem>),
}

/// Variable label for polynomial-ring carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyVar {
    T,
    X,
    Y,
}

impl PolyVar {
    pub fn name(self) -> &'static str {
        match self {
            PolyVar::T => "t",
            PolyVar::X => "X",
            PolyVar::Y => "Y",
        }
    }
}

/// Carrier constructor tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    RationalField,
    Integers,
    PLocalInts(u64),
    PolyRingOverQ(PolyVar),
    ZeroRing,
    Quotient(Box<Carrier>, Vec<Elem>),
    Localized(Box<Carrier>, MultSet),
    Tensor(Box<Carrier>, Box<Carrier>, Box<Carrier>),
}

impl Carrier {
    /// The innermost non-localized carrier; localizations share its
    /// fraction field and content arithmetic.
    pub fn root(&self) -> &Carrier {
        match self {
            Carrier::Localized(base, _) => base.root(),
            other => other,
        }
    }

    /// Number of carrier generators over the prime ring.
    pub fn generator_count(&self) -> usize {
        match self.root() {
            Carrier::PolyRingOverQ(_) => 1,
            Carrier::Tensor(a, b, _) => a.generator_count() + b.generator_count(),
            Carrier::Quotient(base, _) => base.generator_count(),
            _ => 0,
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::RationalField => write!(f, "Q"),
            Carrier::Integers => write!(f, "Z"),
            Carrier::PLocalInts(p) => write!(f, "Z_({p})"),
            Carrier::PolyRingOverQ(v) => write!(f, "Q[{}]", v.name()),
            Carrier::ZeroRing => write!(f, "0"),
            Carrier::Quotient(base, gens) => {
                write!(f, "{base}/(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Carrier::Localized(base, MultSet::PowersOf(g)) => write!(f, "{base}[1/({g})]"),
            Carrier::Localized(base, MultSet::OnePlusIdeal(gens)) => {
                write!(f, "(1 + (")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "))^-1 {base}")
            }
            Carrier::Tensor(a, b, r) => write!(f, "({a}) tensor_({r}) ({b})"),
        }
    }
}

/// Decidable topology families. `level` is the minimum content valuation of
/// the ideal-of-definition generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// ℚ[t]-like or ℚ carriers with the {pⁿA₀} topology.
    PolyAdic { p: u64, level: i64 },
    /// ℤ or ℤ₍ₚ₎ with the (pⁿ)-topology.
    IntAdic { p: u64, level: i64 },
    /// Ideal of definition zero: the discrete situation, S_Zar = {1}.
    Discrete,
    /// The zero ring.
    Zero,
    /// Outside the decidable fragment.
    Other,
}

impl Family {
    pub fn prime(&self) -> Option<u64> {
        match self {
            Family::PolyAdic { p, .. } | Family::IntAdic { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn level(&self) -> i64 {
        match self {
            Family::PolyAdic { level, .. } | Family::IntAdic { level, .. } => *level,
            _ => 0,
        }
    }
}

/// Finite description of an f-adic ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub carrier: Carrier,
    /// Generators of the ring of definition A₀ over ℤ (or ℤ₍ₚ₎).
    pub ring_of_def: Vec<Elem>,
    /// Generators of the ideal of definition I₀ ⊂ A₀.
    pub ideal_of_def: Vec<Elem>,
    /// The prime p grounding the content valuations, when the topology is
    /// nontrivial.
    pub prime: Option<u64>,
}

impl RingPresentation {
    pub fn new(
        carrier: Carrier,
        ring_of_def: Vec<Elem>,
        ideal_of_def: Vec<Elem>,
        prime: Option<u64>,
    ) -> Result<Self, Error> {
        let pres = RingPresentation {
            carrier,
            ring_of_def,
            ideal_of_def,
            prime,
        };
        pres.validate()?;
        Ok(pres)
    }

    /// ℚ with the p-adic topology (A₀ = ℤ₍ₚ₎, I₀ = (p)).
    pub fn rational_field(p: u64) -> Result<Self, Error> {
        RingPresentation::new(
            Carrier::RationalField,
            vec![],
            vec![Elem::from_int(p as i64)],
            Some(p),
        )
    }

    /// ℚ[t] with the group topology {pⁿℤ₍ₚ₎[t]}.
    pub fn poly_ring_q(p: u64) -> Result<Self, Error> {
        RingPresentation::new(
            Carrier::PolyRingOverQ(PolyVar::T),
            vec![Elem::var_t()],
            vec![Elem::from_int(p as i64)],
            Some(p),
        )
    }

    /// ℚ[t] with the trivial adic topology (I₀ = 0).
    pub fn poly_ring_q_trivial() -> Self {
        RingPresentation {
            carrier: Carrier::PolyRingOverQ(PolyVar::T),
            ring_of_def: vec![Elem::var_t()],
            ideal_of_def: vec![],
            prime: None,
        }
    }

    /// ℚ with the trivial adic topology.
    pub fn rational_field_trivial() -> Self {
        RingPresentation {
            carrier: Carrier::RationalField,
            ring_of_def: vec![],
            ideal_of_def: vec![],
            prime: None,
        }
    }

    /// ℤ with the (p)-adic topology.
    pub fn integers(p: u64) -> Result<Self, Error> {
        RingPresentation::new(
            Carrier::Integers,
            vec![],
            vec![Elem::from_int(p as i64)],
            Some(p),
        )
    }

    /// ℤ₍ₚ₎ with the p-adic topology.
    pub fn p_local_ints(p: u64) -> Result<Self, Error> {
        RingPresentation::new(
            Carrier::PLocalInts(p),
            vec![],
            vec![Elem::from_int(p as i64)],
            Some(p),
        )
    }

    pub fn zero_ring() -> Self {
        RingPresentation {
            carrier: Carrier::ZeroRing,
            ring_of_def: vec![],
            ideal_of_def: vec![],
            prime: None,
        }
    }

    /// Construction-time topology checks: the declared prime is prime, the
    /// ideal generators sit inside the ring of definition and are
    /// topologically nilpotent there. This discharges the multiplication-
    /// continuity criterion for group topologies: every element has finite
    /// content, so x·I₀^m A₀ ⊆ I₀^n A₀ for m = n + max(0, −⌊v(x)⌋).
    pub fn validate(&self) -> Result<(), Error> {
        let p = match self.prime {
            Some(p) if !is_prime(p) => return Err(Error::NotPrime(p)),
            Some(p) => p,
            None => return Ok(()),
        };
        let catalogued = matches!(
            self.carrier.root(),
            Carrier::RationalField
                | Carrier::PolyRingOverQ(_)
                | Carrier::Integers
                | Carrier::PLocalInts(_)
        );
        if !catalogued {
            return Ok(());
        }
        for g in &self.ideal_of_def {
            let f = g.as_fun()?;
            if f.is_zero() {
                continue;
            }
            let c = f.gauss_content(p)?;
            if !c.exp_at_least(1) {
                return Err(Error::Rejected(format!(
                    "ideal-of-definition generator {f} is not topologically nilpotent \
                     (content {c})"
                )));
            }
        }
        for g in &self.ring_of_def {
            let f = g.as_fun()?;
            if !f.is_zero() && !f.gauss_content(p)?.exp_at_least(0) {
                return Err(Error::Rejected(format!(
                    "ring-of-definition generator {f} is not power-bounded"
                )));
            }
        }
        Ok(())
    }

    /// Classify the presentation into a decidable family.
    pub fn family(&self) -> Family {
        if matches!(self.carrier, Carrier::ZeroRing) {
            return Family::Zero;
        }
        if self.ideal_of_def.iter().all(|g| g.is_zero()) {
            return Family::Discrete;
        }
        let p = match self.prime {
            Some(p) if is_prime(p) => p,
            _ => return Family::Other,
        };
        let mut level: Option<i64> = None;
        for g in &self.ideal_of_def {
            let f = match g.as_fun() {
                Ok(f) => f,
                Err(_) => return Family::Other,
            };
            if f.is_zero() {
                continue;
            }
            match f.gauss_content(p) {
                Ok(PValuationValue::Exp(v)) if v >= 1 => {
                    level = Some(level.map_or(v, |l| l.min(v)));
                }
                _ => return Family::Other,
            }
        }
        let level = match level {
            Some(l) => l,
            None => return Family::Discrete,
        };
        match self.carrier.root() {
            Carrier::RationalField | Carrier::PolyRingOverQ(_) => Family::PolyAdic { p, level },
            Carrier::Integers | Carrier::PLocalInts(_) => Family::IntAdic { p, level },
            _ => Family::Other,
        }
    }

    /// Integral-domain certificate for the carrier, with justification.
    pub fn domain_witness(&self) -> Result<&'static str, Error> {
        domain_witness_carrier(&self.carrier)
    }

    /// Kernel of A → A^hd for catalogued domains: the zero ideal, since
    /// (1+y)x = 0 forces x = 0 in a domain.
    pub fn hausdorff_kernel_domain(&self) -> Result<HausdorffKernel, Error> {
        let justification = self.domain_witness()?;
        Ok(HausdorffKernel {
            gens: vec![],
            justification: format!("domain ({justification}): (1+y)x = 0 implies x = 0"),
        })
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)?;
        write!(f, " with I0 = (")?;
        for (i, g) in self.ideal_of_def.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn domain_witness_carrier(c: &Carrier) -> Result<&'static str, Error> {
    match c {
        Carrier::RationalField => Ok("field"),
        Carrier::Integers => Ok("ring of integers"),
        Carrier::PLocalInts(_) => Ok("localization of the integers at a prime"),
        Carrier::PolyRingOverQ(_) => Ok("polynomial ring over a field"),
        Carrier::Localized(base, ms) => {
            let inner = domain_witness_carrier(base)?;
            match ms {
                MultSet::PowersOf(g) if !g.is_zero() => Ok(inner),
                MultSet::PowersOf(_) => Err(Error::Rejected(String::from(
                    "localization at powers of zero",
                ))),
                MultSet::OnePlusIdeal(_) => Ok(inner),
            }
        }
        Carrier::ZeroRing => Err(Error::Undecidable(String::from(
            "the zero ring is not an integral domain",
        ))),
        Carrier::Quotient(..) => Err(Error::Undecidable(String::from(
            "quotient carrier is not a catalogued domain",
        ))),
        Carrier::Tensor(..) => Err(Error::Undecidable(String::from(
            "tensor carrier is not a catalogued domain",
        ))),
    }
}

/// The zero ideal with the reason it is the Hausdorff kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HausdorffKernel {
    pub gens: Vec<Elem>,
    pub justification: String,
}

/// Certificate that an ideal is open: a combination of the generators whose
/// expansion is a nonzero constant, together with the power of I₀ it traps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpennessCert {
    /// Σ combo_i · gen_i = value.
    pub combo: Vec<Elem>,
    /// The nonzero constant the combination reaches (1 for unit ideals).
    pub value: Elem,
    /// n with I₀^n ⊆ (gens), certified through `value`.
    pub power_in_ideal: u32,
}

impl OpennessCert {
    /// Re-expand the stored combination against the generators and demand
    /// it reproduce `value` exactly.
    pub fn verify(&self, gens: &[Elem]) -> Result<(), Error> {
        if self.combo.len() != gens.len() {
            return Err(Error::Internal(String::from("certificate arity mismatch")));
        }
        let mut total = Elem::from_int(0);
        for (c, g) in self.combo.iter().zip(gens) {
            total = total.add(&c.mul(g)?)?;
        }
        if total != self.value {
            return Err(Error::Internal(String::from(
                "openness certificate expansion mismatch",
            )));
        }
        match &self.value {
            Elem::Fun(f) if f.as_constant().map_or(false, |c| !c.is_zero()) => Ok(()),
            _ => Err(Error::Internal(String::from(
                "openness certificate value is not a nonzero constant",
            ))),
        }
    }
}

/// Openness decision with certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Openness {
    Open(OpennessCert),
    NotOpen(String),
}

impl Openness {
    pub fn is_open(&self) -> bool {
        matches!(self, Openness::Open(_))
    }
}

/// Decide openness of the ideal generated by `gens` in the carrier of `a`.
///
/// For ℚ[t] with the {pⁿℤ₍ₚ₎[t]} topology an ideal is open iff it is the
/// unit ideal, iff the gcd of the generators is a nonzero constant; the
/// certificate is a Bézout combination. For ℤ and ℤ₍ₚ₎ an ideal is open iff
/// its integer gcd divides a power of p.
pub fn is_open_ideal(a: &RingPresentation, gens: &[Elem]) -> Result<Openness, Error> {
    match a.family() {
        Family::PolyAdic { .. } => {
            if !matches!(
                a.carrier.root(),
                Carrier::PolyRingOverQ(_) | Carrier::RationalField
            ) {
                return Err(Error::Undecidable(String::from(
                    "openness decided only on the catalogued PID carriers",
                )));
            }
            let mut polys = Vec::with_capacity(gens.len());
            for g in gens {
                polys.push(g.as_poly()?.clone());
            }
            match bezout(&polys) {
                Ok(combo) => {
                    let cert = OpennessCert {
                        combo: combo.into_iter().map(Elem::from_poly).collect(),
                        value: Elem::from_int(1),
                        power_in_ideal: 1,
                    };
                    cert.verify(gens)?;
                    Ok(Openness::Open(cert))
                }
                Err(Error::NoBezout) => {
                    let mut g = Poly::zero();
                    for f in &polys {
                        g = if g.is_zero() {
                            f.clone()
                        } else if f.is_zero() {
                            g
                        } else {
                            poly_gcd(&g, f)?
                        };
                    }
                    Ok(Openness::NotOpen(format!(
                        "gcd of the generators is {g}, not a nonzero constant; no power of p \
                         lies in the ideal"
                    )))
                }
                Err(e) => Err(e),
            }
        }
        Family::IntAdic { p, .. } => {
            let mut ints = Vec::with_capacity(gens.len());
            for g in gens {
                let c = g
                    .as_fun()?
                    .as_constant()
                    .ok_or_else(|| Error::Rejected(String::from("expected integer elements")))?;
                if !c.is_integer() {
                    return Err(Error::Rejected(String::from("expected integer elements")));
                }
                ints.push(c.to_integer());
            }
            match int_bezout_to_p_power(&ints, p) {
                Some((combo, value, n)) => {
                    let cert = OpennessCert {
                        combo: combo
                            .into_iter()
                            .map(|c| Elem::from_rat(Rat::from_integer(c)))
                            .collect(),
                        value: Elem::from_rat(Rat::from_integer(value)),
                        power_in_ideal: n,
                    };
                    cert.verify(gens)?;
                    Ok(Openness::Open(cert))
                }
                None => Ok(Openness::NotOpen(format!(
                    "the integer gcd of the generators does not divide any power of {p}"
                ))),
            }
        }
        Family::Discrete => Err(Error::Undecidable(String::from(
            "openness in the discrete topology needs a unit-ideal test outside the catalogue",
        ))),
        Family::Zero => Ok(Openness::Open(OpennessCert {
            combo: gens.iter().map(|_| Elem::from_int(0)).collect(),
            value: Elem::from_int(0),
            power_in_ideal: 1,
        })),
        Family::Other => Err(Error::Undecidable(String::from(
            "carrier outside the decidable family",
        ))),
    }
}

/// Extended Euclid over ℤ for a generator list; returns a combination whose
/// value g divides p^n, together with that n.
fn int_bezout_to_p_power(gens: &[Int], p: u64) -> Option<(Vec<Int>, Int, u32)> {
    if gens.is_empty() || gens.iter().all(|g| g.is_zero()) {
        return None;
    }
    let mut g = gens[0].clone();
    let mut combo = vec![Int::one()];
    for x in &gens[1..] {
        let (d, u, v) = int_ext_gcd(&g, x);
        for c in &mut combo {
            *c *= &u;
        }
        combo.push(v);
        g = d;
    }
    if g.is_negative() {
        g = -g;
        for c in &mut combo {
            *c = -c.clone();
        }
    }
    // does g divide a power of p?
    let pb = Int::from(p);
    let mut rest = g.clone();
    let mut n = 0u32;
    loop {
        if rest.is_one() {
            break;
        }
        let d = num_integer::Integer::gcd(&rest, &pb);
        if d.is_one() {
            return None;
        }
        rest = rest / d;
        n += 1;
    }
    Some((combo, g, n.max(1)))
}

fn int_ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
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

/// Strip from `den` every factor it shares with `f`, returning the residual
/// cofactor.
pub(crate) fn strip_shared_factors(den: &Poly, f: &Poly) -> Poly {
    if f.is_constant() {
        return den.clone();
    }
    let mut w = den.clone();
    loop {
        if w.is_constant() {
            return w;
        }
        let g = poly_gcd(&w, f).expect("nonzero inputs");
        if g.is_constant() {
            return w;
        }
        w = w.div_exact(&g).expect("gcd divides");
    }
}

fn strip_shared_int_factors(den: &Int, f: &Int) -> Int {
    if f.is_zero() {
        return den.clone();
    }
    let mut w = den.clone();
    loop {
        let g = num_integer::Integer::gcd(&w, f);
        if g.is_one() || g.is_zero() {
            return w;
        }
        w = w / g;
    }
}

/// Membership of `x` in the Zariskian localization
/// `(1 + I₀A₀[1/f_aux])⁻¹ A^▷[1/f_aux]` presented inside the fraction
/// field. `f_aux` is 1 for the global ring.
///
/// For the ℚ[t] family: split the canonical denominator into its f_aux
/// part and a residual w; x is a member iff the p-primitive part of w
/// reduces mod p to a constant times a product of factors of f_aux mod p.
/// For ℤ-like carriers the same with integer gcds: the residual must be
/// coprime to p.
pub fn in_zar_localization(family: Family, x: &RatFunc, f_aux: &Poly) -> Result<bool, Error> {
    match family {
        Family::Zero => Ok(true),
        Family::Discrete => Ok(strip_shared_factors(x.den(), f_aux).is_constant()),
        Family::PolyAdic { p, .. } => {
            if zar_localization_is_zero_ring(family, f_aux)? {
                return Ok(true);
            }
            let w = strip_shared_factors(x.den(), f_aux);
            if w.is_constant() {
                return Ok(true);
            }
            // primitive part of the residual, reduced mod p
            let c = match content_val(&w, p)? {
                PValuationValue::Exp(c) => c,
                PValuationValue::Zero => {
                    return Err(Error::Internal(String::from("zero residual")))
                }
            };
            let scale = Rat::from_integer(Int::from(p)).pow(-c as i32);
            let w_prim = w.scale(&scale);
            let mut r = w_prim.reduce_mod_p(p)?;
            if f_aux.is_constant() {
                return Ok(r.is_constant());
            }
            let c_aux = match content_val(f_aux, p)? {
                PValuationValue::Exp(c) => c,
                PValuationValue::Zero => return Ok(true),
            };
            let scale = Rat::from_integer(Int::from(p)).pow(-c_aux as i32);
            let f_red = f_aux.scale(&scale).reduce_mod_p(p)?;
            loop {
                if r.is_constant() {
                    return Ok(true);
                }
                let g = r.gcd(&f_red)?;
                if g.is_constant() {
                    return Ok(false);
                }
                r = r.divrem(&g)?.0;
            }
        }
        Family::IntAdic { p, .. } => {
            if zar_localization_is_zero_ring(family, f_aux)? {
                return Ok(true);
            }
            let f = f_aux
                .as_constant()
                .ok_or_else(|| Error::Rejected(String::from("expected an integer f_aux")))?
                .to_integer();
            // the reduced fraction's denominator: x is a constant here
            let num_den = match x.as_constant() {
                Some(c) => c.denom().clone(),
                None => return Err(Error::Rejected(String::from("expected a constant element"))),
            };
            let w = strip_shared_int_factors(&num_den, &f);
            Ok(!(w % Int::from(p)).is_zero())
        }
        Family::Other => Err(Error::Undecidable(String::from(
            "membership outside the decidable family",
        ))),
    }
}

/// Whether 0 ∈ 1 + I₀A₀[1/f_aux], i.e. the localized ring collapses.
pub fn zar_localization_is_zero_ring(family: Family, f_aux: &Poly) -> Result<bool, Error> {
    match family {
        Family::Zero => Ok(true),
        Family::Discrete | Family::Other => Ok(false),
        Family::PolyAdic { p, level } | Family::IntAdic { p, level } => {
            if f_aux.is_zero() {
                return Ok(true);
            }
            if level <= 0 {
                return Ok(false);
            }
            Ok(content_val(f_aux, p)?.exp_at_least(1))
        }
    }
}

/// Affinoid presentation: the carrier ring plus generators of the subring
/// of integral (power-bounded) elements A⁺.
///
/// A⁺ is kept as a generator list over the topology base; the carrier tree
/// cannot express proper open subrings, and every check the artifact makes
/// on A⁺ is a power-boundedness check on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinoidPresentation {
    pub ring: RingPresentation,
    pub plus_gens: Vec<Elem>,
}

impl AffinoidPresentation {
    pub fn new(ring: RingPresentation, plus_gens: Vec<Elem>) -> Result<Self, Error> {
        if let Some(p) = ring.family().prime() {
            for g in &plus_gens {
                let f = g.as_fun()?;
                if !f.is_zero() && !f.gauss_content(p)?.exp_at_least(0) {
                    return Err(Error::Rejected(format!(
                        "A+ generator {f} is not power-bounded"
                    )));
                }
            }
        }
        Ok(AffinoidPresentation { ring, plus_gens })
    }

    /// The affinoid ring of the Tate-acyclicity counterexample:
    /// (ℚ[t], ℤ₍ₚ₎[t]).
    pub fn ncex(p: u64) -> Result<Self, Error> {
        AffinoidPresentation::new(RingPresentation::poly_ring_q(p)?, vec![Elem::var_t()])
    }

    /// (ℤ, ℤ) with the (p)-adic topology.
    pub fn integers(p: u64) -> Result<Self, Error> {
        AffinoidPresentation::new(RingPresentation::integers(p)?, vec![])
    }
}

/// Adicity certificate: for each requested power n of the target ideal of
/// definition, a power m with φ(I₀^m A₀) ⊆ J₀^n B₀, witnessed through the
/// contents of the generator images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityCert {
    pub pairs: Vec<(u32, u32)>,
}

/// Ring homomorphism between presentations, described on carrier
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMap {
    pub source: RingPresentation,
    pub target: RingPresentation,
    pub gen_images: Vec<Elem>,
    pub continuity: Option<ContinuityCert>,
}

impl RingMap {
    /// Build a map, re-check well-definedness on quotient relations by
    /// exact normal-form computation, then attach a continuity certificate
    /// when the generator contents support one.
    pub fn new(
        source: RingPresentation,
        target: RingPresentation,
        gen_images: Vec<Elem>,
    ) -> Result<Self, Error> {
        if gen_images.len() != source.carrier.generator_count() {
            return Err(Error::Rejected(format!(
                "expected {} generator images, got {}",
                source.carrier.generator_count(),
                gen_images.len()
            )));
        }
        let mut map = RingMap {
            source,
            target,
            gen_images,
            continuity: None,
        };
        map.check_relations()?;
        map.continuity = map.certify_continuity(4)?;
        Ok(map)
    }

    pub fn identity(pres: &RingPresentation) -> Result<Self, Error> {
        let images = match pres.carrier.root() {
            Carrier::PolyRingOverQ(_) => vec![Elem::var_t()],
            _ => vec![],
        };
        RingMap::new(pres.clone(), pres.clone(), images)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && match self.source.carrier.root() {
                Carrier::PolyRingOverQ(_) => self.gen_images == vec![Elem::var_t()],
                _ => self.gen_images.is_empty(),
            }
    }

    fn check_relations(&self) -> Result<(), Error> {
        if let Carrier::Quotient(_, rels) = &self.source.carrier {
            for rel in rels {
                let image = self.apply(rel)?;
                if !image.is_zero() {
                    return Err(Error::Rejected(format!(
                        "relation {rel} does not map to zero (image {image})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Apply the map to an element expressed over the source carrier.
    pub fn apply(&self, x: &Elem) -> Result<Elem, Error> {
        match x {
            Elem::Fun(f) => {
                if self.gen_images.is_empty() {
                    // prime-ring sources: constants map to constants
                    let c = f.as_constant().ok_or_else(|| {
                        Error::Rejected(String::from("nonconstant element of a constant carrier"))
                    })?;
                    return Ok(Elem::from_rat(c));
                }
                match &self.gen_images[0] {
                    Elem::Fun(img) => Ok(Elem::Fun(f.eval_fun(img)?)),
                    Elem::Multi(img) => {
                        let poly = f.as_poly().ok_or_else(|| {
                            Error::Undecidable(String::from("fraction into a tensor carrier"))
                        })?;
                        let vars: Vec<&str> = img.vars().iter().map(|s| s.as_str()).collect();
                        let mut acc = MPoly::zero(&vars);
                        for (i, c) in poly.coeffs().iter().enumerate() {
                            let term = img.pow(i as u32).scale(c);
                            acc = acc.add(&term)?;
                        }
                        Ok(Elem::Multi(acc))
                    }
                }
            }
            Elem::Multi(_) => Err(Error::Undecidable(String::from(
                "applying maps to tensor elements is not in the decidable fragment",
            ))),
        }
    }

    /// Continuity discipline: the image of each A₀ generator is
    /// power-bounded in the target, and images of I₀ generators have
    /// positive content; then φ(I₀^m A₀) ⊆ J₀^n B₀ for m = ⌈n·L/c⌉.
    fn certify_continuity(&self, depth: u32) -> Result<Option<ContinuityCert>, Error> {
        let tf = self.target.family();
        let (p, target_level) = match (tf.prime(), tf) {
            (Some(p), f) => (p, f.level()),
            (None, Family::Discrete | Family::Zero) => {
                return Ok(Some(ContinuityCert {
                    pairs: (1..=depth).map(|n| (n, n)).collect(),
                }))
            }
            _ => return Ok(None),
        };
        for g in &self.source.ring_of_def {
            let img = self.apply(g)?;
            if let Elem::Fun(f) = &img {
                if !f.is_zero() && !f.gauss_content(p)?.exp_at_least(0) {
                    return Ok(None);
                }
            }
        }
        let mut min_c: Option<i64> = None;
        for g in &self.source.ideal_of_def {
            let img = self.apply(g)?;
            match &img {
                Elem::Fun(f) => {
                    if f.is_zero() {
                        continue;
                    }
                    match f.gauss_content(p)? {
                        PValuationValue::Exp(c) if c >= 1 => {
                            min_c = Some(min_c.map_or(c, |m| m.min(c)));
                        }
                        _ => return Ok(None),
                    }
                }
                Elem::Multi(m) => {
                    if m.is_zero() {
                        continue;
                    }
                    match m.min_coeff_val(p)? {
                        PValuationValue::Exp(c) if c >= 1 => {
                            min_c = Some(min_c.map_or(c, |mn| mn.min(c)));
                        }
                        _ => return Ok(None),
                    }
                }
            }
        }
        let c = match min_c {
            Some(c) => c,
            None => {
                // source ideal of definition is zero; trivially adic
                return Ok(Some(ContinuityCert {
                    pairs: (1..=depth).map(|n| (n, n)).collect(),
                }));
            }
        };
        let pairs = (1..=depth)
            .map(|n| {
                let need = (n as i64) * target_level;
                let m = (need + c - 1) / c;
                (n, m.max(1) as u32)
            })
            .collect();
        Ok(Some(ContinuityCert { pairs }))
    }
}

/// Quotient f-adic ring A/J: quotient carrier with the image topology
/// {π(I₀ⁿA₀)}. Presentations are normalized: J = (0) gives A back, a unit
/// ideal gives the zero ring, and ℚ[t]/(t−c) with c p-integral evaluates to
/// ℚ.
pub fn quotient_fadic(a: &RingPresentation, j: &[Elem]) -> Result<RingPresentation, Error> {
    if j.iter().all(|g| g.is_zero()) {
        return Ok(a.clone());
    }
    if let Ok(Openness::Open(cert)) = is_open_ideal(a, j) {
        if cert.value == Elem::from_int(1) {
            return Ok(RingPresentation::zero_ring());
        }
    }
    if let Carrier::PolyRingOverQ(_) = &a.carrier {
        let nonzero: Vec<&Elem> = j.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.len() == 1 {
            if let Ok(f) = nonzero[0].as_poly() {
                if f.degree() == Some(1) {
                    let root = -(&f.coeff(0) / &f.coeff(1));
                    let p_integral = match a.prime {
                        Some(p) => padic_val(&root, p)?.exp_at_least(0),
                        None => true,
                    };
                    if p_integral {
                        let eval = |e: &Elem| -> Result<Elem, Error> {
                            Ok(Elem::from_rat(e.as_fun()?.eval(&root)?))
                        };
                        let ring_of_def: Vec<Elem> = a
                            .ring_of_def
                            .iter()
                            .map(&eval)
                            .collect::<Result<Vec<_>, _>>()?
                            .into_iter()
                            .filter(|e| !e.is_zero())
                            .collect();
                        let ideal_of_def = a
                            .ideal_of_def
                            .iter()
                            .map(&eval)
                            .collect::<Result<Vec<_>, _>>()?;
                        return RingPresentation::new(
                            Carrier::RationalField,
                            ring_of_def,
                            ideal_of_def,
                            a.prime,
                        );
                    }
                }
            }
        }
    }
    // formal quotient; nested quotients flatten so that iterated quotients
    // equal the quotient by the sum ideal
    let (base, mut rels) = match &a.carrier {
        Carrier::Quotient(base, rels) => ((**base).clone(), rels.clone()),
        other => (other.clone(), vec![]),
    };
    rels.extend(j.iter().filter(|g| !g.is_zero()).cloned());
    RingPresentation::new(
        Carrier::Quotient(Box::new(base), rels),
        a.ring_of_def.clone(),
        a.ideal_of_def.clone(),
        a.prime,
    )
}

/// Topological tensor product of two adic maps out of R: carrier
/// Tensor(A, B, R), ring of definition generated by the images of A₀ and
/// B₀, ideal of definition I₀·(A₀ ⊗ B₀), returned with the two canonical
/// maps.
pub fn tensor_fadic(
    phi: &RingMap,
    psi: &RingMap,
) -> Result<(RingPresentation, RingMap, RingMap), Error> {
    if phi.source != psi.source {
        return Err(Error::Rejected(String::from(
            "tensor legs must share their source",
        )));
    }
    if phi.continuity.is_none() || psi.continuity.is_none() {
        return Err(Error::Rejected(String::from(
            "missing continuity certificate on a tensor leg",
        )));
    }
    let a = &phi.target;
    let b = &psi.target;
    if matches!(a.carrier, Carrier::ZeroRing) || matches!(b.carrier, Carrier::ZeroRing) {
        let zero = RingPresentation::zero_ring();
        let mk = |src: &RingPresentation| RingMap {
            source: src.clone(),
            target: zero.clone(),
            gen_images: (0..src.carrier.generator_count())
                .map(|_| Elem::from_int(0))
                .collect(),
            continuity: Some(ContinuityCert {
                pairs: vec![(1, 1)],
            }),
        };
        return Ok((zero.clone(), mk(a), mk(b)));
    }
    if phi.is_identity() {
        // A ⊗_A B = B along ψ
        return Ok((b.clone(), psi.clone(), RingMap::identity(b)?));
    }
    if psi.is_identity() {
        return Ok((a.clone(), RingMap::identity(a)?, phi.clone()));
    }
    let (va, vb) = match (&a.carrier, &b.carrier) {
        (Carrier::PolyRingOverQ(va), Carrier::PolyRingOverQ(vb)) if va != vb => (*va, *vb),
        _ => {
            return Err(Error::Undecidable(String::from(
                "tensor carriers outside the catalogued families",
            )))
        }
    };
    let vars: [&str; 2] = [va.name(), vb.name()];
    let gen_a = MPoly::var(&vars, 0);
    let gen_b = MPoly::var(&vars, 1);
    let prime = a.prime.or(b.prime).or(phi.source.prime);
    let ring_of_def = vec![Elem::Multi(gen_a.clone()), Elem::Multi(gen_b.clone())];
    let mut ideal_of_def = Vec::new();
    for g in &phi.source.ideal_of_def {
        let c = g
            .as_fun()?
            .as_constant()
            .ok_or_else(|| Error::Undecidable(String::from("nonconstant base ideal generators")))?;
        ideal_of_def.push(Elem::Multi(MPoly::constant(&vars, c)));
    }
    let tensor = RingPresentation {
        carrier: Carrier::Tensor(
            Box::new(a.carrier.clone()),
            Box::new(b.carrier.clone()),
            Box::new(phi.source.carrier.clone()),
        ),
        ring_of_def,
        ideal_of_def,
        prime,
    };
    let cert = || {
        Some(ContinuityCert {
            pairs: vec![(1, 1), (2, 2), (3, 3), (4, 4)],
        })
    };
    let f = RingMap {
        source: a.clone(),
        target: tensor.clone(),
        gen_images: vec![Elem::Multi(gen_a)],
        continuity: cert(),
    };
    let g = RingMap {
        source: b.clone(),
        target: tensor.clone(),
        gen_images: vec![Elem::Multi(gen_b)],
        continuity: cert(),
    };
    Ok((tensor, f, g))
}

/// Two-sided bounded inclusion certificates between the topologies of two
/// presentations of the same carrier (finite evidence for cofinality).
/// Returns, for each n ≤ depth, exponents (n, m) with I₂^m A₂ ⊆ I₁^n A₁ in
/// the forward direction, and symmetrically.
pub fn topology_compatible(
    a: &RingPresentation,
    b: &RingPresentation,
    depth: u32,
) -> Result<(Vec<(u32, u32)>, Vec<(u32, u32)>), Error> {
    let fa = a.family();
    let fb = b.family();
    let (pa, pb) = match (fa.prime(), fb.prime()) {
        (Some(pa), Some(pb)) => (pa, pb),
        _ => {
            return Err(Error::Undecidable(String::from(
                "topology comparison needs content arithmetic",
            )))
        }
    };
    if pa != pb {
        return Err(Error::Undecidable(String::from(
            "topologies graded by different primes",
        )));
    }
    let la = fa.level().max(1);
    let lb = fb.level().max(1);
    let forward = (1..=depth)
        .map(|n| (n, (((n as i64) * la + lb - 1) / lb).max(1) as u32))
        .collect();
    let backward = (1..=depth)
        .map(|n| (n, (((n as i64) * lb + la - 1) / la).max(1) as u32))
        .collect();
    Ok((forward, backward))
}
