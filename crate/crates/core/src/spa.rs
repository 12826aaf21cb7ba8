//! Rational subsets of the adic spectrum, their localized affinoid rings,
//! and the rank-1 valuation toolkit used to sample points.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::arith::{padic_val, parse_poly, PValuationValue, Poly, Rat, RatFunc};
use crate::error::Error;
use crate::fadic::{
    is_open_ideal, AffinoidPresentation, Carrier, Elem, MultSet, Openness, OpennessCert, RingMap,
    RingPresentation,
};
use crate::zariski::{is_zariskian, ZariskianDecision};

/// Rational subset R(f₁,…,f_r / g) with its openness certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubset {
    pub nums: Vec<Elem>,
    pub den: Elem,
    pub openness: OpennessCert,
}

/// Build a rational subset, deciding openness of (f₁,…,f_r, g) first.
pub fn mk_rational_subset(
    a: &AffinoidPresentation,
    nums: Vec<Elem>,
    den: Elem,
) -> Result<RationalSubset, Error> {
    let mut gens = nums.clone();
    gens.push(den.clone());
    match is_open_ideal(&a.ring, &gens)? {
        Openness::Open(openness) => Ok(RationalSubset {
            nums,
            den,
            openness,
        }),
        Openness::NotOpen(reason) => Err(Error::NotOpen(reason)),
    }
}

/// Parse "R(f1,...,fr/g)" into numerators and denominator.
pub fn parse_subset(src: &str) -> Result<(Vec<Poly>, Poly), Error> {
    let s = src.trim();
    let inner = s
        .strip_prefix("R(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or(Error::Parse {
            pos: 1,
            msg: String::from("expected R(f1,...,fr/g)"),
        })?;
    // the subset separator is the last top-level '/'
    let mut depth = 0usize;
    let mut split = None;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '/' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    let split = split.ok_or(Error::Parse {
        pos: 1,
        msg: String::from("missing '/' separating numerators from the denominator"),
    })?;
    let nums_src = &inner[..split];
    let den_src = &inner[split + 1..];
    let mut nums = Vec::new();
    for part in nums_src.split(',') {
        nums.push(parse_poly(part.trim())?);
    }
    let den = parse_poly(den_src.trim())?;
    Ok((nums, den))
}

/// Rank-1 valuation kinds on the catalogued carriers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationKind {
    /// f ↦ |f(c)|_p for a p-integral rational c.
    EvalPAdic(Rat),
    /// f ↦ p^{−content(f)}: the Gauss point.
    Gauss,
    /// The additive (t−a)-adic order; a tool valuation, kept in a separate
    /// additive encoding.
    TAdicAt(Rat),
    /// Reduce mod p, then the trivial valuation: kernel (p) on ℤ₍ₚ₎.
    ResidueTrivial,
}

/// A rank-1 valuation: a kind plus the grounding prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteValuation {
    pub kind: ValuationKind,
    pub p: u64,
}

impl DiscreteValuation {
    pub fn new(kind: ValuationKind, p: u64) -> Result<Self, Error> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let ValuationKind::EvalPAdic(c) = &kind {
            if !padic_val(c, p)?.exp_at_least(0) {
                return Err(Error::Rejected(format!(
                    "evaluation point {c} is not p-integral"
                )));
            }
        }
        Ok(DiscreteValuation { kind, p })
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ValuationKind::EvalPAdic(c) => format!("eval({c})"),
            ValuationKind::Gauss => String::from("gauss"),
            ValuationKind::TAdicAt(a) => format!("t-adic({a})"),
            ValuationKind::ResidueTrivial => String::from("residue-trivial"),
        }
    }
}

/// Valuation output: multiplicative values for spectrum points, a separate
/// additive encoding for the (t−a)-adic tool valuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValOutput {
    Mult(PValuationValue),
    /// Additive order; `None` is the infinite order of 0.
    Additive(Option<i64>),
}

impl ValOutput {
    pub fn as_mult(&self) -> Result<PValuationValue, Error> {
        match self {
            ValOutput::Mult(v) => Ok(*v),
            ValOutput::Additive(_) => Err(Error::Rejected(String::from(
                "additive valuation used where a spectrum point is needed",
            ))),
        }
    }
}

/// Apply a valuation to a fraction-field element of the carrier.
pub fn val_apply(v: &DiscreteValuation, f: &RatFunc) -> Result<ValOutput, Error> {
    match &v.kind {
        ValuationKind::EvalPAdic(c) => {
            let value = f.eval(c)?;
            Ok(ValOutput::Mult(padic_val(&value, v.p)?))
        }
        ValuationKind::Gauss => Ok(ValOutput::Mult(f.gauss_content(v.p)?)),
        ValuationKind::TAdicAt(a) => {
            if f.is_zero() {
                return Ok(ValOutput::Additive(None));
            }
            Ok(ValOutput::Additive(Some(f.order_at(a)?)))
        }
        ValuationKind::ResidueTrivial => {
            let c = f.as_constant().ok_or_else(|| {
                Error::Rejected(String::from("residue-trivial point lives on constants"))
            })?;
            match padic_val(&c, v.p)? {
                PValuationValue::Zero => Ok(ValOutput::Mult(PValuationValue::Zero)),
                PValuationValue::Exp(e) if e >= 1 => Ok(ValOutput::Mult(PValuationValue::Zero)),
                PValuationValue::Exp(0) => Ok(ValOutput::Mult(PValuationValue::Exp(0))),
                PValuationValue::Exp(_) => Err(Error::Rejected(String::from(
                    "element is outside the p-local carrier",
                ))),
            }
        }
    }
}

/// Membership of a valuation in R(f⃗/g): v(f_i) ≤ v(g) ≠ 0 for all i.
pub fn in_rational_subset(v: &DiscreteValuation, u: &RationalSubset) -> Result<bool, Error> {
    let den = u.den.as_fun()?;
    match val_apply(v, den)? {
        ValOutput::Mult(vg) => {
            if vg.is_zero() {
                return Ok(false);
            }
            for f in &u.nums {
                let vf = val_apply(v, f.as_fun()?)?.as_mult()?;
                if !(vf <= vg) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        ValOutput::Additive(og) => {
            let og = match og {
                Some(o) => o,
                None => return Ok(false),
            };
            for f in &u.nums {
                match val_apply(v, f.as_fun()?)? {
                    // v(f) ≤ v(g) in additive terms: ord(f) ≥ ord(g)
                    ValOutput::Additive(Some(of)) if of >= og => {}
                    ValOutput::Additive(None) => {}
                    _ => return Ok(false),
                }
            }
            Ok(true)
        }
    }
}

/// The localized affinoid ring Z_A(U): the Zariskisation of A(f⃗/g),
/// carried with B⁺ generators (closure not computed) and the canonical
/// adic map from A.
#[derive(Debug, Clone)]
pub struct LocalizedAffinoid {
    pub carrier: RingPresentation,
    pub plus_gens: Vec<Elem>,
    pub map_from_a: RingMap,
}

/// Build Z_A(U): carrier A^▷[1/g] with ring of definition
/// A₀[f₁/g, …, f_r/g] and ideal of definition I₀B₀, then the Zariskisation
/// on top.
pub fn rational_localization(
    a: &AffinoidPresentation,
    u: &RationalSubset,
) -> Result<LocalizedAffinoid, Error> {
    u.openness.verify(
        &u.nums
            .iter()
            .cloned()
            .chain(core::iter::once(u.den.clone()))
            .collect::<Vec<_>>(),
    )?;
    let g = u.den.as_fun()?;
    let g_is_unit = g.as_constant().map_or(false, |c| !c.is_zero());
    // ratios f_i/g extend the ring of definition
    let mut ring_of_def = a.ring.ring_of_def.clone();
    for f in &u.nums {
        let ratio = f.as_fun()?.div(g)?;
        if !ratio.is_zero() && ratio.as_constant() != Some(crate::arith::rat_int(1)) {
            ring_of_def.push(Elem::Fun(ratio));
        }
    }
    let inverted_carrier = if g_is_unit {
        a.ring.carrier.clone()
    } else {
        Carrier::Localized(
            Box::new(a.ring.carrier.clone()),
            MultSet::PowersOf(Box::new(u.den.clone())),
        )
    };
    let zar_carrier = Carrier::Localized(
        Box::new(inverted_carrier),
        MultSet::OnePlusIdeal(a.ring.ideal_of_def.clone()),
    );
    let carrier = RingPresentation::new(
        zar_carrier,
        ring_of_def,
        a.ring.ideal_of_def.clone(),
        a.ring.prime,
    )?;
    let gen_images = match a.ring.carrier.root() {
        Carrier::PolyRingOverQ(_) => vec![Elem::var_t()],
        _ => vec![],
    };
    let map_from_a = RingMap::new(a.ring.clone(), carrier.clone(), gen_images)?;
    if map_from_a.continuity.is_none() {
        return Err(Error::Internal(String::from(
            "rational localization lost its adicity certificate",
        )));
    }
    let mut plus_gens = a.plus_gens.clone();
    for f in &u.nums {
        let ratio = f.as_fun()?.div(g)?;
        plus_gens.push(Elem::Fun(ratio));
    }
    Ok(LocalizedAffinoid {
        carrier,
        plus_gens,
        map_from_a,
    })
}

/// A point of the spectrum realizing a maximal ideal as its kernel.
#[derive(Debug, Clone)]
pub struct KernelPoint {
    pub valuation: DiscreteValuation,
    pub ideal_gen: Elem,
}

/// For Zariskian catalogued rings, produce a valuation whose kernel is the
/// given maximal ideal: evaluation points for (t−c), the residue-trivial
/// point for (p) over ℤ₍ₚ₎. Ideals outside the representable catalogue
/// (e.g. irreducible quadratics, which would need a valuation on a
/// quadratic extension) are reported `Unrepresentable`.
pub fn kernel_point_for_maximal(a: &RingPresentation, m: &Elem) -> Result<KernelPoint, Error> {
    match is_zariskian(a)? {
        ZariskianDecision::Zariskian { .. } => {}
        ZariskianDecision::NotZariskian { witness } => {
            return Err(Error::Unrepresentable(format!(
                "the presentation is not Zariskian (1 + I contains the non-unit {witness}); \
                 no point need realize this ideal"
            )));
        }
    }
    let p = a
        .family()
        .prime()
        .ok_or_else(|| Error::Undecidable(String::from("kernel points need a graded topology")))?;
    match a.carrier.root() {
        Carrier::PolyRingOverQ(_) => {
            let f = m.as_poly()?;
            if f.degree() == Some(1) {
                let c = -(&f.coeff(0) / &f.coeff(1));
                if padic_val(&c, p)?.exp_at_least(0) {
                    let valuation = DiscreteValuation::new(ValuationKind::EvalPAdic(c), p)?;
                    return Ok(KernelPoint {
                        valuation,
                        ideal_gen: m.clone(),
                    });
                }
                return Err(Error::Unrepresentable(format!(
                    "root of {f} is not p-integral; the evaluation point is not continuous"
                )));
            }
            Err(Error::Unrepresentable(format!(
                "maximal ideal ({f}) needs a valuation on an extension field; \
                 outside the rank-1 catalogue"
            )))
        }
        Carrier::PLocalInts(_) => {
            let c = m.as_fun()?.as_constant().ok_or_else(|| {
                Error::Rejected(String::from("expected a constant ideal generator"))
            })?;
            if padic_val(&c, p)? == PValuationValue::Exp(1) {
                let valuation = DiscreteValuation::new(ValuationKind::ResidueTrivial, p)?;
                return Ok(KernelPoint {
                    valuation,
                    ideal_gen: m.clone(),
                });
            }
            Err(Error::Unrepresentable(format!(
                "({c}) is not the maximal ideal of the p-local integers"
            )))
        }
        _ => Err(Error::Unrepresentable(String::from(
            "kernel points only catalogued for polynomial and p-local carriers",
        ))),
    }
}

/// Two-sided kernel check: {f in the sample : v(f) = 0} must be exactly
/// the multiples of the ideal generator.
pub fn verify_kernel(point: &KernelPoint, samples: &[Poly]) -> Result<(), Error> {
    let gen = point.ideal_gen.as_poly()?;
    for f in samples {
        if f.is_zero() {
            continue;
        }
        let in_kernel = val_apply(&point.valuation, &RatFunc::from_poly(f.clone()))?
            .as_mult()?
            .is_zero();
        let divisible = f.divrem(gen)?.1.is_zero();
        if in_kernel != divisible {
            return Err(Error::Internal(format!(
                "kernel mismatch at {f}: v-zero {in_kernel}, divisible {divisible}"
            )));
        }
    }
    Ok(())
}

/// Deterministic valuation sample set: the Gauss point plus evaluation
/// points over a grid of p-integral rationals (±1 first, the cases the
/// covering argument turns on).
pub fn valuation_grid(p: u64, count: usize) -> Result<Vec<DiscreteValuation>, Error> {
    let mut out = vec![DiscreteValuation::new(ValuationKind::Gauss, p)?];
    let push = |c: Rat, out: &mut Vec<DiscreteValuation>| -> Result<(), Error> {
        if padic_val(&c, p)?.exp_at_least(0) {
            out.push(DiscreteValuation::new(ValuationKind::EvalPAdic(c), p)?);
        }
        Ok(())
    };
    push(crate::arith::rat_int(1), &mut out)?;
    push(crate::arith::rat_int(-1), &mut out)?;
    push(crate::arith::rat_int(0), &mut out)?;
    let mut den = 1i64;
    'outer: loop {
        for num in 2..=(count as i64 + 2) {
            for s in [1i64, -1] {
                if out.len() >= count {
                    break 'outer;
                }
                let c = crate::arith::rat(s * num, den);
                push(c, &mut out)?;
            }
        }
        den += 1;
        if den as u64 % p == 0 {
            den += 1;
        }
        if den > 1_000 {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat, rat_int};
    use crate::rng::SplitMix64;
    use crate::zariski::zariskisation;

    fn ncex(p: u64) -> AffinoidPresentation {
        AffinoidPresentation::ncex(p).unwrap()
    }

    fn u1(p: u64) -> RationalSubset {
        mk_rational_subset(
            &ncex(p),
            vec![Elem::from_int(1)],
            Elem::from_poly(parse_poly("t+1").unwrap()),
        )
        .unwrap()
    }

    fn u2(p: u64) -> RationalSubset {
        mk_rational_subset(
            &ncex(p),
            vec![Elem::from_int(1)],
            Elem::from_poly(parse_poly("t-1").unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn subset_construction() {
        let a = ncex(3);
        assert!(mk_rational_subset(
            &a,
            vec![Elem::from_int(1)],
            Elem::from_poly(parse_poly("t^2-1").unwrap()),
        )
        .is_ok());
        // (t, t) has gcd t: not open
        let r = mk_rational_subset(&a, vec![Elem::var_t()], Elem::var_t());
        assert!(matches!(r, Err(Error::NotOpen(_))));
    }

    #[test]
    fn subset_parsing() {
        let (nums, den) = parse_subset("R(1/(t+1))").unwrap();
        assert_eq!(nums, vec![Poly::one()]);
        assert_eq!(den, parse_poly("t+1").unwrap());
        let (nums, den) = parse_subset("R(t, t^2 - 1 / t - 1)").unwrap();
        assert_eq!(nums.len(), 2);
        assert_eq!(den, parse_poly("t-1").unwrap());
        assert!(parse_subset("R(t)").is_err());
    }

    #[test]
    fn val_apply_examples() {
        let gauss = DiscreteValuation::new(ValuationKind::Gauss, 3).unwrap();
        let tp1 = RatFunc::from_poly(parse_poly("t+1").unwrap());
        assert_eq!(
            val_apply(&gauss, &tp1).unwrap(),
            ValOutput::Mult(PValuationValue::Exp(0))
        );
        let ev0 = DiscreteValuation::new(ValuationKind::EvalPAdic(rat_int(0)), 3).unwrap();
        let tm1 = RatFunc::from_poly(parse_poly("t-1").unwrap());
        assert_eq!(
            val_apply(&ev0, &tm1).unwrap(),
            ValOutput::Mult(PValuationValue::Exp(0))
        );
        let tadic = DiscreteValuation::new(ValuationKind::TAdicAt(rat_int(1)), 3).unwrap();
        let f =
            RatFunc::from_poly(&parse_poly("t-1").unwrap().pow(2) * &parse_poly("t+1").unwrap());
        assert_eq!(val_apply(&tadic, &f).unwrap(), ValOutput::Additive(Some(2)));
        // evaluation at a pole errors
        let evm1 = DiscreteValuation::new(ValuationKind::EvalPAdic(rat_int(-1)), 3).unwrap();
        let frac = RatFunc::new(Poly::one(), parse_poly("t+1").unwrap()).unwrap();
        assert!(matches!(val_apply(&evm1, &frac), Err(Error::Pole(_))));
    }

    #[test]
    fn membership_examples() {
        let gauss = DiscreteValuation::new(ValuationKind::Gauss, 3).unwrap();
        assert!(in_rational_subset(&gauss, &u1(3)).unwrap());
        let evm1 = DiscreteValuation::new(ValuationKind::EvalPAdic(rat_int(-1)), 3).unwrap();
        assert!(!in_rational_subset(&evm1, &u1(3)).unwrap());
        assert!(in_rational_subset(&evm1, &u2(3)).unwrap());
    }

    #[test]
    fn additive_membership_path() {
        // the (t−a)-adic tool valuation uses the separate additive
        // encoding: ord(f) ≥ ord(g) plays the role of v(f) ≤ v(g)
        let v = DiscreteValuation::new(ValuationKind::TAdicAt(rat_int(1)), 3).unwrap();
        assert!(in_rational_subset(&v, &u1(3)).unwrap());
        assert!(!in_rational_subset(&v, &u2(3)).unwrap());
    }

    #[test]
    fn valuation_laws_randomized() {
        // multiplicativity and the ultrametric inequality per kind
        let p = 3;
        let kinds = [
            ValuationKind::Gauss,
            ValuationKind::EvalPAdic(rat(1, 2)),
            ValuationKind::EvalPAdic(rat_int(2)),
        ];
        for kind in kinds {
            let v = DiscreteValuation::new(kind, p).unwrap();
            let mut rng = SplitMix64::new(4242);
            for _ in 0..1000 {
                let f = RatFunc::from_poly(rng.poly(4, 10, None));
                let g = RatFunc::from_poly(rng.poly(4, 10, None));
                let vf = val_apply(&v, &f).unwrap().as_mult().unwrap();
                let vg = val_apply(&v, &g).unwrap().as_mult().unwrap();
                let vfg = val_apply(&v, &(&f * &g)).unwrap().as_mult().unwrap();
                assert_eq!(vfg, vf.mul(vg));
                let vsum = val_apply(&v, &(&f + &g)).unwrap().as_mult().unwrap();
                // |f+g| ≤ max(|f|, |g|), with equality when they differ
                assert!(vsum <= vf.max(vg));
                if vf != vg {
                    assert_eq!(vsum, vf.max(vg));
                }
            }
        }
    }

    #[test]
    fn localization_of_u1_matches_display() {
        let a = ncex(3);
        let loc = rational_localization(&a, &u1(3)).unwrap();
        // carrier: (1 + (3))⁻¹ (ℚ[t][1/(t+1)])
        match &loc.carrier.carrier {
            Carrier::Localized(inner, MultSet::OnePlusIdeal(gens)) => {
                assert_eq!(gens, &vec![Elem::from_int(3)]);
                match &**inner {
                    Carrier::Localized(base, MultSet::PowersOf(g)) => {
                        assert_eq!(**g, Elem::from_poly(parse_poly("t+1").unwrap()));
                        assert_eq!(**base, Carrier::PolyRingOverQ(crate::fadic::PolyVar::T));
                    }
                    other => panic!("unexpected inner carrier {other:?}"),
                }
            }
            other => panic!("unexpected carrier {other:?}"),
        }
        // ring of definition gained the ratio 1/(t+1)
        assert!(loc.carrier.ring_of_def.contains(&Elem::Fun(
            RatFunc::new(Poly::one(), parse_poly("t+1").unwrap()).unwrap()
        )));
        assert!(loc.map_from_a.continuity.is_some());

        // U = R(1/1): the Zariskisation of A itself
        let whole = mk_rational_subset(&a, vec![Elem::from_int(1)], Elem::from_int(1)).unwrap();
        let loc = rational_localization(&a, &whole).unwrap();
        let z = zariskisation(&a.ring).unwrap();
        assert_eq!(loc.carrier.carrier, z.presentation.carrier);

        // U₁∩U₂ localizes at t²−1 before the Zariskisation wrap
        let u12 = mk_rational_subset(
            &a,
            vec![Elem::from_int(1)],
            Elem::from_poly(parse_poly("t^2-1").unwrap()),
        )
        .unwrap();
        let loc = rational_localization(&a, &u12).unwrap();
        match &loc.carrier.carrier {
            Carrier::Localized(inner, MultSet::OnePlusIdeal(_)) => match &**inner {
                Carrier::Localized(_, MultSet::PowersOf(g)) => {
                    assert_eq!(**g, Elem::from_poly(parse_poly("t^2-1").unwrap()));
                }
                other => panic!("unexpected inner carrier {other:?}"),
            },
            other => panic!("unexpected carrier {other:?}"),
        }
    }

    #[test]
    fn restriction_compatibility_on_nested_subsets() {
        // V = U₁∩U₂ ⊂ U₁: A → Z(U₁) → Z(V) equals A → Z(V) on generators
        let a = ncex(3);
        let u = u1(3);
        let v = mk_rational_subset(
            &a,
            vec![Elem::from_int(1)],
            Elem::from_poly(parse_poly("t^2-1").unwrap()),
        )
        .unwrap();
        let zu = rational_localization(&a, &u).unwrap();
        let zv = rational_localization(&a, &v).unwrap();
        let restriction =
            RingMap::new(zu.carrier.clone(), zv.carrier.clone(), vec![Elem::var_t()]).unwrap();
        assert!(restriction.continuity.is_some());
        let gen = Elem::var_t();
        let via_u = restriction
            .apply(&zu.map_from_a.apply(&gen).unwrap())
            .unwrap();
        let direct = zv.map_from_a.apply(&gen).unwrap();
        assert_eq!(via_u, direct);
    }

    #[test]
    fn kernel_points() {
        // Zariskian n-cex ring: m = (t) realizes as evaluation at 0
        let z = zariskisation(&ncex(3).ring).unwrap();
        let point = kernel_point_for_maximal(&z.presentation, &Elem::var_t()).unwrap();
        assert_eq!(point.valuation.kind, ValuationKind::EvalPAdic(rat_int(0)));
        // two-sided check on generators and 50 random elements
        let mut rng = SplitMix64::new(11);
        let mut samples = vec![Poly::var(), parse_poly("t+1").unwrap()];
        for _ in 0..50 {
            samples.push(rng.poly(6, 10, None));
            // make sure multiples of m are represented
            samples.push(&rng.poly(5, 10, None) * &Poly::var());
        }
        verify_kernel(&point, &samples).unwrap();

        // ℤ₍₃₎: m = (3) realizes as the residue-trivial point
        let zp = RingPresentation::p_local_ints(3).unwrap();
        let point = kernel_point_for_maximal(&zp, &Elem::from_int(3)).unwrap();
        assert_eq!(point.valuation.kind, ValuationKind::ResidueTrivial);
        let v = &point.valuation;
        assert_eq!(
            val_apply(v, &RatFunc::constant(rat_int(6))).unwrap(),
            ValOutput::Mult(PValuationValue::Zero)
        );
        assert_eq!(
            val_apply(v, &RatFunc::constant(rat(2, 7))).unwrap(),
            ValOutput::Mult(PValuationValue::Exp(0))
        );

        // non-Zariskian ℤ with (3): unrepresentable, with the explanation
        let zi = RingPresentation::integers(3).unwrap();
        match kernel_point_for_maximal(&zi, &Elem::from_int(5)) {
            Err(Error::Unrepresentable(msg)) => assert!(msg.contains("not Zariskian")),
            other => panic!("expected Unrepresentable, got {other:?}"),
        }

        // irreducible quadratic: honest refusal
        let z = zariskisation(&ncex(3).ring).unwrap();
        let quad = Elem::from_poly(parse_poly("t^2 - 1 + 3").unwrap());
        assert!(matches!(
            kernel_point_for_maximal(&z.presentation, &quad),
            Err(Error::Unrepresentable(_))
        ));
    }

    #[test]
    fn grid_includes_critical_points() {
        let grid = valuation_grid(3, 30).unwrap();
        assert!(grid.len() >= 30);
        assert_eq!(grid[0].kind, ValuationKind::Gauss);
        assert!(grid
            .contains(&DiscreteValuation::new(ValuationKind::EvalPAdic(rat_int(1)), 3).unwrap()));
        assert!(grid
            .contains(&DiscreteValuation::new(ValuationKind::EvalPAdic(rat_int(-1)), 3).unwrap()));
        // all evaluation points p-integral
        for v in &grid {
            if let ValuationKind::EvalPAdic(c) = &v.kind {
                assert!(padic_val(c, 3).unwrap().exp_at_least(0));
            }
        }
    }
}
