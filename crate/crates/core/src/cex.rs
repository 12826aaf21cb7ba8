//! Machine-checked replay of the Tate-acyclicity counterexample: the
//! two-piece cover of Spa(ℚ[t], ℤ₍ₚ₎[t]), the section 1/(1 + p/(t²−1)) on
//! the overlap, exhaustive refutation of preimage candidates on a finite
//! grid, the structural obstruction certificates, and the H¹ ≠ 0 verdict.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::arith::{
    irreducible_quadratic_over_q, is_prime, padic_val, parse_poly, rat_int, FpPoly, MPoly,
    PValuationValue, Poly, Rat, RatFunc,
};
use crate::error::Error;
use crate::fadic::{AffinoidPresentation, Elem};
use crate::presheaf::{CechSetup, Cover, MElem, ModuleDesc, Piece};
use crate::rng::SplitMix64;
use crate::spa::{
    in_rational_subset, mk_rational_subset, val_apply, DiscreteValuation, RationalSubset,
};
use crate::zariski::LocElement;

/// The full context of the counterexample for a fixed prime p ≠ 2.
#[derive(Debug, Clone)]
pub struct CexContext {
    pub p: u64,
    pub affinoid: AffinoidPresentation,
    pub setup: CechSetup,
    pub u1: RationalSubset,
    pub u2: RationalSubset,
    pub u12: RationalSubset,
}

/// Build the counterexample context: U₁ = R(1/(t+1)), U₂ = R(1/(t−1)),
/// U₁∩U₂ = R(1/(t²−1)), with the Čech data of the cover (t+1, t−1).
pub fn cex_setup(p: u64) -> Result<CexContext, Error> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Rejected(String::from(
            "the construction needs p ≠ 2 (it divides by 2)",
        )));
    }
    let affinoid = AffinoidPresentation::ncex(p)?;
    let tp1 = parse_poly("t+1")?;
    let tm1 = parse_poly("t-1")?;
    let t2m1 = parse_poly("t^2-1")?;
    let u1 = mk_rational_subset(
        &affinoid,
        vec![Elem::from_int(1)],
        Elem::from_poly(tp1.clone()),
    )?;
    let u2 = mk_rational_subset(
        &affinoid,
        vec![Elem::from_int(1)],
        Elem::from_poly(tm1.clone()),
    )?;
    let u12 = mk_rational_subset(&affinoid, vec![Elem::from_int(1)], Elem::from_poly(t2m1))?;
    let cover = Cover::certify(affinoid.clone(), vec![tp1, tm1])?;
    let setup = CechSetup::new(cover, ModuleDesc::Free(1));
    Ok(CexContext {
        p,
        affinoid,
        setup,
        u1,
        u2,
        u12,
    })
}

impl CexContext {
    /// ρ(s₁, s₂) = s₁|∩ − s₂|∩, computed through the restriction maps.
    pub fn rho(&self, s1: &LocElement, s2: &LocElement) -> Result<LocElement, Error> {
        let r1 = self
            .setup
            .restrict_scalar(s1, Piece::Single(0), Piece::Pair(0, 1))?;
        let r2 = self
            .setup
            .restrict_scalar(s2, Piece::Single(1), Piece::Pair(0, 1))?;
        r1.sub(&r2)
    }

    /// The section 1/(1 + p/(t²−1)) of the overlap ring, with its
    /// certificate h = p/(t²−1) expanded in the pair generators. Normal
    /// form (t²−1)/(t²−1+p).
    pub fn target_element(&self) -> Result<LocElement, Error> {
        let ring = self.setup.sections(Piece::Pair(0, 1))?;
        let h_value = RatFunc::new(Poly::constant(rat_int(self.p as i64)), parse_poly("t^2-1")?)?;
        let cert = ring.certify(&self.setup.cover, &h_value)?;
        let out = LocElement::new(
            RatFunc::one(),
            RatFunc::from_poly(ring.f_aux.clone()),
            0,
            cert,
        )?;
        ring.verify(&out)?;
        Ok(out)
    }
}

/// Per-valuation cover verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheckReport {
    pub points: u32,
    pub in_u1_only: u32,
    pub in_u2_only: u32,
    pub in_both: u32,
    pub failures: Vec<String>,
}

impl CoverCheckReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check Spa A = U₁ ∪ U₂ on a sample of valuations, together with the
/// pointwise implication v(t+1) < 1 ⟹ v(t−1) = 1 behind it.
pub fn cover_check(
    ctx: &CexContext,
    valuations: &[DiscreteValuation],
) -> Result<CoverCheckReport, Error> {
    let mut report = CoverCheckReport {
        points: 0,
        in_u1_only: 0,
        in_u2_only: 0,
        in_both: 0,
        failures: Vec::new(),
    };
    let tp1 = RatFunc::from_poly(parse_poly("t+1")?);
    let tm1 = RatFunc::from_poly(parse_poly("t-1")?);
    let one = PValuationValue::one();
    for v in valuations {
        report.points += 1;
        let m1 = in_rational_subset(v, &ctx.u1)?;
        let m2 = in_rational_subset(v, &ctx.u2)?;
        match (m1, m2) {
            (true, true) => report.in_both += 1,
            (true, false) => report.in_u1_only += 1,
            (false, true) => report.in_u2_only += 1,
            (false, false) => report.failures.push(format!(
                "{} lies in neither piece of the cover",
                v.describe()
            )),
        }
        // the implication the covering proof rests on
        let vp1 = val_apply(v, &tp1)?.as_mult()?;
        if vp1 < one {
            let vm1 = val_apply(v, &tm1)?.as_mult()?;
            if vm1 != one {
                report.failures.push(format!(
                    "{}: v(t+1) < 1 but v(t-1) = {vm1} instead of 1",
                    v.describe()
                ));
            }
        }
    }
    Ok(report)
}

/// A candidate preimage of the target under ρ: sections
/// g_i(t, 1/(t±1)) / (1 + p·f_i(t, 1/(t±1))) with f_i over ℤ₍ₚ₎ and g_i
/// over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePreimage {
    pub f1: MPoly,
    pub f2: MPoly,
    pub g1: MPoly,
    pub g2: MPoly,
}

impl CandidatePreimage {
    /// Polynomials live in (X, Y); the f_i must be p-integral.
    pub fn new(p: u64, f1: MPoly, f2: MPoly, g1: MPoly, g2: MPoly) -> Result<Self, Error> {
        for f in [&f1, &f2] {
            if !f.min_coeff_val(p)?.exp_at_least(0) {
                return Err(Error::Rejected(String::from(
                    "candidate f_i has a non-p-integral coefficient",
                )));
            }
        }
        Ok(CandidatePreimage { f1, f2, g1, g2 })
    }
}

/// Substitution X ↦ t, Y ↦ 1/(t ± 1) for the two pieces.
fn piece_substitution(side: usize) -> Result<[RatFunc; 2], Error> {
    let denom = if side == 0 {
        parse_poly("t+1")?
    } else {
        parse_poly("t-1")?
    };
    Ok([RatFunc::var(), RatFunc::new(Poly::one(), denom)?])
}

/// The value of one side of a candidate: g(t, Y)/(1 + p·f(t, Y)).
fn side_value(p: u64, f: &MPoly, g: &MPoly, side: usize) -> Result<RatFunc, Error> {
    let subs = piece_substitution(side)?;
    let f_val = f.eval_fun(&subs)?;
    let g_val = g.eval_fun(&subs)?;
    let p_const = RatFunc::constant(rat_int(p as i64));
    let denom = &RatFunc::one() + &(&p_const * &f_val);
    if denom.is_zero() {
        return Err(Error::Rejected(String::from(
            "candidate denominator vanishes identically",
        )));
    }
    g_val.div(&denom)
}

/// Outcome of refuting one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationOutcome {
    /// ρ(candidate) − target, certified nonzero.
    Refuted { difference: RatFunc },
    /// The difference vanished: would falsify the non-surjectivity claim.
    Surprise,
}

/// Compute ρ(s₁, s₂) − target exactly in ℚ(t).
pub fn refute_candidate(
    ctx: &CexContext,
    cand: &CandidatePreimage,
) -> Result<RefutationOutcome, Error> {
    let s1 = side_value(ctx.p, &cand.f1, &cand.g1, 0)?;
    let s2 = side_value(ctx.p, &cand.f2, &cand.g2, 1)?;
    let target = ctx.target_element()?;
    let difference = &(&s1 - &s2) - target.normal_form();
    if difference.is_zero() {
        return Ok(RefutationOutcome::Surprise);
    }
    Ok(RefutationOutcome::Refuted { difference })
}

/// The valuation-mismatch schema of the final contradiction: for all
/// p-integral a, b, v(1 + p·a) = 0 while v((p/2)·b) ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport {
    pub grid_points: u32,
    /// Exact exponent of the left-hand side (always 0).
    pub lhs_exponent: i64,
    /// Certified lower bound for the right-hand side exponent.
    pub rhs_lower_bound: i64,
    pub interval_argument: String,
    pub failures: Vec<String>,
}

/// The four structural obstruction certificates, each independently
/// re-verifiable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    /// t²−1+p is irreducible over ℚ (discriminant not a square).
    pub irreducibility: bool,
    /// The image of t²−1 in ℤ₍ₚ₎[t]/(t²−1+p): exactly −p, nonzero.
    pub quotient_domain_witness: Rat,
    /// Nonzero factors multiplying to zero in 𝔽_p[t]/(t²−1).
    pub fp_zero_divisor: (FpPoly, FpPoly),
    pub valuation_mismatch: MismatchReport,
}

impl ObstructionCertificate {
    pub fn all_pass(&self) -> bool {
        self.irreducibility
            && !self.quotient_domain_witness.is_zero()
            && self.valuation_mismatch.failures.is_empty()
    }
}

/// Run the interval argument: with v(a) ≥ 0 an interval computation gives
/// v(p·a) ≥ 1 > 0 = v(1), so the strict ultrametric case forces
/// v(1+pa) = 0 exactly; and v((p/2)b) = v(p) − v(2) + v(b) ≥ 1.
fn mismatch_interval(p: u64) -> (i64, i64, String) {
    // lower bounds as additive exponents; v(a), v(b) ∈ [0, ∞]
    let v_p = 1i64;
    let v_half = -padic_val(&crate::arith::rat(2, 1), p)
        .expect("p prime")
        .exponent()
        .unwrap_or(0); // 0 for p ≠ 2
    let lhs = 0; // min(v(1), v(pa)) with v(pa) ≥ 1 strictly above v(1) = 0
    let rhs = v_p + v_half; // plus v(b) ≥ 0
    let explanation = format!(
        "v(p·a) = 1 + v(a) >= 1 > 0 = v(1), so strict ultrametric equality gives \
         v(1+p·a) = 0; v((p/2)·b) = v(p) - v(2) + v(b) = {v_p} - {} + v(b) >= {rhs}",
        -v_half
    );
    (lhs, rhs, explanation)
}

/// Verify the four obstruction certificates for the context's prime.
pub fn obstruction_certificates(
    ctx: &CexContext,
    grid_points: u32,
    seed: u64,
) -> Result<ObstructionCertificate, Error> {
    let p = ctx.p;
    // (i) irreducibility of t²−1+p over ℚ
    let quad = {
        let mut f = parse_poly("t^2-1")?;
        f = &f + &Poly::constant(rat_int(p as i64));
        f
    };
    let irreducibility = irreducible_quadratic_over_q(&quad)?;
    // (ii) the image of t²−1 in ℤ₍ₚ₎[t]/(t²−1+p) is −p ≠ 0
    let (_, rem) = parse_poly("t^2-1")?.divrem(&quad)?;
    let quotient_domain_witness = rem
        .as_constant()
        .ok_or_else(|| Error::Internal(String::from("remainder must be constant")))?;
    if quotient_domain_witness != rat_int(-(p as i64)) {
        return Err(Error::Internal(String::from("quotient witness is not -p")));
    }
    // (iii) (t−1)(t+1) ≡ 0 in 𝔽_p[t]/(t²−1) with both factors nonzero
    let modulus = FpPoly::from_coeffs(p, vec![p - 1, 0, 1])?;
    let tm1 = FpPoly::from_coeffs(p, vec![p - 1, 1])?;
    let tp1 = FpPoly::from_coeffs(p, vec![1, 1])?;
    let product = tm1.mul(&tp1)?.rem(&modulus)?;
    if !product.is_zero() || tm1.rem(&modulus)?.is_zero() || tp1.rem(&modulus)?.is_zero() {
        return Err(Error::Internal(String::from(
            "zero-divisor certificate failed",
        )));
    }
    // (iv) the valuation-mismatch schema on a sampled grid plus the
    // interval argument
    let (lhs_exponent, rhs_lower_bound, interval_argument) = mismatch_interval(p);
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(seed);
    let half = crate::arith::rat(p as i64, 2);
    for _ in 0..grid_points {
        let a = rng.rational(40, Some(p));
        let b = rng.rational(40, Some(p));
        let lhs = padic_val(
            &(Rat::one() + Rat::from_integer(crate::arith::Int::from(p)) * &a),
            p,
        )?;
        if lhs != PValuationValue::Exp(0) {
            failures.push(format!("v(1+p·{a}) = {lhs}, expected exactly 0"));
        }
        let rhs = padic_val(&(&half * &b), p)?;
        if !rhs.exp_at_least(1) {
            failures.push(format!("v((p/2)·{b}) = {rhs}, expected >= 1"));
        }
    }
    Ok(ObstructionCertificate {
        irreducibility,
        quotient_domain_witness,
        fp_zero_divisor: (tm1, tp1),
        valuation_mismatch: MismatchReport {
            grid_points,
            lhs_exponent,
            rhs_lower_bound,
            interval_argument,
            failures,
        },
    })
}

/// Bounds for the candidate grid: single monomials c·X^αY^β of total
/// degree ≤ degree with rational coefficients of height ≤ height.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub degree: u32,
    pub height: i64,
}

impl GridSpec {
    /// All grid polynomials, zero included.
    pub fn polynomials(&self, p_integral: Option<u64>) -> Vec<MPoly> {
        let vars = &["X", "Y"];
        let mut out = vec![MPoly::zero(vars)];
        let mut coeffs = Vec::new();
        for num in 1..=self.height {
            for den in 1..=self.height {
                for s in [1i64, -1] {
                    let c = crate::arith::rat(s * num, den);
                    if let Some(p) = p_integral {
                        if !padic_val(&c, p).unwrap().exp_at_least(0) {
                            continue;
                        }
                    }
                    if !coeffs.contains(&c) {
                        coeffs.push(c);
                    }
                }
            }
        }
        for a in 0..=self.degree {
            for b in 0..=(self.degree - a) {
                for c in &coeffs {
                    out.push(MPoly::monomial(vars, &[a, b], c.clone()));
                }
            }
        }
        out
    }
}

/// The aggregated H¹ ≠ 0 verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Report {
    pub p: u64,
    pub cover: CoverCheckReport,
    pub obstructions: ObstructionCertificate,
    /// Total candidates decided (full cartesian grid).
    pub candidates_refuted: u64,
    pub surprises: Vec<String>,
    /// Deterministic subsample re-checked symbolically and at three
    /// rational points.
    pub double_entry_checks: u32,
    pub verdict: String,
    pub method: String,
    pub dependency_note: String,
}

impl H1Report {
    pub fn all_pass(&self) -> bool {
        self.cover.all_pass() && self.obstructions.all_pass() && self.surprises.is_empty()
    }
}

/// Decide the whole cartesian candidate grid against an arbitrary target
/// value: s₁ − s₂ = T iff s₁ − T lies in the set of s₂ normal forms, so
/// enumerating the two half-candidate sets settles every pair exactly.
/// Returns the number of pairs decided and the matches found (the real
/// target must yield none; the detector's sensitivity is tested against
/// reachable synthetic targets).
pub fn sweep_candidate_grid(
    ctx: &CexContext,
    grid: GridSpec,
    target_value: &RatFunc,
) -> Result<(u64, Vec<String>), Error> {
    let f_polys = grid.polynomials(Some(ctx.p));
    let g_polys = grid.polynomials(None);
    let mut s1_values: Vec<(usize, usize, RatFunc)> = Vec::new();
    let mut s2_keys: BTreeSet<String> = BTreeSet::new();
    let mut count2 = 0u64;
    for (fi, f) in f_polys.iter().enumerate() {
        for (gi, g) in g_polys.iter().enumerate() {
            let v1 = side_value(ctx.p, f, g, 0)?;
            s1_values.push((fi, gi, v1));
            let v2 = side_value(ctx.p, f, g, 1)?;
            s2_keys.insert(v2.to_string());
            count2 += 1;
        }
    }
    let mut surprises = Vec::new();
    for (fi, gi, v1) in &s1_values {
        let key = (v1 - target_value).to_string();
        if s2_keys.contains(&key) {
            surprises.push(format!(
                "candidate with f1 index {fi}, g1 index {gi} reached the target"
            ));
        }
    }
    Ok((s1_values.len() as u64 * count2, surprises))
}

/// Exhaustively refute the grid and aggregate the certificates.
///
/// The sweep is separated: ρ(s₁,s₂) = T iff s₁ − T ∈ {s₂ values}, so
/// enumerating the two half-candidate sets decides every pair of the full
/// cartesian grid exactly. A deterministic subsample is re-refuted through
/// the per-candidate symbolic difference and re-evaluated at three random
/// rational points as a double-entry check.
pub fn h1_report(
    ctx: &CexContext,
    grid: GridSpec,
    valuations: &[DiscreteValuation],
    seed: u64,
) -> Result<H1Report, Error> {
    let cover = cover_check(ctx, valuations)?;
    let obstructions = obstruction_certificates(ctx, 100, seed)?;
    let target = ctx.target_element()?;
    let target_value = target.normal_form().clone();
    let (total, mut surprises) = sweep_candidate_grid(ctx, grid, &target_value)?;
    let candidates_refuted = total - surprises.len() as u64;
    let f_polys = grid.polynomials(Some(ctx.p));
    let g_polys = grid.polynomials(None);

    // double-entry subsample: full symbolic difference plus three-point
    // numeric re-evaluation from the raw candidate data
    let mut rng = SplitMix64::new(seed ^ 0x5eed);
    let mut double_entry_checks = 0u32;
    for _ in 0..200 {
        let f1 = &f_polys[rng.below(f_polys.len() as u64) as usize];
        let f2 = &f_polys[rng.below(f_polys.len() as u64) as usize];
        let g1 = &g_polys[rng.below(g_polys.len() as u64) as usize];
        let g2 = &g_polys[rng.below(g_polys.len() as u64) as usize];
        let cand = CandidatePreimage::new(ctx.p, f1.clone(), f2.clone(), g1.clone(), g2.clone())?;
        let difference = match refute_candidate(ctx, &cand)? {
            RefutationOutcome::Refuted { difference } => difference,
            RefutationOutcome::Surprise => {
                surprises.push(String::from("subsample candidate reached the target"));
                continue;
            }
        };
        // evaluate the symbolic difference and the raw pieces at three
        // pole-free rational points
        let mut checked = 0;
        while checked < 3 {
            let x = rng.rational(30, None);
            if x == rat_int(1) || x == rat_int(-1) {
                continue;
            }
            let symbolic = match difference.eval(&x) {
                Ok(v) => v,
                Err(_) => continue, // pole of a candidate denominator
            };
            let direct = {
                let subs1 = [x.clone(), (Rat::one() + &x).recip()];
                let subs2 = [x.clone(), (&x - Rat::one()).recip()];
                let pr = Rat::from_integer(crate::arith::Int::from(ctx.p));
                let s1 = g1.eval(&subs1)? / (Rat::one() + &pr * f1.eval(&subs1)?);
                let s2 = g2.eval(&subs2)? / (Rat::one() + &pr * f2.eval(&subs2)?);
                let tv = match target_value.eval(&x) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                s1 - s2 - tv
            };
            if symbolic != direct {
                return Err(Error::Internal(format!(
                    "double-entry mismatch at {x}: symbolic {symbolic}, direct {direct}"
                )));
            }
            checked += 1;
        }
        double_entry_checks += 1;
    }
    let verdict = format!(
        "coker(rho) contains the target section: certified nonzero against all {} grid \
         candidates; structural obstruction certificates verified ({}/4)",
        total,
        [
            obstructions.irreducibility,
            !obstructions.quotient_domain_witness.is_zero(),
            true,
            obstructions.valuation_mismatch.failures.is_empty()
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    );
    Ok(H1Report {
        p: ctx.p,
        cover,
        obstructions,
        candidates_refuted,
        surprises,
        double_entry_checks,
        verdict,
        method: String::from(
            "separated exhaustive sweep: rho(s1,s2) = T iff s1 - T lies in the set of s2 \
             normal forms, deciding the full cartesian candidate grid; a deterministic \
             subsample is re-refuted symbolically with three-point numeric double entry. \
             The universal quantifier over all preimages is established by the theorem, \
             not by enumeration.",
        ),
        dependency_note: String::from(
            "the H1 verdict uses the Mayer-Vietoris sequence, which presumes the sheaf \
             property; that property is exercised separately by the Cech exactness engine.",
        ),
    })
}

/// Image sanity: ρ vanishes on restrictions of a global section.
pub fn rho_vanishes_on_global(ctx: &CexContext, global: &LocElement) -> Result<bool, Error> {
    let m = MElem::scalar(global.clone());
    let pieces = ctx.setup.phi(&m)?;
    let diff = ctx.rho(&pieces[0].components[0], &pieces[1].components[0])?;
    Ok(diff.is_zero())
}
