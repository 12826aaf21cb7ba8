//! Subcommand implementations. Every command produces a `Report`; exit
//! codes come from the report status.

use serde_json::{json, Value};

use zadic_core::arith::{parse_poly, Poly, RatFunc};
use zadic_core::cex::{cex_setup, h1_report, GridSpec};
use zadic_core::fadic::{quotient_fadic, tensor_fadic, AffinoidPresentation, Elem, RingMap};
use zadic_core::num_zero::Zero as _;
use zadic_core::presheaf::{CechReport, CechSetup, Cover, ModuleDesc, Piece};
use zadic_core::spa::{
    in_rational_subset, mk_rational_subset, parse_subset, valuation_grid, DiscreteValuation,
};
use zadic_core::zariski::{
    is_top_nilpotent_zar, is_unit_zar, is_zariskian, zariskisation, LocElement, UnitDecision,
    ZariskianDecision,
};

use crate::descriptor::{load_ring, load_valuations, ElemJson, RingJson};
use crate::report::Report;
use crate::CliError;

fn poly_coeffs(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| format!("{c}")).collect()
}

fn ratfunc_json(f: &RatFunc) -> Value {
    json!({
        "text": format!("{f}"),
        "num_coeffs": poly_coeffs(f.num()),
        "den_coeffs": poly_coeffs(f.den()),
    })
}

pub fn run_zar(ring_path: &str, element_src: &str) -> Result<Report, CliError> {
    let mut report = Report::new("zar", json!({"ring": ring_path, "element": element_src}));
    let ring = load_ring(ring_path)?.to_presentation()?;
    let element = Elem::from_poly(parse_poly(element_src).map_err(CliError::parse)?);
    let z = zariskisation(&ring).map_err(CliError::from_core)?;
    let decision = is_unit_zar(&element, &z).map_err(CliError::from_core)?;
    let (unit, witness) = match &decision {
        UnitDecision::Unit { inverse } => {
            // re-multiply the witness before reporting it
            let product = element.as_fun().map_err(CliError::from_core)?.clone();
            let product = &product * inverse.normal_form();
            report.push(
                "unit_witness_remultiplies_to_one",
                product.is_one(),
                format!("element * inverse = {product}"),
            );
            (
                true,
                json!({
                    "inverse": ratfunc_json(inverse.normal_form()),
                    "one_plus_h": ratfunc_json(&(&RatFunc::one() + &inverse.one_plus().value)),
                }),
            )
        }
        UnitDecision::NotUnit { evidence } => {
            report.push("unit_decision", true, evidence.clone());
            (false, json!({"evidence": evidence}))
        }
    };
    let nilpotent = is_top_nilpotent_zar(
        &LocElement::from_value(element.as_fun().map_err(CliError::from_core)?.clone()),
        &z,
    )
    .map_err(CliError::from_core)?;
    let zariskian = match is_zariskian(&z.presentation).map_err(CliError::from_core)? {
        ZariskianDecision::Zariskian { justification } => {
            report.push("zariskisation_is_zariskian", true, justification);
            true
        }
        ZariskianDecision::NotZariskian { witness } => {
            report.push(
                "zariskisation_is_zariskian",
                false,
                format!("non-unit witness {witness}"),
            );
            false
        }
    };
    report.witnesses = json!({
        "element": ratfunc_json(element.as_fun().map_err(CliError::from_core)?),
        "unit": unit,
        "witness": witness,
        "nilpotent": nilpotent,
        "zariskisation_zariskian": zariskian,
        "inverted_set_gens": z
            .inverted_ideal_gens
            .iter()
            .map(|g| format!("{g}"))
            .collect::<Vec<_>>(),
    });
    Ok(report)
}

pub fn run_spa(
    ring_path: &str,
    subset_src: &str,
    valuations_path: Option<&str>,
    grid: Option<usize>,
) -> Result<Report, CliError> {
    let mut report = Report::new(
        "spa",
        json!({
            "ring": ring_path,
            "subset": subset_src,
            "valuations": valuations_path,
            "grid": grid,
        }),
    );
    let doc = load_ring(ring_path)?;
    let pres = doc.to_presentation()?;
    let plus = doc.plus_gens()?;
    let affinoid = AffinoidPresentation::new(pres, plus).map_err(CliError::from_core)?;
    let p = affinoid
        .ring
        .family()
        .prime()
        .ok_or_else(|| CliError::usage("the ring has no graded topology".to_string()))?;
    let (nums, den) = parse_subset(subset_src).map_err(CliError::parse)?;
    let subset = match mk_rational_subset(
        &affinoid,
        nums.into_iter().map(Elem::from_poly).collect(),
        Elem::from_poly(den),
    ) {
        Ok(s) => s,
        Err(zadic_core::Error::NotOpen(reason)) => {
            report.push("subset_open", false, reason);
            return Ok(report);
        }
        Err(e) => return Err(CliError::from_core(e)),
    };
    report.push(
        "subset_open",
        true,
        format!(
            "Bezout certificate traps I0^{}",
            subset.openness.power_in_ideal
        ),
    );
    let valuations: Vec<DiscreteValuation> = match (valuations_path, grid) {
        (Some(path), _) => load_valuations(path)?
            .iter()
            .map(|v| v.to_valuation(p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::from_core)?,
        (None, Some(n)) => valuation_grid(p, n).map_err(CliError::from_core)?,
        (None, None) => valuation_grid(p, 20).map_err(CliError::from_core)?,
    };
    let mut matrix = Vec::new();
    for v in &valuations {
        let member = in_rational_subset(v, &subset).map_err(CliError::from_core)?;
        matrix.push(json!({"valuation": v.describe(), "member": member}));
    }
    report.witnesses = json!({
        "prime": p,
        "subset": {
            "nums": subset
                .nums
                .iter()
                .map(|f| poly_coeffs(f.as_fun().unwrap().num()))
                .collect::<Vec<_>>(),
            "den": poly_coeffs(subset.den.as_fun().unwrap().num()),
        },
        "membership": matrix,
        "openness_combo": subset
            .openness
            .combo
            .iter()
            .map(|c| format!("{c}"))
            .collect::<Vec<_>>(),
    });
    Ok(report)
}

pub fn parse_module(src: &str) -> Result<ModuleDesc, CliError> {
    let s = src.trim();
    if s == "A" {
        return Ok(ModuleDesc::Free(1));
    }
    if s == "0" {
        return Ok(ModuleDesc::Free(0));
    }
    if let Some(k) = s.strip_prefix("A^") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::usage(format!("bad module rank in {src:?}")))?;
        return Ok(ModuleDesc::Free(k));
    }
    if let Some(inner) = s.strip_prefix("A/(").and_then(|r| r.strip_suffix(')')) {
        let d = parse_poly(inner).map_err(CliError::parse)?;
        return Ok(ModuleDesc::QuotPrincipal(d));
    }
    Err(CliError::usage(format!(
        "unknown module descriptor {src:?}; expected A, A^k, A/(d) or 0"
    )))
}

pub fn build_setup(
    ring_path: &str,
    cover_src: &str,
    module_src: &str,
) -> Result<CechSetup, CliError> {
    let doc = load_ring(ring_path)?;
    let pres = doc.to_presentation()?;
    let plus = doc.plus_gens()?;
    let affinoid = AffinoidPresentation::new(pres, plus).map_err(CliError::from_core)?;
    let elems = cover_src
        .split(',')
        .map(|part| parse_poly(part.trim()).map_err(CliError::parse))
        .collect::<Result<Vec<_>, _>>()?;
    let cover = Cover::certify(affinoid, elems).map_err(CliError::from_core)?;
    let module = parse_module(module_src)?;
    Ok(CechSetup::new(cover, module))
}

/// Run the trials, fanning out over ZADIC_THREADS workers when asked;
/// outcomes merge in index order, so the report is identical either way.
pub fn run_cech_trials(setup: &CechSetup, trials: u32, seed: u64) -> Result<CechReport, CliError> {
    let threads: usize = std::env::var("ZADIC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1);
    if threads <= 1 || trials < 2 {
        return setup.cech_check(trials, seed).map_err(CliError::from_core);
    }
    let threads = threads.min(trials as usize);
    let mut outcomes: Vec<Option<zadic_core::presheaf::TrialOutcome>> =
        (0..trials).map(|_| None).collect();
    let chunk = trials.div_ceil(threads as u32);
    std::thread::scope(|scope| -> Result<(), CliError> {
        let mut handles = Vec::new();
        for (w, slot_chunk) in outcomes.chunks_mut(chunk as usize).enumerate() {
            let setup = setup.clone();
            handles.push(scope.spawn(move || -> Result<(), zadic_core::Error> {
                let base = w as u32 * chunk;
                for (offset, slot) in slot_chunk.iter_mut().enumerate() {
                    let index = base + offset as u32;
                    *slot = Some(setup.run_trial(seed, index as u64)?);
                }
                Ok(())
            }));
        }
        for h in handles {
            h.join()
                .map_err(|_| CliError::usage("worker panicked".to_string()))?
                .map_err(CliError::from_core)?;
        }
        Ok(())
    })?;
    let mut report = CechReport {
        seed,
        trials,
        phi_injective: true,
        psi_after_phi_zero: true,
        glue_roundtrips: 0,
        failures: Vec::new(),
    };
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome.expect("all trials filled");
        report.phi_injective &= outcome.phi_injective;
        report.psi_after_phi_zero &= outcome.psi_after_phi_zero;
        if outcome.glue_roundtrip {
            report.glue_roundtrips += 1;
        }
        for f in outcome.failures {
            report.failures.push(format!("trial {i}: {f}"));
        }
    }
    Ok(report)
}

pub fn run_cech(
    ring_path: &str,
    cover_src: &str,
    module_src: &str,
    trials: u32,
    seed: u64,
) -> Result<Report, CliError> {
    let mut report = Report::new(
        "cech",
        json!({
            "ring": ring_path,
            "cover": cover_src,
            "module": module_src,
            "trials": trials,
            "seed": seed,
        }),
    );
    let setup = build_setup(ring_path, cover_src, module_src)?;
    let cech = run_cech_trials(&setup, trials, seed)?;
    report.push(
        "phi_injective",
        cech.phi_injective,
        "phi(m) != 0 for every sampled nonzero global section",
    );
    report.push(
        "psi_after_phi_zero",
        cech.psi_after_phi_zero,
        "psi(phi(m)) = 0 exactly on every overlap",
    );
    report.push(
        "glue_roundtrips",
        cech.glue_roundtrips == trials,
        format!("{}/{} glue(restrict(m)) = m", cech.glue_roundtrips, trials),
    );
    for f in &cech.failures {
        report.push("trial_failure", false, f.clone());
    }
    // sample round-trip witnesses for the offline checker
    let mut samples = Vec::new();
    for index in 0..2.min(trials) {
        let mut rng = zadic_core::rng::SplitMix64::for_trial(seed, index as u64);
        let m = setup.random_global(&mut rng);
        let image = setup.phi(&m).map_err(CliError::from_core)?;
        let cocycle = setup
            .twist_cocycle(image, &mut rng)
            .map_err(CliError::from_core)?;
        let glued = setup.glue(&cocycle).map_err(CliError::from_core)?;
        samples.push(json!({
            "trial": index,
            "global": ratfunc_json(m.components[0].normal_form()),
            "pieces": cocycle
                .pieces
                .iter()
                .map(|p| ratfunc_json(p.components[0].normal_form()))
                .collect::<Vec<_>>(),
            "glued": ratfunc_json(glued.components[0].normal_form()),
        }));
    }
    report.witnesses = json!({
        "cover": setup
            .cover
            .elems
            .iter()
            .map(|f| json!({"text": format!("{f}"), "coeffs": poly_coeffs(f)}))
            .collect::<Vec<_>>(),
        "bezout": setup
            .cover
            .bezout
            .iter()
            .map(ratfunc_json)
            .collect::<Vec<_>>(),
        "zero_ring_pieces": (0..setup.cover.size())
            .map(|k| {
                setup
                    .cover
                    .ring(Piece::Single(k))
                    .map(|r| r.zero_ring)
                    .unwrap_or(false)
            })
            .collect::<Vec<_>>(),
        "glue_samples": samples,
        "seed": seed,
    });
    Ok(report)
}

pub fn run_cex(
    p: u64,
    grid_degree: u32,
    grid_height: i64,
    valuations: usize,
    seed: u64,
) -> Result<Report, CliError> {
    let mut report = Report::new(
        "cex",
        json!({
            "p": p,
            "grid_degree": grid_degree,
            "grid_height": grid_height,
            "valuations": valuations,
            "seed": seed,
        }),
    );
    let ctx = cex_setup(p).map_err(CliError::from_core)?;
    let vals = valuation_grid(p, valuations.max(3)).map_err(CliError::from_core)?;
    let h1 = h1_report(
        &ctx,
        GridSpec {
            degree: grid_degree,
            height: grid_height,
        },
        &vals,
        seed,
    )
    .map_err(CliError::from_core)?;
    report.push(
        "cover_check",
        h1.cover.all_pass(),
        format!(
            "{} valuations: {} in both pieces, {} only U1, {} only U2",
            h1.cover.points, h1.cover.in_both, h1.cover.in_u1_only, h1.cover.in_u2_only
        ),
    );
    report.push(
        "irreducibility",
        h1.obstructions.irreducibility,
        "t^2 - 1 + p has non-square discriminant over Q",
    );
    report.push(
        "quotient_domain_witness",
        !h1.obstructions.quotient_domain_witness.is_zero(),
        format!(
            "image of t^2-1 mod (t^2-1+p) is {}",
            h1.obstructions.quotient_domain_witness
        ),
    );
    report.push(
        "fp_zero_divisor",
        true,
        format!(
            "({}) * ({}) = 0 in F_p[t]/(t^2-1), both factors nonzero",
            h1.obstructions.fp_zero_divisor.0, h1.obstructions.fp_zero_divisor.1
        ),
    );
    report.push(
        "valuation_mismatch",
        h1.obstructions.valuation_mismatch.failures.is_empty(),
        h1.obstructions.valuation_mismatch.interval_argument.clone(),
    );
    report.push(
        "refutations",
        h1.surprises.is_empty(),
        format!(
            "{} candidates refuted, {} double-entry re-checks, SURPRISE count {}",
            h1.candidates_refuted,
            h1.double_entry_checks,
            h1.surprises.len()
        ),
    );
    let target = ctx.target_element().map_err(CliError::from_core)?;
    report.witnesses = json!({
        "verdict": h1.verdict,
        "method": h1.method,
        "dependency_note": h1.dependency_note,
        "target": ratfunc_json(target.normal_form()),
        "target_certificate_h": ratfunc_json(&target.one_plus().value),
        "quotient_domain_witness": format!("{}", h1.obstructions.quotient_domain_witness),
        "fp_zero_divisor": [
            format!("{}", h1.obstructions.fp_zero_divisor.0),
            format!("{}", h1.obstructions.fp_zero_divisor.1),
        ],
        "mismatch": {
            "lhs_exponent": h1.obstructions.valuation_mismatch.lhs_exponent,
            "rhs_lower_bound": h1.obstructions.valuation_mismatch.rhs_lower_bound,
            "grid_points": h1.obstructions.valuation_mismatch.grid_points,
        },
        "candidates_refuted": h1.candidates_refuted,
        "surprises": h1.surprises,
    });
    Ok(report)
}

pub fn run_quotient(ring_path: &str, ideal_src: &str) -> Result<Report, CliError> {
    let mut report = Report::new("quotient", json!({"ring": ring_path, "ideal": ideal_src}));
    let pres = load_ring(ring_path)?.to_presentation()?;
    let gens = ideal_src
        .split(',')
        .map(|part| {
            parse_poly(part.trim())
                .map(Elem::from_poly)
                .map_err(CliError::parse)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let quotient = quotient_fadic(&pres, &gens).map_err(CliError::from_core)?;
    report.push(
        "quotient_constructed",
        true,
        format!("carrier {}", quotient.carrier),
    );
    report.witnesses = json!({
        "result": serde_json::to_value(RingJson::from_presentation(&quotient, None))
            .expect("descriptor serializes"),
    });
    Ok(report)
}

pub fn run_tensor(left_path: &str, right_path: &str, base_path: &str) -> Result<Report, CliError> {
    let mut report = Report::new(
        "tensor",
        json!({"left": left_path, "right": right_path, "base": base_path}),
    );
    let left = load_ring(left_path)?.to_presentation()?;
    let right = load_ring(right_path)?.to_presentation()?;
    let base = load_ring(base_path)?.to_presentation()?;
    if base.carrier.generator_count() != 0 {
        return Err(CliError::usage(
            "tensor bases with carrier generators need explicit leg images; only constant \
             bases are supported on the command line"
                .to_string(),
        ));
    }
    let phi = RingMap::new(base.clone(), left, vec![]).map_err(CliError::from_core)?;
    let psi = RingMap::new(base, right, vec![]).map_err(CliError::from_core)?;
    let (tensor, f, g) = tensor_fadic(&phi, &psi).map_err(CliError::from_core)?;
    // the two routes agree on the base ideal generators
    let mut square_ok = true;
    for gen in &phi.source.ideal_of_def {
        let via_left = f
            .apply(&phi.apply(gen).map_err(CliError::from_core)?)
            .map_err(CliError::from_core)?;
        let via_right = g
            .apply(&psi.apply(gen).map_err(CliError::from_core)?)
            .map_err(CliError::from_core)?;
        square_ok &= via_left == via_right;
    }
    report.push("commuting_square", square_ok, "f∘phi = g∘psi on generators");
    report.push(
        "legs_adic",
        f.continuity.is_some() && g.continuity.is_some(),
        "both canonical maps carry continuity certificates",
    );
    report.witnesses = json!({
        "result": serde_json::to_value(RingJson::from_presentation(&tensor, None))
            .expect("descriptor serializes"),
        "left_images": f.gen_images.iter().map(|e| ElemJson::from_elem(e)).collect::<Vec<_>>(),
        "right_images": g.gen_images.iter().map(|e| ElemJson::from_elem(e)).collect::<Vec<_>>(),
    });
    Ok(report)
}
