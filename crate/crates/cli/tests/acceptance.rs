//! Acceptance suite: every exit criterion as one test, each printing a
//! single pass/fail line. All arithmetic is exact; tolerances are exact
//! equality throughout.

use std::time::Instant;

use zadic_core::arith::{parse_poly, rat, rat_int, Poly, RatFunc};
use zadic_core::cex::{cex_setup, h1_report, GridSpec};
use zadic_core::fadic::{AffinoidPresentation, Elem, RingPresentation};
use zadic_core::presheaf::{CechSetup, Cover, ModuleDesc};
use zadic_core::rng::SplitMix64;
use zadic_core::spa::{
    kernel_point_for_maximal, valuation_grid, verify_kernel, DiscreteValuation, ValuationKind,
};
use zadic_core::zariski::{
    is_top_nilpotent_zar, is_unit_zar, is_zariskian, truncated_inverse, zariskisation, IdealCert,
    LocElement, UnitDecision, ZariskianDecision,
};
use zadic_core::Error;

fn verdict(criterion: &str, ok: bool) {
    println!(
        "ACCEPTANCE {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{criterion} failed");
}

fn zint_cover(p: u64, elems: &[i64]) -> Cover {
    let aff = AffinoidPresentation::integers(p).unwrap();
    Cover::certify(
        aff,
        elems.iter().map(|&c| Poly::constant(rat_int(c))).collect(),
    )
    .unwrap()
}

fn ncex_cover(p: u64) -> Cover {
    Cover::certify(
        AffinoidPresentation::ncex(p).unwrap(),
        vec![parse_poly("t+1").unwrap(), parse_poly("t-1").unwrap()],
    )
    .unwrap()
}

/// Criterion 1: Čech exactness across the configured (ring, cover, module)
/// matrix, 200 seeded trials each, 100% pass, under 60 seconds total.
#[test]
fn criterion_1_sheaf_exactness_at_desk_scale() {
    let start = Instant::now();
    let mut all_ok = true;
    let modules_z = [
        ModuleDesc::Free(1),
        ModuleDesc::Free(2),
        ModuleDesc::QuotPrincipal(Poly::constant(rat_int(7))),
    ];
    let modules_qt = [
        ModuleDesc::Free(1),
        ModuleDesc::Free(2),
        ModuleDesc::QuotPrincipal(Poly::var()),
    ];
    let mut configs: Vec<(String, Cover, ModuleDesc)> = Vec::new();
    for m in &modules_z {
        configs.push(("Z,(5),cover(2,3)".into(), zint_cover(5, &[2, 3]), m.clone()));
        configs.push((
            "Z,(5),cover(3,5,7)".into(),
            zint_cover(5, &[3, 5, 7]),
            m.clone(),
        ));
    }
    for m in &modules_qt {
        configs.push(("Q[t],p=3,cover(t+1,t-1)".into(), ncex_cover(3), m.clone()));
    }
    assert_eq!(configs.len(), 9);
    for (name, cover, module) in configs {
        let setup = CechSetup::new(cover, module.clone());
        let report = setup.cech_check(200, 42).unwrap();
        let ok = report.all_pass();
        if !ok {
            eprintln!("config {name} / {module:?} failed: {:?}", report.failures);
        }
        all_ok &= ok
            && report.phi_injective
            && report.psi_after_phi_zero
            && report.glue_roundtrips == 200;
    }
    let elapsed = start.elapsed();
    let in_time = elapsed.as_secs() < 60;
    if !in_time {
        eprintln!("sheaf exactness sweep took {elapsed:?}, budget is 60 s");
    }
    verdict(
        "criterion 1 (sheaf exactness at desk scale)",
        all_ok && in_time,
    );
}

/// Independent brute-force oracle: equality of the glued element against a
/// piece by raw cross-multiplication of the un-normalized fraction data,
/// never invoking the localization engine's normal forms.
fn cross_multiplication_agrees(glued: &RatFunc, piece: &LocElement) -> bool {
    let a_num = glued.num();
    let a_den = glued.den();
    let n_num = piece.num().num();
    let n_den = piece.num().den();
    let f_num_pow = piece.inv_base().num().pow(piece.inv_exp());
    let f_den_pow = piece.inv_base().den().pow(piece.inv_exp());
    let h_num = piece.one_plus().value.num();
    let h_den = piece.one_plus().value.den();
    // piece value = nN·fD^e·hD / (nD·fN^e·(hD+hN)); cross-multiply against
    // glued = aN/aD without any gcd reduction
    let lhs = &(&(a_num * n_den) * &f_num_pow) * &(h_den + h_num);
    let rhs = &(&(&(a_den * n_num) * &f_den_pow) * h_den) * &Poly::one();
    lhs == rhs
}

/// Criterion 2: glue against 200 random cocycles with nonzero certificates,
/// with the independent cross-multiplication oracle agreeing piecewise.
#[test]
fn criterion_2_constructive_gluing_oracle_equivalence() {
    let mut all_ok = true;
    for (name, cover) in [
        ("Z,(5),cover(2,3)", zint_cover(5, &[2, 3])),
        ("Q[t],p=3,cover(t+1,t-1)", ncex_cover(3)),
    ] {
        let setup = CechSetup::new(cover, ModuleDesc::Free(1));
        for trial in 0..200u64 {
            let mut rng = SplitMix64::for_trial(91, trial);
            let m = setup.random_global(&mut rng);
            let image = setup.phi(&m).unwrap();
            let cocycle = setup.twist_cocycle(image, &mut rng).unwrap();
            // every twisted certificate is nonzero
            for piece in &cocycle.pieces {
                assert!(!piece.components[0].one_plus().is_zero());
            }
            let glued = setup.glue(&cocycle).unwrap();
            let ok_value = glued.components[0] == m.components[0];
            // phi(glued) equals the cocycle in exact normal form
            let back = setup.phi(&glued).unwrap();
            let ok_phi = back
                .iter()
                .zip(&cocycle.pieces)
                .all(|(a, b)| a.components[0] == b.components[0]);
            // independent oracle: raw cross-multiplication in ℚ(t)/ℚ
            let ok_oracle = cocycle.pieces.iter().all(|piece| {
                cross_multiplication_agrees(glued.components[0].normal_form(), &piece.components[0])
            });
            if !(ok_value && ok_phi && ok_oracle) {
                eprintln!("{name} trial {trial}: value {ok_value} phi {ok_phi} oracle {ok_oracle}");
                all_ok = false;
            }
        }
    }
    verdict(
        "criterion 2 (constructive gluing oracle equivalence)",
        all_ok,
    );
}

/// Criterion 3: Zariskisation properties with witnesses.
#[test]
fn criterion_3_zariskisation_properties() {
    let mut all_ok = true;
    // is_zariskian(zariskisation(A)) for every catalogued A
    let catalogued: Vec<RingPresentation> = vec![
        RingPresentation::poly_ring_q(3).unwrap(),
        RingPresentation::poly_ring_q(5).unwrap(),
        RingPresentation::rational_field(3).unwrap(),
        RingPresentation::integers(3).unwrap(),
        RingPresentation::integers(5).unwrap(),
        RingPresentation::p_local_ints(3).unwrap(),
        RingPresentation::poly_ring_q_trivial(),
    ];
    for a in &catalogued {
        let z = zariskisation(a).unwrap();
        let decided = is_zariskian(&z.presentation).unwrap().is_zariskian();
        if !decided {
            eprintln!("zariskisation of {a} not recognized as Zariskian");
            all_ok = false;
        }
    }
    // ℤ with (p): false with witness 1+p
    match is_zariskian(&RingPresentation::integers(3).unwrap()).unwrap() {
        ZariskianDecision::NotZariskian { witness } => {
            all_ok &= witness == Elem::from_int(4);
        }
        _ => all_ok = false,
    }
    all_ok &= is_zariskian(&RingPresentation::p_local_ints(3).unwrap())
        .unwrap()
        .is_zariskian();
    // 1000 random unit decisions carry witnesses that re-multiply to 1
    let z = zariskisation(&RingPresentation::poly_ring_q(3).unwrap()).unwrap();
    let mut rng = SplitMix64::new(2024);
    let mut units = 0u32;
    for _ in 0..1000 {
        let f = rng.nonzero_poly(4, 12, None);
        match is_unit_zar(&Elem::from_poly(f.clone()), &z).unwrap() {
            UnitDecision::Unit { inverse } => {
                units += 1;
                let product = &RatFunc::from_poly(f) * inverse.normal_form();
                if !product.is_one() {
                    eprintln!("witness failed to re-multiply to 1");
                    all_ok = false;
                }
            }
            UnitDecision::NotUnit { evidence } => {
                all_ok &= !evidence.is_empty();
            }
        }
    }
    all_ok &= units > 0;
    // representative independence of nilpotence on 500 random equal pairs
    let mut rng = SplitMix64::new(31);
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
        let num = &RatFunc::from_poly(a) * &(&RatFunc::one() + &RatFunc::from_poly(h2.clone()));
        let cert = IdealCert::from_poly(h1)
            .combine_one_plus(&IdealCert::from_poly(h2))
            .unwrap();
        let x2 = LocElement::new(num, RatFunc::one(), 0, cert).unwrap();
        if x1 != x2
            || is_top_nilpotent_zar(&x1, &z).unwrap() != is_top_nilpotent_zar(&x2, &z).unwrap()
        {
            all_ok = false;
        }
    }
    verdict("criterion 3 (Zariskisation properties)", all_ok);
}

/// Criterion 4: counterexample replay for p ∈ {3,5,7,11}, each within its
/// 120-second budget.
#[test]
fn criterion_4_counterexample_replay() {
    let mut all_ok = true;
    for p in [3u64, 5, 7, 11] {
        let start = Instant::now();
        let ctx = cex_setup(p).unwrap();
        let vals = valuation_grid(p, 100).unwrap();
        assert!(vals.len() >= 100);
        // the three kinds the covering argument turns on are present
        assert!(vals.iter().any(|v| v.kind == ValuationKind::Gauss));
        assert!(vals
            .iter()
            .any(|v| v.kind == ValuationKind::EvalPAdic(rat_int(1))));
        assert!(vals
            .iter()
            .any(|v| v.kind == ValuationKind::EvalPAdic(rat_int(-1))));
        let report = h1_report(
            &ctx,
            GridSpec {
                degree: 2,
                height: 2,
            },
            &vals,
            7,
        )
        .unwrap();
        let ok = report.all_pass()
            && report.cover.points >= 100
            && report.obstructions.irreducibility
            && report.obstructions.quotient_domain_witness == rat_int(-(p as i64))
            && report.obstructions.valuation_mismatch.failures.is_empty()
            && report.obstructions.valuation_mismatch.lhs_exponent == 0
            && report.obstructions.valuation_mismatch.rhs_lower_bound >= 1
            && report.surprises.is_empty()
            && report.candidates_refuted > 1_000_000;
        let elapsed = start.elapsed();
        let in_time = elapsed.as_secs() < 120;
        if !(ok && in_time) {
            eprintln!("p = {p}: pass {ok}, elapsed {elapsed:?}");
        }
        all_ok &= ok && in_time;
    }
    verdict(
        "criterion 4 (counterexample replay, p in {3,5,7,11})",
        all_ok,
    );
}

/// Criterion 5: truncated inversion residuals are exactly −y^N with content
/// at least N.
#[test]
fn criterion_5_truncated_inversion() {
    let mut all_ok = true;
    let z = zariskisation(&RingPresentation::poly_ring_q(3).unwrap()).unwrap();
    let ys = [
        Elem::from_int(3),
        Elem::from_poly(parse_poly("3*t").unwrap()),
        Elem::from_poly(parse_poly("3*t + 3").unwrap()),
    ];
    for y in &ys {
        for n in 2..=10u32 {
            let out = truncated_inverse(y, n, &z).unwrap();
            // (1−y)·s_N − 1 = −y^N exactly
            let yf = y.as_fun().unwrap();
            let recomputed = &(&(&RatFunc::one() - yf) * &out.series) - &RatFunc::one();
            let expected = -&yf.pow(n);
            let exact = recomputed == out.residual && out.residual == expected;
            let content = out
                .residual
                .gauss_content(3)
                .unwrap()
                .exp_at_least(n as i64);
            if !(exact && content) {
                eprintln!("y = {y}, N = {n}: exact {exact}, content ok {content}");
                all_ok = false;
            }
        }
    }
    verdict("criterion 5 (truncated inversion)", all_ok);
}

/// Criterion 6: kernel points for ten maximal ideals (t−c) of the
/// Zariskian ring, with two-sided inclusion on a degree-≤6 sample, and the
/// honest Unrepresentable path for non-Zariskian ℤ.
#[test]
fn criterion_6_point_realization() {
    let mut all_ok = true;
    let z = zariskisation(&RingPresentation::poly_ring_q(3).unwrap()).unwrap();
    let cs = [
        rat_int(0),
        rat_int(1),
        rat_int(-1),
        rat_int(2),
        rat_int(-2),
        rat(1, 2),
        rat(-1, 2),
        rat(2, 5),
        rat(4, 7),
        rat_int(5),
    ];
    assert_eq!(cs.len(), 10);
    let mut rng = SplitMix64::new(66);
    for c in &cs {
        let gen = Poly::from_coeffs(vec![-c.clone(), rat_int(1)]);
        let point = kernel_point_for_maximal(&z.presentation, &Elem::from_poly(gen.clone()));
        let point = match point {
            Ok(p) => p,
            Err(e) => {
                eprintln!("no point for t - {c}: {e}");
                all_ok = false;
                continue;
            }
        };
        if point.valuation
            != DiscreteValuation::new(ValuationKind::EvalPAdic(c.clone()), 3).unwrap()
        {
            all_ok = false;
        }
        // sample: 50 random degree-≤6 polynomials plus explicit multiples
        let mut samples = vec![gen.clone(), Poly::one(), Poly::var()];
        for _ in 0..50 {
            samples.push(rng.poly(6, 10, None));
            samples.push(&rng.poly(4, 10, None) * &gen);
        }
        if let Err(e) = verify_kernel(&point, &samples) {
            eprintln!("kernel verification failed for c = {c}: {e}");
            all_ok = false;
        }
    }
    // non-Zariskian ℤ: the Unrepresentable path carries the explanation
    match kernel_point_for_maximal(&RingPresentation::integers(3).unwrap(), &Elem::from_int(5)) {
        Err(Error::Unrepresentable(msg)) => {
            all_ok &= msg.contains("not Zariskian");
        }
        other => {
            eprintln!("expected Unrepresentable, got {other:?}");
            all_ok = false;
        }
    }
    verdict("criterion 6 (point realization)", all_ok);
}

/// Criterion 7: byte-identical reports for identical (config, seed), for
/// every CLI subcommand, validating against the published schema.
#[test]
fn criterion_7_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_zadic");
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let run = |args: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(args)
            .current_dir(root)
            .output()
            .expect("spawn zadic");
        (out.status.code(), out.stdout)
    };
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "zar",
            "--ring",
            "descriptors/qt3.json",
            "--element",
            "1+3*t",
        ],
        vec![
            "spa",
            "--ring",
            "descriptors/qt3.json",
            "--subset",
            "R(1/(t+1))",
            "--valuations",
            "descriptors/grid-example.json",
        ],
        vec![
            "cech",
            "--ring",
            "descriptors/zint5.json",
            "--cover",
            "2,3",
            "--trials",
            "50",
            "--seed",
            "1",
        ],
        vec![
            "cech",
            "--ring",
            "descriptors/qt3.json",
            "--cover",
            "t+1,t-1",
            "--module",
            "A/(t)",
            "--trials",
            "25",
            "--seed",
            "42",
        ],
        vec![
            "cex",
            "--p",
            "3",
            "--grid-degree",
            "1",
            "--grid-height",
            "2",
            "--valuations",
            "100",
            "--seed",
            "7",
        ],
        vec![
            "tensor",
            "--left",
            "descriptors/qt3.json",
            "--right",
            "descriptors/qx3.json",
            "--base",
            "descriptors/q3.json",
        ],
        vec!["quotient", "--ring", "descriptors/qt3.json", "--ideal", "t"],
    ];
    let mut all_ok = true;
    for args in &commands {
        let (code1, out1) = run(args);
        let (code2, out2) = run(args);
        if out1 != out2 || code1 != code2 {
            eprintln!("nondeterministic output for {args:?}");
            all_ok = false;
        }
        if code1 != Some(0) {
            eprintln!("command {args:?} exited with {code1:?}");
            all_ok = false;
        }
        let value: serde_json::Value = serde_json::from_slice(&out1).expect("JSON report");
        if let Err(e) = zadic_cli::report::validate_report_json(&value) {
            eprintln!("schema validation failed for {args:?}: {e}");
            all_ok = false;
        }
    }
    verdict("criterion 7 (CLI determinism)", all_ok);
}
