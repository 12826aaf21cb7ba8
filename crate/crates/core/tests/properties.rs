//! Property tests for the algebraic laws the engines rely on.

use proptest::prelude::*;

use zadic_core::arith::{bezout, content_val, padic_val, rat, PValuationValue, Poly, Rat, RatFunc};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-2000i64..2000, 1i64..200).prop_map(|(n, d)| rat(n, d))
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(arb_rat(), 0..=max_deg).prop_map(Poly::from_coeffs)
}

fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    arb_poly(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

proptest! {
    #[test]
    fn padic_val_is_multiplicative(a in arb_rat(), b in arb_rat()) {
        let p = 3;
        let va = padic_val(&a, p).unwrap();
        let vb = padic_val(&b, p).unwrap();
        let vab = padic_val(&(&a * &b), p).unwrap();
        prop_assert_eq!(vab, va.mul(vb));
    }

    #[test]
    fn padic_val_is_ultrametric(a in arb_rat(), b in arb_rat()) {
        let p = 5;
        let va = padic_val(&a, p).unwrap();
        let vb = padic_val(&b, p).unwrap();
        let vsum = padic_val(&(&a + &b), p).unwrap();
        // |a+b| ≤ max(|a|, |b|), with equality when the values differ
        prop_assert!(vsum <= va.max(vb));
        if va != vb {
            prop_assert_eq!(vsum, va.max(vb));
        }
    }

    #[test]
    fn content_is_multiplicative_gauss(f in arb_nonzero_poly(5), g in arb_nonzero_poly(5)) {
        let p = 3;
        let cf = content_val(&f, p).unwrap().exponent().unwrap();
        let cg = content_val(&g, p).unwrap().exponent().unwrap();
        let cfg = content_val(&(&f * &g), p).unwrap().exponent().unwrap();
        prop_assert_eq!(cfg, cf + cg);
    }

    #[test]
    fn bezout_is_self_certifying(f in arb_nonzero_poly(4), g in arb_nonzero_poly(4)) {
        // whenever the call succeeds the expansion is exactly 1
        if let Ok(combo) = bezout(&[f.clone(), g.clone()]) {
            let total = &(&combo[0] * &f) + &(&combo[1] * &g);
            prop_assert_eq!(total, Poly::one());
        }
    }

    #[test]
    fn ratfunc_normalization_is_idempotent(
        num in arb_poly(5),
        den in arb_nonzero_poly(5),
    ) {
        let f = RatFunc::new(num, den).unwrap();
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        prop_assert_eq!(&f, &again);
        // canonical: denominator monic and coprime to the numerator
        prop_assert!(f.den().leading().map_or(false, |l| l == &rat(1, 1)));
    }

    #[test]
    fn gauss_content_respects_products(
        a in arb_nonzero_poly(4),
        b in arb_nonzero_poly(4),
        c in arb_nonzero_poly(3),
    ) {
        let p = 3;
        let f = RatFunc::new(a, c.clone()).unwrap();
        let g = RatFunc::new(b, c).unwrap();
        let vf = f.gauss_content(p).unwrap();
        let vg = g.gauss_content(p).unwrap();
        let vfg = (&f * &g).gauss_content(p).unwrap();
        prop_assert_eq!(vfg, vf.mul(vg));
    }

    #[test]
    fn valuation_order_total_and_absorbing(e1 in -40i64..40, e2 in -40i64..40) {
        let a = PValuationValue::Exp(e1);
        let b = PValuationValue::Exp(e2);
        let z = PValuationValue::Zero;
        prop_assert!(z <= a && z <= b);
        prop_assert_eq!(a.mul(z), z);
        // order is reversed relative to exponents
        prop_assert_eq!(a <= b, e1 >= e2);
    }
}
