use kapteyn_core::exact::{RadicalSum, UPoly};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = RadicalSum> {
    (0u8..=1, prop::collection::vec(-5i64..=5, 1..4), -7i64..=3).prop_map(|(parity, coeffs, e)| {
        RadicalSum::term(parity, UPoly::from_ints(&coeffs), e).unwrap()
    })
}

fn sum() -> impl Strategy<Value = RadicalSum> {
    prop::collection::vec(term(), 1..4)
        .prop_map(|ts| ts.iter().fold(RadicalSum::zero(), |acc, t| acc.add(t)))
}

fn even_sum() -> impl Strategy<Value = RadicalSum> {
    prop::collection::vec((prop::collection::vec(-5i64..=5, 1..4), -7i64..=3), 1..4).prop_map(
        |ts| {
            ts.iter().fold(RadicalSum::zero(), |acc, (c, e)| {
                acc.add(&RadicalSum::term(0, UPoly::from_ints(c), *e).unwrap())
            })
        },
    )
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn derivative_undoes_integration(s in sum()) {
        if let Ok(i) = s.integrate() {
            prop_assert_eq!(i.derivative(), s);
        }
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in sum(), b in sum(), z in -0.45f64..0.45) {
        let (va, vb) = (a.eval(z).unwrap(), b.eval(z).unwrap());
        prop_assert!(close(a.add(&b).eval(z).unwrap(), va + vb));
        prop_assert!(close(a.mul(&b).eval(z).unwrap(), va * vb));
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn taylor_is_linear(a in even_sum(), b in even_sum()) {
        let ta = a.taylor(8).unwrap();
        let tb = b.taylor(8).unwrap();
        let tab = a.add(&b).taylor(8).unwrap();
        for i in 0..8 {
            prop_assert_eq!(&tab[i], &(&ta[i] + &tb[i]));
        }
    }

    #[test]
    fn taylor_agrees_with_evaluation(a in even_sum(), z in -0.05f64..0.05) {
        let t = a.taylor(12).unwrap();
        let u = z * z;
        let approx: f64 = t.iter().rev().fold(0.0, |acc, c| acc * u + kapteyn_core::exact::to_f64(c));
        prop_assert!(close(approx, a.eval(z).unwrap()));
    }
}
