use geproci_core::poly::{forms_coprime, monomials, Form, PLANE_VARS};
use geproci_core::{ExactMatrix, FieldElement};
use proptest::prelude::*;

fn element() -> impl Strategy<Value = FieldElement> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(n, d, m, e)| FieldElement::from_ratios(n, d, m, e))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
    prop::collection::vec(prop::collection::vec((-3i64..=3, -1i64..=1), cols), rows).prop_map(|r| {
        ExactMatrix::from_rows(
            r.into_iter().map(|row| row.into_iter().map(|(a, b)| FieldElement::from_ratios(a, 1, b, 1)).collect()).collect(),
        )
    })
}

fn form(d: u32) -> impl Strategy<Value = Form> {
    prop::collection::vec(-4i64..=4, monomials(3, d).len())
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |c| Form::from_coefficients(&PLANE_VARS, d, &c.into_iter().map(FieldElement::from_int).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn field_is_a_field(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(FieldElement::from_rational(a.norm()), &a * &a.conj());
        prop_assert_eq!(FieldElement::from_rational(a.trace()), &a + &a.conj());
    }

    #[test]
    fn display_roundtrips(a in element()) {
        prop_assert_eq!(a.to_string().parse::<FieldElement>().unwrap(), a);
    }

    #[test]
    fn rank_nullity_and_kernel(m in matrix(3, 5)) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.len(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(FieldElement::is_zero));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(4, 4), b in matrix(4, 4)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
        if let Ok(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).unwrap(), ExactMatrix::identity(4));
        } else {
            prop_assert!(a.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn gcd_recovers_common_factor(f in form(2), g in form(2), h in form(1)) {
        let (fh, gh) = (f.poly().mul(h.poly()), g.poly().mul(h.poly()));
        let d = fh.gcd(&gh);
        prop_assert!(d.div_exact(h.poly()).is_some(), "gcd {:?} misses {:?}", d, h.poly());
        prop_assert!(fh.div_exact(&d).is_some() && gh.div_exact(&d).is_some());
        let direct = f.poly().gcd(g.poly());
        prop_assert_eq!(d, direct.mul(h.poly()).monic());
    }

    #[test]
    fn coprimality_agrees_with_gcd(f in form(3), g in form(2), h in form(1)) {
        prop_assert_eq!(forms_coprime(&f, &g).unwrap(), f.poly().gcd(g.poly()).is_constant());
        prop_assert!(!forms_coprime(&f.mul(&h), &g.mul(&h)).unwrap());
    }
}
