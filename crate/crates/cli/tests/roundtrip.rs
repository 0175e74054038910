use geproci_cli::gpc;
use geproci_core::classify::{canonical_configuration, CanonicalName};
use geproci_core::{Configuration, FieldElement, ProjLine, ProjPoint};
use proptest::prelude::*;

#[test]
fn builtins_roundtrip() {
    for name in [
        CanonicalName::AnharmonicDerived,
        CanonicalName::HarmonicVariant1,
        CanonicalName::HarmonicVariant2,
        CanonicalName::D4,
        CanonicalName::Grid(3, 4),
        CanonicalName::Grid(4, 5),
    ] {
        let z = canonical_configuration(name);
        assert_eq!(gpc::parse(&gpc::print(&z)).unwrap(), z, "{name}");
    }
}

fn element() -> impl Strategy<Value = FieldElement> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4).prop_map(|(n, d, m, e)| FieldElement::from_ratios(n, d, m, e))
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop::array::uniform4(element()).prop_filter_map("nonzero", |c| ProjPoint::new(c).ok())
}

/// Up to four lines, each with 2..=4 points, grouped as one family.
fn config() -> impl Strategy<Value = Configuration> {
    prop::collection::vec((point(), point(), prop::collection::vec((element(), element()), 2..=4)), 1..=4)
        .prop_filter_map("distinct points", |lines| {
            let mut points = Vec::new();
            let mut groups = Vec::new();
            for (p, q, params) in lines {
                let l = ProjLine::through(&p, &q).ok()?;
                let (u, v) = l.basis();
                let mut g = Vec::new();
                for (s, t) in params {
                    let c: [FieldElement; 4] = std::array::from_fn(|i| &(&s * &u.coords()[i]) + &(&t * &v.coords()[i]));
                    g.push(points.len());
                    points.push(ProjPoint::new(c).ok()?);
                }
                groups.push(g);
            }
            Configuration::new(points).ok()?.with_family(groups).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, ..ProptestConfig::default() })]

    #[test]
    fn random_configurations_roundtrip(z in config()) {
        let text = gpc::print(&z);
        prop_assert_eq!(gpc::parse(&text).unwrap(), z.clone());
        prop_assert_eq!(gpc::parse(&text).unwrap().without_families(), gpc::parse(&gpc::print(&z.without_families())).unwrap());
    }
}
