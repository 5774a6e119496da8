use lthompson::complexes::{
    complete_join_report, connectivity_bound, connectivity_of, dlink_complex, homology, matching_complex,
    DEFAULT_ENUM_CAP,
};
use lthompson::groups::{GroupBackend, WreathRecursion};
use lthompson::vphi::Context;
use num_bigint::BigInt;

fn contexts() -> Vec<(&'static str, Context)> {
    vec![
        ("trivial", Context::trivial()),
        ("Z/2 diagonal", Context::diagonal(GroupBackend::Cyclic(Some(2)))),
        ("Z/3 diagonal", Context::diagonal(GroupBackend::Cyclic(Some(3)))),
        ("Z/2 right", Context::new(WreathRecursion::right(GroupBackend::Cyclic(Some(2)))).unwrap()),
    ]
}

#[test]
fn matching_complexes_are_highly_connected() {
    for n in 4..=9 {
        let m = matching_complex(n).unwrap();
        let r = connectivity_of(&m, n);
        assert!(r.holds, "{r}");
        if let Some(h) = &r.homology {
            assert_eq!(h.euler_consistent(), None);
        }
    }
    let h = homology(&matching_complex(4).unwrap(), 1);
    assert_eq!(h.betti[0], 2);
    assert_eq!(h.euler_consistent(), Some(true));
}

#[test]
fn m7_low_degrees() {
    let h = homology(&matching_complex(7).unwrap(), 1);
    assert_eq!(h.betti[0], 0);
    assert!(h.torsion[0].is_empty());
}

#[test]
fn descending_links_are_complete_joins() {
    for (name, ctx) in contexts() {
        let order = ctx.backend().order().unwrap() as usize;
        for n in 2..=5 {
            let d = dlink_complex(n, &ctx, DEFAULT_ENUM_CAP).unwrap();
            assert_eq!(d.complex().vertex_count(), order * n * (n - 1), "{name} n={n}");
            let report = complete_join_report(&d).unwrap();
            assert!(report.holds(), "{name} n={n}: {report:?}");
            let c = connectivity_of(d.complex(), n);
            assert!(c.holds, "{name}: {c}");
            if n == 5 {
                assert_eq!(connectivity_bound(n), 0);
                assert_eq!(d.complex().components(), 1, "{name}");
            }
        }
    }
}

#[test]
fn full_homology_of_small_links() {
    let ctx = Context::diagonal(GroupBackend::Cyclic(Some(2)));
    let d = dlink_complex(5, &ctx, DEFAULT_ENUM_CAP).unwrap();
    let h = homology(d.complex(), 1);
    assert_eq!(h.euler_consistent(), Some(true));
    assert!(h.torsion.iter().all(|t| t.iter().all(|x| *x > BigInt::from(1))));
}
