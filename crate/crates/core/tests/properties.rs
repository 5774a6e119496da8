//! Randomized invariants across the element, action and certificate layers.

use lthompson::diagrams::{BitWord, EventuallyPeriodicWord};
use lthompson::germs::{germ_compare, lsupp_approx, GermComparison};
use lthompson::groups::{GroupBackend, GroupElement, WreathRecursion};
use lthompson::perfection::{commutator_witness, decompose};
use lthompson::sample::{random_diagram, random_element, random_partition};
use lthompson::splinter::Splinter;
use lthompson::vphi::{iota, lambda_u, rho, Context, VPhiElement, DEFAULT_IMAGE_BUDGET};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn contexts() -> Vec<Context> {
    vec![
        Context::diagonal(GroupBackend::Cyclic(Some(2))),
        Context::diagonal(GroupBackend::Symmetric(3)),
        Context::new(WreathRecursion::right(GroupBackend::Cyclic(Some(3)))).unwrap(),
        Context::new(WreathRecursion::left(GroupBackend::Cyclic(Some(2)))).unwrap(),
        Context::new(WreathRecursion::adding_machine()).unwrap(),
    ]
}

fn setup(seed: u64, which: usize) -> (ChaCha8Rng, Context) {
    let ctx = contexts().swap_remove(which % 5);
    (ChaCha8Rng::seed_from_u64(seed), ctx)
}

fn point(r: &mut ChaCha8Rng) -> EventuallyPeriodicWord {
    let n = r.gen_range(0..5);
    let prefix = BitWord::from_bits((0..n).map(|_| r.gen()).collect());
    let p = r.gen_range(1..=3);
    let period = BitWord::from_bits((0..p).map(|_| r.gen()).collect());
    EventuallyPeriodicWord::new(prefix, period).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>(), which in 0usize..5) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 6, 4).unwrap();
        let ai = a.inv().unwrap();
        prop_assert!(a.mul(&ai).unwrap().is_identity());
        prop_assert_eq!(ai.inv().unwrap(), a);
    }

    #[test]
    fn products_are_canonical(seed in any::<u64>(), which in 0usize..5) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 5, 3).unwrap();
        let b = random_element(&mut r, &ctx, 5, 3).unwrap();
        let ab = a.mul(&b).unwrap();
        let again = VPhiElement::new(&ctx, ab.diagram().clone()).unwrap();
        prop_assert_eq!(again, ab);
    }

    #[test]
    fn expansion_preserves_normal_form(seed in any::<u64>(), which in 0usize..5, steps in 0usize..8) {
        let (mut r, ctx) = setup(seed, which);
        let phi = ctx.recursion();
        let k = r.gen_range(1..=6);
        let d = random_diagram(&mut r, ctx.backend(), (1, 1), k, 4);
        let normal = d.reduce(phi).unwrap();
        let mut e = d;
        for _ in 0..steps {
            let at = r.gen_range(0..e.len());
            e = e.simple_expand(phi, at).unwrap();
        }
        prop_assert_eq!(e.reduce(phi).unwrap(), normal);
    }

    #[test]
    fn action_is_a_right_action(seed in any::<u64>(), which in 0usize..5) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 5, 3).unwrap();
        let b = random_element(&mut r, &ctx, 5, 3).unwrap();
        let w = point(&mut r);
        let aw = a.image_point(&w, DEFAULT_IMAGE_BUDGET).unwrap().unwrap();
        let abw = a.mul(&b).unwrap().image_point(&w, DEFAULT_IMAGE_BUDGET).unwrap().unwrap();
        prop_assert_eq!(b.image_point(&aw, DEFAULT_IMAGE_BUDGET).unwrap().unwrap(), abw);
    }

    #[test]
    fn inverse_undoes_the_action(seed in any::<u64>(), which in 0usize..5) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 5, 3).unwrap();
        let w = point(&mut r);
        let aw = a.image_point(&w, DEFAULT_IMAGE_BUDGET).unwrap().unwrap();
        let back = a.inv().unwrap().image_point(&aw, DEFAULT_IMAGE_BUDGET).unwrap().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn rho_is_a_quasi_retract(seed in any::<u64>(), which in 0usize..2) {
        let (mut r, ctx) = setup(seed, which);
        let g = ctx.backend();
        let x = random_element(&mut r, &ctx, 5, 3).unwrap();
        let s = g.random(&mut r);
        let rx = rho(&x).unwrap();
        let moved = rho(&x.mul(&iota(&ctx, &s).unwrap()).unwrap()).unwrap();
        prop_assert!(moved == rx || moved == g.mul(&rx, &s).unwrap());
    }

    #[test]
    fn decomposition_verifies(seed in any::<u64>(), which in 0usize..2) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 6, 3).unwrap();
        let cert = decompose(&a).unwrap();
        prop_assert_eq!(&cert.target, &a);
        prop_assert!(cert.verify().unwrap());
    }

    #[test]
    fn trivial_first_label_is_one_commutator(seed in any::<u64>()) {
        let (mut r, ctx) = setup(seed, 1);
        let g = ctx.backend();
        let leaves = r.gen_range(1..=7);
        let t = random_partition(&mut r, 1, leaves, 3);
        let mut labels: Vec<GroupElement> = (0..t.len()).map(|_| g.random(&mut r)).collect();
        labels[0] = g.identity();
        let v = VPhiElement::from_labels(&ctx, &t, &labels).unwrap();
        let (p, q) = commutator_witness(&v).unwrap();
        prop_assert_eq!(p.commutator(&q).unwrap(), v);
    }

    #[test]
    fn splinter_is_multiplicative(seed in any::<u64>()) {
        let (mut r, ctx) = setup(seed, 1);
        let sp = Splinter::regular(&ctx).unwrap();
        let a = random_element(&mut r, &ctx, 5, 3).unwrap();
        let b = random_element(&mut r, &ctx, 5, 3).unwrap();
        prop_assert!(sp.check_hom(&a, &b, 20, 8, &mut r).unwrap());
    }

    #[test]
    fn germ_of_an_element_with_itself(seed in any::<u64>(), which in 0usize..5) {
        let (mut r, ctx) = setup(seed, which);
        let a = random_element(&mut r, &ctx, 5, 3).unwrap();
        prop_assert!(matches!(germ_compare(&a, &a, 32).unwrap(), GermComparison::Equivalent(_)));
    }
}

#[test]
fn odometer_counts_in_binary() {
    let ctx = Context::new(WreathRecursion::adding_machine()).unwrap();
    let t = lambda_u(&ctx, &BitWord::new(), &GroupElement::Int(1)).unwrap();
    let zero = EventuallyPeriodicWord::zero();
    for k in [0i64, 1, 2, 5, 6, 255, 1023, 1024, -1] {
        let m = k.rem_euclid(1024);
        let bits: String = (0..10).map(|i| if m >> i & 1 == 1 { '1' } else { '0' }).collect();
        assert_eq!(t.pow(k).unwrap().act_point(&zero, 10).unwrap().to_string(), bits, "t^{k}");
    }
    // the exact image of 0^∞ under t^-1 is 1^∞
    let back = t.inv().unwrap().image_point(&zero, DEFAULT_IMAGE_BUDGET).unwrap().unwrap();
    assert_eq!(back, EventuallyPeriodicWord::new(BitWord::new(), "1".parse().unwrap()).unwrap());
}

#[test]
fn lambda_support_is_the_cone() {
    let ctx = Context::diagonal(GroupBackend::Cyclic(Some(2)));
    let u: BitWord = "10".parse().unwrap();
    let x = lambda_u(&ctx, &u, &GroupElement::Int(1)).unwrap();
    let s = lsupp_approx(&x, 4).unwrap();
    let words: Vec<String> = s.included.iter().map(|w| w.to_string()).collect();
    assert_eq!(words, ["1000", "1001", "1010", "1011"]);
}

#[test]
fn iota_is_a_homomorphism() {
    let ctx = Context::diagonal(GroupBackend::Symmetric(3));
    let g = ctx.backend();
    let el = g.elements().unwrap();
    for a in &el {
        for b in &el {
            let lhs = iota(&ctx, &g.mul(a, b).unwrap()).unwrap();
            let rhs = iota(&ctx, a).unwrap().mul(&iota(&ctx, b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
