use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use quandlekit::automorphisms::{automorphisms_bounded, cs4_rejected_shapes, multiplicativity_failures, IntMatrix};
use quandlekit::catalog::{self, finite_entries};
use quandlekit::commutators::{closure_equals_delta, commutator_subalgebra, contained_in_delta, cw_certificate};
use quandlekit::idempotents::{idempotents_box, idempotents_modular, DEFAULT_BUDGET};
use quandlekit::infinite::{fq_equal, FreeQuandleElement, IntQuandle, Letter, Side};
use quandlekit::nonassoc::{non_associativity_report, DerivedAlgebra, DerivedKind};
use quandlekit::order_zero::{find_order, unique_products, zero_divisor_witness, Strategy as ZdStrategy};
use quandlekit::quandle::{predicates, quandle_automorphisms, verify_quandle};
use quandlekit::ring::delta_square_is_zero;
use quandlekit::substructures::{is_ring_quandle, maximal_quandles_finite};
use quandlekit::{CoefficientRing, FiniteGroup, FiniteQuandle, IntLatticeBasis, RingElement};

const Z: CoefficientRing = CoefficientRing::Integers;

fn q(name: &str) -> Arc<FiniteQuandle> {
    catalog::get_finite(name).unwrap()
}

fn small_catalog() -> Vec<(&'static str, Arc<FiniteQuandle>)> {
    finite_entries().into_iter().filter(|(_, q)| q.order() <= 6).collect()
}

fn constructed() -> Vec<FiniteQuandle> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(FiniteQuandle::trivial(n).unwrap());
        let g = FiniteGroup::cyclic(n).unwrap();
        out.push(FiniteQuandle::conj(&g).unwrap());
        out.push(FiniteQuandle::core(&g).unwrap());
        for phi in FiniteGroup::cyclic_automorphisms(n) {
            out.push(FiniteQuandle::alex(&g, &phi).unwrap());
        }
    }
    for n in 3..=8 {
        out.push(FiniteQuandle::dihedral(n).unwrap());
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    out.push(FiniteQuandle::conj(&s3).unwrap());
    out.push(FiniteQuandle::core(&s3).unwrap());
    out.push(FiniteQuandle::cs4());
    out
}

fn element(q: &Arc<FiniteQuandle>, v: &[i128]) -> RingElement {
    RingElement::from_ints(q, Z, &v[..q.order()]).unwrap()
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<i128>> {
    proptest::collection::vec(-5i128..=5, n)
}

// Lattices and scalars

proptest! {
    #[test]
    fn hnf_is_independent_of_insertion_order(
        vs in proptest::collection::vec(proptest::collection::vec(-6i128..=6, 4), 0..6),
        seed in any::<u64>(),
    ) {
        let a = IntLatticeBasis::from_vectors(4, &vs).unwrap();
        let mut shuffled = vs.clone();
        let k = shuffled.len().max(1);
        shuffled.rotate_left(seed as usize % k);
        shuffled.reverse();
        let b = IntLatticeBasis::from_vectors(4, &shuffled).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
    }

    #[test]
    fn lattice_membership_is_closed_under_scaling(
        vs in proptest::collection::vec(proptest::collection::vec(-6i128..=6, 3), 1..5),
        pick in any::<prop::sample::Index>(),
        coeffs in proptest::collection::vec(-3i128..=3, 5),
        k in -20i128..=20,
    ) {
        let b = IntLatticeBasis::from_vectors(3, &vs).unwrap();
        let mut v = vs[pick.index(vs.len())].clone();
        for (w, c) in vs.iter().zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(w) {
                *x += c * y;
            }
        }
        prop_assert!(b.contains(&v).unwrap());
        let kv: Vec<i128> = v.iter().map(|x| k * x).collect();
        prop_assert!(b.contains(&kv).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn modular_scalars_agree_with_integer_reduction(
        m in 2u64..=200,
        a in -1_000_000i128..=1_000_000,
        b in -1_000_000i128..=1_000_000,
    ) {
        let r = CoefficientRing::integers_mod(m).unwrap();
        let (x, y) = (r.from_int(a), r.from_int(b));
        prop_assert_eq!(x + y, r.from_int(a + b));
        prop_assert_eq!(x - y, r.from_int(a - b));
        prop_assert_eq!(x * y, r.from_int(a * b));
        prop_assert_eq!(-x, r.from_int(-a));
    }
}

// Finite quandles

#[test]
fn constructors_pass_verification() {
    for q in constructed() {
        assert!(verify_quandle(&q.table()).is_ok());
    }
}

#[test]
fn right_translations_are_permutations() {
    for q in constructed() {
        for y in 0..q.order() {
            let s = q.right_translation(y);
            let image: BTreeSet<usize> = s.as_slice().iter().copied().collect();
            assert_eq!(image.len(), q.order());
            for a in 0..q.order() {
                for b in 0..q.order() {
                    assert_eq!(s.apply(q.mul(a, b)), q.mul(s.apply(a), s.apply(b)));
                }
            }
        }
    }
}

#[test]
fn latin_implies_semi_latin() {
    for q in constructed() {
        let p = predicates(&q);
        assert!(!p.latin || p.semi_latin);
    }
}

#[test]
fn cores_are_involutary() {
    for n in 1..=8 {
        let q = FiniteQuandle::core(&FiniteGroup::cyclic(n).unwrap()).unwrap();
        assert!(predicates(&q).involutary, "Core(Z{n})");
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    assert!(predicates(&FiniteQuandle::core(&s3).unwrap()).involutary);
}

#[test]
fn alexander_semi_latin_iff_fixed_point_free() {
    for n in 1..=12 {
        let g = FiniteGroup::cyclic(n).unwrap();
        for phi in FiniteGroup::cyclic_automorphisms(n) {
            let fixed_point_free = (1..n).all(|a| phi[a] != a);
            let q = FiniteQuandle::alex(&g, &phi).unwrap();
            assert_eq!(predicates(&q).semi_latin, fixed_point_free, "Z{n}, phi {phi:?}");
        }
    }
}

// Infinite quandles

fn fq_element(rank: usize) -> impl Strategy<Value = FreeQuandleElement> {
    (0..rank, proptest::collection::vec((0..rank, any::<bool>()), 0..6)).prop_map(move |(g, w)| {
        let word: Vec<Letter> = w.into_iter().map(|(a, inv)| Letter::new(a, inv)).collect();
        FreeQuandleElement::new(rank, g, &word).unwrap()
    })
}

fn is_normal(x: &FreeQuandleElement) -> bool {
    let w = x.word();
    let reduced = w
        .windows(2)
        .all(|p| !(p[0].gen == p[1].gen && p[0].inverse != p[1].inverse));
    reduced && w.first().is_none_or(|l| l.gen != x.gen())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn free_quandle_products_are_normal(x in fq_element(3), y in fq_element(3)) {
        prop_assert!(is_normal(&x.multiply(&y).unwrap()));
        prop_assert!(is_normal(&x.right_divide(&y).unwrap()));
    }

    #[test]
    fn free_quandle_axioms(x in fq_element(2), y in fq_element(2), z in fq_element(2)) {
        prop_assert!(fq_equal(&x.multiply(&x).unwrap(), &x));
        let lhs = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let rhs = x.multiply(&z).unwrap().multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert!(fq_equal(&lhs, &rhs));
    }

    #[test]
    fn free_quandle_right_division_is_inverse(x in fq_element(3), y in fq_element(3)) {
        let z = x.right_divide(&y).unwrap();
        prop_assert!(fq_equal(&z.multiply(&y).unwrap(), &x));
        prop_assert!(fq_equal(&x.multiply(&y).unwrap().right_divide(&y).unwrap(), &x));
    }

    #[test]
    fn core_z_is_involutary(a in -1_000_000i128..=1_000_000, b in -1_000_000i128..=1_000_000) {
        let core = IntQuandle::CoreZ;
        prop_assert_eq!(core.mul(core.mul(a, b), b), a);
    }
}

// Quandle rings

fn ring_quandle() -> impl Strategy<Value = Arc<FiniteQuandle>> {
    proptest::sample::select(small_catalog().into_iter().map(|(_, q)| q).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn augmentation_is_a_ring_homomorphism(q in ring_quandle(), u in coeffs(6), v in coeffs(6)) {
        let (u, v) = (element(&q, &u), element(&q, &v));
        prop_assert_eq!(u.add(&v).unwrap().augmentation(), u.augmentation() + v.augmentation());
        prop_assert_eq!(u.mul(&v).unwrap().augmentation(), u.augmentation() * v.augmentation());
    }

    #[test]
    fn augmentation_ideal_is_two_sided(q in ring_quandle(), u in coeffs(6), v in coeffs(6)) {
        let mut u = u[..q.order()].to_vec();
        u[0] -= u.iter().sum::<i128>();
        let (u, v) = (element(&q, &u), element(&q, &v));
        prop_assert!(u.augmentation().is_zero());
        prop_assert!(u.mul(&v).unwrap().augmentation().is_zero());
        prop_assert!(v.mul(&u).unwrap().augmentation().is_zero());
    }

    #[test]
    fn multiplication_distributes(q in ring_quandle(), u in coeffs(6), v in coeffs(6), w in coeffs(6)) {
        let (u, v, w) = (element(&q, &u), element(&q, &v), element(&q, &w));
        let left = u.mul(&v.add(&w).unwrap()).unwrap();
        prop_assert_eq!(left, u.mul(&v).unwrap().add(&u.mul(&w).unwrap()).unwrap());
        let right = v.add(&w).unwrap().mul(&u).unwrap();
        prop_assert_eq!(right, v.mul(&u).unwrap().add(&w.mul(&u).unwrap()).unwrap());
    }
}

#[test]
fn delta_square_vanishes_exactly_for_trivial_quandles() {
    for (name, quandle) in small_catalog() {
        assert_eq!(
            delta_square_is_zero(&quandle, Z),
            predicates(&quandle).trivial,
            "{name}"
        );
    }
}

// Idempotents

fn box_idempotents() -> Vec<(&'static str, Arc<FiniteQuandle>, Vec<RingElement>)> {
    small_catalog()
        .into_iter()
        .filter(|(_, q)| q.order() <= 4)
        .map(|(name, q)| {
            let found = idempotents_box(&q, 2, DEFAULT_BUDGET).unwrap();
            (name, q, found)
        })
        .collect()
}

#[test]
fn idempotent_augmentations_are_zero_or_one() {
    for (name, _, found) in box_idempotents() {
        for z in &found {
            let e = z.augmentation();
            assert!(e.is_zero() || e.is_one(), "{name}: {z}");
        }
    }
    for m in [3, 5, 7] {
        for z in idempotents_modular(&q("R3"), m, DEFAULT_BUDGET).unwrap() {
            let e = z.augmentation();
            assert!(e.is_zero() || e.is_one(), "Z{m}[R3]: {z}");
        }
    }
}

#[test]
fn idempotent_sets_are_closed_under_quandle_automorphisms() {
    for (name, q, found) in box_idempotents() {
        let set: BTreeSet<&RingElement> = found.iter().collect();
        for sigma in quandle_automorphisms(&q).unwrap() {
            for z in &found {
                let image = z.permute(sigma.as_slice());
                assert!(set.contains(&image), "{name}: {z} maps to {image}");
            }
        }
    }
}

#[test]
fn basis_idempotents_are_the_basis() {
    for (name, q, _) in box_idempotents() {
        for bound in 1..=2 {
            let found = idempotents_box(&q, bound, DEFAULT_BUDGET).unwrap();
            let basis: BTreeSet<usize> = found.iter().filter_map(|z| z.as_basis_element()).collect();
            assert_eq!(basis, (0..q.order()).collect(), "{name}, bound {bound}");
        }
    }
}

#[test]
fn no_idempotent_of_t_n_or_r4_lies_in_delta() {
    for name in ["T1", "T2", "T3", "T4", "R4"] {
        for z in idempotents_box(&q(name), 2, DEFAULT_BUDGET).unwrap() {
            assert!(z.is_zero() || !z.augmentation().is_zero(), "{name}: {z}");
        }
    }
}

// Maximal quandles

fn maximal_cases() -> Vec<(String, Vec<RingElement>)> {
    let mut out = Vec::new();
    for name in ["T2", "T3", "R3", "Cs4", "R4"] {
        out.push((
            format!("Z[{name}]"),
            idempotents_box(&q(name), 2, DEFAULT_BUDGET).unwrap(),
        ));
    }
    for m in [2, 3] {
        for name in ["T2", "R3", "Cs4"] {
            out.push((
                format!("Z{m}[{name}]"),
                idempotents_modular(&q(name), m, DEFAULT_BUDGET).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn maximal_quandles_are_maximal_ring_quandles() {
    for (label, cands) in maximal_cases() {
        let mq = maximal_quandles_finite(&cands, 64).unwrap();
        assert!(!mq.quandles.is_empty(), "{label}");
        for m in &mq.quandles {
            assert!(is_ring_quandle(&m.elements).unwrap().holds(), "{label}");
            for c in cands.iter().filter(|c| !c.is_zero() && !m.contains(c)) {
                let mut bigger = m.elements.clone();
                bigger.push(c.clone());
                assert!(
                    !is_ring_quandle(&bigger).unwrap().holds(),
                    "{label}: {c} extends a maximal quandle"
                );
            }
        }
    }
}

#[test]
fn trivial_quandle_rings_have_one_maximal_quandle() {
    for (name, bound) in [("T1", 2), ("T2", 2), ("T3", 2), ("T4", 1)] {
        let quandle = q(name);
        let found = idempotents_box(&quandle, bound, DEFAULT_BUDGET).unwrap();
        let slice: BTreeSet<RingElement> = found.iter().filter(|z| z.augmentation().is_one()).cloned().collect();
        let mq = maximal_quandles_finite(&found, 256).unwrap();
        assert_eq!(mq.quandles.len(), 1, "{name}");
        let got: BTreeSet<RingElement> = mq.quandles[0].elements.iter().cloned().collect();
        assert_eq!(got, slice, "{name}");
    }
}

// Automorphisms

#[test]
fn quandle_automorphisms_are_ring_automorphisms() {
    for name in ["T2", "T3", "R3", "Cs4", "R4", "Core(Z5)", "Alex(Z5,2)"] {
        let quandle = q(name);
        let found: BTreeSet<IntMatrix> = automorphisms_bounded(&quandle, 1, DEFAULT_BUDGET)
            .unwrap()
            .matrices
            .into_iter()
            .collect();
        for sigma in quandle_automorphisms(&quandle).unwrap() {
            assert!(found.contains(&IntMatrix::permutation(sigma.as_slice())), "{name}");
        }
    }
}

#[test]
fn bounded_automorphisms_are_inverse_closed() {
    for name in ["T2", "T3", "R3", "Cs4", "R4"] {
        let search = automorphisms_bounded(&q(name), 2, DEFAULT_BUDGET).unwrap();
        let set: BTreeSet<&IntMatrix> = search.matrices.iter().collect();
        for (k, m) in search.matrices.iter().enumerate() {
            let inv = m.inverse().expect("unimodular");
            if inv.max_abs_entry() <= 2 {
                assert!(set.contains(&inv), "{name}: inverse missing");
            } else {
                assert!(search.truncated_inverses.contains(&k), "{name}: truncation not flagged");
            }
        }
        assert!(search.inverse_closed, "{name}");
    }
}

#[test]
fn rejected_cs4_shapes_break_x_times_z() {
    let cs4 = q("Cs4");
    let (x, y, z) = (0, 1, 2);
    assert_eq!(cs4.mul(x, z), y);
    for shape in cs4_rejected_shapes() {
        let fails = multiplicativity_failures(&cs4, &shape);
        assert!(fails.contains(&(x, z)));
        // y*z = x fails as well, by the symmetry swapping x and y.
        assert_eq!(fails, [(x, z), (y, z)]);
    }
}

// Commutators

#[test]
fn commutator_closure_lies_in_delta() {
    for (name, quandle) in finite_entries() {
        assert!(contained_in_delta(&quandle, Z).unwrap(), "{name}");
    }
}

#[test]
fn commutativity_iff_zero_closure() {
    for (name, quandle) in small_catalog() {
        let zero = commutator_subalgebra(&quandle, Z).unwrap().is_zero();
        assert_eq!(zero, predicates(&quandle).commutative, "{name}");
    }
}

#[test]
fn strongly_non_commutative_closure_is_delta() {
    let mut seen = 0;
    for (name, quandle) in small_catalog() {
        if predicates(&quandle).strongly_non_commutative {
            seen += 1;
            assert!(closure_equals_delta(&quandle, Z).unwrap(), "{name}");
        }
    }
    assert!(seen > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cw_certificates_always_verify(
        name in proptest::sample::select(vec!["T2", "T3", "T4", "R4", "Cs4"]),
        seed in any::<u64>(),
    ) {
        let c = cw_certificate(&q(name), Z, 100, seed).unwrap();
        prop_assert_eq!(c.witnesses.len(), 100);
        prop_assert!(c.witnesses.iter().all(|w| w.verify()));
    }
}

// Orders and zero-divisors

#[test]
fn right_orders_exist_only_for_trivial_quandles() {
    for (name, quandle) in small_catalog() {
        let right = find_order(&quandle, Side::Right).unwrap();
        assert_eq!(right.is_some(), predicates(&quandle).trivial, "{name}");
        if let Some(o) = right {
            assert!(o.respects(&quandle));
        }
        if quandle.order() >= 2 {
            assert!(find_order(&quandle, Side::Left).unwrap().is_none(), "{name}");
        }
    }
}

#[test]
fn non_trivial_cores_are_not_right_orderable() {
    // Core(Z1) and Core(Z2) are trivial and carry a right order.
    for n in 1..=6 {
        let core = FiniteQuandle::core(&FiniteGroup::cyclic(n).unwrap()).unwrap();
        let right = find_order(&core, Side::Right).unwrap();
        assert_eq!(right.is_some(), n <= 2, "Core(Z{n})");
    }
}

proptest! {
    #[test]
    fn unique_products_in_core_z_have_extreme_witnesses(
        a in proptest::collection::btree_set(-30i128..=30, 1..6),
        b in proptest::collection::btree_set(-30i128..=30, 1..6),
    ) {
        let (a, b): (Vec<i128>, Vec<i128>) = (a.into_iter().collect(), b.into_iter().collect());
        let up = unique_products(&IntQuandle::CoreZ, &a, &b).unwrap();
        let (x, y, p) = up.max_witness.expect("a_max witness");
        prop_assert_eq!(IntQuandle::CoreZ.mul(x, y), p);
        prop_assert!(up.unique.contains(&p));
        let (x, y, p) = up.min_witness.expect("a_min witness");
        prop_assert_eq!(IntQuandle::CoreZ.mul(x, y), p);
        prop_assert!(up.unique.contains(&p));
    }
}

#[test]
fn zero_divisor_witnesses_multiply_to_zero() {
    let strategies = [
        ZdStrategy::Auto,
        ZdStrategy::TrivialSubquandle,
        ZdStrategy::FiniteSubquandle,
        ZdStrategy::NotSemiLatin,
        ZdStrategy::Inert,
    ];
    let mut found = 0;
    for (name, quandle) in small_catalog() {
        for s in strategies {
            if let Ok(Some(w)) = zero_divisor_witness(&quandle, Z, s) {
                found += 1;
                assert!(!w.u.is_zero() && !w.v.is_zero(), "{name}");
                assert!(w.u.mul(&w.v).unwrap().is_zero(), "{name} {s:?}");
                assert!(w.verify());
            }
        }
    }
    assert!(found > 0);
}

// Derived algebras

fn trivial_basis_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

#[test]
fn minus_algebra_of_trivial_quandles_is_lie() {
    for n in 1..=5 {
        let t = Arc::new(FiniteQuandle::trivial(n).unwrap());
        let alg = DerivedAlgebra::new(&t, Z, DerivedKind::Minus).unwrap();
        let x: Vec<RingElement> = (0..n).map(|i| alg.basis(i).unwrap()).collect();
        for i in 0..n {
            for j in 0..n {
                let sum = alg
                    .mul(&x[i], &x[j])
                    .unwrap()
                    .add(&alg.mul(&x[j], &x[i]).unwrap())
                    .unwrap();
                assert!(sum.is_zero());
            }
        }
        for (i, j, k) in trivial_basis_triples(n) {
            let term = |a: &RingElement, b: &RingElement, c: &RingElement| alg.mul(a, &alg.mul(b, c).unwrap()).unwrap();
            let jacobi = term(&x[i], &x[j], &x[k])
                .add(&term(&x[j], &x[k], &x[i]))
                .unwrap()
                .add(&term(&x[k], &x[i], &x[j]))
                .unwrap();
            assert!(jacobi.is_zero(), "T{n}: {i} {j} {k}");
        }
        for i in 0..n.saturating_sub(1) {
            let e = x[i].sub(&x[i + 1]).unwrap();
            for xj in &x {
                assert_eq!(alg.mul(&e, xj).unwrap(), e);
                assert_eq!(alg.mul(xj, &e).unwrap(), e.neg());
            }
        }
    }
}

#[test]
fn plus_algebra_of_trivial_quandles_averages() {
    let qq = CoefficientRing::Rationals;
    let half = qq.from_fraction(1, 2).unwrap();
    for n in 1..=4 {
        let t = Arc::new(FiniteQuandle::trivial(n).unwrap());
        let alg = DerivedAlgebra::new(&t, qq, DerivedKind::Plus).unwrap();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (alg.basis(i).unwrap(), alg.basis(j).unwrap());
                let mean = a.add(&b).unwrap().scale(half).unwrap();
                assert_eq!(alg.mul(&a, &b).unwrap(), mean);
            }
        }
    }
}

#[test]
fn non_trivial_quandle_rings_break_an_identity() {
    for (name, quandle) in small_catalog() {
        if predicates(&quandle).trivial {
            continue;
        }
        let report = non_associativity_report(&quandle, Z, 2, 2000, 7).unwrap();
        assert!(report.any_failure(), "{name}");
    }
}
