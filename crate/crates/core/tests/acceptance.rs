//! One check per acceptance criterion. Every criterion runs even when an
//! earlier one fails; each prints a PASS/FAIL line, and the test fails if
//! any criterion does.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use quandlekit::automorphisms::{
    automorphisms_bounded, group_order_small, r4_generators, r4_relations, t2_a, t2_b, t2_generators,
    t2_relation_instances, verify_relations, IntMatrix,
};
use quandlekit::catalog::{self, finite_entries};
use quandlekit::commutators::{
    closure_equals_delta, commutator_subalgebra, contained_in_delta, cw_certificate, delta_span,
};
use quandlekit::idempotents::{
    family_covers_box, idempotents_box, idempotents_modular, registry, verify_family, DEFAULT_BUDGET,
};
use quandlekit::infinite::{order_monotonicity_sample, respects_order, FreeQuandle, IntQuandle, Side};
use quandlekit::nonassoc::{power_associative_witness, trivial_quandle_lie_analysis, DerivedAlgebra, DerivedKind};
use quandlekit::order_zero::{
    find_order, unique_products, up_sample_free, up_sample_int, zero_divisor_witness, Strategy,
};
use quandlekit::quandle::predicates;
use quandlekit::ring::{delta_square_is_zero, parse_element};
use quandlekit::substructures::{
    certify_not_extendable, certify_parametric_quandle, cs4_diagonal_part, cs4_line_part, cs4_n1, cs4_n2,
    maximal_quandles_finite, mq_reduction_check, r4_maximal_quandle,
};
use quandlekit::{CoefficientRing, FiniteQuandle, RingElement};

const Z: CoefficientRing = CoefficientRing::Integers;
const MAX_ELEMENTS: usize = 64;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(name: &str) -> Arc<FiniteQuandle> {
    catalog::get_finite(name).unwrap()
}

fn strings(v: &[RingElement]) -> BTreeSet<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn nonzero(v: Vec<RingElement>) -> Vec<RingElement> {
    v.into_iter().filter(|z| !z.is_zero()).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn idempotents_r3() -> Check {
    let found = nonzero(idempotents_box(&q("R3"), 3, DEFAULT_BUDGET).map_err(err)?);
    ensure(found.len() == 3, || format!("count {}", found.len()))?;
    ensure(strings(&found) == set(&["a0", "a1", "a2"]), || {
        format!("{:?}", strings(&found))
    })
}

fn idempotents_r4() -> Check {
    let r4 = q("R4");
    let found = nonzero(idempotents_box(&r4, 2, DEFAULT_BUDGET).map_err(err)?);
    let fams = registry("R4").map_err(err)?;
    let cov = family_covers_box(&fams, 2, DEFAULT_BUDGET).map_err(err)?;
    let solved = found
        .iter()
        .all(|z| cov.covered.iter().any(|(c, p)| c == z && p.family == "t-alpha-beta"));
    let no_zero_aug = found.iter().all(|z| !z.augmentation().is_zero());
    let mut problems = Vec::new();
    if found.len() != 6 {
        problems.push(format!("expected exactly 6 nonzero idempotents, found {}", found.len()));
    }
    if !solved {
        problems.push("not every idempotent is a t/alpha/beta instance".into());
    }
    if !cov.covers() {
        problems.push("family_covers_box is false".into());
    }
    if !no_zero_aug {
        problems.push("an idempotent has augmentation 0".into());
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn idempotents_cs4() -> Check {
    let found = nonzero(idempotents_box(&q("Cs4"), 2, DEFAULT_BUDGET).map_err(err)?);
    ensure(found.len() == 6, || format!("count {}", found.len()))?;
    let fams = registry("Cs4").map_err(err)?;
    ensure(fams.len() == 2, || "expected two families".into())?;
    for f in &fams {
        let c = verify_family(f, 2).map_err(err)?;
        ensure(c.points_per_axis > c.degree_bound, || {
            format!("{}: grid too small", f.name)
        })?;
    }
    let cov = family_covers_box(&fams, 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(cov.covers(), || format!("uncovered: {:?}", strings(&cov.uncovered)))?;
    ensure(found.iter().all(|z| cov.covered.iter().any(|(c, _)| c == z)), || {
        "an idempotent is missing from the coverage".into()
    })
}

fn idempotents_t4() -> Check {
    let t4 = q("T4");
    let found = nonzero(idempotents_box(&t4, 2, DEFAULT_BUDGET).map_err(err)?);
    let x0 = RingElement::basis(&t4, Z, 0).map_err(err)?;
    let delta = delta_span(&t4, Z).map_err(err)?;
    for z in &found {
        ensure(z.augmentation() == Z.one(), || {
            format!("{z} has augmentation {}", z.augmentation())
        })?;
        let diff = z.sub(&x0).map_err(err)?;
        ensure(delta.contains(&diff.dense()).map_err(err)?, || {
            format!("{z} is not in x0 + delta")
        })?;
    }
    let cov = family_covers_box(&registry("T4").map_err(err)?, 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(cov.covers(), || format!("uncovered: {:?}", strings(&cov.uncovered)))?;
    // Exact coverage: the family meets the box in exactly the idempotents.
    let mut in_box = 0;
    for d1 in -2i128..=2 {
        for d2 in -2i128..=2 {
            for d3 in -2i128..=2 {
                if (1 - d1 - d2 - d3).abs() <= 2 {
                    in_box += 1;
                }
            }
        }
    }
    ensure(in_box == found.len(), || {
        format!("family has {in_box} box points, search found {}", found.len())
    })
}

fn maximal_quandles_z2() -> Check {
    let r3 = q("R3");
    let zmod2 = CoefficientRing::integers_mod(2).map_err(err)?;
    let all = idempotents_modular(&r3, 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(all.len() == 8, || {
        format!("{} idempotents, expected all 8 elements", all.len())
    })?;
    let mq = maximal_quandles_finite(&all, MAX_ELEMENTS).map_err(err)?;
    let got: BTreeSet<BTreeSet<String>> = mq.quandles.iter().map(|m| strings(&m.elements)).collect();
    let want: BTreeSet<BTreeSet<String>> = [
        set(&["a0 + a1 + a2"]),
        set(&["a0", "a1", "a2"]),
        set(&["a0 + a1", "a0 + a2", "a1 + a2"]),
    ]
    .into_iter()
    .collect();
    ensure(mq.quandles.len() == 3 && got == want, || format!("{got:?}"))?;
    ensure(all.iter().all(|z| z.ring() == zmod2), || "wrong ring".into())?;
    let red = mq_reduction_check(&r3, 2, 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(!red.surjective(), || "reduction reported surjective".into())
}

fn parametric_quandles() -> Check {
    for pq in [r4_maximal_quandle(), cs4_n1(), cs4_n2()] {
        certify_parametric_quandle(&pq, 2).map_err(|e| format!("{}: {e}", pq.name))?;
    }
    let cs4 = FiniteQuandle::cs4();
    let (line, diag) = (cs4_line_part(), cs4_diagonal_part());
    for alpha in -3..=3 {
        let c = certify_not_extendable(&cs4, &line, &diag, alpha, 2).map_err(err)?;
        ensure(c.linear == 4 * alpha - 1, || {
            format!("alpha {alpha}: linear {}", c.linear)
        })?;
        ensure(c.surjective == (alpha == 0), || {
            format!("alpha {alpha}: surjective {}", c.surjective)
        })?;
    }
    let r3 = q("R3");
    let mq =
        maximal_quandles_finite(&idempotents_box(&r3, 2, DEFAULT_BUDGET).map_err(err)?, MAX_ELEMENTS).map_err(err)?;
    ensure(mq.quandles.len() == 1, || {
        format!("{} maximal quandles", mq.quandles.len())
    })?;
    ensure(strings(&mq.quandles[0].elements) == set(&["a0", "a1", "a2"]), || {
        "not {R3}".into()
    })
}

fn automorphism_counts() -> Check {
    let r3 = automorphisms_bounded(&q("R3"), 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(r3.matrices.len() == 6, || format!("R3: {}", r3.matrices.len()))?;
    let perms: BTreeSet<IntMatrix> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .map(|p| IntMatrix::permutation(p))
        .collect();
    ensure(r3.matrices.iter().cloned().collect::<BTreeSet<_>>() == perms, || {
        "R3: not all permutations".into()
    })?;

    let cs4 = q("Cs4");
    let found = automorphisms_bounded(&cs4, 2, DEFAULT_BUDGET).map_err(err)?;
    ensure(found.matrices.len() == 2, || format!("Cs4: {}", found.matrices.len()))?;

    let r4 = automorphisms_bounded(&q("R4"), 2, DEFAULT_BUDGET).map_err(err)?;
    let closure = group_order_small(&r4.matrices, 1000).map_err(err)?;
    ensure(closure.order() == Some(8), || {
        format!("R4 closure order {:?}", closure.order())
    })?;
    verify_relations(&r4_generators(), &r4_relations()).map_err(err)?;

    let t2 = automorphisms_bounded(&q("T2"), 2, DEFAULT_BUDGET).map_err(err)?;
    let inventory: BTreeSet<IntMatrix> = (-4..=4)
        .flat_map(|a| [t2_a(a), t2_b(a)])
        .filter(|m| m.max_abs_entry() <= 2)
        .collect();
    let got: BTreeSet<IntMatrix> = t2.matrices.iter().cloned().collect();
    ensure(got == inventory, || {
        format!("T2: {} found, {} in the A/B inventory", got.len(), inventory.len())
    })?;
    let rel = verify_relations(&t2_generators(), &t2_relation_instances(5)).map_err(err)?;
    ensure(rel.checked.len() == 2 + 11 * 11 * 2 + 11, || {
        format!("{} relations", rel.checked.len())
    })
}

fn commutators() -> Check {
    ensure(commutator_subalgebra(&q("R3"), Z).map_err(err)?.is_zero(), || {
        "R3 closure is nonzero".into()
    })?;
    for name in ["R4", "Cs4", "Alex(Z5,2)"] {
        ensure(closure_equals_delta(&q(name), Z).map_err(err)?, || {
            format!("{name}: closure differs from delta")
        })?;
    }
    for (name, quandle) in finite_entries() {
        ensure(contained_in_delta(&quandle, Z).map_err(err)?, || {
            format!("{name}: closure leaves delta")
        })?;
    }
    for name in ["T2", "T3", "T4", "R4", "Cs4"] {
        let c = cw_certificate(&q(name), Z, 1000, 17).map_err(err)?;
        ensure(c.witnesses.len() == 1000, || {
            format!("{name}: {} witnesses", c.witnesses.len())
        })?;
        ensure(c.witnesses.iter().all(|w| w.verify() && w.length() == 1), || {
            format!("{name}: a witness does not verify")
        })?;
        ensure(c.nonzero.verify(), || {
            format!("{name}: nonzero commutator does not verify")
        })?;
    }
    Ok(())
}

fn zero_divisors() -> Check {
    let product_is_zero = |name: &str, u: &str, v: &str| -> Check {
        let quandle = q(name);
        let (u, v) = (
            parse_element(&quandle, Z, u).map_err(err)?,
            parse_element(&quandle, Z, v).map_err(err)?,
        );
        ensure(u.mul(&v).map_err(err)?.is_zero(), || {
            format!("{name}: ({u})({v}) is not zero")
        })
    };
    product_is_zero("T2", "x0 - x1", "x0 - x1")?;
    product_is_zero("R4", "a0 + a2", "a0 - a2")?;
    let r4 = zero_divisor_witness(&q("R4"), Z, Strategy::FiniteSubquandle)
        .map_err(err)?
        .ok_or("R4: no finite-subquandle witness")?;
    ensure(
        (r4.u.to_string(), r4.v.to_string()) == ("a0 + a2".into(), "a0 - a2".into()),
        || format!("R4 witness ({}) ({})", r4.u, r4.v),
    )?;
    let mut witnesses = vec![r4];
    for (name, s) in [("T2", Strategy::Auto), ("Conj(S3)", Strategy::NotSemiLatin)] {
        let w = zero_divisor_witness(&q(name), Z, s)
            .map_err(err)?
            .ok_or_else(|| format!("{name}: no witness"))?;
        ensure(!predicates(&q(name)).semi_latin || name != "Conj(S3)", || {
            "Conj(S3) is semi-latin".into()
        })?;
        witnesses.push(w);
    }
    for w in &witnesses {
        ensure(!w.u.is_zero() && !w.v.is_zero(), || "zero factor".into())?;
        ensure(w.u.mul(&w.v).map_err(err)?.is_zero() && w.verify(), || {
            format!("({}) ({}) is not zero", w.u, w.v)
        })?;
    }
    Ok(())
}

fn orderability() -> Check {
    for (name, quandle) in finite_entries() {
        let right = find_order(&quandle, Side::Right).map_err(err)?;
        let left = find_order(&quandle, Side::Left).map_err(err)?;
        let trivial = predicates(&quandle).trivial;
        ensure(right.is_some() == trivial, || {
            format!("{name}: right order {:?}, trivial {trivial}", right.is_some())
        })?;
        if quandle.order() >= 2 {
            ensure(left.is_none(), || format!("{name}: has a left order"))?;
        }
    }
    let core = IntQuandle::CoreZ;
    let left = order_monotonicity_sample(&core, Side::Left, 10_000, 1000, 3);
    ensure(left.violations == 0 && left.trials == 10_000, || {
        format!("left violations {}", left.violations)
    })?;
    let right = order_monotonicity_sample(&core, Side::Right, 10_000, 1000, 3);
    let (x, y, z) = right.witness.ok_or("no right-monotonicity witness")?;
    ensure(!respects_order(&core, Side::Right, x, y, z), || {
        "witness respects the order".into()
    })?;
    let up = unique_products(&core, &[0, 1, 2], &[5, 6]).map_err(err)?;
    ensure(up.unique == [8, 9, 11, 12], || format!("unique {:?}", up.unique))?;
    ensure(up.max_witness == Some((2, 5, 8)), || {
        format!("max witness {:?}", up.max_witness)
    })?;
    ensure(up.min_witness == Some((0, 6, 12)), || {
        format!("min witness {:?}", up.min_witness)
    })
}

fn no_zero_divisor_sampling() -> Check {
    let core = up_sample_int(&IntQuandle::CoreZ, 10_000, 3, 2, 50, 11).map_err(err)?;
    ensure(core.trials == 10_000 && core.zero_products == 0, || {
        format!("Core(Z): {core:?}")
    })?;
    let fq2 = FreeQuandle::new(2).map_err(err)?;
    let free = up_sample_free(&fq2, 1000, 3, 2, 4, 11).map_err(err)?;
    ensure(free.trials == 1000 && free.zero_products == 0, || {
        format!("FQ2: {free:?}")
    })
}

fn lie_and_power_associativity() -> Check {
    let lie = trivial_quandle_lie_analysis(4, CoefficientRing::Rationals).map_err(err)?;
    ensure(lie.l2_rank == 3, || format!("rank {}", lie.l2_rank))?;
    let basis: Vec<String> = lie.l2_basis.iter().map(|e| e.to_string()).collect();
    ensure(basis == ["x1 - x2", "x2 - x3", "x3 - x4"], || {
        format!("basis {basis:?}")
    })?;
    ensure(lie.l2_basis_verified, || "basis not verified".into())?;
    ensure(lie.l2_equals_l3, || "L^2 != L^3".into())?;
    ensure(lie.l2_squared_zero, || "(L^2)^2 != 0".into())?;
    ensure(lie.j2_equals_j == Some(true), || {
        format!("J^2 = J: {:?}", lie.j2_equals_j)
    })?;
    for (name, expect) in [("R3", true), ("Cs4", true), ("T4", false)] {
        let alg = DerivedAlgebra::new(&q(name), Z, DerivedKind::Raw).map_err(err)?;
        let r = power_associative_witness(&alg, 1, 10_000, 5).map_err(err)?;
        ensure(r.bound <= 4, || format!("{name}: box {}", r.bound))?;
        ensure(r.witness.is_some() == expect, || {
            format!("{name}: witness {:?}", r.witness.is_some())
        })?;
        if !expect {
            ensure(r.exhaustive, || format!("{name}: box 4 not exhausted"))?;
        }
    }
    Ok(())
}

fn delta_square() -> Check {
    for (name, quandle) in finite_entries() {
        let trivial = predicates(&quandle).trivial;
        let zero = delta_square_is_zero(&quandle, Z);
        ensure(zero == trivial, || {
            format!("{name}: delta^2 = 0 is {zero}, trivial is {trivial}")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 13] = [
        ("idempotents of Z[R3] in box 3", idempotents_r3),
        ("idempotents of Z[R4] in box 2", idempotents_r4),
        ("idempotents of Z[Cs4] in box 2", idempotents_cs4),
        ("idempotents of Z[T4] in box 2", idempotents_t4),
        ("maximal quandles of Z2[R3]", maximal_quandles_z2),
        ("parametric maximal quandles", parametric_quandles),
        ("bounded automorphism groups", automorphism_counts),
        ("commutator closures and width", commutators),
        ("zero-divisor witnesses", zero_divisors),
        ("orderability and unique products", orderability),
        ("no zero-divisors by sampling", no_zero_divisor_sampling),
        ("Lie analysis and power-associativity", lie_and_power_associativity),
        ("delta^2 = 0 iff trivial", delta_square),
    ];
    let mut failed = Vec::new();
    let mut stderr = std::io::stderr();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        // Written directly so the lines show without --nocapture.
        let line = match &outcome {
            Ok(()) => format!("criterion {:2}: PASS  {name}\n", k + 1),
            Err(e) => format!("criterion {:2}: FAIL  {name}: {e}\n", k + 1),
        };
        stderr.write_all(line.as_bytes()).unwrap();
        if outcome.is_err() {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
