mod common;

use common::{budget, powerset, semigroups, small_quantales};
use proptest::prelude::*;
use quantale::{
    quantale::check_strongly_continuous,
    raney::{self, sup_endomap_quantale},
    EndoMap, Elem, FiniteLattice, FrobeniusQuantale, LatticeMap, Quantale, TightQuantale,
};

fn assert_residuation(name: &str, q: &Quantale) {
    let l = q.lattice();
    let res = q.residuals();
    for x in l.elements() {
        for y in l.elements() {
            for z in l.elements() {
                let below = l.leq(q.mul(x, y), z);
                assert_eq!(below, l.leq(y, res.left(x, z)), "{name}: x\\z at ({x}, {y}, {z})");
                assert_eq!(below, l.leq(x, res.right(z, y)), "{name}: z/y at ({x}, {y}, {z})");
            }
        }
    }
}

#[test]
fn residuation_on_small_quantales() {
    for (name, q) in small_quantales() {
        assert!(q.size() <= 10, "{name}");
        assert_residuation(&name, &q);
    }
}

#[test]
fn residuation_on_every_powerset_of_a_two_or_three_element_semigroup() {
    let all: Vec<_> = semigroups(2).into_iter().chain(semigroups(3)).collect();
    // Labelled associative tables: 8 on two elements, 113 on three.
    assert_eq!(all.len(), 8 + 113);
    for s in &all {
        assert_residuation("powerset", &powerset(s));
    }
}

/// Frobenius quantales with at most 45 elements.
fn frobenius_battery() -> Vec<(String, FrobeniusQuantale)> {
    let mut out: Vec<(String, FrobeniusQuantale)> = small_quantales()
        .into_iter()
        .filter(|(_, q)| q.size() <= 5)
        .map(|(name, q)| (format!("Chu of {name}"), q.chu()))
        .collect();
    for name in ["chain:3", "b2", "n5", "M3"] {
        let l = common::named(name);
        out.push((format!("tight({name})"), TightQuantale::new(&l, &budget()).unwrap().frobenius().clone()));
    }
    let m3 = FiniteLattice::diamond(3);
    let lneg = EndoMap::new(&m3, vec![4, 2, 3, 1, 0]).unwrap();
    let rneg = EndoMap::new(&m3, vec![4, 3, 1, 2, 0]).unwrap();
    out.push(("trivial M3 with rotating negations".into(), FrobeniusQuantale::trivial(m3, lneg, rneg).unwrap()));
    let luk = Quantale::from_fn(FiniteLattice::chain(5), |x, y| (x + y).saturating_sub(4)).unwrap();
    out.push(("Lukasiewicz 5-chain".into(), FrobeniusQuantale::from_dualizing(luk, 0).unwrap()));
    out
}

#[test]
fn serre_identities_hold_for_validated_frobenius_structures() {
    for (name, f) in frobenius_battery() {
        let q = f.quantale();
        let (ln, rn) = (f.lneg(), f.rneg());
        for x in q.lattice().elements() {
            for y in q.lattice().elements() {
                assert_eq!(q.residual_left(x, y), q.residual_right(rn[x], rn[y]), "{name}: first at ({x}, {y})");
                assert_eq!(q.residual_right(x, y), q.residual_left(ln[x], ln[y]), "{name}: second at ({x}, {y})");
                assert_eq!(q.residual_left(ln[x], y), q.residual_right(x, rn[y]), "{name}: third at ({x}, {y})");
            }
        }
    }
}

#[test]
fn unit_candidate_contracts_in_every_frobenius_quantale() {
    let mut unital = 0;
    for (name, f) in frobenius_battery() {
        let q = f.quantale();
        let u = q.find_unit();
        assert!(u.left_contracts && u.right_contracts, "{name}: {u:?}");
        if let Some(one) = u.unit {
            assert_eq!(one, u.candidate, "{name}");
            unital += 1;
        }
    }
    assert!(unital > 0);
}

#[test]
fn negated_unit_is_dualizing() {
    let mut seen = 0;
    for (name, f) in frobenius_battery() {
        let q = f.quantale();
        let Some(one) = q.find_unit().unit else { continue };
        let zero = f.lneg()[one];
        assert_eq!(zero, f.rneg()[one], "{name}");
        assert!(q.element_flags(zero).dualizing, "{name}");
        let again = FrobeniusQuantale::from_dualizing(q.clone(), zero).unwrap();
        assert_eq!((again.lneg(), again.rneg()), (f.lneg(), f.rneg()), "{name}");
        seen += 1;
    }
    assert!(seen >= 3, "only {seen} unital structures in the battery");
}

#[test]
fn chu_is_unital_exactly_when_the_base_is() {
    let mut both = [0, 0];
    let bases = small_quantales()
        .into_iter()
        .filter(|(_, q)| q.size() <= 8)
        .chain(semigroups(2).into_iter().map(|s| ("powerset".to_string(), powerset(&s))));
    for (name, q) in bases {
        let base = q.find_unit().unit.is_some();
        let chu = q.chu();
        assert_eq!(chu.quantale().find_unit().unit.is_some(), base, "{name}");
        both[usize::from(base)] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

/// `Q × 2` with `(x, a)(y, b) = (xy ∨ a·y ∨ b·x, a ∧ b)`; `(x, a)` has index `2x + a`.
fn adjoin_unit(q: &Quantale) -> Quantale {
    let l = q.lattice();
    let two = FiniteLattice::chain(2);
    Quantale::from_fn(l.product(&two), |i, j| {
        let ((x, a), (y, b)) = ((i / 2, i % 2), (j / 2, j % 2));
        let mut v = q.mul(x, y);
        if a == 1 {
            v = l.join(v, y);
        }
        if b == 1 {
            v = l.join(v, x);
        }
        v * 2 + (a & b)
    })
    .unwrap()
}

#[test]
fn embedding_into_chu_of_the_unitization_is_not_strongly_continuous() {
    for (name, l) in [("2-chain", FiniteLattice::chain(2)), ("M3", FiniteLattice::diamond(3))] {
        let q = Quantale::trivial(l);
        assert!(q.find_unit().unit.is_none());
        let q1 = adjoin_unit(&q);
        assert_eq!(q1.find_unit().unit, Some(1), "{name}");
        let chu = q1.chu();
        let m = q1.size();
        let top1 = q1.lattice().top();
        let image: Vec<Elem> = q.lattice().elements().map(|x| (2 * x) * m + top1).collect();
        let report = check_strongly_continuous(&q, chu.quantale(), &image).unwrap();
        assert!(report.joins.holds && report.mult.holds, "{name}: {report:?}");
        assert!(!report.holds(), "{name}");
        assert!(!report.residual_left.holds && !report.residual_right.holds, "{name}: {report:?}");
        assert_eq!(report.preserves_unit, None);
    }
}

#[test]
fn non_unital_frobenius_quantale_embeds_strongly_in_no_unital_powerset() {
    let two = FiniteLattice::chain(2);
    let neg = EndoMap::new(&two, vec![1, 0]).unwrap();
    let src = FrobeniusQuantale::trivial(two, neg.clone(), neg).unwrap();
    let q = src.quantale();
    assert!(q.find_unit().unit.is_none());
    let mut targets = 0;
    for s in semigroups(2).into_iter().chain(semigroups(3)) {
        let t = powerset(&s);
        if t.find_unit().unit.is_none() {
            continue;
        }
        targets += 1;
        for a in t.lattice().elements() {
            for b in t.lattice().elements() {
                if a == b {
                    continue;
                }
                let report = check_strongly_continuous(q, &t, &[a, b]).unwrap();
                assert!(!report.holds(), "{:?} into {:?} via [{a}, {b}]", q, s.rows());
            }
        }
    }
    assert!(targets > 10);
}

/// `f ↦ e ∘ f ∘ λ(e)` for an endpoint-preserving embedding `e` of chains.
fn refinement(small: usize, large: usize, points: &[Elem]) {
    let (c0, c1) = (FiniteLattice::chain(small), FiniteLattice::chain(large));
    let e = LatticeMap::new(&c0, &c1, points.to_vec()).unwrap();
    assert!(e.is_sup_preserving() && e.is_meet_preserving());
    let lam = e.left_adjoint().unwrap();
    let (fam0, q0) = sup_endomap_quantale(&c0, &budget()).unwrap();
    let (fam1, q1) = sup_endomap_quantale(&c1, &budget()).unwrap();
    let lift = |f: &EndoMap| EndoMap::from_fn(&c1, |y| e.apply(f[lam.apply(y)]));
    let image: Vec<Elem> = fam0.maps().iter().map(|f| fam1.position(&lift(f)).unwrap()).collect();
    let report = check_strongly_continuous(&q0, &q1, &image).unwrap();
    assert!(report.holds(), "{small} into {large}: {report:?}");
    assert_eq!(report.preserves_unit, Some(false), "{small} into {large}");
    for f in fam0.maps() {
        let star0 = raney::star(&c0, f).unwrap();
        assert_eq!(lift(&star0), raney::star(&c1, &lift(f)).unwrap(), "duality at {f:?}");
        for g in fam0.maps() {
            assert_eq!(lift(&f.compose(g)), lift(f).compose(&lift(g)));
        }
    }
}

#[test]
fn chain_refinements_are_strongly_continuous_without_preserving_the_unit() {
    refinement(2, 3, &[0, 2]);
    refinement(2, 4, &[0, 3]);
    refinement(3, 4, &[0, 1, 3]);
    refinement(3, 4, &[0, 2, 3]);
    refinement(3, 5, &[0, 2, 4]);
}

#[test]
fn identity_embedding_preserves_everything() {
    for (name, q) in small_quantales() {
        let id: Vec<Elem> = q.lattice().elements().collect();
        let report = check_strongly_continuous(&q, &q, &id).unwrap();
        assert!(report.holds(), "{name}");
        assert_ne!(report.preserves_unit, Some(false), "{name}");
    }
}

proptest! {
    #[test]
    fn residuals_are_galois_adjoints_on_random_lukasiewicz_chains(k in 2usize..9, x in 0usize..9, y in 0usize..9, z in 0usize..9) {
        let q = Quantale::from_fn(FiniteLattice::chain(k), |a, b| (a + b).saturating_sub(k - 1)).unwrap();
        let (x, y, z) = (x % k, y % k, z % k);
        let l = q.lattice();
        prop_assert_eq!(l.leq(q.mul(x, y), z), l.leq(y, q.residual_left(x, z)));
        prop_assert_eq!(l.leq(q.mul(x, y), z), l.leq(x, q.residual_right(z, y)));
        prop_assert_eq!(q.residual_left(x, z), (k - 1 - x + z).min(k - 1));
    }
}
