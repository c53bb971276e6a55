mod common;

use common::{budget, generator, generator_join_closure, lattices_up_to_5, named};
use proptest::prelude::*;
use quantale::{
    lattice::{enumerate_meet_endomaps, enumerate_sup_endomaps},
    raney::{a_map, bullet_quantale, c_map, is_tight, meet_closure, rani, rans, star, tight_interior},
    EndoMap, FiniteLattice, TightQuantale,
};

fn tight_lattices() -> Vec<FiniteLattice> {
    let mut out = lattices_up_to_5();
    out.extend(["b3", "M4", "product(c2,c3)", "dual(n5)"].iter().map(|s| named(s)));
    out
}

#[test]
fn tight_maps_are_the_joins_of_generators() {
    for l in tight_lattices() {
        let t = TightQuantale::new(&l, &budget()).unwrap();
        let closure = generator_join_closure(&l);
        assert_eq!(t.family().maps(), &closure[..], "on {l}");
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(c_map(&l, y).compose(&a_map(&l, x)), generator(&l, y, x));
            }
        }
    }
}

#[test]
fn tight_counts_of_diamonds_by_join_closure() {
    let counts: Vec<usize> = (2..=5).map(|n| generator_join_closure(&FiniteLattice::diamond(n)).len()).collect();
    // (n^4 - 2n^3 + 5n^2 + 4n + 4) / 2, evaluated by hand.
    assert_eq!(counts, [16, 44, 114, 262]);
}

#[test]
fn tight_maps_closed_under_joins_and_composition_on_m3() {
    let l = FiniteLattice::diamond(3);
    let t = TightQuantale::new(&l, &budget()).unwrap();
    assert_eq!(t.len(), 44);
    let maps = t.family().maps();
    assert!(is_tight(&l, &EndoMap::constant(&l, l.bot())));
    for f in maps {
        for g in maps {
            assert!(t.position(&f.join(&l, g)).is_some(), "{f:?} ∨ {g:?}");
            assert!(t.position(&f.compose(g)).is_some(), "{f:?} ∘ {g:?}");
        }
    }
}

#[test]
fn shift_relation_on_all_m3_triples() {
    let l = FiniteLattice::diamond(3);
    let t = TightQuantale::new(&l, &budget()).unwrap();
    let maps = t.family().maps();
    let stars: Vec<EndoMap> = maps.iter().map(|f| star(&l, f).unwrap()).collect();
    let mut holds = [0u64; 2];
    for f in maps {
        for (g, sg) in maps.iter().zip(&stars) {
            let fg = f.compose(g);
            for (h, sh) in maps.iter().zip(&stars) {
                let lhs = fg.leq(&l, sh);
                assert_eq!(lhs, h.compose(f).leq(&l, sg), "{f:?} {g:?} {h:?}");
                holds[usize::from(lhs)] += 1;
            }
        }
    }
    assert_eq!(holds[0] + holds[1], 44 * 44 * 44);
    assert!(holds[0] > 0 && holds[1] > 0);
}

#[test]
fn star_is_an_antitone_involution_on_tight_maps() {
    for l in tight_lattices() {
        let t = TightQuantale::new(&l, &budget()).unwrap();
        let maps = t.family().maps();
        let stars: Vec<EndoMap> = maps.iter().map(|f| star(&l, f).unwrap()).collect();
        for (f, sf) in maps.iter().zip(&stars) {
            assert!(t.position(sf).is_some());
            assert_eq!(&star(&l, sf).unwrap(), f, "on {l}");
            for (g, sg) in maps.iter().zip(&stars) {
                if f.leq(&l, g) {
                    assert!(sg.leq(&l, sf), "on {l}");
                }
            }
        }
    }
}

#[test]
fn units_are_the_identity_and_exist_exactly_on_distributive_lattices() {
    for l in tight_lattices() {
        let t = TightQuantale::new(&l, &budget()).unwrap();
        let q = t.quantale();
        let id = EndoMap::identity(&l);
        let id_tight = is_tight(&l, &id);
        assert_eq!(id_tight, l.is_distributive(), "on {l}");
        let left: Vec<usize> = q.lattice().elements().filter(|&u| q.lattice().elements().all(|x| q.mul(u, x) == x)).collect();
        let right: Vec<usize> = q.lattice().elements().filter(|&u| q.lattice().elements().all(|x| q.mul(x, u) == x)).collect();
        for u in left.iter().chain(&right) {
            assert_eq!(t.map(*u), &id, "on {l}");
        }
        assert_eq!(!left.is_empty(), id_tight, "on {l}");
        assert_eq!(q.find_unit().unit.is_some(), id_tight, "on {l}");
    }
}

#[test]
fn distributive_image_implies_tight() {
    let mut checked = 0;
    for l in tight_lattices() {
        for f in enumerate_sup_endomaps(&l, &budget()).unwrap() {
            let image = l.induced(&f.range()).unwrap();
            if image.is_distributive() {
                assert!(is_tight(&l, &f), "{f:?} on {l}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn tight_interior_is_the_largest_tight_map_below() {
    for l in lattices_up_to_5() {
        let t = TightQuantale::new(&l, &budget()).unwrap();
        for f in enumerate_sup_endomaps(&l, &budget()).unwrap() {
            let inner = tight_interior(&l, &f);
            let below: Vec<&EndoMap> = t.family().maps().iter().filter(|g| g.leq(&l, &f)).collect();
            assert!(below.contains(&&inner), "{f:?} on {l}");
            assert!(below.iter().all(|g| g.leq(&l, &inner)), "{f:?} on {l}");
        }
    }
}

#[test]
fn meet_closure_is_the_meet_of_all_meet_preserving_majorants() {
    for l in lattices_up_to_5() {
        let meets = enumerate_meet_endomaps(&l, &budget()).unwrap();
        for f in common::all_maps(&l).into_iter().filter(|f| f.is_monotone(&l)) {
            let above: Vec<&EndoMap> = meets.iter().filter(|h| f.leq(&l, h)).collect();
            let oracle = EndoMap::from_fn(&l, |x| l.meet_of(above.iter().map(|h| h[x])));
            assert_eq!(meet_closure(&l, &f).unwrap(), oracle, "{f:?} on {l}");
        }
    }
}

#[test]
fn bullet_quantale_matches_tight_quantale_on_small_lattices() {
    for name in ["chain:3", "b2", "n5", "M3", "chain:4"] {
        let l = named(name);
        let b = bullet_quantale(&l, &budget()).unwrap();
        assert!(b.report.holds(), "{name}: {:?}", b.report);
        assert_eq!(b.report.cotight_maps, b.tight.len(), "{name}");
    }
}

proptest! {
    #[test]
    fn transforms_are_adjoint_on_random_maps(
        which in 0usize..4,
        f in prop::collection::vec(0usize..12, 12),
        g in prop::collection::vec(0usize..12, 12),
    ) {
        let l = named(["M5", "chain:7", "product(b2,c3)", "b3"][which]);
        let n = l.size();
        let f = EndoMap::new(&l, f[..n].iter().map(|x| x % n).collect()).unwrap();
        let g = EndoMap::new(&l, g[..n].iter().map(|x| x % n).collect()).unwrap();
        prop_assert_eq!(rans(&l, &f).leq(&l, &g), f.leq(&l, &rani(&l, &g)));
        let sf = rans(&l, &f);
        prop_assert!(sf.is_sup_preserving(&l));
        prop_assert!(rani(&l, &g).is_meet_preserving(&l));
        for x in l.elements() {
            let oracle = l.join_of(l.elements().filter(|&t| !l.leq(x, t)).map(|t| f[t]));
            prop_assert_eq!(sf[x], oracle);
        }
    }
}
