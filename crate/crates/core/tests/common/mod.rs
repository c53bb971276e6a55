#![allow(dead_code)]

use quantale::{
    phase::{FiniteSemigroup, PowersetQuantale},
    Budget, EndoMap, Elem, FiniteLattice, LatticeSpec, Quantale, TightQuantale,
};

pub fn budget() -> Budget {
    Budget::default()
}

pub fn named(name: &str) -> FiniteLattice {
    name.parse::<LatticeSpec>().unwrap().build()
}

/// One representative of every lattice with at most five elements.
pub fn lattices_up_to_5() -> Vec<FiniteLattice> {
    let mut out: Vec<FiniteLattice> = (1..=5).map(FiniteLattice::chain).collect();
    out.push(FiniteLattice::boolean(2));
    out.push(FiniteLattice::diamond(3));
    out.push(FiniteLattice::pentagon());
    out.push(FiniteLattice::from_covers(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap());
    out.push(FiniteLattice::from_covers(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap());
    out
}

pub fn lattices_6_to_8() -> Vec<FiniteLattice> {
    ["chain:6", "chain:8", "b3", "M4", "M6", "product(c2,c3)", "product(c2,c4)", "product(n5,c1)", "dual(product(c2,b2))"]
        .iter()
        .map(|s| named(s))
        .chain([FiniteLattice::from_covers(7, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)]).unwrap()])
        .collect()
}

/// Every endofunction of `l`, in lexicographic order of images.
pub fn all_maps(l: &FiniteLattice) -> Vec<EndoMap> {
    let n = l.size();
    (0..n.pow(n as u32))
        .map(|mut code| {
            let mut image = vec![0; n];
            for slot in image.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            EndoMap::new(l, image).unwrap()
        })
        .collect()
}

/// Sup preservation from the definition: every subset's join is preserved.
pub fn preserves_all_joins(l: &FiniteLattice, f: &EndoMap) -> bool {
    let n = l.size();
    (0u32..1 << n).all(|mask| {
        let set = (0..n).filter(|&i| mask >> i & 1 == 1);
        let join = set.clone().fold(l.bot(), |a, x| l.join(a, x));
        f[join] == set.fold(l.bot(), |a, x| l.join(a, f[x]))
    })
}

/// Greatest `x` with `f(x) ≤ y`, as the join of all such `x`.
pub fn brute_right_adjoint(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    EndoMap::from_fn(l, |y| l.join_of(l.elements().filter(|&x| l.leq(f[x], y))))
}

/// All associative tables on `k` elements.
pub fn semigroups(k: usize) -> Vec<FiniteSemigroup> {
    let cells = k * k;
    (0..k.pow(cells as u32))
        .filter_map(|mut code| {
            let mut table = vec![0; cells];
            for slot in table.iter_mut() {
                *slot = code % k;
                code /= k;
            }
            FiniteSemigroup::from_fn(k, |x, y| table[x * k + y]).ok()
        })
        .collect()
}

pub fn powerset(s: &FiniteSemigroup) -> Quantale {
    PowersetQuantale::new(s.clone(), &budget()).unwrap().materialize().unwrap()
}

/// Quantales with at most ten elements, several noncommutative.
pub fn small_quantales() -> Vec<(String, Quantale)> {
    let c3 = FiniteLattice::chain(3);
    let b2 = FiniteLattice::boolean(2);
    let b3 = FiniteLattice::boolean(3);
    let mut out = vec![
        ("trivial 2-chain".into(), Quantale::trivial(FiniteLattice::chain(2))),
        ("trivial M3".into(), Quantale::trivial(FiniteLattice::diamond(3))),
        ("meet on 3-chain".into(), Quantale::from_fn(c3.clone(), |x, y| x.min(y)).unwrap()),
        ("3-chain counterexample".into(), Quantale::from_fn(c3.clone(), |x, y| usize::from(x == 2 && y == 2)).unwrap()),
        ("Lukasiewicz 5-chain".into(), Quantale::from_fn(FiniteLattice::chain(5), |x, y| (x + y).saturating_sub(4)).unwrap()),
        ("meet on boolean(3)".into(), Quantale::from_fn(b3.clone(), |x, y| b3.meet(x, y)).unwrap()),
        ("tight(chain 3)".into(), TightQuantale::new(&c3, &budget()).unwrap().quantale().clone()),
        ("Chu of meet on 2-chain".into(), Quantale::from_fn(FiniteLattice::chain(2), |x, y| x.min(y)).unwrap().chu().quantale().clone()),
        ("Chu of trivial 3-chain".into(), Quantale::trivial(c3.clone()).chu().quantale().clone()),
        ("left projection on boolean(2)".into(), Quantale::from_fn(b2.clone(), |x, y| if y == 0 { 0 } else { x }).unwrap()),
    ];
    out.push(("powerset of Z/3".into(), powerset(&FiniteSemigroup::cyclic_group(3))));
    out.push(("powerset of left-zero(3)".into(), powerset(&FiniteSemigroup::left_zero(3))));
    out
}

/// Distinct values taken by `f`.
pub fn image_size(f: &EndoMap) -> usize {
    let mut v = f.image().to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// `c_y ∘ a_x` straight from the definitions of both maps.
pub fn generator(l: &FiniteLattice, y: Elem, x: Elem) -> EndoMap {
    EndoMap::from_fn(l, |t| if l.leq(t, x) { l.bot() } else { y })
}

/// Closure of `{c_y ∘ a_x}` under pointwise joins, including the empty join.
pub fn generator_join_closure(l: &FiniteLattice) -> Vec<EndoMap> {
    use std::collections::BTreeSet;
    let gens: Vec<EndoMap> = l
        .elements()
        .flat_map(|y| l.elements().map(move |x| (y, x)))
        .map(|(y, x)| generator(l, y, x))
        .collect();
    let mut seen: BTreeSet<EndoMap> = BTreeSet::new();
    seen.insert(EndoMap::constant(l, l.bot()));
    let mut frontier: Vec<EndoMap> = seen.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in &gens {
            let h = f.join(l, g);
            if seen.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    seen.into_iter().collect()
}
