//! Powerset quantales over finite semigroups, relation-induced Galois
//! connections, phase quantales, and the representation of Frobenius
//! quantales as phase quantales.
//!
//! Subsets of a semigroup with at most 64 elements are `u64` bitmasks.

use alloc::{vec, vec::Vec};

use fixedbitset::FixedBitSet;

use crate::{
    lattice::{EndoMap, Elem, FiniteLattice},
    quantale::{Flag, FrobeniusQuantale, Quantale},
    Budget, Error, Result,
};

/// Subset of a semigroup, one bit per element.
pub type Mask = u64;

/// Largest powerset quantale [`PowersetQuantale::materialize`] will tabulate.
pub const MATERIALIZE_LIMIT: usize = 8;

/// A finite semigroup given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    op: Vec<Elem>,
}

impl FiniteSemigroup {
    pub fn new(n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Self::from_fn(n, |x, y| rows[x][y])
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let op: Vec<Elem> = (0..n * n).map(|i| f(i / n, i % n)).collect();
        if let Some(&bad) = op.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        let s = FiniteSemigroup { n, op };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z)) {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }
        Ok(s)
    }

    /// `Z_k` under addition.
    pub fn cyclic_group(k: usize) -> Self {
        Self::from_fn(k, |x, y| (x + y) % k).expect("addition mod k is associative")
    }

    /// `x · y = x`.
    pub fn left_zero(k: usize) -> Self {
        Self::from_fn(k, |x, _| x).expect("left-zero multiplication is associative")
    }

    /// The multiplicative semigroup of a quantale.
    pub fn of_quantale(q: &Quantale) -> Self {
        FiniteSemigroup {
            n: q.size(),
            op: q.mult_table().to_vec(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.op[x * self.n + y]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.op.chunks(self.n.max(1)).map(<[Elem]>::to_vec).collect()
    }
}

/// A binary relation on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRelation {
    n: usize,
    rel: Vec<bool>,
}

impl BinaryRelation {
    pub fn new(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: row.len(),
            });
        }
        Ok(BinaryRelation {
            n,
            rel: rows.concat(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Elem, Elem) -> bool) -> Self {
        BinaryRelation {
            n,
            rel: (0..n * n).map(|i| f(i / n, i % n)).collect(),
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn holds(&self, x: Elem, y: Elem) -> bool {
        self.rel[x * self.n + y]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.holds(x, y) == self.holds(y, x)))
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        self.rel.chunks(self.n.max(1)).map(<[bool]>::to_vec).collect()
    }
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn bits(mask: Mask) -> impl Iterator<Item = Elem> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn check_mask_budget(n: usize, budget: &Budget) -> Result<()> {
    let limit = (budget.max_powerset as usize).min(64);
    if n > limit {
        return Err(Error::BudgetExceeded {
            estimate: 1u128 << n.min(127),
            budget: 1u64 << limit,
        });
    }
    Ok(())
}

/// The powerset quantale `(P(S), •)` with `X • Y = {x · y}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowersetQuantale {
    semigroup: FiniteSemigroup,
}

impl PowersetQuantale {
    pub fn new(semigroup: FiniteSemigroup, budget: &Budget) -> Result<Self> {
        check_mask_budget(semigroup.size(), budget)?;
        Ok(PowersetQuantale { semigroup })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn full(&self) -> Mask {
        full_mask(self.semigroup.size())
    }

    pub fn mul(&self, x: Mask, y: Mask) -> Mask {
        let mut out = 0;
        for a in bits(x) {
            for b in bits(y) {
                out |= 1 << self.semigroup.mul(a, b);
            }
        }
        out
    }

    /// `X \ Y = {s | x · s ∈ Y for all x ∈ X}`.
    pub fn residual_left(&self, x: Mask, y: Mask) -> Mask {
        (0..self.semigroup.size())
            .filter(|&s| bits(x).all(|a| y >> self.semigroup.mul(a, s) & 1 == 1))
            .fold(0, |m, s| m | 1 << s)
    }

    /// `Y / X = {s | s · x ∈ Y for all x ∈ X}`.
    pub fn residual_right(&self, y: Mask, x: Mask) -> Mask {
        (0..self.semigroup.size())
            .filter(|&s| bits(x).all(|a| y >> self.semigroup.mul(s, a) & 1 == 1))
            .fold(0, |m, s| m | 1 << s)
    }

    /// Tabulates the quantale on the Boolean lattice of masks.
    pub fn materialize(&self) -> Result<Quantale> {
        let n = self.semigroup.size();
        if n > MATERIALIZE_LIMIT {
            return Err(Error::BudgetExceeded {
                estimate: 1u128 << n,
                budget: 1u64 << MATERIALIZE_LIMIT,
            });
        }
        let lattice = FiniteLattice::boolean(n);
        let size = lattice.size();
        let mult = (0..size * size)
            .map(|i| self.mul((i / size) as Mask, (i % size) as Mask) as Elem)
            .collect();
        Ok(Quantale::new_unchecked(lattice, mult))
    }
}

/// The Galois connection on `P(S)` induced by a relation, with the
/// associativity and weak-symmetry diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGalois {
    n: usize,
    /// `r({x}) = {u | x R u}`.
    right_of: Vec<Mask>,
    /// `l({y}) = {u | u R y}`.
    left_of: Vec<Mask>,
    /// `x · y R z ⟺ x R y · z`; witness `(x, y, z)`.
    pub associative: Flag,
    /// `l(r(r({x}))) = r({x})`: each `r({x})` lies in the image of `l`; witness `(x)`.
    pub cond_left: Flag,
    /// `r(l(l({y}))) = l({y})`: each `l({y})` lies in the image of `r`; witness `(y)`.
    pub cond_right: Flag,
}

impl RelationGalois {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn weakly_symmetric(&self) -> bool {
        self.cond_left.holds && self.cond_right.holds
    }

    /// `r(Z) = {u | z R u for all z ∈ Z}`.
    pub fn r(&self, z: Mask) -> Mask {
        bits(z).fold(full_mask(self.n), |acc, x| acc & self.right_of[x])
    }

    /// `l(Y) = {u | u R y for all y ∈ Y}`.
    pub fn l(&self, y: Mask) -> Mask {
        bits(y).fold(full_mask(self.n), |acc, x| acc & self.left_of[x])
    }

    /// `j = l ∘ r`.
    pub fn j(&self, x: Mask) -> Mask {
        self.l(self.r(x))
    }

    /// `l` and `r` as endomaps of a materialized powerset quantale.
    pub fn endomaps(&self, powerset: &Quantale) -> (EndoMap, EndoMap) {
        let lat = powerset.lattice();
        (
            EndoMap::from_fn(lat, |x| self.l(x as Mask) as Elem),
            EndoMap::from_fn(lat, |x| self.r(x as Mask) as Elem),
        )
    }

    /// Fixed points of `j`: the intersection closure of `{r({x})} ∪ {S}`,
    /// ascending by mask value.
    pub fn closed_sets(&self) -> Vec<Mask> {
        let mut family: Vec<Mask> = self.right_of.clone();
        family.push(full_mask(self.n));
        family.sort_unstable();
        family.dedup();
        loop {
            let mut added = Vec::new();
            for (i, &a) in family.iter().enumerate() {
                for &b in &family[i + 1..] {
                    let c = a & b;
                    if family.binary_search(&c).is_err() {
                        added.push(c);
                    }
                }
            }
            if added.is_empty() {
                return family;
            }
            family.extend(added);
            family.sort_unstable();
            family.dedup();
        }
    }
}

/// The Galois connection induced by `rel` on `P(S)`.
pub fn relation_galois(s: &FiniteSemigroup, rel: &BinaryRelation) -> Result<RelationGalois> {
    let n = s.size();
    if rel.size() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: rel.size(),
        });
    }
    check_mask_budget(n, &Budget { max_powerset: 64, ..Budget::default() })?;
    let right_of = (0..n)
        .map(|x| (0..n).filter(|&u| rel.holds(x, u)).fold(0, |m, u| m | 1 << u))
        .collect();
    let left_of = (0..n)
        .map(|y| (0..n).filter(|&u| rel.holds(u, y)).fold(0, |m, u| m | 1 << u))
        .collect();
    let mut g = RelationGalois {
        n,
        right_of,
        left_of,
        associative: Flag::default(),
        cond_left: Flag::default(),
        cond_right: Flag::default(),
    };
    g.associative = first_failure(n, 3, |t| {
        rel.holds(s.mul(t[0], t[1]), t[2]) == rel.holds(t[0], s.mul(t[1], t[2]))
    });
    g.cond_left = first_failure(n, 1, |t| {
        let rx = g.right_of[t[0]];
        g.l(g.r(rx)) == rx
    });
    g.cond_right = first_failure(n, 1, |t| {
        let ly = g.left_of[t[0]];
        g.r(g.l(ly)) == ly
    });
    Ok(g)
}

fn first_failure(n: usize, arity: u32, mut ok: impl FnMut(&[Elem]) -> bool) -> Flag {
    let total = n.pow(arity);
    let mut t = vec![0; arity as usize];
    for code in 0..total {
        let mut c = code;
        for slot in t.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        if !ok(&t) {
            return Flag {
                holds: false,
                witness: Some(t),
            };
        }
    }
    Flag {
        holds: true,
        witness: None,
    }
}

/// The phase quantale of an associative weakly symmetric relation: the
/// quotient of `P(S)` by `j = l ∘ r`, with `l` and `r` as negations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseQuantale {
    /// Closed subsets, ascending; element `i` of the quantale is `closed[i]`.
    pub closed: Vec<Mask>,
    pub galois: RelationGalois,
    pub frobenius: FrobeniusQuantale,
}

pub fn phase_quantale(
    s: &FiniteSemigroup,
    rel: &BinaryRelation,
    budget: &Budget,
) -> Result<PhaseQuantale> {
    check_mask_budget(s.size(), budget)?;
    let galois = relation_galois(s, rel)?;
    if let Some(w) = &galois.associative.witness {
        return Err(Error::NotAssociativeRelation(w[0], w[1], w[2]));
    }
    if !galois.weakly_symmetric() {
        return Err(Error::NotWeaklySymmetric);
    }
    let powerset = PowersetQuantale::new(s.clone(), budget)?;
    let closed = galois.closed_sets();
    let m = closed.len();
    let pos = |x: Mask| {
        closed
            .binary_search(&x)
            .expect("j, l and r land in closed sets")
    };
    let lattice = FiniteLattice::from_order(m, |a, b| closed[a] & !closed[b] == 0)?;
    let mut mult = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            mult[a * m + b] = pos(galois.j(powerset.mul(closed[a], closed[b])));
        }
    }
    let quantale = Quantale::new(lattice, mult)?;
    let lat = quantale.lattice();
    let lneg = EndoMap::from_fn(lat, |a| pos(galois.l(closed[a])));
    let rneg = EndoMap::from_fn(lat, |a| pos(galois.r(closed[a])));
    let frobenius = FrobeniusQuantale::new(quantale, lneg, rneg)?;
    Ok(PhaseQuantale {
        closed,
        galois,
        frobenius,
    })
}

/// Outcome of [`represent_frobenius`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationReport {
    pub size: usize,
    /// `x R y ⟺ x ≤ lneg(y)` is associative; witness `(x, y, z)`.
    pub associative: Flag,
    /// Each `r({x})` lies in the image of `l`; witness `(x)`.
    pub cond_left: Flag,
    /// Each `l({y})` lies in the image of `r`; witness `(y)`.
    pub cond_right: Flag,
    /// The closed sets are exactly the principal down-sets, pairwise distinct;
    /// witness `(x)` with `↓x` not closed or `r({x})` not principal.
    pub closed_are_principal: Flag,
    /// `↓x •_j ↓y = ↓(x ∗ y)`; witness `(x, y)`.
    pub multiplication: Flag,
    /// `j(↓x ∪ ↓y) = ↓(x ∨ y)`; witness `(x, y)`.
    pub joins: Flag,
    /// `l(↓x) = ↓lneg(x)` and `r(↓x) = ↓rneg(x)`; witness `(x)`.
    pub negations: Flag,
    /// `⋁↓x = x`; witness `(x)`.
    pub round_trip: Flag,
}

impl RepresentationReport {
    pub fn holds(&self) -> bool {
        [
            &self.associative,
            &self.cond_left,
            &self.cond_right,
            &self.closed_are_principal,
            &self.multiplication,
            &self.joins,
            &self.negations,
            &self.round_trip,
        ]
        .iter()
        .all(|f| f.holds)
    }
}

/// Checks that `↓ : Q → P(Q)_j` is a negation-preserving quantale
/// isomorphism, where `j` comes from the relation `x R y ⟺ x ≤ lneg(y)`.
///
/// The powerset of `Q` is never formed: subsets are bitsets over `Q`, and
/// only products of principal down-sets are closed.
pub fn represent_frobenius(f: &FrobeniusQuantale) -> RepresentationReport {
    let q = f.quantale();
    let lat = q.lattice();
    let n = q.size();
    let lneg = f.lneg();
    let rneg = f.rneg();
    let set = |it: &mut dyn Iterator<Item = Elem>| {
        let mut b = FixedBitSet::with_capacity(n);
        for x in it {
            b.insert(x);
        }
        b
    };
    let down: Vec<FixedBitSet> = lat
        .elements()
        .map(|x| set(&mut lat.elements().filter(|&y| lat.leq(y, x))))
        .collect();
    // row[x] = r({x}) = {u | x R u}, col[y] = l({y}) = {u | u R y}
    let row: Vec<FixedBitSet> = lat
        .elements()
        .map(|x| set(&mut lat.elements().filter(|&u| lat.leq(x, lneg[u]))))
        .collect();
    let col: Vec<FixedBitSet> = lat
        .elements()
        .map(|y| set(&mut lat.elements().filter(|&u| lat.leq(u, lneg[y]))))
        .collect();
    let full = set(&mut lat.elements());
    let meet_of = |family: &[FixedBitSet], x: &FixedBitSet| {
        let mut acc = full.clone();
        for i in x.ones() {
            acc.intersect_with(&family[i]);
        }
        acc
    };
    let r = |x: &FixedBitSet| meet_of(&row, x);
    let l = |x: &FixedBitSet| meet_of(&col, x);
    let j = |x: &FixedBitSet| l(&r(x));
    let rel = |x: Elem, y: Elem| lat.leq(x, lneg[y]);

    let associative = first_failure(n, 3, |t| {
        rel(q.mul(t[0], t[1]), t[2]) == rel(t[0], q.mul(t[1], t[2]))
    });
    let cond_left = first_failure(n, 1, |t| l(&r(&row[t[0]])) == row[t[0]]);
    let cond_right = first_failure(n, 1, |t| r(&l(&col[t[0]])) == col[t[0]]);
    let closed_are_principal = first_failure(n, 1, |t| {
        let x = t[0];
        // Principal down-sets are closed under intersection, so the closed
        // family is exactly {↓x} once every r({x}) is principal and every ↓x
        // is closed.
        j(&down[x]) == down[x] && lat.elements().any(|y| row[x] == down[y])
    });
    let multiplication = first_failure(n, 2, |t| {
        let mut prod = FixedBitSet::with_capacity(n);
        for a in down[t[0]].ones() {
            for b in down[t[1]].ones() {
                prod.insert(q.mul(a, b));
            }
        }
        j(&prod) == down[q.mul(t[0], t[1])]
    });
    let joins = first_failure(n, 2, |t| {
        let mut u = down[t[0]].clone();
        u.union_with(&down[t[1]]);
        j(&u) == down[lat.join(t[0], t[1])]
    });
    let negations = first_failure(n, 1, |t| {
        let x = t[0];
        l(&down[x]) == down[lneg[x]] && r(&down[x]) == down[rneg[x]]
    });
    let round_trip = first_failure(n, 1, |t| lat.join_of(down[t[0]].ones()) == t[0]);
    RepresentationReport {
        size: n,
        associative,
        cond_left,
        cond_right,
        closed_are_principal,
        multiplication,
        joins,
        negations,
        round_trip,
    }
}
