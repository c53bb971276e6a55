//! Quantales, residuals, Frobenius structures and the Chu construction.

use alloc::{vec, vec::Vec};

use crate::{
    error::Side,
    lattice::{EndoMap, Elem, FiniteLattice},
    Error, Result,
};

/// A finite quantale: a lattice with an associative multiplication that
/// distributes over joins in each argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    lattice: FiniteLattice,
    mult: Vec<Elem>,
}

/// Checks the quantale laws for a flat `n × n` multiplication table.
///
/// Laws are tested in a fixed order (associativity, left and right
/// distributivity over binary joins, bottom absorption) and the first
/// failing triple in lexicographic order is reported.
pub fn check_quantale(l: &FiniteLattice, mult: &[Elem]) -> Result<()> {
    let n = l.size();
    if mult.len() != n * n {
        return Err(Error::ShapeMismatch {
            expected: n * n,
            found: mult.len(),
        });
    }
    if let Some(&bad) = mult.iter().find(|&&v| v >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    let m = |x: Elem, y: Elem| mult[x * n + y];
    for x in 0..n {
        for y in 0..n {
            let xy = m(x, y);
            for z in 0..n {
                if m(xy, z) != m(x, m(y, z)) {
                    return Err(Error::NotAssociative(x, y, z));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(x, l.join(y, z)) != l.join(m(x, y), m(x, z)) {
                    return Err(Error::NotDistributive(Side::Left, x, y, z));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(l.join(y, z), x) != l.join(m(y, x), m(z, x)) {
                    return Err(Error::NotDistributive(Side::Right, x, y, z));
                }
            }
        }
    }
    for x in 0..n {
        if m(x, l.bot()) != l.bot() || m(l.bot(), x) != l.bot() {
            return Err(Error::BottomNotAbsorbed(x));
        }
    }
    Ok(())
}

/// Precomputed residual tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuals {
    n: usize,
    left: Vec<Elem>,
    right: Vec<Elem>,
}

impl Residuals {
    /// `x \ z`.
    #[inline]
    pub fn left(&self, x: Elem, z: Elem) -> Elem {
        self.left[x * self.n + z]
    }

    /// `z / y`.
    #[inline]
    pub fn right(&self, z: Elem, y: Elem) -> Elem {
        self.right[z * self.n + y]
    }
}

/// Outcome of [`Quantale::element_flags`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementFlags {
    pub dualizing: bool,
    pub cyclic: bool,
    pub weakly_cyclic: bool,
}

/// Outcome of [`Quantale::find_unit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitReport {
    /// The two-sided unit, if any.
    pub unit: Option<Elem>,
    /// `⋀{x\x ∧ x/x}` over all `x`.
    pub candidate: Elem,
    /// `x ∗ candidate ≤ x` for every `x`.
    pub right_contracts: bool,
    /// `candidate ∗ x ≤ x` for every `x`.
    pub left_contracts: bool,
}

impl Quantale {
    /// Validates and wraps a flat `n × n` table, row-major in the left factor.
    pub fn new(lattice: FiniteLattice, mult: Vec<Elem>) -> Result<Self> {
        check_quantale(&lattice, &mult)?;
        Ok(Quantale { lattice, mult })
    }

    pub fn from_rows(lattice: FiniteLattice, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = lattice.size();
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
        Self::new(lattice, rows.concat())
    }

    pub fn from_fn(lattice: FiniteLattice, f: impl Fn(Elem, Elem) -> Elem) -> Result<Self> {
        let n = lattice.size();
        let mult = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Self::new(lattice, mult)
    }

    pub(crate) fn new_unchecked(lattice: FiniteLattice, mult: Vec<Elem>) -> Self {
        debug_assert_eq!(mult.len(), lattice.size() * lattice.size());
        Quantale { lattice, mult }
    }

    /// The trivial structure `x ∗ y = ⊥`.
    pub fn trivial(lattice: FiniteLattice) -> Quantale {
        let n = lattice.size();
        let bot = lattice.bot();
        Quantale {
            lattice,
            mult: vec![bot; n * n],
        }
    }

    #[inline]
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mult[x * self.size() + y]
    }

    pub fn mult_table(&self) -> &[Elem] {
        &self.mult
    }

    pub fn mult_rows(&self) -> Vec<Vec<Elem>> {
        self.mult.chunks(self.size()).map(<[Elem]>::to_vec).collect()
    }

    /// `x \ z = ⋁{y | x ∗ y ≤ z}`.
    pub fn residual_left(&self, x: Elem, z: Elem) -> Elem {
        let l = &self.lattice;
        l.join_of(l.elements().filter(|&y| l.leq(self.mul(x, y), z)))
    }

    /// `z / y = ⋁{x | x ∗ y ≤ z}`.
    pub fn residual_right(&self, z: Elem, y: Elem) -> Elem {
        let l = &self.lattice;
        l.join_of(l.elements().filter(|&x| l.leq(self.mul(x, y), z)))
    }

    pub fn residuals(&self) -> Residuals {
        let n = self.size();
        let mut left = vec![0; n * n];
        let mut right = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                left[a * n + b] = self.residual_left(a, b);
                right[a * n + b] = self.residual_right(a, b);
            }
        }
        Residuals { n, left, right }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Decides whether `zero` is dualizing, cyclic and weakly cyclic.
    pub fn element_flags(&self, zero: Elem) -> ElementFlags {
        let mut flags = ElementFlags {
            dualizing: true,
            cyclic: true,
            weakly_cyclic: true,
        };
        for x in self.lattice.elements() {
            let r = self.residual_left(x, zero);
            let l = self.residual_right(zero, x);
            let lr = self.residual_right(zero, r);
            let rl = self.residual_left(l, zero);
            flags.cyclic &= r == l;
            flags.weakly_cyclic &= lr == rl;
            flags.dualizing &= lr == x && rl == x;
        }
        flags
    }

    pub fn is_unit(&self, u: Elem) -> bool {
        self.lattice
            .elements()
            .all(|x| self.mul(u, x) == x && self.mul(x, u) == x)
    }

    pub fn find_unit(&self) -> UnitReport {
        let l = &self.lattice;
        let res = self.residuals();
        let candidate = l.meet_of(
            l.elements()
                .map(|x| l.meet(res.left(x, x), res.right(x, x))),
        );
        UnitReport {
            unit: l.elements().find(|&u| self.is_unit(u)),
            candidate,
            right_contracts: l.elements().all(|x| l.leq(self.mul(x, candidate), x)),
            left_contracts: l.elements().all(|x| l.leq(self.mul(candidate, x), x)),
        }
    }

    /// `x ≤ x ∗ p ∧ p ∗ x` for every `x`.
    pub fn is_positive_element(&self, p: Elem) -> bool {
        let l = &self.lattice;
        l.elements()
            .all(|x| l.leq(x, self.mul(x, p)) && l.leq(x, self.mul(p, x)))
    }

    /// Every `x\x` and every `x/x` is positive.
    pub fn is_positive(&self) -> bool {
        self.positivity_witness().is_none()
    }

    /// First `x` such that `x\x` or `x/x` is not positive.
    pub fn positivity_witness(&self) -> Option<Elem> {
        self.lattice.elements().find(|&x| {
            !self.is_positive_element(self.residual_left(x, x))
                || !self.is_positive_element(self.residual_right(x, x))
        })
    }

    /// The Chu construction on `Q × Q^op`.
    ///
    /// The pair `(x1, x2)` has index `x1 * n + x2`; both negations swap the
    /// components.
    pub fn chu(&self) -> FrobeniusQuantale {
        let l = &self.lattice;
        let n = self.size();
        let carrier = l.product(&l.dual());
        let res = self.residuals();
        let size = n * n;
        let mut mult = vec![0; size * size];
        for a in 0..size {
            let (x1, x2) = (a / n, a % n);
            for b in 0..size {
                let (y1, y2) = (b / n, b % n);
                let first = self.mul(x1, y1);
                let second = l.meet(res.left(y1, x2), res.right(y2, x1));
                mult[a * size + b] = first * n + second;
            }
        }
        let swap = EndoMap::from_fn(&carrier, |a| (a % n) * n + a / n);
        FrobeniusQuantale {
            quantale: Quantale::new_unchecked(carrier, mult),
            lneg: swap.clone(),
            rneg: swap,
        }
    }
}

/// Outcome of a single law in a diagnostic report, with the first
/// counterexample found in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flag {
    pub holds: bool,
    pub witness: Option<Vec<Elem>>,
}

impl Flag {
    pub(crate) fn scan<const K: usize>(n: usize, mut ok: impl FnMut([Elem; K]) -> bool) -> Flag {
        let mut idx = [0; K];
        if n == 0 {
            return Flag::ok();
        }
        loop {
            if !ok(idx) {
                return Flag {
                    holds: false,
                    witness: Some(idx.to_vec()),
                };
            }
            let mut k = K;
            loop {
                if k == 0 {
                    return Flag::ok();
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    pub fn ok() -> Flag {
        Flag {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Vec<Elem>) -> Flag {
        Flag {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Diagnostics for a pair of maps `(l, r)` on a quantale, read either as
/// left and right negations or as a Galois connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerrePairReport {
    /// Both maps are antitone; witness `(x, y)` with `x ≤ y`.
    pub antitone: Flag,
    /// `l ∘ r = r ∘ l = id`; witness `(x)`.
    pub is_inverse_pair: Flag,
    /// `x ≤ r(y) ⟺ y ≤ l(x)`; witness `(x, y)`.
    pub is_galois: Flag,
    /// `l ∘ r = r ∘ l`; witness `(x)`.
    pub commutes: Flag,
    /// `x \ l(y) = r(x) / y`; witness `(x, y)`.
    pub serre_identity: Flag,
    /// `x ∗ z ≤ l(y) ⟺ z ∗ y ≤ r(x)`; witness `(x, y, z)`.
    pub shift_holds: Flag,
    /// The images of `l` and `r` agree; witness `(x)` in one image only.
    pub images_coincide: Flag,
}

impl SerrePairReport {
    /// Inverse antitone maps satisfying the Serre identity.
    pub fn is_frobenius(&self) -> bool {
        self.antitone.holds && self.is_inverse_pair.holds && self.serre_identity.holds
    }

    /// A Galois connection with commuting composites and the shift relation.
    pub fn is_serre_gc(&self) -> bool {
        self.is_galois.holds && self.commutes.holds && self.shift_holds.holds
    }

    /// Name of the first failing Frobenius law.
    pub fn first_frobenius_failure(&self) -> Option<&'static str> {
        [
            ("antitone", &self.antitone),
            ("inverse", &self.is_inverse_pair),
            ("serre identity", &self.serre_identity),
            ("shift relation", &self.shift_holds),
        ]
        .into_iter()
        .find(|(_, f)| !f.holds)
        .map(|(name, _)| name)
    }

    /// Name of the first failing Serre Galois connection law.
    pub fn first_serre_gc_failure(&self) -> Option<&'static str> {
        [
            ("galois", &self.is_galois),
            ("commutes", &self.commutes),
            ("shift relation", &self.shift_holds),
        ]
        .into_iter()
        .find(|(_, f)| !f.holds)
        .map(|(name, _)| name)
    }
}

/// Evaluates every law relating `l` (left negation) and `r` (right negation).
pub fn check_frobenius(q: &Quantale, l: &EndoMap, r: &EndoMap) -> Result<SerrePairReport> {
    let lat = q.lattice();
    let n = q.size();
    for f in [l, r] {
        EndoMap::new(lat, f.image().to_vec())?;
    }
    let res = q.residuals();
    let antitone = Flag::scan(n, |[x, y]| {
        !lat.leq(x, y) || (lat.leq(l[y], l[x]) && lat.leq(r[y], r[x]))
    });
    let is_inverse_pair = Flag::scan(n, |[x]| l[r[x]] == x && r[l[x]] == x);
    let is_galois = Flag::scan(n, |[x, y]| lat.leq(x, r[y]) == lat.leq(y, l[x]));
    let commutes = Flag::scan(n, |[x]| l[r[x]] == r[l[x]]);
    let serre_identity = Flag::scan(n, |[x, y]| res.left(x, l[y]) == res.right(r[x], y));
    let shift_holds = Flag::scan(n, |[x, y, z]| {
        lat.leq(q.mul(x, z), l[y]) == lat.leq(q.mul(z, y), r[x])
    });
    let (img_l, img_r) = (l.range(), r.range());
    let images_coincide = Flag::scan(n, |[x]| {
        img_l.binary_search(&x).is_ok() == img_r.binary_search(&x).is_ok()
    });
    Ok(SerrePairReport {
        antitone,
        is_inverse_pair,
        is_galois,
        commutes,
        serre_identity,
        shift_holds,
        images_coincide,
    })
}

/// A quantale with left and right negations forming a Serre duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusQuantale {
    quantale: Quantale,
    lneg: EndoMap,
    rneg: EndoMap,
}

impl FrobeniusQuantale {
    pub fn new(quantale: Quantale, lneg: EndoMap, rneg: EndoMap) -> Result<Self> {
        let report = check_frobenius(&quantale, &lneg, &rneg)?;
        if let Some(law) = report.first_frobenius_failure() {
            return Err(Error::NotFrobenius(law));
        }
        Ok(FrobeniusQuantale {
            quantale,
            lneg,
            rneg,
        })
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(quantale: Quantale, lneg: EndoMap, rneg: EndoMap) -> Self {
        FrobeniusQuantale {
            quantale,
            lneg,
            rneg,
        }
    }

    /// `lneg(x) = 0 / x`, `rneg(x) = x \ 0` for a dualizing `0`.
    pub fn from_dualizing(quantale: Quantale, zero: Elem) -> Result<Self> {
        if zero >= quantale.size() {
            return Err(Error::IndexOutOfRange {
                index: zero,
                len: quantale.size(),
            });
        }
        if !quantale.element_flags(zero).dualizing {
            return Err(Error::NotDualizing(zero));
        }
        let l = quantale.lattice();
        let lneg = EndoMap::from_fn(l, |x| quantale.residual_right(zero, x));
        let rneg = EndoMap::from_fn(l, |x| quantale.residual_left(x, zero));
        Self::new(quantale, lneg, rneg)
    }

    /// The trivial multiplication on `lattice` together with a duality.
    pub fn trivial(lattice: FiniteLattice, lneg: EndoMap, rneg: EndoMap) -> Result<Self> {
        let q = Quantale::trivial(lattice);
        let report = check_frobenius(&q, &lneg, &rneg)?;
        if !report.antitone.holds || !report.is_inverse_pair.holds {
            return Err(Error::NotADuality);
        }
        Self::new(q, lneg, rneg)
    }

    #[inline]
    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    #[inline]
    pub fn lneg(&self) -> &EndoMap {
        &self.lneg
    }

    #[inline]
    pub fn rneg(&self) -> &EndoMap {
        &self.rneg
    }

    pub fn into_parts(self) -> (Quantale, EndoMap, EndoMap) {
        (self.quantale, self.lneg, self.rneg)
    }

    pub fn is_girard(&self) -> bool {
        self.lneg == self.rneg
    }

    pub fn report(&self) -> SerrePairReport {
        check_frobenius(&self.quantale, &self.lneg, &self.rneg)
            .expect("negations have the carrier's shape")
    }

    /// The dual multiplication `lneg(rneg(y) ∗ rneg(x))`, checked against its
    /// three other expressions.
    pub fn dual_mult(&self, x: Elem, y: Elem) -> Result<Elem> {
        let q = &self.quantale;
        let (l, r) = (&self.lneg, &self.rneg);
        let value = l[q.mul(r[y], r[x])];
        let others = [
            r[q.mul(l[y], l[x])],
            q.residual_left(l[x], y),
            q.residual_right(x, r[y]),
        ];
        if others.iter().any(|&v| v != value) {
            return Err(Error::CoincidenceFailed(x, y));
        }
        Ok(value)
    }
}

/// Outcome of [`check_strongly_continuous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuityReport {
    /// Bottom and binary joins; witness `(x, y)`.
    pub joins: Flag,
    /// Top and binary meets; witness `(x, y)`.
    pub meets: Flag,
    /// Multiplication; witness `(x, y)`.
    pub mult: Flag,
    /// `x \ z`; witness `(x, z)`.
    pub residual_left: Flag,
    /// `z / y`; witness `(z, y)`.
    pub residual_right: Flag,
    /// Whether the unit of the source (if any) goes to the unit of the target.
    pub preserves_unit: Option<bool>,
}

impl ContinuityReport {
    pub fn holds(&self) -> bool {
        self.joins.holds
            && self.meets.holds
            && self.mult.holds
            && self.residual_left.holds
            && self.residual_right.holds
    }
}

/// Checks that `image` (a map from `src` to `tgt`) preserves joins, meets,
/// the multiplication and both residuals.
pub fn check_strongly_continuous(
    src: &Quantale,
    tgt: &Quantale,
    image: &[Elem],
) -> Result<ContinuityReport> {
    let (ls, lt) = (src.lattice(), tgt.lattice());
    let map = crate::lattice::LatticeMap::new(ls, lt, image.to_vec())?;
    if let Some((x, y)) = map.injectivity_witness() {
        return Err(Error::NotInjective(x, y));
    }
    let f = |x: Elem| image[x];
    let n = src.size();
    let empty_join = f(ls.bot()) == lt.bot();
    let empty_meet = f(ls.top()) == lt.top();
    let mut joins = Flag::scan(n, |[x, y]| f(ls.join(x, y)) == lt.join(f(x), f(y)));
    if joins.holds && !empty_join {
        joins = Flag {
            holds: false,
            witness: Some(Vec::new()),
        };
    }
    let mut meets = Flag::scan(n, |[x, y]| f(ls.meet(x, y)) == lt.meet(f(x), f(y)));
    if meets.holds && !empty_meet {
        meets = Flag {
            holds: false,
            witness: Some(Vec::new()),
        };
    }
    let mult = Flag::scan(n, |[x, y]| f(src.mul(x, y)) == tgt.mul(f(x), f(y)));
    let (rs, rt) = (src.residuals(), tgt.residuals());
    let residual_left = Flag::scan(n, |[x, z]| f(rs.left(x, z)) == rt.left(f(x), f(z)));
    let residual_right = Flag::scan(n, |[z, y]| f(rs.right(z, y)) == rt.right(f(z), f(y)));
    let preserves_unit = src.find_unit().unit.map(|u| tgt.is_unit(f(u)));
    Ok(ContinuityReport {
        joins,
        meets,
        mult,
        residual_left,
        residual_right,
        preserves_unit,
    })
}

/// Whether `map` is an order- and multiplication-preserving bijection.
pub fn is_isomorphism(a: &Quantale, b: &Quantale, map: &[Elem]) -> bool {
    let n = a.size();
    if map.len() != n || b.size() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || core::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    let (la, lb) = (a.lattice(), b.lattice());
    (0..n).all(|x| {
        (0..n).all(|y| {
            la.leq(x, y) == lb.leq(map[x], map[y]) && map[a.mul(x, y)] == b.mul(map[x], map[y])
        })
    })
}

/// Largest carrier for which [`find_isomorphism`] searches bijections.
pub const ISOMORPHISM_SEARCH_LIMIT: usize = 12;

/// Searches for a quantale isomorphism by backtracking over bijections.
///
/// Refuses carriers above [`ISOMORPHISM_SEARCH_LIMIT`] elements.
pub fn find_isomorphism(a: &Quantale, b: &Quantale) -> Result<Option<Vec<Elem>>> {
    let n = a.size();
    if n > ISOMORPHISM_SEARCH_LIMIT {
        let estimate = (1..=n as u128).product();
        return Err(Error::BudgetExceeded { estimate, budget: 479_001_600 });
    }
    if b.size() != n {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(assign_iso(a, b, &mut map, &mut used, 0).then_some(map))
}

fn assign_iso(a: &Quantale, b: &Quantale, map: &mut [Elem], used: &mut [bool], k: usize) -> bool {
    let n = a.size();
    if k == n {
        return is_isomorphism(a, b, map);
    }
    let (la, lb) = (a.lattice(), b.lattice());
    for y in 0..n {
        if used[y] {
            continue;
        }
        let order_ok = (0..k).all(|i| {
            la.leq(i, k) == lb.leq(map[i], y) && la.leq(k, i) == lb.leq(y, map[i])
        });
        if !order_ok {
            continue;
        }
        map[k] = y;
        // Products whose factors and value are all assigned must agree.
        let mult_ok = (0..=k).all(|i| {
            [(i, k), (k, i)].into_iter().all(|(s, t)| {
                let p = a.mul(s, t);
                p > k || map[p] == b.mul(map[s], map[t])
            })
        });
        if !mult_ok {
            map[k] = usize::MAX;
            continue;
        }
        used[y] = true;
        if assign_iso(a, b, map, used, k + 1) {
            return true;
        }
        used[y] = false;
        map[k] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn counterexample() -> Quantale {
        Quantale::from_fn(FiniteLattice::chain(3), |x, y| usize::from(x == 2 && y == 2)).unwrap()
    }

    fn meet_quantale(l: FiniteLattice) -> Quantale {
        let l2 = l.clone();
        Quantale::from_fn(l, move |x, y| l2.meet(x, y)).unwrap()
    }

    fn lukasiewicz(k: usize) -> Quantale {
        Quantale::from_fn(FiniteLattice::chain(k), move |x, y| (x + y).saturating_sub(k - 1)).unwrap()
    }

    fn battery() -> Vec<Quantale> {
        vec![
            Quantale::trivial(FiniteLattice::chain(2)),
            Quantale::trivial(FiniteLattice::diamond(3)),
            counterexample(),
            meet_quantale(FiniteLattice::chain(2)),
            meet_quantale(FiniteLattice::boolean(2)),
            meet_quantale(FiniteLattice::chain(4)),
            lukasiewicz(4),
            lukasiewicz(5),
            meet_quantale(FiniteLattice::chain(2)).chu().quantale().clone(),
        ]
    }

    #[test]
    fn validation_errors() {
        assert!(counterexample().is_commutative());
        let bad = Quantale::from_fn(FiniteLattice::chain(3), |x, y| {
            if x == 1 && y == 1 {
                2
            } else {
                0
            }
        });
        assert_eq!(bad, Err(Error::NotDistributive(Side::Left, 1, 1, 2)));
        let nonassoc = Quantale::from_fn(FiniteLattice::chain(2), |x, _| 1 - x);
        assert!(matches!(nonassoc, Err(Error::NotAssociative(..))));
        let absorb = Quantale::from_fn(FiniteLattice::chain(2), |_, _| 1);
        assert_eq!(absorb, Err(Error::BottomNotAbsorbed(0)));
    }

    #[test]
    fn residuals_of_counterexample() {
        let q = counterexample();
        assert_eq!(q.residual_left(0, 0), 2);
        assert_eq!(q.residual_left(1, 0), 2);
        assert_eq!(q.residual_left(2, 0), 1);
        let flags = q.element_flags(0);
        assert!(flags.weakly_cyclic && flags.cyclic);
        assert!(!flags.dualizing);
    }

    #[test]
    fn trivial_quantale_residuals() {
        let q = Quantale::trivial(FiniteLattice::diamond(3));
        for x in 0..5 {
            for z in 0..5 {
                assert_eq!(q.residual_left(x, z), 4);
                assert_eq!(q.residual_right(z, x), 4);
            }
        }
        let q2 = Quantale::trivial(FiniteLattice::chain(2));
        let flags = q2.element_flags(0);
        assert!(flags.cyclic && !flags.dualizing);
        assert!(q2.find_unit().unit.is_none());
        assert_eq!(
            FrobeniusQuantale::from_dualizing(q2, 0),
            Err(Error::NotDualizing(0))
        );
        assert_eq!(Quantale::trivial(FiniteLattice::chain(1)).find_unit().unit, Some(0));
    }

    #[test]
    fn trivial_dualities() {
        let c2 = FiniteLattice::chain(2);
        let swap = EndoMap::new(&c2, vec![1, 0]).unwrap();
        let f = FrobeniusQuantale::trivial(c2.clone(), swap.clone(), swap).unwrap();
        assert!(f.is_girard());
        let id = EndoMap::identity(&c2);
        assert_eq!(
            FrobeniusQuantale::trivial(c2.clone(), id.clone(), id.clone()),
            Err(Error::NotADuality)
        );
        let report = check_frobenius(&Quantale::trivial(c2), &id, &id).unwrap();
        assert!(report.shift_holds.holds);
        assert!(!report.is_galois.holds);
        assert!(!report.antitone.holds);

        let m3 = FiniteLattice::diamond(3);
        let r = EndoMap::new(&m3, vec![4, 2, 3, 1, 0]).unwrap();
        let l = EndoMap::new(&m3, vec![4, 3, 1, 2, 0]).unwrap();
        let f = FrobeniusQuantale::trivial(m3, l, r).unwrap();
        assert!(!f.is_girard());
        assert!(f.report().is_serre_gc());
    }

    #[test]
    fn frobenius_rejects_broken_negations() {
        let q = meet_quantale(FiniteLattice::chain(3));
        let c3 = q.lattice().clone();
        let rev = EndoMap::new(&c3, vec![2, 1, 0]).unwrap();
        // With ∗ = ∧ on a 3-chain the reversal is not Serre: 2 \ rev(1) = 1 but rev(2) / 1 = 0.
        let report = check_frobenius(&q, &rev, &rev).unwrap();
        assert!(!report.serre_identity.holds);
        assert!(!report.shift_holds.holds);
        assert_eq!(
            FrobeniusQuantale::new(q, rev.clone(), rev),
            Err(Error::NotFrobenius("serre identity"))
        );
    }

    #[test]
    fn chu_of_unital_meet() {
        let q = meet_quantale(FiniteLattice::chain(2));
        let c = q.chu();
        assert!(c.is_girard());
        assert!(c.report().is_frobenius());
        check_quantale(c.quantale().lattice(), c.quantale().mult_table()).unwrap();
        // unit (⊤, ⊤) of Q × Q^op: index 1 * 2 + 1
        assert_eq!(c.quantale().find_unit().unit, Some(3));
        let zero = c.rneg()[3];
        let flags = c.quantale().element_flags(zero);
        assert!(flags.dualizing && flags.cyclic);
        let g = FrobeniusQuantale::from_dualizing(c.quantale().clone(), zero).unwrap();
        assert_eq!(g.lneg(), c.lneg());
        for x in 0..4 {
            for y in 0..4 {
                let plus = c.dual_mult(x, y).unwrap();
                // De Morgan dual of the product, entrywise
                assert_eq!(plus, c.rneg()[c.quantale().mul(c.rneg()[y], c.rneg()[x])]);
            }
        }
    }

    #[test]
    fn chu_residual_formulas() {
        let q = counterexample();
        let c = q.chu();
        let cq = c.quantale();
        let n = q.size();
        let l = q.lattice();
        for a in 0..n * n {
            for b in 0..n * n {
                let (x1, x2, z1, z2) = (a / n, a % n, b / n, b % n);
                let expected_left =
                    l.meet(q.residual_left(x1, z1), q.residual_right(x2, z2)) * n + q.mul(z2, x1);
                assert_eq!(cq.residual_left(a, b), expected_left);
                let (y1, y2) = (x1, x2);
                let expected_right =
                    l.meet(q.residual_right(z1, y1), q.residual_left(z2, y2)) * n + q.mul(y1, z2);
                assert_eq!(cq.residual_right(b, a), expected_right);
            }
        }
    }

    #[test]
    fn chu_unitality_matches_base() {
        for q in battery() {
            let c = q.chu();
            check_quantale(c.quantale().lattice(), c.quantale().mult_table()).unwrap();
            assert!(c.report().is_frobenius());
            let base = q.find_unit().unit;
            let lifted = c.quantale().find_unit().unit;
            assert_eq!(base.is_some(), lifted.is_some());
            if let Some(u) = base {
                assert_eq!(lifted, Some(u * q.size() + q.lattice().top()));
            }
        }
    }

    #[test]
    fn unit_candidate_contracts() {
        for q in battery() {
            let chu = q.chu();
            let report = chu.quantale().find_unit();
            assert!(report.left_contracts && report.right_contracts);
            if let Some(u) = report.unit {
                assert_eq!(u, report.candidate);
                let zero = chu.lneg()[u];
                assert_eq!(zero, chu.rneg()[u]);
                assert!(chu.quantale().element_flags(zero).dualizing);
                assert!(chu.quantale().is_positive_element(u));
            }
        }
    }

    #[test]
    fn positivity() {
        let q = meet_quantale(FiniteLattice::chain(3));
        assert!(!q.is_positive_element(q.lattice().bot()));
        assert!(q.is_positive_element(2));
        assert!(q.is_positive());
    }

    #[test]
    fn identity_is_strongly_continuous() {
        for q in battery() {
            let id: Vec<Elem> = q.lattice().elements().collect();
            let report = check_strongly_continuous(&q, &q, &id).unwrap();
            assert!(report.holds());
        }
        let q = counterexample();
        assert_eq!(
            check_strongly_continuous(&q, &q, &[0, 0, 2]),
            Err(Error::NotInjective(0, 1))
        );
    }

    #[test]
    fn isomorphism_search() {
        let a = meet_quantale(FiniteLattice::chain(3));
        let b = meet_quantale(FiniteLattice::chain(3).dual().dual());
        assert_eq!(find_isomorphism(&a, &b).unwrap(), Some(vec![0, 1, 2]));
        let c = counterexample();
        assert_eq!(find_isomorphism(&a, &c).unwrap(), None);
        let m2 = meet_quantale(FiniteLattice::diamond(2));
        let b2 = meet_quantale(FiniteLattice::boolean(2));
        assert!(find_isomorphism(&m2, &b2).unwrap().is_some());
    }

    proptest! {
        #[test]
        fn residuation(qi in 0usize..9, x in 0usize..16, y in 0usize..16, z in 0usize..16) {
            let q = &battery()[qi];
            let n = q.size();
            let (x, y, z) = (x % n, y % n, z % n);
            let l = q.lattice();
            let a = l.leq(q.mul(x, y), z);
            prop_assert_eq!(a, l.leq(y, q.residual_left(x, z)));
            prop_assert_eq!(a, l.leq(x, q.residual_right(z, y)));
        }

        #[test]
        fn chu_serre_identities(qi in 0usize..9, x in 0usize..256, y in 0usize..256) {
            let c = battery()[qi].chu();
            let q = c.quantale();
            let n = q.size();
            let (x, y) = (x % n, y % n);
            let (l, r) = (c.lneg(), c.rneg());
            prop_assert_eq!(q.residual_left(x, y), q.residual_right(r[x], r[y]));
            prop_assert_eq!(q.residual_right(x, y), q.residual_left(l[x], l[y]));
            prop_assert_eq!(q.residual_left(l[x], y), q.residual_right(x, r[y]));
        }
    }
}
