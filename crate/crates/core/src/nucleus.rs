//! Quantic nuclei, quotient quantales and Serre Galois connections.

use alloc::{vec, vec::Vec};

use crate::{
    lattice::{EndoMap, Elem},
    quantale::{check_frobenius, FrobeniusQuantale, Quantale},
    Error, Result,
};

/// First law a candidate nucleus violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusViolation {
    /// `x ≤ y` but `j(x) ≰ j(y)`.
    NotMonotone(Elem, Elem),
    /// `x ≰ j(x)`.
    NotIncreasing(Elem),
    /// `j(j(x)) ≠ j(x)`.
    NotIdempotent(Elem),
    /// `j(x) ∗ j(y) ≰ j(x ∗ y)`.
    NotLaxMultiplicative(Elem, Elem),
}

impl NucleusViolation {
    pub fn law(&self) -> &'static str {
        match self {
            NucleusViolation::NotMonotone(..) => "monotone",
            NucleusViolation::NotIncreasing(_) => "increasing",
            NucleusViolation::NotIdempotent(_) => "idempotent",
            NucleusViolation::NotLaxMultiplicative(..) => "lax multiplicative",
        }
    }
}

/// Checks the closure-operator laws and lax multiplicativity of `j`.
pub fn nucleus_violation(q: &Quantale, j: &EndoMap) -> Option<NucleusViolation> {
    let l = q.lattice();
    for x in l.elements() {
        for y in l.elements() {
            if l.leq(x, y) && !l.leq(j[x], j[y]) {
                return Some(NucleusViolation::NotMonotone(x, y));
            }
        }
    }
    if let Some(x) = l.elements().find(|&x| !l.leq(x, j[x])) {
        return Some(NucleusViolation::NotIncreasing(x));
    }
    if let Some(x) = l.elements().find(|&x| j[j[x]] != j[x]) {
        return Some(NucleusViolation::NotIdempotent(x));
    }
    for x in l.elements() {
        for y in l.elements() {
            if !l.leq(q.mul(j[x], j[y]), j[q.mul(x, y)]) {
                return Some(NucleusViolation::NotLaxMultiplicative(x, y));
            }
        }
    }
    None
}

pub fn is_nucleus(q: &Quantale, j: &EndoMap) -> bool {
    j.image().len() == q.size() && nucleus_violation(q, j).is_none()
}

/// A validated nucleus on a quantale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    map: EndoMap,
}

impl Nucleus {
    pub fn new(q: &Quantale, j: EndoMap) -> Result<Self> {
        let j = EndoMap::new(q.lattice(), j.into_image())?;
        match nucleus_violation(q, &j) {
            Some(v) => Err(Error::NotANucleus(v.law())),
            None => Ok(Nucleus { map: j }),
        }
    }

    #[inline]
    pub fn map(&self) -> &EndoMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// Fixed points, ascending.
    pub fn closed(&self) -> Vec<Elem> {
        (0..self.map.image().len())
            .filter(|&x| self.map[x] == x)
            .collect()
    }
}

/// The quantale `Q_j` of fixed points of a nucleus, with `x ∗_j y = j(x ∗ y)`.
///
/// Elements of `Q_j` are indexed by their position in [`Self::closed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientQuantale {
    nucleus: Nucleus,
    closed: Vec<Elem>,
    position: Vec<Option<usize>>,
    quantale: Quantale,
}

impl QuotientQuantale {
    /// Builds `Q_j` and checks that `j : Q → Q_j` is a surjective quantale
    /// homomorphism whose joins are `j(⋁S)`.
    pub fn new(q: &Quantale, nucleus: Nucleus) -> Result<Self> {
        let closed = nucleus.closed();
        let mut position = vec![None; q.size()];
        for (i, &x) in closed.iter().enumerate() {
            position[x] = Some(i);
        }
        let lattice = q.lattice().induced(&closed)?;
        let pos = |x: Elem| position[x].expect("nucleus values are closed");
        let m = closed.len();
        let mut mult = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                mult[a * m + b] = pos(nucleus.apply(q.mul(closed[a], closed[b])));
            }
        }
        let quantale = Quantale::new(lattice, mult)?;
        let l = q.lattice();
        for a in 0..m {
            for b in 0..m {
                let ambient = nucleus.apply(l.join(closed[a], closed[b]));
                if closed[quantale.lattice().join(a, b)] != ambient {
                    return Err(Error::CheckFailed("quotient joins are j of ambient joins"));
                }
            }
        }
        for x in l.elements() {
            for y in l.elements() {
                let lhs = pos(nucleus.apply(q.mul(x, y)));
                let rhs = quantale.mul(pos(nucleus.apply(x)), pos(nucleus.apply(y)));
                if lhs != rhs {
                    return Err(Error::CheckFailed("nucleus is a quantale homomorphism"));
                }
            }
        }
        Ok(QuotientQuantale {
            nucleus,
            closed,
            position,
            quantale,
        })
    }

    pub fn nucleus(&self) -> &Nucleus {
        &self.nucleus
    }

    /// Ambient indices of the closed elements, ascending.
    pub fn closed(&self) -> &[Elem] {
        &self.closed
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    /// Quotient index of a closed ambient element.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    /// Quotient index of `j(x)`.
    pub fn project(&self, x: Elem) -> usize {
        self.position[self.nucleus.apply(x)].expect("nucleus values are closed")
    }

    /// Ambient element of a quotient index.
    pub fn embed(&self, i: usize) -> Elem {
        self.closed[i]
    }

    /// Transfers an ambient endomap that preserves closed elements to `Q_j`.
    pub fn restrict(&self, f: &EndoMap) -> Option<EndoMap> {
        let image: Option<Vec<usize>> = self.closed.iter().map(|&x| self.position(f[x])).collect();
        EndoMap::new(self.quantale.lattice(), image?).ok()
    }
}

/// The Frobenius quotient induced by a Serre Galois connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreQuotient {
    pub quotient: QuotientQuantale,
    pub frobenius: FrobeniusQuantale,
}

/// For a Serre Galois connection `(l, r)`, the nucleus `j = l ∘ r`, the
/// quotient `Q_j` and the restrictions of `l` and `r` as negations on it.
pub fn serre_gc_quotient(q: &Quantale, l: &EndoMap, r: &EndoMap) -> Result<SerreQuotient> {
    let report = check_frobenius(q, l, r)?;
    if let Some(law) = report.first_serre_gc_failure() {
        return Err(Error::NotSerreGC(law));
    }
    let nucleus = Nucleus::new(q, l.compose(r))?;
    let quotient = QuotientQuantale::new(q, nucleus)?;
    let lneg = quotient
        .restrict(l)
        .ok_or(Error::CheckFailed("l maps closed elements to closed elements"))?;
    let rneg = quotient
        .restrict(r)
        .ok_or(Error::CheckFailed("r maps closed elements to closed elements"))?;
    let frobenius = FrobeniusQuantale::new(quotient.quantale().clone(), lneg, rneg)?;
    Ok(SerreQuotient { quotient, frobenius })
}

/// Lifts a Serre duality `(l, r)` on `Q_j` to the Serre Galois connection
/// `(l ∘ j, r ∘ j)` on `Q`, and checks that its quotient gives back
/// `(Q_j, l, r)`.
pub fn lift_serre(
    q: &Quantale,
    quotient: &QuotientQuantale,
    l: &EndoMap,
    r: &EndoMap,
) -> Result<(EndoMap, EndoMap)> {
    let qj = quotient.quantale();
    let report = check_frobenius(qj, l, r)?;
    for (name, flag) in [
        ("antitone", &report.antitone),
        ("inverse", &report.is_inverse_pair),
        ("shift relation", &report.shift_holds),
    ] {
        if !flag.holds {
            return Err(Error::NotSerreDualityOnQuotient(name));
        }
    }
    let lift = |f: &EndoMap| EndoMap::from_fn(q.lattice(), |x| quotient.embed(f[quotient.project(x)]));
    let (lj, rj) = (lift(l), lift(r));
    let again = serre_gc_quotient(q, &lj, &rj)?;
    if again.quotient.closed() != quotient.closed()
        || again.frobenius.lneg() != l
        || again.frobenius.rneg() != r
    {
        return Err(Error::CheckFailed("lifted pair induces the original quotient"));
    }
    Ok((lj, rj))
}

/// The pair `l(x) = 0 / x`, `r(x) = x \ 0`.
pub fn representable_pair(q: &Quantale, zero: Elem) -> (EndoMap, EndoMap) {
    let l = EndoMap::from_fn(q.lattice(), |x| q.residual_right(zero, x));
    let r = EndoMap::from_fn(q.lattice(), |x| q.residual_left(x, zero));
    (l, r)
}

/// The least `0` with `r(x) = x \ 0` and `l(x) = 0 / x` for every `x`.
pub fn representable_by(q: &Quantale, l: &EndoMap, r: &EndoMap) -> Option<Elem> {
    q.lattice().elements().find(|&zero| {
        q.lattice().elements().all(|x| {
            r[x] == q.residual_left(x, zero) && l[x] == q.residual_right(zero, x)
        })
    })
}
