//! Finite lattices and maps between them.
//!
//! Elements are dense indices. Order, binary joins and binary meets are
//! tabulated once at construction, so every lattice operation is a table
//! lookup.

use alloc::{
    boxed::Box,
    format,
    string::{String, ToString},
    vec,
    vec::Vec,
};
use core::{fmt, ops::Index, ops::Range, str::FromStr};

use fixedbitset::FixedBitSet;

use crate::{Budget, Error, Result};

/// Index of a lattice element.
pub type Elem = usize;

/// A finite bounded lattice with tabulated order, join and meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bot: Elem,
    top: Elem,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Builds a lattice from a cover relation `(lower, upper)`.
    ///
    /// The order is the reflexive-transitive closure of `covers`. Pairs need
    /// not be actual covers; any generating set of the order works.
    pub fn from_covers(n: usize, covers: &[(Elem, Elem)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(x, y) in covers {
            check_index(x, n)?;
            check_index(y, n)?;
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::CycleDetected);
                }
            }
        }
        Self::from_leq_table(n, leq)
    }

    /// Builds a lattice from an order predicate, checking that it is a
    /// partial order.
    pub fn from_order(n: usize, leq: impl Fn(Elem, Elem) -> bool) -> Result<Self> {
        let mut table = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = leq(x, y);
            }
        }
        for x in 0..n {
            if !table[x * n + x] {
                return Err(Error::NotPartialOrder);
            }
            for y in 0..n {
                if x != y && table[x * n + y] && table[y * n + x] {
                    return Err(Error::NotPartialOrder);
                }
                if !table[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if table[y * n + z] && !table[x * n + z] {
                        return Err(Error::NotPartialOrder);
                    }
                }
            }
        }
        Self::from_leq_table(n, table)
    }

    fn from_leq_table(n: usize, leq: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotBounded);
        }
        let bot = (0..n)
            .find(|&b| (0..n).all(|x| leq[b * n + x]))
            .ok_or(Error::NotBounded)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| leq[x * n + t]))
            .ok_or(Error::NotBounded)?;

        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for x in 0..n {
            let mut u = FixedBitSet::with_capacity(n);
            let mut d = FixedBitSet::with_capacity(n);
            for y in 0..n {
                u.set(y, leq[x * n + y]);
                d.set(y, leq[y * n + x]);
            }
            up.push(u);
            down.push(d);
        }
        let down_count: Vec<usize> = down.iter().map(|d| d.count_ones(..)).collect();
        let up_count: Vec<usize> = up.iter().map(|u| u.count_ones(..)).collect();

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut scratch = FixedBitSet::with_capacity(n);
        for x in 0..n {
            join[x * n + x] = x;
            meet[x * n + x] = x;
            for y in x + 1..n {
                // The least upper bound, when it exists, is the upper bound
                // with the smallest down-set.
                scratch.clone_from(&up[x]);
                scratch.intersect_with(&up[y]);
                let lub = scratch
                    .ones()
                    .min_by_key(|&u| down_count[u])
                    .filter(|&u| up[u] == scratch)
                    .ok_or(Error::NotALattice(x, y))?;
                scratch.clone_from(&down[x]);
                scratch.intersect_with(&down[y]);
                let glb = scratch
                    .ones()
                    .min_by_key(|&u| up_count[u])
                    .filter(|&u| down[u] == scratch)
                    .ok_or(Error::NotALattice(x, y))?;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }
        Ok(FiniteLattice {
            n,
            leq,
            join,
            meet,
            bot,
            top,
            labels: Vec::new(),
        })
    }

    /// Attaches element names. They are metadata only.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if !labels.is_empty() && labels.len() != self.n {
            return Err(Error::ShapeMismatch {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Name of `x`, falling back to its index.
    pub fn label(&self, x: Elem) -> String {
        self.labels.get(x).cloned().unwrap_or_else(|| x.to_string())
    }

    /// Index of the element carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn elements(&self) -> Range<Elem> {
        0..self.n
    }

    #[inline]
    pub fn bot(&self) -> Elem {
        self.bot
    }

    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }

    /// Join of a family; the empty join is the bottom.
    pub fn join_of(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the empty meet is the top.
    pub fn meet_of(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.n
    }

    /// Pairs `(x, y)` with `x` covered by `y`.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| {
                x != self.bot && !self.elements().any(|z| self.lt(self.bot, z) && self.lt(z, x))
            })
            .collect()
    }

    /// Elements that are not the join of the elements strictly below them.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| self.join_of(self.elements().filter(|&y| self.lt(y, x))) != x)
            .collect()
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// The opposite lattice on the same indices.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.n;
        let mut leq = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                leq[x * n + y] = self.leq(y, x);
            }
        }
        FiniteLattice {
            n,
            leq,
            join: self.meet.clone(),
            meet: self.join.clone(),
            bot: self.top,
            top: self.bot,
            labels: self.labels.clone(),
        }
    }

    /// Cartesian product; the pair `(x, y)` has index `x * other.size() + y`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n0, n1) = (self.n, other.n);
        let n = n0 * n1;
        let split = |i: Elem| (i / n1, i % n1);
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for i in 0..n {
            let (a, b) = split(i);
            for j in 0..n {
                let (c, d) = split(j);
                leq[i * n + j] = self.leq(a, c) && other.leq(b, d);
                join[i * n + j] = self.join(a, c) * n1 + other.join(b, d);
                meet[i * n + j] = self.meet(a, c) * n1 + other.meet(b, d);
            }
        }
        let labels = if self.labels.is_empty() && other.labels.is_empty() {
            Vec::new()
        } else {
            (0..n)
                .map(|i| {
                    let (a, b) = split(i);
                    format!("({},{})", self.label(a), other.label(b))
                })
                .collect()
        };
        FiniteLattice {
            n,
            leq,
            join,
            meet,
            bot: self.bot * n1 + other.bot,
            top: self.top * n1 + other.top,
            labels,
        }
    }

    /// The sub-poset on `elems` (listed in the order of the new indices).
    pub fn induced(&self, elems: &[Elem]) -> Result<FiniteLattice> {
        for &x in elems {
            check_index(x, self.n)?;
        }
        let labels = if self.labels.is_empty() {
            Vec::new()
        } else {
            elems.iter().map(|&x| self.label(x)).collect()
        };
        FiniteLattice::from_order(elems.len(), |i, j| self.leq(elems[i], elems[j]))?
            .with_labels(labels)
    }

    /// The chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> FiniteLattice {
        assert!(k >= 1, "a chain needs at least one element");
        let covers: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::from_covers(k, &covers)
            .and_then(|l| l.with_labels(labels))
            .expect("chains are lattices")
    }

    /// The Boolean lattice of subsets of a `k`-element set, indexed by bitmask.
    pub fn boolean(k: usize) -> FiniteLattice {
        assert!(k < 16, "boolean lattice too large");
        let n = 1usize << k;
        let labels = (0..n)
            .map(|m| {
                let items: Vec<String> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        Self::from_order(n, |x, y| x & !y == 0)
            .and_then(|l| l.with_labels(labels))
            .expect("powersets are lattices")
    }

    /// The diamond `M_n`: bottom `0`, atoms `1..=n`, top `n + 1`.
    pub fn diamond(n: usize) -> FiniteLattice {
        let top = n + 1;
        let mut covers = Vec::new();
        if n == 0 {
            covers.push((0, 1));
        }
        for a in 1..=n {
            covers.push((0, a));
            covers.push((a, top));
        }
        let mut labels = vec![String::from("bot")];
        labels.extend((1..=n).map(|a| format!("a{a}")));
        labels.push(String::from("top"));
        Self::from_covers(n + 2, &covers)
            .and_then(|l| l.with_labels(labels))
            .expect("diamonds are lattices")
    }

    /// The pentagon `N_5`: `bot < a < top`, `bot < b < c < top`.
    pub fn pentagon() -> FiniteLattice {
        let covers = [(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)];
        let labels = ["bot", "a", "b", "c", "top"].iter().map(|s| String::from(*s)).collect();
        Self::from_covers(5, &covers)
            .and_then(|l| l.with_labels(labels))
            .expect("the pentagon is a lattice")
    }
}

impl fmt::Display for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice with {} elements, covers", self.n)?;
        for (x, y) in self.covers() {
            write!(f, " {}<{}", self.label(x), self.label(y))?;
        }
        Ok(())
    }
}

fn check_index(x: Elem, n: usize) -> Result<()> {
    if x < n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: x, len: n })
    }
}

/// Names of the standard lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Chain(usize),
    Boolean(usize),
    Diamond(usize),
    Pentagon,
    Dual(Box<LatticeSpec>),
    Product(Box<LatticeSpec>, Box<LatticeSpec>),
}

impl LatticeSpec {
    pub fn build(&self) -> FiniteLattice {
        match self {
            LatticeSpec::Chain(k) => FiniteLattice::chain(*k),
            LatticeSpec::Boolean(k) => FiniteLattice::boolean(*k),
            LatticeSpec::Diamond(n) => FiniteLattice::diamond(*n),
            LatticeSpec::Pentagon => FiniteLattice::pentagon(),
            LatticeSpec::Dual(inner) => inner.build().dual(),
            LatticeSpec::Product(a, b) => a.build().product(&b.build()),
        }
    }
}

/// Error returned when a lattice name cannot be parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseLatticeSpecError(pub String);

impl fmt::Display for ParseLatticeSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unrecognised lattice name `{}`", self.0)
    }
}

impl FromStr for LatticeSpec {
    type Err = ParseLatticeSpecError;

    /// Accepts `chain:3`, `boolean:2`, `M3` (or `m:3`), `N5`, `dual(...)`
    /// and `product(..., ...)`.
    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let err = || ParseLatticeSpecError(String::from(s));
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if let Some(inner) = lower.strip_prefix("dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(LatticeSpec::Dual(Box::new(inner.parse()?)));
        }
        if let Some(inner) = lower.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            let mut split = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(err)?,
                    ',' if depth == 0 => {
                        split = Some(i);
                        break;
                    }
                    _ => {}
                }
            }
            let i = split.ok_or_else(err)?;
            return Ok(LatticeSpec::Product(
                Box::new(inner[..i].parse()?),
                Box::new(inner[i + 1..].parse()?),
            ));
        }
        if lower == "n5" || lower == "pentagon" {
            return Ok(LatticeSpec::Pentagon);
        }
        let name: String = lower.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        let rest = lower[name.len()..].trim_start_matches(':');
        let k: usize = rest.parse().map_err(|_| err())?;
        match name.as_str() {
            "chain" | "c" => {
                if k == 0 {
                    return Err(err());
                }
                Ok(LatticeSpec::Chain(k))
            }
            "boolean" | "b" => Ok(LatticeSpec::Boolean(k)),
            "m" | "diamond" => Ok(LatticeSpec::Diamond(k)),
            _ => Err(err()),
        }
    }
}

/// A total function from a lattice to itself, stored as its table.
///
/// No order-theoretic property is assumed; predicates such as
/// [`EndoMap::is_sup_preserving`] take the lattice explicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndoMap(Vec<Elem>);

impl EndoMap {
    pub fn new(l: &FiniteLattice, image: Vec<Elem>) -> Result<Self> {
        if image.len() != l.size() {
            return Err(Error::ShapeMismatch {
                expected: l.size(),
                found: image.len(),
            });
        }
        for &y in &image {
            check_index(y, l.size())?;
        }
        Ok(EndoMap(image))
    }

    pub fn from_fn(l: &FiniteLattice, f: impl FnMut(Elem) -> Elem) -> Self {
        EndoMap(l.elements().map(f).collect())
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        EndoMap(l.elements().collect())
    }

    pub fn constant(l: &FiniteLattice, value: Elem) -> Self {
        EndoMap(vec![value; l.size()])
    }

    #[inline]
    pub fn image(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_image(self) -> Vec<Elem> {
        self.0
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.0[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &EndoMap) -> EndoMap {
        EndoMap(inner.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn join(&self, l: &FiniteLattice, other: &EndoMap) -> EndoMap {
        EndoMap(self.0.iter().zip(&other.0).map(|(&a, &b)| l.join(a, b)).collect())
    }

    pub fn meet(&self, l: &FiniteLattice, other: &EndoMap) -> EndoMap {
        EndoMap(self.0.iter().zip(&other.0).map(|(&a, &b)| l.meet(a, b)).collect())
    }

    /// Pointwise order.
    pub fn leq(&self, l: &FiniteLattice, other: &EndoMap) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| l.leq(a, b))
    }

    pub fn is_monotone(&self, l: &FiniteLattice) -> bool {
        is_monotone(l, l, &self.0)
    }

    pub fn is_antitone(&self, l: &FiniteLattice) -> bool {
        l.elements()
            .all(|x| l.elements().all(|y| !l.leq(x, y) || l.leq(self.0[y], self.0[x])))
    }

    pub fn is_sup_preserving(&self, l: &FiniteLattice) -> bool {
        is_sup_preserving(l, l, &self.0)
    }

    pub fn is_meet_preserving(&self, l: &FiniteLattice) -> bool {
        is_meet_preserving(l, l, &self.0)
    }

    pub fn is_injective(&self) -> bool {
        injectivity_witness(&self.0).is_none()
    }

    /// Isotone, increasing and idempotent.
    pub fn is_closure_operator(&self, l: &FiniteLattice) -> bool {
        self.is_monotone(l)
            && l.elements().all(|x| l.leq(x, self.0[x]) && self.0[self.0[x]] == self.0[x])
    }

    pub fn right_adjoint(&self, l: &FiniteLattice) -> Result<EndoMap> {
        right_adjoint(l, l, &self.0).map(EndoMap)
    }

    pub fn left_adjoint(&self, l: &FiniteLattice) -> Result<EndoMap> {
        left_adjoint(l, l, &self.0).map(EndoMap)
    }

    /// The set of values, sorted.
    pub fn range(&self) -> Vec<Elem> {
        let mut out = self.0.clone();
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Index<Elem> for EndoMap {
    type Output = Elem;

    fn index(&self, x: Elem) -> &Elem {
        &self.0[x]
    }
}

/// A map between two lattices.
#[derive(Clone, Debug)]
pub struct LatticeMap<'a> {
    pub source: &'a FiniteLattice,
    pub target: &'a FiniteLattice,
    image: Vec<Elem>,
}

impl<'a> LatticeMap<'a> {
    pub fn new(source: &'a FiniteLattice, target: &'a FiniteLattice, image: Vec<Elem>) -> Result<Self> {
        if image.len() != source.size() {
            return Err(Error::ShapeMismatch {
                expected: source.size(),
                found: image.len(),
            });
        }
        for &y in &image {
            check_index(y, target.size())?;
        }
        Ok(LatticeMap { source, target, image })
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x]
    }

    pub fn is_monotone(&self) -> bool {
        is_monotone(self.source, self.target, &self.image)
    }

    pub fn is_sup_preserving(&self) -> bool {
        is_sup_preserving(self.source, self.target, &self.image)
    }

    pub fn is_meet_preserving(&self) -> bool {
        is_meet_preserving(self.source, self.target, &self.image)
    }

    /// First pair of distinct elements with the same image.
    pub fn injectivity_witness(&self) -> Option<(Elem, Elem)> {
        injectivity_witness(&self.image)
    }

    /// `ρ(f)(y) = ⋁{x | f(x) ≤ y}`, a map from the target back to the source.
    pub fn right_adjoint(&self) -> Result<LatticeMap<'a>> {
        let image = right_adjoint(self.source, self.target, &self.image)?;
        Ok(LatticeMap {
            source: self.target,
            target: self.source,
            image,
        })
    }

    /// `λ(g)(x) = ⋀{y | x ≤ g(y)}`, a map from the target back to the source.
    pub fn left_adjoint(&self) -> Result<LatticeMap<'a>> {
        let image = left_adjoint(self.source, self.target, &self.image)?;
        Ok(LatticeMap {
            source: self.target,
            target: self.source,
            image,
        })
    }
}

fn is_monotone(src: &FiniteLattice, tgt: &FiniteLattice, f: &[Elem]) -> bool {
    src.elements()
        .all(|x| src.elements().all(|y| !src.leq(x, y) || tgt.leq(f[x], f[y])))
}

fn is_sup_preserving(src: &FiniteLattice, tgt: &FiniteLattice, f: &[Elem]) -> bool {
    f[src.bot()] == tgt.bot()
        && src.elements().all(|x| {
            (x + 1..src.size()).all(|y| f[src.join(x, y)] == tgt.join(f[x], f[y]))
        })
}

fn is_meet_preserving(src: &FiniteLattice, tgt: &FiniteLattice, f: &[Elem]) -> bool {
    f[src.top()] == tgt.top()
        && src.elements().all(|x| {
            (x + 1..src.size()).all(|y| f[src.meet(x, y)] == tgt.meet(f[x], f[y]))
        })
}

fn injectivity_witness(f: &[Elem]) -> Option<(Elem, Elem)> {
    for x in 0..f.len() {
        for y in x + 1..f.len() {
            if f[x] == f[y] {
                return Some((x, y));
            }
        }
    }
    None
}

fn right_adjoint(src: &FiniteLattice, tgt: &FiniteLattice, f: &[Elem]) -> Result<Vec<Elem>> {
    if !is_sup_preserving(src, tgt, f) {
        return Err(Error::NotSupPreserving);
    }
    Ok(tgt
        .elements()
        .map(|y| src.join_of(src.elements().filter(|&x| tgt.leq(f[x], y))))
        .collect())
}

fn left_adjoint(src: &FiniteLattice, tgt: &FiniteLattice, g: &[Elem]) -> Result<Vec<Elem>> {
    if !is_meet_preserving(src, tgt, g) {
        return Err(Error::NotMeetPreserving);
    }
    Ok(tgt
        .elements()
        .map(|x| src.meet_of(src.elements().filter(|&y| tgt.leq(x, g[y]))))
        .collect())
}

/// All sup-preserving endomaps of `l`, sorted by image table.
///
/// Images are assigned to the join-irreducible elements (monotonically, in
/// a linear extension of the order), every other value is the join of the
/// images of the join-irreducibles below it, and the extension is kept when
/// it preserves binary joins.
pub fn enumerate_sup_endomaps(l: &FiniteLattice, budget: &Budget) -> Result<Vec<EndoMap>> {
    let mut irr = l.join_irreducibles();
    irr.sort_by_key(|&j| l.elements().filter(|&y| l.leq(y, j)).count());
    let estimate = (l.size() as u128)
        .checked_pow(irr.len() as u32)
        .unwrap_or(u128::MAX);
    if estimate > budget.max_candidates as u128 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: budget.max_candidates,
        });
    }
    // below[x]: positions in `irr` of the join-irreducibles under x.
    let below: Vec<Vec<usize>> = l
        .elements()
        .map(|x| (0..irr.len()).filter(|&k| l.leq(irr[k], x)).collect())
        .collect();
    let mut assignment = vec![l.bot(); irr.len()];
    let mut out = Vec::new();
    extend_assignment(l, &irr, &below, &mut assignment, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn extend_assignment(
    l: &FiniteLattice,
    irr: &[Elem],
    below: &[Vec<usize>],
    assignment: &mut Vec<Elem>,
    k: usize,
    out: &mut Vec<EndoMap>,
) {
    if k == irr.len() {
        let image: Vec<Elem> = l
            .elements()
            .map(|x| l.join_of(below[x].iter().map(|&i| assignment[i])))
            .collect();
        if is_sup_preserving(l, l, &image) {
            out.push(EndoMap(image));
        }
        return;
    }
    for v in l.elements() {
        let consistent = (0..k).all(|i| !l.leq(irr[i], irr[k]) || l.leq(assignment[i], v));
        if consistent {
            assignment[k] = v;
            extend_assignment(l, irr, below, assignment, k + 1, out);
        }
    }
}

/// All meet-preserving endomaps of `l`: the sup-preserving endomaps of the
/// opposite lattice.
pub fn enumerate_meet_endomaps(l: &FiniteLattice, budget: &Budget) -> Result<Vec<EndoMap>> {
    enumerate_sup_endomaps(&l.dual(), budget)
}

/// Order automorphisms of `l`.
pub fn order_automorphisms(l: &FiniteLattice, budget: &Budget) -> Result<Vec<EndoMap>> {
    Ok(enumerate_sup_endomaps(l, budget)?
        .into_iter()
        .filter(EndoMap::is_injective)
        .collect())
}
