//! Raney transforms, tight and cotight maps, the Girard quantale of tight
//! endomaps, and the quantale of meet-preserving endomaps under `•`.

use alloc::{collections::BTreeMap, vec, vec::Vec};

use crate::{
    lattice::{enumerate_meet_endomaps, enumerate_sup_endomaps, EndoMap, Elem, FiniteLattice},
    nucleus::{serre_gc_quotient, SerreQuotient},
    quantale::{check_frobenius, is_isomorphism, Flag, FrobeniusQuantale, Quantale},
    Budget, Error, Result,
};

/// `rans(f)(x) = ⋁{f(t) | x ≰ t}`.
pub fn rans(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    EndoMap::from_fn(l, |x| l.join_of(l.elements().filter(|&t| !l.leq(x, t)).map(|t| f[t])))
}

/// `rani(f)(x) = ⋀{f(t) | t ≰ x}`.
pub fn rani(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    EndoMap::from_fn(l, |x| l.meet_of(l.elements().filter(|&t| !l.leq(t, x)).map(|t| f[t])))
}

/// Right adjoint of `rans(f)` for an arbitrary `f`: `y ↦ ⋀{t | f(t) ≰ y}`.
pub fn rans_right_adjoint(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    EndoMap::from_fn(l, |y| l.meet_of(l.elements().filter(|&t| !l.leq(f[t], y))))
}

/// `rans(rani(f))`, the greatest tight map below `f`.
pub fn tight_interior(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    rans(l, &rani(l, f))
}

/// `rani(rans(f))`, the least cotight map above `f`.
pub fn cotight_closure(l: &FiniteLattice, f: &EndoMap) -> EndoMap {
    rani(l, &rans(l, f))
}

pub fn is_tight(l: &FiniteLattice, f: &EndoMap) -> bool {
    tight_interior(l, f) == *f
}

pub fn is_cotight(l: &FiniteLattice, f: &EndoMap) -> bool {
    cotight_closure(l, f) == *f
}

/// `star(f) = rans(ρ(f))` for a sup-preserving `f`.
pub fn star(l: &FiniteLattice, f: &EndoMap) -> Result<EndoMap> {
    Ok(rans(l, &f.right_adjoint(l)?))
}

/// `c_y`: `⊥ ↦ ⊥`, everything else `↦ y`.
pub fn c_map(l: &FiniteLattice, y: Elem) -> EndoMap {
    EndoMap::from_fn(l, |t| if t == l.bot() { l.bot() } else { y })
}

/// `a_x`: `t ↦ ⊤` if `t ≰ x`, else `⊥`.
pub fn a_map(l: &FiniteLattice, x: Elem) -> EndoMap {
    EndoMap::from_fn(l, |t| if l.leq(t, x) { l.bot() } else { l.top() })
}

/// Pointwise join of `c_y ∘ a_x` over `pairs` of `(y, x)`.
pub fn join_of_generators(l: &FiniteLattice, pairs: &[(Elem, Elem)]) -> EndoMap {
    pairs.iter().fold(EndoMap::constant(l, l.bot()), |acc, &(y, x)| {
        acc.join(l, &c_map(l, y).compose(&a_map(l, x)))
    })
}

/// Writes a tight `f` as the join of `c_{g(t)} ∘ a_t` with `g = rani(f)`.
pub fn decompose_tight(l: &FiniteLattice, f: &EndoMap) -> Result<Vec<(Elem, Elem)>> {
    if !is_tight(l, f) {
        return Err(Error::NotTight);
    }
    let g = rani(l, f);
    let pairs: Vec<(Elem, Elem)> = l.elements().map(|t| (g[t], t)).collect();
    if join_of_generators(l, &pairs) != *f {
        return Err(Error::CheckFailed("generators join back to the map"));
    }
    Ok(pairs)
}

/// The least meet-preserving map above a monotone `f`.
///
/// Repairs `f` to a fixpoint: `⊤ ↦ ⊤`, and each value absorbs the values
/// below it and every `g(x) ∧ g(y)` with `x ∧ y` equal to it.
pub fn meet_closure(l: &FiniteLattice, f: &EndoMap) -> Result<EndoMap> {
    if !f.is_monotone(l) {
        return Err(Error::NotMonotone);
    }
    let mut g = f.clone().into_image();
    g[l.top()] = l.top();
    loop {
        let mut changed = false;
        for z in l.elements() {
            let mut v = g[z];
            for x in l.elements() {
                if l.leq(x, z) {
                    v = l.join(v, g[x]);
                }
                for y in l.elements() {
                    if l.meet(x, y) == z {
                        v = l.join(v, l.meet(g[x], g[y]));
                    }
                }
            }
            if v != g[z] {
                g[z] = v;
                changed = true;
            }
        }
        if !changed {
            return EndoMap::new(l, g);
        }
    }
}

/// `perp(f) = ρ(rans(f))` for a meet-preserving `f`.
pub fn perp(l: &FiniteLattice, f: &EndoMap) -> Result<EndoMap> {
    if !f.is_meet_preserving(l) {
        return Err(Error::NotMeetPreserving);
    }
    rans(l, f).right_adjoint(l)
}

/// `(y ⊗ x)(t)`: `⊤` at `⊤`, `y` when `x ≤ t < ⊤`, `⊥` otherwise.
pub fn elementary_tensor(l: &FiniteLattice, y: Elem, x: Elem) -> EndoMap {
    EndoMap::from_fn(l, |t| {
        if t == l.top() {
            l.top()
        } else if l.leq(x, t) {
            y
        } else {
            l.bot()
        }
    })
}

/// A set of endomaps of one lattice, sorted by image table, ordered
/// pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFamily {
    base: FiniteLattice,
    maps: Vec<EndoMap>,
    index: BTreeMap<EndoMap, usize>,
    lattice: FiniteLattice,
}

impl MapFamily {
    /// Fails unless the family is a lattice under the pointwise order.
    pub fn new(base: FiniteLattice, mut maps: Vec<EndoMap>) -> Result<Self> {
        maps.sort_unstable();
        maps.dedup();
        let index = maps.iter().cloned().zip(0..).collect();
        let lattice = FiniteLattice::from_order(maps.len(), |a, b| maps[a].leq(&base, &maps[b]))?;
        Ok(MapFamily {
            base,
            maps,
            index,
            lattice,
        })
    }

    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[EndoMap] {
        &self.maps
    }

    pub fn get(&self, i: usize) -> &EndoMap {
        &self.maps[i]
    }

    pub fn position(&self, f: &EndoMap) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// The pointwise order as a lattice on family indices.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    fn locate(&self, f: &EndoMap, what: &'static str) -> Result<usize> {
        self.position(f).ok_or(Error::CheckFailed(what))
    }

    /// The quantale whose product of `a` and `b` is `op(a, b)`.
    pub fn quantale_with(&self, op: impl Fn(&EndoMap, &EndoMap) -> EndoMap) -> Result<Quantale> {
        let m = self.len();
        let mut mult = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let p = op(&self.maps[a], &self.maps[b]);
                mult[a * m + b] = self.locate(&p, "family is closed under the product")?;
            }
        }
        Quantale::new(self.lattice.clone(), mult)
    }

    /// Transfers a map on endomaps to family indices.
    pub fn endomap_with(&self, op: impl Fn(&EndoMap) -> Result<EndoMap>) -> Result<EndoMap> {
        let image = self
            .maps
            .iter()
            .map(|f| self.locate(&op(f)?, "family is closed under the map"))
            .collect::<Result<Vec<_>>>()?;
        EndoMap::new(&self.lattice, image)
    }
}

/// Sup-preserving endomaps under composition.
pub fn sup_endomap_quantale(l: &FiniteLattice, budget: &Budget) -> Result<(MapFamily, Quantale)> {
    let family = MapFamily::new(l.clone(), enumerate_sup_endomaps(l, budget)?)?;
    let q = family.quantale_with(|f, g| f.compose(g))?;
    Ok((family, q))
}

/// The Girard quantale of tight endomaps under composition, with
/// negation `star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightQuantale {
    family: MapFamily,
    frobenius: FrobeniusQuantale,
}

impl TightQuantale {
    /// Enumerates the tight maps of `l` and validates the quantale and
    /// Frobenius laws.
    pub fn new(l: &FiniteLattice, budget: &Budget) -> Result<Self> {
        let maps: Vec<EndoMap> = enumerate_sup_endomaps(l, budget)?
            .into_iter()
            .filter(|f| is_tight(l, f))
            .collect();
        let family = MapFamily::new(l.clone(), maps)?;
        let q = family.quantale_with(|f, g| f.compose(g))?;
        let neg = family.endomap_with(|f| star(l, f))?;
        let frobenius = FrobeniusQuantale::new(q, neg.clone(), neg)?;
        Ok(TightQuantale { family, frobenius })
    }

    pub fn family(&self) -> &MapFamily {
        &self.family
    }

    pub fn base(&self) -> &FiniteLattice {
        self.family.base()
    }

    pub fn quantale(&self) -> &Quantale {
        self.frobenius.quantale()
    }

    pub fn frobenius(&self) -> &FrobeniusQuantale {
        &self.frobenius
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn map(&self, i: usize) -> &EndoMap {
        self.family.get(i)
    }

    pub fn position(&self, f: &EndoMap) -> Option<usize> {
        self.family.position(f)
    }

    /// `f \ g = rans(rani(ρ(f) ∘ g))`, computed on maps.
    pub fn residual_via_transforms(&self, f: &EndoMap, g: &EndoMap) -> Result<EndoMap> {
        let l = self.base();
        Ok(tight_interior(l, &f.right_adjoint(l)?.compose(g)))
    }
}

/// Outcome of [`bullet_quantale`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BulletReport {
    /// Number of meet-preserving endomaps.
    pub meet_maps: usize,
    /// Number of cotight maps.
    pub cotight_maps: usize,
    /// `rani(λ(f)) = ρ(rans(f))`; witness `(f)`.
    pub perp_formulas: Flag,
    /// `perp` is a self-adjoint Serre Galois connection.
    pub perp_serre_gc: bool,
    /// `perp ∘ perp = rani ∘ rans`; witness `(f)`.
    pub nucleus_is_cotight_closure: Flag,
    /// The closed elements are exactly the cotight maps.
    pub closed_are_cotight: bool,
    /// `g •_j f = rani(rans(g) ∘ rans(f))`; witness `(g, f)`.
    pub quotient_product: Flag,
    /// `rans` is a bijective, order- and product-preserving map from the
    /// cotight quotient onto the tight quantale.
    pub iso_quantale: bool,
    /// `rans(perp(f)) = star(rans(f))`; witness `(f)`.
    pub iso_negation: Flag,
    /// `rans(y ⊗ x) = c_y ∘ a_x`; witness `(y, x)`.
    pub tensor_transform: Flag,
    /// `(v ⊗ u) • (y ⊗ x)` is bottom if `y ≤ u`, else `v ⊗ x`; witness `(v, u, y, x)`.
    pub tensor_product: Flag,
}

impl BulletReport {
    pub fn holds(&self) -> bool {
        self.perp_formulas.holds
            && self.perp_serre_gc
            && self.nucleus_is_cotight_closure.holds
            && self.closed_are_cotight
            && self.quotient_product.holds
            && self.iso_quantale
            && self.iso_negation.holds
            && self.tensor_transform.holds
            && self.tensor_product.holds
    }
}

/// The quantale of meet-preserving endomaps under `•`, with its perp
/// duality, cotight quotient and tensor laws.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BulletQuantale {
    pub family: MapFamily,
    pub quantale: Quantale,
    /// `perp` on family indices.
    pub perp: EndoMap,
    pub quotient: SerreQuotient,
    pub tight: TightQuantale,
    pub report: BulletReport,
}

/// `g • f = meet_closure(rans(g) ∘ f)` on meet-preserving endomaps.
pub fn bullet(l: &FiniteLattice, g: &EndoMap, f: &EndoMap) -> EndoMap {
    meet_closure(l, &rans(l, g).compose(f)).expect("rans(g) ∘ f is monotone for monotone f")
}

pub fn bullet_quantale(l: &FiniteLattice, budget: &Budget) -> Result<BulletQuantale> {
    let family = MapFamily::new(l.clone(), enumerate_meet_endomaps(l, budget)?)?;
    let quantale = family.quantale_with(|g, f| bullet(l, g, f))?;
    let perp_map = family.endomap_with(|f| perp(l, f))?;
    let m = family.len();
    let scan1 = |ok: &dyn Fn(usize) -> bool| flag_scan(&mut (0..m).map(|i| vec![i]), |w| ok(w[0]));

    let perp_formulas = scan1(&|i| {
        let f = family.get(i);
        f.left_adjoint(l).map(|lf| rani(l, &lf)) == perp(l, f)
    });
    let gc = check_frobenius(&quantale, &perp_map, &perp_map)?;
    let nucleus_is_cotight_closure = scan1(&|i| {
        *family.get(perp_map[perp_map[i]]) == cotight_closure(l, family.get(i))
    });
    let quotient = serre_gc_quotient(&quantale, &perp_map, &perp_map)?;
    let cotight: Vec<usize> = (0..m).filter(|&i| is_cotight(l, family.get(i))).collect();
    let closed_are_cotight = quotient.quotient.closed() == cotight.as_slice();

    let closed = quotient.quotient.closed().to_vec();
    let qj = quotient.frobenius.quantale();
    let k = closed.len();
    let quotient_product = flag_scan(&mut pairs(k), |w| {
        let (g, f) = (family.get(closed[w[0]]), family.get(closed[w[1]]));
        let expected = rani(l, &rans(l, g).compose(&rans(l, f)));
        *family.get(closed[qj.mul(w[0], w[1])]) == expected
    });

    let tight = TightQuantale::new(l, budget)?;
    let to_tight: Option<Vec<usize>> = closed
        .iter()
        .map(|&i| tight.position(&rans(l, family.get(i))))
        .collect();
    let iso_quantale = to_tight
        .as_ref()
        .is_some_and(|map| is_isomorphism(qj, tight.quantale(), map));
    let iso_negation = match &to_tight {
        Some(map) => flag_scan(&mut (0..k).map(|i| vec![i]), |w| {
            map[quotient.frobenius.lneg()[w[0]]] == tight.frobenius().lneg()[map[w[0]]]
        }),
        None => Flag::default(),
    };

    let n = l.size();
    let tensor_transform = flag_scan(&mut pairs(n), |w| {
        rans(l, &elementary_tensor(l, w[0], w[1])) == c_map(l, w[0]).compose(&a_map(l, w[1]))
    });
    let bottom = elementary_tensor(l, l.bot(), l.bot());
    let quads = (0..n * n * n * n).map(|c| vec![c / (n * n * n), c / (n * n) % n, c / n % n, c % n]);
    let tensor_product = flag_scan(&mut quads.into_iter(), |w| {
        let (v, u, y, x) = (w[0], w[1], w[2], w[3]);
        let lhs = bullet(l, &elementary_tensor(l, v, u), &elementary_tensor(l, y, x));
        let rhs = if l.leq(y, u) {
            bottom.clone()
        } else {
            elementary_tensor(l, v, x)
        };
        lhs == rhs
    });

    let report = BulletReport {
        meet_maps: m,
        cotight_maps: cotight.len(),
        perp_formulas,
        perp_serre_gc: gc.is_serre_gc(),
        nucleus_is_cotight_closure,
        closed_are_cotight,
        quotient_product,
        iso_quantale,
        iso_negation,
        tensor_transform,
        tensor_product,
    };
    Ok(BulletQuantale {
        family,
        quantale,
        perp: perp_map,
        quotient,
        tight,
        report,
    })
}

fn pairs(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n * n).map(move |c| vec![c / n, c % n])
}

fn flag_scan(cases: &mut dyn Iterator<Item = Vec<usize>>, mut ok: impl FnMut(&[usize]) -> bool) -> Flag {
    for w in cases {
        if !ok(&w) {
            return Flag::fail(w);
        }
    }
    Flag::ok()
}
