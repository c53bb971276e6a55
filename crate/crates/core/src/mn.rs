//! Tight endomaps of the diamond lattices `M_n`.
//!
//! `M_n` is laid out as `⊥ = 0`, atoms `1..=n`, `⊤ = n + 1`.

use alloc::{collections::BTreeMap, vec, vec::Vec};

use crate::{
    lattice::{enumerate_sup_endomaps, order_automorphisms, EndoMap, Elem, FiniteLattice},
    quantale::{Flag, UnitReport},
    raney::{a_map, c_map, is_tight, star, tight_interior, MapFamily, TightQuantale},
    Budget, Error, Result,
};

fn check_atoms(n: usize, budget: &Budget) -> Result<()> {
    if n > budget.max_atoms as usize {
        return Err(Error::TooManyAtoms {
            n,
            max: budget.max_atoms,
        });
    }
    Ok(())
}

fn is_atom(n: usize, x: Elem) -> bool {
    (1..=n).contains(&x)
}

/// Sup-preserving endomaps of `M_n`, sorted.
///
/// A map is fixed by its atom images, which must have pairwise equal joins.
pub fn enumerate_sup_endomaps_mn(n: usize, budget: &Budget) -> Result<Vec<EndoMap>> {
    check_atoms(n, budget)?;
    let l = FiniteLattice::diamond(n);
    if n < 2 {
        // `⊤` is join-irreducible here.
        return enumerate_sup_endomaps(&l, budget);
    }
    let size = n + 2;
    let estimate = (size as u128).pow(n as u32);
    if estimate > u128::from(budget.max_candidates) {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: budget.max_candidates,
        });
    }
    let mut out = Vec::new();
    let mut atoms = vec![0; n];
    'tuples: for code in 0..estimate as usize {
        let mut c = code;
        for slot in atoms.iter_mut() {
            *slot = c % size;
            c /= size;
        }
        let top = l.join_of(atoms.iter().copied());
        for i in 0..n {
            for j in i + 1..n {
                if l.join(atoms[i], atoms[j]) != top {
                    continue 'tuples;
                }
            }
        }
        let mut image = Vec::with_capacity(size);
        image.push(l.bot());
        image.extend_from_slice(&atoms);
        image.push(top);
        out.push(EndoMap::new(&l, image)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// Three characterisations of tightness for a sup-preserving map on `M_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TightProfile {
    pub tight: bool,
    pub image_distributive: bool,
    pub atoms_in_image: usize,
}

impl TightProfile {
    pub fn consistent(&self) -> bool {
        self.tight == self.image_distributive && self.tight == (self.atoms_in_image <= 2)
    }
}

/// Errors with `CheckFailed` if the three characterisations disagree.
pub fn tight_profile_mn(n: usize, f: &EndoMap) -> Result<TightProfile> {
    let l = FiniteLattice::diamond(n);
    if f.image().len() != l.size() {
        return Err(Error::ShapeMismatch {
            expected: l.size(),
            found: f.image().len(),
        });
    }
    if !f.is_sup_preserving(&l) {
        return Err(Error::NotSupPreserving);
    }
    let range = f.range();
    let profile = TightProfile {
        tight: is_tight(&l, f),
        image_distributive: l.induced(&range)?.is_distributive(),
        atoms_in_image: range.iter().filter(|&&x| is_atom(n, x)).count(),
    };
    if !profile.consistent() {
        return Err(Error::CheckFailed("tightness characterisations agree"));
    }
    Ok(profile)
}

/// `⊥ ↦ ⊥`, `x1 ↦ y1`, `x2 ↦ y2`, every other element `↦ ⊤`.
pub fn f_gen(n: usize, x1: Elem, y1: Elem, x2: Elem, y2: Elem) -> Result<EndoMap> {
    if [x1, y1, x2, y2].iter().any(|&a| !is_atom(n, a)) || x1 == x2 || y1 == y2 {
        return Err(Error::NotDistinctAtoms);
    }
    let l = FiniteLattice::diamond(n);
    let f = EndoMap::from_fn(&l, |t| match t {
        0 => 0,
        t if t == x1 => y1,
        t if t == x2 => y2,
        _ => l.top(),
    });
    let joined = c_map(&l, y2).compose(&a_map(&l, x1)).join(&l, &c_map(&l, y1).compose(&a_map(&l, x2)));
    if joined != f {
        return Err(Error::CheckFailed("generator equals its join decomposition"));
    }
    Ok(f)
}

/// `c_y ∨ a_x`, pointwise.
pub fn c_join_a(l: &FiniteLattice, y: Elem, x: Elem) -> EndoMap {
    c_map(l, y).join(l, &a_map(l, x))
}

/// Generator classes of tight maps on `M_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorClass {
    /// `c_⊥` or `c_⊤`.
    Constant,
    /// `c_j` or `a_j` for an atom `j`.
    Fundamental,
    /// `c_j ∘ a_m` for atoms `j, m`.
    Composite,
    /// `c_j ∨ a_m` for atoms `j, m`.
    Join,
    /// `f_{x1,y1,x2,y2}`.
    Generator,
    Other,
}

/// Counts per [`GeneratorClass`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub constant: u64,
    pub fundamental: u64,
    pub composite: u64,
    pub join: u64,
    pub generator: u64,
    pub other: u64,
}

impl ClassCounts {
    fn add(&mut self, class: GeneratorClass) {
        let slot = match class {
            GeneratorClass::Constant => &mut self.constant,
            GeneratorClass::Fundamental => &mut self.fundamental,
            GeneratorClass::Composite => &mut self.composite,
            GeneratorClass::Join => &mut self.join,
            GeneratorClass::Generator => &mut self.generator,
            GeneratorClass::Other => &mut self.other,
        };
        *slot += 1;
    }

    pub fn total(&self) -> u64 {
        self.constant + self.fundamental + self.composite + self.join + self.generator + self.other
    }
}

/// Every named generator of `M_n` with its class.
pub fn generator_table(n: usize) -> BTreeMap<EndoMap, GeneratorClass> {
    let l = FiniteLattice::diamond(n);
    let mut table = BTreeMap::new();
    let mut put = |f: EndoMap, c: GeneratorClass| {
        table.entry(f).or_insert(c);
    };
    put(c_map(&l, l.bot()), GeneratorClass::Constant);
    put(c_map(&l, l.top()), GeneratorClass::Constant);
    for j in 1..=n {
        put(c_map(&l, j), GeneratorClass::Fundamental);
        put(a_map(&l, j), GeneratorClass::Fundamental);
    }
    for j in 1..=n {
        for m in 1..=n {
            put(c_map(&l, j).compose(&a_map(&l, m)), GeneratorClass::Composite);
            put(c_join_a(&l, j, m), GeneratorClass::Join);
        }
    }
    for (x1, y1, x2, y2) in atom_quads(n) {
        put(f_gen(n, x1, y1, x2, y2).expect("distinct atoms"), GeneratorClass::Generator);
    }
    table
}

fn atom_quads(n: usize) -> impl Iterator<Item = (Elem, Elem, Elem, Elem)> {
    let a = move || 1..=n;
    a().flat_map(move |x1| {
        a().flat_map(move |y1| {
            a().flat_map(move |x2| a().map(move |y2| (x1, y1, x2, y2)))
        })
    })
    .filter(|&(x1, y1, x2, y2)| x1 != x2 && y1 != y2)
}

/// `½n⁴ − n³ + (5/2)n² + 2n + 2`, computed as `(n⁴ − 2n³ + 5n² + 4n + 4) / 2`.
pub fn tight_count_formula(n: u64) -> u64 {
    (n.pow(4) + 5 * n * n + 4 * n + 4 - 2 * n.pow(3)) / 2
}

/// Outcome of [`count_tight_mn`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MnTightReport {
    pub n: usize,
    /// Number of tight maps found by enumeration.
    pub counted: Option<u64>,
    pub formula_value: u64,
    pub by_class: Option<ClassCounts>,
}

impl MnTightReport {
    pub fn matches(&self) -> bool {
        self.counted.is_none_or(|c| c == self.formula_value)
    }
}

pub fn count_tight_mn(n: usize, enumerate: bool, budget: &Budget) -> Result<MnTightReport> {
    let formula_value = tight_count_formula(n as u64);
    if !enumerate {
        return Ok(MnTightReport {
            n,
            counted: None,
            formula_value,
            by_class: None,
        });
    }
    let l = FiniteLattice::diamond(n);
    let table = generator_table(n);
    let mut by_class = ClassCounts::default();
    let mut counted = 0;
    for f in enumerate_sup_endomaps_mn(n, budget)? {
        if is_tight(&l, &f) {
            counted += 1;
            by_class.add(table.get(&f).copied().unwrap_or(GeneratorClass::Other));
        }
    }
    Ok(MnTightReport {
        n,
        counted: Some(counted),
        formula_value,
        by_class: Some(by_class),
    })
}

/// Outcome of [`check_negation_formulas`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegationReport {
    /// `star(c_y ∘ a_x) = c_x ∨ a_y` over all `x, y`; witness `(y, x)`.
    pub composite: Flag,
    /// `star(f_{x1,y1,x2,y2}) = f_{y1,x2,y2,x1}`; witness `(x1, y1, x2, y2)`.
    pub generator: Flag,
}

impl NegationReport {
    pub fn holds(&self) -> bool {
        self.composite.holds && self.generator.holds
    }
}

pub fn check_negation_formulas(n: usize, budget: &Budget) -> Result<NegationReport> {
    check_atoms(n, budget)?;
    let l = FiniteLattice::diamond(n);
    let mut composite = Flag::ok();
    'outer: for y in l.elements() {
        for x in l.elements() {
            if star(&l, &c_map(&l, y).compose(&a_map(&l, x)))? != c_join_a(&l, x, y) {
                composite = Flag::fail(vec![y, x]);
                break 'outer;
            }
        }
    }
    let mut generator = Flag::ok();
    for (x1, y1, x2, y2) in atom_quads(n) {
        if star(&l, &f_gen(n, x1, y1, x2, y2)?)? != f_gen(n, y1, x2, y2, x1)? {
            generator = Flag::fail(vec![x1, y1, x2, y2]);
            break;
        }
    }
    Ok(NegationReport {
        composite,
        generator,
    })
}

/// Outcome of [`pentagon_diamond_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonDiamondReport {
    pub sup_maps: usize,
    pub tight_maps: usize,
    pub isomorphisms: usize,
    /// A sup-preserving map that is tight and an isomorphism, or neither.
    pub witness: Option<EndoMap>,
}

impl PentagonDiamondReport {
    /// Tight maps are exactly the sup-preserving non-isomorphisms.
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn pentagon_diamond_check(l: &FiniteLattice, budget: &Budget) -> Result<PentagonDiamondReport> {
    let sup = enumerate_sup_endomaps(l, budget)?;
    let isos = order_automorphisms(l, budget)?;
    let mut tight_maps = 0;
    let mut witness = None;
    for f in &sup {
        let tight = is_tight(l, f);
        tight_maps += usize::from(tight);
        if witness.is_none() && tight == isos.binary_search(f).is_ok() {
            witness = Some(f.clone());
        }
    }
    Ok(PentagonDiamondReport {
        sup_maps: sup.len(),
        tight_maps,
        isomorphisms: isos.len(),
        witness,
    })
}

/// Outcome of [`positivity_suite_mn`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub n: usize,
    pub elements: usize,
    /// Every `f\f` and `f/f` is positive; witness `(f)`.
    pub residual_squares_positive: Flag,
    /// `f\f ≥ id` pointwise; witness `(f)`.
    pub above_identity: Flag,
    pub bottom_positive: bool,
    pub unit: UnitReport,
}

impl PositivityReport {
    pub fn holds(&self) -> bool {
        self.residual_squares_positive.holds
            && self.above_identity.holds
            && (self.elements == 1 || !self.bottom_positive)
    }
}

pub fn positivity_suite_mn(n: usize, budget: &Budget) -> Result<PositivityReport> {
    check_atoms(n, budget)?;
    let l = FiniteLattice::diamond(n);
    let t = TightQuantale::new(&l, budget)?;
    let q = t.quantale();
    let id = EndoMap::identity(&l);
    let mut residual_squares_positive = Flag::ok();
    let mut above_identity = Flag::ok();
    for f in 0..t.len() {
        let (left, right) = (q.residual_left(f, f), q.residual_right(f, f));
        if residual_squares_positive.holds && !(q.is_positive_element(left) && q.is_positive_element(right)) {
            residual_squares_positive = Flag::fail(vec![f]);
        }
        if above_identity.holds && !id.leq(&l, t.map(left)) {
            above_identity = Flag::fail(vec![f]);
        }
    }
    Ok(PositivityReport {
        n,
        elements: t.len(),
        residual_squares_positive,
        above_identity,
        bottom_positive: q.is_positive_element(q.lattice().bot()),
        unit: q.find_unit(),
    })
}

/// Outcome of [`closures_vs_sublattices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub n: usize,
    /// Idempotent positive sup-preserving closure operators.
    pub closures: usize,
    /// Sublattices containing `⊥` and `⊤`.
    pub sublattices: usize,
    /// Fixed-point sets give a bijection onto the sublattices.
    pub bijection: bool,
    /// A closure operator is tight iff its fixed points form a distributive
    /// lattice; witness is the first offending closure as its image table.
    pub tight_iff_distributive: Flag,
    /// Two tight closures whose fixed points cover every atom, for `n` in
    /// `3..=4`; no such pair exists for larger `n`.
    pub pair: Option<(EndoMap, EndoMap)>,
    /// Their meet among sup-preserving maps.
    pub meet_sup: Option<EndoMap>,
    /// Their meet among tight maps.
    pub meet_tight: Option<EndoMap>,
}

impl ClosureReport {
    /// The pair meets to `id` among sup-preserving maps and to `⊥` among
    /// tight maps, the tight interior of `id`.
    pub fn meet_collapses(&self) -> bool {
        let l = FiniteLattice::diamond(self.n);
        match (&self.meet_sup, &self.meet_tight) {
            (Some(s), Some(t)) => {
                *s == EndoMap::identity(&l)
                    && *t == EndoMap::constant(&l, l.bot())
                    && *t == tight_interior(&l, s)
            }
            _ => false,
        }
    }

    pub fn holds(&self) -> bool {
        self.bijection && self.tight_iff_distributive.holds && (self.pair.is_none() || self.meet_collapses())
    }
}

fn closure_fixing(l: &FiniteLattice, fixed: &[Elem]) -> EndoMap {
    EndoMap::from_fn(l, |t| l.meet_of(fixed.iter().copied().filter(|&s| l.leq(t, s))))
}

pub fn closures_vs_sublattices(n: usize, budget: &Budget) -> Result<ClosureReport> {
    check_atoms(n, budget)?;
    let l = FiniteLattice::diamond(n);
    let family = MapFamily::new(l.clone(), enumerate_sup_endomaps_mn(n, budget)?)?;
    let q = family.quantale_with(|f, g| f.compose(g))?;

    let closures: Vec<usize> = (0..family.len())
        .filter(|&p| q.mul(p, p) == p && q.is_positive_element(p) && family.get(p).is_closure_operator(&l))
        .collect();

    let mut sublattices = Vec::new();
    for mask in 0u64..1 << n {
        let mut s = vec![l.bot()];
        s.extend((1..=n).filter(|a| mask >> (a - 1) & 1 == 1));
        s.push(l.top());
        let closed = s.iter().all(|&x| s.iter().all(|&y| s.contains(&l.join(x, y)) && s.contains(&l.meet(x, y))));
        if closed {
            sublattices.push(s);
        }
    }
    sublattices.sort();

    let mut fixed_sets: Vec<Vec<Elem>> = closures.iter().map(|&p| family.get(p).range()).collect();
    let mut tight_iff_distributive = Flag::ok();
    for (&p, fixed) in closures.iter().zip(&fixed_sets) {
        let f = family.get(p);
        if is_tight(&l, f) != l.induced(fixed)?.is_distributive() {
            tight_iff_distributive = Flag::fail(f.image().to_vec());
            break;
        }
    }
    fixed_sets.sort();
    let distinct = fixed_sets.windows(2).all(|w| w[0] != w[1]);
    let bijection = distinct && fixed_sets == sublattices;

    let (mut pair, mut meet_sup, mut meet_tight) = (None, None, None);
    if (3..=4).contains(&n) {
        let j1 = closure_fixing(&l, &[0, 1, 2, l.top()]);
        let j2 = closure_fixing(&l, &[0, n - 1, n, l.top()]);
        let locate = |fam: &MapFamily, f: &EndoMap| fam.position(f).ok_or(Error::CheckFailed("closure is in the family"));
        let (i1, i2) = (locate(&family, &j1)?, locate(&family, &j2)?);
        meet_sup = Some(family.get(family.lattice().meet(i1, i2)).clone());
        let t = TightQuantale::new(&l, budget)?;
        let (k1, k2) = (locate(t.family(), &j1)?, locate(t.family(), &j2)?);
        meet_tight = Some(t.map(t.family().lattice().meet(k1, k2)).clone());
        pair = Some((j1, j2));
    }

    Ok(ClosureReport {
        n,
        closures: closures.len(),
        sublattices: sublattices.len(),
        bijection,
        tight_iff_distributive,
        pair,
        meet_sup,
        meet_tight,
    })
}
