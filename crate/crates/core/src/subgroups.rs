//! Subgroups as explicit element sets, and the subgroup-level queries the
//! genetic-basis and relation computations need: closure, normalizers,
//! centralizers, conjugacy classes of cyclic subgroups, quotients, index-p
//! subgroups, double cosets and cyclic section data.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupId};

/// A subgroup, stored as its sorted element list plus a membership bitset.
///
/// Two subgroups are equal iff they have the same elements. The total order
/// is the canonical order used for every deterministic choice in the crate:
/// larger subgroups first, then lexicographic on sorted element lists.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: GroupId,
    elements: Vec<Elem>,
    bits: FixedBitSet,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .elements
            .len()
            .cmp(&self.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub(crate) fn trivial_of(group: GroupId, order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert(0);
        Subgroup {
            group,
            elements: vec![Elem::IDENTITY],
            bits,
            generators: Vec::new(),
        }
    }

    /// Subgroup from an element set already known to be closed.
    fn from_closed(g: &FiniteGroup, bits: FixedBitSet) -> Self {
        let elements: Vec<Elem> = bits.ones().map(|i| Elem(i as u32)).collect();
        let generators = canonical_generators(g, &elements);
        Subgroup {
            group: g.id(),
            elements,
            bits,
            generators,
        }
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    /// Deterministic generating set: greedy over the elements in enumeration
    /// order, keeping each element not already generated by the earlier ones.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.bits.contains(e.index())
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().any(|&e| g.order_of(e) == self.order() as u64)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subgroup::from_closed(g, bits)
    }

    /// `|self ∩ other| == 1`, without building the intersection.
    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.bits.intersection(&other.bits).count() == 1
    }
}

fn closure_bits(g: &FiniteGroup, seed: &FixedBitSet, gens: &[Elem]) -> FixedBitSet {
    let mut bits = seed.clone();
    bits.insert(0);
    let mut queue: Vec<Elem> = bits.ones().map(|i| Elem(i as u32)).collect();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y.index()) {
                queue.push(y);
            }
        }
    }
    bits
}

fn canonical_generators(g: &FiniteGroup, elements: &[Elem]) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert(0);
    for &e in elements {
        if !bits.contains(e.index()) {
            gens.push(e);
            bits = closure_bits(g, &bits, &gens);
            if bits.count_ones(..) == elements.len() {
                break;
            }
        }
    }
    gens
}

/// Smallest subgroup containing `gens`.
pub fn closure(g: &FiniteGroup, gens: &[Elem]) -> Subgroup {
    let empty = FixedBitSet::with_capacity(g.order());
    Subgroup::from_closed(g, closure_bits(g, &empty, gens))
}

/// Smallest subgroup containing `s` and `extra`.
pub fn join(g: &FiniteGroup, s: &Subgroup, extra: &[Elem]) -> Subgroup {
    let mut gens = s.generators.clone();
    gens.extend_from_slice(extra);
    Subgroup::from_closed(g, closure_bits(g, &s.bits, &gens))
}

/// Subgroup generated by two subgroups.
pub fn join_subgroups(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Subgroup {
    join(g, a, &b.generators)
}

pub fn whole(g: &FiniteGroup) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert_range(..);
    Subgroup::from_closed(g, bits)
}

pub fn trivial(g: &FiniteGroup) -> Subgroup {
    Subgroup::trivial_of(g.id(), g.order())
}

/// Subgroup from an arbitrary element list, checking closure.
pub fn from_elements(g: &FiniteGroup, elements: &[Elem]) -> Result<Subgroup> {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for e in elements {
        bits.insert(e.index());
    }
    let closed = closure_bits(g, &bits, elements);
    if closed != bits {
        return Err(Error::Contract("element set is not a subgroup".into()));
    }
    Ok(Subgroup::from_closed(g, bits))
}

pub(crate) fn compute_center(g: &FiniteGroup) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)) {
            bits.insert(x.index());
        }
    }
    Subgroup::from_closed(g, bits)
}

/// Normal closure of `seed` inside the subgroup generated by `ambient_gens`.
pub fn normal_closure(g: &FiniteGroup, ambient_gens: &[Elem], seed: &[Elem]) -> Subgroup {
    let mut k = closure(g, seed);
    loop {
        let outside = ambient_gens.iter().find_map(|&t| {
            k.generators
                .iter()
                .map(|&x| g.conj(x, t))
                .find(|&y| !k.contains(y))
        });
        match outside {
            Some(y) => k = join(g, &k, &[y]),
            None => return k,
        }
    }
}

fn commutator_seed(g: &FiniteGroup, gens: &[Elem]) -> Vec<Elem> {
    let mut seed = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.comm(a, b);
            if c != Elem::IDENTITY {
                seed.push(c);
            }
        }
    }
    seed
}

pub(crate) fn compute_derived(g: &FiniteGroup) -> Subgroup {
    normal_closure(g, g.generators(), &commutator_seed(g, g.generators()))
}

pub(crate) fn compute_frattini(g: &FiniteGroup, derived: &Subgroup) -> Subgroup {
    let p = g.prime() as i64;
    let powers: Vec<Elem> = g.elements().map(|x| g.pow(x, p)).collect();
    join(g, derived, &powers)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    g.center().clone()
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    g.derived_subgroup().clone()
}

pub fn frattini(g: &FiniteGroup) -> Subgroup {
    g.frattini().clone()
}

/// Frattini subgroup `S' S^p` of a subgroup.
pub fn frattini_of(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let derived = normal_closure(g, s.generators(), &commutator_seed(g, s.generators()));
    let p = g.prime() as i64;
    let powers: Vec<Elem> = s.elements().iter().map(|&x| g.pow(x, p)).collect();
    join(g, &derived, &powers)
}

/// Lifts of a basis of `s / frattini_of(s) · base` where `base ≤ s` is normal
/// in `s`: a minimal generating set of `s / base` for p-groups.
pub fn minimal_generators_mod(g: &FiniteGroup, s: &Subgroup, base: &Subgroup) -> Vec<Elem> {
    let phi = frattini_of(g, s);
    let mut current = join_subgroups(g, &phi, base);
    let mut out = Vec::new();
    for &x in s.elements() {
        if current.order() == s.order() {
            break;
        }
        if !current.contains(x) {
            out.push(x);
            current = join(g, &current, &[x]);
        }
    }
    out
}

pub fn normalizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    assert_eq!(g.id(), s.group, "subgroup of another group");
    let mut bits = FixedBitSet::with_capacity(g.order());
    for x in g.elements() {
        if s.generators.iter().all(|&y| s.contains(g.conj(y, x))) {
            bits.insert(x.index());
        }
    }
    Subgroup::from_closed(g, bits)
}

pub fn centralizer(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    centralizer_of_elements(g, &s.generators)
}

pub fn centralizer_of_elements(g: &FiniteGroup, xs: &[Elem]) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for t in g.elements() {
        if xs.iter().all(|&x| g.mul(t, x) == g.mul(x, t)) {
            bits.insert(t.index());
        }
    }
    Subgroup::from_closed(g, bits)
}

pub fn is_normal(g: &FiniteGroup, s: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&t| s.generators.iter().all(|&y| s.contains(g.conj(y, t))))
}

/// `^t S = t S t^{-1}`.
pub fn conjugate_subgroup(g: &FiniteGroup, s: &Subgroup, t: Elem) -> Subgroup {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for &x in s.elements() {
        bits.insert(g.conj(x, t).index());
    }
    Subgroup::from_closed(g, bits)
}

/// Membership bits of `^t S` without building a [`Subgroup`].
pub fn conjugate_bits(g: &FiniteGroup, s: &Subgroup, t: Elem) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    for &x in s.elements() {
        bits.insert(g.conj(x, t).index());
    }
    bits
}

/// Intersection of all conjugates of `s`.
pub fn core(g: &FiniteGroup, s: &Subgroup) -> Subgroup {
    let mut bits = s.bits.clone();
    for t in g.elements() {
        bits.intersect_with(&conjugate_bits(g, s, t));
    }
    Subgroup::from_closed(g, bits)
}

/// A quotient group together with the projection from its parent.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[x]` is the coset of `x`.
    pub projection: Vec<Elem>,
    /// Least element of each coset.
    pub representatives: Vec<Elem>,
    parent: GroupId,
}

impl Quotient {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x.index()]
    }

    pub fn image(&self, s: &Subgroup) -> Subgroup {
        assert_eq!(s.group, self.parent, "subgroup of another group");
        let mut bits = FixedBitSet::with_capacity(self.group.order());
        for &x in s.elements() {
            bits.insert(self.project(x).index());
        }
        Subgroup::from_closed(&self.group, bits)
    }

    pub fn preimage(&self, parent: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for x in parent.elements() {
            if s.contains(self.project(x)) {
                bits.insert(x.index());
            }
        }
        Subgroup::from_closed(parent, bits)
    }
}

/// `G/N` as a table-backed group. Cosets are numbered by their least element,
/// so the identity coset is 0.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if n.group != g.id() {
        return Err(Error::GroupMismatch);
    }
    if !is_normal(g, n) {
        return Err(Error::Contract("quotient by a non-normal subgroup".into()));
    }
    let mut projection = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if projection[x.index()] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &y in n.elements() {
            projection[g.mul(x, y).index()] = c;
        }
    }
    let m = reps.len();
    let mut table = vec![0u32; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * m + j] = projection[g.mul(a, b).index()];
        }
    }
    let mut gens: Vec<Elem> = g
        .generators()
        .iter()
        .map(|&x| Elem(projection[x.index()]))
        .filter(|&e| e != Elem::IDENTITY)
        .collect();
    gens.dedup();
    let group = FiniteGroup::from_table(g.prime(), table, gens)?;
    Ok(Quotient {
        group,
        projection: projection.into_iter().map(Elem).collect(),
        representatives: reps,
        parent: g.id(),
    })
}

/// One conjugacy class of cyclic subgroups.
#[derive(Debug, Clone)]
pub struct CyclicClass {
    pub representative: Subgroup,
    /// Least element generating the representative.
    pub generator: Elem,
    pub centralizer: Subgroup,
    pub size: usize,
}

/// All cyclic subgroups of `g`, each with its least generator, in canonical
/// order of the subgroups.
pub fn cyclic_subgroups(g: &FiniteGroup) -> (Vec<(Subgroup, Elem)>, Vec<usize>) {
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut list: Vec<(Vec<Elem>, Elem)> = Vec::new();
    let mut of_element = vec![0usize; g.order()];
    for x in g.elements() {
        let mut els = Vec::with_capacity(g.order_of(x) as usize);
        let mut y = Elem::IDENTITY;
        loop {
            els.push(y);
            y = g.mul(y, x);
            if y == Elem::IDENTITY {
                break;
            }
        }
        els.sort_unstable();
        let id = *index.entry(els.clone()).or_insert_with(|| {
            list.push((els, x));
            list.len() - 1
        });
        of_element[x.index()] = id;
    }
    let subgroups: Vec<(Subgroup, Elem)> = list
        .into_iter()
        .map(|(els, gen)| {
            let mut bits = FixedBitSet::with_capacity(g.order());
            els.iter().for_each(|e| bits.insert(e.index()));
            (
                Subgroup {
                    group: g.id(),
                    elements: els,
                    bits,
                    generators: if gen == Elem::IDENTITY { vec![] } else { vec![gen] },
                },
                gen,
            )
        })
        .collect();
    (subgroups, of_element)
}

/// Representatives of the conjugacy classes of cyclic subgroups, each the
/// canonical least member of its class, ordered by increasing order.
pub fn cyclic_subgroup_classes(g: &FiniteGroup) -> Vec<CyclicClass> {
    let (subgroups, of_element) = cyclic_subgroups(g);
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (id, (_, gen)) in subgroups.iter().enumerate() {
        if class_of[id] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = Vec::new();
        for t in g.elements() {
            let other = of_element[g.conj(*gen, t).index()];
            if class_of[other] == usize::MAX {
                class_of[other] = c;
                members.push(other);
            }
        }
        classes.push(members);
    }
    let mut out: Vec<CyclicClass> = classes
        .into_iter()
        .map(|members| {
            let rep = *members
                .iter()
                .min_by(|&&a, &&b| subgroups[a].0.cmp(&subgroups[b].0))
                .expect("class is nonempty");
            let (s, gen) = subgroups[rep].clone();
            CyclicClass {
                centralizer: centralizer_of_elements(g, &[gen]),
                representative: s,
                generator: gen,
                size: members.len(),
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.representative
            .order()
            .cmp(&b.representative.order())
            .then_with(|| a.representative.elements.cmp(&b.representative.elements))
    });
    out
}

/// Coordinates of `G/Φ(G)` as an F_p-vector space.
#[derive(Debug, Clone)]
pub struct FrattiniCoordinates {
    /// Lifts of the chosen basis of `G/Φ(G)`.
    pub basis: Vec<Elem>,
    coords: Vec<Vec<u32>>,
    p: u32,
}

impl FrattiniCoordinates {
    pub fn new(g: &FiniteGroup) -> Self {
        let phi = g.frattini();
        let all = whole(g);
        let basis = minimal_generators_mod(g, &all, phi);
        let d = basis.len();
        let p = g.prime();
        let mut coords = vec![Vec::new(); g.order()];
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut c = vec![0u32; d];
            let mut rest = idx;
            for slot in c.iter_mut().rev() {
                *slot = (rest % p as usize) as u32;
                rest /= p as usize;
            }
            let mut t = Elem::IDENTITY;
            for (i, &b) in basis.iter().enumerate() {
                t = g.mul(t, g.pow(b, c[i] as i64));
            }
            for &f in phi.elements() {
                coords[g.mul(t, f).index()] = c.clone();
            }
        }
        FrattiniCoordinates { basis, coords, p }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self, x: Elem) -> &[u32] {
        &self.coords[x.index()]
    }

    /// `ψ(x)` for a functional given by its coefficient vector.
    pub fn evaluate(&self, psi: &[u32], x: Elem) -> u32 {
        let p = self.p as u64;
        (self.coords(x)
            .iter()
            .zip(psi)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum::<u64>()
            % p) as u32
    }
}

/// Nonzero functionals on `F_p^d` normalized so that the first nonzero
/// coordinate is 1, in lexicographic order.
pub fn normalized_functionals(p: u32, d: usize) -> Vec<Vec<u32>> {
    let count = (p as usize).pow(d as u32);
    let mut out = Vec::new();
    for idx in 1..count {
        let mut c = vec![0u32; d];
        let mut rest = idx;
        for slot in c.iter_mut().rev() {
            *slot = (rest % p as usize) as u32;
            rest /= p as usize;
        }
        if c.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(c);
        }
    }
    out
}

/// Every subgroup of index p, as kernels of the functionals on `G/Φ(G)`,
/// in canonical order.
pub fn index_p_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let fc = FrattiniCoordinates::new(g);
    let mut out: Vec<Subgroup> = normalized_functionals(g.prime(), fc.rank())
        .iter()
        .map(|psi| {
            let mut bits = FixedBitSet::with_capacity(g.order());
            for x in g.elements() {
                if fc.evaluate(psi, x) == 0 {
                    bits.insert(x.index());
                }
            }
            Subgroup::from_closed(g, bits)
        })
        .collect();
    out.sort();
    out
}

/// Every subgroup of `g`, in canonical order. Refuses groups above `bound`.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::SizeExceeded {
            order: g.order(),
            bound,
            hint: "; use the (almost) extra-special or elementary abelian fast path",
        });
    }
    // Each subgroup of a p-group is reached from a subgroup of index p in it
    // by adjoining an element of the normalizer whose p-th power lies inside.
    let p = g.prime() as i64;
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let start = trivial(g);
    seen.insert(start.bits.clone());
    let mut layer = vec![start];
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for s in &layer {
            let norm = normalizer(g, s);
            for &x in norm.elements() {
                if s.contains(x) || !s.contains(g.pow(x, p)) {
                    continue;
                }
                let t = join(g, s, &[x]);
                if seen.insert(t.bits.clone()) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    Ok(out)
}

/// Which element of each double coset is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RepresentativePolicy {
    #[default]
    Smallest,
    Largest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    pub representatives: Vec<Elem>,
    pub sizes: Vec<usize>,
}

/// Representatives of the double cosets `A x B`, smallest (or largest) element
/// of each in enumeration order.
pub fn double_coset_reps(
    g: &FiniteGroup,
    a: &Subgroup,
    b: &Subgroup,
    policy: RepresentativePolicy,
) -> DoubleCosetDecomposition {
    if a.order() == g.order() || b.order() == g.order() {
        let rep = match policy {
            RepresentativePolicy::Smallest => Elem::IDENTITY,
            RepresentativePolicy::Largest => Elem(g.order() as u32 - 1),
        };
        return DoubleCosetDecomposition {
            representatives: vec![rep],
            sizes: vec![g.order()],
        };
    }
    let mut visited = FixedBitSet::with_capacity(g.order());
    let mut representatives = Vec::new();
    let mut sizes = Vec::new();
    let order: Box<dyn Iterator<Item = Elem>> = match policy {
        RepresentativePolicy::Smallest => Box::new(g.elements()),
        RepresentativePolicy::Largest => Box::new(g.elements().rev()),
    };
    let mut queue = Vec::new();
    for x in order {
        if visited.put(x.index()) {
            continue;
        }
        representatives.push(x);
        queue.clear();
        queue.push(x);
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &s in a.generators() {
                let z = g.mul(s, y);
                if !visited.put(z.index()) {
                    queue.push(z);
                }
            }
            for &s in b.generators() {
                let z = g.mul(y, s);
                if !visited.put(z.index()) {
                    queue.push(z);
                }
            }
        }
        sizes.push(queue.len());
    }
    DoubleCosetDecomposition { representatives, sizes }
}

/// A cyclic section `N/S` with a chosen generating coset and its discrete logs.
#[derive(Debug, Clone)]
pub struct CyclicQuotientData {
    /// `|N/S| = p^r`.
    pub r: u32,
    pub modulus: u64,
    /// Least element of `N` whose coset generates `N/S`.
    pub generator: Elem,
    dlog: Vec<u32>,
}

impl CyclicQuotientData {
    /// Exponent `k` with `x S = generator^k S`, or `None` when `x ∉ N`.
    pub fn dlog(&self, x: Elem) -> Option<u32> {
        let v = self.dlog[x.index()];
        (v != u32::MAX).then_some(v)
    }

    /// Data for the same section with generator coset `generator` instead,
    /// e.g. the image of another section's generator.
    pub fn with_generator(g: &FiniteGroup, n: &Subgroup, s: &Subgroup, generator: Elem) -> Option<Self> {
        let m = n.order() / s.order();
        let mut dlog = vec![u32::MAX; g.order()];
        let mut t = Elem::IDENTITY;
        for k in 0..m as u32 {
            for &y in s.elements() {
                let z = g.mul(t, y);
                if dlog[z.index()] != u32::MAX {
                    return None;
                }
                dlog[z.index()] = k;
            }
            t = g.mul(t, generator);
        }
        if !s.contains(t) {
            return None;
        }
        let mut r = 0;
        while (g.prime() as usize).pow(r) < m {
            r += 1;
        }
        Some(CyclicQuotientData {
            r,
            modulus: m as u64,
            generator,
            dlog,
        })
    }
}

/// The cyclic section `N/S` (with `S` normal in `N`), or `None` when `N/S` is
/// not cyclic.
pub fn cyclic_quotient(g: &FiniteGroup, n: &Subgroup, s: &Subgroup) -> Option<CyclicQuotientData> {
    debug_assert!(s.is_subgroup_of(n));
    let m = n.order() / s.order();
    let generator = n.elements().iter().copied().find(|&t| {
        let mut x = t;
        let mut k = 1;
        while !s.contains(x) {
            x = g.mul(x, t);
            k += 1;
        }
        k == m
    })?;
    CyclicQuotientData::with_generator(g, n, s, generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn closure_basics() {
        let m = make_m(3).unwrap();
        assert!(closure(&m, &[]).is_trivial());
        let [x, y, z] = [0, 1, 2].map(|i| m.generators()[i]);
        assert_eq!(closure(&m, &[x, y]).order(), 27);
        assert_eq!(closure(&m, &[z]), *m.center());
    }

    #[test]
    fn characteristic_subgroups() {
        let ea = elementary_abelian(3, 2).unwrap();
        assert_eq!(center(&ea).order(), 9);
        let es = extra_special(3, 2, false).unwrap();
        assert_eq!(es.derived_subgroup().order(), 3);
        assert_eq!(es.derived_subgroup(), es.frattini());
        assert_eq!(es.frattini(), es.center());
        let aes = almost_extra_special(3, 1).unwrap();
        let z = center(&aes);
        assert_eq!(z.order(), 9);
        assert!(z.elements().iter().any(|&e| aes.order_of(e) == 9));
    }

    #[test]
    fn normalizers_in_m3() {
        let m = make_m(3).unwrap();
        assert_eq!(normalizer(&m, &whole(&m)).order(), 27);
        let x = m.generators()[0];
        let q = closure(&m, &[x]);
        assert!(!is_normal(&m, &q));
        let nq = normalizer(&m, &q);
        assert_eq!(nq.order(), 9);
        assert_eq!(nq, centralizer(&m, &q));
        let aes = almost_extra_special(3, 1).unwrap();
        assert_eq!(centralizer(&aes, aes.center()).order(), 81);
    }

    #[test]
    fn quotients() {
        let m = make_m(3).unwrap();
        let q = quotient_group(&m, &trivial(&m)).unwrap();
        assert_eq!(q.group.order(), 27);
        let q = quotient_group(&m, m.center()).unwrap();
        assert_eq!(q.group.order(), 9);
        assert!(q.group.is_abelian() && q.group.exponent() == 3);
        let aes = almost_extra_special(3, 1).unwrap();
        let q = quotient_group(&aes, aes.frattini()).unwrap();
        assert_eq!(q.group.order(), 27);
        assert!(q.group.is_abelian() && q.group.exponent() == 3);
        // Projection is a homomorphism with kernel N.
        for a in aes.elements() {
            for b in aes.elements() {
                assert_eq!(
                    q.project(aes.mul(a, b)),
                    q.group.mul(q.project(a), q.project(b))
                );
            }
            assert_eq!(q.project(a) == Elem::IDENTITY, aes.frattini().contains(a));
        }
        let x = closure(&m, &[m.generators()[0]]);
        assert!(quotient_group(&m, &x).is_err());
    }

    #[test]
    fn cyclic_classes() {
        let ea = elementary_abelian(3, 2).unwrap();
        assert_eq!(cyclic_subgroup_classes(&ea).len(), 5);
        let c9 = cyclic(3, 2).unwrap();
        let cls = cyclic_subgroup_classes(&c9);
        assert_eq!(cls.iter().map(|c| c.representative.order()).collect::<Vec<_>>(), vec![1, 3, 9]);
    }

    #[test]
    fn index_p_counts() {
        assert_eq!(index_p_subgroups(&elementary_abelian(3, 2).unwrap()).len(), 4);
        assert_eq!(index_p_subgroups(&cyclic(3, 2).unwrap()).len(), 1);
        let es = extra_special(3, 2, false).unwrap();
        let hs = index_p_subgroups(&es);
        assert_eq!(hs.len(), 40);
        assert!(hs.iter().all(|h| h.order() == 81 && es.frattini().is_subgroup_of(h)));
    }

    #[test]
    fn subgroup_lists() {
        assert_eq!(all_subgroups(&elementary_abelian(3, 2).unwrap(), 81).unwrap().len(), 6);
        assert_eq!(all_subgroups(&cyclic(3, 2).unwrap(), 81).unwrap().len(), 3);
        let es = extra_special(3, 2, false).unwrap();
        assert!(matches!(all_subgroups(&es, 81), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn double_cosets_simple() {
        let m = make_m(3).unwrap();
        let all = whole(&m);
        let d = double_coset_reps(&m, &all, &all, RepresentativePolicy::Smallest);
        assert_eq!(d.representatives, vec![Elem::IDENTITY]);
        let ea = elementary_abelian(3, 3).unwrap();
        let a = closure(&ea, &[ea.generators()[0]]);
        let b = closure(&ea, &[ea.generators()[1]]);
        let d = double_coset_reps(&ea, &a, &b, RepresentativePolicy::Smallest);
        assert_eq!(d.representatives.len(), 27 / 9);
        assert!(d.sizes.iter().all(|&s| s == 9));
    }

    #[test]
    fn cyclic_sections() {
        let c9 = cyclic(3, 2).unwrap();
        let all = whole(&c9);
        let q = cyclic_quotient(&c9, &all, &all).unwrap();
        assert_eq!((q.r, q.modulus), (0, 1));
        let q = cyclic_quotient(&c9, &all, &trivial(&c9)).unwrap();
        assert_eq!((q.r, q.modulus), (2, 9));
        for k in 0..9 {
            assert_eq!(q.dlog(c9.pow(q.generator, k)), Some(k as u32));
        }
        let ea = elementary_abelian(3, 2).unwrap();
        assert!(cyclic_quotient(&ea, &whole(&ea), &trivial(&ea)).is_none());
    }
}
