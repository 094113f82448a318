//! Finite p-groups with exact element arithmetic.
//!
//! Every group is backed by a full multiplication table over element indices
//! `0..|G|`, with index 0 the identity. Groups built from a polycyclic
//! presentation keep the presentation and enumerate their elements in
//! lexicographic order of exponent vectors; quotient groups are table-only.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pc::{Letter, PcPresentation};
use crate::subgroups::{self, Subgroup};

/// Largest group order accepted unless the caller raises the bound.
pub const DEFAULT_MAX_ORDER: usize = 729;

/// Seed for every sampled check unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED_C11;

/// Triples checked exhaustively for associativity up to this order.
const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 81;
const SAMPLED_TRIPLES: usize = 20_000;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Identifies one constructed group; elements of different groups never mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        GroupId(NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Index of an element in its group's enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element tagged with its group, for the checked arithmetic API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupId,
    elem: Elem,
}

impl GroupElement {
    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn group(&self) -> GroupId {
        self.group
    }
}

#[derive(Debug, Clone)]
pub enum Backend {
    Polycyclic(PcPresentation),
    Table,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    id: GroupId,
    p: u32,
    log_order: u32,
    backend: Backend,
    table: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    generators: Vec<Elem>,
    exponent: u64,
    center: Subgroup,
    derived: Subgroup,
    frattini: Subgroup,
}

/// Result of [`FiniteGroup::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub order: usize,
    pub enumerated: usize,
    pub center_order: usize,
    pub triples_checked: usize,
    pub failures: Vec<String>,
    /// Lowest generator index named by a failing presentation relation.
    pub failing_generator: Option<usize>,
}

impl Diagnostics {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn log_p(p: u32, order: usize) -> Option<u32> {
    let mut n = 0;
    let mut m = 1usize;
    while m < order {
        m = m.checked_mul(p as usize)?;
        n += 1;
    }
    (m == order).then_some(n)
}

impl FiniteGroup {
    pub fn from_presentation(pc: PcPresentation) -> Result<Self> {
        Self::from_presentation_bounded(pc, DEFAULT_MAX_ORDER)
    }

    /// Builds the group of a presentation, rejecting inconsistent ones with
    /// the first failing generator named in the error.
    pub fn from_presentation_bounded(pc: PcPresentation, max_order: usize) -> Result<Self> {
        if let Some((g, msg)) = pc.consistency_failures().into_iter().next() {
            return Err(Error::Inconsistent(format!("generator {g}: {msg}")));
        }
        Self::build_from_presentation(pc, max_order, true)
    }

    /// Tabulates a presentation without the consistency check, so that
    /// [`FiniteGroup::validate`] can report what is wrong with it.
    pub fn from_presentation_unchecked(pc: PcPresentation, max_order: usize) -> Result<Self> {
        Self::build_from_presentation(pc, max_order, false)
    }

    fn build_from_presentation(pc: PcPresentation, max_order: usize, strict: bool) -> Result<Self> {
        let p = pc.prime();
        let n = pc.len();
        let order = (p as usize)
            .checked_pow(n as u32)
            .filter(|&o| o <= max_order)
            .ok_or(Error::SizeExceeded {
                order: (p as usize).saturating_pow(n as u32),
                bound: max_order,
                hint: "",
            })?;

        // Right multiplication by each pc generator, via collection.
        let mut right_gen = vec![0u32; order * n];
        for a in 0..order {
            let v = pc.exponents_of(a);
            for k in 0..n {
                let mut r = v.clone();
                pc.mul_gen(&mut r, k);
                right_gen[a * n + k] = pc.index_of(&r) as u32;
            }
        }
        let letters: Vec<Vec<usize>> = (0..order)
            .map(|b| {
                pc.exponents_of(b)
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
                    .collect()
            })
            .collect();
        let mut table = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let mut r = a as u32;
                for &k in &letters[b] {
                    r = right_gen[r as usize * n + k];
                }
                table[a * order + b] = r;
            }
        }
        let generators = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                Elem(pc.index_of(&v) as u32)
            })
            .collect();
        Self::assemble(p, Backend::Polycyclic(pc), table, generators, strict)
    }

    /// Builds a table-backed group. `table[a * order + b]` is the index of `a b`;
    /// index 0 must be the identity.
    pub fn from_table(p: u32, table: Vec<u32>, generators: Vec<Elem>) -> Result<Self> {
        if p < 3 || !crate::formulas::is_prime(p as u64) {
            return Err(Error::UnsupportedPrime(p as u64));
        }
        let order = (table.len() as f64).sqrt().round() as usize;
        if order * order != table.len() || order == 0 {
            return Err(Error::InvalidParameter("table is not square".into()));
        }
        if log_p(p, order).is_none() {
            return Err(Error::InvalidParameter(format!("order {order} is not a power of {p}")));
        }
        if (0..order).any(|a| table[a] as usize != a || table[a * order] as usize != a) {
            return Err(Error::InvalidParameter("index 0 is not the identity".into()));
        }
        Self::assemble(p, Backend::Table, table, generators, true)
    }

    fn assemble(
        p: u32,
        backend: Backend,
        table: Vec<u32>,
        generators: Vec<Elem>,
        strict: bool,
    ) -> Result<Self> {
        let order = (table.len() as f64).sqrt().round() as usize;
        let log_order = log_p(p, order)
            .ok_or_else(|| Error::InvalidParameter(format!("order {order} is not a power of {p}")))?;
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            if inverses[a] != u32::MAX {
                continue;
            }
            let row = &table[a * order..(a + 1) * order];
            match row.iter().position(|&x| x == 0) {
                Some(b) if table[b * order + a] == 0 => {
                    inverses[a] = b as u32;
                    inverses[b] = a as u32;
                }
                _ if strict => {
                    return Err(Error::Inconsistent(format!("element {a} has no inverse")));
                }
                _ => inverses[a] = 0,
            }
        }
        let mut orders = vec![0u32; order];
        for a in 0..order {
            let mut x = a as u32;
            let mut k = 1;
            while x != 0 {
                x = table[x as usize * order + a];
                k += 1;
                if k as usize > order {
                    if strict {
                        return Err(Error::Inconsistent(format!("element {a} has no finite order")));
                    }
                    break;
                }
            }
            orders[a] = k;
        }
        let exponent = orders.iter().copied().max().unwrap_or(1) as u64;
        let id = GroupId::fresh();
        let placeholder = Subgroup::trivial_of(id, order);
        let mut group = FiniteGroup {
            id,
            p,
            log_order,
            backend,
            table,
            inverses,
            orders,
            generators,
            exponent,
            center: placeholder.clone(),
            derived: placeholder.clone(),
            frattini: placeholder,
        };
        group.center = subgroups::compute_center(&group);
        group.derived = subgroups::compute_derived(&group);
        group.frattini = subgroups::compute_frattini(&group, &group.derived);
        Ok(group)
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    /// `n` with `|G| = p^n`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn presentation(&self) -> Option<&PcPresentation> {
        match &self.backend {
            Backend::Polycyclic(pc) => Some(pc),
            Backend::Table => None,
        }
    }

    /// Generators: the pc generators, or the ones supplied with the table.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    pub fn derived_subgroup(&self) -> &Subgroup {
        &self.derived
    }

    pub fn frattini(&self) -> &Subgroup {
        &self.frattini
    }

    pub fn is_abelian(&self) -> bool {
        self.center.order() == self.order()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator + Clone {
        (0..self.order() as u32).map(Elem)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.table[a.index() * self.order() + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.inverses[a.index()])
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let ord = self.orders[a.index()] as i64;
        let mut e = k.rem_euclid(ord);
        let mut base = a;
        let mut acc = Elem::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `^t a = t a t^{-1}`.
    #[inline]
    pub fn conj(&self, a: Elem, t: Elem) -> Elem {
        self.mul(self.mul(t, a), self.inv(t))
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    #[inline]
    pub fn order_of(&self, a: Elem) -> u64 {
        self.orders[a.index()] as u64
    }

    /// Exponent vector of an element of a pc group.
    pub fn exponents(&self, a: Elem) -> Option<Vec<u32>> {
        self.presentation().map(|pc| pc.exponents_of(a.index()))
    }

    // Checked API over tagged elements.

    pub fn identity(&self) -> GroupElement {
        self.tag(Elem::IDENTITY)
    }

    pub fn tag(&self, elem: Elem) -> GroupElement {
        debug_assert!(elem.index() < self.order());
        GroupElement { group: self.id, elem }
    }

    /// Element with the given exponent vector (pc groups only).
    pub fn element(&self, exponents: &[u32]) -> Result<GroupElement> {
        let pc = self
            .presentation()
            .ok_or_else(|| Error::Contract("table-backed groups have no exponent vectors".into()))?;
        if exponents.len() != pc.len() || exponents.iter().any(|&e| e >= self.p) {
            return Err(Error::InvalidParameter(format!("{exponents:?} is not a normal form")));
        }
        Ok(self.tag(Elem(pc.index_of(exponents) as u32)))
    }

    /// Normal form of a word in the pc generators.
    pub fn collect(&self, word: &[Letter]) -> Result<GroupElement> {
        let pc = self
            .presentation()
            .ok_or_else(|| Error::Contract("table-backed groups have no pc generators".into()))?;
        let v = pc.collect(word)?;
        Ok(self.tag(Elem(pc.index_of(&v) as u32)))
    }

    fn own(&self, a: &GroupElement) -> Result<Elem> {
        if a.group == self.id {
            Ok(a.elem)
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(self.tag(self.mul(self.own(a)?, self.own(b)?)))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(self.tag(self.inv(self.own(a)?)))
    }

    pub fn power(&self, a: &GroupElement, k: i64) -> Result<GroupElement> {
        Ok(self.tag(self.pow(self.own(a)?, k)))
    }

    pub fn conjugate(&self, a: &GroupElement, t: &GroupElement) -> Result<GroupElement> {
        Ok(self.tag(self.conj(self.own(a)?, self.own(t)?)))
    }

    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(self.tag(self.comm(self.own(a)?, self.own(b)?)))
    }

    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        Ok(self.order_of(self.own(a)?))
    }

    /// All elements in enumeration order, refusing groups above `bound`.
    pub fn enumerate_elements(&self, bound: usize) -> Result<Vec<GroupElement>> {
        if self.order() > bound {
            return Err(Error::SizeExceeded {
                order: self.order(),
                bound,
                hint: "",
            });
        }
        Ok(self.elements().map(|e| self.tag(e)).collect())
    }

    pub fn validate(&self) -> Diagnostics {
        self.validate_with_seed(DEFAULT_SEED)
    }

    /// Checks presentation consistency, the element count, identity and
    /// inverse laws on every element, and associativity (exhaustive for small
    /// orders, generator triples plus a seeded sample above).
    pub fn validate_with_seed(&self, seed: u64) -> Diagnostics {
        let order = self.order();
        let mut failures = Vec::new();
        let mut failing_generator = None;
        if let Some(pc) = self.presentation() {
            for (g, msg) in pc.consistency_failures() {
                failing_generator.get_or_insert(g);
                failures.push(format!("relation involving generator {g}: {msg}"));
            }
        }
        let expected = (self.p as usize).pow(self.log_order);
        if expected != order {
            failures.push(format!("enumerated {order} elements, expected {expected}"));
        }
        for a in self.elements() {
            if self.mul(a, Elem::IDENTITY) != a || self.mul(Elem::IDENTITY, a) != a {
                failures.push(format!("identity law fails at element {}", a.0));
                break;
            }
            let b = self.inv(a);
            if self.mul(a, b) != Elem::IDENTITY || self.mul(b, a) != Elem::IDENTITY {
                failures.push(format!("inverse law fails at element {}", a.0));
                break;
            }
        }
        let mut triples = 0usize;
        let mut check = |a: Elem, b: Elem, c: Elem, failures: &mut Vec<String>| {
            triples += 1;
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                if failures.len() < 16 {
                    failures.push(format!("associativity fails at ({}, {}, {})", a.0, b.0, c.0));
                }
            }
        };
        if order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        check(a, b, c, &mut failures);
                    }
                }
            }
        } else {
            let gens = &self.generators;
            for &a in gens {
                for &b in gens {
                    for &c in gens {
                        check(a, b, c, &mut failures);
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_TRIPLES {
                let a = Elem(rng.gen_range(0..order as u32));
                let b = Elem(rng.gen_range(0..order as u32));
                let c = Elem(rng.gen_range(0..order as u32));
                check(a, b, c, &mut failures);
            }
        }
        Diagnostics {
            order: expected,
            enumerated: order,
            center_order: self.center.order(),
            triples_checked: triples,
            failures,
            failing_generator,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors;

    #[test]
    fn identity_and_powers() {
        let c9 = constructors::cyclic(3, 2).unwrap();
        let c = c9.generators()[0];
        assert_eq!(c9.order_of(c), 9);
        assert_eq!(c9.pow(c, 10), c);
        assert_eq!(c9.pow(c, -1), c9.inv(c));
        let a = c9.tag(c);
        assert_eq!(c9.multiply(&a, &c9.identity()).unwrap(), a);
    }

    #[test]
    fn mixing_groups_is_an_error() {
        let a = constructors::cyclic(3, 1).unwrap();
        let b = constructors::cyclic(3, 1).unwrap();
        let x = a.tag(a.generators()[0]);
        let y = b.tag(b.generators()[0]);
        assert_eq!(a.multiply(&x, &y), Err(Error::GroupMismatch));
        assert!(a.multiply(&x, &x).is_ok());
    }

    #[test]
    fn n3_conjugation_identity() {
        let n3 = constructors::make_n(3).unwrap();
        let x = n3.tag(n3.generators()[0]);
        let y = n3.tag(n3.generators()[1]);
        assert_eq!(n3.power(&x, 4).unwrap(), n3.conjugate(&x, &y).unwrap());
        assert_eq!(n3.element_order(&x).unwrap(), 9);
    }

    #[test]
    fn m3_commutators_and_orders() {
        let m3 = constructors::make_m(3).unwrap();
        let [x, y, z] = [0, 1, 2].map(|i| m3.generators()[i]);
        assert_eq!(m3.comm(x, x), Elem::IDENTITY);
        let c = m3.comm(x, y);
        assert_ne!(c, Elem::IDENTITY);
        assert!(m3.center().contains(c));
        assert_eq!(m3.center().order(), 3);
        for t in m3.elements() {
            assert_eq!(m3.conj(z, t), z);
        }
        // y conjugated by x lands in y Z, and the commutator orientation is y^x = y z.
        assert_eq!(m3.mul(m3.inv(x), m3.mul(y, x)), m3.mul(y, z));
        assert_eq!(m3.conj(y, x), m3.mul(y, m3.inv(z)));
        for e in m3.elements().skip(1) {
            assert_eq!(m3.order_of(e), 3);
        }
    }

    #[test]
    fn enumeration_bound() {
        let g = constructors::make_m(3).unwrap();
        assert_eq!(g.enumerate_elements(27).unwrap().len(), 27);
        assert!(matches!(g.enumerate_elements(26), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn validate_passes_and_reports_center() {
        let g = constructors::elementary_abelian(3, 2).unwrap();
        assert!(g.validate().passed());
        let m = constructors::make_m(3).unwrap();
        let d = m.validate();
        assert!(d.passed(), "{:?}", d.failures);
        assert_eq!(d.center_order, 3);
    }

    #[test]
    fn validate_names_corrupted_generator() {
        let conj = vec![vec![vec![0, 0], vec![0, 2]], vec![vec![0, 0], vec![0, 0]]];
        let pc = PcPresentation::new(3, vec![vec![0, 1], vec![0, 0]], conj).unwrap();
        assert!(matches!(
            FiniteGroup::from_presentation(pc.clone()),
            Err(Error::Inconsistent(_))
        ));
        let g = FiniteGroup::from_presentation_unchecked(pc, DEFAULT_MAX_ORDER).unwrap();
        let d = g.validate();
        assert!(!d.passed());
        assert_eq!(d.failing_generator, Some(0));
    }
}
