//! Genetic subgroups, the linkage relation between them, genetic bases and the
//! representation counts they determine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::subgroups::{self, CyclicQuotientData, Subgroup};

/// Default order bound for enumerating every subgroup: `p^4`.
pub fn general_bound(p: u32) -> usize {
    (p as usize).pow(4)
}

/// Role of an entry in the bases built by the fast paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryKind {
    Whole,
    IndexP,
    /// A subgroup of maximal order meeting the center trivially.
    Faithful,
    Other,
}

#[derive(Debug, Clone)]
pub struct GeneticEntry {
    pub subgroup: Subgroup,
    pub normalizer: Subgroup,
    /// `Z_P(S)`, the preimage of `Z(N_P(S)/S)`; equal to the normalizer here.
    pub zp: Subgroup,
    pub quotient: CyclicQuotientData,
    pub kind: EntryKind,
}

impl GeneticEntry {
    /// Entry for a subgroup whose normalizer quotient is cyclic.
    pub fn new(g: &FiniteGroup, s: Subgroup, kind: EntryKind) -> Result<Self> {
        let normalizer = subgroups::normalizer(g, &s);
        let quotient = subgroups::cyclic_quotient(g, &normalizer, &s)
            .ok_or_else(|| Error::Contract("normalizer quotient is not cyclic".into()))?;
        let zp = relative_center(g, &normalizer, &s);
        if zp != normalizer {
            return Err(Error::Internal("Z_P(S) differs from N_P(S) with cyclic quotient".into()));
        }
        Ok(GeneticEntry {
            subgroup: s,
            normalizer,
            zp,
            quotient,
            kind,
        })
    }

    /// Entry whose section `N_P(S)/S` is generated by the coset of `generator`.
    pub fn with_quotient_generator(g: &FiniteGroup, s: Subgroup, generator: Elem, kind: EntryKind) -> Result<Self> {
        let normalizer = subgroups::normalizer(g, &s);
        let quotient = CyclicQuotientData::with_generator(g, &normalizer, &s, generator)
            .filter(|_| normalizer.contains(generator))
            .ok_or_else(|| Error::Contract("element does not generate the normalizer quotient".into()))?;
        let zp = relative_center(g, &normalizer, &s);
        if zp != normalizer {
            return Err(Error::Internal("Z_P(S) differs from N_P(S) with cyclic quotient".into()));
        }
        Ok(GeneticEntry {
            subgroup: s,
            normalizer,
            zp,
            quotient,
            kind,
        })
    }

    /// `|N_P(S)/S|`.
    pub fn modulus(&self) -> u64 {
        self.quotient.modulus
    }

    pub fn r(&self) -> u32 {
        self.quotient.r
    }
}

/// `{n ∈ N : [n, N] ≤ S}`.
fn relative_center(g: &FiniteGroup, n: &Subgroup, s: &Subgroup) -> Subgroup {
    let els: Vec<Elem> = n
        .elements()
        .iter()
        .copied()
        .filter(|&x| n.generators().iter().all(|&y| s.contains(g.comm(x, y))))
        .collect();
    subgroups::from_elements(g, &els).expect("relative center is a subgroup")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisPath {
    General,
    ElementaryAbelian,
    ExtraSpecial,
}

#[derive(Debug, Clone)]
pub struct GeneticBasis {
    pub entries: Vec<GeneticEntry>,
    pub path: BasisPath,
}

impl GeneticBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.modulus()).collect()
    }

    /// Index of the entry whose subgroup is `s`.
    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.entries.iter().position(|e| &e.subgroup == s)
    }
}

/// `x`-conjugate test shared by the genetic and linkage conditions: is
/// `^x T ∩ Z ≤ S`?
fn conj_meets_inside(g: &FiniteGroup, t: &Subgroup, x: Elem, z: &Subgroup, s: &Subgroup) -> bool {
    t.elements().iter().all(|&y| {
        let c = g.conj(y, x);
        !z.contains(c) || s.contains(c)
    })
}

fn conj_equals(g: &FiniteGroup, s: &Subgroup, x: Elem) -> bool {
    s.generators().iter().all(|&y| s.contains(g.conj(y, x)))
}

/// `S` is genetic: `N_P(S)/S` is cyclic and every `x` with
/// `^xS ∩ Z_P(S) ≤ S` normalizes `S`.
pub fn is_genetic(g: &FiniteGroup, s: &Subgroup) -> bool {
    let n = subgroups::normalizer(g, s);
    if subgroups::cyclic_quotient(g, &n, s).is_none() {
        return false;
    }
    let z = relative_center(g, &n, s);
    g.elements()
        .all(|x| !conj_meets_inside(g, s, x, &z, s) || conj_equals(g, s, x))
}

/// The two-sided form of the genetic condition: every `x` with both
/// `^xS ∩ Z_P(S) ≤ S` and `S^x ∩ Z_P(S) ≤ S` normalizes `S`. Only meaningful
/// when `N_P(S)/S` is cyclic.
pub fn is_genetic_two_sided(g: &FiniteGroup, s: &Subgroup) -> bool {
    let n = subgroups::normalizer(g, s);
    if subgroups::cyclic_quotient(g, &n, s).is_none() {
        return false;
    }
    let z = relative_center(g, &n, s);
    g.elements().all(|x| {
        let both = conj_meets_inside(g, s, x, &z, s) && conj_meets_inside(g, s, g.inv(x), &z, s);
        !both || conj_equals(g, s, x)
    })
}

/// The linkage relation: some `x` has `^xT ∩ Z_P(S) ≤ S` and some `y` has
/// `^yS ∩ Z_P(T) ≤ T`.
pub fn linked(g: &FiniteGroup, s: &GeneticEntry, t: &GeneticEntry) -> bool {
    let one = |a: &GeneticEntry, b: &GeneticEntry| {
        g.elements()
            .any(|x| conj_meets_inside(g, &b.subgroup, x, &a.zp, &a.subgroup))
    };
    one(s, t) && one(t, s)
}

/// Every genetic subgroup of `g`, in canonical order. Needs `all_subgroups`.
pub fn genetic_subgroups(g: &FiniteGroup, bound: usize) -> Result<Vec<GeneticEntry>> {
    subgroups::all_subgroups(g, bound)?
        .into_iter()
        .filter(|s| is_genetic(g, s))
        .map(|s| GeneticEntry::new(g, s, EntryKind::Other))
        .collect()
}

/// Genetic basis from the full subgroup list: the canonical least member of
/// each linkage class.
pub fn genetic_basis_general(g: &FiniteGroup, bound: usize) -> Result<GeneticBasis> {
    let mut reps: Vec<GeneticEntry> = Vec::new();
    for e in genetic_subgroups(g, bound)? {
        if !reps.iter().any(|r| linked(g, r, &e)) {
            reps.push(e);
        }
    }
    let whole = subgroups::whole(g);
    for e in &mut reps {
        e.kind = if e.subgroup == whole {
            EntryKind::Whole
        } else if e.subgroup.order() * g.prime() as usize == g.order() {
            EntryKind::IndexP
        } else if e.subgroup.meets_trivially(g.center()) {
            EntryKind::Faithful
        } else {
            EntryKind::Other
        };
    }
    Ok(GeneticBasis {
        entries: reps,
        path: BasisPath::General,
    })
}

pub fn is_elementary_abelian(g: &FiniteGroup) -> bool {
    g.is_abelian() && g.exponent() <= g.prime() as u64
}

/// `P` together with its subgroups of index `p`, the genetic basis of an
/// elementary abelian group.
pub fn genetic_basis_elementary_abelian(g: &FiniteGroup) -> Result<GeneticBasis> {
    if !is_elementary_abelian(g) {
        return Err(Error::Contract("group is not elementary abelian".into()));
    }
    let mut entries = vec![GeneticEntry::new(g, subgroups::whole(g), EntryKind::Whole)?];
    for h in subgroups::index_p_subgroups(g) {
        entries.push(GeneticEntry::new(g, h, EntryKind::IndexP)?);
    }
    Ok(GeneticBasis {
        entries,
        path: BasisPath::ElementaryAbelian,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialKind {
    ExtraSpecial,
    AlmostExtraSpecial,
}

/// Extra-special: `Z = P' = Φ` of order `p`. Almost extra-special:
/// `P' = Φ` of order `p` and `Z` cyclic of order `p²`.
pub fn classify_special(g: &FiniteGroup) -> Option<SpecialKind> {
    let p = g.prime() as usize;
    let (z, d, f) = (g.center(), g.derived_subgroup(), g.frattini());
    if d.order() != p || d != f {
        return None;
    }
    if z == d {
        return Some(SpecialKind::ExtraSpecial);
    }
    let cyclic_z = z.elements().iter().any(|&e| g.order_of(e) as usize == z.order());
    (z.order() == p * p && cyclic_z).then_some(SpecialKind::AlmostExtraSpecial)
}

/// A subgroup of maximal order meeting `Z(P)` trivially, for `P` (almost)
/// extra-special: the canonical least elementary abelian subgroup of order
/// `sqrt(|P|/|Z|)` avoiding `Z`, found by depth-first search.
pub fn find_faithful_y(g: &FiniteGroup) -> Result<Subgroup> {
    let z = g.center();
    let target = ((g.order() / z.order()) as f64).sqrt().round() as usize;
    let p = g.prime() as u64;
    let candidates: Vec<Elem> = g
        .elements()
        .filter(|&x| g.order_of(x) == p && !z.contains(x))
        .collect();
    fn dfs(
        g: &FiniteGroup,
        z: &Subgroup,
        candidates: &[Elem],
        start: usize,
        y: &Subgroup,
        target: usize,
    ) -> Option<Subgroup> {
        if y.order() == target {
            return Some(y.clone());
        }
        let yz = subgroups::join_subgroups(g, y, z);
        for (i, &x) in candidates.iter().enumerate().skip(start) {
            if yz.contains(x) || y.generators().iter().any(|&s| g.mul(s, x) != g.mul(x, s)) {
                continue;
            }
            let next = subgroups::join(g, y, &[x]);
            if let Some(found) = dfs(g, z, candidates, i + 1, &next, target) {
                return Some(found);
            }
        }
        None
    }
    dfs(g, z, &candidates, 0, &subgroups::trivial(g), target)
        .ok_or_else(|| Error::Internal("no subgroup of maximal order avoiding the center".into()))
}

/// `P`, its subgroups of index `p`, and `Y`: the genetic basis of an (almost)
/// extra-special group.
pub fn genetic_basis_es_aes(g: &FiniteGroup) -> Result<GeneticBasis> {
    if classify_special(g).is_none() {
        return Err(Error::Contract("group is neither extra-special nor almost extra-special".into()));
    }
    let y = find_faithful_y(g)?;
    let yz = subgroups::join_subgroups(g, &y, g.center());
    let ny = subgroups::normalizer(g, &y);
    if ny != yz {
        return Err(Error::Internal("N_P(Y) differs from Z·Y".into()));
    }
    let mut entries = vec![GeneticEntry::new(g, subgroups::whole(g), EntryKind::Whole)?];
    for h in subgroups::index_p_subgroups(g) {
        entries.push(GeneticEntry::new(g, h, EntryKind::IndexP)?);
    }
    let ye = GeneticEntry::new(g, y, EntryKind::Faithful)?;
    if ye.modulus() as usize != g.center().order() {
        return Err(Error::Internal("N_P(Y)/Y is not isomorphic to Z(P)".into()));
    }
    entries.push(ye);
    Ok(GeneticBasis {
        entries,
        path: BasisPath::ExtraSpecial,
    })
}

/// Genetic basis by the fastest applicable path.
pub fn genetic_basis(g: &FiniteGroup) -> Result<GeneticBasis> {
    if is_elementary_abelian(g) {
        genetic_basis_elementary_abelian(g)
    } else if classify_special(g).is_some() {
        genetic_basis_es_aes(g)
    } else {
        genetic_basis_general(g, general_bound(g.prime()))
    }
}

/// Kernel of `V(S)`: the intersection of the conjugates of `S`.
pub fn vs_kernel(g: &FiniteGroup, e: &GeneticEntry) -> Subgroup {
    subgroups::core(g, &e.subgroup)
}

fn euler_phi_prime_power(p: u64, r: u32) -> u64 {
    if r == 0 {
        1
    } else {
        p.pow(r) - p.pow(r - 1)
    }
}

/// `dim_Q V(S) = [P : N_P(S)] · φ(p^r)`.
pub fn vs_dimension(g: &FiniteGroup, e: &GeneticEntry) -> u64 {
    (g.order() / e.normalizer.order()) as u64 * euler_phi_prime_power(g.prime() as u64, e.r())
}

/// `Σ dim(V(S))² / φ(p^r)` over the basis: the Q-dimension of `QP`, so equal
/// to `|P|` for a genuine basis.
pub fn algebra_dimension(g: &FiniteGroup, basis: &GeneticBasis) -> u64 {
    basis
        .entries
        .iter()
        .map(|e| {
            let d = vs_dimension(g, e);
            d * d / euler_phi_prime_power(g.prime() as u64, e.r())
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Real,
}

/// Irreducible representations of `P` over the field, counted from the
/// faithful ones of each cyclic section `N_P(S)/S ≅ C_{p^m}`.
pub fn count_irreducibles(g: &FiniteGroup, basis: &GeneticBasis, field: Field) -> u64 {
    let p = g.prime() as u64;
    basis
        .entries
        .iter()
        .map(|e| match (field, e.r()) {
            (Field::Rational, _) | (Field::Real, 0) => 1,
            (Field::Real, m) => (p.pow(m) - p.pow(m - 1)) / 2,
        })
        .sum()
}

/// Free rank `r − q` of the Whitehead group.
pub fn wh_free_rank(g: &FiniteGroup, basis: &GeneticBasis) -> u64 {
    count_irreducibles(g, basis, Field::Real) - count_irreducibles(g, basis, Field::Rational)
}
