//! `Cl₁(ℤP)` as the quotient `Γ(P)/R` of the product of the cyclic sections
//! `N_P(S)/S` over a genetic basis, by the subgroup generated by the
//! determinant vectors `u_{H,g}`.

pub mod deflation;
pub mod snf;
pub mod witness;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genetic::{self, EntryKind, GeneticBasis, GeneticEntry};
use crate::group::{Elem, FiniteGroup};
use crate::subgroups::{self, RepresentativePolicy, Subgroup};

pub use deflation::{deflation, deflation_of, minimal_generators, DeflationData, GeneratorChoice, MinimalGenerators};
pub use snf::{smith_quotient, smith_quotient_exact, AbelianInvariants};
pub use witness::{witness_w, WitnessData};

/// One component of `Γ(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLabel {
    pub kind: EntryKind,
    /// `|S|`.
    pub subgroup_order: usize,
    pub modulus: u64,
}

/// `Γ(P) = ∏ N_P(S)/S` with one component per basis entry, in basis order.
/// Components of modulus 1 (the entry `S = P`) are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaGroup {
    pub components: Vec<ComponentLabel>,
}

impl GammaGroup {
    pub fn moduli(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.modulus).collect()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(self.moduli())
    }
}

pub fn build_gamma(basis: &GeneticBasis) -> GammaGroup {
    GammaGroup {
        components: basis
            .entries
            .iter()
            .map(|e| ComponentLabel {
                kind: e.kind,
                subgroup_order: e.subgroup.order(),
                modulus: e.modulus(),
            })
            .collect(),
    }
}

/// An element of `Γ(P)` as discrete logs, entry `i` in `[0, modulus_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationVector {
    pub entries: Vec<u64>,
    /// `(generator of H, g)` for a u-vector.
    pub source: Option<(Elem, Elem)>,
}

impl RelationVector {
    pub fn zero(n: usize) -> Self {
        RelationVector {
            entries: vec![0; n],
            source: None,
        }
    }

    pub fn unit(gamma: &GammaGroup, i: usize) -> Self {
        let mut v = RelationVector::zero(gamma.len());
        v.entries[i] = 1 % gamma.components[i].modulus;
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// `self + k·other`, reduced.
    pub fn add_scaled(&mut self, other: &RelationVector, k: i64, moduli: &[u64]) {
        for ((x, &y), &m) in self.entries.iter_mut().zip(&other.entries).zip(moduli) {
            let m = m as i128;
            *x = ((*x as i128 + k as i128 * y as i128).rem_euclid(m)) as u64;
        }
        self.source = None;
    }
}

/// How the index `m` of the decompositions `g^m = h·ˣl` is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum IndexMode {
    /// Recomputed for every double-coset representative.
    #[default]
    PerRepresentative,
    /// Computed at the first admissible representative and reused.
    Constant,
}

/// Progress callback `(done, total)` over the `(H, g)` pairs.
pub type Progress = Arc<dyn Fn(usize, usize) + Send + Sync>;

#[derive(Clone, Default)]
pub struct Cl1Options {
    pub policy: RepresentativePolicy,
    pub index_mode: IndexMode,
    /// Use every element of `C_P(H)` instead of a minimal generating set
    /// modulo `H`.
    pub enlarge_e_h: bool,
    pub progress: Option<Progress>,
}

impl fmt::Debug for Cl1Options {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cl1Options")
            .field("policy", &self.policy)
            .field("index_mode", &self.index_mode)
            .field("enlarge_e_h", &self.enlarge_e_h)
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

/// Component of `u_{H,g}` at one basis entry, as a discrete log.
fn component(
    g: &FiniteGroup,
    entry: &GeneticEntry,
    h: &Subgroup,
    hg: &Subgroup,
    x: Elem,
    opts: &Cl1Options,
) -> Result<u64> {
    let modulus = entry.modulus();
    if modulus == 1 {
        return Ok(0);
    }
    let s = &entry.subgroup;
    let n = &entry.normalizer;
    let dlog = |e: Elem| -> Result<u64> {
        entry
            .quotient
            .dlog(e)
            .map(u64::from)
            .ok_or_else(|| Error::Internal("element outside the normalizer".into()))
    };
    if n.order() == g.order() {
        // One double coset; m = 1 and l = h⁻¹x with h ∈ H ≤ S.
        return if h.is_subgroup_of(s) { dlog(x) } else { Ok(0) };
    }
    let reps = subgroups::double_coset_reps(g, hg, n, opts.policy);
    let xo = g.order_of(x);
    let mut total = 0u64;
    let mut fixed_m: Option<u64> = None;
    for &t in &reps.representatives {
        let ti = g.inv(t);
        // H^t ∩ N_P(S) ≤ S
        let admissible = h.elements().iter().all(|&y| {
            let c = g.conj(y, ti);
            !n.contains(c) || s.contains(c)
        });
        if !admissible {
            continue;
        }
        let search = |k: u64| -> Option<Elem> {
            let gk = g.pow(x, k as i64);
            h.elements().iter().find_map(|&y| {
                let l = g.conj(g.mul(g.inv(y), gk), ti);
                n.contains(l).then_some(l)
            })
        };
        let l = match (opts.index_mode, fixed_m) {
            (IndexMode::Constant, Some(m)) => search(m)
                .ok_or_else(|| Error::Internal("constant index fails at another representative".into()))?,
            _ => {
                let (m, l) = (1..=xo)
                    .find_map(|k| search(k).map(|l| (k, l)))
                    .ok_or_else(|| Error::Internal("no decomposition of a power of g".into()))?;
                fixed_m = Some(m);
                l
            }
        };
        total = (total + dlog(l)?) % modulus;
    }
    Ok(total)
}

/// `u_{H,g}` for a cyclic subgroup `H` and `g ∈ C_P(H)`.
pub fn u_vector(g: &FiniteGroup, basis: &GeneticBasis, h: &Subgroup, x: Elem, opts: &Cl1Options) -> Result<RelationVector> {
    if h.group_id() != g.id() {
        return Err(Error::GroupMismatch);
    }
    if !h.is_cyclic(g) {
        return Err(Error::InvalidParameter("H must be cyclic".into()));
    }
    if h.generators().iter().any(|&y| g.mul(y, x) != g.mul(x, y)) {
        return Err(Error::Contract("g does not centralize H".into()));
    }
    let hg = subgroups::join(g, h, &[x]);
    let entries = basis
        .entries
        .iter()
        .map(|e| component(g, e, h, &hg, x, opts))
        .collect::<Result<Vec<u64>>>()?;
    Ok(RelationVector {
        entries,
        source: Some((
            h.elements().iter().copied().find(|&e| g.order_of(e) == h.order() as u64).unwrap_or(Elem::IDENTITY),
            x,
        )),
    })
}

/// The pairs `(H, g)`: `H` runs over conjugacy class representatives of
/// cyclic subgroups and `g` over lifts of a generating set of `C_P(H)/H`.
pub fn relation_pairs(g: &FiniteGroup, opts: &Cl1Options) -> Vec<(Subgroup, Elem)> {
    let mut pairs = Vec::new();
    for class in subgroups::cyclic_subgroup_classes(g) {
        let e_h = if opts.enlarge_e_h {
            class.centralizer.elements().to_vec()
        } else {
            subgroups::minimal_generators_mod(g, &class.centralizer, &class.representative)
        };
        pairs.extend(e_h.into_iter().map(|x| (class.representative.clone(), x)));
    }
    pairs
}

/// Generators of `R`, one u-vector per pair of [`relation_pairs`], in order.
pub fn relation_generators(g: &FiniteGroup, basis: &GeneticBasis, opts: &Cl1Options) -> Result<Vec<RelationVector>> {
    let pairs = relation_pairs(g, opts);
    let total = pairs.len();
    let done = AtomicUsize::new(0);
    pairs
        .par_iter()
        .map(|(h, x)| {
            let v = u_vector(g, basis, h, *x, opts);
            if let Some(progress) = &opts.progress {
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
            }
            v
        })
        .collect()
}

/// Invariants of `Γ/⟨relations⟩`.
pub fn quotient_invariants(gamma: &GammaGroup, relations: &[RelationVector]) -> AbelianInvariants {
    let rows: Vec<Vec<u64>> = relations.iter().map(|r| r.entries.clone()).collect();
    smith_quotient(&gamma.moduli(), &rows)
}

#[derive(Debug, Clone)]
pub struct Cl1Computation {
    pub basis: GeneticBasis,
    pub gamma: GammaGroup,
    pub relations: Vec<RelationVector>,
    pub invariants: AbelianInvariants,
}

pub fn cl1_with_basis(g: &FiniteGroup, basis: GeneticBasis, opts: &Cl1Options) -> Result<Cl1Computation> {
    let gamma = build_gamma(&basis);
    let relations = relation_generators(g, &basis, opts)?;
    let invariants = quotient_invariants(&gamma, &relations);
    Ok(Cl1Computation {
        basis,
        gamma,
        relations,
        invariants,
    })
}

pub fn cl1_compute(g: &FiniteGroup, opts: &Cl1Options) -> Result<Cl1Computation> {
    cl1_with_basis(g, genetic::genetic_basis(g)?, opts)
}

/// Invariant factors of `Cl₁(ℤP)`.
pub fn cl1_structure(g: &FiniteGroup) -> Result<AbelianInvariants> {
    Ok(cl1_compute(g, &Cl1Options::default())?.invariants)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhiteheadSummary {
    pub free_rank: u64,
    pub torsion: AbelianInvariants,
    /// The derived subgroup is central, so `SK₁(ℤP) = Cl₁(ℤP)`. Otherwise
    /// `torsion` is only `Cl₁(ℤP) ≤ SK₁(ℤP)`.
    pub sk1_equals_cl1: bool,
}

pub fn whitehead_summary(g: &FiniteGroup, opts: &Cl1Options) -> Result<WhiteheadSummary> {
    let comp = cl1_compute(g, opts)?;
    Ok(WhiteheadSummary {
        free_rank: genetic::wh_free_rank(g, &comp.basis),
        torsion: comp.invariants,
        sk1_equals_cl1: g.derived_subgroup().is_subgroup_of(g.center()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn factors(g: &FiniteGroup) -> Vec<u64> {
        cl1_structure(g).unwrap().factors().to_vec()
    }

    #[test]
    fn gamma_moduli() {
        let ea = elementary_abelian(3, 2).unwrap();
        let b = genetic::genetic_basis(&ea).unwrap();
        assert_eq!(build_gamma(&b).moduli(), vec![1, 3, 3, 3, 3]);
        let m = make_m(3).unwrap();
        assert_eq!(build_gamma(&genetic::genetic_basis(&m).unwrap()).moduli(), vec![1, 3, 3, 3, 3, 3]);
        let a = almost_extra_special(3, 1).unwrap();
        let mut expected = vec![1];
        expected.extend([3; 13]);
        expected.push(9);
        assert_eq!(build_gamma(&genetic::genetic_basis(&a).unwrap()).moduli(), expected);
    }

    #[test]
    fn small_values() {
        assert!(factors(&cyclic(3, 1).unwrap()).is_empty());
        assert!(factors(&cyclic(3, 2).unwrap()).is_empty());
        assert_eq!(factors(&elementary_abelian(3, 3).unwrap()), vec![3; 3]);
        assert_eq!(factors(&make_m(3).unwrap()), vec![3; 2]);
        assert_eq!(factors(&make_n(3).unwrap()), vec![3; 2]);
        assert_eq!(factors(&almost_extra_special(3, 1).unwrap()), vec![3; 5]);
    }

    #[test]
    fn trivial_h_identity_g() {
        let m = make_m(3).unwrap();
        let b = genetic::genetic_basis(&m).unwrap();
        let v = u_vector(&m, &b, &subgroups::trivial(&m), Elem::IDENTITY, &Cl1Options::default()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn abelian_components() {
        let ea = elementary_abelian(3, 2).unwrap();
        let b = genetic::genetic_basis(&ea).unwrap();
        let opts = Cl1Options::default();
        for x in ea.elements() {
            for y in ea.elements() {
                let h = subgroups::closure(&ea, &[x]);
                let v = u_vector(&ea, &b, &h, y, &opts).unwrap();
                for (e, &c) in b.entries.iter().zip(&v.entries).skip(1) {
                    let want = if h.is_subgroup_of(&e.subgroup) { e.quotient.dlog(y).unwrap() as u64 } else { 0 };
                    assert_eq!(c, want);
                }
            }
        }
    }

    #[test]
    fn ea_relation_rank() {
        let ea = elementary_abelian(3, 3).unwrap();
        let comp = cl1_compute(&ea, &Cl1Options::default()).unwrap();
        let rows: Vec<Vec<u64>> = comp.relations.iter().map(|r| r.entries.clone()).collect();
        assert_eq!(crate::linalg::rank_mod_p(3, comp.gamma.len(), &rows), 10);
    }

    #[test]
    fn non_centralizing_g_is_rejected() {
        let m = make_m(3).unwrap();
        let b = genetic::genetic_basis(&m).unwrap();
        let x = m.generators()[0];
        let y = m.generators()[1];
        let h = subgroups::closure(&m, &[x]);
        assert!(matches!(u_vector(&m, &b, &h, y, &Cl1Options::default()), Err(Error::Contract(_))));
    }

    #[test]
    fn summaries() {
        let a = almost_extra_special(3, 1).unwrap();
        let s = whitehead_summary(&a, &Cl1Options::default()).unwrap();
        assert_eq!((s.free_rank, s.torsion.rank(), s.sk1_equals_cl1), (2, 5, true));
        let ea = elementary_abelian(3, 4).unwrap();
        let s = whitehead_summary(&ea, &Cl1Options::default()).unwrap();
        assert_eq!((s.free_rank, s.torsion.elementary_rank()), (0, Some(20)));
    }
}
