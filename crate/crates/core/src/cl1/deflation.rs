//! Deflation `Cl₁(ℤP) → Cl₁(ℤ(P/N))`, its kernel, and minimal generating
//! sets of `Cl₁(ℤP)` built from it.

use serde::{Deserialize, Serialize};

use super::{cl1_compute, cl1_with_basis, smith_quotient, AbelianInvariants, Cl1Computation, Cl1Options, RelationVector};
use crate::error::{Error, Result};
use crate::genetic::{self, EntryKind, GeneticBasis, GeneticEntry, SpecialKind};
use crate::group::FiniteGroup;
use crate::linalg::Echelon;
use crate::subgroups::{self, Quotient, Subgroup};

#[derive(Debug, Clone)]
pub struct DeflationData {
    pub normal: Subgroup,
    pub quotient: Quotient,
    /// `component_map[j]` is the component of `Γ(P)` whose entry maps to
    /// component `j` of `Γ(P/N)`.
    pub component_map: Vec<usize>,
    pub source: Cl1Computation,
    /// `Γ(P/N)/R̃` over the basis `{S/N : N ≤ S}`.
    pub target: Cl1Computation,
    /// `Cl₁(ℤ(P/N))` computed from scratch, with its own basis.
    pub independent_target: AbelianInvariants,
    /// The image of `R` lies in `R̃`.
    pub relations_map_into: bool,
    /// `Γ(P)` maps onto `Γ(P/N)/R̃`.
    pub surjective: bool,
    pub kernel: AbelianInvariants,
}

impl DeflationData {
    /// `|Cl₁P| = |K|·|Cl₁(P/N)|`, on `log_p` orders.
    pub fn order_law_holds(&self, p: u64) -> bool {
        self.source.invariants.log_order(p) == self.kernel.log_order(p) + self.target.invariants.log_order(p)
    }

    /// Every check passes and both computations of `Cl₁(ℤ(P/N))` agree.
    pub fn consistent(&self, p: u64) -> bool {
        self.relations_map_into
            && self.surjective
            && self.order_law_holds(p)
            && self.independent_target == self.target.invariants
    }
}

fn rows(v: &[RelationVector]) -> Vec<Vec<u64>> {
    v.iter().map(|r| r.entries.clone()).collect()
}

fn log_quotient(p: u64, moduli: &[u64], rows: &[Vec<u64>]) -> u32 {
    smith_quotient(moduli, rows).log_order(p)
}

/// Deflation along a normal subgroup `n` of `g`.
pub fn deflation(g: &FiniteGroup, n: &Subgroup, opts: &Cl1Options) -> Result<DeflationData> {
    deflation_of(g, cl1_compute(g, opts)?, n, opts)
}

/// Deflation of an existing computation for `g`.
pub fn deflation_of(g: &FiniteGroup, source: Cl1Computation, n: &Subgroup, opts: &Cl1Options) -> Result<DeflationData> {
    let quotient = subgroups::quotient_group(g, n)?;
    let q = &quotient.group;
    let mut component_map = Vec::new();
    let mut entries = Vec::new();
    for (i, e) in source.basis.entries.iter().enumerate() {
        if !n.is_subgroup_of(&e.subgroup) {
            continue;
        }
        let image = quotient.image(&e.subgroup);
        let gen = quotient.project(e.quotient.generator);
        let qe = GeneticEntry::with_quotient_generator(q, image, gen, e.kind)?;
        if qe.modulus() != e.modulus() {
            return Err(Error::Internal("deflated section has a different order".into()));
        }
        component_map.push(i);
        entries.push(qe);
    }
    let basis = GeneticBasis {
        entries,
        path: source.basis.path,
    };
    if genetic::algebra_dimension(q, &basis) != q.order() as u64 {
        return Err(Error::Internal("deflated entries do not form a genetic basis".into()));
    }
    let target = cl1_with_basis(q, basis, opts)?;
    let independent_target = cl1_compute(q, opts)?.invariants;

    let p = g.prime() as u64;
    let moduli = source.gamma.moduli();
    let tmoduli = target.gamma.moduli();
    let restrict = |v: &[u64]| -> Vec<u64> { component_map.iter().map(|&i| v[i]).collect() };

    let rt = rows(&target.relations);
    let base = log_quotient(p, &tmoduli, &rt);
    let mut with_image = rt.clone();
    with_image.extend(source.relations.iter().map(|r| restrict(&r.entries)));
    let relations_map_into = log_quotient(p, &tmoduli, &with_image) == base;
    let mut with_units = rt.clone();
    with_units.extend((0..moduli.len()).map(|i| {
        let mut e = vec![0u64; moduli.len()];
        e[i] = 1 % moduli[i];
        restrict(&e)
    }));
    let surjective = log_quotient(p, &tmoduli, &with_units) == 0;

    // K = L/R with L = s⁻¹(R̃): R, the components off the image, lifts of R̃.
    let r = rows(&source.relations);
    let mut l = r.clone();
    for i in (0..moduli.len()).filter(|i| !component_map.contains(i)) {
        let mut e = vec![0u64; moduli.len()];
        e[i] = 1 % moduli[i];
        l.push(e);
    }
    for v in &rt {
        let mut e = vec![0u64; moduli.len()];
        for (j, &i) in component_map.iter().enumerate() {
            e[i] = v[j];
        }
        l.push(e);
    }
    let kernel = subquotient_invariants(p, &moduli, &r, &l);
    Ok(DeflationData {
        normal: n.clone(),
        quotient,
        component_map,
        source,
        target,
        independent_target,
        relations_map_into,
        surjective,
        kernel,
    })
}

/// Invariants of `L/R` for `R ≤ L ≤ Γ`, from the orders `|p^i(L/R)|`.
fn subquotient_invariants(p: u64, moduli: &[u64], r: &[Vec<u64>], l: &[Vec<u64>]) -> AbelianInvariants {
    let whole = log_quotient(p, moduli, r);
    let mut logs = Vec::new();
    let mut scale = 1u64;
    loop {
        let mut stacked = r.to_vec();
        stacked.extend(l.iter().map(|v| {
            v.iter()
                .zip(moduli)
                .map(|(&x, &m)| ((x as u128 * scale as u128) % m as u128) as u64)
                .collect::<Vec<u64>>()
        }));
        let size = whole - log_quotient(p, moduli, &stacked);
        logs.push(size);
        if size == 0 {
            break;
        }
        scale *= p;
    }
    // logs[i] - logs[i+1] factors have order at least p^{i+1}.
    let mut factors = Vec::new();
    for i in 0..logs.len() - 1 {
        let at_least = logs[i] - logs[i + 1];
        let next = logs.get(i + 2).map_or(0, |&x| logs[i + 1] - x);
        for _ in 0..at_least - next {
            factors.push(p.pow(i as u32 + 1));
        }
    }
    AbelianInvariants::from_cyclic_orders(factors)
}

/// A chosen unit vector of `Γ(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorChoice {
    pub component: usize,
    pub kind: EntryKind,
    pub vector: RelationVector,
}

#[derive(Debug, Clone)]
pub struct MinimalGenerators {
    pub generators: Vec<GeneratorChoice>,
    pub invariants: AbelianInvariants,
    /// The chosen cosets generate `Γ/R`.
    pub generates: bool,
}

impl MinimalGenerators {
    pub fn is_minimal(&self) -> bool {
        self.generates && self.generators.len() == self.invariants.rank()
    }
}

fn unit(comp: &Cl1Computation, i: usize) -> GeneratorChoice {
    GeneratorChoice {
        component: i,
        kind: comp.basis.entries[i].kind,
        vector: RelationVector::unit(&comp.gamma, i),
    }
}

fn finish(p: u64, comp: &Cl1Computation, generators: Vec<GeneratorChoice>) -> MinimalGenerators {
    let mut stacked = rows(&comp.relations);
    stacked.extend(generators.iter().map(|c| c.vector.entries.clone()));
    MinimalGenerators {
        generates: log_quotient(p, &comp.gamma.moduli(), &stacked) == 0,
        invariants: comp.invariants.clone(),
        generators,
    }
}

/// Greedy choice in `Γ/(R + pΓ)`: index-p components first, then the rest.
fn frattini_greedy(p: u64, comp: &Cl1Computation) -> MinimalGenerators {
    let width = comp.gamma.len();
    let mut ech = Echelon::new(p, width);
    for r in &comp.relations {
        ech.insert(&r.entries);
    }
    let mut order: Vec<usize> = (0..width).filter(|&i| comp.gamma.components[i].modulus > 1).collect();
    order.sort_by_key(|&i| comp.basis.entries[i].kind != EntryKind::IndexP);
    let target = comp.invariants.rank();
    let mut chosen = Vec::new();
    for i in order {
        if chosen.len() == target {
            break;
        }
        if ech.insert(&RelationVector::unit(&comp.gamma, i).entries) {
            chosen.push(unit(comp, i));
        }
    }
    finish(p, comp, chosen)
}

/// A minimal generating set of `Cl₁(ℤP)` by unit vectors of `Γ(P)`.
///
/// For (almost) extra-special groups past the smallest order: index-p
/// components whose images form a basis of `Cl₁(ℤ(P/Φ))`, plus the faithful
/// component when the deflation kernel is nontrivial. Elementary abelian
/// groups and the smallest (almost) extra-special groups use a greedy basis
/// of `Cl₁/p·Cl₁`.
pub fn minimal_generators(g: &FiniteGroup, opts: &Cl1Options) -> Result<MinimalGenerators> {
    let p = g.prime() as u64;
    let k = g.log_order();
    let large = match genetic::classify_special(g) {
        Some(SpecialKind::ExtraSpecial) => k >= 5,
        Some(SpecialKind::AlmostExtraSpecial) => k >= 6,
        None if genetic::is_elementary_abelian(g) => false,
        None => return Err(Error::Unsupported("minimal generators need an elementary abelian, extra-special or almost extra-special group".into())),
    };
    let comp = cl1_compute(g, opts)?;
    if !large {
        return Ok(frattini_greedy(p, &comp));
    }
    let phi = g.frattini().clone();
    let d = deflation_of(g, comp, &phi, opts)?;
    let target = &d.target;
    let mut ech = Echelon::new(p, target.gamma.len());
    for r in &target.relations {
        ech.insert(&r.entries);
    }
    let mut chosen = Vec::new();
    for (j, &i) in d.component_map.iter().enumerate() {
        if chosen.len() == target.invariants.rank() {
            break;
        }
        if target.gamma.components[j].modulus > 1 && ech.insert(&RelationVector::unit(&target.gamma, j).entries) {
            chosen.push(unit(&d.source, i));
        }
    }
    if !d.kernel.is_trivial() {
        let y = d
            .source
            .basis
            .entries
            .iter()
            .position(|e| e.kind == EntryKind::Faithful)
            .ok_or_else(|| Error::Internal("basis has no faithful component".into()))?;
        chosen.push(unit(&d.source, y));
    }
    Ok(finish(p, &d.source, chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn trivial_normal_subgroup() {
        let m = make_m(3).unwrap();
        let d = deflation(&m, &subgroups::trivial(&m), &Cl1Options::default()).unwrap();
        assert!(d.kernel.is_trivial());
        assert!(d.consistent(3));
    }

    #[test]
    fn whole_group() {
        let ea = elementary_abelian(3, 3).unwrap();
        let d = deflation(&ea, &subgroups::whole(&ea), &Cl1Options::default()).unwrap();
        assert_eq!(d.kernel.elementary_rank(), Some(3));
        assert!(d.consistent(3));
    }

    #[test]
    fn subquotient_orders() {
        // Γ = C9 ⊕ C3, R = 0, L = ⟨(3,0),(0,1)⟩ ≅ C3 ⊕ C3.
        let inv = subquotient_invariants(3, &[9, 3], &[], &[vec![3, 0], vec![0, 1]]);
        assert_eq!(inv.factors(), &[3, 3]);
        let inv = subquotient_invariants(3, &[9, 3], &[], &[vec![1, 1]]);
        assert_eq!(inv.factors(), &[9]);
        let inv = subquotient_invariants(3, &[9, 3], &[vec![3, 0]], &[vec![1, 0]]);
        assert_eq!(inv.factors(), &[3]);
    }

    #[test]
    fn small_minimal_generators() {
        let m = make_m(3).unwrap();
        let mg = minimal_generators(&m, &Cl1Options::default()).unwrap();
        assert_eq!(mg.generators.len(), 2);
        assert!(mg.is_minimal());
        assert!(mg.generators.iter().all(|c| c.kind == EntryKind::IndexP));
        let c = cyclic(3, 2).unwrap();
        assert!(matches!(minimal_generators(&c, &Cl1Options::default()), Err(Error::Unsupported(_))));
    }
}
