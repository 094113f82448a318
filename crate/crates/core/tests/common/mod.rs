//! Structural suites shared by the acceptance target and the property tests.
//! Each returns the number of cases checked or a description of the first
//! failure.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whitehead::cl1::{self, smith_quotient, u_vector, Cl1Options, IndexMode, RelationVector};
use whitehead::genetic::{self, GeneticBasis, GeneticEntry, EntryKind};
use whitehead::group::DEFAULT_SEED;
use whitehead::subgroups::{self, RepresentativePolicy};
use whitehead::{Elem, FiniteGroup, GroupSpec, Subgroup};

pub type Outcome = Result<usize, String>;

/// How many cases a sampled suite draws.
pub const SAMPLES: usize = 60;

pub fn group(spec: &str) -> FiniteGroup {
    spec.parse::<GroupSpec>().unwrap().build().unwrap()
}

/// Groups of order at most 27.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    ["C(3,1)", "C(3,2)", "C(3,3)", "EA(3,2)", "EA(3,3)", "M(3)", "N(3)"]
        .into_iter()
        .map(|s| (s, group(s)))
        .collect()
}

/// Groups of order 81 to 243.
pub fn sampled_groups() -> Vec<(&'static str, FiniteGroup)> {
    ["EA(3,4)", "C(3,4)", "AES(3,1)", "ES(3,2,1)", "ES(3,2,2)"]
        .into_iter()
        .map(|s| (s, group(s)))
        .collect()
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(DEFAULT_SEED)
}

fn random_elem(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Elem {
    Elem(rng.gen_range(0..g.order() as u32))
}

fn exhaustive(g: &FiniteGroup) -> bool {
    g.order() <= 27
}

/// Every `(H, g)` with `H` cyclic and `g ∈ C_P(H)`, or a seeded sample.
fn centralizing_pairs(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Vec<(Subgroup, Elem)> {
    if exhaustive(g) {
        let (cyclic, _) = subgroups::cyclic_subgroups(g);
        let mut out = Vec::new();
        for (h, _) in cyclic {
            for x in subgroups::centralizer(g, &h).elements().to_vec() {
                out.push((h.clone(), x));
            }
        }
        out
    } else {
        (0..SAMPLES)
            .map(|_| {
                let h = subgroups::closure(g, &[random_elem(g, rng)]);
                let c = subgroups::centralizer(g, &h);
                let x = *c.elements().choose(rng).unwrap();
                (h, x)
            })
            .collect()
    }
}

fn fail(spec: &str, what: String) -> String {
    format!("{spec}: {what}")
}

fn u(g: &FiniteGroup, basis: &GeneticBasis, h: &Subgroup, x: Elem, opts: &Cl1Options) -> Vec<u64> {
    u_vector(g, basis, h, x, opts).unwrap().entries
}

/// `u(^tH, ^tg) = u(H, g)`.
pub fn conjugation_invariance(spec: &str, g: &FiniteGroup) -> Outcome {
    let mut rng = rng();
    let basis = genetic::genetic_basis(g).unwrap();
    let opts = Cl1Options::default();
    let mut n = 0;
    for (h, x) in centralizing_pairs(g, &mut rng) {
        let base = u(g, &basis, &h, x, &opts);
        let ts: Vec<Elem> = if exhaustive(g) {
            g.elements().collect()
        } else {
            (0..3).map(|_| random_elem(g, &mut rng)).collect()
        };
        for t in ts {
            let ht = subgroups::conjugate_subgroup(g, &h, t);
            if u(g, &basis, &ht, g.conj(x, t), &opts) != base {
                return Err(fail(spec, format!("u changes under conjugation by {t:?} at H = {:?}, g = {x:?}", h.generators())));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// `u(H, h) = 0` for a generator `h` of `H`.
pub fn h_in_kernel(spec: &str, g: &FiniteGroup) -> Outcome {
    let basis = genetic::genetic_basis(g).unwrap();
    let opts = Cl1Options::default();
    let (cyclic, _) = subgroups::cyclic_subgroups(g);
    let mut rng = rng();
    let picked: Vec<(Subgroup, Elem)> = if exhaustive(g) {
        cyclic
    } else {
        (0..SAMPLES).map(|_| cyclic.choose(&mut rng).unwrap().clone()).collect()
    };
    for (h, gen) in &picked {
        if u(g, &basis, h, *gen, &opts).iter().any(|&e| e != 0) {
            return Err(fail(spec, format!("u(H, h) is nonzero for h = {gen:?}")));
        }
    }
    Ok(picked.len())
}

/// The largest-element representative policy gives the same vectors.
pub fn representative_independence(spec: &str, g: &FiniteGroup) -> Outcome {
    let mut rng = rng();
    let basis = genetic::genetic_basis(g).unwrap();
    let smallest = Cl1Options::default();
    let largest = Cl1Options {
        policy: RepresentativePolicy::Largest,
        ..Cl1Options::default()
    };
    let pairs = centralizing_pairs(g, &mut rng);
    for (h, x) in &pairs {
        if u(g, &basis, h, *x, &smallest) != u(g, &basis, h, *x, &largest) {
            return Err(fail(spec, format!("representative choice matters at g = {x:?}")));
        }
    }
    Ok(pairs.len())
}

fn rows(v: &[RelationVector]) -> Vec<Vec<u64>> {
    v.iter().map(|r| r.entries.clone()).collect()
}

/// Using all of `C_P(H)` instead of a generating set modulo `H` leaves the
/// relation subgroup unchanged.
pub fn enlargement_invariance(spec: &str, g: &FiniteGroup) -> Outcome {
    let basis = genetic::genetic_basis(g).unwrap();
    let moduli = basis.moduli();
    let small = rows(&cl1::relation_generators(g, &basis, &Cl1Options::default()).unwrap());
    let opts = Cl1Options {
        enlarge_e_h: true,
        ..Cl1Options::default()
    };
    let big = rows(&cl1::relation_generators(g, &basis, &opts).unwrap());
    let both: Vec<Vec<u64>> = small.iter().chain(&big).cloned().collect();
    let (a, b, c) = (
        smith_quotient(&moduli, &small),
        smith_quotient(&moduli, &big),
        smith_quotient(&moduli, &both),
    );
    if a != c || b != c {
        return Err(fail(spec, format!("quotients differ: {a} / {b} / {c}")));
    }
    Ok(big.len())
}

/// Per-representative and constant index computations agree.
pub fn index_mode_agreement(spec: &str, g: &FiniteGroup) -> Outcome {
    let basis = genetic::genetic_basis(g).unwrap();
    let per_x = cl1::relation_generators(g, &basis, &Cl1Options::default()).unwrap();
    let opts = Cl1Options {
        index_mode: IndexMode::Constant,
        ..Cl1Options::default()
    };
    let constant = cl1::relation_generators(g, &basis, &opts).unwrap();
    if rows(&per_x) != rows(&constant) {
        return Err(fail(spec, "index modes disagree".into()));
    }
    Ok(per_x.len())
}

fn random_subgroup(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let gens: Vec<Elem> = (0..k).map(|_| random_elem(g, rng)).collect();
    subgroups::closure(g, &gens)
}

fn candidate_subgroups(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Vec<Subgroup> {
    if exhaustive(g) {
        subgroups::all_subgroups(g, 27).unwrap()
    } else {
        (0..SAMPLES).map(|_| random_subgroup(g, rng)).collect()
    }
}

/// The one-sided and two-sided genetic conditions agree.
pub fn genetic_conditions_agree(spec: &str, g: &FiniteGroup) -> Outcome {
    let mut rng = rng();
    let cands = candidate_subgroups(g, &mut rng);
    for s in &cands {
        if genetic::is_genetic(g, s) != genetic::is_genetic_two_sided(g, s) {
            return Err(fail(spec, format!("conditions disagree at S = {:?}", s.generators())));
        }
    }
    Ok(cands.len())
}

/// Genetic subgroups to test linkage on: all of them when small, otherwise
/// the basis, its conjugates and sampled genetic subgroups.
fn genetic_pool(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Vec<GeneticEntry> {
    if exhaustive(g) {
        return genetic::genetic_subgroups(g, 27).unwrap();
    }
    let basis = genetic::genetic_basis(g).unwrap();
    let mut pool: Vec<Subgroup> = Vec::new();
    for e in &basis.entries {
        pool.push(e.subgroup.clone());
        for _ in 0..2 {
            pool.push(subgroups::conjugate_subgroup(g, &e.subgroup, random_elem(g, rng)));
        }
    }
    for _ in 0..SAMPLES {
        let s = random_subgroup(g, rng);
        if genetic::is_genetic(g, &s) {
            pool.push(s);
        }
    }
    pool.sort();
    pool.dedup();
    pool.into_iter()
        .map(|s| GeneticEntry::new(g, s, EntryKind::Other).unwrap())
        .collect()
}

/// Linkage is reflexive, symmetric and transitive.
pub fn linked_transitivity(spec: &str, g: &FiniteGroup) -> Outcome {
    let mut rng = rng();
    let pool = genetic_pool(g, &mut rng);
    let n = pool.len();
    let table: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| genetic::linked(g, &pool[i], &pool[j])).collect())
        .collect();
    let mut checked = 0;
    for i in 0..n {
        if !table[i][i] {
            return Err(fail(spec, "linkage is not reflexive".into()));
        }
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return Err(fail(spec, "linkage is not symmetric".into()));
            }
            if !table[i][j] {
                continue;
            }
            for k in 0..n {
                if table[j][k] && !table[i][k] {
                    return Err(fail(spec, format!("linkage is not transitive on entries {i}, {j}, {k}")));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

pub type Suite = fn(&str, &FiniteGroup) -> Outcome;

/// The structural suites, by name.
pub fn structural_suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("u-vector conjugation invariance", conjugation_invariance as Suite),
        ("H in kernel", h_in_kernel),
        ("representative independence", representative_independence),
        ("E_H enlargement", enlargement_invariance),
        ("linked transitivity", linked_transitivity),
        ("genetic conditions agree", genetic_conditions_agree),
    ]
}

/// Runs `suite` on every small and sampled group.
pub fn run_everywhere(suite: Suite) -> Outcome {
    let mut total = 0;
    for (spec, g) in small_groups().iter().chain(sampled_groups().iter()) {
        total += suite(spec, g)?;
    }
    Ok(total)
}

/// Groups with an (almost) extra-special basis.
pub fn special_groups() -> Vec<(&'static str, FiniteGroup)> {
    ["M(3)", "N(3)", "AES(3,1)", "ES(3,2,1)", "ES(3,2,2)", "AES(3,2)"]
        .into_iter()
        .map(|s| (s, group(s)))
        .collect()
}
