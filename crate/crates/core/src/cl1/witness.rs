//! The element `w = u_{1,g}⁻¹ ∏_α u_{H_α,g}` of the deflation kernel for
//! extra-special groups of order `p^5` and exponent `p²` and almost
//! extra-special groups of order `p^6`.

use serde::{Deserialize, Serialize};

use super::{u_vector, Cl1Options, RelationVector};
use crate::error::{Error, Result};
use crate::genetic::{self, EntryKind, GeneticBasis, SpecialKind};
use crate::group::{Elem, FiniteGroup};
use crate::subgroups::{self, Subgroup};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessData {
    /// Generator of the cyclic factor `C ≥ Z` of `X`.
    pub g: Elem,
    pub a: Elem,
    pub b: Elem,
    /// Generators of `H_0, …, H_{p−1}, H_∞`.
    pub h_generators: Vec<Elem>,
    pub w: RelationVector,
    /// Every index-p component of `w` vanishes.
    pub hyperplanes_vanish: bool,
    /// `w_Y` as a discrete log in `N_P(Y)/Y`.
    pub w_y: u64,
    /// Discrete log of `g^p Y`.
    pub expected_w_y: u64,
    /// Order of `w_Y` in `N_P(Y)/Y`.
    pub w_y_order: u64,
    pub y_modulus: u64,
}

impl WitnessData {
    pub fn matches(&self) -> bool {
        self.hyperplanes_vanish && self.w_y == self.expected_w_y
    }
}

/// Abelian `X ≥ start` with `X ∩ Y = 1`, `|X||Y| = |P|` and `C_P(X) = X`.
fn find_x(g: &FiniteGroup, start: &Subgroup, y: &Subgroup) -> Option<Subgroup> {
    let target = g.order() / y.order();
    let candidates: Vec<Elem> = g.elements().filter(|&e| !y.contains(e)).collect();
    fn dfs(g: &FiniteGroup, cands: &[Elem], from: usize, x: &Subgroup, y: &Subgroup, target: usize) -> Option<Subgroup> {
        if x.order() == target {
            return (subgroups::centralizer(g, x) == *x).then(|| x.clone());
        }
        for (i, &e) in cands.iter().enumerate().skip(from) {
            if x.contains(e) || x.generators().iter().any(|&s| g.mul(s, e) != g.mul(e, s)) {
                continue;
            }
            let next = subgroups::join(g, x, &[e]);
            if next.order() > target || !next.meets_trivially(y) {
                continue;
            }
            if let Some(found) = dfs(g, cands, i + 1, &next, y, target) {
                return Some(found);
            }
        }
        None
    }
    if !start.meets_trivially(y) {
        return None;
    }
    dfs(g, &candidates, 0, start, y, target)
}

fn commute(g: &FiniteGroup, a: Elem, b: Elem) -> bool {
    g.mul(a, b) == g.mul(b, a)
}

/// `(g, a, b)` for a basis with faithful entry `y`.
fn find_elements(g: &FiniteGroup, y: &Subgroup, kind: SpecialKind) -> Option<(Elem, Elem, Elem)> {
    let p = g.prime() as u64;
    let z = g.center();
    let gens: Vec<Elem> = match kind {
        SpecialKind::AlmostExtraSpecial => z.elements().iter().copied().filter(|&e| g.order_of(e) == p * p).collect(),
        SpecialKind::ExtraSpecial => g.elements().filter(|&e| g.order_of(e) == p * p).collect(),
    };
    for gg in gens {
        let c = subgroups::join(g, z, &[gg]);
        let Some(x) = find_x(g, &c, y) else { continue };
        let Some(b) = y.elements().iter().copied().find(|&b| b != Elem::IDENTITY && commute(g, b, gg)) else {
            continue;
        };
        let a = x.elements().iter().copied().find(|&a| {
            g.order_of(a) == p && !c.contains(a) && !commute(g, a, b)
        });
        if let Some(a) = a {
            return Some((gg, a, b));
        }
    }
    None
}

/// Builds `w` and reports its components.
pub fn witness_w(g: &FiniteGroup, opts: &Cl1Options) -> Result<WitnessData> {
    let kind = genetic::classify_special(g);
    let k = g.log_order();
    let p = g.prime() as u64;
    let in_scope = match kind {
        Some(SpecialKind::ExtraSpecial) => k == 5 && g.exponent() == p * p,
        Some(SpecialKind::AlmostExtraSpecial) => k == 6,
        None => false,
    };
    if !in_scope {
        return Err(Error::Contract(
            "the witness needs an extra-special group of order p^5 and exponent p^2 or an almost extra-special group of order p^6".into(),
        ));
    }
    let basis: GeneticBasis = genetic::genetic_basis_es_aes(g)?;
    let yi = basis
        .entries
        .iter()
        .position(|e| e.kind == EntryKind::Faithful)
        .ok_or_else(|| Error::Internal("basis has no faithful component".into()))?;
    let y_entry = &basis.entries[yi];
    let (gg, a, b) = find_elements(g, &y_entry.subgroup, kind.unwrap())
        .ok_or_else(|| Error::Contract("no elements a, b with the required properties".into()))?;

    let mut h_generators: Vec<Elem> = (0..p).map(|alpha| g.mul(a, g.pow(b, alpha as i64))).collect();
    h_generators.push(b);
    let moduli = basis.moduli();
    let mut w = RelationVector::zero(moduli.len());
    w.add_scaled(&u_vector(g, &basis, &subgroups::trivial(g), gg, opts)?, -1, &moduli);
    for &h in &h_generators {
        let u = u_vector(g, &basis, &subgroups::closure(g, &[h]), gg, opts)?;
        w.add_scaled(&u, 1, &moduli);
    }
    let hyperplanes_vanish = basis
        .entries
        .iter()
        .zip(&w.entries)
        .all(|(e, &x)| e.kind != EntryKind::IndexP || x == 0);
    let y_modulus = y_entry.modulus();
    let w_y = w.entries[yi];
    let expected_w_y = y_entry
        .quotient
        .dlog(g.pow(gg, p as i64))
        .ok_or_else(|| Error::Internal("g^p outside N_P(Y)".into()))? as u64;
    let w_y_order = y_modulus / gcd(w_y, y_modulus);
    Ok(WitnessData {
        g: gg,
        a,
        b,
        h_generators,
        w,
        hyperplanes_vanish,
        w_y,
        expected_w_y,
        w_y_order,
        y_modulus,
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn out_of_scope() {
        let m = make_m(3).unwrap();
        assert!(matches!(witness_w(&m, &Cl1Options::default()), Err(Error::Contract(_))));
        let es = extra_special(3, 2, false).unwrap();
        assert!(matches!(witness_w(&es, &Cl1Options::default()), Err(Error::Contract(_))));
    }

    #[test]
    fn es_exponent_p2() {
        let es = extra_special(3, 2, true).unwrap();
        let w = witness_w(&es, &Cl1Options::default()).unwrap();
        assert!(w.matches());
        assert_eq!((w.y_modulus, w.w_y_order), (3, 3));
    }
}
