//! Degree-p part of the symmetric algebra over F_p: the elements
//! `B_{x,y} = x^{p−1}y`, evaluation at linear functionals, alternating forms
//! and the map `r : S^p(W) → ∏_Q F_p`. Serves as an oracle for the relation
//! subgroup of elementary abelian groups.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cl1::{cl1_compute, Cl1Options};
use crate::constructors;
use crate::error::{Error, Result};
use crate::formulas::{is_prime, sym_dim};
use crate::genetic::{self, EntryKind};
use crate::group::FiniteGroup;
use crate::linalg::Echelon;
use crate::subgroups::{normalized_functionals, FrattiniCoordinates};

/// Largest `p^k` accepted by the enumerating operations.
pub const ORACLE_BOUND: usize = 3125;

fn check_bound(p: u64, k: usize) -> Result<()> {
    if !is_prime(p) || p == 2 {
        return Err(Error::UnsupportedPrime(p));
    }
    let size = (p as u128).pow(k as u32);
    if size > ORACLE_BOUND as u128 {
        return Err(Error::SizeExceeded {
            order: size.min(usize::MAX as u128) as usize,
            bound: ORACLE_BOUND,
            hint: "; oracle enumerations cover p^k <= 3125",
        });
    }
    Ok(())
}

/// Exponent vectors of total degree `d` in `k` variables, graded
/// lexicographic (`x₁^d` first).
pub fn monomials(k: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == k {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(k, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Element of `S^p(F_p^k)` as coefficients on [`monomials`]`(k, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousPoly {
    pub p: u64,
    pub k: usize,
    pub coeffs: Vec<u64>,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl HomogeneousPoly {
    pub fn zero(p: u64, k: usize) -> Self {
        HomogeneousPoly {
            p,
            k,
            coeffs: vec![0; sym_dim(p, k as u64) as usize],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Product of `p` linear forms, each a coefficient vector in `F_p^k`.
    pub fn product_of_linear(p: u64, forms: &[&[u64]]) -> Self {
        let k = forms.first().map_or(0, |f| f.len());
        assert_eq!(forms.len() as u64, p, "degree must be p");
        let mut acc: HashMap<Vec<u32>, u64> = HashMap::from([(vec![0u32; k], 1)]);
        for f in forms {
            let mut next: HashMap<Vec<u32>, u64> = HashMap::new();
            for (m, c) in &acc {
                for (i, &a) in f.iter().enumerate() {
                    if a % p == 0 {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[i] += 1;
                    let e = next.entry(m2).or_insert(0);
                    *e = (*e + c * (a % p)) % p;
                }
            }
            acc = next;
        }
        let index: HashMap<Vec<u32>, usize> = monomials(k, p as u32).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = HomogeneousPoly::zero(p, k);
        for (m, c) in acc {
            out.coeffs[index[&m]] = c;
        }
        out
    }

    /// `self + λ·other`.
    pub fn add_scaled(&mut self, other: &HomogeneousPoly, lambda: i64) {
        let p = self.p as i64;
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = ((*a as i64 + lambda.rem_euclid(p) * b as i64) % p) as u64;
        }
    }

    /// `A(ψ) = A(ψ(x₁), …, ψ(x_k))`.
    pub fn evaluate(&self, psi: &[u64]) -> u64 {
        let p = self.p;
        monomials(self.k, p as u32)
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| {
                m.iter()
                    .zip(psi)
                    .fold(c, |acc, (&e, &v)| acc * pow_mod(v, e as u64, p) % p)
            })
            .sum::<u64>()
            % p
    }
}

/// `B_{x,y} = x^{p−1}y`.
pub fn b_monomial(p: u64, x: &[u64], y: &[u64]) -> HomogeneousPoly {
    let mut forms: Vec<&[u64]> = vec![x; p as usize - 1];
    forms.push(y);
    HomogeneousPoly::product_of_linear(p, &forms)
}

/// All vectors of `F_p^k`, lexicographic.
pub fn vectors(p: u64, k: usize) -> Vec<Vec<u64>> {
    let count = p.pow(k as u32);
    (0..count)
        .map(|mut idx| {
            let mut v = vec![0u64; k];
            for slot in v.iter_mut().rev() {
                *slot = idx % p;
                idx /= p;
            }
            v
        })
        .collect()
}

fn span_rank<'a>(p: u64, k: usize, pairs: impl Iterator<Item = (&'a Vec<u64>, &'a Vec<u64>)>) -> usize {
    let dim = sym_dim(p, k as u64) as usize;
    let mut ech = Echelon::new(p, dim);
    for (x, y) in pairs {
        ech.insert(&b_monomial(p, x, y).coeffs);
        if ech.rank() == dim {
            break;
        }
    }
    ech.rank()
}

/// Rank of `{B_{x,y} : x, y ∈ F_p^k}`.
pub fn span_rank_all_pairs(p: u64, k: usize) -> Result<usize> {
    check_bound(p, k)?;
    let vs = vectors(p, k);
    Ok(span_rank(p, k, vs.iter().flat_map(|x| vs.iter().map(move |y| (x, y)))))
}

/// Alternating form on `F_p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    pub p: u64,
    pub matrix: Vec<Vec<u64>>,
}

impl BilinearForm {
    pub fn new(p: u64, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let k = matrix.len();
        if matrix.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidParameter("form matrix must be square".into()));
        }
        let matrix: Vec<Vec<u64>> = matrix.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        for i in 0..k {
            if matrix[i][i] != 0 || (0..k).any(|j| (matrix[i][j] + matrix[j][i]) % p != 0) {
                return Err(Error::InvalidParameter("form is not alternating".into()));
            }
        }
        Ok(BilinearForm { p, matrix })
    }

    pub fn zero(p: u64, k: usize) -> Self {
        BilinearForm {
            p,
            matrix: vec![vec![0; k]; k],
        }
    }

    /// `Σ_{i<rank/2} e_{2i}^* ∧ e_{2i+1}^*` on `F_p^k`.
    pub fn standard(p: u64, k: usize, rank: usize) -> Result<Self> {
        if rank % 2 != 0 || rank > k {
            return Err(Error::InvalidParameter("rank must be even and at most k".into()));
        }
        let mut m = vec![vec![0; k]; k];
        for i in 0..rank / 2 {
            m[2 * i][2 * i + 1] = 1;
            m[2 * i + 1][2 * i] = p - 1;
        }
        BilinearForm::new(p, m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn eval(&self, x: &[u64], y: &[u64]) -> u64 {
        let p = self.p;
        let mut s = 0;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                s = (s + x[i] * b % p * y[j]) % p;
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank_mod_p(self.p, self.dim(), &self.matrix)
    }

    pub fn radical_dim(&self) -> usize {
        self.dim() - self.rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim()
    }
}

/// Rank of `{B_{x,y} : b(x,y) = 0}`.
pub fn span_rank_isotropic_pairs(b: &BilinearForm) -> Result<usize> {
    let (p, k) = (b.p, b.dim());
    check_bound(p, k)?;
    let vs = vectors(p, k);
    Ok(span_rank(
        p,
        k,
        vs.iter()
            .flat_map(|x| vs.iter().map(move |y| (x, y)))
            .filter(|(x, y)| b.eval(x, y) == 0),
    ))
}

/// The commutator form on `P/Φ(P)`: `[u, v] = z^{b(u,v)}` for the least
/// generator `z` of `P'`.
pub fn commutator_form(g: &FiniteGroup) -> Result<BilinearForm> {
    if genetic::classify_special(g).is_none() {
        return Err(Error::Contract("commutator form needs an extra-special or almost extra-special group".into()));
    }
    let p = g.prime() as u64;
    let d = g.derived_subgroup();
    let z = d.elements()[1];
    let dlog = |x| -> Result<u64> {
        (0..p)
            .find(|&k| g.pow(z, k as i64) == x)
            .ok_or_else(|| Error::Internal("commutator outside the derived subgroup".into()))
    };
    let fc = FrattiniCoordinates::new(g);
    let basis = &fc.basis;
    let mut m = vec![vec![0u64; basis.len()]; basis.len()];
    for (i, &a) in basis.iter().enumerate() {
        for (j, &b) in basis.iter().enumerate() {
            m[i][j] = dlog(g.comm(a, b))?;
        }
    }
    BilinearForm::new(p, m)
}

/// Matrix of `r`: rows are the monomials of `S^p(F_p^k)`, columns the
/// hyperplanes `Q` through their normalized functionals `ψ_Q`, entries
/// `A(ψ_Q)`. Its row space is the image of `r`.
pub fn r_matrix(p: u64, k: usize) -> Result<Vec<Vec<u64>>> {
    check_bound(p, k)?;
    let functionals: Vec<Vec<u64>> = normalized_functionals(p as u32, k)
        .into_iter()
        .map(|f| f.into_iter().map(u64::from).collect())
        .collect();
    let dim = sym_dim(p, k as u64) as usize;
    Ok((0..dim)
        .map(|i| {
            let mut a = HomogeneousPoly::zero(p, k);
            a.coeffs[i] = 1;
            functionals.iter().map(|psi| a.evaluate(psi)).collect()
        })
        .collect())
}

/// Rank of the evaluation map from `S^p(F_p^k)` to functions on `F_p^k`:
/// full rank means only the zero polynomial vanishes everywhere.
pub fn evaluation_rank(p: u64, k: usize) -> Result<usize> {
    check_bound(p, k)?;
    let points = vectors(p, k);
    let dim = sym_dim(p, k as u64) as usize;
    let mut ech = Echelon::new(p, points.len());
    for i in 0..dim {
        let mut a = HomogeneousPoly::zero(p, k);
        a.coeffs[i] = 1;
        ech.insert(&points.iter().map(|x| a.evaluate(x)).collect::<Vec<_>>());
    }
    Ok(ech.rank())
}

/// Comparison of the relation subgroup of `(C_p)^k` with the image of `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub p: u64,
    pub k: usize,
    pub relation_rank: usize,
    pub r_rank: usize,
    pub expected_rank: usize,
    pub same_space: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.same_space && self.relation_rank == self.expected_rank && self.r_rank == self.expected_rank
    }
}

/// Relation vectors of `(C_p)^k` rewritten in the coordinates `ψ_Q`
/// (hyperplane components only, ordered like the columns of [`r_matrix`]).
pub fn relations_in_functional_coordinates(p: u64, k: usize) -> Result<Vec<Vec<u64>>> {
    check_bound(p, k)?;
    let g = constructors::elementary_abelian(p as u32, k as u32)?;
    let comp = cl1_compute(&g, &Cl1Options::default())?;
    let fc = FrattiniCoordinates::new(&g);
    let functionals = normalized_functionals(p as u32, k);
    // column and scale for each hyperplane component
    let mut placement = Vec::new();
    for (i, e) in comp.basis.entries.iter().enumerate() {
        if e.kind != EntryKind::IndexP {
            continue;
        }
        let col = functionals
            .iter()
            .position(|psi| e.subgroup.generators().iter().all(|&x| fc.evaluate(psi, x) == 0))
            .ok_or_else(|| Error::Internal("hyperplane without functional".into()))?;
        let scale = fc.evaluate(&functionals[col], e.quotient.generator) as u64;
        placement.push((i, col, scale));
    }
    Ok(comp
        .relations
        .iter()
        .map(|r| {
            let mut v = vec![0u64; functionals.len()];
            for &(i, col, scale) in &placement {
                v[col] = r.entries[i] * scale % p;
            }
            v
        })
        .collect())
}

/// The relation span of `(C_p)^k` against the row space of [`r_matrix`].
pub fn compare_with_relations(p: u64, k: usize) -> Result<OracleReport> {
    let r = r_matrix(p, k)?;
    let width = r.first().map_or(0, |row| row.len());
    let mut image = Echelon::new(p, width);
    for row in &r {
        image.insert(row);
    }
    let mut rel = Echelon::new(p, width);
    for row in relations_in_functional_coordinates(p, k)? {
        rel.insert(&row);
    }
    Ok(OracleReport {
        p,
        k,
        relation_rank: rel.rank(),
        r_rank: image.rank(),
        expected_rank: sym_dim(p, k as u64) as usize,
        same_space: rel.same_space(&image),
    })
}

/// Integer polynomial in `n` variables, sparse.
type IntPoly = HashMap<Vec<u32>, i128>;

fn int_power_of_sum(n: usize, vars: &[usize], e: u32) -> IntPoly {
    let mut acc: IntPoly = HashMap::from([(vec![0u32; n], 1)]);
    for _ in 0..e {
        let mut next: IntPoly = HashMap::new();
        for (m, c) in &acc {
            for &v in vars {
                let mut m2 = m.clone();
                m2[v] += 1;
                *next.entry(m2).or_insert(0) += c;
            }
        }
        acc = next;
    }
    acc
}

/// `Σ_{∅≠A⊆{1..n}} (−1)^{n−|A|} (Σ_{i∈A} x_i)^n = n!·x₁⋯x_n` over ℤ.
pub fn multinomial_identity_holds(n: usize) -> bool {
    let mut total: IntPoly = HashMap::new();
    for mask in 1u32..(1 << n) {
        let vars: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sign = if (n - vars.len()) % 2 == 0 { 1 } else { -1 };
        for (m, c) in int_power_of_sum(n, &vars, n as u32) {
            *total.entry(m).or_insert(0) += sign * c;
        }
    }
    total.retain(|_, c| *c != 0);
    let factorial: i128 = (1..=n as i128).product();
    total.len() == 1 && total.get(&vec![1u32; n]) == Some(&factorial)
}

/// `Σ_{∅≠A⊆{1..p−1}} (−1)^{p−|A|} B_{Σ_{i∈A} x_i, x_p} = x₁⋯x_p` in
/// `S^p(F_p^p)`.
pub fn b_combination_identity_holds(p: u64) -> bool {
    let n = p as usize;
    let unit = |i: usize| -> Vec<u64> { (0..n).map(|j| u64::from(i == j)).collect() };
    let mut total = HomogeneousPoly::zero(p, n);
    for mask in 1u32..(1 << (n - 1)) {
        let x: Vec<u64> = (0..n).map(|j| u64::from(j < n - 1 && mask & (1 << j) != 0)).collect();
        let size = mask.count_ones() as u64;
        let sign = if (p - size) % 2 == 0 { 1 } else { -1 };
        total.add_scaled(&b_monomial(p, &x, &unit(n - 1)), sign);
    }
    let forms: Vec<Vec<u64>> = (0..n).map(unit).collect();
    let refs: Vec<&[u64]> = forms.iter().map(|f| f.as_slice()).collect();
    total == HomogeneousPoly::product_of_linear(p, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(4, 5).len() as u128, sym_dim(5, 4));
    }

    #[test]
    fn b_monomial_examples() {
        assert!(b_monomial(3, &[0, 0], &[1, 2]).is_zero());
        assert_eq!(b_monomial(3, &[1], &[1]).coeffs, vec![1]);
        // x₁²x₂ is the second monomial of degree 3 in two variables.
        assert_eq!(b_monomial(3, &[1, 0], &[0, 1]).coeffs, vec![0, 1, 0, 0]);
    }

    #[test]
    fn evaluation_examples() {
        let a = b_monomial(3, &[1, 0], &[0, 1]);
        assert_eq!(a.evaluate(&[1, 2]), 2);
        assert_eq!(a.evaluate(&[0, 2]), 0);
        assert_eq!(HomogeneousPoly::zero(3, 2).evaluate(&[1, 1]), 0);
    }

    #[test]
    fn span_ranks() {
        assert_eq!(span_rank_all_pairs(3, 1).unwrap(), 1);
        assert_eq!(span_rank_all_pairs(3, 2).unwrap(), 4);
        assert_eq!(span_rank_isotropic_pairs(&BilinearForm::zero(3, 2)).unwrap(), 4);
        assert_eq!(span_rank_isotropic_pairs(&BilinearForm::standard(3, 2, 2).unwrap()).unwrap(), 2);
        assert!(matches!(span_rank_all_pairs(3, 9), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn forms_of_small_groups() {
        let b = commutator_form(&make_m(3).unwrap()).unwrap();
        assert_eq!((b.dim(), b.rank()), (2, 2));
        let b = commutator_form(&almost_extra_special(3, 1).unwrap()).unwrap();
        assert_eq!((b.dim(), b.rank(), b.radical_dim()), (3, 2, 1));
        let b = commutator_form(&extra_special(3, 2, false).unwrap()).unwrap();
        assert!(b.is_nondegenerate() && b.dim() == 4);
        assert!(commutator_form(&elementary_abelian(3, 2).unwrap()).is_err());
        assert!(BilinearForm::new(3, vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn r_matrix_small() {
        let r = r_matrix(3, 1).unwrap();
        assert_eq!(r.len(), 1);
        assert_ne!(r[0][0], 0);
        assert_eq!(crate::linalg::rank_mod_p(3, 13, &r_matrix(3, 3).unwrap()), 10);
    }

    #[test]
    fn identities() {
        assert!(multinomial_identity_holds(3));
        assert!(multinomial_identity_holds(5));
        assert!(b_combination_identity_holds(3));
        assert!(b_combination_identity_holds(5));
    }

    #[test]
    fn oracle_agrees_at_rank_three() {
        assert!(compare_with_relations(3, 3).unwrap().passed());
    }
}
