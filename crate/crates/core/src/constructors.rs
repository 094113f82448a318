//! The group families: cyclic, elementary abelian, the two extra-special
//! groups of order p³, central products, extra-special and almost
//! extra-special groups, plus the `GroupSpec` grammar used by the CLI.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::{is_prime, Family};
use crate::group::{Elem, FiniteGroup, DEFAULT_MAX_ORDER};
use crate::pc::PcPresentation;
use crate::subgroups::{self, Subgroup};

fn check_prime(p: u32) -> Result<()> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::UnsupportedPrime(p as u64));
    }
    Ok(())
}

fn check_size(p: u32, log: u32, max_order: usize) -> Result<()> {
    let order = (p as usize).checked_pow(log);
    match order {
        Some(o) if o <= max_order => Ok(()),
        _ => Err(Error::SizeExceeded {
            order: order.unwrap_or(usize::MAX),
            bound: max_order,
            hint: "; raise --max-order",
        }),
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Trivial conjugation relations for `n` generators.
fn commuting(n: usize) -> Vec<Vec<Vec<u32>>> {
    (0..n).map(|_| (0..n).map(|j| unit(n, j)).collect()).collect()
}

/// `C_{p^n}`.
pub fn cyclic(p: u32, n: u32) -> Result<FiniteGroup> {
    cyclic_bounded(p, n, DEFAULT_MAX_ORDER)
}

pub fn cyclic_bounded(p: u32, n: u32, max_order: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    check_size(p, n, max_order)?;
    let n = n as usize;
    let powers = (0..n)
        .map(|i| if i + 1 < n { unit(n, i + 1) } else { vec![0; n] })
        .collect();
    let pc = PcPresentation::new(p, powers, commuting(n))?;
    FiniteGroup::from_presentation_bounded(pc, max_order)
}

/// `(C_p)^k`.
pub fn elementary_abelian(p: u32, k: u32) -> Result<FiniteGroup> {
    elementary_abelian_bounded(p, k, DEFAULT_MAX_ORDER)
}

pub fn elementary_abelian_bounded(p: u32, k: u32, max_order: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    check_size(p, k, max_order)?;
    FiniteGroup::from_presentation_bounded(PcPresentation::elementary_abelian(p, k as usize), max_order)
}

/// Extra-special group of order `p³` and exponent `p`, on pc generators
/// `x, y, z` with `y^x = y z` and `z` central.
pub fn make_m(p: u32) -> Result<FiniteGroup> {
    heisenberg_like(p, false)
}

/// Extra-special group of order `p³` and exponent `p²`: pc generators
/// `x, y, x^p` with `^y x = x^{1+p}`.
pub fn make_n(p: u32) -> Result<FiniteGroup> {
    heisenberg_like(p, true)
}

fn heisenberg_like(p: u32, big_x: bool) -> Result<FiniteGroup> {
    check_prime(p)?;
    let mut powers = vec![vec![0; 3]; 3];
    if big_x {
        powers[0] = unit(3, 2);
    }
    let mut conj = commuting(3);
    conj[0][1] = vec![0, 1, 1];
    let pc = PcPresentation::new(p, powers, conj)?;
    FiniteGroup::from_presentation_bounded(pc, usize::MAX)
}

/// Identification of a central subgroup `M ≤ Z(H)` with a subgroup of
/// `Z(K)`, given on generators `m ↦ θ(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralAmalgam {
    pub pairs: Vec<(Elem, Elem)>,
}

impl CentralAmalgam {
    pub fn new(pairs: Vec<(Elem, Elem)>) -> Self {
        CentralAmalgam { pairs }
    }
}

/// Pairs `(a, b)` of `H × K`, indexed `a |K| + b`.
struct PairArith<'a> {
    h: &'a FiniteGroup,
    k: &'a FiniteGroup,
}

impl PairArith<'_> {
    fn index(&self, a: Elem, b: Elem) -> usize {
        a.index() * self.k.order() + b.index()
    }

    fn split(&self, i: usize) -> (Elem, Elem) {
        (Elem((i / self.k.order()) as u32), Elem((i % self.k.order()) as u32))
    }

    fn mul(&self, i: usize, j: usize) -> usize {
        let (a1, b1) = self.split(i);
        let (a2, b2) = self.split(j);
        self.index(self.h.mul(a1, a2), self.k.mul(b1, b2))
    }

    /// Table of `(H × K)/D` for a central subgroup `D` given by its elements.
    fn quotient(&self, d: &[usize]) -> Result<FiniteGroup> {
        let total = self.h.order() * self.k.order();
        let mut coset = vec![u32::MAX; total];
        let mut reps = Vec::new();
        for i in 0..total {
            if coset[i] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(i);
            for &x in d {
                coset[self.mul(i, x)] = c;
            }
        }
        let m = reps.len();
        let mut table = vec![0u32; m * m];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                table[a * m + b] = coset[self.mul(ra, rb)];
            }
        }
        let mut gens: Vec<Elem> = self
            .h
            .generators()
            .iter()
            .map(|&a| coset[self.index(a, Elem::IDENTITY)])
            .chain(
                self.k
                    .generators()
                    .iter()
                    .map(|&b| coset[self.index(Elem::IDENTITY, b)]),
            )
            .filter(|&c| c != 0)
            .map(Elem)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        FiniteGroup::from_table(self.h.prime(), table, gens)
    }
}

/// `H × K`.
pub fn direct_product(h: &FiniteGroup, k: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_bounded(h, k, DEFAULT_MAX_ORDER)
}

pub fn direct_product_bounded(h: &FiniteGroup, k: &FiniteGroup, max_order: usize) -> Result<FiniteGroup> {
    if h.prime() != k.prime() {
        return Err(Error::InvalidParameter("factors for different primes".into()));
    }
    check_size(h.prime(), h.log_order() + k.log_order(), max_order)?;
    let table = PairArith { h, k }.quotient(&[0])?;
    polycyclic_copy(&table, max_order)
}

/// `(H × K)/{(m, θ(m)^{-1})}`.
pub fn central_product(h: &FiniteGroup, k: &FiniteGroup, theta: &CentralAmalgam) -> Result<FiniteGroup> {
    central_product_bounded(h, k, theta, DEFAULT_MAX_ORDER)
}

pub fn central_product_bounded(
    h: &FiniteGroup,
    k: &FiniteGroup,
    theta: &CentralAmalgam,
    max_order: usize,
) -> Result<FiniteGroup> {
    if h.prime() != k.prime() {
        return Err(Error::InvalidParameter("factors for different primes".into()));
    }
    let arith = PairArith { h, k };
    for &(m, t) in &theta.pairs {
        if m.index() >= h.order() || t.index() >= k.order() {
            return Err(Error::Contract("amalgam element out of range".into()));
        }
        if !h.center().contains(m) {
            return Err(Error::Contract("amalgamated subgroup is not central in H".into()));
        }
        if !k.center().contains(t) {
            return Err(Error::Contract("image of the amalgam is not central in K".into()));
        }
    }
    // D = <(m, θ(m)^{-1})>; θ is a well defined injective map iff D meets
    // both factors trivially.
    let seeds: Vec<usize> = theta
        .pairs
        .iter()
        .map(|&(m, t)| arith.index(m, k.inv(t)))
        .collect();
    let mut d = vec![0usize];
    let mut seen = FixedBitSet::with_capacity(h.order() * k.order());
    seen.insert(0);
    let mut head = 0;
    while head < d.len() {
        let x = d[head];
        head += 1;
        for &s in &seeds {
            let y = arith.mul(x, s);
            if !seen.put(y) {
                d.push(y);
            }
        }
    }
    if d.len() == 1 {
        return Err(Error::Contract(
            "trivial amalgam; use direct_product for H × K".into(),
        ));
    }
    for &x in &d[1..] {
        let (a, b) = arith.split(x);
        if a == Elem::IDENTITY || b == Elem::IDENTITY {
            return Err(Error::Contract("amalgam map is not injective".into()));
        }
    }
    let order = h.order() * k.order() / d.len();
    if order > max_order {
        return Err(Error::SizeExceeded {
            order,
            bound: max_order,
            hint: "; raise --max-order",
        });
    }
    let table = arith.quotient(&d)?;
    polycyclic_copy(&table, max_order)
}

/// A polycyclic presentation of `g`, read off a pcgs refining the lower
/// exponent-p central series, and the group it presents.
pub fn polycyclic_copy(g: &FiniteGroup, max_order: usize) -> Result<FiniteGroup> {
    let p = g.prime();
    let all_gens = g.generators().to_vec();
    let mut layer = subgroups::whole(g);
    let mut pcgs: Vec<Elem> = Vec::new();
    while !layer.is_trivial() {
        let mut seed: Vec<Elem> = Vec::new();
        for &x in layer.generators() {
            for &t in &all_gens {
                seed.push(g.comm(x, t));
            }
        }
        seed.extend(layer.elements().iter().map(|&x| g.pow(x, p as i64)));
        let next = subgroups::normal_closure(g, &all_gens, &seed);
        let mut current = next.clone();
        for &x in layer.elements() {
            if current.order() == layer.order() {
                break;
            }
            if !current.contains(x) {
                pcgs.push(x);
                current = subgroups::join(g, &current, &[x]);
            }
        }
        layer = next;
    }
    let n = pcgs.len();
    // tails[i] = <g_i, ..., g_{n-1}>
    let mut tails: Vec<Subgroup> = vec![subgroups::trivial(g); n + 1];
    for i in (0..n).rev() {
        tails[i] = subgroups::join(g, &tails[i + 1], &[pcgs[i]]);
    }
    let sift = |mut x: Elem| -> Result<Vec<u32>> {
        let mut v = vec![0u32; n];
        for i in 0..n {
            let inv = g.inv(pcgs[i]);
            let mut e = 0;
            while !tails[i + 1].contains(x) {
                x = g.mul(inv, x);
                e += 1;
                if e >= p {
                    return Err(Error::Internal("element outside the pcgs span".into()));
                }
            }
            v[i] = e;
        }
        Ok(v)
    };
    let powers = pcgs
        .iter()
        .map(|&x| sift(g.pow(x, p as i64)))
        .collect::<Result<Vec<_>>>()?;
    let mut conj = commuting(n);
    for i in 0..n {
        for j in i + 1..n {
            let c = g.mul(g.inv(pcgs[i]), g.mul(pcgs[j], pcgs[i]));
            conj[i][j] = sift(c)?;
        }
    }
    let pc = PcPresentation::new(p, powers, conj)?;
    FiniteGroup::from_presentation_bounded(pc, max_order)
}

fn least_nontrivial(s: &Subgroup) -> Elem {
    s.elements()[1]
}

/// Extra-special group of order `p^{2r+1}`: `M(p)^{*r}` for exponent `p`,
/// `N(p) * M(p)^{*(r-1)}` for exponent `p²`.
pub fn extra_special(p: u32, r: u32, exponent_p2: bool) -> Result<FiniteGroup> {
    extra_special_bounded(p, r, exponent_p2, DEFAULT_MAX_ORDER)
}

pub fn extra_special_bounded(p: u32, r: u32, exponent_p2: bool, max_order: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    if r == 0 {
        return Err(Error::InvalidParameter("extra-special rank r must be at least 1".into()));
    }
    check_size(p, 2 * r + 1, max_order)?;
    let m = make_m(p)?;
    let mut acc = if exponent_p2 { make_n(p)? } else { m.clone() };
    for _ in 1..r {
        let theta = CentralAmalgam::new(vec![(least_nontrivial(acc.center()), least_nontrivial(m.center()))]);
        acc = central_product_bounded(&acc, &m, &theta, max_order)?;
    }
    Ok(acc)
}

/// Almost extra-special group `M(p)^{*r} * C_{p²}` of order `p^{2r+2}`.
pub fn almost_extra_special(p: u32, r: u32) -> Result<FiniteGroup> {
    almost_extra_special_bounded(p, r, DEFAULT_MAX_ORDER)
}

pub fn almost_extra_special_bounded(p: u32, r: u32, max_order: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    if r == 0 {
        return Err(Error::InvalidParameter("almost extra-special rank r must be at least 1".into()));
    }
    check_size(p, 2 * r + 2, max_order)?;
    let es = extra_special_bounded(p, r, false, max_order)?;
    let c = cyclic(p, 2)?;
    let c_p = c.pow(c.generators()[0], p as i64);
    let theta = CentralAmalgam::new(vec![(least_nontrivial(es.center()), c_p)]);
    central_product_bounded(&es, &c, &theta, max_order)
}

/// A group from the families above, written `C(p,n)`, `EA(p,k)`, `M(p)`,
/// `N(p)`, `ES(p,r,e)` with `e` 1 or 2 (exponent `p` or `p²`), `AES(p,r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic { p: u32, n: u32 },
    ElementaryAbelian { p: u32, k: u32 },
    M { p: u32 },
    N { p: u32 },
    ExtraSpecial { p: u32, r: u32, exponent_p2: bool },
    AlmostExtraSpecial { p: u32, r: u32 },
}

impl GroupSpec {
    pub fn prime(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic { p, .. }
            | GroupSpec::ElementaryAbelian { p, .. }
            | GroupSpec::M { p }
            | GroupSpec::N { p }
            | GroupSpec::ExtraSpecial { p, .. }
            | GroupSpec::AlmostExtraSpecial { p, .. } => p,
        }
    }

    /// `n` with order `p^n`.
    pub fn log_order(&self) -> u32 {
        match *self {
            GroupSpec::Cyclic { n, .. } => n,
            GroupSpec::ElementaryAbelian { k, .. } => k,
            GroupSpec::M { .. } | GroupSpec::N { .. } => 3,
            GroupSpec::ExtraSpecial { r, .. } => 2 * r + 1,
            GroupSpec::AlmostExtraSpecial { r, .. } => 2 * r + 2,
        }
    }

    pub fn family(&self) -> Family {
        let p = self.prime() as u64;
        match *self {
            GroupSpec::Cyclic { n, .. } => Family::Cyclic { p, n: n as u64 },
            GroupSpec::ElementaryAbelian { k, .. } => Family::ElementaryAbelian { p, k: k as u64 },
            GroupSpec::M { .. } => Family::ExtraSpecial { p, r: 1, exponent_p2: false },
            GroupSpec::N { .. } => Family::ExtraSpecial { p, r: 1, exponent_p2: true },
            GroupSpec::ExtraSpecial { r, exponent_p2, .. } => Family::ExtraSpecial {
                p,
                r: r as u64,
                exponent_p2,
            },
            GroupSpec::AlmostExtraSpecial { r, .. } => Family::AlmostExtraSpecial { p, r: r as u64 },
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_bounded(DEFAULT_MAX_ORDER)
    }

    pub fn build_bounded(&self, max_order: usize) -> Result<FiniteGroup> {
        check_prime(self.prime())?;
        check_size(self.prime(), self.log_order(), max_order)?;
        match *self {
            GroupSpec::Cyclic { p, n } => cyclic_bounded(p, n, max_order),
            GroupSpec::ElementaryAbelian { p, k } => elementary_abelian_bounded(p, k, max_order),
            GroupSpec::M { p } => make_m(p),
            GroupSpec::N { p } => make_n(p),
            GroupSpec::ExtraSpecial { p, r, exponent_p2 } => extra_special_bounded(p, r, exponent_p2, max_order),
            GroupSpec::AlmostExtraSpecial { p, r } => almost_extra_special_bounded(p, r, max_order),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Cyclic { p, n } => write!(f, "C({p},{n})"),
            GroupSpec::ElementaryAbelian { p, k } => write!(f, "EA({p},{k})"),
            GroupSpec::M { p } => write!(f, "M({p})"),
            GroupSpec::N { p } => write!(f, "N({p})"),
            GroupSpec::ExtraSpecial { p, r, exponent_p2 } => {
                write!(f, "ES({p},{r},{})", if exponent_p2 { 2 } else { 1 })
            }
            GroupSpec::AlmostExtraSpecial { p, r } => write!(f, "AES({p},{r})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let fail = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let open = s.find('(').ok_or_else(|| fail("expected NAME(args)"))?;
        let args = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| fail("missing closing parenthesis"))?;
        let nums = args
            .split(',')
            .map(|a| a.parse::<u32>().map_err(|_| fail(&format!("{a:?} is not a non-negative integer"))))
            .collect::<Result<Vec<u32>>>()?;
        let name = s[..open].to_ascii_uppercase();
        let arity = |n: usize| -> Result<()> {
            if nums.len() == n {
                Ok(())
            } else {
                Err(fail(&format!("{name} takes {n} argument(s), got {}", nums.len())))
            }
        };
        let spec = match name.as_str() {
            "C" => {
                arity(2)?;
                GroupSpec::Cyclic { p: nums[0], n: nums[1] }
            }
            "EA" => {
                arity(2)?;
                GroupSpec::ElementaryAbelian { p: nums[0], k: nums[1] }
            }
            "M" => {
                arity(1)?;
                GroupSpec::M { p: nums[0] }
            }
            "N" => {
                arity(1)?;
                GroupSpec::N { p: nums[0] }
            }
            "ES" => {
                arity(3)?;
                if nums[1] == 0 {
                    return Err(fail("rank r must be at least 1"));
                }
                let exponent_p2 = match nums[2] {
                    1 => false,
                    2 => true,
                    _ => return Err(fail("exponent flag must be 1 (exponent p) or 2 (exponent p^2)")),
                };
                GroupSpec::ExtraSpecial { p: nums[0], r: nums[1], exponent_p2 }
            }
            "AES" => {
                arity(2)?;
                if nums[1] == 0 {
                    return Err(fail("rank r must be at least 1"));
                }
                GroupSpec::AlmostExtraSpecial { p: nums[0], r: nums[1] }
            }
            _ => return Err(fail("unknown family; expected C, EA, M, N, ES or AES")),
        };
        check_prime(spec.prime())?;
        Ok(spec)
    }
}
