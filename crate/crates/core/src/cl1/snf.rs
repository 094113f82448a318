//! Finite abelian quotients `Γ/R` via Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Invariant factors `d_1 | d_2 | ...` of a finite abelian group, all `> 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "InvariantsJson", into = "InvariantsJson")]
pub struct AbelianInvariants {
    factors: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct InvariantsJson {
    invariant_factors: Vec<u64>,
    elementary_rank: Option<usize>,
    order: String,
}

impl From<AbelianInvariants> for InvariantsJson {
    fn from(a: AbelianInvariants) -> Self {
        InvariantsJson {
            elementary_rank: a.elementary_rank(),
            order: a.order_string(),
            invariant_factors: a.factors,
        }
    }
}

impl TryFrom<InvariantsJson> for AbelianInvariants {
    type Error = Error;

    fn try_from(j: InvariantsJson) -> Result<Self> {
        let a = AbelianInvariants::new(j.invariant_factors)?;
        if a.elementary_rank() != j.elementary_rank {
            return Err(Error::InvalidParameter("elementary_rank does not match the factors".into()));
        }
        if a.order_string() != j.order {
            return Err(Error::InvalidParameter("order does not match the factors".into()));
        }
        Ok(a)
    }
}

fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut e = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}

impl AbelianInvariants {
    /// Checks the divisibility chain; factors equal to 1 are dropped.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        let factors: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            return Err(Error::InvalidParameter("infinite cyclic factor".into()));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidParameter("invariant factors must form a divisibility chain".into()));
        }
        Ok(AbelianInvariants { factors })
    }

    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    /// Invariants of `⊕ C_{d}` for arbitrary cyclic orders (p-power orders).
    pub fn from_cyclic_orders(mut orders: Vec<u64>) -> Self {
        orders.retain(|&d| d > 1);
        orders.sort_unstable();
        AbelianInvariants { factors: orders }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of cyclic factors: the minimal number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `k` when the group is `(C_p)^k` (including the trivial group, `k = 0`).
    pub fn elementary_rank(&self) -> Option<usize> {
        match self.factors.first() {
            None => Some(0),
            Some(&d) if is_prime(d) && self.factors.iter().all(|&x| x == d) => Some(self.factors.len()),
            _ => None,
        }
    }

    /// The order, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        self.factors.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
    }

    /// `log_p` of the order.
    pub fn log_order(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .map(|&d| {
                let mut e = 0;
                let mut m = d;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                e
            })
            .sum()
    }

    /// `"p^e"` for p-groups, `"1"` for the trivial group, decimal otherwise.
    pub fn order_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let bases: Vec<Option<(u64, u32)>> = self.factors.iter().map(|&d| prime_power_base(d)).collect();
        if let Some(Some((p, _))) = bases.first() {
            if bases.iter().all(|b| matches!(b, Some((q, _)) if q == p)) {
                let e: u32 = bases.iter().map(|b| b.unwrap().1).sum();
                return format!("{p}^{e}");
            }
        }
        let mut total = BigInt::from(1);
        for &d in &self.factors {
            total *= d;
        }
        total.to_string()
    }
}

fn is_prime(n: u64) -> bool {
    crate::formulas::is_prime(n)
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut runs: Vec<(u64, usize)> = Vec::new();
        for &d in &self.factors {
            match runs.last_mut() {
                Some((x, n)) if *x == d => *n += 1,
                _ => runs.push((d, 1)),
            }
        }
        let parts: Vec<String> = runs
            .into_iter()
            .map(|(d, n)| if n == 1 { format!("C{d}") } else { format!("(C{d})^{n}") })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariant factors of `(⊕ Z/m_i) / ⟨relations⟩` for prime-power moduli.
///
/// The lattice spanned by `[diag(m); relations]` contains `D Z^n` with
/// `D = max m_i`, so the Smith form can be computed over the local ring
/// `Z/D`: the pivot of least p-adic valuation divides everything left in
/// its block. A column left without pivot contributes the factor `D`.
/// Moduli that are not powers of a single prime go through
/// [`smith_quotient_exact`].
pub fn smith_quotient(moduli: &[u64], relations: &[Vec<u64>]) -> AbelianInvariants {
    let cols: Vec<usize> = (0..moduli.len()).filter(|&i| moduli[i] > 1).collect();
    if cols.is_empty() {
        return AbelianInvariants::trivial();
    }
    let d = cols.iter().map(|&i| moduli[i]).max().unwrap();
    let Some((p, _)) = prime_power_base(d) else {
        return smith_quotient_exact(moduli, relations);
    };
    if cols.iter().any(|&i| d % moduli[i] != 0) {
        return smith_quotient_exact(moduli, relations);
    }
    let mut rows: Vec<Vec<u64>> = cols
        .iter()
        .enumerate()
        .map(|(j, &i)| {
            let mut r = vec![0u64; cols.len()];
            r[j] = moduli[i] % d;
            r
        })
        .collect();
    rows.extend(relations.iter().map(|rel| cols.iter().map(|&i| rel[i] % d).collect()));
    rows.retain(|r| r.iter().any(|&x| x != 0));
    let mut factors = local_smith_diagonal(rows, cols.len(), p, d);
    factors.resize(cols.len(), d);
    AbelianInvariants::from_cyclic_orders(factors)
}

fn valuation(mut x: u64, p: u64) -> u32 {
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// Inverse of a unit modulo `m`.
fn unit_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

/// Diagonal `p^v` entries of the Smith form over `Z/d`, `d` a power of `p`.
fn local_smith_diagonal(mut a: Vec<Vec<u64>>, ncols: usize, p: u64, d: u64) -> Vec<u64> {
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % d as u128) as u64;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < a.len() && t < ncols {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in a.iter().enumerate().skip(t) {
            for (c, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = valuation(x, p);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((v, pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let pv = p.pow(v);
        let u = unit_inverse(a[t][t] / pv, d);
        for x in a[t].iter_mut() {
            *x = mulmod(*x, u);
        }
        let pivot_row = a[t].clone();
        for row in a.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let q = row[t] / pv;
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(t) {
                    *x = (*x + d - mulmod(q, y)) % d;
                }
            }
        }
        // Column operations only touch row t now: the rest of column t is 0.
        for x in a[t].iter_mut().skip(t + 1) {
            *x = 0;
        }
        diag.push(pv);
        t += 1;
    }
    diag
}

/// Nonzero diagonal entries of the Smith normal form of an integer matrix,
/// by plain Euclidean elimination on arbitrary-size integers.
pub fn integer_smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the remaining block as pivot.
        let mut best: Option<(usize, usize)> = None;
        for r in t..nrows {
            for c in t..ncols {
                if !a[r][c].is_zero() && best.map_or(true, |(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..nrows {
            if !a[r][t].is_zero() {
                let q = &a[r][t] / &a[t][t];
                for c in t..ncols {
                    let v = &a[t][c] * &q;
                    a[r][c] -= v;
                }
                clean &= a[r][t].is_zero();
            }
        }
        for c in t + 1..ncols {
            if !a[t][c].is_zero() {
                let q = &a[t][c] / &a[t][t];
                for r in t..nrows {
                    let v = &a[r][t] * &q;
                    a[r][c] -= v;
                }
                clean &= a[t][c].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold any entry not divisible by the pivot into row t.
        let piv = a[t][t].clone();
        let bad = (t + 1..nrows).find(|&r| (t + 1..ncols).any(|c| !(&a[r][c] % &piv).is_zero()));
        if let Some(r) = bad {
            for c in t..ncols {
                let v = a[r][c].clone();
                a[t][c] += v;
            }
            continue;
        }
        diag.push(piv.abs());
        t += 1;
    }
    diag
}

/// `smith_quotient` computed with [`integer_smith_diagonal`] on the full
/// stacked matrix, without any modular reduction.
pub fn smith_quotient_exact(moduli: &[u64], relations: &[Vec<u64>]) -> AbelianInvariants {
    let n = moduli.len();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(moduli[i]);
            r
        })
        .collect();
    rows.extend(relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()));
    let diag = integer_smith_diagonal(rows);
    let factors = diag
        .into_iter()
        .map(|x| u64::try_from(x).expect("invariant factor fits in u64"))
        .collect();
    AbelianInvariants::from_cyclic_orders(factors)
}
