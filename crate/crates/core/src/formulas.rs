//! Closed forms for the families handled by the crate: Cl₁ ranks, free ranks
//! of the Whitehead group and the expected invariant factors. Reports, tests
//! and the CLI all read their expectations from here.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn pow(p: u64, e: u64) -> i128 {
    (p as i128).pow(e as u32)
}

/// `(p^k − 1)/(p − 1)`: number of hyperplanes of `F_p^k`.
pub fn hyperplane_count(p: u64, k: u64) -> u128 {
    ((pow(p, k) - 1) / (p as i128 - 1)) as u128
}

/// `C(p+k−1, p)`, the dimension of the degree-p part of the symmetric algebra
/// on `k` variables.
pub fn sym_dim(p: u64, k: u64) -> u128 {
    binomial(p + k - 1, p)
}

/// Rank `N` with `Cl₁(ℤ(C_p)^k) ≅ (C_p)^N`.
pub fn ea_n(p: u64, k: u64) -> u64 {
    if k == 0 {
        return 0;
    }
    (hyperplane_count(p, k) - sym_dim(p, k)) as u64
}

/// `M = (p^{k−1}−1)/(p−1) − C(p+k−2, p)` for a group of order `p^k`.
pub fn complement_rank(p: u64, k: u64) -> u64 {
    (hyperplane_count(p, k - 1) - binomial(p + k - 2, p)) as u64
}

/// Free rank of `Wh((C_p)^k)`.
pub fn free_rank_ea(p: u64, k: u64) -> u64 {
    ((pow(p, k) - 1) * (p as i128 - 3) / (2 * (p as i128 - 1))) as u64
}

/// Free rank of `Wh(P)` for `P` extra-special of order `p^{2n+1}`.
pub fn free_rank_es(p: u64, n: u64) -> u64 {
    ((pow(p, 2 * n) + p as i128 - 2) * (p as i128 - 3) / (2 * (p as i128 - 1))) as u64
}

/// Free rank of `Wh(P)` for `P` almost extra-special of order `p^{2n+2}`.
pub fn free_rank_aes(p: u64, n: u64) -> u64 {
    let p_ = p as i128;
    (((pow(p, 2 * n + 1) + p_ * p_ + p_ + 1) * (p_ - 3) + 8) / (2 * (p_ - 1))) as u64
}

/// Real and rational irreducible counts `(r, q)` for extra-special groups.
pub fn irreducibles_es(p: u64, n: u64) -> (u64, u64) {
    let p2n = pow(p, 2 * n);
    (
        ((p2n + p as i128) / 2) as u64,
        ((p2n + 2 * p as i128 - 3) / (p as i128 - 1)) as u64,
    )
}

/// Real and rational irreducible counts `(r, q)` for almost extra-special groups.
pub fn irreducibles_aes(p: u64, n: u64) -> (u64, u64) {
    let p_ = p as i128;
    let q = pow(p, 2 * n + 1);
    (((q + p_ * p_ - p_ + 1) / 2) as u64, ((q + 2 * p_ - 3) / (p_ - 1)) as u64)
}

/// Cl₁ rank of an extra-special group of order `p³`: `p − 1`.
pub fn small_es_rank(p: u64) -> u64 {
    p - 1
}

/// Cl₁ rank of an almost extra-special group of order `p⁴`: `(p²+p−2)/2`.
pub fn small_aes_rank(p: u64) -> u64 {
    (p * p + p - 2) / 2
}

/// Order of the deflation kernel `K` for a group of order `p^k` in the large
/// (almost) extra-special range: trivial for order `p^5` and exponent `p²`,
/// `p` for almost extra-special of order `p^6`, otherwise `|Z(P)|`.
pub fn frattini_kernel_order(p: u64, k: u64, almost: bool, exponent_p2: bool) -> u64 {
    match (almost, k) {
        (false, 5) if exponent_p2 => 1,
        (true, 6) => p,
        (true, _) => p * p,
        (false, _) => p,
    }
}

/// Family of a group spec, with the parameters the closed forms need.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic { p: u64, n: u64 },
    ElementaryAbelian { p: u64, k: u64 },
    ExtraSpecial { p: u64, r: u64, exponent_p2: bool },
    AlmostExtraSpecial { p: u64, r: u64 },
}

impl Family {
    /// Expected invariant factors of Cl₁, when a closed form covers the family.
    pub fn expected_cl1(&self) -> Option<Vec<u64>> {
        match *self {
            Family::Cyclic { .. } => Some(Vec::new()),
            Family::ElementaryAbelian { p, k } => Some(vec![p; ea_n(p, k) as usize]),
            Family::ExtraSpecial { p, r: 1, .. } => Some(vec![p; small_es_rank(p) as usize]),
            Family::AlmostExtraSpecial { p, r: 1 } => Some(vec![p; small_aes_rank(p) as usize]),
            Family::ExtraSpecial { p, r, exponent_p2 } => {
                let k = 2 * r + 1;
                let mut v = vec![p; complement_rank(p, k) as usize];
                let kk = frattini_kernel_order(p, k, false, exponent_p2);
                if kk > 1 {
                    v.push(kk);
                }
                Some(v)
            }
            Family::AlmostExtraSpecial { p, r } => {
                let k = 2 * r + 2;
                let mut v = vec![p; complement_rank(p, k) as usize];
                v.push(frattini_kernel_order(p, k, true, false));
                Some(v)
            }
        }
    }

    /// Expected free rank of the Whitehead group.
    pub fn expected_free_rank(&self) -> u64 {
        match *self {
            Family::Cyclic { p, n } => {
                // Q-irreducibles n+1; R-irreducibles (p^n+1)/2.
                ((pow(p, n) + 1) / 2) as u64 - (n + 1)
            }
            Family::ElementaryAbelian { p, k } => free_rank_ea(p, k),
            Family::ExtraSpecial { p, r, .. } => free_rank_es(p, r),
            Family::AlmostExtraSpecial { p, r } => free_rank_aes(p, r),
        }
    }

    /// Expected order of the deflation kernel for `N = Φ(P)`, when known.
    pub fn expected_kernel_order(&self) -> Option<u64> {
        match *self {
            Family::ExtraSpecial { p, r, exponent_p2 } if r >= 2 => {
                Some(frattini_kernel_order(p, 2 * r + 1, false, exponent_p2))
            }
            Family::AlmostExtraSpecial { p, r } if r >= 2 => {
                Some(frattini_kernel_order(p, 2 * r + 2, true, false))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn ea_values() {
        assert_eq!((1..=4).map(|k| ea_n(3, k)).collect::<Vec<_>>(), vec![0, 0, 3, 20]);
        assert_eq!((1..=3).map(|k| ea_n(5, k)).collect::<Vec<_>>(), vec![0, 0, 10]);
    }

    #[test]
    fn complement_and_kernel_values() {
        assert_eq!(complement_rank(3, 5), 20);
        assert_eq!(complement_rank(3, 6), 86);
    }

    #[test]
    fn free_ranks() {
        assert!((1..=5).all(|k| free_rank_ea(3, k) == 0));
        assert_eq!(free_rank_ea(5, 2), 6);
        assert_eq!(free_rank_es(5, 1), 7);
        assert_eq!(free_rank_aes(3, 1), 2);
        assert!((1..=3).all(|n| free_rank_es(3, n) == 0));
        for p in [3u64, 5, 7] {
            for n in 1..=2 {
                let (r, q) = irreducibles_es(p, n);
                assert_eq!(r - q, free_rank_es(p, n));
                let (r, q) = irreducibles_aes(p, n);
                assert_eq!(r - q, free_rank_aes(p, n));
            }
        }
        assert_eq!(irreducibles_es(3, 1), (6, 6));
        assert_eq!(irreducibles_aes(3, 1), (17, 15));
    }

    #[test]
    fn expected_families() {
        let es = Family::ExtraSpecial { p: 3, r: 2, exponent_p2: false };
        assert_eq!(es.expected_cl1().unwrap().len(), 21);
        let es2 = Family::ExtraSpecial { p: 3, r: 2, exponent_p2: true };
        assert_eq!(es2.expected_cl1().unwrap(), vec![3; 20]);
        let aes = Family::AlmostExtraSpecial { p: 3, r: 2 };
        assert_eq!(aes.expected_cl1().unwrap(), vec![3; 87]);
        assert_eq!(aes.expected_kernel_order(), Some(3));
        let aes3 = Family::AlmostExtraSpecial { p: 3, r: 3 };
        assert_eq!(aes3.expected_cl1().unwrap().last(), Some(&9));
    }
}
