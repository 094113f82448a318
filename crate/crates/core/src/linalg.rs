//! Row reduction over F_p.

/// Reduced row echelon basis of a subspace of `F_p^n`, grown one vector at a
/// time.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    width: usize,
    /// Rows with a leading 1 at `pivots[i]`.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Echelon {
    pub fn new(p: u64, width: usize) -> Self {
        Echelon {
            p,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|&x| x % p).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(v[c], p);
        v.iter_mut().for_each(|x| *x = *x * s % p);
        for row in &mut self.rows {
            let f = row[c];
            if f != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = (*a + (p - f) * b) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
        true
    }

    /// Reduced rows, sorted by pivot: a canonical form of the subspace.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn same_space(&self, other: &Echelon) -> bool {
        self.p == other.p && self.width == other.width && self.rows == other.rows
    }
}

pub fn rank_mod_p<'a>(p: u64, width: usize, rows: impl IntoIterator<Item = &'a Vec<u64>>) -> usize {
    let mut e = Echelon::new(p, width);
    for r in rows {
        e.insert(r);
        if e.rank() == width {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        let rows = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]];
        assert_eq!(rank_mod_p(3, 3, &rows), 2);
        assert_eq!(rank_mod_p(5, 3, &rows), 2);
        assert_eq!(rank_mod_p(3, 3, &vec![vec![0, 0, 0]]), 0);
    }

    #[test]
    fn canonical_rows() {
        let mut a = Echelon::new(3, 2);
        a.insert(&[1, 1]);
        a.insert(&[0, 2]);
        let mut b = Echelon::new(3, 2);
        b.insert(&[2, 0]);
        b.insert(&[1, 2]);
        assert!(a.same_space(&b));
        assert_eq!(a.rows(), &[vec![1, 0], vec![0, 1]]);
        assert!(a.contains(&[2, 2]));
    }

    #[test]
    fn inverses() {
        for p in [3u64, 5, 7] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }
}
