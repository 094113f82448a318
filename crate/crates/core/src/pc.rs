//! Consistent polycyclic presentations with every relative order equal to p.
//!
//! Generators `g_0 .. g_{n-1}` satisfy
//!
//! * power relations `g_i^p = w_i`, with `w_i` a normal form in `g_{i+1} ..`
//! * conjugation relations `g_j^{g_i} = g_i^{-1} g_j g_i = c_{ij}` for `i < j`,
//!   with `c_{ij}` a normal form in `g_j ..`
//!
//! Every element has a unique normal form `g_0^{e_0} ... g_{n-1}^{e_{n-1}}` with
//! `0 <= e_i < p`. Products are computed by collection: the right-hand factor is
//! fed in one generator at a time and each generator is moved left past the
//! higher-index tail using the conjugation relations.

use crate::error::{Error, Result};

/// A generator or inverse-generator letter of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub fn inv(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcPresentation {
    p: u32,
    powers: Vec<Vec<u32>>,
    /// `conjugates[i][j]` is meaningful for `i < j` only.
    conjugates: Vec<Vec<Vec<u32>>>,
    /// Normal form of `g_i^{-1}`, derived from the relations.
    inverses: Vec<Vec<u32>>,
}

impl PcPresentation {
    /// Presentation with all relations trivial: the elementary abelian group `(C_p)^n`.
    pub fn elementary_abelian(p: u32, n: usize) -> Self {
        let zero = vec![0; n];
        let mut conjugates = vec![vec![zero.clone(); n]; n];
        for (i, row) in conjugates.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate().skip(i + 1) {
                c[j] = 1;
            }
        }
        Self::new(p, vec![zero; n], conjugates).expect("trivial relations are well formed")
    }

    /// Builds a presentation, checking that every right-hand side is a normal
    /// form in the admissible generators. Consistency is checked separately by
    /// [`PcPresentation::consistency_failures`].
    pub fn new(p: u32, powers: Vec<Vec<u32>>, conjugates: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if p < 3 || !crate::formulas::is_prime(p as u64) {
            return Err(Error::UnsupportedPrime(p as u64));
        }
        let n = powers.len();
        if conjugates.len() != n || conjugates.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameter(format!(
                "conjugation table must be {n}x{n}"
            )));
        }
        let check_word = |w: &[u32], first: usize, what: &str| -> Result<()> {
            if w.len() != n {
                return Err(Error::InvalidParameter(format!("{what}: word length {} != {n}", w.len())));
            }
            if let Some(pos) = w.iter().position(|&e| e >= p) {
                return Err(Error::InvalidParameter(format!("{what}: exponent at {pos} not below p")));
            }
            if let Some(pos) = w[..first.min(n)].iter().position(|&e| e != 0) {
                return Err(Error::InvalidParameter(format!(
                    "{what}: involves generator {pos}, expected only generators >= {first}"
                )));
            }
            Ok(())
        };
        for (i, w) in powers.iter().enumerate() {
            check_word(w, i + 1, &format!("power relation of generator {i}"))?;
        }
        for i in 0..n {
            for j in i + 1..n {
                let w = &conjugates[i][j];
                check_word(w, j, &format!("conjugation relation ({i},{j})"))?;
                if w[j] == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "conjugation relation ({i},{j}) does not involve generator {j}"
                    )));
                }
            }
        }
        let mut pres = PcPresentation {
            p,
            powers,
            conjugates,
            inverses: vec![Vec::new(); n],
        };
        // g_i^{-1} = g_i^{p-1} (g_i^p)^{-1}; the power word only involves higher generators.
        for i in (0..n).rev() {
            let mut r = vec![0; n];
            r[i] = p - 1;
            let tail_inverse = pres.inverse_letters(&pres.powers[i]);
            for k in tail_inverse {
                pres.mul_gen(&mut r, k);
            }
            pres.inverses[i] = r;
        }
        Ok(pres)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn power(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    /// Normal form of `g_j^{g_i}`, `i < j`.
    pub fn conjugate(&self, i: usize, j: usize) -> &[u32] {
        &self.conjugates[i][j]
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.len()]
    }

    /// Positive letters of the inverse of a normal form (generators only, using
    /// the cached inverse normal forms of higher generators).
    fn inverse_letters(&self, v: &[u32]) -> Vec<usize> {
        let mut out = Vec::new();
        for j in (0..v.len()).rev() {
            for _ in 0..v[j] {
                out.extend(Self::letters_of(&self.inverses[j]));
            }
        }
        out
    }

    fn letters_of(v: &[u32]) -> impl Iterator<Item = usize> + '_ {
        v.iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
    }

    /// `r := r * g_k`.
    pub fn mul_gen(&self, r: &mut [u32], k: usize) {
        let n = self.len();
        let mut stack = vec![k];
        while let Some(k) = stack.pop() {
            let tail: Vec<u32> = r[k + 1..].to_vec();
            r[k + 1..].iter_mut().for_each(|e| *e = 0);
            r[k] += 1;
            let overflow = r[k] == self.p;
            if overflow {
                r[k] = 0;
            }
            // Pending: [power word if overflow] then tail^{g_k}, left to right.
            for j in (k + 1..n).rev() {
                for _ in 0..tail[j - k - 1] {
                    let word = &self.conjugates[k][j];
                    for (idx, &e) in word.iter().enumerate().rev() {
                        stack.extend(std::iter::repeat(idx).take(e as usize));
                    }
                }
            }
            if overflow {
                for (idx, &e) in self.powers[k].iter().enumerate().rev() {
                    stack.extend(std::iter::repeat(idx).take(e as usize));
                }
            }
        }
    }

    /// `a * b` on normal forms.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut r = a.to_vec();
        for k in Self::letters_of(b).collect::<Vec<_>>() {
            self.mul_gen(&mut r, k);
        }
        r
    }

    pub fn inverse(&self, a: &[u32]) -> Vec<u32> {
        let mut r = self.identity();
        for k in self.inverse_letters(a) {
            self.mul_gen(&mut r, k);
        }
        r
    }

    /// Normal form of a word. The empty word collects to the identity.
    pub fn collect(&self, word: &[Letter]) -> Result<Vec<u32>> {
        let mut r = self.identity();
        for letter in word {
            if letter.generator >= self.len() {
                return Err(Error::InvalidParameter(format!(
                    "letter refers to generator {} of {}",
                    letter.generator,
                    self.len()
                )));
            }
            if letter.inverse {
                for k in Self::letters_of(&self.inverses[letter.generator]).collect::<Vec<_>>() {
                    self.mul_gen(&mut r, k);
                }
            } else {
                self.mul_gen(&mut r, letter.generator);
            }
        }
        Ok(r)
    }

    fn unit(&self, i: usize) -> Vec<u32> {
        let mut v = self.identity();
        v[i] = 1;
        v
    }

    fn gen_power(&self, i: usize, e: u32) -> Vec<u32> {
        let mut v = self.identity();
        for _ in 0..e {
            self.mul_gen(&mut v, i);
        }
        v
    }

    /// Runs the standard overlap checks for consistency and reports every
    /// failure as `(generator index, description)`. The generator index is the
    /// lowest generator involved in the failing overlap.
    pub fn consistency_failures(&self) -> Vec<(usize, String)> {
        let n = self.len();
        let p = self.p;
        let mut out = Vec::new();
        let g = |i| self.unit(i);
        // (g_k g_j) g_i = g_k (g_j g_i)
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let left = self.multiply(&self.multiply(&g(k), &g(j)), &g(i));
                    let right = self.multiply(&g(k), &self.multiply(&g(j), &g(i)));
                    if left != right {
                        out.push((i, format!("(g{k} g{j}) g{i} != g{k} (g{j} g{i})")));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                // (g_j^p) g_i = g_j^{p-1} (g_j g_i)
                let left = self.multiply(&self.gen_power(j, p), &g(i));
                let right = self.multiply(&self.gen_power(j, p - 1), &self.multiply(&g(j), &g(i)));
                if left != right {
                    out.push((i, format!("(g{j}^p) g{i} != g{j}^(p-1) (g{j} g{i})")));
                }
                // g_j (g_i^p) = (g_j g_i) g_i^{p-1}
                let left = self.multiply(&g(j), &self.gen_power(i, p));
                let right = self.multiply(&self.multiply(&g(j), &g(i)), &self.gen_power(i, p - 1));
                if left != right {
                    out.push((i, format!("g{j} (g{i}^p) != (g{j} g{i}) g{i}^(p-1)")));
                }
            }
            // (g_i^p) g_i = g_i (g_i^p)
            let left = self.multiply(&self.gen_power(i, p), &g(i));
            let right = self.multiply(&g(i), &self.gen_power(i, p));
            if left != right {
                out.push((i, format!("(g{i}^p) g{i} != g{i} (g{i}^p)")));
            }
        }
        out
    }

    /// Index of a normal form in lexicographic order (`e_0` most significant).
    pub fn index_of(&self, v: &[u32]) -> usize {
        v.iter().fold(0usize, |acc, &e| acc * self.p as usize + e as usize)
    }

    pub fn exponents_of(&self, mut index: usize) -> Vec<u32> {
        let p = self.p as usize;
        let mut v = vec![0; self.len()];
        for slot in v.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        v
    }
}
