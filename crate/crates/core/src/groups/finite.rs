use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GroupError;

/// How much of the associativity law to check when a table is loaded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomCheck {
    Full,
    Sampled { triples: usize, seed: u64 },
}

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_table_with(rows, AxiomCheck::Full)
    }

    pub fn from_table_with(rows: Vec<Vec<usize>>, check: AxiomCheck) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::TableShape { row: i, len: r.len(), order: n });
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= n) {
                return Err(GroupError::TableEntry { row: i, entry: bad });
            }
            table.extend_from_slice(r);
        }
        for g in 0..n {
            if table[g] != g || table[g * n] != g {
                return Err(GroupError::Identity(g));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g * n + h] == 0) {
                Some(h) if table[h * n + g] == 0 => inv[g] = h,
                _ => return Err(GroupError::NoInverse(g)),
            }
        }
        let grp = FiniteGroup { n, table, inv };
        let assoc = |a: usize, b: usize, c: usize| grp.mul(grp.mul(a, b), c) == grp.mul(a, grp.mul(b, c));
        match check {
            AxiomCheck::Full => {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if !assoc(a, b, c) {
                                return Err(GroupError::NotAssociative(a, b, c));
                            }
                        }
                    }
                }
            }
            AxiomCheck::Sampled { triples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..triples {
                    let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    if !assoc(a, b, c) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(grp)
    }

    pub(crate) fn from_table_trusted(rows: Vec<Vec<usize>>) -> Self {
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        let inv = (0..n)
            .map(|g| (0..n).find(|&h| table[g * n + h] == 0).expect("group table without inverse"))
            .collect();
        FiniteGroup { n, table, inv }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table_trusted(rows)
    }

    /// `G × H` with `(g, h)` at index `g + |G|·h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (a, b) = (g.order(), h.order());
        let n = a * b;
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g.mul(x % a, y % a) + a * h.mul(x / a, y / a))
                    .collect()
            })
            .collect();
        Self::from_table_trusted(rows)
    }

    /// Dihedral group of order `2n`: `r^k s^l` at index `k + n·l`.
    pub fn dihedral(n: usize) -> Self {
        let m = 2 * n;
        let rows = (0..m)
            .map(|x| {
                let (k1, l1) = (x % n, x / n);
                (0..m)
                    .map(|y| {
                        let (k2, l2) = (y % n, y / n);
                        // s r^k = r^{-k} s
                        let k = if l1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
                        k + n * ((l1 + l2) % 2)
                    })
                    .collect()
            })
            .collect();
        Self::from_table_trusted(rows)
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Self {
        // index = 2*unit + sign, unit ∈ {1, i, j, k}
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let rows = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (u, neg) = unit_mul(x / 2, y / 2);
                        let sign = (x % 2 + y % 2 + neg as usize) % 2;
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        Self::from_table_trusted(rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: repeatedly adds the smallest element not yet in
    /// the generated subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = super::Subgroup::trivial(self);
        while span.order() < self.n {
            let g = (0..self.n).find(|&g| !span.contains(g)).unwrap();
            gens.push(g);
            span = super::Subgroup::generated(self, &gens);
        }
        gens
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    /// Conjugacy classes, each sorted, listed in order of their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.n).map(|g| self.conj(g, x)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls);
        }
        classes
    }
}
