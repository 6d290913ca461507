use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError, RootExp};

/// Finite abelian group `C_{d₁} × … × C_{d_r}` with `d₁ | d₂ | … | d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// Element of an [`AbelianGroup`] as an exponent vector over the
/// invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbElement(pub(crate) Vec<u64>);

/// Character of an [`AbelianGroup`], written in the basis dual to the
/// invariant-factor generators: `⟨χ, a⟩ = exp(2πi Σ χᵢaᵢ/dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualCharacter(pub(crate) Vec<u64>);

impl AbElement {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }
}

impl DualCharacter {
    pub fn exponents(&self) -> &[u64] {
        &self.0
    }
}

fn reduce_into(factors: &[u64], exps: &[i64]) -> Vec<u64> {
    factors
        .iter()
        .zip(exps)
        .map(|(&d, &e)| e.rem_euclid(d as i64) as u64)
        .collect()
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        if factors.iter().any(|&d| d < 2) {
            return Err(GroupError::InvalidFactors(factors));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupError::InvalidFactors(factors));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            AbelianGroup { factors: vec![n] }
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn identity(&self) -> AbElement {
        AbElement(vec![0; self.rank()])
    }

    pub fn element(&self, exps: &[i64]) -> Result<AbElement, GroupError> {
        self.check_len(exps.len())?;
        Ok(AbElement(reduce_into(&self.factors, exps)))
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        AbElement(e)
    }

    pub fn contains(&self, a: &AbElement) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    fn check_len(&self, len: usize) -> Result<(), GroupError> {
        if len != self.rank() {
            return Err(GroupError::RankMismatch {
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        AbElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        )
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        AbElement(a.0.iter().zip(&self.factors).map(|(x, d)| (d - x) % d).collect())
    }

    pub fn sub(&self, a: &AbElement, b: &AbElement) -> AbElement {
        self.add(a, &self.neg(b))
    }

    /// Mixed-radix index; the identity has index 0.
    pub fn index_of(&self, a: &AbElement) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (x, d) in a.0.iter().zip(&self.factors) {
            idx += *x as usize * stride;
            stride *= *d as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> AbElement {
        let mut e = Vec::with_capacity(self.rank());
        for &d in &self.factors {
            e.push((idx % d as usize) as u64);
            idx /= d as usize;
        }
        AbElement(e)
    }

    pub fn elements(&self) -> Vec<AbElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn trivial_character(&self) -> DualCharacter {
        DualCharacter(vec![0; self.rank()])
    }

    pub fn character(&self, exps: &[i64]) -> Result<DualCharacter, GroupError> {
        self.check_len(exps.len())?;
        Ok(DualCharacter(reduce_into(&self.factors, exps)))
    }

    pub fn basis_character(&self, i: usize) -> DualCharacter {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        DualCharacter(e)
    }

    pub fn contains_character(&self, chi: &DualCharacter) -> bool {
        chi.0.len() == self.rank() && chi.0.iter().zip(&self.factors).all(|(x, d)| x < d)
    }

    pub fn char_mul(&self, a: &DualCharacter, b: &DualCharacter) -> DualCharacter {
        DualCharacter(self.add(&AbElement(a.0.clone()), &AbElement(b.0.clone())).0)
    }

    pub fn char_inv(&self, a: &DualCharacter) -> DualCharacter {
        DualCharacter(self.neg(&AbElement(a.0.clone())).0)
    }

    pub fn char_index_of(&self, chi: &DualCharacter) -> usize {
        self.index_of(&AbElement(chi.0.clone()))
    }

    pub fn character_at(&self, idx: usize) -> DualCharacter {
        DualCharacter(self.element_at(idx).0)
    }

    pub fn characters(&self) -> Vec<DualCharacter> {
        (0..self.order()).map(|i| self.character_at(i)).collect()
    }

    /// `⟨χ, a⟩` as a numerator modulo `exp(A)`.
    pub fn pairing_exponent(&self, chi: &DualCharacter, a: &AbElement) -> u64 {
        let e = self.exponent();
        chi.0
            .iter()
            .zip(&a.0)
            .zip(&self.factors)
            .map(|((x, y), d)| (e / d) * ((x * y) % d))
            .sum::<u64>()
            % e
    }

    /// `⟨χ, a⟩ ∈ μ_n`; `n` must be a multiple of `exp(A)`.
    pub fn pairing(&self, chi: &DualCharacter, a: &AbElement, n: u64) -> Result<RootExp, GroupError> {
        if !self.contains_character(chi) || !self.contains(a) {
            return Err(GroupError::Mismatched);
        }
        if n % self.exponent() != 0 {
            return Err(GroupError::AmbientOrder {
                ambient: n,
                exponent: self.exponent(),
            });
        }
        Ok(RootExp::new(self.pairing_exponent(chi, a) as i64, self.exponent()).lift(n))
    }

    /// The group `A` as a multiplication table indexed by [`Self::index_of`].
    pub fn as_finite_group(&self) -> FiniteGroup {
        let n = self.order();
        let elems = self.elements();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| self.index_of(&self.add(&elems[i], &elems[j]))).collect())
            .collect();
        FiniteGroup::from_table_trusted(table)
    }
}
