use super::FiniteGroup;

/// Subgroup of a [`FiniteGroup`] as a sorted element list plus membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_elements(g, vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_elements(g, (0..g.order()).collect())
    }

    fn from_elements(g: &FiniteGroup, mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let mut mask = vec![false; g.order()];
        for &e in &elements {
            mask[e] = true;
        }
        Subgroup { elements, mask }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        Self::trivial(g).join(g, gens)
    }

    /// Smallest subgroup containing `self` and `extra`.
    pub fn join(&self, g: &FiniteGroup, extra: &[usize]) -> Self {
        let mut mask = self.mask.clone();
        let mut elements = self.elements.clone();
        let mut gens: Vec<usize> = self.elements.clone();
        gens.extend_from_slice(extra);
        let mut i = 0;
        for &e in extra {
            if !mask[e] {
                mask[e] = true;
                elements.push(e);
            }
        }
        // closure under right multiplication by generators; finite, so
        // this is closed under inverses too
        while i < elements.len() {
            let x = elements[i];
            for &s in &gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Subgroup { elements, mask }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements
            .iter()
            .all(|&a| self.elements.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        let gens = g.generators();
        gens.iter().all(|&s| self.elements.iter().all(|&x| self.mask[g.conj(s, x)]))
    }

    pub fn intersection_order(&self, other: &Subgroup) -> usize {
        self.elements.iter().filter(|&&x| other.contains(x)).count()
    }
}
