use std::collections::VecDeque;

use thiserror::Error;

use super::{AbElement, AbelianGroup, DualCharacter, FiniteGroup, GroupError};

/// Integer matrix acting on exponent vectors: column `j` is the image of the
/// `j`-th invariant-factor generator.
pub type ExpMatrix = Vec<Vec<i64>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionViolation {
    #[error("expected {expected} matrices (one per element of Q), found {found}")]
    Count { expected: usize, found: usize },
    #[error("matrix for element {g} has the wrong shape")]
    Shape { g: usize },
    #[error("matrix for element {g}: entry ({i},{j}) does not define a homomorphism")]
    NotWellDefined { g: usize, i: usize, j: usize },
    #[error("matrix for element {g} is not an automorphism of A")]
    NotInvertible { g: usize },
    #[error("the identity of Q does not act trivially")]
    IdentityNontrivial,
    #[error("action is not a homomorphism at ({g}, {h}): M(gh) ≠ M(g)M(h)")]
    NotHomomorphism { g: usize, h: usize },
}

/// Action of `Q` on `A` by automorphisms, with the induced diagonal action on
/// the dual group precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    a: AbelianGroup,
    matrices: Vec<ExpMatrix>,
    images: Vec<Vec<usize>>,
    dual_matrices: Vec<ExpMatrix>,
    dual_images: Vec<Vec<usize>>,
}

fn apply(a: &AbelianGroup, m: &ExpMatrix, x: &AbElement) -> AbElement {
    let r = a.rank();
    let exps: Vec<i64> = (0..r)
        .map(|i| (0..r).map(|j| m[i][j] * x.0[j] as i64).sum())
        .collect();
    a.element(&exps).expect("rank checked")
}

/// Checks that `matrices[g]` defines an action of `q` on `a`, reporting the
/// first violated identity.
pub fn verify_action(q: &FiniteGroup, a: &AbelianGroup, matrices: &[ExpMatrix]) -> Result<(), ActionViolation> {
    let r = a.rank();
    let d = a.factors();
    if matrices.len() != q.order() {
        return Err(ActionViolation::Count {
            expected: q.order(),
            found: matrices.len(),
        });
    }
    for (g, m) in matrices.iter().enumerate() {
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(ActionViolation::Shape { g });
        }
        for i in 0..r {
            for j in 0..r {
                // the image of e_j has order dividing d_j
                if (d[j] as i64 * m[i][j]).rem_euclid(d[i] as i64) != 0 {
                    return Err(ActionViolation::NotWellDefined { g, i, j });
                }
            }
        }
        let mut hit = vec![false; a.order()];
        for x in a.elements() {
            hit[a.index_of(&apply(a, m, &x))] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(ActionViolation::NotInvertible { g });
        }
    }
    for j in 0..r {
        let e = a.generator(j);
        if apply(a, &matrices[0], &e) != e {
            return Err(ActionViolation::IdentityNontrivial);
        }
    }
    for g in 0..q.order() {
        for h in 0..q.order() {
            let gh = q.mul(g, h);
            for j in 0..r {
                let e = a.generator(j);
                if apply(a, &matrices[gh], &e) != apply(a, &matrices[g], &apply(a, &matrices[h], &e)) {
                    return Err(ActionViolation::NotHomomorphism { g, h });
                }
            }
        }
    }
    Ok(())
}

impl Action {
    pub fn new(q: &FiniteGroup, a: AbelianGroup, matrices: Vec<ExpMatrix>) -> Result<Self, GroupError> {
        verify_action(q, &a, &matrices)?;
        let r = a.rank();
        let d = a.factors().to_vec();
        let images = matrices
            .iter()
            .map(|m| a.elements().iter().map(|x| a.index_of(&apply(&a, m, x))).collect())
            .collect();
        // (g·χ)_i = ⟨χ, g⁻¹ e_i⟩ / (exp/d_i), which is Σ_j M'_{ji}·(d_i/d_j)·χ_j
        // with M' the matrix of g⁻¹.
        let dual_matrices: Vec<ExpMatrix> = (0..q.order())
            .map(|g| {
                let mi = &matrices[q.inv(g)];
                (0..r)
                    .map(|i| {
                        (0..r)
                            .map(|j| {
                                let entry = mi[j][i].rem_euclid(d[j] as i64) * d[i] as i64;
                                debug_assert_eq!(entry % d[j] as i64, 0);
                                entry / d[j] as i64
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let dual_images = dual_matrices
            .iter()
            .map(|m| {
                a.characters()
                    .iter()
                    .map(|chi| a.index_of(&apply(&a, m, &AbElement(chi.0.clone()))))
                    .collect()
            })
            .collect();
        Ok(Action {
            a,
            matrices,
            images,
            dual_matrices,
            dual_images,
        })
    }

    pub fn trivial(q: &FiniteGroup, a: AbelianGroup) -> Self {
        let r = a.rank();
        let id: ExpMatrix = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        Self::new(q, a, vec![id; q.order()]).expect("trivial action is valid")
    }

    /// Extends generator images to all of `Q` along words in the generators,
    /// then validates the result.
    pub fn from_generators(q: &FiniteGroup, a: AbelianGroup, gens: &[(usize, ExpMatrix)]) -> Result<Self, GroupError> {
        let r = a.rank();
        let d = a.factors().to_vec();
        let id: ExpMatrix = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        let mut mats: Vec<Option<ExpMatrix>> = vec![None; q.order()];
        mats[0] = Some(id);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (s, ms) in gens {
                let h = q.mul(g, *s);
                if mats[h].is_none() {
                    let mg = mats[g].as_ref().unwrap();
                    let prod: ExpMatrix = (0..r)
                        .map(|i| {
                            (0..r)
                                .map(|j| {
                                    let v: i64 = (0..r).map(|k| mg[i][k] * ms[k][j]).sum();
                                    v.rem_euclid(d[i] as i64)
                                })
                                .collect()
                        })
                        .collect();
                    mats[h] = Some(prod);
                    queue.push_back(h);
                }
            }
        }
        let matrices: Option<Vec<ExpMatrix>> = mats.into_iter().collect();
        let matrices = matrices.ok_or(GroupError::GeneratorsDoNotGenerate)?;
        Self::new(q, a, matrices)
    }

    pub fn kernel(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn q_order(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, g: usize) -> &ExpMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ExpMatrix] {
        &self.matrices
    }

    /// Matrix of the dual action: `(g·χ)_i = Σ_j D[i][j] χ_j mod d_i`.
    pub fn dual_matrix(&self, g: usize) -> &ExpMatrix {
        &self.dual_matrices[g]
    }

    pub fn act(&self, g: usize, x: &AbElement) -> AbElement {
        apply(&self.a, &self.matrices[g], x)
    }

    #[inline]
    pub fn act_index(&self, g: usize, x: usize) -> usize {
        self.images[g][x]
    }

    pub fn dual_act(&self, g: usize, chi: &DualCharacter) -> DualCharacter {
        DualCharacter(apply(&self.a, &self.dual_matrices[g], &AbElement(chi.0.clone())).0)
    }

    #[inline]
    pub fn dual_act_index(&self, g: usize, chi: usize) -> usize {
        self.dual_images[g][chi]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|img| img.iter().enumerate().all(|(i, &j)| i == j))
    }
}
