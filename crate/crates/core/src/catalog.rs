//! Built-in instances, generated programmatically.

use crate::cochains::{find_bijective_classes, Cochain};
use crate::groups::{AbElement, AbelianGroup, Action, FiniteGroup};
use crate::instance::Instance;

pub const NAMES: [&str; 3] = ["klein4", "paper64", "split-eg3-sample"];

pub fn by_name(name: &str) -> Option<Instance> {
    match name {
        "klein4" => Some(klein4()),
        "paper64" => Some(paper64()),
        "split-eg3-sample" => Some(split_sample()),
        _ => None,
    }
}

/// `A = ⟨x⟩ ≅ C₂`, `Q = ⟨σ⟩ ≅ C₂` acting trivially, `β = 1`, `π(σ) = x̌`.
pub fn klein4() -> Instance {
    let q = FiniteGroup::cyclic(2);
    let a = AbelianGroup::cyclic(2);
    let action = Action::trivial(&q, a.clone());
    let pi = Cochain::from_values(1, 2, vec![a.trivial_character(), a.basis_character(0)]).expect("two values");
    Instance {
        name: Some("klein4".into()),
        beta: Cochain::constant(2, 2, a.identity()),
        a,
        q,
        action,
        pi: Some(pi),
        c: None,
    }
}

// A = C₄ × C₂ = ⟨x⟩ × ⟨y⟩ is stored with factors [2, 4], so y = e₀ and x = e₁.
fn xy(a: &AbelianGroup, x: i64, y: i64) -> AbElement {
    a.element(&[y, x]).expect("rank two")
}

/// `Q = ⟨σ⟩ × ⟨τ⟩ ≅ C₄ × C₂` (element `σᵏτˡ` at `k + 4l`) acting on
/// `A = ⟨x⟩ × ⟨y⟩ ≅ C₄ × C₂` by `σ(x) = xy`, `τ(x) = x⁻¹`, `y` fixed, with
/// the extension `σ̄⁴ = τ̄² = 1`, `τ̄σ̄τ̄⁻¹σ̄⁻¹ = x⁻¹y` and
/// `π(σᵏτˡ) = x̌^{l − (−1)ˡk} y̌ˡ`.
pub fn paper64() -> Instance {
    let q = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2));
    let a = AbelianGroup::new(vec![2, 4]).expect("valid factors");
    // columns are the images of (y, x)
    let sigma = vec![vec![1, 1], vec![0, 1]];
    let tau = vec![vec![1, 0], vec![0, 3]];
    let action = Action::from_generators(&q, a.clone(), &[(1, sigma), (4, tau)]).expect("valid action");
    let beta = paper64_beta(&q, &a, &action);
    let pi_values = (0..8)
        .map(|idx| {
            let (k, l) = ((idx % 4) as i64, (idx / 4) as i64);
            let sign = if l == 0 { 1 } else { -1 };
            a.character(&[l, l - sign * k]).expect("rank two")
        })
        .collect();
    Instance {
        name: Some("paper64".into()),
        a,
        pi: Some(Cochain::from_values(1, 8, pi_values).expect("eight values")),
        q,
        action,
        beta,
        c: None,
    }
}

/// Reads `β` off the transversal `σᵏτˡ ↦ σ̄ᵏτ̄ˡ` by rewriting
/// `σ̄^{k₁}τ̄^{l₁}·σ̄^{k₂}τ̄^{l₂}` into the normal form `a·σ̄ᵏτ̄ˡ`.
fn paper64_beta(q: &FiniteGroup, a: &AbelianGroup, action: &Action) -> Cochain<AbElement> {
    // τ̄σ̄ = z·σ̄τ̄
    let z = xy(a, -1, 1);
    let times_sigma = |(w, k, l): (AbElement, usize, usize)| {
        if l == 0 {
            (w, (k + 1) % 4, 0)
        } else {
            let moved = action.act(k, &z);
            (a.add(&w, &moved), (k + 1) % 4, 1)
        }
    };
    Cochain::from_fn(2, q.order(), |g| {
        let (k1, l1) = (g[0] % 4, g[0] / 4);
        let (k2, l2) = (g[1] % 4, g[1] / 4);
        let mut state = (a.identity(), k1, l1);
        for _ in 0..k2 {
            state = times_sigma(state);
        }
        if l2 == 1 {
            state.2 ^= 1;
        }
        debug_assert_eq!(state.1 + 4 * state.2, q.mul(g[0], g[1]));
        state.0
    })
}

/// A split sample: `Q = C₄` acting on `A = C₂ × C₂` by swapping the factors,
/// with the first bijective class found by search.
pub fn split_sample() -> Instance {
    let q = FiniteGroup::cyclic(4);
    let a = AbelianGroup::new(vec![2, 2]).expect("valid factors");
    let swap = vec![vec![0, 1], vec![1, 0]];
    let action = Action::from_generators(&q, a.clone(), &[(1, swap)]).expect("valid action");
    let classes = find_bijective_classes(&q, &action).expect("orders match");
    let pi = classes.into_iter().next().map(|c| c.representative);
    Instance {
        name: Some("split-eg3-sample".into()),
        beta: Cochain::constant(2, 4, a.identity()),
        a,
        q,
        action,
        pi,
        c: None,
    }
}
