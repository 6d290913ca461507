//! Enumerates every action of `C₄` on `C₂ × C₂` and lists its bijective
//! classes with the resulting center dimension.

use central_type::certificate::search;
use central_type::cochains::Cochain;
use central_type::groups::{AbelianGroup, Action, FiniteGroup};
use central_type::instance::Instance;

fn main() {
    let q = FiniteGroup::cyclic(4);
    let a = AbelianGroup::new(vec![2, 2]).expect("valid factors");
    let images = [vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]], vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]];
    for m in images {
        let Ok(action) = Action::from_generators(&q, a.clone(), &[(1, m.clone())]) else {
            continue;
        };
        let inst = Instance {
            name: None,
            beta: Cochain::constant(2, 4, a.identity()),
            a: a.clone(),
            q: q.clone(),
            action,
            pi: None,
            c: None,
        };
        let found = search(&inst, 1).expect("orders match");
        println!("generator acts by {m:?}: {} bijective classes", found.len());
        for entry in found {
            println!("  {}", serde_json::to_string(&entry).expect("serializes"));
        }
    }
}
